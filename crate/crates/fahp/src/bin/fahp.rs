//! Command-line front end: validate a study, rank it, analyze its survey
//! section, or compute rater concordance from a ratings CSV.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 schema error, 3 strict-mode
//! consistency failure.

use clap::{Parser, Subcommand};
use fahp::report::{emit_concordance, emit_survey};
use fahp::{
    concordance, emit_report, load_ratings_csv, load_survey_csv, run_rank, run_survey,
    RankError, ReportFormat, StudyError, StudyFile,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_USAGE_IO: u8 = 1;
const EXIT_SCHEMA: u8 = 2;
const EXIT_CONSISTENCY: u8 = 3;

#[derive(Parser)]
#[command(name = "fahp", version, about = "Fuzzy AHP decision engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load a study file and report whether it is well-formed.
    Validate {
        /// Path to the study JSON document.
        study: PathBuf,
    },
    /// Aggregate, check consistency, and rank the study's criteria.
    Rank {
        study: PathBuf,
        /// Abort if any comparison matrix has CR >= 0.10.
        #[arg(long)]
        strict: bool,
        /// Output format.
        #[arg(long, default_value = "json", value_parser = parse_format)]
        format: ReportFormat,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Likert frequency analysis of a study's survey section, or of a raw
    /// `item,response` CSV.
    Survey {
        study: PathBuf,
        #[arg(long, default_value = "json", value_parser = parse_format)]
        format: ReportFormat,
    },
    /// Kendall's coefficient of concordance from a `rater,item,rank` CSV.
    Kendall {
        ratings: PathBuf,
        /// Skip the tie correction in the denominator.
        #[arg(long)]
        no_tie_correction: bool,
        #[arg(long, default_value = "json", value_parser = parse_format)]
        format: ReportFormat,
    },
}

fn parse_format(s: &str) -> Result<ReportFormat, String> {
    ReportFormat::parse(s).ok_or_else(|| format!("expected `json` or `markdown`, got {s:?}"))
}

fn study_exit_code(error: &StudyError) -> u8 {
    match error {
        StudyError::Io { .. } => EXIT_USAGE_IO,
        StudyError::Parse(_) | StudyError::Schema { .. } => EXIT_SCHEMA,
    }
}

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

fn write_output(text: &str, out: Option<&Path>) -> Result<(), std::io::Error> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { study } => match StudyFile::load(&study) {
            Ok(study) => {
                let categories = study.hierarchy.categories();
                let criteria: usize = categories.iter().map(|c| c.criteria.len()).sum();
                println!(
                    "ok: {:?} with {} categories, {} criteria, {} survey items",
                    study.goal,
                    categories.len(),
                    criteria,
                    study.survey.len()
                );
                for warning in &study.warnings {
                    println!("warning: {warning}");
                }
                ExitCode::from(EXIT_OK)
            }
            Err(e) => fail(study_exit_code(&e), e),
        },
        Command::Rank {
            study,
            strict,
            format,
            out,
        } => {
            let study = match StudyFile::load(&study) {
                Ok(study) => study,
                Err(e) => return fail(study_exit_code(&e), e),
            };
            match run_rank(&study, strict) {
                Ok(bundle) => {
                    let text = emit_report(&bundle, format);
                    match write_output(&text, out.as_deref()) {
                        Ok(()) => ExitCode::from(EXIT_OK),
                        Err(e) => fail(EXIT_USAGE_IO, e),
                    }
                }
                Err(e @ RankError::ConsistencyFailure { .. }) => fail(EXIT_CONSISTENCY, e),
                Err(e) => fail(EXIT_SCHEMA, e),
            }
        }
        Command::Survey { study, format } => {
            let is_csv = study
                .extension()
                .is_some_and(|ext| ext.eq_ignore_ascii_case("csv"));
            let rows = if is_csv {
                match load_survey_csv(&study) {
                    Ok(counts) => counts
                        .iter()
                        .map(|c| {
                            let f = fahp::frequency_analysis(c).expect("csv rows are counted");
                            fahp::report::SurveyRow {
                                id: c.id.clone(),
                                positive: f.positive,
                                negative: f.negative,
                                neutral: f.neutral,
                            }
                        })
                        .collect(),
                    Err(e) => return fail(study_exit_code(&e), e),
                }
            } else {
                let study = match StudyFile::load(&study) {
                    Ok(study) => study,
                    Err(e) => return fail(study_exit_code(&e), e),
                };
                if study.survey.is_empty() {
                    return fail(EXIT_SCHEMA, "survey: study contains no survey data");
                }
                run_survey(&study)
            };
            print!("{}", emit_survey(&rows, format));
            ExitCode::from(EXIT_OK)
        }
        Command::Kendall {
            ratings,
            no_tie_correction,
            format,
        } => match load_ratings_csv(&ratings) {
            Ok(matrix) => {
                let report = concordance(&matrix, !no_tie_correction);
                print!("{}", emit_concordance(&report, format));
                ExitCode::from(EXIT_OK)
            }
            Err(e) => fail(study_exit_code(&e), e),
        },
    }
}
