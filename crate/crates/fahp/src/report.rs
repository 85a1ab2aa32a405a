//! Ranking pipeline and report emission. `run_rank` turns a validated study
//! into a bundle of consistency reports, weight vectors, and the ranked
//! taxonomy; `emit_report` renders the bundle as schema-stable JSON or as
//! markdown ordered by weight.

use crate::consistency::ConsistencyReport;
use crate::hierarchy::{evaluate_hierarchy, HierarchyError, RankedTaxonomy};
use crate::study::StudyFile;
use crate::survey::{frequency_analysis, ConcordanceReport};
use serde::Serialize;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RankError {
    #[error("consistency failure (CR >= 0.10) in: {}", .matrices.join(", "))]
    ConsistencyFailure { matrices: Vec<String> },
    #[error(transparent)]
    Hierarchy(#[from] HierarchyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Markdown,
}

impl ReportFormat {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Some(ReportFormat::Json),
            "markdown" | "md" => Some(ReportFormat::Markdown),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixReport {
    pub matrix: String,
    pub n: usize,
    pub lambda_max: f64,
    pub ci: f64,
    pub cr: f64,
    pub ri: f64,
    pub consistent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CategoryWeightRow {
    pub id: String,
    pub name: String,
    pub raw: f64,
    pub weight: f64,
    pub rank: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct LocalWeightRow {
    pub id: String,
    pub name: String,
    pub category: String,
    pub weight: f64,
    pub rank: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct GlobalWeightRow {
    pub id: String,
    pub weight: f64,
    pub rank: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RankRow {
    pub rank: usize,
    pub id: String,
    pub name: String,
    pub category: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SurveyRow {
    pub id: String,
    pub positive: u32,
    pub negative: u32,
    pub neutral: u32,
}

/// Everything one ranking run produces. Serializes to the stable JSON
/// schema; field order is fixed by declaration order.
#[derive(Debug, Clone, Serialize)]
pub struct ReportBundle {
    pub goal: String,
    pub consistency: Vec<MatrixReport>,
    pub category_weights: Vec<CategoryWeightRow>,
    pub local: Vec<LocalWeightRow>,
    pub global: Vec<GlobalWeightRow>,
    pub ranks: Vec<RankRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub survey: Option<Vec<SurveyRow>>,
    pub warnings: Vec<String>,
}

fn round_to(x: f64, decimals: usize) -> f64 {
    let factor = 10f64.powi(decimals as i32);
    (x * factor).round() / factor
}

fn matrix_report(name: &str, report: &ConsistencyReport, n: usize, decimals: usize) -> MatrixReport {
    MatrixReport {
        matrix: name.to_string(),
        n,
        lambda_max: round_to(report.lambda_max, decimals),
        ci: round_to(report.ci, decimals),
        cr: round_to(report.cr, decimals),
        ri: report.ri,
        consistent: report.consistent,
    }
}

/// Survey rows for a study, in study order.
pub fn run_survey(study: &StudyFile) -> Vec<SurveyRow> {
    study
        .survey
        .iter()
        .map(|counts| {
            let f = frequency_analysis(counts).expect("zero totals rejected at load");
            SurveyRow {
                id: counts.id.clone(),
                positive: f.positive,
                negative: f.negative,
                neutral: f.neutral,
            }
        })
        .collect()
}

/// Run the full pipeline: evaluate the hierarchy, collect consistency
/// reports, and assemble the bundle. Strict mode (the flag here, or
/// `options.strict` in the study itself) makes any matrix with CR >= 0.10
/// abort the run; otherwise each failure becomes a warning and the ranking
/// proceeds.
pub fn run_rank(study: &StudyFile, strict: bool) -> Result<ReportBundle, RankError> {
    let strict = strict || study.options.strict;
    let taxonomy = evaluate_hierarchy(&study.hierarchy, &study.category_matrix)?;
    let decimals = study.options.decimals;

    let mut consistency = Vec::new();
    let mut failing = Vec::new();
    consistency.push(matrix_report(
        "categories",
        &taxonomy.category_consistency,
        study.category_matrix.dimension(),
        decimals,
    ));
    if !taxonomy.category_consistency.consistent {
        failing.push("categories".to_string());
    }
    for (category, report) in study
        .hierarchy
        .categories()
        .iter()
        .zip(&taxonomy.criteria_consistency)
    {
        if let Some(report) = report {
            consistency.push(matrix_report(
                &category.id,
                report,
                category.criteria.len(),
                decimals,
            ));
            if !report.consistent {
                failing.push(category.id.clone());
            }
        }
    }

    if strict && !failing.is_empty() {
        return Err(RankError::ConsistencyFailure { matrices: failing });
    }

    let mut warnings = study.warnings.clone();
    for name in &failing {
        let report = consistency
            .iter()
            .find(|r| &r.matrix == name)
            .expect("failing matrix was reported");
        warnings.push(format!(
            "matrix {name:?} fails the consistency check: CR {:.6} >= 0.10",
            report.cr
        ));
    }

    Ok(assemble_bundle(study, &taxonomy, consistency, warnings))
}

fn assemble_bundle(
    study: &StudyFile,
    taxonomy: &RankedTaxonomy,
    consistency: Vec<MatrixReport>,
    warnings: Vec<String>,
) -> ReportBundle {
    let decimals = study.options.decimals;
    let category_weights = taxonomy
        .categories
        .iter()
        .enumerate()
        .map(|(c, category)| CategoryWeightRow {
            id: category.id.clone(),
            name: category.name.clone(),
            raw: round_to(taxonomy.category_weights.raw[c], decimals),
            weight: round_to(category.weight, decimals),
            rank: category.rank,
        })
        .collect();

    let mut local = Vec::new();
    let mut global = Vec::new();
    let mut ranks = Vec::new();
    for category in &taxonomy.categories {
        for criterion in &category.criteria {
            local.push(LocalWeightRow {
                id: criterion.id.clone(),
                name: criterion.name.clone(),
                category: category.id.clone(),
                weight: round_to(criterion.local_weight, decimals),
                rank: criterion.local_rank,
            });
            global.push(GlobalWeightRow {
                id: criterion.id.clone(),
                weight: round_to(criterion.global_weight, decimals),
                rank: criterion.global_rank,
            });
            ranks.push(RankRow {
                rank: criterion.global_rank,
                id: criterion.id.clone(),
                name: criterion.name.clone(),
                category: category.id.clone(),
            });
        }
    }
    ranks.sort_by_key(|r| r.rank);

    let survey = if study.survey.is_empty() {
        None
    } else {
        Some(run_survey(study))
    };

    ReportBundle {
        goal: study.goal.clone(),
        consistency,
        category_weights,
        local,
        global,
        ranks,
        survey,
        warnings,
    }
}

/// Render a bundle. Identical bundles yield identical bytes.
pub fn emit_report(bundle: &ReportBundle, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut text = serde_json::to_string_pretty(bundle).expect("bundle serializes");
            text.push('\n');
            text
        }
        ReportFormat::Markdown => emit_markdown(bundle),
    }
}

fn emit_markdown(bundle: &ReportBundle) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {}\n", bundle.goal);

    let mut categories: Vec<&CategoryWeightRow> = bundle.category_weights.iter().collect();
    categories.sort_by_key(|c| c.rank);

    let _ = writeln!(out, "## Category priorities\n");
    for category in &categories {
        let _ = writeln!(
            out,
            "{}. **{}** — weight {:.6}",
            category.rank, category.name, category.weight
        );
    }

    let _ = writeln!(out, "\n## Consistency\n");
    let _ = writeln!(out, "| matrix | n | lambda_max | CI | CR | RI | consistent |");
    let _ = writeln!(out, "|---|---|---|---|---|---|---|");
    for row in &bundle.consistency {
        let _ = writeln!(
            out,
            "| {} | {} | {:.6} | {:.6} | {:.6} | {} | {} |",
            row.matrix, row.n, row.lambda_max, row.ci, row.cr, row.ri, row.consistent
        );
    }

    let _ = writeln!(out, "\n## Taxonomy\n");
    for category in &categories {
        let _ = writeln!(
            out,
            "### {}. {} (weight {:.6})\n",
            category.rank, category.name, category.weight
        );
        let _ = writeln!(out, "| local rank | id | name | local weight | global weight | global rank |");
        let _ = writeln!(out, "|---|---|---|---|---|---|");
        let mut rows: Vec<(&LocalWeightRow, &GlobalWeightRow)> = bundle
            .local
            .iter()
            .zip(bundle.global.iter())
            .filter(|(l, _)| l.category == category.id)
            .collect();
        rows.sort_by_key(|(l, _)| l.rank);
        for (l, g) in rows {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {:.6} | {:.6} | {} |",
                l.rank, l.id, l.name, l.weight, g.weight, g.rank
            );
        }
        let _ = writeln!(out);
    }

    let _ = writeln!(out, "## Priority order\n");
    for row in &bundle.ranks {
        let _ = writeln!(out, "{}. {} — {}", row.rank, row.id, row.name);
    }

    if let Some(survey) = &bundle.survey {
        let _ = writeln!(out, "\n## Survey frequencies\n");
        let _ = writeln!(out, "| item | positive % | neutral % | negative % |");
        let _ = writeln!(out, "|---|---|---|---|");
        for row in survey {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} |",
                row.id, row.positive, row.neutral, row.negative
            );
        }
    }

    if !bundle.warnings.is_empty() {
        let _ = writeln!(out, "\n## Warnings\n");
        for warning in &bundle.warnings {
            let _ = writeln!(out, "- {warning}");
        }
    }
    out
}

/// Render a concordance report in the same two formats.
pub fn emit_concordance(report: &ConcordanceReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let rounded = ConcordanceReport {
                w: round_to(report.w, 6),
                chi_square: round_to(report.chi_square, 6),
                df: report.df,
                p_value: round_to(report.p_value, 6),
                raters: report.raters,
                items: report.items,
            };
            let mut text = serde_json::to_string_pretty(&rounded).expect("report serializes");
            text.push('\n');
            text
        }
        ReportFormat::Markdown => {
            let mut out = String::new();
            let _ = writeln!(out, "# Concordance\n");
            let _ = writeln!(out, "- raters: {}", report.raters);
            let _ = writeln!(out, "- items: {}", report.items);
            let _ = writeln!(out, "- W: {:.6}", report.w);
            let _ = writeln!(
                out,
                "- chi-square: {:.6} (df = {}), p = {:.6}",
                report.chi_square, report.df, report.p_value
            );
            out
        }
    }
}

/// Render survey rows alone, for studies analyzed without a ranking run.
pub fn emit_survey(rows: &[SurveyRow], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut text = serde_json::to_string_pretty(rows).expect("rows serialize");
            text.push('\n');
            text
        }
        ReportFormat::Markdown => {
            let mut out = String::new();
            let _ = writeln!(out, "# Survey frequencies\n");
            let _ = writeln!(out, "| item | positive % | neutral % | negative % |");
            let _ = writeln!(out, "|---|---|---|---|");
            for row in rows {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} |",
                    row.id, row.positive, row.neutral, row.negative
                );
            }
            out
        }
    }
}
