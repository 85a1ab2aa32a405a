//! Study-file ingestion: a single JSON document describing the goal, the
//! hierarchy, the pairwise matrices (pre-aggregated cells or raw per-expert
//! judgments), optional scale overrides, and optional survey counts. CSV
//! importers cover raw rater rankings and raw Likert response rows.

use crate::hierarchy::{Category, Criterion, DecisionHierarchy};
use crate::matrix::{ExpertJudgment, FuzzyComparisonMatrix, MatrixError};
use crate::scale::{ConversionScale, Direction, Label, LinguisticLabel};
use crate::survey::{LikertCounts, RaterMatrix, SurveyError};
use crate::tfn::TriangularFuzzyNumber;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StudyError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed document: {0}")]
    Parse(String),
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
}

impl StudyError {
    fn schema(path: impl Into<String>, message: impl std::fmt::Display) -> Self {
        StudyError::Schema {
            path: path.into(),
            message: message.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StudyOptions {
    /// Abort ranking when any matrix fails the CR < 0.10 check.
    pub strict: bool,
    /// Decimal places for floating output in reports.
    pub decimals: usize,
}

impl Default for StudyOptions {
    fn default() -> Self {
        Self {
            strict: false,
            decimals: 6,
        }
    }
}

/// A fully validated study: hierarchy, matrices, scale, survey counts, and
/// any warnings raised during validation.
#[derive(Debug, Clone)]
pub struct StudyFile {
    pub goal: String,
    pub options: StudyOptions,
    pub scale: ConversionScale,
    pub hierarchy: DecisionHierarchy,
    pub category_matrix: FuzzyComparisonMatrix,
    pub survey: Vec<LikertCounts>,
    pub warnings: Vec<String>,
    scale_overrides: BTreeMap<String, RawScaleEntry>,
}

// ---------------------------------------------------------------------------
// Raw document shape
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStudy {
    goal: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    options: Option<StudyOptions>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    scale: BTreeMap<String, RawScaleEntry>,
    categories: Vec<RawCategory>,
    category_matrix: RawMatrix,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    matrices: BTreeMap<String, RawMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    survey: Option<Vec<LikertCounts>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScaleEntry {
    forward: [f64; 3],
    reciprocal: [f64; 3],
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCategory {
    id: String,
    name: String,
    criteria: Vec<RawCriterion>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCriterion {
    id: String,
    name: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrix {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cells: Option<Vec<RawCell>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    judgments: Option<Vec<RawJudgment>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCell {
    i: usize,
    j: usize,
    tfn: [f64; 3],
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJudgment {
    expert: String,
    i: usize,
    j: usize,
    label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    direction: Option<String>,
}

// ---------------------------------------------------------------------------
// Loading
// ---------------------------------------------------------------------------

impl StudyFile {
    pub fn load(path: &Path) -> Result<Self, StudyError> {
        let text = std::fs::read_to_string(path).map_err(|e| StudyError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, StudyError> {
        let raw: RawStudy = serde_json::from_str(text).map_err(|e| {
            if e.is_data() {
                StudyError::schema("document", e)
            } else {
                StudyError::Parse(e.to_string())
            }
        })?;
        Self::from_raw(raw)
    }

    fn from_raw(raw: RawStudy) -> Result<Self, StudyError> {
        let mut warnings = Vec::new();

        let mut scale = ConversionScale::default();
        for (label_text, entry) in &raw.scale {
            let path = format!("scale.{label_text}");
            let label = Label::parse(label_text).map_err(|e| StudyError::schema(&path, e))?;
            let forward = parse_tfn(&format!("{path}.forward"), entry.forward)?;
            let reciprocal = parse_tfn(&format!("{path}.reciprocal"), entry.reciprocal)?;
            scale
                .override_label(label, forward, reciprocal)
                .map_err(|e| StudyError::schema(&path, e))?;
        }

        let options = raw.options.unwrap_or_default();
        if options.decimals > 12 {
            return Err(StudyError::schema(
                "options.decimals",
                format!("at most 12 decimal places are supported, got {}", options.decimals),
            ));
        }

        if raw.categories.len() < 2 {
            return Err(StudyError::schema(
                "categories",
                format!("a study needs at least 2 categories, got {}", raw.categories.len()),
            ));
        }

        let mut ids = BTreeSet::new();
        for (c, category) in raw.categories.iter().enumerate() {
            if !ids.insert(category.id.clone()) {
                return Err(StudyError::schema(
                    format!("categories[{c}].id"),
                    format!("duplicate identifier {:?}", category.id),
                ));
            }
            if category.criteria.is_empty() {
                return Err(StudyError::schema(
                    format!("categories[{c}].criteria"),
                    "category has no criteria",
                ));
            }
            for (k, criterion) in category.criteria.iter().enumerate() {
                if !ids.insert(criterion.id.clone()) {
                    return Err(StudyError::schema(
                        format!("categories[{c}].criteria[{k}].id"),
                        format!("duplicate identifier {:?}", criterion.id),
                    ));
                }
            }
            if category.criteria.len() == 1 {
                warnings.push(format!(
                    "category {:?} has a single criterion; its local weight is 1 by definition",
                    category.id
                ));
            }
        }

        for key in raw.matrices.keys() {
            if !raw.categories.iter().any(|c| &c.id == key) {
                return Err(StudyError::schema(
                    format!("matrices.{key}"),
                    "matrix does not match any category id",
                ));
            }
        }

        let category_matrix = build_matrix(
            "category_matrix",
            &raw.category_matrix,
            raw.categories.len(),
            &scale,
        )?;

        let mut categories = Vec::with_capacity(raw.categories.len());
        for raw_category in &raw.categories {
            let criteria: Vec<Criterion> = raw_category
                .criteria
                .iter()
                .map(|c| Criterion {
                    id: c.id.clone(),
                    name: c.name.clone(),
                })
                .collect();
            let path = format!("matrices.{}", raw_category.id);
            let matrix = match raw.matrices.get(&raw_category.id) {
                Some(raw_matrix) => {
                    if criteria.len() == 1 {
                        return Err(StudyError::schema(
                            &path,
                            "a single-criterion category takes no matrix",
                        ));
                    }
                    Some(build_matrix(&path, raw_matrix, criteria.len(), &scale)?)
                }
                None if criteria.len() > 1 => {
                    return Err(StudyError::schema(
                        &path,
                        format!(
                            "category {:?} has {} criteria and needs a matrix",
                            raw_category.id,
                            criteria.len()
                        ),
                    ));
                }
                None => None,
            };
            categories.push(Category {
                id: raw_category.id.clone(),
                name: raw_category.name.clone(),
                criteria,
                matrix,
            });
        }

        let hierarchy = DecisionHierarchy::new(raw.goal.clone(), categories)
            .map_err(|e| StudyError::schema("categories", e))?;

        let survey = raw.survey.unwrap_or_default();
        let mut survey_ids = BTreeSet::new();
        for (k, item) in survey.iter().enumerate() {
            if !survey_ids.insert(item.id.clone()) {
                return Err(StudyError::schema(
                    format!("survey[{k}].id"),
                    format!("duplicate survey item {:?}", item.id),
                ));
            }
            if item.total() == 0 {
                return Err(StudyError::schema(
                    format!("survey[{k}]"),
                    format!("item {:?} has zero responses", item.id),
                ));
            }
        }

        Ok(StudyFile {
            goal: raw.goal,
            options,
            scale,
            hierarchy,
            category_matrix,
            survey,
            warnings,
            scale_overrides: raw.scale,
        })
    }

    /// Serialize back to the canonical study document. Matrices are emitted
    /// as full cell grids so published reciprocal pairs survive the round
    /// trip.
    pub fn to_json(&self) -> String {
        let raw = RawStudy {
            goal: self.goal.clone(),
            options: Some(self.options),
            scale: self.scale_overrides.clone(),
            categories: self
                .hierarchy
                .categories()
                .iter()
                .map(|c| RawCategory {
                    id: c.id.clone(),
                    name: c.name.clone(),
                    criteria: c
                        .criteria
                        .iter()
                        .map(|k| RawCriterion {
                            id: k.id.clone(),
                            name: k.name.clone(),
                        })
                        .collect(),
                })
                .collect(),
            category_matrix: emit_matrix(&self.category_matrix),
            matrices: self
                .hierarchy
                .categories()
                .iter()
                .filter_map(|c| c.matrix.as_ref().map(|m| (c.id.clone(), emit_matrix(m))))
                .collect(),
            survey: if self.survey.is_empty() {
                None
            } else {
                Some(self.survey.clone())
            },
        };
        let mut text = serde_json::to_string_pretty(&raw).expect("study serializes");
        text.push('\n');
        text
    }
}

fn emit_matrix(matrix: &FuzzyComparisonMatrix) -> RawMatrix {
    let n = matrix.dimension();
    let mut cells = Vec::with_capacity(n * n - n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                cells.push(RawCell {
                    i,
                    j,
                    tfn: matrix.cell(i, j).into(),
                });
            }
        }
    }
    RawMatrix {
        n,
        cells: Some(cells),
        judgments: None,
    }
}

fn parse_tfn(path: &str, raw: [f64; 3]) -> Result<TriangularFuzzyNumber, StudyError> {
    TriangularFuzzyNumber::new(raw[0], raw[1], raw[2]).map_err(|e| StudyError::schema(path, e))
}

fn build_matrix(
    path: &str,
    raw: &RawMatrix,
    expected_n: usize,
    scale: &ConversionScale,
) -> Result<FuzzyComparisonMatrix, StudyError> {
    if raw.n != expected_n {
        return Err(StudyError::schema(
            format!("{path}.n"),
            format!("matrix dimension {} does not match {} entries", raw.n, expected_n),
        ));
    }
    if raw.n < 2 {
        return Err(StudyError::schema(
            format!("{path}.n"),
            MatrixError::TooSmall(raw.n),
        ));
    }
    match (&raw.cells, &raw.judgments) {
        (Some(cells), None) => build_from_cells(path, raw.n, cells, scale),
        (None, Some(judgments)) => build_from_judgments(path, raw.n, judgments, scale),
        _ => Err(StudyError::schema(
            path,
            "matrix needs exactly one of `cells` or `judgments`",
        )),
    }
}

fn build_from_cells(
    path: &str,
    n: usize,
    cells: &[RawCell],
    scale: &ConversionScale,
) -> Result<FuzzyComparisonMatrix, StudyError> {
    let one = TriangularFuzzyNumber::crisp(1.0);
    let mut grid: Vec<Option<TriangularFuzzyNumber>> = vec![None; n * n];
    for (k, cell) in cells.iter().enumerate() {
        let cell_path = format!("{path}.cells[{k}]");
        if cell.i >= n || cell.j >= n {
            return Err(StudyError::schema(
                &cell_path,
                format!("cell index ({}, {}) out of range for dimension {n}", cell.i, cell.j),
            ));
        }
        let value = parse_tfn(&format!("{cell_path}.tfn"), cell.tfn)?;
        if cell.i == cell.j && value != one {
            return Err(StudyError::schema(
                &cell_path,
                format!("diagonal cell ({0}, {0}) must be (1, 1, 1)", cell.i),
            ));
        }
        if !value.is_positive() {
            return Err(StudyError::schema(
                format!("{cell_path}.tfn"),
                "matrix entries must be strictly positive",
            ));
        }
        let slot = &mut grid[cell.i * n + cell.j];
        if slot.is_some() {
            return Err(StudyError::schema(
                &cell_path,
                format!("cell ({}, {}) supplied more than once", cell.i, cell.j),
            ));
        }
        *slot = Some(value);
    }
    // Mirror whatever half of each pair is present; a pair with neither side
    // is missing.
    for i in 0..n {
        for j in (i + 1)..n {
            match (grid[i * n + j], grid[j * n + i]) {
                (Some(_), Some(_)) => {}
                (Some(upper), None) => {
                    grid[j * n + i] = Some(upper.inverse().map_err(|e| {
                        StudyError::schema(format!("{path}.cells"), e)
                    })?);
                }
                (None, Some(lower)) => {
                    grid[i * n + j] = Some(lower.inverse().map_err(|e| {
                        StudyError::schema(format!("{path}.cells"), e)
                    })?);
                }
                (None, None) => {
                    return Err(StudyError::schema(
                        format!("{path}.cells"),
                        MatrixError::MissingPair { i, j },
                    ));
                }
            }
        }
    }
    let full: Vec<TriangularFuzzyNumber> = grid
        .into_iter()
        .map(|cell| cell.unwrap_or(one))
        .collect();
    FuzzyComparisonMatrix::from_cells(n, full, scale)
        .map_err(|e| StudyError::schema(format!("{path}.cells"), e))
}

fn build_from_judgments(
    path: &str,
    n: usize,
    judgments: &[RawJudgment],
    scale: &ConversionScale,
) -> Result<FuzzyComparisonMatrix, StudyError> {
    let mut parsed = Vec::with_capacity(judgments.len());
    for (k, raw) in judgments.iter().enumerate() {
        let judgment_path = format!("{path}.judgments[{k}]");
        let label = Label::parse(&raw.label)
            .map_err(|e| StudyError::schema(format!("{judgment_path}.label"), e))?;
        let direction = match raw.direction.as_deref() {
            None | Some("forward") => Direction::Forward,
            Some("reciprocal") => Direction::Reciprocal,
            Some(other) => {
                return Err(StudyError::schema(
                    format!("{judgment_path}.direction"),
                    format!("expected \"forward\" or \"reciprocal\", got {other:?}"),
                ));
            }
        };
        if raw.i >= n || raw.j >= n || raw.i == raw.j {
            return Err(StudyError::schema(
                &judgment_path,
                format!("judgment indexes ({}, {}) invalid for dimension {n}", raw.i, raw.j),
            ));
        }
        parsed.push(ExpertJudgment {
            expert_id: raw.expert.clone(),
            row: raw.i,
            col: raw.j,
            value: LinguisticLabel::new(label, direction),
        });
    }
    FuzzyComparisonMatrix::from_judgments(n, &parsed, scale)
        .map_err(|e| StudyError::schema(format!("{path}.judgments"), e))
}

// ---------------------------------------------------------------------------
// CSV importers
// ---------------------------------------------------------------------------

/// Read rater rankings from a `rater,item,rank` CSV. Every rater must rank
/// the same item set; tied values normalize to mid-ranks.
pub fn load_ratings_csv(path: &Path) -> Result<RaterMatrix, StudyError> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| StudyError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    check_headers(&mut reader, &["rater", "item", "rank"])?;

    let mut items: Vec<String> = Vec::new();
    let mut raters: Vec<String> = Vec::new();
    let mut scores: BTreeMap<String, BTreeMap<String, f64>> = BTreeMap::new();
    for (line, record) in reader.records().enumerate() {
        let row = line + 2; // header is line 1
        let record = record.map_err(|e| StudyError::Parse(e.to_string()))?;
        if record.len() != 3 {
            return Err(StudyError::schema(
                format!("row {row}"),
                format!("expected 3 fields, got {}", record.len()),
            ));
        }
        let rater = record[0].trim().to_string();
        let item = record[1].trim().to_string();
        let rank: f64 = record[2].trim().parse().map_err(|_| {
            StudyError::schema(format!("row {row}.rank"), format!("not a number: {:?}", &record[2]))
        })?;
        if !items.contains(&item) {
            items.push(item.clone());
        }
        if !raters.contains(&rater) {
            raters.push(rater.clone());
        }
        if scores.entry(rater.clone()).or_default().insert(item.clone(), rank).is_some() {
            return Err(StudyError::schema(
                format!("row {row}"),
                format!("duplicate rating of item {item:?} by rater {rater:?}"),
            ));
        }
    }

    let mut rows = Vec::with_capacity(raters.len());
    for rater in &raters {
        let per_item = &scores[rater];
        let mut row = Vec::with_capacity(items.len());
        for item in &items {
            match per_item.get(item) {
                Some(&rank) => row.push(rank),
                None => {
                    return Err(StudyError::schema(
                        "ratings",
                        format!("rater {rater:?} did not rank item {item:?}"),
                    ));
                }
            }
        }
        rows.push(row);
    }
    RaterMatrix::from_scores(rows).map_err(|e: SurveyError| StudyError::schema("ratings", e))
}

/// Aggregate raw Likert response rows (`item,response` with an optional
/// leading `rater` column) into per-item counts. Responses are the codes
/// SA, A, N, D, SD, case-insensitive.
pub fn load_survey_csv(path: &Path) -> Result<Vec<LikertCounts>, StudyError> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| StudyError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| StudyError::Parse(e.to_string()))?
        .iter()
        .map(|h| h.trim().to_ascii_lowercase())
        .collect();
    let item_col = match headers.as_slice() {
        [a, b] if a == "item" && b == "response" => 0,
        [a, b, c] if a == "rater" && b == "item" && c == "response" => 1,
        _ => {
            return Err(StudyError::schema(
                "header",
                format!("expected `item,response` or `rater,item,response`, got {headers:?}"),
            ));
        }
    };

    let mut order: Vec<String> = Vec::new();
    let mut counts: BTreeMap<String, LikertCounts> = BTreeMap::new();
    for (line, record) in reader.records().enumerate() {
        let row = line + 2;
        let record = record.map_err(|e| StudyError::Parse(e.to_string()))?;
        let item = record[item_col].trim().to_string();
        let response = record[item_col + 1].trim().to_ascii_uppercase();
        if !counts.contains_key(&item) {
            order.push(item.clone());
            counts.insert(
                item.clone(),
                LikertCounts {
                    id: item.clone(),
                    sa: 0,
                    a: 0,
                    n: 0,
                    d: 0,
                    sd: 0,
                },
            );
        }
        let entry = counts.get_mut(&item).expect("inserted above");
        match response.as_str() {
            "SA" => entry.sa += 1,
            "A" => entry.a += 1,
            "N" => entry.n += 1,
            "D" => entry.d += 1,
            "SD" => entry.sd += 1,
            other => {
                return Err(StudyError::schema(
                    format!("row {row}.response"),
                    format!("expected one of SA, A, N, D, SD, got {other:?}"),
                ));
            }
        }
    }
    Ok(order.into_iter().map(|id| counts[&id].clone()).collect())
}

fn check_headers(reader: &mut csv::Reader<std::fs::File>, expected: &[&str]) -> Result<(), StudyError> {
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| StudyError::Parse(e.to_string()))?
        .iter()
        .map(|h| h.trim().to_ascii_lowercase())
        .collect();
    if headers != expected {
        return Err(StudyError::schema(
            "header",
            format!("expected {expected:?}, got {headers:?}"),
        ));
    }
    Ok(())
}
