//! Test-only fixtures: the worked category and sub-category comparison
//! matrices, entered cell-by-cell through the linguistic scale so each grid
//! reproduces its source table verbatim.

use crate::matrix::FuzzyComparisonMatrix;
use crate::scale::{ConversionScale, Label, LinguisticLabel};

fn cell(scale: &ConversionScale, code: &str) -> crate::tfn::TriangularFuzzyNumber {
    let (label, direction) = match code.strip_suffix('r') {
        Some(base) => (Label::parse(base).unwrap(), crate::scale::Direction::Reciprocal),
        None => (Label::parse(code).unwrap(), crate::scale::Direction::Forward),
    };
    scale.tfn(LinguisticLabel::new(label, direction))
}

fn matrix(scale: &ConversionScale, rows: &[&[&str]]) -> FuzzyComparisonMatrix {
    let n = rows.len();
    let cells = rows
        .iter()
        .flat_map(|row| row.iter().map(|code| cell(scale, code)))
        .collect();
    FuzzyComparisonMatrix::from_cells(n, cells, scale).unwrap()
}

/// Category-level matrix over (Automation, Measurement, Sharing, Culture).
pub fn category_matrix(scale: &ConversionScale) -> FuzzyComparisonMatrix {
    matrix(
        scale,
        &[
            &["JE", "VSMI", "WI", "SMI"],
            &["VSMIr", "JE", "VSMIr", "EI"],
            &["WIr", "VSMI", "JE", "WI"],
            &["SMIr", "EIr", "WIr", "JE"],
        ],
    )
}

/// Automation criteria C1..C5.
pub fn automation_matrix(scale: &ConversionScale) -> FuzzyComparisonMatrix {
    matrix(
        scale,
        &[
            &["JE", "VSMIr", "SMIr", "SMI", "SMIr"],
            &["VSMI", "JE", "VSMI", "EI", "WI"],
            &["SMI", "VSMIr", "JE", "VSMI", "AMI"],
            &["SMIr", "EIr", "VSMIr", "JE", "WIr"],
            &["SMI", "WIr", "AMIr", "WI", "JE"],
        ],
    )
}

/// Measurement criteria C6..C13.
pub fn measurement_matrix(scale: &ConversionScale) -> FuzzyComparisonMatrix {
    matrix(
        scale,
        &[
            &["JE", "WI", "AMI", "EIr", "SMI", "WI", "WIr", "VSMIr"],
            &["WIr", "JE", "WIr", "WI", "SMIr", "WI", "VSMI", "WI"],
            &["AMIr", "WI", "JE", "EI", "WIr", "WIr", "WI", "WIr"],
            &["EI", "WIr", "EIr", "JE", "AMIr", "VSMI", "EI", "VSMI"],
            &["SMIr", "SMI", "WI", "AMI", "JE", "SMIr", "AMIr", "WI"],
            &["WIr", "WIr", "WI", "VSMIr", "SMI", "JE", "SMIr", "VSMI"],
            &["WI", "VSMIr", "WIr", "EIr", "AMI", "SMI", "JE", "SMIr"],
            &["VSMI", "WIr", "WI", "VSMIr", "WIr", "VSMIr", "SMI", "JE"],
        ],
    )
}

/// Sharing criteria C14..C17.
pub fn sharing_matrix(scale: &ConversionScale) -> FuzzyComparisonMatrix {
    matrix(
        scale,
        &[
            &["JE", "SMIr", "VSMIr", "SMI"],
            &["SMI", "JE", "WIr", "WIr"],
            &["VSMI", "WI", "JE", "WI"],
            &["SMIr", "WI", "WIr", "JE"],
        ],
    )
}

/// Culture criteria C18..C22.
pub fn culture_matrix(scale: &ConversionScale) -> FuzzyComparisonMatrix {
    matrix(
        scale,
        &[
            &["JE", "SMIr", "SMI", "VSMIr", "SMIr"],
            &["SMI", "JE", "VSMI", "EI", "WI"],
            &["SMIr", "VSMIr", "JE", "VSMI", "AMI"],
            &["VSMI", "EIr", "VSMIr", "JE", "WIr"],
            &["SMI", "WIr", "AMIr", "WI", "JE"],
        ],
    )
}
