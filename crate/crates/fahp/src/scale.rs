//! The linguistic judgment scale: six labeled intensity levels, each mapped to
//! a triangular fuzzy number in the forward direction and a published rounded
//! triple in the reciprocal direction.

use crate::tfn::TriangularFuzzyNumber;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ScaleError {
    #[error("unknown linguistic label {0:?}")]
    UnknownLabel(String),
    #[error("the JE level is fixed at (1, 1, 1) and cannot be overridden")]
    JustEqualOverride,
    #[error("scale override for {label}: {message}")]
    BadOverride { label: String, message: String },
}

/// The six judgment levels, from indifference up to absolute dominance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    /// Just equal.
    JE,
    /// Equally important.
    EI,
    /// Weakly important.
    WI,
    /// Strongly more important.
    SMI,
    /// Very strongly more important.
    VSMI,
    /// Absolutely more important.
    AMI,
}

impl Label {
    pub const ALL: [Label; 6] = [
        Label::JE,
        Label::EI,
        Label::WI,
        Label::SMI,
        Label::VSMI,
        Label::AMI,
    ];

    pub fn parse(s: &str) -> Result<Self, ScaleError> {
        match s.to_ascii_uppercase().as_str() {
            "JE" => Ok(Label::JE),
            "EI" => Ok(Label::EI),
            "WI" => Ok(Label::WI),
            "SMI" => Ok(Label::SMI),
            "VSMI" => Ok(Label::VSMI),
            "AMI" => Ok(Label::AMI),
            _ => Err(ScaleError::UnknownLabel(s.to_string())),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Label::JE => "JE",
            Label::EI => "EI",
            Label::WI => "WI",
            Label::SMI => "SMI",
            Label::VSMI => "VSMI",
            Label::AMI => "AMI",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Reciprocal,
}

/// A directed judgment on the linguistic scale. `JE` is self-reciprocal, so
/// construction normalizes it to the forward direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LinguisticLabel {
    label: Label,
    direction: Direction,
}

impl LinguisticLabel {
    pub fn new(label: Label, direction: Direction) -> Self {
        let direction = if label == Label::JE {
            Direction::Forward
        } else {
            direction
        };
        Self { label, direction }
    }

    pub fn forward(label: Label) -> Self {
        Self::new(label, Direction::Forward)
    }

    pub fn reciprocal(label: Label) -> Self {
        Self::new(label, Direction::Reciprocal)
    }

    pub fn label(&self) -> Label {
        self.label
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// The judgment as seen from the other side of the pair: same intensity,
    /// opposite direction.
    pub fn flipped(&self) -> Self {
        let direction = match self.direction {
            Direction::Forward => Direction::Reciprocal,
            Direction::Reciprocal => Direction::Forward,
        };
        Self::new(self.label, direction)
    }
}

fn t(l: f64, m: f64, u: f64) -> TriangularFuzzyNumber {
    TriangularFuzzyNumber::new(l, m, u).expect("scale constants are ordered")
}

/// The conversion scale: label -> (forward TFN, reciprocal TFN).
///
/// The reciprocal column holds the published rounded values rather than
/// exact arithmetic inverses; published pairwise tables carry these
/// roundings, so the scale reproduces them verbatim. The default constants
/// can be overridden per study.
#[derive(Debug, Clone, PartialEq)]
pub struct ConversionScale {
    entries: [(TriangularFuzzyNumber, TriangularFuzzyNumber); 6],
}

impl Default for ConversionScale {
    fn default() -> Self {
        Self {
            entries: [
                (t(1.0, 1.0, 1.0), t(1.0, 1.0, 1.0)), // JE
                (t(0.5, 1.0, 1.5), t(0.6, 1.0, 2.0)), // EI
                (t(1.0, 1.5, 2.0), t(0.5, 0.6, 1.0)), // WI
                (t(1.5, 2.0, 2.5), t(0.4, 0.5, 0.6)), // SMI
                (t(2.0, 2.5, 3.0), t(0.3, 0.4, 0.5)), // VSMI
                (t(2.5, 3.0, 3.5), t(0.2, 0.3, 0.4)), // AMI
            ],
        }
    }
}

impl ConversionScale {
    fn index(label: Label) -> usize {
        match label {
            Label::JE => 0,
            Label::EI => 1,
            Label::WI => 2,
            Label::SMI => 3,
            Label::VSMI => 4,
            Label::AMI => 5,
        }
    }

    /// Map a directed judgment to its triangular fuzzy number.
    pub fn tfn(&self, judgment: LinguisticLabel) -> TriangularFuzzyNumber {
        let (fwd, rec) = self.entries[Self::index(judgment.label)];
        match judgment.direction {
            Direction::Forward => fwd,
            Direction::Reciprocal => rec,
        }
    }

    /// Replace the constants for one label. `JE` stays fixed at `(1, 1, 1)`.
    pub fn override_label(
        &mut self,
        label: Label,
        forward: TriangularFuzzyNumber,
        reciprocal: TriangularFuzzyNumber,
    ) -> Result<(), ScaleError> {
        if label == Label::JE {
            return Err(ScaleError::JustEqualOverride);
        }
        for (name, value) in [("forward", forward), ("reciprocal", reciprocal)] {
            if !value.is_positive() {
                return Err(ScaleError::BadOverride {
                    label: label.as_str().to_string(),
                    message: format!("{name} value {value} must be strictly positive"),
                });
            }
        }
        self.entries[Self::index(label)] = (forward, reciprocal);
        Ok(())
    }

    /// Whether `(a, b)` is one of this scale's published forward/reciprocal
    /// pairs, in either order. Used by matrix validation, which accepts
    /// published pairs alongside exact arithmetic inverses.
    pub fn is_published_pair(&self, a: TriangularFuzzyNumber, b: TriangularFuzzyNumber) -> bool {
        let close = |x: TriangularFuzzyNumber, y: TriangularFuzzyNumber| {
            (x.l() - y.l()).abs() <= 1e-12
                && (x.m() - y.m()).abs() <= 1e-12
                && (x.u() - y.u()).abs() <= 1e-12
        };
        self.entries
            .iter()
            .any(|&(fwd, rec)| (close(a, fwd) && close(b, rec)) || (close(a, rec) && close(b, fwd)))
    }
}
