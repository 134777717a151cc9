use std::collections::BTreeMap;

use serde::Serialize;

use super::{GridSpec, IndexPoint, Value};
use crate::sequence::SeqParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    MustPass,
    UnderTest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// A must-pass identity whose archived counterexamples were all confirmed by an
    /// independent evaluation; reported as under test from then on.
    ReclassifiedUnderTest,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub total: u64,
    pub pass: u64,
    pub fail: u64,
    pub skipped: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub params: SeqParams,
    pub indices: IndexPoint,
    pub lhs: Value,
    pub rhs: Value,
    pub difference: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub confirmed: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub classification: Classification,
    pub status: Status,
    pub grid: GridSpec,
    /// Set when the identity concerns specific parameters rather than the grid.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed_params: Option<Vec<SeqParams>>,
    pub totals: Totals,
    /// Skip counts by reason.
    pub skipped: BTreeMap<String, u64>,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// The classification after any reclassification.
    pub fn effective_classification(&self) -> Classification {
        match self.status {
            Status::ReclassifiedUnderTest => Classification::UnderTest,
            _ => self.classification,
        }
    }
}
