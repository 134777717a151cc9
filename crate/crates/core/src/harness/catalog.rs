use super::checks::{self, FnCheck};
use super::identities;
use super::{Check, Classification};

/// Which identities `check` runs when none are named.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    MustPass,
    UnderTest,
    All,
}

impl Suite {
    pub fn includes(self, c: Classification) -> bool {
        match self {
            Suite::All => true,
            Suite::MustPass => c == Classification::MustPass,
            Suite::UnderTest => c == Classification::UnderTest,
        }
    }
}

const NAMES: [&str; 16] = [
    "binet",
    "hybrid-binet",
    "recurrence-equiv",
    "printed-seeds",
    "character",
    "summation",
    "vajda",
    "catalan",
    "cassini",
    "docagne",
    "ogf",
    "egf",
    "matrix-power",
    "column-vector",
    "cereceda-scalar",
    "cereceda-hybrid",
];

/// Selection names accepted by `check --identity`.
pub fn catalog_names() -> &'static [&'static str] {
    &NAMES
}

fn fn_checks(name: &str) -> Option<Vec<FnCheck>> {
    Some(match name {
        "binet" => checks::binet_checks(),
        "hybrid-binet" => checks::hybrid_binet_checks(),
        "recurrence-equiv" => checks::recurrence_checks(),
        "printed-seeds" => checks::seed_checks(),
        "character" => identities::character_checks(),
        "summation" => identities::summation_checks(),
        "vajda" => identities::vajda_checks(),
        "catalan" => identities::catalan_checks(),
        "cassini" => identities::cassini_checks(),
        "docagne" => identities::docagne_checks(),
        "ogf" => checks::ogf_checks(),
        "egf" => checks::egf_checks(),
        "matrix-power" => checks::matrix_power_checks(),
        "column-vector" => checks::column_vector_checks(),
        "cereceda-scalar" => checks::cereceda_scalar_checks(),
        "cereceda-hybrid" => checks::cereceda_hybrid_checks(),
        _ => return None,
    })
}

/// The checks behind one selection name; a name can expand to several reports.
pub fn checks_for(name: &str) -> Option<Vec<Box<dyn Check>>> {
    fn_checks(name).map(|v| v.into_iter().map(|c| Box::new(c) as Box<dyn Check>).collect())
}

/// Every check in catalog order, filtered by suite.
pub fn catalog(suite: Suite) -> Vec<Box<dyn Check>> {
    NAMES
        .iter()
        .flat_map(|n| checks_for(n).expect("catalog name"))
        .filter(|c| suite.includes(c.classification()))
        .collect()
}

/// Looks up a single check by its report name, e.g. `cassini-direct`.
pub fn check_named(report_name: &str) -> Option<Box<dyn Check>> {
    catalog(Suite::All).into_iter().find(|c| c.name() == report_name)
}
