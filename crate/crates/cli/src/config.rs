use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use lah_core::harness::{GridSpec, IndexBounds, Suite};
use lah_core::{Rational, SeqParams};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Scalar,
    Hybrid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    MustPass,
    UnderTest,
    All,
}

impl From<SuiteName> for Suite {
    fn from(s: SuiteName) -> Suite {
        match s {
            SuiteName::MustPass => Suite::MustPass,
            SuiteName::UnderTest => Suite::UnderTest,
            SuiteName::All => Suite::All,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridName {
    Default,
    Point,
}

/// Explicit value lists, as accepted in a config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridValues {
    pub p: Vec<Rational>,
    pub q: Vec<Rational>,
    pub r: Vec<Rational>,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridChoice {
    Named(GridName),
    Custom(GridValues),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reading {
    Printed,
    PatternCorrected,
}

/// Everything a run can be configured with. Config files use these field names; command
/// line flags of the same name take precedence.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    // Output locations and worker counts do not affect results and are kept out of the
    // echoed header.
    #[serde(default, skip_serializing)]
    pub output: Option<PathBuf>,
    #[serde(default, skip_serializing)]
    pub report_dir: Option<PathBuf>,
    #[serde(default, skip_serializing)]
    pub threads: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<Kind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<SuiteName>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub identity: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dsl: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridChoice>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_max: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_max: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_max: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reading: Option<Reading>,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// JSON config file; flags override its values
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true, global = true)]
    pub p: Option<Rational>,
    #[arg(long, allow_hyphen_values = true, global = true)]
    pub q: Option<Rational>,
    #[arg(long, allow_hyphen_values = true, global = true)]
    pub r: Option<Rational>,
    #[arg(long, allow_hyphen_values = true, global = true)]
    pub a: Option<Rational>,
    #[arg(long, allow_hyphen_values = true, global = true)]
    pub b: Option<Rational>,
    /// Write the result here instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Worker threads for grid evaluation
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

fn overlay<T>(slot: &mut Option<T>, flag: Option<T>) {
    if flag.is_some() {
        *slot = flag;
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// The config file named by `--config` (if any) with the common flags applied on top.
    pub fn from_common(common: &CommonArgs) -> Result<RunConfig, CliError> {
        let mut cfg = match &common.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        overlay(&mut cfg.p, common.p.clone());
        overlay(&mut cfg.q, common.q.clone());
        overlay(&mut cfg.r, common.r.clone());
        overlay(&mut cfg.a, common.a.clone());
        overlay(&mut cfg.b, common.b.clone());
        overlay(&mut cfg.output, common.output.clone());
        overlay(&mut cfg.format, common.format);
        overlay(&mut cfg.threads, common.threads);
        Ok(cfg)
    }

    pub fn set<T>(slot: &mut Option<T>, flag: Option<T>) {
        overlay(slot, flag)
    }

    fn has_point_params(&self) -> bool {
        [&self.p, &self.q, &self.r, &self.a, &self.b].iter().any(|x| x.is_some())
    }

    /// Parameters given inline; omitted ones take their Leonardo value of 1.
    pub fn params(&self) -> Result<SeqParams, CliError> {
        let get = |x: &Option<Rational>| x.clone().unwrap_or_else(Rational::one);
        let params = SeqParams { p: get(&self.p), q: get(&self.q), r: get(&self.r), a: get(&self.a), b: get(&self.b) };
        params.validate().map_err(|e| CliError::Config(e.to_string()))?;
        Ok(params)
    }

    pub fn bounds(&self) -> IndexBounds {
        IndexBounds { n_max: self.n_max, u_max: self.u_max, v_max: self.v_max, m_max: self.m_max }
    }

    /// `default` unless inline parameters were given, in which case a single point.
    pub fn grid_spec(&self) -> Result<GridSpec, CliError> {
        let choice = self.grid.clone().unwrap_or(if self.has_point_params() {
            GridChoice::Named(GridName::Point)
        } else {
            GridChoice::Named(GridName::Default)
        });
        let grid = match choice {
            GridChoice::Named(GridName::Default) => GridSpec::default_grid(),
            GridChoice::Named(GridName::Point) => GridSpec::single(&self.params()?),
            GridChoice::Custom(v) => {
                if [&v.p, &v.q, &v.r, &v.a, &v.b].iter().any(|xs| xs.is_empty()) {
                    return Err(CliError::Config("grid value lists must be non-empty".into()));
                }
                GridSpec { p: v.p, q: v.q, r: v.r, a: v.a, b: v.b, bounds: IndexBounds::default() }
            }
        };
        Ok(grid.with_bounds(self.bounds()))
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or(Format::Json)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trip_and_unknown_fields() {
        let cfg: RunConfig = serde_json::from_str(r#"{"p": "1/2", "q": 3, "n-max": 4, "grid": "point"}"#).unwrap();
        assert_eq!(cfg.p, Some(Rational::new(1, 2)));
        assert_eq!(cfg.n_max, Some(4));
        assert_eq!(cfg.grid, Some(GridChoice::Named(GridName::Point)));
        assert!(serde_json::from_str::<RunConfig>(r#"{"nmax": 4}"#).is_err());
        let custom: RunConfig =
            serde_json::from_str(r#"{"grid": {"p": [1], "q": [1, 2], "r": [0], "a": [1], "b": [1]}}"#).unwrap();
        assert_eq!(custom.grid_spec().unwrap().len(), 2);
    }

    #[test]
    fn grid_defaults_to_point_with_inline_params() {
        let cfg = RunConfig { p: Some(Rational::integer(2)), ..Default::default() };
        assert_eq!(cfg.grid_spec().unwrap().len(), 1);
        assert_eq!(RunConfig::default().grid_spec().unwrap().len(), GridSpec::default_grid().len());
        let bad = RunConfig { p: Some(Rational::integer(2)), q: Some(Rational::integer(-1)), ..Default::default() };
        assert!(matches!(bad.params(), Err(CliError::Config(_))));
    }
}
