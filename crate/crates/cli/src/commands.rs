use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use lah_core::harness::dsl::{parse_identity_file, DslCheck};
use lah_core::harness::{
    catalog, catalog_names, check_named, checks_for, run_check, verify_report, Check, Classification,
    IdentityReport, Status, Suite,
};
use lah_core::hybrid_sequence::{lah_terms, HybridSequence};
use lah_core::matrix::{
    cereceda_matrix, column_vector_sides, companion_matrix, cubic_at_companion, generic_determinant,
    matrix_power_sides, hybrid_tridiagonal_matrix, CerecedaParams, RingMatrix, TridiagonalReading,
};
use lah_core::sequence::{la_terms, terms_csv};
use lah_core::series::{egf_coefficient, expand_ogf, ogf_denominator, ogf_numerator};
use lah_core::{Hybrid, QuadExt, Rational, Ring, SeqParams};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Format, Kind, Reading, RunConfig};
use crate::CliError;

const OK: u8 = 0;
const UNDER_TEST_FAILURE: u8 = 3;
const MUST_PASS_FAILURE: u8 = 4;

#[derive(Serialize)]
struct Header<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    config: &'a RunConfig,
}

fn header<'a>(command: &'static str, cfg: &'a RunConfig) -> Header<'a> {
    Header { tool: "lah", version: env!("CARGO_PKG_VERSION"), command, config: cfg }
}

fn document(command: &'static str, cfg: &RunConfig, body: Value) -> Result<String, CliError> {
    let mut doc = json!({ "header": header(command, cfg) });
    if let (Value::Object(d), Value::Object(b)) = (&mut doc, body) {
        d.extend(b);
    }
    let mut text = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

/// Header lines for CSV output, as `#` comments ahead of the table.
fn csv_preamble(command: &'static str, cfg: &RunConfig) -> Result<String, CliError> {
    let config = serde_json::to_string(cfg).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(format!("# lah {} {command}\n# config {config}\n", env!("CARGO_PKG_VERSION")))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.output {
        Some(path) => write_file(path, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn core_err(e: lah_core::Error) -> CliError {
    CliError::Config(e.to_string())
}

fn json_only(cfg: &RunConfig, command: &str) -> Result<(), CliError> {
    if cfg.format() == Format::Csv {
        return Err(CliError::Config(format!("{command} supports JSON output only")));
    }
    Ok(())
}

pub fn gen(cfg: &RunConfig) -> Result<u8, CliError> {
    let params = cfg.params()?;
    let count = cfg.n.unwrap_or(10);
    let kind = cfg.kind.unwrap_or(Kind::Scalar);
    let text = match (kind, cfg.format()) {
        (Kind::Scalar, fmt) => {
            let terms = la_terms(&params, count).map_err(core_err)?;
            match fmt {
                Format::Csv => csv_preamble("gen", cfg)? + &terms_csv(&terms),
                Format::Json => {
                    let rows: Vec<Value> =
                        terms.iter().enumerate().map(|(n, t)| json!({ "n": n, "value": to_value(t) })).collect();
                    document("gen", cfg, json!({ "kind": "scalar", "terms": rows }))?
                }
            }
        }
        (Kind::Hybrid, fmt) => {
            let terms = lah_terms(&params, count).map_err(core_err)?;
            match fmt {
                Format::Csv => {
                    let mut out = csv_preamble("gen", cfg)? + "m,re,i,eps,h\n";
                    for (m, t) in terms.iter().enumerate() {
                        let _ = writeln!(out, "{m},{},{},{},{}", t.re, t.im_i, t.im_eps, t.im_h);
                    }
                    out
                }
                Format::Json => {
                    let rows: Vec<Value> =
                        terms.iter().enumerate().map(|(m, t)| json!({ "m": m, "value": to_value(t) })).collect();
                    document("gen", cfg, json!({ "kind": "hybrid", "terms": rows }))?
                }
            }
        }
    };
    emit(cfg, &text)?;
    Ok(OK)
}

fn select_checks(cfg: &RunConfig) -> Result<Vec<Box<dyn Check>>, CliError> {
    let mut out: Vec<Box<dyn Check>> = Vec::new();
    for name in &cfg.identity {
        if let Some(cs) = checks_for(name) {
            out.extend(cs);
        } else if let Some(c) = check_named(name) {
            out.push(c);
        } else {
            return Err(CliError::Config(format!(
                "unknown identity `{name}`; known: {}",
                catalog_names().join(", ")
            )));
        }
    }
    if let Some(path) = &cfg.dsl {
        let src = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let parsed = parse_identity_file(&src)
            .map_err(|error| CliError::Syntax { file: path.display().to_string(), error })?;
        if parsed.is_empty() {
            return Err(CliError::Config(format!("{}: no identities", path.display())));
        }
        for (label, ast) in parsed {
            out.push(Box::new(DslCheck::new(label, ast, Classification::UnderTest)));
        }
    }
    if cfg.identity.is_empty() && cfg.dsl.is_none() {
        out = catalog(cfg.suite.map(Suite::from).unwrap_or(Suite::MustPass));
    } else if let Some(suite) = cfg.suite {
        out.extend(catalog(suite.into()));
    }
    let mut seen = std::collections::HashSet::new();
    out.retain(|c| seen.insert(c.name().to_string()));
    Ok(out)
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::ReclassifiedUnderTest => "reclassified-under-test",
    }
}

fn class_name(c: Classification) -> &'static str {
    match c {
        Classification::MustPass => "must-pass",
        Classification::UnderTest => "under-test",
    }
}

/// Exit status contributed by one report.
fn report_code(r: &IdentityReport, verified: bool) -> u8 {
    if !verified || (r.classification == Classification::MustPass && r.status == Status::Fail) {
        MUST_PASS_FAILURE
    } else if !r.passed() {
        UNDER_TEST_FAILURE
    } else {
        OK
    }
}

fn file_stem(identity: &str) -> String {
    identity.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect()
}

pub fn check(cfg: &RunConfig) -> Result<u8, CliError> {
    let grid = cfg.grid_spec()?;
    let checks = select_checks(cfg)?;
    let mut code = OK;
    let mut reports = Vec::with_capacity(checks.len());
    let mut verified = Vec::with_capacity(checks.len());
    for c in &checks {
        let report = run_check(c.as_ref(), &grid).report;
        let ok = match verify_report(c.as_ref(), &report) {
            Ok(()) => true,
            Err(e) => {
                eprintln!("verification failed: {e}");
                false
            }
        };
        let t = &report.totals;
        eprintln!(
            "{:32} {:10} {:24} pass={} fail={} skipped={}",
            report.identity,
            class_name(report.classification),
            status_name(report.status),
            t.pass,
            t.fail,
            t.skipped
        );
        code = code.max(report_code(&report, ok));
        reports.push(report);
        verified.push(ok);
    }

    if let Some(dir) = &cfg.report_dir {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        for r in &reports {
            let text = document("check", cfg, json!({ "report": to_value(r) }))?;
            write_file(&dir.join(format!("{}.json", file_stem(&r.identity))), &text)?;
        }
    }

    let text = match cfg.format() {
        Format::Json => document("check", cfg, json!({ "reports": to_value(&reports) }))?,
        Format::Csv => {
            let mut out = csv_preamble("check", cfg)? + "identity,classification,status,total,pass,fail,skipped,verified\n";
            for (r, ok) in reports.iter().zip(&verified) {
                let t = &r.totals;
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    r.identity,
                    class_name(r.classification),
                    status_name(r.status),
                    t.total,
                    t.pass,
                    t.fail,
                    t.skipped,
                    ok
                );
            }
            out
        }
    };
    emit(cfg, &text)?;
    Ok(code)
}

pub fn series(cfg: &RunConfig) -> Result<u8, CliError> {
    let params = cfg.params()?;
    let order = cfg.order.unwrap_or(21);
    let ogf = expand_ogf(&params, order).map_err(core_err)?;
    let terms = lah_terms(&params, order).map_err(core_err)?;
    let ogf_ok = ogf.coefficients() == terms.as_slice();
    let mut seq = HybridSequence::new(&params).map_err(core_err)?;
    let numerator = ogf_numerator(&mut seq);
    let egf: Option<Vec<Hybrid<QuadExt>>> =
        (0..order).map(|m| egf_coefficient(&mut seq, m)).collect::<Result<_, _>>().ok();
    let egf_ok = egf.as_ref().map(|cs| {
        cs.iter().zip(&terms).all(|(c, t)| c.to_rational().map(|x| &x == t).unwrap_or(false))
    });
    let code = if ogf_ok && egf_ok != Some(false) { OK } else { MUST_PASS_FAILURE };

    let text = match cfg.format() {
        Format::Csv => {
            let mut out = csv_preamble("series", cfg)? + "m,re,i,eps,h\n";
            for (m, t) in ogf.coefficients().iter().enumerate() {
                let _ = writeln!(out, "{m},{},{},{},{}", t.re, t.im_i, t.im_eps, t.im_h);
            }
            out
        }
        Format::Json => {
            let mut body = json!({
                "order": order,
                "ogf": {
                    "numerator": to_value(&numerator),
                    "denominator": to_value(&ogf_denominator(&params)),
                    "coefficients": to_value(&ogf),
                    "matches_terms": ogf_ok,
                },
            });
            body["egf"] = match (&egf, egf_ok) {
                (Some(cs), Some(ok)) => json!({ "scaled_coefficients": to_value(cs), "matches_terms": ok }),
                _ => json!({ "skipped": "rho zero" }),
            };
            document("series", cfg, body)?
        }
    };
    emit(cfg, &text)?;
    Ok(code)
}

pub fn matrix(cfg: &RunConfig) -> Result<u8, CliError> {
    json_only(cfg, "matrix")?;
    let params = cfg.params()?;
    let mode = cfg.mode.as_deref().unwrap_or("companion");
    let m = cfg.m.unwrap_or(0);
    let mut seq = HybridSequence::new(&params).map_err(core_err)?;
    let (body, code) = match mode {
        "companion" => {
            let q = companion_matrix(&params);
            let pow = q.pow(m as u32).map_err(core_err)?;
            (json!({ "mode": mode, "m": m, "companion": to_value(&q), "power": to_value(&pow) }), OK)
        }
        "power" => {
            let (lhs, rhs) = matrix_power_sides(&mut seq, m).map_err(core_err)?;
            let holds = lhs == rhs;
            let re_holds = lhs.re_part() == rhs.re_part();
            let code = if !re_holds {
                MUST_PASS_FAILURE
            } else if !holds {
                UNDER_TEST_FAILURE
            } else {
                OK
            };
            let body = json!({
                "mode": mode, "m": m,
                "lhs": to_value(&lhs), "rhs": to_value(&rhs),
                "holds": holds, "re_part_holds": re_holds,
            });
            (body, code)
        }
        "column-vector" => {
            let (lhs, rhs) = column_vector_sides(&mut seq, m).map_err(core_err)?;
            let holds = lhs == rhs;
            let body = json!({ "mode": mode, "m": m, "lhs": to_value(&lhs), "rhs": to_value(&rhs), "holds": holds });
            (body, if holds { OK } else { MUST_PASS_FAILURE })
        }
        "cubic" => {
            let c = cubic_at_companion(&params);
            let holds = c.is_zero();
            (json!({ "mode": mode, "cubic_at_companion": to_value(&c), "holds": holds }), if holds { OK } else { MUST_PASS_FAILURE })
        }
        other => {
            return Err(CliError::Config(format!(
                "unknown matrix mode `{other}`; expected companion, power, column-vector or cubic"
            )))
        }
    };
    emit(cfg, &document("matrix", cfg, body)?)?;
    Ok(code)
}

fn recurrence_coefficients(params: &SeqParams) -> (Rational, Rational, Rational) {
    (Rational::one() + &params.p, &params.q - &params.p, -&params.q)
}

fn det_body<S: Ring + Serialize>(
    cp: &CerecedaParams<S>,
    terms: &[S],
    reading: TridiagonalReading,
    hybrid: bool,
) -> Result<(Value, bool), CliError> {
    let n = terms.len() - 1;
    let build = |k: usize| {
        if hybrid {
            hybrid_tridiagonal_matrix(cp, k, reading)
        } else {
            cereceda_matrix(cp, k, reading)
        }
    };
    let mut rows = Vec::with_capacity(terms.len());
    let mut all = true;
    for (k, term) in terms.iter().enumerate() {
        let det = generic_determinant(&build(k).map_err(core_err)?).map_err(core_err)?;
        let holds = &det == term;
        all &= holds;
        rows.push(json!({ "n": k, "determinant": to_value(&det), "term": to_value(term), "holds": holds }));
    }
    let matrix: RingMatrix<S> = build(n).map_err(core_err)?;
    Ok((json!({ "matrix": to_value(&matrix), "reconstruction": rows, "holds": all }), all))
}

pub fn det(cfg: &RunConfig) -> Result<u8, CliError> {
    json_only(cfg, "det")?;
    let params = cfg.params()?;
    let mode = cfg.mode.as_deref().unwrap_or("scalar");
    let reading = match cfg.reading.unwrap_or(Reading::Printed) {
        Reading::Printed => TridiagonalReading::Printed,
        Reading::PatternCorrected => TridiagonalReading::PatternCorrected,
    };
    let (u, v, w) = recurrence_coefficients(&params);
    let (mut body, holds) = match mode {
        "scalar" => {
            let n = cfg.n.unwrap_or(12);
            let terms = la_terms(&params, n + 1).map_err(core_err)?;
            let cp = CerecedaParams { u, v, w, a: terms[0].clone(), b: terms[1].clone(), c: terms[2].clone() };
            det_body(&cp, &terms, reading, false)?
        }
        "hybrid" => {
            let n = cfg.n.unwrap_or(6);
            let terms = lah_terms(&params, n.max(2) + 1).map_err(core_err)?;
            let cp = CerecedaParams { u, v, w, a: terms[0].clone(), b: terms[1].clone(), c: terms[2].clone() };
            det_body(&cp, &terms[..=n], reading, true)?
        }
        other => return Err(CliError::Config(format!("unknown det mode `{other}`; expected scalar or hybrid"))),
    };
    body["mode"] = json!(mode);
    emit(cfg, &document("det", cfg, body)?)?;
    Ok(if holds { OK } else { UNDER_TEST_FAILURE })
}
