use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{Check, Classification, Counterexample, Evaluation, GridSpec, IdentityReport, IndexPoint, Outcome, PointContext, Status, Totals};
use crate::sequence::SeqParams;

pub const COUNTEREXAMPLE_CAP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

/// A finished run: the report plus the full verdict table, `verdicts[i][j]` for
/// parameter point `i` and index point `j`.
#[derive(Debug, Clone)]
pub struct CheckRun {
    pub report: IdentityReport,
    pub params: Vec<SeqParams>,
    pub index_points: Vec<IndexPoint>,
    pub verdicts: Vec<Vec<Verdict>>,
}

struct PointResult {
    verdicts: Vec<Verdict>,
    failures: Vec<(usize, Box<Evaluation>)>,
    skips: BTreeMap<&'static str, u64>,
}

fn eval_point(check: &dyn Check, params: &SeqParams, idx: &[IndexPoint]) -> PointResult {
    let mut ctx = PointContext::new(params);
    let mut out = PointResult { verdicts: Vec::with_capacity(idx.len()), failures: Vec::new(), skips: BTreeMap::new() };
    if !ctx.is_valid() {
        out.verdicts.resize(idx.len(), Verdict::Skip);
        if !idx.is_empty() {
            out.skips.insert("discriminant zero", idx.len() as u64);
        }
        return out;
    }
    for (j, point) in idx.iter().enumerate() {
        match check.evaluate(&mut ctx, point) {
            Outcome::Pass => out.verdicts.push(Verdict::Pass),
            Outcome::Fail(e) => {
                out.verdicts.push(Verdict::Fail);
                if out.failures.len() < COUNTEREXAMPLE_CAP {
                    out.failures.push((j, e));
                }
            }
            Outcome::Skip(reason) => {
                out.verdicts.push(Verdict::Skip);
                *out.skips.entry(reason).or_default() += 1;
            }
        }
    }
    out
}

/// Evaluates `check` at every point of `grid` (or at its fixed parameters).
///
/// Parameter points run in parallel; the report depends only on enumeration order.
pub fn run_check(check: &dyn Check, grid: &GridSpec) -> CheckRun {
    let fixed = check.fixed_params();
    let params = fixed.clone().unwrap_or_else(|| grid.points());
    let index_points = check.index_points(&grid.bounds);
    let results: Vec<PointResult> = params.par_iter().map(|p| eval_point(check, p, &index_points)).collect();

    let mut totals = Totals::default();
    let mut skipped = BTreeMap::new();
    let mut counterexamples = Vec::new();
    let mut verdicts = Vec::with_capacity(results.len());
    for (i, res) in results.into_iter().enumerate() {
        for v in &res.verdicts {
            totals.total += 1;
            match v {
                Verdict::Pass => totals.pass += 1,
                Verdict::Fail => totals.fail += 1,
                Verdict::Skip => totals.skipped += 1,
            }
        }
        for (reason, k) in res.skips {
            *skipped.entry(reason.to_string()).or_default() += k;
        }
        for (j, e) in res.failures {
            if counterexamples.len() < COUNTEREXAMPLE_CAP {
                let e = *e;
                counterexamples.push(Counterexample {
                    params: params[i].clone(),
                    indices: index_points[j].clone(),
                    lhs: e.lhs,
                    rhs: e.rhs,
                    difference: e.difference,
                    confirmed: None,
                });
            }
        }
        verdicts.push(res.verdicts);
    }

    for c in &mut counterexamples {
        c.confirmed = check.confirm(&c.params, &c.indices, &c.lhs, &c.rhs);
    }
    let status = if totals.fail == 0 {
        Status::Pass
    } else if check.classification() == Classification::MustPass
        && counterexamples.iter().all(|c| c.confirmed == Some(true))
    {
        Status::ReclassifiedUnderTest
    } else {
        Status::Fail
    };

    let report = IdentityReport {
        identity: check.name().to_string(),
        classification: check.classification(),
        status,
        grid: grid.clone(),
        fixed_params: fixed,
        totals,
        skipped,
        counterexamples,
        notes: check.notes(grid),
    };
    CheckRun { report, params, index_points, verdicts }
}

/// Re-evaluates every archived counterexample and checks the totals add up.
pub fn verify_report(check: &dyn Check, report: &IdentityReport) -> Result<(), String> {
    let t = &report.totals;
    if t.pass + t.fail + t.skipped != t.total {
        return Err(format!("{}: totals do not add up: {t:?}", report.identity));
    }
    if report.counterexamples.len() as u64 > t.fail {
        return Err(format!("{}: more counterexamples than failures", report.identity));
    }
    for c in &report.counterexamples {
        let mut ctx = PointContext::new(&c.params);
        match check.evaluate(&mut ctx, &c.indices) {
            Outcome::Fail(e) if e.lhs == c.lhs && e.rhs == c.rhs && e.difference == c.difference => {}
            other => {
                return Err(format!(
                    "{}: counterexample at {:?} {:?} does not re-verify: {other:?}",
                    report.identity, c.params, c.indices
                ))
            }
        }
    }
    Ok(())
}
