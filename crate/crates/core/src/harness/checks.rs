use super::{
    run_check, Check, Classification, GridSpec, IdentityReport, IndexBounds, IndexPoint, Outcome, PointContext, Value,
};
use crate::hybrid::Hybrid;
use crate::hybrid_sequence::{lah_by_definition, lah_by_recurrence, leonardo_hybrid_binet, printed_seeds, SeedReading};
use crate::matrix::{
    cereceda_matrix, column_vector_sides, companion_matrix, cubic_at_companion, generic_determinant,
    matrix_power_block, matrix_power_sides, hybrid_tridiagonal_matrix, CerecedaParams, RingMatrix, TridiagonalReading,
};
use crate::scalar::{Rational, Ring};
use crate::sequence::{la_terms_inhomogeneous, special_case_oracle, SeqParams, SpecialCase};
use crate::series::{egf_coefficient, egf_coefficient_single_exponent, expand_ogf, ogf_denominator, ogf_numerator};

pub(crate) type EvalFn = fn(&mut PointContext, &IndexPoint) -> Outcome;
pub(crate) type ConfirmFn = fn(&SeqParams, &IndexPoint, &Value, &Value) -> Option<bool>;

/// A check assembled from plain functions.
pub(crate) struct FnCheck {
    name: &'static str,
    class: Classification,
    points: fn(&IndexBounds) -> Vec<IndexPoint>,
    eval: EvalFn,
    confirm: Option<ConfirmFn>,
    fixed: Option<fn() -> Vec<SeqParams>>,
    notes: Option<fn(&GridSpec) -> Vec<String>>,
}

impl FnCheck {
    pub(crate) fn new(
        name: &'static str,
        class: Classification,
        points: fn(&IndexBounds) -> Vec<IndexPoint>,
        eval: EvalFn,
    ) -> Self {
        FnCheck { name, class, points, eval, confirm: None, fixed: None, notes: None }
    }

    pub(crate) fn confirmed_by(mut self, f: ConfirmFn) -> Self {
        self.confirm = Some(f);
        self
    }

    pub(crate) fn at(mut self, f: fn() -> Vec<SeqParams>) -> Self {
        self.fixed = Some(f);
        self
    }

    pub(crate) fn noted(mut self, f: fn(&GridSpec) -> Vec<String>) -> Self {
        self.notes = Some(f);
        self
    }
}

impl Check for FnCheck {
    fn name(&self) -> &str {
        self.name
    }

    fn classification(&self) -> Classification {
        self.class
    }

    fn index_points(&self, bounds: &IndexBounds) -> Vec<IndexPoint> {
        (self.points)(bounds)
    }

    fn evaluate(&self, ctx: &mut PointContext, idx: &IndexPoint) -> Outcome {
        (self.eval)(ctx, idx)
    }

    fn fixed_params(&self) -> Option<Vec<SeqParams>> {
        self.fixed.map(|f| f())
    }

    fn confirm(&self, params: &SeqParams, idx: &IndexPoint, lhs: &Value, rhs: &Value) -> Option<bool> {
        self.confirm.and_then(|f| f(params, idx, lhs, rhs))
    }

    fn notes(&self, grid: &GridSpec) -> Vec<String> {
        self.notes.map(|f| f(grid)).unwrap_or_default()
    }
}

/// Cartesian product of inclusive ranges, filtered; variables vary fastest on the right.
pub(crate) fn index_grid(vars: &[(&str, i64, i64)], keep: impl Fn(&[i64]) -> bool) -> Vec<IndexPoint> {
    let mut out = Vec::new();
    let mut cur: Vec<i64> = vars.iter().map(|v| v.1).collect();
    if vars.iter().any(|v| v.1 > v.2) {
        return out;
    }
    loop {
        if keep(&cur) {
            out.push(IndexPoint::new(vars.iter().zip(&cur).map(|(v, x)| (v.0, *x))));
        }
        let mut k = vars.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < vars[k].2 {
                cur[k] += 1;
                break;
            }
            cur[k] = vars[k].1;
        }
    }
}

pub(crate) fn single_index(name: &str, lo: i64, hi: i64) -> Vec<IndexPoint> {
    index_grid(&[(name, lo, hi)], |_| true)
}

const RHO_ZERO: &str = "rho zero";

fn binet(ctx: &mut PointContext, idx: &IndexPoint) -> Outcome {
    if ctx.rho_is_zero() {
        return Outcome::Skip(RHO_ZERO);
    }
    let n = idx.idx("n");
    let r = ctx.params.r.clone();
    let expected = ctx.seq().la(n);
    let ch = ctx.seq().characteristic();
    let inv_rho = ch.rho.recip().expect("nonzero");
    let value = (ch.lift(&r) + &ch.homogeneous_quad(n as u32)).scale(&inv_rho);
    Outcome::compare(value, ch.lift(&expected))
}

fn recurrence_scalar(ctx: &mut PointContext, idx: &IndexPoint) -> Outcome {
    let n = idx.idx("n");
    let second_order = la_terms_inhomogeneous(&ctx.params, n + 1).expect("valid");
    Outcome::compare(ctx.seq().la(n), second_order[n].clone())
}

fn special_cases(ctx: &mut PointContext, idx: &IndexPoint) -> Outcome {
    let n = idx.idx("n");
    let kind = if ctx.params.is_leonardo() { SpecialCase::Leonardo } else { SpecialCase::Ernst };
    Outcome::compare(ctx.seq().la(n), special_case_oracle(kind, n))
}

fn recurrence_hybrid(ctx: &mut PointContext, idx: &IndexPoint) -> Outcome {
    let n = idx.idx("n");
    let by_recurrence = lah_by_recurrence(&ctx.params, n + 1).expect("valid");
    let by_definition = lah_by_definition(&ctx.params, n).expect("valid");
    Outcome::compare(by_recurrence[n].clone(), by_definition)
}

fn hybrid_binet(ctx: &mut PointContext, idx: &IndexPoint) -> Outcome {
    if ctx.rho_is_zero() {
        return Outcome::Skip(RHO_ZERO);
    }
    let n = idx.idx("n");
    let d = ctx.discriminant();
    let inv_rho = ctx.params.rho().recip().expect("nonzero");
    let r_psi = ctx.psi_lifted().scale(&ctx.params.r);
    let value = (r_psi + &ctx.seq().hpart(n)).scale(&inv_rho);
    let by_definition = lah_by_definition(&ctx.params, n).expect("valid").lift(&d);
    Outcome::compare(value, by_definition)
}

fn hybrid_binet_leonardo(ctx: &mut PointContext, idx: &IndexPoint) -> Outcome {
    let m = idx.idx("m");
    match leonardo_hybrid_binet(m) {
        Ok(v) => Outcome::compare(v, ctx.seq().lah(m)),
        Err(_) => Outcome::Skip("surd residue"),
    }
}

fn seeds(ctx: &mut PointContext, idx: &IndexPoint) -> Outcome {
    let m = idx.idx("m");
    let printed = printed_seeds(&ctx.params, SeedReading::Printed);
    Outcome::compare(printed[m].clone(), ctx.seq().lah(m))
}

fn seed_notes(grid: &GridSpec) -> Vec<String> {
    let labels = ["re", "i", "eps", "h"];
    let mut notes = Vec::new();
    for (reading, name) in [(SeedReading::Printed, "printed"), (SeedReading::CubicB, "cubic-b")] {
        let mut hits = [[0u64; 4]; 2];
        let mut total = 0u64;
        for p in grid.points() {
            let Ok(truth) = crate::hybrid_sequence::lah_terms(&p, 2) else { continue };
            total += 1;
            let s = printed_seeds(&p, reading);
            for m in 0..2 {
                let (x, y) = (s[m].components(), truth[m].components());
                for c in 0..4 {
                    if x[c] == y[c] {
                        hits[m][c] += 1;
                    }
                }
            }
        }
        for m in 0..2 {
            let parts: Vec<String> = (0..4).map(|c| format!("{}={}/{}", labels[c], hits[m][c], total)).collect();
            notes.push(format!("{name} reading, seed {m}: components matching the definition: {}", parts.join(", ")));
        }
    }
    notes
}

fn character_product(ctx: &mut PointContext, idx: &IndexPoint) -> Outcome {
    let z = ctx.seq().lah(idx.idx("m"));
    let c = Hybrid::scalar(z.character());
    let left = &z * &z.conj();
    if left != c {
        return Outcome::compare(left, c);
    }
    Outcome::compare(&z.conj() * &z, c)
}

fn ogf(ctx: &mut PointContext, idx: &IndexPoint) -> Outcome {
    let m = idx.idx("m");
    let series = expand_ogf(&ctx.params, m + 1).expect("valid");
    Outcome::compare(series.coefficient(m).clone(), ctx.seq().lah(m))
}

fn ogf_leonardo(ctx: &mut PointContext, idx: &IndexPoint) -> Outcome {
    let k = idx.idx("k");
    let printed_num = [
        Hybrid::from_ints(1, 1, 3, 5),
        -Hybrid::from_ints(1, -1, 1, 1),
        Hybrid::from_ints(1, -1, -1, -3),
    ];
    let printed_den = [1, -2, 0, 1];
    if k < 3 {
        Outcome::compare(ogf_numerator(ctx.seq())[k].clone(), printed_num[k].clone())
    } else {
        let den = ogf_denominator(&ctx.params);
        Outcome::compare(den[k - 3].clone(), Rational::integer(printed_den[k - 3]))
    }
}

fn egf(ctx: &mut PointContext, idx: &IndexPoint) -> Outcome {
    if ctx.rho_is_zero() {
        return Outcome::Skip(RHO_ZERO);
    }
    let m = idx.idx("m");
    let d = ctx.discriminant();
    let expected = ctx.seq().lah(m).lift(&d);
    Outcome::compare(egf_coefficient(ctx.seq(), m).expect("nondegenerate"), expected)
}

fn egf_notes(grid: &GridSpec) -> Vec<String> {
    let m_max = grid.bounds.m(20) as usize;
    let (mut agree, mut total) = (0u64, 0u64);
    for p in grid.points() {
        if p.rho().is_zero() {
            continue;
        }
        let Ok(mut seq) = crate::hybrid_sequence::HybridSequence::new(&p) else { continue };
        let d = p.discriminant();
        for m in 0..=m_max {
            total += 1;
            if egf_coefficient_single_exponent(&mut seq, m).ok() == Some(seq.lah(m).lift(&d)) {
                agree += 1;
            }
        }
    }
    vec![
        "the single-exponent form has e^{psi1 t} in both terms; coefficients are checked with e^{psi2 t} in the second term".into(),
        format!("with e^{{psi1 t}} in both terms the coefficient matches at {agree} of {total} points"),
    ]
}

fn column_vector(ctx: &mut PointContext, idx: &IndexPoint) -> Outcome {
    let (lhs, rhs) = column_vector_sides(ctx.seq(), idx.idx("m")).expect("3x1");
    Outcome::compare_matrix(lhs, rhs)
}

fn cubic(ctx: &mut PointContext, _idx: &IndexPoint) -> Outcome {
    let zero = RingMatrix::filled(3, 3, Rational::zero());
    Outcome::compare_matrix(cubic_at_companion(&ctx.params), zero)
}

fn companion_det(ctx: &mut PointContext, _idx: &IndexPoint) -> Outcome {
    let det = generic_determinant(&companion_matrix(&ctx.params)).expect("square");
    Outcome::compare(det, -&ctx.params.q)
}

fn scalar_centrality(ctx: &mut PointContext, idx: &IndexPoint) -> Outcome {
    let block = matrix_power_block(ctx.seq(), idx.idx("m"));
    let q = companion_matrix(&ctx.params);
    let lhs = block.mul_scalar_right(&q).expect("3x3");
    let rhs = block.mul(&q.embed_hybrid()).expect("3x3");
    if lhs != rhs {
        return Outcome::compare_matrix(lhs, rhs);
    }
    let left = q.embed_hybrid().mul(&block).expect("3x3");
    let left_scalar = RingMatrix::new(
        3,
        3,
        (0..9)
            .map(|k| {
                let (i, j) = (k / 3, k % 3);
                (0..3).fold(Hybrid::scalar(Rational::zero()), |acc, l| acc + &block.get(l, j).scale(q.get(i, l)))
            })
            .collect(),
    )
    .expect("3x3");
    Outcome::compare_matrix(left, left_scalar)
}

fn matrix_power(ctx: &mut PointContext, idx: &IndexPoint) -> Outcome {
    let (lhs, rhs) = matrix_power_sides(ctx.seq(), idx.idx("m")).expect("3x3");
    Outcome::compare_matrix(lhs, rhs)
}

fn matrix_power_scalar(ctx: &mut PointContext, idx: &IndexPoint) -> Outcome {
    let m = idx.idx("m");
    let lhs = matrix_power_block(ctx.seq(), m).re_part();
    let q_pow = companion_matrix(&ctx.params).pow(m as u32).expect("square");
    let rhs = matrix_power_block(ctx.seq(), 0).re_part().mul(&q_pow).expect("3x3");
    Outcome::compare_matrix(lhs, rhs)
}

fn matrix_power_notes(_grid: &GridSpec) -> Vec<String> {
    vec![
        "middle column La𝒢_{m+4}, La𝒢_{m+3}, La𝒢_{m+2} with La𝒢_k = La𝓗_k − (1+p)La𝓗_{k−1}".into(),
        "the Leonardo special-case matrices use HLe_{-1}, which the sequence does not define; they are not checked".into(),
    ]
}

fn cereceda_scalar_params(ctx: &mut PointContext) -> CerecedaParams<Rational> {
    let p = &ctx.params;
    let (u, v, w) = (Rational::one() + &p.p, &p.q - &p.p, -&p.q);
    let seq = ctx.seq();
    CerecedaParams { u, v, w, a: seq.la(0), b: seq.la(1), c: seq.la(2) }
}

fn cereceda_scalar(ctx: &mut PointContext, idx: &IndexPoint, reading: TridiagonalReading) -> Outcome {
    if ctx.params.a.is_zero() {
        return Outcome::Skip("first term not invertible");
    }
    if ctx.params.q.is_zero() {
        return Outcome::Skip("q zero");
    }
    let n = idx.idx("n");
    let cp = cereceda_scalar_params(ctx);
    let det = generic_determinant(&cereceda_matrix(&cp, n, reading).expect("checked")).expect("square");
    Outcome::compare(det, ctx.seq().la(n))
}

fn cereceda_scalar_printed(ctx: &mut PointContext, idx: &IndexPoint) -> Outcome {
    cereceda_scalar(ctx, idx, TridiagonalReading::Printed)
}

fn cereceda_scalar_pattern(ctx: &mut PointContext, idx: &IndexPoint) -> Outcome {
    cereceda_scalar(ctx, idx, TridiagonalReading::PatternCorrected)
}

fn cereceda_hybrid(ctx: &mut PointContext, idx: &IndexPoint, reading: TridiagonalReading) -> Outcome {
    if ctx.params.q.is_zero() {
        return Outcome::Skip("q zero");
    }
    let p = &ctx.params;
    let (u, v, w) = (Rational::one() + &p.p, &p.q - &p.p, -&p.q);
    let seq = ctx.seq();
    let cp = CerecedaParams { u, v, w, a: seq.lah(0), b: seq.lah(1), c: seq.lah(2) };
    if cp.a.character().is_zero() {
        return Outcome::Skip("first term not invertible");
    }
    let n = idx.idx("n");
    let det = generic_determinant(&hybrid_tridiagonal_matrix(&cp, n, reading).expect("checked")).expect("square");
    Outcome::compare(det, ctx.seq().lah(n))
}

fn cereceda_hybrid_printed(ctx: &mut PointContext, idx: &IndexPoint) -> Outcome {
    cereceda_hybrid(ctx, idx, TridiagonalReading::Printed)
}

fn cereceda_hybrid_pattern(ctx: &mut PointContext, idx: &IndexPoint) -> Outcome {
    cereceda_hybrid(ctx, idx, TridiagonalReading::PatternCorrected)
}

use Classification::{MustPass, UnderTest};

pub(crate) fn binet_checks() -> Vec<FnCheck> {
    vec![FnCheck::new("binet", MustPass, |b| single_index("n", 0, b.n(25)), binet)]
}

pub(crate) fn recurrence_checks() -> Vec<FnCheck> {
    vec![
        FnCheck::new("recurrence-equiv-scalar", MustPass, |b| single_index("n", 0, b.n(30)), recurrence_scalar),
        FnCheck::new("recurrence-equiv-hybrid", MustPass, |b| single_index("n", 0, b.n(25)), recurrence_hybrid),
        FnCheck::new("special-case-oracle", MustPass, |b| single_index("n", 0, b.n(30)), special_cases)
            .at(|| vec![SeqParams::leonardo(), SeqParams::ernst()]),
    ]
}

pub(crate) fn hybrid_binet_checks() -> Vec<FnCheck> {
    vec![
        FnCheck::new("hybrid-binet", MustPass, |b| single_index("n", 0, b.n(25)), hybrid_binet),
        FnCheck::new("hybrid-binet-leonardo", MustPass, |b| single_index("m", 0, b.m(20)), hybrid_binet_leonardo)
            .at(|| vec![SeqParams::leonardo()]),
    ]
}

pub(crate) fn seed_checks() -> Vec<FnCheck> {
    vec![FnCheck::new("printed-seeds", UnderTest, |_| single_index("m", 0, 1), seeds).noted(seed_notes)]
}

pub(crate) fn character_product_check() -> FnCheck {
    FnCheck::new("character-product", MustPass, |b| single_index("m", 0, b.m(20)), character_product)
}

pub(crate) fn ogf_checks() -> Vec<FnCheck> {
    vec![
        FnCheck::new("ogf", MustPass, |b| single_index("m", 0, b.m(20)), ogf),
        FnCheck::new("ogf-leonardo", MustPass, |_| single_index("k", 0, 6), ogf_leonardo)
            .at(|| vec![SeqParams::leonardo()]),
    ]
}

pub(crate) fn egf_checks() -> Vec<FnCheck> {
    vec![FnCheck::new("egf", MustPass, |b| single_index("m", 0, b.m(20)), egf).noted(egf_notes)]
}

pub(crate) fn matrix_power_checks() -> Vec<FnCheck> {
    vec![
        FnCheck::new("matrix-power", UnderTest, |b| single_index("m", 0, b.m(15)), matrix_power)
            .noted(matrix_power_notes),
        FnCheck::new("matrix-power-scalar", MustPass, |b| single_index("m", 0, b.m(15)), matrix_power_scalar),
    ]
}

pub(crate) fn column_vector_checks() -> Vec<FnCheck> {
    vec![
        FnCheck::new("column-vector", MustPass, |b| single_index("m", 0, b.m(20)), column_vector),
        FnCheck::new("characteristic-cubic", MustPass, |_| vec![IndexPoint::empty()], cubic),
        FnCheck::new("companion-determinant", MustPass, |_| vec![IndexPoint::empty()], companion_det),
        FnCheck::new("scalar-centrality", MustPass, |b| single_index("m", 0, b.m(5).min(5)), scalar_centrality),
    ]
}

pub(crate) fn cereceda_scalar_checks() -> Vec<FnCheck> {
    vec![
        FnCheck::new("cereceda-scalar-printed", UnderTest, |b| single_index("n", 0, b.n(12)), cereceda_scalar_printed),
        FnCheck::new("cereceda-scalar-pattern", UnderTest, |b| single_index("n", 0, b.n(12)), cereceda_scalar_pattern),
    ]
}

pub(crate) fn cereceda_hybrid_checks() -> Vec<FnCheck> {
    vec![
        FnCheck::new("cereceda-hybrid-printed", UnderTest, |b| single_index("n", 0, b.n(6)), cereceda_hybrid_printed),
        FnCheck::new("cereceda-hybrid-pattern", UnderTest, |b| single_index("n", 0, b.n(6)), cereceda_hybrid_pattern),
    ]
}

fn single_point(params: &SeqParams, bounds: IndexBounds) -> GridSpec {
    GridSpec::single(params).with_bounds(bounds)
}

/// Matrix-power identity at one parameter point for `m ≤ m_max`.
pub fn matrix_power_identity_check(params: &SeqParams, m_max: u32) -> IdentityReport {
    let grid = single_point(params, IndexBounds { m_max: Some(m_max), ..Default::default() });
    run_check(&matrix_power_checks()[0], &grid).report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CerecedaMode {
    Scalar,
    Hybrid,
}

/// Determinant reconstruction for `n ≤ n_max`, one report per matrix reading
/// (printed first, pattern-corrected second).
pub fn cereceda_reconstruction_check(params: &SeqParams, n_max: u32, mode: CerecedaMode) -> Vec<IdentityReport> {
    let grid = single_point(params, IndexBounds { n_max: Some(n_max), ..Default::default() });
    let checks = match mode {
        CerecedaMode::Scalar => cereceda_scalar_checks(),
        CerecedaMode::Hybrid => cereceda_hybrid_checks(),
    };
    checks.iter().map(|c| run_check(c, &grid).report).collect()
}

/// Coefficient-wise exponential generating function check for `m ≤ order`.
pub fn check_egf(params: &SeqParams, order: u32) -> IdentityReport {
    let grid = single_point(params, IndexBounds { m_max: Some(order), ..Default::default() });
    run_check(&egf_checks()[0], &grid).report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_grid_order_and_filter() {
        let pts = index_grid(&[("n", 0, 2), ("u", 0, 2)], |x| x[1] <= x[0]);
        let got: Vec<(i64, i64)> = pts.iter().map(|p| (p.get("n"), p.get("u"))).collect();
        assert_eq!(got, vec![(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2)]);
        assert!(index_grid(&[("n", 1, 0)], |_| true).is_empty());
    }

    #[test]
    fn leonardo_cereceda_printed_reading_reproduces() {
        let reports = cereceda_reconstruction_check(&SeqParams::leonardo(), 12, CerecedaMode::Scalar);
        assert_eq!(reports[0].identity, "cereceda-scalar-printed");
        assert_eq!(reports[0].totals.pass, 13);
        assert!(reports[1].totals.fail > 0);
    }

    #[test]
    fn leonardo_egf_and_matrix_power() {
        assert!(check_egf(&SeqParams::leonardo(), 15).passed());
        let r = matrix_power_identity_check(&SeqParams::leonardo(), 15);
        assert_eq!(r.totals.total, 16);
    }
}
