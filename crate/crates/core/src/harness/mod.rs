//! Exact two-sided evaluation of identities over parameter grids.
//!
//! An identity is a [`Check`]: for each parameter point and each index assignment it
//! evaluates both sides exactly and reports whether they agree. [`run_check`] drives a
//! check over a [`GridSpec`] and assembles a deterministic [`IdentityReport`].

mod catalog;
mod checks;
pub mod dsl;
mod grid;
mod identities;
mod report;
mod runner;

use std::collections::HashMap;

use serde::{Serialize, Serializer};

pub use catalog::{catalog, catalog_names, check_named, checks_for, Suite};
pub use checks::{cereceda_reconstruction_check, check_egf, matrix_power_identity_check, CerecedaMode};
pub use grid::{GridSpec, IndexBounds};
pub use identities::{check_character_formula, check_corollaries, check_summation, check_vajda};
pub use report::{Classification, Counterexample, IdentityReport, Status, Totals};
pub use runner::{run_check, verify_report, CheckRun, Verdict, COUNTEREXAMPLE_CAP};

use crate::error::Result;
use crate::hybrid::Hybrid;
use crate::hybrid_sequence::HybridSequence;
use crate::matrix::RingMatrix;
use crate::scalar::{QuadExt, Rational, Ring};
use crate::sequence::SeqParams;

/// Named integer index assignment such as `{n: 3, u: 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexPoint(Vec<(String, i64)>);

impl IndexPoint {
    pub fn new<S: Into<String>>(pairs: impl IntoIterator<Item = (S, i64)>) -> Self {
        let mut v: Vec<(String, i64)> = pairs.into_iter().map(|(k, x)| (k.into(), x)).collect();
        v.sort();
        IndexPoint(v)
    }

    pub fn empty() -> Self {
        IndexPoint(Vec::new())
    }

    /// Panics when `name` is not assigned; checks only ask for indices they enumerate.
    pub fn get(&self, name: &str) -> i64 {
        self.try_get(name).unwrap_or_else(|| panic!("index `{name}` not bound"))
    }

    pub fn try_get(&self, name: &str) -> Option<i64> {
        self.0.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    pub fn idx(&self, name: &str) -> usize {
        usize::try_from(self.get(name)).expect("nonnegative index")
    }

    pub fn pairs(&self) -> &[(String, i64)] {
        &self.0
    }
}

impl Serialize for IndexPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_map(self.0.iter().map(|(k, v)| (k, v)))
    }
}

/// An exact value carried in a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Scalar(Rational),
    Quad(QuadExt),
    Hybrid(Hybrid<Rational>),
    HybridQuad(Hybrid<QuadExt>),
    Matrix(Vec<Vec<Value>>),
}

impl From<Rational> for Value {
    fn from(x: Rational) -> Self {
        Value::Scalar(x)
    }
}

impl From<QuadExt> for Value {
    fn from(x: QuadExt) -> Self {
        Value::Quad(x)
    }
}

impl From<Hybrid<Rational>> for Value {
    fn from(x: Hybrid<Rational>) -> Self {
        Value::Hybrid(x)
    }
}

impl From<Hybrid<QuadExt>> for Value {
    fn from(x: Hybrid<QuadExt>) -> Self {
        Value::HybridQuad(x)
    }
}

impl<S: Ring + Into<Value>> From<RingMatrix<S>> for Value {
    fn from(m: RingMatrix<S>) -> Self {
        Value::Matrix(m.to_rows().into_iter().map(|r| r.into_iter().map(Into::into).collect()).collect())
    }
}

/// Both sides of a failed comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub lhs: Value,
    pub rhs: Value,
    pub difference: Value,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Pass,
    Fail(Box<Evaluation>),
    Skip(&'static str),
}

impl Outcome {
    pub fn compare<T: Ring + Into<Value>>(lhs: T, rhs: T) -> Outcome {
        if lhs == rhs {
            Outcome::Pass
        } else {
            let difference = lhs.clone() - &rhs;
            Outcome::Fail(Box::new(Evaluation { lhs: lhs.into(), rhs: rhs.into(), difference: difference.into() }))
        }
    }

    pub fn compare_matrix<S: Ring + Into<Value>>(lhs: RingMatrix<S>, rhs: RingMatrix<S>) -> Outcome {
        if lhs == rhs {
            Outcome::Pass
        } else {
            let difference = lhs.sub(&rhs).expect("same shape");
            Outcome::Fail(Box::new(Evaluation { lhs: lhs.into(), rhs: rhs.into(), difference: difference.into() }))
        }
    }

    pub fn from_result(r: Result<Outcome>) -> Outcome {
        r.unwrap_or(Outcome::Skip("evaluation error"))
    }

    pub fn holds(&self) -> Option<bool> {
        match self {
            Outcome::Pass => Some(true),
            Outcome::Fail(_) => Some(false),
            Outcome::Skip(_) => None,
        }
    }
}

/// One identity under test.
pub trait Check: Send + Sync {
    fn name(&self) -> &str;

    fn classification(&self) -> Classification;

    fn index_points(&self, bounds: &IndexBounds) -> Vec<IndexPoint>;

    fn evaluate(&self, ctx: &mut PointContext, idx: &IndexPoint) -> Outcome;

    /// Parameter points to use instead of the grid, for identities about one special case.
    fn fixed_params(&self) -> Option<Vec<SeqParams>> {
        None
    }

    /// Re-evaluates a failing point by an independent route. `Some(true)` means the second
    /// route reproduces both sides exactly and they differ, `Some(false)` means it does not,
    /// `None` means no second route exists.
    fn confirm(&self, _params: &SeqParams, _idx: &IndexPoint, _lhs: &Value, _rhs: &Value) -> Option<bool> {
        None
    }

    /// Extra observations added to the report after the run.
    fn notes(&self, _grid: &GridSpec) -> Vec<String> {
        Vec::new()
    }
}

/// Per-parameter-point evaluation state, confined to one worker.
pub struct PointContext {
    pub params: SeqParams,
    seq: Option<HybridSequence>,
    hpart_products: HashMap<(usize, usize), Hybrid<QuadExt>>,
    lah_products: HashMap<(usize, usize), Hybrid<Rational>>,
    psi_products: Option<(Hybrid<QuadExt>, Hybrid<QuadExt>)>,
    vajda_coefficient: Option<QuadExt>,
    memo_quad: HashMap<MemoKey, Option<QuadExt>>,
    memo_hybrid: HashMap<MemoKey, Option<Hybrid<QuadExt>>>,
    memo_scalar: HashMap<MemoKey, Option<Rational>>,
    memo_rational: HashMap<MemoKey, Option<Hybrid<Rational>>>,
    hpart_rational: HashMap<(usize, usize), Hybrid<Rational>>,
}

/// Cache key for intermediate values: a tag and up to four integers.
pub(crate) type MemoKey = (u8, [i64; 4]);

impl PointContext {
    pub fn new(params: &SeqParams) -> Self {
        PointContext {
            params: params.clone(),
            seq: HybridSequence::new(params).ok(),
            hpart_products: HashMap::new(),
            lah_products: HashMap::new(),
            psi_products: None,
            vajda_coefficient: None,
            memo_quad: HashMap::new(),
            memo_hybrid: HashMap::new(),
            memo_scalar: HashMap::new(),
            memo_rational: HashMap::new(),
            hpart_rational: HashMap::new(),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.seq.is_some()
    }

    pub fn rho_is_zero(&self) -> bool {
        self.params.rho().is_zero()
    }

    /// Panics on invalid parameters; the runner skips those points before evaluating.
    pub fn seq(&mut self) -> &mut HybridSequence {
        self.seq.as_mut().expect("valid parameters")
    }

    /// `ℋ_i·ℋ_j`, cached.
    pub fn hpart_product(&mut self, i: usize, j: usize) -> Hybrid<QuadExt> {
        if let Some(v) = self.hpart_products.get(&(i, j)) {
            return v.clone();
        }
        let seq = self.seq();
        let v = seq.hpart(i) * &seq.hpart(j);
        self.hpart_products.insert((i, j), v.clone());
        v
    }

    /// `La𝓗_i·La𝓗_j`, cached.
    pub fn lah_product(&mut self, i: usize, j: usize) -> Hybrid<Rational> {
        if let Some(v) = self.lah_products.get(&(i, j)) {
            return v.clone();
        }
        let seq = self.seq();
        let v = seq.lah(i) * &seq.lah(j);
        self.lah_products.insert((i, j), v.clone());
        v
    }

    /// `(Ψ₁Ψ₂, Ψ₂Ψ₁)`.
    pub fn psi_products(&mut self) -> (Hybrid<QuadExt>, Hybrid<QuadExt>) {
        if self.psi_products.is_none() {
            let c = self.seq().constants().clone();
            self.psi_products = Some((&c.psi1 * &c.psi2, &c.psi2 * &c.psi1));
        }
        self.psi_products.clone().unwrap()
    }

    /// `Φ₁Φ₂/Δ²`, with `Δ² = D`.
    pub fn vajda_coefficient(&mut self) -> QuadExt {
        if self.vajda_coefficient.is_none() {
            let ch = self.seq().characteristic();
            let inv_d = ch.d.recip().expect("nonzero discriminant");
            self.vajda_coefficient = Some((&ch.phi1 * &ch.phi2).scale(&inv_d));
        }
        self.vajda_coefficient.clone().unwrap()
    }

    /// `ψⱼ^k` for `j ∈ {1, 2}` and any integer `k`; `None` when `ψⱼ` is not invertible.
    pub fn psi_pow_signed(&mut self, j: u8, k: i64) -> Option<QuadExt> {
        let seq = self.seq();
        let base = |seq: &mut HybridSequence, k: usize| if j == 1 { seq.psi1_pow(k) } else { seq.psi2_pow(k) };
        if k >= 0 {
            Some(base(seq, k as usize))
        } else {
            base(seq, (-k) as usize).inverse()
        }
    }

    /// `(−q)^e`; `None` for a negative power of zero.
    pub fn neg_q_pow(&self, e: i64) -> Option<Rational> {
        (-&self.params.q).powi(i32::try_from(e).ok()?).ok()
    }

    pub fn hpart_signed(&mut self, n: i64) -> Option<Hybrid<QuadExt>> {
        self.seq().hpart_signed(n).ok()
    }

    /// `𝒦_n(u) = ℋ_n − ℋ_{n+u}` for any integers.
    pub fn kshift_signed(&mut self, n: i64, u: i64) -> Option<Hybrid<QuadExt>> {
        Some(self.hpart_signed(n)? - &self.hpart_signed(n + u)?)
    }

    /// `Ψ` in the extension ring.
    pub fn psi_lifted(&mut self) -> Hybrid<QuadExt> {
        let d = self.seq().characteristic().d.clone();
        self.seq().constants().psi_unit.lift(&d)
    }

    pub fn discriminant(&self) -> Rational {
        self.params.discriminant()
    }

    pub(crate) fn memo_quad(&mut self, key: MemoKey, f: impl FnOnce(&mut Self) -> Option<QuadExt>) -> Option<QuadExt> {
        if let Some(v) = self.memo_quad.get(&key) {
            return v.clone();
        }
        let v = f(self);
        self.memo_quad.insert(key, v.clone());
        v
    }

    pub(crate) fn memo_hybrid(
        &mut self,
        key: MemoKey,
        f: impl FnOnce(&mut Self) -> Option<Hybrid<QuadExt>>,
    ) -> Option<Hybrid<QuadExt>> {
        if let Some(v) = self.memo_hybrid.get(&key) {
            return v.clone();
        }
        let v = f(self);
        self.memo_hybrid.insert(key, v.clone());
        v
    }

    pub(crate) fn memo_scalar(&mut self, key: MemoKey, f: impl FnOnce(&mut Self) -> Option<Rational>) -> Option<Rational> {
        if let Some(v) = self.memo_scalar.get(&key) {
            return v.clone();
        }
        let v = f(self);
        self.memo_scalar.insert(key, v.clone());
        v
    }

    pub(crate) fn memo_rational(
        &mut self,
        key: MemoKey,
        f: impl FnOnce(&mut Self) -> Option<Hybrid<Rational>>,
    ) -> Option<Hybrid<Rational>> {
        if let Some(v) = self.memo_rational.get(&key) {
            return v.clone();
        }
        let v = f(self);
        self.memo_rational.insert(key, v.clone());
        v
    }

    /// `ℋ_i·ℋ_j` with rational components, cached; `None` if either factor has a surd part.
    pub fn hpart_product_rational(&mut self, i: usize, j: usize) -> Option<Hybrid<Rational>> {
        if let Some(v) = self.hpart_rational.get(&(i, j)) {
            return Some(v.clone());
        }
        let seq = self.seq();
        let v = seq.hpart(i).to_rational().ok()? * &seq.hpart(j).to_rational().ok()?;
        self.hpart_rational.insert((i, j), v.clone());
        Some(v)
    }
}
