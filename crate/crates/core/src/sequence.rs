//! The scalar generalized Leonardo-Alwyn sequence
//! `L_{n+3} = (1+p)L_{n+2} + (q−p)L_{n+1} − q·L_n` with `L_0 = a`, `L_1 = b`,
//! `L_2 = pb + qa + r`, equivalently `L_{n+2} = p·L_{n+1} + q·L_n + r`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{QuadExt, Rational, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeqParams {
    pub p: Rational,
    pub q: Rational,
    pub r: Rational,
    pub a: Rational,
    pub b: Rational,
}

impl SeqParams {
    /// Validated constructor.
    pub fn new(p: Rational, q: Rational, r: Rational, a: Rational, b: Rational) -> Result<Self> {
        let params = SeqParams { p, q, r, a, b };
        params.validate()?;
        Ok(params)
    }

    pub fn from_ints(p: i64, q: i64, r: i64, a: i64, b: i64) -> Self {
        SeqParams { p: p.into(), q: q.into(), r: r.into(), a: a.into(), b: b.into() }
    }

    /// `p = q = r = 1`, `a = b = 1`.
    pub fn leonardo() -> Self {
        SeqParams::from_ints(1, 1, 1, 1, 1)
    }

    /// `p = 1`, `q = 2`, `r = 1`, `a = b = 1`.
    pub fn ernst() -> Self {
        SeqParams::from_ints(1, 2, 1, 1, 1)
    }

    pub fn is_leonardo(&self) -> bool {
        *self == SeqParams::leonardo()
    }

    /// `D = p² + 4q`.
    pub fn discriminant(&self) -> Rational {
        &self.p * &self.p + Rational::integer(4) * &self.q
    }

    /// `ρ = 1 − p − q`.
    pub fn rho(&self) -> Rational {
        Rational::one() - &self.p - &self.q
    }

    pub fn validate(&self) -> Result<()> {
        if self.discriminant().is_zero() {
            return Err(Error::InvalidParams(format!(
                "p²+4q must be nonzero (p = {}, q = {})",
                self.p, self.q
            )));
        }
        Ok(())
    }

    pub(crate) fn require_nondegenerate_rho(&self) -> Result<Rational> {
        let rho = self.rho();
        if rho.is_zero() {
            return Err(Error::DegenerateParameters(format!(
                "1-p-q = 0 (p = {}, q = {})",
                self.p, self.q
            )));
        }
        Ok(rho)
    }

    pub fn seeds(&self) -> [Rational; 3] {
        let c = &self.p * &self.b + &self.q * &self.a + &self.r;
        [self.a.clone(), self.b.clone(), c]
    }
}

/// Roots and Binet coefficients, all in `Q[t]/(t² − D)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicData {
    pub d: Rational,
    pub psi1: QuadExt,
    pub psi2: QuadExt,
    /// `ψ₁ − ψ₂`, which is `t` itself.
    pub delta: QuadExt,
    pub rho: Rational,
    pub phi1: QuadExt,
    pub phi2: QuadExt,
}

impl CharacteristicData {
    pub fn new(params: &SeqParams) -> Result<Self> {
        params.validate()?;
        let d = params.discriminant();
        let half = Rational::new(1, 2);
        let psi1 = QuadExt::new(&params.p * &half, half.clone(), d.clone());
        let psi2 = psi1.surd_conjugate();
        let delta = &psi1 - &psi2;
        let rho = params.rho();
        let (p, q, r, a, b) = (&params.p, &params.q, &params.r, &params.a, &params.b);
        // Φ(ψ) = (ρa − r)ψ + ρb + (p² + pq − p)a + (p − 1)r
        let slope = &rho * a - r;
        let intercept = &rho * b + &(p * p + p * q - p) * a + &(p - &Rational::one()) * r;
        let phi = |psi: &QuadExt| psi.scale(&slope) + QuadExt::rational(intercept.clone(), &d);
        let phi1 = phi(&psi1);
        let phi2 = phi(&psi2);
        Ok(CharacteristicData { d, psi1, psi2, delta, rho, phi1, phi2 })
    }

    pub fn lift(&self, x: &Rational) -> QuadExt {
        QuadExt::rational(x.clone(), &self.d)
    }

    /// Division by `ψ₁ − ψ₂ = t`, i.e. multiplication by `t / D`.
    pub fn div_delta(&self, z: &QuadExt) -> QuadExt {
        let inv_d = self.d.recip().expect("validated discriminant is nonzero");
        (z * &self.delta).scale(&inv_d)
    }

    /// `(Φ₁ψ₁^m − Φ₂ψ₂^m) / (ψ₁ − ψ₂)` in the extension ring.
    pub fn homogeneous_quad(&self, m: u32) -> QuadExt {
        let num = &self.phi1 * &self.psi1.pow(m) - &self.phi2 * &self.psi2.pow(m);
        self.div_delta(&num)
    }
}

pub fn la_terms(params: &SeqParams, count: usize) -> Result<Vec<Rational>> {
    params.validate()?;
    let u = Rational::one() + &params.p;
    let v = &params.q - &params.p;
    let w = -&params.q;
    let mut out: Vec<Rational> = params.seeds().into_iter().take(count).collect();
    while out.len() < count {
        let n = out.len();
        let next = &u * &out[n - 1] + &v * &out[n - 2] + &w * &out[n - 3];
        out.push(next);
    }
    Ok(out)
}

/// Same sequence through `L_{n+2} = p·L_{n+1} + q·L_n + r`.
pub fn la_terms_inhomogeneous(params: &SeqParams, count: usize) -> Result<Vec<Rational>> {
    params.validate()?;
    let mut out: Vec<Rational> = [params.a.clone(), params.b.clone()].into_iter().take(count).collect();
    while out.len() < count {
        let n = out.len();
        let next = &params.p * &out[n - 1] + &params.q * &out[n - 2] + &params.r;
        out.push(next);
    }
    Ok(out)
}

/// Closed form `(1/ρ)·[r + (Φ₁ψ₁ⁿ − Φ₂ψ₂ⁿ)/(ψ₁ − ψ₂)]`, evaluated in the extension ring.
pub fn la_binet(params: &SeqParams, n: u32) -> Result<Rational> {
    let ch = CharacteristicData::new(params)?;
    la_binet_with(&ch, &params.r, n)
}

pub(crate) fn la_binet_with(ch: &CharacteristicData, r: &Rational, n: u32) -> Result<Rational> {
    if ch.rho.is_zero() {
        return Err(Error::DegenerateParameters("1-p-q = 0".into()));
    }
    let inv_rho = ch.rho.recip()?;
    let value = (ch.lift(r) + ch.homogeneous_quad(n)).scale(&inv_rho);
    value.to_rational().map_err(|_| Error::SurdResidue(format!("Binet value at n = {n}: {value}")))
}

/// `H_m = (Φ₁ψ₁^m − Φ₂ψ₂^m)/(ψ₁ − ψ₂)`; defined even when `ρ = 0`.
pub fn homogeneous_part(params: &SeqParams, m: u32) -> Result<Rational> {
    let ch = CharacteristicData::new(params)?;
    let h = ch.homogeneous_quad(m);
    h.to_rational().map_err(|_| Error::SurdResidue(format!("H_{m} = {h}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialCase {
    Leonardo,
    Ernst,
}

/// `Le_n = 2F_{n+1} − 1` and `Er_n = (3J_{n+1} − 1)/2`, from plain Fibonacci and Jacobsthal
/// recurrences.
pub fn special_case_oracle(kind: SpecialCase, n: usize) -> Rational {
    let (c1, c2): (i64, i64) = match kind {
        SpecialCase::Leonardo => (1, 1),
        SpecialCase::Ernst => (1, 2),
    };
    // F_0 = 0, F_1 = 1 and J_0 = 0, J_1 = 1 share the same seeds.
    let mut prev = BigInt::zero();
    let mut cur = BigInt::one();
    for _ in 0..n {
        let next = &cur * c1 + &prev * c2;
        prev = std::mem::replace(&mut cur, next);
    }
    let idx_next = Rational::from(cur);
    match kind {
        SpecialCase::Leonardo => Rational::integer(2) * idx_next - Rational::one(),
        SpecialCase::Ernst => (Rational::integer(3) * idx_next - Rational::one()) * Rational::new(1, 2),
    }
}

/// Two-column CSV, `n,value`.
pub fn terms_csv(terms: &[Rational]) -> String {
    let mut out = String::from("n,value\n");
    for (n, t) in terms.iter().enumerate() {
        let _ = writeln!(out, "{n},{t}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::integer(x)).collect()
    }

    #[test]
    fn leonardo_and_ernst_terms() {
        assert_eq!(la_terms(&SeqParams::leonardo(), 6).unwrap(), ints(&[1, 1, 3, 5, 9, 15]));
        assert_eq!(la_terms(&SeqParams::ernst(), 6).unwrap(), ints(&[1, 1, 4, 7, 16, 31]));
    }

    #[test]
    fn zero_solution() {
        let t = la_terms(&SeqParams::from_ints(2, 3, 0, 0, 0), 10).unwrap();
        assert!(t.iter().all(Rational::is_zero));
    }

    #[test]
    fn short_counts() {
        assert!(la_terms(&SeqParams::leonardo(), 0).unwrap().is_empty());
        assert_eq!(la_terms(&SeqParams::leonardo(), 2).unwrap(), ints(&[1, 1]));
    }

    #[test]
    fn zero_discriminant_rejected() {
        let bad = SeqParams::from_ints(2, -1, 1, 1, 1);
        assert!(matches!(la_terms(&bad, 3), Err(Error::InvalidParams(_))));
        assert!(matches!(la_binet(&bad, 3), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn binet_examples() {
        let leo = SeqParams::leonardo();
        assert_eq!(la_binet(&leo, 5).unwrap(), Rational::integer(15));
        let p = SeqParams::from_ints(2, 3, -1, 4, 7);
        assert_eq!(la_binet(&p, 0).unwrap(), Rational::integer(4));
        let ch = CharacteristicData::new(&leo).unwrap();
        assert_eq!(ch.phi1, ch.psi1.scale(&Rational::integer(-2)));
        assert_eq!(ch.phi2, ch.psi2.scale(&Rational::integer(-2)));
        assert_eq!(ch.delta, QuadExt::surd(&Rational::integer(5)));
    }

    #[test]
    fn binet_degenerate_rho() {
        // p + q = 1
        let p = SeqParams::from_ints(3, -2, 1, 1, 1);
        assert!(matches!(la_binet(&p, 2), Err(Error::DegenerateParameters(_))));
        // H_m is still available
        assert!(homogeneous_part(&p, 2).is_ok());
    }

    #[test]
    fn homogeneous_examples() {
        let leo = SeqParams::leonardo();
        assert_eq!(homogeneous_part(&leo, 0).unwrap(), Rational::integer(-2));
        assert_eq!(homogeneous_part(&leo, 1).unwrap(), Rational::integer(-2));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(special_case_oracle(SpecialCase::Leonardo, 4), Rational::integer(9));
        assert_eq!(special_case_oracle(SpecialCase::Ernst, 5), Rational::integer(31));
        assert_eq!(special_case_oracle(SpecialCase::Leonardo, 0), Rational::integer(1));
    }

    #[test]
    fn csv_output() {
        let csv = terms_csv(&ints(&[1, 1, 3]));
        assert_eq!(csv, "n,value\n0,1\n1,1\n2,3\n");
    }
}
