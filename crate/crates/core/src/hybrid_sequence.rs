//! Generalized Leonardo-Alwyn hybrid numbers
//! `La𝓗_m = L_m + i·L_{m+1} + ε·L_{m+2} + h·L_{m+3}` and their closed forms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hybrid::Hybrid;
use crate::scalar::{QuadExt, Rational, Ring};
use crate::sequence::{la_terms, CharacteristicData, SeqParams};

/// `Ψ = 1 + i + ε + h` and `Ψⱼ = 1 + ψⱼ·i + ψⱼ²·ε + ψⱼ³·h`.
#[derive(Debug, Clone, PartialEq)]
pub struct HybridConstants {
    pub psi_unit: Hybrid<Rational>,
    pub psi1: Hybrid<QuadExt>,
    pub psi2: Hybrid<QuadExt>,
}

impl HybridConstants {
    pub fn new(ch: &CharacteristicData) -> Self {
        let weights = |psi: &QuadExt| {
            let sq = psi * psi;
            let cube = &sq * psi;
            Hybrid::new(psi.one_like(), psi.clone(), sq, cube)
        };
        HybridConstants {
            psi_unit: psi_unit(),
            psi1: weights(&ch.psi1),
            psi2: weights(&ch.psi2),
        }
    }
}

pub fn psi_unit() -> Hybrid<Rational> {
    Hybrid::from_ints(1, 1, 1, 1)
}

/// One entry of the JSON term stream, `{"m": n, "value": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HybridTerm {
    #[serde(rename = "m")]
    pub index: usize,
    pub value: Hybrid<Rational>,
}

fn pack(window: &[Rational]) -> Hybrid<Rational> {
    Hybrid::new(window[0].clone(), window[1].clone(), window[2].clone(), window[3].clone())
}

pub fn lah_by_definition(params: &SeqParams, m: usize) -> Result<Hybrid<Rational>> {
    let terms = la_terms(params, m + 4)?;
    Ok(pack(&terms[m..]))
}

/// `La𝓗_0 .. La𝓗_{count-1}` packed from one scalar run.
pub fn lah_terms(params: &SeqParams, count: usize) -> Result<Vec<Hybrid<Rational>>> {
    let terms = la_terms(params, count + 3)?;
    Ok(terms.windows(4).take(count).map(pack).collect())
}

/// Iterates `La𝓗_{m+2} = p·La𝓗_{m+1} + q·La𝓗_m + r·Ψ`.
///
/// The two seeds come from the definition; the printed seed polynomials are checked
/// separately (see [`printed_seeds`]).
pub fn lah_by_recurrence(params: &SeqParams, count: usize) -> Result<Vec<Hybrid<Rational>>> {
    let seeds = lah_terms(params, 2)?;
    let r_psi = psi_unit().scale(&params.r);
    let mut out: Vec<Hybrid<Rational>> = seeds.into_iter().take(count).collect();
    while out.len() < count {
        let n = out.len();
        let next = out[n - 1].scale(&params.p) + out[n - 2].scale(&params.q) + &r_psi;
        out.push(next);
    }
    Ok(out)
}

/// Readings of the `b` coefficient in the h-component of the closed-form `La𝓗_1` seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeedReading {
    /// `(p²+2pq)b`.
    Printed,
    /// Degree-consistent alternative: `(p³+2pq)b`.
    CubicB,
}

/// Closed-form seed polynomials for `La𝓗_0`, `La𝓗_1`.
pub fn printed_seeds(params: &SeqParams, reading: SeedReading) -> [Hybrid<Rational>; 2] {
    let (p, q, r, a, b) = (&params.p, &params.q, &params.r, &params.a, &params.b);
    let one = Rational::one();
    let two = Rational::integer(2);
    // pb + qa + r
    let c2 = p * b + q * a + r;
    // (p²+q)b + (pq+q)a + (p+1)r
    let c3 = &(p * p + q) * b + &(p * q + q) * a + &(p + &one) * r;
    let b_coeff = match reading {
        SeedReading::Printed => p * p + &two * &(p * q),
        SeedReading::CubicB => p * &(p * p) + &two * &(p * q),
    };
    // (p²+2pq)b + (p²q+pq+q²)a + (p²+p+q+1)r
    let c4 = &b_coeff * b + &(&(p * p) * q + p * q + q * q) * a + &(p * p + p + q + &one) * r;
    [
        Hybrid::new(a.clone(), b.clone(), c2.clone(), c3.clone()),
        Hybrid::new(b.clone(), c2, c3, c4),
    ]
}

/// Per-params evaluator that caches everything the closed forms need: scalar terms,
/// characteristic data, the hybrid weights, and `ℋ_n` values.
///
/// Not shared between threads; each worker builds its own.
#[derive(Debug, Clone)]
pub struct HybridSequence {
    params: SeqParams,
    ch: CharacteristicData,
    constants: HybridConstants,
    scalar: Vec<Rational>,
    homogeneous: Vec<Hybrid<QuadExt>>,
    psi1_pows: Vec<QuadExt>,
    psi2_pows: Vec<QuadExt>,
}

impl HybridSequence {
    pub fn new(params: &SeqParams) -> Result<Self> {
        let ch = CharacteristicData::new(params)?;
        let constants = HybridConstants::new(&ch);
        let one = ch.lift(&Rational::one());
        Ok(HybridSequence {
            params: params.clone(),
            constants,
            scalar: params.seeds().to_vec(),
            homogeneous: Vec::new(),
            psi1_pows: vec![one.clone()],
            psi2_pows: vec![one],
            ch,
        })
    }

    pub fn params(&self) -> &SeqParams {
        &self.params
    }

    pub fn characteristic(&self) -> &CharacteristicData {
        &self.ch
    }

    pub fn constants(&self) -> &HybridConstants {
        &self.constants
    }

    pub fn la(&mut self, n: usize) -> Rational {
        let u = Rational::one() + &self.params.p;
        let v = &self.params.q - &self.params.p;
        let w = -&self.params.q;
        while self.scalar.len() <= n {
            let k = self.scalar.len();
            let next = &u * &self.scalar[k - 1] + &v * &self.scalar[k - 2] + &w * &self.scalar[k - 3];
            self.scalar.push(next);
        }
        self.scalar[n].clone()
    }

    pub fn lah(&mut self, m: usize) -> Hybrid<Rational> {
        self.la(m + 3);
        pack(&self.scalar[m..m + 4])
    }

    pub fn psi1_pow(&mut self, k: usize) -> QuadExt {
        while self.psi1_pows.len() <= k {
            let next = self.psi1_pows.last().unwrap() * &self.ch.psi1;
            self.psi1_pows.push(next);
        }
        self.psi1_pows[k].clone()
    }

    pub fn psi2_pow(&mut self, k: usize) -> QuadExt {
        while self.psi2_pows.len() <= k {
            let next = self.psi2_pows.last().unwrap() * &self.ch.psi2;
            self.psi2_pows.push(next);
        }
        self.psi2_pows[k].clone()
    }

    /// `ℋ_n = (Φ₁ψ₁ⁿΨ₁ − Φ₂ψ₂ⁿΨ₂)/(ψ₁ − ψ₂)`.
    pub fn hpart(&mut self, n: usize) -> Hybrid<QuadExt> {
        while self.homogeneous.len() <= n {
            let k = self.homogeneous.len();
            let (p1, p2) = (self.psi1_pow(k), self.psi2_pow(k));
            let c1 = &self.ch.phi1 * &p1;
            let c2 = &self.ch.phi2 * &p2;
            let num = self.constants.psi1.scale_by(&c1) - self.constants.psi2.scale_by(&c2);
            let value = num.map(|z| self.ch.div_delta(z));
            self.homogeneous.push(value);
        }
        self.homogeneous[n].clone()
    }

    /// `ℋ_n` for any integer `n`; negative indices run `ℋ_{k-1} = (ℋ_{k+1} − p·ℋ_k)/q`
    /// backward and need `q ≠ 0`.
    pub fn hpart_signed(&mut self, n: i64) -> Result<Hybrid<QuadExt>> {
        if n >= 0 {
            return Ok(self.hpart(n as usize));
        }
        let inv_q = self
            .params
            .q
            .recip()
            .map_err(|_| Error::DegenerateParameters("backward recurrence needs q != 0".into()))?;
        let mut next = self.hpart(1);
        let mut cur = self.hpart(0);
        for _ in 0..(-n) {
            let prev = (next - &cur.scale(&self.params.p)).scale(&inv_q);
            next = cur;
            cur = prev;
        }
        Ok(cur)
    }

    /// `𝒦_n(u) = ℋ_n − ℋ_{n+u}`.
    pub fn kshift(&mut self, n: usize, u: usize) -> Hybrid<QuadExt> {
        self.hpart(n) - &self.hpart(n + u)
    }

    /// `(1/ρ)[rΨ + ℋ_m]`, projected to rationals.
    pub fn lah_binet(&mut self, m: usize) -> Result<Hybrid<Rational>> {
        let rho = self.params.require_nondegenerate_rho()?;
        let inv_rho = rho.recip()?;
        let r_psi = self.constants.psi_unit.scale(&self.params.r).lift(&self.ch.d);
        let value = (r_psi + &self.hpart(m)).scale(&inv_rho);
        value.to_rational().map_err(|_| Error::SurdResidue(format!("hybrid Binet at m = {m}: {value:?}")))
    }
}

pub fn lah_binet(params: &SeqParams, m: usize) -> Result<Hybrid<Rational>> {
    HybridSequence::new(params)?.lah_binet(m)
}

pub fn hybrid_homogeneous_part(params: &SeqParams, n: usize) -> Result<Hybrid<QuadExt>> {
    Ok(HybridSequence::new(params)?.hpart(n))
}

pub fn k_shift(params: &SeqParams, n: usize, u: usize) -> Result<Hybrid<QuadExt>> {
    Ok(HybridSequence::new(params)?.kshift(n, u))
}

/// The Leonardo specialization `2(ψ₁^{m+1}Ψ₁ − ψ₂^{m+1}Ψ₂)/(ψ₁ − ψ₂) − Ψ`.
pub fn leonardo_hybrid_binet(m: usize) -> Result<Hybrid<Rational>> {
    let mut seq = HybridSequence::new(&SeqParams::leonardo())?;
    let k1 = seq.psi1_pow(m + 1);
    let k2 = seq.psi2_pow(m + 1);
    let ch = seq.characteristic().clone();
    let c = seq.constants().clone();
    let num = c.psi1.scale_by(&k1) - c.psi2.scale_by(&k2);
    let two = Rational::integer(2);
    let value = num.map(|z| ch.div_delta(z).scale(&two)) - c.psi_unit.lift(&ch.d);
    value.to_rational()
}
