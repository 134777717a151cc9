//! Truncated power series with hybrid coefficients, used to expand the ordinary
//! generating function `Σ La𝓗_m t^m` and to read off exponential generating function
//! coefficients.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hybrid::Hybrid;
use crate::hybrid_sequence::HybridSequence;
use crate::scalar::{QuadExt, Rational, Ring};
use crate::sequence::SeqParams;

/// Coefficients of `t^0 .. t^{order-1}`. `t` is central; coefficients stay on the left.
#[derive(Debug, Clone, PartialEq)]
pub struct HybridSeries {
    coefficients: Vec<Hybrid<Rational>>,
    order: usize,
}

impl HybridSeries {
    /// Truncates or zero-pads `coefficients` to `order` terms.
    pub fn new(mut coefficients: Vec<Hybrid<Rational>>, order: usize) -> Self {
        coefficients.resize(order, Hybrid::zero());
        HybridSeries { coefficients, order }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coefficients(&self) -> &[Hybrid<Rational>] {
        &self.coefficients
    }

    pub fn coefficient(&self, k: usize) -> &Hybrid<Rational> {
        &self.coefficients[k]
    }

    /// Product with a scalar series, truncated at `self.order`.
    pub fn mul_scalar_series(&self, scalar: &[Rational]) -> HybridSeries {
        let mut out = vec![Hybrid::zero(); self.order];
        for (i, c) in self.coefficients.iter().enumerate() {
            for (j, s) in scalar.iter().enumerate() {
                if i + j >= self.order {
                    break;
                }
                if !s.is_zero() {
                    out[i + j] = out[i + j].clone() + &c.scale(s);
                }
            }
        }
        HybridSeries { coefficients: out, order: self.order }
    }

    /// `numerator / denominator` by long division; the denominator's constant term must be
    /// invertible.
    pub fn divide(numerator: &[Hybrid<Rational>], denominator: &[Rational], order: usize) -> Result<HybridSeries> {
        let lead = denominator.first().ok_or(Error::DivisionByZero)?;
        let inv_lead = lead.recip()?;
        let mut out: Vec<Hybrid<Rational>> = Vec::with_capacity(order);
        for k in 0..order {
            let mut acc = numerator.get(k).cloned().unwrap_or_else(Hybrid::zero);
            for (j, d) in denominator.iter().enumerate().skip(1).take_while(|(j, _)| *j <= k) {
                if !d.is_zero() {
                    acc = acc - &out[k - j].scale(d);
                }
            }
            out.push(acc.scale(&inv_lead));
        }
        Ok(HybridSeries { coefficients: out, order })
    }
}

impl Serialize for HybridSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coefficients.serialize(serializer)
    }
}

/// `1 − (1+p)t − (q−p)t² + qt³`.
pub fn ogf_denominator(params: &SeqParams) -> Vec<Rational> {
    vec![
        Rational::one(),
        -(Rational::one() + &params.p),
        -(&params.q - &params.p),
        params.q.clone(),
    ]
}

/// `[La𝓗_0, La𝓗_1 − (1+p)La𝓗_0, La𝓗_2 − (1+p)La𝓗_1 − (q−p)La𝓗_0]`, recomputed from the
/// sequence itself.
pub fn ogf_numerator(seq: &mut HybridSequence) -> [Hybrid<Rational>; 3] {
    let u = Rational::one() + &seq.params().p;
    let v = &seq.params().q - &seq.params().p;
    let (h0, h1, h2) = (seq.lah(0), seq.lah(1), seq.lah(2));
    let n1 = h1.clone() - &h0.scale(&u);
    let n2 = h2 - &h1.scale(&u) - &h0.scale(&v);
    [h0, n1, n2]
}

pub fn expand_ogf(params: &SeqParams, order: usize) -> Result<HybridSeries> {
    if order < 1 {
        return Err(Error::InvalidParams("series order must be at least 1".into()));
    }
    let mut seq = HybridSequence::new(params)?;
    let num = ogf_numerator(&mut seq);
    HybridSeries::divide(&num, &ogf_denominator(params), order)
}

/// `m!` times the `t^m` coefficient of
/// `(1/ρ)[rΨe^t + (Φ₁Ψ₁e^{ψ₁t} − Φ₂Ψ₂e^{ψ₂t})/(ψ₁−ψ₂)]`, i.e.
/// `(1/ρ)[rΨ + (Φ₁Ψ₁ψ₁^m − Φ₂Ψ₂ψ₂^m)/(ψ₁−ψ₂)]`.
pub fn egf_coefficient(seq: &mut HybridSequence, m: usize) -> Result<Hybrid<QuadExt>> {
    egf_coefficient_with(seq, m, false)
}

/// The same coefficient with both exponentials read as `e^{ψ₁t}`.
pub fn egf_coefficient_single_exponent(seq: &mut HybridSequence, m: usize) -> Result<Hybrid<QuadExt>> {
    egf_coefficient_with(seq, m, true)
}

fn egf_coefficient_with(seq: &mut HybridSequence, m: usize, both_psi1: bool) -> Result<Hybrid<QuadExt>> {
    let rho = seq.params().require_nondegenerate_rho()?;
    let inv_rho = rho.recip()?;
    let pow1 = seq.psi1_pow(m);
    let pow2 = if both_psi1 { pow1.clone() } else { seq.psi2_pow(m) };
    let ch = seq.characteristic().clone();
    let c = seq.constants();
    // Hybrid weight on the left, scalar factors on the right.
    let first = c.psi1.map(|z| z * &ch.phi1 * &pow1);
    let second = c.psi2.map(|z| z * &ch.phi2 * &pow2);
    let r_psi = c.psi_unit.scale(&seq.params().r).lift(&ch.d);
    let body = (first - &second).map(|z| ch.div_delta(z));
    Ok((r_psi + &body).scale(&inv_rho))
}
