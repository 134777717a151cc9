use super::RingMatrix;
use crate::error::{Error, Result};
use crate::scalar::{Rational, Ring};

/// Third-order recurrence `x_{n+3} = u·x_{n+2} + v·x_{n+1} + w·x_n` with seeds
/// `x_0 = A`, `x_1 = B`, `x_2 = C`.
#[derive(Debug, Clone, PartialEq)]
pub struct CerecedaParams<S> {
    pub u: Rational,
    pub v: Rational,
    pub w: Rational,
    pub a: S,
    pub b: S,
    pub c: S,
}

/// Which layout of the bordered tridiagonal matrix to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TridiagonalReading {
    /// The literal layout, including `A` at row 3, column 1.
    Printed,
    /// Every row from 3 on is `[1/w, −v/w, u, w]` around the diagonal.
    PatternCorrected,
}

/// The `(n+1)×(n+1)` matrix
///
/// ```text
/// A     1     0     0    ...
/// Au−B  u     1/A   0    ...
/// 0     Bu−C  u     w    ...
/// 0     A     −v/w  u    w
/// 0     0     1/w   −v/w u    w
///                   ...
/// ```
///
/// whose determinant (first-column expansion) is meant to be `x_n`.
pub fn cereceda_matrix<S: Ring>(cp: &CerecedaParams<S>, n: usize, reading: TridiagonalReading) -> Result<RingMatrix<S>> {
    build(cp, n, reading, None)
}

/// The hybrid variant: under `Printed` the entry at row 4, column 2 is the literal `1/2`
/// (where the pattern gives `1/w`). Under `PatternCorrected` this is identical to
/// [`cereceda_matrix`].
pub fn hybrid_tridiagonal_matrix<S: Ring>(cp: &CerecedaParams<S>, n: usize, reading: TridiagonalReading) -> Result<RingMatrix<S>> {
    match reading {
        TridiagonalReading::Printed => build(cp, n, reading, Some(Rational::new(1, 2))),
        TridiagonalReading::PatternCorrected => build(cp, n, reading, None),
    }
}

fn build<S: Ring>(
    cp: &CerecedaParams<S>,
    n: usize,
    reading: TridiagonalReading,
    row4_override: Option<Rational>,
) -> Result<RingMatrix<S>> {
    let a_inv = cp.a.inverse().ok_or_else(|| Error::NonInvertible(format!("A = {:?}", cp.a)))?;
    if cp.w.is_zero() {
        return Err(Error::ZeroCoefficient("w"));
    }
    let w_inv = cp.w.recip()?;
    let like = &cp.a;
    let k = |x: &Rational| like.embed(x);
    let size = n + 1;
    let mut m = RingMatrix::filled(size, size, like.zero_like());
    let mut put = |i: usize, j: usize, value: S| {
        if i < size && j < size {
            m.set(i, j, value);
        }
    };

    put(0, 0, cp.a.clone());
    put(0, 1, like.one_like());
    put(1, 0, cp.a.scale(&cp.u) - &cp.b);
    put(1, 1, k(&cp.u));
    put(1, 2, a_inv);
    put(2, 1, cp.b.scale(&cp.u) - &cp.c);
    put(2, 2, k(&cp.u));
    put(2, 3, k(&cp.w));
    let neg_v_over_w = -(&cp.v * &w_inv);
    for row in 3..size {
        let sub2 = match (row, reading) {
            (3, TridiagonalReading::Printed) => cp.a.clone(),
            (4, TridiagonalReading::Printed) if row4_override.is_some() => k(row4_override.as_ref().unwrap()),
            _ => k(&w_inv),
        };
        put(row, row - 2, sub2);
        put(row, row - 1, k(&neg_v_over_w));
        put(row, row, k(&cp.u));
        put(row, row + 1, k(&cp.w));
    }
    Ok(m)
}
