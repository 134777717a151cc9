//! The noncommutative ring of hybrid numbers `a + b·i + c·ε + d·h` with `i² = −1`, `ε² = 0`,
//! `h² = 1` and `ih = −hi = ε + i`, over any commutative scalar ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{CommutativeRing, QuadExt, Rational, Ring};

/// Basis order used by [`UNIT_TABLE`].
pub const BASIS: [&str; 4] = ["1", "i", "eps", "h"];

/// `UNIT_TABLE[row][col]` holds the coefficients (over the basis `1, i, ε, h`) of the product
/// `BASIS[row] · BASIS[col]`.
pub const UNIT_TABLE: [[[i8; 4]; 4]; 4] = [
    // 1·x
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    // i·1 = i, i·i = −1, i·ε = 1 − h, i·h = ε + i
    [[0, 1, 0, 0], [-1, 0, 0, 0], [1, 0, 0, -1], [0, 1, 1, 0]],
    // ε·1 = ε, ε·i = 1 + h, ε·ε = 0, ε·h = −ε
    [[0, 0, 1, 0], [1, 0, 0, 1], [0, 0, 0, 0], [0, 0, -1, 0]],
    // h·1 = h, h·i = −(ε + i), h·ε = ε, h·h = 1
    [[0, 0, 0, 1], [0, -1, -1, 0], [0, 0, 1, 0], [1, 0, 0, 0]],
];

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hybrid<S> {
    pub re: S,
    #[serde(rename = "i")]
    pub im_i: S,
    #[serde(rename = "eps")]
    pub im_eps: S,
    #[serde(rename = "h")]
    pub im_h: S,
}

impl<S> Hybrid<S> {
    pub fn new(re: S, im_i: S, im_eps: S, im_h: S) -> Self {
        Hybrid { re, im_i, im_eps, im_h }
    }

    pub fn components(&self) -> [&S; 4] {
        [&self.re, &self.im_i, &self.im_eps, &self.im_h]
    }

    pub fn map<T>(&self, mut f: impl FnMut(&S) -> T) -> Hybrid<T> {
        Hybrid { re: f(&self.re), im_i: f(&self.im_i), im_eps: f(&self.im_eps), im_h: f(&self.im_h) }
    }

    pub fn try_map<T>(&self, mut f: impl FnMut(&S) -> Result<T>) -> Result<Hybrid<T>> {
        Ok(Hybrid {
            re: f(&self.re)?,
            im_i: f(&self.im_i)?,
            im_eps: f(&self.im_eps)?,
            im_h: f(&self.im_h)?,
        })
    }
}

impl<S: Ring> Hybrid<S> {
    /// A scalar `s` embedded as `s + 0i + 0ε + 0h`.
    pub fn scalar(s: S) -> Self {
        let z = s.zero_like();
        Hybrid { re: s, im_i: z.clone(), im_eps: z.clone(), im_h: z }
    }

    /// Basis element `BASIS[k]` with the scalar ring of `like`.
    pub fn unit(k: usize, like: &S) -> Self {
        let mut c = [like.zero_like(), like.zero_like(), like.zero_like(), like.zero_like()];
        c[k] = like.one_like();
        let [re, im_i, im_eps, im_h] = c;
        Hybrid { re, im_i, im_eps, im_h }
    }

    /// `s·z` for a scalar `s`; scalars are central, so this is also `z·s`.
    pub fn scale_by(&self, s: &S) -> Self {
        self.map(|c| s.clone() * c)
    }

    pub fn conj(&self) -> Self {
        Hybrid {
            re: self.re.clone(),
            im_i: -self.im_i.clone(),
            im_eps: -self.im_eps.clone(),
            im_h: -self.im_h.clone(),
        }
    }

    /// Product by the explicit expansion of [`UNIT_TABLE`].
    pub fn hybrid_mul(&self, rhs: &Self) -> Self {
        let (a1, b1, c1, d1) = (&self.re, &self.im_i, &self.im_eps, &self.im_h);
        let (a2, b2, c2, d2) = (&rhs.re, &rhs.im_i, &rhs.im_eps, &rhs.im_h);
        let m = |x: &S, y: &S| x.clone() * y;
        let b1d2 = m(b1, d2);
        let d1b2 = m(d1, b2);
        let b1c2 = m(b1, c2);
        let c1b2 = m(c1, b2);
        Hybrid {
            re: m(a1, a2) - m(b1, b2) + &b1c2 + &c1b2 + m(d1, d2),
            im_i: m(a1, b2) + m(b1, a2) + &b1d2 - &d1b2,
            im_eps: m(a1, c2) + m(c1, a2) + b1d2 - d1b2 - m(c1, d2) + m(d1, c2),
            im_h: m(a1, d2) + m(d1, a2) - b1c2 + c1b2,
        }
    }

    /// Product computed by distributing over the basis and looking up each unit product in
    /// [`UNIT_TABLE`]. Slower than [`Hybrid::hybrid_mul`]; kept as a cross-check.
    pub fn table_mul(&self, rhs: &Self) -> Self {
        let zero = self.re.zero_like();
        let mut out = [zero.clone(), zero.clone(), zero.clone(), zero];
        let lhs = self.components();
        let rhs_c = rhs.components();
        for (row, l) in lhs.iter().enumerate() {
            for (col, r) in rhs_c.iter().enumerate() {
                let prod = (*l).clone() * *r;
                for (k, coeff) in UNIT_TABLE[row][col].iter().enumerate() {
                    match coeff {
                        0 => {}
                        1 => out[k] = out[k].clone() + &prod,
                        -1 => out[k] = out[k].clone() - &prod,
                        c => out[k] = out[k].clone() + prod.scale(&Rational::integer(i64::from(*c))),
                    }
                }
            }
        }
        let [re, im_i, im_eps, im_h] = out;
        Hybrid { re, im_i, im_eps, im_h }
    }

    pub fn is_scalar(&self) -> bool {
        self.im_i.is_zero() && self.im_eps.is_zero() && self.im_h.is_zero()
    }
}

impl<S: CommutativeRing> Hybrid<S> {
    /// `a² + (b − c)² − c² − d²`, which equals `z·z̄`.
    pub fn character(&self) -> S {
        let bc = self.im_i.clone() - &self.im_eps;
        self.re.clone() * &self.re + bc.clone() * &bc
            - self.im_eps.clone() * &self.im_eps
            - self.im_h.clone() * &self.im_h
    }

    /// `z̄ / 𝒞(z)`.
    pub fn hybrid_inverse(&self) -> Result<Self> {
        let c = self.character();
        let inv = c.inverse().ok_or_else(|| Error::NonInvertible(format!("{self:?} (character {c:?})")))?;
        Ok(self.conj().scale_by(&inv))
    }

    /// Faithful 2×2 representation `[[a+c, b−c+d], [c−b+d, a−c]]`.
    pub fn matrix_rep(&self) -> [[S; 2]; 2] {
        let (a, b, c, d) = (&self.re, &self.im_i, &self.im_eps, &self.im_h);
        [
            [a.clone() + c, b.clone() - c + d],
            [c.clone() - b + d, a.clone() - c],
        ]
    }

    /// Inverse of [`Hybrid::matrix_rep`] on its image.
    pub fn from_matrix_rep(m: &[[S; 2]; 2]) -> Self {
        let half = Rational::new(1, 2);
        let a = (m[0][0].clone() + &m[1][1]).scale(&half);
        let c = (m[0][0].clone() - &m[1][1]).scale(&half);
        let d = (m[0][1].clone() + &m[1][0]).scale(&half);
        let b_minus_c = (m[0][1].clone() - &m[1][0]).scale(&half);
        let b = b_minus_c + &c;
        Hybrid { re: a, im_i: b, im_eps: c, im_h: d }
    }
}

impl Hybrid<Rational> {
    /// `|𝒞(z)|`, the square of the hybrid norm.
    pub fn character_abs(&self) -> Rational {
        self.character().abs()
    }

    pub fn from_ints(re: i64, i: i64, eps: i64, h: i64) -> Self {
        Hybrid::new(re.into(), i.into(), eps.into(), h.into())
    }

    pub fn zero() -> Self {
        Hybrid::from_ints(0, 0, 0, 0)
    }

    pub fn one() -> Self {
        Hybrid::from_ints(1, 0, 0, 0)
    }

    /// Embed into `Hybrid<QuadExt>` over `Q[t]/(t² − d)`.
    pub fn lift(&self, d: &Rational) -> Hybrid<QuadExt> {
        self.map(|c| QuadExt::rational(c.clone(), d))
    }
}

impl Hybrid<QuadExt> {
    pub fn surd_conjugate(&self) -> Self {
        self.map(QuadExt::surd_conjugate)
    }

    /// Rational projection; every component must have surd part zero.
    pub fn to_rational(&self) -> Result<Hybrid<Rational>> {
        self.try_map(QuadExt::to_rational)
    }

    pub fn is_rational(&self) -> bool {
        self.components().iter().all(|c| c.is_rational())
    }
}

/// 2×2 matrix product over a commutative scalar ring.
pub fn mat2_mul<S: CommutativeRing>(x: &[[S; 2]; 2], y: &[[S; 2]; 2]) -> [[S; 2]; 2] {
    let e = |i: usize, j: usize| x[i][0].clone() * &y[0][j] + x[i][1].clone() * &y[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn mat2_det<S: CommutativeRing>(x: &[[S; 2]; 2]) -> S {
    x[0][0].clone() * &x[1][1] - x[0][1].clone() * &x[1][0]
}

impl<S: Ring> Add for Hybrid<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self + &rhs
    }
}

impl<'a, S: Ring> Add<&'a Hybrid<S>> for Hybrid<S> {
    type Output = Self;
    fn add(self, rhs: &'a Hybrid<S>) -> Self {
        Hybrid {
            re: self.re + &rhs.re,
            im_i: self.im_i + &rhs.im_i,
            im_eps: self.im_eps + &rhs.im_eps,
            im_h: self.im_h + &rhs.im_h,
        }
    }
}

impl<S: Ring> Sub for Hybrid<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self - &rhs
    }
}

impl<'a, S: Ring> Sub<&'a Hybrid<S>> for Hybrid<S> {
    type Output = Self;
    fn sub(self, rhs: &'a Hybrid<S>) -> Self {
        Hybrid {
            re: self.re - &rhs.re,
            im_i: self.im_i - &rhs.im_i,
            im_eps: self.im_eps - &rhs.im_eps,
            im_h: self.im_h - &rhs.im_h,
        }
    }
}

impl<S: Ring> Mul for Hybrid<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.hybrid_mul(&rhs)
    }
}

impl<'a, S: Ring> Mul<&'a Hybrid<S>> for Hybrid<S> {
    type Output = Self;
    fn mul(self, rhs: &'a Hybrid<S>) -> Self {
        self.hybrid_mul(rhs)
    }
}

impl<'a, 'b, S: Ring> Mul<&'b Hybrid<S>> for &'a Hybrid<S> {
    type Output = Hybrid<S>;
    fn mul(self, rhs: &'b Hybrid<S>) -> Hybrid<S> {
        self.hybrid_mul(rhs)
    }
}

impl<S: Ring> Neg for Hybrid<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Hybrid { re: -self.re, im_i: -self.im_i, im_eps: -self.im_eps, im_h: -self.im_h }
    }
}

impl<S: Ring + CommutativeRing> Ring for Hybrid<S> {
    fn zero_like(&self) -> Self {
        Hybrid::scalar(self.re.zero_like())
    }

    fn embed(&self, k: &Rational) -> Self {
        Hybrid::scalar(self.re.embed(k))
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.is_scalar()
    }

    fn scale(&self, k: &Rational) -> Self {
        self.map(|c| c.scale(k))
    }

    fn inverse(&self) -> Option<Self> {
        self.hybrid_inverse().ok()
    }
}

impl<S: fmt::Display> fmt::Display for Hybrid<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i + {}ε + {}h", self.re, self.im_i, self.im_eps, self.im_h)
    }
}

impl<S: fmt::Debug> fmt::Debug for Hybrid<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}i, {:?}ε, {:?}h]", self.re, self.im_i, self.im_eps, self.im_h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hz(a: i64, b: i64, c: i64, d: i64) -> Hybrid<Rational> {
        Hybrid::from_ints(a, b, c, d)
    }

    fn unit(k: usize) -> Hybrid<Rational> {
        Hybrid::unit(k, &Rational::zero())
    }

    #[test]
    fn table_entries() {
        let (one, i, eps, h) = (unit(0), unit(1), unit(2), unit(3));
        let expect = [
            (&i, &i, hz(-1, 0, 0, 0)),
            (&eps, &eps, hz(0, 0, 0, 0)),
            (&h, &h, hz(1, 0, 0, 0)),
            (&i, &h, hz(0, 1, 1, 0)),
            (&h, &i, hz(0, -1, -1, 0)),
            (&i, &eps, hz(1, 0, 0, -1)),
            (&eps, &i, hz(1, 0, 0, 1)),
            (&eps, &h, hz(0, 0, -1, 0)),
            (&h, &eps, hz(0, 0, 1, 0)),
            (&one, &h, hz(0, 0, 0, 1)),
        ];
        for (x, y, want) in expect {
            assert_eq!(x * y, want, "{x:?}·{y:?}");
        }
    }

    #[test]
    fn explicit_product_matches_table() {
        for row in 0..4 {
            for col in 0..4 {
                let x = unit(row);
                let y = unit(col);
                assert_eq!(x.hybrid_mul(&y), x.table_mul(&y));
            }
        }
        let x = hz(1, -2, 3, 5);
        let y = hz(-7, 2, 0, 4);
        assert_eq!(x.hybrid_mul(&y), x.table_mul(&y));
    }

    #[test]
    fn product_examples() {
        assert_eq!(hz(1, 1, 0, 0) * hz(1, 0, 0, 1), hz(1, 2, 1, 1));
        assert_ne!(unit(1) * unit(2), unit(2) * unit(1));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(hz(1, 2, 3, 4).conj(), hz(1, -2, -3, -4));
        assert_eq!(hz(5, 0, 0, 0).conj(), hz(5, 0, 0, 0));
    }

    #[test]
    fn character_examples() {
        assert_eq!(hz(1, 0, 0, 0).character(), Rational::integer(1));
        assert_eq!(unit(1).character(), Rational::integer(1));
        assert_eq!(hz(1, 2, 3, 4).character(), Rational::integer(-23));
        assert_eq!(hz(1, 2, 3, 4).character_abs(), Rational::integer(23));
        assert_eq!(Hybrid::zero().character_abs(), Rational::zero());
        assert_eq!(unit(3).character_abs(), Rational::integer(1));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(unit(1).hybrid_inverse().unwrap(), hz(0, -1, 0, 0));
        assert!(matches!(unit(2).hybrid_inverse(), Err(Error::NonInvertible(_))));
        assert!(matches!(hz(1, 0, 0, 1).hybrid_inverse(), Err(Error::NonInvertible(_))));
        let z = hz(2, -1, 3, 1);
        let inv = z.hybrid_inverse().unwrap();
        assert_eq!(&z * &inv, Hybrid::one());
        assert_eq!(&inv * &z, Hybrid::one());
    }

    #[test]
    fn matrix_rep_examples() {
        let r = |n: i64| Rational::integer(n);
        assert_eq!(Hybrid::one().matrix_rep(), [[r(1), r(0)], [r(0), r(1)]]);
        let rh = unit(3).matrix_rep();
        assert_eq!(rh, [[r(0), r(1)], [r(1), r(0)]]);
        assert_eq!(mat2_mul(&rh, &rh), Hybrid::one().matrix_rep());
        assert_eq!(mat2_det(&hz(1, 2, 3, 4).matrix_rep()), r(-23));
        let z = hz(3, -1, 4, 2);
        assert_eq!(Hybrid::from_matrix_rep(&z.matrix_rep()), z);
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(hz(1, 2, 3, 4)).unwrap();
        assert_eq!(v, serde_json::json!({"re": "1", "i": "2", "eps": "3", "h": "4"}));
    }
}
