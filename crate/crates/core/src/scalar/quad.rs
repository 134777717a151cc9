use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ArithOp, CommutativeRing, Rational, Ring};
use crate::error::{Error, Result};

/// `x + y·t` in the quotient ring `Q[t]/(t² − D)`.
///
/// Equality is componentwise, also when `D` is a perfect square and the ring has zero
/// divisors. Values with different discriminants never mix: the checked operations return
/// [`Error::DiscriminantMismatch`] and the operator impls panic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    x: Rational,
    y: Rational,
    d: Rational,
}

impl QuadExt {
    pub fn new(x: Rational, y: Rational, d: Rational) -> Self {
        QuadExt { x, y, d }
    }

    /// The rational `x` embedded with surd part zero.
    pub fn rational(x: Rational, d: &Rational) -> Self {
        QuadExt { x, y: Rational::zero(), d: d.clone() }
    }

    /// The adjoined root `t` itself.
    pub fn surd(d: &Rational) -> Self {
        QuadExt { x: Rational::zero(), y: Rational::one(), d: d.clone() }
    }

    pub fn rat_part(&self) -> &Rational {
        &self.x
    }

    pub fn surd_part(&self) -> &Rational {
        &self.y
    }

    pub fn discriminant(&self) -> &Rational {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    /// The rational part, provided the surd part vanishes.
    pub fn to_rational(&self) -> Result<Rational> {
        if self.y.is_zero() {
            Ok(self.x.clone())
        } else {
            Err(Error::SurdResidue(self.to_string()))
        }
    }

    /// `t ↦ −t`; swaps the two characteristic roots.
    pub fn surd_conjugate(&self) -> Self {
        QuadExt { x: self.x.clone(), y: -&self.y, d: self.d.clone() }
    }

    /// `x² − D·y²`, the product with the surd conjugate.
    pub fn norm(&self) -> Rational {
        &self.x * &self.x - &self.d * &(&self.y * &self.y)
    }

    fn check_same(&self, rhs: &QuadExt) -> Result<()> {
        if self.d == rhs.d {
            Ok(())
        } else {
            Err(Error::DiscriminantMismatch { lhs: self.d.to_string(), rhs: rhs.d.to_string() })
        }
    }

    pub fn checked_add(&self, rhs: &QuadExt) -> Result<QuadExt> {
        self.check_same(rhs)?;
        Ok(self.add_unchecked(rhs))
    }

    pub fn checked_sub(&self, rhs: &QuadExt) -> Result<QuadExt> {
        self.check_same(rhs)?;
        Ok(self.sub_unchecked(rhs))
    }

    pub fn checked_mul(&self, rhs: &QuadExt) -> Result<QuadExt> {
        self.check_same(rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    pub fn checked_div(&self, rhs: &QuadExt) -> Result<QuadExt> {
        self.check_same(rhs)?;
        let inv = rhs.checked_inverse()?;
        Ok(self.mul_unchecked(&inv))
    }

    pub fn checked_inverse(&self) -> Result<QuadExt> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::NonInvertible(self.to_string()));
        }
        let inv = n.recip()?;
        Ok(QuadExt { x: &self.x * &inv, y: -(&self.y * &inv), d: self.d.clone() })
    }

    fn add_unchecked(&self, rhs: &QuadExt) -> QuadExt {
        QuadExt { x: &self.x + &rhs.x, y: &self.y + &rhs.y, d: self.d.clone() }
    }

    fn sub_unchecked(&self, rhs: &QuadExt) -> QuadExt {
        QuadExt { x: &self.x - &rhs.x, y: &self.y - &rhs.y, d: self.d.clone() }
    }

    fn mul_unchecked(&self, rhs: &QuadExt) -> QuadExt {
        // Most values met in practice are rational; skip the surd products then.
        match (self.y.is_zero(), rhs.y.is_zero()) {
            (true, true) => QuadExt { x: &self.x * &rhs.x, y: Rational::zero(), d: self.d.clone() },
            (true, false) => {
                QuadExt { x: &self.x * &rhs.x, y: &self.x * &rhs.y, d: self.d.clone() }
            }
            (false, true) => {
                QuadExt { x: &self.x * &rhs.x, y: &self.y * &rhs.x, d: self.d.clone() }
            }
            (false, false) => QuadExt {
                x: &self.x * &rhs.x + &self.d * &(&self.y * &rhs.y),
                y: &self.x * &rhs.y + &rhs.x * &self.y,
                d: self.d.clone(),
            },
        }
    }

    fn expect_same(&self, rhs: &QuadExt) {
        if let Err(e) = self.check_same(rhs) {
            panic!("{e}");
        }
    }
}

pub fn quad_arith(op: ArithOp, lhs: &QuadExt, rhs: &QuadExt) -> Result<QuadExt> {
    match op {
        ArithOp::Add => lhs.checked_add(rhs),
        ArithOp::Sub => lhs.checked_sub(rhs),
        ArithOp::Mul => lhs.checked_mul(rhs),
        ArithOp::Div => lhs.checked_div(rhs),
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}·√{})", self.x, self.y, self.d)
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("QuadExt", 3)?;
        st.serialize_field("x", &self.x)?;
        st.serialize_field("y", &self.y)?;
        match self.d.to_i64() {
            Some(d) => st.serialize_field("D", &d)?,
            None => st.serialize_field("D", &self.d)?,
        }
        st.end()
    }
}

impl<'de> Deserialize<'de> for QuadExt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            x: Rational,
            y: Rational,
            #[serde(rename = "D")]
            d: Rational,
        }
        let r = Repr::deserialize(deserializer)?;
        Ok(QuadExt { x: r.x, y: r.y, d: r.d })
    }
}

macro_rules! quad_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl<'a, 'b> $trait<&'b QuadExt> for &'a QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &'b QuadExt) -> QuadExt {
                self.expect_same(rhs);
                self.$imp(rhs)
            }
        }
        impl<'a> $trait<&'a QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &'a QuadExt) -> QuadExt {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<QuadExt> for &'a QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                self.$method(&rhs)
            }
        }
    };
}

quad_binop!(Add, add, add_unchecked);
quad_binop!(Sub, sub, sub_unchecked);
quad_binop!(Mul, mul, mul_unchecked);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { x: -self.x, y: -self.y, d: self.d }
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { x: -&self.x, y: -&self.y, d: self.d.clone() }
    }
}

impl Ring for QuadExt {
    fn zero_like(&self) -> Self {
        QuadExt::rational(Rational::zero(), &self.d)
    }

    fn embed(&self, k: &Rational) -> Self {
        QuadExt::rational(k.clone(), &self.d)
    }

    fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    fn scale(&self, k: &Rational) -> Self {
        QuadExt { x: &self.x * k, y: &self.y * k, d: self.d.clone() }
    }

    fn inverse(&self) -> Option<Self> {
        self.checked_inverse().ok()
    }
}

impl CommutativeRing for QuadExt {}
