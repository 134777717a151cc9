//! Exact scalar rings: arbitrary-precision rationals and the formal quadratic extension
//! `Q[t]/(t² − D)` where the characteristic roots live.

mod quad;
mod rational;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

pub use quad::{quad_arith, QuadExt};
pub use rational::{rat_arith, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// A ring with exact equality, not necessarily commutative.
///
/// Elements know how to build their own zero and one because a `QuadExt` carries its
/// discriminant; there is no context-free zero for that type.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero_like(&self) -> Self;

    fn one_like(&self) -> Self {
        self.embed(&Rational::one())
    }

    /// The rational `k` viewed as an element of the same ring as `self`.
    fn embed(&self, k: &Rational) -> Self;

    fn is_zero(&self) -> bool;

    /// Multiplication by a central rational scalar.
    fn scale(&self, k: &Rational) -> Self;

    /// Two-sided inverse, when one exists.
    fn inverse(&self) -> Option<Self>;

    fn pow(&self, exp: u32) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }
}

/// Marker for rings whose multiplication commutes.
pub trait CommutativeRing: Ring {}
