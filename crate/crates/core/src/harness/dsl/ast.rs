use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IndexVar {
    N,
    U,
    V,
    M,
}

impl IndexVar {
    pub const ALL: [IndexVar; 4] = [IndexVar::N, IndexVar::U, IndexVar::V, IndexVar::M];

    pub fn name(self) -> &'static str {
        match self {
            IndexVar::N => "n",
            IndexVar::U => "u",
            IndexVar::V => "v",
            IndexVar::M => "m",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        IndexVar::ALL.into_iter().find(|v| v.name() == s)
    }
}

/// `constant + Σ coeff·var`, kept canonical: no zero coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Affine {
    pub constant: i64,
    pub terms: BTreeMap<IndexVar, i64>,
}

impl Affine {
    pub fn constant(c: i64) -> Self {
        Affine { constant: c, terms: BTreeMap::new() }
    }

    pub fn var(v: IndexVar) -> Self {
        Affine { constant: 0, terms: BTreeMap::from([(v, 1)]) }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(mut self, rhs: &Affine, sign: i64) -> Self {
        self.constant += sign * rhs.constant;
        for (v, c) in &rhs.terms {
            *self.terms.entry(*v).or_insert(0) += sign * c;
        }
        self.terms.retain(|_, c| *c != 0);
        self
    }

    pub fn scale(mut self, k: i64) -> Self {
        self.constant *= k;
        for c in self.terms.values_mut() {
            *c *= k;
        }
        self.terms.retain(|_, c| *c != 0);
        self
    }

    pub fn vars(&self) -> impl Iterator<Item = IndexVar> + '_ {
        self.terms.keys().copied()
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, c) in &self.terms {
            let (sign, mag) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, "{sign}")?;
            }
            if mag == 1 {
                write!(f, "{}", v.name())?;
            } else {
                write!(f, "{mag}*{}", v.name())?;
            }
            first = false;
        }
        if first {
            write!(f, "{}", self.constant)
        } else if self.constant > 0 {
            write!(f, "+{}", self.constant)
        } else if self.constant < 0 {
            write!(f, "-{}", -self.constant)
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Param {
    P,
    Q,
    R,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unit {
    I,
    Eps,
    H,
    Psi,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Num(Rational),
    Param(Param),
    Unit(Unit),
    Index(IndexVar),
    La(Affine),
    Lah(Affine),
    Hpart(Affine),
    Kshift(Affine, Affine),
    Conj(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Index variables mentioned anywhere in the expression.
    pub fn index_vars(&self, out: &mut std::collections::BTreeSet<IndexVar>) {
        match self {
            Expr::Num(_) | Expr::Param(_) | Expr::Unit(_) => {}
            Expr::Index(v) => {
                out.insert(*v);
            }
            Expr::La(a) | Expr::Lah(a) | Expr::Hpart(a) => out.extend(a.vars()),
            Expr::Kshift(a, b) => {
                out.extend(a.vars());
                out.extend(b.vars());
            }
            Expr::Conj(e) | Expr::Neg(e) | Expr::Pow(e, _) => e.index_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.index_vars(out);
                b.index_vars(out);
            }
        }
    }
}

/// `lhs == rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdentityAst {
    pub lhs: Expr,
    pub rhs: Expr,
}

impl IdentityAst {
    pub fn index_vars(&self) -> Vec<IndexVar> {
        let mut set = std::collections::BTreeSet::new();
        self.lhs.index_vars(&mut set);
        self.rhs.index_vars(&mut set);
        set.into_iter().collect()
    }
}

// Precedence levels: 1 sum, 2 product, 3 factor, 4 atom.
fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr, ctx: u8) -> fmt::Result {
    let level = match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) => 2,
        Expr::Neg(_) | Expr::Pow(..) => 3,
        Expr::Num(x) if x.is_negative() => 0,
        _ => 4,
    };
    let paren = level < ctx;
    if paren {
        f.write_str("(")?;
    }
    match e {
        Expr::Num(x) => write!(f, "{x}")?,
        Expr::Param(p) => f.write_str(match p {
            Param::P => "p",
            Param::Q => "q",
            Param::R => "r",
        })?,
        Expr::Unit(u) => f.write_str(match u {
            Unit::I => "I",
            Unit::Eps => "EPS",
            Unit::H => "H",
            Unit::Psi => "PSI",
        })?,
        Expr::Index(v) => f.write_str(v.name())?,
        Expr::La(a) => write!(f, "LA({a})")?,
        Expr::Lah(a) => write!(f, "LAH({a})")?,
        Expr::Hpart(a) => write!(f, "HPART({a})")?,
        Expr::Kshift(a, b) => write!(f, "KSHIFT({a}, {b})")?,
        Expr::Conj(x) => {
            f.write_str("conj(")?;
            write_expr(f, x, 1)?;
            f.write_str(")")?;
        }
        Expr::Neg(x) => {
            f.write_str("-")?;
            write_expr(f, x, 3)?;
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            write_expr(f, a, 1)?;
            f.write_str(if matches!(e, Expr::Add(..)) { " + " } else { " - " })?;
            write_expr(f, b, 2)?;
        }
        Expr::Mul(a, b) => {
            write_expr(f, a, 2)?;
            f.write_str("*")?;
            write_expr(f, b, 3)?;
        }
        Expr::Pow(x, k) => {
            write_expr(f, x, 4)?;
            write!(f, "^{k}")?;
        }
    }
    if paren {
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self, 1)
    }
}

impl fmt::Display for IdentityAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} == {}", self.lhs, self.rhs)
    }
}
