use super::ast::{Affine, Expr, IdentityAst, IndexVar, Param, Unit};
use crate::error::{Error, Result};
use crate::harness::{IndexPoint, PointContext};
use crate::hybrid::Hybrid;
use crate::hybrid_sequence::psi_unit;
use crate::scalar::{Rational, Ring};
use crate::sequence::SeqParams;

/// Both sides of an evaluated identity.
#[derive(Debug, Clone, PartialEq)]
pub struct DslVerdict {
    pub lhs: Hybrid<Rational>,
    pub rhs: Hybrid<Rational>,
    pub holds: bool,
}

/// Evaluates `ast` at one parameter point with the given index assignment.
pub fn eval_identity(ast: &IdentityAst, params: &SeqParams, bindings: &IndexPoint) -> Result<DslVerdict> {
    params.validate()?;
    let mut ctx = PointContext::new(params);
    eval_in(ast, &mut ctx, bindings)
}

pub(crate) fn eval_in(ast: &IdentityAst, ctx: &mut PointContext, bindings: &IndexPoint) -> Result<DslVerdict> {
    let lhs = eval_expr(&ast.lhs, ctx, bindings)?;
    let rhs = eval_expr(&ast.rhs, ctx, bindings)?;
    let holds = lhs == rhs;
    Ok(DslVerdict { lhs, rhs, holds })
}

fn lookup(v: IndexVar, b: &IndexPoint) -> Result<i64> {
    b.try_get(v.name()).ok_or_else(|| Error::UnboundVariable(v.name().to_string()))
}

fn resolve(a: &Affine, b: &IndexPoint) -> Result<i64> {
    let mut total = a.constant;
    for (v, c) in &a.terms {
        total += c * lookup(*v, b)?;
    }
    Ok(total)
}

fn index(accessor: &str, a: &Affine, b: &IndexPoint) -> Result<usize> {
    let k = resolve(a, b)?;
    usize::try_from(k).map_err(|_| Error::IndexOutOfDomain { accessor: accessor.to_string(), index: k })
}

fn scalar(x: Rational) -> Hybrid<Rational> {
    Hybrid::scalar(x)
}

const HPART_TAG: u8 = 20;
const KSHIFT_TAG: u8 = 21;

fn hpart(ctx: &mut PointContext, k: usize) -> Result<Hybrid<Rational>> {
    ctx.memo_rational((HPART_TAG, [k as i64, 0, 0, 0]), |c| c.seq().hpart(k).to_rational().ok())
        .ok_or_else(|| Error::SurdResidue(format!("HPART({k})")))
}

fn kshift(ctx: &mut PointContext, n: usize, u: usize) -> Result<Hybrid<Rational>> {
    ctx.memo_rational((KSHIFT_TAG, [n as i64, u as i64, 0, 0]), |c| Some(hpart(c, n).ok()? - &hpart(c, n + u).ok()?))
        .ok_or_else(|| Error::SurdResidue(format!("KSHIFT({n},{u})")))
}

const PRODUCT_TAG: u8 = 22;

/// Resolved indices of a leaf (an accessor, unit, parameter or number).
fn leaf_indices(e: &Expr, b: &IndexPoint) -> Result<Option<Vec<i64>>> {
    Ok(match e {
        Expr::Num(_) | Expr::Param(_) | Expr::Unit(_) => Some(Vec::new()),
        Expr::La(a) | Expr::Lah(a) | Expr::Hpart(a) => Some(vec![resolve(a, b)?]),
        Expr::Kshift(a, s) => Some(vec![resolve(a, b)?, resolve(s, b)?]),
        _ => None,
    })
}

/// Products of two leaves are cached per parameter point, keyed by the node and the
/// resolved indices.
fn leaf_product(node: &Expr, x: &Expr, y: &Expr, ctx: &mut PointContext, b: &IndexPoint) -> Result<Option<Hybrid<Rational>>> {
    let (Some(mut ix), Some(iy)) = (leaf_indices(x, b)?, leaf_indices(y, b)?) else { return Ok(None) };
    ix.extend(iy);
    if ix.len() > 3 || ix.iter().any(|&k| k < 0) {
        return Ok(None);
    }
    let mut key = [node as *const Expr as i64, 0, 0, 0];
    key[1..=ix.len()].copy_from_slice(&ix);
    Ok(ctx.memo_rational((PRODUCT_TAG, key), |c| Some(mul(eval_expr(x, c, b).ok()?, &eval_expr(y, c, b).ok()?))))
}

fn mul(x: Hybrid<Rational>, y: &Hybrid<Rational>) -> Hybrid<Rational> {
    if x.is_scalar() {
        y.scale(&x.re)
    } else if y.is_scalar() {
        x.scale(&y.re)
    } else {
        x * y
    }
}

fn eval_expr(e: &Expr, ctx: &mut PointContext, b: &IndexPoint) -> Result<Hybrid<Rational>> {
    Ok(match e {
        Expr::Num(x) => scalar(x.clone()),
        Expr::Param(p) => scalar(match p {
            Param::P => ctx.params.p.clone(),
            Param::Q => ctx.params.q.clone(),
            Param::R => ctx.params.r.clone(),
        }),
        Expr::Unit(u) => match u {
            Unit::I => Hybrid::from_ints(0, 1, 0, 0),
            Unit::Eps => Hybrid::from_ints(0, 0, 1, 0),
            Unit::H => Hybrid::from_ints(0, 0, 0, 1),
            Unit::Psi => psi_unit(),
        },
        Expr::Index(v) => scalar(Rational::integer(lookup(*v, b)?)),
        Expr::La(a) => {
            let k = index("LA", a, b)?;
            scalar(ctx.seq().la(k))
        }
        Expr::Lah(a) => {
            let k = index("LAH", a, b)?;
            ctx.seq().lah(k)
        }
        Expr::Hpart(a) => {
            let k = index("HPART", a, b)?;
            hpart(ctx, k)?
        }
        Expr::Kshift(a, s) => {
            let n = index("KSHIFT", a, b)?;
            let u = index("KSHIFT", s, b)?;
            kshift(ctx, n, u)?
        }
        Expr::Conj(x) => eval_expr(x, ctx, b)?.conj(),
        Expr::Neg(x) => -eval_expr(x, ctx, b)?,
        Expr::Add(x, y) => eval_expr(x, ctx, b)? + &eval_expr(y, ctx, b)?,
        Expr::Sub(x, y) => eval_expr(x, ctx, b)? - &eval_expr(y, ctx, b)?,
        Expr::Mul(x, y) => match leaf_product(e, x, y, ctx, b)? {
            Some(v) => v,
            None => mul(eval_expr(x, ctx, b)?, &eval_expr(y, ctx, b)?),
        },
        Expr::Pow(x, k) => eval_expr(x, ctx, b)?.pow(*k),
    })
}
