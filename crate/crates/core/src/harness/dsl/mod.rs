//! A small language for stating identities over the sequence, e.g.
//!
//! ```text
//! cassini: (1-p-q)^2*(LAH(n+1)*LAH(n-1) - LAH(n)^2) == HPART(n+1)*HPART(n-1) - HPART(n)^2 + r*(PSI*KSHIFT(n,1) - KSHIFT(n-1,1)*PSI)
//! ```
//!
//! Values are hybrid numbers with rational components; `*` keeps the written order.
//! `LA`, `LAH`, `HPART` take affine index expressions in `n, u, v, m`, and `KSHIFT(k, s)`
//! is `HPART(k) − HPART(k+s)`.

mod ast;
mod builtin;
mod eval;
mod lexer;
mod parser;

use std::collections::HashMap;

pub use ast::{Affine, Expr, IdentityAst, IndexVar, Param, Unit};
pub use builtin::{builtin_identities, BuiltinIdentity};
pub use eval::{eval_identity, DslVerdict};
pub use parser::{parse_identity, parse_identity_file};

use super::checks::index_grid;
use super::{Check, CheckRun, Classification, IndexBounds, IndexPoint, Outcome, PointContext, Verdict};
use crate::error::Error;
use crate::sequence::SeqParams;

/// A parsed identity run as a harness check. Each index variable it mentions ranges over
/// `0..=bound` (defaults `n, m ≤ 10`, `u, v ≤ 5`); points where an accessor index comes out
/// negative are skipped.
pub struct DslCheck {
    name: String,
    ast: IdentityAst,
    class: Classification,
}

impl DslCheck {
    pub fn new(name: impl Into<String>, ast: IdentityAst, class: Classification) -> Self {
        DslCheck { name: name.into(), ast, class }
    }

    pub fn ast(&self) -> &IdentityAst {
        &self.ast
    }
}

impl Check for DslCheck {
    fn name(&self) -> &str {
        &self.name
    }

    fn classification(&self) -> Classification {
        self.class
    }

    fn index_points(&self, b: &IndexBounds) -> Vec<IndexPoint> {
        let vars: Vec<(&str, i64, i64)> = self
            .ast
            .index_vars()
            .into_iter()
            .map(|v| {
                let hi = match v {
                    IndexVar::N => b.n(10),
                    IndexVar::U => b.u(5),
                    IndexVar::V => b.v(5),
                    IndexVar::M => b.m(10),
                };
                (v.name(), 0, hi)
            })
            .collect();
        index_grid(&vars, |_| true)
    }

    fn evaluate(&self, ctx: &mut PointContext, idx: &IndexPoint) -> Outcome {
        match eval::eval_in(&self.ast, ctx, idx) {
            Ok(v) => Outcome::compare(v.lhs, v.rhs),
            Err(Error::IndexOutOfDomain { .. }) => Outcome::Skip("index out of domain"),
            Err(_) => Outcome::Skip("evaluation error"),
        }
    }
}

/// Verdicts of two runs over the same parameter list, compared wherever both evaluated
/// the same index assignment.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerdictComparison {
    pub common: u64,
    pub agree: u64,
    pub mismatches: Vec<(SeqParams, IndexPoint, Verdict, Verdict)>,
}

pub fn compare_verdicts(a: &CheckRun, b: &CheckRun) -> VerdictComparison {
    assert_eq!(a.params, b.params, "runs over different parameter lists");
    let b_index: HashMap<&IndexPoint, usize> = b.index_points.iter().enumerate().map(|(j, p)| (p, j)).collect();
    let mut out = VerdictComparison::default();
    for (ja, point) in a.index_points.iter().enumerate() {
        let Some(&jb) = b_index.get(point) else { continue };
        for i in 0..a.params.len() {
            let (va, vb) = (a.verdicts[i][ja], b.verdicts[i][jb]);
            if va == Verdict::Skip || vb == Verdict::Skip {
                continue;
            }
            out.common += 1;
            if va == vb {
                out.agree += 1;
            } else if out.mismatches.len() < 10 {
                out.mismatches.push((a.params[i].clone(), point.clone(), va, vb));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{run_check, GridSpec};
    use crate::hybrid::Hybrid;

    fn idx(pairs: &[(&str, i64)]) -> IndexPoint {
        IndexPoint::new(pairs.iter().map(|(k, v)| (*k, *v)))
    }

    #[test]
    fn multiplication_keeps_written_order() {
        let ast = parse_identity("LAH(n+1)*LAH(n-1) - LAH(n)^2 == 0").unwrap();
        let Expr::Sub(first, _) = &ast.lhs else { panic!("{ast:?}") };
        let Expr::Mul(a, b) = first.as_ref() else { panic!() };
        assert_eq!(**a, Expr::Lah(Affine::var(IndexVar::N).add(&Affine::constant(1), 1)));
        assert_eq!(**b, Expr::Lah(Affine::var(IndexVar::N).add(&Affine::constant(-1), 1)));
    }

    #[test]
    fn precedence() {
        let ast = parse_identity("-I^2 + 2*H*EPS == 1/2").unwrap();
        assert_eq!(ast.to_string(), "-I^2 + 2*H*EPS == 1/2");
        let Expr::Add(neg, _) = &ast.lhs else { panic!() };
        assert!(matches!(neg.as_ref(), Expr::Neg(inner) if matches!(inner.as_ref(), Expr::Pow(_, 2))));
    }

    #[test]
    fn builtins_round_trip() {
        for b in builtin_identities() {
            let ast = parse_identity(b.source).unwrap();
            let printed = ast.to_string();
            assert_eq!(parse_identity(&printed).unwrap(), ast, "{printed}");
        }
    }

    #[test]
    fn conj_product_is_character() {
        let ast = parse_identity("conj(LAH(n))*LAH(n) == LAH(n)*conj(LAH(n))").unwrap();
        let v = eval_identity(&ast, &SeqParams::leonardo(), &idx(&[("n", 0)])).unwrap();
        assert!(v.holds);
        assert_eq!(v.lhs, Hybrid::scalar(crate::scalar::Rational::integer(-29)));
    }

    #[test]
    fn psi_squared() {
        let ast = parse_identity("PSI*PSI == 4").unwrap();
        let v = eval_identity(&ast, &SeqParams::leonardo(), &IndexPoint::empty()).unwrap();
        assert_eq!(v.lhs, Hybrid::from_ints(3, 2, 2, 2));
        assert!(!v.holds);
    }

    #[test]
    fn eval_errors() {
        let ast = parse_identity("LAH(n-1) == LAH(n)").unwrap();
        let e = eval_identity(&ast, &SeqParams::leonardo(), &idx(&[("n", 0)])).unwrap_err();
        assert_eq!(e, Error::IndexOutOfDomain { accessor: "LAH".into(), index: -1 });
        let e = eval_identity(&ast, &SeqParams::leonardo(), &IndexPoint::empty()).unwrap_err();
        assert_eq!(e, Error::UnboundVariable("n".into()));
    }

    #[test]
    fn file_labels_and_comments() {
        let src = "# comment\n\ncassini: LAH(n) == LAH(n)\nLA(0) == 1\n";
        let ids = parse_identity_file(src).unwrap();
        assert_eq!(ids[0].0, "cassini");
        assert_eq!(ids[1].0, "line-4");
        let err = parse_identity_file("ok: LA(0) == 1\nbad: LAH(n\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 11));
    }

    #[test]
    fn cassini_agrees_with_builtin_at_leonardo_and_more() {
        let grid = GridSpec {
            p: vec![1.into(), 2.into()],
            q: vec![1.into(), (-3).into()],
            r: vec![0.into(), 1.into()],
            a: vec![1.into()],
            b: vec![1.into(), 2.into()],
            bounds: IndexBounds::default(),
        };
        let b = builtin_identities().iter().find(|b| b.name == "cassini").unwrap();
        let dsl = run_check(&b.check(), &grid);
        let hard = run_check(crate::harness::check_named(b.counterpart).unwrap().as_ref(), &grid);
        let cmp = compare_verdicts(&dsl, &hard);
        assert!(cmp.common > 0);
        assert_eq!(cmp.common, cmp.agree, "{:?}", cmp.mismatches);
    }
}
