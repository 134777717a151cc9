use std::collections::BTreeSet;

use super::ast::{Affine, Expr, IdentityAst, IndexVar, Param, Unit};
use super::lexer::{tokenize, Tok, Token};
use crate::error::SyntaxError;

type PResult<T> = Result<T, SyntaxError>;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    expected: BTreeSet<String>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        self.expected.clear();
        t
    }

    fn expect(&mut self, what: &str) {
        self.expected.insert(what.to_string());
    }

    /// Consumes `tok` if it is next, recording it as acceptable otherwise.
    fn eat(&mut self, tok: &Tok, name: &str) -> bool {
        if &self.peek().tok == tok {
            self.bump();
            true
        } else {
            self.expect(name);
            false
        }
    }

    fn error(&self) -> SyntaxError {
        let t = self.peek();
        SyntaxError { line: t.line, column: t.column, found: t.text.clone(), expected: self.expected.clone() }
    }

    fn require(&mut self, tok: &Tok, name: &str) -> PResult<()> {
        if self.eat(tok, name) {
            Ok(())
        } else {
            Err(self.error())
        }
    }

    fn identity(&mut self) -> PResult<IdentityAst> {
        let lhs = self.expr()?;
        self.require(&Tok::EqEq, "==")?;
        let rhs = self.expr()?;
        self.require(&Tok::End, "end of input")?;
        Ok(IdentityAst { lhs, rhs })
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut e = self.term()?;
        loop {
            if self.eat(&Tok::Plus, "+") {
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus, "-") {
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut e = self.factor()?;
        while self.eat(&Tok::Star, "*") {
            e = Expr::Mul(Box::new(e), Box::new(self.factor()?));
        }
        Ok(e)
    }

    fn factor(&mut self) -> PResult<Expr> {
        if self.eat(&Tok::Minus, "-") {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.eat(&Tok::Caret, "^") {
            let k = self.nat()?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn nat(&mut self) -> PResult<u32> {
        if let Tok::Num { value, integral: true } = &self.peek().tok {
            if let Some(k) = value.to_i64().and_then(|k| u32::try_from(k).ok()) {
                self.bump();
                return Ok(k);
            }
        }
        self.expect("natural number");
        Err(self.error())
    }

    fn atom(&mut self) -> PResult<Expr> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Num { value, .. } => {
                self.bump();
                Ok(Expr::Num(value.clone()))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.require(&Tok::RParen, ")")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let simple = match name.as_str() {
                    "p" => Some(Expr::Param(Param::P)),
                    "q" => Some(Expr::Param(Param::Q)),
                    "r" => Some(Expr::Param(Param::R)),
                    "I" => Some(Expr::Unit(Unit::I)),
                    "EPS" => Some(Expr::Unit(Unit::Eps)),
                    "H" => Some(Expr::Unit(Unit::H)),
                    "PSI" => Some(Expr::Unit(Unit::Psi)),
                    other => IndexVar::from_name(other).map(Expr::Index),
                };
                if let Some(e) = simple {
                    self.bump();
                    return Ok(e);
                }
                match name.as_str() {
                    "LA" | "LAH" | "HPART" => {
                        self.bump();
                        self.require(&Tok::LParen, "(")?;
                        let a = self.iexpr()?;
                        self.require(&Tok::RParen, ")")?;
                        Ok(match name.as_str() {
                            "LA" => Expr::La(a),
                            "LAH" => Expr::Lah(a),
                            _ => Expr::Hpart(a),
                        })
                    }
                    "KSHIFT" => {
                        self.bump();
                        self.require(&Tok::LParen, "(")?;
                        let a = self.iexpr()?;
                        self.require(&Tok::Comma, ",")?;
                        let b = self.iexpr()?;
                        self.require(&Tok::RParen, ")")?;
                        Ok(Expr::Kshift(a, b))
                    }
                    "conj" => {
                        self.bump();
                        self.require(&Tok::LParen, "(")?;
                        let e = self.expr()?;
                        self.require(&Tok::RParen, ")")?;
                        Ok(Expr::Conj(Box::new(e)))
                    }
                    _ => {
                        self.expect_atom();
                        Err(self.error())
                    }
                }
            }
            _ => {
                self.expect_atom();
                Err(self.error())
            }
        }
    }

    fn expect_atom(&mut self) {
        for s in ["number", "symbol", "accessor", "(", "-"] {
            self.expect(s);
        }
    }

    fn iexpr(&mut self) -> PResult<Affine> {
        let mut acc = if self.eat(&Tok::Minus, "-") { self.iterm()?.scale(-1) } else { self.iterm()? };
        loop {
            if self.eat(&Tok::Plus, "+") {
                acc = acc.add(&self.iterm()?, 1);
            } else if self.eat(&Tok::Minus, "-") {
                acc = acc.add(&self.iterm()?, -1);
            } else {
                return Ok(acc);
            }
        }
    }

    /// A product with at most one non-constant factor.
    fn iterm(&mut self) -> PResult<Affine> {
        let mut acc = self.iatom()?;
        while self.eat(&Tok::Star, "*") {
            let save = self.pos;
            let rhs = self.iatom()?;
            acc = match (acc.is_constant(), rhs.is_constant()) {
                (true, _) => rhs.scale(acc.constant),
                (false, true) => acc.scale(rhs.constant),
                (false, false) => {
                    self.pos = save;
                    self.expect("integer");
                    return Err(self.error());
                }
            };
        }
        Ok(acc)
    }

    fn iatom(&mut self) -> PResult<Affine> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Num { value, integral: true } => {
                if let Some(k) = value.to_i64() {
                    self.bump();
                    return Ok(Affine::constant(k));
                }
            }
            Tok::Ident(name) => {
                if let Some(v) = IndexVar::from_name(name) {
                    self.bump();
                    return Ok(Affine::var(v));
                }
            }
            Tok::LParen => {
                self.bump();
                let a = self.iexpr()?;
                self.require(&Tok::RParen, ")")?;
                return Ok(a);
            }
            _ => {}
        }
        for s in ["integer", "index variable", "("] {
            self.expect(s);
        }
        Err(self.error())
    }
}

fn parse_at(src: &str, line: usize, column: usize) -> PResult<IdentityAst> {
    let toks = tokenize(src, line, column);
    let mut p = Parser { toks, pos: 0, expected: BTreeSet::new() };
    p.identity()
}

/// Parses one identity `expr == expr`. Newlines count as whitespace.
pub fn parse_identity(src: &str) -> PResult<IdentityAst> {
    parse_at(src, 1, 1)
}

/// One identity per line, optionally prefixed by `label:`. Blank lines and lines starting
/// with `#` are ignored. Unlabelled identities are named `line-<k>`.
pub fn parse_identity_file(src: &str) -> PResult<Vec<(String, IdentityAst)>> {
    let mut out = Vec::new();
    for (k, raw) in src.lines().enumerate() {
        let line = k + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (label, body, offset) = match split_label(raw) {
            Some((label, at)) => (label, &raw[at..], raw[..at].chars().count()),
            None => (format!("line-{line}"), raw, 0),
        };
        out.push((label, parse_at(body, line, offset + 1)?));
    }
    Ok(out)
}

fn split_label(raw: &str) -> Option<(String, usize)> {
    let colon = raw.find(':')?;
    let label = raw[..colon].trim();
    let ok = label.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && label.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_');
    ok.then(|| (label.to_string(), colon + 1))
}
