use num_bigint::BigInt;

use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Num { value: Rational, integral: bool },
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    EqEq,
    Invalid(String),
    End,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub text: String,
    pub line: usize,
    pub column: usize,
}

pub fn tokenize(src: &str, first_line: usize, first_column: usize) -> Vec<Token> {
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut col) = (first_line, first_column);
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: String = chars[start..i].iter().collect();
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                let ds = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let den: String = chars[ds..i].iter().collect();
                let n: BigInt = num.parse().expect("digits");
                let d: BigInt = den.parse().expect("digits");
                match Rational::from_big(n, d) {
                    Ok(value) => Tok::Num { value, integral: false },
                    Err(_) => Tok::Invalid(chars[start..i].iter().collect()),
                }
            } else {
                let n: BigInt = num.parse().expect("digits");
                Tok::Num { value: Rational::from(n), integral: true }
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                '=' if chars.get(i) == Some(&'=') => {
                    i += 1;
                    Tok::EqEq
                }
                _ => Tok::Invalid(c.to_string()),
            }
        };
        let text: String = chars[start..i].iter().collect();
        out.push(Token { tok, text, line, column: col });
        col += i - start;
    }
    out.push(Token { tok: Tok::End, text: "end of input".into(), line, column: col });
    out
}
