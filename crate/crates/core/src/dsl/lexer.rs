use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Name(String),
    Number(BigRational),
    Comma,
    LParen,
    RParen,
    Star,
    Caret,
    Plus,
    Minus,
    Equals,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub pos: usize,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let pos = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            b',' => Some(Tok::Comma),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'*' => Some(Tok::Star),
            b'^' => Some(Tok::Caret),
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'=' => Some(Tok::Equals),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, pos });
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let numer: BigInt = text[pos..i].parse().expect("digits");
            let mut value = BigRational::from_integer(numer);
            if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                let start = i + 1;
                i = start;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let denom: BigInt = text[start..i].parse().expect("digits");
                if denom == BigInt::from(0) {
                    return Err(Error::parse(start, "zero denominator"));
                }
                value /= BigRational::from_integer(denom);
            }
            out.push(Token {
                tok: Tok::Number(value),
                pos,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Name(text[pos..i].to_string()),
                pos,
            });
            continue;
        }
        return Err(Error::parse(
            pos,
            format!("unexpected character `{}`", text[pos..].chars().next().unwrap()),
        ));
    }
    Ok(out)
}
