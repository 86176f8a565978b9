use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::lexer::{tokenize, Tok, Token};
use crate::error::{Error, Result};
use crate::poly::fmt_coeff;
use crate::ring::Ring;

/// Syntax tree of an ideal expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    /// A declared variable, by index.
    Var(usize),
    Number(BigRational),
    /// `( e_1, ..., e_k )`: the ideal generated by the listed parts.
    Group(Vec<Expr>),
    /// A product of ideals (or elements).
    Product(Vec<Expr>),
    /// A product of element-valued factors times one parenthesized ideal,
    /// e.g. `x*(x^2, y^2)*z^3`.
    Scaled {
        scalar: Vec<Expr>,
        ideal: Box<Expr>,
    },
    Power(Box<Expr>, u32),
    /// Signed sum of element-valued terms, e.g. `x^3 + y*z`.
    Sum(Vec<(bool, Expr)>),
}

/// A comma-separated list of generators.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealExpr {
    pub items: Vec<Expr>,
}

impl Expr {
    /// True when the expression names a single element rather than a
    /// possibly non-principal ideal.
    pub fn is_element(&self) -> bool {
        match self {
            Expr::Var(_) | Expr::Number(_) => true,
            Expr::Group(items) => items.len() == 1 && items[0].is_element(),
            Expr::Product(fs) => fs.iter().all(Expr::is_element),
            Expr::Scaled { .. } => false,
            Expr::Power(b, _) => b.is_element(),
            Expr::Sum(terms) => terms.iter().all(|(_, t)| t.is_element()),
        }
    }
}

struct Parser<'a> {
    toks: Vec<Token>,
    i: usize,
    ring: &'a Ring,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.tok)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.pos)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn ideal(&mut self) -> Result<Vec<Expr>> {
        let mut items = vec![self.sum()?];
        while self.eat(&Tok::Comma) {
            items.push(self.sum()?);
        }
        Ok(items)
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let mut neg = false;
        let mut signed = false;
        if self.eat(&Tok::Minus) {
            neg = true;
            signed = true;
        } else if self.eat(&Tok::Plus) {
            signed = true;
        }
        terms.push((neg, self.term()?));
        loop {
            if self.eat(&Tok::Plus) {
                terms.push((false, self.term()?));
            } else if self.eat(&Tok::Minus) {
                terms.push((true, self.term()?));
            } else {
                break;
            }
        }
        if terms.len() == 1 && !(signed && terms[0].0) {
            return Ok(terms.pop().unwrap().1);
        }
        Ok(Expr::Sum(terms))
    }

    fn term(&mut self) -> Result<Expr> {
        let mut factors = vec![self.factor()?];
        while self.eat(&Tok::Star) {
            factors.push(self.factor()?);
        }
        if factors.len() == 1 {
            return Ok(factors.pop().unwrap());
        }
        let ideal_parts: Vec<usize> = (0..factors.len()).filter(|&k| !factors[k].is_element()).collect();
        if ideal_parts.len() == 1 {
            let ideal = factors.remove(ideal_parts[0]);
            return Ok(Expr::Scaled {
                scalar: factors,
                ideal: Box::new(ideal),
            });
        }
        Ok(Expr::Product(factors))
    }

    fn exponent(&mut self) -> Result<u32> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Number(n)) if n.is_integer() && !n.is_negative() => {
                self.i += 1;
                u32::try_from(n.to_integer()).map_err(|_| Error::parse(pos, "exponent too large"))
            }
            Some(Tok::Minus) => Err(Error::parse(pos, "negative exponent")),
            _ => Err(Error::parse(pos, "expected a natural exponent")),
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            let n = self.exponent()?;
            return Ok(Expr::Power(Box::new(base), n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Number(n)) => {
                self.i += 1;
                Ok(Expr::Number(n))
            }
            Some(Tok::Name(name)) => {
                self.i += 1;
                let idx = self.ring.var_index(&name).ok_or(Error::UnknownVariable(name))?;
                let var = Expr::Var(idx);
                if self.eat(&Tok::Caret) {
                    let n = self.exponent()?;
                    return Ok(Expr::Power(Box::new(var), n));
                }
                Ok(var)
            }
            Some(Tok::LParen) => {
                self.i += 1;
                let items = self.ideal()?;
                if !self.eat(&Tok::RParen) {
                    return Err(Error::parse(self.pos(), "unbalanced parentheses: expected `)`"));
                }
                Ok(Expr::Group(items))
            }
            Some(Tok::RParen) => Err(Error::parse(pos, "unbalanced parentheses: unexpected `)`")),
            Some(t) => Err(Error::parse(pos, format!("unexpected token {t:?}"))),
            None => Err(Error::parse(pos, "unexpected end of input")),
        }
    }
}

/// Parses `ring x, y, z` (a trailing `;` is allowed).
pub fn parse_ring(text: &str) -> Result<Ring> {
    let trimmed = text.trim().trim_end_matches(';').trim();
    let rest = trimmed
        .strip_prefix("ring")
        .filter(|r| r.is_empty() || r.starts_with(char::is_whitespace))
        .ok_or_else(|| Error::parse(0, "expected `ring`"))?;
    let names: Vec<&str> = rest.split(',').map(str::trim).collect();
    if names.len() == 1 && names[0].is_empty() {
        return Err(Error::EmptyRing);
    }
    for name in &names {
        if !crate::ring::valid_name(name) {
            return Err(Error::parse(0, format!("malformed variable name `{name}`")));
        }
    }
    Ring::new(&names)
}

/// Parses an ideal expression over the given ring.
pub fn parse_ideal(text: &str, ring: &Ring) -> Result<IdealExpr> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        i: 0,
        ring,
        end: text.len(),
    };
    let items = p.ideal()?;
    if p.i != p.toks.len() {
        let pos = p.pos();
        return Err(match p.peek() {
            Some(Tok::RParen) => Error::parse(pos, "unbalanced parentheses: unexpected `)`"),
            _ => Error::parse(pos, "trailing input"),
        });
    }
    Ok(IdealExpr { items })
}

pub struct ExprDisplay<'a> {
    expr: &'a Expr,
    ring: &'a Ring,
}

impl Expr {
    pub fn display<'a>(&'a self, ring: &'a Ring) -> ExprDisplay<'a> {
        ExprDisplay { expr: self, ring }
    }
}

impl IdealExpr {
    pub fn display<'a>(&'a self, ring: &'a Ring) -> IdealExprDisplay<'a> {
        IdealExprDisplay { expr: self, ring }
    }
}

fn needs_parens(e: &Expr) -> bool {
    matches!(e, Expr::Sum(_) | Expr::Product(_) | Expr::Scaled { .. })
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.ring;
        match self.expr {
            Expr::Var(i) => f.write_str(&ring.vars()[*i]),
            Expr::Number(n) => {
                if n.is_one() || n.is_integer() {
                    write!(f, "{}", n.numer())
                } else {
                    f.write_str(&fmt_coeff(n))
                }
            }
            Expr::Group(items) => {
                f.write_str("(")?;
                for (k, it) in items.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{}", it.display(ring))?;
                }
                f.write_str(")")
            }
            Expr::Product(fs) => {
                for (k, it) in fs.iter().enumerate() {
                    if k > 0 {
                        f.write_str("*")?;
                    }
                    write!(f, "{}", it.display(ring))?;
                }
                Ok(())
            }
            Expr::Scaled { scalar, ideal } => {
                for it in scalar {
                    write!(f, "{}*", it.display(ring))?;
                }
                write!(f, "{}", ideal.display(ring))
            }
            Expr::Power(b, n) => {
                if needs_parens(b) {
                    write!(f, "({})^{n}", b.display(ring))
                } else {
                    write!(f, "{}^{n}", b.display(ring))
                }
            }
            Expr::Sum(terms) => {
                for (k, (neg, t)) in terms.iter().enumerate() {
                    match (k, neg) {
                        (0, true) => f.write_str("-")?,
                        (0, false) => {}
                        (_, true) => f.write_str(" - ")?,
                        (_, false) => f.write_str(" + ")?,
                    }
                    if matches!(t, Expr::Sum(_)) {
                        write!(f, "({})", t.display(ring))?;
                    } else {
                        write!(f, "{}", t.display(ring))?;
                    }
                }
                Ok(())
            }
        }
    }
}

pub struct IdealExprDisplay<'a> {
    expr: &'a IdealExpr,
    ring: &'a Ring,
}

impl fmt::Display for IdealExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, it) in self.expr.items.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", it.display(self.ring))?;
        }
        Ok(())
    }
}
