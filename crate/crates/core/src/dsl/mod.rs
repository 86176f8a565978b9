//! Text front end: ring declarations, ideal expressions and documents.
//!
//! ```text
//! ring x, y, z;
//! ideal I = (x^3, y^3, z^3) + (x*y*z);
//! ideal J = x^3 + y*z, y^3 + z^3 + x*z, x*z + x*y;
//! ```

mod lexer;
mod parser;

use num_traits::{One, Zero};

pub use parser::{parse_ideal, parse_ring, Expr, IdealExpr};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::poly::Polynomial;
use crate::ring::{Ring, RingRef};

fn monomial_of(expr: &Expr, ring: &RingRef) -> Result<MonomialIdeal> {
    let n = ring.dim();
    Ok(match expr {
        Expr::Var(i) => MonomialIdeal::new(ring.clone(), [Monomial::var(n, *i)]),
        Expr::Number(c) if c.is_zero() => MonomialIdeal::zero(ring.clone()),
        Expr::Number(_) => MonomialIdeal::unit(ring.clone()),
        Expr::Group(items) => {
            let mut acc = MonomialIdeal::zero(ring.clone());
            for it in items {
                acc = acc.sum(&monomial_of(it, ring)?)?;
            }
            acc
        }
        Expr::Product(fs) => {
            let mut acc = MonomialIdeal::unit(ring.clone());
            for it in fs {
                acc = acc.product(&monomial_of(it, ring)?)?;
            }
            acc
        }
        Expr::Scaled { scalar, ideal } => {
            let mut acc = monomial_of(ideal, ring)?;
            for it in scalar {
                acc = acc.product(&monomial_of(it, ring)?)?;
            }
            acc
        }
        Expr::Power(b, e) => monomial_of(b, ring)?.power_binary(*e),
        Expr::Sum(terms) if terms.iter().any(|(_, t)| !t.is_element()) => {
            let mut acc = MonomialIdeal::zero(ring.clone());
            for (_, t) in terms {
                acc = acc.sum(&monomial_of(t, ring)?)?;
            }
            acc
        }
        Expr::Sum(_) => {
            let text = expr.display(ring).to_string();
            let polys = polys_of(expr, ring)?;
            match polys.as_slice() {
                [p] if p.is_zero() => MonomialIdeal::zero(ring.clone()),
                [p] => match p.as_monomial() {
                    Some(m) => MonomialIdeal::new(ring.clone(), [m.clone()]),
                    None => return Err(Error::NonMonomial(text)),
                },
                _ => return Err(Error::NonMonomial(text)),
            }
        }
    })
}

fn has_sum(expr: &Expr) -> bool {
    match expr {
        Expr::Var(_) | Expr::Number(_) => false,
        Expr::Group(items) | Expr::Product(items) => items.iter().any(has_sum),
        Expr::Scaled { scalar, ideal } => has_sum(ideal) || scalar.iter().any(has_sum),
        Expr::Power(b, _) => has_sum(b),
        Expr::Sum(_) => true,
    }
}

fn cross(a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::with_capacity(a.len() * b.len());
    for p in a {
        for q in b {
            let r = p.mul(q);
            if !r.is_zero() && !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out
}

fn polys_of(expr: &Expr, ring: &RingRef) -> Result<Vec<Polynomial>> {
    let n = ring.dim();
    if !has_sum(expr) {
        let ideal = monomial_of(expr, ring)?;
        return Ok(ideal.gens().iter().cloned().map(Polynomial::from_monomial).collect());
    }
    Ok(match expr {
        Expr::Var(_) | Expr::Number(_) => unreachable!("handled by the monomial path"),
        Expr::Group(items) => {
            let mut out = Vec::new();
            for it in items {
                for p in polys_of(it, ring)? {
                    if !p.is_zero() && !out.contains(&p) {
                        out.push(p);
                    }
                }
            }
            out
        }
        Expr::Product(fs) => {
            let mut acc = vec![Polynomial::constant(n, One::one())];
            for it in fs {
                acc = cross(&acc, &polys_of(it, ring)?);
            }
            acc
        }
        Expr::Scaled { scalar, ideal } => {
            let mut acc = polys_of(ideal, ring)?;
            for it in scalar {
                acc = cross(&acc, &polys_of(it, ring)?);
            }
            acc
        }
        Expr::Power(b, e) => {
            let base = polys_of(b, ring)?;
            let mut acc = vec![Polynomial::constant(n, One::one())];
            for _ in 0..*e {
                acc = cross(&acc, &base);
            }
            acc
        }
        Expr::Sum(terms) if terms.iter().any(|(_, t)| !t.is_element()) => {
            let mut out = Vec::new();
            for (_, t) in terms {
                for p in polys_of(t, ring)? {
                    if !p.is_zero() && !out.contains(&p) {
                        out.push(p);
                    }
                }
            }
            out
        }
        Expr::Sum(terms) => {
            let mut total = Polynomial::zero(n);
            for (neg, t) in terms {
                let parts = element_of(t, ring)?;
                total = if *neg { total.sub(&parts) } else { total.add(&parts) };
            }
            vec![total]
        }
    })
}

fn element_of(expr: &Expr, ring: &RingRef) -> Result<Polynomial> {
    let n = ring.dim();
    Ok(match expr {
        Expr::Var(i) => Polynomial::from_monomial(Monomial::var(n, *i)),
        Expr::Number(c) => Polynomial::constant(n, c.clone()),
        Expr::Group(items) if items.len() == 1 => element_of(&items[0], ring)?,
        Expr::Product(fs) => {
            let mut acc = Polynomial::constant(n, One::one());
            for f in fs {
                acc = acc.mul(&element_of(f, ring)?);
            }
            acc
        }
        Expr::Power(b, e) => element_of(b, ring)?.pow(*e),
        Expr::Sum(terms) => {
            let mut total = Polynomial::zero(n);
            for (neg, t) in terms {
                let p = element_of(t, ring)?;
                total = if *neg { total.sub(&p) } else { total.add(&p) };
            }
            total
        }
        _ => {
            return Err(Error::Precondition(format!(
                "`{}` is an ideal, not a single element",
                expr.display(ring)
            )))
        }
    })
}

impl IdealExpr {
    /// Evaluates to a monomial ideal; fails with [`Error::NonMonomial`] if any
    /// generator is a proper sum of terms.
    pub fn evaluate_monomial(&self, ring: &RingRef) -> Result<MonomialIdeal> {
        monomial_of(&Expr::Group(self.items.clone()), ring)
    }

    /// Evaluates to a list of polynomial generators.
    pub fn evaluate_polynomials(&self, ring: &RingRef) -> Result<Vec<Polynomial>> {
        polys_of(&Expr::Group(self.items.clone()), ring)
    }

    /// Evaluates each top-level item as a single ring element, keeping order.
    pub fn evaluate_elements(&self, ring: &RingRef) -> Result<Vec<Polynomial>> {
        self.items.iter().map(|e| element_of(e, ring)).collect()
    }

    /// True when no generator is written as a sum.
    pub fn is_monomial(&self) -> bool {
        !self.items.iter().any(has_sum)
    }
}

/// A ring declaration followed by named ideals.
#[derive(Debug, Clone)]
pub struct Document {
    pub ring: RingRef,
    pub ideals: Vec<(String, IdealExpr)>,
}

impl Document {
    pub fn ideal(&self, name: &str) -> Result<&IdealExpr> {
        self.ideals
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, e)| e)
            .ok_or_else(|| Error::UnknownIdeal(name.to_string()))
    }
}

/// Parses a document of `;`-separated statements. `#` starts a comment.
pub fn parse_document(text: &str) -> Result<Document> {
    let cleaned: String = text
        .lines()
        .map(|l| match l.find('#') {
            Some(p) => l[..p].to_string() + &" ".repeat(l.len() - p),
            None => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n");
    let mut ring: Option<RingRef> = None;
    let mut ideals: Vec<(String, IdealExpr)> = Vec::new();
    let mut offset = 0;
    for stmt in cleaned.split(';') {
        let start = offset;
        offset += stmt.len() + 1;
        let body = stmt.trim();
        if body.is_empty() {
            continue;
        }
        let lead = start + (stmt.len() - stmt.trim_start().len());
        if body.starts_with("ring") && body[4..].starts_with(char::is_whitespace) {
            if ring.is_some() {
                return Err(Error::parse(lead, "second ring declaration"));
            }
            ring = Some(parse_ring(body)?.shared());
            continue;
        }
        let rest = body
            .strip_prefix("ideal")
            .filter(|r| r.starts_with(char::is_whitespace))
            .ok_or_else(|| Error::parse(lead, "expected `ring` or `ideal` statement"))?;
        let r = ring
            .as_ref()
            .ok_or_else(|| Error::parse(lead, "ideal declared before the ring"))?;
        let (name, expr) = rest
            .split_once('=')
            .ok_or_else(|| Error::parse(lead, "expected `ideal NAME = ...`"))?;
        let name = name.trim();
        if !crate::ring::valid_name(name) {
            return Err(Error::parse(lead, format!("malformed ideal name `{name}`")));
        }
        let expr_off = lead + body.len() - expr.len();
        let parsed = parse_ideal(expr, r).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse {
                pos: pos + expr_off,
                msg,
            },
            other => other,
        })?;
        if ideals.iter().any(|(n, _)| n == name) {
            return Err(Error::parse(lead, format!("ideal `{name}` declared twice")));
        }
        ideals.push((name.to_string(), parsed));
    }
    let ring = ring.ok_or_else(|| Error::parse(0, "missing ring declaration"))?;
    Ok(Document { ring, ideals })
}

/// Parses a ring declaration and an ideal expression into a monomial ideal.
pub fn monomial_ideal(ring: &str, ideal: &str) -> Result<MonomialIdeal> {
    let ring = parse_ring(ring)?.shared();
    parse_ideal(ideal, &ring)?.evaluate_monomial(&ring)
}

/// Renders a monomial ideal in the canonical input syntax.
pub fn render_ideal(ideal: &MonomialIdeal) -> String {
    ideal.to_string()
}

/// Canonical form `ring x, y` of a ring.
pub fn render_ring(ring: &Ring) -> String {
    ring.to_string()
}
