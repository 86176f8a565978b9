//! Sparse polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::ring::Ring;

pub type Coeff = BigRational;

/// A polynomial as a map from monomials to nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Polynomial {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Coeff) -> Polynomial {
        Polynomial::term(Monomial::one(nvars), c)
    }

    pub fn term(m: Monomial, c: Coeff) -> Polynomial {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    pub fn from_monomial(m: Monomial) -> Polynomial {
        Polynomial::term(m, Coeff::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Polynomial {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(nvars: usize, terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_terms(
            nvars,
            terms
                .iter()
                .map(|(c, e)| (Monomial::new(e.to_vec()), Coeff::from_integer(BigInt::from(*c)))),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Coeff> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Coeff> {
        self.terms.get(m)
    }

    /// Largest term in graded lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, other: &Polynomial, factor: &Coeff) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * factor);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(other, &Coeff::one());
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(other, &-Coeff::one());
        out
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, u: &Monomial) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.mul(u), c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.nvars, Coeff::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Least degree of a term (the order at the origin).
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// `Some(deg)` when every term has the same degree; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn homogeneous_components(&self) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Polynomial::zero(self.nvars))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Drops every term of degree `>= k`.
    pub fn truncate(&self, k: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The single monomial when the polynomial is a nonzero scalar multiple of one.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        if self.terms.len() == 1 {
            self.terms.keys().next()
        } else {
            None
        }
    }

    pub fn display<'a>(&'a self, ring: &'a Ring) -> PolynomialDisplay<'a> {
        PolynomialDisplay { poly: self, ring }
    }
}

/// A nonzero polynomial whose terms all share one total degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomogeneousPolynomial {
    poly: Polynomial,
    degree: u32,
}

impl HomogeneousPolynomial {
    pub fn new(poly: Polynomial) -> Result<HomogeneousPolynomial> {
        match poly.homogeneous_degree() {
            Some(degree) => Ok(HomogeneousPolynomial { poly, degree }),
            None if poly.is_zero() => Err(Error::ZeroIdeal("homogeneous polynomial")),
            None => Err(Error::NonHomogeneous(format!("{} mixed-degree terms", poly.len()))),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn into_inner(self) -> Polynomial {
        self.poly
    }
}

impl Deref for HomogeneousPolynomial {
    type Target = Polynomial;

    fn deref(&self) -> &Polynomial {
        &self.poly
    }
}

pub struct PolynomialDisplay<'a> {
    poly: &'a Polynomial,
    ring: &'a Ring,
}

pub(crate) fn fmt_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for PolynomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mag = c.abs();
            if m.is_one() {
                f.write_str(&fmt_coeff(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", m.display(self.ring))?;
            } else {
                write!(f, "{}*{}", fmt_coeff(&mag), m.display(self.ring))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let ring = Ring::new(&["x", "y", "z"]).unwrap();
        let f = Polynomial::from_int_terms(3, &[(1, &[3, 0, 0]), (1, &[0, 1, 1])]);
        assert_eq!(f.display(&ring).to_string(), "x^3 + y*z");
        assert_eq!(f.homogeneous_degree(), None);
        assert_eq!(f.min_degree(), Some(2));
        let g = Polynomial::from_int_terms(3, &[(1, &[0, 1, 0]), (-1, &[0, 0, 1])]);
        let h = Polynomial::from_int_terms(3, &[(1, &[0, 1, 0]), (1, &[0, 0, 1])]);
        // (y - z)(y + z) = y^2 - z^2
        assert_eq!(g.mul(&h).display(&ring).to_string(), "y^2 - z^2");
        assert!(g.add(&h).sub(&h).sub(&g).is_zero());
        let half = Coeff::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(h.scale(&half).display(&ring).to_string(), "1/2*y + 1/2*z");
        assert_eq!(f.truncate(3).display(&ring).to_string(), "y*z");
    }

    #[test]
    fn homogeneous_wrapper() {
        let p = Polynomial::from_int_terms(2, &[(2, &[1, 1]), (1, &[2, 0])]);
        let h = HomogeneousPolynomial::new(p).unwrap();
        assert_eq!(h.degree(), 2);
        assert!(HomogeneousPolynomial::new(Polynomial::zero(2)).is_err());
        let mixed = Polynomial::from_int_terms(2, &[(1, &[1, 0]), (1, &[2, 0])]);
        assert!(matches!(
            HomogeneousPolynomial::new(mixed),
            Err(Error::NonHomogeneous(_))
        ));
    }
}
