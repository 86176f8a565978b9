//! Exact row reduction over the rationals, with monomials as columns.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::monomial::Monomial;
use crate::poly::{Coeff, Polynomial};

/// A reduced row-echelon basis of a finite-dimensional span of polynomials.
///
/// Every row is keyed by its pivot (its largest monomial), has pivot
/// coefficient 1, and has no entry in any other row's pivot column. The
/// basis is therefore canonical for the span.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EchelonBasis {
    rows: BTreeMap<Monomial, Polynomial>,
}

impl EchelonBasis {
    pub fn new() -> EchelonBasis {
        EchelonBasis::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = &Polynomial> {
        self.rows.values()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &Monomial> {
        self.rows.keys()
    }

    /// Remainder of `v` after clearing all pivot columns.
    pub fn reduce(&self, v: &Polynomial) -> Polynomial {
        let hits: Vec<(Monomial, Coeff)> = v
            .terms()
            .iter()
            .filter(|(m, _)| self.rows.contains_key(*m))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        let mut r = v.clone();
        for (m, c) in hits {
            r.add_scaled(&self.rows[&m], &-c);
        }
        r
    }

    pub fn contains(&self, v: &Polynomial) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &Polynomial) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.leading() else {
            return false;
        };
        let pivot = pivot.clone();
        let inv = Coeff::one() / lead;
        let r = r.scale(&inv);
        for row in self.rows.values_mut() {
            if let Some(c) = row.coeff(&pivot) {
                let c = -c.clone();
                if !c.is_zero() {
                    row.add_scaled(&r, &c);
                }
            }
        }
        self.rows.insert(pivot, r);
        true
    }

    pub fn extend<'a>(&mut self, vs: impl IntoIterator<Item = &'a Polynomial>) {
        for v in vs {
            self.insert(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_int_terms(2, terms)
    }

    #[test]
    fn rank_and_membership() {
        let mut b = EchelonBasis::new();
        assert!(b.insert(&p(&[(1, &[1, 0]), (1, &[0, 1])])));
        assert!(b.insert(&p(&[(1, &[1, 0]), (-1, &[0, 1])])));
        assert!(!b.insert(&p(&[(3, &[0, 1])])));
        assert_eq!(b.rank(), 2);
        assert!(b.contains(&p(&[(5, &[1, 0])])));
        assert!(!b.contains(&p(&[(1, &[2, 0])])));
    }

    #[test]
    fn canonical_under_row_operations() {
        let mut a = EchelonBasis::new();
        a.extend([&p(&[(1, &[2, 0]), (1, &[1, 1])]), &p(&[(1, &[1, 1]), (1, &[0, 2])])]);
        let mut b = EchelonBasis::new();
        b.extend([&p(&[(1, &[2, 0]), (-1, &[0, 2])]), &p(&[(2, &[1, 1]), (2, &[0, 2])])]);
        assert_eq!(a, b);
    }
}
