use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::EchelonBasis;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::RingRef;
use crate::series::binomial;

/// Largest truncated space `R/m^k` (counted in monomials) the local engine builds.
pub const LOCAL_DIM_CAP: u64 = 4_000;

/// An ideal with arbitrary (possibly non-homogeneous) generators, studied in
/// the local ring at the origin. Everything is computed inside `R/m^k` for a
/// `k` large enough that `m^(k-1) ⊆ K`, so results are exact for ideals
/// primary to the maximal ideal. Inputs that are provably not are rejected
/// with `NotMPrimary`; when no certificate is found below [`LOCAL_DIM_CAP`]
/// the engine reports `BudgetExceeded`.
#[derive(Clone, Debug)]
pub struct LocalIdeal {
    ring: RingRef,
    gens: Vec<Polynomial>,
}

/// `(K + m^n)/m^n` for an `n` with `m^(n-1) ⊆ K`.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub n: u32,
    pub basis: EchelonBasis,
}

fn truncated_dim(d: usize, n: u32) -> u64 {
    // number of monomials of degree < n
    binomial(n as u64 + d as u64 - 1, d as u64)
}

impl LocalIdeal {
    pub fn new(ring: RingRef, gens: impl IntoIterator<Item = Polynomial>) -> LocalIdeal {
        LocalIdeal {
            ring,
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        }
    }

    pub fn maximal(ring: RingRef) -> LocalIdeal {
        let d = ring.dim();
        LocalIdeal::new(ring, (0..d).map(|i| Polynomial::from_monomial(Monomial::var(d, i))))
    }

    pub fn unit(ring: RingRef) -> LocalIdeal {
        let d = ring.dim();
        LocalIdeal::new(ring, [Polynomial::from_monomial(Monomial::one(d))])
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    fn check_ring(&self, other: &LocalIdeal) -> Result<()> {
        if *self.ring != *other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    /// Span of `(K + m^n)/m^n`: the generators closed under multiplication
    /// by the variables, truncated below degree `n`.
    pub fn truncated_span(&self, n: u32) -> EchelonBasis {
        let d = self.ring.dim();
        let vars: Vec<Monomial> = (0..d).map(|i| Monomial::var(d, i)).collect();
        let mut basis = EchelonBasis::new();
        let mut queue: Vec<Polynomial> = self.gens.iter().map(|g| g.truncate(n)).collect();
        while let Some(v) = queue.pop() {
            let r = basis.reduce(&v);
            if r.is_zero() {
                continue;
            }
            basis.insert(&r);
            for x in &vars {
                let next = r.mul_monomial(x).truncate(n);
                if !next.is_zero() {
                    queue.push(next);
                }
            }
        }
        basis
    }

    /// Finds a truncation level certifying `m^(n-1) ⊆ K` (Nakayama: it is
    /// enough that `m^(n-1) ⊆ K + m^n`).
    pub fn truncation(&self) -> Result<Truncation> {
        let d = self.ring.dim();
        if self.gens.is_empty() {
            return Err(Error::NotMPrimary);
        }
        // if no generator has a pure power of x_i among its terms, K lies in
        // the prime of the x_i-axis
        let axis_free = (0..d).any(|i| {
            !self.gens.iter().any(|g| {
                g.terms()
                    .keys()
                    .any(|m| m.is_one() || matches!(m.as_pure_power(), Some((v, _)) if v == i))
            })
        });
        // fewer than d non-unit generators cannot cut out a point
        let has_unit = self.gens.iter().any(|g| g.min_degree() == Some(0));
        if axis_free || (!has_unit && self.gens.iter().filter(|g| !g.is_zero()).count() < d) {
            return Err(Error::NotMPrimary);
        }
        let start = self.gens.iter().filter_map(Polynomial::min_degree).max().unwrap_or(0) + 1;
        let mut k = start.max(1);
        loop {
            let n = k + 1;
            if truncated_dim(d, n) > LOCAL_DIM_CAP {
                return Err(Error::BudgetExceeded(format!(
                    "no m^{k} inside the ideal within {LOCAL_DIM_CAP} truncated monomials; it may not be primary to the maximal ideal"
                )));
            }
            let basis = self.truncated_span(n);
            let full = Monomial::all_of_degree(d, k)
                .into_iter()
                .all(|m| basis.contains(&Polynomial::from_monomial(m)));
            if full {
                return Ok(Truncation { n, basis });
            }
            k = k + k / 2 + 1;
        }
    }

    /// `ℓ(R_m / K_m)`.
    pub fn colength(&self) -> Result<u64> {
        let t = self.truncation()?;
        Ok(truncated_dim(self.ring.dim(), t.n) - t.basis.rank() as u64)
    }

    /// Membership in the localized ideal; `K` must be primary to the maximal ideal.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        let t = self.truncation()?;
        Ok(t.basis.contains(&f.truncate(t.n)))
    }

    /// `other ⊆ self` after localizing.
    pub fn contains_ideal(&self, other: &LocalIdeal) -> Result<bool> {
        self.check_ring(other)?;
        let t = self.truncation()?;
        Ok(other.gens.iter().all(|g| t.basis.contains(&g.truncate(t.n))))
    }

    pub fn ideal_equals(&self, other: &LocalIdeal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn sum(&self, other: &LocalIdeal) -> Result<LocalIdeal> {
        self.check_ring(other)?;
        Ok(LocalIdeal::new(
            self.ring.clone(),
            self.gens.iter().chain(other.gens.iter()).cloned(),
        ))
    }

    pub fn product(&self, other: &LocalIdeal) -> Result<LocalIdeal> {
        self.check_ring(other)?;
        let mut prods = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                prods.push(a.mul(b));
            }
        }
        Ok(LocalIdeal::new(self.ring.clone(), prods))
    }

    pub fn mul_maximal(&self) -> LocalIdeal {
        self.product(&LocalIdeal::maximal(self.ring.clone()))
            .expect("same ring")
    }

    /// `μ(K) = ℓ(K/mK) = ℓ(R/mK) - ℓ(R/K)`.
    pub fn mu(&self) -> Result<u64> {
        Ok(self.mul_maximal().colength()? - self.colength()?)
    }
}

impl fmt::Display for LocalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("(0)");
        }
        f.write_str("(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", g.display(&self.ring))?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn xyz() -> RingRef {
        Ring::new(&["x", "y", "z"]).unwrap().shared()
    }

    fn p(terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_int_terms(3, terms)
    }

    #[test]
    fn colength_of_homogeneous_parameters() {
        let r = xyz();
        let k = LocalIdeal::new(
            r.clone(),
            [
                p(&[(1, &[0, 1, 1])]),
                p(&[(1, &[0, 1, 0]), (1, &[0, 0, 1])]),
                p(&[(1, &[1, 0, 0])]),
            ],
        );
        assert_eq!(k.colength().unwrap(), 2);
        assert_eq!(LocalIdeal::maximal(r.clone()).colength().unwrap(), 1);
        assert_eq!(LocalIdeal::unit(r).colength().unwrap(), 0);
    }

    #[test]
    fn units_of_the_local_ring_generate_everything() {
        let r = xyz();
        // (1 + x) is a unit locally
        let k = LocalIdeal::new(r, [p(&[(1, &[0, 0, 0]), (1, &[1, 0, 0])])]);
        assert_eq!(k.colength().unwrap(), 0);
    }

    #[test]
    fn weighted_complete_intersection_and_the_truncation_cap() {
        let k = LocalIdeal::new(
            xyz(),
            [
                p(&[(2, &[3, 0, 0]), (1, &[0, 1, 1])]),
                p(&[(1, &[0, 2, 0])]),
                p(&[(1, &[0, 0, 2])]),
            ],
        );
        // weights (2, 3, 3): 6 * 6 * 6 / (2 * 3 * 3)
        assert_eq!(k.colength().unwrap(), 12);
        let mut big = k.clone();
        for _ in 0..7 {
            big = big.product(&k).unwrap();
        }
        assert!(matches!(big.colength(), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn non_primary_is_rejected() {
        let r = xyz();
        let k = LocalIdeal::new(r, [p(&[(1, &[1, 0, 0])]), p(&[(1, &[0, 1, 0])])]);
        assert_eq!(k.colength(), Err(Error::NotMPrimary));
        // vanishes on the line x = y = z
        let line = LocalIdeal::new(
            xyz(),
            [
                p(&[(1, &[1, 0, 0]), (-1, &[0, 1, 0])]),
                p(&[(1, &[0, 1, 0]), (-1, &[0, 0, 1])]),
            ],
        );
        assert_eq!(line.colength(), Err(Error::NotMPrimary));
    }

    #[test]
    fn local_membership_sees_higher_order_terms() {
        let r = xyz();
        // x + y^2 generates an ideal containing x + y^2; with (y, z) the sum is m-primary
        let k = LocalIdeal::new(
            r.clone(),
            [
                p(&[(1, &[1, 0, 0]), (1, &[0, 2, 0])]),
                p(&[(1, &[0, 1, 0])]),
                p(&[(1, &[0, 0, 1])]),
            ],
        );
        assert!(k.contains(&p(&[(1, &[1, 0, 0])])).unwrap());
        assert!(k.ideal_equals(&LocalIdeal::maximal(r)).unwrap());
        assert_eq!(k.mu().unwrap(), 3);
    }
}
