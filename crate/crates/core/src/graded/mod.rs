//! Homogeneous ideals handled one graded piece at a time by exact
//! elimination, plus a truncation-based engine for non-homogeneous
//! generators in the local ring at the origin.

mod local;

use std::fmt;

pub use local::LocalIdeal;

use crate::error::{Error, Result};
use crate::linalg::EchelonBasis;
use crate::monomial::{Monomial, MonomialIdeal};
use crate::poly::{HomogeneousPolynomial, Polynomial};
use crate::ring::RingRef;
use crate::series::binomial;

/// `dim_Q R_e = C(e + d - 1, d - 1)`.
pub fn full_piece_dim(nvars: usize, e: u32) -> u64 {
    binomial(e as u64 + nvars as u64 - 1, nvars as u64 - 1)
}

/// Reduced row-echelon basis of the degree-`e` piece of an ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPieceBasis {
    pub degree: u32,
    pub basis: EchelonBasis,
}

impl GradedPieceBasis {
    pub fn rank(&self) -> usize {
        self.basis.rank()
    }
}

/// An ideal generated by homogeneous polynomials.
#[derive(Clone, Debug)]
pub struct GradedIdeal {
    ring: RingRef,
    gens: Vec<HomogeneousPolynomial>,
}

impl GradedIdeal {
    /// Zero polynomials are dropped; any other non-homogeneous input is an error.
    pub fn new(ring: RingRef, polys: impl IntoIterator<Item = Polynomial>) -> Result<GradedIdeal> {
        let mut gens = Vec::new();
        for p in polys {
            if p.is_zero() {
                continue;
            }
            if p.homogeneous_degree().is_none() {
                return Err(Error::NonHomogeneous(p.display(&ring).to_string()));
            }
            gens.push(HomogeneousPolynomial::new(p)?);
        }
        gens.sort_by_key(HomogeneousPolynomial::degree);
        Ok(GradedIdeal { ring, gens })
    }

    pub fn from_monomial(ideal: &MonomialIdeal) -> GradedIdeal {
        GradedIdeal::new(
            ideal.ring().clone(),
            ideal.gens().iter().cloned().map(Polynomial::from_monomial),
        )
        .expect("monomials are homogeneous")
    }

    pub fn maximal(ring: RingRef) -> GradedIdeal {
        GradedIdeal::from_monomial(&MonomialIdeal::maximal(ring))
    }

    pub fn unit(ring: RingRef) -> GradedIdeal {
        GradedIdeal::from_monomial(&MonomialIdeal::unit(ring))
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn gens(&self) -> &[HomogeneousPolynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// `D(I)`, the largest generator degree.
    pub fn max_degree(&self) -> Option<u32> {
        self.gens.last().map(HomogeneousPolynomial::degree)
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.gens.first().map(HomogeneousPolynomial::degree)
    }

    /// The monomial ideal with the same generators, when every generator is a monomial.
    pub fn as_monomial(&self) -> Option<MonomialIdeal> {
        let monos: Option<Vec<Monomial>> = self.gens.iter().map(|g| g.as_monomial().cloned()).collect();
        monos.map(|m| MonomialIdeal::new(self.ring.clone(), m))
    }

    fn check_ring(&self, other: &GradedIdeal) -> Result<()> {
        if *self.ring != *other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    /// Pieces `K_0, ..., K_upto`, each built as `R_1 K_{e-1}` plus the
    /// degree-`e` generators.
    pub fn pieces(&self, upto: u32) -> Vec<GradedPieceBasis> {
        self.ladder(upto, |_, _| {}).0
    }

    /// Runs the piece ladder; `on_gen(index, added)` reports whether each
    /// generator enlarged its piece beyond `R_1 K_{e-1}` and earlier generators.
    fn ladder(&self, upto: u32, mut on_gen: impl FnMut(usize, bool)) -> (Vec<GradedPieceBasis>, Vec<usize>) {
        let d = self.ring.dim();
        let mut pieces: Vec<GradedPieceBasis> = Vec::with_capacity(upto as usize + 1);
        let mut mranks = Vec::with_capacity(upto as usize + 1);
        let mut gi = 0;
        for e in 0..=upto {
            let mut basis = EchelonBasis::new();
            if e > 0 {
                let prev = &pieces[e as usize - 1].basis;
                if prev.rank() as u64 == full_piece_dim(d, e - 1) {
                    for m in Monomial::all_of_degree(d, e) {
                        basis.insert(&Polynomial::from_monomial(m));
                    }
                } else {
                    for row in prev.rows() {
                        for i in 0..d {
                            basis.insert(&row.mul_monomial(&Monomial::var(d, i)));
                        }
                    }
                }
            }
            mranks.push(basis.rank());
            while gi < self.gens.len() && self.gens[gi].degree() == e {
                let added = basis.insert(&self.gens[gi]);
                on_gen(gi, added);
                gi += 1;
            }
            pieces.push(GradedPieceBasis { degree: e, basis });
        }
        (pieces, mranks)
    }

    pub fn piece(&self, e: u32) -> GradedPieceBasis {
        self.pieces(e).pop().expect("nonempty ladder")
    }

    pub fn piece_dim(&self, e: u32) -> usize {
        self.piece(e).rank()
    }

    /// Membership, tested separately on each homogeneous component.
    pub fn member(&self, f: &Polynomial) -> bool {
        let Some(top) = f.degree() else {
            return true;
        };
        let pieces = self.pieces(top);
        f.homogeneous_components()
            .iter()
            .all(|(e, comp)| pieces[*e as usize].basis.contains(comp))
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &GradedIdeal) -> bool {
        let Some(top) = other.max_degree() else {
            return true;
        };
        let pieces = self.pieces(top);
        other.gens.iter().all(|g| pieces[g.degree() as usize].basis.contains(g))
    }

    pub fn ideal_equals(&self, other: &GradedIdeal) -> bool {
        *self.ring == *other.ring && self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn sum(&self, other: &GradedIdeal) -> Result<GradedIdeal> {
        self.check_ring(other)?;
        GradedIdeal::new(
            self.ring.clone(),
            self.gens.iter().chain(other.gens.iter()).map(|g| Polynomial::clone(g)),
        )
    }

    /// Pairwise products, pruned to a minimal generating subset.
    pub fn product(&self, other: &GradedIdeal) -> Result<GradedIdeal> {
        self.check_ring(other)?;
        let mut prods = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                prods.push(a.mul(b));
            }
        }
        Ok(GradedIdeal::new(self.ring.clone(), prods)?.minimal_generators())
    }

    pub fn power(&self, n: u32) -> GradedIdeal {
        let mut acc = GradedIdeal::unit(self.ring.clone());
        for _ in 0..n {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }

    /// `[K^0, ..., K^n]`.
    pub fn power_ladder(&self, n: usize) -> Vec<GradedIdeal> {
        let mut out = vec![GradedIdeal::unit(self.ring.clone())];
        for k in 1..=n {
            let next = out[k - 1].product(self).expect("same ring");
            out.push(next);
        }
        out
    }

    /// `m K`.
    pub fn mul_maximal(&self) -> GradedIdeal {
        self.product(&GradedIdeal::maximal(self.ring.clone()))
            .expect("same ring")
    }

    /// A generating subset that is minimal: each kept generator is outside
    /// the span of `R_1 K_{e-1}` and the earlier kept generators of its degree.
    pub fn minimal_generators(&self) -> GradedIdeal {
        let Some(top) = self.max_degree() else {
            return self.clone();
        };
        let mut keep = vec![false; self.gens.len()];
        self.ladder(top, |i, added| keep[i] = added);
        GradedIdeal {
            ring: self.ring.clone(),
            gens: self
                .gens
                .iter()
                .zip(keep)
                .filter(|(_, k)| *k)
                .map(|(g, _)| g.clone())
                .collect(),
        }
    }

    /// `μ(K) = Σ_{e <= D} [dim K_e - dim (mK)_e]`.
    pub fn mu(&self) -> usize {
        let Some(top) = self.max_degree() else {
            return 0;
        };
        let (pieces, mranks) = self.ladder(top, |_, _| {});
        pieces.iter().zip(mranks).map(|(p, m)| p.rank() - m).sum()
    }

    /// `ℓ(R/K) = Σ_e [dim R_e - dim K_e]`, summed until a full piece appears.
    /// An Artinian `K` contains `R_e` for `e > d (D - 1)`, so the search stops
    /// at `d D + 1` unless another bound is given.
    pub fn artinian_length(&self, bound: Option<u32>) -> Result<u64> {
        let d = self.ring.dim();
        let default_bound = d as u32 * self.max_degree().unwrap_or(0) + 1;
        let bound = bound.unwrap_or(default_bound);
        let pieces = self.pieces(bound);
        let mut total = 0u64;
        for p in &pieces {
            let full = full_piece_dim(d, p.degree);
            if p.rank() as u64 == full {
                return Ok(total);
            }
            total += full - p.rank() as u64;
        }
        Err(Error::NotArtinian(format!("no full piece up to degree {bound}")))
    }
}

/// Whether `d` elements of `Q[x_1..x_d]` form a system of parameters, i.e.
/// generate an ideal primary to the maximal ideal. In the polynomial ring
/// this is equivalent to being a regular sequence.
pub fn is_parameter_system(ring: &RingRef, elems: &[Polynomial]) -> Result<bool> {
    let d = ring.dim();
    if elems.len() != d {
        return Err(Error::WrongCount {
            expected: d,
            got: elems.len(),
        });
    }
    if elems.iter().any(|e| e.is_zero() || e.min_degree() == Some(0)) {
        return Ok(false);
    }
    let all_homogeneous = elems.iter().all(|e| e.homogeneous_degree().is_some());
    let result = if all_homogeneous {
        GradedIdeal::new(ring.clone(), elems.iter().cloned())?.artinian_length(None)
    } else {
        LocalIdeal::new(ring.clone(), elems.iter().cloned()).colength()
    };
    match result {
        Ok(_) => Ok(true),
        Err(Error::NotArtinian(_)) | Err(Error::NotMPrimary) => Ok(false),
        Err(e) => Err(e),
    }
}

impl fmt::Display for GradedIdeal {
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
