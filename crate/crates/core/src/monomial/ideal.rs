use std::fmt;

use super::Monomial;
use crate::error::{Error, Result};
use crate::ring::RingRef;

/// A monomial ideal, stored by its minimal generators in canonical order.
///
/// The empty generator list is the zero ideal and `{1}` is the unit ideal.
#[derive(Clone, Debug)]
pub struct MonomialIdeal {
    ring: RingRef,
    gens: Vec<Monomial>,
}

impl PartialEq for MonomialIdeal {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.gens == other.gens
    }
}

impl Eq for MonomialIdeal {}

/// Keeps the divisibility-minimal elements, sorted canonically.
pub(crate) fn minimal_elements(mut cands: Vec<Monomial>) -> Vec<Monomial> {
    cands.sort_by(|a, b| a.canonical_cmp(b));
    cands.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(cands.len());
    // kept[..lower] all have degree strictly below the current candidate;
    // distinct monomials of equal degree never divide each other
    let mut lower = 0;
    let mut current = None;
    for c in cands {
        let deg = c.degree();
        if current != Some(deg) {
            current = Some(deg);
            lower = kept.len();
        }
        if !kept[..lower].iter().any(|k| k.divides(&c)) {
            kept.push(c);
        }
    }
    kept
}

impl MonomialIdeal {
    /// Minimalizes an arbitrary generating set.
    pub fn new(ring: RingRef, gens: impl IntoIterator<Item = Monomial>) -> MonomialIdeal {
        let gens: Vec<Monomial> = gens.into_iter().collect();
        debug_assert!(gens.iter().all(|g| g.nvars() == ring.dim()));
        MonomialIdeal {
            gens: minimal_elements(gens),
            ring,
        }
    }

    pub fn zero(ring: RingRef) -> MonomialIdeal {
        MonomialIdeal { ring, gens: Vec::new() }
    }

    pub fn unit(ring: RingRef) -> MonomialIdeal {
        let one = Monomial::one(ring.dim());
        MonomialIdeal { ring, gens: vec![one] }
    }

    /// The homogeneous maximal ideal `m = (x_1, ..., x_d)`.
    pub fn maximal(ring: RingRef) -> MonomialIdeal {
        let d = ring.dim();
        MonomialIdeal::new(ring, (0..d).map(|i| Monomial::var(d, i)))
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    /// Minimal number of generators.
    pub fn mu(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    fn check_ring(&self, other: &MonomialIdeal) -> Result<()> {
        if *self.ring != *other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ring(other)?;
        let gens = self.gens.iter().chain(other.gens.iter()).cloned().collect::<Vec<_>>();
        Ok(MonomialIdeal::new(self.ring.clone(), gens))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b));
            }
        }
        Ok(MonomialIdeal::new(self.ring.clone(), gens))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MonomialIdeal {
        MonomialIdeal {
            ring: self.ring.clone(),
            gens: self.gens.iter().map(|g| g.mul(m)).collect(),
        }
    }

    /// `I^n` by iterated multiplication; `I^0` is the unit ideal.
    pub fn power(&self, n: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.ring.clone());
        for _ in 0..n {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }

    /// `I^n` by repeated squaring.
    pub fn power_binary(&self, mut n: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.ring.clone());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.product(&base).expect("same ring");
            }
            n >>= 1;
            if n > 0 {
                base = base.product(&base).expect("same ring");
            }
        }
        acc
    }

    /// `[I^0, I^1, ..., I^n]`.
    pub fn power_ladder(&self, n: usize) -> Vec<MonomialIdeal> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(MonomialIdeal::unit(self.ring.clone()));
        for k in 1..=n {
            let next = out[k - 1].product(self).expect("same ring");
            out.push(next);
        }
        out
    }

    /// `(I : g)` for a single monomial.
    pub fn colon_monomial(&self, g: &Monomial) -> MonomialIdeal {
        MonomialIdeal::new(self.ring.clone(), self.gens.iter().map(|f| f.colon(g)))
    }

    /// `(I : J) = ∩_{g ∈ gens(J)} (I : g)`.
    pub fn colon(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ring(other)?;
        if other.is_zero() {
            return Err(Error::ZeroIdeal("colon by an ideal"));
        }
        let mut acc: Option<MonomialIdeal> = None;
        for g in &other.gens {
            let part = self.colon_monomial(g);
            acc = Some(match acc {
                None => part,
                Some(a) => a.intersect(&part)?,
            });
        }
        Ok(acc.expect("nonzero divisor ideal"))
    }

    pub fn contains(&self, f: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(f))
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    /// Equality by mutual generator containment.
    pub fn equals(&self, other: &MonomialIdeal) -> bool {
        *self.ring == *other.ring && self.is_subset(other) && other.is_subset(self)
    }

    /// Intersection via pairwise lcms.
    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        Ok(MonomialIdeal::new(self.ring.clone(), gens))
    }

    /// Largest `n` with `I ⊆ m^n`, i.e. the least generator degree.
    pub fn order(&self) -> Result<u32> {
        self.gens
            .iter()
            .map(Monomial::degree)
            .min()
            .ok_or(Error::ZeroIdeal("order"))
    }

    /// Largest generator degree.
    pub fn max_degree(&self) -> Option<u32> {
        self.gens.iter().map(Monomial::degree).max()
    }

    /// Least exponent `e` with `x_i^e ∈ I`, per variable.
    pub fn pure_power_bounds(&self) -> Vec<Option<u32>> {
        let mut bounds = vec![None; self.ring.dim()];
        for g in &self.gens {
            if g.is_one() {
                return vec![Some(0); self.ring.dim()];
            }
            if let Some((i, e)) = g.as_pure_power() {
                bounds[i] = Some(bounds[i].map_or(e, |b: u32| b.min(e)));
            }
        }
        bounds
    }

    pub fn is_artinian(&self) -> bool {
        self.pure_power_bounds().iter().all(Option::is_some)
    }

    /// Number of degree-`deg` monomials outside the ideal, by enumeration.
    pub fn standard_monomials_in_degree(&self, deg: u32) -> usize {
        Monomial::all_of_degree(self.ring.dim(), deg)
            .into_iter()
            .filter(|m| !self.contains(m))
            .count()
    }
}

impl fmt::Display for MonomialIdeal {
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

    fn xy() -> RingRef {
        Ring::new(&["x", "y"]).unwrap().shared()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn ideal(ring: &RingRef, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(ring.clone(), gens.iter().map(|g| mono(g)))
    }

    fn noncm3(r: &RingRef) -> MonomialIdeal {
        ideal(r, &[&[3, 0], &[2, 4], &[1, 5], &[0, 7]])
    }

    #[test]
    fn minimalize_drops_multiples() {
        let r = xy();
        let i = ideal(&r, &[&[2, 0], &[2, 1], &[0, 3]]);
        assert_eq!(i.gens(), &[mono(&[2, 0]), mono(&[0, 3])]);
        assert!(ideal(&r, &[]).is_zero());
        // the r = 3 contracted example: x^3, x*y^4*(x, y), y^7
        let raw = ideal(&r, &[&[3, 0], &[2, 4], &[1, 5], &[0, 7]]);
        assert_eq!(raw.mu(), 4);
    }

    #[test]
    fn powers_and_products() {
        let r = xy();
        let m = MonomialIdeal::maximal(r.clone());
        assert_eq!(m.power(2), ideal(&r, &[&[2, 0], &[1, 1], &[0, 2]]));
        let sq = noncm3(&r).power(2);
        let expected = ideal(&r, &[&[6, 0], &[5, 4], &[4, 5], &[3, 7], &[2, 10], &[1, 12], &[0, 14]]);
        assert_eq!(sq, expected);
        assert_eq!(sq.mu(), 7);
        let i = noncm3(&r);
        assert_eq!(i.product(&MonomialIdeal::unit(r.clone())).unwrap(), i);
        assert!(i.power(0).is_unit());
        assert_eq!(i.power(5), i.power_binary(5));
    }

    #[test]
    fn colon_examples() {
        let r = xy();
        let i = ideal(&r, &[&[2, 0], &[0, 3]]);
        let x = ideal(&r, &[&[1, 0]]);
        assert_eq!(i.colon(&x).unwrap(), ideal(&r, &[&[1, 0], &[0, 3]]));
        // (x^3, x^2y^4, xy^5, y^7) : y^5 = (x, y^2)
        let y5 = ideal(&r, &[&[0, 5]]);
        assert_eq!(noncm3(&r).colon(&y5).unwrap(), ideal(&r, &[&[1, 0], &[0, 2]]));
        assert_eq!(i.colon(&MonomialIdeal::unit(r.clone())).unwrap(), i);
        assert!(matches!(
            i.colon(&MonomialIdeal::zero(r.clone())),
            Err(Error::ZeroIdeal(_))
        ));
    }

    #[test]
    fn containment_equality_intersection() {
        let r = xy();
        let i = ideal(&r, &[&[2, 0], &[0, 3]]);
        assert!(i.contains(&mono(&[3, 1])));
        assert!(!i.contains(&mono(&[1, 2])));
        let m = MonomialIdeal::maximal(r.clone());
        assert!(m.power(2).equals(&ideal(&r, &[&[2, 0], &[1, 1], &[0, 2]])));
        let x = ideal(&r, &[&[1, 0]]);
        let y = ideal(&r, &[&[0, 1]]);
        assert_eq!(x.intersect(&y).unwrap(), ideal(&r, &[&[1, 1]]));
    }

    #[test]
    fn order_examples() {
        let r = xy();
        assert_eq!(noncm3(&r).order().unwrap(), 3);
        assert_eq!(MonomialIdeal::maximal(r.clone()).order().unwrap(), 1);
        assert!(MonomialIdeal::zero(r.clone()).order().is_err());
        let xyz = Ring::new(&["x", "y", "z"]).unwrap().shared();
        let i51 = ideal(
            &xyz,
            &[
                &[6, 0, 0],
                &[4, 2, 0],
                &[2, 4, 0],
                &[0, 6, 0],
                &[3, 0, 3],
                &[1, 2, 3],
                &[0, 0, 6],
            ],
        );
        assert_eq!(i51.order().unwrap(), 6);
    }

    #[test]
    fn render_canonical() {
        let r = xy();
        assert_eq!(ideal(&r, &[&[1, 1], &[2, 0]]).to_string(), "(x^2, x*y)");
        assert_eq!(noncm3(&r).to_string(), "(x^3, x^2*y^4, x*y^5, y^7)");
        assert_eq!(MonomialIdeal::unit(r.clone()).to_string(), "(1)");
        assert_eq!(MonomialIdeal::zero(r).to_string(), "(0)");
    }
}
