use std::fmt;

use crate::budget::Budget;
use crate::dsl::IdealExpr;
use crate::error::{Error, Result};
use crate::graded::{GradedIdeal, LocalIdeal};
use crate::monomial::MonomialIdeal;
use crate::poly::Polynomial;
use crate::ring::RingRef;

/// Which engine an ideal is handled by. Ordered from most to least specific.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EngineKind {
    Monomial,
    Graded,
    Local,
}

/// An ideal together with the engine that computes with it.
///
/// Binary operations promote both operands to the less specific engine.
#[derive(Clone, Debug)]
pub enum IdealHandle {
    Monomial(MonomialIdeal),
    Graded(GradedIdeal),
    Local(LocalIdeal),
}

impl From<MonomialIdeal> for IdealHandle {
    fn from(i: MonomialIdeal) -> Self {
        IdealHandle::Monomial(i)
    }
}

impl From<GradedIdeal> for IdealHandle {
    fn from(i: GradedIdeal) -> Self {
        IdealHandle::Graded(i)
    }
}

impl From<LocalIdeal> for IdealHandle {
    fn from(i: LocalIdeal) -> Self {
        IdealHandle::Local(i)
    }
}

impl IdealHandle {
    /// Picks the most specific engine able to represent the expression.
    pub fn from_expr(expr: &IdealExpr, ring: &RingRef) -> Result<IdealHandle> {
        if expr.is_monomial() {
            return Ok(expr.evaluate_monomial(ring)?.into());
        }
        let polys = expr.evaluate_polynomials(ring)?;
        Self::from_polynomials(ring, polys)
    }

    pub fn from_polynomials(ring: &RingRef, polys: Vec<Polynomial>) -> Result<IdealHandle> {
        if polys.iter().all(|p| p.is_zero() || p.as_monomial().is_some()) {
            let monos = polys.iter().filter_map(|p| p.as_monomial().cloned());
            return Ok(MonomialIdeal::new(ring.clone(), monos).into());
        }
        if polys.iter().all(|p| p.is_zero() || p.homogeneous_degree().is_some()) {
            return Ok(GradedIdeal::new(ring.clone(), polys)?.into());
        }
        Ok(LocalIdeal::new(ring.clone(), polys).into())
    }

    /// Parses `ideal_text` over the ring declared by `ring_text`.
    pub fn parse(ring_text: &str, ideal_text: &str) -> Result<IdealHandle> {
        let ring = crate::dsl::parse_ring(ring_text)?.shared();
        let expr = crate::dsl::parse_ideal(ideal_text, &ring)?;
        Self::from_expr(&expr, &ring)
    }

    pub fn kind(&self) -> EngineKind {
        match self {
            IdealHandle::Monomial(_) => EngineKind::Monomial,
            IdealHandle::Graded(_) => EngineKind::Graded,
            IdealHandle::Local(_) => EngineKind::Local,
        }
    }

    pub fn ring(&self) -> &RingRef {
        match self {
            IdealHandle::Monomial(i) => i.ring(),
            IdealHandle::Graded(i) => i.ring(),
            IdealHandle::Local(i) => i.ring(),
        }
    }

    pub fn as_monomial(&self) -> Option<&MonomialIdeal> {
        match self {
            IdealHandle::Monomial(i) => Some(i),
            _ => None,
        }
    }

    /// The generators as polynomials.
    pub fn generators(&self) -> Vec<Polynomial> {
        match self {
            IdealHandle::Monomial(i) => i.gens().iter().cloned().map(Polynomial::from_monomial).collect(),
            IdealHandle::Graded(i) => i.gens().iter().map(|g| Polynomial::clone(g)).collect(),
            IdealHandle::Local(i) => i.gens().to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            IdealHandle::Monomial(i) => i.is_zero(),
            IdealHandle::Graded(i) => i.is_zero(),
            IdealHandle::Local(i) => i.gens().is_empty(),
        }
    }

    /// Re-expresses the ideal in a less specific engine.
    pub fn promote(&self, kind: EngineKind) -> Result<IdealHandle> {
        if kind < self.kind() {
            return Err(Error::Precondition(format!(
                "cannot move a {:?} ideal to the {:?} engine",
                self.kind(),
                kind
            )));
        }
        Ok(match (self, kind) {
            (_, k) if k == self.kind() => self.clone(),
            (IdealHandle::Monomial(i), EngineKind::Graded) => GradedIdeal::from_monomial(i).into(),
            (_, EngineKind::Local) => LocalIdeal::new(self.ring().clone(), self.generators()).into(),
            _ => unreachable!("promotion only moves to less specific engines"),
        })
    }

    /// Both operands in their common engine.
    pub fn unify(a: &IdealHandle, b: &IdealHandle) -> Result<(IdealHandle, IdealHandle)> {
        if **a.ring() != **b.ring() {
            return Err(Error::RingMismatch);
        }
        let kind = a.kind().max(b.kind());
        Ok((a.promote(kind)?, b.promote(kind)?))
    }

    pub fn maximal_like(&self) -> IdealHandle {
        let r = self.ring().clone();
        match self {
            IdealHandle::Monomial(_) => MonomialIdeal::maximal(r).into(),
            IdealHandle::Graded(_) => GradedIdeal::maximal(r).into(),
            IdealHandle::Local(_) => LocalIdeal::maximal(r).into(),
        }
    }

    pub fn unit_like(&self) -> IdealHandle {
        let r = self.ring().clone();
        match self {
            IdealHandle::Monomial(_) => MonomialIdeal::unit(r).into(),
            IdealHandle::Graded(_) => GradedIdeal::unit(r).into(),
            IdealHandle::Local(_) => LocalIdeal::unit(r).into(),
        }
    }

    pub fn product(&self, other: &IdealHandle) -> Result<IdealHandle> {
        Ok(match IdealHandle::unify(self, other)? {
            (IdealHandle::Monomial(a), IdealHandle::Monomial(b)) => a.product(&b)?.into(),
            (IdealHandle::Graded(a), IdealHandle::Graded(b)) => a.product(&b)?.into(),
            (IdealHandle::Local(a), IdealHandle::Local(b)) => a.product(&b)?.into(),
            _ => unreachable!("unify returns a common engine"),
        })
    }

    pub fn sum(&self, other: &IdealHandle) -> Result<IdealHandle> {
        Ok(match IdealHandle::unify(self, other)? {
            (IdealHandle::Monomial(a), IdealHandle::Monomial(b)) => a.sum(&b)?.into(),
            (IdealHandle::Graded(a), IdealHandle::Graded(b)) => a.sum(&b)?.into(),
            (IdealHandle::Local(a), IdealHandle::Local(b)) => a.sum(&b)?.into(),
            _ => unreachable!("unify returns a common engine"),
        })
    }

    pub fn mul_maximal(&self) -> IdealHandle {
        match self {
            IdealHandle::Monomial(i) => i
                .product(&MonomialIdeal::maximal(i.ring().clone()))
                .expect("same ring")
                .into(),
            IdealHandle::Graded(i) => i.mul_maximal().into(),
            IdealHandle::Local(i) => i.mul_maximal().into(),
        }
    }

    /// `[K^0, ..., K^n]`.
    pub fn power_ladder(&self, n: usize) -> Vec<IdealHandle> {
        match self {
            IdealHandle::Monomial(i) => i.power_ladder(n).into_iter().map(Into::into).collect(),
            IdealHandle::Graded(i) => i.power_ladder(n).into_iter().map(Into::into).collect(),
            IdealHandle::Local(i) => {
                let mut out: Vec<IdealHandle> = vec![LocalIdeal::unit(i.ring().clone()).into()];
                for k in 1..=n {
                    let next = out[k - 1].product(self).expect("same ring");
                    out.push(next);
                }
                out
            }
        }
    }

    pub fn power(&self, n: usize) -> IdealHandle {
        match self {
            IdealHandle::Monomial(i) => i.power_binary(n as u32).into(),
            IdealHandle::Graded(i) => i.power(n as u32).into(),
            IdealHandle::Local(_) => self.power_ladder(n).pop().expect("nonempty ladder"),
        }
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &IdealHandle) -> Result<bool> {
        Ok(match IdealHandle::unify(self, other)? {
            (IdealHandle::Monomial(a), IdealHandle::Monomial(b)) => b.is_subset(&a),
            (IdealHandle::Graded(a), IdealHandle::Graded(b)) => a.contains_ideal(&b),
            (IdealHandle::Local(a), IdealHandle::Local(b)) => a.contains_ideal(&b)?,
            _ => unreachable!("unify returns a common engine"),
        })
    }

    pub fn equals(&self, other: &IdealHandle) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    /// `μ(K)`, the minimal number of generators.
    pub fn mu(&self) -> Result<u64> {
        Ok(match self {
            IdealHandle::Monomial(i) => i.mu() as u64,
            IdealHandle::Graded(i) => i.mu() as u64,
            IdealHandle::Local(i) => i.mu()?,
        })
    }

    /// `ℓ(R/K)`; fails unless `K` is primary to the maximal ideal.
    pub fn colength(&self, budget: &Budget) -> Result<u64> {
        match self {
            IdealHandle::Monomial(i) => i.artinian_length(budget.cell_budget),
            IdealHandle::Graded(i) => i.artinian_length(None).map_err(|_| Error::NotMPrimary),
            IdealHandle::Local(i) => i.colength(),
        }
    }

    pub fn is_m_primary(&self) -> Result<bool> {
        // height is at most the number of generators
        if self.kind() != EngineKind::Local && self.mu()? < self.ring().dim() as u64 {
            return Ok(false);
        }
        match self {
            IdealHandle::Monomial(i) => Ok(i.is_artinian()),
            IdealHandle::Graded(i) => match i.artinian_length(None) {
                Ok(_) => Ok(true),
                Err(Error::NotArtinian(_)) => Ok(false),
                Err(e) => Err(e),
            },
            IdealHandle::Local(i) => match i.truncation() {
                Ok(_) => Ok(true),
                Err(Error::NotMPrimary) => Ok(false),
                Err(e) => Err(e),
            },
        }
    }

    /// Largest generator degree, for engines where it is meaningful.
    pub fn max_degree(&self) -> Option<u32> {
        match self {
            IdealHandle::Monomial(i) => i.max_degree(),
            IdealHandle::Graded(i) => i.max_degree(),
            IdealHandle::Local(i) => i.gens().iter().filter_map(Polynomial::degree).max(),
        }
    }
}

/// `ℓ(top/bottom)` for ideals with `m·top ⊆ bottom ⊆ top`.
///
/// Monomial: minimal generators of `top` outside `bottom`. Graded: piece
/// dimensions summed over degrees up to the top generator degree of `top`.
/// Local: difference of colengths.
pub fn relative_length(top: &IdealHandle, bottom: &IdealHandle, budget: &Budget) -> Result<u64> {
    Ok(match IdealHandle::unify(top, bottom)? {
        (IdealHandle::Monomial(t), IdealHandle::Monomial(b)) => {
            t.gens().iter().filter(|g| !b.contains(g)).count() as u64
        }
        (IdealHandle::Graded(t), IdealHandle::Graded(b)) => {
            let Some(top_deg) = t.max_degree() else {
                return Ok(0);
            };
            let tp = t.pieces(top_deg);
            let bp = b.pieces(top_deg);
            let mut total = 0u64;
            for (x, y) in tp.iter().zip(&bp) {
                let diff = x
                    .rank()
                    .checked_sub(y.rank())
                    .ok_or_else(|| Error::Precondition("relative length needs bottom ⊆ top".into()))?;
                total += diff as u64;
            }
            total
        }
        (t @ IdealHandle::Local(_), b @ IdealHandle::Local(_)) => b
            .colength(budget)?
            .checked_sub(t.colength(budget)?)
            .ok_or_else(|| Error::Precondition("relative length needs bottom ⊆ top".into()))?,
        _ => unreachable!("unify returns a common engine"),
    })
}

impl fmt::Display for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealHandle::Monomial(i) => i.fmt(f),
            IdealHandle::Graded(i) => i.fmt(f),
            IdealHandle::Local(i) => i.fmt(f),
        }
    }
}
