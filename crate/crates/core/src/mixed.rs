//! Mixed multiplicities `e_i(m|I)` of an m-primary ideal, from sampled
//! colengths `ℓ(R/m^r I^s)` and from joint reductions.

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fiber::{cm_check, fiber_series, reduction_number, IdealHandle};
use crate::graded::is_parameter_system;
use crate::poly::Polynomial;
use crate::ring::RingRef;
use crate::series::{mixed_differences, HilbertSeries, SampleTable2D};

/// `[e_0(m|I), ..., e_d(m|I)]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct MixedMultVector(pub Vec<u64>);

impl MixedMultVector {
    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u64 {
        self.0[i]
    }
}

fn require_m_primary(i: &IdealHandle) -> Result<()> {
    if i.is_m_primary()? {
        Ok(())
    } else {
        Err(Error::NotMPrimary)
    }
}

/// `L(r, s) = ℓ(R / m^r I^s)` for `r < rows`, `s < cols`.
pub fn bhattacharya_table(i: &IdealHandle, rows: usize, cols: usize, budget: &Budget) -> Result<SampleTable2D> {
    require_m_primary(i)?;
    let m = i.maximal_like();
    let mpow = m.power_ladder(rows.saturating_sub(1));
    let ipow = i.power_ladder(cols.saturating_sub(1));
    let cells: Vec<(usize, usize)> = (0..rows).flat_map(|r| (0..cols).map(move |s| (r, s))).collect();
    let values: Vec<u64> = cells
        .par_iter()
        .map(|&(r, s)| mpow[r].product(&ipow[s])?.colength(budget))
        .collect::<Result<_>>()?;
    SampleTable2D::new(values.chunks(cols.max(1)).map(<[u64]>::to_vec).collect())
}

/// Which axes of a difference table have not settled in the far corner.
fn unsettled(diffs: &[Vec<i64>]) -> (bool, bool) {
    let r = diffs.len();
    let c = diffs.first().map_or(0, Vec::len);
    if r < 2 || c < 2 {
        return (r < 2, c < 2);
    }
    let corner = diffs[r - 1][c - 1];
    let along_r = diffs[r - 2][c - 1] != corner || diffs[r - 2][c - 2] != diffs[r - 1][c - 2];
    let along_s = diffs[r - 1][c - 2] != corner || diffs[r - 2][c - 2] != diffs[r - 2][c - 1];
    (along_r, along_s)
}

/// `e_i = Δ_r^(d-i) Δ_s^i ℓ(R/m^r I^s)` once the far 2×2 corner of every
/// difference table is constant. The grid starts at `(d+3)×(d+3)` and the
/// unsettled axis doubles up to `budget.grid_cap`, rows first.
pub fn mixed_multiplicities(i: &IdealHandle, budget: &Budget) -> Result<MixedMultVector> {
    require_m_primary(i)?;
    let d = i.ring().dim();
    let cap = budget.grid_cap.max(d + 3);
    let (mut rows, mut cols) = (d + 3, d + 3);
    loop {
        let table = bhattacharya_table(i, rows, cols, budget)?;
        let mut values = Vec::with_capacity(d + 1);
        let (mut grow_r, mut grow_s) = (false, false);
        for k in 0..=d {
            let diffs = mixed_differences(&table, (d - k, k))?;
            let (ur, us) = unsettled(&diffs);
            grow_r |= ur;
            grow_s |= us;
            values.push(*diffs.last().and_then(|row| row.last()).expect("nonempty grid"));
        }
        if !grow_r && !grow_s {
            let e: Vec<u64> = values
                .iter()
                .map(|&v| {
                    u64::try_from(v).map_err(|_| Error::Falsification(format!("negative mixed multiplicity {v}")))
                })
                .collect::<Result<_>>()?;
            if e[0] != 1 {
                return Err(Error::Falsification(format!("e_0(m|I) = {} but e(m) = 1", e[0])));
            }
            let e_d = multiplicity_ideal(i, budget)?;
            if e[d] != e_d {
                return Err(Error::Falsification(format!(
                    "e_d(m|I) = {} but e(I) = {e_d} from the powers of I",
                    e[d]
                )));
            }
            return Ok(MixedMultVector(e));
        }
        if (rows >= cap || !grow_r) && (cols >= cap || !grow_s) {
            return Err(Error::NotStabilized(format!(
                "mixed differences still vary on a {rows}×{cols} grid (cap {cap})"
            )));
        }
        // rows (powers of m) are cheap; while they are unsettled the column
        // test is unreliable, so widen the expensive axis only afterwards
        if grow_r && rows < cap {
            rows = (rows * 2).min(cap);
        } else if grow_s {
            cols = (cols * 2).min(cap);
        }
    }
}

/// `e(I)`: the `d`-th difference of `n ↦ ℓ(R/I^n)`, taken once its last
/// `guard_window` values agree.
pub fn multiplicity_ideal(i: &IdealHandle, budget: &Budget) -> Result<u64> {
    require_m_primary(i)?;
    let d = i.ring().dim();
    let guard = budget.guard_window.max(2);
    let mut lengths: Vec<u64> = Vec::new();
    let mut power = i.unit_like();
    let mut n = 0;
    loop {
        if n > 0 {
            power = power.product(i)?;
        }
        lengths.push(power.colength(budget)?);
        n += 1;
        if lengths.len() >= d + guard {
            let mut diffs: Vec<i64> = lengths.iter().map(|&v| v as i64).collect();
            for _ in 0..d {
                diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
            }
            let tail = &diffs[diffs.len() - guard..];
            if tail.iter().all(|&v| v == tail[0]) {
                return u64::try_from(tail[0])
                    .map_err(|_| Error::Falsification(format!("negative multiplicity {}", tail[0])));
            }
        }
        if n > budget.max_n {
            return Err(Error::NotStabilized(format!(
                "d-th differences of ℓ(R/I^n) vary up to n = {}",
                budget.max_n
            )));
        }
    }
}

/// Evidence that `x_1, ..., x_d` is a joint reduction of `(I_1, ..., I_d)`.
#[derive(Debug, Clone)]
pub struct JointReductionWitness {
    pub ring: RingRef,
    pub elements: Vec<Polynomial>,
    pub ideals: Vec<IdealHandle>,
    /// Least `n` with `[Σ x_j Π_{k≠j} I_k] (Π I_k)^(n-1) = (Π I_k)^n`.
    pub n: usize,
}

/// Verifies the joint reduction identity for `n = 1, ..., max_n`.
pub fn is_joint_reduction(
    elements: &[Polynomial],
    ideals: &[IdealHandle],
    max_n: usize,
) -> Result<JointReductionWitness> {
    let Some(first) = ideals.first() else {
        return Err(Error::WrongCount { expected: 1, got: 0 });
    };
    let ring = first.ring().clone();
    let d = ring.dim();
    if elements.len() != d {
        return Err(Error::WrongCount {
            expected: d,
            got: elements.len(),
        });
    }
    if ideals.len() != d {
        return Err(Error::WrongCount {
            expected: d,
            got: ideals.len(),
        });
    }
    for (x, ideal) in elements.iter().zip(ideals) {
        let single = IdealHandle::from_polynomials(&ring, vec![x.clone()])?;
        if !ideal.contains_ideal(&single)? {
            return Err(Error::MembershipFailure(format!(
                "{} is not in {}",
                x.display(&ring),
                ideal
            )));
        }
    }
    let unit = first.unit_like();
    let mut total = unit.clone();
    for ideal in ideals {
        total = total.product(ideal)?;
    }
    let mut partial = None::<IdealHandle>;
    for j in 0..d {
        let mut term = IdealHandle::from_polynomials(&ring, vec![elements[j].clone()])?;
        for (k, ideal) in ideals.iter().enumerate() {
            if k != j {
                term = term.product(ideal)?;
            }
        }
        partial = Some(match partial {
            None => term,
            Some(acc) => acc.sum(&term)?,
        });
    }
    let partial = partial.expect("d >= 1");
    let mut prev = unit;
    for n in 1..=max_n {
        let next = prev.product(&total)?;
        if partial.product(&prev)?.contains_ideal(&next)? {
            return Ok(JointReductionWitness {
                ring,
                elements: elements.to_vec(),
                ideals: ideals.to_vec(),
                n,
            });
        }
        prev = next;
    }
    Err(Error::NotJointReduction { max_n })
}

/// The mixed multiplicity a joint reduction computes: `e(x_1, ..., x_d)`,
/// which equals `ℓ(R/(x_1, ..., x_d))` since the ring is Cohen-Macaulay.
pub fn e_via_joint_reduction(witness: &JointReductionWitness, budget: &Budget) -> Result<u64> {
    if !is_parameter_system(&witness.ring, &witness.elements)? {
        return Err(Error::NotParameterSystem);
    }
    IdealHandle::from_polynomials(&witness.ring, witness.elements.clone())?.colength(budget)
}

/// `e_{d-1}(m|I) = μ(I) - d + 1`. The inequality `≥` always holds; a
/// violation is reported as [`Error::Falsification`].
pub fn minimal_mixed_check(i: &IdealHandle, budget: &Budget) -> Result<bool> {
    let e = mixed_multiplicities(i, budget)?;
    minimal_mixed_from(&e, i)
}

fn minimal_mixed_from(e: &MixedMultVector, i: &IdealHandle) -> Result<bool> {
    let d = i.ring().dim();
    if d == 0 {
        return Err(Error::Precondition("ring of dimension 0".into()));
    }
    let mu = i.mu()?;
    let lhs = e.get(d - 1) as i64;
    let rhs = mu as i64 - d as i64 + 1;
    if lhs < rhs {
        return Err(Error::Falsification(format!(
            "e_(d-1)(m|I) = {lhs} < μ(I) - d + 1 = {rhs}"
        )));
    }
    Ok(lhs == rhs)
}

/// `(1 + (μ(I) - d) t)/(1-t)^d`, the fiber cone series of an ideal of
/// minimal mixed multiplicity.
pub fn predicted_series_mmm(i: &IdealHandle, budget: &Budget) -> Result<HilbertSeries> {
    if !minimal_mixed_check(i, budget)? {
        return Err(Error::Precondition("I does not have minimal mixed multiplicity".into()));
    }
    closed_form_series(i)
}

fn closed_form_series(i: &IdealHandle) -> Result<HilbertSeries> {
    let d = i.ring().dim();
    let mu = i.mu()? as i64;
    Ok(HilbertSeries::from_numerator(vec![1, mu - d as i64], d))
}

/// Compares [`predicted_series_mmm`] with the computed fiber cone series.
pub fn check_predicted_series(i: &IdealHandle, budget: &Budget) -> Result<HilbertSeries> {
    let predicted = predicted_series_mmm(i, budget)?;
    let actual = fiber_series(i, budget)?;
    if predicted != actual {
        return Err(Error::Falsification(format!(
            "minimal mixed multiplicity predicts {predicted} but F(I) has series {actual}"
        )));
    }
    Ok(actual)
}

/// Order and generator count of an ideal in two variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ContractedShape {
    pub order: u32,
    pub mu: u64,
    /// `μ(I) = 1 + o(I)`.
    pub is_contracted_shape: bool,
}

pub fn contracted_check(i: &IdealHandle) -> Result<ContractedShape> {
    let d = i.ring().dim();
    if d != 2 {
        return Err(Error::WrongDimension { expected: 2, got: d });
    }
    require_m_primary(i)?;
    let order = match i {
        IdealHandle::Monomial(m) => m.order()?,
        IdealHandle::Graded(g) => g.min_degree().ok_or(Error::ZeroIdeal("order"))?,
        IdealHandle::Local(_) => return Err(Error::Precondition("order is only computed for graded inputs".into())),
    };
    let mu = i.mu()?;
    Ok(ContractedShape {
        order,
        mu,
        is_contracted_shape: mu == 1 + order as u64,
    })
}

/// Both routes to "F(I) is Cohen-Macaulay iff r(I) <= 1" for an ideal of
/// minimal mixed multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CmRoutes {
    pub reduction_number: usize,
    /// `r_J(I) <= 1` for the supplied `J`.
    pub route_reduction: bool,
    pub e_ideal: u64,
    pub colength_i: u64,
    pub colength_i2: u64,
    /// `e(I) = ℓ(R/I^2) - d ℓ(R/I)`.
    pub route_lengths: bool,
    pub cm_check: bool,
}

/// The length route uses `ℓ(R/JI) = e(I) + d ℓ(R/I)` for a parameter
/// reduction `J`, so `e(I) = ℓ(R/I^2) - d ℓ(R/I)` exactly when `JI = I^2`.
pub fn cm_iff_r_le_1(i: &IdealHandle, j: &IdealHandle, budget: &Budget) -> Result<CmRoutes> {
    let d = i.ring().dim() as i64;
    if !minimal_mixed_check(i, budget)? {
        return Err(Error::Precondition("I does not have minimal mixed multiplicity".into()));
    }
    let r = reduction_number(j, i, budget)?;
    let e = multiplicity_ideal(i, budget)?;
    let l1 = i.colength(budget)?;
    let l2 = i.power(2).colength(budget)?;
    let route_lengths = e as i64 == l2 as i64 - d * l1 as i64;
    let report = cm_check(i, j, budget)?;
    let routes = CmRoutes {
        reduction_number: r,
        route_reduction: r <= 1,
        e_ideal: e,
        colength_i: l1,
        colength_i2: l2,
        route_lengths,
        cm_check: report.is_cm,
    };
    if routes.route_lengths != routes.cm_check || routes.route_reduction != routes.cm_check {
        return Err(Error::Falsification(format!(
            "routes disagree for an ideal of minimal mixed multiplicity: r_J(I) = {r}, \
             e(I) = {e} vs ℓ(R/I^2) - d ℓ(R/I) = {}, length criterion says CM = {}",
            l2 as i64 - d * l1 as i64,
            report.is_cm
        )));
    }
    Ok(routes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse_ideal, parse_ring};
    use crate::series::binomial;

    fn h(ring: &str, ideal: &str) -> IdealHandle {
        IdealHandle::parse(ring, ideal).unwrap()
    }

    fn elems(ring: &str, list: &str) -> (RingRef, Vec<Polynomial>) {
        let r = parse_ring(ring).unwrap().shared();
        let e = parse_ideal(list, &r).unwrap().evaluate_elements(&r).unwrap();
        (r, e)
    }

    const XY: &str = "ring x, y";
    const XYZ: &str = "ring x, y, z";
    const HL: &str = "x^3, y^3, z^3, x*y, x*z, y*z";
    const NONCM3: &str = "x^3, x^2*y^4, x*y^5, y^7";

    #[test]
    fn tables() {
        let b = Budget::default();
        let t = bhattacharya_table(&h(XY, "x, y"), 4, 4, &b).unwrap();
        for r in 0..4 {
            for s in 0..4 {
                assert_eq!(t.get(r, s), binomial((r + s + 1) as u64, 2));
            }
        }
        let t = bhattacharya_table(&h(XY, NONCM3), 1, 3, &b).unwrap();
        assert_eq!((t.get(0, 1), t.get(0, 2)), (16, 52));
        let t = bhattacharya_table(&h(XYZ, HL), 1, 2, &b).unwrap();
        assert_eq!(t.get(0, 1), 7);
        assert_eq!(
            bhattacharya_table(&h(XY, "x^2"), 2, 2, &b).unwrap_err(),
            Error::NotMPrimary
        );
    }

    #[test]
    fn mixed_vectors() {
        let b = Budget::default();
        assert_eq!(mixed_multiplicities(&h(XYZ, HL), &b).unwrap().0, vec![1, 2, 4, 11]);
        assert_eq!(mixed_multiplicities(&h(XY, "x, y"), &b).unwrap().0, vec![1, 1, 1]);
        assert_eq!(mixed_multiplicities(&h(XY, NONCM3), &b).unwrap().0, vec![1, 3, 21]);
    }

    #[test]
    fn multiplicities() {
        let b = Budget::default();
        assert_eq!(multiplicity_ideal(&h(XY, "(x, y)^2"), &b).unwrap(), 4);
        assert_eq!(multiplicity_ideal(&h(XY, NONCM3), &b).unwrap(), 21);
        assert_eq!(multiplicity_ideal(&h(XYZ, HL), &b).unwrap(), 11);
    }

    #[test]
    fn joint_reductions() {
        let b = Budget::default();
        let i = h(XYZ, HL);
        let m = i.maximal_like();
        let (_, e1) = elems(XYZ, "y*z, y + z, x");
        let w = is_joint_reduction(&e1, &[i.clone(), m.clone(), m.clone()], 3).unwrap();
        assert_eq!(w.n, 1);
        assert_eq!(e_via_joint_reduction(&w, &b).unwrap(), 2);
        let (_, e2) = elems(XYZ, "y*z, x*y + x*z, x + y + z");
        let w = is_joint_reduction(&e2, &[i.clone(), i.clone(), m.clone()], 3).unwrap();
        assert_eq!(w.n, 1);
        assert_eq!(e_via_joint_reduction(&w, &b).unwrap(), 4);
        let mm = h(XY, "x, y");
        let (_, e3) = elems(XY, "x, y");
        let w = is_joint_reduction(&e3, &[mm.clone(), mm], 3).unwrap();
        assert_eq!(w.n, 1);
        assert_eq!(e_via_joint_reduction(&w, &b).unwrap(), 1);
        let (_, bad) = elems(XYZ, "x, y + z, x");
        assert!(matches!(
            is_joint_reduction(&bad, &[i.clone(), m.clone(), m], 3),
            Err(Error::MembershipFailure(_))
        ));
    }

    #[test]
    fn minimal_mixed() {
        let b = Budget::default();
        assert!(minimal_mixed_check(&h(XYZ, HL), &b).unwrap());
        assert!(minimal_mixed_check(&h(XY, NONCM3), &b).unwrap());
        assert!(minimal_mixed_check(&h(XYZ, "x, y, z"), &b).unwrap());
        assert!(!minimal_mixed_check(&h(XY, "x^2, y^2"), &b).unwrap());
    }

    #[test]
    fn predicted_series() {
        let b = Budget::default();
        assert_eq!(
            check_predicted_series(&h(XY, NONCM3), &b).unwrap().to_string(),
            "(1 + 2t)/(1-t)^2"
        );
        assert_eq!(
            check_predicted_series(&h(XYZ, HL), &b).unwrap().to_string(),
            "(1 + 3t)/(1-t)^3"
        );
        assert_eq!(
            check_predicted_series(&h(XYZ, "x, y, z"), &b).unwrap().to_string(),
            "1/(1-t)^3"
        );
        assert!(matches!(
            predicted_series_mmm(&h(XY, "x^2, y^2"), &b),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn contracted() {
        let c = contracted_check(&h(XY, NONCM3)).unwrap();
        assert_eq!((c.order, c.is_contracted_shape), (3, true));
        let c = contracted_check(&h(XY, "x^2, y^2")).unwrap();
        assert_eq!((c.order, c.mu, c.is_contracted_shape), (2, 2, false));
        assert!(contracted_check(&h(XY, "x, y")).unwrap().is_contracted_shape);
        assert_eq!(
            contracted_check(&h(XYZ, HL)).unwrap_err(),
            Error::WrongDimension { expected: 2, got: 3 }
        );
    }

    #[test]
    fn cm_routes() {
        let b = Budget::default();
        let r = cm_iff_r_le_1(&h(XY, NONCM3), &h(XY, "x^3, y^7"), &b).unwrap();
        assert_eq!((r.e_ideal, r.colength_i2 - 2 * r.colength_i), (21, 20));
        assert!(!r.route_lengths && !r.route_reduction && !r.cm_check);
        let r = cm_iff_r_le_1(&h(XYZ, HL), &h(XYZ, "x^3 + y*z, y^3 + z^3 + x*z, x*z + x*y"), &b).unwrap();
        assert!(r.route_reduction && r.route_lengths && r.cm_check);
        assert_eq!(r.reduction_number, 1);
        let r = cm_iff_r_le_1(&h(XY, "x, y"), &h(XY, "x, y"), &b).unwrap();
        assert_eq!(r.reduction_number, 0);
        assert!(r.cm_check);
    }
}
