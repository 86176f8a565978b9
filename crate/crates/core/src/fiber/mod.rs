//! Fiber cone `F(I) = ⊕ I^n / m I^n`: its Hilbert function and series,
//! reduction numbers, the length criterion for the Cohen-Macaulay property,
//! and the checks derived from it.

mod handle;

use rayon::prelude::*;
use serde::Serialize;

pub use handle::{relative_length, EngineKind, IdealHandle};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::monomial::MonomialIdeal;
use crate::series::{binomial, rationalize, HilbertSeries};

/// The `n = 0` summand of the length criterion, `ℓ(R/m)`.
pub const N0_TERM: u64 = 1;

/// `[μ(I^0), ..., μ(I^N)]`.
pub fn fiber_hilbert_function(i: &IdealHandle, n: usize) -> Result<Vec<u64>> {
    i.power_ladder(n).iter().map(IdealHandle::mu).collect()
}

/// `H(F(I), t)`, rationalized from a sample of `μ(I^n)` that grows until the
/// numerator is followed by `guard_window` zeros or `max_n` is reached.
pub fn fiber_series(i: &IdealHandle, budget: &Budget) -> Result<HilbertSeries> {
    let mut mus = vec![1u64];
    let mut power = i.unit_like();
    let mut target = (8 + budget.guard_window).min(budget.max_n.max(1));
    loop {
        while mus.len() <= target {
            power = power.product(i)?;
            mus.push(power.mu()?);
        }
        match rationalize(&mus, budget.guard_window) {
            Ok(s) => return Ok(s),
            Err(Error::NotStabilized(_)) if target < budget.max_n => {
                target = (target + target / 2).min(budget.max_n);
            }
            Err(Error::NotStabilized(msg)) => {
                return Err(Error::NotStabilized(format!(
                    "fiber cone series within max_n = {}: {msg}",
                    budget.max_n
                )))
            }
            Err(e) => return Err(e),
        }
    }
}

/// `r_J(I) = min { n : J I^n = I^(n+1) }`.
pub fn reduction_number(j: &IdealHandle, i: &IdealHandle, budget: &Budget) -> Result<usize> {
    let (j, i) = IdealHandle::unify(j, i)?;
    if !i.contains_ideal(&j)? {
        return Err(Error::NotContained);
    }
    let mut p = i.unit_like();
    for n in 0..=budget.max_n {
        let next = p.product(&i)?;
        if j.product(&p)?.contains_ideal(&next)? {
            if budget.verify_persistence {
                verify_persistence(&j, &i, &next, n)?;
            }
            return Ok(n);
        }
        p = next;
    }
    Err(Error::NotAReduction { max_n: budget.max_n })
}

fn verify_persistence(j: &IdealHandle, i: &IdealHandle, start: &IdealHandle, n: usize) -> Result<()> {
    let mut p = start.clone();
    for extra in 1..=2 {
        let next = p.product(i)?;
        if !j.product(&p)?.contains_ideal(&next)? {
            return Err(Error::Falsification(format!(
                "J I^{n} = I^{} but J I^{} != I^{}",
                n + 1,
                n + extra,
                n + extra + 1
            )));
        }
        p = next;
    }
    Ok(())
}

/// `ℓ(I^n / (J I^(n-1) + m I^n))`, with the `n = 0` term fixed to 1.
pub fn criterion_length(i: &IdealHandle, j: &IdealHandle, n: usize, budget: &Budget) -> Result<u64> {
    if n == 0 {
        return Ok(N0_TERM);
    }
    let (i, j) = IdealHandle::unify(i, j)?;
    let prev = i.power(n - 1);
    let cur = prev.product(&i)?;
    criterion_term(&prev, &cur, &j, budget)
}

fn criterion_term(prev: &IdealHandle, cur: &IdealHandle, j: &IdealHandle, budget: &Budget) -> Result<u64> {
    let bottom = j.product(prev)?.sum(&cur.mul_maximal())?;
    relative_length(cur, &bottom, budget)
}

/// Criterion lengths `[ℓ_0, ..., ℓ_r]` from a precomputed ladder `I^0..I^r`.
fn criterion_lengths(ladder: &[IdealHandle], j: &IdealHandle, r: usize, budget: &Budget) -> Result<Vec<u64>> {
    let tail: Vec<u64> = (1..=r)
        .into_par_iter()
        .map(|n| criterion_term(&ladder[n - 1], &ladder[n], j, budget))
        .collect::<Result<_>>()?;
    let mut out = vec![N0_TERM];
    out.extend(tail);
    Ok(out)
}

/// Outcome of the Cohen-Macaulay test for `F(I)` with respect to a minimal
/// reduction `J`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CMReport {
    pub analytic_spread: usize,
    pub series: HilbertSeries,
    pub mu_i: u64,
    #[serde(rename = "muJ")]
    pub mu_j: u64,
    pub reduction_number: usize,
    pub criterion_lengths: Vec<u64>,
    pub e_fiber: u64,
    pub length_sum: u64,
    #[serde(rename = "isCM")]
    pub is_cm: bool,
    pub is_minimal_multiplicity: bool,
    /// Always [`N0_TERM`].
    pub n0_term_convention: u64,
}

/// Checks that `J` is a minimal reduction of `I`: a reduction with `μ(J) = a(I)`.
/// Returns `(series, r_J(I), μ(J))`.
fn validate_minimal_reduction(
    i: &IdealHandle,
    j: &IdealHandle,
    budget: &Budget,
) -> Result<(HilbertSeries, usize, u64)> {
    let series = fiber_series(i, budget)?;
    let r = match reduction_number(j, i, budget) {
        Ok(r) => r,
        Err(Error::NotContained) => return Err(Error::NotMinimalReduction("J is not contained in I".into())),
        Err(Error::NotAReduction { max_n }) => {
            return Err(Error::NotMinimalReduction(format!(
                "J I^n != I^(n+1) for all n <= {max_n}"
            )))
        }
        Err(e) => return Err(e),
    };
    let mu_j = j.mu()?;
    let a = series.denom_power() as u64;
    if mu_j != a {
        return Err(Error::NotMinimalReduction(format!(
            "μ(J) = {mu_j} but the analytic spread is {a}"
        )));
    }
    Ok((series, r, mu_j))
}

/// Decides whether `F(I)` is Cohen-Macaulay by comparing `e(F(I))` with
/// `Σ_{n=0}^{r} ℓ(I^n / (J I^(n-1) + m I^n))`.
pub fn cm_check(i: &IdealHandle, j: &IdealHandle, budget: &Budget) -> Result<CMReport> {
    let (series, r, mu_j) = validate_minimal_reduction(i, j, budget)?;
    let (i, j) = IdealHandle::unify(i, j)?;
    let ladder = i.power_ladder(r);
    let lengths = criterion_lengths(&ladder, &j, r, budget)?;
    let length_sum: u64 = lengths.iter().sum();
    let e = u64::try_from(series.multiplicity()).map_err(|_| {
        Error::Falsification(format!(
            "fiber cone multiplicity {} is not positive",
            series.multiplicity()
        ))
    })?;
    let is_cm = e == length_sum;
    if is_cm {
        let mut numerator: Vec<i64> = series.numerator().to_vec();
        let mut expected: Vec<i64> = lengths.iter().map(|&l| l as i64).collect();
        let len = numerator.len().max(expected.len());
        numerator.resize(len, 0);
        expected.resize(len, 0);
        if numerator != expected {
            return Err(Error::Falsification(format!(
                "F(I) passes the length criterion but its h-vector {:?} differs from the lengths {:?}",
                series.numerator(),
                lengths
            )));
        }
    }
    let a = series.denom_power();
    let mu_i = i.mu()?;
    let is_minimal_multiplicity = is_cm && e + a as u64 == mu_i + 1;
    Ok(CMReport {
        analytic_spread: a,
        series,
        mu_i,
        mu_j,
        reduction_number: r,
        criterion_lengths: lengths,
        e_fiber: e,
        length_sum,
        is_cm,
        is_minimal_multiplicity,
        n0_term_convention: N0_TERM,
    })
}

/// `e(F(I)) = μ(I) - a + 1`.
pub fn minimal_multiplicity_check(report: &CMReport, i: &IdealHandle) -> Result<bool> {
    let mu = i.mu()?;
    Ok(report.e_fiber + report.analytic_spread as u64 == mu + 1)
}

/// Compares `μ(I^n)` for `n <= max_n` with
/// `Σ_i [μ(I^i) - ℓ(J I^(i-1) / (J I^(i-1) ∩ m I^i))] C(n+a-i-1, a-1)`.
/// Returns the first `n` where they differ.
pub fn shah_function_check(i: &IdealHandle, j: &IdealHandle, max_n: usize, budget: &Budget) -> Result<Option<usize>> {
    let (series, r, _) = validate_minimal_reduction(i, j, budget)?;
    let a = series.denom_power();
    let (i, j) = IdealHandle::unify(i, j)?;
    let ladder = i.power_ladder(max_n.max(r));
    let mus: Vec<u64> = ladder.iter().map(IdealHandle::mu).collect::<Result<_>>()?;
    let top = r.min(max_n);
    let coeffs: Vec<i64> = (0..=top)
        .into_par_iter()
        .map(|k| {
            if k == 0 {
                return Ok(1);
            }
            let a_part = j.product(&ladder[k - 1])?;
            let b_part = ladder[k].mul_maximal();
            let inter = relative_length(&a_part.sum(&b_part)?, &b_part, budget)?;
            Ok(mus[k] as i64 - inter as i64)
        })
        .collect::<Result<_>>()?;
    for (n, &mu) in mus.iter().enumerate().take(max_n + 1) {
        let predicted: i64 = (0..=top.min(n))
            .map(|k| {
                let c = if a == 0 {
                    u64::from(n == k)
                } else {
                    binomial((n + a - k - 1) as u64, (a - 1) as u64)
                };
                coeffs[k] * c as i64
            })
            .sum();
        if predicted != mu as i64 {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Runs [`cm_check`] for each candidate and compares the reduction numbers,
/// which cannot depend on the minimal reduction once `F(I)` is Cohen-Macaulay.
/// Disagreement is reported as [`Error::Falsification`].
pub fn reduction_invariance_probe(i: &IdealHandle, js: &[IdealHandle], budget: &Budget) -> Result<bool> {
    let Some(first) = js.first() else {
        return Err(Error::Precondition("no candidate reductions given".into()));
    };
    let base = cm_check(i, first, budget)?;
    if !base.is_cm {
        return Err(Error::Precondition(
            "F(I) is not Cohen-Macaulay for the first reduction".into(),
        ));
    }
    for j in &js[1..] {
        let rep = cm_check(i, j, budget)?;
        if rep.reduction_number != base.reduction_number {
            return Err(Error::Falsification(format!(
                "F(I) is Cohen-Macaulay but r_J(I) = {} for {} and {} for {}",
                base.reduction_number, first, rep.reduction_number, j
            )));
        }
    }
    Ok(true)
}

/// Subsets of `size` minimal generators of `I` that are reductions of `I`,
/// with their reduction numbers. At most `limit` subsets are examined.
pub fn candidate_reductions(
    i: &MonomialIdeal,
    size: usize,
    limit: usize,
    budget: &Budget,
) -> Result<Vec<(MonomialIdeal, usize)>> {
    let gens = i.gens();
    let handle = IdealHandle::Monomial(i.clone());
    let mut out = Vec::new();
    let mut examined = 0;
    let mut idx: Vec<usize> = (0..size).collect();
    if size == 0 || size > gens.len() {
        return Ok(out);
    }
    loop {
        if examined == limit {
            break;
        }
        examined += 1;
        let j = MonomialIdeal::new(i.ring().clone(), idx.iter().map(|&k| gens[k].clone()));
        match reduction_number(&j.clone().into(), &handle, budget) {
            Ok(r) => out.push((j, r)),
            Err(Error::NotAReduction { .. }) => {}
            Err(e) => return Err(e),
        }
        // next combination in lexicographic order
        let mut k = size;
        while k > 0 && idx[k - 1] == gens.len() - size + k - 1 {
            k -= 1;
        }
        if k == 0 {
            break;
        }
        idx[k - 1] += 1;
        for t in k..size {
            idx[t] = idx[t - 1] + 1;
        }
    }
    Ok(out)
}
