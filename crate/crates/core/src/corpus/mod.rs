//! Regression corpus: TOML manifests of named cases with expected values,
//! and a runner that reports pass / fail / falsification / error per case.
//!
//! ```toml
//! [[case]]
//! name = "example"
//! provenance = "where the expected values come from"
//! ring = "x, y"
//! ideal = "x^2, x*y, y^2"
//! reduction = "x^2, y^2"
//! [case.expect]
//! series = "(1 + t)/(1-t)^2"
//! is_cm = true
//! ```

use std::fmt::Debug;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::delta::{
    compute_delta, determinantal_h_vector, face_ring_series, is_stable_linearization, k_delta_series, DeltaSet, Family,
    Poset,
};
use crate::dsl::{parse_ideal, parse_ring};
use crate::error::{Error, Result};
use crate::fiber::{
    cm_check, fiber_hilbert_function, fiber_series, reduction_invariance_probe, shah_function_check, EngineKind,
    IdealHandle,
};
use crate::mixed::{
    check_predicted_series, cm_iff_r_le_1, contracted_check, e_via_joint_reduction, is_joint_reduction,
    minimal_mixed_check, mixed_multiplicities, multiplicity_ideal,
};
use crate::ring::RingRef;
use crate::series::HilbertSeries;

/// The corpus shipped with the crate.
pub const BUNDLED: &str = include_str!("../../corpus/bundled.toml");

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    pub mu: Option<u64>,
    pub hilbert_function: Option<Vec<u64>>,
    pub series: Option<String>,
    pub colength: Option<u64>,
    pub colength_sq: Option<u64>,
    pub multiplicity: Option<u64>,
    pub mixed: Option<Vec<u64>>,
    pub minimal_mixed: Option<bool>,
    pub predicted_series: Option<bool>,
    pub order: Option<u32>,
    pub contracted: Option<bool>,
    pub reduction_number: Option<usize>,
    pub criterion_lengths: Option<Vec<u64>>,
    pub e_fiber: Option<u64>,
    pub is_cm: Option<bool>,
    pub minimal_multiplicity: Option<bool>,
    pub shah_holds: Option<bool>,
    pub cm_routes: Option<bool>,
    pub invariant: Option<bool>,
    pub joint_n: Option<usize>,
    pub joint_e: Option<u64>,
    pub delta: Option<String>,
    pub quadratic: Option<bool>,
    pub stable: Option<bool>,
    pub deformation: Option<bool>,
    pub h_vector: Option<Vec<i64>>,
    /// The case must fail with an error whose message contains this text.
    pub error: Option<String>,
}

/// One corpus entry. Which fields are read depends on `kind`.
#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusCase {
    pub name: String,
    #[serde(default)]
    pub provenance: String,
    /// `ideal` (default), `joint`, `delta`, `face-ring` or `family`.
    #[serde(default)]
    pub kind: Option<String>,
    pub ring: Option<String>,
    pub ideal: Option<String>,
    /// Force `graded` or `local` evaluation of the ideal.
    pub engine: Option<String>,
    pub reduction: Option<String>,
    #[serde(default)]
    pub reductions: Vec<String>,
    /// Joint reduction elements, one per slot.
    pub elements: Option<String>,
    /// Ideal per slot: `I` or `m`.
    #[serde(default)]
    pub slots: Vec<String>,
    /// Ordered generators for Δ computations.
    pub gens: Option<String>,
    pub n: Option<usize>,
    pub pairs: Option<String>,
    /// `chain:N`, `antichain:N`, `grid:R,C`, `minors:N`, or inline text in the
    /// `element`/`cover` format.
    pub poset: Option<String>,
    pub linearization: Option<Vec<usize>>,
    /// `ms:B,C` or `hh:N,M`.
    pub family: Option<String>,
    pub max_n: Option<usize>,
    #[serde(default)]
    pub expect: Expect,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
pub struct Corpus {
    #[serde(default)]
    pub case: Vec<CorpusCase>,
}

impl Corpus {
    pub fn parse(text: &str) -> Result<Corpus> {
        toml::from_str(text).map_err(|e| Error::Corpus(e.to_string()))
    }

    pub fn bundled() -> Corpus {
        Corpus::parse(BUNDLED).expect("bundled corpus parses")
    }

    /// `(name, I)` for every case of kind `ideal`.
    pub fn ideals(&self) -> Result<Vec<(String, IdealHandle)>> {
        self.case
            .iter()
            .filter(|c| c.kind.as_deref().unwrap_or("ideal") == "ideal" && c.ideal.is_some())
            .map(|c| {
                let ring = case_ring(c)?;
                Ok((c.name.clone(), case_ideal(c, &ring)?))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Falsification,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub field: String,
    pub expected: String,
    pub computed: String,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CaseReport {
    pub name: String,
    pub provenance: String,
    pub status: Status,
    pub checks: Vec<Check>,
    pub message: Option<String>,
    pub wall_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunReport {
    pub cases: Vec<CaseReport>,
    pub passed: usize,
    pub failed: usize,
    pub falsifications: usize,
    pub errors: usize,
    pub wall_ms: u128,
}

impl RunReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.falsifications == 0 && self.errors == 0
    }
}

/// Runs every case, at most `jobs` at a time (0 = one per core).
pub fn run_corpus(corpus: &Corpus, budget: &Budget, jobs: usize) -> Result<RunReport> {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Corpus(e.to_string()))?;
    let cases: Vec<CaseReport> = pool.install(|| corpus.case.par_iter().map(|c| run_case(c, budget)).collect());
    let count = |s: Status| cases.iter().filter(|c| c.status == s).count();
    Ok(RunReport {
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        falsifications: count(Status::Falsification),
        errors: count(Status::Error),
        cases,
        wall_ms: start.elapsed().as_millis(),
    })
}

pub fn run_case(case: &CorpusCase, budget: &Budget) -> CaseReport {
    let start = Instant::now();
    let mut budget = budget.clone();
    if let Some(n) = case.max_n {
        budget.max_n = n;
    }
    let mut checks = Vec::new();
    let outcome = match case.kind.as_deref().unwrap_or("ideal") {
        "ideal" => run_ideal(case, &budget, &mut checks),
        "joint" => run_joint(case, &budget, &mut checks),
        "delta" => run_delta(case, &budget, &mut checks),
        "face-ring" => run_face_ring(case, &mut checks),
        "family" => run_family(case, &mut checks),
        other => Err(Error::Corpus(format!("unknown case kind `{other}`"))),
    };
    let (status, message) = match (outcome, &case.expect.error) {
        (Err(e), Some(want)) if !e.is_falsification() => {
            let text = e.to_string();
            let ok = text.contains(want.as_str());
            checks.push(Check {
                field: "error".into(),
                expected: want.clone(),
                computed: text,
                ok,
            });
            (if ok { Status::Pass } else { Status::Fail }, None)
        }
        (Ok(()), Some(want)) => {
            checks.push(Check {
                field: "error".into(),
                expected: want.clone(),
                computed: "no error".into(),
                ok: false,
            });
            (Status::Fail, None)
        }
        (Err(e), _) if e.is_falsification() => (Status::Falsification, Some(e.to_string())),
        (Err(e), _) => (Status::Error, Some(e.to_string())),
        (Ok(()), None) if checks.iter().all(|c| c.ok) => (Status::Pass, None),
        (Ok(()), None) => (Status::Fail, None),
    };
    CaseReport {
        name: case.name.clone(),
        provenance: case.provenance.clone(),
        status,
        checks,
        message,
        wall_ms: start.elapsed().as_millis(),
    }
}

fn check<T: PartialEq + Debug>(
    checks: &mut Vec<Check>,
    field: &str,
    expected: &Option<T>,
    compute: impl FnOnce() -> Result<T>,
) -> Result<()> {
    if let Some(want) = expected {
        let got = compute()?;
        checks.push(Check {
            field: field.into(),
            expected: format!("{want:?}"),
            computed: format!("{got:?}"),
            ok: &got == want,
        });
    }
    Ok(())
}

fn check_series(
    checks: &mut Vec<Check>,
    field: &str,
    expected: &Option<String>,
    compute: impl FnOnce() -> Result<HilbertSeries>,
) -> Result<()> {
    if let Some(text) = expected {
        let want: HilbertSeries = text.parse()?;
        let got = compute()?;
        checks.push(Check {
            field: field.into(),
            expected: want.to_string(),
            computed: got.to_string(),
            ok: got == want,
        });
    }
    Ok(())
}

fn case_ring(case: &CorpusCase) -> Result<RingRef> {
    let text = case
        .ring
        .as_deref()
        .ok_or_else(|| Error::Corpus(format!("{}: missing ring", case.name)))?;
    let decl = if text.trim_start().starts_with("ring") {
        text.to_string()
    } else {
        format!("ring {text}")
    };
    Ok(parse_ring(&decl)?.shared())
}

fn handle(ring: &RingRef, text: &str, engine: Option<&str>) -> Result<IdealHandle> {
    let h = IdealHandle::from_expr(&parse_ideal(text, ring)?, ring)?;
    match engine {
        None => Ok(h),
        Some("graded") => h.promote(EngineKind::Graded),
        Some("local") => h.promote(EngineKind::Local),
        Some("monomial") => Ok(h),
        Some(other) => Err(Error::Corpus(format!("unknown engine `{other}`"))),
    }
}

fn case_ideal(case: &CorpusCase, ring: &RingRef) -> Result<IdealHandle> {
    let text = case
        .ideal
        .as_deref()
        .ok_or_else(|| Error::Corpus(format!("{}: missing ideal", case.name)))?;
    handle(ring, text, case.engine.as_deref())
}

fn run_ideal(case: &CorpusCase, b: &Budget, checks: &mut Vec<Check>) -> Result<()> {
    let ring = case_ring(case)?;
    let i = case_ideal(case, &ring)?;
    let e = &case.expect;
    check(checks, "mu", &e.mu, || i.mu())?;
    if let Some(h) = &e.hilbert_function {
        check(checks, "hilbert_function", &e.hilbert_function, || {
            fiber_hilbert_function(&i, h.len().saturating_sub(1))
        })?;
    }
    check_series(checks, "series", &e.series, || fiber_series(&i, b))?;
    check(checks, "colength", &e.colength, || i.colength(b))?;
    check(checks, "colength_sq", &e.colength_sq, || i.power(2).colength(b))?;
    check(checks, "multiplicity", &e.multiplicity, || multiplicity_ideal(&i, b))?;
    check(checks, "mixed", &e.mixed, || Ok(mixed_multiplicities(&i, b)?.0))?;
    check(checks, "minimal_mixed", &e.minimal_mixed, || minimal_mixed_check(&i, b))?;
    check(checks, "predicted_series", &e.predicted_series, || {
        check_predicted_series(&i, b).map(|_| true)
    })?;
    check(checks, "order", &e.order, || Ok(contracted_check(&i)?.order))?;
    check(checks, "contracted", &e.contracted, || {
        Ok(contracted_check(&i)?.is_contracted_shape)
    })?;
    if let Some(jt) = &case.reduction {
        let j = handle(&ring, jt, None)?;
        let wants_report = e.reduction_number.is_some()
            || e.criterion_lengths.is_some()
            || e.e_fiber.is_some()
            || e.is_cm.is_some()
            || e.minimal_multiplicity.is_some();
        if wants_report {
            let rep = cm_check(&i, &j, b)?;
            check(checks, "reduction_number", &e.reduction_number, || {
                Ok(rep.reduction_number)
            })?;
            check(checks, "criterion_lengths", &e.criterion_lengths, || {
                Ok(rep.criterion_lengths.clone())
            })?;
            check(checks, "e_fiber", &e.e_fiber, || Ok(rep.e_fiber))?;
            check(checks, "is_cm", &e.is_cm, || Ok(rep.is_cm))?;
            check(checks, "minimal_multiplicity", &e.minimal_multiplicity, || {
                Ok(rep.is_minimal_multiplicity)
            })?;
        }
        check(checks, "shah_holds", &e.shah_holds, || {
            Ok(shah_function_check(&i, &j, 8, b)?.is_none())
        })?;
        check(checks, "cm_routes", &e.cm_routes, || {
            Ok(cm_iff_r_le_1(&i, &j, b)?.cm_check)
        })?;
    }
    if !case.reductions.is_empty() {
        let js = case
            .reductions
            .iter()
            .map(|t| handle(&ring, t, None))
            .collect::<Result<Vec<_>>>()?;
        check(checks, "invariant", &e.invariant, || {
            reduction_invariance_probe(&i, &js, b)
        })?;
    }
    Ok(())
}

fn run_joint(case: &CorpusCase, b: &Budget, checks: &mut Vec<Check>) -> Result<()> {
    let ring = case_ring(case)?;
    let i = case_ideal(case, &ring)?;
    let text = case
        .elements
        .as_deref()
        .ok_or_else(|| Error::Corpus(format!("{}: missing elements", case.name)))?;
    let elems = parse_ideal(text, &ring)?.evaluate_elements(&ring)?;
    let ideals = case
        .slots
        .iter()
        .map(|s| match s.as_str() {
            "I" => Ok(i.clone()),
            "m" => Ok(i.maximal_like()),
            other => Err(Error::Corpus(format!("unknown slot `{other}`"))),
        })
        .collect::<Result<Vec<_>>>()?;
    let w = is_joint_reduction(&elems, &ideals, b.max_n)?;
    check(checks, "joint_n", &case.expect.joint_n, || Ok(w.n))?;
    check(checks, "joint_e", &case.expect.joint_e, || e_via_joint_reduction(&w, b))?;
    Ok(())
}

fn case_poset(case: &CorpusCase) -> Result<Poset> {
    let spec = case
        .poset
        .as_deref()
        .ok_or_else(|| Error::Corpus(format!("{}: missing poset", case.name)))?;
    Poset::from_spec(spec)
}

fn run_delta(case: &CorpusCase, b: &Budget, checks: &mut Vec<Check>) -> Result<()> {
    let e = &case.expect;
    let Some(gtext) = &case.gens else {
        let n = case
            .n
            .ok_or_else(|| Error::Corpus(format!("{}: give gens or n and pairs", case.name)))?;
        let delta = DeltaSet::parse(n, case.pairs.as_deref().unwrap_or(""))?;
        return check_series(checks, "series", &e.series, || Ok(k_delta_series(&delta)));
    };
    let ring = case_ring(case)?;
    let gens = parse_ideal(gtext, &ring)?.evaluate_elements(&ring)?;
    let delta = compute_delta(&ring, &gens, None)?;
    check(checks, "delta", &e.delta, || Ok(delta.to_string()))?;
    check_series(checks, "series", &e.series, || Ok(k_delta_series(&delta)))?;
    if e.quadratic.is_some() || e.stable.is_some() {
        let poset = case_poset(case)?;
        let lin: Vec<usize> = case.linearization.clone().unwrap_or_else(|| (1..=gens.len()).collect());
        let cert = is_stable_linearization(&poset, &ring, &gens, &lin)?;
        check(checks, "quadratic", &e.quadratic, || {
            Ok(cert.quadratic.is_quadratic_sequence)
        })?;
        check(checks, "stable", &e.stable, || Ok(cert.is_stable))?;
    }
    check(checks, "deformation", &e.deformation, || {
        let i = IdealHandle::from_polynomials(&ring, gens.clone())?;
        Ok(fiber_series(&i, b)? == k_delta_series(&delta))
    })?;
    Ok(())
}

fn run_face_ring(case: &CorpusCase, checks: &mut Vec<Check>) -> Result<()> {
    let poset = case_poset(case)?;
    check_series(checks, "series", &case.expect.series, || face_ring_series(&poset))?;
    if let Some(spec) = case.poset.as_deref().and_then(|p| p.strip_prefix("minors:")) {
        let n: usize = spec
            .trim()
            .parse()
            .map_err(|_| Error::Corpus(format!("bad poset `{spec}`")))?;
        check(checks, "h_vector", &case.expect.h_vector, || determinantal_h_vector(n))?;
        if case.expect.h_vector.is_some() {
            let series = face_ring_series(&poset)?;
            let h = determinantal_h_vector(n)?;
            checks.push(Check {
                field: "h_vector_vs_face_ring".into(),
                expected: format!("{h:?}"),
                computed: format!("{:?}", series.numerator()),
                ok: series.numerator() == h.as_slice() && series.denom_power() == 2 * n - 3,
            });
        }
    }
    Ok(())
}

fn run_family(case: &CorpusCase, checks: &mut Vec<Check>) -> Result<()> {
    let text = case
        .family
        .as_deref()
        .ok_or_else(|| Error::Corpus(format!("{}: missing family", case.name)))?;
    let family: Family = text.parse()?;
    check_series(checks, "series", &case.expect.series, || family.series())?;
    let delta = family.delta()?;
    let from_delta = k_delta_series(&delta);
    let closed = family.series()?;
    checks.push(Check {
        field: "closed_form_vs_k_delta".into(),
        expected: closed.to_string(),
        computed: from_delta.to_string(),
        ok: closed == from_delta,
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_corpus_passes() {
        let report = run_corpus(&Corpus::parse("").unwrap(), &Budget::default(), 1).unwrap();
        assert!(report.all_passed());
        assert_eq!(report.cases.len(), 0);
    }

    #[test]
    fn failures_and_errors_are_reported() {
        let text = r#"
            [[case]]
            name = "wrong"
            ring = "x, y"
            ideal = "x, y"
            [case.expect]
            series = "1/(1-t)^3"

            [[case]]
            name = "broken"
            ring = "x, y"
            ideal = "x, w"
            [case.expect]
            mu = 2

            [[case]]
            name = "expected-error"
            ring = "x, y"
            ideal = "x^2"
            [case.expect]
            error = "not Artinian"
            colength = 0
        "#;
        let report = run_corpus(&Corpus::parse(text).unwrap(), &Budget::default(), 2).unwrap();
        let status: Vec<Status> = report.cases.iter().map(|c| c.status).collect();
        assert_eq!(status, vec![Status::Fail, Status::Error, Status::Pass]);
        assert!(!report.all_passed());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(matches!(
            Corpus::parse("[[case]]\nname = \"a\"\nbogus = 1\n"),
            Err(Error::Corpus(_))
        ));
    }
}
