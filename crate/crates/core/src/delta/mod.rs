//! Δ-sets of ordered generator lists, the quadratic monomial algebras `k[Δ]`,
//! quadratic sequences over a poset and their stable linearizations.

mod poset;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

pub use poset::{face_ring_series, Poset, MAX_ENUMERATED};

use crate::error::{Error, Result};
use crate::fiber::{EngineKind, IdealHandle};
use crate::monomial::{hilbert_numerator, Monomial, MonomialIdeal};
use crate::poly::Polynomial;
use crate::ring::{Ring, RingRef};
use crate::series::{binomial, HilbertSeries};

/// Pairs `(j, k)`, `1 <= j <= k <= n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaSet {
    n: usize,
    pairs: BTreeSet<(usize, usize)>,
}

impl DeltaSet {
    /// Pairs are normalized to `j <= k`.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<DeltaSet> {
        let mut set = BTreeSet::new();
        for (a, b) in pairs {
            let (j, k) = if a <= b { (a, b) } else { (b, a) };
            if j == 0 || k > n {
                return Err(Error::InvalidParameters(format!("pair ({a},{b}) outside 1..={n}")));
            }
            set.insert((j, k));
        }
        Ok(DeltaSet { n, pairs: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn contains(&self, j: usize, k: usize) -> bool {
        self.pairs.contains(&(j.min(k), j.max(k)))
    }

    /// Parses `(3,3),(3,4),(4,4)`; the empty string is the empty set.
    pub fn parse(n: usize, text: &str) -> Result<DeltaSet> {
        let mut pairs = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::parse(0, "expected `(` in pair list"))?;
            let (inner, after) = open
                .split_once(')')
                .ok_or_else(|| Error::parse(0, "unbalanced parentheses"))?;
            let (a, b) = inner
                .split_once(',')
                .ok_or_else(|| Error::parse(0, "expected `(j,k)`"))?;
            let a: usize = a
                .trim()
                .parse()
                .map_err(|_| Error::parse(0, format!("bad index `{}`", a.trim())))?;
            let b: usize = b
                .trim()
                .parse()
                .map_err(|_| Error::parse(0, format!("bad index `{}`", b.trim())))?;
            pairs.push((a, b));
            rest = after.trim_start();
            rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
        }
        DeltaSet::new(n, pairs)
    }
}

impl fmt::Display for DeltaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (j, k)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({j},{k})")?;
        }
        f.write_str("}")
    }
}

/// `Δ = {(j, k) : x_j x_k ∈ (x_1, ..., x_{j-1})}` for the generators in the
/// given order, with membership decided by `engine` (or the most specific
/// engine able to hold the generators).
pub fn compute_delta(ring: &RingRef, gens: &[Polynomial], engine: Option<EngineKind>) -> Result<DeltaSet> {
    if let Some(g) = gens.iter().find(|g| !g.is_zero() && g.homogeneous_degree().is_none()) {
        return Err(Error::NonHomogeneous(g.display(ring).to_string()));
    }
    let n = gens.len();
    let kind = engine.unwrap_or(if gens.iter().all(|g| g.as_monomial().is_some()) {
        EngineKind::Monomial
    } else {
        EngineKind::Graded
    });
    if kind == EngineKind::Local {
        return Err(Error::Precondition(
            "Δ is computed with the monomial or graded engine".into(),
        ));
    }
    let prefixes: Vec<IdealHandle> = (0..n)
        .map(|j| IdealHandle::from_polynomials(ring, gens[..j].to_vec())?.promote(kind))
        .collect::<Result<_>>()?;
    let found: Vec<Vec<(usize, usize)>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut out = Vec::new();
            for k in j..n {
                let prod = IdealHandle::from_polynomials(ring, vec![gens[j].mul(&gens[k])])?.promote(kind)?;
                if prefixes[j].contains_ideal(&prod)? {
                    out.push((j + 1, k + 1));
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    DeltaSet::new(n, found.into_iter().flatten())
}

/// Hilbert series of `k[T_1..T_n]/(T_j T_k : (j, k) ∈ Δ)`.
pub fn k_delta_series(delta: &DeltaSet) -> HilbertSeries {
    let n = delta.n;
    if n == 0 {
        return HilbertSeries::from_numerator(vec![1], 0);
    }
    let ring = Ring::indexed("T", n).shared();
    let gens = delta.pairs.iter().map(|&(j, k)| {
        let mut e = vec![0u32; n];
        e[j - 1] += 1;
        e[k - 1] += 1;
        Monomial::new(e)
    });
    let ideal = MonomialIdeal::new(ring, gens);
    HilbertSeries::from_numerator(hilbert_numerator(&ideal), n)
}

/// The outcome of both quadratic-sequence axioms for one pair `(Λ, ω)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PairCertificate {
    pub lambda: Vec<usize>,
    pub omega: usize,
    /// Largest poset ideal `Θ` with `x_θ ∈ (X_Λ : x_ω) ∩ I` for all `θ ∈ Θ`.
    pub theta: Vec<usize>,
    /// `(X_Λ : x_ω) ∩ I = X_Θ`.
    pub axiom1: bool,
    /// `x_ω X_Θ ⊆ X_Λ I`.
    pub axiom2: bool,
}

/// Per-pair certificates for a generator set indexed by a poset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct QuadSeqCertificate {
    pub pairs: Vec<PairCertificate>,
    pub is_quadratic_sequence: bool,
}

impl QuadSeqCertificate {
    pub fn pair(&self, lambda: &[usize], omega: usize) -> Option<&PairCertificate> {
        self.pairs.iter().find(|p| p.omega == omega && p.lambda == lambda)
    }
}

fn members(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask & (1 << i) != 0).collect()
}

fn sub_ideal(ring: &RingRef, gens: &[Monomial], idx: &[usize]) -> MonomialIdeal {
    MonomialIdeal::new(ring.clone(), idx.iter().map(|&i| gens[i].clone()))
}

fn check_pair(
    poset: &Poset,
    ring: &RingRef,
    gens: &[Monomial],
    ideal: &MonomialIdeal,
    lambda: &[usize],
    omega: usize,
) -> PairCertificate {
    let n = gens.len();
    let x_lambda = sub_ideal(ring, gens, lambda);
    let c = x_lambda
        .colon_monomial(&gens[omega])
        .intersect(ideal)
        .expect("same ring");
    let raw: Vec<bool> = gens.iter().map(|g| c.contains(g)).collect();
    let theta_set = poset.down_interior(&raw);
    let theta: Vec<usize> = (0..n).filter(|&i| theta_set[i]).collect();
    let x_theta = sub_ideal(ring, gens, &theta);
    let axiom1 = x_theta.equals(&c);
    let lhs = x_theta.mul_monomial(&gens[omega]);
    let rhs = x_lambda.product(ideal).expect("same ring");
    let axiom2 = lhs.is_subset(&rhs);
    PairCertificate {
        lambda: lambda.to_vec(),
        omega,
        theta,
        axiom1,
        axiom2,
    }
}

fn monomial_gens(ring: &RingRef, gens: &[Polynomial]) -> Result<Vec<Monomial>> {
    gens.iter()
        .map(|g| {
            g.as_monomial()
                .cloned()
                .ok_or_else(|| Error::NonMonomial(g.display(ring).to_string()))
        })
        .collect()
}

/// Checks both axioms for every pair `(Λ, ω)` of the poset, where `gens[w]`
/// is the generator indexed by element `w`.
pub fn verify_quadratic_sequence(poset: &Poset, ring: &RingRef, gens: &[Polynomial]) -> Result<QuadSeqCertificate> {
    let n = poset.len();
    if gens.len() != n {
        return Err(Error::WrongCount {
            expected: n,
            got: gens.len(),
        });
    }
    let monos = monomial_gens(ring, gens)?;
    let ideal = MonomialIdeal::new(ring.clone(), monos.iter().cloned());
    let below: Vec<u32> = (0..n).map(|w| poset.below_mask(w)).collect();
    let mut todo = Vec::new();
    for lam in poset.down_sets()? {
        for w in 0..n {
            if lam & (1 << w) == 0 && below[w] & !lam == 0 {
                todo.push((lam, w));
            }
        }
    }
    let pairs: Vec<PairCertificate> = todo
        .par_iter()
        .map(|&(lam, w)| check_pair(poset, ring, &monos, &ideal, &members(lam, n), w))
        .collect();
    let is_quadratic_sequence = pairs.iter().all(|p| p.axiom1 && p.axiom2);
    Ok(QuadSeqCertificate {
        pairs,
        is_quadratic_sequence,
    })
}

/// The stability test at one position `k` of a linearization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StabilityStep {
    pub k: usize,
    /// `I_k = ((x_1, ..., x_{k-1}) : x_k)`, rendered.
    pub colon: String,
    /// `Ψ_k` as positions `1..=n`.
    pub psi: Vec<usize>,
    /// `I_k = (𝔄_k : x_k)` with `𝔄_k = X_{Ψ_k}`.
    pub stable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StabilityCertificate {
    pub quadratic: QuadSeqCertificate,
    pub delta: DeltaSet,
    /// `Θ_j` for the pairs `([1, j-1], j)`, as positions.
    pub thetas: Vec<Vec<usize>>,
    pub steps: Vec<StabilityStep>,
    pub is_stable: bool,
}

/// Decides whether the linearization `lin` (element `w` goes to position
/// `lin[w]` in `1..=n`) of a quadratic sequence is stable.
pub fn is_stable_linearization(
    poset: &Poset,
    ring: &RingRef,
    gens: &[Polynomial],
    lin: &[usize],
) -> Result<StabilityCertificate> {
    poset.check_linearization(lin)?;
    let quadratic = verify_quadratic_sequence(poset, ring, gens)?;
    let n = poset.len();
    let monos = monomial_gens(ring, gens)?;
    // element at each position
    let mut at = vec![0usize; n];
    for (w, &p) in lin.iter().enumerate() {
        at[p - 1] = w;
    }
    let ordered: Vec<Polynomial> = at.iter().map(|&w| gens[w].clone()).collect();
    let delta = compute_delta(ring, &ordered, Some(EngineKind::Monomial))?;
    let mut thetas = Vec::with_capacity(n);
    for j in 0..n {
        let mut lambda: Vec<usize> = at[..j].to_vec();
        lambda.sort_unstable();
        let cert = quadratic
            .pair(&lambda, at[j])
            .cloned()
            .expect("initial segments of a linearization are pairs");
        let mut pos: Vec<usize> = cert.theta.iter().map(|&w| lin[w]).collect();
        pos.sort_unstable();
        thetas.push(pos);
    }
    let mut steps = Vec::with_capacity(n);
    for k in 1..=n {
        let mut psi: BTreeSet<usize> = (1..k).collect();
        for j in 1..=k {
            if !delta.contains(j, k) {
                psi.extend(thetas[j - 1].iter().copied());
            }
        }
        let xk = &monos[at[k - 1]];
        let prefix: Vec<usize> = at[..k - 1].to_vec();
        let colon = sub_ideal(ring, &monos, &prefix).colon_monomial(xk);
        let psi_elems: Vec<usize> = psi.iter().map(|&p| at[p - 1]).collect();
        let a_colon = sub_ideal(ring, &monos, &psi_elems).colon_monomial(xk);
        steps.push(StabilityStep {
            k,
            colon: colon.to_string(),
            psi: psi.into_iter().collect(),
            stable: colon.equals(&a_colon),
        });
    }
    let is_stable = quadratic.is_quadratic_sequence && steps.iter().all(|s| s.stable);
    Ok(StabilityCertificate {
        quadratic,
        delta,
        thetas,
        steps,
        is_stable,
    })
}

/// `h_i = C(n-2, i)^2 - C(n-3, i-1) C(n-1, i+1)` for `i = 0..=n-3`: the
/// h-vector of the fiber cone of the maximal minors of a generic `2 × n`
/// matrix. The denominator power is `2n - 3` and the reduction number `n - 3`.
pub fn determinantal_h_vector(n: usize) -> Result<Vec<i64>> {
    if n < 3 {
        return Err(Error::InvalidParameters(format!("n = {n} < 3")));
    }
    let b = |a: usize, k: i64| -> i64 {
        if k < 0 {
            0
        } else {
            binomial(a as u64, k as u64) as i64
        }
    };
    Ok((0..=(n - 3) as i64)
        .map(|i| b(n - 2, i) * b(n - 2, i) - b(n - 3, i - 1) * b(n - 1, i + 1))
        .collect())
}

pub fn determinantal_series(n: usize) -> Result<HilbertSeries> {
    Ok(HilbertSeries::from_numerator(determinantal_h_vector(n)?, 2 * n - 3))
}

/// Two closed-form families of quadratic monomial algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `b - c + 2` generators with `Δ = {(j, k) : 3 <= j <= k <= b - c + 1}`.
    MoralesSimis { b: usize, c: usize },
    /// `n` generators with `Δ = {(j, k) : m + 1 <= j <= k <= n}`.
    HuckabaHuneke { n: usize, m: usize },
}

impl Family {
    fn check(&self) -> Result<()> {
        match *self {
            Family::MoralesSimis { b, c } if b > c => Ok(()),
            Family::HuckabaHuneke { n, m } if n >= m && m >= 1 => Ok(()),
            other => Err(Error::InvalidParameters(format!("{other:?}"))),
        }
    }

    pub fn delta(&self) -> Result<DeltaSet> {
        self.check()?;
        let (n, lo, hi) = match *self {
            Family::MoralesSimis { b, c } => (b - c + 2, 3, b - c + 1),
            Family::HuckabaHuneke { n, m } => (n, m + 1, n),
        };
        let pairs = (lo..=hi).flat_map(|j| (j..=hi).map(move |k| (j, k)));
        DeltaSet::new(n, pairs)
    }

    /// `(1 + (b-c-1) t)/(1-t)^3` and `(1 + (n-m) t)/(1-t)^m`.
    pub fn series(&self) -> Result<HilbertSeries> {
        self.check()?;
        Ok(match *self {
            Family::MoralesSimis { b, c } => HilbertSeries::from_numerator(vec![1, (b - c - 1) as i64], 3),
            Family::HuckabaHuneke { n, m } => HilbertSeries::from_numerator(vec![1, (n - m) as i64], m),
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    /// `ms:B,C` or `hh:N,M`.
    fn from_str(s: &str) -> Result<Family> {
        let (tag, args) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidParameters(s.to_string()))?;
        let nums: Vec<usize> = args
            .split(',')
            .map(|a| a.trim().parse().map_err(|_| Error::InvalidParameters(s.to_string())))
            .collect::<Result<_>>()?;
        let [p, q] = nums.as_slice() else {
            return Err(Error::InvalidParameters(s.to_string()));
        };
        let f = match tag.trim().to_ascii_lowercase().as_str() {
            "ms" => Family::MoralesSimis { b: *p, c: *q },
            "hh" => Family::HuckabaHuneke { n: *p, m: *q },
            _ => return Err(Error::InvalidParameters(s.to_string())),
        };
        f.check()?;
        Ok(f)
    }
}
