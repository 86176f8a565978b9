//! Exponent-vector monomials and monomial ideals.

mod ideal;
mod numerator;
mod staircase;

use std::cmp::Ordering;
use std::fmt;

pub use ideal::MonomialIdeal;
pub use numerator::hilbert_numerator;

use crate::ring::Ring;

/// A monomial `x^a` stored as its exponent vector.
///
/// `Ord` is graded lexicographic: total degree first, then lexicographic with
/// the first declared variable largest.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial {
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial::new(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        Self::var_pow(nvars, i, 1)
    }

    pub fn var_pow(nvars: usize, i: usize, e: u32) -> Monomial {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        Monomial::new(exps)
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn pow(&self, n: u32) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .map(|a| a.checked_mul(n).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial::new(
            self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a - b).collect(),
        ))
    }

    /// `lcm(self, g) / g`, the generator of `(self) : g`.
    pub fn colon(&self, g: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(g.exps.iter())
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        )
    }

    /// `Some((i, e))` when the monomial is `x_i^e` with `e >= 1`.
    pub fn as_pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }

    /// Order used for canonical listings: ascending degree, first variable
    /// heaviest within a degree.
    pub fn canonical_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }

    /// Every monomial of total degree `deg` in `nvars` variables, in
    /// canonical order.
    pub fn all_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = cur.len();
            if i + 1 == n {
                cur[i] = left;
                out.push(Monomial::new(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if nvars == 0 {
            if deg == 0 {
                out.push(Monomial::new(Vec::new()));
            }
            return out;
        }
        rec(0, deg, &mut cur, &mut out);
        out
    }

    pub fn display<'a>(&'a self, ring: &'a Ring) -> MonomialDisplay<'a> {
        MonomialDisplay { mono: self, ring }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    ring: &'a Ring,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (name, &e) in self.ring.vars().iter().zip(self.mono.exps.iter()) {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(name)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_orders_by_degree_then_first_variable() {
        let x2 = Monomial::new(vec![2, 0]);
        let xy = Monomial::new(vec![1, 1]);
        let y3 = Monomial::new(vec![0, 3]);
        assert!(x2 > xy);
        assert!(y3 > x2);
        assert_eq!(x2.canonical_cmp(&xy), Ordering::Less);
    }

    #[test]
    fn colon_by_monomial() {
        let f = Monomial::new(vec![2, 1]);
        let g = Monomial::new(vec![1, 3]);
        assert_eq!(f.colon(&g), Monomial::new(vec![1, 0]));
    }

    #[test]
    fn degree_enumeration_counts_binomials() {
        assert_eq!(Monomial::all_of_degree(3, 4).len(), 15);
        assert_eq!(Monomial::all_of_degree(2, 0), vec![Monomial::one(2)]);
        let ring = Ring::new(&["x", "y"]).unwrap();
        let names: Vec<String> = Monomial::all_of_degree(2, 2)
            .iter()
            .map(|m| m.display(&ring).to_string())
            .collect();
        assert_eq!(names, ["x^2", "x*y", "y^2"]);
    }
}
