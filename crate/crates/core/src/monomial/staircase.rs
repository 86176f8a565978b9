use rayon::prelude::*;

use super::{Monomial, MonomialIdeal};
use crate::error::{Error, Result};

impl MonomialIdeal {
    /// `ℓ(R/I)`: the number of standard monomials of an Artinian monomial ideal.
    ///
    /// Each column over a point of the first `d-1` coordinates is counted in
    /// one step from the generators lying below it; the first coordinate is
    /// split across worker threads.
    pub fn artinian_length(&self, cell_budget: u64) -> Result<u64> {
        let d = self.ring().dim();
        let bounds = self.pure_power_bounds();
        let mut bbox: Vec<u32> = Vec::with_capacity(d);
        for (i, b) in bounds.iter().enumerate() {
            match b {
                Some(b) => bbox.push(*b),
                None => {
                    return Err(Error::NotArtinian(format!(
                        "no pure power of {}",
                        self.ring().vars()[i]
                    )))
                }
            }
        }
        if bbox.contains(&0) {
            return Ok(0);
        }
        let cells = bbox
            .iter()
            .try_fold(1u64, |acc, &b| acc.checked_mul(b as u64))
            .unwrap_or(u64::MAX);
        if cells > cell_budget {
            return Err(Error::BudgetExceeded(format!(
                "staircase box has {cells} cells (budget {cell_budget})"
            )));
        }
        if d == 1 {
            return Ok(bbox[0] as u64);
        }
        let gens = self.gens();
        let total = (0..bbox[0])
            .into_par_iter()
            .map(|a0| {
                let sub: Vec<&Monomial> = gens.iter().filter(|g| g.exps()[0] <= a0).collect();
                let mut prefix = vec![0u32; d - 1];
                prefix[0] = a0;
                count_columns(&sub, &bbox, &mut prefix, 1)
            })
            .sum();
        Ok(total)
    }
}

/// Sums column heights over prefixes whose coordinates from `pos` on are free.
fn count_columns(gens: &[&Monomial], bbox: &[u32], prefix: &mut Vec<u32>, pos: usize) -> u64 {
    let d = bbox.len();
    if pos == d - 1 {
        let last = d - 1;
        return gens
            .iter()
            .filter(|g| g.exps()[..last].iter().zip(prefix.iter()).all(|(e, p)| e <= p))
            .map(|g| g.exps()[last])
            .min()
            .unwrap_or(bbox[last]) as u64;
    }
    let mut total = 0;
    for a in 0..bbox[pos] {
        prefix[pos] = a;
        let sub: Vec<&Monomial> = gens.iter().copied().filter(|g| g.exps()[pos] <= a).collect();
        total += count_columns(&sub, bbox, prefix, pos + 1);
    }
    prefix[pos] = 0;
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Ring, RingRef};

    fn ring(n: usize) -> RingRef {
        Ring::indexed("x", n).shared()
    }

    fn nested_loop_count(i: &MonomialIdeal) -> u64 {
        let bounds: Vec<u32> = i.pure_power_bounds().into_iter().map(|b| b.unwrap()).collect();
        let mut count = 0;
        let mut cur = vec![0u32; bounds.len()];
        loop {
            if !i.contains(&Monomial::new(cur.clone())) {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == cur.len() {
                    return count;
                }
                cur[k] += 1;
                if cur[k] < bounds[k] {
                    break;
                }
                cur[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn small_colengths() {
        let r = ring(2);
        assert_eq!(MonomialIdeal::maximal(r.clone()).artinian_length(1000).unwrap(), 1);
        let i = MonomialIdeal::new(
            r.clone(),
            [[3, 0], [2, 4], [1, 5], [0, 7]]
                .iter()
                .map(|e| Monomial::new(e.to_vec())),
        );
        assert_eq!(i.artinian_length(1000).unwrap(), 16);
        assert_eq!(i.power(2).artinian_length(1000).unwrap(), 52);
        assert_eq!(nested_loop_count(&i.power(2)), 52);
    }

    #[test]
    fn errors() {
        let r = ring(2);
        let i = MonomialIdeal::new(r.clone(), [Monomial::new(vec![2, 0]), Monomial::new(vec![1, 1])]);
        assert!(matches!(i.artinian_length(1000), Err(Error::NotArtinian(_))));
        let big = MonomialIdeal::new(r, [Monomial::new(vec![100, 0]), Monomial::new(vec![0, 100])]);
        assert!(matches!(big.artinian_length(50), Err(Error::BudgetExceeded(_))));
        assert_eq!(big.artinian_length(10_000).unwrap(), 10_000);
    }

    #[test]
    fn three_variable_staircase_matches_loops() {
        let r = ring(3);
        let i = MonomialIdeal::new(
            r,
            [[3, 0, 0], [0, 4, 0], [0, 0, 2], [1, 1, 1], [2, 2, 0]]
                .iter()
                .map(|e| Monomial::new(e.to_vec())),
        );
        assert_eq!(i.artinian_length(1 << 20).unwrap(), nested_loop_count(&i));
    }
}
