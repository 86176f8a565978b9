use super::ideal::minimal_elements;
use super::{Monomial, MonomialIdeal};

/// Numerator `N(t)` of `H_{R/I}(t) = N(t) / (1-t)^d` for a monomial ideal.
///
/// Pivot recursion on a variable: `N(I) = N(I + (x)) + t N(I : x)`, with
/// pure-power ideals as the base case (`N = Π (1 - t^{a_i})`).
pub fn hilbert_numerator(ideal: &MonomialIdeal) -> Vec<i64> {
    let mut n = numerator_rec(ideal.gens().to_vec(), ideal.ring().dim());
    trim(&mut n);
    n
}

fn trim(p: &mut Vec<i64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn add_into(acc: &mut Vec<i64>, p: &[i64], shift: usize) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (i, c) in p.iter().enumerate() {
        acc[i + shift] += c;
    }
}

fn numerator_rec(gens: Vec<Monomial>, nvars: usize) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(Monomial::is_one) {
        return Vec::new();
    }
    // occurrences of each variable among generators that are not pure powers
    let mut counts = vec![0usize; nvars];
    for g in gens.iter().filter(|g| g.as_pure_power().is_none()) {
        for (i, &e) in g.exps().iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    let pivot = (0..nvars).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    if counts[pivot] == 0 {
        let mut acc = vec![1i64];
        for g in &gens {
            let (_, e) = g.as_pure_power().expect("pure power");
            let mut next = vec![0i64; acc.len() + e as usize];
            for (i, c) in acc.iter().enumerate() {
                next[i] += c;
                next[i + e as usize] -= c;
            }
            acc = next;
        }
        return acc;
    }
    let x = Monomial::var(nvars, pivot);
    let mut with_x: Vec<Monomial> = gens.iter().filter(|g| g.exps()[pivot] == 0).cloned().collect();
    with_x.push(x.clone());
    let colon = minimal_elements(gens.iter().map(|g| g.colon(&x)).collect());
    let mut acc = numerator_rec(minimal_elements(with_x), nvars);
    let tail = numerator_rec(colon, nvars);
    add_into(&mut acc, &tail, 1);
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use crate::series::HilbertSeries;

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(
            Ring::indexed("T", n).shared(),
            gens.iter().map(|g| Monomial::new(g.to_vec())),
        )
    }

    /// Degreewise coefficients of N(t)/(1-t)^d.
    fn expand(num: &[i64], d: usize, upto: usize) -> Vec<i64> {
        let mut coeffs = vec![0i64; upto + 1];
        for (i, c) in num.iter().enumerate() {
            for n in i..=upto {
                let k = n - i;
                coeffs[n] += c * crate::series::binomial((k + d - 1) as u64, (d - 1) as u64) as i64;
            }
        }
        coeffs
    }

    #[test]
    fn one_variable_square() {
        assert_eq!(hilbert_numerator(&ideal(1, &[&[2]])), vec![1, 0, -1]);
    }

    #[test]
    fn square_of_one_variable_in_three() {
        let i = ideal(3, &[&[0, 2, 0]]);
        let s = HilbertSeries::from_numerator(hilbert_numerator(&i), 3);
        assert_eq!(s.to_string(), "(1 + t)/(1-t)^2");
    }

    #[test]
    fn square_of_two_variables_in_five() {
        let i = ideal(5, &[&[0, 0, 2, 0, 0], &[0, 0, 1, 1, 0], &[0, 0, 0, 2, 0]]);
        let s = HilbertSeries::from_numerator(hilbert_numerator(&i), 5);
        assert_eq!(s.to_string(), "(1 + 2t)/(1-t)^3");
    }

    #[test]
    fn numerator_reproduces_standard_monomial_counts() {
        let cases = [
            ideal(3, &[&[1, 1, 0], &[0, 2, 1], &[3, 0, 0], &[0, 0, 4]]),
            ideal(3, &[&[1, 1, 1]]),
            ideal(2, &[&[2, 3], &[4, 1]]),
            ideal(4, &[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1], &[1, 0, 0, 1]]),
        ];
        for i in &cases {
            let num = hilbert_numerator(i);
            let d = i.ring().dim();
            let series = expand(&num, d, 10);
            for (deg, value) in series.iter().enumerate() {
                assert_eq!(
                    *value as usize,
                    i.standard_monomials_in_degree(deg as u32),
                    "{i} deg {deg}"
                );
            }
        }
    }

    #[test]
    fn zero_and_unit() {
        let r = Ring::indexed("T", 2).shared();
        assert_eq!(hilbert_numerator(&MonomialIdeal::zero(r.clone())), vec![1]);
        assert!(hilbert_numerator(&MonomialIdeal::unit(r)).is_empty());
    }
}
