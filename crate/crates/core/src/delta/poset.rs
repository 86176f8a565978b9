use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::series::HilbertSeries;

/// Largest poset whose down-sets are enumerated.
pub const MAX_ENUMERATED: usize = 20;

/// A finite poset on `0..n`, stored as its transitively closed strict order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    less: Vec<Vec<bool>>,
}

impl Poset {
    /// Builds the poset generated by `a < b` for each listed cover.
    pub fn from_covers(names: Vec<String>, covers: &[(usize, usize)]) -> Result<Poset> {
        let n = names.len();
        let mut less = vec![vec![false; n]; n];
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::InvalidPoset(format!("cover ({a}, {b}) out of range")));
            }
            less[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if less[i][k] {
                    for j in 0..n {
                        if less[k][j] {
                            less[i][j] = true;
                        }
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| less[i][i]) {
            return Err(Error::InvalidPoset(format!("cycle through `{}`", names[i])));
        }
        Ok(Poset { names, less })
    }

    fn numbered(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    pub fn chain(n: usize) -> Poset {
        let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_covers(Self::numbered(n), &covers).expect("a chain is acyclic")
    }

    pub fn antichain(n: usize) -> Poset {
        Poset::from_covers(Self::numbered(n), &[]).expect("no relations")
    }

    /// The product of chains `[1,rows] × [1,cols]`, element `(i, j)` at index
    /// `i * cols + j`.
    pub fn grid(rows: usize, cols: usize) -> Poset {
        let mut covers = Vec::new();
        let mut names = Vec::new();
        for i in 0..rows {
            for j in 0..cols {
                names.push(format!("{}{}", i + 1, j + 1));
                if i + 1 < rows {
                    covers.push((i * cols + j, (i + 1) * cols + j));
                }
                if j + 1 < cols {
                    covers.push((i * cols + j, i * cols + j + 1));
                }
            }
        }
        Poset::from_covers(names, &covers).expect("a grid is acyclic")
    }

    /// The maximal minors `[a, b]` (`1 <= a < b <= n`) of a generic `2 × n`
    /// matrix, with `[a, b] <= [c, d]` iff `a <= c` and `b <= d`.
    pub fn minors_2xn(n: usize) -> Poset {
        let mut elems = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                elems.push((a, b));
            }
        }
        let names = elems.iter().map(|(a, b)| format!("[{a},{b}]")).collect();
        let mut covers = Vec::new();
        for (i, &(a, b)) in elems.iter().enumerate() {
            for (j, &(c, d)) in elems.iter().enumerate() {
                if i != j && a <= c && b <= d {
                    covers.push((i, j));
                }
            }
        }
        Poset::from_covers(names, &covers).expect("componentwise order is acyclic")
    }

    /// Accepts `chain:N`, `antichain:N`, `grid:R,C`, `minors:N`, or the
    /// textual format understood by [`Poset::parse`].
    pub fn from_spec(spec: &str) -> Result<Poset> {
        if spec.contains('\n') || spec.trim_start().starts_with("element") || spec.trim_start().starts_with('#') {
            return Poset::parse(spec);
        }
        let bad = || Error::InvalidPoset(format!("bad poset spec `{spec}`"));
        let (tag, args) = spec.split_once(':').ok_or_else(bad)?;
        let nums: Vec<usize> = args
            .split(',')
            .map(|a| a.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        Ok(match (tag.trim(), nums.as_slice()) {
            ("chain", [n]) => Poset::chain(*n),
            ("antichain", [n]) => Poset::antichain(*n),
            ("grid", [r, c]) => Poset::grid(*r, *c),
            ("minors", [n]) => Poset::minors_2xn(*n),
            _ => return Err(bad()),
        })
    }

    /// Reads `element NAME` lines followed by `cover A < B` lines. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Poset> {
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut covers = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::InvalidPoset(format!("line {}: {msg}", lineno + 1));
            let mut words = line.split_whitespace();
            match words.next() {
                Some("element") => {
                    let name = words.next().ok_or_else(|| bad("missing element name"))?;
                    if words.next().is_some() {
                        return Err(bad("trailing text after element name"));
                    }
                    if index.insert(name.to_string(), names.len()).is_some() {
                        return Err(bad("duplicate element"));
                    }
                    names.push(name.to_string());
                }
                Some("cover") => {
                    let rest: Vec<&str> = words.collect();
                    let [a, "<", b] = rest.as_slice() else {
                        return Err(bad("expected `cover A < B`"));
                    };
                    let ia = *index.get(*a).ok_or_else(|| bad("unknown element"))?;
                    let ib = *index.get(*b).ok_or_else(|| bad("unknown element"))?;
                    covers.push((ia, ib));
                }
                _ => return Err(bad("expected `element` or `cover`")),
            }
        }
        Poset::from_covers(names, &covers)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Strict order `a < b`.
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.less[a][b]
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        a == b || self.less[a][b]
    }

    /// Elements strictly below `w`, as a bit mask.
    pub(crate) fn below_mask(&self, w: usize) -> u32 {
        (0..self.len()).filter(|&v| self.less[v][w]).fold(0, |m, v| m | 1 << v)
    }

    pub fn is_down_set(&self, set: &[bool]) -> bool {
        (0..self.len()).all(|w| !set[w] || (0..self.len()).all(|v| !self.less[v][w] || set[v]))
    }

    /// Largest down-set contained in `set`.
    pub fn down_interior(&self, set: &[bool]) -> Vec<bool> {
        (0..self.len())
            .map(|w| set[w] && (0..self.len()).all(|v| !self.less[v][w] || set[v]))
            .collect()
    }

    /// All down-sets as bit masks.
    pub fn down_sets(&self) -> Result<Vec<u32>> {
        let n = self.len();
        if n > MAX_ENUMERATED {
            return Err(Error::InvalidParameters(format!(
                "posets with more than {MAX_ENUMERATED} elements are not enumerated"
            )));
        }
        let below: Vec<u32> = (0..n).map(|w| self.below_mask(w)).collect();
        Ok((0u32..1 << n)
            .filter(|&m| (0..n).all(|w| m & (1 << w) == 0 || below[w] & !m == 0))
            .collect())
    }

    /// Checks that `lin[w]` (positions `1..=n`) is an order-preserving bijection.
    pub fn check_linearization(&self, lin: &[usize]) -> Result<()> {
        let n = self.len();
        if lin.len() != n {
            return Err(Error::NotALinearization(format!(
                "{} positions for {n} elements",
                lin.len()
            )));
        }
        let mut seen = vec![false; n];
        for &p in lin {
            if p == 0 || p > n || std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::NotALinearization(format!(
                    "positions must be a permutation of 1..={n}"
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.less[a][b] && lin[a] > lin[b] {
                    return Err(Error::NotALinearization(format!(
                        "`{}` < `{}` but they are placed at {} and {}",
                        self.names[a], self.names[b], lin[a], lin[b]
                    )));
                }
            }
        }
        Ok(())
    }

    /// `[c_0, c_1, ...]` with `c_i` the number of `i`-element chains.
    pub fn chain_counts(&self) -> Result<Vec<u64>> {
        let n = self.len();
        // topological order: by number of elements below
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&w| (0..n).filter(|&v| self.less[v][w]).count());
        // ending[w][k]: chains of size k with top element w
        let mut ending: Vec<Vec<u64>> = vec![Vec::new(); n];
        for &w in &order {
            let mut counts = vec![0u64, 1];
            for v in 0..n {
                if self.less[v][w] {
                    for (k, &c) in ending[v].iter().enumerate() {
                        if counts.len() <= k + 1 {
                            counts.resize(k + 2, 0);
                        }
                        counts[k + 1] = counts[k + 1].checked_add(c).ok_or(Error::Overflow("chain counts"))?;
                    }
                }
            }
            ending[w] = counts;
        }
        let mut total = vec![1u64];
        for counts in &ending {
            if total.len() < counts.len() {
                total.resize(counts.len(), 0);
            }
            for (k, &c) in counts.iter().enumerate().skip(1) {
                total[k] = total[k].checked_add(c).ok_or(Error::Overflow("chain counts"))?;
            }
        }
        Ok(total)
    }
}

/// Hilbert series of the face ring of the order complex:
/// `Σ_i c_i t^i / (1-t)^i`, `c_i` counting `i`-element chains.
pub fn face_ring_series(poset: &Poset) -> Result<HilbertSeries> {
    let c = poset.chain_counts()?;
    let top = c.len() - 1;
    // Σ c_i t^i (1-t)^(top-i) over (1-t)^top
    let mut numerator = vec![0i64; top + 1];
    for (i, &ci) in c.iter().enumerate() {
        let ci = i64::try_from(ci).map_err(|_| Error::Overflow("face ring series"))?;
        let mut term = vec![0i64; i];
        term.push(ci);
        for _ in 0..top - i {
            let mut next = term.clone();
            next.push(0);
            for k in 1..next.len() {
                next[k] = next[k]
                    .checked_sub(term[k - 1])
                    .ok_or(Error::Overflow("face ring series"))?;
            }
            term = next;
        }
        for (k, v) in term.iter().enumerate() {
            numerator[k] = numerator[k]
                .checked_add(*v)
                .ok_or(Error::Overflow("face ring series"))?;
        }
    }
    Ok(HilbertSeries::from_numerator(numerator, top))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_cycles() {
        let p = Poset::chain(4);
        assert!(p.lt(0, 3));
        assert!(!p.lt(3, 0));
        let cyc = Poset::from_covers(vec!["a".into(), "b".into()], &[(0, 1), (1, 0)]);
        assert!(matches!(cyc, Err(Error::InvalidPoset(_))));
    }

    #[test]
    fn file_format() {
        let p = Poset::parse("element a\nelement b\nelement c # top\ncover a < b\ncover b < c\n").unwrap();
        assert_eq!(
            p,
            Poset::from_covers(vec!["a".into(), "b".into(), "c".into()], &[(0, 1), (1, 2)]).unwrap()
        );
        assert!(p.lt(0, 2));
        assert!(Poset::parse("element a\ncover a < z").is_err());
        assert!(Poset::parse("element a\nelement a").is_err());
    }

    #[test]
    fn down_sets_and_linearizations() {
        assert_eq!(Poset::chain(3).down_sets().unwrap().len(), 4);
        assert_eq!(Poset::antichain(3).down_sets().unwrap().len(), 8);
        let p = Poset::chain(3);
        assert!(p.check_linearization(&[1, 2, 3]).is_ok());
        assert!(matches!(
            p.check_linearization(&[2, 1, 3]),
            Err(Error::NotALinearization(_))
        ));
        assert!(matches!(
            p.check_linearization(&[1, 1, 3]),
            Err(Error::NotALinearization(_))
        ));
    }

    #[test]
    fn face_rings() {
        assert_eq!(face_ring_series(&Poset::chain(3)).unwrap().to_string(), "1/(1-t)^3");
        assert_eq!(
            face_ring_series(&Poset::antichain(2)).unwrap().to_string(),
            "(1 + t)/(1-t)"
        );
        assert_eq!(
            face_ring_series(&Poset::minors_2xn(4)).unwrap().to_string(),
            "(1 + t)/(1-t)^5"
        );
        assert_eq!(
            face_ring_series(&Poset::minors_2xn(5)).unwrap().to_string(),
            "(1 + 3t + t^2)/(1-t)^7"
        );
    }
}
