//! Hilbert series in reduced rational form and finite-difference utilities.

mod rationalize;
mod table;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use rationalize::rationalize;
pub use table::{mixed_differences, SampleTable2D};

use crate::error::{Error, Result};

/// `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflow")
}

/// `N(t) / (1-t)^a` with integer numerator, kept in reduced form:
/// `(1-t)` does not divide `N` unless `a = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HilbertSeries {
    numerator: Vec<i64>,
    denom_power: usize,
}

impl HilbertSeries {
    /// Builds a series and cancels common factors of `(1-t)`.
    pub fn from_numerator(mut numerator: Vec<i64>, mut denom_power: usize) -> HilbertSeries {
        while numerator.last() == Some(&0) {
            numerator.pop();
        }
        if numerator.is_empty() {
            return HilbertSeries {
                numerator,
                denom_power: 0,
            };
        }
        while denom_power > 0 && numerator.iter().sum::<i64>() == 0 {
            numerator = divide_by_one_minus_t(&numerator);
            denom_power -= 1;
        }
        HilbertSeries { numerator, denom_power }
    }

    /// `1 / (1-t)^a`.
    pub fn polynomial_ring(a: usize) -> HilbertSeries {
        HilbertSeries {
            numerator: vec![1],
            denom_power: a,
        }
    }

    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    /// The analytic spread when this is a fiber-cone series.
    pub fn denom_power(&self) -> usize {
        self.denom_power
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// `N(1)`.
    pub fn multiplicity(&self) -> i64 {
        self.numerator.iter().sum()
    }

    /// `deg N`.
    pub fn numerator_degree(&self) -> usize {
        self.numerator.len().saturating_sub(1)
    }

    /// Coefficient of `t^n`, possibly negative.
    pub fn coefficient(&self, n: usize) -> i64 {
        if self.denom_power == 0 {
            return self.numerator.get(n).copied().unwrap_or(0);
        }
        let a = self.denom_power as u64;
        let mut acc: i128 = 0;
        for (i, &c) in self.numerator.iter().enumerate().take(n + 1) {
            let k = (n - i) as u64;
            acc += c as i128 * binomial(k + a - 1, a - 1) as i128;
        }
        i64::try_from(acc).expect("series coefficient overflow")
    }

    /// Coefficient of `t^n`; a negative value is reported as an error since
    /// Hilbert functions are nonnegative.
    pub fn evaluate(&self, n: usize) -> Result<u64> {
        let c = self.coefficient(n);
        if c < 0 {
            return Err(Error::NegativeCoefficient { n, value: c });
        }
        Ok(c as u64)
    }

    /// `[h(0), ..., h(len-1)]`.
    pub fn expand(&self, len: usize) -> Vec<i64> {
        (0..len).map(|n| self.coefficient(n)).collect()
    }
}

fn divide_by_one_minus_t(p: &[i64]) -> Vec<i64> {
    // p = (1-t) q  =>  q_k = p_0 + ... + p_k
    let mut q = Vec::with_capacity(p.len().saturating_sub(1));
    let mut run = 0i64;
    for &c in &p[..p.len() - 1] {
        run += c;
        q.push(run);
    }
    q
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(usize, i64)> = self
            .numerator
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
            .collect();
        if terms.is_empty() {
            return f.write_str("0");
        }
        let mut num = String::new();
        for (k, &(i, c)) in terms.iter().enumerate() {
            let mag = c.unsigned_abs();
            if k == 0 {
                if c < 0 {
                    num.push('-');
                }
            } else {
                num.push_str(if c < 0 { " - " } else { " + " });
            }
            match i {
                0 => num.push_str(&mag.to_string()),
                _ => {
                    if mag != 1 {
                        num.push_str(&mag.to_string());
                    }
                    num.push('t');
                    if i > 1 {
                        num.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        if self.denom_power == 0 {
            return f.write_str(&num);
        }
        if terms.len() > 1 {
            write!(f, "({num})")?;
        } else {
            f.write_str(&num)?;
        }
        match self.denom_power {
            1 => f.write_str("/(1-t)"),
            a => write!(f, "/(1-t)^{a}"),
        }
    }
}

impl FromStr for HilbertSeries {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (num_part, denom_power) = match compact.find("/(1-t)") {
            Some(idx) => {
                let rest = &compact[idx + "/(1-t)".len()..];
                let a = if rest.is_empty() {
                    1
                } else if let Some(exp) = rest.strip_prefix('^') {
                    exp.parse::<usize>()
                        .map_err(|_| Error::parse(idx, "bad denominator exponent"))?
                } else {
                    return Err(Error::parse(idx, "trailing text after denominator"));
                };
                (&compact[..idx], a)
            }
            None => (compact.as_str(), 0),
        };
        let inner = num_part
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(num_part);
        if inner.is_empty() {
            return Err(Error::parse(0, "empty numerator"));
        }
        let mut numerator: Vec<i64> = Vec::new();
        let bytes = inner.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = 1i64;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(Error::parse(pos, "expected + or -"));
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let coef: i64 = if pos > start {
                inner[start..pos]
                    .parse()
                    .map_err(|_| Error::parse(start, "bad coefficient"))?
            } else {
                1
            };
            let mut power = 0usize;
            if pos < bytes.len() && bytes[pos] == b't' {
                pos += 1;
                power = 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let s = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    power = inner[s..pos].parse().map_err(|_| Error::parse(s, "bad exponent"))?;
                }
            } else if pos == start {
                return Err(Error::parse(pos, "expected a term"));
            }
            if numerator.len() <= power {
                numerator.resize(power + 1, 0);
            }
            numerator[power] += sign * coef;
        }
        Ok(HilbertSeries::from_numerator(numerator, denom_power))
    }
}
