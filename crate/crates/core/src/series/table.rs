use crate::error::{Error, Result};

/// Values `L(r, s)` on the grid `0 <= r < rows`, `0 <= s < cols`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleTable2D {
    values: Vec<Vec<u64>>,
}

impl SampleTable2D {
    pub fn new(values: Vec<Vec<u64>>) -> Result<SampleTable2D> {
        let cols = values.first().map_or(0, Vec::len);
        if values.iter().any(|row| row.len() != cols) {
            return Err(Error::InvalidParameters("sample table is not rectangular".into()));
        }
        Ok(SampleTable2D { values })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> u64) -> SampleTable2D {
        SampleTable2D {
            values: (0..rows).map(|r| (0..cols).map(|s| f(r, s)).collect()).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.values.len()
    }

    pub fn cols(&self) -> usize {
        self.values.first().map_or(0, Vec::len)
    }

    pub fn get(&self, r: usize, s: usize) -> u64 {
        self.values[r][s]
    }

    pub fn values(&self) -> &[Vec<u64>] {
        &self.values
    }
}

/// `Δ_r^p Δ_s^q L` (forward differences); entry `(i, j)` uses the samples
/// `L(i..=i+p, j..=j+q)`.
pub fn mixed_differences(table: &SampleTable2D, orders: (usize, usize)) -> Result<Vec<Vec<i64>>> {
    let (p, q) = orders;
    if table.rows() <= p || table.cols() <= q {
        return Err(Error::GridTooSmall);
    }
    let mut cur: Vec<Vec<i64>> = table
        .values
        .iter()
        .map(|row| {
            row.iter()
                .map(|&v| i64::try_from(v).expect("table value overflow"))
                .collect()
        })
        .collect();
    for _ in 0..p {
        cur = cur
            .windows(2)
            .map(|w| w[1].iter().zip(&w[0]).map(|(b, a)| b - a).collect())
            .collect();
    }
    for _ in 0..q {
        cur = cur
            .into_iter()
            .map(|row| row.windows(2).map(|w| w[1] - w[0]).collect())
            .collect();
    }
    Ok(cur)
}
