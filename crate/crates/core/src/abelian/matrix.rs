use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Sparse integer matrix; each row holds `(column, value)` pairs sorted by
/// column with no explicit zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, BigInt)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, BigInt::from(1)));
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_dense<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let data = rows
            .iter()
            .map(|row| {
                assert_eq!(row.len(), cols, "ragged matrix");
                row.iter()
                    .enumerate()
                    .map(|(c, v)| (c, v.clone().into()))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Sums duplicate positions. Panics on out-of-range indices.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Self {
        let mut data: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); rows];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            data[r].push((c, BigInt::from(v)));
        }
        for row in &mut data {
            row.sort_by_key(|(c, _)| *c);
            let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(row.len());
            for (c, v) in row.drain(..) {
                match merged.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv += v,
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|(_, v)| !v.is_zero());
            *row = merged;
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, BigInt)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        match self.data[r].binary_search_by_key(&c, |(col, _)| *col) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                out[r][*c] = v.clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut data: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows);
        let mut acc: Vec<BigInt> = vec![BigInt::zero(); other.cols];
        let mut touched: Vec<usize> = Vec::new();
        for row in &self.data {
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    if acc[*c].is_zero() {
                        touched.push(*c);
                    }
                    acc[*c] += a * b;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut out_row = Vec::new();
            for &c in &touched {
                let v = std::mem::take(&mut acc[c]);
                if !v.is_zero() {
                    out_row.push((c, v));
                }
            }
            touched.clear();
            data.push(out_row);
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// Rows as machine integers, or `None` if some entry does not fit.
    pub(crate) fn rows_i64(&self) -> Option<Vec<Vec<(usize, i64)>>> {
        self.data
            .iter()
            .map(|row| row.iter().map(|(c, v)| v.to_i64().map(|v| (*c, v))).collect())
            .collect()
    }

    pub(crate) fn rows_big(&self) -> Vec<Vec<(usize, BigInt)>> {
        self.data.clone()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        if self.rows * self.cols <= 400 {
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                writeln!(f, "  [{}]", cells.join(" "))?;
            }
        }
        Ok(())
    }
}
