//! Sparse elimination on unit pivots.
//!
//! Pivoting on a unit entry removes one row and one column from the matrix
//! by unimodular operations and contributes an invariant factor 1. What is
//! left has no unit entries and is handed to the dense Smith reduction.
//! Over a prime field every nonzero entry is a unit, so the same routine
//! computes ranks mod p.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub(crate) trait Scalar: Clone {
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn is_unit(&self) -> bool;
    /// `a * p^{-1}` for a unit `p`.
    fn over_unit(a: &Self, p: &Self) -> Option<Self>;
    /// `a - f * b`.
    fn sub_mul(a: &Self, f: &Self, b: &Self) -> Option<Self>;
}

impl Scalar for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn zero_like(&self) -> Self {
        0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn over_unit(a: &Self, p: &Self) -> Option<Self> {
        a.checked_mul(*p)
    }
    fn sub_mul(a: &Self, f: &Self, b: &Self) -> Option<Self> {
        a.checked_sub(f.checked_mul(*b)?)
    }
}

impl Scalar for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn over_unit(a: &Self, p: &Self) -> Option<Self> {
        Some(a * p)
    }
    fn sub_mul(a: &Self, f: &Self, b: &Self) -> Option<Self> {
        Some(a - f * b)
    }
}

/// Element of `Z/p` for a prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Fp {
    pub v: u64,
    pub p: u64,
}

impl Fp {
    #[cfg(test)]
    pub fn new(v: i128, p: u64) -> Self {
        Fp {
            v: v.rem_euclid(p as i128) as u64,
            p,
        }
    }

    fn inverse(self) -> Self {
        // Fermat: v^(p-2)
        let (mut base, mut exp, mut acc) = (self.v, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        Fp { v: acc, p: self.p }
    }
}

impl Scalar for Fp {
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }
    fn is_unit(&self) -> bool {
        self.v != 0
    }
    fn over_unit(a: &Self, p: &Self) -> Option<Self> {
        Some(Fp {
            v: a.v * p.inverse().v % a.p,
            p: a.p,
        })
    }
    fn sub_mul(a: &Self, f: &Self, b: &Self) -> Option<Self> {
        let prod = f.v * b.v % a.p;
        Some(Fp {
            v: (a.v + a.p - prod) % a.p,
            p: a.p,
        })
    }
}

pub(crate) struct Reduced<T> {
    /// Number of unit pivots eliminated.
    pub pivots: usize,
    /// Remaining nonzero rows (columns keep their original indices).
    pub residual: Vec<Vec<(usize, T)>>,
}

/// Eliminates unit pivots with a Markowitz-style choice (shortest row first,
/// then the sparsest column). Returns `None` if arithmetic overflowed.
pub(crate) fn eliminate_units<T: Scalar>(
    rows: Vec<Vec<(usize, T)>>,
    ncols: usize,
) -> Option<Reduced<T>> {
    let mut rows = rows;
    let mut alive = vec![true; rows.len()];
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row {
            col_rows[*c].push(r);
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = rows
        .iter()
        .enumerate()
        .filter(|(_, row)| !row.is_empty())
        .map(|(r, row)| Reverse((row.len(), r)))
        .collect();

    let mut pivots = 0;
    let mut scratch: Vec<(usize, T)> = Vec::new();
    while let Some(Reverse((len, r))) = heap.pop() {
        if !alive[r] || rows[r].len() != len || len == 0 {
            continue;
        }
        let Some(&(pc, ref pv)) = rows[r]
            .iter()
            .filter(|(_, v)| v.is_unit())
            .min_by_key(|(c, _)| col_rows[*c].len())
        else {
            continue;
        };
        let pv = pv.clone();
        let pivot_row = std::mem::take(&mut rows[r]);
        alive[r] = false;

        for r2 in std::mem::take(&mut col_rows[pc]) {
            if r2 == r || !alive[r2] {
                continue;
            }
            let Ok(k) = rows[r2].binary_search_by_key(&pc, |(c, _)| *c) else {
                continue;
            };
            let factor = T::over_unit(&rows[r2][k].1, &pv)?;
            // rows[r2] -= factor * pivot_row, merging sorted runs
            let target = std::mem::take(&mut rows[r2]);
            scratch.clear();
            let (mut i, mut j) = (0, 0);
            while i < target.len() || j < pivot_row.len() {
                let ci = target.get(i).map_or(usize::MAX, |e| e.0);
                let cj = pivot_row.get(j).map_or(usize::MAX, |e| e.0);
                if ci < cj {
                    scratch.push(target[i].clone());
                    i += 1;
                } else if cj < ci {
                    let v = T::sub_mul(&pivot_row[j].1.zero_like(), &factor, &pivot_row[j].1)?;
                    if !v.is_zero() {
                        col_rows[cj].push(r2);
                        scratch.push((cj, v));
                    }
                    j += 1;
                } else {
                    let v = T::sub_mul(&target[i].1, &factor, &pivot_row[j].1)?;
                    if !v.is_zero() {
                        scratch.push((cj, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            rows[r2] = std::mem::take(&mut scratch);
            if !rows[r2].is_empty() {
                heap.push(Reverse((rows[r2].len(), r2)));
            }
        }
        pivots += 1;
    }

    let residual = rows
        .into_iter()
        .zip(alive)
        .filter(|(row, a)| *a && !row.is_empty())
        .map(|(row, _)| row)
        .collect();
    Some(Reduced { pivots, residual })
}
