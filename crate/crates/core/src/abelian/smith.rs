use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;
use super::sparse::{eliminate_units, Reduced};

/// Invariant factors `d_1 | d_2 | ... | d_r` of an integer matrix, all
/// positive, with `r` its rank. Transforms are present only when requested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
    /// `U` (rows x rows) and `V` (cols x cols), unimodular, with `U * M * V = D`.
    pub transforms: Option<(IntMatrix, IntMatrix)>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors greater than one: the torsion of the cokernel.
    pub fn torsion(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().filter(|d| !d.is_one_abs())
    }
}

trait AbsOne {
    fn is_one_abs(&self) -> bool;
}

impl AbsOne for BigInt {
    fn is_one_abs(&self) -> bool {
        self.abs() == BigInt::from(1)
    }
}

/// Invariant factors only. Unit pivots are eliminated sparsely first (in
/// machine integers, redone with big integers on overflow); the residual
/// goes through the dense reduction.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let reduced: Reduced<BigInt> = match m.rows_i64().and_then(|rows| eliminate_units(rows, m.cols())) {
        Some(r) => Reduced {
            pivots: r.pivots,
            residual: r
                .residual
                .into_iter()
                .map(|row| row.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect())
                .collect(),
        },
        None => eliminate_units(m.rows_big(), m.cols()).expect("big integers do not overflow"),
    };
    let mut factors = vec![BigInt::from(1); reduced.pivots];
    if !reduced.residual.is_empty() {
        let mut cols: Vec<usize> = reduced.residual.iter().flatten().map(|(c, _)| *c).collect();
        cols.sort_unstable();
        cols.dedup();
        let dense: Vec<Vec<BigInt>> = reduced
            .residual
            .iter()
            .map(|row| {
                let mut out = vec![BigInt::zero(); cols.len()];
                for (c, v) in row {
                    out[cols.binary_search(c).expect("collected")] = v.clone();
                }
                out
            })
            .collect();
        factors.extend(dense_smith(dense, false).0);
    }
    SmithForm {
        factors,
        transforms: None,
    }
}

/// Dense reduction that also returns `U`, `V` with `U * M * V = diag(factors)`.
pub fn smith_normal_form_with_transforms(m: &IntMatrix) -> SmithForm {
    let (factors, transforms) = dense_smith(m.to_dense(), true);
    SmithForm {
        factors,
        transforms: transforms.map(|(u, v)| (IntMatrix::from_dense(&u), IntMatrix::from_dense(&v))),
    }
}

type Dense = Vec<Vec<BigInt>>;

fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect()
}

struct Reducer {
    a: Dense,
    u: Option<Dense>,
    v: Option<Dense>,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v {
                row.swap(i, j);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        fn apply(m: &mut Dense, dst: usize, src: usize, q: &BigInt) {
            let (d, s) = if dst < src {
                let (lo, hi) = m.split_at_mut(src);
                (&mut lo[dst], &hi[0])
            } else {
                let (lo, hi) = m.split_at_mut(dst);
                (&mut hi[0], &lo[src])
            };
            for (x, y) in d.iter_mut().zip(s.iter()) {
                if !y.is_zero() {
                    *x -= q * y;
                }
            }
        }
        apply(&mut self.a, dst, src, q);
        if let Some(u) = &mut self.u {
            apply(u, dst, src, q);
        }
    }

    /// col[dst] -= q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        fn apply(m: &mut Dense, dst: usize, src: usize, q: &BigInt) {
            for row in m {
                if !row[src].is_zero() {
                    let t = q * &row[src];
                    row[dst] -= t;
                }
            }
        }
        apply(&mut self.a, dst, src, q);
        if let Some(v) = &mut self.v {
            apply(v, dst, src, q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -std::mem::take(x);
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -std::mem::take(x);
            }
        }
    }
}

/// Pivots on the entry of smallest absolute value; once the pivot row and
/// column are clear, any entry the pivot does not divide is folded into the
/// pivot row, which forces the divisibility chain.
fn dense_smith(a: Dense, transforms: bool) -> (Vec<BigInt>, Option<(Dense, Dense)>) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut red = Reducer {
        u: transforms.then(|| identity(rows)),
        v: transforms.then(|| identity(cols)),
        a,
    };
    let mut factors = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest_entry(&red.a, t..rows, t..cols) else {
            break;
        };
        red.swap_rows(t, pi);
        red.swap_cols(t, pj);
        loop {
            for i in t + 1..rows {
                if !red.a[i][t].is_zero() {
                    let q = red.a[i][t].div_floor(&red.a[t][t]);
                    red.row_axpy(i, t, &q);
                }
            }
            for j in t + 1..cols {
                if !red.a[t][j].is_zero() {
                    let q = red.a[t][j].div_floor(&red.a[t][t]);
                    red.col_axpy(j, t, &q);
                }
            }
            let col_rest = (t + 1..rows).find(|&i| !red.a[i][t].is_zero());
            let row_rest = (t + 1..cols).find(|&j| !red.a[t][j].is_zero());
            if col_rest.is_some() || row_rest.is_some() {
                // remainders are smaller than the pivot: move the smallest in
                let (pi, pj) = smallest_in_cross(&red.a, t, rows, cols);
                red.swap_rows(t, pi);
                red.swap_cols(t, pj);
                continue;
            }
            let pivot = red.a[t][t].clone();
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !red.a[i][j].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => red.row_axpy(t, i, &BigInt::from(-1)),
                None => break,
            }
        }
        if red.a[t][t].is_negative() {
            red.negate_row(t);
        }
        factors.push(red.a[t][t].clone());
    }
    let transforms = match (red.u, red.v) {
        (Some(u), Some(v)) => Some((u, v)),
        _ => None,
    };
    (factors, transforms)
}

fn smallest_entry(
    a: &Dense,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = &a[i][j];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
                if x.abs() == BigInt::from(1) {
                    return best;
                }
            }
        }
    }
    best
}

fn smallest_in_cross(a: &Dense, t: usize, rows: usize, cols: usize) -> (usize, usize) {
    let mut best = (t, t);
    for i in t..rows {
        if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
            best = (i, t);
        }
    }
    for j in t..cols {
        if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
            best = (t, j);
        }
    }
    best
}
