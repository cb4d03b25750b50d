//! The cellular chain complex of `Z_K(CX, X)` built directly from cone cells.
//!
//! Each `X_i` is a finite simplicial model; `CX_i` has the cells of `X_i`,
//! one apex, and a cone on every cell of `X_i`. A product cell belongs to
//! `Z_K` exactly when the set of coordinates lying in the cone part (apex or
//! cone cells) is a face of `K`.

use std::collections::HashMap;
use std::fmt;

use num_traits::ToPrimitive;

use crate::abelian::{Coefficients, GradedGroup, IntMatrix};
use crate::error::{Error, Result};
use crate::homology::{chain_complex, ChainComplex, SpaceDescriptor};
use crate::simplicial::{FaceSet, SimplicialComplex};

pub const DEFAULT_CELL_CAP: u128 = 1_000_000;

/// One coordinate of a product cell. Cells of `X_i` are indexed by their
/// position in the model's chain complex basis (all dimensions concatenated).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConeCell {
    BaseCell(u32),
    Apex,
    ConeOn(u32),
}

impl ConeCell {
    pub fn in_cone(self) -> bool {
        !matches!(self, ConeCell::BaseCell(_))
    }
}

impl fmt::Display for ConeCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeCell::BaseCell(c) => write!(f, "e{c}"),
            ConeCell::Apex => f.write_str("*"),
            ConeCell::ConeOn(c) => write!(f, "Ce{c}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductCell {
    pub coordinates: Vec<ConeCell>,
}

impl ProductCell {
    pub fn support(&self) -> FaceSet {
        self.coordinates
            .iter()
            .enumerate()
            .filter(|(_, c)| c.in_cone())
            .map(|(i, _)| i + 1)
            .collect()
    }
}

/// Cells of one `CX_i`, with dimensions and boundaries, coded as `u32`:
/// `0..n` base cells, `n` the apex, `n + 1 + j` the cone on base cell `j`.
struct ConeModel {
    base: usize,
    dims: Vec<usize>,
    boundaries: Vec<Vec<(u32, i64)>>,
}

impl ConeModel {
    fn new(x: &SimplicialComplex) -> Self {
        let chains = chain_complex(x, false);
        let mut offsets = vec![0usize];
        for level in &chains.cells {
            offsets.push(offsets.last().unwrap() + level.len());
        }
        let base = *offsets.last().unwrap();
        let apex = base as u32;
        let mut dims = Vec::with_capacity(2 * base + 1);
        let mut base_bd: Vec<Vec<(u32, i64)>> = Vec::with_capacity(base);
        for (n, level) in chains.cells.iter().enumerate() {
            let columns = chains.chains.boundary(n).transpose();
            for col in 0..level.len() {
                dims.push(n);
                let bd = if n == 0 {
                    Vec::new()
                } else {
                    columns
                        .row(col)
                        .iter()
                        .map(|(r, v)| ((offsets[n - 1] + r) as u32, v.to_i64().expect("unit entry")))
                        .collect()
                };
                base_bd.push(bd);
            }
        }
        dims.push(0);
        let cone_dims: Vec<usize> = dims[..base].iter().map(|d| d + 1).collect();
        dims.extend(cone_dims);

        let mut boundaries = base_bd.clone();
        boundaries.push(Vec::new());
        for (j, bd) in base_bd.iter().enumerate() {
            // d(C c) = c - C(dc), and d(C v) = v - apex
            let mut cone_bd = vec![(j as u32, 1)];
            if dims[j] == 0 {
                cone_bd.push((apex, -1));
            } else {
                cone_bd.extend(bd.iter().map(|&(r, s)| (apex + 1 + r, -s)));
            }
            boundaries.push(cone_bd);
        }
        Self {
            base,
            dims,
            boundaries,
        }
    }

    fn decode(&self, code: u32) -> ConeCell {
        let code = code as usize;
        match code.cmp(&self.base) {
            std::cmp::Ordering::Less => ConeCell::BaseCell(code as u32),
            std::cmp::Ordering::Equal => ConeCell::Apex,
            std::cmp::Ordering::Greater => ConeCell::ConeOn((code - self.base - 1) as u32),
        }
    }
}

/// The cellular chains of `Z_K(CX, X)` together with their cells.
#[derive(Debug, Clone)]
pub struct CellularModel {
    /// Reduced (augmented) cellular chains.
    pub chains: ChainComplex,
    pub cells: Vec<Vec<ProductCell>>,
}

fn check_models(k: &SimplicialComplex, spaces: &[SpaceDescriptor]) -> Result<Vec<ConeModel>> {
    if spaces.len() != k.m() {
        return Err(Error::LengthMismatch {
            expected: k.m(),
            actual: spaces.len(),
        });
    }
    spaces
        .iter()
        .enumerate()
        .map(|(i, x)| match x {
            SpaceDescriptor::Model { complex, .. } => Ok(ConeModel::new(complex)),
            SpaceDescriptor::Abstract(_) => Err(Error::ModelRequired(i + 1)),
        })
        .collect()
}

fn all_faces(k: &SimplicialComplex) -> Vec<FaceSet> {
    let mut faces = vec![FaceSet::new()];
    faces.extend(k.faces_by_dimension().into_iter().flatten());
    faces
}

/// Number of cells of `Z_K(CX, X)` (saturating).
fn cell_count(faces: &[FaceSet], models: &[ConeModel]) -> u128 {
    faces
        .iter()
        .map(|sigma| {
            models.iter().enumerate().fold(1u128, |acc, (i, x)| {
                let choices = if sigma.contains(i + 1) { x.base + 1 } else { x.base };
                acc.saturating_mul(choices as u128)
            })
        })
        .fold(0u128, u128::saturating_add)
}

/// Cellular model with the default cell cap.
pub fn cellular_model(k: &SimplicialComplex, spaces: &[SpaceDescriptor]) -> Result<CellularModel> {
    cellular_model_capped(k, spaces, DEFAULT_CELL_CAP)
}

pub fn cellular_model_capped(
    k: &SimplicialComplex,
    spaces: &[SpaceDescriptor],
    cap: u128,
) -> Result<CellularModel> {
    let models = check_models(k, spaces)?;
    let faces = all_faces(k);
    let count = cell_count(&faces, &models);
    if count > cap {
        return Err(Error::SizeLimit {
            what: "cell count",
            actual: count,
            cap,
        });
    }

    // enumerate, per face sigma, the cells whose cone coordinates are exactly sigma
    let mut by_dim: Vec<Vec<Vec<u32>>> = Vec::new();
    for sigma in &faces {
        let choices: Vec<Vec<u32>> = models
            .iter()
            .enumerate()
            .map(|(i, x)| {
                if sigma.contains(i + 1) {
                    (x.base as u32..=2 * x.base as u32).collect()
                } else {
                    (0..x.base as u32).collect()
                }
            })
            .collect();
        if choices.iter().any(Vec::is_empty) {
            continue;
        }
        let mut odometer = vec![0usize; models.len()];
        loop {
            let code: Vec<u32> = odometer.iter().zip(&choices).map(|(&t, c)| c[t]).collect();
            let dim: usize = code.iter().zip(&models).map(|(&c, x)| x.dims[c as usize]).sum();
            if by_dim.len() <= dim {
                by_dim.resize(dim + 1, Vec::new());
            }
            by_dim[dim].push(code);
            let mut pos = models.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                odometer[pos] += 1;
                if odometer[pos] < choices[pos].len() {
                    break;
                }
                odometer[pos] = 0;
            }
            if odometer.iter().all(|&t| t == 0) {
                break;
            }
        }
    }
    for level in &mut by_dim {
        level.sort_unstable();
    }
    let index: Vec<HashMap<&[u32], usize>> = by_dim
        .iter()
        .map(|level| level.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect())
        .collect();

    let ranks: Vec<usize> = by_dim.iter().map(Vec::len).collect();
    let mut boundaries = Vec::with_capacity(by_dim.len());
    boundaries.push(IntMatrix::from_triplets(1, ranks[0], (0..ranks[0]).map(|c| (0, c, 1))));
    for n in 1..by_dim.len() {
        let mut entries = Vec::new();
        let mut face = Vec::with_capacity(models.len());
        for (col, cell) in by_dim[n].iter().enumerate() {
            let mut left_dim = 0usize;
            for (pos, (&c, x)) in cell.iter().zip(&models).enumerate() {
                let sign = if left_dim.is_multiple_of(2) { 1 } else { -1 };
                for &(target, s) in &x.boundaries[c as usize] {
                    face.clear();
                    face.extend_from_slice(cell);
                    face[pos] = target;
                    // only the cone coordinate can leave the cone: support shrinks or stays
                    debug_assert!(x.decode(target).in_cone() <= x.decode(c).in_cone());
                    let row = *index[n - 1].get(face.as_slice()).unwrap_or_else(|| {
                        panic!("boundary of a cell leaves Z_K: support closure violated")
                    });
                    entries.push((row, col, sign * s));
                }
                left_dim += x.dims[c as usize];
            }
        }
        boundaries.push(IntMatrix::from_triplets(ranks[n - 1], ranks[n], entries));
    }
    let chains = ChainComplex::new(ranks, boundaries, true)?;
    let cells = by_dim
        .into_iter()
        .map(|level| {
            level
                .into_iter()
                .map(|code| ProductCell {
                    coordinates: code.iter().zip(&models).map(|(&c, x)| x.decode(c)).collect(),
                })
                .collect()
        })
        .collect();
    Ok(CellularModel { chains, cells })
}

/// Reduced homology of `Z_K(CX, X)` from the cellular model.
pub fn oracle_homology(
    k: &SimplicialComplex,
    spaces: &[SpaceDescriptor],
    c: Coefficients,
) -> Result<GradedGroup> {
    Ok(cellular_model(k, spaces)?.chains.homology(c))
}

pub fn oracle_homology_capped(
    k: &SimplicialComplex,
    spaces: &[SpaceDescriptor],
    c: Coefficients,
    cap: u128,
) -> Result<GradedGroup> {
    Ok(cellular_model_capped(k, spaces, cap)?.chains.homology(c))
}
