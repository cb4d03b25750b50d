//! Homology of `Z_K(CX, X)` from its stable splitting
//! `Σ Z_K ≃ Σ ⋁_{I ∉ K} |Σ K_I| ∧ X^(I)`, summed over nonempty non-faces.

use serde::{Deserialize, Serialize};

use crate::abelian::{smash_kunneth, Coefficients, GradedGroup};
use crate::error::{Error, Result};
use crate::homology::{reduced_homology, reduced_homology_of, SpaceDescriptor};
use crate::simplicial::{FaceSet, SimplicialComplex};

/// Largest `m` for which all `2^m` index sets are enumerated by default.
pub const DEFAULT_VERTEX_CAP: usize = 24;

/// One wedge summand `|Σ K_I| ∧ X^(I)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    #[serde(rename = "I")]
    pub index_set: FaceSet,
    #[serde(rename = "KI_homology")]
    pub subcomplex_homology: GradedGroup,
    #[serde(rename = "smash")]
    pub smash_homology: GradedGroup,
    pub total: GradedGroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZkReport {
    pub total: GradedGroup,
    pub summands: Vec<Summand>,
}

/// Nonempty subsets of `[m]` that are not faces, in lexicographic order.
pub fn nonfaces(k: &SimplicialComplex) -> impl Iterator<Item = FaceSet> {
    let m = k.m();
    assert!(m < 64, "nonface enumeration needs m < 64");
    let facets: Vec<u64> = k
        .facets()
        .iter()
        .map(|f| f.to_mask().expect("m is capped below 64"))
        .collect();
    let mut out: Vec<FaceSet> = (1u64..1 << m)
        .filter(|s| !facets.iter().any(|f| s & !f == 0))
        .map(FaceSet::from_mask)
        .collect();
    out.sort();
    out.into_iter()
}

/// `H̃(X_{i_1} ∧ ... ∧ X_{i_k})` for `I = {i_1 < ... < i_k}`, folded left to right.
pub fn smash_homology(
    spaces: &[SpaceDescriptor],
    index_set: &FaceSet,
    c: Coefficients,
) -> Result<GradedGroup> {
    let mut acc: Option<GradedGroup> = None;
    for i in index_set.iter() {
        let x = spaces.get(i - 1).ok_or(Error::VertexOutOfRange {
            vertex: i,
            m: spaces.len(),
        })?;
        let h = reduced_homology_of(x, c)?.value;
        acc = Some(match acc {
            None => h,
            Some(a) => smash_kunneth(&a, &h, c),
        });
    }
    acc.ok_or(Error::EmptyIndexSet)
}

/// Top degree in which `x` can carry reduced homology.
fn degree_bound(x: &SpaceDescriptor, c: Coefficients) -> Result<usize> {
    match x {
        SpaceDescriptor::Model { complex, .. } => Ok(complex.dimension()),
        SpaceDescriptor::Abstract(_) => {
            Ok(reduced_homology_of(x, c)?.value.max_degree().unwrap_or(0))
        }
    }
}

fn summand(
    k: &SimplicialComplex,
    spaces: &[SpaceDescriptor],
    index_set: FaceSet,
    c: Coefficients,
) -> Result<Summand> {
    let sub = k.full_subcomplex(&index_set)?;
    let subcomplex_homology = reduced_homology(&sub.complex, c);
    let smash = smash_homology(spaces, &index_set, c)?;
    let total = smash_kunneth(&subcomplex_homology, &smash, c).shift(1)?;

    let mut bound = index_set.len() - 1;
    for i in index_set.iter() {
        bound += degree_bound(&spaces[i - 1], c)?;
    }
    assert!(
        total.max_degree().is_none_or(|d| d <= bound),
        "summand {index_set} exceeds its degree bound {bound}"
    );
    Ok(Summand {
        index_set,
        subcomplex_homology,
        smash_homology: smash,
        total,
    })
}

/// `H̃(Z_K(CX, X))` with the per-summand breakdown; default vertex cap.
pub fn zk_homology(
    k: &SimplicialComplex,
    spaces: &[SpaceDescriptor],
    c: Coefficients,
) -> Result<ZkReport> {
    zk_homology_capped(k, spaces, c, DEFAULT_VERTEX_CAP)
}

/// Summands are evaluated on worker threads and merged in index-set order.
pub fn zk_homology_capped(
    k: &SimplicialComplex,
    spaces: &[SpaceDescriptor],
    c: Coefficients,
    max_vertices: usize,
) -> Result<ZkReport> {
    let c = c.validate()?;
    if k.m() > max_vertices {
        return Err(Error::SizeLimit {
            what: "vertex count",
            actual: k.m() as u128,
            cap: max_vertices as u128,
        });
    }
    if spaces.len() != k.m() {
        return Err(Error::LengthMismatch {
            expected: k.m(),
            actual: spaces.len(),
        });
    }
    let sets: Vec<FaceSet> = nonfaces(k).collect();
    let workers = std::thread::available_parallelism()
        .map_or(1, usize::from)
        .min(sets.len().div_ceil(8).max(1));
    let chunk = sets.len().div_ceil(workers).max(1);
    let results: Vec<Result<Vec<Summand>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = sets
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    part.iter()
                        .map(|i| summand(k, spaces, i.clone(), c))
                        .collect::<Result<Vec<_>>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut summands = Vec::with_capacity(sets.len());
    for r in results {
        summands.extend(r?);
    }
    let total = summands
        .iter()
        .fold(GradedGroup::zero(), |acc, s| acc.direct_sum(&s.total));
    Ok(ZkReport { total, summands })
}
