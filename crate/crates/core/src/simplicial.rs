//! Facet-based simplicial complexes on the vertex set `[m] = {1, ..., m}`.
//!
//! A complex stores only its maximal faces; face membership is containment
//! in a facet. Vertex labels are 1-based everywhere in the public API.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A finite set of vertices, stored as a bitset (bit `v - 1` for vertex `v`).
///
/// Sets inside `[1, 64]` live in a single inline word; larger labels spill
/// into additional words. Trailing zero words are never stored, so equality
/// and hashing are structural.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FaceSet {
    words: SmallVec<[u64; 1]>,
}

impl FaceSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Panics if a vertex label is 0.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        let mut s = Self::new();
        for v in vertices {
            s.insert(v);
        }
        s
    }

    /// `{1, ..., m}`.
    pub fn full(m: usize) -> Self {
        Self::from_vertices(1..=m)
    }

    pub fn from_mask(mask: u64) -> Self {
        let mut s = Self::new();
        if mask != 0 {
            s.words.push(mask);
        }
        s
    }

    /// The single-word bitmask, if every vertex is at most 64.
    pub fn to_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v >= 1, "vertex labels are 1-based");
        let (w, b) = ((v - 1) / 64, (v - 1) % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << b;
    }

    pub fn remove(&mut self, v: usize) {
        if v == 0 {
            return;
        }
        let (w, b) = ((v - 1) / 64, (v - 1) % 64);
        if let Some(word) = self.words.get_mut(w) {
            *word &= !(1 << b);
        }
        self.trim();
    }

    pub fn with(&self, v: usize) -> Self {
        let mut s = self.clone();
        s.insert(v);
        s
    }

    pub fn without(&self, v: usize) -> Self {
        let mut s = self.clone();
        s.remove(v);
        s
    }

    pub fn contains(&self, v: usize) -> bool {
        if v == 0 {
            return false;
        }
        let (w, b) = ((v - 1) / 64, (v - 1) % 64);
        self.words.get(w).is_some_and(|word| word >> b & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Vertices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + b + 1)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn max_vertex(&self) -> Option<usize> {
        let w = self.words.len().checked_sub(1)?;
        Some(w * 64 + 64 - self.words[w].leading_zeros() as usize)
    }

    pub fn is_subset_of(&self, other: &FaceSet) -> bool {
        self.words.len() <= other.words.len()
            && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &FaceSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn union(&self, other: &FaceSet) -> FaceSet {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = long.clone();
        for (a, b) in out.words.iter_mut().zip(&short.words) {
            *a |= b;
        }
        out
    }

    pub fn intersection(&self, other: &FaceSet) -> FaceSet {
        let mut out = FaceSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        };
        out.trim();
        out
    }

    pub fn difference(&self, other: &FaceSet) -> FaceSet {
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        out.trim();
        out
    }

    /// Adds `offset` to every vertex label.
    pub fn shifted(&self, offset: usize) -> FaceSet {
        FaceSet::from_vertices(self.iter().map(|v| v + offset))
    }

    /// All subsets, the empty set included. Intended for small sets.
    pub fn subsets(&self) -> impl Iterator<Item = FaceSet> + '_ {
        let verts = self.to_vec();
        assert!(verts.len() < 64, "subset enumeration of a {}-set", verts.len());
        (0u64..1 << verts.len()).map(move |bits| {
            FaceSet::from_vertices(
                verts
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| bits >> k & 1 == 1)
                    .map(|(_, &v)| v),
            )
        })
    }
}

impl Ord for FaceSet {
    /// Lexicographic order on the ascending vertex lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for FaceSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for FaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromIterator<usize> for FaceSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        FaceSet::from_vertices(iter)
    }
}

impl Serialize for FaceSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for FaceSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let verts = Vec::<usize>::deserialize(deserializer)?;
        if verts.contains(&0) {
            return Err(serde::de::Error::custom("vertex labels are 1-based"));
        }
        Ok(FaceSet::from_vertices(verts))
    }
}

/// A complex together with the original labels of its vertices:
/// `vertices[k]` is the old label of new vertex `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeled {
    pub complex: SimplicialComplex,
    pub vertices: Vec<usize>,
}

/// A simplicial complex on `[m]` given by its facets.
///
/// Invariants: `m >= 1`, every vertex lies in some facet, facets form an
/// antichain and are kept in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    m: usize,
    facets: Vec<FaceSet>,
}

/// Keeps the inclusion-maximal sets, sorted lexicographically.
fn maximal_sets(mut sets: Vec<FaceSet>) -> Vec<FaceSet> {
    sets.sort_by_key(|s| std::cmp::Reverse(s.len()));
    let mut kept: Vec<FaceSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| s.is_subset_of(k)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

impl SimplicialComplex {
    pub fn new(m: usize, facets: Vec<FaceSet>) -> Result<Self> {
        if m == 0 || facets.is_empty() {
            return Err(Error::EmptyInput);
        }
        for f in &facets {
            if let Some(v) = f.max_vertex().filter(|&v| v > m) {
                return Err(Error::VertexOutOfRange { vertex: v, m });
            }
        }
        let covered = facets.iter().fold(FaceSet::new(), |acc, f| acc.union(f));
        if let Some(v) = (1..=m).find(|&v| !covered.contains(v)) {
            return Err(Error::GhostVertex(v));
        }
        Ok(Self {
            m,
            facets: maximal_sets(facets),
        })
    }

    /// Convenience constructor from vertex lists; panics on invalid input.
    pub fn from_lists(m: usize, facets: &[&[usize]]) -> Self {
        let facets = facets
            .iter()
            .map(|f| FaceSet::from_vertices(f.iter().copied()))
            .collect();
        Self::new(m, facets).expect("valid complex")
    }

    /// The full simplex on `[m]`.
    pub fn simplex(m: usize) -> Self {
        Self::new(m, vec![FaceSet::full(m)]).expect("m >= 1")
    }

    /// `n` isolated vertices.
    pub fn points(n: usize) -> Self {
        Self::new(n, (1..=n).map(|v| FaceSet::from_vertices([v])).collect()).expect("n >= 1")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertex_set(&self) -> FaceSet {
        FaceSet::full(self.m)
    }

    pub fn facets(&self) -> &[FaceSet] {
        &self.facets
    }

    /// Dimension of the largest facet.
    pub fn dimension(&self) -> usize {
        self.facets.iter().map(FaceSet::len).max().unwrap_or(1) - 1
    }

    pub fn is_face(&self, sigma: &FaceSet) -> bool {
        sigma.is_empty() || self.facets.iter().any(|f| sigma.is_subset_of(f))
    }

    /// Nonempty faces grouped by dimension, each group sorted lexicographically.
    pub fn faces_by_dimension(&self) -> Vec<Vec<FaceSet>> {
        let mut all = BTreeSet::new();
        for f in &self.facets {
            for s in f.subsets() {
                if !s.is_empty() {
                    all.insert(s);
                }
            }
        }
        let mut by_dim = vec![Vec::new(); self.dimension() + 1];
        for s in all {
            by_dim[s.len() - 1].push(s);
        }
        by_dim
    }

    /// `f_0, f_1, ...`: number of faces in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_dimension().iter().map(Vec::len).collect()
    }

    fn relabel(facets: impl IntoIterator<Item = FaceSet>, vertices: Vec<usize>) -> Relabeled {
        let top = vertices.iter().copied().max().unwrap_or(0);
        let mut new_label = vec![0usize; top + 1];
        for (k, &v) in vertices.iter().enumerate() {
            new_label[v] = k + 1;
        }
        let facets = facets
            .into_iter()
            .map(|f| f.iter().map(|v| new_label[v]).collect())
            .collect();
        let complex =
            SimplicialComplex::new(vertices.len(), facets).expect("relabeling preserves validity");
        Relabeled { complex, vertices }
    }

    /// The full subcomplex `K_I`: faces of `K` contained in `I`, relabeled
    /// onto `1..=|I|` in increasing order.
    pub fn full_subcomplex(&self, index_set: &FaceSet) -> Result<Relabeled> {
        if index_set.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        if let Some(v) = index_set.max_vertex().filter(|&v| v > self.m) {
            return Err(Error::VertexOutOfRange { vertex: v, m: self.m });
        }
        let restricted: Vec<FaceSet> = self
            .facets
            .iter()
            .map(|f| f.intersection(index_set))
            .filter(|f| !f.is_empty())
            .collect();
        Ok(Self::relabel(maximal_sets(restricted), index_set.to_vec()))
    }

    /// Join with `other`; the vertices of `other` are shifted by `self.m()`.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for a in &self.facets {
            for b in &other.facets {
                facets.push(a.union(&b.shifted(self.m)));
            }
        }
        SimplicialComplex::new(self.m + other.m, facets).expect("join of valid complexes")
    }

    /// Link of `v`, on the vertices it actually touches. `None` when the link
    /// is the empty complex (`v` is an isolated vertex).
    pub fn link(&self, v: usize) -> Result<Option<Relabeled>> {
        self.check_vertex(v)?;
        let parts: Vec<FaceSet> = self
            .facets
            .iter()
            .filter(|f| f.contains(v))
            .map(|f| f.without(v))
            .filter(|f| !f.is_empty())
            .collect();
        if parts.is_empty() {
            return Ok(None);
        }
        let support = parts.iter().fold(FaceSet::new(), |acc, f| acc.union(f));
        Ok(Some(Self::relabel(maximal_sets(parts), support.to_vec())))
    }

    /// Deletion of `v`, on `[m] \ {v}`. `None` when `v` was the only vertex.
    pub fn deletion(&self, v: usize) -> Result<Option<Relabeled>> {
        self.check_vertex(v)?;
        if self.m == 1 {
            return Ok(None);
        }
        let parts: Vec<FaceSet> = self
            .facets
            .iter()
            .map(|f| f.without(v))
            .filter(|f| !f.is_empty())
            .collect();
        let vertices = (1..=self.m).filter(|&u| u != v).collect();
        Ok(Some(Self::relabel(maximal_sets(parts), vertices)))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.m {
            return Err(Error::VertexOutOfRange { vertex: v, m: self.m });
        }
        Ok(())
    }

    /// Minimal non-faces, in lexicographic order.
    ///
    /// Every minimal non-face `M` is `sigma + max(M)` for the face
    /// `sigma = M \ max(M)`, so it suffices to extend faces by larger vertices.
    pub fn minimal_nonfaces(&self) -> Vec<FaceSet> {
        let faces: HashSet<FaceSet> = self.faces_by_dimension().into_iter().flatten().collect();
        let mut out = Vec::new();
        for sigma in &faces {
            let top = sigma.max_vertex().expect("nonempty face");
            for v in top + 1..=self.m {
                let candidate = sigma.with(v);
                if faces.contains(&candidate) {
                    continue;
                }
                if candidate.iter().all(|u| faces.contains(&candidate.without(u))) {
                    out.push(candidate);
                }
            }
        }
        out.sort();
        out
    }

    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1 && self.facets[0].len() == self.m
    }

    /// Every minimal non-face has exactly two vertices.
    pub fn is_flag(&self) -> bool {
        self.minimal_nonfaces().iter().all(|mnf| mnf.len() == 2)
    }

    pub fn nonfaces_mutually_disjoint(&self) -> bool {
        let mnf = self.minimal_nonfaces();
        mnf.iter()
            .enumerate()
            .all(|(k, a)| mnf[k + 1..].iter().all(|b| a.is_disjoint(b)))
    }

    /// When the minimal non-faces `M_1, ..., M_r` are pairwise disjoint, returns
    /// them together with the leftover vertices `V_0`, after checking that
    /// `K` is the join of the boundaries of the `M_j` and the simplex on `V_0`.
    pub fn disjoint_nonface_decomposition(&self) -> Result<Option<NonfaceDecomposition>> {
        if !self.nonfaces_mutually_disjoint() {
            return Ok(None);
        }
        let parts = self.minimal_nonfaces();
        let covered = parts.iter().fold(FaceSet::new(), |acc, p| acc.union(p));
        let decomposition = NonfaceDecomposition {
            leftover: self.vertex_set().difference(&covered),
            parts,
        };
        let expected: usize = decomposition.parts.iter().map(FaceSet::len).product();
        if expected != self.facets.len() || decomposition.reconstruct(self.m)? != *self {
            return Err(Error::DecompositionMismatch);
        }
        Ok(Some(decomposition))
    }

    /// Connected components as relabeled complexes, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Relabeled> {
        let mut parent: Vec<usize> = (0..=self.m).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut c = x;
            while parent[c] != r {
                let next = parent[c];
                parent[c] = r;
                c = next;
            }
            r
        }
        for f in &self.facets {
            let mut it = f.iter();
            if let Some(first) = it.next() {
                for v in it {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, v));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: Vec<(usize, FaceSet)> = Vec::new();
        for v in 1..=self.m {
            let root = find(&mut parent, v);
            match groups.iter_mut().find(|(r, _)| *r == root) {
                Some((_, set)) => set.insert(v),
                None => groups.push((root, FaceSet::from_vertices([v]))),
            }
        }
        groups
            .into_iter()
            .map(|(_, set)| self.full_subcomplex(&set).expect("nonempty component"))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }
}

/// Boundary of the simplex on `s`, relabeled onto `1..=|s|` in increasing order.
pub fn boundary_simplex(s: &FaceSet) -> Result<SimplicialComplex> {
    let k = s.len();
    if k < 2 {
        return Err(Error::TooSmall(k));
    }
    let full = FaceSet::full(k);
    SimplicialComplex::new(k, (1..=k).map(|v| full.without(v)).collect())
}

/// `K = ∂Δ^{M_1} * ... * ∂Δ^{M_r} * Δ^{V_0}` for pairwise disjoint minimal
/// non-faces `M_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonfaceDecomposition {
    pub parts: Vec<FaceSet>,
    pub leftover: FaceSet,
}

impl NonfaceDecomposition {
    /// Builds the join on `[m]` without relabeling: facets are the unions of
    /// `M_j \ {x_j}` over all choices `x_j in M_j`, plus `V_0`.
    pub fn reconstruct(&self, m: usize) -> Result<SimplicialComplex> {
        let mut facets = vec![self.leftover.clone()];
        for part in &self.parts {
            let mut next = Vec::with_capacity(facets.len() * part.len());
            for partial in &facets {
                for x in part.iter() {
                    next.push(partial.union(&part.without(x)));
                }
            }
            facets = next;
        }
        SimplicialComplex::new(m, facets)
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K(m={}; ", self.m)?;
        for (k, facet) in self.facets.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{facet}")?;
        }
        f.write_str(")")
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    m: usize,
    facets: Vec<FaceSet>,
}

impl Serialize for SimplicialComplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ComplexJson {
            m: self.m,
            facets: self.facets.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = ComplexJson::deserialize(deserializer)?;
        SimplicialComplex::new(raw.m, raw.facets).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(v: &[usize]) -> FaceSet {
        FaceSet::from_vertices(v.iter().copied())
    }

    fn cycle4() -> SimplicialComplex {
        SimplicialComplex::from_lists(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]])
    }

    fn triangle_boundary() -> SimplicialComplex {
        SimplicialComplex::from_lists(3, &[&[1, 2], &[2, 3], &[1, 3]])
    }

    #[test]
    fn faceset_basics() {
        let s = fs(&[3, 1, 70]);
        assert_eq!(s.to_vec(), vec![1, 3, 70]);
        assert_eq!(s.len(), 3);
        assert_eq!(s.max_vertex(), Some(70));
        assert!(s.to_mask().is_none());
        assert_eq!(s.without(70).to_mask(), Some(0b101));
        assert!(fs(&[1, 3]).is_subset_of(&s));
        assert!(!s.is_subset_of(&fs(&[1, 3])));
        assert!(fs(&[2]).is_disjoint(&s));
        assert_eq!(s.to_string(), "{1,3,70}");
        assert!(fs(&[1, 2]) < fs(&[1, 2, 3]));
        assert!(fs(&[1, 2, 3]) < fs(&[1, 3]));
        assert_eq!(FaceSet::new().max_vertex(), None);
    }

    #[test]
    fn new_complex_examples() {
        let k = triangle_boundary();
        assert_eq!(k.facets().len(), 3);
        assert_eq!(SimplicialComplex::points(2).facets(), &[fs(&[1]), fs(&[2])]);
        let reduced = SimplicialComplex::from_lists(3, &[&[1, 2], &[1, 2, 3]]);
        assert_eq!(reduced.facets(), &[fs(&[1, 2, 3])]);
    }

    #[test]
    fn new_complex_errors() {
        assert_eq!(
            SimplicialComplex::new(3, vec![fs(&[1, 2])]),
            Err(Error::GhostVertex(3))
        );
        assert_eq!(SimplicialComplex::new(2, vec![]), Err(Error::EmptyInput));
        assert_eq!(SimplicialComplex::new(0, vec![fs(&[])]), Err(Error::EmptyInput));
        assert_eq!(
            SimplicialComplex::new(2, vec![fs(&[1, 5])]),
            Err(Error::VertexOutOfRange { vertex: 5, m: 2 })
        );
    }

    #[test]
    fn is_face_examples() {
        let k = triangle_boundary();
        assert!(k.is_face(&fs(&[1, 2])));
        assert!(!k.is_face(&fs(&[1, 2, 3])));
        assert!(k.is_face(&FaceSet::new()));
    }

    #[test]
    fn full_subcomplex_examples() {
        let k = triangle_boundary();
        let sub = k.full_subcomplex(&fs(&[1, 2])).unwrap();
        assert_eq!(sub.complex, SimplicialComplex::simplex(2));
        assert_eq!(sub.vertices, vec![1, 2]);

        let sub = cycle4().full_subcomplex(&fs(&[1, 3])).unwrap();
        assert_eq!(sub.complex, SimplicialComplex::points(2));
        assert_eq!(sub.vertices, vec![1, 3]);

        assert_eq!(k.full_subcomplex(&FaceSet::new()), Err(Error::EmptyIndexSet));
    }

    #[test]
    fn join_examples() {
        let pt = SimplicialComplex::simplex(1);
        assert_eq!(pt.join(&pt), SimplicialComplex::simplex(2));
        let s0 = SimplicialComplex::points(2);
        // vertices 1,2 | 3,4: the square 1-3-2-4
        let sq = s0.join(&s0);
        assert_eq!(sq, SimplicialComplex::from_lists(4, &[&[1, 3], &[1, 4], &[2, 3], &[2, 4]]));
        assert_eq!(sq.minimal_nonfaces(), vec![fs(&[1, 2]), fs(&[3, 4])]);
    }

    #[test]
    fn link_and_deletion_examples() {
        let k = triangle_boundary();
        let link = k.link(1).unwrap().unwrap();
        assert_eq!(link.complex, SimplicialComplex::points(2));
        assert_eq!(link.vertices, vec![2, 3]);
        let del = k.deletion(1).unwrap().unwrap();
        assert_eq!(del.complex, SimplicialComplex::simplex(2));
        assert_eq!(del.vertices, vec![2, 3]);

        let c = cycle4();
        let link = c.link(1).unwrap().unwrap();
        assert_eq!(link.complex, SimplicialComplex::points(2));
        assert_eq!(link.vertices, vec![2, 4]);
        let del = c.deletion(1).unwrap().unwrap();
        assert_eq!(del.complex, SimplicialComplex::from_lists(3, &[&[1, 2], &[2, 3]]));
        assert_eq!(del.vertices, vec![2, 3, 4]);

        let s = SimplicialComplex::simplex(4);
        assert_eq!(s.link(2).unwrap().unwrap().complex, SimplicialComplex::simplex(3));
        assert_eq!(s.deletion(2).unwrap().unwrap().complex, SimplicialComplex::simplex(3));

        let isolated = SimplicialComplex::points(2);
        assert!(isolated.link(1).unwrap().is_none());
        assert!(SimplicialComplex::simplex(1).deletion(1).unwrap().is_none());
        assert!(k.link(4).is_err());
    }

    #[test]
    fn minimal_nonface_examples() {
        assert_eq!(triangle_boundary().minimal_nonfaces(), vec![fs(&[1, 2, 3])]);
        assert_eq!(cycle4().minimal_nonfaces(), vec![fs(&[1, 3]), fs(&[2, 4])]);
        assert!(SimplicialComplex::simplex(5).minimal_nonfaces().is_empty());
    }

    #[test]
    fn predicate_examples() {
        assert!(SimplicialComplex::simplex(3).is_simplex());
        assert!(!triangle_boundary().is_simplex());
        assert!(SimplicialComplex::simplex(1).is_simplex());

        assert!(cycle4().is_flag());
        assert!(!triangle_boundary().is_flag());
        assert!(SimplicialComplex::simplex(4).is_flag());

        assert!(cycle4().nonfaces_mutually_disjoint());
        let path = SimplicialComplex::from_lists(3, &[&[1, 2], &[2, 3]]);
        assert_eq!(path.minimal_nonfaces(), vec![fs(&[1, 3])]);
        assert!(path.nonfaces_mutually_disjoint());
        let edge_plus_point = SimplicialComplex::from_lists(3, &[&[1, 2], &[3]]);
        assert_eq!(edge_plus_point.minimal_nonfaces(), vec![fs(&[1, 3]), fs(&[2, 3])]);
        assert!(!edge_plus_point.nonfaces_mutually_disjoint());
    }

    #[test]
    fn boundary_simplex_examples() {
        assert_eq!(boundary_simplex(&fs(&[1, 2])).unwrap(), SimplicialComplex::points(2));
        assert_eq!(boundary_simplex(&fs(&[1, 2, 3])).unwrap(), triangle_boundary());
        assert_eq!(boundary_simplex(&fs(&[4, 9])).unwrap(), SimplicialComplex::points(2));
        assert_eq!(boundary_simplex(&fs(&[2])), Err(Error::TooSmall(1)));
    }

    #[test]
    fn decomposition_examples() {
        let d = cycle4().disjoint_nonface_decomposition().unwrap().unwrap();
        assert_eq!(d.parts, vec![fs(&[1, 3]), fs(&[2, 4])]);
        assert!(d.leftover.is_empty());

        let d = SimplicialComplex::simplex(3).disjoint_nonface_decomposition().unwrap().unwrap();
        assert!(d.parts.is_empty());
        assert_eq!(d.leftover, fs(&[1, 2, 3]));

        let path = SimplicialComplex::from_lists(3, &[&[1, 2], &[2, 3]]);
        let d = path.disjoint_nonface_decomposition().unwrap().unwrap();
        assert_eq!(d.parts, vec![fs(&[1, 3])]);
        assert_eq!(d.leftover, fs(&[2]));

        let bad = SimplicialComplex::from_lists(3, &[&[1, 2], &[3]]);
        assert_eq!(bad.disjoint_nonface_decomposition().unwrap(), None);
    }

    #[test]
    fn components() {
        let k = SimplicialComplex::from_lists(5, &[&[1, 3], &[2], &[3, 5], &[4]]);
        let comps = k.connected_components();
        let verts: Vec<_> = comps.iter().map(|c| c.vertices.clone()).collect();
        assert_eq!(verts, vec![vec![1, 3, 5], vec![2], vec![4]]);
        assert!(cycle4().is_connected());
    }

    #[test]
    fn json_shape() {
        let json = serde_json::to_string(&cycle4()).unwrap();
        assert_eq!(json, r#"{"m":4,"facets":[[1,2],[1,4],[2,3],[3,4]]}"#);
        let back: SimplicialComplex = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cycle4());
        assert!(serde_json::from_str::<SimplicialComplex>(r#"{"m":3,"facets":[[1,2]]}"#).is_err());
    }
}
