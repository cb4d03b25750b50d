#![allow(dead_code)]

use std::collections::BTreeSet;

use polyprod::graph_products::{flag_complex, SimpleGraph};
use polyprod::simplicial::{boundary_simplex, FaceSet, SimplicialComplex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 0x5eed_c0de;
pub const CORPUS_SIZE: usize = 500;

fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..m).collect();
    fn go(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == perm.len() {
            out.push(perm.clone());
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            go(k + 1, perm, out);
            perm.swap(k, i);
        }
    }
    go(0, &mut perm, &mut out);
    out
}

fn permute_mask(mask: u64, perm: &[usize]) -> u64 {
    perm.iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .fold(0, |acc, (_, &j)| acc | 1 << j)
}

/// One representative of every isomorphism class of complexes on exactly
/// `[m]` (every vertex a face).
pub fn complexes_up_to_iso(m: usize) -> Vec<SimplicialComplex> {
    let perms = permutations(m);
    let sets: Vec<u64> = (1u64..1 << m).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for family in 0u64..1 << sets.len() {
        let faces: Vec<u64> = sets
            .iter()
            .enumerate()
            .filter(|(i, _)| family >> i & 1 == 1)
            .map(|(_, &s)| s)
            .collect();
        let closed = faces.iter().all(|&f| {
            (0..m).filter(|i| f >> i & 1 == 1 && f != 1 << i).all(|i| faces.contains(&(f & !(1 << i))))
        });
        let covers = (0..m).all(|i| faces.contains(&(1 << i)));
        if !closed || !covers {
            continue;
        }
        let canonical = perms
            .iter()
            .map(|p| {
                let mut v: Vec<u64> = faces.iter().map(|&f| permute_mask(f, p)).collect();
                v.sort_unstable();
                v
            })
            .min()
            .expect("at least one permutation");
        if seen.insert(canonical) {
            let facets = faces.iter().map(|&f| FaceSet::from_mask(f)).collect();
            out.push(SimplicialComplex::new(m, facets).expect("vertices are covered"));
        }
    }
    out
}

pub fn random_subset(rng: &mut impl Rng, m: usize) -> FaceSet {
    FaceSet::from_mask(rng.gen_range(1..1u64 << m))
}

/// Random facets, with isolated vertices added where needed.
pub fn random_complex(rng: &mut impl Rng, m: usize) -> SimplicialComplex {
    let count = rng.gen_range(1..=m + 1);
    let mut facets: Vec<FaceSet> = (0..count).map(|_| random_subset(rng, m)).collect();
    let covered = facets.iter().fold(FaceSet::new(), |a, f| a.union(f));
    facets.extend((1..=m).filter(|&v| !covered.contains(v)).map(|v| FaceSet::from_vertices([v])));
    SimplicialComplex::new(m, facets).expect("vertices are covered")
}

pub fn random_graph(rng: &mut impl Rng, m: usize) -> SimpleGraph {
    let edges: Vec<(usize, usize)> = (1..=m)
        .flat_map(|a| (a + 1..=m).map(move |b| (a, b)))
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    SimpleGraph::new(m, edges).expect("valid edges")
}

/// A join of simplex boundaries and a simplex, on shuffled labels.
pub fn random_join_of_boundaries(rng: &mut impl Rng, m: usize) -> SimplicialComplex {
    let mut labels: Vec<usize> = (1..=m).collect();
    labels.shuffle(rng);
    let mut facets = vec![FaceSet::new()];
    let mut rest = &labels[..];
    while rest.len() >= 2 && rng.gen_bool(0.7) {
        let size = rng.gen_range(2..=rest.len());
        let bd = boundary_simplex(&FaceSet::full(size)).expect("size >= 2");
        let relabel = |f: &FaceSet| FaceSet::from_vertices(f.iter().map(|v| rest[v - 1]));
        facets = facets
            .iter()
            .flat_map(|a| bd.facets().iter().map(move |b| a.union(&relabel(b))))
            .collect();
        rest = &rest[size..];
    }
    let leftover = FaceSet::from_vertices(rest.iter().copied());
    let facets = facets.into_iter().map(|f| f.union(&leftover)).collect();
    SimplicialComplex::new(m, facets).expect("vertices are covered")
}

/// The fixed corpus of 500 complexes on at most 6 vertices: random facet
/// families, flag complexes of random graphs, and joins of boundaries.
pub fn corpus() -> Vec<SimplicialComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..CORPUS_SIZE)
        .map(|i| {
            let m = rng.gen_range(1..=6);
            match i % 3 {
                0 => random_complex(&mut rng, m),
                1 => flag_complex(&random_graph(&mut rng, m)),
                _ => random_join_of_boundaries(&mut rng, m),
            }
        })
        .collect()
}

/// Definitional brute force over bitmasks.
pub struct BruteForce {
    pub m: usize,
    faces: Vec<bool>,
}

impl BruteForce {
    pub fn new(k: &SimplicialComplex) -> Self {
        let m = k.m();
        let faces = (0u64..1 << m).map(|s| k.is_face(&FaceSet::from_mask(s))).collect();
        Self { m, faces }
    }

    pub fn is_face(&self, s: u64) -> bool {
        self.faces[s as usize]
    }

    pub fn minimal_nonfaces(&self) -> Vec<FaceSet> {
        let mut out: Vec<FaceSet> = (1u64..1 << self.m)
            .filter(|&s| s.count_ones() >= 2 && !self.is_face(s))
            .filter(|&s| (0..self.m).filter(|i| s >> i & 1 == 1).all(|i| self.is_face(s & !(1 << i))))
            .map(FaceSet::from_mask)
            .collect();
        out.sort();
        out
    }

    /// Every non-face contains a non-face edge.
    pub fn is_flag(&self) -> bool {
        (1u64..1 << self.m).filter(|&s| !self.is_face(s)).all(|s| {
            (0..self.m).any(|i| {
                (i + 1..self.m).any(|j| s >> i & 1 == 1 && s >> j & 1 == 1 && !self.is_face(1 << i | 1 << j))
            })
        })
    }

    pub fn nonfaces_mutually_disjoint(&self) -> bool {
        let masks: Vec<u64> = self.minimal_nonfaces().iter().map(|f| f.to_mask().unwrap()).collect();
        masks.iter().enumerate().all(|(i, a)| masks[i + 1..].iter().all(|b| a & b == 0))
    }
}
