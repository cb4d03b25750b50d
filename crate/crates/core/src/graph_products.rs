//! Graph products of groups and the homology of their kernels.
//!
//! The kernel `K_Γ(G)` of `G^Γ -> ∏ G_i` has classifying space
//! `Z_{Fl(Γ)}(CG, G)` with each `G_i` a discrete set, so its homology depends
//! on the cardinalities `|G_i|` alone.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abelian::{Coefficients, GradedGroup};
use crate::bbcg::zk_homology;
use crate::error::{Error, Result};
use crate::homology::SpaceDescriptor;
use crate::poly_product::oracle_homology;
use crate::simplicial::{FaceSet, SimplicialComplex};

/// A loopless graph on `[m]` without multiple edges; edges are stored as
/// `(i, j)` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SimpleGraph {
    m: usize,
    edges: BTreeSet<(usize, usize)>,
}

#[derive(Deserialize)]
struct GraphJson {
    m: usize,
    edges: Vec<(usize, usize)>,
}

impl<'de> Deserialize<'de> for SimpleGraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = GraphJson::deserialize(deserializer)?;
        SimpleGraph::new(raw.m, raw.edges).map_err(serde::de::Error::custom)
    }
}

impl SimpleGraph {
    pub fn new(m: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidGraph("a graph needs at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            for v in [a, b] {
                if v == 0 || v > m {
                    return Err(Error::InvalidGraph(format!("edge endpoint {v} outside [1, {m}]")));
                }
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidGraph(format!("repeated edge {{{a},{b}}}")));
            }
        }
        Ok(Self { m, edges: set })
    }

    pub fn edgeless(m: usize) -> Self {
        Self::new(m, []).expect("m >= 1")
    }

    pub fn complete(m: usize) -> Self {
        Self::new(m, (1..=m).flat_map(|a| (a + 1..=m).map(move |b| (a, b)))).expect("valid")
    }

    pub fn path(m: usize) -> Self {
        Self::new(m, (1..m).map(|a| (a, a + 1))).expect("valid")
    }

    pub fn cycle(m: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::InvalidGraph(format!("a cycle needs at least 3 vertices, got {m}")));
        }
        Self::new(m, (1..=m).map(|a| (a, a % m + 1)))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbours(&self, v: usize) -> FaceSet {
        (1..=self.m).filter(|&u| u != v && self.has_edge(u, v)).collect()
    }
}

/// `Fl(Γ)`: the simplicial complex of cliques, from its maximal cliques.
pub fn flag_complex(g: &SimpleGraph) -> SimplicialComplex {
    let neighbours: Vec<FaceSet> = (0..=g.m).map(|v| if v == 0 { FaceSet::new() } else { g.neighbours(v) }).collect();
    let mut cliques = Vec::new();
    bron_kerbosch(&neighbours, FaceSet::new(), FaceSet::full(g.m), FaceSet::new(), &mut cliques);
    SimplicialComplex::new(g.m, cliques).expect("every vertex lies in a maximal clique")
}

fn bron_kerbosch(n: &[FaceSet], r: FaceSet, mut p: FaceSet, mut x: FaceSet, out: &mut Vec<FaceSet>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    let pivot = p
        .union(&x)
        .iter()
        .max_by_key(|&u| p.intersection(&n[u]).len())
        .expect("p is nonempty");
    for v in p.difference(&n[pivot]).to_vec() {
        bron_kerbosch(n, r.with(v), p.intersection(&n[v]), x.intersection(&n[v]), out);
        p.remove(v);
        x.insert(v);
    }
}

/// Size of a set, possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cardinality {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "{n}"),
            Cardinality::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Cardinality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinite" => Ok(Cardinality::Infinite),
            t => match t.parse::<u64>() {
                Ok(0) => Err(Error::InvalidGroup("a group has at least one element".into())),
                Ok(n) => Ok(Cardinality::Finite(n)),
                Err(_) => Err(Error::Parse(format!("bad cardinality '{t}' (expected a positive integer or inf)"))),
            },
        }
    }
}

impl Serialize for Cardinality {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Cardinality::Finite(n) => serializer.serialize_u64(*n),
            Cardinality::Infinite => serializer.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for Cardinality {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(n) => n.to_string().parse(),
            Raw::Text(s) => s.parse(),
        }
        .map_err(serde::de::Error::custom)
    }
}

/// Multiplication table of a finite group on `0..order`, with `0` the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GroupTable {
    order: usize,
    table: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct TableJson {
    order: usize,
    table: Vec<Vec<usize>>,
}

impl<'de> Deserialize<'de> for GroupTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = TableJson::deserialize(deserializer)?;
        GroupTable::new(raw.order, raw.table).map_err(serde::de::Error::custom)
    }
}

impl GroupTable {
    /// Checks shape, identity, inverses and associativity.
    pub fn new(order: usize, table: Vec<Vec<usize>>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidGroup(msg));
        if order == 0 {
            return bad("order must be at least 1".into());
        }
        if table.len() != order || table.iter().any(|row| row.len() != order) {
            return bad(format!("table must be {order}x{order}"));
        }
        if let Some(x) = table.iter().flatten().find(|&&x| x >= order) {
            return bad(format!("entry {x} is not an element of 0..{order}"));
        }
        #[allow(clippy::needless_range_loop)]
        for a in 0..order {
            if table[0][a] != a || table[a][0] != a {
                return bad(format!("0 is not an identity: 0*{a} or {a}*0 differs from {a}"));
            }
            if !(0..order).any(|b| table[a][b] == 0 && table[b][a] == 0) {
                return bad(format!("element {a} has no inverse"));
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(format!("({a}*{b})*{c} differs from {a}*({b}*{c})"));
                    }
                }
            }
        }
        Ok(Self { order, table })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(n, table).expect("cyclic group")
    }

    /// Direct product; `(a, b)` is encoded as `a * other.order + b`.
    pub fn product(&self, other: &GroupTable) -> Self {
        let n = other.order;
        let order = self.order * n;
        let table = (0..order)
            .map(|x| {
                (0..order)
                    .map(|y| self.mul(x / n, y / n) * n + other.mul(x % n, y % n))
                    .collect()
            })
            .collect();
        Self::new(order, table).expect("product of groups")
    }

    /// Builds the table of a group of permutations or matrices closed under
    /// `op`, listing `identity` first.
    fn from_elements<T: PartialEq + Clone>(elements: Vec<T>, op: impl Fn(&T, &T) -> T) -> Self {
        let n = elements.len();
        let index = |x: &T| elements.iter().position(|e| e == x).expect("closed under the operation");
        let table = (0..n)
            .map(|a| (0..n).map(|b| index(&op(&elements[a], &elements[b]))).collect())
            .collect();
        Self::new(n, table).expect("valid group")
    }

    /// Symmetric group on three letters.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        Self::from_elements(perms, |p, q| [p[q[0]], p[q[1]], p[q[2]]])
    }

    /// Dihedral group of order 8, as symmetries of a square.
    pub fn dihedral4() -> Self {
        let r = [1, 2, 3, 0];
        let s = [0, 3, 2, 1];
        let compose = |p: &[usize; 4], q: &[usize; 4]| [p[q[0]], p[q[1]], p[q[2]], p[q[3]]];
        let mut elements = vec![[0, 1, 2, 3]];
        let mut frontier = elements.clone();
        while let Some(x) = frontier.pop() {
            for g in [r, s] {
                let y = compose(&x, &g);
                if !elements.contains(&y) {
                    elements.push(y);
                    frontier.push(y);
                }
            }
        }
        Self::from_elements(elements, compose)
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}`.
    pub fn quaternion() -> Self {
        // (sign, unit) with unit 0 = 1, 1 = i, 2 = j, 3 = k
        let units = [[(1, 0), (1, 1), (1, 2), (1, 3)], [(1, 1), (-1, 0), (1, 3), (-1, 2)], [(1, 2), (-1, 3), (-1, 0), (1, 1)], [(1, 3), (1, 2), (-1, 1), (-1, 0)]];
        let elements: Vec<(i8, usize)> = [1i8, -1].iter().flat_map(|&s| (0..4).map(move |u| (s, u))).collect();
        Self::from_elements(elements, |a, b| {
            let (s, u) = units[a.1][b.1];
            (a.0 * b.0 * s, u)
        })
    }

    /// `Z<n>`, `Z2xZ2`, `Z2xZ4`, `Z2xZ2xZ2`, `S3`, `D4`, `Q8` (case-insensitive).
    pub fn named(name: &str) -> Result<Self> {
        let lower = name.trim().to_ascii_lowercase();
        let factors: Vec<&str> = lower.split('x').collect();
        if factors.iter().all(|f| f.strip_prefix('z').is_some_and(|n| n.parse::<usize>().is_ok_and(|n| n >= 1))) {
            let mut g = GroupTable::cyclic(1);
            for f in factors {
                g = g.product(&GroupTable::cyclic(f[1..].parse().expect("checked")));
            }
            return Ok(g);
        }
        match lower.as_str() {
            "s3" | "d3" => Ok(Self::symmetric3()),
            "d4" | "d8" => Ok(Self::dihedral4()),
            "q8" => Ok(Self::quaternion()),
            _ => Err(Error::Parse(format!(
                "unknown group '{name}' (expected Z<n>, products like Z2xZ4, S3, D4 or Q8)"
            ))),
        }
    }

    /// One table for each isomorphism class of groups of order at most 8.
    pub fn all_up_to_order_8() -> Vec<(String, GroupTable)> {
        let names = [
            "Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3", "Z7", "Z8", "Z2xZ4", "Z2xZ2xZ2", "D4", "Q8",
        ];
        names
            .iter()
            .map(|n| (n.to_string(), GroupTable::named(n).expect("known name")))
            .collect()
    }
}

/// A vertex group: either a multiplication table or only its cardinality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Table(GroupTable),
    Cardinality { cardinality: Cardinality },
}

impl GroupSpec {
    pub fn cardinality(&self) -> Cardinality {
        match self {
            GroupSpec::Table(t) => Cardinality::Finite(t.order() as u64),
            GroupSpec::Cardinality { cardinality } => *cardinality,
        }
    }
}

/// A letter `generator^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub exponent: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    /// Words in the generators (indices into `generators`), freely reduced.
    pub relators: Vec<Vec<Letter>>,
}

fn word(letters: impl IntoIterator<Item = (usize, i64)>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for (generator, exponent) in letters {
        match out.last_mut() {
            Some(last) if last.generator == generator => {
                last.exponent += exponent;
                if last.exponent == 0 {
                    out.pop();
                }
            }
            _ => out.push(Letter { generator, exponent }),
        }
    }
    out
}

impl Presentation {
    fn format_word(&self, w: &[Letter]) -> String {
        if let [a, b, c, d] = w {
            if a.exponent == 1 && b.exponent == 1 && c.exponent == -1 && d.exponent == -1
                && a.generator == c.generator && b.generator == d.generator
            {
                return format!("[{},{}]", self.generators[a.generator], self.generators[b.generator]);
            }
        }
        let parts: Vec<String> = w
            .iter()
            .map(|l| match l.exponent {
                1 => self.generators[l.generator].clone(),
                e => format!("{}^{e}", self.generators[l.generator]),
            })
            .collect();
        parts.join(" ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|w| self.format_word(w)).collect();
        write!(f, "⟨{} | {}⟩", self.generators.join(", "), rels.join(", "))
    }
}

fn tables(groups: &[GroupSpec]) -> Result<Vec<&GroupTable>> {
    groups
        .iter()
        .enumerate()
        .map(|(i, g)| match g {
            GroupSpec::Table(t) => Ok(t),
            GroupSpec::Cardinality { cardinality: Cardinality::Infinite } => Err(Error::InfiniteGroup(i + 1)),
            GroupSpec::Cardinality { .. } => Err(Error::TableRequired(i + 1)),
        })
        .collect()
}

/// Multiplication-table presentation of `G^Γ`: a generator `g<i>_<a>` for
/// each non-identity `a` in `G_i`, the relators `g_a g_b = g_(ab)` of each
/// table, and commutators of generators over every edge.
pub fn graph_product_presentation(g: &SimpleGraph, groups: &[GroupSpec]) -> Result<Presentation> {
    if groups.len() != g.m() {
        return Err(Error::LengthMismatch {
            expected: g.m(),
            actual: groups.len(),
        });
    }
    let tables = tables(groups)?;
    let mut generators = Vec::new();
    let mut first = Vec::with_capacity(tables.len());
    for (i, t) in tables.iter().enumerate() {
        first.push(generators.len());
        generators.extend((1..t.order()).map(|a| format!("g{}_{a}", i + 1)));
    }
    let gen = |i: usize, a: usize| first[i] + a - 1;
    let mut relators = Vec::new();
    for (i, t) in tables.iter().enumerate() {
        for a in 1..t.order() {
            for b in 1..t.order() {
                let ab = t.mul(a, b);
                let mut letters = vec![(gen(i, a), 1), (gen(i, b), 1)];
                if ab != 0 {
                    letters.push((gen(i, ab), -1));
                }
                relators.push(word(letters));
            }
        }
    }
    for (i, j) in g.edges() {
        let (ti, tj) = (tables[i - 1], tables[j - 1]);
        for a in 1..ti.order() {
            for b in 1..tj.order() {
                let (x, y) = (gen(i - 1, a), gen(j - 1, b));
                relators.push(word([(x, 1), (y, 1), (x, -1), (y, -1)]));
            }
        }
    }
    Ok(Presentation { generators, relators })
}

fn finite_cards(cards: &[Cardinality]) -> Result<Vec<usize>> {
    cards
        .iter()
        .enumerate()
        .map(|(i, c)| match c {
            Cardinality::Finite(n) => Ok(*n as usize),
            Cardinality::Infinite => Err(Error::InfiniteCardinality(i + 1)),
        })
        .collect()
}

fn discrete_spaces(cards: &[usize]) -> Vec<SpaceDescriptor> {
    cards.iter().map(|&n| SpaceDescriptor::points(n)).collect()
}

/// Reduced homology of `B K_Γ(G)` for groups of the given sizes.
pub fn kernel_homology(g: &SimpleGraph, cards: &[Cardinality], c: Coefficients) -> Result<GradedGroup> {
    if cards.len() != g.m() {
        return Err(Error::LengthMismatch {
            expected: g.m(),
            actual: cards.len(),
        });
    }
    let sizes = finite_cards(cards)?;
    Ok(zk_homology(&flag_complex(g), &discrete_spaces(&sizes), c)?.total)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub cards_a: Vec<Cardinality>,
    pub cards_b: Vec<Cardinality>,
    /// Per-vertex equality of cardinalities.
    pub cards_match: bool,
    /// Cellular-model homology built from the element sets of each family.
    pub oracle_a: GradedGroup,
    pub oracle_b: GradedGroup,
    pub oracle_agrees: bool,
}

/// Compares two families vertex by vertex. The oracle models are built from
/// the underlying sets of the groups; no multiplication is consulted.
pub fn verify_cardinality_invariance(
    g: &SimpleGraph,
    groups_a: &[GroupSpec],
    groups_b: &[GroupSpec],
) -> Result<(bool, InvarianceReport)> {
    for groups in [groups_a, groups_b] {
        if groups.len() != g.m() {
            return Err(Error::LengthMismatch {
                expected: g.m(),
                actual: groups.len(),
            });
        }
    }
    let cards_a: Vec<Cardinality> = groups_a.iter().map(GroupSpec::cardinality).collect();
    let cards_b: Vec<Cardinality> = groups_b.iter().map(GroupSpec::cardinality).collect();
    let k = flag_complex(g);
    let oracle_a = oracle_homology(&k, &discrete_spaces(&finite_cards(&cards_a)?), Coefficients::Integers)?;
    let oracle_b = oracle_homology(&k, &discrete_spaces(&finite_cards(&cards_b)?), Coefficients::Integers)?;
    let cards_match = cards_a == cards_b;
    let report = InvarianceReport {
        oracle_agrees: oracle_a == oracle_b,
        cards_a,
        cards_b,
        cards_match,
        oracle_a,
        oracle_b,
    };
    Ok((cards_match, report))
}
