//! Chain complexes, simplicial homology, and pointed-space descriptors.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abelian::{
    is_prime, rank, rank_mod_p, smith_normal_form, Coefficients, FgAbelianGroup, GradedGroup,
    IntMatrix,
};
use crate::error::{Error, Result};
use crate::simplicial::{FaceSet, SimplicialComplex};

/// A bounded chain complex of free abelian groups `C_0, ..., C_top`.
///
/// `boundaries[n]` is `d_n: C_n -> C_{n-1}` for `n >= 1`; `boundaries[0]` is
/// the augmentation `C_0 -> Z` when the complex is augmented, and the map to
/// the zero group otherwise.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
    augmented: bool,
}

impl ChainComplex {
    /// Checks shapes and `d d = 0` (the augmentation included).
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntMatrix>, augmented: bool) -> Result<Self> {
        if boundaries.len() != ranks.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} chain groups but {} boundary maps",
                ranks.len(),
                boundaries.len()
            )));
        }
        for (n, d) in boundaries.iter().enumerate() {
            let target = match n {
                0 => usize::from(augmented),
                _ => ranks[n - 1],
            };
            if d.cols() != ranks[n] || d.rows() != target {
                return Err(Error::DimensionMismatch(format!(
                    "boundary {n} is {}x{}, expected {target}x{}",
                    d.rows(),
                    d.cols(),
                    ranks[n]
                )));
            }
        }
        for n in 1..boundaries.len() {
            if !boundaries[n - 1].mul(&boundaries[n])?.is_zero() {
                return Err(Error::NotAComplex);
            }
        }
        Ok(Self {
            ranks,
            boundaries,
            augmented,
        })
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn boundary(&self, n: usize) -> &IntMatrix {
        &self.boundaries[n]
    }

    pub fn is_augmented(&self) -> bool {
        self.augmented
    }

    pub fn cell_count(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// Alternating count of cells, minus one for the augmentation.
    pub fn euler_characteristic(&self) -> i64 {
        let chi: i64 = self
            .ranks
            .iter()
            .enumerate()
            .map(|(n, &r)| if n % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum();
        chi - i64::from(self.augmented)
    }

    /// Homology with coefficients `c`. Boundary maps of different degrees
    /// are reduced concurrently.
    pub fn homology(&self, c: Coefficients) -> GradedGroup {
        let top = self.ranks.len();
        // (rank, torsion factors) of every boundary map, over the coefficient ring
        let reductions: Vec<(usize, Vec<num_bigint::BigUint>)> = std::thread::scope(|scope| {
            let handles: Vec<_> = self
                .boundaries
                .iter()
                .map(|d| {
                    scope.spawn(move || match c {
                        Coefficients::PrimeField(p) => (rank_mod_p(d, p), Vec::new()),
                        Coefficients::Rationals => (rank(d), Vec::new()),
                        _ => {
                            let snf = smith_normal_form(d);
                            let torsion = snf.torsion().map(|t| t.magnitude().clone()).collect();
                            (snf.rank(), torsion)
                        }
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        let mut out = GradedGroup::zero();
        for n in 0..top {
            let outgoing = reductions[n].0;
            let (incoming, torsion) = match reductions.get(n + 1) {
                Some((r, t)) => (*r, t.clone()),
                None => (0, Vec::new()),
            };
            let free = self.ranks[n] - outgoing - incoming;
            let group = match c {
                Coefficients::PrimeField(_) => FgAbelianGroup::vector_space(free, c),
                Coefficients::Rationals => FgAbelianGroup::free(free),
                _ => FgAbelianGroup::from_cyclic(free, torsion).localize(c),
            };
            out.set(n, group);
        }
        out
    }
}

/// The simplicial chain complex of a complex, with its cells.
#[derive(Debug, Clone)]
pub struct SimplicialChains {
    pub chains: ChainComplex,
    /// Faces by dimension; the position in the list is the basis index.
    pub cells: Vec<Vec<FaceSet>>,
}

/// Oriented simplicial chains: faces are ordered ascending and
/// `d[v_0 < ... < v_n] = sum (-1)^i [... v_i omitted ...]`.
pub fn chain_complex(k: &SimplicialComplex, reduced: bool) -> SimplicialChains {
    let cells = k.faces_by_dimension();
    let index: Vec<HashMap<&FaceSet, usize>> = cells
        .iter()
        .map(|faces| faces.iter().enumerate().map(|(i, f)| (f, i)).collect())
        .collect();
    let ranks: Vec<usize> = cells.iter().map(Vec::len).collect();
    let mut boundaries = Vec::with_capacity(cells.len());
    boundaries.push(if reduced {
        IntMatrix::from_triplets(1, ranks[0], (0..ranks[0]).map(|c| (0, c, 1)))
    } else {
        IntMatrix::zeros(0, ranks[0])
    });
    for n in 1..cells.len() {
        let mut entries = Vec::with_capacity(cells[n].len() * (n + 1));
        for (col, face) in cells[n].iter().enumerate() {
            for (i, v) in face.iter().enumerate() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                entries.push((index[n - 1][&face.without(v)], col, sign));
            }
        }
        boundaries.push(IntMatrix::from_triplets(ranks[n - 1], ranks[n], entries));
    }
    let chains = ChainComplex::new(ranks, boundaries, reduced).expect("simplicial d d = 0");
    SimplicialChains { chains, cells }
}

/// Reduced homology of `|K|` with coefficients `c`, computed from the chains.
pub fn reduced_homology(k: &SimplicialComplex, c: Coefficients) -> GradedGroup {
    chain_complex(k, true).chains.homology(c)
}

/// Where a predicate's answer came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// Derived from a finite model.
    Computed,
    /// Read off user-supplied data (abstract homology, flags, assertions).
    Asserted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Answer<T> {
    pub value: T,
    pub source: Source,
    /// The question was answered through a finite stand-in (e.g. a rational
    /// sphere test on a finite complex).
    pub approximate: bool,
}

impl<T> Answer<T> {
    fn computed(value: T) -> Self {
        Self {
            value,
            source: Source::Computed,
            approximate: false,
        }
    }

    fn asserted(value: T) -> Self {
        Self {
            value,
            source: Source::Asserted,
            approximate: false,
        }
    }

    fn approximate(mut self) -> Self {
        self.approximate = true;
        self
    }
}

/// Hypotheses attached to an abstract space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceFlag {
    Acyclic,
    PLocallyAcyclic(u64),
    RationallyAcyclic,
    /// Connected with reduced homology `Q` concentrated in this degree.
    HomologyRationalSphere(usize),
}

impl fmt::Display for SpaceFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceFlag::Acyclic => f.write_str("acyclic"),
            SpaceFlag::PLocallyAcyclic(p) => write!(f, "p-acyclic:{p}"),
            SpaceFlag::RationallyAcyclic => f.write_str("q-acyclic"),
            SpaceFlag::HomologyRationalSphere(d) => write!(f, "q-sphere:{d}"),
        }
    }
}

impl FromStr for SpaceFlag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| {
            t.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad number in space flag '{s}'")))
        };
        match s.split_once(':') {
            None if s == "acyclic" => Ok(SpaceFlag::Acyclic),
            None if s == "q-acyclic" => Ok(SpaceFlag::RationallyAcyclic),
            Some(("p-acyclic", p)) => Ok(SpaceFlag::PLocallyAcyclic(num(p)?)),
            Some(("q-sphere", d)) => Ok(SpaceFlag::HomologyRationalSphere(num(d)? as usize)),
            _ => Err(Error::Parse(format!(
                "unknown space flag '{s}' (expected acyclic, p-acyclic:<p>, q-acyclic, q-sphere:<d>)"
            ))),
        }
    }
}

impl Serialize for SpaceFlag {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SpaceFlag {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// A space known only through its reduced homology and/or asserted flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbstractSpace {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homology: Option<GradedGroup>,
    pub components: usize,
    #[serde(default)]
    pub flags: BTreeSet<SpaceFlag>,
}

/// A pointed space: a finite simplicial model or abstract data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceDescriptor {
    Model {
        #[serde(flatten)]
        complex: SimplicialComplex,
        basepoint: usize,
    },
    Abstract(AbstractSpace),
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum DescriptorJson {
    Model {
        #[serde(flatten)]
        complex: SimplicialComplex,
        #[serde(default = "first_vertex")]
        basepoint: usize,
    },
    Abstract(AbstractSpace),
}

fn first_vertex() -> usize {
    1
}

impl<'de> Deserialize<'de> for SpaceDescriptor {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let desc = match DescriptorJson::deserialize(deserializer)? {
            DescriptorJson::Model { complex, basepoint } => SpaceDescriptor::Model { complex, basepoint },
            DescriptorJson::Abstract(a) => SpaceDescriptor::Abstract(a),
        };
        desc.validate().map_err(serde::de::Error::custom)?;
        Ok(desc)
    }
}

impl SpaceDescriptor {
    pub fn model(complex: SimplicialComplex, basepoint: usize) -> Result<Self> {
        let d = SpaceDescriptor::Model { complex, basepoint };
        d.validate()?;
        Ok(d)
    }

    pub fn abstract_space(
        homology: Option<GradedGroup>,
        components: usize,
        flags: impl IntoIterator<Item = SpaceFlag>,
    ) -> Result<Self> {
        let d = SpaceDescriptor::Abstract(AbstractSpace {
            homology,
            components,
            flags: flags.into_iter().collect(),
        });
        d.validate()?;
        Ok(d)
    }

    /// `n` discrete points.
    pub fn points(n: usize) -> Self {
        SpaceDescriptor::Model {
            complex: SimplicialComplex::points(n),
            basepoint: 1,
        }
    }

    /// The boundary of a triangle.
    pub fn circle() -> Self {
        SpaceDescriptor::Model {
            complex: SimplicialComplex::from_lists(3, &[&[1, 2], &[2, 3], &[1, 3]]),
            basepoint: 1,
        }
    }

    /// Abstract connected space with `H̃ = Q` in degree `d`.
    pub fn rational_sphere(d: usize) -> Result<Self> {
        Self::abstract_space(None, 1, [SpaceFlag::HomologyRationalSphere(d)])
    }

    pub fn is_model(&self) -> bool {
        matches!(self, SpaceDescriptor::Model { .. })
    }

    pub fn components(&self) -> usize {
        match self {
            SpaceDescriptor::Model { complex, .. } => complex.connected_components().len(),
            SpaceDescriptor::Abstract(a) => a.components,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceDescriptor::Model { complex, basepoint } => {
                if *basepoint == 0 || *basepoint > complex.m() {
                    return Err(Error::VertexOutOfRange {
                        vertex: *basepoint,
                        m: complex.m(),
                    });
                }
                Ok(())
            }
            SpaceDescriptor::Abstract(a) => a.validate(),
        }
    }
}

impl AbstractSpace {
    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InconsistentDescriptor(msg));
        if self.components == 0 {
            return bad("components must be at least 1".into());
        }
        if let Some(h) = &self.homology {
            let h0 = h.get(0);
            if h0.rank() != self.components - 1 || !h0.torsion().is_empty() {
                return bad(format!(
                    "reduced H0 = {h0} does not match {} components",
                    self.components
                ));
            }
        }
        for flag in &self.flags {
            if self.components != 1 {
                return bad(format!("flag {flag} requires a connected space"));
            }
            let Some(h) = &self.homology else {
                if let SpaceFlag::PLocallyAcyclic(p) = flag {
                    if !is_prime(*p) {
                        return Err(Error::NotPrime(*p));
                    }
                }
                if let SpaceFlag::HomologyRationalSphere(0) = flag {
                    return bad("a connected rational sphere has degree at least 1".into());
                }
                continue;
            };
            let consistent = match flag {
                SpaceFlag::Acyclic => h.is_zero(),
                SpaceFlag::PLocallyAcyclic(p) => {
                    if !is_prime(*p) {
                        return Err(Error::NotPrime(*p));
                    }
                    h.localize(Coefficients::LocalizedAt(*p)).is_zero()
                }
                SpaceFlag::RationallyAcyclic => h.localize(Coefficients::Rationals).is_zero(),
                SpaceFlag::HomologyRationalSphere(d) => {
                    *d >= 1 && rational_sphere_degree_of(h) == Some(*d)
                }
            };
            if !consistent {
                return bad(format!("flag {flag} contradicts the given homology {h}"));
            }
        }
        Ok(())
    }
}

/// The unique degree carrying rational rank 1 when every other degree is
/// rationally zero.
fn rational_sphere_degree_of(h: &GradedGroup) -> Option<usize> {
    let ranked: Vec<(usize, usize)> = h
        .iter()
        .filter(|(_, g)| g.rank() > 0)
        .map(|(d, g)| (d, g.rank()))
        .collect();
    match ranked.as_slice() {
        [(d, 1)] => Some(*d),
        _ => None,
    }
}

/// Reduced homology of a descriptor with coefficients `c`.
pub fn reduced_homology_of(x: &SpaceDescriptor, c: Coefficients) -> Result<Answer<GradedGroup>> {
    match x {
        SpaceDescriptor::Model { complex, .. } => Ok(Answer::computed(reduced_homology(complex, c))),
        SpaceDescriptor::Abstract(a) => {
            if let Some(h) = &a.homology {
                return Ok(Answer::asserted(h.with_coefficients(c)));
            }
            let vanishes = a.flags.iter().any(|f| flag_kills(*f, c));
            if vanishes {
                return Ok(Answer::asserted(GradedGroup::zero()));
            }
            if c == Coefficients::Rationals {
                if let Some(d) = a.flags.iter().find_map(|f| match f {
                    SpaceFlag::HomologyRationalSphere(d) => Some(*d),
                    _ => None,
                }) {
                    return Ok(Answer::asserted(GradedGroup::concentrated(
                        d,
                        FgAbelianGroup::free(1),
                    )));
                }
            }
            Err(Error::InsufficientData(format!(
                "abstract space has no homology and no flag determining it over {c}"
            )))
        }
    }
}

/// Whether `flag` forces reduced homology with coefficients `c` to vanish.
fn flag_kills(flag: SpaceFlag, c: Coefficients) -> bool {
    match flag {
        SpaceFlag::Acyclic => true,
        SpaceFlag::PLocallyAcyclic(p) => match c {
            Coefficients::LocalizedAt(q) | Coefficients::PrimeField(q) => p == q,
            Coefficients::Rationals => true,
            Coefficients::Integers => false,
        },
        SpaceFlag::RationallyAcyclic => c == Coefficients::Rationals,
        SpaceFlag::HomologyRationalSphere(_) => false,
    }
}

/// Acyclicity with coefficients `c`, with provenance.
pub fn acyclicity(x: &SpaceDescriptor, c: Coefficients) -> Result<Answer<bool>> {
    let h = reduced_homology_of(x, c)?;
    Ok(Answer {
        value: h.value.is_zero(),
        source: h.source,
        approximate: h.approximate,
    })
}

pub fn is_acyclic(x: &SpaceDescriptor, c: Coefficients) -> Result<bool> {
    Ok(acyclicity(x, c)?.value)
}

/// Degree of `x` as a homology rational sphere, with provenance.
///
/// Only an abstract flag answers this exactly. Finite models, and abstract
/// spaces given by integral homology, are tested by their rational ranks and
/// the answer is marked approximate.
pub fn rational_sphere_degree(x: &SpaceDescriptor) -> Result<Answer<Option<usize>>> {
    match x {
        SpaceDescriptor::Model { complex, .. } => {
            let value = if complex.is_connected() {
                rational_sphere_degree_of(&reduced_homology(complex, Coefficients::Rationals))
            } else {
                None
            };
            Ok(Answer::computed(value).approximate())
        }
        SpaceDescriptor::Abstract(a) => {
            let flagged = a.flags.iter().find_map(|f| match f {
                SpaceFlag::HomologyRationalSphere(d) => Some(*d),
                _ => None,
            });
            if let Some(d) = flagged {
                return Ok(Answer::asserted(Some(d)));
            }
            if let Some(h) = &a.homology {
                let value = (a.components == 1).then(|| rational_sphere_degree_of(h)).flatten();
                return Ok(Answer::asserted(value).approximate());
            }
            if a.flags.iter().any(|f| flag_kills(*f, Coefficients::Rationals)) {
                return Ok(Answer::asserted(None));
            }
            Err(Error::InsufficientData(
                "abstract space has neither homology nor a rational-sphere flag".into(),
            ))
        }
    }
}

pub fn is_homology_rational_sphere(x: &SpaceDescriptor) -> Result<Option<usize>> {
    Ok(rational_sphere_degree(x)?.value)
}
