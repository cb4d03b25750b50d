//! Membership of `Z_K(X, A)` in the Postnikov-type classes, decided from `K`,
//! the homotopy fibre `F` of `A -> X`, and an assertion about `X`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abelian::{is_prime, Coefficients};
use crate::error::{Error, Result};
use crate::homology::{acyclicity, rational_sphere_degree, reduced_homology, Source, SpaceDescriptor};
use crate::simplicial::SimplicialComplex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassTag {
    P,
    F,
    K,
    Pp(u64),
    Fp(u64),
    Kp(u64),
    P0,
    F0,
    K0,
    E0,
}

/// Integral, p-local or rational: the ring a tag is tested over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    Integral,
    PLocal(u64),
    Rational,
}

impl Mode {
    pub fn coefficients(self) -> Coefficients {
        match self {
            Mode::Integral => Coefficients::Integers,
            Mode::PLocal(p) => Coefficients::LocalizedAt(p),
            Mode::Rational => Coefficients::Rationals,
        }
    }

    fn hypothesis(self) -> Hypothesis {
        match self {
            Mode::Integral => Hypothesis::EachComponentFiniteType,
            Mode::PLocal(p) => Hypothesis::EachComponentFinitePLocalType(p),
            Mode::Rational => Hypothesis::EachComponentRational,
        }
    }

    fn validate(self) -> Result<Self> {
        if let Mode::PLocal(p) = self {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
        }
        Ok(self)
    }
}

impl ClassTag {
    pub fn mode(self) -> Mode {
        match self {
            ClassTag::P | ClassTag::F | ClassTag::K => Mode::Integral,
            ClassTag::Pp(p) | ClassTag::Fp(p) | ClassTag::Kp(p) => Mode::PLocal(p),
            ClassTag::P0 | ClassTag::F0 | ClassTag::K0 | ClassTag::E0 => Mode::Rational,
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassTag::P => f.write_str("P"),
            ClassTag::F => f.write_str("F"),
            ClassTag::K => f.write_str("K"),
            ClassTag::Pp(p) => write!(f, "P_{p}"),
            ClassTag::Fp(p) => write!(f, "F_{p}"),
            ClassTag::Kp(p) => write!(f, "K_{p}"),
            ClassTag::P0 => f.write_str("P_0"),
            ClassTag::F0 => f.write_str("F_0"),
            ClassTag::K0 => f.write_str("K_0"),
            ClassTag::E0 => f.write_str("E_0"),
        }
    }
}

impl FromStr for ClassTag {
    type Err = Error;

    /// `P`, `F`, `K`, `E_0`, or one of the first three with `_0` or `_<prime>`
    /// (`P_p:<prime>` is accepted as well).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown class tag '{s}' (expected P, F, K, P_<p>, P_0, E_0, ...)"));
        let (letter, sub) = match s.split_once('_') {
            None => (s, None),
            Some((l, rest)) => (l, Some(rest.strip_prefix("p:").unwrap_or(rest))),
        };
        let tag = match (letter, sub) {
            ("P", None) => ClassTag::P,
            ("F", None) => ClassTag::F,
            ("K", None) => ClassTag::K,
            ("E", Some("0")) => ClassTag::E0,
            ("P", Some("0")) => ClassTag::P0,
            ("F", Some("0")) => ClassTag::F0,
            ("K", Some("0")) => ClassTag::K0,
            (l @ ("P" | "F" | "K"), Some(n)) => {
                let p: u64 = n.parse().map_err(|_| bad())?;
                if !is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                match l {
                    "P" => ClassTag::Pp(p),
                    "F" => ClassTag::Fp(p),
                    _ => ClassTag::Kp(p),
                }
            }
            _ => return Err(bad()),
        };
        Ok(tag)
    }
}

impl Serialize for ClassTag {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ClassTag {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Standing hypotheses on the fibre.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hypothesis {
    EachComponentFiniteType,
    EachComponentFinitePLocalType(u64),
    EachComponentRational,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::EachComponentFiniteType => f.write_str("finite-type"),
            Hypothesis::EachComponentFinitePLocalType(p) => write!(f, "finite-p-local-type:{p}"),
            Hypothesis::EachComponentRational => f.write_str("rational"),
        }
    }
}

impl FromStr for Hypothesis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            None if s == "finite-type" => Ok(Hypothesis::EachComponentFiniteType),
            None if s == "rational" => Ok(Hypothesis::EachComponentRational),
            Some(("finite-p-local-type", p)) => {
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad prime in hypothesis '{s}'")))?;
                if !is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                Ok(Hypothesis::EachComponentFinitePLocalType(p))
            }
            _ => Err(Error::Parse(format!(
                "unknown hypothesis '{s}' (expected finite-type, finite-p-local-type:<p>, rational)"
            ))),
        }
    }
}

impl Serialize for Hypothesis {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Hypothesis {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// A space given as its connected components plus asserted hypotheses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FibreDescriptor {
    components: Vec<SpaceDescriptor>,
    hypotheses: BTreeSet<Hypothesis>,
}

#[derive(Deserialize)]
struct FibreJson {
    components: Vec<SpaceDescriptor>,
    #[serde(default)]
    hypotheses: BTreeSet<Hypothesis>,
}

impl<'de> Deserialize<'de> for FibreDescriptor {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = FibreJson::deserialize(deserializer)?;
        FibreDescriptor::new(raw.components, raw.hypotheses).map_err(serde::de::Error::custom)
    }
}

impl FibreDescriptor {
    pub fn new(
        components: Vec<SpaceDescriptor>,
        hypotheses: impl IntoIterator<Item = Hypothesis>,
    ) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (i, x) in components.iter().enumerate() {
            x.validate()?;
            if x.components() != 1 {
                return Err(Error::DisconnectedComponent(i + 1));
            }
        }
        Ok(Self {
            components,
            hypotheses: hypotheses.into_iter().collect(),
        })
    }

    /// Splits a space into its connected components. Abstract spaces must
    /// already be connected.
    pub fn from_space(
        x: &SpaceDescriptor,
        hypotheses: impl IntoIterator<Item = Hypothesis>,
    ) -> Result<Self> {
        let components = match x {
            SpaceDescriptor::Model { complex, .. } => complex
                .connected_components()
                .into_iter()
                .map(|r| SpaceDescriptor::Model {
                    complex: r.complex,
                    basepoint: 1,
                })
                .collect(),
            SpaceDescriptor::Abstract(a) if a.components == 1 => vec![x.clone()],
            SpaceDescriptor::Abstract(a) => {
                return Err(Error::InsufficientData(format!(
                    "abstract space with {} components cannot be split; list the components",
                    a.components
                )))
            }
        };
        Self::new(components, hypotheses)
    }

    /// `n` points.
    pub fn discrete(n: usize, hypotheses: impl IntoIterator<Item = Hypothesis>) -> Result<Self> {
        Self::new(vec![SpaceDescriptor::points(1); n], hypotheses)
    }

    pub fn components(&self) -> &[SpaceDescriptor] {
        &self.components
    }

    pub fn hypotheses(&self) -> &BTreeSet<Hypothesis> {
        &self.hypotheses
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Case {
    Case1,
    Case2,
    Case3,
    Case4,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shape {
    Contractible,
    Aspherical,
    ProductOfRationalSpheres(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceEntry {
    pub predicate: String,
    pub source: Source,
    pub value: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub approximate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub satisfied_cases: BTreeSet<Case>,
    pub in_class: bool,
    /// Some predicate was answered through a finite stand-in.
    pub approximate: bool,
    pub provenance: Vec<ProvenanceEntry>,
    pub shape: Option<Shape>,
}

/// Evaluates predicates on demand, each at most once, in a fixed order.
struct Evaluator<'a> {
    k: &'a SimplicialComplex,
    fibre: &'a FibreDescriptor,
    mode: Mode,
    memo: BTreeMap<String, bool>,
    provenance: Vec<ProvenanceEntry>,
    sphere_degree: Option<usize>,
}

impl<'a> Evaluator<'a> {
    fn new(k: &'a SimplicialComplex, fibre: &'a FibreDescriptor, mode: Mode) -> Self {
        Self {
            k,
            fibre,
            mode,
            memo: BTreeMap::new(),
            provenance: Vec::new(),
            sphere_degree: None,
        }
    }

    fn record(&mut self, predicate: String, source: Source, value: bool, approximate: bool) -> bool {
        self.memo.insert(predicate.clone(), value);
        self.provenance.push(ProvenanceEntry {
            predicate,
            source,
            value,
            approximate,
        });
        value
    }

    fn combinatorial(&mut self, name: &str, f: impl FnOnce(&SimplicialComplex) -> bool) -> bool {
        if let Some(&v) = self.memo.get(name) {
            return v;
        }
        let v = f(self.k);
        self.record(name.to_string(), Source::Computed, v, false)
    }

    fn is_simplex(&mut self) -> bool {
        self.combinatorial("K is a simplex", SimplicialComplex::is_simplex)
    }

    fn is_flag(&mut self) -> bool {
        self.combinatorial("K is a flag complex", SimplicialComplex::is_flag)
    }

    fn nonfaces_disjoint(&mut self) -> bool {
        self.combinatorial(
            "minimal non-faces of K are mutually disjoint",
            SimplicialComplex::nonfaces_mutually_disjoint,
        )
    }

    fn connected(&mut self) -> bool {
        let name = "F is connected".to_string();
        if let Some(&v) = self.memo.get(&name) {
            return v;
        }
        let v = self.fibre.components.len() == 1;
        self.record(name, Source::Computed, v, false)
    }

    fn component_acyclic(&mut self, i: usize) -> Result<bool> {
        let c = self.mode.coefficients();
        let name = format!("component {} of F is acyclic over {c}", i + 1);
        if let Some(&v) = self.memo.get(&name) {
            return Ok(v);
        }
        let ans = acyclicity(&self.fibre.components[i], c)?;
        Ok(self.record(name, ans.source, ans.value, ans.approximate))
    }

    fn all_acyclic(&mut self) -> Result<bool> {
        for i in 0..self.fibre.components.len() {
            if !self.component_acyclic(i)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn rational_sphere(&mut self) -> Result<bool> {
        let name = "F is a homology rational sphere".to_string();
        if let Some(&v) = self.memo.get(&name) {
            return Ok(v);
        }
        let ans = rational_sphere_degree(&self.fibre.components[0])?;
        self.sphere_degree = ans.value;
        Ok(self.record(name, ans.source, ans.value.is_some(), ans.approximate))
    }

    /// Checks that the hypothesis required by the mode holds, either asserted
    /// or decided from finite models.
    fn hypothesis(&mut self) -> Result<()> {
        let needed = self.mode.hypothesis();
        let name = format!("hypothesis {needed}");
        if self.fibre.hypotheses.contains(&needed) {
            self.record(name, Source::Asserted, true, false);
            return Ok(());
        }
        if let Some(v) = self.decide_hypothesis(needed) {
            self.record(name, Source::Computed, v, false);
            if v {
                return Ok(());
            }
        }
        Err(Error::HypothesisMissing(format!(
            "the {:?} classes need the fibre hypothesis '{needed}'",
            self.mode
        )))
    }

    /// Finite complexes are of finite type; one is of finite p-local type
    /// exactly when its reduced homology is finite p-primary torsion.
    /// Rationality is never decided.
    fn decide_hypothesis(&self, h: Hypothesis) -> Option<bool> {
        let models: Option<Vec<&SimplicialComplex>> = self
            .fibre
            .components
            .iter()
            .map(|x| match x {
                SpaceDescriptor::Model { complex, .. } => Some(complex),
                SpaceDescriptor::Abstract(_) => None,
            })
            .collect();
        let models = models?;
        match h {
            Hypothesis::EachComponentFiniteType => Some(true),
            Hypothesis::EachComponentFinitePLocalType(p) => Some(models.iter().all(|k| {
                let hom = reduced_homology(k, Coefficients::Integers);
                let local = hom.iter().all(|(_, g)| {
                    g.rank() == 0 && g.torsion().iter().all(|d| is_p_power(d, p))
                });
                local
            })),
            Hypothesis::EachComponentRational => None,
        }
    }

    fn finish(self, satisfied: BTreeSet<Case>, shape: Option<Shape>) -> Verdict {
        let approximate = self.provenance.iter().any(|e| e.approximate);
        Verdict {
            in_class: !satisfied.is_empty(),
            satisfied_cases: satisfied,
            approximate,
            provenance: self.provenance,
            shape,
        }
    }
}

fn is_p_power(d: &BigUint, p: u64) -> bool {
    let p = BigUint::from(p);
    let mut rest = d.clone();
    while (&rest % &p) == BigUint::ZERO {
        rest /= &p;
    }
    rest.is_one()
}

/// The four conditions, in order. Conjuncts are evaluated left to right and
/// stop at the first false one.
fn cases(ev: &mut Evaluator<'_>) -> Result<BTreeSet<Case>> {
    let mut out = BTreeSet::new();
    let simplex = ev.is_simplex();
    if simplex {
        out.insert(Case::Case1);
    } else {
        if ev.connected() && ev.component_acyclic(0)? {
            out.insert(Case::Case2);
        }
        if ev.is_flag() && ev.all_acyclic()? {
            out.insert(Case::Case3);
        }
    }
    if ev.mode == Mode::Rational && ev.connected() && ev.nonfaces_disjoint() && ev.rational_sphere()? {
        out.insert(Case::Case4);
    }
    Ok(out)
}

/// Decides whether `Z_K(X, A)` lies in the class `tag`, where `fibre` is the
/// homotopy fibre of `A -> X` and `x_in_class` asserts `X` lies in the class.
pub fn classify(
    tag: ClassTag,
    k: &SimplicialComplex,
    fibre: &FibreDescriptor,
    x_in_class: bool,
) -> Result<Verdict> {
    let mode = tag.mode().validate()?;
    let mut ev = Evaluator::new(k, fibre, mode);
    ev.hypothesis()?;
    ev.record(format!("X is in {tag}"), Source::Asserted, x_in_class, false);
    if !x_in_class {
        return Ok(ev.finish(BTreeSet::new(), None));
    }
    let satisfied = cases(&mut ev)?;
    Ok(ev.finish(satisfied, None))
}

/// Conditions for `Z_K(CX, X)` itself, with the homotopy type they force.
/// Here `x` is the space `X`, given by its components; it is also the fibre
/// of `X -> CX`, which is how provenance names it.
pub fn classify_cone_pair(mode: Mode, k: &SimplicialComplex, x: &FibreDescriptor) -> Result<Verdict> {
    let mode = mode.validate()?;
    let mut ev = Evaluator::new(k, x, mode);
    ev.hypothesis()?;
    let satisfied = cases(&mut ev)?;
    let shape = if satisfied.contains(&Case::Case1) || satisfied.contains(&Case::Case2) {
        Some(Shape::Contractible)
    } else if satisfied.contains(&Case::Case3) {
        Some(Shape::Aspherical)
    } else if satisfied.contains(&Case::Case4) {
        let d = ev.sphere_degree.expect("recorded with the predicate");
        let decomposition = k
            .disjoint_nonface_decomposition()?
            .expect("minimal non-faces are disjoint");
        let dims = decomposition
            .parts
            .iter()
            .map(|m| (m.len() - 1) + m.len() * d)
            .collect();
        Some(Shape::ProductOfRationalSpheres(dims))
    } else {
        None
    };
    Ok(ev.finish(satisfied, shape))
}
