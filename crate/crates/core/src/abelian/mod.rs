//! Finitely generated abelian groups in invariant-factor form, graded
//! groups, coefficient changes, and integer linear algebra.
//!
//! Homology with coefficients other than the integers is stored in the same
//! [`FgAbelianGroup`] type:
//!
//! * over `Q`, a vector space of dimension `d` is the free group of rank `d`;
//! * over `F_p`, it is the elementary abelian group `(Z/p)^d`;
//! * over `Z_(p)`, a module is its free rank plus its `p`-primary torsion.

mod matrix;
mod smith;
mod sparse;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use matrix::IntMatrix;
pub use smith::{smith_normal_form, smith_normal_form_with_transforms, SmithForm};

use crate::error::{Error, Result};
use sparse::{eliminate_units, Fp};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Coefficient ring for homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coefficients {
    Integers,
    Rationals,
    PrimeField(u64),
    LocalizedAt(u64),
}

impl Coefficients {
    /// Rejects non-primes, and primes of 2^32 or more (mod-p ranks use
    /// 64-bit products).
    pub fn validate(self) -> Result<Self> {
        match self {
            Coefficients::PrimeField(p) | Coefficients::LocalizedAt(p) => {
                if !is_prime(p) || p >= 1 << 32 {
                    return Err(Error::NotPrime(p));
                }
                Ok(self)
            }
            _ => Ok(self),
        }
    }

    pub fn is_field(self) -> bool {
        matches!(self, Coefficients::Rationals | Coefficients::PrimeField(_))
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => f.write_str("z"),
            Coefficients::Rationals => f.write_str("q"),
            Coefficients::PrimeField(p) => write!(f, "fp:{p}"),
            Coefficients::LocalizedAt(p) => write!(f, "zp:{p}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    /// `z`, `q`, `fp:<p>` or `zp:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let prime = |rest: &str| {
            rest.parse::<u64>()
                .map_err(|_| Error::Parse(format!("coefficient prime '{rest}' is not an integer")))
        };
        let c = match s {
            "z" | "Z" => Coefficients::Integers,
            "q" | "Q" => Coefficients::Rationals,
            _ => match s.split_once(':') {
                Some(("fp", rest)) => Coefficients::PrimeField(prime(rest)?),
                Some(("zp", rest)) => Coefficients::LocalizedAt(prime(rest)?),
                _ => {
                    return Err(Error::Parse(format!(
                        "unknown coefficients '{s}' (expected z, q, fp:<p> or zp:<p>)"
                    )))
                }
            },
        };
        c.validate()
    }
}

impl Serialize for Coefficients {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Coefficients {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// `Z^rank + Z/d_1 + ... + Z/d_k` with `d_1 | d_2 | ... | d_k`, each `d_j >= 2`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FgAbelianGroup {
    rank: usize,
    torsion: Vec<BigUint>,
}

/// Rewrites a list of cyclic orders (each at least 2) into a divisibility
/// chain using `Z/a + Z/b = Z/gcd + Z/lcm`.
fn invariant_factors(mut orders: Vec<BigUint>) -> Vec<BigUint> {
    let n = orders.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = orders[i].gcd(&orders[j]);
            let l = &orders[i] / &g * &orders[j];
            orders[i] = g;
            orders[j] = l;
        }
    }
    orders.retain(|d| !d.is_one());
    orders
}

impl FgAbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self {
            rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/n`; `n = 0` gives `Z` and `n = 1` the trivial group.
    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic(0, [BigUint::from(n)])
    }

    /// Validating constructor for data already in invariant-factor form.
    pub fn new(rank: usize, torsion: Vec<BigUint>) -> Result<Self> {
        for d in &torsion {
            if *d < BigUint::from(2u8) {
                return Err(Error::InconsistentDescriptor(format!(
                    "torsion coefficient {d} must be at least 2"
                )));
            }
        }
        if torsion.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::InconsistentDescriptor(
                "torsion coefficients must form a divisibility chain".into(),
            ));
        }
        Ok(Self { rank, torsion })
    }

    /// Sum of cyclic groups of the given orders (0 means infinite cyclic).
    pub fn from_cyclic(rank: usize, orders: impl IntoIterator<Item = BigUint>) -> Self {
        let mut rank = rank;
        let mut finite = Vec::new();
        for d in orders {
            if d.is_zero() {
                rank += 1;
            } else if !d.is_one() {
                finite.push(d);
            }
        }
        Self {
            rank,
            torsion: invariant_factors(finite),
        }
    }

    /// `F^dim` for a field `F`, in this module's encoding.
    pub fn vector_space(dim: usize, c: Coefficients) -> Self {
        match c {
            Coefficients::PrimeField(p) => Self {
                rank: 0,
                torsion: vec![BigUint::from(p); dim],
            },
            _ => Self::free(dim),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Number of invariant factors divisible by `p`.
    pub fn p_torsion_count(&self, p: u64) -> usize {
        let p = BigUint::from(p);
        self.torsion.iter().filter(|d| d.is_multiple_of(&p)).count()
    }

    /// Dimension of `self (x) F` for a field `F`; for `Z` or `Z_(p)` the free rank.
    pub fn dimension_over(&self, c: Coefficients) -> usize {
        match c {
            Coefficients::PrimeField(p) => self.rank + self.p_torsion_count(p),
            _ => self.rank,
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_cyclic(
            self.rank + other.rank,
            self.torsion.iter().chain(&other.torsion).cloned(),
        )
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut orders = Vec::new();
        for _ in 0..self.rank {
            orders.extend(other.torsion.iter().cloned());
        }
        for _ in 0..other.rank {
            orders.extend(self.torsion.iter().cloned());
        }
        for a in &self.torsion {
            for b in &other.torsion {
                orders.push(a.gcd(b));
            }
        }
        Self::from_cyclic(self.rank * other.rank, orders)
    }

    pub fn tor(&self, other: &Self) -> Self {
        let orders = self
            .torsion
            .iter()
            .flat_map(|a| other.torsion.iter().map(move |b| a.gcd(b)));
        Self::from_cyclic(0, orders)
    }

    /// Change of coefficients `self (x) R`, in this module's encoding.
    pub fn localize(&self, c: Coefficients) -> Self {
        match c {
            Coefficients::Integers => self.clone(),
            Coefficients::Rationals => Self::free(self.rank),
            Coefficients::PrimeField(_) => Self::vector_space(self.dimension_over(c), c),
            Coefficients::LocalizedAt(p) => {
                let p = BigUint::from(p);
                let parts = self.torsion.iter().map(|d| {
                    let mut part = BigUint::one();
                    let mut rest = d.clone();
                    while rest.is_multiple_of(&p) {
                        rest /= &p;
                        part *= &p;
                    }
                    part
                });
                Self::from_cyclic(self.rank, parts)
            }
        }
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("ℤ".to_string()),
            r => parts.push(format!("ℤ^{r}")),
        }
        // group equal factors: ℤ/2^3 reads ambiguously, so use a multiplier
        let mut k = 0;
        while k < self.torsion.len() {
            let d = &self.torsion[k];
            let run = self.torsion[k..].iter().take_while(|x| *x == d).count();
            if run == 1 {
                parts.push(format!("ℤ/{d}"));
            } else {
                parts.push(format!("(ℤ/{d})^{run}"));
            }
            k += run;
        }
        f.write_str(&parts.join(" ⊕ "))
    }
}

/// Serialized as a JSON number when it fits in `u64`, otherwise as a string.
fn serialize_big<S: Serializer>(d: &BigUint, serializer: S) -> Result<S::Ok, S::Error> {
    match d.to_u64() {
        Some(v) => serializer.serialize_u64(v),
        None => serializer.collect_str(d),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BigJson {
    Small(u64),
    Text(String),
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    rank: usize,
    torsion: Vec<BigJson>,
}

impl Serialize for FgAbelianGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        struct Torsion<'a>(&'a [BigUint]);
        impl Serialize for Torsion<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                use serde::ser::SerializeSeq;
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for d in self.0 {
                    struct One<'a>(&'a BigUint);
                    impl Serialize for One<'_> {
                        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                            serialize_big(self.0, s)
                        }
                    }
                    seq.serialize_element(&One(d))?;
                }
                seq.end()
            }
        }
        let mut st = serializer.serialize_struct("FgAbelianGroup", 2)?;
        st.serialize_field("rank", &self.rank)?;
        st.serialize_field("torsion", &Torsion(&self.torsion))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for FgAbelianGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = GroupJson::deserialize(deserializer)?;
        let torsion = raw
            .torsion
            .into_iter()
            .map(|d| match d {
                BigJson::Small(v) => Ok(BigUint::from(v)),
                BigJson::Text(s) => s.parse::<BigUint>().map_err(serde::de::Error::custom),
            })
            .collect::<Result<Vec<_>, _>>()?;
        FgAbelianGroup::new(raw.rank, torsion).map_err(serde::de::Error::custom)
    }
}

/// Degree-indexed family of groups; absent degrees are zero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedGroup {
    #[serde(deserialize_with = "deserialize_graded")]
    degrees: BTreeMap<usize, FgAbelianGroup>,
}

fn deserialize_graded<'de, D: Deserializer<'de>>(
    deserializer: D,
) -> Result<BTreeMap<usize, FgAbelianGroup>, D::Error> {
    let mut map = BTreeMap::<usize, FgAbelianGroup>::deserialize(deserializer)?;
    map.retain(|_, g| !g.is_zero());
    Ok(map)
}

impl GradedGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    /// A single group in one degree.
    pub fn concentrated(degree: usize, group: FgAbelianGroup) -> Self {
        let mut g = Self::zero();
        g.set(degree, group);
        g
    }

    pub fn set(&mut self, degree: usize, group: FgAbelianGroup) {
        if group.is_zero() {
            self.degrees.remove(&degree);
        } else {
            self.degrees.insert(degree, group);
        }
    }

    /// Adds `group` as a direct summand in `degree`.
    pub fn add_summand(&mut self, degree: usize, group: &FgAbelianGroup) {
        if group.is_zero() {
            return;
        }
        let sum = self.get(degree).direct_sum(group);
        self.degrees.insert(degree, sum);
    }

    pub fn get(&self, degree: usize) -> FgAbelianGroup {
        self.degrees.get(&degree).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &FgAbelianGroup)> {
        self.degrees.iter().map(|(d, g)| (*d, g))
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.degrees.keys().next_back().copied()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, g) in other.iter() {
            out.add_summand(d, g);
        }
        out
    }

    /// Regrades by `+k`.
    pub fn shift(&self, k: i64) -> Result<Self> {
        let mut out = Self::zero();
        for (d, g) in self.iter() {
            let nd = d as i64 + k;
            if nd < 0 {
                return Err(Error::NegativeDegree { degree: d, shift: k });
            }
            out.set(nd as usize, g.clone());
        }
        Ok(out)
    }

    /// `sum (-1)^n rank_n`.
    pub fn euler_characteristic(&self) -> i64 {
        self.iter()
            .map(|(d, g)| if d % 2 == 0 { g.rank() as i64 } else { -(g.rank() as i64) })
            .sum()
    }

    /// Degreewise `(x) R`. This is not the universal coefficient change;
    /// see [`GradedGroup::with_coefficients`].
    pub fn localize(&self, c: Coefficients) -> Self {
        let mut out = Self::zero();
        for (d, g) in self.iter() {
            out.set(d, g.localize(c));
        }
        out
    }

    /// Homology with coefficients `c` from integral homology of a free chain
    /// complex (universal coefficients: over `F_p` each degree also picks up
    /// the `p`-torsion of the degree below).
    pub fn with_coefficients(&self, c: Coefficients) -> Self {
        match c {
            Coefficients::PrimeField(p) => {
                let mut out = Self::zero();
                let top = self.max_degree().map_or(0, |d| d + 1);
                for d in 0..=top {
                    let below = if d > 0 { self.get(d - 1).p_torsion_count(p) } else { 0 };
                    let dim = self.get(d).dimension_over(c) + below;
                    out.set(d, FgAbelianGroup::vector_space(dim, c));
                }
                out
            }
            _ => self.localize(c),
        }
    }

    /// Degreewise dimensions over a field (free ranks otherwise).
    pub fn dimensions(&self, c: Coefficients) -> BTreeMap<usize, usize> {
        self.iter().map(|(d, g)| (d, g.dimension_over(c))).collect()
    }
}

impl fmt::Display for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.iter().map(|(d, g)| format!("H{d} = {g}")).collect();
        f.write_str(&parts.join(", "))
    }
}

/// Reduced Künneth for a smash product `X ∧ Y` from `H̃(X)` and `H̃(Y)` with
/// coefficients `c`. Over a field this is the graded tensor product; over `Z`
/// or `Z_(p)` it adds the Tor terms one degree up.
pub fn smash_kunneth(a: &GradedGroup, b: &GradedGroup, c: Coefficients) -> GradedGroup {
    let mut out = GradedGroup::zero();
    for (i, x) in a.iter() {
        for (j, y) in b.iter() {
            if c.is_field() {
                let dim = x.dimension_over(c) * y.dimension_over(c);
                out.add_summand(i + j, &FgAbelianGroup::vector_space(dim, c));
            } else {
                out.add_summand(i + j, &x.tensor(y));
                out.add_summand(i + j + 1, &x.tor(y));
            }
        }
    }
    out
}

/// Rank of an integer matrix over `Q`.
pub fn rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).rank()
}

/// Rank of an integer matrix reduced mod a prime `p < 2^32`.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    let rows = (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .map(|(c, v)| {
                    let residue = v.mod_floor(&BigInt::from(p)).to_u64().expect("reduced");
                    (*c, Fp { v: residue, p })
                })
                .filter(|(_, x)| x.v != 0)
                .collect()
        })
        .collect();
    let reduced = eliminate_units::<Fp>(rows, m.cols()).expect("field arithmetic never overflows");
    debug_assert!(reduced.residual.is_empty());
    reduced.pivots
}

/// `ker(d_out) / im(d_in)` for `d_in: C_{n+1} -> C_n` and `d_out: C_n -> C_{n-1}`.
pub fn homology_group(d_in: &IntMatrix, d_out: &IntMatrix) -> Result<FgAbelianGroup> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::DimensionMismatch(format!(
            "incoming map lands in rank {} but outgoing map starts from rank {}",
            d_in.rows(),
            d_out.cols()
        )));
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::NotAComplex);
    }
    let incoming = smith_normal_form(d_in);
    let outgoing_rank = rank(d_out);
    let free = d_out.cols() - outgoing_rank - incoming.rank();
    Ok(FgAbelianGroup::from_cyclic(
        free,
        incoming.torsion().map(|d| d.magnitude().clone()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(rank: usize, torsion: &[u64]) -> FgAbelianGroup {
        FgAbelianGroup::from_cyclic(rank, torsion.iter().map(|&d| BigUint::from(d)))
    }

    #[test]
    fn invariant_factor_normalization() {
        let x = g(1, &[4, 6, 1]);
        assert_eq!(x.rank(), 1);
        assert_eq!(x.torsion(), &[BigUint::from(2u8), BigUint::from(12u8)]);
        assert!(FgAbelianGroup::new(0, vec![BigUint::from(4u8), BigUint::from(6u8)]).is_err());
        assert!(FgAbelianGroup::new(0, vec![BigUint::from(1u8)]).is_err());
        assert_eq!(FgAbelianGroup::cyclic(0), FgAbelianGroup::free(1));
        assert!(FgAbelianGroup::cyclic(1).is_zero());
    }

    #[test]
    fn tensor_tor_examples() {
        assert_eq!(g(2, &[]).tensor(&g(3, &[])), g(6, &[]));
        assert_eq!(g(0, &[4]).tor(&g(0, &[6])), g(0, &[2]));
        assert_eq!(g(1, &[2]).tensor(&g(0, &[4])), g(0, &[2, 4]));
        assert!(g(3, &[]).tor(&g(0, &[5])).is_zero());
    }

    #[test]
    fn localize_examples() {
        assert_eq!(g(1, &[6]).localize(Coefficients::LocalizedAt(2)), g(1, &[2]));
        assert!(g(0, &[5]).localize(Coefficients::Rationals).is_zero());
        let f3 = g(2, &[]).localize(Coefficients::PrimeField(3));
        assert_eq!(f3.dimension_over(Coefficients::PrimeField(3)), 2);
        assert_eq!(f3, g(0, &[3, 3]));
        assert_eq!(g(1, &[4, 12]).localize(Coefficients::LocalizedAt(3)), g(1, &[3]));
    }

    #[test]
    fn shift_rejects_negative_degrees() {
        let x = GradedGroup::concentrated(1, g(1, &[]));
        assert_eq!(x.shift(2).unwrap().get(3), g(1, &[]));
        assert_eq!(x.shift(-1).unwrap().get(0), g(1, &[]));
        assert_eq!(x.shift(-2), Err(Error::NegativeDegree { degree: 1, shift: -2 }));
        assert!(GradedGroup::zero().shift(-5).unwrap().is_zero());
    }

    #[test]
    fn homology_group_examples() {
        let n = 3;
        let free = homology_group(&IntMatrix::zeros(n, 0), &IntMatrix::zeros(0, n)).unwrap();
        assert_eq!(free, g(3, &[]));

        // circle as two vertices a,b and edges e,f with d e = d f = b - a
        let d1 = IntMatrix::from_dense(&[vec![-1, -1], vec![1, 1]]);
        let h1 = homology_group(&IntMatrix::zeros(2, 0), &d1).unwrap();
        assert_eq!(h1, g(1, &[]));

        let bad_in = IntMatrix::from_dense(&[vec![1], vec![0]]);
        assert_eq!(homology_group(&bad_in, &d1), Err(Error::NotAComplex));
        assert!(matches!(
            homology_group(&IntMatrix::zeros(3, 1), &d1),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn coefficient_parsing() {
        assert_eq!("z".parse::<Coefficients>().unwrap(), Coefficients::Integers);
        assert_eq!("fp:5".parse::<Coefficients>().unwrap(), Coefficients::PrimeField(5));
        assert_eq!("zp:2".parse::<Coefficients>().unwrap(), Coefficients::LocalizedAt(2));
        assert_eq!("fp:4".parse::<Coefficients>(), Err(Error::NotPrime(4)));
        assert!("r".parse::<Coefficients>().is_err());
    }

    #[test]
    fn json_shapes() {
        let x = g(1, &[2, 4]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"rank":1,"torsion":[2,4]}"#);
        assert_eq!(serde_json::from_str::<FgAbelianGroup>(&s).unwrap(), x);
        let huge = FgAbelianGroup::from_cyclic(0, [BigUint::from(u64::MAX) * 3u8]);
        let s = serde_json::to_string(&huge).unwrap();
        assert!(s.contains('"'));
        assert_eq!(serde_json::from_str::<FgAbelianGroup>(&s).unwrap(), huge);

        let mut gg = GradedGroup::zero();
        gg.set(3, g(2, &[]));
        gg.set(6, g(1, &[]));
        let s = serde_json::to_string(&gg).unwrap();
        assert_eq!(s, r#"{"3":{"rank":2,"torsion":[]},"6":{"rank":1,"torsion":[]}}"#);
        assert_eq!(serde_json::from_str::<GradedGroup>(&s).unwrap(), gg);
    }

    #[test]
    fn display() {
        assert_eq!(g(2, &[2, 2, 6]).to_string(), "ℤ^2 ⊕ (ℤ/2)^2 ⊕ ℤ/6");
        assert_eq!(g(0, &[]).to_string(), "0");
    }

    #[test]
    fn uct_over_f2() {
        // RP^2: H1 = Z/2 -> over F2: dims 1 in degrees 1 and 2
        let h = GradedGroup::concentrated(1, g(0, &[2]));
        let f2 = h.with_coefficients(Coefficients::PrimeField(2));
        assert_eq!(f2.dimensions(Coefficients::PrimeField(2)), BTreeMap::from([(1, 1), (2, 1)]));
    }
}
