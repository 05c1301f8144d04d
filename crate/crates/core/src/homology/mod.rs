//! Reduced simplicial homology over prime fields (and, slowly, over Z and Q).
//!
//! Homology is computed on the augmented chain complex: the empty face is a
//! generator in dimension -1, so the output is reduced homology directly and
//! the void complex gets rank one in dimension -1.

mod modp;
mod snf;

pub use snf::{integral_homology, IntegralHomology, DEFAULT_MAX_DENSE_ENTRIES};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::complex::{FaceCensus, SimplicialComplex};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// The two default primes: 2 catches odd torsion against a large prime.
pub const DEFAULT_PRIMES: [u64; 2] = [2, 1_000_003];

/// Coefficient field for a homology computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Prime(u64),
    /// Rank over Q, via the integral Smith normal form path.
    Rational,
}

impl Coefficients {
    /// Validates primality; the prime must fit in 32 bits.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 32 {
            return Err(Error::invalid(format!(
                "prime {p} too large (must be < 2^32)"
            )));
        }
        if !modp::is_prime(p) {
            return Err(Error::invalid(format!(
                "field characteristic {p} is not prime"
            )));
        }
        Ok(Coefficients::Prime(p))
    }

    pub fn tag(&self) -> String {
        match self {
            Coefficients::Prime(p) => format!("GF({p})"),
            Coefficients::Rational => "Q".to_string(),
        }
    }
}

impl std::str::FromStr for Coefficients {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") || s == "0" {
            return Ok(Coefficients::Rational);
        }
        let p: u64 = s
            .parse()
            .map_err(|_| Error::invalid(format!("'{s}' is neither a prime nor Q")))?;
        Coefficients::prime(p)
    }
}

/// Homological connectivity: -2 for the empty space, otherwise the largest k
/// with vanishing reduced homology up to k, or infinity if it all vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Connectivity {
    Finite(i64),
    Infinite,
}

impl fmt::Display for Connectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Connectivity::Finite(k) => write!(f, "{k}"),
            Connectivity::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Connectivity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Connectivity::Finite(k) => s.serialize_i64(*k),
            Connectivity::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Connectivity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) if s == "inf" => Ok(Connectivity::Infinite),
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(Connectivity::Finite)
                .ok_or_else(|| de::Error::custom("connectivity out of range")),
            other => Err(de::Error::custom(format!("bad connectivity {other}"))),
        }
    }
}

/// Reduced Betti numbers, stored sparsely (zero ranks are omitted).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiVector {
    field: String,
    ranks: BTreeMap<i32, BigUint>,
}

impl BettiVector {
    pub fn new(field: impl Into<String>, ranks: impl IntoIterator<Item = (i32, BigUint)>) -> Self {
        BettiVector {
            field: field.into(),
            ranks: ranks.into_iter().filter(|(_, r)| !r.is_zero()).collect(),
        }
    }

    pub fn from_counts(
        field: impl Into<String>,
        ranks: impl IntoIterator<Item = (i32, u64)>,
    ) -> Self {
        Self::new(field, ranks.into_iter().map(|(d, r)| (d, BigUint::from(r))))
    }

    /// Reduced homology of the empty space.
    pub fn void(field: impl Into<String>) -> Self {
        Self::from_counts(field, [(-1, 1)])
    }

    pub fn zero(field: impl Into<String>) -> Self {
        Self::new(field, [])
    }

    pub fn field(&self) -> &str {
        &self.field
    }

    pub fn ranks(&self) -> &BTreeMap<i32, BigUint> {
        &self.ranks
    }

    pub fn get(&self, d: i32) -> BigUint {
        self.ranks.get(&d).cloned().unwrap_or_default()
    }

    /// Rank in dimension `d` as a machine integer (saturating).
    pub fn get_u64(&self, d: i32) -> u64 {
        self.ranks
            .get(&d)
            .map_or(0, |r| r.to_u64().unwrap_or(u64::MAX))
    }

    pub fn is_void(&self) -> bool {
        self.ranks.contains_key(&-1)
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Same ranks, regardless of the coefficient tag.
    pub fn same_ranks(&self, other: &BettiVector) -> bool {
        self.ranks == other.ranks
    }

    pub fn conn_h(&self) -> Connectivity {
        conn_h(self)
    }

    /// Sum of `(-1)^d * b_d` over `d >= -1`.
    pub fn euler_characteristic(&self) -> BigInt {
        self.ranks
            .iter()
            .map(|(&d, r)| {
                let r = BigInt::from(r.clone());
                if d.rem_euclid(2) == 0 {
                    r
                } else {
                    -r
                }
            })
            .sum()
    }

    pub fn with_field(mut self, field: impl Into<String>) -> Self {
        self.field = field.into();
        self
    }

    /// Betti vector of the join of two spaces:
    /// `b_n(X * Y) = sum_{p + q = n - 1} b_p(X) b_q(Y)`, with dimension -1 included.
    pub fn join_convolution(&self, other: &BettiVector) -> BettiVector {
        let mut out: BTreeMap<i32, BigUint> = BTreeMap::new();
        for (&p, a) in &self.ranks {
            for (&q, b) in &other.ranks {
                *out.entry(p + q + 1).or_default() += a * b;
            }
        }
        BettiVector::new(self.field.clone(), out)
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .ranks
            .iter()
            .map(|(d, r)| format!("{d}: {r}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub(crate) fn rank_json(r: &BigUint) -> serde_json::Value {
    match r.to_u64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(r.to_string()),
    }
}

impl BettiVector {
    /// `{"d": rank, ...}` with nonzero ranks only.
    pub fn ranks_json(&self) -> serde_json::Value {
        serde_json::Value::Object(
            self.ranks
                .iter()
                .map(|(d, r)| (d.to_string(), rank_json(r)))
                .collect(),
        )
    }
}

impl Serialize for BettiVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("field", &self.field)?;
        m.serialize_entry("ranks", &self.ranks_json())?;
        m.serialize_entry("conn_H", &self.conn_h())?;
        m.end()
    }
}

impl<'de> Deserialize<'de> for BettiVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            field: String,
            ranks: BTreeMap<String, serde_json::Value>,
        }
        let raw = Raw::deserialize(d)?;
        let mut ranks = Vec::new();
        for (k, v) in raw.ranks {
            let dim: i32 = k.parse().map_err(de::Error::custom)?;
            let rank = match v {
                serde_json::Value::Number(n) => n
                    .as_u64()
                    .map(BigUint::from)
                    .ok_or_else(|| de::Error::custom("rank must be a nonnegative integer"))?,
                serde_json::Value::String(s) => s.parse().map_err(de::Error::custom)?,
                _ => return Err(de::Error::custom("rank must be an integer")),
            };
            ranks.push((dim, rank));
        }
        Ok(BettiVector::new(raw.field, ranks))
    }
}

/// Homological connectivity of a space with reduced Betti vector `b`.
pub fn conn_h(b: &BettiVector) -> Connectivity {
    if b.is_void() {
        return Connectivity::Finite(-2);
    }
    match b.ranks.keys().next() {
        Some(&d) => Connectivity::Finite(d as i64 - 1),
        None => Connectivity::Infinite,
    }
}

/// Reduced Betti vector of `k`.
pub fn betti(k: &SimplicialComplex, coeffs: Coefficients, limits: &Limits) -> Result<BettiVector> {
    Ok(betti_with_census(k, coeffs, limits)?.0)
}

/// Reduced Betti vector together with the face census used to compute it.
pub fn betti_with_census(
    k: &SimplicialComplex,
    coeffs: Coefficients,
    limits: &Limits,
) -> Result<(BettiVector, FaceCensus)> {
    let census = k.face_census(limits)?;
    let p = match coeffs {
        Coefficients::Prime(p) => {
            Coefficients::prime(p)?;
            p
        }
        Coefficients::Rational => {
            let h = integral_homology(k, limits, DEFAULT_MAX_DENSE_ENTRIES)?;
            return Ok((h.free.with_field(coeffs.tag()), census));
        }
    };
    let Some(top) = census.top_dimension() else {
        return Ok((BettiVector::void(coeffs.tag()), census));
    };
    // rank[d] = rank of the boundary out of dimension d, for d in 0..=top.
    let mut rank = vec![0u64; top as usize + 2];
    let mut upper = k.faces_of_dimension(top, limits)?;
    let mut cleared = vec![false; upper.len()];
    for d in (0..=top).rev() {
        let lower = k.faces_of_dimension(d - 1, limits)?;
        let (r, pivots) = modp::boundary_rank(&upper, &lower, p, &cleared, limits)?;
        rank[d as usize] = r as u64;
        cleared = pivots;
        upper = lower;
    }
    let rank_at = |d: i32| if d < 0 { 0 } else { rank[d as usize] };
    let ranks = (-1..=top).map(|d| (d, census.get(d) - rank_at(d) - rank_at(d + 1)));
    Ok((BettiVector::from_counts(coeffs.tag(), ranks), census))
}

/// Euler characteristic of the augmented chain complex equals the alternating
/// Betti sum. The void complex's chain complex still has the empty generator.
pub fn euler_consistent(census: &FaceCensus, b: &BettiVector) -> bool {
    let augmented = census.euler_characteristic() - if census.total() == 0 { 1 } else { 0 };
    BigInt::from(augmented) == b.euler_characteristic()
}

/// Per-field Betti vectors and whether they all coincide.
#[derive(Clone, Debug, Serialize)]
pub struct MultiFieldBetti {
    pub vectors: Vec<BettiVector>,
    pub agree: bool,
}

/// Betti vectors over at least two distinct fields; disagreement (a sign of
/// torsion) is reported in `agree`, not raised.
pub fn betti_multi_field(
    k: &SimplicialComplex,
    fields: &[Coefficients],
    limits: &Limits,
) -> Result<MultiFieldBetti> {
    Ok(betti_multi_field_with_census(k, fields, limits)?.0)
}

pub fn betti_multi_field_with_census(
    k: &SimplicialComplex,
    fields: &[Coefficients],
    limits: &Limits,
) -> Result<(MultiFieldBetti, FaceCensus)> {
    if fields.len() < 2
        || fields
            .iter()
            .enumerate()
            .any(|(i, f)| fields[..i].contains(f))
    {
        return Err(Error::invalid(
            "need at least two distinct coefficient fields",
        ));
    }
    let mut vectors = Vec::with_capacity(fields.len());
    let mut census = FaceCensus::default();
    for &f in fields {
        let (b, c) = betti_with_census(k, f, limits)?;
        vectors.push(b);
        census = c;
    }
    let agree = vectors.windows(2).all(|w| w[0].same_ranks(&w[1]));
    Ok((MultiFieldBetti { vectors, agree }, census))
}
