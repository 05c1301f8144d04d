//! Symbolic homotopy types: disjoint unions of wedges of spheres.
//!
//! A [`SphereSpace`] is either empty or a nonempty multiset of connected
//! [`Component`]s, each a wedge of spheres of dimension at least one (the empty
//! wedge is a point). An `S^0` wedge summand is never stored inside a
//! component; it is an extra point component instead, so `S^0` itself is two
//! points. Equality is equality of component multisets.

mod forest;
mod line;

pub use forest::forest_lex_homotopy;
pub use line::{
    closed_form_count, closed_form_l, closed_form_terms, complete_homotopy, cycle_homotopy,
    line_connectivity, line_recursion_step, x_space, ClosedFormTerm,
};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{self as serde_ser, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::BettiVector;

/// Tag used for Betti vectors read off symbolic spaces.
pub const SYMBOLIC_FIELD: &str = "symbolic";

/// A connected wedge of spheres: dimension (>= 1) to multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Component {
    dims: BTreeMap<u32, BigUint>,
}

impl Component {
    pub fn point() -> Self {
        Component::default()
    }

    /// Panics on dimension 0; use [`SphereSpace::from_dimension_counts`] for those.
    pub fn wedge(dims: impl IntoIterator<Item = (u32, BigUint)>) -> Self {
        let mut c = Component::point();
        for (d, m) in dims {
            assert!(d >= 1, "S^0 summands are separate point components");
            c.add(d, m);
        }
        c
    }

    pub fn is_point(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &BTreeMap<u32, BigUint> {
        &self.dims
    }

    fn add(&mut self, d: u32, m: BigUint) {
        if !m.is_zero() {
            *self.dims.entry(d).or_default() += m;
        }
    }

    fn merge(&mut self, other: &Component) {
        for (&d, m) in &other.dims {
            self.add(d, m.clone());
        }
    }

    fn shifted(&self, by: u32) -> Component {
        Component {
            dims: self
                .dims
                .iter()
                .map(|(&d, m)| (d + by, m.clone()))
                .collect(),
        }
    }

    /// Join of two connected wedges: `S^a * S^b = S^(a+b+1)`, distributed over
    /// wedge summands; a point absorbs everything (the cone is contractible).
    fn join(&self, other: &Component) -> Component {
        let mut out = Component::point();
        for (&a, m) in &self.dims {
            for (&b, n) in &other.dims {
                out.add(a + b + 1, m * n);
            }
        }
        out
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SphereSpace {
    /// `None` is the empty space; otherwise sorted and nonempty.
    components: Option<Vec<Component>>,
}

impl SphereSpace {
    pub fn empty() -> Self {
        SphereSpace { components: None }
    }

    pub fn point() -> Self {
        Self::from_components(vec![Component::point()])
    }

    pub fn sphere(d: u32) -> Self {
        Self::wedge_of_spheres(BigUint::one(), d)
    }

    /// `n` copies of `S^k` wedged together; `n = 0` is a point.
    pub fn wedge_of_spheres(n: impl Into<BigUint>, k: u32) -> Self {
        Self::from_dimension_counts([(k, n.into())]).expect("small S^0 multiplicity")
    }

    /// A single wedge given by dimension multiplicities. Each `S^0` summand
    /// becomes an extra point component, so its multiplicity must be small.
    pub fn from_dimension_counts(counts: impl IntoIterator<Item = (u32, BigUint)>) -> Result<Self> {
        let mut main = Component::point();
        let mut extra_points = 0usize;
        for (d, m) in counts {
            if d == 0 {
                extra_points += m
                    .to_usize()
                    .filter(|&x| x <= 1 << 24)
                    .ok_or_else(|| Error::invalid("too many S^0 summands to represent"))?;
            } else {
                main.add(d, m);
            }
        }
        let mut comps = vec![main];
        comps.extend(std::iter::repeat_n(Component::point(), extra_points));
        Ok(Self::from_components(comps))
    }

    /// Disjoint union of the given components; no components means empty.
    pub fn from_components(mut components: Vec<Component>) -> Self {
        if components.is_empty() {
            return Self::empty();
        }
        components.sort();
        SphereSpace {
            components: Some(components),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_none()
    }

    /// Components in canonical (sorted) order; empty slice for the empty space.
    pub fn components(&self) -> &[Component] {
        self.components.as_deref().unwrap_or(&[])
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    pub fn is_point(&self) -> bool {
        self.is_connected() && self.components()[0].is_point()
    }

    /// Canonical form: sorted, nonempty, no dimension-0 or zero-multiplicity entries.
    pub fn is_canonical(&self) -> bool {
        match &self.components {
            None => true,
            Some(c) => {
                !c.is_empty()
                    && c.windows(2).all(|w| w[0] <= w[1])
                    && c.iter()
                        .all(|comp| comp.dims.iter().all(|(&d, m)| d >= 1 && !m.is_zero()))
            }
        }
    }

    /// `Some((n, k))` if this is `n` copies of `S^k` wedged together. A point
    /// is reported as `(0, 0)`.
    pub fn as_uniform_wedge(&self) -> Option<(BigUint, u32)> {
        let comps = self.components();
        let points = comps.iter().filter(|c| c.is_point()).count();
        let solid: Vec<&Component> = comps.iter().filter(|c| !c.is_point()).collect();
        match (solid.as_slice(), points) {
            ([], 1) => Some((BigUint::zero(), 0)),
            ([], p) if p >= 2 => Some((BigUint::from(p - 1), 0)),
            ([c], 0) if c.dims.len() == 1 => {
                let (&k, n) = c.dims.iter().next().expect("one entry");
                Some((n.clone(), k))
            }
            _ => None,
        }
    }

    /// Wedge sum. One component of each side is fused at the basepoint,
    /// preferring non-point components; the others are carried along.
    pub fn wedge(&self, other: &SphereSpace) -> Result<SphereSpace> {
        let (Some(a), Some(b)) = (&self.components, &other.components) else {
            return Err(Error::invalid("wedge with the empty space is undefined"));
        };
        // Sorted order puts point components first, so the last one is
        // non-point whenever one exists.
        let (a_last, a_rest) = a.split_last().expect("nonempty");
        let (b_last, b_rest) = b.split_last().expect("nonempty");
        let mut fused = a_last.clone();
        fused.merge(b_last);
        let mut comps: Vec<Component> = a_rest.iter().chain(b_rest).cloned().collect();
        comps.push(fused);
        Ok(Self::from_components(comps))
    }

    /// `n`-fold wedge of copies of `self`; `n = 0` gives a point.
    pub fn wedge_power(&self, n: u64) -> Result<SphereSpace> {
        let mut acc = SphereSpace::point();
        for _ in 0..n {
            acc = acc.wedge(self)?;
        }
        Ok(acc)
    }

    /// Unreduced suspension. `Σ∅ = S^0`, and a space with `c` components
    /// suspends to the shifted wedge of all of them plus `c - 1` circles.
    pub fn suspend(&self) -> SphereSpace {
        let Some(comps) = &self.components else {
            return Self::from_components(vec![Component::point(), Component::point()]);
        };
        let mut out = Component::point();
        for c in comps {
            out.merge(&c.shifted(1));
        }
        out.add(1, BigUint::from(comps.len() - 1));
        Self::from_components(vec![out])
    }

    pub fn suspend_times(&self, times: u32) -> SphereSpace {
        (0..times).fold(self.clone(), |x, _| x.suspend())
    }

    /// Join, by structural recursion on components:
    /// `(A ⊔ B) * C ≃ (A * C) ∨ (B * C) ∨ ΣC`, symmetrically in the second
    /// argument, bottoming out at joins of connected wedges. The empty space
    /// is the identity.
    pub fn join(&self, other: &SphereSpace) -> SphereSpace {
        let (Some(a), Some(b)) = (&self.components, &other.components) else {
            return if self.is_empty() {
                other.clone()
            } else {
                self.clone()
            };
        };
        if a.len() >= 2 {
            let first = Self::from_components(vec![a[0].clone()]);
            let rest = Self::from_components(a[1..].to_vec());
            let left = first.join(other);
            let right = rest.join(other);
            return left
                .wedge(&right)
                .and_then(|x| x.wedge(&other.suspend()))
                .expect("joins of nonempty spaces are nonempty");
        }
        if b.len() >= 2 {
            return other.join(self);
        }
        Self::from_components(vec![a[0].join(&b[0])])
    }

    /// Disjoint union; the empty space is the identity.
    pub fn disjoint_union(&self, other: &SphereSpace) -> SphereSpace {
        let comps: Vec<Component> = self
            .components()
            .iter()
            .chain(other.components())
            .cloned()
            .collect();
        Self::from_components(comps)
    }

    /// Reduced Betti numbers: `b_0` is one less than the component count,
    /// `b_d` the total multiplicity of `S^d`, and the empty space has `b_-1 = 1`.
    pub fn reduced_betti(&self) -> BettiVector {
        let Some(comps) = &self.components else {
            return BettiVector::void(SYMBOLIC_FIELD);
        };
        let mut ranks: BTreeMap<i32, BigUint> = BTreeMap::new();
        ranks.insert(0, BigUint::from(comps.len() - 1));
        for c in comps {
            for (&d, m) in &c.dims {
                *ranks.entry(d as i32).or_default() += m;
            }
        }
        BettiVector::new(SYMBOLIC_FIELD, ranks)
    }
}

/// Reduced Betti vector of a symbolic space.
pub fn reduced_betti_of(x: &SphereSpace) -> BettiVector {
    x.reduced_betti()
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return f.write_str("pt");
        }
        let terms: Vec<String> = self
            .dims
            .iter()
            .map(|(d, m)| {
                if m.is_one() {
                    format!("S^{d}")
                } else if *m == BigUint::from(2u32) {
                    format!("S^{d} v S^{d}")
                } else {
                    format!("{m}·S^{d}")
                }
            })
            .collect();
        f.write_str(&terms.join(" v "))
    }
}

impl fmt::Display for SphereSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.components() {
            [] => f.write_str("EMPTY"),
            [c] => write!(f, "{c}"),
            many => {
                let parts: Vec<String> = many.iter().map(|c| format!("({c})")).collect();
                f.write_str(&parts.join(" ⊔ "))
            }
        }
    }
}

impl fmt::Debug for SphereSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SphereSpace({self})")
    }
}

/// Largest total multiplicity a component may have when serialized as a
/// list of dimensions.
const MAX_SERIALIZED_SPHERES: u64 = 1_000_000;

impl Serialize for SphereSpace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let Some(comps) = &self.components else {
            return s.serialize_str("EMPTY");
        };
        let mut lists = Vec::with_capacity(comps.len());
        for c in comps {
            let mut dims = Vec::new();
            for (&d, m) in &c.dims {
                let m = m
                    .to_u64()
                    .filter(|&m| m + dims.len() as u64 <= MAX_SERIALIZED_SPHERES)
                    .ok_or_else(|| {
                        serde_ser::Error::custom("component too large to list sphere by sphere")
                    })?;
                dims.extend(std::iter::repeat_n(d, m as usize));
            }
            lists.push(dims);
        }
        #[derive(Serialize)]
        struct Repr {
            components: Vec<Vec<u32>>,
        }
        Repr { components: lists }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SphereSpace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            components: Vec<Vec<u32>>,
        }
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Either {
            Sentinel(String),
            Space(Repr),
        }
        match Either::deserialize(d)? {
            Either::Sentinel(s) if s == "EMPTY" => Ok(SphereSpace::empty()),
            Either::Sentinel(s) => Err(de::Error::custom(format!("unknown sentinel {s:?}"))),
            Either::Space(r) if r.components.is_empty() => {
                Err(de::Error::custom("use \"EMPTY\" for the empty space"))
            }
            Either::Space(r) => {
                let mut comps = Vec::new();
                for list in r.components {
                    let mut counts: BTreeMap<u32, BigUint> = BTreeMap::new();
                    for d in list {
                        *counts.entry(d).or_default() += 1u32;
                    }
                    let part =
                        SphereSpace::from_dimension_counts(counts).map_err(de::Error::custom)?;
                    comps.extend(part.components().iter().cloned());
                }
                Ok(SphereSpace::from_components(comps))
            }
        }
    }
}

#[cfg(test)]
mod tests;
