//! Independence complexes stored by their facets.
//!
//! A complex keeps only its maximal faces plus the induced 1-skeleton. Faces
//! of a given dimension are regenerated on demand in lexicographic order,
//! which keeps memory proportional to the facet count.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;

#[derive(Clone)]
pub struct SimplicialComplex {
    vertex_count: usize,
    facets: Vec<VertexSet>,
    void: bool,
    /// Every set whose pairs are all skeleton edges is a face.
    flag: bool,
    skeleton: Vec<VertexSet>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.void == other.void
            && self.vertex_count == other.vertex_count
            && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.void {
            return f.write_str("SimplicialComplex(VOID)");
        }
        f.debug_struct("SimplicialComplex")
            .field("vertex_count", &self.vertex_count)
            .field("facets", &self.facets)
            .finish()
    }
}

impl SimplicialComplex {
    /// The complex with no simplices; its realization is the empty space.
    pub fn void() -> Self {
        SimplicialComplex {
            vertex_count: 0,
            facets: Vec::new(),
            void: true,
            flag: true,
            skeleton: Vec::new(),
        }
    }

    /// Complex generated by arbitrary faces. Non-maximal inputs are dropped;
    /// an empty list (or only the empty face) yields the void complex.
    pub fn from_facets(vertex_count: usize, faces: &[Vec<usize>]) -> Result<Self> {
        let mut sets = Vec::with_capacity(faces.len());
        for f in faces {
            if let Some(&bad) = f.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::InvalidVertex {
                    vertex: bad,
                    vertex_count,
                });
            }
            sets.push(VertexSet::from_iter_in(vertex_count, f.iter().copied()));
        }
        sets.sort_by_key(|s| std::cmp::Reverse(s.len()));
        let mut maximal: Vec<VertexSet> = Vec::new();
        for s in sets {
            if !maximal.iter().any(|m| s.is_subset(m)) {
                maximal.push(s);
            }
        }
        Ok(Self::from_maximal(vertex_count, maximal, false))
    }

    /// `facets` must already be an antichain.
    fn from_maximal(vertex_count: usize, mut facets: Vec<VertexSet>, flag: bool) -> Self {
        facets.retain(|f| !f.is_empty());
        if facets.is_empty() {
            return Self::void();
        }
        facets.sort();
        let mut skeleton = vec![VertexSet::new(vertex_count); vertex_count];
        for f in &facets {
            for v in f.iter() {
                skeleton[v].union_with(f);
            }
        }
        for (v, row) in skeleton.iter_mut().enumerate() {
            row.remove(v);
        }
        SimplicialComplex {
            vertex_count,
            facets,
            void: false,
            flag,
            skeleton,
        }
    }

    pub fn is_void(&self) -> bool {
        self.void
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Facets in lexicographic order.
    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    /// Top dimension; `None` for the void complex.
    pub fn dimension(&self) -> Option<i32> {
        if self.void {
            None
        } else {
            Some(self.facets.iter().map(VertexSet::len).max().unwrap_or(0) as i32 - 1)
        }
    }

    pub fn is_antichain(&self) -> bool {
        self.facets.iter().enumerate().all(|(i, a)| {
            self.facets
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || !a.is_subset(b))
        })
    }

    /// Vertices lying in at least one facet.
    fn support(&self) -> VertexSet {
        let mut s = VertexSet::new(self.vertex_count);
        for f in &self.facets {
            s.union_with(f);
        }
        s
    }

    fn in_some_facet(&self, face: &VertexSet) -> bool {
        self.facets.iter().any(|f| face.is_subset(f))
    }

    /// All faces of dimension `d`, lexicographically ordered.
    pub fn faces_of_dimension(&self, d: i32, limits: &Limits) -> Result<FaceList> {
        let mut out = FaceList::new(d);
        if self.void || d < -1 {
            return Ok(out);
        }
        if d == -1 {
            out.count = 1;
            return Ok(out);
        }
        let width = (d + 1) as usize;
        let mut prefix = Vec::with_capacity(width);
        self.extend_faces(&self.support(), width, &mut prefix, &mut |face| {
            out.data.extend_from_slice(face);
            out.count += 1;
            limits.check_faces(out.count as u64)
        })?;
        Ok(out)
    }

    /// Depth-first clique search over the skeleton; ascending choices give
    /// lexicographic output order.
    fn extend_faces(
        &self,
        candidates: &VertexSet,
        need: usize,
        prefix: &mut Vec<u32>,
        emit: &mut dyn FnMut(&[u32]) -> Result<()>,
    ) -> Result<()> {
        if need == 0 {
            if !self.flag {
                let face =
                    VertexSet::from_iter_in(self.vertex_count, prefix.iter().map(|&v| v as usize));
                if !self.in_some_facet(&face) {
                    return Ok(());
                }
            }
            return emit(prefix);
        }
        if candidates.len() < need {
            return Ok(());
        }
        for v in candidates.iter() {
            let mut next = candidates.intersection(&self.skeleton[v]);
            next.retain_above(v);
            prefix.push(v as u32);
            self.extend_faces(&next, need - 1, prefix, emit)?;
            prefix.pop();
        }
        Ok(())
    }

    /// Number of faces per dimension, including the empty face.
    pub fn face_census(&self, limits: &Limits) -> Result<FaceCensus> {
        let mut counts = BTreeMap::new();
        if self.void {
            return Ok(FaceCensus { counts });
        }
        let mut by_size: Vec<u64> = vec![1];
        let mut total = 1u64;
        let mut prefix = Vec::new();
        self.census_walk(
            &self.support(),
            &mut prefix,
            &mut by_size,
            &mut total,
            limits,
        )?;
        for (size, c) in by_size.into_iter().enumerate() {
            if c > 0 {
                counts.insert(size as i32 - 1, c);
            }
        }
        Ok(FaceCensus { counts })
    }

    fn census_walk(
        &self,
        candidates: &VertexSet,
        prefix: &mut Vec<usize>,
        by_size: &mut Vec<u64>,
        total: &mut u64,
        limits: &Limits,
    ) -> Result<()> {
        for v in candidates.iter() {
            prefix.push(v);
            let is_face = self.flag
                || self.in_some_facet(&VertexSet::from_iter_in(
                    self.vertex_count,
                    prefix.iter().copied(),
                ));
            if is_face {
                if by_size.len() <= prefix.len() {
                    by_size.push(0);
                }
                by_size[prefix.len()] += 1;
                *total += 1;
                limits.check_faces(*total)?;
                let mut next = candidates.intersection(&self.skeleton[v]);
                next.retain_above(v);
                self.census_walk(&next, prefix, by_size, total, limits)?;
            }
            prefix.pop();
        }
        Ok(())
    }

    /// Every face, as sorted id lists, across all dimensions (small complexes only).
    pub fn face_set(&self, limits: &Limits) -> Result<BTreeSet<Vec<u32>>> {
        let mut out = BTreeSet::new();
        if let Some(top) = self.dimension() {
            for d in -1..=top {
                out.extend(
                    self.faces_of_dimension(d, limits)?
                        .iter()
                        .map(<[u32]>::to_vec),
                );
            }
        }
        Ok(out)
    }

    /// Join: facets are pairwise unions, with `other` relabelled after `self`.
    /// The void complex is the identity.
    pub fn join(&self, other: &SimplicialComplex, limits: &Limits) -> Result<SimplicialComplex> {
        if self.void {
            return Ok(other.clone());
        }
        if other.void {
            return Ok(self.clone());
        }
        limits.check_faces(self.facets.len() as u64 * other.facets.len() as u64)?;
        let n = self.vertex_count + other.vertex_count;
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for a in &self.facets {
            let a = a.shifted(0, n);
            for b in &other.facets {
                let mut f = b.shifted(self.vertex_count, n);
                f.union_with(&a);
                facets.push(f);
            }
        }
        Ok(Self::from_maximal(n, facets, self.flag && other.flag))
    }

    /// Disjoint union with `other` relabelled after `self`. The void complex is the identity.
    pub fn disjoint_union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        if self.void {
            return other.clone();
        }
        if other.void {
            return self.clone();
        }
        let n = self.vertex_count + other.vertex_count;
        let facets = self
            .facets
            .iter()
            .map(|f| f.shifted(0, n))
            .chain(other.facets.iter().map(|f| f.shifted(self.vertex_count, n)))
            .collect();
        Self::from_maximal(n, facets, self.flag && other.flag)
    }

    /// One facet per line as sorted space-separated ids, or a single `VOID` line.
    pub fn dump(&self) -> String {
        if self.void {
            return "VOID\n".to_string();
        }
        let mut out = String::new();
        for f in &self.facets {
            let ids: Vec<String> = f.iter().map(|v| v.to_string()).collect();
            out.push_str(&ids.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Faces of one dimension stored contiguously, `dim + 1` ids per face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceList {
    dim: i32,
    count: usize,
    data: Vec<u32>,
}

impl FaceList {
    fn new(dim: i32) -> Self {
        FaceList {
            dim,
            count: 0,
            data: Vec::new(),
        }
    }

    pub fn dim(&self) -> i32 {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    fn width(&self) -> usize {
        (self.dim + 1).max(0) as usize
    }

    pub fn get(&self, i: usize) -> &[u32] {
        let w = self.width();
        &self.data[i * w..(i + 1) * w]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.count).map(move |i| self.get(i))
    }

    /// Position of `face` (sorted ids) in this list.
    pub fn index_of(&self, face: &[u32]) -> Option<usize> {
        if face.len() != self.width() {
            return None;
        }
        let (mut lo, mut hi) = (0, self.count);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(face) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

/// Face counts per dimension (dimension -1 is the empty face).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FaceCensus {
    pub counts: BTreeMap<i32, u64>,
}

impl FaceCensus {
    pub fn get(&self, d: i32) -> u64 {
        self.counts.get(&d).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn top_dimension(&self) -> Option<i32> {
        self.counts.keys().next_back().copied()
    }

    /// Sum of `(-1)^d * count(d)` over `d >= -1`.
    pub fn euler_characteristic(&self) -> i128 {
        self.counts
            .iter()
            .map(|(&d, &c)| {
                if d.rem_euclid(2) == 0 {
                    c as i128
                } else {
                    -(c as i128)
                }
            })
            .sum()
    }
}

/// Independence complex of `g`: its facets are the maximal independent sets.
pub fn independence_complex(g: &Graph, limits: &Limits) -> Result<SimplicialComplex> {
    independence_complex_on(g, &g.all_vertices(), limits)
}

/// Independence complex of the induced subgraph on `kept`, keeping `g`'s labels.
pub fn independence_complex_on(
    g: &Graph,
    kept: &VertexSet,
    limits: &Limits,
) -> Result<SimplicialComplex> {
    if kept.is_empty() {
        return Ok(SimplicialComplex::void());
    }
    let facets = maximal_independent_sets(g, kept, limits)?;
    Ok(SimplicialComplex::from_maximal(
        g.vertex_count(),
        facets,
        true,
    ))
}

/// Maximal independent sets of the subgraph induced on `within`, via
/// Bron–Kerbosch with pivoting on the complement graph.
pub fn maximal_independent_sets(
    g: &Graph,
    within: &VertexSet,
    limits: &Limits,
) -> Result<Vec<VertexSet>> {
    let n = g.vertex_count();
    let non_adjacent: Vec<VertexSet> = (0..n)
        .map(|v| {
            let mut s = VertexSet::full(n);
            s.difference_with(g.neighbors(v));
            s.remove(v);
            s
        })
        .collect();
    let mut out = Vec::new();
    let mut current = VertexSet::new(n);
    bron_kerbosch(
        &non_adjacent,
        &mut current,
        within.clone(),
        VertexSet::new(n),
        &mut out,
        limits,
    )?;
    out.sort();
    Ok(out)
}

fn bron_kerbosch(
    compat: &[VertexSet],
    current: &mut VertexSet,
    mut candidates: VertexSet,
    mut excluded: VertexSet,
    out: &mut Vec<VertexSet>,
    limits: &Limits,
) -> Result<()> {
    if candidates.is_empty() {
        if excluded.is_empty() {
            out.push(current.clone());
            limits.check_faces(out.len() as u64)?;
            if out.len().is_multiple_of(4096) {
                limits.check_time()?;
            }
        }
        return Ok(());
    }
    let pivot = candidates
        .iter()
        .chain(excluded.iter())
        .max_by_key(|&u| {
            (
                candidates.intersection_len(&compat[u]),
                std::cmp::Reverse(u),
            )
        })
        .expect("candidates nonempty");
    let branch = candidates.difference(&compat[pivot]);
    for v in branch.iter() {
        current.insert(v);
        bron_kerbosch(
            compat,
            current,
            candidates.intersection(&compat[v]),
            excluded.intersection(&compat[v]),
            out,
            limits,
        )?;
        current.remove(v);
        candidates.remove(v);
        excluded.insert(v);
    }
    Ok(())
}

/// The three complexes of the vertex decomposition at `v`, all in `g`'s labels:
/// `I(G - v)`, `I(G - N(v))` and `I(G - N[v])`. Faces of `I(G)` are the union of
/// the first two; their intersection is the third.
pub fn neighborhood_decomposition(
    g: &Graph,
    v: usize,
    limits: &Limits,
) -> Result<(SimplicialComplex, SimplicialComplex, SimplicialComplex)> {
    let open = g.open_neighborhood(v)?;
    let closed = g.closed_neighborhood(v)?;
    let all = g.all_vertices();
    let mut minus_v = all.clone();
    minus_v.remove(v);
    Ok((
        independence_complex_on(g, &minus_v, limits)?,
        independence_complex_on(g, &all.difference(&open), limits)?,
        independence_complex_on(g, &all.difference(&closed), limits)?,
    ))
}
