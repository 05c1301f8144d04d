//! Finite simple graphs with dense bit-packed adjacency.

mod expr;
pub mod forests;
mod generators;

pub use expr::{parse_edge_list, parse_graph_expr, write_edge_list, GraphExpr};
pub use generators::{random_forest, random_graph};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// A finite simple undirected graph on vertices `0..vertex_count`.
///
/// Graphs are immutable once built; every operation returns a new graph.
#[derive(Clone)]
pub struct Graph {
    adjacency: Vec<VertexSet>,
    label: Option<String>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adjacency == other.adjacency
    }
}

impl Eq for Graph {}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("label", &self.label)
            .field("vertex_count", &self.vertex_count())
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list. Loops and out-of-range ids are rejected;
    /// repeated edges collapse.
    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut adjacency = vec![VertexSet::new(vertex_count); vertex_count];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::InvalidVertex {
                        vertex: w,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            adjacency[u].insert(v);
            adjacency[v].insert(u);
        }
        Ok(Graph {
            adjacency,
            label: None,
        })
    }

    fn from_adjacency(adjacency: Vec<VertexSet>) -> Self {
        Graph {
            adjacency,
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, row) in self.adjacency.iter().enumerate() {
            out.extend(row.iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    #[inline]
    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                vertex_count: self.vertex_count(),
            })
        }
    }

    pub fn open_neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(self.adjacency[v].clone())
    }

    pub fn closed_neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        let mut s = self.adjacency[v].clone();
        s.insert(v);
        Ok(s)
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    /// Induced subgraph on the complement of `removed`, relabelled densely.
    ///
    /// The second component maps each old id to its new id (`None` if deleted).
    pub fn delete_vertices(&self, removed: &VertexSet) -> Result<(Graph, Vec<Option<usize>>)> {
        if let Some(bad) = removed.iter().find(|&v| v >= self.vertex_count()) {
            return Err(Error::InvalidVertex {
                vertex: bad,
                vertex_count: self.vertex_count(),
            });
        }
        let mut map = vec![None; self.vertex_count()];
        let mut next = 0;
        for (v, slot) in map.iter_mut().enumerate() {
            if !removed.contains(v) {
                *slot = Some(next);
                next += 1;
            }
        }
        let kept: Vec<usize> = (0..self.vertex_count())
            .filter(|&v| !removed.contains(v))
            .collect();
        let adjacency = kept
            .iter()
            .map(|&u| {
                VertexSet::from_iter_in(next, self.adjacency[u].iter().filter_map(|w| map[w]))
            })
            .collect();
        Ok((Graph::from_adjacency(adjacency), map))
    }

    /// Induced subgraph on `kept`, relabelled densely in ascending id order.
    pub fn induced_subgraph(&self, kept: &VertexSet) -> Graph {
        let removed = self.all_vertices().difference(kept);
        self.delete_vertices(&removed)
            .expect("complement lies in range")
            .0
    }

    /// Vertex sets of connected components, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let n = self.vertex_count();
        let mut seen = VertexSet::new(n);
        let mut out = Vec::new();
        for start in 0..n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::new(n);
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(u) = stack.pop() {
                comp.insert(u);
                for w in self.adjacency[u].iter() {
                    if !seen.contains(w) {
                        seen.insert(w);
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// A graph is a forest iff |E| = |V| - #components.
    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.vertex_count()
    }

    /// True iff some vertex is adjacent to every other vertex.
    /// The one-vertex graph counts as a star; the null graph does not.
    pub fn is_star(&self) -> bool {
        self.dominating_vertex().is_some()
    }

    /// Smallest vertex adjacent to all others, if any.
    pub fn dominating_vertex(&self) -> Option<usize> {
        let n = self.vertex_count();
        (0..n).find(|&v| self.degree(v) + 1 == n)
    }

    /// Smallest-id vertex `w` of degree one, together with its unique neighbour.
    pub fn find_leaf_pair(&self) -> Option<(usize, usize)> {
        (0..self.vertex_count())
            .find(|&w| self.degree(w) == 1)
            .map(|w| (w, self.adjacency[w].first().expect("degree one")))
    }

    /// Connected, acyclic, maximum degree at most two.
    pub fn is_path_graph(&self) -> bool {
        self.vertex_count() >= 1
            && self.is_connected()
            && self.is_forest()
            && (0..self.vertex_count()).all(|v| self.degree(v) <= 2)
    }

    /// Graph on `V(G) x V(H)` with `(u1,v1) ~ (u2,v2)` iff `u1 ~ u2` in G, or
    /// `u1 == u2` and `v1 ~ v2` in H. Vertex `(u, v)` gets id `u * |V(H)| + v`.
    pub fn lex_product(&self, h: &Graph) -> Graph {
        let hn = h.vertex_count();
        let n = self.vertex_count() * hn;
        let mut adjacency = Vec::with_capacity(n);
        for u in 0..self.vertex_count() {
            // Row template shared by every (u, *): all vertices over G-neighbours of u.
            let mut base = VertexSet::new(n);
            for u2 in self.adjacency[u].iter() {
                for v2 in 0..hn {
                    base.insert(u2 * hn + v2);
                }
            }
            for v in 0..hn {
                let mut row = base.clone();
                for v2 in h.adjacency[v].iter() {
                    row.insert(u * hn + v2);
                }
                adjacency.push(row);
            }
        }
        let g = Graph::from_adjacency(adjacency);
        match (self.label(), h.label()) {
            (Some(a), Some(b)) => g.with_label(format!("lex({a},{b})")),
            _ => g,
        }
    }

    /// Disjoint union; the second summand's ids are offset by `|V(self)|`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        self.glue(other, false)
    }

    /// Disjoint union plus every edge between the two summands.
    pub fn complete_join(&self, other: &Graph) -> Graph {
        self.glue(other, true)
    }

    fn glue(&self, other: &Graph, connect: bool) -> Graph {
        let a = self.vertex_count();
        let n = a + other.vertex_count();
        let mut adjacency = Vec::with_capacity(n);
        for row in &self.adjacency {
            let mut r = row.shifted(0, n);
            if connect {
                (a..n).for_each(|v| r.insert(v));
            }
            adjacency.push(r);
        }
        for row in &other.adjacency {
            let mut r = row.shifted(a, n);
            if connect {
                (0..a).for_each(|v| r.insert(v));
            }
            adjacency.push(r);
        }
        let g = Graph::from_adjacency(adjacency);
        match (self.label(), other.label(), connect) {
            (Some(x), Some(y), false) => g.with_label(format!("union({x},{y})")),
            _ => g,
        }
    }

    pub fn path(m: usize) -> Result<Graph> {
        if m == 0 {
            return Err(Error::invalid(
                "path needs at least one vertex (use empty:0)",
            ));
        }
        Ok(Graph::from_edges(m, (1..m).map(|i| (i - 1, i)))?.with_label(format!("path:{m}")))
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::invalid(format!(
                "cycle needs at least 3 vertices, got {n}"
            )));
        }
        Ok(
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))?
                .with_label(format!("cycle:{n}")),
        )
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges)
            .expect("valid ids")
            .with_label(format!("complete:{n}"))
    }

    /// Centre 0 joined to leaves `1..n`.
    pub fn star(n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::invalid("star needs at least one vertex"));
        }
        Ok(Graph::from_edges(n, (1..n).map(|v| (0, v)))?.with_label(format!("star:{n}")))
    }

    pub fn empty_graph(n: usize) -> Graph {
        Graph::from_adjacency(vec![VertexSet::new(n); n]).with_label(format!("empty:{n}"))
    }
}
