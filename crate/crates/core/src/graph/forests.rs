//! Canonical forms and exhaustive enumeration of small forests.

use std::collections::BTreeSet;

use super::Graph;
use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// Isomorphism-invariant encoding of a forest.
///
/// Each tree is encoded by the AHU parenthesis string rooted at its centre
/// (the smaller encoding when there are two centres); the forest encoding is
/// the sorted concatenation. Two forests are isomorphic iff their codes match.
pub fn forest_code(g: &Graph) -> Result<String> {
    if !g.is_forest() {
        return Err(Error::NotAForest);
    }
    let mut trees: Vec<String> = g.components().iter().map(|c| tree_code(g, c)).collect();
    trees.sort();
    Ok(trees.concat())
}

fn tree_code(g: &Graph, comp: &VertexSet) -> String {
    centres(g, comp)
        .into_iter()
        .map(|c| rooted_code(g, c, usize::MAX))
        .min()
        .expect("a tree has a centre")
}

/// Centres by repeated leaf stripping.
fn centres(g: &Graph, comp: &VertexSet) -> Vec<usize> {
    let mut remaining = comp.clone();
    let mut degree: Vec<usize> = (0..g.vertex_count())
        .map(|v| g.neighbors(v).intersection_len(comp))
        .collect();
    let mut layer: Vec<usize> = remaining.iter().filter(|&v| degree[v] <= 1).collect();
    let mut left = remaining.len();
    while left > 2 {
        let mut next = Vec::new();
        for &leaf in &layer {
            remaining.remove(leaf);
            left -= 1;
            for w in g.neighbors(leaf).iter() {
                if remaining.contains(w) {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    remaining.to_vec()
}

fn rooted_code(g: &Graph, root: usize, parent: usize) -> String {
    let mut children: Vec<String> = g
        .neighbors(root)
        .iter()
        .filter(|&w| w != parent)
        .map(|w| rooted_code(g, w, root))
        .collect();
    children.sort();
    format!("({})", children.concat())
}

/// All pairwise non-isomorphic forests on exactly `n` vertices, ordered by code.
///
/// Built by growth: every forest on `n` vertices arises from one on `n - 1`
/// by adding an isolated vertex or a pendant leaf; duplicates are removed by
/// canonical code.
pub fn nonisomorphic_forests(n: usize) -> Vec<Graph> {
    let mut layer: Vec<Graph> = vec![Graph::empty_graph(0)];
    for size in 1..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for f in &layer {
            let isolated = f.disjoint_union(&Graph::empty_graph(1));
            let mut candidates = vec![isolated];
            for v in 0..f.vertex_count() {
                let mut edges = f.edges();
                edges.push((v, size - 1));
                candidates.push(Graph::from_edges(size, edges).expect("ids in range"));
            }
            for c in candidates {
                let code = forest_code(&c).expect("growth preserves acyclicity");
                if seen.insert(code.clone()) {
                    next.push((code, c));
                }
            }
        }
        next.sort_by(|a, b| a.0.cmp(&b.0));
        layer = next.into_iter().map(|(_, g)| g).collect();
    }
    layer
}

/// Non-isomorphic trees (connected forests) on exactly `n >= 1` vertices.
pub fn nonisomorphic_trees(n: usize) -> Vec<Graph> {
    nonisomorphic_forests(n)
        .into_iter()
        .filter(Graph::is_connected)
        .collect()
}
