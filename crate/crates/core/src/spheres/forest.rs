use std::collections::HashMap;

use super::SphereSpace;
use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::forests::forest_code;
use crate::graph::Graph;

/// Homotopy type of `I(G ∘ H)` for a forest `G`, given the type `t_h` of `I(H)`.
///
/// Follows the leaf-splitting recursion: components multiply by join, stars
/// split off a copy of `I(H)`, and otherwise a leaf `w` with neighbour `v`
/// reduces to `G - N[v]` and `G - {v, w}`. Subforests are memoized by their
/// canonical isomorphism code.
pub fn forest_lex_homotopy(g: &Graph, t_h: &SphereSpace) -> Result<SphereSpace> {
    if !g.is_forest() {
        return Err(Error::NotAForest);
    }
    if t_h.is_empty() {
        return Err(Error::invalid("I(H) must be nonempty"));
    }
    let mut rec = Recursion {
        t_h,
        memo: HashMap::new(),
    };
    rec.eval(g)
}

struct Recursion<'a> {
    t_h: &'a SphereSpace,
    memo: HashMap<String, SphereSpace>,
}

impl Recursion<'_> {
    fn eval(&mut self, g: &Graph) -> Result<SphereSpace> {
        match g.vertex_count() {
            0 => return Ok(SphereSpace::empty()),
            1 => return Ok(self.t_h.clone()),
            _ => {}
        }
        let key = forest_code(g)?;
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let out = self.step(g)?;
        self.memo.insert(key, out.clone());
        Ok(out)
    }

    fn step(&mut self, g: &Graph) -> Result<SphereSpace> {
        let comps = g.components();
        if comps.len() > 1 {
            let mut acc = SphereSpace::empty();
            for c in &comps {
                acc = acc.join(&self.eval(&g.induced_subgraph(c))?);
            }
            return Ok(acc);
        }
        if g.is_star() {
            let leaves = g.vertex_count() - 1;
            let cone_base = (0..leaves).fold(SphereSpace::empty(), |acc, _| acc.join(self.t_h));
            return Ok(self.t_h.disjoint_union(&cone_base));
        }
        let (w, v) = g
            .find_leaf_pair()
            .expect("a tree with two or more vertices has a leaf");
        let closed = g.closed_neighborhood(v)?;
        let pair = VertexSet::from_iter_in(g.vertex_count(), [v, w]);
        let r1 = self.eval(&g.delete_vertices(&closed)?.0)?;
        let r2 = self.eval(&g.delete_vertices(&pair)?.0)?;
        let tail = r1.join(self.t_h).wedge(&r2.join(self.t_h))?;
        r1.suspend().wedge(&tail)
    }
}
