//! Domination numbers and the connectivity predictor for `I(G ∘ K_n)`.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::bitset::VertexSet;
use crate::complex::maximal_independent_sets;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;

/// Domination number `γ` and independent domination number `i` with
/// lexicographically smallest minimum witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominationResult {
    pub gamma: usize,
    pub i_number: usize,
    pub witness_gamma: VertexSet,
    pub witness_i: VertexSet,
}

impl Serialize for DominationResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("gamma", &self.gamma)?;
        m.serialize_entry("i", &self.i_number)?;
        m.serialize_entry("witness_gamma", &self.witness_gamma.to_vec())?;
        m.serialize_entry("witness_i", &self.witness_i.to_vec())?;
        m.end()
    }
}

fn require_vertices(g: &Graph) -> Result<()> {
    if g.is_empty() {
        return Err(Error::invalid(
            "domination needs a graph with at least one vertex",
        ));
    }
    Ok(())
}

/// True iff every vertex lies in the closed neighbourhood of some member of `s`.
pub fn is_dominating(g: &Graph, s: &VertexSet) -> bool {
    let mut covered = s.clone();
    for u in s.iter() {
        covered.union_with(g.neighbors(u));
    }
    covered.len() == g.vertex_count()
}

pub fn is_independent(g: &Graph, s: &VertexSet) -> bool {
    s.iter().all(|u| g.neighbors(u).is_disjoint(s))
}

/// Both numbers with their witnesses.
pub fn domination(g: &Graph, limits: &Limits) -> Result<DominationResult> {
    let (gamma, witness_gamma) = domination_number(g, limits)?;
    let (i_number, witness_i) = independent_domination_number(g, limits)?;
    Ok(DominationResult {
        gamma,
        i_number,
        witness_gamma,
        witness_i,
    })
}

/// Exact `γ(G)` by searching subsets in order of size, then lexicographically.
pub fn domination_number(g: &Graph, limits: &Limits) -> Result<(usize, VertexSet)> {
    require_vertices(g)?;
    let n = g.vertex_count();
    let closed: Vec<VertexSet> = (0..n)
        .map(|v| g.closed_neighborhood(v))
        .collect::<Result<_>>()?;
    let reach = closed.iter().map(VertexSet::len).max().unwrap_or(1);
    for size in 1..=n {
        let mut search = CoverSearch {
            closed: &closed,
            reach,
            limits,
            chosen: Vec::with_capacity(size),
            steps: 0,
        };
        if search.run(0, size, &VertexSet::new(n))? {
            return Ok((size, VertexSet::from_iter_in(n, search.chosen)));
        }
    }
    unreachable!("the full vertex set dominates")
}

struct CoverSearch<'a> {
    closed: &'a [VertexSet],
    reach: usize,
    limits: &'a Limits,
    chosen: Vec<usize>,
    steps: u64,
}

impl CoverSearch<'_> {
    fn run(&mut self, start: usize, left: usize, covered: &VertexSet) -> Result<bool> {
        let n = self.closed.len();
        let missing = n - covered.len();
        if missing == 0 {
            return Ok(true);
        }
        if left == 0 || missing > left * self.reach {
            return Ok(false);
        }
        self.steps += 1;
        if self.steps.is_multiple_of(4096) {
            self.limits.check_time()?;
        }
        let target = (0..n).find(|&v| !covered.contains(v)).expect("missing > 0");
        let last_cover = self.closed[target]
            .iter()
            .last()
            .expect("closed neighbourhood is nonempty");
        for v in start..=last_cover.min(n - left) {
            let mut next = covered.clone();
            next.union_with(&self.closed[v]);
            self.chosen.push(v);
            if self.run(v + 1, left - 1, &next)? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        Ok(false)
    }
}

/// Exact `i(G)`: the smallest maximal independent set, lexicographically first
/// among ties.
pub fn independent_domination_number(g: &Graph, limits: &Limits) -> Result<(usize, VertexSet)> {
    require_vertices(g)?;
    let sets = maximal_independent_sets(g, &g.all_vertices(), limits)?;
    let best = sets
        .into_iter()
        .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
        .expect("a nonempty graph has a maximal independent set");
    Ok((best.len(), best))
}

const INF: u64 = u64::MAX;

/// `i(G)` for a forest by a three-state dynamic program over rooted trees.
pub fn independent_domination_tree_dp(g: &Graph) -> Result<usize> {
    if !g.is_forest() {
        return Err(Error::NotAForest);
    }
    require_vertices(g)?;
    let n = g.vertex_count();
    // in_set: v chosen; dominated: v not chosen but some child chosen;
    // waiting: v not chosen and no child chosen, so the parent must be.
    let mut in_set = vec![0u64; n];
    let mut dominated = vec![0u64; n];
    let mut waiting = vec![0u64; n];
    let mut parent = vec![usize::MAX; n];
    let mut visited = vec![false; n];
    let mut total = 0u64;
    for root in 0..n {
        if visited[root] {
            continue;
        }
        let mut order = vec![root];
        visited[root] = true;
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            i += 1;
            for w in g.neighbors(u).iter() {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = u;
                    order.push(w);
                }
            }
        }
        for &u in order.iter().rev() {
            let children: Vec<usize> = g.neighbors(u).iter().filter(|&w| parent[w] == u).collect();
            let mut take = 1u64;
            let mut free = 0u64;
            let mut forced = 0u64;
            let mut cheapest_switch = INF;
            let mut any_in = false;
            for &c in &children {
                take = take.saturating_add(dominated[c].min(waiting[c]));
                let best = in_set[c].min(dominated[c]);
                free = free.saturating_add(best);
                if in_set[c] <= dominated[c] {
                    any_in = true;
                }
                cheapest_switch = cheapest_switch.min(in_set[c] - best);
                forced = forced.saturating_add(dominated[c]);
            }
            in_set[u] = take;
            dominated[u] = if children.is_empty() {
                INF
            } else if any_in {
                free
            } else {
                free.saturating_add(cheapest_switch)
            };
            waiting[u] = forced;
        }
        total += in_set[root].min(dominated[root]);
    }
    Ok(total as usize)
}

/// `conn_H(I(G ∘ K_n)) = i(G) - 2` for a forest `G` and any `n >= 2`.
pub fn predict_conn_lex_complete(g: &Graph) -> Result<i64> {
    Ok(independent_domination_tree_dp(g)? as i64 - 2)
}

/// The same formula `i(G) - 2` evaluated on an arbitrary graph. Outside
/// forests nothing guarantees it equals the connectivity.
pub fn predict_conn_lex_complete_unchecked(g: &Graph, limits: &Limits) -> Result<i64> {
    Ok(independent_domination_number(g, limits)?.0 as i64 - 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::forests::{nonisomorphic_forests, nonisomorphic_trees};
    use crate::graph::random_forest;

    fn lim() -> Limits {
        Limits::default()
    }

    fn brute_gamma(g: &Graph) -> (usize, Vec<usize>) {
        let n = g.vertex_count();
        let mut best: Option<(usize, Vec<usize>)> = None;
        for mask in 0u32..(1 << n) {
            let s = VertexSet::from_iter_in(n, (0..n).filter(|&v| mask >> v & 1 == 1));
            if is_dominating(g, &s) {
                let cand = (s.len(), s.to_vec());
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        best.unwrap()
    }

    fn brute_i(g: &Graph) -> usize {
        let n = g.vertex_count();
        (0u32..(1 << n))
            .map(|mask| VertexSet::from_iter_in(n, (0..n).filter(|&v| mask >> v & 1 == 1)))
            .filter(|s| is_dominating(g, s) && is_independent(g, s))
            .map(|s| s.len())
            .min()
            .unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(
            domination_number(&Graph::star(5).unwrap(), &lim())
                .unwrap()
                .0,
            1
        );
        assert_eq!(
            domination_number(&Graph::empty_graph(4), &lim()).unwrap().0,
            4
        );
        assert_eq!(
            domination_number(&Graph::path(4).unwrap(), &lim())
                .unwrap()
                .0,
            2
        );
        let (i, w) = independent_domination_number(&Graph::path(3).unwrap(), &lim()).unwrap();
        assert_eq!((i, w.to_vec()), (1, vec![1]));
        let (i, w) = independent_domination_number(&Graph::path(4).unwrap(), &lim()).unwrap();
        assert_eq!((i, w.to_vec()), (2, vec![0, 2]));
        assert_eq!(
            independent_domination_number(&Graph::empty_graph(5), &lim())
                .unwrap()
                .0,
            5
        );
        assert!(domination_number(&Graph::empty_graph(0), &lim()).is_err());
        assert!(independent_domination_number(&Graph::empty_graph(0), &lim()).is_err());
    }

    #[test]
    fn tree_dp_examples() {
        assert_eq!(
            independent_domination_tree_dp(&Graph::path(4).unwrap()).unwrap(),
            2
        );
        assert_eq!(
            independent_domination_tree_dp(&Graph::star(6).unwrap()).unwrap(),
            1
        );
        let p3 = Graph::path(3).unwrap();
        assert_eq!(
            independent_domination_tree_dp(&p3.disjoint_union(&p3)).unwrap(),
            2
        );
        assert!(matches!(
            independent_domination_tree_dp(&Graph::cycle(5).unwrap()),
            Err(Error::NotAForest)
        ));
    }

    #[test]
    fn predictor_examples() {
        assert_eq!(
            predict_conn_lex_complete(&Graph::path(4).unwrap()).unwrap(),
            0
        );
        assert_eq!(
            predict_conn_lex_complete(&Graph::star(4).unwrap()).unwrap(),
            -1
        );
        assert_eq!(
            predict_conn_lex_complete(&Graph::empty_graph(3)).unwrap(),
            1
        );
        assert_eq!(
            predict_conn_lex_complete_unchecked(&Graph::cycle(6).unwrap(), &lim()).unwrap(),
            0
        );
    }

    #[test]
    fn json_shape() {
        let r = domination(&Graph::path(4).unwrap(), &lim()).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"gamma":2,"i":2,"witness_gamma":[0,2],"witness_i":[0,2]}"#
        );
    }

    #[test]
    fn search_matches_subset_oracle() {
        for seed in 0..300u64 {
            let n = 1 + (seed % 11) as usize;
            let g = crate::graph::random_graph(n, 0.3, seed);
            let r = domination(&g, &lim()).unwrap();
            let (gamma, wit) = brute_gamma(&g);
            assert_eq!(
                (r.gamma, r.witness_gamma.to_vec()),
                (gamma, wit),
                "seed {seed}"
            );
            assert_eq!(r.i_number, brute_i(&g), "seed {seed}");
            assert!(is_dominating(&g, &r.witness_i) && is_independent(&g, &r.witness_i));
            assert!(r.i_number >= r.gamma);
        }
    }

    #[test]
    fn tree_dp_matches_search() {
        for n in 1..=10 {
            for t in nonisomorphic_trees(n) {
                let i = independent_domination_number(&t, &lim()).unwrap().0;
                assert_eq!(
                    independent_domination_tree_dp(&t).unwrap(),
                    i,
                    "{:?}",
                    t.edges()
                );
            }
        }
        for seed in 0..300u64 {
            let n = 1 + (seed % 14) as usize;
            let f = random_forest(n, 0.7, seed);
            let i = independent_domination_number(&f, &lim()).unwrap().0;
            assert_eq!(
                independent_domination_tree_dp(&f).unwrap(),
                i,
                "seed {seed}"
            );
        }
    }

    #[test]
    fn leaf_recurrence() {
        for n in 2..=9 {
            for g in nonisomorphic_forests(n) {
                let Some((w, v)) = g.find_leaf_pair() else {
                    continue;
                };
                let i = |h: &Graph| {
                    if h.is_empty() {
                        0
                    } else {
                        independent_domination_tree_dp(h).unwrap()
                    }
                };
                let g1 = g
                    .delete_vertices(&g.closed_neighborhood(v).unwrap())
                    .unwrap()
                    .0;
                let g2 = g
                    .delete_vertices(&VertexSet::from_iter_in(n, [v, w]))
                    .unwrap()
                    .0;
                assert_eq!(i(&g1).min(i(&g2)) + 1, i(&g), "{:?}", g.edges());
            }
        }
    }
}
