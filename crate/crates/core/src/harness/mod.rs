//! Cross-checking the brute-force, recursive, closed-form and domination
//! routes on single instances and on whole campaigns.

mod campaign;

pub use campaign::{
    parse_expr_list, run_campaign, CampaignOutcome, CampaignSpec, ForestGrid, LineGrid, RandomGrid,
    SymbolicGrid,
};

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::complex::independence_complex;
use crate::domination::{independent_domination_number, independent_domination_tree_dp};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphExpr};
use crate::homology::{
    betti_with_census, euler_consistent, BettiVector, Coefficients, Connectivity, DEFAULT_PRIMES,
};
use crate::limits::{Limits, DEFAULT_MAX_FACES, DEFAULT_TIME_BUDGET};
use crate::spheres::{
    closed_form_l, complete_homotopy, cycle_homotopy, forest_lex_homotopy, ClosedFormTerm,
    SphereSpace,
};

/// `I(H)` for the families whose homotopy type is known in closed form.
pub fn known_homotopy_type(h: &GraphExpr) -> Option<SphereSpace> {
    match h {
        GraphExpr::Cycle(n) => cycle_homotopy(*n).ok(),
        GraphExpr::Complete(j) => complete_homotopy(*j).ok(),
        _ => None,
    }
}

/// Parses `n,k` into `∨_n S^k`; `n = 0` is a point.
pub fn parse_wedge(spec: &str) -> Result<SphereSpace> {
    let bad = || Error::invalid(format!("expected N,K for a wedge of spheres, got {spec:?}"));
    let (n, k) = spec.split_once(',').ok_or_else(bad)?;
    let n: BigUint = n.trim().parse().map_err(|_| bad())?;
    let k: u32 = k.trim().parse().map_err(|_| bad())?;
    Ok(SphereSpace::wedge_of_spheres(n, k))
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub fields: Vec<Coefficients>,
    pub max_faces: u64,
    pub time_budget: Duration,
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            fields: DEFAULT_PRIMES
                .iter()
                .map(|&p| Coefficients::Prime(p))
                .collect(),
            max_faces: DEFAULT_MAX_FACES,
            time_budget: DEFAULT_TIME_BUDGET,
            timings: false,
        }
    }
}

impl VerifyOptions {
    fn limits(&self) -> Limits {
        Limits::with_max_faces(self.max_faces).with_time_budget(self.time_budget)
    }
}

/// One verification problem: `G`, optionally the graph `H`, and optionally
/// the homotopy type of `I(H)`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub key: String,
    pub g_name: String,
    pub g: Graph,
    pub h_name: String,
    pub h: Option<Graph>,
    pub t_h: Option<SphereSpace>,
}

impl Instance {
    /// Builds both expressions; the wedge override, if any, replaces the
    /// known type of `I(H)`.
    pub fn from_exprs(
        g: &GraphExpr,
        h: &GraphExpr,
        wedge: Option<SphereSpace>,
    ) -> Result<Instance> {
        let t_h = wedge.or_else(|| known_homotopy_type(h));
        Ok(Instance {
            key: format!("{g} ; {h}"),
            g_name: g.to_string(),
            g: g.build()?,
            h_name: h.to_string(),
            h: Some(h.build()?),
            t_h,
        })
    }

    /// `G` against an abstract `I(H) ≃ t_h` with no graph for `H`; only the
    /// symbolic routes apply.
    pub fn symbolic(g: &GraphExpr, t_h: SphereSpace) -> Result<Instance> {
        let h_name = format!("I(H) = {t_h}");
        Ok(Instance {
            key: format!("{g} ; {h_name}"),
            g_name: g.to_string(),
            g: g.build()?,
            h_name,
            h: None,
            t_h: Some(t_h),
        })
    }

    pub fn with_key(mut self, key: impl Into<String>) -> Self {
        self.key = key.into();
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BruteRoute {
    pub vectors: Vec<BettiVector>,
    pub euler_consistent: bool,
    pub faces: u64,
}

impl BruteRoute {
    pub fn fields_agree(&self) -> bool {
        self.vectors.windows(2).all(|w| w[0].same_ranks(&w[1]))
    }

    pub fn betti(&self) -> &BettiVector {
        &self.vectors[0]
    }
}

#[derive(Clone, Debug)]
pub struct SymbolicRoute {
    pub space: SphereSpace,
    pub terms: Vec<ClosedFormTerm>,
    pub params: Option<(u32, u64, u32)>,
}

impl SymbolicRoute {
    pub fn betti(&self) -> BettiVector {
        self.space.reduced_betti()
    }

    fn to_json(&self) -> Value {
        let mut v = json!({
            "space": self.space,
            "pretty": self.space.to_string(),
            "betti": self.betti(),
        });
        if let Some((m, n, k)) = self.params {
            v["m"] = json!(m);
            v["n"] = json!(n);
            v["k"] = json!(k);
            v["terms"] = json!(self.terms);
        }
        v
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DominationRoute {
    pub i_search: usize,
    pub i_tree_dp: usize,
    pub conn_predicted: i64,
}

/// Outcome of all applicable routes on one instance.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub key: String,
    pub g_name: String,
    pub h_name: String,
    pub g_edges: Option<Vec<(usize, usize)>>,
    pub brute: Option<BruteRoute>,
    pub recursion: Option<SymbolicRoute>,
    pub closed_form: Option<SymbolicRoute>,
    pub domination: Option<DominationRoute>,
    pub notices: Vec<String>,
    pub guard_hits: Vec<String>,
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

impl VerificationReport {
    /// Pairwise verdicts, recomputed from the stored route outputs.
    pub fn agreement(&self) -> BTreeMap<String, bool> {
        let mut out = BTreeMap::new();
        if let Some(b) = &self.brute {
            out.insert("brute:fields".to_string(), b.fields_agree());
            out.insert("brute:euler".to_string(), b.euler_consistent);
        }
        let brute = self.brute.as_ref().map(|b| b.betti());
        let rec = self.recursion.as_ref().map(SymbolicRoute::betti);
        let cf = self.closed_form.as_ref().map(SymbolicRoute::betti);
        if let (Some(b), Some(r)) = (brute, &rec) {
            out.insert("brute~recursion".to_string(), b.same_ranks(r));
        }
        if let (Some(b), Some(c)) = (brute, &cf) {
            out.insert("brute~closed_form".to_string(), b.same_ranks(c));
        }
        if let (Some(r), Some(c)) = (&self.recursion, &self.closed_form) {
            out.insert("recursion~closed_form".to_string(), r.space == c.space);
        }
        if let Some(d) = &self.domination {
            out.insert(
                "domination:search~tree_dp".to_string(),
                d.i_search == d.i_tree_dp,
            );
            let predicted = Connectivity::Finite(d.conn_predicted);
            if let Some(b) = brute {
                out.insert("brute~domination".to_string(), b.conn_h() == predicted);
            }
            if let Some(r) = &rec {
                out.insert("recursion~domination".to_string(), r.conn_h() == predicted);
            }
        }
        out
    }

    pub fn all_agree(&self) -> bool {
        self.agreement().values().all(|&ok| ok)
    }

    pub fn hit_guard(&self) -> bool {
        !self.guard_hits.is_empty()
    }

    /// Number of routes that produced a result.
    pub fn route_count(&self) -> usize {
        [
            self.brute.is_some(),
            self.recursion.is_some(),
            self.closed_form.is_some(),
            self.domination.is_some(),
        ]
        .iter()
        .filter(|&&x| x)
        .count()
    }

    pub fn to_json(&self) -> Value {
        let mut routes = serde_json::Map::new();
        if let Some(b) = &self.brute {
            routes.insert(
                "brute".into(),
                json!({
                    "vectors": b.vectors,
                    "euler_consistent": b.euler_consistent,
                    "faces": b.faces,
                    "conn_H": b.betti().conn_h(),
                }),
            );
        }
        if let Some(r) = &self.recursion {
            routes.insert("recursion".into(), r.to_json());
        }
        if let Some(c) = &self.closed_form {
            routes.insert("closed_form".into(), c.to_json());
        }
        if let Some(d) = &self.domination {
            routes.insert("domination".into(), json!(d));
        }
        let mut instance = json!({"G": self.g_name, "H": self.h_name});
        if let Some(edges) = &self.g_edges {
            instance["G_edges"] = json!(edges);
        }
        let mut v = json!({
            "key": self.key,
            "instance": instance,
            "routes": routes,
            "agreement": self.agreement(),
            "all_agree": self.all_agree(),
            "notices": self.notices,
            "guard_hits": self.guard_hits,
        });
        if let Some(t) = &self.timings_ms {
            v["timings_ms"] = json!(t);
        }
        v
    }
}

struct Clock {
    enabled: bool,
    laps: BTreeMap<String, f64>,
}

impl Clock {
    fn time<T>(&mut self, route: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.enabled {
            self.laps
                .insert(route.to_string(), start.elapsed().as_secs_f64() * 1e3);
        }
        out
    }
}

/// Separates resource-guard failures (recorded) from genuine errors (returned).
fn guarded<T>(route: &str, r: Result<T>, guard_hits: &mut Vec<String>) -> Result<Option<T>> {
    match r {
        Ok(x) => Ok(Some(x)),
        Err(e) if e.is_resource_limit() => {
            guard_hits.push(format!("{route}: {e}"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn brute_route(
    g: &Graph,
    h: &Graph,
    fields: &[Coefficients],
    limits: &Limits,
) -> Result<BruteRoute> {
    if fields.is_empty() {
        return Err(Error::invalid("at least one coefficient field is required"));
    }
    let k = independence_complex(&g.lex_product(h), limits)?;
    let mut vectors = Vec::with_capacity(fields.len());
    let mut euler = true;
    let mut faces = 0;
    for &f in fields {
        let (b, census) = betti_with_census(&k, f, limits)?;
        euler &= euler_consistent(&census, &b);
        faces = census.total();
        vectors.push(b);
    }
    Ok(BruteRoute {
        vectors,
        euler_consistent: euler,
        faces,
    })
}

/// `I(H) ≃ ∨_n S^k` with `n >= 1`, as `(n, k)`.
fn proper_uniform_wedge(t_h: &SphereSpace) -> Option<(u64, u32)> {
    let (n, k) = t_h.as_uniform_wedge()?;
    if n.is_zero() {
        return None;
    }
    Some((n.to_u64()?, k))
}

/// Runs every route that applies to `inst`.
pub fn verify_instance(inst: &Instance, opts: &VerifyOptions) -> Result<VerificationReport> {
    let limits = opts.limits();
    let mut clock = Clock {
        enabled: opts.timings,
        laps: BTreeMap::new(),
    };
    let mut notices = Vec::new();
    let mut guard_hits = Vec::new();
    let g = &inst.g;

    let brute = match &inst.h {
        Some(h) => {
            let r = clock.time("brute", || brute_route(g, h, &opts.fields, &limits));
            guarded("brute", r, &mut guard_hits)?
        }
        None => {
            notices.push("brute: no graph for H".to_string());
            None
        }
    };

    let forest = g.is_forest();
    let mut recursion = None;
    let mut closed_form = None;
    let mut domination = None;
    match (&inst.t_h, forest) {
        (_, false) => notices.push("prediction routes skipped: G is not a forest".to_string()),
        (None, true) => {
            notices.push("prediction routes skipped: homotopy type of I(H) unknown".to_string())
        }
        (Some(t_h), true) => {
            let space = clock.time("recursion", || forest_lex_homotopy(g, t_h))?;
            recursion = Some(SymbolicRoute {
                space,
                terms: Vec::new(),
                params: None,
            });
            let wedge = proper_uniform_wedge(t_h);
            match wedge {
                Some((n, k)) if g.is_path_graph() => {
                    let m = g.vertex_count() as u32;
                    let (space, terms) = clock.time("closed_form", || closed_form_l(m, n, k))?;
                    closed_form = Some(SymbolicRoute {
                        space,
                        terms,
                        params: Some((m, n, k)),
                    });
                }
                Some(_) => notices.push("closed_form skipped: G is not a path".to_string()),
                None => notices.push(
                    "closed_form skipped: I(H) is not a wedge of equidimensional spheres"
                        .to_string(),
                ),
            }
            match wedge {
                Some((_, 0)) if !g.is_empty() => {
                    let r = clock.time("domination", || -> Result<DominationRoute> {
                        let i_search = independent_domination_number(g, &limits)?.0;
                        let i_tree_dp = independent_domination_tree_dp(g)?;
                        Ok(DominationRoute {
                            i_search,
                            i_tree_dp,
                            conn_predicted: i_tree_dp as i64 - 2,
                        })
                    });
                    domination = guarded("domination", r, &mut guard_hits)?;
                }
                _ => notices
                    .push("domination skipped: I(H) is not a wedge of copies of S^0".to_string()),
            }
        }
    }

    Ok(VerificationReport {
        key: inst.key.clone(),
        g_name: inst.g_name.clone(),
        h_name: inst.h_name.clone(),
        g_edges: None,
        brute,
        recursion,
        closed_form,
        domination,
        notices,
        guard_hits,
        timings_ms: opts.timings.then_some(clock.laps),
    })
}
