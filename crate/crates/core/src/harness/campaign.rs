use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;
use std::time::Duration;

use rayon::prelude::*;

use super::{verify_instance, Instance, VerificationReport, VerifyOptions};
use crate::error::{Error, Result};
use crate::graph::forests::nonisomorphic_forests;
use crate::graph::{parse_graph_expr, random_forest, GraphExpr};
use crate::homology::{Coefficients, DEFAULT_PRIMES};
use crate::limits::{DEFAULT_MAX_FACES, DEFAULT_TIME_BUDGET};
use crate::spheres::SphereSpace;

/// Paths `L_m` against each listed `H`.
#[derive(Clone, Debug, PartialEq)]
pub struct LineGrid {
    pub m: (usize, usize),
    pub h: Vec<GraphExpr>,
}

/// Every forest up to isomorphism on the given vertex counts, against `K_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ForestGrid {
    pub vertices: (usize, usize),
    pub n: Vec<usize>,
}

/// Seeded random forests against each listed `H`.
#[derive(Clone, Debug, PartialEq)]
pub struct RandomGrid {
    pub count: usize,
    pub vertices: (usize, usize),
    pub density: f64,
    pub h: Vec<GraphExpr>,
}

/// Paths `L_m` against an abstract `I(H) ≃ ∨_n S^k`; symbolic routes only.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicGrid {
    pub m: (usize, usize),
    pub n: (usize, usize),
    pub k: (usize, usize),
}

/// A verification campaign read from a `key = value` file.
#[derive(Clone, Debug, PartialEq)]
pub struct CampaignSpec {
    pub fields: Vec<Coefficients>,
    pub max_faces: u64,
    pub time_budget: Duration,
    pub jobs: usize,
    pub seed: u64,
    pub line: Option<LineGrid>,
    pub forest: Option<ForestGrid>,
    pub random: Option<RandomGrid>,
    pub symbolic: Option<SymbolicGrid>,
    pub instances: Vec<(GraphExpr, GraphExpr)>,
}

fn line_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::invalid(format!("campaign line {line}: {msg}"))
}

fn parse_num<T: FromStr>(s: &str, line: usize) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| line_err(line, format!("expected a number, got {:?}", s.trim())))
}

fn parse_range(s: &str, line: usize) -> Result<(usize, usize)> {
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse_num(a, line)?, parse_num(b, line)?),
        None => {
            let v = parse_num(s, line)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(line_err(line, format!("empty range {lo}..{hi}")));
    }
    Ok((lo, hi))
}

/// Splits at commas outside parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
        .into_iter()
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .collect()
}

/// Comma-separated graph expressions; `family:a..b` expands to one
/// expression per size.
pub fn parse_expr_list(s: &str) -> Result<Vec<GraphExpr>> {
    let mut out = Vec::new();
    for item in split_top_level(s) {
        let family_range = item
            .split_once(':')
            .filter(|(fam, rest)| !fam.contains('(') && rest.contains(".."));
        match family_range {
            Some((fam, rest)) => {
                let (lo, hi) = parse_range(rest, 0)
                    .map_err(|_| Error::invalid(format!("bad size range in {item:?}")))?;
                for size in lo..=hi {
                    out.push(parse_graph_expr(&format!("{fam}:{size}"))?);
                }
            }
            None => out.push(parse_graph_expr(item)?),
        }
    }
    if out.is_empty() {
        return Err(Error::invalid("empty list of graph expressions"));
    }
    Ok(out)
}

/// Comma-separated numbers and inclusive ranges, flattened.
fn parse_sizes(s: &str, line: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let (lo, hi) = parse_range(item, line)?;
        out.extend(lo..=hi);
    }
    if out.is_empty() {
        return Err(line_err(line, "empty list"));
    }
    Ok(out)
}

impl FromStr for CampaignSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut kv: BTreeMap<String, (usize, String)> = BTreeMap::new();
        let mut instances = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| line_err(line, "expected key = value"))?;
            let (key, value) = (key.trim(), value.trim());
            if key == "instance" {
                let (g, h) = value
                    .split_once(';')
                    .ok_or_else(|| line_err(line, "instance needs `G ; H`"))?;
                let g = parse_graph_expr(g.trim()).map_err(|e| line_err(line, e))?;
                let h = parse_graph_expr(h.trim()).map_err(|e| line_err(line, e))?;
                instances.push((g, h));
                continue;
            }
            if kv
                .insert(key.to_string(), (line, value.to_string()))
                .is_some()
            {
                return Err(line_err(line, format!("duplicate key {key}")));
            }
        }
        let mut take = |key: &str| kv.remove(key);

        let fields = match take("fields") {
            Some((line, v)) => split_top_level(&v)
                .into_iter()
                .map(|f| f.parse::<Coefficients>().map_err(|e| line_err(line, e)))
                .collect::<Result<Vec<_>>>()?,
            None => DEFAULT_PRIMES
                .iter()
                .map(|&p| Coefficients::Prime(p))
                .collect(),
        };
        let max_faces = match take("max_faces") {
            Some((line, v)) => parse_num(&v, line)?,
            None => DEFAULT_MAX_FACES,
        };
        let time_budget = match take("time_budget") {
            Some((line, v)) => Duration::from_secs(parse_num(&v, line)?),
            None => DEFAULT_TIME_BUDGET,
        };
        let jobs = match take("jobs") {
            Some((line, v)) => parse_num(&v, line)?,
            None => 1,
        };
        let seed = match take("seed") {
            Some((line, v)) => parse_num(&v, line)?,
            None => 0,
        };

        let line = match (take("line.m"), take("line.h")) {
            (None, None) => None,
            (Some((l1, m)), Some((l2, h))) => Some(LineGrid {
                m: parse_range(&m, l1)?,
                h: parse_expr_list(&h).map_err(|e| line_err(l2, e))?,
            }),
            _ => return Err(Error::invalid("line grid needs both line.m and line.h")),
        };
        let forest = match (take("forest.vertices"), take("forest.n")) {
            (None, None) => None,
            (Some((l1, v)), Some((l2, n))) => Some(ForestGrid {
                vertices: parse_range(&v, l1)?,
                n: parse_sizes(&n, l2)?,
            }),
            _ => {
                return Err(Error::invalid(
                    "forest grid needs both forest.vertices and forest.n",
                ))
            }
        };
        let random = match (
            take("random.count"),
            take("random.vertices"),
            take("random.h"),
        ) {
            (None, None, None) => None,
            (Some((l1, c)), Some((l2, v)), Some((l3, h))) => {
                let density = match take("random.density") {
                    Some((l, d)) => parse_num(&d, l)?,
                    None => 0.7,
                };
                Some(RandomGrid {
                    count: parse_num(&c, l1)?,
                    vertices: parse_range(&v, l2)?,
                    density,
                    h: parse_expr_list(&h).map_err(|e| line_err(l3, e))?,
                })
            }
            _ => {
                return Err(Error::invalid(
                    "random grid needs random.count, random.vertices and random.h",
                ))
            }
        };
        let symbolic = match (take("symbolic.m"), take("symbolic.n"), take("symbolic.k")) {
            (None, None, None) => None,
            (Some((l1, m)), Some((l2, n)), Some((l3, k))) => Some(SymbolicGrid {
                m: parse_range(&m, l1)?,
                n: parse_range(&n, l2)?,
                k: parse_range(&k, l3)?,
            }),
            _ => {
                return Err(Error::invalid(
                    "symbolic grid needs symbolic.m, symbolic.n and symbolic.k",
                ))
            }
        };
        if let Some((key, (line, _))) = kv.into_iter().next() {
            return Err(line_err(line, format!("unknown key {key}")));
        }
        let spec = CampaignSpec {
            fields,
            max_faces,
            time_budget,
            jobs,
            seed,
            line,
            forest,
            random,
            symbolic,
            instances,
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl CampaignSpec {
    pub fn validate(&self) -> Result<()> {
        if self.fields.is_empty() {
            return Err(Error::invalid("at least one coefficient field is required"));
        }
        if self.max_faces == 0 {
            return Err(Error::invalid("max_faces must be positive"));
        }
        if self.jobs == 0 {
            return Err(Error::invalid("jobs must be positive"));
        }
        if let Some(l) = &self.line {
            if l.m.0 == 0 {
                return Err(Error::invalid("line.m must start at 1 or more"));
            }
        }
        if let Some(f) = &self.forest {
            if f.vertices.0 == 0 || f.n.contains(&0) {
                return Err(Error::invalid(
                    "forest.vertices and forest.n must be positive",
                ));
            }
        }
        if let Some(r) = &self.random {
            if r.count == 0 || r.vertices.0 == 0 || !(0.0..=1.0).contains(&r.density) {
                return Err(Error::invalid(
                    "random.count and random.vertices must be positive and random.density in [0, 1]",
                ));
            }
        }
        if let Some(s) = &self.symbolic {
            if s.m.0 == 0 || s.n.0 == 0 {
                return Err(Error::invalid(
                    "symbolic.m and symbolic.n must start at 1 or more",
                ));
            }
        }
        if self.line.is_none()
            && self.forest.is_none()
            && self.random.is_none()
            && self.symbolic.is_none()
            && self.instances.is_empty()
        {
            return Err(Error::invalid("campaign has no grids and no instances"));
        }
        Ok(())
    }

    fn options(&self) -> VerifyOptions {
        VerifyOptions {
            fields: self.fields.clone(),
            max_faces: self.max_faces,
            time_budget: self.time_budget,
            timings: false,
        }
    }

    /// Every instance of the campaign, keyed `group/ordinal G ; H` so that
    /// key order is generation order.
    pub fn expand(&self) -> Result<Vec<ExpandedInstance>> {
        let mut out = Vec::new();
        let push = |out: &mut Vec<_>, group: &str, inst: Instance, edges| {
            let key = format!("{group}/{:05} {}", out.len(), inst.key);
            out.push((inst.with_key(key), edges));
        };
        if let Some(grid) = &self.line {
            for m in grid.m.0..=grid.m.1 {
                for h in &grid.h {
                    push(
                        &mut out,
                        "line",
                        Instance::from_exprs(&GraphExpr::Path(m), h, None)?,
                        None,
                    );
                }
            }
        }
        if let Some(grid) = &self.forest {
            for v in grid.vertices.0..=grid.vertices.1 {
                for (idx, f) in nonisomorphic_forests(v).into_iter().enumerate() {
                    for &n in &grid.n {
                        let h = GraphExpr::Complete(n);
                        let inst = Instance {
                            key: String::new(),
                            g_name: format!("forest:{v}#{idx}"),
                            g: f.clone(),
                            h_name: h.to_string(),
                            h: Some(h.build()?),
                            t_h: super::known_homotopy_type(&h),
                        };
                        let key = format!("{} ; {}", inst.g_name, inst.h_name);
                        push(&mut out, "forest", inst.with_key(key), Some(f.edges()));
                    }
                }
            }
        }
        if let Some(grid) = &self.random {
            let span = grid.vertices.1 - grid.vertices.0 + 1;
            for i in 0..grid.count {
                let v = grid.vertices.0 + i % span;
                let seed = self.seed.wrapping_add(i as u64);
                let f = random_forest(v, grid.density, seed);
                for h in &grid.h {
                    let inst = Instance {
                        key: String::new(),
                        g_name: format!("random_forest:{v}:{seed}"),
                        g: f.clone(),
                        h_name: h.to_string(),
                        h: Some(h.build()?),
                        t_h: super::known_homotopy_type(h),
                    };
                    let key = format!("{} ; {}", inst.g_name, inst.h_name);
                    push(&mut out, "random", inst.with_key(key), Some(f.edges()));
                }
            }
        }
        if let Some(grid) = &self.symbolic {
            for m in grid.m.0..=grid.m.1 {
                for n in grid.n.0..=grid.n.1 {
                    for k in grid.k.0..=grid.k.1 {
                        let t = SphereSpace::wedge_of_spheres(n as u64, k as u32);
                        push(
                            &mut out,
                            "symbolic",
                            Instance::symbolic(&GraphExpr::Path(m), t)?,
                            None,
                        );
                    }
                }
            }
        }
        for (g, h) in &self.instances {
            push(
                &mut out,
                "instance",
                Instance::from_exprs(g, h, None)?,
                None,
            );
        }
        Ok(out)
    }
}

/// An instance with the edge list of `G` when it has no expression.
pub type ExpandedInstance = (Instance, Option<Vec<(usize, usize)>>);

/// All reports of a campaign, in key order, and the rendered summary.
#[derive(Clone, Debug)]
pub struct CampaignOutcome {
    pub reports: Vec<VerificationReport>,
    pub summary: String,
}

impl CampaignOutcome {
    pub fn disagreements(&self) -> usize {
        self.reports.iter().filter(|r| !r.all_agree()).count()
    }

    pub fn guard_hits(&self) -> usize {
        self.reports.iter().filter(|r| r.hit_guard()).count()
    }

    pub fn passed(&self) -> bool {
        self.disagreements() == 0 && self.guard_hits() == 0
    }

    pub fn jsonl(&self) -> String {
        let mut s = String::new();
        for r in &self.reports {
            s.push_str(&r.to_json().to_string());
            s.push('\n');
        }
        s
    }
}

fn summarize(reports: &[VerificationReport]) -> String {
    #[derive(Default)]
    struct Row {
        total: usize,
        agree: usize,
        disagree: usize,
        guard: usize,
    }
    let mut rows: BTreeMap<&str, Row> = BTreeMap::new();
    for r in reports {
        let group = r.key.split('/').next().unwrap_or("");
        let row = rows.entry(group).or_default();
        row.total += 1;
        if !r.all_agree() {
            row.disagree += 1;
        } else if r.hit_guard() {
            row.guard += 1;
        } else {
            row.agree += 1;
        }
    }
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<10} {:>9} {:>7} {:>9} {:>6}",
        "group", "instances", "agree", "disagree", "guard"
    );
    for (group, row) in &rows {
        let _ = writeln!(
            s,
            "{:<10} {:>9} {:>7} {:>9} {:>6}",
            group, row.total, row.agree, row.disagree, row.guard
        );
    }
    for r in reports {
        if !r.all_agree() {
            let failed: Vec<String> = r
                .agreement()
                .into_iter()
                .filter(|(_, ok)| !ok)
                .map(|(k, _)| k)
                .collect();
            let _ = writeln!(s, "DISAGREE {}: {}", r.key, failed.join(", "));
        }
        for hit in &r.guard_hits {
            let _ = writeln!(s, "GUARD {}: {hit}", r.key);
        }
    }
    let pass = reports.iter().all(|r| r.all_agree() && !r.hit_guard());
    let _ = writeln!(s, "result: {}", if pass { "PASS" } else { "FAIL" });
    s
}

/// Runs every instance on a pool of `spec.jobs` threads. When `out` is given,
/// writes `reports.jsonl` and `summary.txt` there.
pub fn run_campaign(spec: &CampaignSpec, out: Option<&Path>) -> Result<CampaignOutcome> {
    spec.validate()?;
    let instances = spec.expand()?;
    let opts = spec.options();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.jobs)
        .build()
        .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?;
    let mut reports: Vec<VerificationReport> = pool.install(|| {
        instances
            .par_iter()
            .map(|(inst, edges)| {
                let mut r = verify_instance(inst, &opts)?;
                r.g_edges = edges.clone();
                Ok(r)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    reports.sort_by(|a, b| a.key.cmp(&b.key));
    let outcome = CampaignOutcome {
        summary: summarize(&reports),
        reports,
    };
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("reports.jsonl"), outcome.jsonl())?;
        std::fs::write(dir.join("summary.txt"), &outcome.summary)?;
    }
    Ok(outcome)
}
