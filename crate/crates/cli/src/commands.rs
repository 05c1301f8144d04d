use std::process::ExitCode;
use std::time::Duration;

use lexind_core::domination::{
    domination, independent_domination_tree_dp, predict_conn_lex_complete_unchecked,
};
use lexind_core::graph::{random_forest, write_edge_list};
use lexind_core::harness::{
    known_homotopy_type, parse_wedge, run_campaign, verify_instance, CampaignSpec, Instance,
    VerificationReport, VerifyOptions,
};
use lexind_core::homology::{betti_multi_field_with_census, betti_with_census, euler_consistent};
use lexind_core::spheres::{closed_form_l, line_connectivity};
use lexind_core::{
    independence_complex, parse_graph_expr, Coefficients, Error, Graph, Limits, Result,
};
use serde_json::{json, Value};

use crate::{Cli, Command};

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_GUARD: u8 = 3;
pub const EXIT_DISAGREE: u8 = 4;

fn fields(cli: &Cli) -> Result<Vec<Coefficients>> {
    cli.field.split(',').map(|f| f.trim().parse()).collect()
}

fn limits(cli: &Cli) -> Limits {
    Limits::with_max_faces(cli.max_faces).with_time_budget(Duration::from_secs(cli.time_budget))
}

fn build(expr: &str) -> Result<Graph> {
    parse_graph_expr(expr)?.build()
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_json(cli: &Cli, v: &Value) -> Result<()> {
    emit(cli, &format!("{v}\n"))
}

fn report_code(r: &VerificationReport) -> ExitCode {
    if !r.all_agree() {
        ExitCode::from(EXIT_DISAGREE)
    } else if r.hit_guard() {
        ExitCode::from(EXIT_GUARD)
    } else {
        ExitCode::SUCCESS
    }
}

pub fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Gen {
            expr,
            random_forest: size,
            density,
        } => {
            let g = match (expr, size) {
                (Some(e), _) => build(e)?,
                (None, Some(n)) => random_forest(*n, *density, cli.seed.unwrap_or(0)),
                (None, None) => {
                    return Err(Error::InvalidArgument(
                        "gen needs an expression or --random-forest".into(),
                    ))
                }
            };
            if cli.json {
                emit_json(
                    cli,
                    &json!({"vertices": g.vertex_count(), "edges": g.edges()}),
                )?;
            } else {
                emit(cli, &write_edge_list(&g))?;
            }
        }
        Command::Complex { expr } => {
            let lim = limits(cli);
            let k = independence_complex(&build(expr)?, &lim)?;
            if cli.json {
                let census = k.face_census(&lim)?;
                let facets: Vec<Vec<usize>> = k.facets().iter().map(|f| f.to_vec()).collect();
                let counts: serde_json::Map<String, Value> = census
                    .counts
                    .iter()
                    .map(|(d, c)| (d.to_string(), json!(c)))
                    .collect();
                emit_json(
                    cli,
                    &json!({"void": k.is_void(), "vertex_count": k.vertex_count(), "facets": facets, "faces": counts}),
                )?;
            } else {
                emit(cli, &k.dump())?;
            }
        }
        Command::Homology { expr } => {
            let lim = limits(cli);
            let k = independence_complex(&build(expr)?, &lim)?;
            let fields = fields(cli)?;
            let out = if let [f] = fields.as_slice() {
                let (b, census) = betti_with_census(&k, *f, &lim)?;
                if !euler_consistent(&census, &b) {
                    return Err(Error::InvalidArgument(
                        "Euler characteristic check failed".into(),
                    ));
                }
                json!(b)
            } else {
                let (multi, census) = betti_multi_field_with_census(&k, &fields, &lim)?;
                let euler = multi.vectors.iter().all(|b| euler_consistent(&census, b));
                json!({"vectors": multi.vectors, "agree": multi.agree, "euler_consistent": euler})
            };
            emit_json(cli, &out)?;
        }
        Command::Predict {
            forest,
            h,
            wedge,
            m,
            n,
            k,
        } => {
            return predict(
                cli,
                forest.as_deref(),
                h.as_deref(),
                wedge.as_deref(),
                (*m, *n, *k),
            )
        }
        Command::Verify { g, h, wedge } => {
            let wedge = wedge.as_deref().map(parse_wedge).transpose()?;
            let inst = Instance::from_exprs(&parse_graph_expr(g)?, &parse_graph_expr(h)?, wedge)?;
            let opts = VerifyOptions {
                fields: fields(cli)?,
                max_faces: cli.max_faces,
                time_budget: Duration::from_secs(cli.time_budget),
                timings: cli.timings,
            };
            let report = verify_instance(&inst, &opts)?;
            emit_json(cli, &report.to_json())?;
            return Ok(report_code(&report));
        }
        Command::Domination { expr, unchecked } => {
            let lim = limits(cli);
            let g = build(expr)?;
            let d = domination(&g, &lim)?;
            let mut out = json!(d);
            if g.is_forest() {
                let i = independent_domination_tree_dp(&g)?;
                out["tree_dp"] = json!(i);
                out["predicted_conn_lex_complete"] = json!(i as i64 - 2);
            } else if *unchecked {
                out["predicted_conn_lex_complete"] =
                    json!(predict_conn_lex_complete_unchecked(&g, &lim)?);
                out["unsafe"] = json!(true);
            }
            emit_json(cli, &out)?;
        }
        Command::Campaign { spec } => {
            let text = std::fs::read_to_string(spec)?;
            let mut spec: CampaignSpec = text.parse()?;
            if let Some(j) = cli.jobs {
                spec.jobs = j;
            }
            if let Some(s) = cli.seed {
                spec.seed = s;
            }
            let outcome = run_campaign(&spec, cli.out.as_deref())?;
            print!("{}", outcome.summary);
            return Ok(if outcome.disagreements() > 0 {
                ExitCode::from(EXIT_DISAGREE)
            } else if outcome.guard_hits() > 0 {
                ExitCode::from(EXIT_GUARD)
            } else {
                ExitCode::SUCCESS
            });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn predict(
    cli: &Cli,
    forest: Option<&str>,
    h: Option<&str>,
    wedge: Option<&str>,
    mnk: (Option<u32>, Option<u64>, Option<u32>),
) -> Result<ExitCode> {
    if let (Some(m), Some(n), Some(k)) = mnk {
        let (space, terms) = closed_form_l(m, n, k)?;
        let out = json!({
            "m": m, "n": n, "k": k,
            "space": space,
            "pretty": space.to_string(),
            "betti": space.reduced_betti(),
            "terms": terms,
            "conn_H": line_connectivity(m, k)?,
        });
        emit_json(cli, &out)?;
        return Ok(ExitCode::SUCCESS);
    }
    let Some(forest) = forest else {
        return Err(Error::InvalidArgument(
            "predict needs --forest, or --m --n --k".into(),
        ));
    };
    let g_expr = parse_graph_expr(forest)?;
    let g = g_expr.build()?;
    if !g.is_forest() {
        return Err(Error::NotAForest);
    }
    let (h_name, t_h) = match (h, wedge) {
        (_, Some(w)) => (format!("wedge:{w}"), parse_wedge(w)?),
        (Some(h), None) => {
            let h_expr = parse_graph_expr(h)?;
            let t = known_homotopy_type(&h_expr).ok_or_else(|| {
                Error::UnknownHomotopyType(format!(
                    "homotopy type of I({h_expr}) is not known; pass --wedge n,k"
                ))
            })?;
            (h_expr.to_string(), t)
        }
        (None, None) => {
            return Err(Error::InvalidArgument(
                "predict needs --H or --wedge".into(),
            ))
        }
    };
    let inst = Instance {
        key: format!("{g_expr} ; {h_name}"),
        g_name: g_expr.to_string(),
        g,
        h_name,
        h: None,
        t_h: Some(t_h),
    };
    let opts = VerifyOptions {
        fields: fields(cli)?,
        max_faces: cli.max_faces,
        time_budget: Duration::from_secs(cli.time_budget),
        timings: cli.timings,
    };
    let report = verify_instance(&inst, &opts)?;
    let mut out = report.to_json();
    if let Some(obj) = out.as_object_mut() {
        obj.retain(|k, _| k != "guard_hits");
        obj.remove("key");
    }
    let notices: Vec<Value> = report
        .notices
        .iter()
        .filter(|n| !n.starts_with("brute"))
        .map(|n| json!(n))
        .collect();
    out["notices"] = Value::Array(notices);
    emit_json(cli, &out)?;
    Ok(report_code(&report))
}
