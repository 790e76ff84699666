use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use densdel::brute::{
    brute_decomposition, brute_densest, brute_density, brute_opt_deletion, brute_opt_deletion_oracle,
    brute_set_cover,
};
use densdel::cover::{greedy_cover, reduce_dd_to_cover, wolsey_factor};
use densdel::decomposition::dense_decomposition;
use densdel::densest::densest_subgraph;
use densdel::gadgets::{build_gadget, build_warmup_gadget, extract_cover, GadgetInstance, Provenance, SetCoverInstance};
use densdel::lp::round_threshold;
use densdel::oracle::{cf_bruteforce, density, CfBound, CfProvenance};
use densdel::random_deletion::{cost_factor, random_delete};
use densdel::{format_rational, parse_rational, Cost, Error, MultiGraph, Rational, VertexSet};
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::load::{read, Instance};
use crate::report::{c, ids, objective_json, r, residual, RunReport};
use crate::{bench, Cli, CliError, CliResult, Command, DeleteCmd, GadgetCmd, Global, Output};

pub fn run(cli: &Cli) -> CliResult<Output> {
    let g = &cli.global;
    match &cli.command {
        Command::Density { instance } => density_cmd(g, instance),
        Command::Decompose { instance } => decompose_cmd(g, instance),
        Command::Delete { algorithm } => delete_cmd(g, algorithm),
        Command::Gadget { action } => gadget_cmd(g, action),
        Command::Verify { instance, report } => verify_cmd(g, instance, report),
        Command::Bench { config } => Ok(Output::Text(bench::run(config)?)),
    }
}

fn ok(v: Value) -> CliResult<Output> {
    Ok(Output::Json(v, 0))
}

fn mismatch(what: &str) -> CliError {
    Error::InvariantViolation(format!("{what} disagrees with the exhaustive oracle")).into()
}

fn density_cmd(g: &Global, path: &Path) -> CliResult<Output> {
    let inst = Instance::load(path, g.objective())?;
    let (lambda, witness) = match &inst.graph {
        Some(graph) if inst.objective == crate::Objective::Graph => {
            let cert = densest_subgraph(graph)?;
            (cert.lambda_star, cert.witness)
        }
        _ => density(inst.oracle.as_ref())?,
    };
    let mut out = json!({ "lambda": r(&lambda), "witness": ids(&witness) });
    if g.oracle {
        let slow = match &inst.graph {
            Some(graph) if inst.objective == crate::Objective::Graph => brute_densest(graph)?,
            _ => brute_density(inst.oracle.as_ref())?,
        };
        if slow.value != lambda || slow.union().as_ref() != Some(&witness) {
            return Err(mismatch("density"));
        }
        out["oracle"] = json!({ "lambda": r(&slow.value), "maximizers": slow.witnesses.len(), "agrees": true });
    }
    ok(out)
}

fn decompose_cmd(g: &Global, path: &Path) -> CliResult<Output> {
    let inst = Instance::load(path, g.objective())?;
    let d = dense_decomposition(&inst.oracle)?;
    let blocks: Vec<Value> = d
        .blocks
        .iter()
        .map(|b| json!({ "vertices": ids(&b.vertices), "density": r(&b.density) }))
        .collect();
    let mut out = json!({ "blocks": blocks });
    if g.oracle {
        let slow = brute_decomposition(inst.oracle.as_ref())?;
        let same = slow.len() == d.blocks.len()
            && slow.iter().zip(&d.blocks).all(|((v, dens), b)| v == &b.vertices && dens == &b.density);
        if !same {
            return Err(mismatch("decomposition"));
        }
        out["oracle"] = json!({ "blocks": slow.len(), "agrees": true });
    }
    ok(out)
}

pub fn parse_param(name: &str, s: &str) -> CliResult<Rational> {
    parse_rational(s).map_err(|e| CliError::Input(format!("--{name}: {e}")))
}

fn delete_cmd(g: &Global, cmd: &DeleteCmd) -> CliResult<Output> {
    let start = Instant::now();
    let args = match cmd {
        DeleteCmd::Greedy { args } | DeleteCmd::Lp { args, .. } | DeleteCmd::Random { args, .. } => args,
    };
    let inst = Instance::load(&args.instance, g.objective())?;
    let rho = parse_param("rho", &args.rho)?;
    let mut out = match cmd {
        DeleteCmd::Greedy { .. } => greedy(&inst, &rho)?,
        DeleteCmd::Lp { eps, .. } => lp(&inst, &rho, &parse_param("eps", eps)?)?,
        DeleteCmd::Random { eps, seed, trials: Some(k), cf, .. } => {
            return trials(g, &inst, &rho, &parse_param("eps", eps)?, *seed, *k, cf.as_deref());
        }
        DeleteCmd::Random { eps, seed, trials: None, cf, .. } => {
            let cf = cf_bound(&inst, cf.as_deref())?;
            random(&inst, &rho, &parse_param("eps", eps)?, &cf, *seed)?
        }
    };
    if g.oracle {
        let opt = oracle_opt(&inst, &rho, &out)?;
        out.insert("oracle".into(), opt);
    }
    if g.timing {
        out.insert("wall_time_ms".into(), json!(start.elapsed().as_millis() as u64));
    }
    ok(Value::Object(out))
}

fn oracle_opt(inst: &Instance, rho: &Rational, report: &Map<String, Value>) -> CliResult<Value> {
    let opt = match (&inst.graph, inst.objective) {
        (Some(graph), crate::Objective::Graph) => brute_opt_deletion(graph, rho)?,
        _ => brute_opt_deletion_oracle(inst.oracle.as_ref(), &inst.costs, rho)?,
    };
    let ratio = match (&opt.value, report.get("cost").and_then(Value::as_str)) {
        (Some(o), Some(cost)) if !o.is_zero() && cost != "inf" => r(&(parse_rational(cost)? / o)),
        _ => Value::Null,
    };
    Ok(json!({
        "opt": opt.value.as_ref().map(r),
        "optimal_sets": opt.witnesses.iter().map(ids).collect::<Vec<_>>(),
        "cost_over_opt": ratio,
    }))
}

pub fn greedy(inst: &Instance, rho: &Rational) -> CliResult<Map<String, Value>> {
    let cover = reduce_dd_to_cover(inst.oracle.clone(), inst.costs.clone(), rho.clone())?;
    let out = greedy_cover(&cover);
    let details = json!({
        "picks": out.picks,
        "finite": out.finite,
        "cover_target": r(&cover.target()),
        "wolsey_factor": wolsey_factor(&cover).map(|f| format!("{f:.6}")),
    });
    RunReport {
        algorithm: "greedy",
        params: json!({ "rho": r(rho) }),
        deletion: out.set,
        target: rho.clone(),
        details,
    }
    .finish(inst)
}

pub fn lp(inst: &Instance, rho: &Rational, eps: &Rational) -> CliResult<Map<String, Value>> {
    let s = round_threshold(inst.plain_graph()?, rho, eps)?;
    let details = json!({
        "lp_value": r(&s.lp_value),
        "x": s.x.iter().map(r).collect::<Vec<_>>(),
        "density_bound": r(&s.density_bound),
        "cost_bound": r(&s.cost_bound),
        "density_ok": s.density_ok,
        "cost_ok": s.cost_ok,
        "orientation_ok": s.orientation_ok,
        "infeasible_with_finite_cost": s.infeasible_with_finite_cost,
    });
    RunReport {
        algorithm: "lp",
        params: json!({ "rho": r(rho), "eps": r(eps) }),
        deletion: s.deletion,
        target: s.density_bound,
        details,
    }
    .finish(inst)
}

pub fn cf_bound(inst: &Instance, flag: Option<&str>) -> CliResult<CfBound> {
    match flag {
        None => Ok(inst.cf()),
        Some("brute") => Ok(cf_bruteforce(inst.oracle.as_ref())?),
        Some(v) => Ok(CfBound::analytic(parse_param("cf", v)?)),
    }
}

pub fn random(inst: &Instance, rho: &Rational, eps: &Rational, cf: &CfBound, seed: u64) -> CliResult<Map<String, Value>> {
    let run = random_delete(&inst.oracle, &inst.costs, rho, eps, cf, seed)?;
    let trace: Vec<Value> = run
        .trace
        .iter()
        .map(|t| json!({ "ground_size": t.ground_size, "vertex": t.vertex, "weight": r(&t.weight) }))
        .collect();
    let details = json!({
        "cf": r(&cf.value),
        "cf_source": match cf.provenance {
            CfProvenance::Analytic => "analytic",
            CfProvenance::BruteForce => "brute_force",
        },
        "cost_factor": r(&cost_factor(cf, eps)),
        "free": ids(&run.free),
        "trace": trace,
    });
    RunReport {
        algorithm: "random",
        params: json!({ "rho": r(rho), "eps": r(eps), "seed": seed }),
        deletion: run.deletion,
        target: run.threshold,
        details,
    }
    .finish(inst)
}

fn trials(
    g: &Global,
    inst: &Instance,
    rho: &Rational,
    eps: &Rational,
    seed: u64,
    k: u64,
    cf: Option<&str>,
) -> CliResult<Output> {
    let cf = cf_bound(inst, cf)?;
    if k == 0 {
        return Err(CliError::Input("--trials must be positive".into()));
    }
    let mut runs = Vec::new();
    let mut total = Rational::zero();
    for s in seed..seed + k {
        let report = random(inst, rho, eps, &cf, s)?;
        total += parse_rational(report["cost"].as_str().unwrap_or("0"))?;
        runs.push(json!({
            "seed": s,
            "deletion": report["deletion"],
            "cost": report["cost"],
            "residual_lambda": report["residual_lambda"],
            "feasible": report["feasible"],
        }));
    }
    let mut out = json!({
        "schema": "densdel.trials/1",
        "algorithm": "random",
        "objective": objective_json(inst.objective),
        "params": { "rho": r(rho), "eps": r(eps), "seed": seed, "trials": k },
        "mean_cost": r(&(total / BigInt::from(k))),
        "runs": runs,
    });
    if g.oracle {
        out["oracle"] = oracle_opt(inst, rho, &Map::new())?;
    }
    ok(out)
}

fn prov_path(graph: &Path) -> PathBuf {
    let mut s = graph.as_os_str().to_owned();
    s.push(".prov.json");
    PathBuf::from(s)
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn gadget_cmd(g: &Global, cmd: &GadgetCmd) -> CliResult<Output> {
    match cmd {
        GadgetCmd::Build { set_cover, rho, warmup, out } => {
            let sc = SetCoverInstance::parse(&read(set_cover)?)?;
            let gi = if *warmup { build_warmup_gadget(&sc)? } else { build_gadget(&sc, *rho)? };
            let prov = serde_json::to_value(&gi.provenance).map_err(|e| CliError::Input(e.to_string()))?;
            let summary = json!({
                "n": gi.graph.n(),
                "m": gi.graph.m(),
                "rho": gi.rho,
                "kind": prov["kind"],
            });
            let Some(out) = out else {
                return ok(json!({ "summary": summary, "graph": gi.graph.to_text(), "provenance": prov }));
            };
            let pp = prov_path(out);
            write(out, &gi.graph.to_text())?;
            write(&pp, &format!("{prov}\n"))?;
            ok(json!({
                "summary": summary,
                "graph_path": out.display().to_string(),
                "provenance_path": pp.display().to_string(),
            }))
        }
        GadgetCmd::Extract { graph, report, set, prov } => {
            let gtext = read(graph)?;
            let pp = prov.clone().unwrap_or_else(|| prov_path(graph));
            let provenance: Provenance =
                serde_json::from_str(&read(&pp)?).map_err(|e| CliError::Input(format!("{}: {e}", pp.display())))?;
            let gi = GadgetInstance::from_parts(MultiGraph::parse(&gtext)?, provenance)?;
            let n = gi.graph.n();
            let chosen = match (report, set) {
                (Some(rp), None) => deletion_from_report(&read(rp)?, n)?,
                (None, Some(list)) => parse_id_list(list, n)?,
                _ => return Err(CliError::Input("pass exactly one of --report or --set".into())),
            };
            let cover = extract_cover(&gi, &chosen)?;
            let mut out = json!({
                "sets": cover.sets,
                "cost": c(&cover.cost),
                "is_cover": gi.set_cover.is_cover(&cover.sets),
            });
            if g.oracle {
                let best = brute_set_cover(&gi.set_cover)?;
                out["oracle"] = json!({ "optimal_cost": c(&best.value), "optimal": best.value == cover.cost });
            }
            ok(out)
        }
    }
}

fn parse_id_list(list: &str, n: usize) -> CliResult<VertexSet> {
    let mut out = VertexSet::empty(n);
    for tok in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: usize = tok.parse().map_err(|_| CliError::Input(format!("bad vertex id {tok:?}")))?;
        if v >= n {
            return Err(Error::InvalidVertex(v).into());
        }
        out.insert(v);
    }
    Ok(out)
}

fn deletion_from_report(text: &str, n: usize) -> CliResult<VertexSet> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("report: {e}")))?;
    let list = v["deletion"]
        .as_array()
        .ok_or_else(|| CliError::Input("report has no deletion array".into()))?;
    let mut out = VertexSet::empty(n);
    for x in list {
        let id = x.as_u64().ok_or_else(|| CliError::Input("deletion ids must be integers".into()))? as usize;
        if id >= n {
            return Err(Error::InvalidVertex(id).into());
        }
        out.insert(id);
    }
    Ok(out)
}

fn objective_from_report(v: &Value) -> CliResult<crate::Objective> {
    use crate::Objective;
    match v["objective"]["kind"].as_str() {
        Some("graph") => Ok(Objective::Graph),
        Some("hypergraph") => Ok(Objective::Hypergraph),
        Some("pmean") => {
            let p = v["objective"]["p"].as_u64().ok_or_else(|| CliError::Input("pmean report lacks p".into()))?;
            Ok(Objective::Pmean(p as u32))
        }
        _ => Err(CliError::Input("report has no objective".into())),
    }
}

fn verify_cmd(_g: &Global, instance: &Path, report: &Path) -> CliResult<Output> {
    let text = read(report)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("report: {e}")))?;
    if v["schema"] != crate::report::SCHEMA {
        return Err(CliError::Input(format!("unsupported report schema {}", v["schema"])));
    }
    let inst = Instance::load(instance, objective_from_report(&v)?)?;
    let deletion = deletion_from_report(&text, inst.size())?;
    let field = |k: &str| v[k].as_str().map(str::to_owned).ok_or_else(|| CliError::Input(format!("report lacks {k}")));
    let claimed_cost = Cost::parse(&field("cost")?)?;
    let claimed_lambda = parse_rational(&field("residual_lambda")?)?;
    let target = parse_rational(&field("target")?)?;

    let cost: Cost = deletion.iter().map(|u| inst.costs[u].clone()).sum();
    let res = residual(&inst, &deletion)?;
    let cost_matches = cost == claimed_cost;
    let lambda_matches = res.lambda == claimed_lambda;
    let within_target = res.lambda <= target;
    let feasible_flag = v["feasible"].as_bool() == Some(within_target);
    let valid = cost_matches && lambda_matches && feasible_flag;
    let out = json!({
        "valid": valid,
        "cost": c(&cost),
        "residual_lambda": format_rational(&res.lambda),
        "target": r(&target),
        "within_target": within_target,
        "checks": {
            "cost_matches": cost_matches,
            "residual_matches": lambda_matches,
            "feasible_flag_matches": feasible_flag,
        },
    });
    Ok(Output::Json(out, if valid { 0 } else { 1 }))
}
