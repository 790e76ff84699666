//! Batch runs from a `key=value` config, one CSV row per (instance, seed).
//!
//! Recognized keys: `algorithm` (greedy, lp, random), `objective` (graph,
//! hypergraph, pmean), `p`, `instance` (repeatable, relative to the config
//! file), `rho`, `eps`, `seed`, `trials`, `cf`, `opt` (true adds an
//! exhaustive optimum column). Lines starting with `#` are ignored.

use std::path::Path;

use densdel::brute::{brute_opt_deletion, brute_opt_deletion_oracle};
use densdel::{format_rational, Rational};
use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::commands::{cf_bound, greedy, lp, parse_param, random};
use crate::load::{read, Instance};
use crate::{CliError, CliResult, Objective};

#[derive(Debug)]
struct Config {
    algorithm: String,
    objective: Objective,
    instances: Vec<String>,
    rho: Rational,
    eps: Option<Rational>,
    seed: u64,
    trials: u64,
    cf: Option<String>,
    opt: bool,
}

fn bad(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Input(format!("config line {line}: {}", msg.into()))
}

fn parse_config(text: &str) -> CliResult<Config> {
    let (mut algorithm, mut objective, mut p) = (None, "graph".to_string(), 2u32);
    let (mut rho, mut eps, mut cf) = (None, None, None);
    let (mut seed, mut trials, mut opt) = (0u64, 1u64, false);
    let mut instances = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| bad(i + 1, "expected key=value"))?;
        let (k, v) = (k.trim(), v.trim().to_string());
        let num = |v: &str| v.parse::<u64>().map_err(|_| bad(i + 1, format!("{k}: not an integer")));
        match k {
            "algorithm" => algorithm = Some(v),
            "objective" => objective = v,
            "p" => p = num(&v)? as u32,
            "instance" => instances.push(v),
            "rho" => rho = Some(parse_param("rho", &v)?),
            "eps" => eps = Some(parse_param("eps", &v)?),
            "seed" => seed = num(&v)?,
            "trials" => trials = num(&v)?,
            "cf" => cf = Some(v),
            "opt" => opt = v == "true",
            other => return Err(bad(i + 1, format!("unknown key {other:?}"))),
        }
    }
    let objective = match objective.as_str() {
        "graph" => Objective::Graph,
        "hypergraph" => Objective::Hypergraph,
        "pmean" => Objective::Pmean(p),
        other => return Err(CliError::Input(format!("unknown objective {other:?}"))),
    };
    let algorithm = algorithm.ok_or_else(|| CliError::Input("config needs algorithm".into()))?;
    if !matches!(algorithm.as_str(), "greedy" | "lp" | "random") {
        return Err(CliError::Input(format!("unknown algorithm {algorithm:?}")));
    }
    if algorithm != "greedy" && eps.is_none() {
        return Err(CliError::Input(format!("{algorithm} needs eps")));
    }
    if instances.is_empty() || trials == 0 {
        return Err(CliError::Input("config needs at least one instance and one trial".into()));
    }
    Ok(Config {
        algorithm,
        objective,
        instances,
        rho: rho.ok_or_else(|| CliError::Input("config needs rho".into()))?,
        eps,
        seed,
        trials,
        cf,
        opt,
    })
}

const HEADER: [&str; 10] = [
    "instance",
    "algorithm",
    "seed",
    "rho",
    "eps",
    "cost",
    "residual_lambda",
    "target",
    "feasible",
    "opt",
];

fn field(report: &Map<String, Value>, k: &str) -> String {
    match &report[k] {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn run(config: &Path) -> CliResult<String> {
    let cfg = parse_config(&read(config)?)?;
    let base = config.parent().unwrap_or(Path::new("."));
    let loaded: Vec<(String, Instance, String)> = cfg
        .instances
        .iter()
        .map(|name| {
            let inst = Instance::load(&base.join(name), cfg.objective)?;
            let opt = if cfg.opt {
                let o = match (&inst.graph, inst.objective) {
                    (Some(g), Objective::Graph) => brute_opt_deletion(g, &cfg.rho)?,
                    _ => brute_opt_deletion_oracle(inst.oracle.as_ref(), &inst.costs, &cfg.rho)?,
                };
                o.value.as_ref().map(format_rational).unwrap_or_default()
            } else {
                String::new()
            };
            Ok((name.clone(), inst, opt))
        })
        .collect::<CliResult<_>>()?;
    let seeds: Vec<Option<u64>> = if cfg.algorithm == "random" {
        (cfg.seed..cfg.seed + cfg.trials).map(Some).collect()
    } else {
        vec![None]
    };
    let jobs: Vec<(usize, Option<u64>)> =
        (0..loaded.len()).flat_map(|i| seeds.iter().map(move |&s| (i, s))).collect();
    let rows: Vec<Vec<String>> = jobs
        .par_iter()
        .map(|&(i, seed)| {
            let (name, inst, opt) = &loaded[i];
            let eps = cfg.eps.clone().unwrap_or_default();
            let report = match (cfg.algorithm.as_str(), seed) {
                ("greedy", _) => greedy(inst, &cfg.rho)?,
                ("lp", _) => lp(inst, &cfg.rho, &eps)?,
                (_, s) => random(inst, &cfg.rho, &eps, &cf_bound(inst, cfg.cf.as_deref())?, s.unwrap_or(0))?,
            };
            Ok(vec![
                name.clone(),
                cfg.algorithm.clone(),
                seed.map(|s| s.to_string()).unwrap_or_default(),
                format_rational(&cfg.rho),
                cfg.eps.as_ref().map(format_rational).unwrap_or_default(),
                field(&report, "cost"),
                field(&report, "residual_lambda"),
                field(&report, "target"),
                field(&report, "feasible"),
                opt.clone(),
            ])
        })
        .collect::<CliResult<_>>()?;
    let csv_err = |e: csv::Error| CliError::Io(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(HEADER).map_err(csv_err)?;
    for row in rows {
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}
