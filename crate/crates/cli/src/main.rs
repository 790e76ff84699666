//! `densdel`: density deletion from the command line.
//!
//! Every subcommand prints one JSON document on standard output (or a flat
//! `key value` listing with `--plain`). Exit status is 0 on success, 1 on a
//! domain error and 2 on a usage error.

mod bench;
mod commands;
mod load;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "densdel", version, about = "Density deletion for graphs and supermodular functions")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Set function defined by the instance file.
    #[arg(long, global = true, value_enum, default_value_t = ObjectiveKind::Graph)]
    pub objective: ObjectiveKind,
    /// Exponent of the p-mean objective.
    #[arg(long, global = true, default_value_t = 2)]
    pub p: u32,
    /// Print `key value` lines instead of JSON.
    #[arg(long, global = true)]
    pub plain: bool,
    /// Cross-check against the exhaustive reference oracles.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Add wall-clock time to run reports.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveKind {
    Graph,
    Hypergraph,
    Pmean,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    Graph,
    Hypergraph,
    Pmean(u32),
}

impl Objective {
    pub fn name(&self) -> &'static str {
        match self {
            Objective::Graph => "graph",
            Objective::Hypergraph => "hypergraph",
            Objective::Pmean(_) => "pmean",
        }
    }
}

impl Global {
    pub fn objective(&self) -> Objective {
        match self.objective {
            ObjectiveKind::Graph => Objective::Graph,
            ObjectiveKind::Hypergraph => Objective::Hypergraph,
            ObjectiveKind::Pmean => Objective::Pmean(self.p),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Maximum density and the maximal densest set.
    Density { instance: PathBuf },
    /// Dense decomposition blocks.
    Decompose { instance: PathBuf },
    /// Compute a deletion set.
    Delete {
        #[command(subcommand)]
        algorithm: DeleteCmd,
    },
    /// Set Cover gadgets.
    Gadget {
        #[command(subcommand)]
        action: GadgetCmd,
    },
    /// Recompute cost and residual density of a run report.
    Verify { instance: PathBuf, report: PathBuf },
    /// Batch runs described by a `key=value` config; prints CSV.
    Bench { config: PathBuf },
}

#[derive(Args, Debug, Clone)]
pub struct DeleteArgs {
    pub instance: PathBuf,
    /// Target density, `p/q` or an integer.
    #[arg(long)]
    pub rho: String,
}

#[derive(Subcommand, Debug)]
pub enum DeleteCmd {
    /// Greedy submodular cover.
    Greedy {
        #[command(flatten)]
        args: DeleteArgs,
    },
    /// Orientation LP with threshold rounding.
    Lp {
        #[command(flatten)]
        args: DeleteArgs,
        #[arg(long)]
        eps: String,
    },
    /// Randomized proportional deletion.
    Random {
        #[command(flatten)]
        args: DeleteArgs,
        #[arg(long)]
        eps: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run seeds `seed..seed+trials` and report per-seed costs.
        #[arg(long)]
        trials: Option<u64>,
        /// c_f bound: `p/q`, or `brute` for exhaustive computation.
        #[arg(long)]
        cf: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum GadgetCmd {
    /// Build a gadget graph from a Set Cover file.
    Build {
        set_cover: PathBuf,
        #[arg(long, default_value_t = 2)]
        rho: u64,
        /// Incidence-graph gadget with threshold f_max - 1.
        #[arg(long)]
        warmup: bool,
        /// Write the graph here and the provenance to `<out>.prov.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Map a deletion set on a gadget back to a set cover.
    Extract {
        graph: PathBuf,
        /// Run report whose `deletion` field is used.
        #[arg(long, conflicts_with = "set")]
        report: Option<PathBuf>,
        /// Comma-separated deleted vertex ids.
        #[arg(long)]
        set: Option<String>,
        /// Provenance file; defaults to `<graph>.prov.json`.
        #[arg(long)]
        prov: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] densdel::Error),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Input(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Domain(e) => e.kind(),
            CliError::Io(_) => "io",
            CliError::Input(_) => "invalid_input",
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// What a subcommand prints, and the exit status that goes with it.
pub enum Output {
    Json(Value, u8),
    Text(String),
}

fn render_plain(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                let shown = match val {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                out.push_str(&format!("{k} {shown}\n"));
            }
        }
        other => {
            out.push_str(&other.to_string());
            out.push('\n');
        }
    }
    out
}

fn emit(v: &Value, plain: bool) {
    if plain {
        print!("{}", render_plain(v));
    } else {
        println!("{v}");
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(Output::Json(v, code)) => {
            emit(&v, cli.global.plain);
            ExitCode::from(code)
        }
        Ok(Output::Text(t)) => {
            print!("{t}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let v = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            emit(&v, cli.global.plain);
            ExitCode::from(1)
        }
    }
}
