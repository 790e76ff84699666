use densdel::densest::{check_density_fractional, densest_subgraph};
use densdel::oracle::{density, restrict};
use densdel::{format_rational, Cost, Rational, VertexSet};
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::load::Instance;
use crate::{CliResult, Objective};

pub const SCHEMA: &str = "densdel.run_report/1";

pub fn r(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

pub fn c(x: &Cost) -> Value {
    Value::String(x.to_string())
}

pub fn ids(s: &VertexSet) -> Value {
    json!(s.to_vec())
}

pub fn objective_json(o: Objective) -> Value {
    match o {
        Objective::Pmean(p) => json!({ "kind": "pmean", "p": p }),
        other => json!({ "kind": other.name() }),
    }
}

/// Density of what survives `deletion`, with a densest witness in original ids.
pub struct Residual {
    pub lambda: Rational,
    pub witness: VertexSet,
}

pub fn residual(inst: &Instance, deletion: &VertexSet) -> CliResult<Residual> {
    let n = inst.size();
    if let (Objective::Graph, Some(g)) = (inst.objective, &inst.graph) {
        let rest = g.delete(deletion)?;
        if rest.n() == 0 {
            return Ok(Residual { lambda: Rational::zero(), witness: VertexSet::empty(n) });
        }
        let cert = densest_subgraph(&rest)?;
        let witness = VertexSet::from_ids(n, cert.witness.iter().map(|v| rest.origins()[v]));
        return Ok(Residual { lambda: cert.lambda_star, witness });
    }
    let keep = inst.oracle.ground().difference(deletion);
    if keep.is_empty() {
        return Ok(Residual { lambda: Rational::zero(), witness: VertexSet::empty(n) });
    }
    let (lambda, witness) = density(restrict(&inst.oracle, &keep)?.as_ref())?;
    Ok(Residual { lambda, witness })
}

/// Orientation within `target` when one exists on a graph residual, else the
/// densest witness.
pub fn certificate(inst: &Instance, deletion: &VertexSet, res: &Residual, target: &Rational) -> CliResult<Value> {
    if let (Objective::Graph, Some(g)) = (inst.objective, &inst.graph) {
        if &res.lambda <= target {
            let rest = g.delete(deletion)?;
            if let Some(o) = check_density_fractional(&rest, target)? {
                let loads = o.loads(&rest);
                let max = loads.iter().max().cloned().unwrap_or_else(Rational::zero);
                let per_vertex: Vec<Value> = loads
                    .iter()
                    .enumerate()
                    .map(|(v, l)| json!([rest.origins()[v], format_rational(l)]))
                    .collect();
                return Ok(json!({
                    "kind": "orientation",
                    "bound": r(target),
                    "max_load": r(&max),
                    "loads": per_vertex,
                }));
            }
        }
    }
    Ok(json!({ "kind": "witness", "vertices": ids(&res.witness), "density": r(&res.lambda) }))
}

pub struct RunReport {
    pub algorithm: &'static str,
    pub params: Value,
    pub deletion: VertexSet,
    pub target: Rational,
    pub details: Value,
}

impl RunReport {
    /// Recomputes cost and residual density, then assembles the JSON report.
    pub fn finish(self, inst: &Instance) -> CliResult<Map<String, Value>> {
        let cost: Cost = self.deletion.iter().map(|v| inst.costs[v].clone()).sum();
        let res = residual(inst, &self.deletion)?;
        let cert = certificate(inst, &self.deletion, &res, &self.target)?;
        let mut m = Map::new();
        m.insert("schema".into(), json!(SCHEMA));
        m.insert("algorithm".into(), json!(self.algorithm));
        m.insert("objective".into(), objective_json(inst.objective));
        m.insert("params".into(), self.params);
        m.insert("deletion".into(), ids(&self.deletion));
        m.insert("cost".into(), c(&cost));
        m.insert("residual_lambda".into(), r(&res.lambda));
        m.insert("target".into(), r(&self.target));
        m.insert("feasible".into(), json!(res.lambda <= self.target));
        m.insert("certificate".into(), cert);
        m.insert("details".into(), self.details);
        Ok(m)
    }
}
