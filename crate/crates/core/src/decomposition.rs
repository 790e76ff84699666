//! Dense decomposition of a supermodular function and the preprocessing step
//! that keeps only the blocks denser than a threshold.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{contract, density, marginal, restrict, Oracle};
use crate::rational::Rational;
use crate::set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub vertices: VertexSet,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub density: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DenseDecomposition {
    pub blocks: Vec<Block>,
}

impl DenseDecomposition {
    /// Blocks with density strictly above `threshold`, merged.
    pub fn dense_part(&self, threshold: &Rational) -> VertexSet {
        let universe = self.blocks.first().map_or(0, |b| b.vertices.universe());
        let mut out = VertexSet::empty(universe);
        for b in self.blocks.iter().filter(|b| &b.density > threshold) {
            out = out.union(&b.vertices);
        }
        out
    }
}

fn check_normalized(f: &Oracle) -> Result<()> {
    let at_empty = f.eval(&VertexSet::empty(f.universe()));
    if !at_empty.is_zero() {
        return Err(Error::InvalidOracle(format!(
            "f(empty set) = {at_empty}, expected 0"
        )));
    }
    Ok(())
}

/// Peel blocks off `f` until the ground set is exhausted, or until `stop`
/// returns true for a freshly computed block density.
fn peel(f: &Oracle, mut stop: impl FnMut(&Rational) -> bool) -> Result<Vec<Block>> {
    check_normalized(f)?;
    let mut blocks: Vec<Block> = Vec::new();
    let mut taken = VertexSet::empty(f.universe());
    let mut taken_value = Rational::zero();
    while taken.len() < f.ground().len() {
        let g = contract(f, &taken)?;
        let (lambda, block) = density(g.as_ref())?;
        if stop(&lambda) {
            break;
        }
        if block.is_empty() {
            return Err(Error::InvariantViolation("empty decomposition block".into()));
        }
        let next = taken.union(&block);
        let next_value = f.eval(&next);
        let expect = (&next_value - &taken_value) / BigInt::from(block.len());
        if expect != lambda {
            return Err(Error::InvariantViolation(format!(
                "block density {expect} differs from search result {lambda}"
            )));
        }
        if let Some(prev) = blocks.last() {
            if prev.density < lambda {
                return Err(Error::InvariantViolation(
                    "block densities increased".into(),
                ));
            }
        }
        blocks.push(Block {
            vertices: block,
            density: lambda,
        });
        taken = next;
        taken_value = next_value;
    }
    Ok(blocks)
}

pub fn dense_decomposition(f: &Oracle) -> Result<DenseDecomposition> {
    Ok(DenseDecomposition {
        blocks: peel(f, |_| false)?,
    })
}

#[derive(Clone, Debug)]
pub struct PreprocessResult {
    pub r: VertexSet,
    pub restricted: Oracle,
}

/// Restrict `f` to the union of its decomposition blocks denser than
/// `rho_prime`. Every kept element has top marginal at least `rho_prime`.
pub fn preprocess(f: &Oracle, rho_prime: &Rational) -> Result<PreprocessResult> {
    if rho_prime < &Rational::zero() {
        return Err(Error::InvalidParameter("threshold must be non-negative".into()));
    }
    let blocks = peel(f, |lambda| lambda <= rho_prime)?;
    let mut r = VertexSet::empty(f.universe());
    for b in &blocks {
        r = r.union(&b.vertices);
    }
    for v in r.iter() {
        let m = marginal(f.as_ref(), v, &r.without(v))?;
        if &m < rho_prime {
            return Err(Error::InvariantViolation(format!(
                "element {v} kept with marginal {m} below {rho_prime}"
            )));
        }
    }
    let restricted = restrict(f, &r)?;
    Ok(PreprocessResult { r, restricted })
}
