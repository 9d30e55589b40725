//! Exhaustive optima for small instances.
//!
//! Every k-subset `C` is enumerated in lexicographic order of its sorted id
//! list; the first subset reaching the maximum wins.

use optirefine::densest::DksSolver;
use optirefine::{cut_value, density, Algorithm, Graph, RefinementInstance, VertexSet};

use crate::error::{BenchError, Result};

pub const MAX_N: usize = 12;
pub const MAX_SUBSETS: u64 = 1_000_000;

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn check_cap(n: usize, k: usize) -> Result<()> {
    if n > MAX_N || binomial(n, k) > MAX_SUBSETS {
        return Err(BenchError::OracleCap(format!(
            "n = {n}, k = {k} exceeds n <= {MAX_N}, C(n,k) <= {MAX_SUBSETS}"
        )));
    }
    Ok(())
}

/// Lexicographically first `C` with `|C| = k` maximizing `value(U △ C)`.
pub fn brute_force<F>(
    g: &Graph,
    initial: &VertexSet,
    k: usize,
    value: F,
) -> Result<(VertexSet, f64)>
where
    F: Fn(&VertexSet) -> f64,
{
    let n = g.n();
    check_cap(n, k)?;
    let mut idx: Vec<usize> = (0..k).collect();
    let mut best: Option<(Vec<usize>, f64)> = None;
    loop {
        let c = VertexSet::from_ids(n, idx.iter().copied())?;
        let v = value(&initial.sym_diff(&c)?);
        if best.as_ref().is_none_or(|(_, b)| v > *b) {
            best = Some((idx.clone(), v));
        }
        // Advance to the next combination.
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            break;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    let (ids, v) = best.expect("at least one subset");
    Ok((VertexSet::from_ids(n, ids)?, v))
}

/// Exact DS-kR: maximizes `d(U △ C)`.
pub fn brute_force_dskr(inst: &RefinementInstance<'_>) -> Result<(VertexSet, f64)> {
    let g = inst.graph();
    brute_force(g, inst.initial_set(), inst.k(), |s| density(g, s))
}

/// Exact MaxCut-kR: maximizes `cut(U △ C)`.
pub fn brute_force_maxcutkr(inst: &RefinementInstance<'_>) -> Result<(VertexSet, f64)> {
    let g = inst.graph();
    brute_force(g, inst.initial_set(), inst.k(), |s| cut_value(g, s))
}

/// Exact densest-k-subgraph as a [`DksSolver`].
#[derive(Clone, Copy, Debug, Default)]
pub struct ExhaustiveDks;

impl DksSolver for ExhaustiveDks {
    fn solve_dks(&self, g: &Graph, k: usize) -> optirefine::Result<VertexSet> {
        let empty = VertexSet::empty(g.n());
        brute_force(g, &empty, k, |s| density(g, s))
            .map(|(s, _)| s)
            .map_err(|e| optirefine::Error::Precondition(e.to_string()))
    }

    fn label(&self) -> Algorithm {
        Algorithm::Exhaustive
    }
}
