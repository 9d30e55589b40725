use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::{GpkcSdp, VectorSolution};
use crate::rng::stream_rng;
use crate::set::{Assignment, VertexSet};

/// A rounded assignment `x̄` and its disagreement set with `x⁰`.
#[derive(Clone, Debug)]
pub struct RoundingOutcome {
    pub assignment: Assignment,
    /// `C = {i : x̄ᵢ ≠ x⁰ᵢ}`.
    pub changed: VertexSet,
    /// Measure value of `x̄` before any fixing.
    pub objective_before_fix: f64,
}

impl RoundingOutcome {
    /// `T = {i : x̄ᵢ = 1}`.
    pub fn positive_side(&self) -> VertexSet {
        self.assignment.to_set()
    }
}

/// `max(100, ⌈n ln n⌉)`, capped at 5000.
pub fn default_repetitions(n: usize) -> usize {
    let nf = n as f64;
    let nlogn = if n > 1 {
        (nf * nf.ln()).ceil() as usize
    } else {
        0
    };
    nlogn.clamp(100, 5000)
}

fn random_direction<R: Rng>(rng: &mut R, r: usize) -> Vec<f64> {
    loop {
        let dir: Vec<f64> = (0..r).map(|_| rng.sample(StandardNormal)).collect();
        let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            return dir.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// One hyperplane rounding using stream `stream` of `seed`:
/// `x̄ᵢ = 1` iff `(r·v₀)(r·vᵢ) ≥ 0` for a uniform random unit vector `r`.
pub fn round_stream(
    p: &GpkcSdp<'_>,
    sol: &VectorSolution,
    seed: u64,
    stream: u64,
) -> RoundingOutcome {
    let n = p.n();
    assert_eq!(sol.n(), n, "solution size does not match the problem");
    let mut rng = stream_rng(seed, stream);
    let dir = random_direction(&mut rng, sol.rank());
    let proj = |v: &[f64]| v.iter().zip(&dir).map(|(a, b)| a * b).sum::<f64>();
    let p0 = proj(sol.reference());
    let values: Vec<i8> = (0..n)
        .map(|i| {
            if p0 * proj(sol.vertex(i)) >= 0.0 {
                1
            } else {
                -1
            }
        })
        .collect();
    let assignment = Assignment::from_values(values).expect("entries are ±1");
    let changed = assignment.disagreement(p.x0()).expect("same length");
    let objective_before_fix = p.measure().evaluate(p.graph(), &assignment);
    RoundingOutcome {
        assignment,
        changed,
        objective_before_fix,
    }
}

/// A single rounding with `seed`.
pub fn hyperplane_round(p: &GpkcSdp<'_>, sol: &VectorSolution, seed: u64) -> RoundingOutcome {
    round_stream(p, sol, seed, 0)
}

/// Runs `repetitions` independent roundings (streams `0..repetitions` of
/// `seed`), repairs each with `fixer`, scores the repaired set with `score`
/// and returns the best one with its score. Ties go to the
/// lexicographically smallest set, so the answer does not depend on thread
/// scheduling.
pub fn rounding_driver<F, S>(
    p: &GpkcSdp<'_>,
    sol: &VectorSolution,
    repetitions: usize,
    seed: u64,
    fixer: F,
    score: S,
) -> (VertexSet, f64)
where
    F: Fn(&RoundingOutcome) -> VertexSet + Sync,
    S: Fn(&VertexSet) -> f64 + Sync,
{
    assert!(repetitions >= 1);
    (0..repetitions as u64)
        .into_par_iter()
        .map(|rep| {
            let fixed = fixer(&round_stream(p, sol, seed, rep));
            let value = score(&fixed);
            (fixed, value)
        })
        .reduce_with(better)
        .expect("at least one repetition")
}

fn better(a: (VertexSet, f64), b: (VertexSet, f64)) -> (VertexSet, f64) {
    if a.1 > b.1 || (a.1 == b.1 && a.0 <= b.0) {
        a
    } else {
        b
    }
}
