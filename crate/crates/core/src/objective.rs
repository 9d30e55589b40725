//! Density, induced weight and cut value.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::set::VertexSet;

fn check(g: &Graph, s: &VertexSet) {
    assert_eq!(
        g.n(),
        s.universe_size(),
        "set universe does not match graph"
    );
}

/// Total weight of edges with both endpoints in `s`.
pub fn induced_weight(g: &Graph, s: &VertexSet) -> f64 {
    check(g, s);
    if s.len() <= 1 {
        return 0.0;
    }
    let mut total = 0.0;
    for u in s.iter() {
        for (v, w) in g.neighbors(u) {
            if v > u && s.contains(v) {
                total += w;
            }
        }
    }
    total
}

/// `w(E[s]) / |s|`, with `density(∅) = 0`.
pub fn density(g: &Graph, s: &VertexSet) -> f64 {
    if s.is_empty() {
        return 0.0;
    }
    induced_weight(g, s) / s.len() as f64
}

/// Total weight of edges with exactly one endpoint in `s`.
pub fn cut_value(g: &Graph, s: &VertexSet) -> f64 {
    check(g, s);
    g.edges()
        .iter()
        .filter(|e| s.contains(e.u) != s.contains(e.v))
        .map(|e| e.w)
        .fold(0.0, |acc, w| acc + w)
}

/// Weight of edges from `v` to the other members of `s`. `v` must be in `s`.
pub fn weighted_degree_in(g: &Graph, v: usize, s: &VertexSet) -> Result<f64> {
    check(g, s);
    if !s.contains(v) {
        return Err(Error::NotMember(v));
    }
    Ok(g.neighbors(v)
        .filter(|&(u, _)| s.contains(u))
        .map(|(_, w)| w)
        .sum())
}

/// Weight of edges at `v` crossing the cut `(s, V ∖ s)`.
pub fn cut_contribution(g: &Graph, v: usize, s: &VertexSet) -> f64 {
    check(g, s);
    let side = s.contains(v);
    g.neighbors(v)
        .filter(|&(u, _)| s.contains(u) != side)
        .map(|(_, w)| w)
        .sum()
}

/// The set functions a refinement can maximize.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Objective {
    /// `d(U △ C)`.
    Density,
    /// `w(E[U △ C])`.
    InducedWeight,
    /// `cut(U △ C)`.
    Cut,
}

impl Objective {
    pub fn evaluate(self, g: &Graph, s: &VertexSet) -> f64 {
        match self {
            Objective::Density => density(g, s),
            Objective::InducedWeight => induced_weight(g, s),
            Objective::Cut => cut_value(g, s),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Objective::Density => "density",
            Objective::InducedWeight => "induced-weight",
            Objective::Cut => "cut",
        }
    }
}
