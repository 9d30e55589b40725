//! Worst-case approximation ratio of the SDP algorithms as a function of
//! `τ = k/n`.
//!
//! After rounding, `|C| = μn` for an unknown `μ`. The rounded value is at
//! least `λ_τ(μ)·OPT` and fixing `C` keeps a `κ_τ(μ)` fraction of it. The
//! ratio for given `(γ, η)` is `min_μ κ_τ(μ)·λ_τ(μ, γ, η)`, and the curve
//! maximizes that over `γ ∈ [0.1, 5]`, `η ∈ [(1 − α + 0.01)/α, η_max]`.
//!
//! With `L = γηα + γ(α(1 − τ)² − 1 + 2τ)`:
//!
//! * k-Densify, `μ ∈ [τ, 1]`: `κ = τ²/μ²`,
//!   `λ = β + L − γη(1 − μ)/(1 − τ) − γμ(2τ − μ)`.
//! * MaxCut-kR, `μ ∈ [τ, 1]`: as above with `α` in place of `β`.
//! * MaxCut-kR, `μ ∈ (0, τ)`: `κ = (1 − τ)²/(1 − μ)²`,
//!   `λ = α + L − γημ/τ − γμ(2τ − μ)`.
//!
//! The MaxCut-kR ratio is the smaller of the two separately maximized cases.
//! In every case `λ = a + bμ + γμ²`, so the stationary point of `κλ` solves a
//! linear equation; the minimum over `μ` is taken among the interval ends and
//! that point.

use std::f64::consts::PI;

use serde::Serialize;

/// `min_{0 < θ ≤ π} (2/π)·θ/(1 − cos θ)`, about 0.87856.
pub fn gw_alpha() -> f64 {
    minimize(|t| 2.0 / PI * t / (1.0 - t.cos()), 1e-6, PI)
}

/// `min_{0 ≤ θ < arccos(−1/3)} (2/π)·(2π − 3θ)/(1 + 3 cos θ)`, about 0.79607.
pub fn gw_beta() -> f64 {
    minimize(
        |t| 2.0 / PI * (2.0 * PI - 3.0 * t) / (1.0 + 3.0 * t.cos()),
        0.0,
        (-1.0f64 / 3.0).acos() - 1e-9,
    )
}

/// Grid scan followed by golden-section refinement around the best cell.
fn minimize(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let steps = 10_000;
    let h = (hi - lo) / steps as f64;
    let best = (0..=steps)
        .min_by(|&a, &b| f(lo + a as f64 * h).total_cmp(&f(lo + b as f64 * h)))
        .unwrap();
    let (mut a, mut b) = (
        (lo + (best as f64 - 1.0) * h).max(lo),
        (lo + (best as f64 + 1.0) * h).min(hi),
    );
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    f((a + b) / 2.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum RatioProblem {
    Dskr,
    #[value(name = "maxcutkr")]
    #[serde(rename = "maxcutkr")]
    MaxCutKr,
}

#[derive(Clone, Copy, Debug)]
struct Constants {
    alpha: f64,
    beta: f64,
}

impl Constants {
    fn new() -> Self {
        Constants {
            alpha: gw_alpha(),
            beta: gw_beta(),
        }
    }

    fn eta_min(&self) -> f64 {
        (1.0 - self.alpha + 0.01) / self.alpha
    }
}

/// `λ = a + bμ + γμ²` on one side of `τ`, with the matching `κ`.
#[derive(Clone, Copy, Debug)]
struct Piece {
    a: f64,
    b: f64,
    c: f64,
    tau: f64,
    /// `true` for `μ ≥ τ` (`κ = τ²/μ²`), `false` for `μ < τ`
    /// (`κ = (1 − τ)²/(1 − μ)²`).
    upper: bool,
}

impl Piece {
    fn upper(start: f64, tau: f64, gamma: f64, eta: f64, k: &Constants) -> Self {
        let l = gamma * eta * k.alpha + gamma * (k.alpha * (1.0 - tau).powi(2) - 1.0 + 2.0 * tau);
        let s = gamma * eta / (1.0 - tau);
        Piece {
            a: start + l - s,
            b: s - 2.0 * gamma * tau,
            c: gamma,
            tau,
            upper: true,
        }
    }

    fn lower(tau: f64, gamma: f64, eta: f64, k: &Constants) -> Self {
        let l = gamma * eta * k.alpha + gamma * (k.alpha * (1.0 - tau).powi(2) - 1.0 + 2.0 * tau);
        Piece {
            a: k.alpha + l,
            b: -gamma * eta / tau - 2.0 * gamma * tau,
            c: gamma,
            tau,
            upper: false,
        }
    }

    fn value(&self, mu: f64) -> f64 {
        let lambda = self.a + self.b * mu + self.c * mu * mu;
        let kappa = if self.upper {
            (self.tau / mu).powi(2)
        } else {
            ((1.0 - self.tau) / (1.0 - mu)).powi(2)
        };
        kappa * lambda
    }

    /// Solves `d(κλ)/dμ = 0`. For `κ = τ²/μ²` the derivative is proportional
    /// to `−2a − bμ`; for `κ = (1 − τ)²/(1 − μ)²` to `(2a + b) + (2c + b)μ`.
    fn stationary(&self) -> Option<f64> {
        let (num, den) = if self.upper {
            (-2.0 * self.a, self.b)
        } else {
            (-(2.0 * self.a + self.b), 2.0 * self.c + self.b)
        };
        let mu = num / den;
        (den != 0.0 && mu.is_finite()).then_some(mu)
    }

    fn domain(&self) -> (f64, f64) {
        if self.upper {
            (self.tau, 1.0)
        } else {
            (0.0, self.tau)
        }
    }

    /// Minimum over the domain: both ends and the stationary point when it
    /// lies inside. Without a stationary point the domain is scanned on a
    /// 10⁻³ grid.
    fn minimum(&self) -> f64 {
        let (lo, hi) = self.domain();
        let mut best = self.value(lo).min(self.value(hi));
        match self.stationary() {
            Some(mu) if (lo..=hi).contains(&mu) => best = best.min(self.value(mu)),
            Some(_) => {}
            None => {
                let steps = ((hi - lo) / 1e-3).ceil() as usize;
                for i in 1..steps {
                    best = best.min(self.value(lo + (hi - lo) * i as f64 / steps as f64));
                }
            }
        }
        best
    }
}

/// `min_{μ ∈ [τ, 1]} f_τ(μ, γ, η)` for k-Densify.
pub fn dense_ratio(tau: f64, gamma: f64, eta: f64) -> f64 {
    let k = Constants::new();
    Piece::upper(k.beta, tau, gamma, eta, &k).minimum()
}

/// `min_{μ ∈ [τ, 1]} f¹_τ(μ, γ, η)` for MaxCut-kR.
pub fn cut_ratio_upper(tau: f64, gamma: f64, eta: f64) -> f64 {
    let k = Constants::new();
    Piece::upper(k.alpha, tau, gamma, eta, &k).minimum()
}

/// `min_{μ ∈ (0, τ]} f²_τ(μ, γ, η)` for MaxCut-kR.
pub fn cut_ratio_lower(tau: f64, gamma: f64, eta: f64) -> f64 {
    let k = Constants::new();
    Piece::lower(tau, gamma, eta, &k).minimum()
}

/// Search grid for `(γ, η)`.
#[derive(Clone, Copy, Debug)]
pub struct RatioGrid {
    pub gamma_steps: usize,
    pub eta_steps: usize,
    pub eta_max: f64,
}

impl Default for RatioGrid {
    fn default() -> Self {
        RatioGrid {
            gamma_steps: 491,
            eta_steps: 1000,
            eta_max: 10.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RatioPoint {
    pub tau: f64,
    pub ratio: f64,
    /// Maximizing parameters of the binding case.
    pub gamma: f64,
    pub eta: f64,
}

fn grid_max(grid: &RatioGrid, eta_min: f64, f: impl Fn(f64, f64) -> f64) -> (f64, f64, f64) {
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    for i in 0..grid.gamma_steps {
        let gamma = 0.1 + 4.9 * i as f64 / (grid.gamma_steps - 1).max(1) as f64;
        for j in 0..grid.eta_steps {
            let eta =
                eta_min + (grid.eta_max - eta_min) * j as f64 / (grid.eta_steps - 1).max(1) as f64;
            let v = f(gamma, eta);
            if v > best.0 {
                best = (v, gamma, eta);
            }
        }
    }
    best
}

/// The ratio curve on the given `τ` values, each in `(0, 1)`.
pub fn approx_ratio_curve(
    problem: RatioProblem,
    taus: &[f64],
    grid: &RatioGrid,
) -> Vec<RatioPoint> {
    let k = Constants::new();
    taus.iter()
        .map(|&tau| {
            assert!(tau > 0.0 && tau < 1.0, "tau must lie in (0, 1)");
            let (ratio, gamma, eta) = match problem {
                RatioProblem::Dskr => grid_max(grid, k.eta_min(), |g, e| {
                    Piece::upper(k.beta, tau, g, e, &k).minimum()
                }),
                RatioProblem::MaxCutKr => {
                    let one = grid_max(grid, k.eta_min(), |g, e| {
                        Piece::upper(k.alpha, tau, g, e, &k).minimum()
                    });
                    let two = grid_max(grid, k.eta_min(), |g, e| {
                        Piece::lower(tau, g, e, &k).minimum()
                    });
                    if one.0 <= two.0 {
                        one
                    } else {
                        two
                    }
                }
            };
            RatioPoint {
                tau,
                ratio,
                gamma,
                eta,
            }
        })
        .collect()
}

/// The ratio with `(γ, η)` fixed instead of maximized.
pub fn pinned_ratio(problem: RatioProblem, tau: f64, gamma: f64, eta: f64) -> f64 {
    match problem {
        RatioProblem::Dskr => dense_ratio(tau, gamma, eta),
        RatioProblem::MaxCutKr => {
            cut_ratio_upper(tau, gamma, eta).min(cut_ratio_lower(tau, gamma, eta))
        }
    }
}

/// Parses `a,b,c` or `start:stop:step` (inclusive of `stop` up to rounding).
pub fn parse_tau_grid(text: &str) -> std::result::Result<Vec<f64>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| format!("bad number '{t}'"))
    };
    let taus = if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        let [start, stop, step] = parts[..] else {
            return Err("expected start:stop:step".into());
        };
        let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
        if step.is_nan() || step <= 0.0 || stop < start {
            return Err("need step > 0 and stop >= start".into());
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        (0..count).map(|i| start + step * i as f64).collect()
    } else {
        text.split(',')
            .map(num)
            .collect::<std::result::Result<Vec<_>, _>>()?
    };
    if let Some(t) = taus.iter().find(|t| !(**t > 0.0 && **t < 1.0)) {
        return Err(format!("tau {t} outside (0, 1)"));
    }
    Ok(taus)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_match_known_values() {
        let (a, b) = (gw_alpha(), gw_beta());
        assert!(a > 0.87856 && a < 0.87857, "alpha {a}");
        assert!(b > 0.79607 && b < 0.79608, "beta {b}");
    }

    #[test]
    fn stationary_point_is_a_zero_of_the_derivative() {
        let k = Constants::new();
        for piece in [
            Piece::upper(k.beta, 0.3, 1.2, 2.0, &k),
            Piece::lower(0.6, 0.7, 3.0, &k),
        ] {
            let mu = piece.stationary().unwrap();
            let h = 1e-6;
            let d = (piece.value(mu + h) - piece.value(mu - h)) / (2.0 * h);
            assert!(d.abs() < 1e-6, "derivative {d} at {mu}");
        }
    }

    #[test]
    fn closed_form_minimum_matches_dense_scan() {
        let k = Constants::new();
        for &(tau, gamma, eta) in &[
            (0.5, 0.92, 1.65),
            (0.2, 2.0, 0.5),
            (0.4, 0.3, 8.0),
            (0.5, 3.87, 0.65 / 3.87),
        ] {
            for piece in [
                Piece::upper(k.beta, tau, gamma, eta, &k),
                Piece::lower(tau, gamma, eta, &k),
            ] {
                let (lo, hi) = piece.domain();
                let lo = if piece.upper { lo } else { lo + 1e-9 };
                let scan = (0..=100_000)
                    .map(|i| piece.value(lo + (hi - lo) * i as f64 / 1e5))
                    .fold(f64::INFINITY, f64::min);
                assert!(
                    (piece.minimum() - scan).abs() < 1e-6,
                    "{tau} {gamma} {eta}: {} vs {scan}",
                    piece.minimum()
                );
            }
        }
    }

    #[test]
    fn dense_ratio_with_chosen_parameters_exceeds_058() {
        let f = dense_ratio(0.5, 0.920, 1.65);
        assert!(f > 0.58, "{f}");
    }

    #[test]
    fn dense_ratio_with_feige_parameters_is_0517() {
        let f = dense_ratio(0.5, 3.87, 0.65 / 3.87);
        assert!((f - 0.517).abs() <= 0.005, "{f}");
    }

    #[test]
    fn maxcut_curve_at_half() {
        let p = approx_ratio_curve(RatioProblem::MaxCutKr, &[0.5], &RatioGrid::default())[0];
        assert!((0.63..=0.66).contains(&p.ratio), "{p:?}");
        assert!(p.ratio >= 0.643 - 1e-3, "{p:?}");
    }

    #[test]
    fn dense_curve_is_monotone_up_to_half() {
        let taus: Vec<f64> = (1..=10).map(|i| i as f64 * 0.05).collect();
        let grid = RatioGrid {
            gamma_steps: 200,
            eta_steps: 300,
            eta_max: 10.0,
        };
        let curve = approx_ratio_curve(RatioProblem::Dskr, &taus, &grid);
        for w in curve.windows(2) {
            assert!(w[1].ratio >= w[0].ratio, "{:?} then {:?}", w[0], w[1]);
        }
        let last = curve.last().unwrap();
        assert!((0.58..=0.60).contains(&last.ratio), "{last:?}");
    }

    #[test]
    fn tau_grid_forms() {
        assert_eq!(parse_tau_grid("0.1,0.5").unwrap(), vec![0.1, 0.5]);
        let g = parse_tau_grid("0.1:0.5:0.1").unwrap();
        assert_eq!(g.len(), 5);
        assert!((g[4] - 0.5).abs() < 1e-12);
        assert!(parse_tau_grid("0,0.5").is_err());
        assert!(parse_tau_grid("0.1:0.5").is_err());
        assert!(parse_tau_grid("x").is_err());
    }
}
