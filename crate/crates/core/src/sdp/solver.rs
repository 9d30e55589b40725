//! Low-rank (Burer–Monteiro) solver for [`GpkcSdp`].
//!
//! The Gram matrix is factored as `V Vᵀ` with `V` of shape `(n+1) × r`, rows
//! kept on the unit sphere and, with cardinality constraints, on the linear
//! subspace those constraints define. The ascent is Riemannian gradient with
//! Barzilai–Borwein steps and an Armijo safeguard.

use std::io::{self, Write};
use std::time::{Duration, Instant};

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{GpkcSdp, PartitionMeasure};
use crate::graph::Graph;

#[derive(Clone, Debug)]
pub struct SolverOptions {
    /// Feasibility tolerance: constraint residuals are accepted up to
    /// `tol·n` (linear) and `tol·n²` (quadratic).
    pub tol: f64,
    pub max_outer: usize,
    pub max_inner: usize,
    /// Factorization rank; `None` uses [`default_rank`].
    pub rank: Option<usize>,
    /// Seed of the random starting point.
    pub seed: u64,
    /// Wall-clock budget, checked between outer rounds. A solve that runs
    /// out of time returns its current iterate unconverged.
    pub time_limit: Option<Duration>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-4,
            max_outer: 2000,
            max_inner: 200,
            rank: None,
            seed: 0x5d_b0e5,
            time_limit: None,
        }
    }
}

/// `⌈√(2(n+1))⌉`, capped at 40 and at `n + 1`.
pub fn default_rank(n: usize) -> usize {
    let r = (2.0 * (n as f64 + 1.0)).sqrt().ceil() as usize;
    r.min(40).min(n + 1).max(1)
}

/// Unit vectors `v₀, …, vₙ` with solve statistics. Row 0 is the reference
/// vector `v₀`; row `i + 1` belongs to vertex `i`.
#[derive(Clone, Debug)]
pub struct VectorSolution {
    n: usize,
    rank: usize,
    data: Vec<f64>,
    pub objective_value: f64,
    pub residual_linear: f64,
    pub residual_quadratic: f64,
    pub converged: bool,
    pub outer_iterations: usize,
    /// Best feasible objective after each outer iteration, starting at the
    /// first feasible one. Nondecreasing.
    pub objective_trace: Vec<f64>,
}

impl VectorSolution {
    /// Wraps explicit vectors (`rows[0]` is `v₀`). Rows are normalized; the
    /// statistics are left at zero.
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        assert!(!rows.is_empty());
        let rank = rows[0].len();
        let mut data = Vec::with_capacity(rows.len() * rank);
        for row in rows {
            assert_eq!(row.len(), rank);
            data.extend_from_slice(row);
        }
        normalize_rows(&mut data, rank);
        VectorSolution {
            n: rows.len() - 1,
            rank,
            data,
            objective_value: 0.0,
            residual_linear: 0.0,
            residual_quadratic: 0.0,
            converged: true,
            outer_iterations: 0,
            objective_trace: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn reference(&self) -> &[f64] {
        self.row(0)
    }

    pub fn vertex(&self, i: usize) -> &[f64] {
        self.row(i + 1)
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.rank..(i + 1) * self.rank]
    }

    /// Largest deviation of a row norm from 1.
    pub fn max_norm_error(&self) -> f64 {
        self.data
            .chunks(self.rank)
            .map(|row| (dot(row, row).sqrt() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Writes `n r` on the first line, then the `n + 1` rows (`v₀` first),
    /// one whitespace-separated vector per line.
    pub fn write_text<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{} {}", self.n, self.rank)?;
        for row in self.data.chunks(self.rank) {
            let line: Vec<String> = row.iter().map(|x| format!("{x:e}")).collect();
            writeln!(out, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `UᵀU` for a row-major `U` with `r` columns.
fn gram(rows: &[f64], r: usize) -> DMatrix<f64> {
    let u = DMatrix::from_row_slice(rows.len() / r, r, rows);
    u.tr_mul(&u)
}

fn normalize_rows(data: &mut [f64], rank: usize) {
    for row in data.chunks_mut(rank) {
        let norm = dot(row, row).sqrt();
        if norm > 0.0 {
            row.iter_mut().for_each(|x| *x /= norm);
        } else {
            row.iter_mut().for_each(|x| *x = 0.0);
            row[0] = 1.0;
        }
    }
}

/// The relaxation with the objective scaled by `1 / total_weight`.
///
/// For a unit `v₀` the two cardinality constraints together say
/// `Σᵢ x⁰ᵢ vᵢ = (n − 2k)·v₀` (equality in Cauchy–Schwarz), that is `Vᵀa = 0`
/// with `a = (−(n − 2k), x⁰)`. This is linear in `V`, so the solver keeps
/// every iterate on `{unit rows, Vᵀa = 0}` and never trades feasibility
/// against the objective. Penalizing the two scalar residuals instead
/// stalls: the feasible Gram matrices form a face of the PSD cone and the
/// constraint gradients are parallel there.
struct Scaled {
    r: usize,
    edges: Vec<(usize, usize, f64)>,
    coef: [f64; 4],
    /// `a` and `‖a‖²` when the cardinality constraints are present.
    a: Option<(Vec<f64>, f64)>,
}

impl Scaled {
    fn new(p: &GpkcSdp<'_>, r: usize) -> Self {
        let g = p.graph();
        let scale = if g.total_weight() > 0.0 {
            g.total_weight()
        } else {
            1.0
        };
        let a = p.rhs_linear().map(|b| {
            let mut a = Vec::with_capacity(g.n() + 1);
            a.push(-b);
            a.extend(p.x0().values().iter().map(|&x| x as f64));
            let norm2 = dot(&a, &a);
            (a, norm2)
        });
        Scaled {
            r,
            edges: g
                .edges()
                .iter()
                .map(|e| (e.u + 1, e.v + 1, e.w / scale))
                .collect(),
            coef: p.measure().coefficients(),
            a,
        }
    }

    fn row<'a>(&self, v: &'a [f64], i: usize) -> &'a [f64] {
        &v[i * self.r..(i + 1) * self.r]
    }

    fn objective(&self, v: &[f64]) -> f64 {
        let [c0, c1, c2, c3] = self.coef;
        let v0 = self.row(v, 0);
        let mut f = 0.0;
        for &(i, j, w) in &self.edges {
            let (vi, vj) = (self.row(v, i), self.row(v, j));
            let mut term = c0 + c3 * dot(vi, vj);
            if c1 != 0.0 || c2 != 0.0 {
                term += c1 * dot(v0, vi) + c2 * dot(v0, vj);
            }
            f += w * term;
        }
        f
    }

    /// `Vᵀa`, or `None` without constraints.
    fn constraint(&self, v: &[f64]) -> Option<Vec<f64>> {
        self.a.as_ref().map(|(a, _)| {
            let mut s = vec![0.0; self.r];
            for (ai, row) in a.iter().zip(v.chunks(self.r)) {
                s.iter_mut().zip(row).for_each(|(acc, y)| *acc += ai * y);
            }
            s
        })
    }

    /// Riemannian gradient at `v`, written into `grad`.
    fn gradient(&self, v: &[f64], grad: &mut [f64]) {
        let r = self.r;
        let [_, c1, c2, c3] = self.coef;
        grad.iter_mut().for_each(|x| *x = 0.0);
        for &(i, j, w) in &self.edges {
            for t in 0..r {
                let (v0, vi, vj) = (v[t], v[i * r + t], v[j * r + t]);
                grad[t] += w * (c1 * vi + c2 * vj);
                grad[i * r + t] += w * (c1 * v0 + c3 * vj);
                grad[j * r + t] += w * (c2 * v0 + c3 * vi);
            }
        }
        for (g, x) in grad.chunks_mut(r).zip(v.chunks(r)) {
            let radial = dot(g, x);
            g.iter_mut().zip(x).for_each(|(gi, xi)| *gi -= radial * xi);
        }
        let Some((a, norm2)) = &self.a else { return };
        // Remove the component that would break `Zᵀa = 0`: find `λ` with
        // `(‖a‖² I − Σ aᵢ² vᵢvᵢᵀ) λ = Σ aᵢ zᵢ` and subtract the tangent part
        // of `aᵢ λ` from each row.
        let mut rhs = DVector::<f64>::zeros(r);
        for (ai, g) in a.iter().zip(grad.chunks(r)) {
            rhs.iter_mut().zip(g).for_each(|(acc, y)| *acc += ai * y);
        }
        let weighted: Vec<f64> = a
            .iter()
            .zip(v.chunks(r))
            .flat_map(|(ai, x)| x.iter().map(move |y| ai * y))
            .collect();
        let m = DMatrix::<f64>::identity(r, r) * (norm2 * (1.0 + 1e-12)) - gram(&weighted, r);
        let Some(chol) = m.cholesky() else { return };
        let lam = chol.solve(&rhs);
        for ((ai, g), x) in a.iter().zip(grad.chunks_mut(r)).zip(v.chunks(r)) {
            let lv: f64 = lam.iter().zip(x).map(|(l, y)| l * y).sum();
            g.iter_mut()
                .zip(lam.iter())
                .zip(x)
                .for_each(|((gi, l), y)| *gi -= ai * (l - lv * y));
        }
    }

    /// Maps `v` to the nearest feasible point. The nearest point has rows
    /// `normalize(yᵢ − aᵢ μ)` for some `μ ∈ ℝʳ`; `μ` solves
    /// `Σ aᵢ normalize(yᵢ − aᵢ μ) = 0`, found by damped Newton. Returns
    /// whether the constraint was met.
    fn retract(&self, v: &mut [f64]) -> bool {
        let Some((a, norm2)) = &self.a else {
            normalize_rows(v, self.r);
            return true;
        };
        let r = self.r;
        let residual = |mu: &DVector<f64>, out: &mut [f64]| -> f64 {
            let mut f = vec![0.0; r];
            for ((ai, y), o) in a.iter().zip(v.chunks(r)).zip(out.chunks_mut(r)) {
                o.iter_mut()
                    .zip(y)
                    .zip(mu.iter())
                    .for_each(|((o, y), m)| *o = y - ai * m);
                normalize_rows(o, r);
                f.iter_mut()
                    .zip(o.iter())
                    .for_each(|(acc, x)| *acc += ai * x);
            }
            dot(&f, &f).sqrt()
        };
        let mut mu = DVector::from_vec(self.constraint(v).expect("constrained")) / *norm2;
        let mut rows = vec![0.0; v.len()];
        let mut trial = vec![0.0; v.len()];
        let mut res = residual(&mu, &mut rows);
        let target = 1e-13 * norm2.sqrt();
        for _ in 0..50 {
            if res <= target {
                break;
            }
            // Jacobian of the residual is −Σ aᵢ²/‖uᵢ‖ (I − ûᵢûᵢᵀ).
            let mut f = DVector::<f64>::zeros(r);
            let mut total = 0.0;
            let mut weighted = Vec::with_capacity(v.len());
            for ((ai, y), u) in a.iter().zip(v.chunks(r)).zip(rows.chunks(r)) {
                let len: f64 = y
                    .iter()
                    .zip(mu.iter())
                    .map(|(y, m)| (y - ai * m).powi(2))
                    .sum::<f64>()
                    .sqrt();
                let w = if len > 0.0 { ai * ai / len } else { 0.0 };
                total += w;
                weighted.extend(u.iter().map(|x| w.sqrt() * x));
                f.iter_mut().zip(u).for_each(|(acc, x)| *acc += ai * x);
            }
            let h = DMatrix::<f64>::identity(r, r) * (total * (1.0 + 1e-12) + 1e-300)
                - gram(&weighted, r);
            let Some(chol) = h.cholesky() else { break };
            let delta = chol.solve(&f);
            let mut scale = 1.0;
            let mut improved = false;
            for _ in 0..30 {
                let cand = &mu + &delta * scale;
                let cand_res = residual(&cand, &mut trial);
                if cand_res < res {
                    mu = cand;
                    res = cand_res;
                    std::mem::swap(&mut rows, &mut trial);
                    improved = true;
                    break;
                }
                scale *= 0.5;
            }
            if !improved {
                break;
            }
        }
        v.copy_from_slice(&rows);
        res <= 1e-10 * norm2.sqrt()
    }
}

struct Ascent {
    grad: Vec<f64>,
    prev_grad: Vec<f64>,
    prev_v: Vec<f64>,
    cand: Vec<f64>,
    step: f64,
}

impl Ascent {
    fn new(len: usize) -> Self {
        Ascent {
            grad: vec![0.0; len],
            prev_grad: vec![0.0; len],
            prev_v: vec![0.0; len],
            cand: vec![0.0; len],
            step: 1.0,
        }
    }

    /// Up to `max_inner` Riemannian gradient steps with Barzilai–Borwein
    /// lengths and an Armijo safeguard. Returns whether a stationary point
    /// was reached.
    fn run(
        &mut self,
        p: &Scaled,
        v: &mut Vec<f64>,
        f: &mut f64,
        opts: &SolverOptions,
        first: bool,
    ) -> bool {
        let grad_tol = 0.1 * opts.tol;
        for it in 0..opts.max_inner {
            p.gradient(v, &mut self.grad);
            let gnorm2 = dot(&self.grad, &self.grad);
            if gnorm2.sqrt() <= grad_tol {
                return true;
            }
            if it > 0 || !first {
                let (mut ss, mut sy) = (0.0, 0.0);
                for i in 0..v.len() {
                    let ds = v[i] - self.prev_v[i];
                    ss += ds * ds;
                    sy += ds * (self.prev_grad[i] - self.grad[i]);
                }
                if sy > 0.0 && ss > 0.0 {
                    self.step = (ss / sy).clamp(1e-10, 1e10);
                }
            }
            self.prev_v.copy_from_slice(v);
            self.prev_grad.copy_from_slice(&self.grad);
            loop {
                for ((c, x), g) in self.cand.iter_mut().zip(v.iter()).zip(&self.grad) {
                    *c = x + self.step * g;
                }
                let feasible = p.retract(&mut self.cand);
                let f1 = p.objective(&self.cand);
                if feasible && f1 >= *f + 1e-4 * self.step * gnorm2 {
                    std::mem::swap(v, &mut self.cand);
                    *f = f1;
                    break;
                }
                self.step *= 0.5;
                if self.step < 1e-14 {
                    // No ascent left at working precision.
                    self.step = 1.0;
                    return true;
                }
            }
        }
        false
    }
}

/// Solves with default options except `tol` and the outer iteration limit.
pub fn solve_sdp(p: &GpkcSdp<'_>, tol: f64, max_iters: usize) -> VectorSolution {
    solve_sdp_with(
        p,
        &SolverOptions {
            tol,
            max_outer: max_iters,
            ..SolverOptions::default()
        },
    )
}

/// Runs until the Riemannian gradient norm (objective scaled by the total
/// weight) drops below `tol / 10` or `max_outer` rounds of `max_inner`
/// steps are spent. Every iterate is feasible up to rounding, and the
/// objective never decreases.
pub fn solve_sdp_with(p: &GpkcSdp<'_>, opts: &SolverOptions) -> VectorSolution {
    assert!(opts.tol > 0.0, "tolerance must be positive");
    let n = p.n();
    let r = opts.rank.unwrap_or_else(|| default_rank(n)).max(1);
    let scaled = Scaled::new(p, r);

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut v = starting_point(p, &scaled, &mut rng);
    let mut f = scaled.objective(&v);

    let started = Instant::now();
    let mut ascent = Ascent::new(v.len());
    let mut trace = Vec::new();
    let mut stationary = false;
    let mut outer = 0;
    for it in 1..=opts.max_outer {
        outer = it;
        stationary = ascent.run(&scaled, &mut v, &mut f, opts, it == 1);
        trace.push(f);
        if stationary || opts.time_limit.is_some_and(|t| started.elapsed() >= t) {
            break;
        }
    }

    let mut sol = finish(p, n, r, v, false, outer, trace, p.graph().total_weight());
    let nf = n as f64;
    sol.converged = stationary
        && sol.residual_linear <= opts.tol * nf
        && sol.residual_quadratic <= opts.tol * nf * nf;
    sol
}

/// A random feasible point of full rank. Without constraints the rows are
/// uniform on the sphere. With them, `v₀ = e₁` and
/// `vᵢ = x⁰ᵢ (c·e₁ + √(1 − c²)·wᵢ)` with `c = (n − 2k)/n` and unit `wᵢ ⊥ e₁`
/// summing to zero (random antipodal pairs, plus a 120° triple when `n` is
/// odd), which satisfies `Vᵀa = 0` exactly.
fn starting_point(p: &GpkcSdp<'_>, scaled: &Scaled, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let (n, r) = (p.n(), scaled.r);
    let mut v: Vec<f64> = (0..(n + 1) * r)
        .map(|_| rng.sample(StandardNormal))
        .collect();
    let Some(b) = p.rhs_linear() else {
        normalize_rows(&mut v, r);
        return v;
    };
    let c = b / n as f64;
    let s = (1.0 - c * c).max(0.0).sqrt();
    let random_perp = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        let mut w: Vec<f64> = (0..r).map(|_| rng.sample(StandardNormal)).collect();
        w[0] = 0.0;
        let norm = dot(&w, &w).sqrt();
        w.iter_mut().for_each(|x| *x /= norm);
        w
    };
    let mut dirs: Vec<Vec<f64>> = Vec::with_capacity(n);
    let triple = n % 2 == 1 && n >= 3 && r >= 3;
    let paired = if triple { n - 3 } else { n - n % 2 };
    while dirs.len() < paired {
        let w = random_perp(rng);
        dirs.push(w.iter().map(|x| -x).collect());
        dirs.push(w);
    }
    if triple {
        let p1 = random_perp(rng);
        let mut q = random_perp(rng);
        let overlap = dot(&p1, &q);
        q.iter_mut().zip(&p1).for_each(|(x, y)| *x -= overlap * y);
        let qn = dot(&q, &q).sqrt();
        q.iter_mut().for_each(|x| *x /= qn);
        let h = 3f64.sqrt() / 2.0;
        dirs.push(p1.clone());
        dirs.push(p1.iter().zip(&q).map(|(x, y)| -0.5 * x + h * y).collect());
        dirs.push(p1.iter().zip(&q).map(|(x, y)| -0.5 * x - h * y).collect());
    }
    // Odd n with rank below 3 has no balanced directions; fall back to the
    // Newton retraction from the nearest configuration.
    while dirs.len() < n {
        dirs.push(vec![0.0; r]);
    }
    v.iter_mut().for_each(|x| *x = 0.0);
    v[0] = 1.0;
    for (i, w) in dirs.iter().enumerate() {
        let x = p.x0().get(i) as f64;
        let row = &mut v[(i + 1) * r..(i + 2) * r];
        row.iter_mut().zip(w).for_each(|(y, wi)| *y = x * s * wi);
        row[0] += x * c;
    }
    scaled.retract(&mut v);
    v
}

/// Objective and the two constraint residuals of a row-major `V`.
fn measure(p: &GpkcSdp<'_>, data: &[f64]) -> (f64, f64, f64) {
    let r = data.len() / (p.n() + 1);
    let row = |i: usize| &data[i * r..(i + 1) * r];
    let m = p.measure();
    let f = p
        .graph()
        .edges()
        .iter()
        .map(|e| {
            let (vi, vj) = (row(e.u + 1), row(e.v + 1));
            e.w * m.edge_term(dot(row(0), vi), dot(row(0), vj), dot(vi, vj))
        })
        .sum();
    let (lin, quad) = match p.rhs_linear() {
        None => (0.0, 0.0),
        Some(b) => {
            let mut s = vec![0.0; r];
            for i in 0..p.n() {
                let x = p.x0().get(i) as f64;
                s.iter_mut().zip(row(i + 1)).for_each(|(a, y)| *a += x * y);
            }
            ((dot(&s, row(0)) - b).abs(), (dot(&s, &s) - b * b).abs())
        }
    };
    (f, lin, quad)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    p: &GpkcSdp<'_>,
    n: usize,
    rank: usize,
    data: Vec<f64>,
    converged: bool,
    outer_iterations: usize,
    trace: Vec<f64>,
    total_weight: f64,
) -> VectorSolution {
    let scale = if total_weight > 0.0 {
        total_weight
    } else {
        1.0
    };
    let (objective_value, residual_linear, residual_quadratic) = measure(p, &data);
    VectorSolution {
        n,
        rank,
        data,
        objective_value,
        residual_linear,
        residual_quadratic,
        converged,
        outer_iterations,
        objective_trace: trace.into_iter().map(|f| f * scale).collect(),
    }
}

/// Goemans–Williamson relaxation of max-cut (no cardinality constraints).
pub fn gw_maxcut(g: &Graph, tol: f64) -> VectorSolution {
    let p = GpkcSdp::unconstrained(g, PartitionMeasure::MaxCutKR);
    solve_sdp_with(
        &p,
        &SolverOptions {
            tol,
            ..SolverOptions::default()
        },
    )
}
