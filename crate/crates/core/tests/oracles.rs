//! Comparisons against exhaustive optima and random baselines.

mod common;

use common::*;
use optirefine::densest::{
    dks_via_dskr, dskr_blackbox, fix_c_dense, greedy_dskr, kdensify_via_dks, peel_dks, sdp_dskr,
};
use optirefine::maxcut::{
    greedy_fix_cut, maxcutcc_via_maxcutkr, maxcutkr_blackbox, sdp_maxcutkr, GwMaxCut,
};
use optirefine::sdp::{build_gpkc_sdp, gw_maxcut, solve_sdp, RoundingOutcome};
use optirefine::{
    cut_value, density, induced_weight, Assignment, Graph, PartitionMeasure, RefinementInstance,
    VertexSet,
};
use rand::Rng;

const EPS: f64 = 1e-9;

fn instance(g: &Graph, u: VertexSet, k: usize, m: PartitionMeasure) -> RefinementInstance<'_> {
    RefinementInstance::new(g, u, k, m).unwrap()
}

#[test]
fn relaxation_upper_bounds_integral_optima() {
    let tol = 1e-4;
    for seed in 0..30u64 {
        let n = 5 + (seed as usize % 6);
        let g = gnp(n, 0.5, seed);
        let u = random_set(n, 0.5, 100 + seed);
        let k = 1 + (seed as usize % (n - 1));
        let slack = tol * g.total_weight();

        let inst = instance(&g, u.clone(), k, PartitionMeasure::KDensify);
        let sol = solve_sdp(&build_gpkc_sdp(&inst), tol, 2000);
        assert!(sol.max_norm_error() <= 1e-6);
        assert!(
            sol.residual_linear <= tol * n as f64 && sol.residual_quadratic <= tol * (n * n) as f64
        );
        let opt = opt_kdensify(&g, &u, k);
        assert!(
            sol.objective_value + slack >= opt - EPS,
            "densify seed {seed}: {} < {opt}",
            sol.objective_value
        );

        let inst = instance(&g, u.clone(), k, PartitionMeasure::MaxCutKR);
        let sol = solve_sdp(&build_gpkc_sdp(&inst), tol, 2000);
        let opt = opt_maxcutkr(&g, &u, k);
        assert!(
            sol.objective_value + slack >= opt - EPS,
            "cut seed {seed}: {} < {opt}",
            sol.objective_value
        );

        let gw = gw_maxcut(&g, tol);
        assert!(gw.objective_value + slack >= opt_maxcut(&g) - EPS);
    }
}

#[test]
fn five_cycle_relaxation_exceeds_integral_cut() {
    let g = Graph::from_unweighted(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
    assert_eq!(opt_maxcut(&g), 4.0);
    let sol = gw_maxcut(&g, 1e-6);
    assert!((sol.objective_value - 4.5225).abs() < 1e-3);
}

#[test]
fn rounding_driver_finds_optimum_on_small_instances() {
    let mut hits = 0;
    for seed in 0..50u64 {
        let n = 5 + (seed as usize % 4);
        let g = gnp(n, 0.5, 1000 + seed);
        let u = random_set(n, 0.5, 2000 + seed);
        let k = 1 + (seed as usize % (n - 1));
        let inst = instance(&g, u.clone(), k, PartitionMeasure::MaxCutKR);
        let r = sdp_maxcutkr(&inst, 200, seed).unwrap();
        assert_eq!(r.chosen.len(), k);
        if r.cut_after >= opt_maxcutkr(&g, &u, k) - EPS {
            hits += 1;
        }
    }
    assert!(hits >= 45, "optimum on {hits}/50");
}

#[test]
fn sdp_dskr_reaches_half_of_optimum() {
    let mut good = 0;
    for seed in 0..50u64 {
        let n = 5 + (seed as usize % 4);
        let g = gnp(n, 0.5, 3000 + seed);
        let u = random_set(n, 0.5, 4000 + seed);
        let k = 1 + (seed as usize % (n - 1));
        let inst = instance(&g, u.clone(), k, PartitionMeasure::KDensify);
        let r = sdp_dskr(&inst, 100, seed).unwrap();
        assert_eq!(r.chosen.len(), k);
        let opt = opt_dskr(&g, &u, k);
        assert!(r.density_after <= opt + EPS);
        if r.density_after >= 0.5 * opt - EPS {
            good += 1;
        }
    }
    assert!(good >= 45, "half-optimal on {good}/50");
}

#[test]
fn blackbox_gw_at_half_budget() {
    let mut good = 0;
    for seed in 0..50u64 {
        let n = 6 + (seed as usize % 5);
        let g = gnp(n, 0.5, 5000 + seed);
        let u = random_set(n, 0.5, 6000 + seed);
        let k = n / 2;
        let inst = instance(&g, u.clone(), k, PartitionMeasure::MaxCutKR);
        let r = maxcutkr_blackbox(
            &inst,
            &GwMaxCut {
                seed,
                ..GwMaxCut::default()
            },
        );
        let opt = opt_maxcutkr(&g, &u, k);
        assert!(r.cut_after <= opt + EPS);
        if r.cut_after >= 0.5 * opt - EPS {
            good += 1;
        }
    }
    assert!(good >= 45, "half-optimal on {good}/50");
}

#[test]
fn greedy_beats_random_refinements() {
    for seed in 0..30u64 {
        let g = gnp(9, 0.5, 7000 + seed);
        let u = random_set(9, 0.4, 8000 + seed);
        let k = 1 + (seed as usize % 3);
        let inst = instance(&g, u.clone(), k, PartitionMeasure::KDensify);
        let r = greedy_dskr(&inst);
        let mut rng = rng(seed);
        let avg: f64 = (0..100)
            .map(|_| density(&g, &u.sym_diff(&random_subset(9, k, &mut rng)).unwrap()))
            .sum::<f64>()
            / 100.0;
        assert!(r.density_after >= avg - EPS, "seed {seed}");
    }
}

#[test]
fn fix_dense_beats_random_removal() {
    for seed in 0..30u64 {
        let n = 9;
        let g = gnp(n, 0.5, 9000 + seed);
        let u = VertexSet::empty(n);
        let mut rng = rng(seed);
        let positive = random_subset(n, 6, &mut rng);
        let assignment = Assignment::from_set(&positive);
        let changed = positive.clone();
        let outcome = RoundingOutcome {
            assignment,
            changed,
            objective_before_fix: 0.0,
        };
        let k = 3;
        let fixed = fix_c_dense(&g, &u, k, &outcome);
        assert_eq!(fixed.len(), k);
        let members = positive.to_vec();
        let avg: f64 = (0..50)
            .map(|_| {
                let drop = random_subset(members.len(), members.len() - k, &mut rng);
                let kept = VertexSet::from_ids(
                    n,
                    members
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| !drop.contains(*i))
                        .map(|(_, &v)| v),
                )
                .unwrap();
                density(&g, &kept)
            })
            .sum::<f64>()
            / 50.0;
        assert!(density(&g, &fixed) >= avg - EPS, "seed {seed}");
    }
}

#[test]
fn greedy_fix_cut_beats_random_fixing() {
    for seed in 0..30u64 {
        let n = 9;
        let g = gnp(n, 0.5, 11000 + seed);
        let u = random_set(n, 0.5, 12000 + seed);
        let mut rng = rng(seed);
        let c0 = random_subset(n, rng.random_range(0..=n), &mut rng);
        let k = rng.random_range(0..=n);
        let fixed = greedy_fix_cut(&g, &u, k, &c0);
        assert_eq!(fixed.len(), k);
        let avg: f64 = (0..50)
            .map(|_| {
                let mut c = c0.clone();
                while c.len() < k {
                    let out: Vec<usize> = (0..n).filter(|&v| !c.contains(v)).collect();
                    c.insert(out[rng.random_range(0..out.len())]);
                }
                while c.len() > k {
                    let inn = c.to_vec();
                    c.remove(inn[rng.random_range(0..inn.len())]);
                }
                cut_value(&g, &u.sym_diff(&c).unwrap())
            })
            .sum::<f64>()
            / 50.0;
        assert!(
            cut_value(&g, &u.sym_diff(&fixed).unwrap()) >= avg - EPS,
            "seed {seed}"
        );
    }
}

#[test]
fn sdp_maxcutkr_improves_random_partitions() {
    let mut improved = 0;
    let trials = 20;
    for seed in 0..trials {
        let g = gnp(50, 0.2, 13000 + seed);
        let u = random_set(50, 0.5, 14000 + seed);
        let inst = instance(&g, u, 5, PartitionMeasure::MaxCutKR);
        let r = sdp_maxcutkr(&inst, 100, seed).unwrap();
        assert_eq!(r.chosen.len(), 5);
        if r.cut_after > r.cut_before {
            improved += 1;
        }
    }
    assert!(
        improved as f64 >= 0.95 * trials as f64,
        "improved {improved}/{trials}"
    );
}

#[test]
fn peel_meets_k_over_n_bound() {
    for seed in 0..30u64 {
        let g = gnp(10, 0.4, 15000 + seed);
        let s = peel_dks(&g, 5);
        assert!(induced_weight(&g, &s) >= 0.5 * opt_dks_weight(&g, 5) - EPS);
    }
}

#[test]
fn kdensify_meets_contraction_bound() {
    for seed in 0..30u64 {
        let n = 9;
        let g = gnp(n, 0.5, 16000 + seed);
        let mut u = random_set(n, 0.4, 17000 + seed);
        if u.is_empty() {
            u.insert(0);
        }
        let k = 2;
        let c = kdensify_via_dks(&g, &u, k, &exhaustive_dks).unwrap();
        assert_eq!(c.len(), k);
        assert_eq!(c.intersection_len(&u), 0);
        let got = induced_weight(&g, &u.union(&c).unwrap());
        let opt = opt_kdensify(&g, &u, k);
        assert!(got >= (k as f64 - 1.0) / (k as f64 + 1.0) * opt - EPS);
    }
}

#[test]
fn kdensify_two_triangles_by_enumeration() {
    let g = Graph::from_unweighted(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 4)])
        .unwrap();
    let u = VertexSet::from_ids(6, [0, 1, 2]).unwrap();
    let c = kdensify_via_dks(&g, &u, 1, &exhaustive_dks).unwrap();
    let best = (3..6)
        .max_by(|&a, &b| {
            let wa = induced_weight(&g, &u.union(&VertexSet::from_ids(6, [a]).unwrap()).unwrap());
            let wb = induced_weight(&g, &u.union(&VertexSet::from_ids(6, [b]).unwrap()).unwrap());
            wa.partial_cmp(&wb).unwrap()
        })
        .unwrap();
    assert_eq!(c.to_vec(), vec![best]);
}

#[test]
fn blackbox_density_bound_in_small_budget_regime() {
    for seed in 0..30u64 {
        let n = 10;
        let g = gnp(n, 0.5, 18000 + seed);
        let mut rng = rng(seed);
        let size = rng.random_range(5..=7);
        let u = random_subset(n, size, &mut rng);
        let k = 2 + (seed as usize % 2);
        let inst = instance(&g, u.clone(), k, PartitionMeasure::KDensify);
        let r = dskr_blackbox(&inst, &exhaustive_dks).unwrap();
        let c = k as f64 / u.len() as f64;
        let bound = (1.0 - c) / (1.0 + c) * (k as f64 - 1.0) / (k as f64 + 1.0);
        assert!(
            r.density_after >= bound * opt_dskr(&g, &u, k) - EPS,
            "seed {seed}"
        );
    }
}

#[test]
fn reverse_reductions_with_exhaustive_solvers() {
    for seed in 0..10u64 {
        let g = weighted_gnp(8, 0.5, 19000 + seed);
        let k = 2 + seed as usize % 5;
        let dks = dks_via_dskr(&g, k, &|inst: &RefinementInstance<'_>| {
            exhaustive_dks(inst.graph(), inst.k())
        })
        .unwrap();
        assert_eq!(induced_weight(&g, &dks), opt_dks_weight(&g, k));

        let cc = maxcutcc_via_maxcutkr(&g, k, &|inst: &RefinementInstance<'_>| {
            let d = Dense::of(inst.graph());
            let mut best: Option<(f64, Vec<bool>)> = None;
            for_each_subset(8, inst.k(), |m| {
                let v = d.cut(m);
                if best.as_ref().is_none_or(|(b, _)| v > *b) {
                    best = Some((v, m.to_vec()));
                }
            });
            let m = best.unwrap().1;
            VertexSet::from_ids(8, (0..8).filter(|&i| m[i]))
        })
        .unwrap();
        let opt = best_refinement(8, &VertexSet::empty(8), k, |s| Dense::of(&g).cut(s));
        assert_eq!(cut_value(&g, &cc), opt);
    }
}

#[test]
fn bipartite_refinement_from_optimal_side() {
    let g = Graph::from_unweighted(6, (0..3).flat_map(|i| (3..6).map(move |j| (i, j)))).unwrap();
    let u = VertexSet::from_ids(6, [0, 1, 2]).unwrap();
    assert_eq!(
        cut_value(
            &g,
            &u.sym_diff(&greedy_fix_cut(&g, &u, 0, &VertexSet::empty(6)))
                .unwrap()
        ),
        9.0
    );
    let exact = |_: &Graph| Assignment::from_set(&u);
    for k in 1..=3 {
        let inst = instance(&g, u.clone(), k, PartitionMeasure::MaxCutKR);
        let r = maxcutkr_blackbox(&inst, &exact);
        let opt = opt_maxcutkr(&g, &u, k);
        let kn = k as f64 / 6.0;
        assert!(r.cut_after >= (4.0 * kn * kn).min((1.0 - kn).powi(2)) * opt - EPS);
    }
}
