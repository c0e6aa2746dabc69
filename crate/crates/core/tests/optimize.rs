use approx::assert_abs_diff_eq;
use bending_core::optimize::{
    init_coefficients, minimize_bending, minimize_from, DiscreteBending, FrameCoefficients, MinimizeOptions,
    OptimizationStatus, Preconditioner,
};
use bending_core::surfaces::hyperspherical_box;
use bending_core::ParameterGrid;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn s3_grid(res: [usize; 3]) -> ParameterGrid {
    ParameterGrid::new(res, hyperspherical_box()).unwrap()
}

fn tangent_direction(c: &FrameCoefficients, rng: &mut ChaCha8Rng) -> Vec<[f64; 3]> {
    c.values
        .iter()
        .map(|n| {
            let d: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
            let along = d[0] * n[0] + d[1] * n[1] + d[2] * n[2];
            [d[0] - along * n[0], d[1] - along * n[1], d[2] - along * n[2]]
        })
        .collect()
}

#[test]
fn directional_derivative_matches_central_differences() {
    let grid = s3_grid([6, 6, 12]);
    let op = DiscreteBending::new(&grid).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for seed in 0..10 {
        let c = init_coefficients(seed, 2, &grid).unwrap();
        let d = tangent_direction(&c, &mut rng);
        let g = op.gradient(&c).unwrap();
        let analytic: f64 = g.iter().zip(&d).map(|(a, b)| a[0] * b[0] + a[1] * b[1] + a[2] * b[2]).sum();
        let h = 1e-5;
        let shifted = |t: f64| {
            let mut s = c.clone();
            for (v, dv) in s.values.iter_mut().zip(&d) {
                for k in 0..3 {
                    v[k] += t * dv[k];
                }
            }
            op.value(&s).unwrap()
        };
        let fd = (shifted(h) - shifted(-h)) / (2.0 * h);
        assert!((fd - analytic).abs() < 1e-6 * analytic.abs(), "seed {seed}: {fd} vs {analytic}");
    }
}

#[test]
fn hopf_start_terminates_immediately() {
    let grid = s3_grid([12, 12, 24]);
    let op = DiscreteBending::new(&grid).unwrap();
    let hopf = FrameCoefficients::constant(&grid, [1.0, 0.0, 0.0]).unwrap();
    let result = minimize_from(hopf, &op, &MinimizeOptions::default()).unwrap();
    assert_eq!(result.iterations, 0);
    assert_eq!(result.status, OptimizationStatus::Converged);
    assert_abs_diff_eq!(result.final_bending, 1.0, epsilon = 1e-6);
    assert!(result.final_gradient_norm < 1e-6);
}

#[test]
fn seeds_converge_to_constant_coefficients() {
    let grid = s3_grid([8, 8, 16]);
    for seed in [0, 7] {
        let result = minimize_bending(seed, &grid, &MinimizeOptions::default()).unwrap();
        assert_eq!(result.status, OptimizationStatus::Converged);
        assert!(result.history[0].bending > 1.0);
        assert!(result.final_bending <= 1.0 + 1e-4);
        assert!(result.coefficient_variance < 1e-6);
        assert!(result.history.windows(2).all(|w| w[1].bending <= w[0].bending));
        assert!(result.coefficients.max_unit_deviation() < 1e-14);
    }
}

#[test]
fn plain_gradient_descent_also_decreases() {
    let grid = s3_grid([6, 6, 12]);
    let opts = MinimizeOptions { max_iters: 50, preconditioner: Preconditioner::Identity, ..Default::default() };
    let result = minimize_bending(1, &grid, &opts).unwrap();
    assert!(result.final_bending < result.history[0].bending);
    assert!(result.history.windows(2).all(|w| w[1].bending <= w[0].bending));
}

#[test]
fn runs_are_deterministic() {
    let grid = s3_grid([6, 6, 12]);
    let opts = MinimizeOptions { max_iters: 20, ..Default::default() };
    let a = minimize_bending(3, &grid, &opts).unwrap();
    let one_thread = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = one_thread.install(|| minimize_bending(3, &grid, &opts).unwrap());
    assert_eq!(a, b);
}
