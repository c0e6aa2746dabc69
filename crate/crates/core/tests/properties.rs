use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use bending_core::fields::{adapted_frame, covariant_derivative, frame_components, FrameComponents};
use bending_core::functionals::{eta2, eta2_cofactor, sample_node};
use bending_core::geometry::{build_grid, grid_geometry, integrate, pointwise_geometry};
use bending_core::linalg::{add4, det3, dot4, norm4, scale4, sub4, sym_eigenvalues3};
use bending_core::surfaces::{catalog_fields, catalog_surfaces, make_field, make_surface, FieldSpec, SurfaceSpec};
use bending_core::{Surface, VOL_S3};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_u(rng: &mut ChaCha8Rng) -> [f64; 3] {
    [rng.random_range(0.2..2.9), rng.random_range(0.2..2.9), rng.random_range(0.0..2.0 * PI)]
}

fn ellipsoid() -> Surface {
    make_surface(&SurfaceSpec::Ellipsoid { axes: [2.0, 1.0, 1.0, 1.0] }).unwrap()
}

#[test]
fn eta2_and_density_are_invariant_under_frame_changes() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let surface = ellipsoid();
    let field = make_field(&FieldSpec::PerturbedHopf { epsilon: 0.3 }).unwrap();
    for _ in 0..50 {
        let u = random_u(&mut rng);
        let geo = pointwise_geometry(&surface, u).unwrap();
        let jet = field.jet(&surface, &geo).unwrap();
        let frame = adapted_frame(&geo, &jet.value);
        let base = FrameComponents::in_frame(&geo, &jet, &frame);
        for _ in 0..20 {
            let t: f64 = rng.random_range(0.0..2.0 * PI);
            let reflect = if rng.random_bool(0.5) { -1.0 } else { 1.0 };
            let e1 = add4(&scale4(t.cos(), &frame[0]), &scale4(t.sin(), &frame[1]));
            let e2 = scale4(reflect, &sub4(&scale4(t.cos(), &frame[1]), &scale4(t.sin(), &frame[0])));
            let rotated = FrameComponents::in_frame(&geo, &jet, &[e1, e2, frame[2]]);
            assert_abs_diff_eq!(eta2(&rotated), eta2(&base), epsilon = 1e-10);
            assert_abs_diff_eq!(rotated.bending_density, base.bending_density, epsilon = 1e-10);
        }
    }
}

fn det4(m: [[f64; 4]; 4]) -> f64 {
    // Leibniz expansion
    let mut total = 0.0;
    let mut perm = [0usize, 1, 2, 3];
    fn heap(k: usize, perm: &mut [usize; 4], sign: &mut f64, m: &[[f64; 4]; 4], total: &mut f64) {
        if k == 1 {
            *total += *sign * (0..4).map(|r| m[r][perm[r]]).product::<f64>();
            return;
        }
        for i in 0..k {
            heap(k - 1, perm, sign, m, total);
            if i + 1 < k {
                if k % 2 == 0 { perm.swap(i, k - 1) } else { perm.swap(0, k - 1) }
                *sign = -*sign;
            }
        }
    }
    let mut sign = 1.0;
    heap(4, &mut perm, &mut sign, &m, &mut total);
    total
}

#[test]
fn eta2_is_the_jacobian_of_the_field_as_a_sphere_map() {
    // det(v, ∂₁v, ∂₂v, ∂₃v) from centered differences of the evaluated field, a
    // pointwise check that needs no assumption about the frame
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let surfaces = [ellipsoid(), make_surface(&SurfaceSpec::BumpySphere { amplitude: 0.2, mode: 2 }).unwrap()];
    let h = 1e-5;
    for surface in &surfaces {
        for spec in catalog_fields() {
            let field = make_field(&spec).unwrap();
            for _ in 0..10 {
                let u = random_u(&mut rng);
                let v = field.evaluate(surface, u).unwrap();
                let partials: [[f64; 4]; 3] = std::array::from_fn(|i| {
                    let (mut up, mut dn) = (u, u);
                    up[i] += h;
                    dn[i] -= h;
                    scale4(0.5 / h, &sub4(&field.evaluate(surface, up).unwrap(), &field.evaluate(surface, dn).unwrap()))
                });
                let jacobian = det4([v, partials[0], partials[1], partials[2]]);
                let s = sample_node(surface, &field, u).unwrap();
                assert!((s.eta2 * s.density - jacobian).abs() < 1e-6, "{spec} at {u:?}: {} vs {jacobian}", s.eta2 * s.density);
            }
        }
    }
}

#[test]
fn bending_density_is_the_sum_of_squared_components() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for spec in catalog_fields() {
        let field = make_field(&spec).unwrap();
        let surface = ellipsoid();
        for _ in 0..20 {
            let c = frame_components(&field, &surface, random_u(&mut rng)).unwrap();
            let sum: f64 = c.a.iter().flatten().map(|x| x * x).sum::<f64>() + c.vvec.iter().map(|x| x * x).sum::<f64>();
            assert_abs_diff_eq!(c.bending_density, sum, epsilon = 1e-12);
        }
    }
}

#[test]
fn derivative_of_a_unit_field_is_orthogonal_to_it() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let surface = make_surface(&SurfaceSpec::BumpySphere { amplitude: 0.2, mode: 2 }).unwrap();
    for spec in catalog_fields() {
        // the finite-difference path is the harder case
        let field = make_field(&spec).unwrap().finite_difference_only();
        for _ in 0..20 {
            let u = random_u(&mut rng);
            let geo = pointwise_geometry(&surface, u).unwrap();
            let coords: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
            let x = geo.ambient(&coords);
            let v = field.evaluate(&surface, u).unwrap();
            let nabla = covariant_derivative(&field, &surface, u, &x).unwrap();
            assert!(dot4(&nabla, &v).abs() < 1e-9, "{spec}");
        }
    }
}

#[test]
fn orientation_flip_negates_h3_and_the_degree_integrand() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let surface = ellipsoid();
    let flipped = surface.flipped();
    let field = make_field(&FieldSpec::RandomSmooth { seed: 0, smoothness: 2 }).unwrap();
    for _ in 0..30 {
        let u = random_u(&mut rng);
        let a = sample_node(&surface, &field, u).unwrap();
        let b = sample_node(&flipped, &field, u).unwrap();
        assert_eq!(a.components.a, b.components.a);
        assert_eq!(a.components.vvec, b.components.vvec);
        for k in 0..3 {
            assert_abs_diff_eq!(a.components.h3[k], -b.components.h3[k], epsilon = 1e-14);
        }
        assert_abs_diff_eq!(a.eta2, -b.eta2, epsilon = 1e-13);
        assert_abs_diff_eq!(a.gauss_kronecker, -b.gauss_kronecker, epsilon = 1e-13);
    }
}

#[test]
fn normal_and_metric_invariants_on_catalog_surfaces() {
    for spec in catalog_surfaces() {
        let surface = make_surface(&spec).unwrap();
        let grid = build_grid([16, 16, 32], &surface).unwrap();
        for geo in grid_geometry(&surface, &grid).unwrap() {
            assert_abs_diff_eq!(norm4(&geo.normal), 1.0, epsilon = 1e-12);
            for t in &geo.tangents {
                assert!(dot4(t, &geo.normal).abs() < 1e-12 * norm4(t).max(1.0));
            }
            assert!(sym_eigenvalues3(&geo.metric)[0] > 0.0);
            let gs = geo.second_fundamental_form;
            for i in 0..3 {
                for j in 0..3 {
                    let scale = gs[i][j].abs().max(gs[j][i].abs()).max(1e-300);
                    assert!((gs[i][j] - gs[j][i]).abs() <= 1e-10 * scale.max(1.0));
                }
            }
        }
    }
}

#[test]
fn shape_operator_matches_the_derivative_of_the_normal() {
    let surface = ellipsoid();
    let h = 1e-5;
    // near the long axis x₀ ≈ ±2
    for u in [[0.3, 1.0, 0.5], [2.9, 2.0, 4.0], [1.2, 0.7, 2.0]] {
        let geo = pointwise_geometry(&surface, u).unwrap();
        for i in 0..3 {
            let mut up = u;
            let mut dn = u;
            up[i] += h;
            dn[i] -= h;
            let dn_du = scale4(0.5 / h, &sub4(
                &pointwise_geometry(&surface, up).unwrap().normal,
                &pointwise_geometry(&surface, dn).unwrap().normal,
            ));
            // −∂ᵢN = Σ_k S_ki ∂_k f
            let column = geo.coordinates(&scale4(-1.0, &dn_du));
            for k in 0..3 {
                assert_abs_diff_eq!(column[k], geo.shape_operator[k][i], epsilon = 1e-6);
            }
        }
        // principal curvatures are roots of det(S − λI) for the coordinate matrix
        for lambda in geo.principal_curvatures() {
            let mut m = geo.shape_operator;
            for (k, row) in m.iter_mut().enumerate() {
                row[k] -= lambda;
            }
            assert!(det3(&m).abs() < 1e-10, "λ = {lambda}");
        }
    }
}

#[test]
fn sphere_volume_converges_monotonically() {
    let surface = make_surface(&SurfaceSpec::Sphere { radius: 1.0 }).unwrap();
    let errors: Vec<f64> = [[8, 8, 16], [16, 16, 32], [24, 24, 48]]
        .iter()
        .map(|&res| {
            let grid = build_grid(res, &surface).unwrap();
            let geo = grid_geometry(&surface, &grid).unwrap();
            let density: Vec<f64> = geo.iter().map(|g| g.density).collect();
            (integrate(&grid, &vec![1.0; grid.len()], &density).unwrap() - VOL_S3).abs()
        })
        .collect();
    // spectral convergence hits summation round-off by the middle grid
    let floor = 1e-11;
    assert!(errors.windows(2).all(|w| w[1] <= w[0].max(floor)), "{errors:?}");
    assert!(errors[0] > errors[1]);
    assert!(errors[2] < 1e-8);
}

fn component_strategy() -> impl Strategy<Value = FrameComponents> {
    (prop::array::uniform4(-5.0..5.0f64), prop::array::uniform2(-5.0..5.0f64), prop::array::uniform3(-5.0..5.0f64))
        .prop_map(|(a, vvec, h3)| FrameComponents {
            a: [[a[0], a[1]], [a[2], a[3]]],
            vvec,
            h3,
            bending_density: a.iter().map(|x| x * x).sum::<f64>() + vvec[0] * vvec[0] + vvec[1] * vvec[1],
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn eta2_equals_its_cofactor_expansion(c in component_strategy()) {
        prop_assert!((eta2(&c) - eta2_cofactor(&c)).abs() <= 1e-12 * (1.0 + eta2(&c).abs()));
    }

    #[test]
    fn eta2_is_dominated_by_the_bending_density(c in component_strategy()) {
        let shape = (c.h3[0] * c.h3[0] + c.h3[1] * c.h3[1] + c.h3[2] * c.h3[2]).sqrt();
        prop_assert!(eta2(&c) <= shape * c.bending_density + 1e-12);
    }
}
