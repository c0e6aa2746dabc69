use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use bending_core::functionals::{
    degree_from_eta2, degree_gauss_kronecker, energy, sampled_sup_norms, sup_norms, total_bending, volumes,
};
use bending_core::geometry::build_grid;
use bending_core::surfaces::{catalog_surfaces, make_field, make_surface, FieldSpec, SurfaceSpec};
use bending_core::{compute_functionals, ParameterGrid, Surface};

fn sphere(r: f64) -> Surface {
    make_surface(&SurfaceSpec::Sphere { radius: r }).unwrap()
}

fn grid(res: [usize; 3], surface: &Surface) -> ParameterGrid {
    build_grid(res, surface).unwrap()
}

#[test]
fn hopf_on_unit_sphere() {
    let s = sphere(1.0);
    let g = grid([24, 24, 48], &s);
    let hopf = make_field(&FieldSpec::Hopf).unwrap();
    assert_abs_diff_eq!(total_bending(&s, &hopf, &g).unwrap(), 1.0, epsilon = 1e-8);
    let (e, e_via_b) = energy(&s, &hopf, &g).unwrap();
    assert_abs_diff_eq!(e, 5.0 * PI * PI, epsilon = 1e-6);
    assert!((e - e_via_b).abs() <= 1e-10 * e);
    let (vol_m, vol_v) = volumes(&s, &hopf, &g).unwrap();
    assert_abs_diff_eq!(vol_m, 2.0 * PI * PI, epsilon = 1e-8);
    assert_abs_diff_eq!(vol_v, 4.0 * PI * PI, epsilon = 1e-6);
    let deg = degree_from_eta2(&s, &hopf, &g).unwrap();
    assert_eq!(deg.rounded, 1);
    assert!(deg.residual < 1e-8);
    let (st, sf) = sup_norms(&s, &hopf, &g).unwrap();
    assert_abs_diff_eq!(st, 1.0, epsilon = 1e-12);
    assert_abs_diff_eq!(sf, 1.0, epsilon = 1e-12);
}

#[test]
fn hopf_on_radius_two_sphere() {
    let s = sphere(2.0);
    let g = grid([24, 24, 48], &s);
    let hopf = make_field(&FieldSpec::Hopf).unwrap();
    assert_abs_diff_eq!(total_bending(&s, &hopf, &g).unwrap(), 2.0, epsilon = 1e-6);
    // ½·(2/r²)·2π²r³ + (3/2)·2π²r³ at r = 2
    assert_abs_diff_eq!(energy(&s, &hopf, &g).unwrap().0, 28.0 * PI * PI, epsilon = 1e-5);
    let (st, sf) = sup_norms(&s, &hopf, &g).unwrap();
    assert_abs_diff_eq!(st, 0.5, epsilon = 1e-12);
    assert_abs_diff_eq!(sf, 0.5, epsilon = 1e-12);
}

#[test]
fn energy_has_the_volume_floor() {
    let s = sphere(1.0);
    let g = grid([12, 12, 24], &s);
    for spec in [FieldSpec::PerturbedHopf { epsilon: 0.3 }, FieldSpec::RandomSmooth { seed: 1, smoothness: 2 }] {
        let f = make_field(&spec).unwrap();
        assert!(energy(&s, &f, &g).unwrap().0 >= 3.0 * PI * PI);
    }
}

#[test]
fn flipped_sphere_has_degree_minus_one() {
    let s = sphere(1.0).flipped();
    let g = grid([16, 16, 32], &s);
    let hopf = make_field(&FieldSpec::Hopf).unwrap();
    assert_eq!(degree_from_eta2(&s, &hopf, &g).unwrap().rounded, -1);
    assert_eq!(degree_gauss_kronecker(&s, &g).unwrap().rounded, -1);
}

#[test]
fn degree_is_field_independent_on_the_ellipsoid() {
    let s = make_surface(&SurfaceSpec::Ellipsoid { axes: [2.0, 1.0, 1.0, 1.0] }).unwrap();
    let g = grid([24, 24, 48], &s);
    let a = degree_from_eta2(&s, &make_field(&FieldSpec::PerturbedHopf { epsilon: 0.3 }).unwrap(), &g).unwrap();
    let b = degree_from_eta2(&s, &make_field(&FieldSpec::HopfAxis { axis: [0.0, 1.0, 1.0] }).unwrap(), &g).unwrap();
    assert_eq!(a.rounded, 1);
    assert!(a.residual < 1e-3, "{a:?}");
    assert_eq!(a.rounded, b.rounded);
    assert!((a.value - b.value).abs() <= 2.0 * a.residual.max(b.residual) + 1e-12);
}

#[test]
fn gauss_kronecker_degree_is_one_on_the_catalog() {
    for spec in catalog_surfaces() {
        let s = make_surface(&spec).unwrap();
        let d = degree_gauss_kronecker(&s, &grid([16, 16, 32], &s)).unwrap();
        assert_eq!(d.rounded, 1, "{spec}");
        assert!(d.residual < 1e-3, "{spec}: {d:?}");
    }
}

#[test]
fn grid_sup_norms_agree_with_dense_sampling() {
    let s = make_surface(&SurfaceSpec::Ellipsoid { axes: [2.0, 1.0, 1.0, 1.0] }).unwrap();
    let g = grid([16, 16, 32], &s);
    let f = make_field(&FieldSpec::HopfAxis { axis: [0.0, 1.0, 1.0] }).unwrap();
    let (st, sf) = sup_norms(&s, &f, &g).unwrap();
    let (st_dense, sf_dense) = sampled_sup_norms(&s, &f, 10 * g.len(), 3).unwrap();
    assert!(sf >= st);
    assert!((st - st_dense).abs() <= 0.02 * st_dense, "{st} vs {st_dense}");
    assert!((sf - sf_dense).abs() <= 0.02 * sf_dense, "{sf} vs {sf_dense}");
}

#[test]
fn report_collects_consistent_values() {
    let s = make_surface(&SurfaceSpec::BumpySphere { amplitude: 0.1, mode: 1 }).unwrap();
    let g = grid([12, 12, 24], &s);
    let f = make_field(&FieldSpec::Hopf).unwrap();
    let r = compute_functionals(&s, &f, &g).unwrap();
    assert!(r.energy_paths_agree);
    assert_eq!(r.grid_resolution, [12, 12, 24]);
    assert_abs_diff_eq!(r.total_bending, total_bending(&s, &f, &g).unwrap(), epsilon = 1e-14);
    assert_eq!(r.degree_eta2.rounded, r.degree_gauss_kronecker.rounded);
    assert!(r.vol_field >= r.vol_m);
}
