//! Scalar functionals of a unit field on a hypersurface.
//!
//! Every functional is a quadrature over grid nodes. Node evaluation runs in
//! parallel; sums are always taken sequentially in flat-index order, so results
//! do not depend on the number of worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fields::{adapted_frame, FrameComponents, UnitField};
use crate::geometry::{ordered_sum, pointwise_geometry, ParameterGrid, Surface};
use crate::linalg::det3;
use crate::VOL_S3;

/// Relative agreement required between the two energy evaluations.
pub const ENERGY_PATH_TOLERANCE: f64 = 1e-10;

/// Distance from the nearest integer above which a degree estimate is unresolved.
pub const DEGREE_RESOLUTION_THRESHOLD: f64 = 0.1;

/// Upper-left block of the η₂ matrix, `m_ij = ⟨∇_{e_j} v, e_i⟩`.
///
/// The block is indexed `[target][direction]`, the transpose of `a_ij`. With
/// this reading the η₂ matrix is the transposed Jacobian of `v : M → S³` in the
/// bases `(e₁, e₂, v)` and `(e₁, e₂, N)`, so `∫η₂ = deg(ν)·vol(S³)` for every
/// unit field. Placing `a_ij` itself in the block agrees on the round sphere
/// (where `h₃₁ = h₃₂ = 0`) but not on general hypersurfaces.
pub fn eta2_block(c: &FrameComponents) -> [[f64; 2]; 2] {
    [[c.a[0][0], c.a[1][0]], [c.a[0][1], c.a[1][1]]]
}

/// The η₂ matrix `[[m₁₁, m₁₂, v₁], [m₂₁, m₂₂, v₂], [h₃₁, h₃₂, h₃₃]]`, see [`eta2_block`].
pub fn eta2_matrix(c: &FrameComponents) -> [[f64; 3]; 3] {
    let m = eta2_block(c);
    [[m[0][0], m[0][1], c.vvec[0]], [m[1][0], m[1][1], c.vvec[1]], c.h3]
}

/// The three 2×2 minors `(σ₁, σ₂, σ₃)` of the upper two rows of the η₂ matrix.
pub fn sigma_minors(c: &FrameComponents) -> (f64, f64, f64) {
    let m = eta2_block(c);
    let v = &c.vvec;
    (
        m[0][1] * v[1] - v[0] * m[1][1],
        m[0][0] * v[1] - v[0] * m[1][0],
        m[0][0] * m[1][1] - m[0][1] * m[1][0],
    )
}

/// Cofactor expansion of η₂ along the `h₃` row: `h₃₁σ₁ − h₃₂σ₂ + h₃₃σ₃`.
pub fn eta2_cofactor(c: &FrameComponents) -> f64 {
    let (s1, s2, s3) = sigma_minors(c);
    c.h3[0] * s1 - c.h3[1] * s2 + c.h3[2] * s3
}

/// η₂, the determinant of [`eta2_matrix`].
pub fn eta2(c: &FrameComponents) -> f64 {
    let m = eta2_matrix(c);
    let det = det3(&m);
    debug_assert!({
        let scale = m.iter().flatten().fold(1.0f64, |s, x| s.max(x.abs())).powi(3);
        (det - eta2_cofactor(c)).abs() <= 1e-12 * scale
    });
    det
}

/// Gluck–Ziller volume density `√det(I + D Dᵗ)` of the frame matrix `D` of `∇v`.
pub fn volume_density(c: &FrameComponents) -> f64 {
    let d = c.derivative_matrix();
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = (0..3).map(|k| d[i][k] * d[j][k]).sum::<f64>() + if i == j { 1.0 } else { 0.0 };
        }
    }
    det3(&m).max(0.0).sqrt()
}

/// Everything the functionals need from one grid node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeSample {
    pub weight: f64,
    pub density: f64,
    pub components: FrameComponents,
    pub eta2: f64,
    pub gauss_kronecker: f64,
    pub shape_norm: f64,
    pub field_shape_norm: f64,
    pub volume_density: f64,
}

pub fn sample_node(surface: &Surface, field: &UnitField, u: [f64; 3]) -> Result<NodeSample> {
    let geo = pointwise_geometry(surface, u)?;
    let jet = field.jet(surface, &geo)?;
    let frame = adapted_frame(&geo, &jet.value);
    let components = FrameComponents::in_frame(&geo, &jet, &frame);
    Ok(NodeSample {
        weight: 0.0,
        density: geo.density,
        eta2: eta2(&components),
        gauss_kronecker: geo.gauss_kronecker(),
        shape_norm: geo.shape_operator_norm(),
        field_shape_norm: components.shape_of_field_norm(),
        volume_density: volume_density(&components),
        components,
    })
}

/// Samples at every grid node, in flat-index order.
pub fn sample_grid(surface: &Surface, field: &UnitField, grid: &ParameterGrid) -> Result<Vec<NodeSample>> {
    (0..grid.len())
        .into_par_iter()
        .map(|n| {
            let mut s = sample_node(surface, field, grid.point(n))?;
            s.weight = grid.weight(n);
            Ok(s)
        })
        .collect()
}

fn quadrature(samples: &[NodeSample], f: impl Fn(&NodeSample) -> f64) -> f64 {
    ordered_sum(samples.iter().map(|s| s.weight * s.density * f(s)))
}

fn grid_max(samples: &[NodeSample], f: impl Fn(&NodeSample) -> f64) -> f64 {
    samples.iter().map(f).fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeStatus {
    Resolved,
    /// Quadrature value is too far from an integer to trust the rounding.
    Unresolved,
}

/// A quadrature estimate of an integer-valued degree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegreeEstimate {
    pub value: f64,
    pub rounded: i64,
    pub residual: f64,
    pub status: DegreeStatus,
}

impl DegreeEstimate {
    pub fn from_value(value: f64) -> Self {
        let rounded = value.round();
        let residual = (value - rounded).abs();
        let status = if residual > DEGREE_RESOLUTION_THRESHOLD { DegreeStatus::Unresolved } else { DegreeStatus::Resolved };
        Self { value, rounded: rounded as i64, residual, status }
    }
}

/// All functionals of one (surface, field, grid) triple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalReport {
    pub surface: String,
    pub orientation: String,
    pub field: String,
    pub grid_resolution: [usize; 3],
    pub total_bending: f64,
    /// `½∫‖∇v‖² + (3/2) vol(M)`
    pub energy: f64,
    /// `B · vol(S³) + (3/2) vol(M)`
    pub energy_via_bending: f64,
    pub energy_paths_agree: bool,
    pub vol_m: f64,
    pub vol_field: f64,
    /// Grid maximum of `‖S(v)‖`.
    pub s_tilde: f64,
    /// Grid maximum of the operator norm of `S`.
    pub s_full: f64,
    /// Both sup-norms are maxima over grid nodes, i.e. estimates from below.
    pub sup_norms_sampled: bool,
    pub integral_eta2: f64,
    pub degree_eta2: DegreeEstimate,
    pub degree_gauss_kronecker: DegreeEstimate,
}

/// Computes every functional in a single pass over the grid.
pub fn compute_functionals(surface: &Surface, field: &UnitField, grid: &ParameterGrid) -> Result<FunctionalReport> {
    let samples = sample_grid(surface, field, grid)?;
    Ok(report_from_samples(surface, field, grid, &samples))
}

pub fn report_from_samples(
    surface: &Surface,
    field: &UnitField,
    grid: &ParameterGrid,
    samples: &[NodeSample],
) -> FunctionalReport {
    let bending_integral = quadrature(samples, |s| s.components.bending_density);
    let vol_m = quadrature(samples, |_| 1.0);
    let total_bending = bending_integral / (2.0 * VOL_S3);
    let energy = 0.5 * bending_integral + 1.5 * vol_m;
    let energy_via_bending = total_bending * VOL_S3 + 1.5 * vol_m;
    let integral_eta2 = quadrature(samples, |s| s.eta2);
    FunctionalReport {
        surface: surface.descriptor(),
        orientation: surface.orientation().to_string(),
        field: field.descriptor(),
        grid_resolution: grid.resolution,
        total_bending,
        energy,
        energy_via_bending,
        energy_paths_agree: (energy - energy_via_bending).abs() <= ENERGY_PATH_TOLERANCE * energy.abs(),
        vol_m,
        vol_field: quadrature(samples, |s| s.volume_density),
        s_tilde: grid_max(samples, |s| s.field_shape_norm),
        s_full: grid_max(samples, |s| s.shape_norm),
        sup_norms_sampled: true,
        integral_eta2,
        degree_eta2: DegreeEstimate::from_value(integral_eta2 / VOL_S3),
        degree_gauss_kronecker: DegreeEstimate::from_value(quadrature(samples, |s| s.gauss_kronecker) / VOL_S3),
    }
}

/// `B(v) = (1 / (2 vol S³)) ∫ ‖∇v‖²`
pub fn total_bending(surface: &Surface, field: &UnitField, grid: &ParameterGrid) -> Result<f64> {
    let samples = sample_grid(surface, field, grid)?;
    Ok(quadrature(&samples, |s| s.components.bending_density) / (2.0 * VOL_S3))
}

/// Energy by its definition and by the total-bending identity, in that order.
pub fn energy(surface: &Surface, field: &UnitField, grid: &ParameterGrid) -> Result<(f64, f64)> {
    let report = compute_functionals(surface, field, grid)?;
    Ok((report.energy, report.energy_via_bending))
}

/// `∫η₂ / vol(S³)` with its rounding.
pub fn degree_from_eta2(surface: &Surface, field: &UnitField, grid: &ParameterGrid) -> Result<DegreeEstimate> {
    let samples = sample_grid(surface, field, grid)?;
    Ok(DegreeEstimate::from_value(quadrature(&samples, |s| s.eta2) / VOL_S3))
}

/// `∫ det S / vol(S³)`, a field-independent degree oracle.
pub fn degree_gauss_kronecker(surface: &Surface, grid: &ParameterGrid) -> Result<DegreeEstimate> {
    let values: Vec<(f64, f64)> = (0..grid.len())
        .into_par_iter()
        .map(|n| pointwise_geometry(surface, grid.point(n)).map(|g| (grid.weight(n) * g.density, g.gauss_kronecker())))
        .collect::<Result<_>>()?;
    Ok(DegreeEstimate::from_value(ordered_sum(values.iter().map(|(w, k)| w * k)) / VOL_S3))
}

/// `(S̃, 𝒮)` as grid maxima.
pub fn sup_norms(surface: &Surface, field: &UnitField, grid: &ParameterGrid) -> Result<(f64, f64)> {
    let samples = sample_grid(surface, field, grid)?;
    Ok((grid_max(&samples, |s| s.field_shape_norm), grid_max(&samples, |s| s.shape_norm)))
}

/// `(S̃, 𝒮)` as maxima over `count` uniformly random interior parameter points.
pub fn sampled_sup_norms(surface: &Surface, field: &UnitField, count: usize, seed: u64) -> Result<(f64, f64)> {
    let bx = surface.parameter_box();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<[f64; 3]> = (0..count)
        .map(|_| {
            std::array::from_fn(|k| {
                let margin = if bx.periodic[k] { 0.0 } else { 1e-6 * bx.length(k) };
                rng.random_range(bx.lo[k] + margin..bx.hi[k] - margin)
            })
        })
        .collect();
    let samples: Vec<NodeSample> =
        points.into_par_iter().map(|u| sample_node(surface, field, u)).collect::<Result<_>>()?;
    Ok((grid_max(&samples, |s| s.field_shape_norm), grid_max(&samples, |s| s.shape_norm)))
}

/// `(vol M, vol v)`
pub fn volumes(surface: &Surface, field: &UnitField, grid: &ParameterGrid) -> Result<(f64, f64)> {
    let samples = sample_grid(surface, field, grid)?;
    Ok((quadrature(&samples, |_| 1.0), quadrature(&samples, |s| s.volume_density)))
}
