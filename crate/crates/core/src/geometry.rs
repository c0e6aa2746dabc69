//! Parametrized hypersurfaces of R⁴, tensor-product grids and pointwise geometry.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{cross4, det3, dot4, inv3, mat3_mul, mat3_vec, norm4, scale4, Mat3, Vec4};
use crate::quadrature::{gauss_legendre, periodic_trapezoid};

/// Density below which a node is treated as a coordinate singularity.
pub const DEGENERATE_DENSITY: f64 = 1e-14;

/// Axis-aligned box in parameter space with per-axis periodicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParameterBox {
    pub lo: [f64; 3],
    pub hi: [f64; 3],
    pub periodic: [bool; 3],
}

impl ParameterBox {
    pub fn length(&self, axis: usize) -> f64 {
        self.hi[axis] - self.lo[axis]
    }

    pub fn contains(&self, u: [f64; 3]) -> bool {
        (0..3).all(|k| self.periodic[k] || (u[k] > self.lo[k] && u[k] < self.hi[k]))
    }
}

/// Index pairs of the six second derivatives, in storage order.
pub const SECOND_DERIVATIVE_PAIRS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

/// Position in the six-entry second-derivative array for the pair `(i, j)`.
pub fn pair_index(i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    match (i, j) {
        (0, 0) => 0,
        (0, 1) => 1,
        (0, 2) => 2,
        (1, 1) => 3,
        (1, 2) => 4,
        (2, 2) => 5,
        _ => unreachable!("parameter indices are 0..3"),
    }
}

/// An analytic immersion of a parameter box into R⁴.
pub trait Immersion: Send + Sync + fmt::Debug {
    fn parameter_box(&self) -> ParameterBox;

    fn position(&self, u: [f64; 3]) -> Vec4;

    /// `∂f/∂u_i` for `i = 0, 1, 2`.
    fn first_derivatives(&self, u: [f64; 3]) -> [Vec4; 3];

    /// `∂²f/∂u_i∂u_j` in [`SECOND_DERIVATIVE_PAIRS`] order.
    fn second_derivatives(&self, u: [f64; 3]) -> [Vec4; 6];

    /// Catalog-style descriptor such as `sphere:r=1`.
    fn descriptor(&self) -> String;
}

/// Choice of unit normal.
///
/// `Standard` is calibrated so that the catalog round sphere has the inward
/// normal and shape operator `+1/r · I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    #[default]
    Standard,
    Flipped,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Standard => 1.0,
            Orientation::Flipped => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Orientation::Standard => Orientation::Flipped,
            Orientation::Flipped => Orientation::Standard,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientation::Standard => f.write_str("standard"),
            Orientation::Flipped => f.write_str("flipped"),
        }
    }
}

impl std::str::FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "standard" => Ok(Orientation::Standard),
            "flipped" => Ok(Orientation::Flipped),
            other => Err(Error::InvalidArgument(format!("orientation must be `standard` or `flipped`, got `{other}`"))),
        }
    }
}

/// An oriented immersed hypersurface.
#[derive(Debug, Clone)]
pub struct Surface {
    immersion: Arc<dyn Immersion>,
    orientation: Orientation,
}

impl Surface {
    pub fn new(immersion: Arc<dyn Immersion>, orientation: Orientation) -> Self {
        Self { immersion, orientation }
    }

    pub fn immersion(&self) -> &dyn Immersion {
        self.immersion.as_ref()
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn with_orientation(&self, orientation: Orientation) -> Self {
        Self { immersion: Arc::clone(&self.immersion), orientation }
    }

    pub fn flipped(&self) -> Self {
        self.with_orientation(self.orientation.flip())
    }

    pub fn parameter_box(&self) -> ParameterBox {
        self.immersion.parameter_box()
    }

    pub fn position(&self, u: [f64; 3]) -> Vec4 {
        self.immersion.position(u)
    }

    pub fn descriptor(&self) -> String {
        self.immersion.descriptor()
    }

    /// Metric, normal and shape operator at `u`.
    pub fn geometry_at(&self, u: [f64; 3]) -> Result<PointGeometry> {
        pointwise_geometry(self, u)
    }
}

/// Tensor-product quadrature grid over a parameter box.
///
/// Periodic axes carry the trapezoid rule on equispaced nodes; the other axes
/// carry Gauss–Legendre nodes, which never touch the interval ends.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterGrid {
    pub resolution: [usize; 3],
    pub nodes: [Vec<f64>; 3],
    pub weights: [Vec<f64>; 3],
    pub periodic: [bool; 3],
    pub parameter_box: ParameterBox,
}

impl ParameterGrid {
    /// Grid matching `parameter_box`; every resolution must be at least 4.
    pub fn new(resolution: [usize; 3], parameter_box: ParameterBox) -> Result<Self> {
        if let Some(axis) = resolution.iter().position(|&n| n < 4) {
            return Err(Error::InvalidArgument(format!(
                "grid resolution along axis {axis} is {}, must be at least 4",
                resolution[axis]
            )));
        }
        let mut nodes: [Vec<f64>; 3] = Default::default();
        let mut weights: [Vec<f64>; 3] = Default::default();
        for axis in 0..3 {
            let (lo, hi) = (parameter_box.lo[axis], parameter_box.hi[axis]);
            let (x, w) = if parameter_box.periodic[axis] {
                periodic_trapezoid(resolution[axis], lo, hi)
            } else {
                gauss_legendre(resolution[axis], lo, hi)
            };
            nodes[axis] = x;
            weights[axis] = w;
        }
        Ok(Self { resolution, nodes, weights, periodic: parameter_box.periodic, parameter_box })
    }

    pub fn len(&self) -> usize {
        self.resolution.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Flat index, last axis fastest.
    pub fn flat_index(&self, idx: [usize; 3]) -> usize {
        (idx[0] * self.resolution[1] + idx[1]) * self.resolution[2] + idx[2]
    }

    pub fn multi_index(&self, flat: usize) -> [usize; 3] {
        let n2 = self.resolution[2];
        let n1 = self.resolution[1];
        [flat / (n1 * n2), (flat / n2) % n1, flat % n2]
    }

    pub fn point(&self, flat: usize) -> [f64; 3] {
        let [i, j, k] = self.multi_index(flat);
        [self.nodes[0][i], self.nodes[1][j], self.nodes[2][k]]
    }

    pub fn weight(&self, flat: usize) -> f64 {
        let [i, j, k] = self.multi_index(flat);
        self.weights[0][i] * self.weights[1][j] * self.weights[2][k]
    }

    pub fn points(&self) -> Vec<[f64; 3]> {
        (0..self.len()).map(|n| self.point(n)).collect()
    }

    pub fn weights_flat(&self) -> Vec<f64> {
        (0..self.len()).map(|n| self.weight(n)).collect()
    }
}

/// Builds the quadrature grid for `surface` at the given resolution.
pub fn build_grid(resolution: [usize; 3], surface: &Surface) -> Result<ParameterGrid> {
    ParameterGrid::new(resolution, surface.parameter_box())
}

/// Extrinsic and intrinsic geometry at a single parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointGeometry {
    pub u: [f64; 3],
    pub position: Vec4,
    /// Coordinate tangent vectors `∂_i f`.
    pub tangents: [Vec4; 3],
    pub metric: Mat3,
    pub inverse_metric: Mat3,
    /// `√det g`.
    pub density: f64,
    pub normal: Vec4,
    /// `h_ij = ⟨∂_i∂_j f, N⟩`.
    pub second_fundamental_form: Mat3,
    /// Weingarten operator in coordinate components, `S = g⁻¹ h` (column j is `S(∂_j)`).
    pub shape_operator: Mat3,
}

impl PointGeometry {
    /// Coordinate components of an ambient vector, after dropping its normal part.
    pub fn coordinates(&self, v: &Vec4) -> [f64; 3] {
        let pairings = [dot4(&self.tangents[0], v), dot4(&self.tangents[1], v), dot4(&self.tangents[2], v)];
        mat3_vec(&self.inverse_metric, &pairings)
    }

    pub fn ambient(&self, coords: &[f64; 3]) -> Vec4 {
        let mut out = [0.0; 4];
        for (c, t) in coords.iter().zip(&self.tangents) {
            for k in 0..4 {
                out[k] += c * t[k];
            }
        }
        out
    }

    pub fn tangential_part(&self, v: &Vec4) -> Vec4 {
        crate::linalg::reject4(v, &self.normal)
    }

    /// `S(v)` as an ambient vector.
    pub fn apply_shape(&self, v: &Vec4) -> Vec4 {
        let c = self.coordinates(v);
        self.ambient(&mat3_vec(&self.shape_operator, &c))
    }

    /// `⟨S(x), y⟩` for tangent vectors given in ambient form.
    pub fn second_fundamental(&self, x: &Vec4, y: &Vec4) -> f64 {
        let cx = self.coordinates(x);
        let cy = self.coordinates(y);
        let hx = mat3_vec(&self.second_fundamental_form, &cx);
        cy[0] * hx[0] + cy[1] * hx[1] + cy[2] * hx[2]
    }

    /// Gauss–Kronecker curvature `det S`.
    pub fn gauss_kronecker(&self) -> f64 {
        det3(&self.shape_operator)
    }

    /// Orthonormal tangent basis by Gram–Schmidt on the coordinate vectors.
    pub fn orthonormal_frame(&self) -> [Vec4; 3] {
        let mut frame = [[0.0; 4]; 3];
        for i in 0..3 {
            let mut w = self.tangents[i];
            for e in frame.iter().take(i) {
                w = crate::linalg::axpy4(&w, -dot4(&w, e), e);
            }
            frame[i] = scale4(1.0 / norm4(&w), &w);
        }
        frame
    }

    /// The shape operator in an orthonormal frame, a symmetric matrix similar to `S`.
    pub fn symmetric_shape(&self) -> Mat3 {
        let e = self.orthonormal_frame();
        let mut m = [[0.0; 3]; 3];
        for a in 0..3 {
            for b in a..3 {
                let v = self.second_fundamental(&e[a], &e[b]);
                m[a][b] = v;
                m[b][a] = v;
            }
        }
        m
    }

    /// Operator norm of `S`, the largest principal curvature in absolute value.
    pub fn shape_operator_norm(&self) -> f64 {
        let ev = crate::linalg::sym_eigenvalues3(&self.symmetric_shape());
        ev[0].abs().max(ev[2].abs())
    }

    /// Principal curvatures, ascending.
    pub fn principal_curvatures(&self) -> [f64; 3] {
        crate::linalg::sym_eigenvalues3(&self.symmetric_shape())
    }
}

/// Computes [`PointGeometry`] at `u` from the analytic derivatives of the immersion.
pub fn pointwise_geometry(surface: &Surface, u: [f64; 3]) -> Result<PointGeometry> {
    let immersion = surface.immersion();
    let position = immersion.position(u);
    let tangents = immersion.first_derivatives(u);
    let mut metric = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in i..3 {
            let g = dot4(&tangents[i], &tangents[j]);
            metric[i][j] = g;
            metric[j][i] = g;
        }
    }
    let det = det3(&metric);
    let density = det.max(0.0).sqrt();
    if !(density >= DEGENERATE_DENSITY) {
        return Err(Error::DegeneratePoint { u, density });
    }
    let inverse_metric = inv3(&metric).ok_or(Error::DegeneratePoint { u, density })?;

    let cross = cross4(&tangents[0], &tangents[1], &tangents[2]);
    let normal = scale4(surface.orientation().sign() / norm4(&cross), &cross);

    let second = immersion.second_derivatives(u);
    let mut h = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in i..3 {
            let v = dot4(&second[pair_index(i, j)], &normal);
            h[i][j] = v;
            h[j][i] = v;
        }
    }
    let shape_operator = mat3_mul(&inverse_metric, &h);
    Ok(PointGeometry {
        u,
        position,
        tangents,
        metric,
        inverse_metric,
        density,
        normal,
        second_fundamental_form: h,
        shape_operator,
    })
}

/// Geometry at every grid node, in flat-index order.
pub fn grid_geometry(surface: &Surface, grid: &ParameterGrid) -> Result<Vec<PointGeometry>> {
    (0..grid.len()).into_par_iter().map(|n| pointwise_geometry(surface, grid.point(n))).collect()
}

/// `Σ weight · sample · density` over the grid in flat-index order.
pub fn integrate(grid: &ParameterGrid, samples: &[f64], density: &[f64]) -> Result<f64> {
    if samples.len() != grid.len() || density.len() != grid.len() {
        return Err(Error::InvalidArgument(format!(
            "integrand has {} samples and {} densities, grid has {} nodes",
            samples.len(),
            density.len(),
            grid.len()
        )));
    }
    Ok(ordered_sum((0..grid.len()).map(|n| grid.weight(n) * samples[n] * density[n])))
}

/// Sequential sum in iteration order; the reduction order never depends on threads.
pub(crate) fn ordered_sum(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(0.0, |acc, v| acc + v)
}
