//! Minimization of the total bending over unit fields on the round S³.
//!
//! A field is written as `v = a·X₁ + b·X₂ + c·X₃` in the quaternionic frame
//! `X₁ = i·x`, `X₂ = j·x`, `X₃ = k·x`, with `(a, b, c)` a unit 3-vector per grid
//! node. Since `∇_{X_a} X_b = −ε_abk X_k` on the unit sphere,
//!
//! ```text
//! ‖∇v‖² = Σ_a | X_a(c) + c × e_a |²,
//! ```
//!
//! where `X_a(c)` is the derivative of the coefficient triple along `X_a`.
//! Derivatives of node values use barycentric (polynomial) differentiation on
//! the Gauss–Legendre axes and the trigonometric interpolant on the periodic
//! axis. The energy is integrated on a twice-refined periodic axis, so every
//! Fourier mode of the node data, the Nyquist mode included, carries its
//! derivative energy.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ordered_sum, ParameterGrid};
use crate::linalg::{dot4, quat_mul};
use crate::quadrature::barycentric_differentiation;
use crate::surfaces::{hyperspherical_box, smooth_coefficient_polynomials, unit_chart, QUAT_I, QUAT_J, QUAT_K};

/// Unit coefficient triples `(a, b, c)` at every grid node, flat-index order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameCoefficients {
    pub resolution: [usize; 3],
    pub values: Vec<[f64; 3]>,
}

fn normalize3(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

impl FrameCoefficients {
    /// Node-wise normalized samples of `raw` at the grid positions on S³.
    pub fn from_raw(grid: &ParameterGrid, raw: impl Fn(&[f64; 4]) -> [f64; 3]) -> Result<Self> {
        let mut values = Vec::with_capacity(grid.len());
        for n in 0..grid.len() {
            let x = unit_chart(grid.point(n)).value;
            let v = raw(&x);
            let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            if !(norm > 1e-12) {
                return Err(Error::InvalidArgument(format!("coefficient triple vanishes at node {n}")));
            }
            values.push(normalize3(v));
        }
        Ok(Self { resolution: grid.resolution, values })
    }

    /// Constant coefficients; `(1, 0, 0)` is the Hopf field `i·x`.
    pub fn constant(grid: &ParameterGrid, abc: [f64; 3]) -> Result<Self> {
        Self::from_raw(grid, |_| abc)
    }

    /// Largest deviation of `|(a, b, c)|` from 1.
    pub fn max_unit_deviation(&self) -> f64 {
        self.values
            .iter()
            .map(|v| ((v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// `var(a) + var(b) + var(c)` over nodes (population variance).
    pub fn variance(&self) -> f64 {
        let n = self.values.len() as f64;
        (0..3)
            .map(|k| {
                let mean = self.values.iter().map(|v| v[k]).sum::<f64>() / n;
                self.values.iter().map(|v| (v[k] - mean).powi(2)).sum::<f64>() / n
            })
            .sum()
    }

    fn renormalize(&mut self) {
        for v in &mut self.values {
            *v = normalize3(*v);
        }
    }
}

/// Random smooth initial coefficients: the `random_smooth` catalog polynomials,
/// normalized per node.
pub fn init_coefficients(seed: u64, smoothness: u32, grid: &ParameterGrid) -> Result<FrameCoefficients> {
    if smoothness == 0 {
        return Err(Error::InvalidArgument("smoothness must be positive".into()));
    }
    let (_, polys) = smooth_coefficient_polynomials(seed, smoothness)?;
    FrameCoefficients::from_raw(grid, |x| [polys[0].eval(x), polys[1].eval(x), polys[2].eval(x)])
}

/// Real Fourier basis on `n` equispaced nodes, orthonormal at the nodes.
struct FourierBasis {
    n: usize,
    /// `n × n` row-major: entry `(j, k)` is basis function `k` at node `j`.
    nodal: Vec<f64>,
    /// Frequency of each basis function.
    frequency: Vec<usize>,
    /// Fine-grid integral of the squared interpolant, relative to the nodal sum.
    mass: Vec<f64>,
}

impl FourierBasis {
    fn new(n: usize) -> Self {
        let mut frequency = vec![0];
        for m in 1..=(n - 1) / 2 {
            frequency.push(m);
            frequency.push(m);
        }
        if n % 2 == 0 {
            frequency.push(n / 2);
        }
        let mut nodal = vec![0.0; n * n];
        let mut mass = vec![2.0 * PI / n as f64; n];
        for j in 0..n {
            let phi = 2.0 * PI * j as f64 / n as f64;
            for k in 0..n {
                nodal[j * n + k] = Self::eval(n, k, phi).0;
            }
        }
        if n % 2 == 0 {
            // cos(nφ/2) integrates to half its nodal mass
            mass[n - 1] = PI / n as f64;
        }
        Self { n, nodal, frequency, mass }
    }

    /// Basis function `k` and its derivative at `phi`.
    fn eval(n: usize, k: usize, phi: f64) -> (f64, f64) {
        let nf = n as f64;
        if k == 0 {
            return (1.0 / nf.sqrt(), 0.0);
        }
        if n % 2 == 0 && k == n - 1 {
            let m = nf / 2.0;
            return ((m * phi).cos() / nf.sqrt(), -m * (m * phi).sin() / nf.sqrt());
        }
        let m = k.div_ceil(2) as f64;
        let s = (2.0 / nf).sqrt();
        if k % 2 == 1 {
            (s * (m * phi).cos(), -s * m * (m * phi).sin())
        } else {
            (s * (m * phi).sin(), s * m * (m * phi).cos())
        }
    }

    /// Interpolation and derivative matrices from the nodes to `fine` equispaced points.
    fn resample(&self, fine: usize) -> (Vec<f64>, Vec<f64>) {
        let n = self.n;
        let mut interp = vec![0.0; fine * n];
        let mut deriv = vec![0.0; fine * n];
        for f in 0..fine {
            let phi = 2.0 * PI * f as f64 / fine as f64;
            let basis: Vec<(f64, f64)> = (0..n).map(|k| Self::eval(n, k, phi)).collect();
            for j in 0..n {
                // interpolant = Σ_k b_k(φ) Σ_j F[j,k] c_j
                let (mut v, mut d) = (0.0, 0.0);
                for (k, (b, db)) in basis.iter().enumerate() {
                    v += b * self.nodal[j * n + k];
                    d += db * self.nodal[j * n + k];
                }
                interp[f * n + j] = v;
                deriv[f * n + j] = d;
            }
        }
        (interp, deriv)
    }
}

/// Dense 3-D array of triples with shape `[n0, n1, n2]`, last axis fastest.
#[derive(Debug, Clone)]
struct Field3 {
    shape: [usize; 3],
    data: Vec<[f64; 3]>,
}

impl Field3 {
    fn zeros(shape: [usize; 3]) -> Self {
        Self { shape, data: vec![[0.0; 3]; shape[0] * shape[1] * shape[2]] }
    }

    /// Applies the row-major `rows × shape[axis]` matrix along `axis`.
    fn apply(&self, matrix: &[f64], rows: usize, axis: usize) -> Self {
        let cols = self.shape[axis];
        debug_assert_eq!(matrix.len(), rows * cols);
        let mut shape = self.shape;
        shape[axis] = rows;
        let mut out = Self::zeros(shape);
        let in_strides = [self.shape[1] * self.shape[2], self.shape[2], 1];
        let out_strides = [shape[1] * shape[2], shape[2], 1];
        let others: Vec<usize> = (0..3).filter(|&a| a != axis).collect();
        for i in 0..shape[others[0]] {
            for j in 0..shape[others[1]] {
                let base_in = i * in_strides[others[0]] + j * in_strides[others[1]];
                let base_out = i * out_strides[others[0]] + j * out_strides[others[1]];
                for r in 0..rows {
                    let mut acc = [0.0; 3];
                    for c in 0..cols {
                        let m = matrix[r * cols + c];
                        if m != 0.0 {
                            let v = &self.data[base_in + c * in_strides[axis]];
                            acc[0] += m * v[0];
                            acc[1] += m * v[1];
                            acc[2] += m * v[2];
                        }
                    }
                    out.data[base_out + r * out_strides[axis]] = acc;
                }
            }
        }
        out
    }

    fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            a[0] += b[0];
            a[1] += b[1];
            a[2] += b[2];
        }
    }
}

fn transpose(matrix: &[f64], rows: usize, cols: usize) -> Vec<f64> {
    let mut t = vec![0.0; rows * cols];
    for r in 0..rows {
        for c in 0..cols {
            t[c * rows + r] = matrix[r * cols + c];
        }
    }
    t
}

fn cross3(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

const UNIT: [[f64; 3]; 3] = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

/// Descent metric for the projected gradient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preconditioner {
    /// Plain Euclidean gradient in node values.
    Identity,
    /// Gradient in the metric `(L + 2M)/(2π²)`, with `L` the discrete Dirichlet
    /// form and `M` the mass form of the coefficient interpolant.
    Sobolev,
}

/// Discretized total bending on a hyperspherical grid of the unit S³.
pub struct DiscreteBending {
    coarse: [usize; 3],
    fine_phi: usize,
    d_psi: Vec<f64>,
    d_theta: Vec<f64>,
    interp: Vec<f64>,
    interp_t: Vec<f64>,
    d_phi: Vec<f64>,
    d_phi_t: Vec<f64>,
    d_psi_t: Vec<f64>,
    d_theta_t: Vec<f64>,
    /// Quadrature weight × density / (4π²) per fine point.
    omega: Vec<f64>,
    /// Coordinate components of `X_a` per fine point: `frame[p][a][i]`.
    frame: Vec<[[f64; 3]; 3]>,
    basis: FourierBasis,
    blocks: Vec<nalgebra::Cholesky<f64, nalgebra::Dyn>>,
}

impl std::fmt::Debug for DiscreteBending {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DiscreteBending").field("coarse", &self.coarse).field("fine_phi", &self.fine_phi).finish()
    }
}

impl DiscreteBending {
    pub fn new(grid: &ParameterGrid) -> Result<Self> {
        if grid.parameter_box != hyperspherical_box() {
            return Err(Error::InvalidArgument("bending minimization needs a hyperspherical grid on S³".into()));
        }
        let [n_psi, n_theta, n_phi] = grid.resolution;
        let fine_phi = 2 * n_phi;
        let basis = FourierBasis::new(n_phi);
        let (interp, d_phi) = basis.resample(fine_phi);
        let d_psi = barycentric_differentiation(&grid.nodes[0]);
        let d_theta = barycentric_differentiation(&grid.nodes[1]);

        let fine_count = n_psi * n_theta * fine_phi;
        let mut omega = Vec::with_capacity(fine_count);
        let mut frame = Vec::with_capacity(fine_count);
        let w_phi = 2.0 * PI / fine_phi as f64;
        for p in 0..n_psi {
            for t in 0..n_theta {
                for f in 0..fine_phi {
                    let u = [grid.nodes[0][p], grid.nodes[1][t], 2.0 * PI * f as f64 / fine_phi as f64];
                    let jet = unit_chart(u);
                    let density = u[0].sin().powi(2) * u[1].sin();
                    omega.push(grid.weights[0][p] * grid.weights[1][t] * w_phi * density / (4.0 * PI * PI));
                    let mut comps = [[0.0; 3]; 3];
                    for (a, q) in [QUAT_I, QUAT_J, QUAT_K].iter().enumerate() {
                        let xa = quat_mul(q, &jet.value);
                        for i in 0..3 {
                            comps[a][i] = dot4(&jet.first[i], &xa) / dot4(&jet.first[i], &jet.first[i]);
                        }
                    }
                    frame.push(comps);
                }
            }
        }

        let blocks = Self::factor_blocks(grid, &basis, &d_psi, &d_theta)?;
        Ok(Self {
            coarse: grid.resolution,
            fine_phi,
            d_psi_t: transpose(&d_psi, n_psi, n_psi),
            d_theta_t: transpose(&d_theta, n_theta, n_theta),
            interp_t: transpose(&interp, fine_phi, n_phi),
            d_phi_t: transpose(&d_phi, fine_phi, n_phi),
            d_psi,
            d_theta,
            interp,
            d_phi,
            omega,
            frame,
            basis,
            blocks,
        })
    }

    /// One Cholesky factor per Fourier frequency of the periodic axis.
    ///
    /// The metric tensor is diagonal and independent of φ on this chart, so the
    /// Sobolev form decouples across the real Fourier modes.
    fn factor_blocks(
        grid: &ParameterGrid,
        basis: &FourierBasis,
        d_psi: &[f64],
        d_theta: &[f64],
    ) -> Result<Vec<nalgebra::Cholesky<f64, nalgebra::Dyn>>> {
        let [n_psi, n_theta, n_phi] = grid.resolution;
        let m = n_psi * n_theta;
        let idx = |p: usize, t: usize| p * n_theta + t;
        let mut lambda = vec![0.0; m];
        let mut lambda_theta = vec![0.0; m];
        let mut lambda_phi = vec![0.0; m];
        for p in 0..n_psi {
            for t in 0..n_theta {
                let (sp, st) = (grid.nodes[0][p].sin(), grid.nodes[1][t].sin());
                let l = grid.weights[0][p] * grid.weights[1][t] * sp * sp * st;
                lambda[idx(p, t)] = l;
                lambda_theta[idx(p, t)] = l / (sp * sp);
                lambda_phi[idx(p, t)] = l / (sp * sp * st * st);
            }
        }
        let mut stiffness = DMatrix::<f64>::zeros(m, m);
        // Dψᵀ Λ Dψ acts along ψ at fixed θ
        for t in 0..n_theta {
            for p1 in 0..n_psi {
                for p2 in 0..n_psi {
                    let s: f64 = (0..n_psi)
                        .map(|r| d_psi[r * n_psi + p1] * lambda[idx(r, t)] * d_psi[r * n_psi + p2])
                        .sum();
                    stiffness[(idx(p1, t), idx(p2, t))] += s;
                }
            }
        }
        for p in 0..n_psi {
            for t1 in 0..n_theta {
                for t2 in 0..n_theta {
                    let s: f64 = (0..n_theta)
                        .map(|r| d_theta[r * n_theta + t1] * lambda_theta[idx(p, r)] * d_theta[r * n_theta + t2])
                        .sum();
                    stiffness[(idx(p, t1), idx(p, t2))] += s;
                }
            }
        }
        let scale = 2.0 / (4.0 * PI * PI);
        let max_frequency = n_phi / 2;
        let mut blocks = Vec::with_capacity(max_frequency + 1);
        for freq in 0..=max_frequency {
            // any basis column with this frequency carries the same mass factor
            let Some(k) = basis.frequency.iter().position(|&f| f == freq) else { continue };
            let mass = basis.mass[k];
            let mut block = stiffness.clone() * mass;
            let k2 = (freq * freq) as f64;
            for i in 0..m {
                block[(i, i)] += mass * (2.0 * lambda[i] + k2 * lambda_phi[i]);
            }
            block *= scale;
            let chol = nalgebra::Cholesky::new(block)
                .ok_or_else(|| Error::InvalidArgument("preconditioner block is not positive definite".into()))?;
            blocks.push(chol);
        }
        Ok(blocks)
    }

    fn check(&self, coeffs: &FrameCoefficients) -> Result<()> {
        if coeffs.resolution != self.coarse {
            return Err(Error::InvalidArgument(format!(
                "coefficients have resolution {:?}, operator expects {:?}",
                coeffs.resolution, self.coarse
            )));
        }
        Ok(())
    }

    /// Values and parameter derivatives of the interpolant at the fine points.
    fn fine_fields(&self, coeffs: &FrameCoefficients) -> [Field3; 4] {
        let [n_psi, n_theta, n_phi] = self.coarse;
        let c = Field3 { shape: self.coarse, data: coeffs.values.clone() };
        let values = c.apply(&self.interp, self.fine_phi, 2);
        let d_psi = c.apply(&self.d_psi, n_psi, 0).apply(&self.interp, self.fine_phi, 2);
        let d_theta = c.apply(&self.d_theta, n_theta, 1).apply(&self.interp, self.fine_phi, 2);
        let d_phi = c.apply(&self.d_phi, self.fine_phi, 2);
        debug_assert_eq!(values.shape, [n_psi, n_theta, 2 * n_phi]);
        [values, d_psi, d_theta, d_phi]
    }

    fn residual(&self, fields: &[Field3; 4], point: usize, a: usize) -> [f64; 3] {
        let w = &self.frame[point][a];
        let c = &fields[0].data[point];
        let cross = cross3(c, &UNIT[a]);
        std::array::from_fn(|k| {
            w[0] * fields[1].data[point][k] + w[1] * fields[2].data[point][k] + w[2] * fields[3].data[point][k] + cross[k]
        })
    }

    /// Discrete total bending of the field with these coefficients.
    pub fn value(&self, coeffs: &FrameCoefficients) -> Result<f64> {
        self.check(coeffs)?;
        let fields = self.fine_fields(coeffs);
        let terms: Vec<f64> = (0..self.omega.len())
            .into_par_iter()
            .map(|point| {
                let sq: f64 = (0..3)
                    .map(|a| {
                        let r = self.residual(&fields, point, a);
                        r[0] * r[0] + r[1] * r[1] + r[2] * r[2]
                    })
                    .sum();
                self.omega[point] * sq
            })
            .collect();
        Ok(ordered_sum(terms.into_iter()))
    }

    /// Exact gradient of [`DiscreteBending::value`] with respect to the node values.
    pub fn raw_gradient(&self, coeffs: &FrameCoefficients) -> Result<Vec<[f64; 3]>> {
        self.check(coeffs)?;
        let fields = self.fine_fields(coeffs);
        let shape = fields[0].shape;
        let per_point: Vec<[[f64; 3]; 4]> = (0..self.omega.len())
            .into_par_iter()
            .map(|point| {
                let mut out = [[0.0; 3]; 4];
                for a in 0..3 {
                    let r = self.residual(&fields, point, a);
                    let w = &self.frame[point][a];
                    let scale = 2.0 * self.omega[point];
                    let g = [scale * r[0], scale * r[1], scale * r[2]];
                    // c ↦ c × e_a has adjoint r ↦ e_a × r
                    let back = cross3(&UNIT[a], &g);
                    for k in 0..3 {
                        out[0][k] += back[k];
                        out[1][k] += w[0] * g[k];
                        out[2][k] += w[1] * g[k];
                        out[3][k] += w[2] * g[k];
                    }
                }
                out
            })
            .collect();
        let adj: [Field3; 4] =
            std::array::from_fn(|slot| Field3 { shape, data: per_point.iter().map(|p| p[slot]).collect() });
        let [n_psi, n_theta, n_phi] = self.coarse;
        let mut grad = adj[0].apply(&self.interp_t, n_phi, 2);
        grad.add_assign(&adj[1].apply(&self.interp_t, n_phi, 2).apply(&self.d_psi_t, n_psi, 0));
        grad.add_assign(&adj[2].apply(&self.interp_t, n_phi, 2).apply(&self.d_theta_t, n_theta, 1));
        grad.add_assign(&adj[3].apply(&self.d_phi_t, n_phi, 2));
        Ok(grad.data)
    }

    /// Gradient projected node-wise onto the tangent space of the unit constraint.
    pub fn gradient(&self, coeffs: &FrameCoefficients) -> Result<Vec<[f64; 3]>> {
        let mut g = self.raw_gradient(coeffs)?;
        project_tangent(&coeffs.values, &mut g);
        Ok(g)
    }

    /// Solves the Sobolev system block by block in the Fourier basis of the periodic axis.
    pub fn precondition(&self, rhs: &[[f64; 3]]) -> Vec<[f64; 3]> {
        let [n_psi, n_theta, n_phi] = self.coarse;
        let m = n_psi * n_theta;
        let nodal = &self.basis.nodal;
        let mut out = vec![[0.0; 3]; rhs.len()];
        for k in 0..n_phi {
            let block = &self.blocks[self.basis.frequency[k]];
            for comp in 0..3 {
                // project the right-hand side on basis column k
                let mut col = DVector::<f64>::zeros(m);
                for pt in 0..m {
                    col[pt] = (0..n_phi).map(|j| nodal[j * n_phi + k] * rhs[pt * n_phi + j][comp]).sum();
                }
                let sol = block.solve(&col);
                for pt in 0..m {
                    for j in 0..n_phi {
                        out[pt * n_phi + j][comp] += nodal[j * n_phi + k] * sol[pt];
                    }
                }
            }
        }
        out
    }
}

fn project_tangent(values: &[[f64; 3]], g: &mut [[f64; 3]]) {
    for (gi, c) in g.iter_mut().zip(values) {
        let along = gi[0] * c[0] + gi[1] * c[1] + gi[2] * c[2];
        for k in 0..3 {
            gi[k] -= along * c[k];
        }
    }
}

fn norm(g: &[[f64; 3]]) -> f64 {
    g.iter().map(|v| v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sum::<f64>().sqrt()
}

fn dot(a: &[[f64; 3]], b: &[[f64; 3]]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x[0] * y[0] + x[1] * y[1] + x[2] * y[2]).sum()
}

/// Discrete total bending, building the operator for `grid`.
pub fn discrete_bending(coeffs: &FrameCoefficients, grid: &ParameterGrid) -> Result<f64> {
    DiscreteBending::new(grid)?.value(coeffs)
}

/// Projected gradient of the discrete total bending.
pub fn bending_gradient(coeffs: &FrameCoefficients, grid: &ParameterGrid) -> Result<Vec<[f64; 3]>> {
    DiscreteBending::new(grid)?.gradient(coeffs)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinimizeOptions {
    pub max_iters: usize,
    pub tol_grad: f64,
    pub armijo: f64,
    pub backtrack: f64,
    pub initial_step: f64,
    pub max_backtracks: usize,
    pub preconditioner: Preconditioner,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self {
            max_iters: 2000,
            tol_grad: 1e-6,
            armijo: 1e-4,
            backtrack: 0.5,
            initial_step: 1.0,
            max_backtracks: 60,
            preconditioner: Preconditioner::Sobolev,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OptimizationStatus {
    Converged,
    MaxIterations,
    /// The line search found no sufficient decrease.
    Stagnated,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub iteration: usize,
    pub bending: f64,
    pub gradient_norm: f64,
    /// Accepted step; zero for the initial record.
    pub step_size: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub coefficients: FrameCoefficients,
    pub history: Vec<IterationRecord>,
    pub final_bending: f64,
    pub final_gradient_norm: f64,
    pub coefficient_variance: f64,
    pub iterations: usize,
    pub seed: Option<u64>,
    pub status: OptimizationStatus,
}

/// Projected gradient descent with Armijo backtracking from `start`.
pub fn minimize_from(
    start: FrameCoefficients,
    objective: &DiscreteBending,
    options: &MinimizeOptions,
) -> Result<OptimizationResult> {
    if options.max_iters < 1 {
        return Err(Error::InvalidArgument("max_iters must be at least 1".into()));
    }
    let mut coeffs = start;
    coeffs.renormalize();
    let mut value = objective.value(&coeffs)?;
    let mut grad = objective.gradient(&coeffs)?;
    let mut grad_norm = norm(&grad);
    let mut history = vec![IterationRecord { iteration: 0, bending: value, gradient_norm: grad_norm, step_size: 0.0 }];
    let mut status = OptimizationStatus::MaxIterations;
    let mut iterations = 0;

    while iterations < options.max_iters {
        if grad_norm < options.tol_grad {
            status = OptimizationStatus::Converged;
            break;
        }
        let mut direction = match options.preconditioner {
            Preconditioner::Identity => grad.clone(),
            Preconditioner::Sobolev => objective.precondition(&grad),
        };
        project_tangent(&coeffs.values, &mut direction);
        let slope = dot(&grad, &direction);

        let mut step = options.initial_step;
        let mut accepted = None;
        for _ in 0..=options.max_backtracks {
            let mut trial = coeffs.clone();
            for (v, d) in trial.values.iter_mut().zip(&direction) {
                for k in 0..3 {
                    v[k] -= step * d[k];
                }
            }
            trial.renormalize();
            let trial_value = objective.value(&trial)?;
            if trial_value <= value - options.armijo * step * slope {
                accepted = Some((trial, trial_value));
                break;
            }
            step *= options.backtrack;
        }
        let Some((next, next_value)) = accepted else {
            status = OptimizationStatus::Stagnated;
            break;
        };
        coeffs = next;
        value = next_value;
        grad = objective.gradient(&coeffs)?;
        grad_norm = norm(&grad);
        iterations += 1;
        history.push(IterationRecord { iteration: iterations, bending: value, gradient_norm: grad_norm, step_size: step });
    }
    if status == OptimizationStatus::MaxIterations && grad_norm < options.tol_grad {
        status = OptimizationStatus::Converged;
    }
    Ok(OptimizationResult {
        coefficient_variance: coeffs.variance(),
        coefficients: coeffs,
        history,
        final_bending: value,
        final_gradient_norm: grad_norm,
        iterations,
        seed: None,
        status,
    })
}

/// Minimizes the discrete total bending from the seeded random start
/// (polynomial degree 2).
pub fn minimize_bending(seed: u64, grid: &ParameterGrid, options: &MinimizeOptions) -> Result<OptimizationResult> {
    let objective = DiscreteBending::new(grid)?;
    let start = init_coefficients(seed, 2, grid)?;
    let mut result = minimize_from(start, &objective, options)?;
    result.seed = Some(seed);
    Ok(result)
}
