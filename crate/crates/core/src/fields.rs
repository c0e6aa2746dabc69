//! Unit tangent fields, covariant derivatives and the adapted frame `{e₁, e₂, v}`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{pointwise_geometry, PointGeometry, Surface};
use crate::linalg::{axpy4, dot4, mat3_vec, norm4, reject4, scale4, sub4, Vec4};

/// Projected norm below which a raw field value counts as normal to the surface.
pub const FIELD_DEGENERATE_NORM: f64 = 1e-8;

/// Relative parameter step of the finite-difference fallback.
pub const FD_RELATIVE_STEP: f64 = 1e-4;

/// A vector field given by an ambient formula, before projection.
pub trait AmbientField: Send + Sync + fmt::Debug {
    /// Raw value at parameter `u` with surface point `x = f(u)`.
    fn value(&self, u: [f64; 3], x: &Vec4) -> Vec4;

    /// Derivative of the raw value along the coordinate curve whose velocity is `dx`.
    /// `None` selects the finite-difference fallback.
    fn derivative(&self, _u: [f64; 3], _x: &Vec4, _dx: &Vec4) -> Option<Vec4> {
        None
    }

    fn descriptor(&self) -> String;
}

/// A unit tangent field: an ambient formula that is projected onto the tangent
/// space and normalized at every evaluation.
#[derive(Debug, Clone)]
pub struct UnitField {
    raw: Arc<dyn AmbientField>,
    analytic: bool,
}

/// Unit field value together with its parameter derivatives `∂_i v` (ambient).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldJet {
    pub value: Vec4,
    pub partials: [Vec4; 3],
}

impl UnitField {
    pub fn new(raw: Arc<dyn AmbientField>) -> Self {
        Self { raw, analytic: true }
    }

    /// Same field, but derivatives always come from finite differences.
    pub fn finite_difference_only(&self) -> Self {
        Self { raw: Arc::clone(&self.raw), analytic: false }
    }

    pub fn descriptor(&self) -> String {
        self.raw.descriptor()
    }

    pub fn raw_value(&self, u: [f64; 3], x: &Vec4) -> Vec4 {
        self.raw.value(u, x)
    }

    /// Projected, normalized field value at a point with known geometry.
    pub fn value_at(&self, geo: &PointGeometry) -> Result<Vec4> {
        let raw = self.raw.value(geo.u, &geo.position);
        let projected = reject4(&raw, &geo.normal);
        let norm = norm4(&projected);
        if !(norm >= FIELD_DEGENERATE_NORM) {
            return Err(Error::FieldDegenerate { u: geo.u, norm });
        }
        Ok(scale4(1.0 / norm, &projected))
    }

    /// The unit tangent field value at `u`.
    pub fn evaluate(&self, surface: &Surface, u: [f64; 3]) -> Result<Vec4> {
        self.value_at(&pointwise_geometry(surface, u)?)
    }

    /// Value and parameter derivatives of the unit field at `geo.u`.
    pub fn jet(&self, surface: &Surface, geo: &PointGeometry) -> Result<FieldJet> {
        if self.analytic {
            if let Some(jet) = self.analytic_jet(geo)? {
                return Ok(jet);
            }
        }
        self.finite_difference_jet(surface, geo)
    }

    fn analytic_jet(&self, geo: &PointGeometry) -> Result<Option<FieldJet>> {
        let raw = self.raw.value(geo.u, &geo.position);
        let n = &geo.normal;
        let along_normal = dot4(&raw, n);
        let projected = axpy4(&raw, -along_normal, n);
        let norm = norm4(&projected);
        if !(norm >= FIELD_DEGENERATE_NORM) {
            return Err(Error::FieldDegenerate { u: geo.u, norm });
        }
        let value = scale4(1.0 / norm, &projected);
        let mut partials = [[0.0; 4]; 3];
        for i in 0..3 {
            let Some(d_raw) = self.raw.derivative(geo.u, &geo.position, &geo.tangents[i]) else {
                return Ok(None);
            };
            // Weingarten: ∂_i N = -Σ_k S_ki ∂_k f
            let column = [geo.shape_operator[0][i], geo.shape_operator[1][i], geo.shape_operator[2][i]];
            let d_normal = scale4(-1.0, &geo.ambient(&column));
            // P = R - ⟨R,N⟩N
            let mut d_proj = axpy4(&d_raw, -dot4(&d_raw, n), n);
            d_proj = axpy4(&d_proj, -dot4(&raw, &d_normal), n);
            d_proj = axpy4(&d_proj, -along_normal, &d_normal);
            // v = P/|P|
            let radial = dot4(&d_proj, &value);
            partials[i] = scale4(1.0 / norm, &axpy4(&d_proj, -radial, &value));
        }
        Ok(Some(FieldJet { value, partials }))
    }

    fn finite_difference_jet(&self, surface: &Surface, geo: &PointGeometry) -> Result<FieldJet> {
        let bx = surface.parameter_box();
        let value = self.value_at(geo)?;
        let mut partials = [[0.0; 4]; 3];
        for (axis, partial) in partials.iter_mut().enumerate() {
            let h = FD_RELATIVE_STEP * bx.length(axis);
            let u = geo.u;
            if !bx.periodic[axis] && (u[axis] - 2.0 * h <= bx.lo[axis] || u[axis] + 2.0 * h >= bx.hi[axis]) {
                return Err(Error::StencilOutOfDomain { u, axis });
            }
            let at = |offset: f64| -> Result<Vec4> {
                let mut p = u;
                p[axis] += offset;
                self.evaluate(surface, p)
            };
            // fourth-order centered stencil
            let (p1, m1, p2, m2) = (at(h)?, at(-h)?, at(2.0 * h)?, at(-2.0 * h)?);
            let near = scale4(8.0, &sub4(&p1, &m1));
            let far = sub4(&p2, &m2);
            *partial = scale4(1.0 / (12.0 * h), &sub4(&near, &far));
        }
        Ok(FieldJet { value, partials })
    }
}

impl FieldJet {
    /// `∇_X v` for a tangent vector `X`: the ambient derivative minus its normal part.
    pub fn covariant_derivative(&self, geo: &PointGeometry, x: &Vec4) -> Vec4 {
        let c = geo.coordinates(x);
        let mut d = [0.0; 4];
        for (ci, p) in c.iter().zip(&self.partials) {
            d = axpy4(&d, *ci, p);
        }
        reject4(&d, &geo.normal)
    }
}

/// `∇_X v` at parameter `u`.
pub fn covariant_derivative(field: &UnitField, surface: &Surface, u: [f64; 3], x: &Vec4) -> Result<Vec4> {
    let geo = pointwise_geometry(surface, u)?;
    Ok(field.jet(surface, &geo)?.covariant_derivative(&geo, x))
}

/// Scalars of the adapted orthonormal frame `{e₁, e₂, e₃ = v}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameComponents {
    /// `a_ij = ⟨∇_{e_i} v, e_j⟩`
    pub a: [[f64; 2]; 2],
    /// `v_i = ⟨∇_v v, e_i⟩`
    pub vvec: [f64; 2],
    /// `h_3A = ⟨S(v), e_A⟩`
    pub h3: [f64; 3],
    /// `‖∇v‖² = Σ a_ij² + Σ v_i²`
    pub bending_density: f64,
}

impl FrameComponents {
    pub fn zero() -> Self {
        Self { a: [[0.0; 2]; 2], vvec: [0.0; 2], h3: [0.0; 3], bending_density: 0.0 }
    }

    /// Components measured in the given orthonormal frame, whose third vector is `v`.
    pub fn in_frame(geo: &PointGeometry, jet: &FieldJet, frame: &[Vec4; 3]) -> Self {
        let v = &frame[2];
        let nabla = [
            jet.covariant_derivative(geo, &frame[0]),
            jet.covariant_derivative(geo, &frame[1]),
            jet.covariant_derivative(geo, v),
        ];
        let a = [
            [dot4(&nabla[0], &frame[0]), dot4(&nabla[0], &frame[1])],
            [dot4(&nabla[1], &frame[0]), dot4(&nabla[1], &frame[1])],
        ];
        let vvec = [dot4(&nabla[2], &frame[0]), dot4(&nabla[2], &frame[1])];
        let sv = geo.apply_shape(v);
        let h3 = [dot4(&sv, &frame[0]), dot4(&sv, &frame[1]), dot4(&sv, v)];
        let bending_density = a[0][0] * a[0][0] + a[0][1] * a[0][1] + a[1][0] * a[1][0] + a[1][1] * a[1][1]
            + vvec[0] * vvec[0]
            + vvec[1] * vvec[1];
        Self { a, vvec, h3, bending_density }
    }

    /// Matrix of `∇v` in the adapted frame: row A holds `⟨∇_{e_A} v, e_B⟩`.
    pub fn derivative_matrix(&self) -> [[f64; 3]; 3] {
        [
            [self.a[0][0], self.a[0][1], 0.0],
            [self.a[1][0], self.a[1][1], 0.0],
            [self.vvec[0], self.vvec[1], 0.0],
        ]
    }

    /// `‖S(v)‖`
    pub fn shape_of_field_norm(&self) -> f64 {
        (self.h3[0] * self.h3[0] + self.h3[1] * self.h3[1] + self.h3[2] * self.h3[2]).sqrt()
    }
}

/// Orthonormal frame with `e₃ = v`.
///
/// Gram–Schmidt is seeded with the two normalized coordinate vectors least
/// aligned with `v`; ties go to the lower index.
pub fn adapted_frame(geo: &PointGeometry, v: &Vec4) -> [Vec4; 3] {
    let unit_coords: [Vec4; 3] = std::array::from_fn(|i| scale4(1.0 / geo.metric[i][i].sqrt(), &geo.tangents[i]));
    let mut order = [0usize, 1, 2];
    let alignment: [f64; 3] = std::array::from_fn(|i| dot4(&unit_coords[i], v).abs());
    // stable sort keeps the lower index first on ties
    order.sort_by(|&i, &j| alignment[i].total_cmp(&alignment[j]));
    let seed1 = reject4(&unit_coords[order[0]], v);
    let e1 = scale4(1.0 / norm4(&seed1), &seed1);
    let seed2 = reject4(&reject4(&unit_coords[order[1]], v), &e1);
    let e2 = scale4(1.0 / norm4(&seed2), &seed2);
    [e1, e2, *v]
}

/// Adapted-frame components of `field` at `u`.
pub fn frame_components(field: &UnitField, surface: &Surface, u: [f64; 3]) -> Result<FrameComponents> {
    let geo = pointwise_geometry(surface, u)?;
    let jet = field.jet(surface, &geo)?;
    Ok(FrameComponents::in_frame(&geo, &jet, &adapted_frame(&geo, &jet.value)))
}

/// `S(v)` in coordinate components, for callers holding coordinates.
pub fn shape_of_coordinates(geo: &PointGeometry, coords: &[f64; 3]) -> [f64; 3] {
    mat3_vec(&geo.shape_operator, coords)
}
