//! Analytic catalog of hypersurfaces and unit fields.
//!
//! Surfaces share the hyperspherical chart
//! `(ψ, θ, φ) ↦ (cos ψ, sin ψ cos θ, sin ψ sin θ cos φ, sin ψ sin θ sin φ)`
//! with `ψ, θ ∈ (0, π)` and `φ` periodic. Fields are ambient formulas in the
//! position `x`, re-projected onto the tangent space on evaluation.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{AmbientField, UnitField};
use crate::geometry::{Immersion, Orientation, ParameterBox, Surface};
use crate::linalg::{add4, axpy4, dot4, norm4, quat_mul, scale4, Vec4};
use crate::quadrature::gauss_legendre;

pub const QUAT_I: Vec4 = [0.0, 1.0, 0.0, 0.0];
pub const QUAT_J: Vec4 = [0.0, 0.0, 1.0, 0.0];
pub const QUAT_K: Vec4 = [0.0, 0.0, 0.0, 1.0];

/// Constant vector added by `perturbed_hopf`.
pub const PERTURBATION_DIRECTION: Vec4 = [0.5, 0.5, 0.5, 0.5];

/// The hyperspherical parameter box `(0, π) × (0, π) × [0, 2π)`.
pub fn hyperspherical_box() -> ParameterBox {
    ParameterBox { lo: [0.0, 0.0, 0.0], hi: [PI, PI, 2.0 * PI], periodic: [false, false, true] }
}

/// Value, first and second derivatives of the unit hyperspherical chart.
#[derive(Debug, Clone, Copy)]
pub struct UnitChartJet {
    pub value: Vec4,
    pub first: [Vec4; 3],
    pub second: [Vec4; 6],
}

pub fn unit_chart(u: [f64; 3]) -> UnitChartJet {
    let (sp, cp) = u[0].sin_cos();
    let (st, ct) = u[1].sin_cos();
    let (sf, cf) = u[2].sin_cos();
    let value = [cp, sp * ct, sp * st * cf, sp * st * sf];
    let first = [
        [-sp, cp * ct, cp * st * cf, cp * st * sf],
        [0.0, -sp * st, sp * ct * cf, sp * ct * sf],
        [0.0, 0.0, -sp * st * sf, sp * st * cf],
    ];
    let second = [
        scale4(-1.0, &value),
        [0.0, -cp * st, cp * ct * cf, cp * ct * sf],
        [0.0, 0.0, -cp * st * sf, cp * st * cf],
        [0.0, -sp * ct, -sp * st * cf, -sp * st * sf],
        [0.0, 0.0, -sp * ct * sf, sp * ct * cf],
        [0.0, 0.0, -sp * st * cf, -sp * st * sf],
    ];
    UnitChartJet { value, first, second }
}

fn scale_axes(axes: &[f64; 4], v: &Vec4) -> Vec4 {
    [axes[0] * v[0], axes[1] * v[1], axes[2] * v[2], axes[3] * v[3]]
}

/// Ellipsoid `Σ x_k²/a_k² = 1`; the round sphere is the equal-axes case.
#[derive(Debug, Clone, PartialEq)]
pub struct Ellipsoid {
    pub axes: [f64; 4],
    round: bool,
}

impl Immersion for Ellipsoid {
    fn parameter_box(&self) -> ParameterBox {
        hyperspherical_box()
    }

    fn position(&self, u: [f64; 3]) -> Vec4 {
        scale_axes(&self.axes, &unit_chart(u).value)
    }

    fn first_derivatives(&self, u: [f64; 3]) -> [Vec4; 3] {
        unit_chart(u).first.map(|d| scale_axes(&self.axes, &d))
    }

    fn second_derivatives(&self, u: [f64; 3]) -> [Vec4; 6] {
        unit_chart(u).second.map(|d| scale_axes(&self.axes, &d))
    }

    fn descriptor(&self) -> String {
        if self.round {
            format!("sphere:r={}", self.axes[0])
        } else {
            let a = self.axes;
            format!("ellipsoid:{},{},{},{}", a[0], a[1], a[2], a[3])
        }
    }
}

/// Radial graph `(1 + ε cos(mψ)) · x` over the unit sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct BumpySphere {
    pub amplitude: f64,
    pub mode: u32,
}

impl BumpySphere {
    /// `(ρ, ρ', ρ'')` as functions of ψ.
    fn radius(&self, psi: f64) -> (f64, f64, f64) {
        let m = self.mode as f64;
        let (s, c) = (m * psi).sin_cos();
        (1.0 + self.amplitude * c, -self.amplitude * m * s, -self.amplitude * m * m * c)
    }
}

impl Immersion for BumpySphere {
    fn parameter_box(&self) -> ParameterBox {
        hyperspherical_box()
    }

    fn position(&self, u: [f64; 3]) -> Vec4 {
        scale4(self.radius(u[0]).0, &unit_chart(u).value)
    }

    fn first_derivatives(&self, u: [f64; 3]) -> [Vec4; 3] {
        let jet = unit_chart(u);
        let (r, dr, _) = self.radius(u[0]);
        [
            add4(&scale4(dr, &jet.value), &scale4(r, &jet.first[0])),
            scale4(r, &jet.first[1]),
            scale4(r, &jet.first[2]),
        ]
    }

    fn second_derivatives(&self, u: [f64; 3]) -> [Vec4; 6] {
        let jet = unit_chart(u);
        let (r, dr, ddr) = self.radius(u[0]);
        // (ρ f)_ij = ρ_ij f + ρ_i f_j + ρ_j f_i + ρ f_ij, with ρ depending on ψ only
        let mut out = jet.second.map(|d| scale4(r, &d));
        out[0] = add4(&out[0], &add4(&scale4(ddr, &jet.value), &scale4(2.0 * dr, &jet.first[0])));
        out[1] = add4(&out[1], &scale4(dr, &jet.first[1]));
        out[2] = add4(&out[2], &scale4(dr, &jet.first[2]));
        out
    }

    fn descriptor(&self) -> String {
        format!("bumpy_sphere:eps={},mode={}", self.amplitude, self.mode)
    }
}

/// Catalog surface with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum SurfaceSpec {
    Sphere { radius: f64 },
    Ellipsoid { axes: [f64; 4] },
    BumpySphere { amplitude: f64, mode: u32 },
}

impl SurfaceSpec {
    pub const NAMES: [&'static str; 3] = ["sphere", "ellipsoid", "bumpy_sphere"];
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceSpec::Sphere { radius } => write!(f, "sphere:r={radius}"),
            SurfaceSpec::Ellipsoid { axes: a } => write!(f, "ellipsoid:{},{},{},{}", a[0], a[1], a[2], a[3]),
            SurfaceSpec::BumpySphere { amplitude, mode } => write!(f, "bumpy_sphere:eps={amplitude},mode={mode}"),
        }
    }
}

/// Parsed `name:params` pair. Params are comma separated, positional or `key=value`.
struct Descriptor<'a> {
    name: &'a str,
    params: Vec<(Option<&'a str>, &'a str)>,
}

impl<'a> Descriptor<'a> {
    fn parse(s: &'a str) -> Self {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let params = rest
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| match p.split_once('=') {
                Some((k, v)) => (Some(k.trim()), v.trim()),
                None => (None, p),
            })
            .collect();
        Self { name: name.trim(), params }
    }

    /// Value for `key`, or the positional parameter at `position`.
    fn get(&self, keys: &[&str], position: usize) -> Option<&'a str> {
        self.params
            .iter()
            .find(|(k, _)| k.is_some_and(|k| keys.contains(&k)))
            .or_else(|| self.params.get(position).filter(|(k, _)| k.is_none()))
            .map(|(_, v)| *v)
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        for (key, _) in &self.params {
            if let Some(k) = key {
                if !allowed.contains(k) {
                    return Err(Error::InvalidArgument(format!("unknown parameter `{k}` for `{}`", self.name)));
                }
            }
        }
        Ok(())
    }

    fn number<T: FromStr>(&self, keys: &[&str], position: usize, default: Option<T>) -> Result<T> {
        match self.get(keys, position) {
            Some(raw) => raw
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("cannot parse `{raw}` as {} for `{}`", keys[0], self.name))),
            None => default.ok_or_else(|| Error::InvalidArgument(format!("missing parameter {} for `{}`", keys[0], self.name))),
        }
    }
}

impl FromStr for SurfaceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let d = Descriptor::parse(s);
        let spec = match d.name {
            "sphere" => {
                d.check_keys(&["r", "radius"])?;
                SurfaceSpec::Sphere { radius: d.number(&["r", "radius"], 0, Some(1.0))? }
            }
            "ellipsoid" => {
                d.check_keys(&["a0", "a1", "a2", "a3"])?;
                let mut axes = [1.0; 4];
                for (k, axis) in axes.iter_mut().enumerate() {
                    let key = ["a0", "a1", "a2", "a3"][k];
                    *axis = d.number(&[key], k, Some(1.0))?;
                }
                SurfaceSpec::Ellipsoid { axes }
            }
            "bumpy_sphere" => {
                d.check_keys(&["eps", "mode"])?;
                SurfaceSpec::BumpySphere {
                    amplitude: d.number(&["eps"], 0, Some(0.1))?,
                    mode: d.number(&["mode"], 1, Some(1))?,
                }
            }
            other => return Err(Error::InvalidArgument(format!("unknown surface `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl SurfaceSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            SurfaceSpec::Sphere { radius } if !(*radius > 0.0 && radius.is_finite()) => {
                Err(Error::InvalidArgument(format!("sphere radius must be positive, got {radius}")))
            }
            SurfaceSpec::Ellipsoid { axes } if !axes.iter().all(|a| *a > 0.0 && a.is_finite()) => {
                Err(Error::InvalidArgument(format!("ellipsoid semi-axes must be positive, got {axes:?}")))
            }
            SurfaceSpec::BumpySphere { amplitude, .. } if !(amplitude.abs() < 0.5) => {
                Err(Error::InvalidArgument(format!("bumpy_sphere amplitude must satisfy |eps| < 0.5, got {amplitude}")))
            }
            SurfaceSpec::BumpySphere { mode: 0, .. } => {
                Err(Error::InvalidArgument("bumpy_sphere mode must be at least 1".into()))
            }
            _ => Ok(()),
        }
    }
}

/// Builds a catalog surface with the standard orientation.
pub fn make_surface(spec: &SurfaceSpec) -> Result<Surface> {
    spec.validate()?;
    let immersion: Arc<dyn Immersion> = match *spec {
        SurfaceSpec::Sphere { radius } => Arc::new(Ellipsoid { axes: [radius; 4], round: true }),
        SurfaceSpec::Ellipsoid { axes } => Arc::new(Ellipsoid { axes, round: false }),
        SurfaceSpec::BumpySphere { amplitude, mode } => Arc::new(BumpySphere { amplitude, mode }),
    };
    Ok(Surface::new(immersion, Orientation::Standard))
}

/// Left multiplication `x ↦ q·x` by a unit imaginary quaternion: a Hopf field on S³.
#[derive(Debug, Clone, PartialEq)]
pub struct LeftMultiplication {
    pub q: Vec4,
    pub offset: Vec4,
    label: String,
}

impl AmbientField for LeftMultiplication {
    fn value(&self, _u: [f64; 3], x: &Vec4) -> Vec4 {
        add4(&quat_mul(&self.q, x), &self.offset)
    }

    fn derivative(&self, _u: [f64; 3], _x: &Vec4, dx: &Vec4) -> Option<Vec4> {
        Some(quat_mul(&self.q, dx))
    }

    fn descriptor(&self) -> String {
        self.label.clone()
    }
}

/// Polynomial in four variables, stored as `(exponents, coefficient)` terms.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbientPolynomial {
    terms: Vec<([u8; 4], f64)>,
}

impl AmbientPolynomial {
    /// Every monomial of total degree at most `degree`, in a fixed order.
    pub fn monomials(degree: u32) -> Vec<[u8; 4]> {
        let d = degree as u8;
        let mut out = Vec::new();
        for total in 0..=d {
            for e0 in (0..=total).rev() {
                for e1 in (0..=total - e0).rev() {
                    for e2 in (0..=total - e0 - e1).rev() {
                        out.push([e0, e1, e2, total - e0 - e1 - e2]);
                    }
                }
            }
        }
        out
    }

    pub fn new(terms: Vec<([u8; 4], f64)>) -> Self {
        Self { terms }
    }

    pub fn constant(c: f64) -> Self {
        Self { terms: vec![([0; 4], c)] }
    }

    pub fn eval(&self, x: &Vec4) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c * (0..4).map(|k| x[k].powi(e[k] as i32)).product::<f64>())
            .sum()
    }

    pub fn gradient(&self, x: &Vec4) -> Vec4 {
        let mut g = [0.0; 4];
        for (e, c) in &self.terms {
            for (k, gk) in g.iter_mut().enumerate() {
                if e[k] == 0 {
                    continue;
                }
                let mut term = c * e[k] as f64;
                for j in 0..4 {
                    let power = if j == k { e[j] as i32 - 1 } else { e[j] as i32 };
                    term *= x[j].powi(power);
                }
                *gk += term;
            }
        }
        g
    }
}

/// Three random polynomials in the ambient coordinates of total degree at most
/// `smoothness`, with standard normal coefficients.
///
/// Draw `k` of `seed` reads ChaCha stream `k` under key `seed`. Restricted to S³
/// in the hyperspherical chart the polynomials are trigonometric polynomials
/// with frequency at most `smoothness` along each axis.
pub fn random_coefficient_polynomials(seed: u64, draw: u64, smoothness: u32) -> [AmbientPolynomial; 3] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(draw);
    let monomials = AmbientPolynomial::monomials(smoothness);
    std::array::from_fn(|_| {
        AmbientPolynomial::new(
            monomials
                .iter()
                .map(|&e| {
                    let c: f64 = StandardNormal.sample(&mut rng);
                    (e, c)
                })
                .collect(),
        )
    })
}

/// Smallest admissible `min |(a, b, c)| / rms |(a, b, c)|` on the check grid.
pub const NONDEGENERACY_RATIO: f64 = 0.25;

/// Draws tried by [`smooth_coefficient_polynomials`] before giving up.
pub const MAX_DRAWS: u64 = 1000;

/// `min |(a, b, c)| / rms |(a, b, c)|` over a fixed (16, 16, 32) grid on S³.
pub fn nondegeneracy_ratio(polys: &[AmbientPolynomial; 3]) -> f64 {
    let (nodes_psi, _) = gauss_legendre(16, 0.0, PI);
    let (nodes_theta, _) = gauss_legendre(16, 0.0, PI);
    let mut min = f64::INFINITY;
    let mut sum_sq = 0.0;
    let mut count = 0.0;
    for &psi in &nodes_psi {
        for &theta in &nodes_theta {
            for k in 0..32 {
                let x = unit_chart([psi, theta, 2.0 * PI * k as f64 / 32.0]).value;
                let sq: f64 = polys.iter().map(|p| p.eval(&x).powi(2)).sum();
                min = min.min(sq.sqrt());
                sum_sq += sq;
                count += 1.0;
            }
        }
    }
    min / (sum_sq / count).sqrt()
}

/// Random coefficient polynomials whose triple stays away from zero on S³.
///
/// Three random functions on a 3-manifold generically vanish at isolated
/// points, where the normalized field is singular. Draws `0, 1, …` of `seed`
/// are tried until [`nondegeneracy_ratio`] reaches [`NONDEGENERACY_RATIO`];
/// the accepted draw index is returned alongside.
pub fn smooth_coefficient_polynomials(seed: u64, smoothness: u32) -> Result<(u64, [AmbientPolynomial; 3])> {
    for draw in 0..MAX_DRAWS {
        let polys = random_coefficient_polynomials(seed, draw, smoothness);
        if nondegeneracy_ratio(&polys) >= NONDEGENERACY_RATIO {
            return Ok((draw, polys));
        }
    }
    Err(Error::InvalidArgument(format!(
        "no nondegenerate coefficient draw in {MAX_DRAWS} tries for seed {seed} (smoothness {smoothness})"
    )))
}

/// `v(x) = a(x̂)·i·x + b(x̂)·j·x + c(x̂)·k·x` with `x̂ = x/|x|`.
///
/// Evaluating the coefficients on the radial projection keeps them the same
/// functions on every surface that is star-shaped about the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct QuaternionicFrameField {
    pub coefficients: [AmbientPolynomial; 3],
    label: String,
}

impl QuaternionicFrameField {
    pub fn new(coefficients: [AmbientPolynomial; 3], label: String) -> Self {
        Self { coefficients, label }
    }
}

impl AmbientField for QuaternionicFrameField {
    fn value(&self, _u: [f64; 3], x: &Vec4) -> Vec4 {
        let xhat = scale4(1.0 / norm4(x), x);
        let mut out = [0.0; 4];
        for (p, q) in self.coefficients.iter().zip([QUAT_I, QUAT_J, QUAT_K]) {
            out = axpy4(&out, p.eval(&xhat), &quat_mul(&q, x));
        }
        out
    }

    fn derivative(&self, _u: [f64; 3], x: &Vec4, dx: &Vec4) -> Option<Vec4> {
        let r = norm4(x);
        let xhat = scale4(1.0 / r, x);
        // d(x/|x|) = (dx − ⟨x̂, dx⟩ x̂) / |x|
        let dxhat = scale4(1.0 / r, &axpy4(dx, -dot4(&xhat, dx), &xhat));
        let mut out = [0.0; 4];
        for (p, q) in self.coefficients.iter().zip([QUAT_I, QUAT_J, QUAT_K]) {
            let dp = dot4(&p.gradient(&xhat), &dxhat);
            out = axpy4(&out, dp, &quat_mul(&q, x));
            out = axpy4(&out, p.eval(&xhat), &quat_mul(&q, dx));
        }
        Some(out)
    }

    fn descriptor(&self) -> String {
        self.label.clone()
    }
}

/// Catalog field with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum FieldSpec {
    Hopf,
    HopfAxis { axis: [f64; 3] },
    PerturbedHopf { epsilon: f64 },
    FrameConstant { coefficients: [f64; 3] },
    RandomSmooth { seed: u64, smoothness: u32 },
}

impl FieldSpec {
    pub const NAMES: [&'static str; 5] = ["hopf", "hopf_axis", "perturbed_hopf", "frame_constant", "random_smooth"];

    pub fn validate(&self) -> Result<()> {
        let nonzero = |v: &[f64; 3], what: &str| {
            let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            if n > 0.0 && n.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!("{what} must be a nonzero finite triple, got {v:?}")))
            }
        };
        match self {
            FieldSpec::HopfAxis { axis } => nonzero(axis, "hopf_axis quaternion"),
            FieldSpec::FrameConstant { coefficients } => nonzero(coefficients, "frame_constant coefficients"),
            FieldSpec::PerturbedHopf { epsilon } if !epsilon.is_finite() => {
                Err(Error::InvalidArgument(format!("perturbed_hopf epsilon must be finite, got {epsilon}")))
            }
            FieldSpec::RandomSmooth { smoothness, .. } if *smoothness == 0 || *smoothness > 8 => {
                Err(Error::InvalidArgument(format!("random_smooth smoothness must be in 1..=8, got {smoothness}")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Hopf => f.write_str("hopf"),
            FieldSpec::HopfAxis { axis: q } => write!(f, "hopf_axis:{},{},{}", q[0], q[1], q[2]),
            FieldSpec::PerturbedHopf { epsilon } => write!(f, "perturbed_hopf:{epsilon}"),
            FieldSpec::FrameConstant { coefficients: c } => write!(f, "frame_constant:{},{},{}", c[0], c[1], c[2]),
            FieldSpec::RandomSmooth { seed, smoothness } => write!(f, "random_smooth:seed={seed},smoothness={smoothness}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let d = Descriptor::parse(s);
        let triple = |d: &Descriptor, keys: [&str; 3], default: [f64; 3]| -> Result<[f64; 3]> {
            d.check_keys(&keys)?;
            Ok([
                d.number(&[keys[0]], 0, Some(default[0]))?,
                d.number(&[keys[1]], 1, Some(default[1]))?,
                d.number(&[keys[2]], 2, Some(default[2]))?,
            ])
        };
        let spec = match d.name {
            "hopf" => {
                d.check_keys(&[])?;
                if !d.params.is_empty() {
                    return Err(Error::InvalidArgument("`hopf` takes no parameters".into()));
                }
                FieldSpec::Hopf
            }
            "hopf_axis" => FieldSpec::HopfAxis { axis: triple(&d, ["i", "j", "k"], [1.0, 0.0, 0.0])? },
            "perturbed_hopf" => {
                d.check_keys(&["eps"])?;
                FieldSpec::PerturbedHopf { epsilon: d.number(&["eps"], 0, Some(0.3))? }
            }
            "frame_constant" => FieldSpec::FrameConstant { coefficients: triple(&d, ["a", "b", "c"], [1.0, 0.0, 0.0])? },
            "random_smooth" => {
                d.check_keys(&["seed", "smoothness"])?;
                FieldSpec::RandomSmooth {
                    seed: d.number(&["seed"], 0, Some(0))?,
                    smoothness: d.number(&["smoothness"], 1, Some(2))?,
                }
            }
            other => return Err(Error::InvalidArgument(format!("unknown field `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn unit_imaginary(v: &[f64; 3]) -> Vec4 {
    let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    [0.0, v[0] / n, v[1] / n, v[2] / n]
}

/// Builds a catalog unit field.
pub fn make_field(spec: &FieldSpec) -> Result<UnitField> {
    spec.validate()?;
    let label = spec.to_string();
    let field: Arc<dyn AmbientField> = match spec {
        FieldSpec::Hopf => Arc::new(LeftMultiplication { q: QUAT_I, offset: [0.0; 4], label }),
        FieldSpec::HopfAxis { axis } => Arc::new(LeftMultiplication { q: unit_imaginary(axis), offset: [0.0; 4], label }),
        FieldSpec::PerturbedHopf { epsilon } => Arc::new(LeftMultiplication {
            q: QUAT_I,
            offset: scale4(*epsilon, &PERTURBATION_DIRECTION),
            label,
        }),
        FieldSpec::FrameConstant { coefficients } => {
            Arc::new(LeftMultiplication { q: unit_imaginary(coefficients), offset: [0.0; 4], label })
        }
        FieldSpec::RandomSmooth { seed, smoothness } => {
            Arc::new(QuaternionicFrameField::new(smooth_coefficient_polynomials(*seed, *smoothness)?.1, label))
        }
    };
    Ok(UnitField::new(field))
}

/// Surfaces exercised by the acceptance runs.
pub fn catalog_surfaces() -> Vec<SurfaceSpec> {
    vec![
        SurfaceSpec::Sphere { radius: 1.0 },
        SurfaceSpec::Sphere { radius: 2.0 },
        SurfaceSpec::Ellipsoid { axes: [2.0, 1.0, 1.0, 1.0] },
        SurfaceSpec::BumpySphere { amplitude: 0.1, mode: 1 },
        SurfaceSpec::BumpySphere { amplitude: 0.2, mode: 2 },
    ]
}

/// Fields exercised by the acceptance runs.
pub fn catalog_fields() -> Vec<FieldSpec> {
    vec![
        FieldSpec::Hopf,
        FieldSpec::HopfAxis { axis: [0.0, 1.0, 1.0] },
        FieldSpec::PerturbedHopf { epsilon: 0.3 },
        FieldSpec::FrameConstant { coefficients: [1.0, 2.0, -0.5] },
        FieldSpec::RandomSmooth { seed: 0, smoothness: 2 },
    ]
}
