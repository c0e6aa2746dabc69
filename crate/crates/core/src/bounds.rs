//! Verification of the degree, energy and volume lower bounds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::UnitField;
use crate::functionals::{compute_functionals, DegreeStatus, FunctionalReport};
use crate::geometry::{ParameterGrid, Surface};
use crate::VOL_S3;

/// A bound may undershoot by this much and still pass.
pub const REPORT_TOLERANCE: f64 = 1e-6;

/// One inequality `lhs ≤ rhs`, with `margin = rhs − lhs` except where noted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub pass: bool,
}

impl BoundCheck {
    fn new(lhs: f64, rhs: f64, margin: f64) -> Self {
        Self { lhs, rhs, margin, pass: margin >= -REPORT_TOLERANCE }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    #[serde(flatten)]
    pub functionals: FunctionalReport,
    /// The topological degree entering the bounds (rounded integral formula).
    pub degree: i64,
    /// `deg ≤ 2 S̃ B`
    pub main_bound: BoundCheck,
    /// `|deg| ≤ 2 S̃ B`
    pub main_bound_abs: BoundCheck,
    /// `vol(S³) deg / (2 S̃) + (3/2) vol(M) ≤ E`
    pub energy_bound: BoundCheck,
    /// `vol(v) − vol(M) ≥ vol(S³) |deg| / 𝒮`
    pub volume_bound: BoundCheck,
    pub degree_unresolved: bool,
    pub pass: bool,
    pub seed: Option<u64>,
}

/// Evaluates all functionals once and checks the three bounds.
///
/// The degree is the rounded integral-formula estimate; it must match the
/// Gauss–Kronecker estimate or no report is produced.
pub fn verify_bounds(surface: &Surface, field: &UnitField, grid: &ParameterGrid) -> Result<BoundsReport> {
    let functionals = compute_functionals(surface, field, grid)?;
    bounds_from_functionals(functionals)
}

pub fn bounds_from_functionals(functionals: FunctionalReport) -> Result<BoundsReport> {
    let degree = functionals.degree_eta2.rounded;
    if degree != functionals.degree_gauss_kronecker.rounded {
        return Err(Error::DegreeMismatch { eta2: degree, gauss_kronecker: functionals.degree_gauss_kronecker.rounded });
    }
    let deg = degree as f64;
    let f = &functionals;
    let bending_side = 2.0 * f.s_tilde * f.total_bending;
    let main_bound = BoundCheck::new(deg, bending_side, bending_side - deg);
    let main_bound_abs = BoundCheck::new(deg.abs(), bending_side, bending_side - deg.abs());

    let energy_rhs = VOL_S3 * deg / (2.0 * f.s_tilde) + 1.5 * f.vol_m;
    let energy_bound = BoundCheck::new(energy_rhs, f.energy, f.energy - energy_rhs);

    let volume_rhs = VOL_S3 / f.s_full * deg.abs();
    let excess = f.vol_field - f.vol_m;
    let volume_bound = BoundCheck::new(volume_rhs, excess, excess - volume_rhs);

    let degree_unresolved = f.degree_eta2.status == DegreeStatus::Unresolved
        || f.degree_gauss_kronecker.status == DegreeStatus::Unresolved;
    let pass = main_bound.pass && energy_bound.pass && volume_bound.pass && f.energy_paths_agree;
    Ok(BoundsReport {
        functionals,
        degree,
        main_bound,
        main_bound_abs,
        energy_bound,
        volume_bound,
        degree_unresolved,
        pass,
        seed: None,
    })
}
