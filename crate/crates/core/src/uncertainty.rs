//! Spatial and spectral spread functionals and the uncertainty-inequality
//! checks for the plain and windowed transforms.
//!
//! Moments are taken about the lattice origin (plain `x_k²` weights, no
//! centering). The plain-transform inequality compares
//! `(∫x_k²|f|²)·(∫ω_k²|Lf|²)` against `b_k²/4·‖f‖⁴`; the windowed one
//! compares `√(∬ω_k²|Gf|²)·√(∫x_k²|f|²)` against `(b_k/2)·‖f‖²·‖φ‖`.

use serde::Serialize;

use crate::field::{Grid2D, QField2D};
use crate::params::LctPair;
use crate::qlct::{qlct_forward, qlct_inverse};
use crate::qwlct::{QwlctMap, qwlct_forward};
use crate::sum::tree_sum_fn;
use crate::{Result, error::QlctError};

/// Relative slack granted to the plain-transform inequality; covers double
/// rounding in the quadrature, nothing more.
pub const QLCT_SLACK: f64 = 1e-6;
/// Relative slack for the windowed inequality; the 4D quadrature stacks the
/// most error of anything in the crate.
pub const QWLCT_SLACK: f64 = 1e-4;

/// Domain axis selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axis {
    One,
    Two,
}

impl Axis {
    /// Zero-based coordinate index.
    #[inline]
    pub fn index(self) -> usize {
        match self {
            Axis::One => 0,
            Axis::Two => 1,
        }
    }
}

/// Outcome of one uncertainty-inequality evaluation.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SpreadReport {
    /// Axis the moments weight (1 or 2).
    pub k: u8,
    /// `∫ x_k² |f|² dx`.
    pub spatial: f64,
    /// `∫ ω_k² |·|²` over the relevant transform domain.
    pub spectral: f64,
    /// Right-hand side of the checked inequality.
    pub bound: f64,
    /// Whether the inequality holds within its slack.
    pub satisfied: bool,
    /// `lhs − rhs` of the checked inequality.
    pub margin: f64,
}

/// Second moment `Σ x_k² |f(x)|² dx₁dx₂` of a field about the origin.
pub fn spatial_spread(f: &QField2D, axis: Axis) -> f64 {
    let k = axis.index();
    let grid = f.grid();
    let n2 = grid.n()[1];
    let data = f.data();
    let sum: f64 = tree_sum_fn(0, data.len(), &|idx| {
        let coord = if k == 0 {
            grid.axis_coord(0, idx / n2)
        } else {
            grid.axis_coord(1, idx % n2)
        };
        coord * coord * data[idx].norm_sqr()
    });
    sum * grid.cell_area()
}

/// `∬ ω_k² |G(ω, u)|² dω du` over a windowed-transform map.
pub fn windowed_spectral_energy_density(map: &QwlctMap, axis: Axis) -> f64 {
    let k = axis.index();
    let m2 = map.wgrid().n()[1];
    let per_u = map.ugrid().len();
    let data = map.data();
    let sum: f64 = tree_sum_fn(0, data.len(), &|idx| {
        let iw = idx / per_u;
        let coord = if k == 0 {
            map.wgrid().axis_coord(0, iw / m2)
        } else {
            map.wgrid().axis_coord(1, iw % m2)
        };
        coord * coord * data[idx].norm_sqr()
    });
    sum * map.cell_weight()
}

/// Uncertainty check for the plain transform on the given frequency lattice.
pub fn qlct_uncertainty_check(
    f: &QField2D,
    pair: &LctPair,
    wgrid: &Grid2D,
    axis: Axis,
) -> SpreadReport {
    let spatial = spatial_spread(f, axis);
    let spectrum = qlct_forward(f, pair, wgrid);
    let spectral = spatial_spread(&spectrum, axis);
    let b = match axis {
        Axis::One => pair.a1.b(),
        Axis::Two => pair.a2.b(),
    };
    let norm_sq = f.l2_norm().powi(2);
    let lhs = spatial * spectral;
    let bound = b * b / 4.0 * norm_sq * norm_sq;
    SpreadReport {
        k: axis.index() as u8 + 1,
        spatial,
        spectral,
        bound,
        satisfied: lhs >= bound * (1.0 - QLCT_SLACK),
        margin: lhs - bound,
    }
}

/// Uncertainty check for the windowed transform on the given lattices.
pub fn qwlct_uncertainty_check(
    f: &QField2D,
    phi: &QField2D,
    pair: &LctPair,
    wgrid: &Grid2D,
    ugrid: &Grid2D,
    axis: Axis,
) -> Result<SpreadReport> {
    let map = qwlct_forward(f, phi, pair, wgrid, ugrid)?;
    qwlct_uncertainty_check_with_map(f, phi, pair, &map, axis)
}

/// Same check reusing an already-computed map.
pub fn qwlct_uncertainty_check_with_map(
    f: &QField2D,
    phi: &QField2D,
    pair: &LctPair,
    map: &QwlctMap,
    axis: Axis,
) -> Result<SpreadReport> {
    if phi.l2_norm() == 0.0 {
        return Err(QlctError::ZeroWindow);
    }
    let spatial = spatial_spread(f, axis);
    let spectral = windowed_spectral_energy_density(map, axis);
    let b = match axis {
        Axis::One => pair.a1.b(),
        Axis::Two => pair.a2.b(),
    };
    let lhs = spectral.sqrt() * spatial.sqrt();
    let bound = b / 2.0 * f.l2_norm().powi(2) * phi.l2_norm();
    Ok(SpreadReport {
        k: axis.index() as u8 + 1,
        spatial,
        spectral,
        bound,
        satisfied: lhs >= bound * (1.0 - QWLCT_SLACK),
        margin: lhs - bound,
    })
}

/// Both sides of the window-energy moment identity
/// `‖φ‖²·∫x_k²|f|² = ∬ x_k²·|L⁻¹{G(·, u)}(x)|² dx du`: the right side
/// reconstructs every per-u windowed product through the inverse transform
/// and sums its weighted norms.
pub fn windowed_spatial_identity(
    f: &QField2D,
    phi: &QField2D,
    pair: &LctPair,
    wgrid: &Grid2D,
    ugrid: &Grid2D,
    axis: Axis,
) -> Result<(f64, f64)> {
    let lhs = phi.l2_norm().powi(2) * spatial_spread(f, axis);
    let map = qwlct_forward(f, phi, pair, wgrid, ugrid)?;
    let [p1, p2] = ugrid.n();
    let mut per_u = Vec::with_capacity(p1 * p2);
    for iu1 in 0..p1 {
        for iu2 in 0..p2 {
            let slice = map.slice_at(iu1, iu2);
            let back = qlct_inverse(&slice, pair, f.grid());
            per_u.push(spatial_spread(&back, axis));
        }
    }
    let rhs = crate::sum::tree_sum(&per_u) * ugrid.cell_area();
    Ok((lhs, rhs))
}
