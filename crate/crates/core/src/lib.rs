//! Two-sided quaternionic linear canonical transforms on sampled 2D fields.
//!
//! The crate provides, bottom up:
//!
//! - [`quaternion`]: exact quaternion arithmetic;
//! - [`params`]: validated per-axis matrix parameters;
//! - [`kernel`]: the i- and j-plane transform kernels;
//! - [`field`]: uniform lattices, sampled fields, quadrature inner products;
//! - [`qlct`]: the forward / inverse two-sided transform;
//! - [`qwlct`]: the windowed transform, its inversion, and the predicted
//!   images that make its covariance laws directly testable;
//! - [`uncertainty`]: spread functionals and uncertainty-inequality reports;
//! - [`oracle`]: the closed-form Gaussian × Haar reference built on a
//!   complex error function;
//! - [`io`]: binary / CSV field formats and PGM export;
//! - [`verify`]: the self-check battery behind the CLI `verify` subcommand.
//!
//! Quadrature everywhere is composite midpoint with a fixed pairwise
//! reduction tree ([`sum`]), so results are bitwise reproducible regardless
//! of thread count.

pub mod error;
pub mod field;
pub mod io;
pub mod kernel;
pub mod oracle;
pub mod params;
pub mod qlct;
pub mod quaternion;
pub mod qwlct;
pub mod sum;
pub mod uncertainty;
pub mod verify;

pub use error::{QlctError, Result};
pub use field::{Grid2D, QField2D};
pub use kernel::{KernelValue, kernel_i, kernel_i_conj, kernel_j, kernel_j_conj};
pub use params::{LctPair, LctParams};
pub use qlct::{QlctSpectrum, default_wgrid, parseval_check, qlct_forward, qlct_inverse};
pub use quaternion::Quaternion;
pub use qwlct::{
    QwlctMap, boundedness_bound, orthogonality_check, parity_check, predicted_modulation_image,
    predicted_shift_image, qwlct_fixed_u, qwlct_forward, qwlct_inverse,
};
pub use uncertainty::{
    Axis, SpreadReport, qlct_uncertainty_check, qwlct_uncertainty_check, spatial_spread,
    windowed_spectral_energy_density,
};
