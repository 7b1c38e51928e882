//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong while validating parameters, combining
/// fields, or moving data in and out of files.
#[derive(Debug, Error)]
pub enum QlctError {
    /// Matrix parameter determinant ad − bc is not 1 within tolerance.
    #[error("matrix parameter determinant is {det}, not 1 (|det - 1| > {tol})")]
    DetNotOne { det: f64, tol: f64 },

    /// |b| is too small: the transform kernel degenerates to a chirp-scaled
    /// delta that cannot be sampled on a uniform grid.
    #[error("degenerate matrix parameter: |b| = {b_abs} <= {tol} (b must be nonzero)")]
    DegenerateB { b_abs: f64, tol: f64 },

    /// Two fields that must share a lattice do not.
    #[error("grid mismatch between operands")]
    GridMismatch,

    /// A requested translation does not land on the sampling lattice.
    #[error("shift {value} on axis {axis} is not a lattice multiple of {step}")]
    NonGridShift { axis: usize, value: f64, step: f64 },

    /// A frequency displacement from a modulation does not land on the lattice.
    #[error("modulation frequency offset {value} on axis {axis} is not a lattice multiple of {step}")]
    NonGridModulation { axis: usize, value: f64, step: f64 },

    /// A window-position lattice point is not on the signal lattice.
    #[error("window position {value} on axis {axis} is not a lattice multiple of signal spacing {step}")]
    NonGridU { axis: usize, value: f64, step: f64 },

    /// An operation requiring a grid symmetric about the origin got one that is not.
    #[error("grid is not symmetric about the origin on axis {axis}")]
    AsymmetricGrid { axis: usize },

    /// The window function is identically zero.
    #[error("window function is identically zero")]
    ZeroWindow,

    /// Gaussian width parameter must be strictly positive.
    #[error("gaussian width parameter alpha_{axis} = {value} is not strictly positive")]
    NonPositiveAlpha { axis: usize, value: f64 },

    /// Argument outside the supported disc of the error-function evaluator.
    #[error("complex error function argument |z| = {abs} exceeds the supported bound {bound}")]
    DomainTooLarge { abs: f64, bound: f64 },

    /// The analytic reference requires b > 0 on both axes.
    #[error("negative b on axis {axis}: closed-form reference is only defined for b > 0")]
    NegativeB { axis: usize },

    /// Invalid grid construction.
    #[error("invalid grid: {0}")]
    BadGrid(String),

    /// File does not start with the expected magic bytes.
    #[error("bad magic bytes: expected {expected:?}, found {found:?}")]
    BadMagic { expected: [u8; 4], found: [u8; 4] },

    /// File format version not understood.
    #[error("unsupported format version {found} (expected {expected})")]
    BadVersion { expected: u16, found: u16 },

    /// File ends before the payload promised by its header.
    #[error("truncated payload: needed {needed} bytes, found {found}")]
    TruncatedPayload { needed: usize, found: usize },

    /// A non-finite sample was found where finite data is required.
    #[error("non-finite sample at flat index {index}")]
    NonFiniteSample { index: usize },

    /// CSV import did not cover a lattice point.
    #[error("missing lattice point ({i1}, {i2}) in CSV input")]
    MissingPoint { i1: usize, i2: usize },

    /// CSV import covered a lattice point twice.
    #[error("duplicate lattice point ({i1}, {i2}) in CSV input")]
    DuplicatePoint { i1: usize, i2: usize },

    /// Malformed text input.
    #[error("parse error: {0}")]
    ParseError(String),

    /// Underlying I/O failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, QlctError>;
