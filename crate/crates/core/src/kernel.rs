//! The i- and j-plane kernels of the two-sided transform.
//!
//! For matrix parameter `(a, b; c, d)` the kernel at `(x, ω)` is
//!
//! ```text
//! K(x, ω) = exp_±( a x²/(2b) − x ω / b + d ω²/(2b) − sign(b)·π/4 ) / √(2π|b|)
//! ```
//!
//! where `exp_±` is the unit phase in the `{1, i}` plane for the left kernel
//! and in the `{1, j}` plane for the right one. The constant phase flips with
//! the sign of `b` so that `conj(K_A(x, ω)) = K_{A⁻¹}(ω, x)` holds exactly —
//! the inverse matrix always negates `b`, and without the flip the identity
//! picks up a stray quarter turn.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::params::LctParams;
use crate::quaternion::Quaternion;

/// One kernel sample: a phase confined to the `{1, i}` or `{1, j}` plane
/// scaled by `1/√(2π|b|)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelValue {
    pub value: Quaternion,
}

/// `1/√(2π|b|)`, the modulus every kernel sample has.
#[inline]
pub fn amplitude(p: &LctParams) -> f64 {
    1.0 / (2.0 * PI * p.b().abs()).sqrt()
}

#[inline]
fn phase(p: &LctParams, x: f64, w: f64) -> f64 {
    let b = p.b();
    p.a() / (2.0 * b) * x * x - x * w / b + p.d() / (2.0 * b) * w * w - b.signum() * FRAC_PI_4
}

/// Left kernel sample at `(x1, ω1)`, confined to the `{1, i}` plane.
#[inline]
pub fn kernel_i(p: &LctParams, x1: f64, w1: f64) -> KernelValue {
    KernelValue {
        value: Quaternion::exp_i(phase(p, x1, w1)).scale(amplitude(p)),
    }
}

/// Right kernel sample at `(x2, ω2)`, confined to the `{1, j}` plane.
#[inline]
pub fn kernel_j(p: &LctParams, x2: f64, w2: f64) -> KernelValue {
    KernelValue {
        value: Quaternion::exp_j(phase(p, x2, w2)).scale(amplitude(p)),
    }
}

/// Conjugate left kernel, as used by the inverse transform.
#[inline]
pub fn kernel_i_conj(p: &LctParams, x1: f64, w1: f64) -> KernelValue {
    KernelValue {
        value: kernel_i(p, x1, w1).value.conj(),
    }
}

/// Conjugate right kernel, as used by the inverse transform.
#[inline]
pub fn kernel_j_conj(p: &LctParams, x2: f64, w2: f64) -> KernelValue {
    KernelValue {
        value: kernel_j(p, x2, w2).value.conj(),
    }
}

/// Forward left-kernel table, layout `[ws.len() × xs.len()]`:
/// `entry[l][i] = K_i(xs[i], ws[l])` (rows = output frequency, columns = the
/// summed spatial coordinate).
pub(crate) fn table_i(p: &LctParams, xs: &[f64], ws: &[f64]) -> Vec<Quaternion> {
    let amp = amplitude(p);
    let mut out = Vec::with_capacity(ws.len() * xs.len());
    for &w in ws {
        for &x in xs {
            out.push(Quaternion::exp_i(phase(p, x, w)).scale(amp));
        }
    }
    out
}

/// Forward right-kernel table, layout `[xs.len() × ws.len()]`:
/// `entry[i][l] = K_j(xs[i], ws[l])` (rows = the summed spatial coordinate,
/// columns = output frequency).
pub(crate) fn table_j(p: &LctParams, xs: &[f64], ws: &[f64]) -> Vec<Quaternion> {
    let amp = amplitude(p);
    let mut out = Vec::with_capacity(xs.len() * ws.len());
    for &x in xs {
        for &w in ws {
            out.push(Quaternion::exp_j(phase(p, x, w)).scale(amp));
        }
    }
    out
}

/// Inverse left-kernel table, layout `[xs.len() × ws.len()]`:
/// `entry[i][l] = conj(K_i(xs[i], ws[l]))` (rows = output position, columns =
/// the summed frequency). The kernel phase is not symmetric in `(x, ω)`, so
/// this orientation cannot be obtained by transposing [`table_i`] arguments.
pub(crate) fn table_i_conj(p: &LctParams, xs: &[f64], ws: &[f64]) -> Vec<Quaternion> {
    let amp = amplitude(p);
    let mut out = Vec::with_capacity(xs.len() * ws.len());
    for &x in xs {
        for &w in ws {
            out.push(Quaternion::exp_i(-phase(p, x, w)).scale(amp));
        }
    }
    out
}

/// Inverse right-kernel table, layout `[ws.len() × xs.len()]`:
/// `entry[l][i] = conj(K_j(xs[i], ws[l]))` (rows = the summed frequency,
/// columns = output position).
pub(crate) fn table_j_conj(p: &LctParams, xs: &[f64], ws: &[f64]) -> Vec<Quaternion> {
    let amp = amplitude(p);
    let mut out = Vec::with_capacity(ws.len() * xs.len());
    for &w in ws {
        for &x in xs {
            out.push(Quaternion::exp_j(-phase(p, x, w)).scale(amp));
        }
    }
    out
}
