//! Closed-form windowed transform of a separable Gaussian against the
//! square-quadrant window, evaluated through a complex error function — the
//! analytic ground truth the quadrature engine is checked against.
//!
//! The window is `+1` on `[0, ½)²`, `−1` on `[½, 1)²`, `0` elsewhere: a
//! difference of two separable box indicators. Against
//! `f = e^{−(α₁x₁² + α₂x₂²)}` each axis factor completes the square under the
//! kernel's quadratic phase, so the two-sided transform reduces to
//!
//! ```text
//! G(w, u) = I₁[u₁, u₁+½] · I₂[u₂, u₂+½] − I₁[u₁+½, u₁+1] · I₂[u₂+½, u₂+1]
//! I[p, q] = C·J·(erf(A·q + B) − erf(A·p + B))
//! A = √((2bα − ι a)/(2b))           B = ι ω / √(2b(2bα − ι a))
//! C = 1/(2√(2bα − ι a))             J = e^{B² + ι(d ω²/(2b) − π/4)}
//! ```
//!
//! with `ι = i` on axis 1 and `ι = j` on axis 2; each factor lives entirely
//! in its own commutative plane, and the final product keeps the i-factor on
//! the left. All square roots are principal (`b > 0` and `α > 0` keep the
//! arguments in the right half plane).

use num_complex::Complex64;

use crate::field::{Grid2D, QField2D};
use crate::params::{LctPair, LctParams};
use crate::qlct::qlct_forward;
use crate::quaternion::Quaternion;
use crate::{Result, error::QlctError};

/// Largest |z| the error-function evaluator accepts.
pub const ERF_DOMAIN_BOUND: f64 = 12.0;

/// Which commutative plane a [`ComplexInPlane`] value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Plane {
    I,
    J,
}

/// A quaternion confined to `span{1, i}` or `span{1, j}`. Products within one
/// plane follow ordinary complex arithmetic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexInPlane {
    pub re: f64,
    pub im: f64,
    pub plane: Plane,
}

impl ComplexInPlane {
    pub fn new_i(re: f64, im: f64) -> Self {
        Self {
            re,
            im,
            plane: Plane::I,
        }
    }

    pub fn new_j(re: f64, im: f64) -> Self {
        Self {
            re,
            im,
            plane: Plane::J,
        }
    }

    /// Embeds into the full algebra with the other two components zero.
    pub fn embed(self) -> Quaternion {
        match self.plane {
            Plane::I => Quaternion::new(self.re, self.im, 0.0, 0.0),
            Plane::J => Quaternion::new(self.re, 0.0, self.im, 0.0),
        }
    }

    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn conj_in_plane(self) -> Self {
        Self {
            re: self.re,
            im: -self.im,
            ..self
        }
    }

    fn as_c64(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    fn from_c64(z: Complex64, plane: Plane) -> Self {
        Self {
            re: z.re,
            im: z.im,
            plane,
        }
    }
}

/// Entire-function erf on a plane-tagged argument. Odd, and commutes with
/// in-plane conjugation. Arguments must satisfy `|z| ≤ 12`.
pub fn erf_complex(z: ComplexInPlane) -> Result<ComplexInPlane> {
    let abs = z.abs();
    if !(abs <= ERF_DOMAIN_BOUND) {
        return Err(QlctError::DomainTooLarge {
            abs,
            bound: ERF_DOMAIN_BOUND,
        });
    }
    Ok(ComplexInPlane::from_c64(erf_c64(z.as_c64()), z.plane))
}

/// erf over `Complex64`: Maclaurin series where the alternating cancellation
/// is bounded (|Re z| ≤ 3 — the cancellation grows with the real part, not
/// with |z|), Laplace continued fraction of erfc elsewhere.
fn erf_c64(z: Complex64) -> Complex64 {
    if z.re < 0.0 {
        return -erf_c64(-z);
    }
    if z.re <= 3.0 {
        erf_series(z)
    } else {
        Complex64::new(1.0, 0.0) - erfc_continued_fraction(z)
    }
}

/// `erf(z) = (2/√π) Σₙ (−1)ⁿ z^(2n+1) / (n!(2n+1))`, Kahan-compensated per
/// component.
fn erf_series(z: Complex64) -> Complex64 {
    let z2 = z * z;
    let mut term = z;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    for n in 0..300usize {
        let contrib = term / (2 * n + 1) as f64;
        let y = contrib - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        term = term * (-z2) / (n as f64 + 1.0);
        if term.norm() / (2 * n + 3) as f64 <= 1e-18 * (1.0 + sum.norm()) {
            break;
        }
    }
    sum * (2.0 / std::f64::consts::PI.sqrt())
}

/// `erfc(z) = e^{−z²}/√π · 1/(z + (1/2)/(z + (2/2)/(z + (3/2)/(z + …))))`,
/// evaluated by backward recurrence. Used only for `Re z > 3`, where the
/// fraction converges fast.
fn erfc_continued_fraction(z: Complex64) -> Complex64 {
    const DEPTH: usize = 160;
    let mut tail = z;
    for n in (1..=DEPTH).rev() {
        tail = z + (n as f64 / 2.0) / tail;
    }
    (-z * z).exp() / (std::f64::consts::PI.sqrt() * tail)
}

/// The square-quadrant window sampled on a grid: `+1` on `[0, ½)²`, `−1` on
/// `[½, 1)²`, `0` elsewhere.
pub fn haar_window(grid: &Grid2D) -> QField2D {
    QField2D::from_fn(*grid, |x1, x2| Quaternion::real(haar_value(x1, x2)))
}

/// Pointwise window value at arbitrary coordinates.
pub fn haar_value(x1: f64, x2: f64) -> f64 {
    if (0.0..0.5).contains(&x1) && (0.0..0.5).contains(&x2) {
        1.0
    } else if (0.5..1.0).contains(&x1) && (0.5..1.0).contains(&x2) {
        -1.0
    } else {
        0.0
    }
}

/// Separable Gaussian `e^{−(α₁x₁² + α₂x₂²)}`; both widths must be positive.
pub fn gaussian_signal(grid: &Grid2D, alpha: [f64; 2]) -> Result<QField2D> {
    for (k, &a) in alpha.iter().enumerate() {
        if !(a > 0.0) {
            return Err(QlctError::NonPositiveAlpha {
                axis: k + 1,
                value: a,
            });
        }
    }
    Ok(QField2D::from_fn(*grid, |x1, x2| {
        Quaternion::real((-(alpha[0] * x1 * x1 + alpha[1] * x2 * x2)).exp())
    }))
}

/// One axis factor of the closed form over the sub-interval `[u+lo, u+hi]`.
fn axis_factor(
    p: &LctParams,
    alpha: f64,
    w: f64,
    u: f64,
    lo: f64,
    hi: f64,
    axis: usize,
) -> Result<Complex64> {
    let b = p.b();
    if b <= 0.0 {
        return Err(QlctError::NegativeB { axis });
    }
    let root = 2.0 * b * alpha - Complex64::i() * p.a(); // right half plane
    let a_coef = (root / (2.0 * b)).sqrt();
    let b_coef = Complex64::i() * w / (2.0 * b * root).sqrt();
    let c_coef = 0.5 / root.sqrt();
    let j_coef = (b_coef * b_coef
        + Complex64::i() * (p.d() * w * w / (2.0 * b) - std::f64::consts::FRAC_PI_4))
        .exp();
    let hi_arg = a_coef * (u + hi) + b_coef;
    let lo_arg = a_coef * (u + lo) + b_coef;
    for arg in [hi_arg, lo_arg] {
        let abs = arg.norm();
        if !(abs <= ERF_DOMAIN_BOUND) {
            return Err(QlctError::DomainTooLarge {
                abs,
                bound: ERF_DOMAIN_BOUND,
            });
        }
    }
    Ok(c_coef * j_coef * (erf_c64(hi_arg) - erf_c64(lo_arg)))
}

/// Product of an i-plane factor (left) and a j-plane factor (right):
/// `(p₀ + i·p₁)(q₀ + j·q₂) = p₀q₀ + i·p₁q₀ + j·p₀q₂ + k·p₁q₂`.
fn sandwich(zi: Complex64, zj: Complex64) -> Quaternion {
    Quaternion::new(
        zi.re * zj.re,
        zi.im * zj.re,
        zi.re * zj.im,
        zi.im * zj.im,
    )
}

/// Closed-form windowed transform of the Gaussian against the
/// square-quadrant window at one `(w, u)` point.
pub fn analytic_qwlct_gaussian_haar(
    pair: &LctPair,
    alpha: [f64; 2],
    w: [f64; 2],
    u: [f64; 2],
) -> Result<Quaternion> {
    for (k, &a) in alpha.iter().enumerate() {
        if !(a > 0.0) {
            return Err(QlctError::NonPositiveAlpha {
                axis: k + 1,
                value: a,
            });
        }
    }
    let i_lower = axis_factor(&pair.a1, alpha[0], w[0], u[0], 0.0, 0.5, 1)?;
    let i_upper = axis_factor(&pair.a1, alpha[0], w[0], u[0], 0.5, 1.0, 1)?;
    let j_lower = axis_factor(&pair.a2, alpha[1], w[1], u[1], 0.0, 0.5, 2)?;
    let j_upper = axis_factor(&pair.a2, alpha[1], w[1], u[1], 0.5, 1.0, 2)?;
    Ok(sandwich(i_lower, j_lower) - sandwich(i_upper, j_upper))
}

/// Engine-side evaluation of the same point with its refinement diagnostics.
#[derive(Clone, Copy, Debug)]
pub struct QuadratureResult {
    pub value: Quaternion,
    /// Distance between the last two extrapolants, relative to `1 + |value|`.
    pub refinement_error: f64,
    /// Samples per axis of the finest local grid used.
    pub finest_n: usize,
}

/// The same transform point computed by the quadrature engine: the windowed
/// product is sampled on a local midpoint grid covering the translated window
/// support `[u₁, u₁+1] × [u₂, u₂+1]` (grid cells align with the window's sign
/// breaks, so the integrand is smooth inside every cell), pushed through the
/// forward transform, and refined by grid doubling with second-order
/// extrapolation until self-convergence.
pub fn quadrature_qwlct_gaussian_haar(
    pair: &LctPair,
    alpha: [f64; 2],
    w: [f64; 2],
    u: [f64; 2],
    tol: f64,
) -> Result<QuadratureResult> {
    for (k, &a) in alpha.iter().enumerate() {
        if !(a > 0.0) {
            return Err(QlctError::NonPositiveAlpha {
                axis: k + 1,
                value: a,
            });
        }
    }
    let point = |n: usize| -> Quaternion {
        let h = 1.0 / n as f64;
        let grid = Grid2D::new(
            [u[0] + h / 2.0, u[1] + h / 2.0],
            [h, h],
            [n, n],
        )
        .expect("local grid is valid");
        let windowed = QField2D::from_fn(grid, |x1, x2| {
            let env = (-(alpha[0] * x1 * x1 + alpha[1] * x2 * x2)).exp();
            Quaternion::real(env * haar_value(x1 - u[0], x2 - u[1]))
        });
        // two-point frequency lattice anchored at the requested ω
        let wgrid = Grid2D::new(w, [1.0, 1.0], [2, 2]).expect("anchor grid");
        qlct_forward(&windowed, pair, &wgrid).get(0, 0)
    };

    let mut n = 128usize;
    let coarse = point(n);
    let mut mid = point(2 * n);
    let mut prev_extrap = (mid.scale(4.0) - coarse).scale(1.0 / 3.0);
    loop {
        n *= 2;
        let fine = point(2 * n);
        let extrap = (fine.scale(4.0) - mid).scale(1.0 / 3.0);
        let err = (extrap - prev_extrap).norm() / (1.0 + extrap.norm());
        if err <= tol || n >= 2048 {
            return Ok(QuadratureResult {
                value: extrap,
                refinement_error: err,
                finest_n: 2 * n,
            });
        }
        mid = fine;
        prev_extrap = extrap;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    /// Adaptive Simpson quadrature of a real function, the independent
    /// reference for erf on the real axis.
    fn simpson<F: Fn(f64) -> f64 + Copy>(f: F, a: f64, b: f64, tol: f64) -> f64 {
        fn step(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
            (b - a) / 6.0 * (fa + 4.0 * fm + fb)
        }
        fn recurse(
            f: &dyn Fn(f64) -> f64,
            a: f64,
            b: f64,
            fa: f64,
            fm: f64,
            fb: f64,
            whole: f64,
            tol: f64,
            depth: u32,
        ) -> f64 {
            let m = 0.5 * (a + b);
            let lm = 0.5 * (a + m);
            let rm = 0.5 * (m + b);
            let flm = f(lm);
            let frm = f(rm);
            let left = step(a, m, fa, flm, fm);
            let right = step(m, b, fm, frm, fb);
            if depth > 40 || (left + right - whole).abs() <= 15.0 * tol {
                left + right + (left + right - whole) / 15.0
            } else {
                recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth + 1)
                    + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth + 1)
            }
        }
        let m = 0.5 * (a + b);
        let (fa, fm, fb) = (f(a), f(m), f(b));
        let whole = step(a, b, fa, fm, fb);
        recurse(&f, a, b, fa, fm, fb, whole, tol, 0)
    }

    /// erf along the straight contour 0 → z by adaptive Simpson on real and
    /// imaginary parts: the defining integral, independent of the series and
    /// continued-fraction paths under test.
    fn erf_quadrature_oracle(z: Complex64) -> Complex64 {
        let coef = 2.0 / std::f64::consts::PI.sqrt();
        let re = simpson(|t| ((z * t) * (z * t)).scale(-1.0).exp().re, 0.0, 1.0, 1e-14);
        let im = simpson(|t| ((z * t) * (z * t)).scale(-1.0).exp().im, 0.0, 1.0, 1e-14);
        Complex64::new(re, im) * z * coef
    }

    #[test]
    fn erf_real_axis_against_quadrature_oracle() {
        // frozen from the quadrature oracle (agrees with published tables)
        let got = erf_complex(ComplexInPlane::new_i(1.0, 0.0)).unwrap();
        assert!((got.re - 0.842700792949715).abs() <= 1e-12);
        assert!(got.im.abs() <= 1e-15);
        for x in [0.0, 0.1, 0.5, 1.5, 2.9, 3.2, 4.0, 6.0, 9.0, 11.5] {
            let oracle = erf_quadrature_oracle(Complex64::new(x, 0.0));
            let got = erf_complex(ComplexInPlane::new_i(x, 0.0)).unwrap();
            assert!(
                (got.re - oracle.re).abs() <= 1e-12 * (1.0 + oracle.re.abs()),
                "x = {x}: {} vs {}",
                got.re,
                oracle.re
            );
        }
    }

    /// Maclaurin summation in plain (uncompensated) complex arithmetic — the
    /// second independent reference, for imaginary-axis arguments where the
    /// series has no cancellation.
    fn erfi_series_oracle(y: f64) -> f64 {
        let mut term = y;
        let mut sum = 0.0;
        let y2 = y * y;
        for n in 0..400usize {
            sum += term / (2 * n + 1) as f64;
            term = term * y2 / (n as f64 + 1.0);
            if term / (2 * n + 3) as f64 <= 1e-18 * sum {
                break;
            }
        }
        sum * 2.0 / std::f64::consts::PI.sqrt()
    }

    #[test]
    fn erf_imaginary_axis_against_series_oracle() {
        let got = erf_complex(ComplexInPlane::new_j(0.0, 1.0)).unwrap();
        assert!((got.im - 1.650425758797543).abs() <= 1e-12);
        assert!(got.re.abs() <= 1e-15);
        for y in [0.3, 1.0, 2.5, 4.0, 7.0, 11.0] {
            let oracle = erfi_series_oracle(y);
            let got = erf_complex(ComplexInPlane::new_i(0.0, y)).unwrap();
            assert!(
                (got.im - oracle).abs() <= 1e-12 * (1.0 + oracle.abs()),
                "y = {y}: {} vs {oracle}",
                got.im
            );
            assert!(got.re.abs() <= 1e-12 * (1.0 + oracle.abs()));
        }
    }

    #[test]
    fn erf_complex_arguments_against_quadrature_oracle() {
        let samples = [
            (0.7, 0.9),
            (2.5, -1.3),
            (3.4, 0.4),
            (-3.4, 0.4),
            (5.0, 2.0),
            (1.0, -3.0),
            (8.0, 1.5),
            (0.3, 3.1),
        ];
        for (re, im) in samples {
            let oracle = erf_quadrature_oracle(Complex64::new(re, im));
            let got = erf_complex(ComplexInPlane::new_i(re, im)).unwrap();
            let scale = 1.0 + oracle.norm();
            assert!(
                (got.re - oracle.re).abs() <= 1e-12 * scale
                    && (got.im - oracle.im).abs() <= 1e-12 * scale,
                "z = {re}+{im}i: ({}, {}) vs oracle ({}, {})",
                got.re,
                got.im,
                oracle.re,
                oracle.im
            );
        }
    }

    #[test]
    fn erf_is_odd_and_conj_symmetric() {
        let pts = [
            (0.4, 0.2),
            (1.7, -2.0),
            (2.9, 2.9),
            (0.05, 3.4),
            (6.0, 0.7),
        ];
        for (re, im) in pts {
            let z = ComplexInPlane::new_i(re, im);
            let plus = erf_complex(z).unwrap();
            let minus = erf_complex(ComplexInPlane::new_i(-re, -im)).unwrap();
            let scale = 1.0 + plus.abs();
            assert!((plus.re + minus.re).abs() <= 1e-13 * scale);
            assert!((plus.im + minus.im).abs() <= 1e-13 * scale);
            let conj = erf_complex(z.conj_in_plane()).unwrap();
            assert!((conj.re - plus.re).abs() <= 1e-12 * scale);
            assert!((conj.im + plus.im).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn erf_domain_bound() {
        assert!(matches!(
            erf_complex(ComplexInPlane::new_i(10.0, 10.0)),
            Err(QlctError::DomainTooLarge { .. })
        ));
        assert_eq!(
            erf_complex(ComplexInPlane::new_i(0.0, 0.0)).unwrap(),
            ComplexInPlane::new_i(0.0, 0.0)
        );
    }

    #[test]
    fn window_samples() {
        let grid = Grid2D::new([0.125, 0.125], [0.25, 0.25], [4, 4]).unwrap();
        let phi = haar_window(&grid);
        // (0.375, 0.375) lies in the lower quadrant, (0.625, 0.875) the upper
        assert_eq!(phi.get(1, 1).s, 1.0);
        assert_eq!(phi.get(2, 3).s, -1.0);
        assert_eq!(phi.get(1, 3).s, 0.0); // mixed quadrant
        assert_eq!(haar_value(0.25, 0.25), 1.0);
        assert_eq!(haar_value(0.75, 0.75), -1.0);
        assert_eq!(haar_value(0.25, 0.75), 0.0);
        assert_eq!(haar_value(-0.1, 0.25), 0.0);
    }

    #[test]
    fn gaussian_signal_samples() {
        let grid = Grid2D::new([-1.0, -1.0], [1.0, 1.0], [3, 3]).unwrap();
        let f = gaussian_signal(&grid, [1.0, 2.0]).unwrap();
        assert_eq!(f.get(1, 1).s, 1.0); // origin
        assert!((f.get(2, 1).s - (-1.0f64).exp()).abs() <= 1e-15);
        // symmetry f(x) = f(−x)
        assert_eq!(f.get(0, 0).s, f.get(2, 2).s);
        assert!(matches!(
            gaussian_signal(&grid, [0.0, 1.0]),
            Err(QlctError::NonPositiveAlpha { axis: 1, .. })
        ));
    }

    #[test]
    fn analytic_golden_value_at_origin() {
        // Fourier-like parameters, α = (1, 1), w = u = 0. Frozen from the
        // self-converged quadrature engine; equals
        // (erf(½)² − (erf(1) − erf(½))²)/16 times (1, −1, −1, 1).
        let got = analytic_qwlct_gaussian_haar(
            &LctPair::fourier(),
            [1.0, 1.0],
            [0.0, 0.0],
            [0.0, 0.0],
        )
        .unwrap();
        let golden = 1.0444168318030612e-2;
        assert!((got.s - golden).abs() <= 1e-8 * golden);
        assert!((got.x + golden).abs() <= 1e-8 * golden);
        assert!((got.y + golden).abs() <= 1e-8 * golden);
        assert!((got.z - golden).abs() <= 1e-8 * golden);
    }

    #[test]
    fn analytic_vanishes_far_from_support() {
        let got = analytic_qwlct_gaussian_haar(
            &LctPair::fourier(),
            [1.0, 1.0],
            [0.0, 0.0],
            [-10.0, -10.0],
        )
        .unwrap();
        assert!(got.norm() <= 1e-10, "far-field value {}", got.norm());
    }

    #[test]
    fn swapping_window_signs_negates_the_result() {
        // the window enters linearly, so flipping its two quadrant signs
        // flips the transform: the upper-minus-lower combination is exactly
        // the negation of lower-minus-upper
        let pair = LctPair::fourier();
        let (alpha, w, u) = ([1.0, 1.0], [0.7, -0.4], [0.25, 0.0]);
        let i_lo = axis_factor(&pair.a1, alpha[0], w[0], u[0], 0.0, 0.5, 1).unwrap();
        let i_hi = axis_factor(&pair.a1, alpha[0], w[0], u[0], 0.5, 1.0, 1).unwrap();
        let j_lo = axis_factor(&pair.a2, alpha[1], w[1], u[1], 0.0, 0.5, 2).unwrap();
        let j_hi = axis_factor(&pair.a2, alpha[1], w[1], u[1], 0.5, 1.0, 2).unwrap();
        let normal = sandwich(i_lo, j_lo) - sandwich(i_hi, j_hi);
        let swapped = sandwich(i_hi, j_hi) - sandwich(i_lo, j_lo);
        assert_eq!(swapped, -normal);
        let api = analytic_qwlct_gaussian_haar(&pair, alpha, w, u).unwrap();
        assert!((api - normal).norm() <= 1e-15);
    }

    #[test]
    fn plane_confinement_of_axis_factors() {
        // i-plane embeddings commute with i, j-plane with j
        let pair = LctPair::fourier();
        let zi = axis_factor(&pair.a1, 1.0, 1.3, -0.2, 0.0, 0.5, 1).unwrap();
        let qi = ComplexInPlane::new_i(zi.re, zi.im).embed();
        let comm = qi * Quaternion::I - Quaternion::I * qi;
        assert!(comm.norm() <= 1e-13);
        let zj = axis_factor(&pair.a2, 1.0, 1.3, -0.2, 0.0, 0.5, 2).unwrap();
        let qj = ComplexInPlane::new_j(zj.re, zj.im).embed();
        let comm = qj * Quaternion::J - Quaternion::J * qj;
        assert!(comm.norm() <= 1e-13);
    }

    #[test]
    fn negative_b_is_rejected_by_the_oracle() {
        let pair = LctPair::new(
            LctParams::validate(0.0, -1.0, 1.0, 0.0).unwrap(),
            LctParams::fourier(),
        );
        assert!(matches!(
            analytic_qwlct_gaussian_haar(&pair, [1.0, 1.0], [0.0, 0.0], [0.0, 0.0]),
            Err(QlctError::NegativeB { axis: 1 })
        ));
    }

    #[test]
    fn quadrature_engine_matches_closed_form_spot_check() {
        let pair = LctPair::fourier();
        let alpha = [1.0, 1.0];
        for (w, u) in [
            ([0.0, 0.0], [0.0, 0.0]),
            ([1.0, -0.5], [0.25, -0.25]),
            ([FRAC_PI_2, 1.0], [0.5, 0.75]),
        ] {
            let analytic = analytic_qwlct_gaussian_haar(&pair, alpha, w, u).unwrap();
            let quad = quadrature_qwlct_gaussian_haar(&pair, alpha, w, u, 1e-8).unwrap();
            let err = (analytic - quad.value).norm() / (1.0 + quad.value.norm());
            assert!(
                err <= 1e-6,
                "w {w:?} u {u:?}: analytic {analytic:?} vs quadrature {:?} (err {err})",
                quad.value
            );
            assert!(quad.refinement_error <= 1e-8);
        }
    }
}
