//! Per-axis matrix parameters of the transform.
//!
//! Each axis of the two-sided transform carries a real 2×2 matrix
//! `(a, b; c, d)` with unit determinant. The `b → 0` limit collapses the
//! kernel onto a chirp-scaled delta that cannot be sampled on a uniform grid,
//! so it is rejected up front rather than special-cased downstream.

use std::fmt;
use std::str::FromStr;

use crate::error::{QlctError, Result};

/// Tolerance on |ad − bc − 1|.
pub const DET_TOL: f64 = 1e-12;
/// Smallest usable |b|.
pub const B_TOL: f64 = 1e-12;

/// Validated matrix parameter of one transform axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LctParams {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl LctParams {
    /// Checks unimodularity and |b| > 0 and returns the validated value.
    pub fn validate(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !((det - 1.0).abs() <= DET_TOL) {
            return Err(QlctError::DetNotOne { det, tol: DET_TOL });
        }
        if !(b.abs() > B_TOL) {
            return Err(QlctError::DegenerateB {
                b_abs: b.abs(),
                tol: B_TOL,
            });
        }
        Ok(Self { a, b, c, d })
    }

    /// The Fourier-like parameter set (0, 1; −1, 0).
    pub fn fourier() -> Self {
        Self {
            a: 0.0,
            b: 1.0,
            c: -1.0,
            d: 0.0,
        }
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }
    #[inline]
    pub fn b(&self) -> f64 {
        self.b
    }
    #[inline]
    pub fn c(&self) -> f64 {
        self.c
    }
    #[inline]
    pub fn d(&self) -> f64 {
        self.d
    }

    /// Matrix inverse `(d, −b; −c, a)`; valid whenever `self` is.
    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }
}

impl fmt::Display for LctParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for LctParams {
    type Err = QlctError;

    /// Parses the CLI flag syntax `a,b,c,d` (comma-separated, no spaces).
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(QlctError::ParseError(format!(
                "expected 4 comma-separated values, found {} in {s:?}",
                parts.len()
            )));
        }
        let mut vals = [0.0f64; 4];
        for (slot, part) in vals.iter_mut().zip(&parts) {
            *slot = part
                .trim()
                .parse::<f64>()
                .map_err(|e| QlctError::ParseError(format!("bad number {part:?}: {e}")))?;
        }
        Self::validate(vals[0], vals[1], vals[2], vals[3])
    }
}

/// The two per-axis parameters of one two-sided transform: `a1` drives the
/// left (i-plane) kernel, `a2` the right (j-plane) kernel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LctPair {
    pub a1: LctParams,
    pub a2: LctParams,
}

impl LctPair {
    pub fn new(a1: LctParams, a2: LctParams) -> Self {
        Self { a1, a2 }
    }

    /// Fourier-like parameters on both axes.
    pub fn fourier() -> Self {
        Self::new(LctParams::fourier(), LctParams::fourier())
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.a1.inverse(), self.a2.inverse())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_examples() {
        let p = LctParams::validate(0.0, 1.0, -1.0, 0.0).unwrap();
        assert_eq!(p, LctParams::fourier());
        assert!(matches!(
            LctParams::validate(1.0, 0.0, 0.0, 1.0),
            Err(QlctError::DegenerateB { .. })
        ));
        LctParams::validate(2.0, 1.0, 1.0, 1.0).unwrap();
        assert!(matches!(
            LctParams::validate(2.0, 1.0, 1.0, 2.0),
            Err(QlctError::DetNotOne { .. })
        ));
        // NaN entries cannot satisfy the determinant check
        assert!(LctParams::validate(f64::NAN, 1.0, -1.0, 0.0).is_err());
    }

    #[test]
    fn inverse_examples() {
        let f = LctParams::fourier();
        assert_eq!(f.inverse(), LctParams::validate(0.0, -1.0, 1.0, 0.0).unwrap());
        let p = LctParams::validate(2.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(p.inverse(), LctParams::validate(1.0, -1.0, -1.0, 2.0).unwrap());
        assert_eq!(p.inverse().inverse(), p);
    }

    #[test]
    fn inverse_composes_to_identity() {
        for (a, b, c, d) in [(0.0, 1.0, -1.0, 0.0), (2.0, 1.0, 1.0, 1.0), (1.0, 1.0, 0.0, 1.0)] {
            let p = LctParams::validate(a, b, c, d).unwrap();
            let q = p.inverse();
            // matrix product p * q
            let m = [
                p.a() * q.a() + p.b() * q.c(),
                p.a() * q.b() + p.b() * q.d(),
                p.c() * q.a() + p.d() * q.c(),
                p.c() * q.b() + p.d() * q.d(),
            ];
            assert!((m[0] - 1.0).abs() <= 1e-12);
            assert!(m[1].abs() <= 1e-12);
            assert!(m[2].abs() <= 1e-12);
            assert!((m[3] - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn validate_is_idempotent() {
        let p = LctParams::validate(2.0, 1.0, 1.0, 1.0).unwrap();
        assert!(LctParams::validate(p.a(), p.b(), p.c(), p.d()).is_ok());
    }

    #[test]
    fn flag_parsing() {
        let p: LctParams = "0,1,-1,0".parse().unwrap();
        assert_eq!(p, LctParams::fourier());
        assert!(matches!(
            "1,0,0,1".parse::<LctParams>(),
            Err(QlctError::DegenerateB { .. })
        ));
        assert!(matches!(
            "1,2,3".parse::<LctParams>(),
            Err(QlctError::ParseError(_))
        ));
        assert!(matches!(
            "a,b,c,d".parse::<LctParams>(),
            Err(QlctError::ParseError(_))
        ));
    }
}
