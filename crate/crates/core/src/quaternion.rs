//! Quaternion arithmetic over `f64`.
//!
//! A quaternion is written scalar-first as `s + x·i + y·j + z·k`. The basis
//! obeys Hamilton's rules: `i² = j² = k² = −1`, `ij = −ji = k`, `jk = −kj = i`,
//! `ki = −ik = j`. Multiplication is non-commutative, so every caller in this
//! crate states explicitly whether a factor multiplies from the left or from
//! the right.
//!
//! All operations here are pure value functions on plain `Copy` data; no
//! normalization or clamping is ever applied, so algebraic identities hold at
//! raw IEEE-754 double precision.

use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// One element of the quaternion algebra, stored as four doubles in
/// `(s, x, y, z)` order.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    /// Scalar part.
    pub s: f64,
    /// Coefficient of i.
    pub x: f64,
    /// Coefficient of j.
    pub y: f64,
    /// Coefficient of k.
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(s: f64, x: f64, y: f64, z: f64) -> Self {
        Self { s, x, y, z }
    }

    /// A real quaternion `r + 0i + 0j + 0k`.
    #[inline]
    pub const fn real(r: f64) -> Self {
        Self::new(r, 0.0, 0.0, 0.0)
    }

    /// Unit phase in the `{1, i}` plane: `cosθ + i·sinθ`.
    #[inline]
    pub fn exp_i(theta: f64) -> Self {
        let (sin, cos) = theta.sin_cos();
        Self::new(cos, sin, 0.0, 0.0)
    }

    /// Unit phase in the `{1, j}` plane: `cosθ + j·sinθ`.
    #[inline]
    pub fn exp_j(theta: f64) -> Self {
        let (sin, cos) = theta.sin_cos();
        Self::new(cos, 0.0, sin, 0.0)
    }

    /// Conjugate: negates the vector part.
    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.s, -self.x, -self.y, -self.z)
    }

    /// The real scalar part `[q]₀`.
    #[inline]
    pub fn scalar_part(self) -> f64 {
        self.s
    }

    /// Squared norm `s² + x² + y² + z²`.
    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.s * self.s + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Euclidean norm `|q| = √(q q̄)`.
    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.s.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Scale by a real factor.
    #[inline]
    pub fn scale(self, t: f64) -> Self {
        Self::new(self.s * t, self.x * t, self.y * t, self.z * t)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self::new(
            self.s + rhs.s,
            self.x + rhs.x,
            self.y + rhs.y,
            self.z + rhs.z,
        )
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self::new(
            self.s - rhs.s,
            self.x - rhs.x,
            self.y - rhs.y,
            self.z - rhs.z,
        )
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.s, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;

    /// Hamilton product. Expanded bilinear form of the basis table.
    #[inline]
    fn mul(self, q: Self) -> Self {
        let p = self;
        Self::new(
            p.s * q.s - p.x * q.x - p.y * q.y - p.z * q.z,
            p.s * q.x + p.x * q.s + p.y * q.z - p.z * q.y,
            p.s * q.y - p.x * q.z + p.y * q.s + p.z * q.x,
            p.s * q.z + p.x * q.y - p.y * q.x + p.z * q.s,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, t: f64) -> Self {
        self.scale(t)
    }
}
