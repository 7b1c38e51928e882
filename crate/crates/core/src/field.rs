//! Uniform 2D sampling lattices and quaternion-valued sample fields.
//!
//! A [`Grid2D`] is a tensor lattice `x(i1, i2) = (x0₁ + i1·dx₁, x0₂ + i2·dx₂)`
//! and a [`QField2D`] binds one quaternion sample to each lattice point, in
//! row-major order (axis 1 slow, axis 2 fast).
//!
//! Quadrature is composite midpoint: every sample carries the uniform weight
//! `dx₁·dx₂`, and samples are understood as cell-midpoint values. All
//! reductions run in the fixed tree order of [`crate::sum`]. Fields are
//! immutable once built; every operation returns a new field.

use crate::error::{QlctError, Result};
use crate::quaternion::Quaternion;
use crate::sum::tree_sum_fn;

/// Relative tolerance for "lands on the lattice" checks.
pub const GRID_ALIGN_TOL: f64 = 1e-9;

/// Uniform sampling lattice for one 2D domain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid2D {
    x0: [f64; 2],
    dx: [f64; 2],
    n: [usize; 2],
}

impl Grid2D {
    pub fn new(x0: [f64; 2], dx: [f64; 2], n: [usize; 2]) -> Result<Self> {
        for k in 0..2 {
            if !x0[k].is_finite() || !dx[k].is_finite() {
                return Err(QlctError::BadGrid(format!("non-finite grid spec on axis {}", k + 1)));
            }
            if dx[k] <= 0.0 {
                return Err(QlctError::BadGrid(format!(
                    "spacing dx{} = {} must be > 0",
                    k + 1,
                    dx[k]
                )));
            }
            if n[k] < 2 {
                return Err(QlctError::BadGrid(format!(
                    "count n{} = {} must be >= 2",
                    k + 1,
                    n[k]
                )));
            }
            let extent = dx[k] * (n[k] as f64 - 1.0);
            if !extent.is_finite() {
                return Err(QlctError::BadGrid(format!("axis {} extent overflows", k + 1)));
            }
        }
        Ok(Self { x0, dx, n })
    }

    /// Midpoint lattice of `n × n` cells covering `[−half, half]²`: spacing
    /// `2·half/n`, symmetric about the origin.
    pub fn centered(half_extent: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(QlctError::BadGrid(format!("count {n} must be >= 2")));
        }
        let dx = 2.0 * half_extent / n as f64;
        let x0 = -(n as f64 - 1.0) / 2.0 * dx;
        Self::new([x0, x0], [dx, dx], [n, n])
    }

    #[inline]
    pub fn x0(&self) -> [f64; 2] {
        self.x0
    }
    #[inline]
    pub fn dx(&self) -> [f64; 2] {
        self.dx
    }
    #[inline]
    pub fn n(&self) -> [usize; 2] {
        self.n
    }

    /// Total number of lattice points.
    #[inline]
    pub fn len(&self) -> usize {
        self.n[0] * self.n[1]
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false // n >= 2 on both axes by construction
    }

    /// Quadrature weight of one sample.
    #[inline]
    pub fn cell_area(&self) -> f64 {
        self.dx[0] * self.dx[1]
    }

    /// Coordinate of lattice point `(i1, i2)`.
    #[inline]
    pub fn coord(&self, i1: usize, i2: usize) -> [f64; 2] {
        [
            self.x0[0] + i1 as f64 * self.dx[0],
            self.x0[1] + i2 as f64 * self.dx[1],
        ]
    }

    /// Coordinate along one axis (`axis` is 0 or 1).
    #[inline]
    pub fn axis_coord(&self, axis: usize, idx: usize) -> f64 {
        self.x0[axis] + idx as f64 * self.dx[axis]
    }

    /// All coordinates along one axis.
    pub fn axis_coords(&self, axis: usize) -> Vec<f64> {
        (0..self.n[axis]).map(|i| self.axis_coord(axis, i)).collect()
    }

    #[inline]
    pub fn flat(&self, i1: usize, i2: usize) -> usize {
        i1 * self.n[1] + i2
    }

    /// Whether the lattice is symmetric about the origin on both axes
    /// (`x0 = −(n−1)·dx/2`).
    pub fn symmetry_error(&self) -> [f64; 2] {
        [
            self.x0[0] + (self.n[0] as f64 - 1.0) / 2.0 * self.dx[0],
            self.x0[1] + (self.n[1] as f64 - 1.0) / 2.0 * self.dx[1],
        ]
    }

    pub fn require_symmetric(&self) -> Result<()> {
        let err = self.symmetry_error();
        for k in 0..2 {
            if err[k].abs() > GRID_ALIGN_TOL * self.dx[k].max(1.0) {
                return Err(QlctError::AsymmetricGrid { axis: k + 1 });
            }
        }
        Ok(())
    }

    /// Integer lattice steps of a displacement, if it aligns within
    /// [`GRID_ALIGN_TOL`] of the spacing.
    pub fn steps_of(&self, axis: usize, value: f64) -> Option<i64> {
        let ratio = value / self.dx[axis];
        let rounded = ratio.round();
        if (ratio - rounded).abs() <= GRID_ALIGN_TOL {
            Some(rounded as i64)
        } else {
            None
        }
    }
}

/// A quaternion-valued sample field bound to a [`Grid2D`].
#[derive(Clone, Debug, PartialEq)]
pub struct QField2D {
    grid: Grid2D,
    data: Vec<Quaternion>,
}

impl QField2D {
    /// Binds data to a grid, rejecting wrong lengths and non-finite samples.
    pub fn new(grid: Grid2D, data: Vec<Quaternion>) -> Result<Self> {
        if data.len() != grid.len() {
            return Err(QlctError::BadGrid(format!(
                "data length {} does not match grid size {}",
                data.len(),
                grid.len()
            )));
        }
        for (index, q) in data.iter().enumerate() {
            if !q.is_finite() {
                return Err(QlctError::NonFiniteSample { index });
            }
        }
        Ok(Self { grid, data })
    }

    /// Samples a closure over the lattice. The closure must produce finite
    /// values; this is not re-checked.
    pub fn from_fn(grid: Grid2D, f: impl Fn(f64, f64) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(grid.len());
        for i1 in 0..grid.n()[0] {
            for i2 in 0..grid.n()[1] {
                let [x1, x2] = grid.coord(i1, i2);
                data.push(f(x1, x2));
            }
        }
        Self { grid, data }
    }

    pub fn zeros(grid: Grid2D) -> Self {
        let len = grid.len();
        Self {
            grid,
            data: vec![Quaternion::ZERO; len],
        }
    }

    pub(crate) fn from_raw(grid: Grid2D, data: Vec<Quaternion>) -> Self {
        debug_assert_eq!(grid.len(), data.len());
        Self { grid, data }
    }

    #[inline]
    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    #[inline]
    pub fn data(&self) -> &[Quaternion] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i1: usize, i2: usize) -> Quaternion {
        self.data[self.grid.flat(i1, i2)]
    }

    fn require_same_grid(&self, other: &Self) -> Result<()> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(QlctError::GridMismatch)
        }
    }

    /// Quadrature inner product `Σ f(x)·conj(g(x))·dx₁dx₂` in fixed tree order.
    pub fn inner_product(&self, other: &Self) -> Result<Quaternion> {
        self.require_same_grid(other)?;
        let f = &self.data;
        let g = &other.data;
        let sum: Quaternion = tree_sum_fn(0, f.len(), &|i| f[i] * g[i].conj());
        Ok(sum.scale(self.grid.cell_area()))
    }

    /// Scalar part of the inner product; symmetric in its arguments.
    pub fn scalar_inner_product(&self, other: &Self) -> Result<f64> {
        Ok(self.inner_product(other)?.scalar_part())
    }

    /// `‖f‖ = √⟨f, f⟩`.
    pub fn l2_norm(&self) -> f64 {
        let sum: f64 = tree_sum_fn(0, self.data.len(), &|i| self.data[i].norm_sqr());
        (sum * self.grid.cell_area()).sqrt()
    }

    /// `‖f − g‖ / ‖f‖` (absolute distance when `f` is zero).
    pub fn rel_l2_distance(&self, other: &Self) -> Result<f64> {
        self.require_same_grid(other)?;
        let diff: f64 = tree_sum_fn(0, self.data.len(), &|i| {
            (self.data[i] - other.data[i]).norm_sqr()
        });
        let dist = (diff * self.grid.cell_area()).sqrt();
        let norm = self.l2_norm();
        Ok(if norm > 0.0 { dist / norm } else { dist })
    }

    /// Translation by `r` (samples move to `x + r`, i.e. `f(x − r)`). `r` must
    /// be a lattice displacement; vacated cells are zero-filled.
    pub fn shift(&self, r: [f64; 2]) -> Result<Self> {
        let mut steps = [0i64; 2];
        for k in 0..2 {
            steps[k] = self.grid.steps_of(k, r[k]).ok_or(QlctError::NonGridShift {
                axis: k + 1,
                value: r[k],
                step: self.grid.dx()[k],
            })?;
        }
        let [n1, n2] = self.grid.n();
        let mut data = vec![Quaternion::ZERO; self.data.len()];
        for i1 in 0..n1 {
            let j1 = i1 as i64 - steps[0];
            if j1 < 0 || j1 >= n1 as i64 {
                continue;
            }
            for i2 in 0..n2 {
                let j2 = i2 as i64 - steps[1];
                if j2 < 0 || j2 >= n2 as i64 {
                    continue;
                }
                data[self.grid.flat(i1, i2)] = self.data[self.grid.flat(j1 as usize, j2 as usize)];
            }
        }
        Ok(Self {
            grid: self.grid,
            data,
        })
    }

    /// Two-sided modulation `exp_i(x₁s₁)·f(x)·exp_j(x₂s₂)`.
    pub fn modulate(&self, s: [f64; 2]) -> Self {
        Self::from_fn_indexed(self.grid, |i1, i2, x1, x2| {
            Quaternion::exp_i(x1 * s[0]) * self.data[self.grid.flat(i1, i2)] * Quaternion::exp_j(x2 * s[1])
        })
    }

    /// Point reflection `f(−x)`; the grid must be symmetric about the origin.
    pub fn parity(&self) -> Result<Self> {
        self.grid.require_symmetric()?;
        let [n1, n2] = self.grid.n();
        let mut data = Vec::with_capacity(self.data.len());
        for i1 in 0..n1 {
            for i2 in 0..n2 {
                data.push(self.data[self.grid.flat(n1 - 1 - i1, n2 - 1 - i2)]);
            }
        }
        Ok(Self {
            grid: self.grid,
            data,
        })
    }

    /// Pointwise left multiplication by a constant quaternion.
    pub fn left_mul(&self, q: Quaternion) -> Self {
        Self {
            grid: self.grid,
            data: self.data.iter().map(|&v| q * v).collect(),
        }
    }

    /// Pointwise right multiplication by a constant quaternion.
    pub fn right_mul(&self, q: Quaternion) -> Self {
        Self {
            grid: self.grid,
            data: self.data.iter().map(|&v| v * q).collect(),
        }
    }

    /// Pointwise scaling by a real constant.
    pub fn scale(&self, t: f64) -> Self {
        Self {
            grid: self.grid,
            data: self.data.iter().map(|&v| v.scale(t)).collect(),
        }
    }

    /// Pointwise sum; grids must match.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.require_same_grid(other)?;
        Ok(Self {
            grid: self.grid,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        })
    }

    fn from_fn_indexed(grid: Grid2D, f: impl Fn(usize, usize, f64, f64) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(grid.len());
        for i1 in 0..grid.n()[0] {
            for i2 in 0..grid.n()[1] {
                let [x1, x2] = grid.coord(i1, i2);
                data.push(f(i1, i2, x1, x2));
            }
        }
        Self { grid, data }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sum::{par_tree_sum, tree_sum};
    use proptest::prelude::*;

    fn gaussian_minus6_6() -> QField2D {
        let grid = Grid2D::centered(6.0, 128).unwrap();
        QField2D::from_fn(grid, |x1, x2| Quaternion::real((-x1 * x1 - x2 * x2).exp()))
    }

    #[test]
    fn grid_validation() {
        assert!(Grid2D::new([0.0, 0.0], [0.1, 0.1], [2, 2]).is_ok());
        assert!(Grid2D::new([0.0, 0.0], [0.0, 0.1], [2, 2]).is_err());
        assert!(Grid2D::new([0.0, 0.0], [0.1, 0.1], [1, 2]).is_err());
        assert!(Grid2D::new([f64::NAN, 0.0], [0.1, 0.1], [2, 2]).is_err());
    }

    #[test]
    fn centered_grid_is_symmetric() {
        for n in [2usize, 5, 16, 127] {
            let g = Grid2D::centered(4.0, n).unwrap();
            g.require_symmetric().unwrap();
            assert!((g.dx()[0] - 8.0 / n as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn field_construction_rejects_bad_data() {
        let grid = Grid2D::centered(1.0, 4).unwrap();
        assert!(matches!(
            QField2D::new(grid, vec![Quaternion::ZERO; 3]),
            Err(QlctError::BadGrid(_))
        ));
        let mut data = vec![Quaternion::ZERO; 16];
        data[7] = Quaternion::new(0.0, f64::NAN, 0.0, 0.0);
        assert!(matches!(
            QField2D::new(grid, data),
            Err(QlctError::NonFiniteSample { index: 7 })
        ));
    }

    #[test]
    fn self_inner_product_is_real() {
        let grid = Grid2D::centered(2.0, 16).unwrap();
        let f = QField2D::from_fn(grid, |x1, x2| {
            Quaternion::new((x1 + x2).sin(), x1.cos(), (x2 * 2.0).sin(), 0.3)
        });
        let ip = f.inner_product(&f).unwrap();
        let s = ip.scalar_part();
        assert!(s > 0.0);
        assert!(ip.x.abs() <= 1e-12 * s);
        assert!(ip.y.abs() <= 1e-12 * s);
        assert!(ip.z.abs() <= 1e-12 * s);
        assert!((f.l2_norm() - s.sqrt()).abs() <= 1e-12 * s.sqrt());
    }

    #[test]
    fn gaussian_inner_product_matches_closed_form() {
        // ∫ e^{−2x²} dx = √(π/2) per axis, so ⟨f, f⟩ = π/2
        let f = gaussian_minus6_6();
        let got = f.inner_product(&f).unwrap().scalar_part();
        let expect = std::f64::consts::PI / 2.0;
        assert!((got - expect).abs() <= 1e-8, "got {got}, expect {expect}");
    }

    #[test]
    fn inner_product_matches_naive_sum() {
        // plain sequential accumulation as the independent oracle
        let grid = Grid2D::centered(3.0, 24).unwrap();
        let f = QField2D::from_fn(grid, |x1, x2| {
            Quaternion::new(x1.sin(), (x1 * x2).cos(), x2.sin(), (x1 - x2).cos())
        });
        let g = QField2D::from_fn(grid, |x1, x2| {
            Quaternion::new((2.0 * x2).cos(), 0.5 * x1, -x2, 0.1)
        });
        let mut naive = Quaternion::ZERO;
        for (a, b) in f.data().iter().zip(g.data()) {
            naive += *a * b.conj();
        }
        let naive = naive.scale(grid.cell_area());
        let fast = f.inner_product(&g).unwrap();
        assert!((naive - fast).norm() <= 1e-12 * (1.0 + naive.norm()));
    }

    #[test]
    fn right_i_multiplication_rotates_inner_product() {
        let f = gaussian_minus6_6();
        let g = f.right_mul(Quaternion::I);
        let got = f.inner_product(&g).unwrap();
        let expect = f.inner_product(&f).unwrap() * Quaternion::I.conj();
        assert!((got - expect).norm() <= 1e-12 * (1.0 + expect.norm()));
    }

    #[test]
    fn scalar_inner_product_is_symmetric() {
        let grid = Grid2D::centered(2.0, 12).unwrap();
        let f = QField2D::from_fn(grid, |x1, x2| Quaternion::new(x1, x2, x1 * x2, 1.0));
        let g = QField2D::from_fn(grid, |x1, x2| Quaternion::new(x2, -x1, 0.5, x1 + x2));
        let ab = f.scalar_inner_product(&g).unwrap();
        let ba = g.scalar_inner_product(&f).unwrap();
        assert!((ab - ba).abs() <= 1e-12 * (1.0 + ab.abs()));
        let z = QField2D::zeros(grid);
        assert_eq!(z.scalar_inner_product(&f).unwrap(), 0.0);
    }

    #[test]
    fn grid_mismatch_is_rejected() {
        let a = QField2D::zeros(Grid2D::centered(1.0, 4).unwrap());
        let b = QField2D::zeros(Grid2D::centered(1.0, 8).unwrap());
        assert!(matches!(a.inner_product(&b), Err(QlctError::GridMismatch)));
    }

    #[test]
    fn quadrature_is_deterministic_under_parallel_partitioning() {
        let f = gaussian_minus6_6();
        let terms: Vec<Quaternion> = f.data().iter().map(|q| *q * q.conj()).collect();
        let seq = tree_sum(&terms);
        let par = par_tree_sum(&terms);
        assert_eq!(seq.s.to_bits(), par.s.to_bits());
        let ip = f.inner_product(&f).unwrap();
        assert_eq!(ip.s.to_bits(), (seq.scale(f.grid().cell_area())).s.to_bits());
    }

    #[test]
    fn shift_examples() {
        let grid = Grid2D::centered(2.0, 8).unwrap();
        let dx = grid.dx()[0];
        let mut data = vec![Quaternion::ZERO; grid.len()];
        data[grid.flat(3, 4)] = Quaternion::ONE;
        let f = QField2D::new(grid, data).unwrap();

        let same = f.shift([0.0, 0.0]).unwrap();
        assert_eq!(same, f);

        let moved = f.shift([dx, 0.0]).unwrap();
        assert_eq!(moved.get(4, 4), Quaternion::ONE);
        assert_eq!(moved.get(3, 4), Quaternion::ZERO);

        assert!(matches!(
            f.shift([0.3 * dx, 0.0]),
            Err(QlctError::NonGridShift { axis: 1, .. })
        ));
    }

    #[test]
    fn interior_shift_preserves_norm() {
        let grid = Grid2D::centered(8.0, 64).unwrap();
        let f = QField2D::from_fn(grid, |x1, x2| {
            Quaternion::real((-(x1 * x1 + x2 * x2) * 2.0).exp())
        });
        let dx = grid.dx()[0];
        let shifted = f.shift([2.0 * dx, -3.0 * dx]).unwrap();
        assert!((shifted.l2_norm() - f.l2_norm()).abs() <= 1e-12 * f.l2_norm());
    }

    #[test]
    fn modulation_preserves_sample_magnitudes() {
        let grid = Grid2D::centered(2.0, 10).unwrap();
        let f = QField2D::from_fn(grid, |x1, x2| Quaternion::new(x1, 0.2, x2, -0.7));
        let m = f.modulate([1.3, -0.8]);
        for (a, b) in f.data().iter().zip(m.data()) {
            assert!((a.norm() - b.norm()).abs() <= 1e-13 * (1.0 + a.norm()));
        }
        assert_eq!(f.modulate([0.0, 0.0]), f);
    }

    #[test]
    fn modulation_of_real_field_lands_in_i_plane() {
        let grid = Grid2D::centered(2.0, 10).unwrap();
        let f = QField2D::from_fn(grid, |x1, x2| Quaternion::real((-(x1 * x1) - x2 * x2).exp()));
        let sigma = 0.9;
        let m = f.modulate([sigma, 0.0]);
        for i1 in 0..10 {
            for i2 in 0..10 {
                let [x1, _] = grid.coord(i1, i2);
                let orig = f.get(i1, i2).s;
                let got = m.get(i1, i2);
                assert!((got.s - (x1 * sigma).cos() * orig).abs() <= 1e-13);
                assert!((got.x - (x1 * sigma).sin() * orig).abs() <= 1e-13);
                assert_eq!(got.y, 0.0);
                assert_eq!(got.z, 0.0);
            }
        }
    }

    #[test]
    fn parity_examples() {
        let grid = Grid2D::centered(2.0, 9).unwrap();
        let f = QField2D::from_fn(grid, |x1, x2| Quaternion::new(x1 + 2.0 * x2, x1 * x1, 0.0, x2));
        let p = f.parity().unwrap();
        assert_eq!(p.parity().unwrap(), f);
        for i1 in 0..9 {
            for i2 in 0..9 {
                assert_eq!(p.get(i1, i2), f.get(8 - i1, 8 - i2));
            }
        }
        // even field is a parity fixed point
        let even = QField2D::from_fn(grid, |x1, x2| Quaternion::real((-(x1 * x1) - x2 * x2).exp()));
        let pe = even.parity().unwrap();
        assert!(pe.rel_l2_distance(&even).unwrap() <= 1e-14);

        let off = Grid2D::new([0.0, 0.0], [0.5, 0.5], [4, 4]).unwrap();
        let g = QField2D::zeros(off);
        assert!(matches!(g.parity(), Err(QlctError::AsymmetricGrid { .. })));
    }

    #[test]
    fn isometries_on_interior_supported_fields() {
        let grid = Grid2D::centered(8.0, 48).unwrap();
        let f = QField2D::from_fn(grid, |x1, x2| {
            let env = (-(x1 * x1 + x2 * x2)).exp();
            Quaternion::new(env, 0.3 * env, -0.2 * env, 0.1 * env)
        });
        let n = f.l2_norm();
        let dx = grid.dx()[0];
        assert!((f.shift([dx, dx]).unwrap().l2_norm() - n).abs() <= 1e-12 * n);
        assert!((f.modulate([2.0, -1.0]).l2_norm() - n).abs() <= 1e-12 * n);
        assert!((f.parity().unwrap().l2_norm() - n).abs() <= 1e-12 * n);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn cauchy_schwarz(seed in 0u64..1000) {
            let grid = Grid2D::centered(2.0, 12).unwrap();
            let mut state = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1);
            let mut next = move || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
            };
            let mut fd = Vec::new();
            let mut gd = Vec::new();
            for _ in 0..grid.len() {
                fd.push(Quaternion::new(next(), next(), next(), next()));
                gd.push(Quaternion::new(next(), next(), next(), next()));
            }
            let f = QField2D::new(grid, fd).unwrap();
            let g = QField2D::new(grid, gd).unwrap();
            let ip = f.inner_product(&g).unwrap().norm_sqr();
            let bound = f.l2_norm().powi(2) * g.l2_norm().powi(2);
            prop_assert!(ip <= bound * (1.0 + 1e-10));
        }
    }
}
