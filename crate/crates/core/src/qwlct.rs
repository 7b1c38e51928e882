//! The windowed transform: 4D map, inversion, and the predicted images that
//! make the covariance laws (shift, modulation, parity) directly testable.
//!
//! For each window position `u` the map slice is the plain transform of the
//! windowed product `f(x)·conj(φ(x−u))`. The kernel tables do not depend on
//! `u`, so the whole 4D map is `p₁p₂` independent transforms sharing one pair
//! of tables. The `u`-lattice must be a sub-lattice of the signal grid so
//! the translated window needs no interpolation.

use rayon::prelude::*;

use crate::field::{GRID_ALIGN_TOL, Grid2D, QField2D};
use crate::kernel::{table_i, table_i_conj, table_j, table_j_conj};
use crate::params::LctPair;
use crate::qlct::{QlctSpectrum, two_sided_contract};
use crate::quaternion::Quaternion;
use crate::sum::tree_sum_fn;
use crate::{Result, error::QlctError};

/// How many window positions are transformed per parallel batch. Bounds the
/// transient memory of map assembly without touching the result.
const U_BATCH: usize = 64;

/// Dense 4D windowed-transform map, row-major over `(iω₁, iω₂, iu₁, iu₂)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QwlctMap {
    wgrid: Grid2D,
    ugrid: Grid2D,
    data: Vec<Quaternion>,
}

impl QwlctMap {
    pub(crate) fn from_raw(wgrid: Grid2D, ugrid: Grid2D, data: Vec<Quaternion>) -> Self {
        debug_assert_eq!(data.len(), wgrid.len() * ugrid.len());
        Self { wgrid, ugrid, data }
    }

    /// Binds raw data to the two lattices, checking length and finiteness.
    pub fn new(wgrid: Grid2D, ugrid: Grid2D, data: Vec<Quaternion>) -> Result<Self> {
        if data.len() != wgrid.len() * ugrid.len() {
            return Err(QlctError::BadGrid(format!(
                "map data length {} does not match {}x{} lattice",
                data.len(),
                wgrid.len(),
                ugrid.len()
            )));
        }
        for (index, q) in data.iter().enumerate() {
            if !q.is_finite() {
                return Err(QlctError::NonFiniteSample { index });
            }
        }
        Ok(Self { wgrid, ugrid, data })
    }

    #[inline]
    pub fn wgrid(&self) -> &Grid2D {
        &self.wgrid
    }

    #[inline]
    pub fn ugrid(&self) -> &Grid2D {
        &self.ugrid
    }

    #[inline]
    pub fn data(&self) -> &[Quaternion] {
        &self.data
    }

    #[inline]
    pub fn flat(&self, iw1: usize, iw2: usize, iu1: usize, iu2: usize) -> usize {
        ((iw1 * self.wgrid.n()[1] + iw2) * self.ugrid.n()[0] + iu1) * self.ugrid.n()[1] + iu2
    }

    #[inline]
    pub fn get(&self, iw1: usize, iw2: usize, iu1: usize, iu2: usize) -> Quaternion {
        self.data[self.flat(iw1, iw2, iu1, iu2)]
    }

    /// 4D quadrature weight `dω₁dω₂du₁du₂`.
    #[inline]
    pub fn cell_weight(&self) -> f64 {
        self.wgrid.cell_area() * self.ugrid.cell_area()
    }

    /// The slice `G(·, ·, u)` at window-position index `(iu1, iu2)`, bound to
    /// the frequency lattice.
    pub fn slice_at(&self, iu1: usize, iu2: usize) -> QlctSpectrum {
        let [m1, m2] = self.wgrid.n();
        let mut data = Vec::with_capacity(m1 * m2);
        for iw1 in 0..m1 {
            for iw2 in 0..m2 {
                data.push(self.get(iw1, iw2, iu1, iu2));
            }
        }
        QField2D::from_raw(self.wgrid, data)
    }

    /// 4D quadrature inner product `Σ G·conj(H)·dω du` in fixed tree order.
    pub fn inner_product(&self, other: &Self) -> Result<Quaternion> {
        if self.wgrid != other.wgrid || self.ugrid != other.ugrid {
            return Err(QlctError::GridMismatch);
        }
        let sum: Quaternion =
            tree_sum_fn(0, self.data.len(), &|i| self.data[i] * other.data[i].conj());
        Ok(sum.scale(self.cell_weight()))
    }

    /// Map energy `Σ |G|²·dω du`.
    pub fn energy(&self) -> f64 {
        let sum: f64 = tree_sum_fn(0, self.data.len(), &|i| self.data[i].norm_sqr());
        sum * self.cell_weight()
    }

    /// Largest sample magnitude over the computed lattice.
    pub fn sup_abs(&self) -> f64 {
        self.data.iter().map(|q| q.norm()).fold(0.0, f64::max)
    }

    /// `‖G − H‖ / ‖G‖` under the 4D quadrature norm.
    pub fn rel_l2_distance(&self, other: &Self) -> Result<f64> {
        if self.wgrid != other.wgrid || self.ugrid != other.ugrid {
            return Err(QlctError::GridMismatch);
        }
        let diff: f64 = tree_sum_fn(0, self.data.len(), &|i| {
            (self.data[i] - other.data[i]).norm_sqr()
        });
        let dist = (diff * self.cell_weight()).sqrt();
        let norm = self.energy().sqrt();
        Ok(if norm > 0.0 { dist / norm } else { dist })
    }

    /// Relative distance restricted to cells whose resampling source lies in
    /// the computed window: cell `(iω, iu)` counts only when `iω − wsteps`
    /// and `iu − usteps` are in range. Predicted images zero-fill outside
    /// that region, so comparisons against them are meaningful only inside.
    pub fn rel_l2_distance_where_sourced(
        &self,
        other: &Self,
        wsteps: [i64; 2],
        usteps: [i64; 2],
    ) -> Result<f64> {
        if self.wgrid != other.wgrid || self.ugrid != other.ugrid {
            return Err(QlctError::GridMismatch);
        }
        let [m1, m2] = self.wgrid.n();
        let [p1, p2] = self.ugrid.n();
        let in_range = |idx: usize, step: i64, len: usize| {
            let src = idx as i64 - step;
            src >= 0 && src < len as i64
        };
        let mut diff = 0.0f64;
        let mut norm = 0.0f64;
        for iw1 in 0..m1 {
            if !in_range(iw1, wsteps[0], m1) {
                continue;
            }
            for iw2 in 0..m2 {
                if !in_range(iw2, wsteps[1], m2) {
                    continue;
                }
                for iu1 in 0..p1 {
                    if !in_range(iu1, usteps[0], p1) {
                        continue;
                    }
                    for iu2 in 0..p2 {
                        if !in_range(iu2, usteps[1], p2) {
                            continue;
                        }
                        let a = self.get(iw1, iw2, iu1, iu2);
                        let b = other.get(iw1, iw2, iu1, iu2);
                        diff += (a - b).norm_sqr();
                        norm += a.norm_sqr();
                    }
                }
            }
        }
        Ok(if norm > 0.0 {
            (diff / norm).sqrt()
        } else {
            diff.sqrt()
        })
    }

    /// All four indices reversed: the sample at `(ω, u)` moves to `(−ω, −u)`
    /// on symmetric lattices.
    pub fn index_reversed(&self) -> Self {
        let [m1, m2] = self.wgrid.n();
        let [p1, p2] = self.ugrid.n();
        let mut data = vec![Quaternion::ZERO; self.data.len()];
        for iw1 in 0..m1 {
            for iw2 in 0..m2 {
                for iu1 in 0..p1 {
                    for iu2 in 0..p2 {
                        data[self.flat(iw1, iw2, iu1, iu2)] =
                            self.get(m1 - 1 - iw1, m2 - 1 - iw2, p1 - 1 - iu1, p2 - 1 - iu2);
                    }
                }
            }
        }
        Self {
            wgrid: self.wgrid,
            ugrid: self.ugrid,
            data,
        }
    }

    /// Pointwise left multiplication by a constant.
    pub fn left_mul(&self, q: Quaternion) -> Self {
        Self {
            wgrid: self.wgrid,
            ugrid: self.ugrid,
            data: self.data.iter().map(|&v| q * v).collect(),
        }
    }

    pub fn scale(&self, t: f64) -> Self {
        Self {
            wgrid: self.wgrid,
            ugrid: self.ugrid,
            data: self.data.iter().map(|&v| v.scale(t)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.wgrid != other.wgrid || self.ugrid != other.ugrid {
            return Err(QlctError::GridMismatch);
        }
        Ok(Self {
            wgrid: self.wgrid,
            ugrid: self.ugrid,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        })
    }
}

/// Integer signal-lattice steps of the u-lattice origin and stride, or
/// `NonGridU` if any u-point falls off the signal lattice.
fn u_lattice_steps(ugrid: &Grid2D, xgrid: &Grid2D) -> Result<(i64, i64, [i64; 2])> {
    let mut base = [0i64; 2];
    let mut stride = [0i64; 2];
    for k in 0..2 {
        let dx = xgrid.dx()[k];
        let ratio0 = ugrid.x0()[k] / dx;
        let ratios = ugrid.dx()[k] / dx;
        if (ratio0 - ratio0.round()).abs() > GRID_ALIGN_TOL {
            return Err(QlctError::NonGridU {
                axis: k + 1,
                value: ugrid.x0()[k],
                step: dx,
            });
        }
        if (ratios - ratios.round()).abs() > GRID_ALIGN_TOL {
            return Err(QlctError::NonGridU {
                axis: k + 1,
                value: ugrid.dx()[k],
                step: dx,
            });
        }
        base[k] = ratio0.round() as i64;
        stride[k] = ratios.round() as i64;
    }
    Ok((base[0], base[1], stride))
}

/// Windowed product `g(x) = f(x)·conj(φ(x − u))` where `u = (k1·dx₁, k2·dx₂)`;
/// window samples outside the grid are treated as zero.
fn windowed_product(f: &QField2D, phi: &QField2D, k1: i64, k2: i64) -> Vec<Quaternion> {
    let grid = f.grid();
    let [n1, n2] = grid.n();
    let mut out = vec![Quaternion::ZERO; n1 * n2];
    for i1 in 0..n1 {
        let j1 = i1 as i64 - k1;
        if j1 < 0 || j1 >= n1 as i64 {
            continue;
        }
        for i2 in 0..n2 {
            let j2 = i2 as i64 - k2;
            if j2 < 0 || j2 >= n2 as i64 {
                continue;
            }
            let w = phi.get(j1 as usize, j2 as usize);
            if w != Quaternion::ZERO {
                out[grid.flat(i1, i2)] = f.get(i1, i2) * w.conj();
            }
        }
    }
    out
}

fn require_window(f: &QField2D, phi: &QField2D) -> Result<()> {
    if f.grid() != phi.grid() {
        return Err(QlctError::GridMismatch);
    }
    if phi.data().iter().all(|q| *q == Quaternion::ZERO) {
        return Err(QlctError::ZeroWindow);
    }
    Ok(())
}

/// The full 4D windowed transform of `f` against window `phi`.
pub fn qwlct_forward(
    f: &QField2D,
    phi: &QField2D,
    pair: &LctPair,
    wgrid: &Grid2D,
    ugrid: &Grid2D,
) -> Result<QwlctMap> {
    require_window(f, phi)?;
    let xgrid = f.grid();
    let (u0_1, u0_2, stride) = u_lattice_steps(ugrid, xgrid)?;

    let xs1 = xgrid.axis_coords(0);
    let xs2 = xgrid.axis_coords(1);
    let ws1 = wgrid.axis_coords(0);
    let ws2 = wgrid.axis_coords(1);
    let ki = table_i(&pair.a1, &xs1, &ws1);
    let kj = table_j(&pair.a2, &xs2, &ws2);

    let [n1, n2] = xgrid.n();
    let [m1, m2] = wgrid.n();
    let [p1, p2] = ugrid.n();
    let mut map = vec![Quaternion::ZERO; m1 * m2 * p1 * p2];

    let u_indices: Vec<(usize, usize)> = (0..p1)
        .flat_map(|iu1| (0..p2).map(move |iu2| (iu1, iu2)))
        .collect();
    for batch in u_indices.chunks(U_BATCH) {
        let slices: Vec<((usize, usize), Vec<Quaternion>)> = batch
            .par_iter()
            .map(|&(iu1, iu2)| {
                let k1 = u0_1 + iu1 as i64 * stride[0];
                let k2 = u0_2 + iu2 as i64 * stride[1];
                let g = windowed_product(f, phi, k1, k2);
                let slice = two_sided_contract(&ki, &g, n1, n2, &kj, m1, m2, xgrid.cell_area());
                ((iu1, iu2), slice)
            })
            .collect();
        for ((iu1, iu2), slice) in slices {
            for iw1 in 0..m1 {
                for iw2 in 0..m2 {
                    map[((iw1 * m2 + iw2) * p1 + iu1) * p2 + iu2] = slice[iw1 * m2 + iw2];
                }
            }
        }
    }
    Ok(QwlctMap::from_raw(*wgrid, *ugrid, map))
}

/// The transform at one fixed window position: the plain transform of the
/// windowed product. Equals the matching slice of [`qwlct_forward`].
pub fn qwlct_fixed_u(
    f: &QField2D,
    phi: &QField2D,
    pair: &LctPair,
    wgrid: &Grid2D,
    u: [f64; 2],
) -> Result<QlctSpectrum> {
    require_window(f, phi)?;
    let xgrid = f.grid();
    let mut steps = [0i64; 2];
    for k in 0..2 {
        steps[k] = xgrid.steps_of(k, u[k]).ok_or(QlctError::NonGridU {
            axis: k + 1,
            value: u[k],
            step: xgrid.dx()[k],
        })?;
    }
    let g = windowed_product(f, phi, steps[0], steps[1]);
    let xs1 = xgrid.axis_coords(0);
    let xs2 = xgrid.axis_coords(1);
    let ki = table_i(&pair.a1, &xs1, &wgrid.axis_coords(0));
    let kj = table_j(&pair.a2, &xs2, &wgrid.axis_coords(1));
    let data = two_sided_contract(
        &ki,
        &g,
        xgrid.n()[0],
        xgrid.n()[1],
        &kj,
        wgrid.n()[0],
        wgrid.n()[1],
        xgrid.cell_area(),
    );
    Ok(QField2D::from_raw(*wgrid, data))
}

/// Reconstruction from the 4D map:
/// `(1/‖φ‖²)·ΣΣ conj(K_i)·G(ω, u)·conj(K_j)·φ(x − u)·dω du`.
pub fn qwlct_inverse(
    map: &QwlctMap,
    phi: &QField2D,
    pair: &LctPair,
    xgrid: &Grid2D,
) -> Result<QField2D> {
    if phi.data().iter().all(|q| *q == Quaternion::ZERO) {
        return Err(QlctError::ZeroWindow);
    }
    if phi.grid() != xgrid {
        return Err(QlctError::GridMismatch);
    }
    let ugrid = map.ugrid();
    let wgrid = map.wgrid();
    let (u0_1, u0_2, stride) = u_lattice_steps(ugrid, xgrid)?;

    let ws1 = wgrid.axis_coords(0);
    let ws2 = wgrid.axis_coords(1);
    let xs1 = xgrid.axis_coords(0);
    let xs2 = xgrid.axis_coords(1);
    let ki = table_i_conj(&pair.a1, &xs1, &ws1); // [n1 × m1], rows = x1
    let kj = table_j_conj(&pair.a2, &xs2, &ws2); // [m2 × n2], rows = ω2

    let [m1, m2] = wgrid.n();
    let [n1, n2] = xgrid.n();
    let [p1, p2] = ugrid.n();
    let mut acc = vec![Quaternion::ZERO; n1 * n2];

    let u_indices: Vec<(usize, usize)> = (0..p1)
        .flat_map(|iu1| (0..p2).map(move |iu2| (iu1, iu2)))
        .collect();
    // per-u reconstructions are independent; accumulation runs in u order
    for batch in u_indices.chunks(U_BATCH) {
        let parts: Vec<((usize, usize), Vec<Quaternion>)> = batch
            .par_iter()
            .map(|&(iu1, iu2)| {
                let slice = map.slice_at(iu1, iu2);
                let h =
                    two_sided_contract(&ki, slice.data(), m1, m2, &kj, n1, n2, wgrid.cell_area());
                ((iu1, iu2), h)
            })
            .collect();
        for ((iu1, iu2), h) in parts {
            let k1 = u0_1 + iu1 as i64 * stride[0];
            let k2 = u0_2 + iu2 as i64 * stride[1];
            for i1 in 0..n1 {
                let j1 = i1 as i64 - k1;
                if j1 < 0 || j1 >= n1 as i64 {
                    continue;
                }
                for i2 in 0..n2 {
                    let j2 = i2 as i64 - k2;
                    if j2 < 0 || j2 >= n2 as i64 {
                        continue;
                    }
                    let w = phi.get(j1 as usize, j2 as usize);
                    if w != Quaternion::ZERO {
                        acc[i1 * n2 + i2] += h[i1 * n2 + i2] * w;
                    }
                }
            }
        }
    }

    let norm_sq = phi.l2_norm().powi(2);
    let scale = ugrid.cell_area() / norm_sq;
    for q in &mut acc {
        *q = q.scale(scale);
    }
    Ok(QField2D::from_raw(*xgrid, acc))
}

/// The map a translated signal must produce: the original map resampled at
/// shifted lattice points and dressed with the left/right phases of the
/// shift covariance law. Sources outside the computed window are zero.
pub fn predicted_shift_image(map: &QwlctMap, pair: &LctPair, r: [f64; 2]) -> Result<QwlctMap> {
    let wgrid = map.wgrid();
    let ugrid = map.ugrid();
    let mut kw = [0i64; 2];
    let mut ku = [0i64; 2];
    let aa = [pair.a1.a(), pair.a2.a()];
    for k in 0..2 {
        kw[k] = wgrid
            .steps_of(k, aa[k] * r[k])
            .ok_or(QlctError::NonGridShift {
                axis: k + 1,
                value: aa[k] * r[k],
                step: wgrid.dx()[k],
            })?;
        ku[k] = ugrid.steps_of(k, r[k]).ok_or(QlctError::NonGridShift {
            axis: k + 1,
            value: r[k],
            step: ugrid.dx()[k],
        })?;
    }
    let [m1, m2] = wgrid.n();
    let [p1, p2] = ugrid.n();
    let (c1, c2) = (pair.a1.c(), pair.a2.c());
    let mut data = vec![Quaternion::ZERO; map.data().len()];
    for iw1 in 0..m1 {
        let w1 = wgrid.axis_coord(0, iw1);
        let left = Quaternion::exp_i(r[0] * w1 * c1 - aa[0] * r[0] * r[0] * c1 / 2.0);
        let s1 = iw1 as i64 - kw[0];
        for iw2 in 0..m2 {
            let w2 = wgrid.axis_coord(1, iw2);
            let right = Quaternion::exp_j(r[1] * w2 * c2 - aa[1] * r[1] * r[1] * c2 / 2.0);
            let s2 = iw2 as i64 - kw[1];
            if s1 < 0 || s1 >= m1 as i64 || s2 < 0 || s2 >= m2 as i64 {
                continue;
            }
            for iu1 in 0..p1 {
                let t1 = iu1 as i64 - ku[0];
                if t1 < 0 || t1 >= p1 as i64 {
                    continue;
                }
                for iu2 in 0..p2 {
                    let t2 = iu2 as i64 - ku[1];
                    if t2 < 0 || t2 >= p2 as i64 {
                        continue;
                    }
                    let src = map.get(s1 as usize, s2 as usize, t1 as usize, t2 as usize);
                    data[map.flat(iw1, iw2, iu1, iu2)] = left * src * right;
                }
            }
        }
    }
    Ok(QwlctMap::from_raw(*wgrid, *ugrid, data))
}

/// The map a modulated signal must produce: frequency-shifted resampling with
/// the modulation phases. Window positions are untouched.
pub fn predicted_modulation_image(map: &QwlctMap, pair: &LctPair, s: [f64; 2]) -> Result<QwlctMap> {
    let wgrid = map.wgrid();
    let ugrid = map.ugrid();
    let bb = [pair.a1.b(), pair.a2.b()];
    let dd = [pair.a1.d(), pair.a2.d()];
    let mut kv = [0i64; 2];
    for k in 0..2 {
        kv[k] = wgrid
            .steps_of(k, s[k] * bb[k])
            .ok_or(QlctError::NonGridModulation {
                axis: k + 1,
                value: s[k] * bb[k],
                step: wgrid.dx()[k],
            })?;
    }
    let [m1, m2] = wgrid.n();
    let [p1, p2] = ugrid.n();
    let mut data = vec![Quaternion::ZERO; map.data().len()];
    for iw1 in 0..m1 {
        let w1 = wgrid.axis_coord(0, iw1);
        let left = Quaternion::exp_i(w1 * s[0] * dd[0] - bb[0] * dd[0] * s[0] * s[0] / 2.0);
        let s1 = iw1 as i64 - kv[0];
        if s1 < 0 || s1 >= m1 as i64 {
            continue;
        }
        for iw2 in 0..m2 {
            let w2 = wgrid.axis_coord(1, iw2);
            let right = Quaternion::exp_j(w2 * s[1] * dd[1] - bb[1] * dd[1] * s[1] * s[1] / 2.0);
            let s2 = iw2 as i64 - kv[1];
            if s2 < 0 || s2 >= m2 as i64 {
                continue;
            }
            for iu1 in 0..p1 {
                for iu2 in 0..p2 {
                    let src = map.get(s1 as usize, s2 as usize, iu1, iu2);
                    data[map.flat(iw1, iw2, iu1, iu2)] = left * src * right;
                }
            }
        }
    }
    Ok(QwlctMap::from_raw(*wgrid, *ugrid, data))
}

/// Both sides of the parity law on symmetric lattices: the transform of the
/// point-reflected signal and window, and the index-reversed original map.
pub fn parity_check(
    f: &QField2D,
    phi: &QField2D,
    pair: &LctPair,
    wgrid: &Grid2D,
    ugrid: &Grid2D,
) -> Result<(QwlctMap, QwlctMap)> {
    wgrid.require_symmetric()?;
    ugrid.require_symmetric()?;
    let lhs = qwlct_forward(&f.parity()?, &phi.parity()?, pair, wgrid, ugrid)?;
    let rhs = qwlct_forward(f, phi, pair, wgrid, ugrid)?.index_reversed();
    Ok((lhs, rhs))
}

/// Both sides of the orthogonality relation: the scalar part of the 4D inner
/// product of two maps, and the scalar part of `⟨f, g⟩·⟨ψ, φ⟩`.
pub fn orthogonality_check(
    f: &QField2D,
    g: &QField2D,
    phi: &QField2D,
    psi: &QField2D,
    pair: &LctPair,
    wgrid: &Grid2D,
    ugrid: &Grid2D,
) -> Result<(f64, f64)> {
    let map_f = qwlct_forward(f, phi, pair, wgrid, ugrid)?;
    let map_g = qwlct_forward(g, psi, pair, wgrid, ugrid)?;
    let lhs = map_f.inner_product(&map_g)?.scalar_part();
    let rhs = (f.inner_product(g)? * psi.inner_product(phi)?).scalar_part();
    Ok((lhs, rhs))
}

/// The uniform bound `‖f‖·‖φ‖ / (2π·√|b₁b₂|)` on the map magnitude.
pub fn boundedness_bound(f: &QField2D, phi: &QField2D, pair: &LctPair) -> f64 {
    let b = (pair.a1.b() * pair.a2.b()).abs();
    f.l2_norm() * phi.l2_norm() / (std::f64::consts::TAU * b.sqrt())
}
