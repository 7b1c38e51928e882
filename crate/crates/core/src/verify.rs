//! The self-check battery behind the CLI `verify` subcommand: every law the
//! engine is supposed to satisfy, evaluated on a fixed synthetic battery with
//! both sides computed through independent code paths.
//!
//! Randomized inputs come from a seeded generator so failures reproduce; the
//! seed is carried in the report.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::{Grid2D, QField2D};
use crate::io::{CheckRecord, VerifyReport};
use crate::kernel::{kernel_i, kernel_j};
use crate::oracle;
use crate::params::{LctPair, LctParams};
use crate::qlct::{default_wgrid, qlct_forward, qlct_inverse};
use crate::quaternion::Quaternion;
use crate::qwlct::{
    boundedness_bound, orthogonality_check, parity_check, predicted_modulation_image,
    predicted_shift_image, qwlct_forward, qwlct_inverse,
};
use crate::uncertainty::{
    Axis, QLCT_SLACK, QWLCT_SLACK, qlct_uncertainty_check, qwlct_uncertainty_check_with_map,
    windowed_spatial_identity,
};

pub const DEFAULT_SEED: u64 = 42;

/// Tracks the worst case seen across a battery sweep.
struct Worst {
    measure: f64,
    lhs: f64,
    rhs: f64,
    detail: String,
}

impl Worst {
    fn new() -> Self {
        Self {
            measure: f64::NEG_INFINITY,
            lhs: 0.0,
            rhs: 0.0,
            detail: String::new(),
        }
    }

    fn observe(&mut self, measure: f64, lhs: f64, rhs: f64, detail: impl Into<String>) {
        if measure > self.measure {
            self.measure = measure;
            self.lhs = lhs;
            self.rhs = rhs;
            self.detail = detail.into();
        }
    }

    fn record(self, name: &str, law: &str, tolerance: f64) -> CheckRecord {
        CheckRecord {
            name: name.to_string(),
            law: law.to_string(),
            lhs: self.lhs,
            rhs: self.rhs,
            tolerance,
            pass: self.measure <= tolerance,
            detail: self.detail,
        }
    }
}

fn gaussian(grid: Grid2D, sigma: f64, center: [f64; 2]) -> QField2D {
    QField2D::from_fn(grid, |x1, x2| {
        let d1 = x1 - center[0];
        let d2 = x2 - center[1];
        Quaternion::real((-(d1 * d1 + d2 * d2) / (2.0 * sigma * sigma)).exp())
    })
}

fn chirpy() -> LctPair {
    LctPair::new(
        LctParams::validate(2.0, 1.0, 1.0, 1.0).unwrap(),
        LctParams::validate(1.0, 1.0, 0.0, 1.0).unwrap(),
    )
}

/// The synthetic input battery all sweeps run over.
pub struct Battery {
    pub pairs: Vec<(&'static str, LctPair)>,
    pub standard_grid: Grid2D,
    pub standard_fields: Vec<(String, QField2D)>,
    pub map_grid: Grid2D,
    pub map_fields: Vec<(String, QField2D)>,
    pub windows: Vec<(String, QField2D)>,
    pub map_ugrid: Grid2D,
}

pub fn build_battery() -> Battery {
    let standard_grid = Grid2D::centered(8.0, 128).unwrap();
    let map_grid = Grid2D::centered(8.0, 32).unwrap();
    let map_ugrid = Grid2D::new([-6.0, -6.0], map_grid.dx(), [24, 24]).unwrap();

    let make_fields = |grid: Grid2D| -> Vec<(String, QField2D)> {
        let mut out = Vec::new();
        for sigma in [0.5, 1.0, 2.0] {
            out.push((format!("gaussian sigma={sigma}"), gaussian(grid, sigma, [0.0, 0.0])));
        }
        out.push((
            "shifted gaussian".to_string(),
            gaussian(grid, 1.0, [1.5, -1.0]),
        ));
        out.push((
            "modulated gaussian".to_string(),
            gaussian(grid, 1.0, [0.0, 0.0]).modulate([2.0, 1.0]),
        ));
        out
    };

    let windows = vec![
        ("gaussian window".to_string(), gaussian(map_grid, 1.0, [0.0, 0.0])),
        ("haar window".to_string(), oracle::haar_window(&map_grid)),
    ];

    Battery {
        pairs: vec![("fourier", LctPair::fourier()), ("chirpy", chirpy())],
        standard_grid,
        standard_fields: make_fields(standard_grid),
        map_grid,
        map_fields: make_fields(map_grid),
        windows,
        map_ugrid,
    }
}

fn random_quat(rng: &mut ChaCha8Rng) -> Quaternion {
    Quaternion::new(
        rng.random_range(-10.0..10.0),
        rng.random_range(-10.0..10.0),
        rng.random_range(-10.0..10.0),
        rng.random_range(-10.0..10.0),
    )
}

fn random_field(grid: Grid2D, rng: &mut ChaCha8Rng) -> QField2D {
    let data = (0..grid.len()).map(|_| random_quat(rng).scale(0.1)).collect();
    QField2D::new(grid, data).unwrap()
}

fn check_algebra(seed: u64) -> CheckRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = Worst::new();
    for _ in 0..10_000 {
        let p = random_quat(&mut rng);
        let q = random_quat(&mut rng);
        let l = random_quat(&mut rng);

        let prod = (p * q).norm();
        let sep = p.norm() * q.norm();
        worst.observe(
            (prod - sep).abs() / sep.max(1e-300),
            prod,
            sep,
            "norm multiplicativity",
        );

        let anti = ((p * q).conj() - q.conj() * p.conj()).norm() / (1.0 + (p * q).norm());
        worst.observe(anti, anti, 0.0, "conjugation anti-automorphism");

        let c0 = (p * q * l).scalar_part();
        let c1 = (q * l * p).scalar_part();
        let c2 = (l * p * q).scalar_part();
        let scale = 1.0 + c0.abs();
        worst.observe((c0 - c1).abs() / scale, c0, c1, "cyclic scalar symmetry");
        worst.observe((c0 - c2).abs() / scale, c0, c2, "cyclic scalar symmetry");

        let assoc = ((p * q) * l - p * (q * l)).norm() / (1.0 + ((p * q) * l).norm());
        worst.observe(assoc, assoc, 0.0, "associativity");
    }
    worst.record("quaternion algebra identities", "algebra", 1e-12)
}

fn check_kernel_conjugation(seed: u64) -> CheckRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xA5A5);
    let params = [
        LctParams::fourier(),
        LctParams::validate(2.0, 1.0, 1.0, 1.0).unwrap(),
        LctParams::validate(1.0, 1.0, 0.0, 1.0).unwrap(),
    ];
    let mut worst = Worst::new();
    for p in &params {
        let inv = p.inverse();
        for _ in 0..1000 {
            let x: f64 = rng.random_range(-5.0..5.0);
            let w: f64 = rng.random_range(-5.0..5.0);
            let li = kernel_i(p, x, w).value.conj();
            let ri = kernel_i(&inv, w, x).value;
            worst.observe(
                (li - ri).norm() / (1.0 + ri.norm()),
                li.norm(),
                ri.norm(),
                format!("i-kernel at ({x:.3}, {w:.3})"),
            );
            let lj = kernel_j(p, x, w).value.conj();
            let rj = kernel_j(&inv, w, x).value;
            worst.observe(
                (lj - rj).norm() / (1.0 + rj.norm()),
                lj.norm(),
                rj.norm(),
                format!("j-kernel at ({x:.3}, {w:.3})"),
            );
        }
    }
    worst.record(
        "kernel conjugation matches inverse parameters",
        "kernel-conjugation",
        1e-12,
    )
}

fn check_parseval(battery: &Battery) -> CheckRecord {
    let mut worst = Worst::new();
    for (pname, pair) in &battery.pairs {
        let wgrid = default_wgrid(&battery.standard_grid, pair);
        for (fname, f) in &battery.standard_fields {
            let lhs = f.l2_norm().powi(2);
            let rhs = qlct_forward(f, pair, &wgrid).l2_norm().powi(2);
            worst.observe(
                (lhs - rhs).abs() / lhs,
                lhs,
                rhs,
                format!("{fname} / {pname}"),
            );
        }
        // one mixed pairing per parameter set
        let f = &battery.standard_fields[1].1;
        let g = &battery.standard_fields[3].1;
        let lhs = f.inner_product(g).unwrap();
        let rhs = qlct_forward(f, pair, &wgrid)
            .inner_product(&qlct_forward(g, pair, &wgrid))
            .unwrap();
        worst.observe(
            (lhs - rhs).norm() / (1.0 + lhs.norm()),
            lhs.scalar_part(),
            rhs.scalar_part(),
            format!("mixed pairing / {pname}"),
        );
    }
    worst.record("transform preserves pairings", "parseval", 1e-6)
}

fn check_qlct_inversion(battery: &Battery) -> CheckRecord {
    let mut worst = Worst::new();
    for (pname, pair) in &battery.pairs {
        let wgrid = default_wgrid(&battery.standard_grid, pair);
        for (fname, f) in &battery.standard_fields {
            let back = qlct_inverse(&qlct_forward(f, pair, &wgrid), pair, &battery.standard_grid);
            let err = f.rel_l2_distance(&back).unwrap();
            worst.observe(err, err, 0.0, format!("{fname} / {pname}"));
        }
    }
    worst.record("round trip through the transform", "inversion", 1e-5)
}

fn check_boundedness(battery: &Battery) -> CheckRecord {
    let mut worst = Worst::new();
    for (pname, pair) in &battery.pairs {
        let wgrid = default_wgrid(&battery.map_grid, pair);
        for (wname, phi) in &battery.windows {
            for (fname, f) in &battery.map_fields {
                let map = qwlct_forward(f, phi, pair, &wgrid, &battery.map_ugrid).unwrap();
                let sup = map.sup_abs();
                let bound = boundedness_bound(f, phi, pair);
                worst.observe(
                    sup - bound,
                    sup,
                    bound,
                    format!("{fname} / {wname} / {pname}"),
                );
            }
        }
    }
    worst.record("map magnitude stays under the uniform bound", "boundedness", 1e-9)
}

fn shift_mod_cases() -> Vec<(&'static str, LctPair, f64, usize)> {
    vec![
        ("fourier", LctPair::fourier(), std::f64::consts::TAU / 16.0, 32),
        ("chirpy", chirpy(), 0.5, 26),
        (
            "mixed-chirp",
            LctPair::new(
                LctParams::validate(1.0, 1.0, 1.0, 2.0).unwrap(),
                LctParams::validate(0.5, 1.0, -1.0, 0.0).unwrap(),
            ),
            0.5,
            26,
        ),
    ]
}

fn check_shift(battery: &Battery) -> CheckRecord {
    let grid = battery.map_grid;
    let f = gaussian(grid, 0.8, [-0.5, 0.25]);
    let phi = gaussian(grid, 1.0, [0.0, 0.0]);
    let dx = grid.dx()[0];
    let r = [2.0 * dx, -4.0 * dx];
    let mut worst = Worst::new();
    for (name, pair, dw, m) in shift_mod_cases() {
        let w0 = -((m - 1) as f64) / 2.0 * dw;
        let wgrid = Grid2D::new([w0, w0], [dw, dw], [m, m]).unwrap();
        let lhs = qwlct_forward(&f.shift(r).unwrap(), &phi, &pair, &wgrid, &battery.map_ugrid)
            .unwrap();
        let base = qwlct_forward(&f, &phi, &pair, &wgrid, &battery.map_ugrid).unwrap();
        let rhs = predicted_shift_image(&base, &pair, r).unwrap();
        let wsteps = [
            wgrid.steps_of(0, pair.a1.a() * r[0]).unwrap(),
            wgrid.steps_of(1, pair.a2.a() * r[1]).unwrap(),
        ];
        let usteps = [
            battery.map_ugrid.steps_of(0, r[0]).unwrap(),
            battery.map_ugrid.steps_of(1, r[1]).unwrap(),
        ];
        let err = lhs
            .rel_l2_distance_where_sourced(&rhs, wsteps, usteps)
            .unwrap();
        worst.observe(err, err, 0.0, name);
    }
    worst.record(
        "translated signals match the predicted image",
        "shift-covariance",
        1e-6,
    )
}

fn check_modulation(battery: &Battery) -> CheckRecord {
    let grid = battery.map_grid;
    let f = gaussian(grid, 0.8, [0.3, -0.2]);
    let phi = gaussian(grid, 1.0, [0.0, 0.0]);
    let mut worst = Worst::new();
    for (name, pair, dw, m) in shift_mod_cases() {
        let w0 = -((m - 1) as f64) / 2.0 * dw;
        let wgrid = Grid2D::new([w0, w0], [dw, dw], [m, m]).unwrap();
        let s = [4.0 * dw / pair.a1.b(), -2.0 * dw / pair.a2.b()];
        let lhs =
            qwlct_forward(&f.modulate(s), &phi, &pair, &wgrid, &battery.map_ugrid).unwrap();
        let base = qwlct_forward(&f, &phi, &pair, &wgrid, &battery.map_ugrid).unwrap();
        let rhs = predicted_modulation_image(&base, &pair, s).unwrap();
        let wsteps = [
            wgrid.steps_of(0, s[0] * pair.a1.b()).unwrap(),
            wgrid.steps_of(1, s[1] * pair.a2.b()).unwrap(),
        ];
        let err = lhs
            .rel_l2_distance_where_sourced(&rhs, wsteps, [0, 0])
            .unwrap();
        worst.observe(err, err, 0.0, name);
    }
    worst.record(
        "modulated signals match the predicted image",
        "modulation-covariance",
        1e-6,
    )
}

fn check_parity(seed: u64) -> CheckRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7070);
    let grid = Grid2D::centered(2.0, 8).unwrap();
    let wgrid = Grid2D::centered(3.0, 8).unwrap();
    let du = grid.dx();
    let ugrid = Grid2D::new([-2.0 * du[0], -2.0 * du[1]], du, [5, 5]).unwrap();
    let mut worst = Worst::new();
    for (pname, pair) in [("fourier", LctPair::fourier()), ("chirpy", chirpy())] {
        for trial in 0..3 {
            let f = random_field(grid, &mut rng);
            let phi = random_field(grid, &mut rng);
            let (lhs, rhs) = parity_check(&f, &phi, &pair, &wgrid, &ugrid).unwrap();
            let mut err = 0.0f64;
            for (a, b) in lhs.data().iter().zip(rhs.data()) {
                err = err.max((*a - *b).norm());
            }
            worst.observe(err, err, 0.0, format!("{pname} trial {trial}"));
        }
    }
    worst.record(
        "point reflection reverses the map",
        "parity",
        1e-10,
    )
}

fn energy_error(
    signal_n: usize,
    u_n: usize,
    u_stride: f64,
    pair: &LctPair,
) -> f64 {
    let grid = Grid2D::centered(8.0, signal_n).unwrap();
    let f = gaussian(grid, 1.0, [0.0, 0.0]);
    let phi = gaussian(grid, 1.0, [0.0, 0.0]);
    let wgrid = default_wgrid(&grid, pair);
    let du = [grid.dx()[0] * u_stride, grid.dx()[1] * u_stride];
    let ugrid = Grid2D::new([-6.0, -6.0], du, [u_n, u_n]).unwrap();
    let map = qwlct_forward(&f, &phi, pair, &wgrid, &ugrid).unwrap();
    let expect = f.l2_norm().powi(2) * phi.l2_norm().powi(2);
    (map.energy() - expect).abs() / expect
}

fn check_orthogonality(battery: &Battery) -> Vec<CheckRecord> {
    let grid = battery.map_grid;
    let pair = &battery.pairs[0].1;
    let wgrid = default_wgrid(&grid, pair);
    let ugrid = battery.map_ugrid;
    let f = gaussian(grid, 1.0, [0.0, 0.0]);
    let g = gaussian(grid, 0.8, [0.5, -0.5]);
    let phi = gaussian(grid, 1.0, [0.0, 0.0]);

    let mut records = Vec::new();

    // shared window: pairing reduces to ‖φ‖²·⟨f, g⟩₀
    let (lhs, rhs) = orthogonality_check(&f, &g, &phi, &phi, pair, &wgrid, &ugrid).unwrap();
    records.push(CheckRecord {
        name: "map pairing against shared-window reduction".to_string(),
        law: "orthogonality".to_string(),
        lhs,
        rhs,
        tolerance: 2e-4,
        pass: (lhs - rhs).abs() <= 2e-4 * rhs.abs().max(1e-4),
        detail: "gaussian pair, shared gaussian window".to_string(),
    });

    // energy identity
    let map = qwlct_forward(&f, &phi, pair, &wgrid, &ugrid).unwrap();
    let energy = map.energy();
    let expect = f.l2_norm().powi(2) * phi.l2_norm().powi(2);
    records.push(CheckRecord {
        name: "map energy equals signal times window energy".to_string(),
        law: "energy-identity".to_string(),
        lhs: energy,
        rhs: expect,
        tolerance: 2e-4,
        pass: (energy - expect).abs() <= 2e-4 * expect,
        detail: "gaussian signal, gaussian window".to_string(),
    });

    // disjoint supports pair to zero
    let fl = gaussian(grid, 0.5, [-2.5, 0.0]);
    let gr = gaussian(grid, 0.5, [2.5, 0.0]).left_mul(Quaternion::I);
    let (zl, zr) = orthogonality_check(&fl, &gr, &phi, &phi, pair, &wgrid, &ugrid).unwrap();
    records.push(CheckRecord {
        name: "disjoint supports pair to zero".to_string(),
        law: "orthogonality".to_string(),
        lhs: zl,
        rhs: zr,
        tolerance: 1e-6,
        pass: zl.abs() <= 1e-6 && zr.abs() <= 1e-10,
        detail: "separated narrow gaussians".to_string(),
    });

    // refining every lattice by 2x shrinks the energy defect
    let coarse = energy_error(16, 12, 1.0, pair);
    let fine = energy_error(32, 24, 1.0, pair);
    records.push(CheckRecord {
        name: "energy defect shrinks under lattice refinement".to_string(),
        law: "energy-convergence".to_string(),
        lhs: fine,
        rhs: coarse,
        tolerance: 0.0,
        pass: fine < coarse,
        detail: "16/16/12 lattice versus 32/32/24".to_string(),
    });

    records
}

fn inversion_error(signal_n: usize, u_n: usize, u_stride: f64, pair: &LctPair) -> f64 {
    let grid = Grid2D::centered(8.0, signal_n).unwrap();
    let f = gaussian(grid, 1.0, [0.0, 0.0]);
    let phi = gaussian(grid, 1.0, [0.0, 0.0]);
    let wgrid = default_wgrid(&grid, pair);
    let du = [grid.dx()[0] * u_stride, grid.dx()[1] * u_stride];
    let ugrid = Grid2D::new([-6.0, -6.0], du, [u_n, u_n]).unwrap();
    let map = qwlct_forward(&f, &phi, pair, &wgrid, &ugrid).unwrap();
    let back = qwlct_inverse(&map, &phi, pair, &grid).unwrap();
    f.rel_l2_distance(&back).unwrap()
}

fn check_qwlct_inversion(battery: &Battery) -> Vec<CheckRecord> {
    let grid = battery.map_grid;
    let pair = &battery.pairs[0].1;
    let wgrid = default_wgrid(&grid, pair);
    let ugrid = battery.map_ugrid;
    let f = gaussian(grid, 1.0, [0.0, 0.0]);
    let phi = gaussian(grid, 1.0, [0.0, 0.0]);

    let mut records = Vec::new();

    let err = inversion_error(32, 24, 1.0, pair);
    records.push(CheckRecord {
        name: "windowed round trip reconstructs the signal".to_string(),
        law: "windowed-inversion".to_string(),
        lhs: err,
        rhs: 0.0,
        tolerance: 1e-4,
        pass: err <= 1e-4,
        detail: "gaussian signal and window on map lattices".to_string(),
    });

    // window rescaling cancels exactly
    let map1 = qwlct_forward(&f, &phi, pair, &wgrid, &ugrid).unwrap();
    let rec1 = qwlct_inverse(&map1, &phi, pair, &grid).unwrap();
    let phi3 = phi.scale(3.0);
    let map3 = qwlct_forward(&f, &phi3, pair, &wgrid, &ugrid).unwrap();
    let rec3 = qwlct_inverse(&map3, &phi3, pair, &grid).unwrap();
    let scale_err = rec1.rel_l2_distance(&rec3).unwrap();
    records.push(CheckRecord {
        name: "window rescaling cancels in reconstruction".to_string(),
        law: "inversion-scale-invariance".to_string(),
        lhs: scale_err,
        rhs: 0.0,
        tolerance: 1e-12,
        pass: scale_err <= 1e-12,
        detail: "window scaled by 3".to_string(),
    });

    let coarse = inversion_error(16, 12, 1.0, pair);
    let fine = inversion_error(32, 24, 1.0, pair);
    records.push(CheckRecord {
        name: "round-trip error shrinks under lattice refinement".to_string(),
        law: "inversion-convergence".to_string(),
        lhs: fine,
        rhs: coarse,
        tolerance: 0.0,
        pass: fine < coarse,
        detail: "16/16/12 lattice versus 32/32/24".to_string(),
    });

    records
}

fn check_uncertainty(battery: &Battery) -> Vec<CheckRecord> {
    let mut records = Vec::new();

    // plain transform inequality across the battery
    let mut worst = Worst::new();
    for (pname, pair) in &battery.pairs {
        let wgrid = default_wgrid(&battery.standard_grid, pair);
        for (fname, f) in &battery.standard_fields {
            for axis in [Axis::One, Axis::Two] {
                let r = qlct_uncertainty_check(f, pair, &wgrid, axis);
                let lhs = r.spatial * r.spectral;
                // shortfall relative to the bound; anything <= slack passes
                worst.observe(
                    (r.bound - lhs) / r.bound,
                    lhs,
                    r.bound,
                    format!("{fname} / {pname} / axis {}", r.k),
                );
            }
        }
    }
    records.push(worst.record(
        "spread product dominates the transform bound",
        "uncertainty-transform",
        QLCT_SLACK,
    ));

    // near-equality for the minimizing case
    let wgrid = default_wgrid(&battery.standard_grid, &battery.pairs[0].1);
    let f1 = &battery.standard_fields[1].1; // sigma = 1
    let r = qlct_uncertainty_check(f1, &battery.pairs[0].1, &wgrid, Axis::One);
    let ratio = r.spatial * r.spectral / r.bound;
    records.push(CheckRecord {
        name: "gaussian saturates the transform bound".to_string(),
        law: "uncertainty-tightness".to_string(),
        lhs: ratio,
        rhs: 1.0,
        tolerance: 0.01,
        pass: (1.0 - QLCT_SLACK..=1.01).contains(&ratio),
        detail: "unit gaussian under fourier-like parameters".to_string(),
    });

    // windowed inequality across the battery and both windows
    let mut worst = Worst::new();
    for (pname, pair) in &battery.pairs {
        let wgrid = default_wgrid(&battery.map_grid, pair);
        for (wname, phi) in &battery.windows {
            for (fname, f) in &battery.map_fields {
                let map = qwlct_forward(f, phi, pair, &wgrid, &battery.map_ugrid).unwrap();
                for axis in [Axis::One, Axis::Two] {
                    let r =
                        qwlct_uncertainty_check_with_map(f, phi, pair, &map, axis).unwrap();
                    let lhs = r.spectral.sqrt() * r.spatial.sqrt();
                    worst.observe(
                        (r.bound - lhs) / r.bound,
                        lhs,
                        r.bound,
                        format!("{fname} / {wname} / {pname} / axis {}", r.k),
                    );
                }
            }
        }
    }
    records.push(worst.record(
        "windowed spread dominates its bound",
        "uncertainty-windowed",
        QWLCT_SLACK,
    ));

    // homogeneity of the windowed inequality in f and in the window
    let pair = &battery.pairs[0].1;
    let wgrid = default_wgrid(&battery.map_grid, pair);
    let f = gaussian(battery.map_grid, 1.0, [0.0, 0.0]);
    let phi = gaussian(battery.map_grid, 1.0, [0.0, 0.0]);
    let ratio_of = |f: &QField2D, phi: &QField2D| -> f64 {
        let map = qwlct_forward(f, phi, pair, &wgrid, &battery.map_ugrid).unwrap();
        let r = qwlct_uncertainty_check_with_map(f, phi, pair, &map, Axis::One).unwrap();
        r.spectral.sqrt() * r.spatial.sqrt() / r.bound
    };
    let base = ratio_of(&f, &phi);
    let dev_f = (ratio_of(&f.scale(2.0), &phi) - base).abs() / base;
    let dev_p = (ratio_of(&f, &phi.scale(3.0)) - base).abs() / base;
    records.push(CheckRecord {
        name: "windowed inequality ratio is scale invariant".to_string(),
        law: "uncertainty-homogeneity".to_string(),
        lhs: dev_f.max(dev_p),
        rhs: 0.0,
        tolerance: 1e-10,
        pass: dev_f <= 1e-10 && dev_p <= 1e-10,
        detail: "signal x2 and window x3 rescalings".to_string(),
    });

    // window-energy moment identity
    let mut worst = Worst::new();
    for (pname, pair) in &battery.pairs {
        let wgrid = default_wgrid(&battery.map_grid, pair);
        let (lhs, rhs) = windowed_spatial_identity(
            &f,
            &phi,
            pair,
            &wgrid,
            &battery.map_ugrid,
            Axis::One,
        )
        .unwrap();
        worst.observe((lhs - rhs).abs() / lhs, lhs, rhs, *pname);
    }
    records.push(worst.record(
        "window energy moment identity",
        "window-moment-identity",
        1e-4,
    ));

    records
}

fn check_oracle(battery: &Battery) -> CheckRecord {
    let mut worst = Worst::new();
    let w_points: Vec<[f64; 2]> = (0..5).map(|k| {
        let t = -2.0 + k as f64;
        [t, -t]
    }).collect();
    let u_points: Vec<[f64; 2]> = (0..5).map(|k| {
        let t = -0.5 + 1.5 * k as f64 / 4.0;
        [t, 0.5 - t / 2.0]
    }).collect();
    for (pname, pair) in &battery.pairs {
        for alpha in [[1.0, 1.0], [2.0, 0.5]] {
            for w in &w_points {
                for u in &u_points {
                    let analytic =
                        oracle::analytic_qwlct_gaussian_haar(pair, alpha, *w, *u).unwrap();
                    let quad =
                        oracle::quadrature_qwlct_gaussian_haar(pair, alpha, *w, *u, 1e-8)
                            .unwrap();
                    let err = (analytic - quad.value).norm() / (1.0 + quad.value.norm());
                    worst.observe(
                        err,
                        analytic.norm(),
                        quad.value.norm(),
                        format!("{pname} alpha {alpha:?} w {w:?} u {u:?}"),
                    );
                }
            }
        }
    }
    worst.record(
        "closed form agrees with the quadrature engine",
        "oracle-closed-form",
        1e-6,
    )
}

/// Runs the full battery and collects one record per checked law.
pub fn run_battery(seed: u64) -> VerifyReport {
    let battery = build_battery();
    let mut checks = vec![
        check_algebra(seed),
        check_kernel_conjugation(seed),
        check_parseval(&battery),
        check_qlct_inversion(&battery),
        check_boundedness(&battery),
        check_shift(&battery),
        check_modulation(&battery),
        check_parity(seed),
    ];
    checks.extend(check_orthogonality(&battery));
    checks.extend(check_qwlct_inversion(&battery));
    checks.extend(check_uncertainty(&battery));
    checks.push(check_oracle(&battery));
    let all_pass = checks.iter().all(|c| c.pass);
    VerifyReport {
        seed,
        checks,
        all_pass,
    }
}
