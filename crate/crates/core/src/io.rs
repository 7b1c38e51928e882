//! Binary field/map formats, CSV import/export, PGM export, and the
//! structured report record schema.
//!
//! # Field files (`QF2D`)
//!
//! ```text
//! offset  size  content
//! 0       4     magic "QF2D"
//! 4       2     version = 1 (u16)
//! 6       4     n1 (u32)          10  4   n2 (u32)
//! 14      8     x0_1 (f64)        22  8   x0_2 (f64)
//! 30      8     dx1 (f64)         38  8   dx2 (f64)
//! 46      n1·n2·4 f64 payload, row-major, components in (s, x, y, z) order
//! ```
//!
//! # Map files (`QWM4`)
//!
//! ```text
//! 0    4   magic "QWM4"
//! 4    2   version = 1 (u16)
//! 6    16  m1, m2, p1, p2 (u32 each)
//! 22   40  frequency-lattice header: n1, n2 (u32), x0_1, x0_2, dx1, dx2 (f64)
//! 62   40  window-lattice header, same layout
//! 102      m1·m2·p1·p2·4 f64 payload, row-major over (iω₁, iω₂, iu₁, iu₂)
//! ```
//!
//! Every multi-byte value is little-endian. Round trips are bit-exact; the
//! headers fully determine payload interpretation.

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::field::{Grid2D, QField2D};
use crate::quaternion::Quaternion;
use crate::qwlct::QwlctMap;
use crate::{Result, error::QlctError};

pub const FIELD_MAGIC: [u8; 4] = *b"QF2D";
pub const MAP_MAGIC: [u8; 4] = *b"QWM4";
pub const FORMAT_VERSION: u16 = 1;

/// One structured line of a verification report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    /// Human-readable check name.
    pub name: String,
    /// Stable tag naming the law being checked (e.g. "parseval",
    /// "shift-covariance").
    pub law: String,
    /// Measured left-hand side (worst case over the battery).
    pub lhs: f64,
    /// Measured right-hand side it is compared against.
    pub rhs: f64,
    /// Tolerance the comparison must meet.
    pub tolerance: f64,
    pub pass: bool,
    /// Which battery member produced the worst case.
    pub detail: String,
}

/// A full verification run.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    pub all_pass: bool,
}

// --- little-endian byte cursor ---------------------------------------------

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(buf: &'a [u8]) -> Self {
        Self { buf, pos: 0 }
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.pos + n > self.buf.len() {
            return Err(QlctError::TruncatedPayload {
                needed: self.pos + n,
                found: self.buf.len(),
            });
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u16(&mut self) -> Result<u16> {
        let b = self.take(2)?;
        Ok(u16::from_le_bytes([b[0], b[1]]))
    }

    fn u32(&mut self) -> Result<u32> {
        let b = self.take(4)?;
        Ok(u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
    }

    fn f64(&mut self) -> Result<f64> {
        let b = self.take(8)?;
        Ok(f64::from_le_bytes([
            b[0], b[1], b[2], b[3], b[4], b[5], b[6], b[7],
        ]))
    }
}

fn push_u16(out: &mut Vec<u8>, v: u16) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn push_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn push_f64(out: &mut Vec<u8>, v: f64) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn push_grid(out: &mut Vec<u8>, grid: &Grid2D) {
    push_u32(out, grid.n()[0] as u32);
    push_u32(out, grid.n()[1] as u32);
    push_f64(out, grid.x0()[0]);
    push_f64(out, grid.x0()[1]);
    push_f64(out, grid.dx()[0]);
    push_f64(out, grid.dx()[1]);
}

fn read_grid(c: &mut Cursor) -> Result<Grid2D> {
    let n1 = c.u32()? as usize;
    let n2 = c.u32()? as usize;
    let x0 = [c.f64()?, c.f64()?];
    let dx = [c.f64()?, c.f64()?];
    Grid2D::new(x0, dx, [n1, n2])
}

fn push_payload(out: &mut Vec<u8>, data: &[Quaternion]) {
    out.reserve(data.len() * 32);
    for q in data {
        push_f64(out, q.s);
        push_f64(out, q.x);
        push_f64(out, q.y);
        push_f64(out, q.z);
    }
}

fn read_payload(c: &mut Cursor, count: usize) -> Result<Vec<Quaternion>> {
    let mut data = Vec::with_capacity(count);
    for index in 0..count {
        let q = Quaternion::new(c.f64()?, c.f64()?, c.f64()?, c.f64()?);
        if !q.is_finite() {
            return Err(QlctError::NonFiniteSample { index });
        }
        data.push(q);
    }
    Ok(data)
}

fn check_magic(c: &mut Cursor, expected: [u8; 4]) -> Result<()> {
    let got = c.take(4)?;
    let found = [got[0], got[1], got[2], got[3]];
    if found != expected {
        return Err(QlctError::BadMagic { expected, found });
    }
    let version = c.u16()?;
    if version != FORMAT_VERSION {
        return Err(QlctError::BadVersion {
            expected: FORMAT_VERSION,
            found: version,
        });
    }
    Ok(())
}

// --- field files ------------------------------------------------------------

pub fn encode_field(f: &QField2D) -> Vec<u8> {
    let mut out = Vec::with_capacity(46 + f.data().len() * 32);
    out.extend_from_slice(&FIELD_MAGIC);
    push_u16(&mut out, FORMAT_VERSION);
    push_grid(&mut out, f.grid());
    push_payload(&mut out, f.data());
    out
}

pub fn decode_field(bytes: &[u8]) -> Result<QField2D> {
    let mut c = Cursor::new(bytes);
    check_magic(&mut c, FIELD_MAGIC)?;
    let grid = read_grid(&mut c)?;
    let data = read_payload(&mut c, grid.len())?;
    QField2D::new(grid, data)
}

pub fn write_field(f: &QField2D, path: &Path) -> Result<()> {
    fs::write(path, encode_field(f))?;
    Ok(())
}

pub fn read_field(path: &Path) -> Result<QField2D> {
    decode_field(&fs::read(path)?)
}

// --- map files ---------------------------------------------------------------

pub fn encode_map(m: &QwlctMap) -> Vec<u8> {
    let mut out = Vec::with_capacity(102 + m.data().len() * 32);
    out.extend_from_slice(&MAP_MAGIC);
    push_u16(&mut out, FORMAT_VERSION);
    push_u32(&mut out, m.wgrid().n()[0] as u32);
    push_u32(&mut out, m.wgrid().n()[1] as u32);
    push_u32(&mut out, m.ugrid().n()[0] as u32);
    push_u32(&mut out, m.ugrid().n()[1] as u32);
    push_grid(&mut out, m.wgrid());
    push_grid(&mut out, m.ugrid());
    push_payload(&mut out, m.data());
    out
}

pub fn decode_map(bytes: &[u8]) -> Result<QwlctMap> {
    let mut c = Cursor::new(bytes);
    check_magic(&mut c, MAP_MAGIC)?;
    let dims = [
        c.u32()? as usize,
        c.u32()? as usize,
        c.u32()? as usize,
        c.u32()? as usize,
    ];
    let wgrid = read_grid(&mut c)?;
    let ugrid = read_grid(&mut c)?;
    if wgrid.n() != [dims[0], dims[1]] || ugrid.n() != [dims[2], dims[3]] {
        return Err(QlctError::ParseError(format!(
            "dimension fields {dims:?} disagree with lattice headers {:?}/{:?}",
            wgrid.n(),
            ugrid.n()
        )));
    }
    let data = read_payload(&mut c, wgrid.len() * ugrid.len())?;
    QwlctMap::new(wgrid, ugrid, data)
}

pub fn write_map(m: &QwlctMap, path: &Path) -> Result<()> {
    fs::write(path, encode_map(m))?;
    Ok(())
}

pub fn read_map(path: &Path) -> Result<QwlctMap> {
    decode_map(&fs::read(path)?)
}

// --- CSV ---------------------------------------------------------------------

/// Writes `i1,i2,s,x,y,z` rows covering every lattice point once. Floats use
/// the shortest representation that parses back exactly.
pub fn export_csv(f: &QField2D, path: &Path) -> Result<()> {
    let [n1, n2] = f.grid().n();
    let mut out = String::with_capacity(f.data().len() * 40);
    for i1 in 0..n1 {
        for i2 in 0..n2 {
            let q = f.get(i1, i2);
            out.push_str(&format!("{i1},{i2},{},{},{},{}\n", q.s, q.x, q.y, q.z));
        }
    }
    fs::write(path, out)?;
    Ok(())
}

/// Assembles a field from `i1,i2,s,x,y,z` rows; every lattice point of `grid`
/// must appear exactly once.
pub fn import_csv(path: &Path, grid: &Grid2D) -> Result<QField2D> {
    let text = fs::read_to_string(path)?;
    parse_csv(&text, grid)
}

pub fn parse_csv(text: &str, grid: &Grid2D) -> Result<QField2D> {
    let [n1, n2] = grid.n();
    let mut data = vec![Quaternion::ZERO; grid.len()];
    let mut seen = vec![false; grid.len()];
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(QlctError::ParseError(format!(
                "line {}: expected 6 fields, found {}",
                lineno + 1,
                fields.len()
            )));
        }
        let parse_idx = |s: &str| -> Result<usize> {
            s.trim()
                .parse::<usize>()
                .map_err(|e| QlctError::ParseError(format!("line {}: {e}", lineno + 1)))
        };
        let parse_f = |s: &str| -> Result<f64> {
            s.trim()
                .parse::<f64>()
                .map_err(|e| QlctError::ParseError(format!("line {}: {e}", lineno + 1)))
        };
        let i1 = parse_idx(fields[0])?;
        let i2 = parse_idx(fields[1])?;
        if i1 >= n1 || i2 >= n2 {
            return Err(QlctError::ParseError(format!(
                "line {}: index ({i1}, {i2}) outside {n1}x{n2} lattice",
                lineno + 1
            )));
        }
        let flat = grid.flat(i1, i2);
        if seen[flat] {
            return Err(QlctError::DuplicatePoint { i1, i2 });
        }
        seen[flat] = true;
        data[flat] = Quaternion::new(
            parse_f(fields[2])?,
            parse_f(fields[3])?,
            parse_f(fields[4])?,
            parse_f(fields[5])?,
        );
    }
    if let Some(flat) = seen.iter().position(|&s| !s) {
        return Err(QlctError::MissingPoint {
            i1: flat / n2,
            i2: flat % n2,
        });
    }
    QField2D::new(*grid, data)
}

// --- PGM export ----------------------------------------------------------------

/// 16-bit binary PGM of a real-valued slice (`rows × cols`, row-major) under
/// linear min–max scaling; the scaling constants are recorded in the comment
/// line. Sample bytes are big-endian as the format requires.
pub fn encode_magnitude_pgm(values: &[f64], rows: usize, cols: usize) -> Result<Vec<u8>> {
    if rows == 0 || cols == 0 || values.len() != rows * cols {
        return Err(QlctError::Io(std::io::Error::new(
            std::io::ErrorKind::InvalidInput,
            format!(
                "slice of {} values does not form a {rows}x{cols} image",
                values.len()
            ),
        )));
    }
    for (index, v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(QlctError::NonFiniteSample { index });
        }
    }
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let span = max - min;
    let mut out = Vec::with_capacity(64 + values.len() * 2);
    out.extend_from_slice(format!("P5\n# min={min} max={max}\n{cols} {rows}\n65535\n").as_bytes());
    for v in values {
        let scaled = if span > 0.0 {
            ((v - min) / span * 65535.0).round() as u16
        } else {
            0
        };
        out.extend_from_slice(&scaled.to_be_bytes());
    }
    Ok(out)
}

pub fn export_magnitude_pgm(values: &[f64], rows: usize, cols: usize, path: &Path) -> Result<()> {
    fs::write(path, encode_magnitude_pgm(values, rows, cols)?)?;
    Ok(())
}
