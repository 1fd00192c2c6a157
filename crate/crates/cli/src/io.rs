//! File formats.
//!
//! Binary snapshot, little-endian throughout:
//!
//! | bytes | field |
//! |-------|-------|
//! | 4     | magic `WVLB` |
//! | 2     | format version, `u16` = 1 |
//! | 2     | number of axes `d`, `u16` (1 or 2) |
//! | 24·d  | per axis: samples `u64`, min `f64`, max `f64` |
//! | 8     | time `f64` |
//! | 16·N  | `N` samples as interleaved `re, im` `f64` in storage order |
//!
//! 2D storage order is x-major: sample `(ix, iy)` sits at `ix·ny + iy`.
//! Files with trailing bytes, unknown versions or invalid grids are rejected.
//!
//! CSV files carry a header line and print every number with 17 significant
//! digits (`{:.16e}`), which round-trips an `f64` exactly.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use wavelab::double_slit::ScreenProfile;
use wavelab::evolve::SeriesRow;
use wavelab::{Complex64, Grid, SpatialGrid, SpatialGrid2D, WaveFunction};

pub const MAGIC: &[u8; 4] = b"WVLB";
pub const FORMAT_VERSION: u16 = 1;

pub const SERIES_HEADER: &str = "t,norm,x_mean,p_mean,x_var,p_var,kinetic,potential,total";
pub const PROFILE_HEADER: &str = "y,intensity";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("corrupt snapshot: {0}")]
pub struct CorruptSnapshot(pub String);

fn corrupt(msg: impl Into<String>) -> CorruptSnapshot {
    CorruptSnapshot(msg.into())
}

pub fn encode_snapshot(psi: &WaveFunction) -> Vec<u8> {
    let axes: Vec<&SpatialGrid> = match psi.grid() {
        Grid::One(g) => vec![g],
        Grid::Two(g) => vec![&g.x, &g.y],
    };
    let mut out = Vec::with_capacity(16 + 24 * axes.len() + 16 * psi.amplitudes().len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.extend_from_slice(&(axes.len() as u16).to_le_bytes());
    for a in axes {
        out.extend_from_slice(&(a.len() as u64).to_le_bytes());
        out.extend_from_slice(&a.x_min().to_le_bytes());
        out.extend_from_slice(&a.x_max().to_le_bytes());
    }
    out.extend_from_slice(&psi.t().to_le_bytes());
    for z in psi.amplitudes() {
        out.extend_from_slice(&z.re.to_le_bytes());
        out.extend_from_slice(&z.im.to_le_bytes());
    }
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    at: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize, what: &str) -> Result<&'a [u8], CorruptSnapshot> {
        let end = self.at.checked_add(n).filter(|&e| e <= self.bytes.len());
        let end = end.ok_or_else(|| corrupt(format!("truncated while reading {what}")))?;
        let s = &self.bytes[self.at..end];
        self.at = end;
        Ok(s)
    }

    fn u16(&mut self, what: &str) -> Result<u16, CorruptSnapshot> {
        Ok(u16::from_le_bytes(self.take(2, what)?.try_into().expect("2 bytes")))
    }

    fn u64(&mut self, what: &str) -> Result<u64, CorruptSnapshot> {
        Ok(u64::from_le_bytes(self.take(8, what)?.try_into().expect("8 bytes")))
    }

    fn f64(&mut self, what: &str) -> Result<f64, CorruptSnapshot> {
        Ok(f64::from_le_bytes(self.take(8, what)?.try_into().expect("8 bytes")))
    }
}

pub fn decode_snapshot(bytes: &[u8]) -> Result<WaveFunction, CorruptSnapshot> {
    let mut r = Reader { bytes, at: 0 };
    if r.take(4, "magic")? != MAGIC {
        return Err(corrupt("bad magic (expected WVLB)"));
    }
    let version = r.u16("version")?;
    if version != FORMAT_VERSION {
        return Err(corrupt(format!("unsupported format version {version}")));
    }
    let dims = r.u16("axis count")?;
    if !(1..=2).contains(&dims) {
        return Err(corrupt(format!("axis count {dims} (expected 1 or 2)")));
    }
    let mut axes = Vec::new();
    for i in 0..dims {
        let n = r.u64("axis length")?;
        let min = r.f64("axis min")?;
        let max = r.f64("axis max")?;
        let n = usize::try_from(n).map_err(|_| corrupt("axis length overflows"))?;
        axes.push(SpatialGrid::new(min, max, n).map_err(|e| corrupt(format!("axis {i}: {e}")))?);
    }
    let grid = match axes[..] {
        [x] => Grid::One(x),
        [x, y] => Grid::Two(SpatialGrid2D::new(x, y)),
        _ => unreachable!("axis count checked"),
    };
    let t = r.f64("time")?;
    let n = grid.len();
    let payload = n.checked_mul(16).ok_or_else(|| corrupt("sample count overflows"))?;
    let data = r.take(payload, "samples")?;
    if r.at != bytes.len() {
        return Err(corrupt(format!("{} trailing bytes", bytes.len() - r.at)));
    }
    let amps = data
        .chunks_exact(16)
        .map(|c| {
            Complex64::new(
                f64::from_le_bytes(c[..8].try_into().expect("8 bytes")),
                f64::from_le_bytes(c[8..].try_into().expect("8 bytes")),
            )
        })
        .collect();
    WaveFunction::new(grid, amps, t).map_err(|e| corrupt(e.to_string()))
}

fn e17(v: f64) -> String {
    format!("{v:.16e}")
}

fn join(values: &[f64]) -> String {
    values.iter().map(|v| e17(*v)).collect::<Vec<_>>().join(",")
}

pub fn snapshot_csv(psi: &WaveFunction) -> String {
    let mut out = String::new();
    let amps = psi.amplitudes();
    match psi.grid() {
        Grid::One(g) => {
            out.push_str("x,re_psi,im_psi,prob_density\n");
            for (x, z) in g.coordinates().into_iter().zip(amps) {
                writeln!(out, "{}", join(&[x, z.re, z.im, z.norm_sqr()])).expect("string write");
            }
        }
        Grid::Two(g) => {
            out.push_str("x,y,re_psi,im_psi,prob_density\n");
            let ys = g.y.coordinates();
            for (ix, x) in g.x.coordinates().into_iter().enumerate() {
                for (iy, y) in ys.iter().enumerate() {
                    let z = amps[g.index(ix, iy)];
                    writeln!(out, "{}", join(&[x, *y, z.re, z.im, z.norm_sqr()])).expect("string write");
                }
            }
        }
    }
    out
}

pub fn series_csv(series: &[SeriesRow]) -> String {
    let mut out = format!("{SERIES_HEADER}\n");
    for row in series {
        let r = &row.report;
        let v = [row.t, r.norm, r.x_mean, r.p_mean, r.x_var, r.p_var, r.kinetic_energy, r.potential_energy, r.total_energy];
        writeln!(out, "{}", join(&v)).expect("string write");
    }
    out
}

pub fn profile_csv(profile: &ScreenProfile) -> String {
    let mut out = format!("{PROFILE_HEADER}\n");
    for (y, i) in profile.y.iter().zip(&profile.intensity) {
        writeln!(out, "{}", join(&[*y, *i])).expect("string write");
    }
    out
}

/// Header names and numeric rows of a CSV written by this module.
pub fn parse_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>), String> {
    let mut lines = text.lines();
    let header: Vec<String> = lines.next().ok_or("empty file")?.split(',').map(str::to_string).collect();
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let row = line
            .split(',')
            .map(|v| v.parse::<f64>().map_err(|e| format!("row {}: `{v}`: {e}", i + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != header.len() {
            return Err(format!("row {}: {} fields, header has {}", i + 1, row.len(), header.len()));
        }
        rows.push(row);
    }
    Ok((header, rows))
}

/// Writes through a sibling temporary file and renames it into place, so
/// readers see either nothing or the complete file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}
