//! Geo-referenced K x K scalar fields (radiomaps, beam maps, height maps).
//!
//! Grids are stored row-major with row 0 at the southern edge. Invalid
//! cells (building interiors, flagged receivers) carry a NaN sentinel and
//! are excluded from masks, metrics, and rendering.
//!
//! On disk a grid is a pair of files: `<path>` holds little-endian `f32`
//! values, row-major, row 0 southernmost; `<path>.json` is a sidecar with
//! the grid count, cell size, origin, and unit.

use crate::error::{Error, Result};
use crate::geom::Point2;
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;

/// Physical unit of the stored cell values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Unit {
    #[serde(rename = "dBm")]
    Dbm,
    #[serde(rename = "dB")]
    Db,
    #[serde(rename = "meters")]
    Meters,
    #[serde(rename = "linear_mW")]
    LinearMw,
}

/// A K x K scalar field over a uniform grid of square cells.
#[derive(Debug, Clone, PartialEq)]
pub struct GridMap {
    k: usize,
    cell_size_m: f64,
    /// Lower-left (south-west) corner of cell (0, 0).
    origin_m: Point2,
    unit: Unit,
    /// Row-major, row 0 southernmost; NaN marks invalid cells.
    values: Vec<f64>,
    /// Cells substituted under the near-transmitter singularity rule.
    /// In-memory diagnostic only; not serialized.
    flagged: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct Sidecar {
    k: usize,
    cell_size_m: f64,
    origin_m: [f64; 2],
    unit: Unit,
}

impl GridMap {
    pub fn new(k: usize, cell_size_m: f64, origin_m: Point2, unit: Unit) -> Result<Self> {
        if k == 0 {
            return Err(Error::Validation("grid count K must be >= 1".into()));
        }
        if !(cell_size_m > 0.0) {
            return Err(Error::Validation("cell size must be > 0".into()));
        }
        Ok(Self {
            k,
            cell_size_m,
            origin_m,
            unit,
            values: vec![0.0; k * k],
            flagged: Vec::new(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cell_size_m(&self) -> f64 {
        self.cell_size_m
    }

    pub fn origin_m(&self) -> Point2 {
        self.origin_m
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// Value at (row, col); row counts from the southern edge.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.k + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: f64) {
        self.values[row * self.k + col] = v;
    }

    /// Horizontal center of cell (row, col).
    pub fn cell_center(&self, row: usize, col: usize) -> Point2 {
        Point2::new(
            self.origin_m.x + (col as f64 + 0.5) * self.cell_size_m,
            self.origin_m.y + (row as f64 + 0.5) * self.cell_size_m,
        )
    }

    pub fn flagged(&self) -> &[(usize, usize)] {
        &self.flagged
    }

    pub fn push_flagged(&mut self, row: usize, col: usize) {
        self.flagged.push((row, col));
    }

    /// True for cells carrying a finite value.
    pub fn valid_mask(&self) -> Vec<bool> {
        self.values.iter().map(|v| !v.is_nan()).collect()
    }

    /// Write `<path>` (little-endian f32, row-major, row 0 southernmost)
    /// and the `<path>.json` sidecar.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut bytes = Vec::with_capacity(self.values.len() * 4);
        for v in &self.values {
            bytes.extend_from_slice(&(*v as f32).to_le_bytes());
        }
        fs::write(path, bytes)?;
        let sidecar = Sidecar {
            k: self.k,
            cell_size_m: self.cell_size_m,
            origin_m: [self.origin_m.x, self.origin_m.y],
            unit: self.unit,
        };
        let json = serde_json::to_string_pretty(&sidecar)
            .map_err(|e| Error::Parse(format!("sidecar encode: {e}")))?;
        fs::write(sidecar_path(path), json)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let json = fs::read_to_string(sidecar_path(path))?;
        let sidecar: Sidecar =
            serde_json::from_str(&json).map_err(|e| Error::Parse(format!("sidecar: {e}")))?;
        let bytes = fs::read(path)?;
        let expected = sidecar.k * sidecar.k * 4;
        if bytes.len() != expected {
            return Err(Error::Parse(format!(
                "grid payload is {} bytes, sidecar implies {expected}",
                bytes.len()
            )));
        }
        let mut grid = GridMap::new(
            sidecar.k,
            sidecar.cell_size_m,
            Point2::new(sidecar.origin_m[0], sidecar.origin_m[1]),
            sidecar.unit,
        )?;
        for (i, chunk) in bytes.chunks_exact(4).enumerate() {
            grid.values[i] = f32::from_le_bytes([chunk[0], chunk[1], chunk[2], chunk[3]]) as f64;
        }
        Ok(grid)
    }

    /// Render to PNG with a linear colormap over [lo, hi]; invalid cells
    /// are drawn black. Image row 0 is the northern edge.
    pub fn render_png(&self, path: &Path, lo: f64, hi: f64) -> Result<()> {
        if !(hi > lo) {
            return Err(Error::Domain(format!("bad render range {lo}:{hi}")));
        }
        let k = self.k as u32;
        let mut img = image::RgbImage::new(k, k);
        for row in 0..self.k {
            for col in 0..self.k {
                let v = self.get(row, col);
                let pix = if v.is_nan() {
                    [0, 0, 0]
                } else {
                    colormap(((v - lo) / (hi - lo)).clamp(0.0, 1.0))
                };
                // Flip vertically: southern row 0 at the image bottom.
                img.put_pixel(col as u32, k - 1 - row as u32, image::Rgb(pix));
            }
        }
        img.save(path)
            .map_err(|e| Error::Parse(format!("png encode: {e}")))?;
        Ok(())
    }
}

fn sidecar_path(path: &Path) -> std::path::PathBuf {
    let mut s = path.as_os_str().to_os_string();
    s.push(".json");
    s.into()
}

/// Five-stop dark-blue-to-yellow gradient, linear in t.
fn colormap(t: f64) -> [u8; 3] {
    const STOPS: [[f64; 3]; 5] = [
        [68.0, 1.0, 84.0],
        [59.0, 82.0, 139.0],
        [33.0, 145.0, 140.0],
        [94.0, 201.0, 98.0],
        [253.0, 231.0, 37.0],
    ];
    let x = t * (STOPS.len() - 1) as f64;
    let i = (x.floor() as usize).min(STOPS.len() - 2);
    let f = x - i as f64;
    let mut rgb = [0u8; 3];
    for c in 0..3 {
        rgb[c] = (STOPS[i][c] + f * (STOPS[i + 1][c] - STOPS[i][c])).round() as u8;
    }
    rgb
}
