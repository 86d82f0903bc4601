//! Analytical line-of-sight beam maps.
//!
//! A beam map is the coverage pattern an array configuration would
//! produce over the observation plane with free-space propagation only:
//! element directivity, exact per-element distances across the aperture,
//! precoded coherent combination, and the receive-aperture scale. It is
//! computed from the configuration alone, with no environmental
//! occlusion, which makes it a self-contained spatial encoding of the
//! transmitter configuration.
//!
//! Per grid cell the value is `lambda^2 / (4 pi)^2 * P_t * |w^H h|^2`
//! where `h` collects the per-element line-of-sight coefficients
//! `sqrt(G) e^{j 2 pi r / lambda} / r`.

use crate::antenna::PatternKind;
use crate::array::{element_positions, precoding_vector, ArrayConfig};
use crate::chan::{element_term, mw_to_dbm, power_scale};
use crate::fastmath::{asin_v, exp_v, sin_cos_v, LANES};
use wide::f64x4;
use crate::error::{Error, Result};
use crate::geom::{Point2, Vec3};
use crate::grid::{GridMap, Unit};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

const LN_10: f64 = std::f64::consts::LN_10;

/// The horizontal plane on which coverage is evaluated: K x K square
/// cells of side `cell_size_m` centered on `center_m`, receivers at cell
/// centers at height `height_m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObservationPlane {
    pub k: usize,
    pub cell_size_m: f64,
    pub height_m: f64,
    pub center_m: Point2,
}

impl ObservationPlane {
    pub fn new(k: usize, cell_size_m: f64, height_m: f64, center_m: Point2) -> Result<Self> {
        if k == 0 {
            return Err(Error::Validation("grid count K must be >= 1".into()));
        }
        if !(cell_size_m > 0.0) {
            return Err(Error::Validation("cell size must be > 0".into()));
        }
        Ok(Self {
            k,
            cell_size_m,
            height_m,
            center_m,
        })
    }

    /// The 128-cell, 10 m, 1.5 m-height plane used by the default
    /// pipeline (1280 x 1280 m coverage).
    pub fn default_plane() -> Self {
        Self {
            k: 128,
            cell_size_m: 10.0,
            height_m: 1.5,
            center_m: Point2::new(0.0, 0.0),
        }
    }

    /// South-west corner of cell (0, 0).
    pub fn origin(&self) -> Point2 {
        let half = self.k as f64 * self.cell_size_m / 2.0;
        Point2::new(self.center_m.x - half, self.center_m.y - half)
    }

    pub fn cell_center(&self, row: usize, col: usize) -> Point2 {
        let o = self.origin();
        Point2::new(
            o.x + (col as f64 + 0.5) * self.cell_size_m,
            o.y + (row as f64 + 0.5) * self.cell_size_m,
        )
    }

    pub fn empty_grid(&self, unit: Unit) -> Result<GridMap> {
        GridMap::new(self.k, self.cell_size_m, self.origin(), unit)
    }
}

/// Per-element line-of-sight channel coefficients toward `rx`, row-major
/// element order.
pub fn los_channel(config: &ArrayConfig, tx: Vec3, rx: Vec3) -> Result<Vec<Complex64>> {
    config.validate()?;
    let k_wave = 2.0 * std::f64::consts::PI / config.wavelength_m();
    let pattern = &config.element_pattern;
    element_positions(config, tx)
        .iter()
        .map(|&e| {
            let dep = rx - e;
            let r = dep.norm();
            if r == 0.0 {
                return Err(Error::Geometry(
                    "receiver coincides with an antenna element".into(),
                ));
            }
            Ok(element_term(pattern, k_wave, dep, r, r))
        })
        .collect()
}

/// Beam map value at a single receiver position, linear milliwatts.
pub fn beam_map_value(config: &ArrayConfig, tx: Vec3, rx: Vec3, p_t_mw: f64) -> Result<f64> {
    let w = precoding_vector(config)?;
    let h = los_channel(config, tx, rx)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (wn, hn) in w.0.iter().zip(&h) {
        acc += wn.conj() * hn;
    }
    Ok(power_scale(config.wavelength_m(), p_t_mw) * acc.norm_sqr())
}

/// Compute the full beam map over an observation plane, in dBm.
///
/// Cells are evaluated at their centers at the plane height. A cell
/// whose 3-D distance to the transmitter is below one wavelength is
/// replaced by the map maximum and flagged. Cells are processed in
/// parallel; the per-cell element summation is fixed row-major, so the
/// output is identical for any thread count.
pub fn compute_beam_map(
    config: &ArrayConfig,
    plane: &ObservationPlane,
    tx: Vec3,
    p_t_mw: f64,
) -> Result<GridMap> {
    if !(plane.height_m < tx.z) {
        return Err(Error::Domain(format!(
            "observation plane height {} must lie below the transmitter at {}",
            plane.height_m, tx.z
        )));
    }
    let weights = precoding_vector(config)?.0;
    let positions = element_positions(config, tx);
    let lambda = config.wavelength_m();
    let k_wave = 2.0 * std::f64::consts::PI / lambda;
    let scale_mw = power_scale(lambda, p_t_mw);
    let pat = config.element_pattern;
    let isotropic = pat.kind == PatternKind::Isotropic;

    let n_rows = config.n_rows;
    let n_cols = config.n_cols;
    // Horizontal lanes padded to the SIMD width; padded columns carry
    // zero weights so they contribute exactly nothing.
    let nc_pad = n_cols.div_ceil(LANES) * LANES;
    let mut w_re = vec![0.0f64; n_rows * nc_pad];
    let mut w_im = vec![0.0f64; n_rows * nc_pad];
    for r in 0..n_rows {
        for c in 0..n_cols {
            let w = weights[r * n_cols + c];
            w_re[r * nc_pad + c] = w.re;
            w_im[r * nc_pad + c] = w.im;
        }
    }
    // Element y per column and dz per array row; dz is constant across
    // the map because the plane is horizontal.
    let mut elem_y = vec![0.0f64; nc_pad];
    for c in 0..n_cols {
        elem_y[c] = positions[c].y;
    }
    let elem_dz: Vec<(f64, f64)> = (0..n_rows)
        .map(|r| {
            let dz = plane.height_m - positions[r * n_cols].z;
            (dz, dz * dz)
        })
        .collect();
    let dz_center = plane.height_m - tx.z;
    let ln10_20 = LN_10 / 20.0;

    let mut grid = plane.empty_grid(Unit::Dbm)?;
    let k = plane.k;
    let origin = plane.origin();
    let cell = plane.cell_size_m;

    struct RowResult {
        values: Vec<f64>,
        flagged: Vec<usize>,
    }

    let rows: Vec<RowResult> = (0..k)
        .into_par_iter()
        .map(|map_row| {
            let cy = origin.y + (map_row as f64 + 0.5) * cell;
            let mut values = vec![0.0f64; k];
            let mut flagged = Vec::new();
            let mut col_t = vec![1.0f64; nc_pad];
            let mut col_ah = vec![0.0f64; nc_pad];
            for map_col in 0..k {
                let cx = origin.x + (map_col as f64 + 0.5) * cell;
                let dx = cx - tx.x;
                let dx2 = dx * dx;
                let dy_center = cy - tx.y;
                if dx2 + dy_center * dy_center + dz_center * dz_center < lambda * lambda {
                    flagged.push(map_col);
                    continue;
                }
                for c in 0..n_cols {
                    let dy = cy - elem_y[c];
                    col_t[c] = dx2 + dy * dy;
                    if !isotropic {
                        let th = dy.atan2(dx) / pat.phi_3db_rad;
                        col_ah[c] = (12.0 * th * th).min(pat.a_max_db);
                    }
                }
                let mut acc_re = f64x4::splat(0.0);
                let mut acc_im = f64x4::splat(0.0);
                let theta3_v = f64x4::splat(pat.theta_3db_rad);
                let slav_v = f64x4::splat(pat.sla_v_db);
                let amax_v = f64x4::splat(pat.a_max_db);
                let gmax_v = f64x4::splat(pat.g_e_max_db);
                let ln_v = f64x4::splat(ln10_20);
                let kw_v = f64x4::splat(k_wave);
                for (ar, &(dz, dz2)) in elem_dz.iter().enumerate() {
                    let wrow_re = &w_re[ar * nc_pad..(ar + 1) * nc_pad];
                    let wrow_im = &w_im[ar * nc_pad..(ar + 1) * nc_pad];
                    let dz_v = f64x4::splat(dz);
                    let dz2_v = f64x4::splat(dz2);
                    for (((t4, ah4), wre4), wim4) in col_t
                        .chunks_exact(LANES)
                        .zip(col_ah.chunks_exact(LANES))
                        .zip(wrow_re.chunks_exact(LANES))
                        .zip(wrow_im.chunks_exact(LANES))
                    {
                        let t = f64x4::from([t4[0], t4[1], t4[2], t4[3]]);
                        let r = (t + dz2_v).sqrt();
                        let amp = if isotropic {
                            f64x4::splat(1.0)
                        } else {
                            let ah = f64x4::from([ah4[0], ah4[1], ah4[2], ah4[3]]);
                            let tv = asin_v(dz_v / r) / theta3_v;
                            let a_v = (f64x4::splat(12.0) * tv * tv).min(slav_v);
                            let q = (a_v + ah).min(amax_v);
                            exp_v((gmax_v - q) * ln_v)
                        };
                        let (s, cph) = sin_cos_v(kw_v * r);
                        let scale = amp / r;
                        let hre = cph * scale;
                        let him = s * scale;
                        let wre = f64x4::from([wre4[0], wre4[1], wre4[2], wre4[3]]);
                        let wim = f64x4::from([wim4[0], wim4[1], wim4[2], wim4[3]]);
                        // conj(w) * h
                        acc_re += wre * hre + wim * him;
                        acc_im += wre * him - wim * hre;
                    }
                }
                let re_arr = acc_re.to_array();
                let im_arr = acc_im.to_array();
                let mut re = 0.0f64;
                let mut im = 0.0f64;
                for l in 0..LANES {
                    re += re_arr[l];
                    im += im_arr[l];
                }
                values[map_col] = mw_to_dbm(scale_mw * (re * re + im * im));
            }
            RowResult { values, flagged }
        })
        .collect();

    let mut any_flagged = Vec::new();
    for (row, r) in rows.iter().enumerate() {
        for (col, &v) in r.values.iter().enumerate() {
            grid.set(row, col, v);
        }
        for &col in &r.flagged {
            any_flagged.push((row, col));
        }
    }
    if !any_flagged.is_empty() {
        let max = grid
            .values()
            .iter()
            .zip(0..)
            .filter(|(v, i)| {
                !any_flagged.contains(&(i / k, i % k)) && v.is_finite()
            })
            .map(|(v, _)| *v)
            .fold(f64::NEG_INFINITY, f64::max);
        if !max.is_finite() {
            return Err(Error::Geometry(
                "every cell lies within one wavelength of the transmitter".into(),
            ));
        }
        for &(row, col) in &any_flagged {
            grid.set(row, col, max);
            grid.push_flagged(row, col);
        }
    }
    Ok(grid)
}
