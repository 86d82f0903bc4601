//! Uniform planar array geometry and SSB precoding.
//!
//! The array face is vertical: elements sit in the plane `x = tx.x`, with
//! horizontal offsets along +y and vertical offsets along +z, so the
//! boresight points along +x. Element order is row-major: the vertical
//! index is the major axis, the horizontal index the minor one; precoding
//! weights and channel rows share this order.
//!
//! Azimuth angles throughout the crate are measured counter-clockwise
//! from the boresight (+x) axis when viewed from above: `atan2(y, x)`.

use crate::antenna::ElementPattern;
use crate::error::{Error, Result};
use crate::geom::Vec3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

/// Propagation speed used for wavelength conversion, m/s.
pub const SPEED_OF_LIGHT: f64 = 3.0e8;

/// One transmitter configuration: carrier, array shape, element pattern,
/// and beam steering direction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrayConfig {
    pub carrier_hz: f64,
    /// Vertical element count.
    pub n_rows: usize,
    /// Horizontal element count.
    pub n_cols: usize,
    /// Inter-element spacing in wavelengths; fixed at 0.5.
    pub spacing_wavelengths: f64,
    pub element_pattern: ElementPattern,
    /// Azimuth steering angle, radians, counter-clockwise from boresight.
    pub beam_azimuth_rad: f64,
    /// Zenith steering angle, radians; pi/2 steers in the horizontal plane.
    pub beam_zenith_rad: f64,
}

impl ArrayConfig {
    pub fn new(carrier_hz: f64, n_rows: usize, n_cols: usize, beam_azimuth_rad: f64) -> Self {
        Self {
            carrier_hz,
            n_rows,
            n_cols,
            spacing_wavelengths: 0.5,
            element_pattern: ElementPattern::tr38901(),
            beam_azimuth_rad,
            beam_zenith_rad: FRAC_PI_2,
        }
    }

    pub fn with_pattern(mut self, pattern: ElementPattern) -> Self {
        self.element_pattern = pattern;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.carrier_hz > 0.0) {
            return Err(Error::Validation("carrier_hz must be > 0".into()));
        }
        if self.n_rows == 0 || self.n_cols == 0 {
            return Err(Error::Validation("array dimensions must be >= 1".into()));
        }
        if self.spacing_wavelengths != 0.5 {
            return Err(Error::Validation(
                "inter-element spacing is fixed at 0.5 wavelengths".into(),
            ));
        }
        self.element_pattern.validate()
    }

    pub fn n_elements(&self) -> usize {
        self.n_rows * self.n_cols
    }

    pub fn wavelength_m(&self) -> f64 {
        SPEED_OF_LIGHT / self.carrier_hz
    }

    pub fn spacing_m(&self) -> f64 {
        self.spacing_wavelengths * self.wavelength_m()
    }

    /// Stable identifier used in file names and manifests,
    /// e.g. `6700MHz_32x32_az-32.00`.
    pub fn id(&self) -> String {
        format!(
            "{}MHz_{}x{}_az{:+.2}",
            self.carrier_hz / 1.0e6,
            self.n_rows,
            self.n_cols,
            self.beam_azimuth_rad.to_degrees()
        )
    }

    /// Element index offsets from the array center in units of the
    /// spacing: `(vertical, horizontal)` per element, row-major.
    pub fn index_offsets(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.n_elements());
        for r in 0..self.n_rows {
            let pv = r as f64 - (self.n_rows as f64 - 1.0) / 2.0;
            for c in 0..self.n_cols {
                let ph = c as f64 - (self.n_cols as f64 - 1.0) / 2.0;
                out.push((pv, ph));
            }
        }
        out
    }
}

/// Element positions in meters, centered on the transmitter, row-major.
pub fn element_positions(config: &ArrayConfig, tx: Vec3) -> Vec<Vec3> {
    let d = config.spacing_m();
    config
        .index_offsets()
        .iter()
        .map(|&(pv, ph)| Vec3::new(tx.x, tx.y + ph * d, tx.z + pv * d))
        .collect()
}

/// Unit-norm complex precoding weights, one per element, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecodingVector(pub Vec<Complex64>);

impl PrecodingVector {
    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|w| w.norm_sqr()).sum()
    }
}

/// Far-field steering weights for the configured beam direction.
///
/// Each weight carries the conjugate of the plane-wave phase that the
/// channel accumulates toward `(beam_zenith, beam_azimuth)`, so that
/// `w^H h` combines coherently in the steered direction:
/// `w_n = exp(-j 2 pi (d / lambda) (p_h sin(theta) sin(phi) + p_v cos(theta))) / sqrt(N)`
/// with `(p_v, p_h)` the element index offsets from the array center.
pub fn precoding_vector(config: &ArrayConfig) -> Result<PrecodingVector> {
    config.validate()?;
    if config.beam_azimuth_rad.abs() >= FRAC_PI_2 {
        return Err(Error::Domain(format!(
            "beam azimuth {} rad is outside the front hemisphere",
            config.beam_azimuth_rad
        )));
    }
    let n = config.n_elements() as f64;
    let scale = 1.0 / n.sqrt();
    let sin_theta = config.beam_zenith_rad.sin();
    // cos(theta) via sin(pi/2 - theta) so the default horizontal steering
    // has an exactly zero vertical gradient.
    let cos_theta = (FRAC_PI_2 - config.beam_zenith_rad).sin();
    let horiz = sin_theta * config.beam_azimuth_rad.sin();
    let k_eff = 2.0 * PI * config.spacing_wavelengths;
    let weights = config
        .index_offsets()
        .iter()
        .map(|&(pv, ph)| {
            let phase = -k_eff * (ph * horiz + pv * cos_theta);
            Complex64::from_polar(scale, phase)
        })
        .collect();
    Ok(PrecodingVector(weights))
}

/// One row of the configuration space: a carrier, an array shape, and the
/// azimuth beam set swept for it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandPlanEntry {
    pub carrier_hz: f64,
    pub rows: usize,
    pub cols: usize,
    pub beams_deg: Vec<f64>,
}

/// The default configuration space: dense azimuth sweeps for the square
/// 6.7 GHz arrays plus single-beam entries for the rectangular and
/// lower-band deployments; 98 configurations in total.
pub fn default_band_plan() -> Vec<BandPlanEntry> {
    serde_json::from_str(include_str!("../assets/band_plan.json"))
        .expect("embedded band plan parses")
}

/// Load a band plan from a JSON file.
pub fn load_band_plan(path: &std::path::Path) -> Result<Vec<BandPlanEntry>> {
    let json = std::fs::read_to_string(path)?;
    let plan: Vec<BandPlanEntry> =
        serde_json::from_str(&json).map_err(|e| Error::Parse(format!("band plan: {e}")))?;
    for entry in &plan {
        if entry.beams_deg.is_empty() {
            return Err(Error::Config(format!(
                "band plan entry {}x{} @ {} Hz lists no beams",
                entry.rows, entry.cols, entry.carrier_hz
            )));
        }
    }
    Ok(plan)
}

/// Expand one band-plan entry into its swept beam configurations.
pub fn codebook(entry: &BandPlanEntry) -> Result<Vec<ArrayConfig>> {
    if entry.rows == 0 || entry.cols == 0 || !(entry.carrier_hz > 0.0) {
        return Err(Error::Config(format!(
            "invalid band plan entry {}x{} @ {} Hz",
            entry.rows, entry.cols, entry.carrier_hz
        )));
    }
    if entry.beams_deg.is_empty() {
        return Err(Error::Config("band plan entry lists no beams".into()));
    }
    Ok(entry
        .beams_deg
        .iter()
        .map(|&deg| ArrayConfig::new(entry.carrier_hz, entry.rows, entry.cols, deg.to_radians()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_element_sits_at_tx() {
        let cfg = ArrayConfig::new(3.0e9, 1, 1, 0.0);
        let tx = Vec3::new(1.0, 2.0, 40.0);
        assert_eq!(element_positions(&cfg, tx), vec![tx]);
    }

    #[test]
    fn two_element_row_offsets() {
        // f = 3 GHz: lambda = 0.1 m, d = 0.05 m, y offsets -/+ 0.025.
        let cfg = ArrayConfig::new(3.0e9, 1, 2, 0.0);
        assert_eq!(cfg.wavelength_m(), 0.1);
        let pos = element_positions(&cfg, Vec3::new(0.0, 0.0, 40.0));
        assert_eq!(pos[0].y, -0.025);
        assert_eq!(pos[1].y, 0.025);
        assert!(pos.iter().all(|p| p.x == 0.0 && p.z == 40.0));
    }

    #[test]
    fn array_centroid_is_tx() {
        let cfg = ArrayConfig::new(6.7e9, 2, 2, 0.0);
        let tx = Vec3::new(0.0, 0.0, 40.0);
        let pos = element_positions(&cfg, tx);
        let mut c = Vec3::new(0.0, 0.0, 0.0);
        for p in &pos {
            c = c + *p;
        }
        c = c * (1.0 / pos.len() as f64);
        assert!(c.distance(tx) < 1e-12);
    }

    #[test]
    fn boresight_weights_are_uniform_real() {
        for (rows, cols) in [(1, 2), (2, 2), (8, 8), (3, 5)] {
            let cfg = ArrayConfig::new(6.7e9, rows, cols, 0.0);
            let w = precoding_vector(&cfg).unwrap();
            let expect = 1.0 / ((rows * cols) as f64).sqrt();
            for v in &w.0 {
                assert_eq!(v.im, 0.0);
                assert!((v.re - expect).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn two_element_steering_phase_difference() {
        // 1x2 array steered 30 degrees: inter-element phase difference
        // 2 pi * 0.5 * sin(30 deg) = pi/2.
        let cfg = ArrayConfig::new(3.0e9, 1, 2, 30.0_f64.to_radians());
        let w = precoding_vector(&cfg).unwrap();
        let dphi = (w.0[1] * w.0[0].conj()).arg();
        assert!((dphi.abs() - FRAC_PI_2).abs() < 1e-12, "got {dphi}");
    }

    #[test]
    fn large_array_weights_are_unit_norm() {
        let cfg = ArrayConfig::new(6.7e9, 32, 32, 17.0_f64.to_radians());
        let w = precoding_vector(&cfg).unwrap();
        assert!((w.norm_sq() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn steering_outside_front_hemisphere_errors() {
        let cfg = ArrayConfig::new(6.7e9, 8, 8, FRAC_PI_2);
        assert!(matches!(precoding_vector(&cfg), Err(Error::Domain(_))));
    }

    #[test]
    fn default_plan_matches_published_sweeps() {
        let plan = default_band_plan();
        let total: usize = plan.iter().map(|e| e.beams_deg.len()).sum();
        assert_eq!(total, 98);

        let sweep32 = plan
            .iter()
            .find(|e| e.rows == 32 && e.cols == 32)
            .expect("32x32 entry");
        assert_eq!(sweep32.carrier_hz, 6.7e9);
        let cfgs = codebook(sweep32).unwrap();
        assert_eq!(cfgs.len(), 64);
        assert_eq!(cfgs[0].beam_azimuth_rad, (-32.0_f64).to_radians());
        assert_eq!(cfgs[63].beam_azimuth_rad, 31.0_f64.to_radians());

        let sweep16 = plan
            .iter()
            .find(|e| e.rows == 16 && e.cols == 16)
            .expect("16x16 entry");
        let beams: Vec<f64> = codebook(sweep16)
            .unwrap()
            .iter()
            .map(|c| c.beam_azimuth_rad.to_degrees())
            .collect();
        assert_eq!(beams.len(), 16);
        assert!((beams[0] + 28.0).abs() < 1e-12);
        assert!((beams[15] - 24.5).abs() < 1e-12);
        for pair in beams.windows(2) {
            assert!((pair[1] - pair[0] - 3.5).abs() < 1e-9);
        }

        let low = plan
            .iter()
            .find(|e| e.carrier_hz == 3.5e9 && e.rows == 8 && e.cols == 8)
            .expect("3.5 GHz 8x8 entry");
        let cfgs = codebook(low).unwrap();
        assert_eq!(cfgs.len(), 1);
        assert_eq!(cfgs[0].beam_azimuth_rad, 0.0);
    }

    #[test]
    fn config_ids_are_stable() {
        let cfg = ArrayConfig::new(6.7e9, 32, 32, (-32.0_f64).to_radians());
        assert_eq!(cfg.id(), "6700MHz_32x32_az-32.00");
        let cfg = ArrayConfig::new(1.8e9, 2, 4, 0.0);
        assert_eq!(cfg.id(), "1800MHz_2x4_az+0.00");
    }

    #[test]
    fn empty_beam_list_rejected() {
        let entry = BandPlanEntry {
            carrier_hz: 2.6e9,
            rows: 4,
            cols: 4,
            beams_deg: vec![],
        };
        assert!(matches!(codebook(&entry), Err(Error::Config(_))));
    }
}
