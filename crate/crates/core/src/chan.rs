//! Shared per-element propagation arithmetic.
//!
//! The beam map and the ray tracer assemble channel coefficients through
//! the same helper so that their line-of-sight degenerate cases agree
//! bit-for-bit.

use crate::antenna::ElementPattern;
use crate::fastmath::fsin_cos;
use crate::geom::Vec3;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Radiomap values below this level are clamped; cells with no
/// propagation paths report exactly this floor.
pub const NOISE_FLOOR_DBM: f64 = -300.0;

/// One propagation term: amplitude `sqrt(G) / r_total`, phase
/// `2 pi r_total / lambda`, with the element gain evaluated along the
/// departure segment `dep` (from the element toward its first
/// interaction point or the receiver).
#[inline]
pub(crate) fn element_term(
    pattern: &ElementPattern,
    k_wave: f64,
    dep: Vec3,
    dep_len: f64,
    r_total: f64,
) -> Complex64 {
    let amp_gain = pattern.amplitude_gain_dir(dep.z / dep_len, dep.y.atan2(dep.x));
    let (s, c) = fsin_cos(k_wave * r_total);
    let scale = amp_gain / r_total;
    Complex64::new(c * scale, s * scale)
}

/// The isotropic-receive-aperture power scale `lambda^2 / (4 pi)^2`
/// times the transmit power.
#[inline]
pub fn power_scale(lambda_m: f64, p_t_mw: f64) -> f64 {
    let q = lambda_m / (4.0 * PI);
    q * q * p_t_mw
}

/// Linear milliwatts to dBm, clamped at the noise floor.
#[inline]
pub fn mw_to_dbm(mw: f64) -> f64 {
    (10.0 * mw.log10()).max(NOISE_FLOOR_DBM)
}
