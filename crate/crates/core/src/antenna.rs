//! Directional antenna element radiation pattern.
//!
//! Implements the 3GPP TR 38.901 single-element pattern: a parabolic
//! attenuation in zenith and azimuth, floored by the side-lobe level and
//! front-to-back ratio, on top of a maximum element gain. An isotropic
//! fallback returns 0 dB everywhere.
//!
//! Angle convention: `theta` is the zenith angle measured from the global
//! up axis, so the pattern boresight sits at `theta = pi/2`; `phi` is the
//! azimuth measured from the array face normal.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const LN_10: f64 = std::f64::consts::LN_10;

/// Element pattern family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PatternKind {
    #[serde(rename = "tr38901")]
    Tr38901,
    #[serde(rename = "isotropic")]
    Isotropic,
}

/// Parameters of a single antenna element's radiation pattern.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElementPattern {
    pub kind: PatternKind,
    /// Maximum directional gain, dB.
    pub g_e_max_db: f64,
    /// Front-to-back attenuation cap, dB.
    pub a_max_db: f64,
    /// Vertical side-lobe attenuation cap, dB.
    pub sla_v_db: f64,
    /// Vertical half-power beamwidth, radians.
    pub theta_3db_rad: f64,
    /// Horizontal half-power beamwidth, radians.
    pub phi_3db_rad: f64,
}

impl ElementPattern {
    /// The TR 38.901 defaults: 8 dBi peak gain, 30 dB caps, 65 degree
    /// beamwidths.
    pub fn tr38901() -> Self {
        Self {
            kind: PatternKind::Tr38901,
            g_e_max_db: 8.0,
            a_max_db: 30.0,
            sla_v_db: 30.0,
            theta_3db_rad: 65.0_f64.to_radians(),
            phi_3db_rad: 65.0_f64.to_radians(),
        }
    }

    pub fn isotropic() -> Self {
        Self {
            kind: PatternKind::Isotropic,
            ..Self::tr38901()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.g_e_max_db < 0.0 || self.a_max_db < 0.0 || self.sla_v_db < 0.0 {
            return Err(Error::Validation(
                "pattern dB parameters must be >= 0".into(),
            ));
        }
        if !(self.theta_3db_rad > 0.0 && self.theta_3db_rad < PI)
            || !(self.phi_3db_rad > 0.0 && self.phi_3db_rad < PI)
        {
            return Err(Error::Validation(
                "beamwidths must lie in (0, pi) radians".into(),
            ));
        }
        Ok(())
    }

    /// Composite element gain in dB at zenith angle `theta` in [0, pi]
    /// and azimuth `phi` in [-pi, pi].
    pub fn gain_db(&self, theta: f64, phi: f64) -> Result<f64> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::Domain(format!(
                "zenith angle {theta} outside [0, pi]"
            )));
        }
        if !(-PI..=PI).contains(&phi) {
            return Err(Error::Domain(format!(
                "azimuth angle {phi} outside [-pi, pi]"
            )));
        }
        Ok(self.gain_db_unchecked(theta, phi))
    }

    /// Gain in dB without the range checks; used on the hot paths where
    /// the angles come from `atan2`/`asin` and are in range by
    /// construction.
    #[inline]
    pub fn gain_db_unchecked(&self, theta: f64, phi: f64) -> f64 {
        match self.kind {
            PatternKind::Isotropic => 0.0,
            PatternKind::Tr38901 => {
                let tv = (theta - PI / 2.0) / self.theta_3db_rad;
                let a_v = (12.0 * tv * tv).min(self.sla_v_db);
                let th = phi / self.phi_3db_rad;
                let a_h = (12.0 * th * th).min(self.a_max_db);
                self.g_e_max_db - (a_v + a_h).min(self.a_max_db)
            }
        }
    }

    /// Dimensionless power gain, `10^(gain_db / 10)`.
    pub fn gain_linear(&self, theta: f64, phi: f64) -> Result<f64> {
        Ok(db_to_linear(self.gain_db(theta, phi)?))
    }

    /// Amplitude gain `10^(gain_db / 20)` parameterized by the departure
    /// direction: `sin_elev` is the sine of the elevation above the
    /// horizontal plane (`dz / r`), `phi` the azimuth from boresight.
    /// The channel paths all route through this form so their results
    /// agree bit-for-bit.
    #[inline]
    pub(crate) fn amplitude_gain_dir(&self, sin_elev: f64, phi: f64) -> f64 {
        match self.kind {
            PatternKind::Isotropic => 1.0,
            PatternKind::Tr38901 => {
                // asin(dz / r) = -(theta - pi/2) for theta = acos(dz / r).
                let tv = crate::fastmath::fasin(sin_elev) / self.theta_3db_rad;
                let a_v = (12.0 * tv * tv).min(self.sla_v_db);
                let th = phi / self.phi_3db_rad;
                let a_h = (12.0 * th * th).min(self.a_max_db);
                let q = (a_v + a_h).min(self.a_max_db);
                crate::fastmath::fexp((self.g_e_max_db - q) * (LN_10 / 20.0))
            }
        }
    }
}

#[inline]
pub fn db_to_linear(db: f64) -> f64 {
    (db * (LN_10 / 10.0)).exp()
}

#[inline]
pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const HALF_PI: f64 = PI / 2.0;

    #[test]
    fn boresight_gain_is_max() {
        let p = ElementPattern::tr38901();
        assert_eq!(p.gain_db(HALF_PI, 0.0).unwrap(), 8.0);
    }

    #[test]
    fn half_beamwidth_azimuth_costs_three_db() {
        // At half the half-power beamwidth: 12 * (0.5)^2 = 3 dB.
        let p = ElementPattern::tr38901();
        let g = p.gain_db(HALF_PI, 32.5_f64.to_radians()).unwrap();
        assert!((g - 5.0).abs() < 1e-12, "got {g}");
    }

    #[test]
    fn back_lobe_hits_front_to_back_cap() {
        // A_H = min(12 * (180/65)^2, 30) = 30, so G = 8 - 30.
        let p = ElementPattern::tr38901();
        let g = p.gain_db(HALF_PI, PI).unwrap();
        assert_eq!(g, -22.0);
    }

    #[test]
    fn linear_gain_values() {
        let p = ElementPattern::tr38901();
        let g = p.gain_linear(HALF_PI, 0.0).unwrap();
        assert!((g - 10f64.powf(0.8)).abs() < 1e-12);
        assert!((g - 6.3096).abs() < 1e-4);

        let iso = ElementPattern::isotropic();
        assert_eq!(iso.gain_linear(0.3, -2.0).unwrap(), 1.0);

        let back = p.gain_linear(HALF_PI, PI).unwrap();
        assert!((back - 10f64.powf(-2.2)).abs() < 1e-12);
        assert!((back - 0.00631).abs() < 1e-5);
    }

    #[test]
    fn out_of_range_angles_error() {
        let p = ElementPattern::tr38901();
        assert!(p.gain_db(-0.01, 0.0).is_err());
        assert!(p.gain_db(PI + 0.01, 0.0).is_err());
        assert!(p.gain_db(HALF_PI, PI + 0.01).is_err());
        assert!(p.gain_db(HALF_PI, -PI - 0.01).is_err());
    }

    #[test]
    fn amplitude_gain_matches_linear() {
        let p = ElementPattern::tr38901();
        for (theta, phi) in [(HALF_PI, 0.3), (1.1, -0.9), (2.0, 2.5)] {
            let amp = p.amplitude_gain_dir(theta.cos(), phi);
            let lin = p.gain_linear(theta, phi).unwrap();
            assert!((amp * amp - lin).abs() < 1e-9 * lin);
        }
    }

    proptest! {
        #[test]
        fn azimuth_and_zenith_symmetry(
            delta in 0.0..HALF_PI,
            phi in -PI..PI,
        ) {
            let p = ElementPattern::tr38901();
            let a = p.gain_db(HALF_PI, phi).unwrap();
            let b = p.gain_db(HALF_PI, -phi).unwrap();
            prop_assert!((a - b).abs() < 1e-12);

            let up = p.gain_db(HALF_PI + delta, phi).unwrap();
            let down = p.gain_db(HALF_PI - delta, phi).unwrap();
            prop_assert!((up - down).abs() < 1e-9);
        }

        #[test]
        fn gain_bounded_and_peaks_at_boresight(
            theta in 0.0..PI,
            phi in -PI..PI,
        ) {
            let p = ElementPattern::tr38901();
            let g = p.gain_db(theta, phi).unwrap();
            prop_assert!(g <= p.g_e_max_db + 1e-12);
            prop_assert!(g >= p.g_e_max_db - p.a_max_db - 1e-12);
            prop_assert!(g <= p.gain_db(HALF_PI, 0.0).unwrap() + 1e-12);
        }
    }
}
