//! Deterministic radio-coverage simulation for directional antenna
//! arrays over extruded urban scenes.
//!
//! The crate covers the full physical pipeline:
//!
//! - [`scene`]: extruded-polygon buildings with electromagnetic
//!   materials, height-map rasterization, and synthetic scene generation;
//! - [`antenna`] / [`array`]: directional element patterns, uniform
//!   planar array geometry, and SSB beam-steering codebooks;
//! - [`beammap`]: analytical line-of-sight coverage maps computed from
//!   the array configuration alone;
//! - [`raytrace`]: deterministic multipath enumeration (image-method
//!   specular reflections, optional wedge diffraction) and radiomap
//!   computation;
//! - [`metrics`]: coverage statistics and prediction-error measures;
//! - [`dataset`]: configuration-space enumeration, manifests,
//!   train/val/test protocols, and sparse sampling.
//!
//! All randomness is seeded and all parallel computations are
//! reproducible bit-for-bit across thread counts.

pub mod antenna;
pub mod array;
pub mod beammap;
mod chan;
mod fastmath;
pub mod dataset;
pub mod error;
pub mod geom;
pub mod grid;
pub mod metrics;
pub mod raytrace;
pub mod scene;

pub use chan::{mw_to_dbm, power_scale, NOISE_FLOOR_DBM};
pub use error::{Error, Result};
