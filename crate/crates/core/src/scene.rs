//! Urban propagation scenes: extruded-polygon buildings with
//! electromagnetic materials, height-map rasterization, and a synthetic
//! scene generator for reproducible desk-scale experiments.

use crate::error::{Error, Result};
use crate::geom::{
    point_in_polygon, polygon_intersects_rect, polygon_self_intersects, polygon_signed_area,
    Point2, Vec3,
};
use crate::grid::{GridMap, Unit};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;

/// Electromagnetic surface material.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Material {
    pub name: String,
    pub relative_permittivity: f64,
    pub conductivity_s_per_m: f64,
}

impl Material {
    pub fn new(name: &str, relative_permittivity: f64, conductivity_s_per_m: f64) -> Self {
        Self {
            name: name.to_string(),
            relative_permittivity,
            conductivity_s_per_m,
        }
    }

    /// Default wall material (marble-like dielectric).
    pub fn default_wall() -> Self {
        Self::new("marble", 7.0, 0.0)
    }

    /// Default roof material. Roof reflections are treated as a perfect
    /// conductor (R = -1) regardless of these parameters; they are carried
    /// for format compatibility.
    pub fn default_roof() -> Self {
        Self::new("metal", 1000.0, 1.0e7)
    }

    /// Default ground material (concrete).
    pub fn default_ground() -> Self {
        Self::new("concrete", 5.24, 0.0)
    }

    fn validate(&self, role: &str) -> Result<()> {
        if !(self.relative_permittivity > 1.0) {
            return Err(Error::Validation(format!(
                "{role} material '{}': relative_permittivity must be > 1 (got {})",
                self.name, self.relative_permittivity
            )));
        }
        if !(self.conductivity_s_per_m >= 0.0) {
            return Err(Error::Validation(format!(
                "{role} material '{}': conductivity_s_per_m must be >= 0 (got {})",
                self.name, self.conductivity_s_per_m
            )));
        }
        Ok(())
    }
}

/// A vertical prism with a flat roof: a simple counter-clockwise footprint
/// extruded from the ground to `height_m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Building {
    #[serde(rename = "footprint_m")]
    pub footprint: Vec<Point2>,
    pub height_m: f64,
    pub wall_material: Material,
    pub roof_material: Material,
}

impl Building {
    pub fn validate(&self, index: usize) -> Result<()> {
        if self.footprint.len() < 3 {
            return Err(Error::Validation(format!(
                "building {index}: footprint needs >= 3 vertices (got {})",
                self.footprint.len()
            )));
        }
        if polygon_self_intersects(&self.footprint) {
            return Err(Error::Validation(format!(
                "building {index}: footprint self-intersects"
            )));
        }
        if polygon_signed_area(&self.footprint) <= 0.0 {
            return Err(Error::Validation(format!(
                "building {index}: footprint winding must be counter-clockwise"
            )));
        }
        if !(self.height_m > 0.0) {
            return Err(Error::Validation(format!(
                "building {index}: height_m must be > 0 (got {})",
                self.height_m
            )));
        }
        self.wall_material.validate("wall")?;
        self.roof_material.validate("roof")?;
        Ok(())
    }

    pub fn bbox(&self) -> (f64, f64, f64, f64) {
        let mut x0 = f64::INFINITY;
        let mut y0 = f64::INFINITY;
        let mut x1 = f64::NEG_INFINITY;
        let mut y1 = f64::NEG_INFINITY;
        for v in &self.footprint {
            x0 = x0.min(v.x);
            y0 = y0.min(v.y);
            x1 = x1.max(v.x);
            y1 = y1.max(v.y);
        }
        (x0, y0, x1, y1)
    }

    /// True when the horizontal point lies in the closed footprint.
    pub fn contains_xy(&self, p: Point2) -> bool {
        point_in_polygon(p, &self.footprint)
    }
}

fn default_tx_position() -> Vec3 {
    Vec3::new(0.0, 0.0, 40.0)
}

fn default_map_height() -> f64 {
    1.5
}

/// The propagation environment: a square extent centered at the origin,
/// buildings, a ground material, and the transmitter position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub extent_m: f64,
    #[serde(default = "default_tx_position")]
    pub tx_position_m: Vec3,
    #[serde(default = "default_map_height")]
    pub map_height_m: f64,
    pub ground_material: Material,
    pub buildings: Vec<Building>,
}

impl Scene {
    /// An empty scene with default materials and transmitter placement.
    pub fn empty(extent_m: f64) -> Self {
        Self {
            extent_m,
            tx_position_m: default_tx_position(),
            map_height_m: default_map_height(),
            ground_material: Material::default_ground(),
            buildings: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.extent_m > 0.0) {
            return Err(Error::Validation(format!(
                "extent_m must be > 0 (got {})",
                self.extent_m
            )));
        }
        if !(self.tx_position_m.z > self.map_height_m) {
            return Err(Error::Validation(format!(
                "tx height {} must exceed map height {}",
                self.tx_position_m.z, self.map_height_m
            )));
        }
        self.ground_material.validate("ground")?;
        let half = self.extent_m / 2.0;
        for (i, b) in self.buildings.iter().enumerate() {
            b.validate(i)?;
            let (x0, y0, x1, y1) = b.bbox();
            if x0 < -half || y0 < -half || x1 > half || y1 > half {
                return Err(Error::Validation(format!(
                    "building {i}: footprint exceeds the scene extent square"
                )));
            }
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let json = fs::read_to_string(path)?;
        let scene: Scene =
            serde_json::from_str(&json).map_err(|e| Error::Parse(format!("scene: {e}")))?;
        scene.validate()?;
        Ok(scene)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        self.validate()?;
        let json = serde_json::to_string_pretty(self)
            .map_err(|e| Error::Parse(format!("scene encode: {e}")))?;
        fs::write(path, json)?;
        Ok(())
    }

    /// Index of the building whose closed footprint contains the point,
    /// if any.
    pub fn building_at(&self, p: Point2) -> Option<usize> {
        self.buildings.iter().position(|b| b.contains_xy(p))
    }
}

/// Rasterize the maximum building height over a K x K grid of square
/// cells centered on the scene origin. A building contributes to every
/// cell whose closed square its footprint intersects; cells without
/// buildings hold 0.
pub fn rasterize_heights(scene: &Scene, k: usize, cell_size_m: f64) -> Result<GridMap> {
    if k == 0 {
        return Err(Error::Domain("grid count K must be >= 1".into()));
    }
    if !(cell_size_m > 0.0) {
        return Err(Error::Domain("cell size must be > 0".into()));
    }
    let coverage = k as f64 * cell_size_m;
    if coverage > scene.extent_m + cell_size_m {
        return Err(Error::Domain(format!(
            "raster coverage {coverage} m exceeds scene extent {} m (plus one cell of slack)",
            scene.extent_m
        )));
    }
    let origin = Point2::new(-coverage / 2.0, -coverage / 2.0);
    let mut grid = GridMap::new(k, cell_size_m, origin, Unit::Meters)?;

    // Candidate cell ranges per building, from footprint bounding boxes.
    let cell_range = |b: &Building| {
        let (x0, y0, x1, y1) = b.bbox();
        let c0 = (((x0 - origin.x) / cell_size_m).floor().max(0.0)) as usize;
        let r0 = (((y0 - origin.y) / cell_size_m).floor().max(0.0)) as usize;
        let c1 = (((x1 - origin.x) / cell_size_m).ceil() as usize).min(k - 1);
        let r1 = (((y1 - origin.y) / cell_size_m).ceil() as usize).min(k - 1);
        (r0, c0, r1.max(r0), c1.max(c0))
    };
    let ranges: Vec<_> = scene.buildings.iter().map(cell_range).collect();

    let values = grid.values_mut();
    values
        .par_chunks_mut(k)
        .enumerate()
        .for_each(|(row, row_vals)| {
            for (col, v) in row_vals.iter_mut().enumerate() {
                let x0 = origin.x + col as f64 * cell_size_m;
                let y0 = origin.y + row as f64 * cell_size_m;
                let mut h = 0.0f64;
                for (b, &(r0, c0, r1, c1)) in scene.buildings.iter().zip(&ranges) {
                    if row < r0 || row > r1 || col < c0 || col > c1 || b.height_m <= h {
                        continue;
                    }
                    if polygon_intersects_rect(
                        &b.footprint,
                        x0,
                        y0,
                        x0 + cell_size_m,
                        y0 + cell_size_m,
                    ) {
                        h = b.height_m;
                    }
                }
                *v = h;
            }
        });
    Ok(grid)
}

/// Deterministically generate a scene of non-overlapping axis-aligned
/// rectangular buildings, none containing the transmitter position.
/// Heights are uniform in `height_range`; wall/roof materials are the
/// named defaults.
pub fn generate_synthetic_scene(
    seed: u64,
    n_buildings: usize,
    extent_m: f64,
    height_range: (f64, f64),
) -> Result<Scene> {
    let (h_min, h_max) = height_range;
    if !(h_min > 0.0 && h_max >= h_min) {
        return Err(Error::Domain(format!(
            "height range must satisfy 0 < min <= max (got {h_min}..{h_max})"
        )));
    }
    if !(extent_m > 0.0) {
        return Err(Error::Domain("extent must be > 0".into()));
    }
    let mut scene = Scene::empty(extent_m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = extent_m / 2.0;
    // Footprint side lengths scale with the extent but stay in a
    // street-block range.
    let side_min = (extent_m * 0.02).clamp(5.0, 40.0);
    let side_max = (extent_m * 0.08).clamp(side_min, 160.0);
    let tx = scene.tx_position_m.xy();

    let mut placed: Vec<(f64, f64, f64, f64)> = Vec::new();
    let max_attempts = 200 * n_buildings.max(1);
    let mut attempts = 0;
    while placed.len() < n_buildings {
        if attempts >= max_attempts {
            return Err(Error::Placement {
                placed: placed.len(),
                requested: n_buildings,
            });
        }
        attempts += 1;
        let w = rng.gen_range(side_min..=side_max);
        let d = rng.gen_range(side_min..=side_max);
        let x0 = rng.gen_range(-half..=half - w);
        let y0 = rng.gen_range(-half..=half - d);
        let (x1, y1) = (x0 + w, y0 + d);
        if tx.x >= x0 && tx.x <= x1 && tx.y >= y0 && tx.y <= y1 {
            continue;
        }
        if placed
            .iter()
            .any(|&(px0, py0, px1, py1)| x0 < px1 && px0 < x1 && y0 < py1 && py0 < y1)
        {
            continue;
        }
        placed.push((x0, y0, x1, y1));
        let height_m = if h_max > h_min {
            rng.gen_range(h_min..=h_max)
        } else {
            h_min
        };
        scene.buildings.push(Building {
            footprint: vec![
                Point2::new(x0, y0),
                Point2::new(x1, y0),
                Point2::new(x1, y1),
                Point2::new(x0, y1),
            ],
            height_m,
            wall_material: Material::default_wall(),
            roof_material: Material::default_roof(),
        });
    }
    scene.validate()?;
    Ok(scene)
}
