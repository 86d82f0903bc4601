//! Small geometric primitives shared across the crate: 3-D vectors,
//! 2-D points, and planar polygon predicates used for scene validation,
//! rasterization, and occlusion testing.

use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// A point or displacement in 3-D space, meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn normalized(self) -> Vec3 {
        let n = self.norm();
        Vec3::new(self.x / n, self.y / n, self.z / n)
    }

    pub fn distance(self, other: Vec3) -> f64 {
        (self - other).norm()
    }

    /// Horizontal (x, y) part.
    pub fn xy(self) -> Point2 {
        Point2::new(self.x, self.y)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// A point in the horizontal plane, meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(self, other: Point2) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }
}

/// Twice the signed area of the triangle (a, b, c); positive when the turn
/// a -> b -> c is counter-clockwise.
pub fn cross2(a: Point2, b: Point2, c: Point2) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Signed area of a simple polygon; positive for counter-clockwise winding.
pub fn polygon_signed_area(vertices: &[Point2]) -> f64 {
    let n = vertices.len();
    let mut acc = 0.0;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        acc += a.x * b.y - b.x * a.y;
    }
    acc / 2.0
}

/// True when `p` lies on the closed segment [a, b].
pub fn point_on_segment(p: Point2, a: Point2, b: Point2) -> bool {
    if cross2(a, b, p).abs() > 1e-9 * a.distance(b).max(1.0) {
        return false;
    }
    p.x >= a.x.min(b.x) - 1e-12
        && p.x <= a.x.max(b.x) + 1e-12
        && p.y >= a.y.min(b.y) - 1e-12
        && p.y <= a.y.max(b.y) + 1e-12
}

/// Point-in-polygon test with an inclusive boundary (a point on an edge or
/// vertex counts as inside). Even-odd rule.
pub fn point_in_polygon(p: Point2, vertices: &[Point2]) -> bool {
    let n = vertices.len();
    for i in 0..n {
        if point_on_segment(p, vertices[i], vertices[(i + 1) % n]) {
            return true;
        }
    }
    let mut inside = false;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            let x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x_cross {
                inside = !inside;
            }
        }
    }
    inside
}

/// True when the closed segments [a1, a2] and [b1, b2] intersect or touch.
pub fn segments_intersect(a1: Point2, a2: Point2, b1: Point2, b2: Point2) -> bool {
    let d1 = cross2(b1, b2, a1);
    let d2 = cross2(b1, b2, a2);
    let d3 = cross2(a1, a2, b1);
    let d4 = cross2(a1, a2, b2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && point_on_segment(a1, b1, b2))
        || (d2 == 0.0 && point_on_segment(a2, b1, b2))
        || (d3 == 0.0 && point_on_segment(b1, a1, a2))
        || (d4 == 0.0 && point_on_segment(b2, a1, a2))
}

/// True when a simple polygon has a self-intersection among non-adjacent
/// edges, or a degenerate (zero-length) edge.
pub fn polygon_self_intersects(vertices: &[Point2]) -> bool {
    let n = vertices.len();
    for i in 0..n {
        let a1 = vertices[i];
        let a2 = vertices[(i + 1) % n];
        if a1 == a2 {
            return true;
        }
        for j in (i + 1)..n {
            // Skip edges sharing a vertex.
            if j == i || (j + 1) % n == i || (i + 1) % n == j {
                continue;
            }
            let b1 = vertices[j];
            let b2 = vertices[(j + 1) % n];
            if segments_intersect(a1, a2, b1, b2) {
                return true;
            }
        }
    }
    false
}

/// True when the polygon intersects the closed axis-aligned rectangle
/// [x0, x1] x [y0, y1]; touching the boundary counts.
pub fn polygon_intersects_rect(vertices: &[Point2], x0: f64, y0: f64, x1: f64, y1: f64) -> bool {
    // Any polygon vertex inside the rectangle.
    if vertices
        .iter()
        .any(|v| v.x >= x0 && v.x <= x1 && v.y >= y0 && v.y <= y1)
    {
        return true;
    }
    // Any rectangle corner inside the polygon.
    let corners = [
        Point2::new(x0, y0),
        Point2::new(x1, y0),
        Point2::new(x1, y1),
        Point2::new(x0, y1),
    ];
    if corners.iter().any(|&c| point_in_polygon(c, vertices)) {
        return true;
    }
    // Any edge pair crossing.
    let n = vertices.len();
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        for k in 0..4 {
            if segments_intersect(a, b, corners[k], corners[(k + 1) % 4]) {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Vec<Point2> {
        vec![
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(2.0, 2.0),
            Point2::new(0.0, 2.0),
        ]
    }

    #[test]
    fn signed_area_ccw_positive() {
        assert_eq!(polygon_signed_area(&square()), 4.0);
        let mut cw = square();
        cw.reverse();
        assert_eq!(polygon_signed_area(&cw), -4.0);
    }

    #[test]
    fn point_in_polygon_interior_boundary_exterior() {
        let sq = square();
        assert!(point_in_polygon(Point2::new(1.0, 1.0), &sq));
        assert!(point_in_polygon(Point2::new(0.0, 1.0), &sq)); // on edge
        assert!(point_in_polygon(Point2::new(2.0, 2.0), &sq)); // vertex
        assert!(!point_in_polygon(Point2::new(2.1, 1.0), &sq));
        assert!(!point_in_polygon(Point2::new(-0.1, -0.1), &sq));
    }

    #[test]
    fn self_intersection_detected() {
        let bowtie = vec![
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 2.0),
            Point2::new(2.0, 0.0),
            Point2::new(0.0, 2.0),
        ];
        assert!(polygon_self_intersects(&bowtie));
        assert!(!polygon_self_intersects(&square()));
    }

    #[test]
    fn rect_intersection_cases() {
        let sq = square();
        // Overlap, containment, touch, miss.
        assert!(polygon_intersects_rect(&sq, 1.0, 1.0, 3.0, 3.0));
        assert!(polygon_intersects_rect(&sq, -1.0, -1.0, 3.0, 3.0));
        assert!(polygon_intersects_rect(&sq, 0.5, 0.5, 1.5, 1.5));
        assert!(polygon_intersects_rect(&sq, 2.0, 0.0, 3.0, 1.0)); // edge touch
        assert!(!polygon_intersects_rect(&sq, 2.5, 2.5, 3.0, 3.0));
    }

    #[test]
    fn vec3_basics() {
        let a = Vec3::new(1.0, 2.0, 3.0);
        let b = Vec3::new(4.0, -5.0, 6.0);
        assert_eq!(a.dot(b), 1.0 * 4.0 - 2.0 * 5.0 + 3.0 * 6.0);
        assert_eq!(a.cross(b).dot(a), 0.0);
        assert!((Vec3::new(3.0, 4.0, 0.0).norm() - 5.0).abs() < 1e-15);
    }
}
