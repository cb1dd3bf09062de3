use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// A point (or free vector) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PlanePoint {
    pub x: f64,
    pub y: f64,
}

impl PlanePoint {
    pub const ORIGIN: PlanePoint = PlanePoint { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        PlanePoint { x, y }
    }

    /// Unit vector at angle `theta` from the x-axis.
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        PlanePoint { x: c, y: s }
    }

    pub fn dot(self, other: PlanePoint) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: PlanePoint) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: PlanePoint) -> f64 {
        (self - other).norm()
    }

    /// Counterclockwise rotation by `angle`.
    pub fn rotate(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        PlanePoint {
            x: c * self.x - s * self.y,
            y: s * self.x + c * self.y,
        }
    }

    /// Rotation by +90°.
    pub fn perp(self) -> Self {
        PlanePoint {
            x: -self.y,
            y: self.x,
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for PlanePoint {
    type Output = PlanePoint;
    fn add(self, o: PlanePoint) -> PlanePoint {
        PlanePoint::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for PlanePoint {
    fn add_assign(&mut self, o: PlanePoint) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for PlanePoint {
    type Output = PlanePoint;
    fn sub(self, o: PlanePoint) -> PlanePoint {
        PlanePoint::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for PlanePoint {
    type Output = PlanePoint;
    fn mul(self, k: f64) -> PlanePoint {
        PlanePoint::new(self.x * k, self.y * k)
    }
}

impl Mul<PlanePoint> for f64 {
    type Output = PlanePoint;
    fn mul(self, p: PlanePoint) -> PlanePoint {
        p * self
    }
}

impl Neg for PlanePoint {
    type Output = PlanePoint;
    fn neg(self) -> PlanePoint {
        PlanePoint::new(-self.x, -self.y)
    }
}

/// Distance from `p` to the closed segment `[a, b]`.
pub fn point_segment_distance(p: PlanePoint, a: PlanePoint, b: PlanePoint) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a + ab * t)
}

/// Largest distance from any point of `points` to the centroid of `points`.
pub fn scatter(points: &[PlanePoint]) -> f64 {
    if points.is_empty() {
        return 0.0;
    }
    let n = points.len() as f64;
    let c = points
        .iter()
        .fold(PlanePoint::ORIGIN, |acc, &p| acc + p)
        * (1.0 / n);
    points.iter().map(|p| p.distance(c)).fold(0.0, f64::max)
}

/// Directed Hausdorff distance from a point set to a polyline.
pub fn directed_hausdorff_to_polyline(points: &[PlanePoint], polyline: &[PlanePoint]) -> f64 {
    points
        .iter()
        .map(|&p| match polyline.len() {
            0 => f64::INFINITY,
            1 => p.distance(polyline[0]),
            _ => polyline
                .windows(2)
                .map(|w| point_segment_distance(p, w[0], w[1]))
                .fold(f64::INFINITY, f64::min),
        })
        .fold(0.0, f64::max)
}

/// Symmetric Hausdorff distance between two polylines (vertices against segments).
pub fn hausdorff(a: &[PlanePoint], b: &[PlanePoint]) -> f64 {
    directed_hausdorff_to_polyline(a, b).max(directed_hausdorff_to_polyline(b, a))
}

/// Maximal perpendicular distance of the points from their total-least-squares line,
/// divided by the largest pairwise distance. Zero for collinear points.
pub fn collinearity_residual(points: &[PlanePoint]) -> f64 {
    if points.len() < 3 {
        return 0.0;
    }
    let n = points.len() as f64;
    let c = points
        .iter()
        .fold(PlanePoint::ORIGIN, |acc, &p| acc + p)
        * (1.0 / n);
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for p in points {
        let d = *p - c;
        sxx += d.x * d.x;
        sxy += d.x * d.y;
        syy += d.y * d.y;
    }
    // principal direction of the scatter matrix
    let angle = 0.5 * (2.0 * sxy).atan2(sxx - syy);
    let dir = PlanePoint::from_angle(angle);
    let mut span: f64 = 0.0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            span = span.max(p.distance(*q));
        }
    }
    if span == 0.0 {
        return 0.0;
    }
    let worst = points
        .iter()
        .map(|p| (*p - c).cross(dir).abs())
        .fold(0.0, f64::max);
    worst / span
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_and_perp_agree() {
        let p = PlanePoint::new(0.3, -1.7);
        let a = p.rotate(std::f64::consts::FRAC_PI_2);
        let b = p.perp();
        assert!(a.distance(b) < 1e-15);
    }

    #[test]
    fn collinear_points_have_zero_residual() {
        let pts: Vec<_> = (0..5)
            .map(|i| PlanePoint::new(1.0 + 2.0 * i as f64, -3.0 + 0.5 * i as f64))
            .collect();
        assert!(collinearity_residual(&pts) < 1e-15);
        let mut bent = pts.clone();
        bent[2].y += 0.1;
        assert!(collinearity_residual(&bent) > 1e-3);
    }

    #[test]
    fn hausdorff_of_offset_segment() {
        let a = [PlanePoint::new(0.0, 0.0), PlanePoint::new(1.0, 0.0)];
        let b = [PlanePoint::new(0.0, 0.25), PlanePoint::new(1.0, 0.25)];
        assert!((hausdorff(&a, &b) - 0.25).abs() < 1e-15);
    }
}
