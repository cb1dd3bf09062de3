//! Brute-force checks that do not use the caustic formulas: ray families built
//! from tilt fields or by reflecting horizontal rays off a polyline, envelopes
//! from intersections of neighbouring rays, and mirror feasibility tests.

use crate::caustic::{coframe_at, TiltField};
use crate::error::{Error, Result};
use crate::geometry::{point_segment_distance, PlanePoint};
use crate::inclination::{self, AngleInterval, FrameSample, InclinationCurve};

/// Directions with `|d₁ × d₂|` below this are treated as parallel.
pub const PARALLEL_THRESHOLD: f64 = 1e-12;

/// Default radius of the disks around cusps excluded from envelope comparisons.
/// Neighbouring rays become nearly coincident there and their intersection is
/// ill-conditioned.
pub const CUSP_EXCLUSION: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray {
    pub base: PlanePoint,
    pub direction: PlanePoint,
}

impl Ray {
    /// Normalizes `direction`.
    pub fn new(base: PlanePoint, direction: PlanePoint) -> Result<Self> {
        let n = direction.norm();
        if !(n > 0.0) || !n.is_finite() || !base.is_finite() {
            return Err(Error::Geometry(format!(
                "ray at ({}, {}) has no direction",
                base.x, base.y
            )));
        }
        Ok(Ray {
            base,
            direction: direction * (1.0 / n),
        })
    }

    pub fn at(&self, t: f64) -> PlanePoint {
        self.base + self.direction * t
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RayFamily {
    pub rays: Vec<Ray>,
    pub source_thetas: Vec<f64>,
}

impl RayFamily {
    pub fn new(rays: Vec<Ray>, source_thetas: Vec<f64>) -> Result<Self> {
        if rays.len() != source_thetas.len() {
            return Err(Error::Shape(format!(
                "{} rays for {} parameters",
                rays.len(),
                source_thetas.len()
            )));
        }
        if source_thetas.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Geometry("ray parameters must be strictly increasing".into()));
        }
        Ok(RayFamily { rays, source_thetas })
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }
}

/// Points with a strictly increasing parameter (θ or the vertex index).
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub points: Vec<PlanePoint>,
    pub params: Vec<f64>,
}

impl Polyline {
    pub fn new(points: Vec<PlanePoint>, params: Vec<f64>) -> Result<Self> {
        if points.len() != params.len() {
            return Err(Error::Shape(format!(
                "{} points for {} parameters",
                points.len(),
                params.len()
            )));
        }
        if params.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Geometry("polyline parameters must be strictly increasing".into()));
        }
        Ok(Polyline { points, params })
    }

    /// Parameters are the vertex indices.
    pub fn from_points(points: Vec<PlanePoint>) -> Self {
        let params = (0..points.len()).map(|i| i as f64).collect();
        Polyline { points, params }
    }

    pub fn from_samples(samples: &[FrameSample]) -> Self {
        Polyline {
            points: samples.iter().map(|s| s.position).collect(),
            params: samples.iter().map(|s| s.theta).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Rays from the reconstructed curve along the tilt field's ν.
pub fn rays_from_tilt(
    curve: &InclinationCurve,
    tilt: &TiltField,
    interval: &AngleInterval,
) -> Result<RayFamily> {
    let samples = inclination::reconstruct(curve, interval)?;
    let mut rays = Vec::with_capacity(samples.len());
    for s in &samples {
        let frame = coframe_at(curve, tilt, s.theta)?;
        rays.push(Ray::new(s.position, frame.nu)?);
    }
    RayFamily::new(rays, samples.iter().map(|s| s.theta).collect())
}

/// Reflects the direction (1, 0) at every vertex about the local normal. The
/// tangent is the derivative of the parabola through three neighbouring
/// vertices (one-sided at the ends), using the polyline parameters.
pub fn reflect_horizontal(mirror: &Polyline) -> Result<RayFamily> {
    let p = &mirror.points;
    let n = p.len();
    if n < 2 {
        return Err(Error::Geometry("a mirror needs at least two vertices".into()));
    }
    if let Some(i) = (1..n).find(|&i| p[i] == p[i - 1]) {
        return Err(Error::Geometry(format!("repeated mirror vertex at index {i}")));
    }
    let u = &mirror.params;
    let incoming = PlanePoint::new(1.0, 0.0);
    let mut rays = Vec::with_capacity(n);
    for i in 0..n {
        let t = if n == 2 {
            p[1] - p[0]
        } else {
            let j = i.clamp(1, n - 2) - 1;
            let (x0, x1, x2, xe) = (u[j], u[j + 1], u[j + 2], u[i]);
            let w0 = ((xe - x1) + (xe - x2)) / ((x0 - x1) * (x0 - x2));
            let w1 = ((xe - x0) + (xe - x2)) / ((x1 - x0) * (x1 - x2));
            let w2 = ((xe - x0) + (xe - x1)) / ((x2 - x0) * (x2 - x1));
            p[j] * w0 + p[j + 1] * w1 + p[j + 2] * w2
        };
        let len = t.norm();
        if len == 0.0 || !len.is_finite() {
            return Err(Error::Geometry(format!("degenerate tangent at vertex {i}")));
        }
        let normal = t.perp() * (1.0 / len);
        let d = incoming - normal * (2.0 * incoming.dot(normal));
        rays.push(Ray::new(p[i], d)?);
    }
    RayFamily::new(rays, mirror.params.clone())
}

/// Envelope points from neighbouring rays; `gaps` lists the pairs that were
/// parallel and produced no point.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Envelope {
    pub points: Vec<PlanePoint>,
    /// Midpoint of the two source parameters of each point.
    pub params: Vec<f64>,
    /// Pair indices `i` (rays `i`, `i + 1`) that were parallel.
    pub gaps: Vec<usize>,
    /// For each point, the pair index that produced it.
    pub pair_index: Vec<usize>,
}

impl Envelope {
    /// Segments between points from consecutive pairs, so gaps are not bridged.
    pub fn segments(&self) -> Vec<(PlanePoint, PlanePoint)> {
        (1..self.points.len())
            .filter(|&i| self.pair_index[i] == self.pair_index[i - 1] + 1)
            .map(|i| (self.points[i - 1], self.points[i]))
            .collect()
    }
}

/// Intersection of the lines through consecutive rays.
pub fn envelope_numeric(family: &RayFamily) -> Result<Envelope> {
    if family.len() < 3 {
        return Err(Error::Geometry(format!(
            "envelope needs at least 3 rays, got {}",
            family.len()
        )));
    }
    let mut env = Envelope::default();
    for (i, w) in family.rays.windows(2).enumerate() {
        let (r0, r1) = (w[0], w[1]);
        let cross = r0.direction.cross(r1.direction);
        if cross.abs() < PARALLEL_THRESHOLD {
            env.gaps.push(i);
            continue;
        }
        let t = (r1.base - r0.base).cross(r1.direction) / cross;
        let p = r0.at(t);
        if !p.is_finite() {
            env.gaps.push(i);
            continue;
        }
        env.points.push(p);
        env.params
            .push(0.5 * (family.source_thetas[i] + family.source_thetas[i + 1]));
        env.pair_index.push(i);
    }
    Ok(env)
}

fn near_any(p: PlanePoint, centers: &[PlanePoint], radius: f64) -> bool {
    centers.iter().any(|c| p.distance(*c) < radius)
}

fn distance_to_segments(p: PlanePoint, segs: &[(PlanePoint, PlanePoint)]) -> f64 {
    segs.iter()
        .map(|&(a, b)| point_segment_distance(p, a, b))
        .fold(f64::INFINITY, f64::min)
}

/// Symmetric Hausdorff distance between a numeric envelope and a reference
/// polyline, ignoring points of either set within `radius` of a cusp.
pub fn envelope_distance(
    envelope: &Envelope,
    reference: &[PlanePoint],
    cusps: &[PlanePoint],
    radius: f64,
) -> f64 {
    let mut ref_segs: Vec<(PlanePoint, PlanePoint)> =
        reference.windows(2).map(|w| (w[0], w[1])).collect();
    if reference.len() == 1 {
        ref_segs.push((reference[0], reference[0]));
    }
    let mut env_segs = envelope.segments();
    if env_segs.is_empty() {
        env_segs.extend(envelope.points.iter().map(|&p| (p, p)));
    }
    let forward = envelope
        .points
        .iter()
        .filter(|p| !near_any(**p, cusps, radius))
        .map(|&p| distance_to_segments(p, &ref_segs))
        .fold(0.0, f64::max);
    let backward = reference
        .iter()
        .filter(|p| !near_any(**p, cusps, radius))
        .map(|&p| distance_to_segments(p, &env_segs))
        .fold(0.0, f64::max);
    forward.max(backward)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerticalityReport {
    pub vertical: bool,
    /// Index of the first vertex where y stops being strictly monotone.
    pub first_violation: Option<usize>,
}

/// A mirror is vertical when it is the graph of some `x = f(y)`, i.e. when y is
/// strictly monotone along it.
pub fn verticality_check(points: &[PlanePoint]) -> VerticalityReport {
    let mut direction = 0.0;
    for i in 1..points.len() {
        let dy = points[i].y - points[i - 1].y;
        if dy == 0.0 || (direction != 0.0 && dy.signum() != direction) {
            return VerticalityReport {
                vertical: false,
                first_violation: Some(i),
            };
        }
        direction = dy.signum();
    }
    VerticalityReport {
        vertical: true,
        first_violation: None,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OcclusionReport {
    /// Vertices that a horizontal ray from x = −∞ reaches only after crossing the mirror.
    pub blocked: Vec<usize>,
    pub blocked_fraction: f64,
}

impl OcclusionReport {
    pub fn occluded(&self) -> bool {
        !self.blocked.is_empty()
    }
}

/// Casts a ray in the +x direction at each vertex's height and checks whether
/// it meets the polyline before reaching that vertex.
pub fn occlusion_check(points: &[PlanePoint]) -> OcclusionReport {
    let n = points.len();
    if n == 0 {
        return OcclusionReport {
            blocked: Vec::new(),
            blocked_fraction: 0.0,
        };
    }
    let scale = points
        .iter()
        .fold(0.0f64, |m, p| m.max(p.x.abs()).max(p.y.abs()))
        .max(1.0);
    let eps = 1e-9 * scale;
    let mut blocked = Vec::new();
    for (i, v) in points.iter().enumerate() {
        let hit = (1..n).any(|j| {
            // segments touching vertex i do not occlude it
            if j == i || j - 1 == i {
                return false;
            }
            let (a, b) = (points[j - 1], points[j]);
            let (lo, hi) = if a.y < b.y { (a, b) } else { (b, a) };
            if !(v.y >= lo.y && v.y < hi.y) {
                return false;
            }
            let t = (v.y - lo.y) / (hi.y - lo.y);
            let x = lo.x + t * (hi.x - lo.x);
            x < v.x - eps
        });
        if hit {
            blocked.push(i);
        }
    }
    let blocked_fraction = blocked.len() as f64 / n as f64;
    OcclusionReport {
        blocked,
        blocked_fraction,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caustic::caustic_curve;
    use crate::geometry::scatter;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn iv(lo: f64, hi: f64, n: usize) -> AngleInterval {
        AngleInterval::new(lo, hi, n).unwrap()
    }

    #[test]
    fn ray_directions_from_tilt() {
        let c = InclinationCurve::log_spiral(1.0, 0.2);
        let fam = rays_from_tilt(&c, &TiltField::evolute(), &iv(0.0, 2.0, 20)).unwrap();
        for (r, t) in fam.rays.iter().zip(&fam.source_thetas) {
            assert!(r.direction.distance(PlanePoint::from_angle(*t).perp()) < 1e-15);
        }
        let fam = rays_from_tilt(&InclinationCurve::circle(1.0), &TiltField::reflection(), &iv(0.1, 3.0, 20)).unwrap();
        for (r, t) in fam.rays.iter().zip(&fam.source_thetas) {
            assert!(r.direction.distance(PlanePoint::from_angle(2.0 * t)) < 1e-15);
        }
        let phi0 = 0.6;
        let fam = rays_from_tilt(&c, &TiltField::skew(phi0), &iv(0.0, 2.0, 20)).unwrap();
        for (r, t) in fam.rays.iter().zip(&fam.source_thetas) {
            let tangent = PlanePoint::from_angle(*t);
            let angle = tangent.cross(r.direction).atan2(tangent.dot(r.direction));
            assert!((angle - (FRAC_PI_2 - phi0)).abs() < 1e-10);
        }
    }

    #[test]
    fn reflection_off_flat_mirrors() {
        let vertical = Polyline::from_points((0..5).map(|i| PlanePoint::new(0.0, i as f64)).collect());
        let fam = reflect_horizontal(&vertical).unwrap();
        assert!(fam.rays.iter().all(|r| r.direction.distance(PlanePoint::new(-1.0, 0.0)) < 1e-15));
        let env = envelope_numeric(&fam).unwrap();
        assert!(env.points.is_empty());
        assert_eq!(env.gaps.len(), 4);

        let diagonal = Polyline::from_points((0..4).map(|i| PlanePoint::new(i as f64, i as f64)).collect());
        let fam = reflect_horizontal(&diagonal).unwrap();
        assert!(fam.rays.iter().all(|r| r.direction.x.abs() < 1e-15 && (r.direction.y.abs() - 1.0).abs() < 1e-15));

        let repeated = Polyline::from_points(vec![PlanePoint::ORIGIN, PlanePoint::ORIGIN, PlanePoint::new(1.0, 1.0)]);
        assert!(matches!(reflect_horizontal(&repeated), Err(Error::Geometry(_))));
    }

    #[test]
    fn reflection_law_matches_tilt_field() {
        let s = inclination::reconstruct(&InclinationCurve::circle(1.0), &iv(0.0, PI, 2001)).unwrap();
        let fam = reflect_horizontal(&Polyline::from_samples(&s)).unwrap();
        for (r, t) in fam.rays.iter().zip(&fam.source_thetas).skip(1).take(1999) {
            assert!(r.direction.distance(PlanePoint::from_angle(2.0 * t)) < 1e-6);
        }
    }

    #[test]
    fn circle_normals_meet_at_center() {
        let fam = rays_from_tilt(&InclinationCurve::circle(2.0), &TiltField::evolute(), &iv(0.0, 6.0, 50)).unwrap();
        let env = envelope_numeric(&fam).unwrap();
        assert!(scatter(&env.points) < 1e-8);
        assert!(env.points[0].distance(PlanePoint::new(0.0, 2.0)) < 1e-8);
    }

    #[test]
    fn envelope_needs_three_rays() {
        let r = Ray::new(PlanePoint::ORIGIN, PlanePoint::new(1.0, 0.0)).unwrap();
        let fam = RayFamily::new(vec![r, r], vec![0.0, 1.0]).unwrap();
        assert!(envelope_numeric(&fam).is_err());
        assert!(Ray::new(PlanePoint::ORIGIN, PlanePoint::ORIGIN).is_err());
        assert!(RayFamily::new(vec![r, r], vec![1.0, 1.0]).is_err());
    }

    fn nephroid_distance(n: usize) -> f64 {
        let s = inclination::reconstruct(&InclinationCurve::circle(1.0), &iv(0.0, PI, n)).unwrap();
        let env = envelope_numeric(&reflect_horizontal(&Polyline::from_samples(&s)).unwrap()).unwrap();
        let reference = caustic_curve(&InclinationCurve::circle(1.0), &TiltField::reflection(), &iv(0.0, PI, 4001)).unwrap();
        let cusps = [s[0].position, s[n - 1].position, PlanePoint::new(0.5, 1.0)];
        envelope_distance(&env, &reference.positions(), &cusps, CUSP_EXCLUSION)
    }

    #[test]
    fn semicircle_envelope_converges() {
        let d1 = nephroid_distance(2000);
        let d2 = nephroid_distance(4000);
        assert!(d1 < 1e-3, "{d1}");
        assert!(d2 <= 0.5 * d1, "{d1} {d2}");
    }

    #[test]
    fn verticality() {
        let semi = inclination::reconstruct(&InclinationCurve::circle(1.0), &iv(0.0, PI, 200)).unwrap();
        let pts: Vec<_> = semi.iter().map(|s| s.position).collect();
        assert!(verticality_check(&pts).vertical);
        assert_eq!(occlusion_check(&pts).blocked_fraction, 0.0);

        let full = inclination::reconstruct(&InclinationCurve::circle(1.0), &iv(0.0, 2.0 * PI, 400)).unwrap();
        let pts: Vec<_> = full.iter().map(|s| s.position).collect();
        let v = verticality_check(&pts);
        assert!(!v.vertical);
        assert!(v.first_violation.is_some());
        let occ = occlusion_check(&pts[..399]);
        assert!((occ.blocked_fraction - 0.5).abs() < 0.02, "{}", occ.blocked_fraction);
    }
}
