//! Area-proportional three-circle construction.
//!
//! Each event becomes a disc whose area equals its probability. The center
//! distances are solved so that every pairwise lens has the area of the
//! corresponding pairwise joint probability, and the area `S` of the region
//! common to all three discs is then used as the estimate of the triple joint.
//!
//! Two routes compute `S`:
//!
//! * [`central_area_generic`] follows the classic angle/segment/Heron
//!   decomposition. It is only valid when the common region is a curvilinear
//!   triangle bounded by one arc of each circle.
//! * [`arc_polygon_area`] walks the boundary of the common region as a
//!   circular-arc polygon (shoelace area plus segment corrections) and covers
//!   every configuration.
//!
//! [`triple_intersection_area`] is the authoritative entry point and picks the
//! route per configuration.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::probmodel::TripleMarginals;

/// Slack allowed on `arccos` arguments and triangle inequalities before a
/// value is treated as genuinely out of range rather than roundoff.
pub const ROUNDOFF_SLACK: f64 = 1e-12;

/// Default area tolerance for the center-distance bisection.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Iteration cap for the center-distance bisection.
pub const MAX_BISECTION_ITERS: usize = 200;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error(
        "infeasible lens: target area {target} exceeds the smaller disc area {max} \
         (pairwise probability above the smaller marginal)"
    )]
    InfeasibleLens { target: f64, max: f64 },
    #[error("lengths {sides:?} violate the triangle inequality")]
    ConfigurationInfeasible { sides: [f64; 3] },
    #[error("zero center distance")]
    DegenerateDistance,
    #[error("configuration is not generic (class {0})")]
    NotGenericConfiguration(ConfigClass),
}

pub type Result<T> = std::result::Result<T, GeometryError>;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Radii of the three discs, in units where area equals probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleTriple {
    pub radius_a: f64,
    pub radius_b: f64,
    pub radius_c: f64,
}

impl CircleTriple {
    pub fn new(radius_a: f64, radius_b: f64, radius_c: f64) -> Self {
        Self {
            radius_a,
            radius_b,
            radius_c,
        }
    }

    pub fn from_probs(pa: f64, pb: f64, pc: f64) -> Result<Self> {
        Ok(Self::new(
            radius_from_prob(pa)?,
            radius_from_prob(pb)?,
            radius_from_prob(pc)?,
        ))
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.radius_a, self.radius_b, self.radius_c]
    }
}

/// Solved geometry: radii, the three center distances and a planar placement.
///
/// `dist_ab`, `dist_bc` and `dist_ac` are the `r`, `t` and `s` of the classic
/// construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TripleConfig {
    pub circles: CircleTriple,
    pub dist_ab: f64,
    pub dist_bc: f64,
    pub dist_ac: f64,
    pub centers: [Point; 3],
}

impl TripleConfig {
    /// Places the centers for the given distances (A at the origin, B on the
    /// positive x axis, C in the upper half-plane).
    pub fn new(circles: CircleTriple, dist_ab: f64, dist_bc: f64, dist_ac: f64) -> Result<Self> {
        let centers = place_centers(dist_ab, dist_ac, dist_bc)?;
        Ok(Self {
            circles,
            dist_ab,
            dist_bc,
            dist_ac,
            centers,
        })
    }

    /// Builds a configuration from arbitrary center positions.
    pub fn from_centers(circles: CircleTriple, centers: [Point; 3]) -> Self {
        Self {
            circles,
            dist_ab: centers[0].distance(&centers[1]),
            dist_bc: centers[1].distance(&centers[2]),
            dist_ac: centers[0].distance(&centers[2]),
            centers,
        }
    }

    /// The congruent configuration with C reflected across the A-B axis.
    pub fn mirrored(&self) -> Self {
        let mut out = *self;
        for c in out.centers.iter_mut() {
            c.y = -c.y;
        }
        out
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let r = self.circles;
        Self {
            circles: CircleTriple::new(r.radius_a * factor, r.radius_b * factor, r.radius_c * factor),
            dist_ab: self.dist_ab * factor,
            dist_bc: self.dist_bc * factor,
            dist_ac: self.dist_ac * factor,
            centers: self
                .centers
                .map(|p| Point::new(p.x * factor, p.y * factor)),
        }
    }

    fn radii(&self) -> [f64; 3] {
        self.circles.as_array()
    }

    /// Center distance between discs `i` and `j` (0 = A, 1 = B, 2 = C).
    fn dist(&self, i: usize, j: usize) -> f64 {
        match (i.min(j), i.max(j)) {
            (0, 1) => self.dist_ab,
            (1, 2) => self.dist_bc,
            (0, 2) => self.dist_ac,
            _ => 0.0,
        }
    }
}

/// Shape of the region common to all three discs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConfigClass {
    /// Curvilinear triangle bounded by one arc of each circle.
    Generic,
    /// No point is common to all three discs (or only a boundary point).
    Empty,
    /// The region is the lens of two discs, which lies inside the third.
    PairwiseLens,
    /// The region is one whole disc, which lies inside both others.
    Contained,
    /// Boundary with four arcs: the third disc cuts both corners of a lens.
    MultiArc,
    /// Zero radius or coincident centers.
    Degenerate,
}

impl ConfigClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConfigClass::Generic => "Generic",
            ConfigClass::Empty => "Empty",
            ConfigClass::PairwiseLens => "PairwiseLens",
            ConfigClass::Contained => "Contained",
            ConfigClass::MultiArc => "MultiArc",
            ConfigClass::Degenerate => "Degenerate",
        }
    }
}

impl fmt::Display for ConfigClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ConfigClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s {
            "Generic" => ConfigClass::Generic,
            "Empty" => ConfigClass::Empty,
            "PairwiseLens" => ConfigClass::PairwiseLens,
            "Contained" => ConfigClass::Contained,
            "MultiArc" => ConfigClass::MultiArc,
            "Degenerate" => ConfigClass::Degenerate,
            other => return Err(format!("unknown configuration class `{other}`")),
        })
    }
}

/// Central-area decomposition.
///
/// The angle, segment and chord-triangle fields are only populated for
/// [`ConfigClass::Generic`]; they are zero for every other class and `total`
/// alone carries the area.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CentralAreaBreakdown {
    pub theta1: f64,
    pub theta2: f64,
    pub theta3: f64,
    pub seg1: f64,
    pub seg2: f64,
    pub seg3: f64,
    pub chord_triangle: f64,
    pub total: f64,
    pub config_class: ConfigClass,
}

impl CentralAreaBreakdown {
    fn area_only(config_class: ConfigClass, total: f64) -> Self {
        Self {
            theta1: 0.0,
            theta2: 0.0,
            theta3: 0.0,
            seg1: 0.0,
            seg2: 0.0,
            seg3: 0.0,
            chord_triangle: 0.0,
            total,
            config_class,
        }
    }
}

fn clamped_acos(x: f64) -> Result<f64> {
    if x.is_nan() || !(-1.0 - ROUNDOFF_SLACK..=1.0 + ROUNDOFF_SLACK).contains(&x) {
        return Err(GeometryError::Domain(format!(
            "arccos argument {x} outside [-1, 1]"
        )));
    }
    Ok(x.clamp(-1.0, 1.0).acos())
}

fn check_nonneg(name: &str, v: f64) -> Result<()> {
    if v.is_nan() || v < 0.0 {
        return Err(GeometryError::Domain(format!("{name} must be >= 0, got {v}")));
    }
    Ok(())
}

/// Radius of the disc whose area is `p`.
pub fn radius_from_prob(p: f64) -> Result<f64> {
    check_nonneg("probability", p)?;
    Ok((p / PI).sqrt())
}

/// Exact intersection area of two discs with radii `r1`, `r2` and center
/// distance `d`.
pub fn lens_area(r1: f64, r2: f64, d: f64) -> Result<f64> {
    check_nonneg("radius", r1)?;
    check_nonneg("radius", r2)?;
    check_nonneg("distance", d)?;
    Ok(lens_area_unchecked(r1, r2, d))
}

fn lens_area_unchecked(r1: f64, r2: f64, d: f64) -> f64 {
    if d >= r1 + r2 {
        return 0.0;
    }
    if d <= (r1 - r2).abs() {
        let r = r1.min(r2);
        return PI * r * r;
    }
    let alpha = ((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1)).clamp(-1.0, 1.0).acos();
    let beta = ((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2)).clamp(-1.0, 1.0).acos();
    let kite = (r1 + r2 + d) * (r1 + r2 - d) * (r1 + d - r2) * (r2 + d - r1);
    let area = r1 * r1 * alpha + r2 * r2 * beta - 0.5 * kite.max(0.0).sqrt();
    area.max(0.0)
}

/// Center distance at which two discs overlap in exactly `target` area.
///
/// Bisection on `[|r1 - r2|, r1 + r2]`, where the lens area decreases strictly
/// in the distance. Stops once the area residual is within `tol` or after
/// [`MAX_BISECTION_ITERS`] halvings.
pub fn solve_center_distance(r1: f64, r2: f64, target: f64, tol: f64) -> Result<f64> {
    check_nonneg("radius", r1)?;
    check_nonneg("radius", r2)?;
    check_nonneg("target area", target)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(GeometryError::Domain(format!("tolerance must be > 0, got {tol}")));
    }

    let rmin = r1.min(r2);
    let max = PI * rmin * rmin;
    // π·(sqrt(p/π))² does not always give back p bit for bit.
    if target > max * (1.0 + ROUNDOFF_SLACK) + f64::MIN_POSITIVE {
        return Err(GeometryError::InfeasibleLens { target, max });
    }

    let mut lo = (r1 - r2).abs();
    let mut hi = r1 + r2;
    if target <= 0.0 {
        return Ok(hi);
    }
    if target >= max * (1.0 - ROUNDOFF_SLACK) {
        return Ok(lo);
    }

    let mut mid = 0.5 * (lo + hi);
    for _ in 0..MAX_BISECTION_ITERS {
        mid = 0.5 * (lo + hi);
        let residual = lens_area_unchecked(r1, r2, mid) - target;
        if residual.abs() <= tol {
            break;
        }
        if residual > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    Ok(mid)
}

/// Places three centers with `|AB| = r`, `|AC| = s`, `|BC| = t`.
///
/// A sits at the origin, B at `(r, 0)` and C in the upper half-plane.
pub fn place_centers(r: f64, s: f64, t: f64) -> Result<[Point; 3]> {
    check_nonneg("distance r", r)?;
    check_nonneg("distance s", s)?;
    check_nonneg("distance t", t)?;
    if r > s + t + ROUNDOFF_SLACK || s > r + t + ROUNDOFF_SLACK || t > r + s + ROUNDOFF_SLACK {
        return Err(GeometryError::ConfigurationInfeasible { sides: [r, s, t] });
    }

    let a = Point::new(0.0, 0.0);
    let b = Point::new(r, 0.0);
    if r == 0.0 {
        return Ok([a, b, Point::new(s, 0.0)]);
    }
    let x = ((r * r + s * s - t * t) / (2.0 * r)).clamp(-s, s);
    let y = (s * s - x * x).max(0.0).sqrt();
    Ok([a, b, Point::new(x, y)])
}

/// Arc angles of the curvilinear triangle at each center.
///
/// Each angle is the part of a circle's boundary that lies inside both other
/// discs, from the angle of the two chords through that center minus the
/// angle of the center triangle. A non-positive result means the arcs do not
/// overlap, so the decomposition in [`central_area_generic`] does not apply.
pub fn central_angles(a: f64, b: f64, c: f64, r: f64, s: f64, t: f64) -> Result<(f64, f64, f64)> {
    for (name, v) in [("a", a), ("b", b), ("c", c)] {
        check_nonneg(name, v)?;
    }
    if r == 0.0 || s == 0.0 || t == 0.0 {
        return Err(GeometryError::DegenerateDistance);
    }
    for (name, v) in [("r", r), ("s", s), ("t", t)] {
        check_nonneg(name, v)?;
    }

    let theta1 = clamped_acos((a * a + s * s - c * c) / (2.0 * a * s))?
        + clamped_acos((a * a + r * r - b * b) / (2.0 * a * r))?
        - clamped_acos((r * r + s * s - t * t) / (2.0 * r * s))?;
    let theta2 = clamped_acos((b * b + t * t - c * c) / (2.0 * b * t))?
        + clamped_acos((b * b + r * r - a * a) / (2.0 * b * r))?
        - clamped_acos((r * r + t * t - s * s) / (2.0 * r * t))?;
    let theta3 = clamped_acos((c * c + s * s - a * a) / (2.0 * c * s))?
        + clamped_acos((c * c + t * t - b * b) / (2.0 * c * t))?
        - clamped_acos((t * t + s * s - r * r) / (2.0 * t * s))?;
    Ok((theta1, theta2, theta3))
}

/// Area between an arc of angle `theta` and its chord.
pub fn segment_area(theta: f64, radius: f64) -> Result<f64> {
    if theta.is_nan() || !(0.0..=2.0 * PI).contains(&theta) {
        return Err(GeometryError::Domain(format!(
            "segment angle {theta} outside [0, 2π]"
        )));
    }
    check_nonneg("radius", radius)?;
    let half = 0.5 * theta;
    let area = half * radius * radius - radius * radius * half.sin() * half.cos();
    Ok(area.max(0.0))
}

/// Heron area of the triangle formed by the three arc chords.
pub fn chord_triangle_area(
    theta1: f64,
    theta2: f64,
    theta3: f64,
    a: f64,
    b: f64,
    c: f64,
) -> Result<f64> {
    let x = 2.0 * a * (0.5 * theta1).sin();
    let y = 2.0 * b * (0.5 * theta2).sin();
    let z = 2.0 * c * (0.5 * theta3).sin();
    heron(x, y, z)
}

fn heron(x: f64, y: f64, z: f64) -> Result<f64> {
    let slack = ROUNDOFF_SLACK * x.max(y).max(z).max(1.0);
    if x < 0.0 || y < 0.0 || z < 0.0 || x > y + z + slack || y > x + z + slack || z > x + y + slack
    {
        return Err(GeometryError::ConfigurationInfeasible { sides: [x, y, z] });
    }
    let p = x + y + z;
    let product = p * (p - 2.0 * x) * (p - 2.0 * y) * (p - 2.0 * z);
    Ok(0.25 * product.max(0.0).sqrt())
}

/// Angle/segment/Heron decomposition of the central area.
///
/// Only defined on [`ConfigClass::Generic`] configurations; anything else is
/// rejected with the detected class.
pub fn central_area_generic(config: &TripleConfig) -> Result<CentralAreaBreakdown> {
    let class = classify(config);
    if class != ConfigClass::Generic {
        return Err(GeometryError::NotGenericConfiguration(class));
    }
    generic_breakdown(config)
}

fn generic_breakdown(config: &TripleConfig) -> Result<CentralAreaBreakdown> {
    let [a, b, c] = config.radii();
    let (r, s, t) = (config.dist_ab, config.dist_ac, config.dist_bc);
    let (theta1, theta2, theta3) = central_angles(a, b, c, r, s, t)?;
    if theta1 <= 0.0 || theta2 <= 0.0 || theta3 <= 0.0 {
        return Err(GeometryError::NotGenericConfiguration(ConfigClass::Empty));
    }
    let seg1 = segment_area(theta1, a)?;
    let seg2 = segment_area(theta2, b)?;
    let seg3 = segment_area(theta3, c)?;
    let chord_triangle = chord_triangle_area(theta1, theta2, theta3, a, b, c)?;
    Ok(CentralAreaBreakdown {
        theta1,
        theta2,
        theta3,
        seg1,
        seg2,
        seg3,
        chord_triangle,
        total: seg1 + seg2 + seg3 + chord_triangle,
        config_class: ConfigClass::Generic,
    })
}

/// Area common to all three discs, for every configuration.
///
/// Generic configurations use the angle decomposition (falling back to the
/// arc-polygon breakdown if roundoff defeats it); all other classes report
/// the arc-polygon area with zeroed decomposition fields.
pub fn triple_intersection_area(config: &TripleConfig) -> CentralAreaBreakdown {
    let resolved = resolve(config);
    if resolved.class == ConfigClass::Generic {
        if let Ok(b) = generic_breakdown(config) {
            return b;
        }
        if let Some(b) = resolved.generic {
            return b;
        }
    }
    CentralAreaBreakdown::area_only(resolved.class, resolved.area)
}

/// Triple-intersection area by walking the region boundary as a circular-arc
/// polygon. Independent of the angle formulas used by
/// [`central_area_generic`].
pub fn arc_polygon_area(config: &TripleConfig) -> f64 {
    resolve(config).area
}

pub fn classify(config: &TripleConfig) -> ConfigClass {
    resolve(config).class
}

/// Solves the full construction from six probabilities.
pub fn build_config(m: &TripleMarginals, tol: f64) -> Result<TripleConfig> {
    let circles = CircleTriple::from_probs(m.pa, m.pb, m.pc)?;
    let [a, b, c] = circles.as_array();
    let r = solve_center_distance(a, b, m.pab, tol)?;
    let t = solve_center_distance(b, c, m.pbc, tol)?;
    let s = solve_center_distance(a, c, m.pac, tol)?;
    TripleConfig::new(circles, r, t, s)
}

struct Resolved {
    class: ConfigClass,
    area: f64,
    generic: Option<CentralAreaBreakdown>,
}

impl Resolved {
    fn simple(class: ConfigClass, area: f64) -> Self {
        Self {
            class,
            area,
            generic: None,
        }
    }
}

struct Vertex {
    point: Point,
    circles: [bool; 3],
}

fn resolve(config: &TripleConfig) -> Resolved {
    let radii = config.radii();
    let centers = config.centers;
    if radii.contains(&0.0) {
        return Resolved::simple(ConfigClass::Degenerate, 0.0);
    }
    let degenerate = [(0, 1), (1, 2), (0, 2)]
        .iter()
        .any(|&(i, j)| config.dist(i, j) == 0.0);

    let scale = radii.iter().cloned().fold(0.0, f64::max);
    let eps = 1e-10 * scale;
    let contains = |outer: usize, inner: usize| {
        config.dist(outer, inner) + radii[inner] <= radii[outer] + eps
    };

    // A disc that contains another one does not change the intersection.
    let mut active = vec![0usize, 1, 2];
    while let Some(pos) = active.iter().position(|&j| {
        active.iter().any(|&i| i != j && contains(j, i))
    }) {
        active.remove(pos);
    }

    match active.as_slice() {
        [i] => {
            let class = if degenerate {
                ConfigClass::Degenerate
            } else {
                ConfigClass::Contained
            };
            return Resolved::simple(class, PI * radii[*i] * radii[*i]);
        }
        [i, j] => {
            let area = lens_area_unchecked(radii[*i], radii[*j], config.dist(*i, *j));
            let class = if degenerate {
                ConfigClass::Degenerate
            } else if area == 0.0 {
                ConfigClass::Empty
            } else {
                ConfigClass::PairwiseLens
            };
            return Resolved::simple(class, area);
        }
        _ => {}
    }

    // Three discs, none containing another.
    let inside_all = |p: &Point| (0..3).all(|k| p.distance(&centers[k]) <= radii[k] + eps);
    let mut vertices: Vec<Vertex> = Vec::new();
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (0, 2, 1)] {
        let d = config.dist(i, j);
        if d >= radii[i] + radii[j] {
            return Resolved::simple(ConfigClass::Empty, 0.0);
        }
        for p in circle_intersections(centers[i], radii[i], centers[j], radii[j], d) {
            if p.distance(&centers[k]) > radii[k] + eps {
                continue;
            }
            let mut owners = [false; 3];
            owners[i] = true;
            owners[j] = true;
            match vertices.iter_mut().find(|v| v.point.distance(&p) <= eps) {
                Some(v) => {
                    for (c, o) in v.circles.iter_mut().zip(owners) {
                        *c |= o;
                    }
                }
                None => vertices.push(Vertex {
                    point: p,
                    circles: owners,
                }),
            }
        }
    }
    if vertices.len() < 2 {
        return Resolved::simple(ConfigClass::Empty, 0.0);
    }

    let n = vertices.len() as f64;
    let cx = vertices.iter().map(|v| v.point.x).sum::<f64>() / n;
    let cy = vertices.iter().map(|v| v.point.y).sum::<f64>() / n;
    vertices.sort_by(|u, v| {
        let au = (u.point.y - cy).atan2(u.point.x - cx);
        let av = (v.point.y - cy).atan2(v.point.x - cx);
        au.total_cmp(&av)
    });

    // Counterclockwise around a convex region is counterclockwise around
    // every bounding circle, so each edge is the ccw arc p -> q of a shared
    // circle whose midpoint stays inside all three discs.
    let mut polygon = 0.0;
    let mut segments = 0.0;
    let mut arcs: Vec<(usize, f64)> = Vec::with_capacity(vertices.len());
    for idx in 0..vertices.len() {
        let p = &vertices[idx];
        let q = &vertices[(idx + 1) % vertices.len()];
        polygon += p.point.x * q.point.y - q.point.x * p.point.y;

        let mut best: Option<(usize, f64, bool)> = None;
        for m in (0..3).filter(|&m| p.circles[m] && q.circles[m]) {
            let c = centers[m];
            let start = (p.point.y - c.y).atan2(p.point.x - c.x);
            let end = (q.point.y - c.y).atan2(q.point.x - c.x);
            let mut sweep = (end - start).rem_euclid(2.0 * PI);
            if sweep == 0.0 {
                sweep = 2.0 * PI;
            }
            let mid_angle = start + 0.5 * sweep;
            let mid = Point::new(c.x + radii[m] * mid_angle.cos(), c.y + radii[m] * mid_angle.sin());
            let ok = inside_all(&mid);
            let better = match best {
                None => true,
                Some((_, s, b_ok)) => (ok && !b_ok) || (ok == b_ok && sweep < s),
            };
            if better {
                best = Some((m, sweep, ok));
            }
        }
        let Some((m, sweep, _)) = best else {
            // Consecutive vertices without a shared circle cannot bound a
            // convex intersection; only reachable through roundoff.
            return Resolved::simple(ConfigClass::Empty, 0.0);
        };
        arcs.push((m, sweep));
        segments += 0.5 * radii[m] * radii[m] * (sweep - sweep.sin());
    }
    let polygon = 0.5 * polygon;
    let area = (polygon + segments).max(0.0);

    let mut used = [false; 3];
    for &(m, _) in &arcs {
        used[m] = true;
    }
    let class = match arcs.len() {
        2 => ConfigClass::PairwiseLens,
        3 if used.iter().all(|&u| u) => ConfigClass::Generic,
        _ => ConfigClass::MultiArc,
    };

    let generic = (class == ConfigClass::Generic).then(|| {
        let mut theta = [0.0; 3];
        let mut seg = [0.0; 3];
        for &(m, sweep) in &arcs {
            theta[m] = sweep;
            seg[m] = 0.5 * radii[m] * radii[m] * (sweep - sweep.sin());
        }
        CentralAreaBreakdown {
            theta1: theta[0],
            theta2: theta[1],
            theta3: theta[2],
            seg1: seg[0],
            seg2: seg[1],
            seg3: seg[2],
            chord_triangle: polygon.max(0.0),
            total: area,
            config_class: ConfigClass::Generic,
        }
    });

    Resolved {
        class,
        area,
        generic,
    }
}

fn circle_intersections(c1: Point, r1: f64, c2: Point, r2: f64, d: f64) -> [Point; 2] {
    let along = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    let h = (r1 * r1 - along * along).max(0.0).sqrt();
    let ux = (c2.x - c1.x) / d;
    let uy = (c2.y - c1.y) / d;
    let bx = c1.x + along * ux;
    let by = c1.y + along * uy;
    [
        Point::new(bx - h * uy, by + h * ux),
        Point::new(bx + h * uy, by - h * ux),
    ]
}
