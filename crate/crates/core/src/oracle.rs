//! Monte Carlo estimates of disc-intersection areas.
//!
//! Points are drawn uniformly from the axis-aligned box that bounds every
//! disc involved (the intersection of the per-disc boxes), and a hit is a
//! point inside all of them. The work is split into fixed-size chunks, each
//! with its own ChaCha stream, so the estimate depends only on
//! `(discs, samples, seed)` and not on how chunks are scheduled.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::geometry::{Point, TripleConfig};

const CHUNK: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AreaEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
}

impl AreaEstimate {
    /// Whether `value` lies within `sigmas` standard errors of the mean.
    pub fn agrees_with(&self, value: f64, sigmas: f64) -> bool {
        (self.mean - value).abs() <= sigmas * self.std_error
    }
}

#[derive(Debug, Clone, Copy)]
struct Disc {
    center: Point,
    radius: f64,
}

/// Estimated area of the region common to all three discs.
///
/// # Panics
///
/// Panics if `samples` is zero.
pub fn triple_area_numeric(config: &TripleConfig, samples: u64, seed: u64) -> AreaEstimate {
    let radii = config.circles.as_array();
    let discs: Vec<Disc> = config
        .centers
        .iter()
        .zip(radii)
        .map(|(&center, radius)| Disc { center, radius })
        .collect();
    estimate(&discs, samples, seed)
}

/// Estimated intersection area of two discs at center distance `d`.
///
/// # Panics
///
/// Panics if `samples` is zero.
pub fn lens_area_numeric(r1: f64, r2: f64, d: f64, samples: u64, seed: u64) -> AreaEstimate {
    let discs = [
        Disc {
            center: Point::new(0.0, 0.0),
            radius: r1,
        },
        Disc {
            center: Point::new(d, 0.0),
            radius: r2,
        },
    ];
    estimate(&discs, samples, seed)
}

fn estimate(discs: &[Disc], samples: u64, seed: u64) -> AreaEstimate {
    assert!(samples >= 1, "at least one sample is required");

    let x0 = discs.iter().map(|d| d.center.x - d.radius).fold(f64::MIN, f64::max);
    let x1 = discs.iter().map(|d| d.center.x + d.radius).fold(f64::MAX, f64::min);
    let y0 = discs.iter().map(|d| d.center.y - d.radius).fold(f64::MIN, f64::max);
    let y1 = discs.iter().map(|d| d.center.y + d.radius).fold(f64::MAX, f64::min);
    let (w, h) = (x1 - x0, y1 - y0);
    if !(w > 0.0 && h > 0.0) {
        return AreaEstimate {
            mean: 0.0,
            std_error: 0.0,
            samples,
        };
    }

    let chunks = samples.div_ceil(CHUNK);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let n = CHUNK.min(samples - chunk * CHUNK);
            let mut hits = 0u64;
            for _ in 0..n {
                let x = x0 + w * rng.random::<f64>();
                let y = y0 + h * rng.random::<f64>();
                let inside = discs.iter().all(|d| {
                    let dx = x - d.center.x;
                    let dy = y - d.center.y;
                    dx * dx + dy * dy <= d.radius * d.radius
                });
                hits += inside as u64;
            }
            hits
        })
        .sum();

    let box_area = w * h;
    let frac = hits as f64 / samples as f64;
    AreaEstimate {
        mean: box_area * frac,
        std_error: box_area * (frac * (1.0 - frac) / samples as f64).sqrt(),
        samples,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::CircleTriple;
    use std::f64::consts::PI;

    fn unit_equilateral(side: f64) -> TripleConfig {
        TripleConfig::new(CircleTriple::new(1.0, 1.0, 1.0), side, side, side).unwrap()
    }

    #[test]
    fn identical_unit_discs() {
        let cfg = unit_equilateral(0.0);
        let est = triple_area_numeric(&cfg, 1_000_000, 1);
        assert!(est.agrees_with(PI, 3.0), "{est:?}");
    }

    #[test]
    fn disjoint_discs_give_exact_zero() {
        let est = triple_area_numeric(&unit_equilateral(2.5), 10_000, 1);
        assert_eq!(est.mean, 0.0);
        assert_eq!(est.std_error, 0.0);
        let est = lens_area_numeric(1.0, 1.0, 2.5, 10_000, 1);
        assert_eq!(est.mean, 0.0);
    }

    #[test]
    fn reuleaux_triangle() {
        let est = triple_area_numeric(&unit_equilateral(1.0), 10_000_000, 7);
        let exact = (PI - 3f64.sqrt()) / 2.0;
        assert!(est.agrees_with(exact, 3.0), "{est:?}");
    }

    #[test]
    fn lens_examples() {
        let est = lens_area_numeric(1.0, 0.5, 0.1, 1_000_000, 2);
        assert!(est.agrees_with(PI * 0.25, 3.0), "{est:?}");
        let est = lens_area_numeric(1.0, 1.0, 1.0, 1_000_000, 3);
        assert!(est.agrees_with(2.0 * PI / 3.0 - 3f64.sqrt() / 2.0, 3.0), "{est:?}");
    }

    #[test]
    fn deterministic_per_seed() {
        let cfg = unit_equilateral(1.2);
        let a = triple_area_numeric(&cfg, 300_000, 5);
        let b = triple_area_numeric(&cfg, 300_000, 5);
        assert_eq!(a, b);
        let c = triple_area_numeric(&cfg, 300_000, 6);
        assert_ne!(a.mean, c.mean);
    }

    #[test]
    fn std_error_scales_with_inverse_sqrt() {
        let cfg = unit_equilateral(1.0);
        let small = triple_area_numeric(&cfg, 10_000, 1);
        let large = triple_area_numeric(&cfg, 1_000_000, 1);
        let ratio = small.std_error / large.std_error;
        assert!((5.0..=20.0).contains(&ratio), "{ratio}");
    }
}
