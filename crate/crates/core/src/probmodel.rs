//! Joint distributions over three binary events, trial simulation and the
//! statistics estimated from simulated trials.
//!
//! Cells are indexed by `(a, b, c) ∈ {0,1}³` packed as `a << 2 | b << 1 | c`,
//! so index 7 is "all three events occur" and index 0 is "none occurs".

use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Exp1};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Slack used when reporting Fréchet-bound violations, so that values equal
/// to a bound up to roundoff are not flagged.
pub const FEASIBILITY_SLACK: f64 = 1e-12;

/// ChaCha stream used by [`random_joint`].
const JOINT_STREAM: u64 = 0;
/// ChaCha stream used by [`sample_counts`].
const COUNTS_STREAM: u64 = 1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProbError {
    #[error("domain error: {0}")]
    Domain(String),
}

/// Packs a cell `(a, b, c)` into its index.
pub const fn cell_index(a: bool, b: bool, c: bool) -> usize {
    ((a as usize) << 2) | ((b as usize) << 1) | (c as usize)
}

/// Unpacks a cell index into `(a, b, c)`.
pub const fn cell_bits(index: usize) -> (bool, bool, bool) {
    (index & 4 != 0, index & 2 != 0, index & 1 != 0)
}

/// Probability of each of the eight outcomes of three binary events.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JointDist8 {
    pub cell_probs: [f64; 8],
}

impl JointDist8 {
    /// Validates nonnegativity and normalization (within 1e-12).
    pub fn new(cell_probs: [f64; 8]) -> Result<Self, ProbError> {
        if cell_probs.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
            return Err(ProbError::Domain(format!(
                "cell probabilities must be finite and >= 0: {cell_probs:?}"
            )));
        }
        let sum: f64 = cell_probs.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(ProbError::Domain(format!(
                "cell probabilities sum to {sum}, not 1"
            )));
        }
        Ok(Self { cell_probs })
    }

    pub fn uniform() -> Self {
        Self {
            cell_probs: [0.125; 8],
        }
    }

    pub fn point_mass(a: bool, b: bool, c: bool) -> Self {
        let mut cell_probs = [0.0; 8];
        cell_probs[cell_index(a, b, c)] = 1.0;
        Self { cell_probs }
    }

    pub fn prob(&self, a: bool, b: bool, c: bool) -> f64 {
        self.cell_probs[cell_index(a, b, c)]
    }
}

/// Outcome counts of `total` independent trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellCounts {
    pub counts: [u64; 8],
    pub total: u64,
}

impl CellCounts {
    pub fn from_counts(counts: [u64; 8]) -> Self {
        Self {
            counts,
            total: counts.iter().sum(),
        }
    }

    /// Tallies individual trial outcomes, e.g. `(0, 1, 1)` rows of a trial log.
    pub fn from_trials<I>(trials: I) -> Self
    where
        I: IntoIterator<Item = (bool, bool, bool)>,
    {
        let mut counts = [0u64; 8];
        for (a, b, c) in trials {
            counts[cell_index(a, b, c)] += 1;
        }
        Self::from_counts(counts)
    }
}

/// The six probabilities the geometric construction consumes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TripleMarginals {
    pub pa: f64,
    pub pb: f64,
    pub pc: f64,
    pub pab: f64,
    pub pac: f64,
    pub pbc: f64,
}

impl TripleMarginals {
    pub fn new(pa: f64, pb: f64, pc: f64, pab: f64, pac: f64, pbc: f64) -> Self {
        Self {
            pa,
            pb,
            pc,
            pab,
            pac,
            pbc,
        }
    }
}

/// Marginals plus the triple joint and the union probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimatedStats {
    pub marginals: TripleMarginals,
    pub pabc: f64,
    pub punion: f64,
}

/// Seeded draw from the uniform distribution on the 8-cell probability
/// simplex (normalized unit exponentials).
pub fn random_joint(seed: u64) -> JointDist8 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(JOINT_STREAM);
    let mut cell_probs = [0.0; 8];
    for p in cell_probs.iter_mut() {
        *p = Exp1.sample(&mut rng);
    }
    let sum: f64 = cell_probs.iter().sum();
    for p in cell_probs.iter_mut() {
        *p /= sum;
    }
    JointDist8 { cell_probs }
}

/// Multinomial draw of `n` trials over the eight cells.
///
/// Uses a chain of conditional binomials, so the cost does not depend on `n`.
pub fn sample_counts(dist: &JointDist8, n: u64, seed: u64) -> CellCounts {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(COUNTS_STREAM);
    sample_counts_with(dist, n, &mut rng)
}

pub fn sample_counts_with<R: Rng + ?Sized>(dist: &JointDist8, n: u64, rng: &mut R) -> CellCounts {
    let mut counts = [0u64; 8];
    let mut remaining = n;
    #[allow(clippy::needless_range_loop)]
    for k in 0..7 {
        if remaining == 0 {
            break;
        }
        let rest: f64 = dist.cell_probs[k..].iter().sum();
        let p = if rest > 0.0 {
            (dist.cell_probs[k] / rest).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let drawn = if p == 0.0 {
            0
        } else if p == 1.0 {
            remaining
        } else {
            Binomial::new(remaining, p)
                .expect("binomial parameters are in range")
                .sample(rng)
        };
        counts[k] = drawn;
        remaining -= drawn;
    }
    counts[7] += remaining;
    CellCounts { counts, total: n }
}

fn stats_from_cells<T: Copy + Into<f64>>(cells: &[T; 8], total: f64) -> EstimatedStats {
    let mass = |pred: fn(bool, bool, bool) -> bool| -> f64 {
        let sum: f64 = (0..8)
            .filter(|&i| {
                let (a, b, c) = cell_bits(i);
                pred(a, b, c)
            })
            .map(|i| cells[i].into())
            .sum();
        sum / total
    };
    EstimatedStats {
        marginals: TripleMarginals {
            pa: mass(|a, _, _| a),
            pb: mass(|_, b, _| b),
            pc: mass(|_, _, c| c),
            pab: mass(|a, b, _| a && b),
            pac: mass(|a, _, c| a && c),
            pbc: mass(|_, b, c| b && c),
        },
        pabc: mass(|a, b, c| a && b && c),
        punion: mass(|a, b, c| a || b || c),
    }
}

/// Relative frequencies of the seven events of interest.
pub fn estimate_from_counts(counts: &CellCounts) -> Result<EstimatedStats, ProbError> {
    if counts.total == 0 {
        return Err(ProbError::Domain("no trials to estimate from".into()));
    }
    let cells = counts.counts.map(|c| c as f64);
    Ok(stats_from_cells(&cells, counts.total as f64))
}

/// Exact marginalization of a joint distribution.
pub fn joint_to_marginals(dist: &JointDist8) -> EstimatedStats {
    stats_from_cells(&dist.cell_probs, 1.0)
}

/// Residual of the three-event inclusion–exclusion identity,
/// `P(ABC) − (P(A∪B∪C) − P(A) − P(B) − P(C) + P(AB) + P(BC) + P(AC))`.
pub fn inclusion_exclusion_check(stats: &EstimatedStats) -> f64 {
    let m = &stats.marginals;
    stats.pabc - (stats.punion - m.pa - m.pb - m.pc + m.pab + m.pbc + m.pac)
}

/// One violated range or Fréchet bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Violation {
    OutOfRange {
        field: String,
        value: f64,
    },
    AboveUpperFrechet {
        pair: String,
        value: f64,
        bound: f64,
    },
    BelowLowerFrechet {
        pair: String,
        value: f64,
        bound: f64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OutOfRange { field, value } => {
                write!(f, "{field} = {value} is outside [0, 1]")
            }
            Violation::AboveUpperFrechet { pair, value, bound } => write!(
                f,
                "{pair} = {value} exceeds the upper Fréchet bound min of its marginals = {bound}"
            ),
            Violation::BelowLowerFrechet { pair, value, bound } => write!(
                f,
                "{pair} = {value} is below the lower Fréchet bound (sum of marginals - 1) = {bound}"
            ),
        }
    }
}

/// Feasible interval `[max(0, px + py − 1), min(px, py)]` of a pairwise joint.
pub fn frechet_interval(px: f64, py: f64) -> (f64, f64) {
    ((px + py - 1.0).max(0.0), px.min(py))
}

/// Checks a pairwise joint against its Fréchet interval and returns the
/// projected value alongside any violation.
pub fn check_pair(pair: &str, pxy: f64, px: f64, py: f64) -> (Option<Violation>, f64) {
    if !(0.0..=1.0).contains(&pxy) {
        // Range problems are reported separately; still project.
        let (lo, hi) = frechet_interval(px, py);
        return (None, pxy.clamp(lo, hi));
    }
    let (lo, hi) = frechet_interval(px, py);
    if pxy > hi + FEASIBILITY_SLACK {
        (
            Some(Violation::AboveUpperFrechet {
                pair: pair.to_string(),
                value: pxy,
                bound: hi,
            }),
            hi,
        )
    } else if pxy < lo - FEASIBILITY_SLACK {
        (
            Some(Violation::BelowLowerFrechet {
                pair: pair.to_string(),
                value: pxy,
                bound: lo,
            }),
            lo,
        )
    } else {
        (None, pxy.clamp(lo, hi))
    }
}

/// Reports range and Fréchet violations and returns a projected copy.
///
/// The input is never mutated; callers opt into the clamped copy.
pub fn feasibility_check(m: &TripleMarginals) -> (Vec<Violation>, TripleMarginals) {
    let mut violations = Vec::new();
    let mut unit = |field: &str, v: f64| {
        if v.is_nan() || !(0.0..=1.0).contains(&v) {
            violations.push(Violation::OutOfRange {
                field: field.to_string(),
                value: v,
            });
        }
        if v.is_nan() {
            0.0
        } else {
            v.clamp(0.0, 1.0)
        }
    };
    let pa = unit("pA", m.pa);
    let pb = unit("pB", m.pb);
    let pc = unit("pC", m.pc);
    let pab_in = unit("pAB", m.pab);
    let pac_in = unit("pAC", m.pac);
    let pbc_in = unit("pBC", m.pbc);

    let mut pair = |name: &str, v: f64, px: f64, py: f64| {
        let (violation, projected) = check_pair(name, v, px, py);
        violations.extend(violation);
        projected
    };
    let pab = pair("pAB", pab_in, pa, pb);
    let pac = pair("pAC", pac_in, pa, pc);
    let pbc = pair("pBC", pbc_in, pb, pc);

    (violations, TripleMarginals::new(pa, pb, pc, pab, pac, pbc))
}
