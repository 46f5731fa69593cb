//! Random sweeps relating the central area `S` to the empirical `P(ABC)`.
//!
//! Each copy draws a joint distribution, simulates `n_trials` trials, solves
//! the three-circle construction from the estimated marginals and records
//! `S` next to the empirical triple joint. Sorting copies by `P(ABC)` and
//! measuring the rolling spread of `S` quantifies how tightly `S` tracks the
//! joint as the number of trials grows; [`fit_k`] fits the one-parameter
//! calibration `P ≈ k·S + k·S²`.

use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{self, ConfigClass};
use crate::probmodel::{self, EstimatedStats, TripleMarginals};

/// Calibration coefficient reported for the original large-sample sweep.
pub const REFERENCE_K: f64 = 0.63;

/// CSV header, in column order.
pub const CSV_COLUMNS: [&str; 12] = [
    "copy_index",
    "pA",
    "pB",
    "pC",
    "pAB",
    "pAC",
    "pBC",
    "pABC",
    "pUnion",
    "S",
    "config_class",
    "error_note",
];

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("csv line {line}: {msg}")]
    CsvField { line: u64, msg: String },
}

pub type Result<T> = std::result::Result<T, ExperimentError>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CopyRecord {
    pub copy_index: u64,
    pub stats: EstimatedStats,
    /// `S`; `None` when the geometry could not be built.
    pub central_area: Option<f64>,
    pub config_class: Option<ConfigClass>,
    pub error_note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentTable {
    pub records: Vec<CopyRecord>,
    /// Trials per copy; 0 when unknown (table read back from CSV).
    pub n_trials: u64,
    pub copies: u64,
    pub master_seed: u64,
    pub sorted: bool,
}

impl ExperimentTable {
    pub fn from_records(records: Vec<CopyRecord>) -> Self {
        Self {
            copies: records.len() as u64,
            records,
            n_trials: 0,
            master_seed: 0,
            sorted: false,
        }
    }

    pub fn valid_points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.records
            .iter()
            .filter_map(|r| r.central_area.map(|s| (s, r.stats.pabc)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepOptions {
    pub copies: u64,
    pub n_trials: u64,
    pub master_seed: u64,
    /// Area tolerance for the center-distance bisection.
    pub tol: f64,
    pub parallel: bool,
}

impl SweepOptions {
    pub fn new(copies: u64, n_trials: u64, master_seed: u64) -> Self {
        Self {
            copies,
            n_trials,
            master_seed,
            tol: geometry::DEFAULT_TOL,
            parallel: true,
        }
    }
}

/// Seed of copy `index`: `master_seed + index` (wrapping). Both the joint
/// distribution and the trial counts of a copy derive from it, on separate
/// streams.
pub fn copy_seed(master_seed: u64, index: u64) -> u64 {
    master_seed.wrapping_add(index)
}

pub fn run_experiment(copies: u64, n_trials: u64, master_seed: u64) -> Result<ExperimentTable> {
    run_sweep(&SweepOptions::new(copies, n_trials, master_seed))
}

pub fn run_sweep(opts: &SweepOptions) -> Result<ExperimentTable> {
    if opts.copies == 0 || opts.n_trials == 0 {
        return Err(ExperimentError::Domain(format!(
            "copies and n_trials must be >= 1 (got {} and {})",
            opts.copies, opts.n_trials
        )));
    }
    let one = |i| run_copy(i, opts.n_trials, opts.master_seed, opts.tol);
    // Collect preserves index order, so the reduction order never depends on
    // scheduling.
    let records: Vec<CopyRecord> = if opts.parallel {
        (0..opts.copies).into_par_iter().map(one).collect()
    } else {
        (0..opts.copies).map(one).collect()
    };
    Ok(ExperimentTable {
        records,
        n_trials: opts.n_trials,
        copies: opts.copies,
        master_seed: opts.master_seed,
        sorted: false,
    })
}

pub fn run_copy(index: u64, n_trials: u64, master_seed: u64, tol: f64) -> CopyRecord {
    let seed = copy_seed(master_seed, index);
    let dist = probmodel::random_joint(seed);
    let counts = probmodel::sample_counts(&dist, n_trials, seed);
    let stats = probmodel::estimate_from_counts(&counts).expect("n_trials >= 1");
    let (central_area, config_class, error_note) = match central_area_for(&stats.marginals, tol) {
        Ok(b) => (Some(b.total), Some(b.config_class), None),
        Err(e) => (None, None, Some(e.to_string())),
    };
    CopyRecord {
        copy_index: index,
        stats,
        central_area,
        config_class,
        error_note,
    }
}

fn central_area_for(
    m: &TripleMarginals,
    tol: f64,
) -> std::result::Result<geometry::CentralAreaBreakdown, geometry::GeometryError> {
    let config = geometry::build_config(m, tol)?;
    Ok(geometry::triple_intersection_area(&config))
}

/// Orders records by empirical `P(ABC)`, ties by `copy_index`.
pub fn sort_by_pabc(mut table: ExperimentTable) -> ExperimentTable {
    table.records.sort_by(|a, b| {
        a.stats
            .pabc
            .total_cmp(&b.stats.pabc)
            .then(a.copy_index.cmp(&b.copy_index))
    });
    table.sorted = true;
    table
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub k: f64,
    pub rss: f64,
    pub pearson_r: f64,
    pub spearman_rho: f64,
    pub residual_std: f64,
    pub used_copies: u64,
    pub skipped_copies: u64,
}

/// Least-squares `k` in `P(ABC) ≈ k·(S + S²)`, over copies with a central area.
pub fn fit_k(table: &ExperimentTable) -> Result<FitResult> {
    let (s, p): (Vec<f64>, Vec<f64>) = table.valid_points().unzip();
    let skipped = (table.records.len() - s.len()) as u64;
    if s.len() < 2 {
        return Err(ExperimentError::InsufficientData(format!(
            "{} usable copies, need at least 2",
            s.len()
        )));
    }
    let x: Vec<f64> = s.iter().map(|&v| v + v * v).collect();
    let sxx: f64 = x.iter().map(|v| v * v).sum();
    if sxx == 0.0 {
        return Err(ExperimentError::InsufficientData(
            "every central area is zero".into(),
        ));
    }
    let sxp: f64 = x.iter().zip(&p).map(|(a, b)| a * b).sum();
    let k = sxp / sxx;
    let residuals: Vec<f64> = x.iter().zip(&p).map(|(xi, pi)| pi - k * xi).collect();
    let rss = residuals.iter().map(|r| r * r).sum();
    Ok(FitResult {
        k,
        rss,
        pearson_r: pearson(&s, &p),
        spearman_rho: spearman(&s, &p),
        residual_std: std_dev(&residuals),
        used_copies: s.len() as u64,
        skipped_copies: skipped,
    })
}

/// Two independent coefficients, `P ≈ k1·S + k2·S²`. Exploration only; the
/// calibration used elsewhere shares one coefficient between both terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoCoefficientFit {
    pub k1: f64,
    pub k2: f64,
    pub rss: f64,
}

pub fn fit_two_coefficient(table: &ExperimentTable) -> Result<TwoCoefficientFit> {
    let (s, p): (Vec<f64>, Vec<f64>) = table.valid_points().unzip();
    if s.len() < 2 {
        return Err(ExperimentError::InsufficientData(format!(
            "{} usable copies, need at least 2",
            s.len()
        )));
    }
    // Normal equations for the columns S and S².
    let (mut a11, mut a12, mut a22, mut b1, mut b2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (&si, &pi) in s.iter().zip(&p) {
        let s2 = si * si;
        a11 += si * si;
        a12 += si * s2;
        a22 += s2 * s2;
        b1 += si * pi;
        b2 += s2 * pi;
    }
    let det = a11 * a22 - a12 * a12;
    if det.abs() <= 1e-300 || !det.is_finite() {
        return Err(ExperimentError::InsufficientData(
            "S and S² are collinear over the usable copies".into(),
        ));
    }
    let k1 = (b1 * a22 - b2 * a12) / det;
    let k2 = (a11 * b2 - a12 * b1) / det;
    let rss = s
        .iter()
        .zip(&p)
        .map(|(&si, &pi)| {
            let r = pi - k1 * si - k2 * si * si;
            r * r
        })
        .sum();
    Ok(TwoCoefficientFit { k1, k2, rss })
}

/// Default rolling window: `max(25, copies / 40)`.
pub fn default_window(copies: u64) -> usize {
    25usize.max((copies / 40) as usize)
}

/// Rolling standard deviation of `S` over consecutive windows of the sorted
/// usable records. Each entry is `(mean P(ABC) of the window, std of S)`.
pub fn fluctuation_profile(table: &ExperimentTable, window: usize) -> Result<Vec<(f64, f64)>> {
    if !table.sorted {
        return Err(ExperimentError::Domain(
            "table must be sorted by P(ABC) first".into(),
        ));
    }
    let points: Vec<(f64, f64)> = table.valid_points().collect();
    if window < 2 || window > points.len() {
        return Err(ExperimentError::Domain(format!(
            "window {window} must lie in [2, {}]",
            points.len()
        )));
    }
    Ok(points
        .windows(window)
        .map(|w| {
            let center = w.iter().map(|(_, p)| p).sum::<f64>() / window as f64;
            let s: Vec<f64> = w.iter().map(|(s, _)| *s).collect();
            (center, std_dev(&s))
        })
        .collect())
}

pub fn mean_rolling_std(profile: &[(f64, f64)]) -> f64 {
    if profile.is_empty() {
        return 0.0;
    }
    profile.iter().map(|(_, s)| s).sum::<f64>() / profile.len() as f64
}

/// Population standard deviation.
pub fn std_dev(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    (xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n).sqrt()
}

/// Pearson correlation; 0 when either side has no variance.
pub fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    if xs.is_empty() {
        return 0.0;
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return 0.0;
    }
    (sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0)
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman(xs: &[f64], ys: &[f64]) -> f64 {
    pearson(&ranks(xs), &ranks(ys))
}

fn ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut out = vec![0.0; xs.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && xs[order[j + 1]] == xs[order[i]] {
            j += 1;
        }
        let rank = 0.5 * (i + j) as f64 + 1.0;
        for &idx in &order[i..=j] {
            out[idx] = rank;
        }
        i = j + 1;
    }
    out
}

fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes the table as CSV, one row per record in table order.
pub fn write_csv<W: Write>(table: &ExperimentTable, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for r in &table.records {
        let m = &r.stats.marginals;
        let mut row = vec![r.copy_index.to_string()];
        row.extend(
            [m.pa, m.pb, m.pc, m.pab, m.pac, m.pbc, r.stats.pabc, r.stats.punion]
                .into_iter()
                .map(fmt_float),
        );
        row.push(r.central_area.map(fmt_float).unwrap_or_default());
        row.push(r.config_class.map(|c| c.to_string()).unwrap_or_default());
        row.push(r.error_note.clone().unwrap_or_default());
        w.write_record(&row)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Reads a table written by [`write_csv`]. Trial count and seed are not
/// stored in the file and come back as 0.
pub fn read_csv<R: Read>(input: R) -> Result<ExperimentTable> {
    let mut rdr = csv::Reader::from_reader(input);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header != CSV_COLUMNS {
        return Err(ExperimentError::CsvField {
            line: 1,
            msg: format!("unexpected header {header:?}"),
        });
    }
    let mut records = Vec::new();
    for row in rdr.records() {
        let row = row?;
        let line = row.position().map(|p| p.line()).unwrap_or(0);
        let bad = |msg: String| ExperimentError::CsvField { line, msg };
        let num = |i: usize| -> Result<f64> {
            row[i]
                .parse::<f64>()
                .map_err(|e| bad(format!("column {}: {e}", CSV_COLUMNS[i])))
        };
        let copy_index = row[0]
            .parse::<u64>()
            .map_err(|e| bad(format!("copy_index: {e}")))?;
        let stats = EstimatedStats {
            marginals: TripleMarginals::new(num(1)?, num(2)?, num(3)?, num(4)?, num(5)?, num(6)?),
            pabc: num(7)?,
            punion: num(8)?,
        };
        let central_area = if row[9].is_empty() {
            None
        } else {
            Some(num(9)?)
        };
        let config_class = if row[10].is_empty() {
            None
        } else {
            Some(row[10].parse::<ConfigClass>().map_err(bad)?)
        };
        let error_note = (!row[11].is_empty()).then(|| row[11].to_string());
        records.push(CopyRecord {
            copy_index,
            stats,
            central_area,
            config_class,
            error_note,
        });
    }
    Ok(ExperimentTable::from_records(records))
}
