//! Sentence scoring with the three-circle estimator.
//!
//! Events are "word `w` occurs in a sentence", so a sentence is scored as
//! the joint probability that all of its (distinct) words co-occur. Word
//! order only matters to the Markov baseline in [`markov_score`].
//!
//! Sets of four or more words are reduced recursively: the longest prefix
//! `E = {x₁ … x_{m−2}}` is merged into one pseudo-event, and the triple
//! `(E, x_{m−1}, x_m)` is solved with the pairwise joints
//! `P(E ∪ {x_{m−1}})`, `P(E ∪ {x_m})` and `P(x_{m−1} x_m)`. For four words
//! this merges the first pair.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use log::warn;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{self, GeometryError};
use crate::probmodel::{self, TripleMarginals};

/// Calibration coefficient used when none is given.
pub const DEFAULT_K: f64 = crate::experiment::REFERENCE_K;

#[derive(Debug, Error)]
pub enum NgramError {
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unknown word `{0}`")]
    UnknownWord(String),
    #[error("inconsistent data: {0}")]
    DataInconsistency(String),
    #[error("geometry failed for {subset:?}: {source}")]
    Geometry {
        subset: Vec<String>,
        source: GeometryError,
    },
}

pub type Result<T> = std::result::Result<T, NgramError>;

/// Sentence-level occurrence and co-occurrence probabilities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NGramStats {
    pub unigram: BTreeMap<String, f64>,
    /// Keyed by the lexicographically ordered pair.
    pub bigram: BTreeMap<(String, String), f64>,
    pub total_sentences: u64,
    /// Fréchet clamps applied while loading.
    pub warnings: Vec<String>,
}

fn pair_key(x: &str, y: &str) -> (String, String) {
    if x <= y {
        (x.to_string(), y.to_string())
    } else {
        (y.to_string(), x.to_string())
    }
}

impl NGramStats {
    /// Builds stats from probabilities directly. Bigrams outside their
    /// Fréchet interval are clamped with a warning.
    pub fn from_probabilities<'a, U, B>(total_sentences: u64, unigrams: U, bigrams: B) -> Result<Self>
    where
        U: IntoIterator<Item = (&'a str, f64)>,
        B: IntoIterator<Item = (&'a str, &'a str, f64)>,
    {
        let mut unigram = BTreeMap::new();
        for (w, p) in unigrams {
            if !(0.0..=1.0).contains(&p) {
                return Err(NgramError::Domain(format!("P({w}) = {p} outside [0, 1]")));
            }
            unigram.insert(w.to_string(), p);
        }
        let mut stats = Self {
            unigram,
            bigram: BTreeMap::new(),
            total_sentences,
            warnings: Vec::new(),
        };
        for (x, y, p) in bigrams {
            stats.insert_bigram(x, y, p)?;
        }
        Ok(stats)
    }

    fn insert_bigram(&mut self, x: &str, y: &str, p: f64) -> Result<()> {
        let px = self.unigram_of(x)?;
        let py = self.unigram_of(y)?;
        let (violation, clamped) = probmodel::check_pair(&format!("P({x} {y})"), p, px, py);
        let clamped = clamped.clamp(0.0, 1.0);
        if let Some(v) = violation {
            let msg = format!("{v}; clamped to {clamped}");
            warn!("{msg}");
            self.warnings.push(msg);
        }
        self.bigram.insert(pair_key(x, y), clamped);
        Ok(())
    }

    pub fn unigram_of(&self, w: &str) -> Result<f64> {
        self.unigram
            .get(w)
            .copied()
            .ok_or_else(|| NgramError::UnknownWord(w.to_string()))
    }

    /// Co-occurrence probability; unseen pairs are 0, a word with itself is
    /// its unigram.
    pub fn bigram_of(&self, x: &str, y: &str) -> Result<f64> {
        let px = self.unigram_of(x)?;
        self.unigram_of(y)?;
        if x == y {
            return Ok(px);
        }
        Ok(self.bigram.get(&pair_key(x, y)).copied().unwrap_or(0.0))
    }

    /// Add-one smoothed co-occurrence, `(c + 1) / (N + 2)` with `c = p·N`,
    /// projected back into the pair's Fréchet interval.
    pub fn smoothed_bigram_of(&self, x: &str, y: &str) -> Result<f64> {
        let raw = self.bigram_of(x, y)?;
        if x == y {
            return Ok(raw);
        }
        let n = self.total_sentences as f64;
        let smoothed = (raw * n + 1.0) / (n + 2.0);
        let (lo, hi) = probmodel::frechet_interval(self.unigram_of(x)?, self.unigram_of(y)?);
        Ok(smoothed.clamp(lo, hi))
    }
}

/// Parses the line-oriented count format:
///
/// ```text
/// #SENTENCES 100
/// the 60
/// cat 30
/// the cat 25
/// ```
///
/// Other `#` lines are comments. Counts are sentence-level occurrences.
pub fn parse_counts(text: &str) -> Result<NGramStats> {
    let mut total: Option<u64> = None;
    let mut unigrams: Vec<(usize, String, u64)> = Vec::new();
    let mut bigrams: Vec<(usize, String, String, u64)> = Vec::new();
    let count = |line: usize, s: &str| {
        s.parse::<u64>().map_err(|e| NgramError::Parse {
            line,
            msg: format!("bad count `{s}`: {e}"),
        })
    };

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields[0] == "#SENTENCES" {
            if total.is_some() {
                return Err(NgramError::Parse {
                    line,
                    msg: "duplicate #SENTENCES header".into(),
                });
            }
            if fields.len() != 2 {
                return Err(NgramError::Parse {
                    line,
                    msg: "expected `#SENTENCES <total>`".into(),
                });
            }
            total = Some(count(line, fields[1])?);
            continue;
        }
        if trimmed.starts_with('#') {
            continue;
        }
        if total.is_none() {
            return Err(NgramError::Parse {
                line,
                msg: "missing #SENTENCES header before counts".into(),
            });
        }
        match fields.as_slice() {
            [w, c] => unigrams.push((line, w.to_string(), count(line, c)?)),
            [x, y, c] => {
                if x == y {
                    return Err(NgramError::Parse {
                        line,
                        msg: format!("bigram pairs `{x}` with itself"),
                    });
                }
                bigrams.push((line, x.to_string(), y.to_string(), count(line, c)?))
            }
            _ => {
                return Err(NgramError::Parse {
                    line,
                    msg: format!("expected 2 or 3 fields, found {}", fields.len()),
                })
            }
        }
    }

    let total = total.ok_or_else(|| NgramError::Parse {
        line: 1,
        msg: "missing #SENTENCES header".into(),
    })?;
    if total == 0 {
        return Err(NgramError::Domain("#SENTENCES must be > 0".into()));
    }
    let n = total as f64;

    let mut stats = NGramStats {
        unigram: BTreeMap::new(),
        bigram: BTreeMap::new(),
        total_sentences: total,
        warnings: Vec::new(),
    };
    for (line, w, c) in unigrams {
        if c > total {
            return Err(NgramError::Parse {
                line,
                msg: format!("count {c} for `{w}` exceeds #SENTENCES {total}"),
            });
        }
        if stats.unigram.insert(w.clone(), c as f64 / n).is_some() {
            return Err(NgramError::Parse {
                line,
                msg: format!("duplicate unigram `{w}`"),
            });
        }
    }
    for (line, x, y, c) in bigrams {
        if stats.bigram.contains_key(&pair_key(&x, &y)) {
            return Err(NgramError::Parse {
                line,
                msg: format!("duplicate bigram `{x} {y}`"),
            });
        }
        stats
            .insert_bigram(&x, &y, c as f64 / n)
            .map_err(|e| match e {
                NgramError::UnknownWord(w) => NgramError::Parse {
                    line,
                    msg: format!("bigram word `{w}` has no unigram line"),
                },
                other => other,
            })?;
    }
    Ok(stats)
}

pub fn load_counts(path: impl AsRef<Path>) -> Result<NGramStats> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| NgramError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_counts(&text)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScoringOptions {
    /// Add-one smoothing of co-occurrence probabilities.
    pub smoothing: bool,
    pub memoize: bool,
}

impl Default for ScoringOptions {
    fn default() -> Self {
        Self {
            smoothing: false,
            memoize: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub events: Vec<String>,
    pub estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointEstimate {
    pub value: f64,
    pub trace: Vec<TraceEntry>,
}

/// Removes repeated words, keeping first occurrences in order.
pub fn dedup_words<S: AsRef<str>>(words: &[S]) -> Vec<&str> {
    let mut out: Vec<&str> = Vec::with_capacity(words.len());
    for w in words {
        let w = w.as_ref();
        if !out.contains(&w) {
            out.push(w);
        }
    }
    out
}

struct Estimator<'a> {
    words: Vec<&'a str>,
    stats: &'a NGramStats,
    opts: ScoringOptions,
    memo: HashMap<Vec<usize>, f64>,
    trace: Vec<TraceEntry>,
}

impl Estimator<'_> {
    fn names(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| self.words[i].to_string()).collect()
    }

    fn pair(&self, i: usize, j: usize) -> Result<f64> {
        let (x, y) = (self.words[i], self.words[j]);
        if self.opts.smoothing {
            self.stats.smoothed_bigram_of(x, y)
        } else {
            self.stats.bigram_of(x, y)
        }
    }

    fn estimate(&mut self, idx: &[usize]) -> Result<f64> {
        if self.opts.memoize {
            if let Some(&v) = self.memo.get(idx) {
                return Ok(v);
            }
        }
        let value = match idx {
            [i] => self.stats.unigram_of(self.words[*i])?,
            [i, j] => self.pair(*i, *j)?,
            _ => {
                let m = idx.len();
                let (prefix, b, c) = (&idx[..m - 2], idx[m - 2], idx[m - 1]);
                let pa = self.estimate(prefix)?;
                let pab = self.estimate(&idx[..m - 1])?;
                let mut with_c = prefix.to_vec();
                with_c.push(c);
                let pac = self.estimate(&with_c)?;
                let pb = self.stats.unigram_of(self.words[b])?;
                let pc = self.stats.unigram_of(self.words[c])?;
                let pbc = self.pair(b, c)?;

                let (_, marginals) =
                    probmodel::feasibility_check(&TripleMarginals::new(pa, pb, pc, pab, pac, pbc));
                let config = geometry::build_config(&marginals, geometry::DEFAULT_TOL).map_err(
                    |source| NgramError::Geometry {
                        subset: self.names(idx),
                        source,
                    },
                )?;
                geometry::triple_intersection_area(&config).total
            }
        };
        if self.opts.memoize {
            self.memo.insert(idx.to_vec(), value);
        }
        self.trace.push(TraceEntry {
            events: self.names(idx),
            estimate: value,
        });
        Ok(value)
    }
}

/// Estimated probability that all `events` co-occur, with the reduction
/// trace. Repeated words are collapsed first; sub-estimates are raw areas.
pub fn estimate_joint<S: AsRef<str>>(
    events: &[S],
    stats: &NGramStats,
    opts: ScoringOptions,
) -> Result<JointEstimate> {
    let words = dedup_words(events);
    if words.is_empty() {
        return Err(NgramError::Domain("at least one event is required".into()));
    }
    for w in &words {
        stats.unigram_of(w)?;
    }
    let idx: Vec<usize> = (0..words.len()).collect();
    let mut est = Estimator {
        words,
        stats,
        opts,
        memo: HashMap::new(),
        trace: Vec::new(),
    };
    let value = est.estimate(&idx)?;
    Ok(JointEstimate {
        value,
        trace: est.trace,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentenceScore {
    pub raw_area: f64,
    /// `k·raw + k·raw²`.
    pub calibrated: f64,
    pub k_used: f64,
    pub reduction_trace: Vec<TraceEntry>,
}

pub fn calibrate(raw: f64, k: f64) -> f64 {
    k * raw + k * raw * raw
}

pub fn score_sentence<S: AsRef<str>>(
    words: &[S],
    stats: &NGramStats,
    k: f64,
    opts: ScoringOptions,
) -> Result<SentenceScore> {
    if k.is_nan() || k < 0.0 {
        return Err(NgramError::Domain(format!("k must be >= 0, got {k}")));
    }
    let est = estimate_joint(words, stats, opts)?;
    Ok(SentenceScore {
        raw_area: est.value,
        calibrated: calibrate(est.value, k),
        k_used: k,
        reduction_trace: est.trace,
    })
}

/// Bigram Markov baseline `P(x₁)·Π P(x_{i+1} | x_i)` on the word sequence as
/// written, with `P(y | x) = P(x y) / P(x)`.
pub fn markov_score<S: AsRef<str>>(words: &[S], stats: &NGramStats) -> Result<f64> {
    let Some(first) = words.first() else {
        return Err(NgramError::Domain("empty sentence".into()));
    };
    for w in words {
        stats.unigram_of(w.as_ref())?;
    }
    let mut prob = stats.unigram_of(first.as_ref())?;
    for pair in words.windows(2) {
        let (x, y) = (pair[0].as_ref(), pair[1].as_ref());
        let px = stats.unigram_of(x)?;
        let pxy = stats.bigram_of(x, y)?;
        if px == 0.0 {
            if pxy != 0.0 {
                return Err(NgramError::DataInconsistency(format!(
                    "P({x} {y}) = {pxy} but P({x}) = 0"
                )));
            }
            return Ok(0.0);
        }
        prob *= pxy / px;
    }
    Ok(prob)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedSentence {
    /// Position in the input.
    pub index: usize,
    pub words: Vec<String>,
    pub score: SentenceScore,
    pub markov: Option<f64>,
}

#[derive(Debug)]
pub struct Ranking {
    pub ranked: Vec<RankedSentence>,
    /// Sentences that could not be scored, with their input position.
    pub failures: Vec<(usize, NgramError)>,
}

/// Ranks sentences by calibrated score, highest first; ties keep input order.
pub fn rank_sentences<S: AsRef<str>>(
    sentences: &[Vec<S>],
    stats: &NGramStats,
    k: f64,
    opts: ScoringOptions,
) -> Ranking {
    let mut ranked = Vec::new();
    let mut failures = Vec::new();
    for (index, words) in sentences.iter().enumerate() {
        match score_sentence(words, stats, k, opts) {
            Ok(score) => ranked.push(RankedSentence {
                index,
                words: words.iter().map(|w| w.as_ref().to_string()).collect(),
                score,
                markov: markov_score(words, stats).ok(),
            }),
            Err(e) => failures.push((index, e)),
        }
    }
    ranked.sort_by(|a, b| {
        b.score
            .calibrated
            .total_cmp(&a.score.calibrated)
            .then(a.index.cmp(&b.index))
    });
    Ranking { ranked, failures }
}
