//! Joint probability of three events from their single and pairwise
//! probabilities, read off an area-proportional three-circle Venn diagram.
//!
//! Each event becomes a disc with area equal to its probability, the discs
//! are placed so that each pairwise overlap has the area of the pairwise
//! joint, and the area `S` of the region shared by all three discs serves as
//! the estimate of `P(ABC)`, optionally calibrated as `k·S + k·S²`.
//!
//! ```
//! use trivenn::geometry::{build_config, triple_intersection_area, DEFAULT_TOL};
//! use trivenn::probmodel::TripleMarginals;
//!
//! let m = TripleMarginals::new(0.5, 0.4, 0.3, 0.2, 0.15, 0.12);
//! let config = build_config(&m, DEFAULT_TOL).unwrap();
//! let s = triple_intersection_area(&config).total;
//! assert!(s > 0.0 && s <= 0.12);
//! ```
//!
//! Modules:
//!
//! * [`geometry`]: construction and central-area computation.
//! * [`oracle`]: Monte Carlo area estimates used for validation.
//! * [`probmodel`]: joint distributions, trial simulation, Fréchet checks.
//! * [`experiment`]: random sweeps, calibration fit, fluctuation profile.
//! * [`ngram`]: sentence scoring on co-occurrence counts.
//! * [`cli`]: the `trivenn` command.

pub mod cli;
pub mod experiment;
pub mod geometry;
pub mod ngram;
pub mod oracle;
pub mod probmodel;

pub use experiment::{CopyRecord, ExperimentTable, FitResult};
pub use geometry::{CentralAreaBreakdown, CircleTriple, ConfigClass, TripleConfig};
pub use ngram::{NGramStats, SentenceScore};
pub use oracle::AreaEstimate;
pub use probmodel::{CellCounts, EstimatedStats, JointDist8, TripleMarginals};
