//! Command-line front end.
//!
//! Exit codes: 0 success, 2 invalid or infeasible input, 3 I/O failure,
//! 4 unknown word.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::experiment::{self, ExperimentError, ExperimentTable, SweepOptions};
use crate::geometry::{self, CentralAreaBreakdown, TripleConfig};
use crate::ngram::{self, NgramError, ScoringOptions};
use crate::oracle;
use crate::probmodel::{self, TripleMarginals};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_UNKNOWN_WORD: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "trivenn",
    version,
    about = "Estimate the joint probability of three events from their single and pairwise probabilities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the three-circle construction and print the central area S.
    Solve(SolveArgs),
    /// Compare the closed-form central area with a Monte Carlo estimate.
    Oracle(OracleArgs),
    /// Run a random sweep and write one CSV row per copy.
    Experiment(ExperimentArgs),
    /// Re-fit P(ABC) ≈ k·S + k·S² on an existing sweep CSV.
    Fit(FitArgs),
    /// Score one sentence against a count file.
    Score(ScoreArgs),
    /// Rank several sentences against a count file.
    Rank(RankArgs),
}

#[derive(Debug, Args)]
pub struct MarginalArgs {
    #[arg(long)]
    pub pa: f64,
    #[arg(long)]
    pub pb: f64,
    #[arg(long)]
    pub pc: f64,
    #[arg(long)]
    pub pab: f64,
    #[arg(long)]
    pub pac: f64,
    #[arg(long)]
    pub pbc: f64,
}

impl MarginalArgs {
    fn marginals(&self) -> TripleMarginals {
        TripleMarginals::new(self.pa, self.pb, self.pc, self.pab, self.pac, self.pbc)
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub marginals: MarginalArgs,
    /// Area tolerance of the center-distance bisection.
    #[arg(long, default_value_t = geometry::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub marginals: MarginalArgs,
    #[arg(long, default_value_t = geometry::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(long, default_value_t = 1000)]
    pub copies: u64,
    /// Trials per copy.
    #[arg(long = "n", default_value_t = 10_000)]
    pub n_trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// CSV output path.
    #[arg(long)]
    pub out: PathBuf,
    /// Rolling window for the fluctuation profile [default: max(25, copies/40)].
    #[arg(long)]
    pub window: Option<usize>,
    #[arg(long, default_value_t = geometry::DEFAULT_TOL)]
    pub tol: f64,
    /// Run copies on one thread.
    #[arg(long)]
    pub serial: bool,
    /// Also fit independent coefficients k1·S + k2·S².
    #[arg(long)]
    pub two_coefficient: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// CSV written by `experiment`.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub window: Option<usize>,
    #[arg(long)]
    pub two_coefficient: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ScoringArgs {
    /// Count file (`#SENTENCES <n>`, `<word> <count>`, `<w1> <w2> <count>`).
    #[arg(long)]
    pub counts: PathBuf,
    #[arg(long, default_value_t = ngram::DEFAULT_K)]
    pub k: f64,
    /// Add-one smoothing of co-occurrence probabilities.
    #[arg(long)]
    pub smoothing: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    #[command(flatten)]
    pub scoring: ScoringArgs,
    /// Also print the bigram Markov baseline.
    #[arg(long)]
    pub baseline: bool,
    /// Print the reduction trace.
    #[arg(long)]
    pub trace: bool,
    #[arg(required = true)]
    pub words: Vec<String>,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    #[command(flatten)]
    pub scoring: ScoringArgs,
    /// File with one sentence per line.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Sentences, each a single quoted argument.
    pub sentences: Vec<String>,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn io(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_IO,
            message: message.into(),
        }
    }
}

impl From<NgramError> for CliError {
    fn from(e: NgramError) -> Self {
        let code = match e {
            NgramError::Io { .. } => EXIT_IO,
            NgramError::UnknownWord(_) => EXIT_UNKNOWN_WORD,
            _ => EXIT_INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult = Result<String, CliError>;

/// Parses `args` (including the program name), runs the command and writes
/// its output. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match execute(&cli.command, err) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

fn execute(command: &Command, err: &mut dyn Write) -> CliResult {
    match command {
        Command::Solve(a) => cmd_solve(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Experiment(a) => cmd_experiment(a),
        Command::Fit(a) => cmd_fit(a),
        Command::Score(a) => cmd_score(a),
        Command::Rank(a) => cmd_rank(a, err),
    }
}

fn solve_marginals(m: &TripleMarginals, tol: f64) -> Result<(TripleConfig, CentralAreaBreakdown), CliError> {
    let (violations, _) = probmodel::feasibility_check(m);
    if !violations.is_empty() {
        let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(CliError::input(format!("infeasible probabilities: {}", list.join("; "))));
    }
    let config = geometry::build_config(m, tol).map_err(|e| CliError::input(e.to_string()))?;
    let breakdown = geometry::triple_intersection_area(&config);
    Ok((config, breakdown))
}

fn render_solution(config: &TripleConfig, b: &CentralAreaBreakdown) -> String {
    let mut s = String::new();
    let r = config.circles;
    let [ca, cb, cc] = config.centers;
    let _ = writeln!(s, "radii           a={} b={} c={}", r.radius_a, r.radius_b, r.radius_c);
    let _ = writeln!(
        s,
        "distances       AB={} AC={} BC={}",
        config.dist_ab, config.dist_ac, config.dist_bc
    );
    let _ = writeln!(
        s,
        "centers         A=({}, {}) B=({}, {}) C=({}, {})",
        ca.x, ca.y, cb.x, cb.y, cc.x, cc.y
    );
    let _ = writeln!(s, "angles          theta1={} theta2={} theta3={}", b.theta1, b.theta2, b.theta3);
    let _ = writeln!(s, "segments        seg1={} seg2={} seg3={}", b.seg1, b.seg2, b.seg3);
    let _ = writeln!(s, "chord triangle  {}", b.chord_triangle);
    let _ = writeln!(s, "S               {}", b.total);
    let _ = writeln!(s, "class           {}", b.config_class);
    s
}

fn to_json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values always serialize");
    s.push('\n');
    s
}

fn cmd_solve(a: &SolveArgs) -> CliResult {
    let m = a.marginals.marginals();
    let (config, breakdown) = solve_marginals(&m, a.tol)?;
    Ok(match a.format {
        Format::Text => render_solution(&config, &breakdown),
        Format::Json => to_json(&json!({
            "marginals": m,
            "config": config,
            "breakdown": breakdown,
        })),
    })
}

fn cmd_oracle(a: &OracleArgs) -> CliResult {
    if a.samples == 0 {
        return Err(CliError::input("--samples must be >= 1"));
    }
    let m = a.marginals.marginals();
    let (config, breakdown) = solve_marginals(&m, a.tol)?;
    let est = oracle::triple_area_numeric(&config, a.samples, a.seed);
    let sigmas = if est.std_error > 0.0 {
        (est.mean - breakdown.total).abs() / est.std_error
    } else if est.mean == breakdown.total {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(match a.format {
        Format::Text => format!(
            "S closed form   {}\nS monte carlo   {} ± {} ({} samples, seed {})\ndeviation       {:.3} sigma\nclass           {}\n",
            breakdown.total, est.mean, est.std_error, est.samples, a.seed, sigmas, breakdown.config_class
        ),
        Format::Json => to_json(&json!({
            "closed_form": breakdown,
            "numeric": est,
            "seed": a.seed,
            "deviation_sigma": sigmas,
        })),
    })
}

fn summarize(table: &ExperimentTable, window: Option<usize>, two_coefficient: bool, format: Format) -> String {
    let window = window.unwrap_or_else(|| experiment::default_window(table.copies));
    let fit = experiment::fit_k(table);
    let sorted = experiment::sort_by_pabc(table.clone());
    let fluct = experiment::fluctuation_profile(&sorted, window)
        .map(|p| experiment::mean_rolling_std(&p));
    let two = two_coefficient.then(|| experiment::fit_two_coefficient(table));

    match format {
        Format::Json => {
            let mut v = json!({
                "copies": table.copies,
                "n_trials": table.n_trials,
                "master_seed": table.master_seed,
                "reference_k": experiment::REFERENCE_K,
                "window": window,
            });
            match &fit {
                Ok(f) => v["fit"] = json!(f),
                Err(e) => v["fit_error"] = json!(e.to_string()),
            }
            match &fluct {
                Ok(m) => v["mean_rolling_std"] = json!(m),
                Err(e) => v["fluctuation_error"] = json!(e.to_string()),
            }
            match &two {
                Some(Ok(t)) => v["two_coefficient"] = json!(t),
                Some(Err(e)) => v["two_coefficient_error"] = json!(e.to_string()),
                None => {}
            }
            to_json(&v)
        }
        Format::Text => {
            let mut s = format!(
                "copies={} n={} seed={}",
                table.copies, table.n_trials, table.master_seed
            );
            match &fit {
                Ok(f) => {
                    let _ = write!(
                        s,
                        " used={} skipped={} k={} (reference k={}) pearson={} spearman={} residual_std={}",
                        f.used_copies,
                        f.skipped_copies,
                        f.k,
                        experiment::REFERENCE_K,
                        f.pearson_r,
                        f.spearman_rho,
                        f.residual_std
                    );
                }
                Err(e) => {
                    let _ = write!(s, " fit unavailable ({e})");
                }
            }
            match &fluct {
                Ok(m) => {
                    let _ = write!(s, " window={window} mean_rolling_std={m}");
                }
                Err(e) => {
                    let _ = write!(s, " fluctuation unavailable ({e})");
                }
            }
            match &two {
                Some(Ok(t)) => {
                    let _ = write!(s, " k1={} k2={} rss2={}", t.k1, t.k2, t.rss);
                }
                Some(Err(e)) => {
                    let _ = write!(s, " two-coefficient fit unavailable ({e})");
                }
                None => {}
            }
            s.push('\n');
            s
        }
    }
}

fn cmd_experiment(a: &ExperimentArgs) -> CliResult {
    let opts = SweepOptions {
        copies: a.copies,
        n_trials: a.n_trials,
        master_seed: a.seed,
        tol: a.tol,
        parallel: !a.serial,
    };
    let table = experiment::run_sweep(&opts).map_err(|e| CliError::input(e.to_string()))?;
    let mut buf = Vec::new();
    experiment::write_csv(&table, &mut buf).map_err(|e| CliError::io(e.to_string()))?;
    std::fs::write(&a.out, buf)
        .map_err(|e| CliError::io(format!("writing {}: {e}", a.out.display())))?;
    Ok(summarize(&table, a.window, a.two_coefficient, a.format))
}

fn cmd_fit(a: &FitArgs) -> CliResult {
    let file = std::fs::File::open(&a.input)
        .map_err(|e| CliError::io(format!("reading {}: {e}", a.input.display())))?;
    let table = experiment::read_csv(file).map_err(|e| match e {
        ExperimentError::Csv(ref inner) if inner.is_io_error() => CliError::io(e.to_string()),
        other => CliError::input(other.to_string()),
    })?;
    Ok(summarize(&table, a.window, a.two_coefficient, a.format))
}

fn scoring_options(a: &ScoringArgs) -> Result<ScoringOptions, CliError> {
    if a.k.is_nan() || a.k < 0.0 {
        return Err(CliError::input(format!("--k must be >= 0, got {}", a.k)));
    }
    Ok(ScoringOptions {
        smoothing: a.smoothing,
        memoize: true,
    })
}

fn cmd_score(a: &ScoreArgs) -> CliResult {
    let opts = scoring_options(&a.scoring)?;
    let stats = ngram::load_counts(&a.scoring.counts)?;
    let score = ngram::score_sentence(&a.words, &stats, a.scoring.k, opts)?;
    let markov = if a.baseline {
        Some(ngram::markov_score(&a.words, &stats)?)
    } else {
        None
    };
    Ok(match a.scoring.format {
        Format::Json => {
            let mut v = json!({
                "words": a.words,
                "raw_area": score.raw_area,
                "calibrated": score.calibrated,
                "k_used": score.k_used,
            });
            if let Some(m) = markov {
                v["markov"] = json!(m);
            }
            if a.trace {
                v["reduction_trace"] = json!(score.reduction_trace);
            }
            to_json(&v)
        }
        Format::Text => {
            let mut s = format!(
                "raw_area={} calibrated={} k={}",
                score.raw_area, score.calibrated, score.k_used
            );
            if let Some(m) = markov {
                let _ = write!(s, " markov={m}");
            }
            s.push('\n');
            if a.trace {
                for t in &score.reduction_trace {
                    let _ = writeln!(s, "  {{{}}} {}", t.events.join(" "), t.estimate);
                }
            }
            s
        }
    })
}

fn cmd_rank(a: &RankArgs, err: &mut dyn Write) -> CliResult {
    let opts = scoring_options(&a.scoring)?;
    let stats = ngram::load_counts(&a.scoring.counts)?;
    let mut lines: Vec<String> = Vec::new();
    if let Some(path) = &a.input {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::io(format!("reading {}: {e}", path.display())))?;
        lines.extend(text.lines().filter(|l| !l.trim().is_empty()).map(str::to_string));
    }
    lines.extend(a.sentences.iter().cloned());
    if lines.is_empty() {
        return Err(CliError::input("no sentences given"));
    }
    let sentences: Vec<Vec<String>> = lines
        .iter()
        .map(|l| l.split_whitespace().map(str::to_string).collect())
        .collect();
    let ranking = ngram::rank_sentences(&sentences, &stats, a.scoring.k, opts);
    for (index, e) in &ranking.failures {
        let _ = writeln!(err, "sentence {index} ({}): {e}", lines[*index]);
    }

    Ok(match a.scoring.format {
        Format::Json => {
            let ranked: Vec<_> = ranking
                .ranked
                .iter()
                .map(|r| {
                    json!({
                        "index": r.index,
                        "sentence": lines[r.index],
                        "raw_area": r.score.raw_area,
                        "calibrated": r.score.calibrated,
                        "markov": r.markov,
                    })
                })
                .collect();
            let failures: Vec<_> = ranking
                .failures
                .iter()
                .map(|(i, e)| json!({"index": i, "sentence": lines[*i], "error": e.to_string()}))
                .collect();
            to_json(&json!({"k": a.scoring.k, "ranked": ranked, "failures": failures}))
        }
        Format::Text => {
            let mut s = String::new();
            for (rank, r) in ranking.ranked.iter().enumerate() {
                let markov = r.markov.map(|m| m.to_string()).unwrap_or_else(|| "-".into());
                let _ = writeln!(
                    s,
                    "{}\t{}\tcalibrated={}\traw={}\tmarkov={}\t{}",
                    rank + 1,
                    r.index,
                    r.score.calibrated,
                    r.score.raw_area,
                    markov,
                    lines[r.index]
                );
            }
            s
        }
    })
}
