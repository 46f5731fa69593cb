//! Exit criteria. Each criterion prints one PASS/FAIL line; the process exits
//! nonzero if any criterion fails.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use trivenn::experiment::{self, ExperimentTable, REFERENCE_K};
use trivenn::geometry::{self, ConfigClass, GeometryError, DEFAULT_TOL};
use trivenn::ngram::{self, ScoringOptions};
use trivenn::oracle;
use trivenn::probmodel::{self, CellCounts, TripleMarginals};

const MASTER_SEED: u64 = 2017;
const COPIES: u64 = 1000;
const TRIALS: [u64; 3] = [10_000, 1_000_000, 100_000_000];
const WINDOW: usize = 25;
/// Spearman rho measured at MASTER_SEED on the first run, minus 0.05.
const PINNED_SPEARMAN: [f64; 3] = [0.859, 0.858, 0.858];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut built = 0;
    let mut seed = 0u64;
    while built < 1000 {
        let stats = probmodel::joint_to_marginals(&probmodel::random_joint(1_000_000 + seed));
        seed += 1;
        let m = stats.marginals;
        let cfg = match geometry::build_config(&m, DEFAULT_TOL) {
            Ok(cfg) => cfg,
            Err(GeometryError::ConfigurationInfeasible { .. }) => continue,
            Err(e) => return outcome(false, format!("unexpected error {e}")),
        };
        let [a, b, c] = cfg.circles.as_array();
        for (r1, r2, d, p) in [
            (a, b, cfg.dist_ab, m.pab),
            (b, c, cfg.dist_bc, m.pbc),
            (a, c, cfg.dist_ac, m.pac),
        ] {
            worst = worst.max((geometry::lens_area(r1, r2, d).unwrap() - p).abs());
        }
        built += 1;
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-9 && elapsed < Duration::from_secs(5),
        format!("{built} sets ({seed} drawn), max lens error {worst:.2e}, {elapsed:.2?}"),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut configs = Vec::new();
    let mut seed = 0u64;
    while configs.len() < 200 {
        let m = probmodel::joint_to_marginals(&probmodel::random_joint(2_000_000 + seed)).marginals;
        seed += 1;
        if let Ok(cfg) = geometry::build_config(&m, DEFAULT_TOL) {
            if geometry::classify(&cfg) == ConfigClass::Generic {
                configs.push(cfg);
            }
        }
    }
    let mut worst_sigma: f64 = 0.0;
    let mut worst_generic: f64 = 0.0;
    let mut worst_polygon: f64 = 0.0;
    for (i, cfg) in configs.iter().enumerate() {
        let robust = geometry::triple_intersection_area(cfg).total;
        let generic = geometry::central_area_generic(cfg).unwrap().total;
        let polygon = geometry::arc_polygon_area(cfg);
        let est = oracle::triple_area_numeric(cfg, 10_000_000, i as u64);
        worst_sigma = worst_sigma.max((est.mean - robust).abs() / est.std_error);
        worst_generic = worst_generic.max((generic - robust).abs());
        worst_polygon = worst_polygon.max((generic - polygon).abs());
    }
    let elapsed = start.elapsed();
    outcome(
        worst_sigma <= 4.0
            && worst_generic <= 1e-9
            && worst_polygon <= 1e-9
            && elapsed < Duration::from_secs(120),
        format!(
            "200 generic configs: max {worst_sigma:.2} sigma vs Monte Carlo, \
             generic-vs-robust {worst_generic:.1e}, generic-vs-arc-polygon {worst_polygon:.1e}, {elapsed:.2?}"
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut worst_identical: f64 = 0.0;
    for p in [1e-6, 0.01, 0.2, 0.5, 0.9, 1.0] {
        let cfg = geometry::build_config(&TripleMarginals::new(p, p, p, p, p, p), DEFAULT_TOL).unwrap();
        worst_identical = worst_identical.max((geometry::triple_intersection_area(&cfg).total - p).abs());
    }
    let disjoint = geometry::build_config(&TripleMarginals::new(0.2, 0.3, 0.25, 0.0, 0.0, 0.0), DEFAULT_TOL)
        .map(|cfg| geometry::triple_intersection_area(&cfg).total);
    let unit = geometry::TripleConfig::new(geometry::CircleTriple::new(1.0, 1.0, 1.0), 1.0, 1.0, 1.0).unwrap();
    let reuleaux = geometry::triple_intersection_area(&unit).total;
    let exact = (PI - 3f64.sqrt()) / 2.0;
    outcome(
        worst_identical <= 1e-12 && disjoint == Ok(0.0) && (reuleaux - exact).abs() <= 1e-9,
        format!(
            "identical max err {worst_identical:.1e}, disjoint S = {disjoint:?}, unit S = {reuleaux:.12} (exact {exact:.12})"
        ),
    )
}

struct Sweeps {
    tables: Vec<ExperimentTable>,
}

fn sweeps() -> Sweeps {
    let tables = TRIALS
        .iter()
        .map(|&n| experiment::run_experiment(COPIES, n, MASTER_SEED).unwrap())
        .collect();
    Sweeps { tables }
}

fn criterion_4(s: &Sweeps) -> Outcome {
    let stds: Vec<f64> = s
        .tables
        .iter()
        .map(|t| {
            let sorted = experiment::sort_by_pabc(t.clone());
            experiment::mean_rolling_std(&experiment::fluctuation_profile(&sorted, WINDOW).unwrap())
        })
        .collect();
    outcome(
        stds[0] > stds[1] && stds[1] > stds[2],
        format!(
            "mean rolling std of S (window {WINDOW}): n=1e4 {:.6}, n=1e6 {:.6}, n=1e8 {:.6}",
            stds[0], stds[1], stds[2]
        ),
    )
}

fn criterion_5(s: &Sweeps) -> Outcome {
    let rhos: Vec<f64> = s
        .tables
        .iter()
        .map(|t| experiment::fit_k(t).unwrap().spearman_rho)
        .collect();
    let pass = rhos
        .iter()
        .zip(PINNED_SPEARMAN)
        .all(|(&rho, pinned)| rho > 0.0 && rho >= pinned);
    outcome(
        pass,
        format!(
            "Spearman rho: {:.4} / {:.4} / {:.4} (pinned >= {:?})",
            rhos[0], rhos[1], rhos[2], PINNED_SPEARMAN
        ),
    )
}

fn criterion_6(s: &Sweeps) -> Outcome {
    let records = (0..200)
        .map(|i| {
            let s = 0.001 + i as f64 * 0.0025;
            experiment::CopyRecord {
                copy_index: i,
                stats: probmodel::EstimatedStats {
                    marginals: TripleMarginals::new(0.5, 0.5, 0.5, 0.3, 0.3, 0.3),
                    pabc: 0.63 * (s + s * s),
                    punion: 0.9,
                },
                central_area: Some(s),
                config_class: Some(ConfigClass::Generic),
                error_note: None,
            }
        })
        .collect();
    let fit = experiment::fit_k(&ExperimentTable::from_records(records)).unwrap();
    let empirical = experiment::fit_k(&s.tables[2]).unwrap();
    outcome(
        (fit.k - 0.63).abs() <= 1e-12 && fit.rss <= 1e-20,
        format!(
            "synthetic k = {:.15}, rss = {:.1e}; sweep at n=1e8: k = {:.4} (reference {REFERENCE_K}, not asserted)",
            fit.k, fit.rss, empirical.k
        ),
    )
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut worst_joint: f64 = 0.0;
    let mut worst_counts: f64 = 0.0;
    for seed in 0..100_000u64 {
        let dist = probmodel::random_joint(3_000_000 + seed);
        worst_joint = worst_joint.max(probmodel::inclusion_exclusion_check(&probmodel::joint_to_marginals(&dist)).abs());
        let counts = probmodel::sample_counts(&dist, 10_000, seed);
        let stats = probmodel::estimate_from_counts(&counts).unwrap();
        worst_counts = worst_counts.max(probmodel::inclusion_exclusion_check(&stats).abs());
    }
    let elapsed = start.elapsed();
    outcome(
        worst_joint <= 1e-12 && worst_counts <= 1e-12 && elapsed < Duration::from_secs(10),
        format!("max residual: joints {worst_joint:.1e}, counts {worst_counts:.1e}, {elapsed:.2?}"),
    )
}

/// Sentence-level counts from a two-topic occurrence model over `vocab`.
fn synthetic_corpus(rng: &mut ChaCha8Rng, vocab: &[&str], sentences: u64) -> String {
    let topics: Vec<Vec<f64>> = (0..2)
        .map(|_| vocab.iter().map(|_| rng.random_range(0.05..0.8)).collect())
        .collect();
    let mut uni = vec![0u64; vocab.len()];
    let mut bi = vec![vec![0u64; vocab.len()]; vocab.len()];
    for _ in 0..sentences {
        let topic = &topics[rng.random_range(0..2)];
        let present: Vec<bool> = topic.iter().map(|&p| rng.random::<f64>() < p).collect();
        for i in 0..vocab.len() {
            if present[i] {
                uni[i] += 1;
                for j in i + 1..vocab.len() {
                    if present[j] {
                        bi[i][j] += 1;
                    }
                }
            }
        }
    }
    let mut text = format!("#SENTENCES {sentences}\n");
    for (i, w) in vocab.iter().enumerate() {
        text.push_str(&format!("{w} {}\n", uni[i]));
    }
    for i in 0..vocab.len() {
        for j in i + 1..vocab.len() {
            if bi[i][j] > 0 {
                text.push_str(&format!("{} {} {}\n", vocab[i], vocab[j], bi[i][j]));
            }
        }
    }
    text
}

fn criterion_8() -> Outcome {
    let trial_log = CellCounts::from_trials([
        (false, true, true),
        (true, false, true),
        (false, false, true),
        (true, true, false),
        (true, false, false),
    ]);
    let s = probmodel::estimate_from_counts(&trial_log).unwrap();
    let m = s.marginals;
    let table_ok = (m.pa, m.pb, m.pc) == (0.6, 0.4, 0.6)
        && (m.pab, m.pac, m.pbc) == (0.2, 0.2, 0.2)
        && s.pabc == 0.0;

    let vocab = ["w0", "w1", "w2", "w3", "w4", "w5"];
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut mismatches = 0;
    let mut ranked_total = 0;
    for _ in 0..100 {
        let stats = ngram::parse_counts(&synthetic_corpus(&mut rng, &vocab, 2000)).unwrap();
        let sentences: Vec<Vec<&str>> = (0..12)
            .map(|_| {
                let len = rng.random_range(1..=5);
                (0..len).map(|_| vocab[rng.random_range(0..vocab.len())]).collect()
            })
            .collect();
        for k in [0.1, 0.63, 5.0] {
            let ranking = ngram::rank_sentences(&sentences, &stats, k, ScoringOptions::default());
            let by_calibrated: Vec<usize> = ranking.ranked.iter().map(|r| r.index).collect();
            let mut by_raw = ranking.ranked.clone();
            by_raw.sort_by(|a, b| b.score.raw_area.total_cmp(&a.score.raw_area).then(a.index.cmp(&b.index)));
            let by_raw: Vec<usize> = by_raw.iter().map(|r| r.index).collect();
            ranked_total += by_raw.len();
            if by_raw != by_calibrated {
                mismatches += 1;
            }
        }
    }
    outcome(
        table_ok && mismatches == 0,
        format!(
            "trial-log stats {}; ranking invariance: {mismatches} mismatches over 300 rankings ({ranked_total} scored sentences)",
            if table_ok { "exact" } else { "WRONG" }
        ),
    )
}

fn criterion_9() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_trivenn");
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, serial: bool| {
        let path = dir.path().join(name);
        let mut cmd = Command::new(bin);
        cmd.args(["experiment", "--copies", "300", "--n", "1000000", "--seed", "99", "--out"])
            .arg(&path);
        if serial {
            cmd.arg("--serial");
        }
        let status = cmd.output().unwrap().status;
        assert!(status.success());
        std::fs::read(path).unwrap()
    };
    let first = run("a.csv", false);
    let second = run("b.csv", false);
    let serial = run("c.csv", true);
    let opts = |parallel| experiment::SweepOptions {
        parallel,
        ..experiment::SweepOptions::new(300, 10_000, 5)
    };
    let lib_equal = experiment::run_sweep(&opts(true)).unwrap() == experiment::run_sweep(&opts(false)).unwrap();
    outcome(
        first == second && first == serial && lib_equal,
        format!(
            "CSV {} bytes; rerun identical: {}, serial identical: {}, library parallel == serial: {lib_equal}",
            first.len(),
            first == second,
            first == serial
        ),
    )
}

fn main() {
    let mut failed = 0;
    let mut report = |n: u32, name: &str, o: Outcome| {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {n}: {name}: {}", o.detail);
        if !o.pass {
            failed += 1;
        }
    };
    report(1, "geometry round trip", criterion_1());
    report(2, "closed form vs Monte Carlo oracle", criterion_2());
    report(3, "analytic anchors", criterion_3());
    let s = sweeps();
    report(4, "fluctuation narrowing with n", criterion_4(&s));
    report(5, "positive association of S and P(ABC)", criterion_5(&s));
    report(6, "calibration fit recovery", criterion_6(&s));
    report(7, "inclusion-exclusion identity", criterion_7());
    report(8, "n-gram end to end", criterion_8());
    report(9, "determinism", criterion_9());
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
