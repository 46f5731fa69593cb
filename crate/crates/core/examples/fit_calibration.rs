//! Runs a sweep, round-trips it through CSV and fits both calibration
//! models on the reloaded table.
//!
//! ```text
//! cargo run --release --example fit_calibration -- [copies] [n] [seed] [out.csv]
//! ```

use std::fs::File;
use std::io::BufWriter;

use trivenn::experiment;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let copies: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(500);
    let n: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(100_000);
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1);
    let out = args
        .next()
        .map(std::path::PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("trivenn_sweep.csv"));

    let table = experiment::run_experiment(copies, n, seed)?;
    experiment::write_csv(&table, BufWriter::new(File::create(&out)?))?;
    println!("wrote {} rows to {}", table.records.len(), out.display());

    let table = experiment::read_csv(File::open(&out)?)?;
    let fit = experiment::fit_k(&table)?;
    println!(
        "k·S + k·S²:    k={:.4} rss={:.4e} residual_std={:.4e} ({} used, {} skipped)",
        fit.k, fit.rss, fit.residual_std, fit.used_copies, fit.skipped_copies
    );
    println!("correlation:   pearson={:.4} spearman={:.4}", fit.pearson_r, fit.spearman_rho);
    let two = experiment::fit_two_coefficient(&table)?;
    println!("k1·S + k2·S²:  k1={:.4} k2={:.4} rss={:.4e}", two.k1, two.k2, two.rss);

    let window = experiment::default_window(copies);
    let profile = experiment::fluctuation_profile(&experiment::sort_by_pabc(table), window)?;
    println!(
        "rolling std of S (window {window}): {:.6}",
        experiment::mean_rolling_std(&profile)
    );
    Ok(())
}
