//! Random sweeps at three trial counts.
//!
//! For each trial count the same 1000 joint distributions are simulated,
//! `S` is computed per copy, and the summary shows the calibration fit, the
//! rank correlation between `S` and the empirical `P(ABC)` and the rolling
//! spread of `S` along the sorted `P(ABC)` axis.
//!
//! ```text
//! cargo run --release --example experiment_sweep -- [copies] [seed]
//! ```

use trivenn::experiment::{self, REFERENCE_K};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let copies: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1000);
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2017);

    println!("copies={copies} seed={seed} window=25");
    println!("{:>11}  {:>8}  {:>8}  {:>10}  {:>10}  {:>12}", "n", "usable", "k", "pearson", "spearman", "rolling_std");
    for n in [10_000u64, 1_000_000, 100_000_000] {
        let table = experiment::run_experiment(copies, n, seed)?;
        let fit = experiment::fit_k(&table)?;
        let sorted = experiment::sort_by_pabc(table);
        let profile = experiment::fluctuation_profile(&sorted, 25)?;
        println!(
            "{n:>11}  {:>8}  {:>8.4}  {:>10.4}  {:>10.4}  {:>12.6}",
            fit.used_copies,
            fit.k,
            fit.pearson_r,
            fit.spearman_rho,
            experiment::mean_rolling_std(&profile)
        );
    }
    println!("reference k = {REFERENCE_K} (depends on how the joint distributions are drawn)");
    Ok(())
}
