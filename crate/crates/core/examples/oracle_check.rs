//! Compares the closed-form central area with a Monte Carlo estimate on a
//! handful of random joint distributions.
//!
//! ```text
//! cargo run --release --example oracle_check -- [count] [samples]
//! ```

use trivenn::geometry::{self, DEFAULT_TOL};
use trivenn::{oracle, probmodel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let count: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(10);
    let samples: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1_000_000);

    println!("{:>4}  {:<12}  {:>10}  {:>10}  {:>10}  {:>6}", "seed", "class", "exact", "numeric", "stderr", "sigma");
    for seed in 0..count {
        let stats = probmodel::joint_to_marginals(&probmodel::random_joint(seed));
        let config = match geometry::build_config(&stats.marginals, DEFAULT_TOL) {
            Ok(c) => c,
            Err(e) => {
                println!("{seed:>4}  skipped: {e}");
                continue;
            }
        };
        let exact = geometry::triple_intersection_area(&config);
        let est = oracle::triple_area_numeric(&config, samples, seed);
        let sigma = if est.std_error > 0.0 {
            (est.mean - exact.total).abs() / est.std_error
        } else {
            0.0
        };
        println!(
            "{seed:>4}  {:<12}  {:>10.6}  {:>10.6}  {:>10.2e}  {sigma:>6.2}",
            exact.config_class.to_string(),
            exact.total,
            est.mean,
            est.std_error
        );
    }
    Ok(())
}
