//! Tallies a small trial log, derives the seven probabilities and checks
//! inclusion-exclusion, the Fréchet bounds and the circle estimate.
//!
//! ```text
//! cargo run --example inclusion_exclusion
//! ```

use trivenn::geometry::{self, DEFAULT_TOL};
use trivenn::probmodel::{self, CellCounts, TripleMarginals};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Ten trials of three binary events (A, B, C).
    let log = [
        (1, 1, 1),
        (1, 1, 1),
        (1, 0, 1),
        (1, 0, 1),
        (1, 0, 0),
        (0, 1, 0),
        (0, 1, 0),
        (1, 0, 1),
        (0, 0, 1),
        (0, 0, 0),
    ];
    let counts = CellCounts::from_trials(log.iter().map(|&(a, b, c)| (a == 1, b == 1, c == 1)));
    let stats = probmodel::estimate_from_counts(&counts)?;
    let m = stats.marginals;

    println!("P(A)={} P(B)={} P(C)={}", m.pa, m.pb, m.pc);
    println!("P(AB)={} P(AC)={} P(BC)={}", m.pab, m.pac, m.pbc);
    println!("P(ABC)={} P(A∪B∪C)={}", stats.pabc, stats.punion);
    println!(
        "inclusion-exclusion residual {:e}",
        probmodel::inclusion_exclusion_check(&stats)
    );

    let config = geometry::build_config(&m, DEFAULT_TOL)?;
    let s = geometry::triple_intersection_area(&config);
    println!("circle estimate S={:.6} ({})", s.total, s.config_class);

    // Pairwise joints that no distribution can produce are reported and projected.
    let bad = TripleMarginals::new(0.3, 0.4, 0.9, 0.35, 0.1, 0.25);
    let (violations, clamped) = probmodel::feasibility_check(&bad);
    for v in &violations {
        println!("violation: {v}");
    }
    println!(
        "projected P(AB)={} P(AC)={} P(BC)={}",
        clamped.pab, clamped.pac, clamped.pbc
    );
    Ok(())
}
