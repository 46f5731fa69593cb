//! Builds the three-circle diagram for six probabilities and prints every
//! intermediate quantity.
//!
//! ```text
//! cargo run --example solve_venn -- [pa pb pc pab pac pbc]
//! ```

use trivenn::geometry::{self, DEFAULT_TOL};
use trivenn::probmodel::{self, TripleMarginals};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<f64> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    let p = match args.as_slice() {
        [] => [0.6, 0.4, 0.6, 0.2, 0.2, 0.2],
        &[a, b, c, ab, ac, bc] => [a, b, c, ab, ac, bc],
        _ => return Err("expected six probabilities: pa pb pc pab pac pbc".into()),
    };
    let m = TripleMarginals::new(p[0], p[1], p[2], p[3], p[4], p[5]);

    let (violations, _) = probmodel::feasibility_check(&m);
    if !violations.is_empty() {
        for v in &violations {
            eprintln!("infeasible: {v}");
        }
        std::process::exit(2);
    }

    let config = geometry::build_config(&m, DEFAULT_TOL)?;
    let [ra, rb, rc] = config.circles.as_array();
    println!("radii      a={ra:.6} b={rb:.6} c={rc:.6}");
    println!(
        "distances  AB={:.6} AC={:.6} BC={:.6}",
        config.dist_ab, config.dist_ac, config.dist_bc
    );
    for (name, c) in ["A", "B", "C"].iter().zip(config.centers) {
        println!("center {name}   ({:.6}, {:.6})", c.x, c.y);
    }

    let b = geometry::triple_intersection_area(&config);
    println!("class      {}", b.config_class);
    println!("angles     {:.6} {:.6} {:.6}", b.theta1, b.theta2, b.theta3);
    println!("segments   {:.6} {:.6} {:.6}", b.seg1, b.seg2, b.seg3);
    println!("triangle   {:.6}", b.chord_triangle);
    println!("S          {:.6}", b.total);
    println!("arc walk   {:.6}", geometry::arc_polygon_area(&config));
    Ok(())
}
