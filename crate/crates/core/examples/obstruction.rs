//! The planar coboundary equation V = δP has no solution: build the truncated
//! system, extract a refutation, re-check it from JSON, and replay the
//! hand elimination.

use hochlab::obstruction::{build_coboundary_system, reproduce_contradiction, solve_or_certify, CertificateJson, ObstructionBounds};
use hochlab::starprod::canonical_theta;

fn main() -> hochlab::Result<()> {
    let theta = canonical_theta(2)?;
    for (d, dp) in [(4, 6), (5, 7)] {
        let sys = build_coboundary_system(&theta, ObstructionBounds { max_degree: d, max_pair_degree: dp })?;
        let cert = solve_or_certify(&sys)?;
        println!("D={d} Dpairs={dp}: {} rows, {} unknowns → {}", sys.rows.len(), sys.ncols(), cert.status());
        if cert.is_infeasible() {
            let json = serde_json::to_string_pretty(&cert.to_json(&sys)).expect("serializable");
            let back: CertificateJson = serde_json::from_str(&json).expect("round trip");
            println!("witness rows:");
            for row in &back.witness.rows {
                println!("  pair ({}, {}) at {}: rhs {}", row.pair[0], row.pair[1], row.target_monomial, row.rhs);
            }
            println!("re-verified from JSON: {:?}", back.reverify(&theta));
        }
    }
    println!();
    print!("{}", reproduce_contradiction()?.render());
    Ok(())
}
