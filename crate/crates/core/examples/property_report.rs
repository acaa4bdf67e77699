//! Checks all eight properties for every classical (index, weighting) pair
//! and prints the verdict table, then the violation magnitudes.
//!
//!     cargo run --release --example property_report

use ineq_simplex::diagnostics::{full_report, to_markdown, CheckConfig, PropertyId};
use ineq_simplex::{MeasureId, Scheme};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = CheckConfig::default();
    let reports = full_report(&MeasureId::ALL, &Scheme::CLASSICAL, &cfg)?;
    println!("{}", to_markdown(&reports));

    println!("largest violations:");
    for r in &reports {
        let cells: Vec<String> = r.properties.iter().map(|v| format!("{}={:.1e}", v.property, v.max_violation)).collect();
        println!("  {:5} {}  {}", r.measure.to_string(), r.scheme, cells.join(" "));
    }

    let mismatched: Vec<String> = reports
        .iter()
        .flat_map(|r| r.mismatches().into_iter().map(move |p: PropertyId| format!("{}/{}/{}", r.measure, r.scheme, p)))
        .collect();
    if mismatched.is_empty() {
        println!("all 64 verdicts match the expected table");
    } else {
        println!("unexpected verdicts: {}", mismatched.join(", "));
    }
    Ok(())
}
