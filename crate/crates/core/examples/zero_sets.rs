//! Where between components vanish away from the equal-means slice.
//!
//!     cargo run --example zero_sets -- [out.csv]

use ineq_simplex::zerosets::{
    cv_dcp_zero_curve, mld_dci_pair_product, mld_dci_zero_curves, theil_dcp_zero_solve, verify_zero_curve, write_curves_csv,
};
use ineq_simplex::{ComponentSpec, MeasureId, Scheme};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cv = ComponentSpec::between(MeasureId::Cv, Scheme::Population);
    let cv_curves = cv_dcp_zero_curve(500)?;
    for c in &cv_curves {
        println!("{}: s in [{:.6}, {:.6}], max |between| = {:.2e}", c.label, c.range.0, c.range.1, verify_zero_curve(&cv, c, 1e-8)?);
    }

    println!("\nTheil, population weights: roots on slices above 1/3");
    for z3 in [0.35, 0.4, 0.5, 0.6, 0.65] {
        let (z1, z2) = theil_dcp_zero_solve(z3)?;
        println!("  z3 = {z3:.2}: z1 = {z1:.8}, z2 = {z2:.8}");
    }

    let mld = ComponentSpec::between(MeasureId::Mld, Scheme::Income);
    let curves = mld_dci_zero_curves(500)?;
    println!("\nMLD, income weights: sweep starts at z3 = {:e}", curves.z3_min);
    for c in &curves.branches {
        let (a, b) = (c.points[0], c.points[c.len() - 1]);
        println!("  {}: {a} -> {b}, max |between| = {:.2e}", c.label, verify_zero_curve(&mld, c, 1e-8)?);
    }
    println!("  pair product at z3 = 0.2: z1 z2 = {:.10}", mld_dci_pair_product(0.2));

    if let Some(path) = std::env::args().nth(1) {
        let mut all = cv_curves.to_vec();
        all.extend(curves.branches);
        write_curves_csv(&all, std::fs::File::create(&path)?)?;
        println!("\nwrote {path}");
    }
    Ok(())
}
