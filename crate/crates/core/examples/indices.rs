//! The four indices on raw incomes and on shares, for populations of any size.
//!
//!     cargo run --example indices

use ineq_simplex::measures::{index_of_incomes, kl_divergence};
use ineq_simplex::{index3, IncomeVector, MeasureId, SharePoint3};

fn main() -> Result<(), ineq_simplex::Error> {
    let incomes = [3.0, 5.0, 12.0];
    let z = SharePoint3::from_incomes(incomes[0], incomes[1], incomes[2])?;
    println!("incomes {incomes:?} -> shares {z}");
    for m in MeasureId::ALL {
        // Scale invariance: doubling every income leaves the index unchanged.
        let doubled: Vec<f64> = incomes.iter().map(|y| 2.0 * y).collect();
        println!("  {:5} I(z) = {:.6}   I(2y) = {:.6}", m.to_string(), index3(m, &z)?, index_of_incomes(m, &doubled)?);
    }

    let bigger = IncomeVector::new(vec![1.0, 2.0, 2.0, 4.0, 8.0, 13.0])?;
    println!("\nsix incomes {:?}", bigger.values());
    for m in MeasureId::ALL {
        println!("  {:5} {:.6}", m.to_string(), index_of_incomes(m, bigger.values())?);
    }

    // Theil is the KL divergence of the shares from the uniform split.
    let shares = bigger.shares();
    let uniform = vec![1.0 / shares.len() as f64; shares.len()];
    println!("  KL(shares || uniform) = {:.6}", kl_divergence(&shares, &uniform));

    // The Gini is defined at the boundary, MLD is not.
    let edge = SharePoint3::new(0.5, 0.0, 0.5)?;
    println!("\nat {edge}: Gini = {:.6}, MLD -> {}", index3(MeasureId::Gini, &edge)?, index3(MeasureId::Mld, &edge).unwrap_err());
    Ok(())
}
