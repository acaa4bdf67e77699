//! Decomposing a larger population over an arbitrary partition. MLD is exact
//! under population-share weights, Theil under income-share weights; the Gini
//! leaves a residual under either.
//!
//!     cargo run --example general_decomposition

use ineq_simplex::{decompose_general, IncomeVector, MeasureId, Partition, Scheme};

fn main() -> Result<(), ineq_simplex::Error> {
    let incomes = IncomeVector::new(vec![12.0, 30.0, 7.0, 55.0, 21.0, 9.0, 40.0])?;
    // Group label per person.
    let parts = Partition::from_labels(&[0, 1, 0, 2, 1, 0, 2])?;
    println!("incomes {:?}", incomes.values());
    println!("groups  {:?}\n", parts.groups());
    println!("{:6} {:6} {:>10} {:>10} {:>10} {:>10}", "index", "scheme", "total", "within", "between", "residual");
    for m in MeasureId::ALL {
        for s in Scheme::CLASSICAL {
            let d = decompose_general(&incomes, &parts, m, &s)?;
            println!(
                "{:6} {:6} {:>10.6} {:>10.6} {:>10.6} {:>10.1e}",
                m.to_string(),
                s.key(),
                d.total,
                d.within_sum,
                d.between,
                d.residual
            );
        }
    }
    Ok(())
}
