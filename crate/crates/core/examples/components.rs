//! Within and between components of every classical (index, weighting) pair
//! at a few points, from the indices and from the closed forms.
//!
//!     cargo run --example components

use ineq_simplex::measures::index3;
use ineq_simplex::{closed_form, component_value, Component, ComponentSpec, SharePoint3};

fn main() -> Result<(), ineq_simplex::Error> {
    let points = [SharePoint3::new(0.2, 0.3, 0.5)?, SharePoint3::new(0.5, 0.25, 0.25)?, SharePoint3::new(0.1, 0.6, 0.3)?];
    for z in &points {
        println!("z = {z}");
        for spec in ComponentSpec::classical() {
            let generic = component_value(&spec, z)?;
            let closed = closed_form(&spec, z)?;
            println!("  {:22} {:>12.8}   closed form differs by {:.1e}", spec.label(), generic, (generic - closed).abs());
        }
        println!();
    }

    // Incomes (3, 7, 5): the pair's mean equals the singleton's income, so
    // the smoothed point is the centroid and I(z̄) = 0. The between term
    // vanishes only for some index/weighting pairs.
    let z = SharePoint3::from_incomes(3.0, 7.0, 5.0)?;
    for m in ineq_simplex::MeasureId::ALL {
        let dcp = ComponentSpec::between(m, ineq_simplex::Scheme::Population);
        let dci = ComponentSpec::between(m, ineq_simplex::Scheme::Income);
        println!(
            "{m:5} between: dcp {:+.6}  dci {:+.6}  I(z̄) {:.1e}",
            component_value(&dcp, &z)?,
            component_value(&dci, &z)?,
            index3(m, &z.smoothed())?
        );
    }
    Ok(())
}
