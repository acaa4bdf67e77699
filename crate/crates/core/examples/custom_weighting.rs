//! Components under a caller-supplied pair weight, and a Gini decomposition
//! whose within term depends on the pair's absolute gap, run through the same
//! property checks as the classical schemes.
//!
//!     cargo run --release --example custom_weighting

use ineq_simplex::decomp::Part;
use ineq_simplex::diagnostics::{check_all, CheckConfig};
use ineq_simplex::{component_value, hs_gini_components, ComponentSpec, HsGini, MeasureId, Scheme, SharePoint3, Weighting};

fn main() -> Result<(), ineq_simplex::Error> {
    // Square-root of the pair's income share as the subgroup weight.
    let sqrt_share = Scheme::Custom(Weighting::new("sqrt-share", |z1, z2| (z1 + z2).sqrt()));
    let z = SharePoint3::new(0.2, 0.3, 0.5)?;
    for m in MeasureId::ALL {
        let w = component_value(&ComponentSpec::within(m, sqrt_share.clone()), &z)?;
        let b = component_value(&ComponentSpec::between(m, sqrt_share.clone()), &z)?;
        println!("{m:5} within {w:.6}  between {b:+.6}");
    }

    let (w, b) = hs_gini_components(&SharePoint3::new(1.0 / 13.0, 2.0 / 13.0, 10.0 / 13.0)?);
    println!("\ngap-based Gini at incomes (1, 2, 10): within {w:.6}, between {b:.6}");

    let cfg = CheckConfig::default();
    println!("\nproperties of the gap-based Gini:");
    for v in check_all(&HsGini(Part::Within), &HsGini(Part::Between), &cfg)? {
        println!("  {} {:4}  max violation {:.2e}", v.property, if v.passed { "pass" } else { "fail" }, v.max_violation);
    }

    let cw = ComponentSpec::within(MeasureId::Theil, sqrt_share.clone());
    let cb = ComponentSpec::between(MeasureId::Theil, sqrt_share);
    println!("\nproperties of Theil with sqrt-share weights:");
    for v in check_all(&cw, &cb, &cfg)? {
        println!("  {} {:4}  max violation {:.2e}", v.property, if v.passed { "pass" } else { "fail" }, v.max_violation);
    }
    Ok(())
}
