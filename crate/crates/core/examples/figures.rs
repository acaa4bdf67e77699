//! Renders the sixteen classical panels plus a figure of an arbitrary field.
//!
//!     cargo run --release --example figures -- [out_dir]

use std::path::PathBuf;

use ineq_simplex::render::{component_figure, contour_lines, distance_to_ray, panel_file_name, render_figure, FigureSpec, Levels, Overlay};
use ineq_simplex::simplex::curve_points;
use ineq_simplex::{ComponentSpec, GridSpec, MeasureId, ScalarField, Scheme};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figures".into()));
    std::fs::create_dir_all(&dir)?;

    for spec in ComponentSpec::classical() {
        let fig = component_figure(&spec, 80)?;
        let path = dir.join(panel_file_name(&spec));
        render_figure(&fig, &path)?;
        println!("{}", path.display());
    }

    // Level curves of an exactly ray-invariant component sit on rays.
    let fig = component_figure(&ComponentSpec::within(MeasureId::Mld, Scheme::Population), 200)?;
    let worst = contour_lines(&fig.field, &fig.level_values()?)?.iter().filter_map(|c| distance_to_ray(&c.points)).fold(0.0, f64::max);
    println!("MLD within: contours within {:.2} grid spacings of rays", worst * 200.0);

    // Any function of the shares can be drawn the same way.
    let field = ScalarField::sample(GridSpec::new(60, 1e-4)?, |z| Some(z.z1 * z.z2 * z.z3));
    let mut custom = FigureSpec::new("z1 z2 z3", field);
    custom.levels = Levels::Explicit(vec![0.005, 0.01, 0.02, 0.03]);
    custom.overlays.push(Overlay::highlight("z2 = z1", curve_points(1.0, 100, 1e-4)?));
    render_figure(&custom, &dir.join("product.svg"))?;
    Ok(())
}
