//! One PASS/FAIL line per acceptance criterion; exits non-zero on any FAIL.

use std::process::Command;

use ineq_simplex::decomp::{theil_within_kl, Part};
use ineq_simplex::diagnostics::{check_ray_invariance_in, check_smoothed_profile, expected_pass, full_report, majorizes, RayRegion};
use ineq_simplex::measures::{index3, kl_divergence, pair_index};
use ineq_simplex::render::{
    component_figure, contour_lines, distance_to_ray, distance_to_slice, panel_file_name, DEFAULT_FIGURE_RESOLUTION,
};
use ineq_simplex::simplex::interior_grid;
use ineq_simplex::zerosets::{cv_dcp_zero_curve, mld_dci_zero_curves, theil_dcp_zero_solve};
use ineq_simplex::{
    closed_form, component_value, decompose_general, CheckConfig, ComponentSpec, GridSpec, IncomeVector, MeasureId, Partition, Scheme,
    SharePoint3,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform on the simplex, every share at least 1e-4.
fn random_interior(r: &mut ChaCha8Rng) -> SharePoint3 {
    loop {
        let e: Vec<f64> = (0..3).map(|_| -r.gen::<f64>().ln()).collect();
        let z = SharePoint3::from_incomes(e[0], e[1], e[2]).unwrap();
        if z.as_array().iter().all(|&v| v >= 1e-4) {
            return z;
        }
    }
}

fn ensure(ok: bool, msg: String) -> Outcome {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn exact_decomposability() -> Outcome {
    let grid = interior_grid(&GridSpec::new(200, 1e-4).unwrap());
    let mut worst: f64 = 0.0;
    for (m, w) in [(MeasureId::Mld, None), (MeasureId::Theil, Some(()))] {
        for p in &grid {
            let z = &p.z;
            let weight = if w.is_some() { z.pair_total() } else { 2.0 / 3.0 };
            let within = weight * pair_index(m, z.z1 / z.pair_total()).unwrap();
            let r = index3(m, z).unwrap() - within - index3(m, &z.smoothed()).unwrap();
            worst = worst.max(r.abs());
        }
    }
    let mut r = rng(1);
    let mut worst_general: f64 = 0.0;
    for _ in 0..100 {
        let n = r.gen_range(4..=8);
        let y: Vec<f64> = (0..n).map(|_| r.gen_range(0.01..100.0)).collect();
        let k = r.gen_range(1..=n);
        let mut labels: Vec<usize> = (0..n).map(|i| if i < k { i } else { r.gen_range(0..k) }).collect();
        labels.rotate_left(r.gen_range(0..n));
        let parts = Partition::from_labels(&labels).unwrap();
        let v = IncomeVector::new(y).unwrap();
        for (m, s) in [(MeasureId::Mld, Scheme::Population), (MeasureId::Theil, Scheme::Income)] {
            worst_general = worst_general.max(decompose_general(&v, &parts, m, &s).unwrap().residual.abs());
        }
    }
    ensure(
        worst < 1e-10 && worst_general < 1e-10,
        format!("grid residual {worst:.1e} over {} points, general residual {worst_general:.1e} over 100 partitions", grid.len()),
    )
}

fn expectation_matrix() -> Outcome {
    let cfg = CheckConfig::default();
    let reports = full_report(&MeasureId::ALL, &[Scheme::Population, Scheme::Income], &cfg).map_err(|e| e.to_string())?;
    let mut cells = 0;
    let mut bad = Vec::new();
    for r in &reports {
        let scheme = if r.scheme == "dcp" { Scheme::Population } else { Scheme::Income };
        for v in &r.properties {
            cells += 1;
            if expected_pass(r.measure, &scheme, v.property) != Some(v.passed) {
                bad.push(format!("{}/{} {}", r.measure, r.scheme, v.property));
            }
        }
    }
    let restricted = check_ray_invariance_in(&ComponentSpec::within(MeasureId::Gini, Scheme::Income), &cfg, RayRegion::NoOverlap)
        .map_err(|e| e.to_string())?;
    ensure(
        cells == 64 && bad.is_empty() && restricted.passed,
        format!("{cells} cells, mismatches {bad:?}, gini/dci restricted 1A passed={}", restricted.passed),
    )
}

fn point_values() -> Outcome {
    let g = ComponentSpec::between(MeasureId::Gini, Scheme::Population);
    let a = component_value(&g, &SharePoint3::new(0.5, 0.0, 0.5).unwrap()).unwrap();
    let b = component_value(&g, &SharePoint3::new(0.0, 0.5, 0.5).unwrap()).unwrap();
    let (t, _) = theil_dcp_zero_solve(0.5).unwrap();
    let cv =
        component_value(&ComponentSpec::between(MeasureId::Cv, Scheme::Population), &SharePoint3::new(0.0, 0.5, 0.5).unwrap()).unwrap();
    let cv_oracle = 3f64.sqrt() / 2.0 - 2.0 * 2f64.sqrt() / 3.0;
    ensure(
        a.abs() < 1e-12 && b.abs() < 1e-12 && (t - 0.05340609).abs() < 1e-6 && cv < 0.0 && (cv - cv_oracle).abs() < 1e-12,
        format!("gini between {a:.1e}/{b:.1e}, theil root {t:.8}, cv between {cv:.15}"),
    )
}

fn closed_forms() -> Outcome {
    let mut r = rng(4);
    let points: Vec<SharePoint3> = (0..1000).map(|_| random_interior(&mut r)).collect();
    let specs = ComponentSpec::classical();
    let mut worst: f64 = 0.0;
    for s in &specs {
        for z in &points {
            worst = worst.max((closed_form(s, z).unwrap() - component_value(s, z).unwrap()).abs());
        }
    }
    ensure(specs.len() == 16 && worst < 1e-10, format!("{} combinations, max difference {worst:.1e}", specs.len()))
}

fn zero_curves() -> Outcome {
    let cv = cv_dcp_zero_curve(500).map_err(|e| e.to_string())?;
    let cv_res = cv.iter().map(|c| c.max_residual()).fold(0.0, f64::max);
    let mld = mld_dci_zero_curves(500).map_err(|e| e.to_string())?;
    let mld_res = mld.branches.iter().map(|c| c.max_residual()).fold(0.0, f64::max);
    let centroid = SharePoint3::new(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0).unwrap();
    let [plus, minus] = &mld.branches;
    let ends = [
        plus.points[0].distance(&SharePoint3::new(1.0, 0.0, 0.0).unwrap()),
        minus.points[0].distance(&SharePoint3::new(0.0, 1.0, 0.0).unwrap()),
        plus.points.last().unwrap().distance(&centroid),
        minus.points.last().unwrap().distance(&centroid),
    ];
    let end = ends.iter().copied().fold(0.0, f64::max);
    ensure(
        cv_res < 1e-8 && mld_res < 1e-8 && end < 1e-6,
        format!("cv residual {cv_res:.1e}, mld residual {mld_res:.1e}, endpoint error {end:.1e}"),
    )
}

fn bounds() -> Outcome {
    let g1 = ComponentSpec::within(MeasureId::Gini, Scheme::Population);
    let g2 = ComponentSpec::between(MeasureId::Gini, Scheme::Income);
    let cv2 = ComponentSpec::between(MeasureId::Cv, Scheme::Income);
    let th1 = ComponentSpec::within(MeasureId::Theil, Scheme::Income);
    let c = 1.5 - 2f64.sqrt();
    let mut r = rng(6);
    let mut slack = [f64::INFINITY; 3];
    let mut kl: f64 = 0.0;
    for _ in 0..1000 {
        let z = random_interior(&mut r);
        let d = (z.z1 - z.z2).abs();
        slack[0] = slack[0].min(3.0 * component_value(&g1, &z).unwrap() - d);
        slack[1] = slack[1].min(component_value(&g2, &z).unwrap() - d / 6.0);
        slack[2] = slack[2].min(component_value(&cv2, &z).unwrap() - c * d);
        let t = z.z1 / z.pair_total();
        let v = component_value(&th1, &z).unwrap();
        kl = kl.max((v - kl_divergence(&[t, 1.0 - t], &[0.5, 0.5])).abs());
        kl = kl.max((v * z.pair_total() - theil_within_kl(&z).unwrap()).abs());
    }
    ensure(
        slack.iter().all(|&s| s >= -1e-15) && kl < 1e-12,
        format!("min slack gini-within {:.1e}, gini-between {:.1e}, cv-between {:.1e}; kl error {kl:.1e}", slack[0], slack[1], slack[2]),
    )
}

fn schur() -> Outcome {
    let mut r = rng(7);
    let mut pairs = 0;
    let mut failures = Vec::new();
    for m in MeasureId::ALL {
        let mut made = 0;
        while made < 200 {
            let b = random_interior(&mut r).as_array();
            let (i, j) = (r.gen_range(0..3), r.gen_range(0..3));
            // Regressive: take from the poorer, give to the richer.
            if i == j || b[i] < b[j] || b[j] < 2e-3 {
                continue;
            }
            let mut a = b;
            let amount = r.gen_range(1e-3..b[j]);
            a[j] -= amount;
            a[i] += amount;
            made += 1;
            let (ia, ib) = (
                index3(m, &SharePoint3::new(a[0], a[1], a[2]).unwrap()).unwrap(),
                index3(m, &SharePoint3::new(b[0], b[1], b[2]).unwrap()).unwrap(),
            );
            if !(majorizes(&a, &b) && ia > ib) {
                failures.push(format!("{m} {a:?} vs {b:?}"));
            }
        }
        pairs += made;
    }
    // Strict monotonicity of the smoothed profile on each side of 1/3.
    let eps = 1e-4;
    let mut profile_bad = Vec::new();
    for m in MeasureId::ALL {
        let at = |z3: f64| index3(m, &SharePoint3::new((1.0 - z3) / 2.0, (1.0 - z3) / 2.0, z3).unwrap()).unwrap();
        let left: Vec<f64> = (0..=400).map(|k| eps + (1.0 / 3.0 - 1e-3 - eps) * k as f64 / 400.0).map(at).collect();
        let right: Vec<f64> = (0..=400).map(|k| 1.0 / 3.0 + 1e-3 + (1.0 - eps - 1.0 / 3.0 - 1e-3) * k as f64 / 400.0).map(at).collect();
        let grid_check = check_smoothed_profile(m, &CheckConfig::default()).map(|v| v.passed).unwrap_or(false);
        if !(left.windows(2).all(|w| w[1] < w[0]) && right.windows(2).all(|w| w[1] > w[0]) && grid_check) {
            profile_bad.push(m.to_string());
        }
    }
    ensure(
        failures.is_empty() && profile_bad.is_empty(),
        format!("{pairs} majorizing pairs, {} violations; profile failures {profile_bad:?}", failures.len()),
    )
}

fn render_all(dir: &std::path::Path) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_ineq-simplex"))
        .args(["figure", "--all", "--out-dir"])
        .arg(dir)
        .output()
        .map_err(|e| e.to_string())?;
    if out.status.success() {
        Ok(())
    } else {
        Err(String::from_utf8_lossy(&out.stderr).into_owned())
    }
}

fn figures() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (first, second) = (tmp.path().join("a"), tmp.path().join("b"));
    render_all(&first)?;
    render_all(&second)?;

    let specs = ComponentSpec::classical();
    let mut valid = 0;
    let mut identical = 0;
    for s in &specs {
        let name = panel_file_name(s);
        let a = std::fs::read(first.join(&name)).map_err(|e| format!("{name}: {e}"))?;
        let b = std::fs::read(second.join(&name)).map_err(|e| format!("{name}: {e}"))?;
        let text = String::from_utf8(a.clone()).map_err(|e| e.to_string())?;
        if roxmltree::Document::parse(&text).map(|d| d.root_element().tag_name().name() == "svg").unwrap_or(false) {
            valid += 1;
        }
        identical += usize::from(a == b);
    }

    let spacing = 1.0 / DEFAULT_FIGURE_RESOLUTION as f64;
    let mut worst: f64 = 0.0;
    let mut curves = 0;
    for (m, scheme) in [(MeasureId::Mld, Scheme::Population), (MeasureId::Theil, Scheme::Income)] {
        for part in [Part::Within, Part::Between] {
            let fig =
                component_figure(&ComponentSpec::new(m, scheme.clone(), part), DEFAULT_FIGURE_RESOLUTION).map_err(|e| e.to_string())?;
            let levels = fig.level_values().map_err(|e| e.to_string())?;
            for c in contour_lines(&fig.field, &levels).map_err(|e| e.to_string())? {
                let d = match part {
                    Part::Within => distance_to_ray(&c.points),
                    Part::Between => distance_to_slice(&c.points),
                };
                if let Some(d) = d {
                    worst = worst.max(d);
                    curves += 1;
                }
            }
        }
    }
    ensure(
        valid == 16 && identical == 16 && curves > 0 && worst < 2.0 * spacing,
        format!(
            "{valid}/16 valid SVG, {identical}/16 byte-identical, {curves} contours within {:.3} grid spacings of their family",
            worst / spacing
        ),
    )
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("exact decomposability", exact_decomposability),
        ("expectation matrix", expectation_matrix),
        ("point values", point_values),
        ("closed forms", closed_forms),
        ("zero curves", zero_curves),
        ("analytic bounds", bounds),
        ("schur convexity", schur),
        ("figures", figures),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let (tag, msg) = match f() {
            Ok(m) => ("PASS", m),
            Err(m) => {
                failed += 1;
                ("FAIL", m)
            }
        };
        println!("{tag} {} {name}: {msg} ({:.2}s)", k + 1, start.elapsed().as_secs_f64());
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
