//! Zero sets of between components away from the equal-means slice.
//!
//! Three families are constructed explicitly:
//!
//! * CV, population-share weighting: two branches parametrized by the pair
//!   total `s = z1 + z2 ∈ [(9-√5)/18, (9+√5)/18]`, with
//!   `z1 - z2 = ±sqrt(243 s² (s - 2/3)² / (32 - 81 s²))`.
//! * Theil, population-share weighting: for `z3 ∈ (1/3, 2/3)` the pair split
//!   `t = z1 / s` solves `t ln t + (1-t) ln(1-t) = -A(s) / (s - 2/3)` with
//!   `A(s) = ln 3 - (2/3) ln 2 + s ln s + (1-s) ln(1-s)`.
//! * MLD, income-share weighting: for `z3 ∈ (0, 1/3)` the pair product
//!   `z1 z2 = p(z3)` is known in closed form.

use std::f64::consts::LN_2;
use std::io::Write;

use serde::Serialize;

use crate::decomp::{Component, ComponentSpec, Scheme};
use crate::error::{Error, Result};
use crate::measures::{MeasureId, SharePoint3};

/// Neighbourhood of `s = 2/3` excluded from the CV family.
pub const CV_EXCLUSION: f64 = 1e-6;

/// Bisection stops once the bracket on `t` is narrower than this.
pub const BISECTION_TOL: f64 = 1e-12;
pub const BISECTION_MAX_ITER: usize = 200;

#[derive(Debug, Clone, Serialize)]
pub struct ZeroCurve {
    pub label: String,
    pub parameter: String,
    pub range: (f64, f64),
    pub params: Vec<f64>,
    pub points: Vec<SharePoint3>,
    /// `|component|` at each point.
    pub residuals: Vec<f64>,
}

impl ZeroCurve {
    fn build(label: String, parameter: &str, samples: Vec<(f64, SharePoint3)>, component: &dyn Component) -> Result<Self> {
        let range = match (samples.first(), samples.last()) {
            (Some(a), Some(b)) => (a.0, b.0),
            _ => return Err(Error::InvalidArgument(format!("{label}: no samples"))),
        };
        let mut params = Vec::with_capacity(samples.len());
        let mut points = Vec::with_capacity(samples.len());
        let mut residuals = Vec::with_capacity(samples.len());
        for (param, z) in samples {
            residuals.push(component.evaluate(&z)?.abs());
            params.push(param);
            points.push(z);
        }
        Ok(ZeroCurve { label, parameter: parameter.to_string(), range, params, points, residuals })
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// CSV with columns `param,z1,z2,z3,residual`; curves are written one after
/// another.
pub fn write_curves_csv<W: Write>(curves: &[ZeroCurve], mut w: W) -> Result<()> {
    writeln!(w, "param,z1,z2,z3,residual")?;
    for curve in curves {
        for ((p, z), r) in curve.params.iter().zip(&curve.points).zip(&curve.residuals) {
            writeln!(w, "{},{},{},{},{}", p, z.z1, z.z2, z.z3, r)?;
        }
    }
    Ok(())
}

fn check_samples(samples: usize) -> Result<()> {
    if samples < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 samples, got {samples}")));
    }
    Ok(())
}

fn point(z1: f64, z2: f64, z3: f64) -> Result<SharePoint3> {
    // Snap roundoff-level negatives produced at branch endpoints.
    let snap = |v: f64| if v < 0.0 && v > -1e-12 { 0.0 } else { v };
    SharePoint3::new(snap(z1), snap(z2), z3)
}

/// Both branches of the CV zero set under population-share weighting.
pub fn cv_dcp_zero_curve(samples: usize) -> Result<[ZeroCurve; 2]> {
    check_samples(samples)?;
    let sqrt5 = 5f64.sqrt();
    let lo = (9.0 - sqrt5) / 18.0;
    let hi = (9.0 + sqrt5) / 18.0;
    let spec = ComponentSpec::between(MeasureId::Cv, Scheme::Population);
    let step = (hi - lo) / (samples - 1) as f64;
    let params: Vec<f64> = (0..samples)
        .map(|k| if k + 1 == samples { hi } else { lo + step * k as f64 })
        .filter(|s| (s - 2.0 / 3.0).abs() > CV_EXCLUSION)
        .collect();

    let branch = |sign: f64, label: &str| -> Result<ZeroCurve> {
        let mut pts = Vec::with_capacity(params.len());
        for &s in &params {
            let gap_sq = 243.0 * s * s * (s - 2.0 / 3.0).powi(2) / (32.0 - 81.0 * s * s);
            // At the interval ends the gap equals s up to roundoff.
            let gap = gap_sq.sqrt().min(s);
            let z1 = 0.5 * s + sign * 0.5 * gap;
            let z2 = s - z1;
            pts.push((s, point(z1, z2, 1.0 - s)?));
        }
        ZeroCurve::build(label.to_string(), "s", pts, &spec)
    };
    Ok([branch(1.0, "cv-dcp+")?, branch(-1.0, "cv-dcp-")?])
}

/// `A(s) = ln 3 - (2/3) ln 2 + s ln s + (1-s) ln(1-s)`.
pub fn theil_offset(s: f64) -> f64 {
    3f64.ln() - 2.0 / 3.0 * LN_2 + xlnx(s) + xlnx(1.0 - s)
}

fn xlnx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// `t ln t + (1-t) ln(1-t)`; strictly decreasing from `0` to `-ln 2` on `[0, 1/2]`.
pub fn neg_binary_entropy(t: f64) -> f64 {
    xlnx(t) + xlnx(1.0 - t)
}

/// Pair split `(z1, z2)` with `z1 ≤ z2` at which the Theil between component
/// under population-share weighting vanishes on the slice `z3`.
pub fn theil_dcp_zero_solve(z3: f64) -> Result<(f64, f64)> {
    if !(z3 > 1.0 / 3.0 && z3 < 2.0 / 3.0) {
        return Err(Error::InvalidArgument(format!("z3 = {z3} outside (1/3, 2/3)")));
    }
    let s = 1.0 - z3;
    let target = -theil_offset(s) / (s - 2.0 / 3.0);
    if !(-LN_2..=0.0).contains(&target) {
        return Err(Error::NoRoot(format!("entropy target {target} outside [-ln 2, 0] at z3 = {z3}")));
    }
    let f = |t: f64| neg_binary_entropy(t) - target;
    let (mut lo, mut hi) = (0.0, 0.5);
    let (f_lo, f_hi) = (f(lo), f(hi));
    if f_lo * f_hi > 0.0 {
        return Err(Error::NoRoot(format!("bracket [0, 1/2] does not change sign at z3 = {z3}")));
    }
    let mut iter = 0;
    while hi - lo > BISECTION_TOL && iter < BISECTION_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iter += 1;
    }
    let t = 0.5 * (lo + hi);
    Ok((t * s, (1.0 - t) * s))
}

/// Both branches of the Theil zero set under population-share weighting, for
/// `z3` from just above `1/3` to `2/3`, where the branches end at
/// `(1/3, 0, 2/3)` and `(0, 1/3, 2/3)`.
pub fn theil_dcp_zero_curve(samples: usize) -> Result<[ZeroCurve; 2]> {
    check_samples(samples)?;
    let lo = 1.0 / 3.0 + 1e-6;
    let hi = 2.0 / 3.0 - 1e-9;
    let spec = ComponentSpec::between(MeasureId::Theil, Scheme::Population);
    let step = (hi - lo) / (samples - 1) as f64;
    let mut low = Vec::with_capacity(samples);
    let mut high = Vec::with_capacity(samples);
    for k in 0..samples {
        let z3 = if k + 1 == samples { hi } else { lo + step * k as f64 };
        let (a, b) = theil_dcp_zero_solve(z3)?;
        low.push((z3, point(a, b, z3)?));
        high.push((z3, point(b, a, z3)?));
    }
    Ok([ZeroCurve::build("theil-dcp+".into(), "z3", high, &spec)?, ZeroCurve::build("theil-dcp-".into(), "z3", low, &spec)?])
}

/// Pair product `z1 z2` on the MLD zero curves, written as
/// `(4^{3(1-z3)/2} (1-z3)^{-3(1-z3)} / (27 z3))^{2/(3 z3 - 1)}`.
///
/// Evaluated literally; loses precision as `z3 → 1/3`, where the base tends to
/// one and the exponent diverges. [`mld_dci_zero_curves`] uses an equivalent
/// cancellation-free form.
pub fn mld_dci_pair_product(z3: f64) -> f64 {
    let s = 1.0 - z3;
    let ln_base = 1.5 * s * 4f64.ln() - 3.0 * s * s.ln() - (27.0 * z3).ln();
    (ln_base * 2.0 / (3.0 * z3 - 1.0)).exp()
}

/// `(z1, z2)` with `z1 ≥ z2` on the MLD zero curve at height `z3 ∈ (0, 1/3)`,
/// or `None` where the discriminant is negative or the point underflows.
///
/// With `u = 1/3 - z3` and `s = 1 - z3`, `ln(4 z1 z2 / s²) = 2 ln(1 - (27/4) u² (1+u)) / (3u)`,
/// which avoids the `1^∞` form of [`mld_dci_pair_product`].
fn mld_dci_pair(z3: f64) -> Option<(f64, f64)> {
    let u = 1.0 / 3.0 - z3;
    if !(u > 0.0 && z3 > 0.0) {
        return None;
    }
    let s = 1.0 - z3;
    // 1 - (27/4) u² (1+u) = (27/4) z3 (1-z3)²; the factored form is exact
    // near the vertices, the ln_1p form near the merge point.
    let log_gap = if z3 < 0.1 { (6.75 * z3).ln() + 2.0 * (-z3).ln_1p() } else { (-(27.0 / 4.0) * u * u * (1.0 + u)).ln_1p() };
    let w = 2.0 * log_gap / (3.0 * u);
    let disc = -s * s * w.exp_m1();
    if disc.is_nan() || disc < 0.0 {
        return None;
    }
    let product = 0.25 * s * s * w.exp();
    let z1 = 0.5 * (s + disc.sqrt());
    let z2 = product / z1;
    (z2 > 0.0 && z2.is_finite()).then_some((z1, z2))
}

#[derive(Debug, Clone, Serialize)]
pub struct MldZeroCurves {
    pub branches: [ZeroCurve; 2],
    /// Smallest scanned `z3` at which the discriminant is non-negative and the
    /// point is representable.
    pub z3_min: f64,
}

/// Smallest height kept on the MLD curves' upper end, `1/3 - z3`.
pub const MLD_MERGE_GAP: f64 = 1e-14;

/// Both MLD zero curves under income-share weighting.
///
/// The lower end of the `z3` sweep is found by scanning a logarithmic ladder
/// of heights; samples are clustered towards both ends so that the curves
/// reach `(1, 0, 0)`/`(0, 1, 0)` and the merge point `(1/3, 1/3, 1/3)`.
pub fn mld_dci_zero_curves(samples: usize) -> Result<MldZeroCurves> {
    check_samples(samples)?;
    let z3_min = (0..=48)
        .map(|k| 10f64.powf(-12.0 + 0.25 * k as f64))
        .take_while(|&z3| z3 < 1.0 / 3.0)
        .find(|&z3| mld_dci_pair(z3).is_some())
        .ok_or_else(|| Error::NoRoot("MLD zero curve discriminant is negative on the whole scan".into()))?;
    let z3_max = 1.0 / 3.0 - MLD_MERGE_GAP;

    let spec = ComponentSpec::between(MeasureId::Mld, Scheme::Income);
    let mut plus = Vec::with_capacity(samples);
    let mut minus = Vec::with_capacity(samples);
    for k in 0..samples {
        let tau = k as f64 / (samples - 1) as f64;
        let w = 0.5 * (1.0 - (std::f64::consts::PI * tau).cos());
        let z3 = match k {
            0 => z3_min,
            _ if k + 1 == samples => z3_max,
            _ => z3_min + (z3_max - z3_min) * w,
        };
        let (a, b) = mld_dci_pair(z3).ok_or_else(|| Error::NoRoot(format!("negative discriminant inside the sweep at z3 = {z3}")))?;
        plus.push((z3, point(a, b, z3)?));
        minus.push((z3, point(b, a, z3)?));
    }
    Ok(MldZeroCurves {
        branches: [ZeroCurve::build("mld-dci+".into(), "z3", plus, &spec)?, ZeroCurve::build("mld-dci-".into(), "z3", minus, &spec)?],
        z3_min,
    })
}

/// Largest `|component|` along `curve`; errors when it exceeds `tol`.
pub fn verify_zero_curve(component: &dyn Component, curve: &ZeroCurve, tol: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for z in &curve.points {
        worst = worst.max(component.evaluate(z)?.abs());
    }
    if worst > tol {
        return Err(Error::ToleranceExceeded { value: worst, tol });
    }
    Ok(worst)
}
