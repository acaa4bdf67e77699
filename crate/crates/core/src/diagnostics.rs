//! Quantitative checks of the eight geometric properties.
//!
//! Within components (1A–1D) should depend on the pair split `t = z1/(z1+z2)`
//! only, grow with `|z1 - z2|`, be non-negative and vanish exactly on
//! `z1 = z2`. Between components (2A–2D) should depend on `z3` only, fall then
//! rise through the equal-means slice `z3 = 1/3`, be non-negative and vanish
//! exactly on that slice.
//!
//! Each check returns a [`PropertyVerdict`] with the largest violation found
//! and up to [`MAX_WITNESSES`] offending points.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::decomp::{Component, ComponentSpec, Part, Scheme};
use crate::error::{Error, Result};
use crate::measures::{index3, MeasureId, SharePoint3};
use crate::simplex::{curve_points, full_lattice, ray_points, slice_points, GridSpec, LatticePoint, ScalarField};

pub const MAX_WITNESSES: usize = 10;

/// Pair splits of the reference rays.
pub const RAY_RATIOS: [f64; 19] =
    [0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45, 0.50, 0.55, 0.60, 0.65, 0.70, 0.75, 0.80, 0.85, 0.90, 0.95];

/// Heights of the reference slices.
pub const SLICE_HEIGHTS: [f64; 18] =
    [0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45, 0.50, 0.55, 0.60, 0.65, 0.70, 0.75, 0.80, 0.85, 0.90];

/// Slopes `k` of the curves `z2 = k z1` used for (2B).
pub const CURVE_SLOPES: [f64; 3] = [0.2, 1.0, 5.0];

/// Zero-locus band half-width, in grid spacings.
pub const LOCUS_BAND: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropertyId {
    P1A,
    P1B,
    P1C,
    P1D,
    P2A,
    P2B,
    P2C,
    P2D,
}

impl PropertyId {
    pub const ALL: [PropertyId; 8] = [
        PropertyId::P1A,
        PropertyId::P1B,
        PropertyId::P1C,
        PropertyId::P1D,
        PropertyId::P2A,
        PropertyId::P2B,
        PropertyId::P2C,
        PropertyId::P2D,
    ];

    pub fn code(self) -> &'static str {
        match self {
            PropertyId::P1A => "1A",
            PropertyId::P1B => "1B",
            PropertyId::P1C => "1C",
            PropertyId::P1D => "1D",
            PropertyId::P2A => "2A",
            PropertyId::P2B => "2B",
            PropertyId::P2C => "2C",
            PropertyId::P2D => "2D",
        }
    }

    /// The component the property constrains.
    pub fn part(self) -> Part {
        match self {
            PropertyId::P1A | PropertyId::P1B | PropertyId::P1C | PropertyId::P1D => Part::Within,
            _ => Part::Between,
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for PropertyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().trim_start_matches(['P', 'p']).to_ascii_uppercase();
        PropertyId::ALL.into_iter().find(|p| p.code() == key).ok_or_else(|| Error::InvalidArgument(format!("unknown property '{s}'")))
    }
}

impl Serialize for PropertyId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.code())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckConfig {
    pub grid: GridSpec,
    pub pass_tol: f64,
    pub zero_tol: f64,
    pub ray_samples: usize,
    pub slice_samples: usize,
    pub curve_samples: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { grid: GridSpec::default(), pass_tol: 1e-8, zero_tol: 1e-8, ray_samples: 401, slice_samples: 401, curve_samples: 401 }
    }
}

impl CheckConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("pass_tol", self.pass_tol), ("zero_tol", self.zero_tol)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")));
            }
        }
        for (name, n) in [("ray", self.ray_samples), ("slice", self.slice_samples), ("curve", self.curve_samples)] {
            if n < 2 {
                return Err(Error::InvalidArgument(format!("{name} sample count must be at least 2, got {n}")));
            }
        }
        Ok(())
    }

    fn band(&self) -> f64 {
        LOCUS_BAND * self.grid.spacing()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub z: SharePoint3,
    pub value: f64,
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Witness", 2)?;
        st.serialize_field("z", &self.z.as_array())?;
        st.serialize_field("value", &self.value)?;
        st.end()
    }
}

/// Violations of the two halves of (1D)/(2D): non-zero values on the locus,
/// and zeros away from it (measured as their distance from the locus).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroSides {
    pub on_locus: f64,
    pub off_locus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyVerdict {
    #[serde(rename = "id")]
    pub property: PropertyId,
    #[serde(skip)]
    pub subject: String,
    pub passed: bool,
    pub max_violation: f64,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sides: Option<ZeroSides>,
}

/// Keeps the worst offenders, ties broken by discovery order.
#[derive(Default)]
struct Offenders {
    items: Vec<(f64, Witness)>,
    worst: f64,
}

impl Offenders {
    fn record(&mut self, violation: f64, z: SharePoint3, value: f64) {
        if violation > self.worst {
            self.worst = violation;
        }
        if violation > 0.0 {
            self.items.push((violation, Witness { z, value }));
        }
    }

    fn verdict(mut self, property: PropertyId, subject: String, cfg: &CheckConfig) -> PropertyVerdict {
        let passed = self.worst <= cfg.pass_tol;
        // Stable sort keeps discovery order among equal violations.
        self.items.sort_by(|a, b| b.0.total_cmp(&a.0));
        let witnesses = if passed { Vec::new() } else { self.items.into_iter().take(MAX_WITNESSES).map(|(_, w)| w).collect() };
        PropertyVerdict { property, subject, passed, max_violation: self.worst, witnesses, sides: None }
    }
}

fn require(component: &dyn Component, part: Part) -> Result<()> {
    if component.part() != part {
        return Err(Error::InvalidArgument(format!("{} is not a {} component", component.label(), part)));
    }
    Ok(())
}

fn eval(component: &dyn Component, z: &SharePoint3) -> Option<f64> {
    component.evaluate(z).ok().filter(|v| v.is_finite())
}

fn sample_grid(component: &dyn Component, grid: GridSpec) -> ScalarField {
    ScalarField::sample(grid, |z| eval(component, z))
}

/// Records `max - min` along one family member; witnesses are the extremes.
fn spread(points: &[SharePoint3], component: &dyn Component, out: &mut Offenders) {
    let mut lo: Option<(f64, SharePoint3)> = None;
    let mut hi: Option<(f64, SharePoint3)> = None;
    for z in points {
        let Some(v) = eval(component, z) else { continue };
        if lo.is_none_or(|(l, _)| v < l) {
            lo = Some((v, *z));
        }
        if hi.is_none_or(|(h, _)| v > h) {
            hi = Some((v, *z));
        }
    }
    if let (Some((l, zl)), Some((h, zh))) = (lo, hi) {
        out.record(h - l, zh, h);
        out.record(h - l, zl, l);
    }
}

/// Which part of each ray [`check_ray_invariance_in`] looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RayRegion {
    Everywhere,
    /// Only points where `z3` does not lie strictly between `z1` and `z2`.
    NoOverlap,
}

/// (1A): the within component is constant along rays of constant `t`.
pub fn check_ray_invariance(component: &dyn Component, cfg: &CheckConfig) -> Result<PropertyVerdict> {
    check_ray_invariance_in(component, cfg, RayRegion::Everywhere)
}

pub fn check_ray_invariance_in(component: &dyn Component, cfg: &CheckConfig, region: RayRegion) -> Result<PropertyVerdict> {
    require(component, Part::Within)?;
    let mut out = Offenders::default();
    for t in RAY_RATIOS {
        let mut pts = ray_points(t, cfg.ray_samples, cfg.grid.margin)?;
        if region == RayRegion::NoOverlap {
            pts.retain(|z| !z.rank_overlap());
        }
        spread(&pts, component, &mut out);
    }
    Ok(out.verdict(PropertyId::P1A, component.label(), cfg))
}

/// (1B): along each lattice row, values never decrease moving away from `z1 = z2`.
pub fn check_within_monotone(component: &dyn Component, cfg: &CheckConfig) -> Result<PropertyVerdict> {
    require(component, Part::Within)?;
    Ok(within_monotone(&sample_grid(component, cfg.grid), component, cfg))
}

fn within_monotone(field: &ScalarField, component: &dyn Component, cfg: &CheckConfig) -> PropertyVerdict {
    let mut out = Offenders::default();
    let mut start = 0;
    while start < field.points.len() {
        let c = field.points[start].c;
        let end = start + field.points[start..].iter().take_while(|p| p.c == c).count();
        let row: Vec<(&LatticePoint, Option<f64>)> =
            field.points[start..end].iter().zip(field.values[start..end].iter().copied()).collect();
        // Rows run in increasing b, i.e. from z1 > z2 to z1 < z2.
        let left: Vec<_> = row.iter().filter(|(p, _)| p.b <= p.a).rev().collect();
        let right: Vec<_> = row.iter().filter(|(p, _)| p.b >= p.a).collect();
        for side in [left, right] {
            for pair in side.windows(2) {
                if let ((_, Some(inner)), (p, Some(outer))) = (*pair[0], *pair[1]) {
                    out.record(inner - outer, p.z, outer);
                }
            }
        }
        start = end;
    }
    out.verdict(PropertyId::P1B, component.label(), cfg)
}

/// (1C)/(2C): the component is non-negative on the grid.
pub fn check_nonneg(component: &dyn Component, cfg: &CheckConfig) -> Result<PropertyVerdict> {
    Ok(nonneg(&sample_grid(component, cfg.grid), component, cfg))
}

fn nonneg(field: &ScalarField, component: &dyn Component, cfg: &CheckConfig) -> PropertyVerdict {
    let mut out = Offenders::default();
    for (p, v) in field.points.iter().zip(&field.values) {
        if let Some(v) = *v {
            out.record(-v, p.z, v);
        }
    }
    let id = match component.part() {
        Part::Within => PropertyId::P1C,
        Part::Between => PropertyId::P2C,
    };
    out.verdict(id, component.label(), cfg)
}

/// The zero locus a component should vanish on.
#[derive(Debug, Clone, Copy)]
enum Locus {
    /// `z1 = z2`
    EqualPair,
    /// `z3 = 1/3`
    EqualMeans,
}

impl Locus {
    fn distance(self, z: &SharePoint3) -> f64 {
        match self {
            Locus::EqualPair => (z.z1 - z.z2).abs(),
            Locus::EqualMeans => (z.z3 - 1.0 / 3.0).abs(),
        }
    }
}

/// Whether `v` counts as a zero away from the locus. Within components must be
/// strictly positive there, so non-positive values count too.
fn is_off_zero(part: Part, v: f64, tol: f64) -> bool {
    match part {
        Part::Within => v <= tol,
        Part::Between => v.abs() <= tol,
    }
}

fn zero_locus(
    field: &ScalarField,
    on_locus: &[SharePoint3],
    component: &dyn Component,
    cfg: &CheckConfig,
    locus: Locus,
    id: PropertyId,
) -> PropertyVerdict {
    let part = component.part();
    let band = cfg.band();
    let mut on = Offenders::default();
    for z in on_locus {
        if let Some(v) = eval(component, z) {
            on.record(v.abs(), *z, v);
        }
    }

    let mut off = Offenders::default();
    let off_band = |z: &SharePoint3| locus.distance(z) > band;
    for (p, v) in field.points.iter().zip(&field.values) {
        if let Some(v) = *v {
            if off_band(&p.z) && is_off_zero(part, v, cfg.zero_tol) {
                off.record(locus.distance(&p.z), p.z, v);
            }
        }
    }

    // A sign change between lattice neighbours brackets a zero even when no
    // grid point lands on it.
    let index: HashMap<(usize, usize), usize> = field.points.iter().enumerate().map(|(i, p)| ((p.b, p.c), i)).collect();
    for (i, p) in field.points.iter().enumerate() {
        let Some(v) = field.values[i] else { continue };
        let neighbours = [(p.b + 1, p.c), (p.b, p.c + 1), (p.b.wrapping_sub(1), p.c + 1)];
        for key in neighbours {
            let Some(&j) = index.get(&key) else { continue };
            let Some(w) = field.values[j] else { continue };
            let q = &field.points[j];
            if v * w < 0.0 && off_band(&p.z) && off_band(&q.z) {
                let (z, val) = if v.abs() <= w.abs() { (p.z, v) } else { (q.z, w) };
                off.record(locus.distance(&p.z).min(locus.distance(&q.z)), z, val);
            }
        }
    }

    boundary_zeros(component, cfg, locus, &mut off);

    let sides = ZeroSides { on_locus: on.worst, off_locus: off.worst };
    let mut merged = Offenders { worst: on.worst.max(off.worst), items: on.items };
    merged.items.extend(off.items);
    let mut verdict = merged.verdict(id, component.label(), cfg);
    verdict.sides = Some(sides);
    verdict
}

/// Zeros on the triangle's edges, which the interior grid never visits.
///
/// Each edge of the full lattice is scanned; local minima of `|value|` are
/// refined by golden-section search between their neighbours.
fn boundary_zeros(component: &dyn Component, cfg: &CheckConfig, locus: Locus, out: &mut Offenders) {
    let r = cfg.grid.resolution;
    let lattice = full_lattice(r);
    let edges: [Vec<SharePoint3>; 3] = [
        lattice.iter().filter(|p| p.c == 0).map(|p| p.z).collect(),
        lattice.iter().filter(|p| p.b == 0).map(|p| p.z).collect(),
        lattice.iter().filter(|p| p.a == 0).map(|p| p.z).collect(),
    ];
    let part = component.part();
    let band = cfg.band();
    for edge in &edges {
        let vals: Vec<Option<f64>> = edge.iter().map(|z| eval(component, z)).collect();
        for (i, z) in edge.iter().enumerate() {
            let Some(v) = vals[i] else { continue };
            if locus.distance(z) > band && is_off_zero(part, v, cfg.zero_tol) {
                out.record(locus.distance(z), *z, v);
                continue;
            }
            if i == 0 || i + 1 == edge.len() {
                continue;
            }
            let (Some(prev), Some(next)) = (vals[i - 1], vals[i + 1]) else {
                continue;
            };
            if v.abs() <= prev.abs() && v.abs() <= next.abs() {
                if let Some((zr, vr)) = golden_min(component, &edge[i - 1], &edge[i + 1]) {
                    if locus.distance(&zr) > band && is_off_zero(part, vr, cfg.zero_tol) {
                        out.record(locus.distance(&zr), zr, vr);
                    }
                }
            }
        }
    }
}

fn lerp(a: &SharePoint3, b: &SharePoint3, s: f64) -> Option<SharePoint3> {
    let z1 = (a.z1 + s * (b.z1 - a.z1)).max(0.0);
    let z2 = (a.z2 + s * (b.z2 - a.z2)).max(0.0);
    let z3 = (1.0 - z1 - z2).max(0.0);
    SharePoint3::new(z1, z2, z3).ok()
}

/// Minimizer of `|component|` on the segment `[a, b]`.
fn golden_min(component: &dyn Component, a: &SharePoint3, b: &SharePoint3) -> Option<(SharePoint3, f64)> {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let f = |s: f64| lerp(a, b, s).and_then(|z| eval(component, &z)).map(f64::abs).unwrap_or(f64::INFINITY);
    let (mut lo, mut hi) = (0.0, 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    let z = lerp(a, b, 0.5 * (lo + hi))?;
    eval(component, &z).map(|v| (z, v))
}

/// (1D): zero exactly on `z1 = z2` and positive away from it.
pub fn check_zero_within(component: &dyn Component, cfg: &CheckConfig) -> Result<PropertyVerdict> {
    require(component, Part::Within)?;
    zero_within(&sample_grid(component, cfg.grid), component, cfg)
}

fn zero_within(field: &ScalarField, component: &dyn Component, cfg: &CheckConfig) -> Result<PropertyVerdict> {
    let mut on: Vec<SharePoint3> = field.points.iter().filter(|p| p.a == p.b).map(|p| p.z).collect();
    on.extend(ray_points(0.5, cfg.ray_samples, cfg.grid.margin)?);
    Ok(zero_locus(field, &on, component, cfg, Locus::EqualPair, PropertyId::P1D))
}

/// (2A): the between component is constant along slices of constant `z3`.
pub fn check_slice_invariance(component: &dyn Component, cfg: &CheckConfig) -> Result<PropertyVerdict> {
    require(component, Part::Between)?;
    let mut out = Offenders::default();
    for z3 in SLICE_HEIGHTS {
        spread(&slice_points(z3, cfg.slice_samples, cfg.grid.margin)?, component, &mut out);
    }
    Ok(out.verdict(PropertyId::P2A, component.label(), cfg))
}

/// Wrong-direction steps of `values` along points ordered by increasing `z3`:
/// non-increasing is required below `1/3`, non-decreasing above. Steps that
/// straddle `1/3` are skipped.
fn unimodal_steps(points: &[SharePoint3], values: &[Option<f64>], out: &mut Offenders) {
    let third = 1.0 / 3.0;
    for i in 1..points.len() {
        let (p, q) = (&points[i - 1], &points[i]);
        let (Some(vp), Some(vq)) = (values[i - 1], values[i]) else {
            continue;
        };
        if q.z3 <= third {
            out.record(vq - vp, *q, vq);
        } else if p.z3 >= third {
            out.record(vp - vq, *q, vq);
        }
    }
}

/// (2B): along the curves `z2 = k z1`, the between component falls until the
/// equal-means slice and rises after it.
pub fn check_between_unimodal(component: &dyn Component, slopes: &[f64], cfg: &CheckConfig) -> Result<PropertyVerdict> {
    require(component, Part::Between)?;
    let mut out = Offenders::default();
    for &k in slopes {
        let pts = curve_points(k, cfg.curve_samples, cfg.grid.margin)?;
        let vals: Vec<Option<f64>> = pts.iter().map(|z| eval(component, z)).collect();
        unimodal_steps(&pts, &vals, &mut out);
    }
    let (pts, vals) = smoothed_profile(component.measure(), cfg)?;
    unimodal_steps(&pts, &vals, &mut out);
    Ok(out.verdict(PropertyId::P2B, component.label(), cfg))
}

fn smoothed_profile(m: MeasureId, cfg: &CheckConfig) -> Result<(Vec<SharePoint3>, Vec<Option<f64>>)> {
    let pts = curve_points(1.0, cfg.curve_samples, cfg.grid.margin)?;
    let vals = pts.iter().map(|z| index3(m, &z.smoothed()).ok()).collect();
    Ok((pts, vals))
}

/// The profile `z3 ↦ I(z̄)` alone; it falls then rises for every index by
/// Schur-convexity.
pub fn check_smoothed_profile(m: MeasureId, cfg: &CheckConfig) -> Result<PropertyVerdict> {
    let (pts, vals) = smoothed_profile(m, cfg)?;
    let mut out = Offenders::default();
    unimodal_steps(&pts, &vals, &mut out);
    Ok(out.verdict(PropertyId::P2B, format!("{m} smoothed profile"), cfg))
}

/// (2D): zero exactly on `z3 = 1/3` and nowhere else.
pub fn check_zero_between(component: &dyn Component, cfg: &CheckConfig) -> Result<PropertyVerdict> {
    require(component, Part::Between)?;
    zero_between(&sample_grid(component, cfg.grid), component, cfg)
}

fn zero_between(field: &ScalarField, component: &dyn Component, cfg: &CheckConfig) -> Result<PropertyVerdict> {
    let on = slice_points(1.0 / 3.0, cfg.slice_samples, cfg.grid.margin)?;
    Ok(zero_locus(field, &on, component, cfg, Locus::EqualMeans, PropertyId::P2D))
}

/// All eight verdicts for a pair of within and between components.
pub fn check_all(within: &dyn Component, between: &dyn Component, cfg: &CheckConfig) -> Result<Vec<PropertyVerdict>> {
    cfg.validate()?;
    require(within, Part::Within)?;
    require(between, Part::Between)?;
    let wf = sample_grid(within, cfg.grid);
    let bf = sample_grid(between, cfg.grid);
    Ok(vec![
        check_ray_invariance(within, cfg)?,
        within_monotone(&wf, within, cfg),
        nonneg(&wf, within, cfg),
        zero_within(&wf, within, cfg)?,
        check_slice_invariance(between, cfg)?,
        check_between_unimodal(between, &CURVE_SLOPES, cfg)?,
        nonneg(&bf, between, cfg),
        zero_between(&bf, between, cfg)?,
    ])
}

/// Verdicts for one (measure, scheme) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    pub measure: MeasureId,
    pub scheme: String,
    pub properties: Vec<PropertyVerdict>,
}

impl Serialize for PropertyReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PropertyReport", 3)?;
        st.serialize_field("measure", self.measure.key())?;
        st.serialize_field("scheme", &self.scheme)?;
        st.serialize_field("properties", &self.properties)?;
        st.end()
    }
}

impl PropertyReport {
    pub fn verdict(&self, id: PropertyId) -> Option<&PropertyVerdict> {
        self.properties.iter().find(|v| v.property == id)
    }

    /// Properties whose verdict disagrees with [`expected_pass`].
    pub fn mismatches(&self) -> Vec<PropertyId> {
        let Ok(scheme) = self.scheme.parse::<Scheme>() else {
            return Vec::new();
        };
        self.properties
            .iter()
            .filter(|v| expected_pass(self.measure, &scheme, v.property).is_some_and(|e| e != v.passed))
            .map(|v| v.property)
            .collect()
    }
}

pub fn report(measure: MeasureId, scheme: &Scheme, cfg: &CheckConfig) -> Result<PropertyReport> {
    let within = ComponentSpec::within(measure, scheme.clone());
    let between = ComponentSpec::between(measure, scheme.clone());
    Ok(PropertyReport { measure, scheme: scheme.key().to_string(), properties: check_all(&within, &between, cfg)? })
}

/// Every (measure, scheme) combination, measure-major.
pub fn full_report(measures: &[MeasureId], schemes: &[Scheme], cfg: &CheckConfig) -> Result<Vec<PropertyReport>> {
    let mut out = Vec::with_capacity(measures.len() * schemes.len());
    for &m in measures {
        for s in schemes {
            out.push(report(m, s, cfg)?);
        }
    }
    Ok(out)
}

/// Expected verdict for the classical schemes; `None` for custom weightings.
pub fn expected_pass(m: MeasureId, scheme: &Scheme, p: PropertyId) -> Option<bool> {
    use MeasureId::*;
    use PropertyId::*;
    let exact = matches!((m, scheme), (Mld, Scheme::Population) | (Theil, Scheme::Income));
    if exact || matches!(p, P1B | P1C | P1D) {
        return Some(matches!(scheme, Scheme::Population | Scheme::Income));
    }
    match (m, scheme, p) {
        (_, Scheme::Custom(_), _) => None,
        (Gini, _, P2C) | (Cv, Scheme::Income, P2C) => Some(true),
        _ => Some(false),
    }
}

pub fn to_json(reports: &[PropertyReport]) -> Result<String> {
    serde_json::to_string_pretty(reports).map_err(|e| Error::InvalidArgument(e.to_string()))
}

/// Markdown table; a `*` marks verdicts that disagree with the expectation.
pub fn to_markdown(reports: &[PropertyReport]) -> String {
    let mut s = String::from("| measure | scheme |");
    for p in PropertyId::ALL {
        s.push_str(&format!(" {} |", p.code()));
    }
    s.push_str("\n|---|---|");
    s.push_str(&"---|".repeat(PropertyId::ALL.len()));
    s.push('\n');
    for r in reports {
        let bad = r.mismatches();
        s.push_str(&format!("| {} | {} |", r.measure, r.scheme));
        for v in &r.properties {
            let mark = if bad.contains(&v.property) { "*" } else { "" };
            let word = if v.passed { "pass" } else { "fail" };
            s.push_str(&format!(" {word}{mark} |"));
        }
        s.push('\n');
    }
    s
}

/// Whether `a` weakly majorizes `b`: equal totals (within 1e-12) and the
/// decreasingly sorted prefix sums of `a` dominate those of `b`.
pub fn majorizes(a: &[f64], b: &[f64]) -> bool {
    const TOL: f64 = 1e-12;
    if a.len() != b.len() {
        return false;
    }
    let sorted = |v: &[f64]| {
        let mut v = v.to_vec();
        v.sort_by(|x, y| y.total_cmp(x));
        v
    };
    let (a, b) = (sorted(a), sorted(b));
    let (mut pa, mut pb) = (0.0, 0.0);
    for (x, y) in a.iter().zip(&b) {
        pa += x;
        pb += y;
        if pa < pb - TOL {
            return false;
        }
    }
    (pa - pb).abs() <= TOL
}
