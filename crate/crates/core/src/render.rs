//! SVG figures of components on the simplex: heat map, level curves, the
//! reference family the level curves should follow, and overlaid paths.
//!
//! Level curves come from marching triangles on the lattice, the triangular
//! counterpart of marching squares: each lattice cell is a triangle, so the
//! contour crosses at most two of its edges and the case table is trivial.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use crate::decomp::{Component, ComponentSpec, Part, Scheme};
use crate::diagnostics::{check_between_unimodal, CheckConfig, CURVE_SLOPES};
use crate::error::{Error, Result};
use crate::measures::{MeasureId, SharePoint3};
use crate::simplex::{curve_points, from_bary, to_bary, BaryXY, GridSpec, ScalarField, SQRT3_2};
use crate::zerosets::{cv_dcp_zero_curve, mld_dci_zero_curves, theil_dcp_zero_curve};

pub const DEFAULT_LEVELS: usize = 12;

/// Default lattice resolution for figures; keeps each SVG well under a megabyte.
pub const DEFAULT_FIGURE_RESOLUTION: usize = 80;

const COLOR_BINS: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    pub level: f64,
    pub points: Vec<BaryXY>,
}

/// Lattice triangles as index triples into `field.points`, in lattice order.
fn cells(field: &ScalarField) -> Vec<[usize; 3]> {
    let index: HashMap<(usize, usize), usize> = field.points.iter().enumerate().map(|(i, p)| ((p.b, p.c), i)).collect();
    let mut out = Vec::new();
    for p in &field.points {
        let (b, c) = (p.b, p.c);
        let up = [(b, c), (b + 1, c), (b, c + 1)];
        let down = [(b + 1, c), (b + 1, c + 1), (b, c + 1)];
        for tri in [up, down] {
            let idx: Option<Vec<usize>> = tri.iter().map(|k| index.get(k).copied()).collect();
            if let Some(idx) = idx {
                if idx.iter().all(|&i| field.values[i].is_some()) {
                    out.push([idx[0], idx[1], idx[2]]);
                }
            }
        }
    }
    out
}

fn crossing(field: &ScalarField, i: usize, j: usize, level: f64) -> BaryXY {
    let (vi, vj) = (field.values[i].unwrap_or(level), field.values[j].unwrap_or(level));
    let s = if vj == vi { 0.5 } else { (level - vi) / (vj - vi) };
    let (a, b) = (field.points[i].xy, field.points[j].xy);
    BaryXY { x: a.x + s * (b.x - a.x), y: a.y + s * (b.y - a.y) }
}

/// Level curves of `field` at each of `levels`, as polylines in the plane.
///
/// Segments sharing a lattice edge are chained; open chains come first,
/// then closed loops, each in lattice order.
pub fn contour_lines(field: &ScalarField, levels: &[f64]) -> Result<Vec<Contour>> {
    if field.values.iter().filter(|v| v.is_some()).count() < 4 {
        return Err(Error::InvalidGrid("contouring needs at least 4 defined points".into()));
    }
    let tris = cells(field);
    let mut out = Vec::new();
    for &level in levels {
        // Segment endpoints are identified by the lattice edge they sit on.
        let mut segments: Vec<[(usize, usize); 2]> = Vec::new();
        for tri in &tris {
            let above: Vec<bool> = tri.iter().map(|&i| field.values[i].is_some_and(|v| v > level)).collect();
            let mut ends = Vec::with_capacity(2);
            for (u, w) in [(0, 1), (1, 2), (2, 0)] {
                if above[u] != above[w] {
                    let (i, j) = (tri[u], tri[w]);
                    ends.push((i.min(j), i.max(j)));
                }
            }
            if ends.len() == 2 {
                segments.push([ends[0], ends[1]]);
            }
        }
        let mut adjacency: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (k, seg) in segments.iter().enumerate() {
            for e in seg {
                adjacency.entry(*e).or_default().push(k);
            }
        }
        let mut used = vec![false; segments.len()];
        let walk = |start: usize, from: (usize, usize), used: &mut Vec<bool>| -> Vec<(usize, usize)> {
            let mut chain = vec![from];
            let (mut seg, mut at) = (start, from);
            loop {
                used[seg] = true;
                let next = if segments[seg][0] == at { segments[seg][1] } else { segments[seg][0] };
                chain.push(next);
                at = next;
                match adjacency[&at].iter().find(|&&k| !used[k]) {
                    Some(&k) => seg = k,
                    None => break,
                }
            }
            chain
        };
        let mut chains = Vec::new();
        for (edge, segs) in &adjacency {
            if segs.len() == 1 && !used[segs[0]] {
                chains.push(walk(segs[0], *edge, &mut used));
            }
        }
        for k in 0..segments.len() {
            if !used[k] {
                chains.push(walk(k, segments[k][0], &mut used));
            }
        }
        for chain in chains {
            let points = chain.iter().map(|&(i, j)| crossing(field, i, j, level)).collect();
            out.push(Contour { level, points });
        }
    }
    Ok(out)
}

/// `count` equally spaced levels strictly between `lo` and `hi`.
pub fn equal_levels(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (1..=count).map(|i| lo + (hi - lo) * i as f64 / (count + 1) as f64).collect()
}

/// Nearest-rank percentile of the defined values, `p ∈ [0, 1]`.
pub fn percentile(values: &[f64], p: f64) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let idx = (p.clamp(0.0, 1.0) * (v.len() - 1) as f64).round() as usize;
    Some(v[idx])
}

#[derive(Debug, Clone, PartialEq)]
pub enum Reference {
    /// Rays of constant `z1 / (z1 + z2)`.
    Rays(Vec<f64>),
    /// Horizontal slices of constant `z3`.
    Slices(Vec<f64>),
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Overlay {
    pub label: String,
    pub points: Vec<SharePoint3>,
    pub color: String,
    pub dashed: bool,
}

impl Overlay {
    pub fn highlight(label: impl Into<String>, points: Vec<SharePoint3>) -> Self {
        Overlay { label: label.into(), points, color: "#d62728".into(), dashed: false }
    }
}

#[derive(Debug, Clone)]
pub enum Levels {
    Count(usize),
    Explicit(Vec<f64>),
}

#[derive(Debug, Clone)]
pub struct FigureSpec {
    pub title: String,
    pub field: ScalarField,
    pub levels: Levels,
    pub reference: Reference,
    pub overlays: Vec<Overlay>,
    /// Lower and upper percentile used to clamp colours and default levels.
    pub clamp: (f64, f64),
}

impl FigureSpec {
    pub fn new(title: impl Into<String>, field: ScalarField) -> Self {
        FigureSpec {
            title: title.into(),
            field,
            levels: Levels::Count(DEFAULT_LEVELS),
            reference: Reference::None,
            overlays: Vec::new(),
            clamp: (0.01, 0.99),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.clamp;
        if !(0.0 <= lo && lo <= hi && hi <= 1.0) {
            return Err(Error::InvalidArgument(format!("percentile clamp ({lo}, {hi}) must be ordered within [0, 1]")));
        }
        match &self.levels {
            Levels::Count(0) => Err(Error::InvalidArgument("at least one contour level is required".into())),
            Levels::Explicit(v) if v.is_empty() => Err(Error::InvalidArgument("at least one contour level is required".into())),
            _ => Ok(()),
        }
    }

    /// Clamped value range used for the colour ramp.
    pub fn value_range(&self) -> Result<(f64, f64)> {
        let vals: Vec<f64> = self.field.defined_values().collect();
        let lo = percentile(&vals, self.clamp.0).ok_or_else(|| Error::InvalidGrid("field has no defined values".into()))?;
        let hi = percentile(&vals, self.clamp.1).unwrap_or(lo);
        Ok((lo, hi))
    }

    pub fn level_values(&self) -> Result<Vec<f64>> {
        Ok(match &self.levels {
            Levels::Explicit(v) => v.clone(),
            Levels::Count(n) => {
                let (lo, hi) = self.value_range()?;
                if hi > lo {
                    equal_levels(lo, hi, *n)
                } else {
                    Vec::new()
                }
            }
        })
    }
}

// Page geometry, in SVG user units.
const SIDE: f64 = 480.0;
const LEFT: f64 = 60.0;
const TOP: f64 = 60.0;
const WIDTH: f64 = 680.0;
const HEIGHT: f64 = 540.0;

fn px(p: BaryXY) -> (f64, f64) {
    (LEFT + p.x * SIDE, TOP + (SQRT3_2 - p.y) * SIDE)
}

fn ramp(u: f64) -> String {
    // Dark blue to near white; luminance increases with u.
    let u = u.clamp(0.0, 1.0);
    let lerp = |a: f64, b: f64| (a + (b - a) * u).round() as u8;
    format!("#{:02x}{:02x}{:02x}", lerp(16.0, 247.0), lerp(36.0, 250.0), lerp(96.0, 255.0))
}

fn path_d(points: &[BaryXY]) -> String {
    let mut d = String::new();
    for (k, p) in points.iter().enumerate() {
        let (x, y) = px(*p);
        let _ = write!(d, "{}{:.2},{:.2}", if k == 0 { "M" } else { "L" }, x, y);
    }
    d
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// The SVG document for `spec`; identical inputs give identical bytes.
pub fn render_svg(spec: &FigureSpec) -> Result<String> {
    spec.validate()?;
    let field = &spec.field;
    let (lo, hi) = spec.value_range()?;
    let levels = spec.level_values()?;
    let contours = contour_lines(field, &levels)?;
    let unit = |v: f64| if hi > lo { (v - lo) / (hi - lo) } else { 0.5 };

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="30" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
        LEFT + SIDE / 2.0,
        esc(&spec.title)
    );

    // Heat map: cells binned by colour, one path per bin.
    let mut bins: Vec<String> = vec![String::new(); COLOR_BINS];
    for tri in cells(field) {
        let mean = tri.iter().filter_map(|&i| field.values[i]).sum::<f64>() / 3.0;
        let bin = ((unit(mean) * COLOR_BINS as f64).floor() as isize).clamp(0, COLOR_BINS as isize - 1) as usize;
        let pts: Vec<BaryXY> = tri.iter().map(|&i| field.points[i].xy).collect();
        bins[bin].push_str(&path_d(&pts));
        bins[bin].push('Z');
    }
    let _ = writeln!(s, r#"<g id="heatmap" stroke-width="0.6" stroke-linejoin="round">"#);
    for (k, d) in bins.iter().enumerate() {
        if !d.is_empty() {
            let c = ramp((k as f64 + 0.5) / COLOR_BINS as f64);
            let _ = writeln!(s, r#"<path fill="{c}" stroke="{c}" d="{d}"/>"#);
        }
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r##"<g id="reference" fill="none" stroke="#555555" stroke-width="0.9" stroke-dasharray="5,4">"##);
    match &spec.reference {
        Reference::Rays(ts) => {
            for &t in ts {
                let apex = BaryXY { x: 0.5, y: SQRT3_2 };
                let foot = to_bary(&SharePoint3::from_parts(t, 1.0 - t, 0.0));
                let _ = writeln!(s, r#"<path d="{}"/>"#, path_d(&[apex, foot]));
            }
        }
        Reference::Slices(hs) => {
            for &h in hs {
                let a = to_bary(&SharePoint3::from_parts(1.0 - h, 0.0, h));
                let b = to_bary(&SharePoint3::from_parts(0.0, 1.0 - h, h));
                let _ = writeln!(s, r#"<path d="{}"/>"#, path_d(&[a, b]));
            }
        }
        Reference::None => {}
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r##"<g id="contours" fill="none" stroke="#111111" stroke-width="1.1">"##);
    for c in &contours {
        if c.points.len() >= 2 {
            let _ = writeln!(s, r#"<path data-level="{:.6e}" d="{}"/>"#, c.level, path_d(&c.points));
        }
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g id="overlays" fill="none" stroke-width="2">"#);
    for o in &spec.overlays {
        let pts: Vec<BaryXY> = o.points.iter().map(to_bary).collect();
        let dash = if o.dashed { r#" stroke-dasharray="6,3""# } else { "" };
        let _ = writeln!(s, r#"<path stroke="{}"{} d="{}"><title>{}</title></path>"#, esc(&o.color), dash, path_d(&pts), esc(&o.label));
    }
    let _ = writeln!(s, "</g>");

    // Outline, vertex labels and the z3 = 1/3 tick on the left edge.
    let corners = [BaryXY { x: 0.0, y: 0.0 }, BaryXY { x: 1.0, y: 0.0 }, BaryXY { x: 0.5, y: SQRT3_2 }];
    let _ = writeln!(s, r##"<path fill="none" stroke="#000000" stroke-width="1.2" d="{}Z"/>"##, path_d(&corners));
    let labels = [("(1,0,0)", -8.0, 18.0, "end"), ("(0,1,0)", 8.0, 18.0, "start"), ("(0,0,1)", 0.0, -10.0, "middle")];
    for (corner, (text, dx, dy, anchor)) in corners.iter().zip(labels) {
        let (x, y) = px(*corner);
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="{anchor}">{text}</text>"#,
            x + dx,
            y + dy
        );
    }
    let tick = to_bary(&SharePoint3::from_parts(2.0 / 3.0, 0.0, 1.0 / 3.0));
    let (tx, ty) = px(tick);
    // Outward normal of the left edge is (-√3/2, -1/2) in page coordinates.
    let _ = writeln!(s, r##"<path stroke="#000000" stroke-width="1.5" d="M{:.2},{:.2}L{:.2},{:.2}"/>"##, tx, ty, tx - 8.66, ty - 5.0);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end">z3=1/3</text>"#,
        tx - 11.0,
        ty - 4.0
    );

    // Legend: colour bar with level values.
    let (bx, by, bw, bh) = (600.0, 80.0, 18.0, 360.0);
    let _ = writeln!(s, r#"<g id="legend" font-family="sans-serif" font-size="10">"#);
    let steps = 32;
    for k in 0..steps {
        let u = (k as f64 + 0.5) / steps as f64;
        let y = by + bh * (1.0 - (k + 1) as f64 / steps as f64);
        let _ = writeln!(s, r#"<rect x="{bx:.2}" y="{y:.2}" width="{bw:.2}" height="{:.2}" fill="{}"/>"#, bh / steps as f64 + 0.3, ramp(u));
    }
    let _ = writeln!(s, r##"<rect x="{bx:.2}" y="{by:.2}" width="{bw:.2}" height="{bh:.2}" fill="none" stroke="#000000"/>"##);
    for &l in &levels {
        let y = by + bh * (1.0 - unit(l).clamp(0.0, 1.0));
        let _ = writeln!(s, r##"<path stroke="#111111" d="M{:.2},{y:.2}L{:.2},{y:.2}"/>"##, bx - 3.0, bx + bw);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">{:.4}</text>"#, bx + bw + 4.0, y + 3.0, l);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    Ok(s)
}

pub fn render_figure(spec: &FigureSpec, path: &Path) -> Result<()> {
    let svg = render_svg(spec)?;
    std::fs::write(path, svg)?;
    Ok(())
}

/// Figure of one classical component: rays behind within components, slices
/// behind between components. Between panels that fail (2B) get the curve
/// `z2 = k z1` with the worst violation in red, and the known zero sets are
/// drawn where they exist.
pub fn component_figure(spec: &ComponentSpec, resolution: usize) -> Result<FigureSpec> {
    let grid = GridSpec::new(resolution, crate::simplex::DEFAULT_MARGIN)?;
    let field = ScalarField::sample(grid, |z| spec.evaluate(z).ok());
    let name = match spec.part {
        Part::Within => "within",
        Part::Between => "between",
    };
    let mut fig = FigureSpec::new(format!("{} {}, {}", spec.measure, name, spec.scheme), field);
    let tenths: Vec<f64> = (1..10).map(|k| k as f64 / 10.0).collect();
    match spec.part {
        Part::Within => fig.reference = Reference::Rays(tenths),
        Part::Between => {
            let mut hs = tenths;
            hs.push(1.0 / 3.0);
            hs.sort_by(f64::total_cmp);
            fig.reference = Reference::Slices(hs);
            let cfg = CheckConfig { grid, ..CheckConfig::default() };
            let mut worst: Option<(f64, f64)> = None;
            // Mirror slopes tie; scanning from the steepest keeps z2 = 5 z1.
            for &k in CURVE_SLOPES.iter().rev() {
                let v = check_between_unimodal(spec, &[k], &cfg)?;
                if !v.passed && worst.is_none_or(|(w, _)| v.max_violation > w * (1.0 + 1e-6)) {
                    worst = Some((v.max_violation, k));
                }
            }
            if let Some((_, k)) = worst {
                fig.overlays.push(Overlay::highlight(format!("z2 = {k} z1"), curve_points(k, 200, grid.margin)?));
            }
            let zero = |curve: &crate::zerosets::ZeroCurve| Overlay {
                label: format!("zero set {}", curve.label),
                points: curve.points.clone(),
                color: "#ff9f1c".into(),
                dashed: true,
            };
            match (spec.measure, &spec.scheme) {
                (MeasureId::Cv, Scheme::Population) => fig.overlays.extend(cv_dcp_zero_curve(200)?.iter().map(zero)),
                (MeasureId::Theil, Scheme::Population) => fig.overlays.extend(theil_dcp_zero_curve(200)?.iter().map(zero)),
                (MeasureId::Mld, Scheme::Income) => fig.overlays.extend(mld_dci_zero_curves(200)?.branches.iter().map(zero)),
                _ => {}
            }
        }
    }
    Ok(fig)
}

/// File name used for a classical panel, e.g. `mld_dcp_within.svg`.
pub fn panel_file_name(spec: &ComponentSpec) -> String {
    format!("{}_{}_{}.svg", spec.measure.key(), spec.scheme.key(), spec.part.key())
}

fn point_segment(p: BaryXY, a: BaryXY, b: BaryXY) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    let s = if len2 == 0.0 { 0.0 } else { (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).clamp(0.0, 1.0) };
    ((p.x - a.x - s * dx).powi(2) + (p.y - a.y - s * dy).powi(2)).sqrt()
}

fn point_polyline(p: BaryXY, line: &[BaryXY]) -> f64 {
    match line {
        [] => f64::INFINITY,
        [q] => ((p.x - q.x).powi(2) + (p.y - q.y).powi(2)).sqrt(),
        _ => line.windows(2).map(|w| point_segment(p, w[0], w[1])).fold(f64::INFINITY, f64::min),
    }
}

/// Symmetric Hausdorff distance between two polylines, measured from the
/// vertices of each to the other's segments.
pub fn hausdorff(a: &[BaryXY], b: &[BaryXY]) -> f64 {
    let one = |x: &[BaryXY], y: &[BaryXY]| x.iter().map(|p| point_polyline(*p, y)).fold(0.0, f64::max);
    one(a, b).max(one(b, a))
}

fn median(mut v: Vec<f64>) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    Some(v[v.len() / 2])
}

/// Distance from a level curve to its rays: one per side of `z1 = z2`, at
/// that side's median pair split, clipped to that side's height range.
///
/// Pair-symmetric components have mirror rays `t` and `1 - t` on the same
/// level; near the apex they fall inside one lattice cell and the contour
/// joins them, so each side is matched to its own ray.
pub fn distance_to_ray(line: &[BaryXY]) -> Option<f64> {
    let zs: Vec<(BaryXY, SharePoint3)> = line.iter().filter_map(|p| from_bary(*p).ok().map(|z| (*p, z))).collect();
    let mut rays = Vec::new();
    for left in [true, false] {
        let side: Vec<&(BaryXY, SharePoint3)> = zs.iter().filter(|(_, z)| (z.z1 >= z.z2) == left).collect();
        let Some(t) = median(side.iter().filter_map(|(_, z)| z.pair_ratio()).collect()) else {
            continue;
        };
        let y_lo = side.iter().map(|(p, _)| p.y).fold(f64::INFINITY, f64::min);
        let y_hi = side.iter().map(|(p, _)| p.y).fold(f64::NEG_INFINITY, f64::max);
        let at = |y: f64| {
            let z3 = y / SQRT3_2;
            to_bary(&SharePoint3::from_parts(t * (1.0 - z3), (1.0 - t) * (1.0 - z3), z3))
        };
        rays.push(vec![at(y_lo), at(y_hi)]);
    }
    if rays.is_empty() {
        return None;
    }
    let to_rays = line.iter().map(|p| rays.iter().map(|r| point_polyline(*p, r)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max);
    let to_line = rays.iter().flatten().map(|q| point_polyline(*q, line)).fold(0.0, f64::max);
    Some(to_rays.max(to_line))
}

/// Distance from a level curve to the slice of its median height, the slice
/// clipped to the curve's horizontal extent.
pub fn distance_to_slice(line: &[BaryXY]) -> Option<f64> {
    let y = median(line.iter().map(|p| p.y).collect())?;
    let x_lo = line.iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
    let x_hi = line.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max);
    Some(hausdorff(line, &[BaryXY { x: x_lo, y }, BaryXY { x: x_hi, y }]))
}
