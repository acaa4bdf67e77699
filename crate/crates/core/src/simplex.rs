//! Barycentric geometry of the share simplex: the planar embedding, lattice
//! grids, the reference families used to read the figures, and sampled scalar
//! fields.
//!
//! The simplex is drawn as the equilateral triangle with vertices `(0, 0)`
//! (`z1 = 1`), `(1, 0)` (`z2 = 1`) and `(1/2, √3/2)` (`z3 = 1`). Horizontal lines
//! are slices of constant `z3`; rays through the top vertex are lines of
//! constant `z1 / (z1 + z2)`.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::SharePoint3;

pub const SQRT3_2: f64 = 0.866_025_403_784_438_6;

/// Default minimum share kept by grids and sweeps.
pub const DEFAULT_MARGIN: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BaryXY {
    pub x: f64,
    pub y: f64,
}

pub fn to_bary(z: &SharePoint3) -> BaryXY {
    BaryXY { x: z.z2 + 0.5 * z.z3, y: SQRT3_2 * z.z3 }
}

pub fn from_bary(p: BaryXY) -> Result<SharePoint3> {
    const TOL: f64 = 1e-9;
    let z3 = p.y / SQRT3_2;
    let z2 = p.x - 0.5 * z3;
    let z1 = 1.0 - z2 - z3;
    if !(p.x.is_finite() && p.y.is_finite()) || [z1, z2, z3].iter().any(|&v| v < -TOL) {
        return Err(Error::OutsideTriangle { x: p.x, y: p.y });
    }
    let (z1, z2, z3) = (z1.max(0.0), z2.max(0.0), z3.max(0.0));
    let s = z1 + z2 + z3;
    Ok(SharePoint3::from_parts(z1 / s, z2 / s, z3 / s))
}

/// Triangular lattice over the simplex.
///
/// `resolution` is the number of lattice steps along each edge; lattice points
/// are `(a, b, c) / resolution` with `a + b + c = resolution`. Points with a
/// share below `margin` are dropped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub resolution: usize,
    pub margin: f64,
}

impl GridSpec {
    pub fn new(resolution: usize, margin: f64) -> Result<Self> {
        if resolution < 2 {
            return Err(Error::InvalidGrid(format!("resolution must be at least 2, got {resolution}")));
        }
        if !(0.0..1.0 / 3.0).contains(&margin) {
            return Err(Error::InvalidGrid(format!("margin must lie in [0, 1/3), got {margin}")));
        }
        Ok(GridSpec { resolution, margin })
    }

    /// Distance between neighbouring lattice points, in the planar embedding.
    pub fn spacing(&self) -> f64 {
        1.0 / self.resolution as f64
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { resolution: 200, margin: DEFAULT_MARGIN }
    }
}

/// One lattice point with its integer coordinates.
///
/// `a`, `b`, `c` count lattice steps in `z1`, `z2`, `z3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticePoint {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub z: SharePoint3,
    pub xy: BaryXY,
}

impl LatticePoint {
    fn new(r: usize, b: usize, c: usize) -> Self {
        let a = r - b - c;
        let rf = r as f64;
        let z = SharePoint3::from_parts(a as f64 / rf, b as f64 / rf, c as f64 / rf);
        LatticePoint { a, b, c, z, xy: to_bary(&z) }
    }

    pub fn on_boundary(&self) -> bool {
        self.a == 0 || self.b == 0 || self.c == 0
    }
}

/// Every lattice point of the closed simplex, row by row (increasing `z3`,
/// then increasing `x`).
pub fn full_lattice(resolution: usize) -> Vec<LatticePoint> {
    let mut out = Vec::with_capacity((resolution + 1) * (resolution + 2) / 2);
    for c in 0..=resolution {
        for b in 0..=(resolution - c) {
            out.push(LatticePoint::new(resolution, b, c));
        }
    }
    out
}

/// Lattice points with every share at least `spec.margin`, in the same
/// deterministic row-major order as [`full_lattice`].
pub fn interior_grid(spec: &GridSpec) -> Vec<LatticePoint> {
    full_lattice(spec.resolution).into_iter().filter(|p| p.z.z1 >= spec.margin && p.z.z2 >= spec.margin && p.z.z3 >= spec.margin).collect()
}

fn check_samples(samples: usize) -> Result<()> {
    if samples < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 samples, got {samples}")));
    }
    Ok(())
}

fn sweep(lo: f64, hi: f64, samples: usize) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / (samples - 1) as f64;
    (0..samples).map(move |k| if k + 1 == samples { hi } else { lo + step * k as f64 })
}

/// Points on the ray `z1 / (z1 + z2) = t`, with `z3` running from `margin` to
/// `1 - margin`.
pub fn ray_points(t: f64, samples: usize, margin: f64) -> Result<Vec<SharePoint3>> {
    check_samples(samples)?;
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidArgument(format!("ray ratio {t} outside [0, 1]")));
    }
    Ok(sweep(margin, 1.0 - margin, samples)
        .map(|z3| {
            let s = 1.0 - z3;
            let z1 = t * s;
            SharePoint3::from_parts(z1, s - z1, z3)
        })
        .collect())
}

/// Points on the slice of constant `z3`, with `z1` running from `margin` to
/// `1 - z3 - margin`.
pub fn slice_points(z3: f64, samples: usize, margin: f64) -> Result<Vec<SharePoint3>> {
    check_samples(samples)?;
    let s = 1.0 - z3;
    if !(0.0..1.0).contains(&z3) || s < 2.0 * margin {
        return Err(Error::InvalidArgument(format!("slice z3 = {z3} leaves no room for margin {margin}")));
    }
    Ok(sweep(margin, s - margin, samples).map(|z1| SharePoint3::from_parts(z1, s - z1, z3)).collect())
}

/// Points on the curve `z2 = k z1`, ordered by increasing `z3`.
pub fn curve_points(k: f64, samples: usize, margin: f64) -> Result<Vec<SharePoint3>> {
    check_samples(samples)?;
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidArgument(format!("curve slope must be positive, got {k}")));
    }
    Ok(sweep(margin, 1.0 - margin, samples)
        .map(|z3| {
            let s = 1.0 - z3;
            let z1 = s / (1.0 + k);
            SharePoint3::from_parts(z1, s - z1, z3)
        })
        .collect())
}

/// A function sampled on an interior lattice.
///
/// `values[i]` is `None` where the function is undefined or not finite.
#[derive(Debug, Clone)]
pub struct ScalarField {
    pub grid: GridSpec,
    pub points: Vec<LatticePoint>,
    pub values: Vec<Option<f64>>,
}

impl ScalarField {
    pub fn sample<F>(grid: GridSpec, f: F) -> Self
    where
        F: Fn(&SharePoint3) -> Option<f64> + Sync,
    {
        let points = interior_grid(&grid);
        let values = points.par_iter().map(|p| f(&p.z).filter(|v| v.is_finite())).collect();
        ScalarField { grid, points, values }
    }

    pub fn defined_mask(&self) -> Vec<bool> {
        self.values.iter().map(Option::is_some).collect()
    }

    pub fn defined_values(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().flatten().copied()
    }

    /// CSV with columns `z1,z2,z3,x,y,value,defined`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "z1,z2,z3,x,y,value,defined")?;
        for (p, v) in self.points.iter().zip(&self.values) {
            let value = v.map(|v| v.to_string()).unwrap_or_default();
            writeln!(w, "{},{},{},{},{},{},{}", p.z.z1, p.z.z2, p.z.z3, p.xy.x, p.xy.y, value, v.is_some())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: BaryXY, x: f64, y: f64) -> bool {
        (a.x - x).abs() < 1e-15 && (a.y - y).abs() < 1e-15
    }

    #[test]
    fn vertices_map_to_triangle_corners() {
        assert!(close(to_bary(&SharePoint3::new(1.0, 0.0, 0.0).unwrap()), 0.0, 0.0));
        assert!(close(to_bary(&SharePoint3::new(0.0, 1.0, 0.0).unwrap()), 1.0, 0.0));
        assert!(close(to_bary(&SharePoint3::new(0.0, 0.0, 1.0).unwrap()), 0.5, SQRT3_2));
        assert!(close(to_bary(&SharePoint3::new(0.5, 0.5, 0.0).unwrap()), 0.5, 0.0));
    }

    #[test]
    fn inverse_of_vertices() {
        let z = from_bary(BaryXY { x: 0.0, y: 0.0 }).unwrap();
        assert_eq!(z.as_array(), [1.0, 0.0, 0.0]);
        let z = from_bary(BaryXY { x: 0.5, y: SQRT3_2 }).unwrap();
        assert!((z.z3 - 1.0).abs() < 1e-15 && z.z1.abs() < 1e-15 && z.z2.abs() < 1e-15);
    }

    #[test]
    fn outside_points_are_rejected() {
        assert!(matches!(from_bary(BaryXY { x: 0.0, y: 0.5 }), Err(Error::OutsideTriangle { .. })));
        assert!(matches!(from_bary(BaryXY { x: 1.2, y: 0.0 }), Err(Error::OutsideTriangle { .. })));
        assert!(from_bary(BaryXY { x: 0.5, y: -0.01 }).is_err());
    }

    #[test]
    fn smallest_lattice() {
        let all = interior_grid(&GridSpec::new(2, 0.0).unwrap());
        assert_eq!(all.len(), 6);
        let strict = interior_grid(&GridSpec::new(2, 1e-4).unwrap());
        assert!(strict.is_empty());
    }

    #[test]
    fn lattice_count_matches_brute_force_filter() {
        for (r, eps) in [(10, 0.0), (10, 0.05), (10, 0.1), (25, 1e-4), (7, 0.2)] {
            let mut count = 0;
            for a in 0..=r {
                for b in 0..=r - a {
                    let c = r - a - b;
                    let rf = r as f64;
                    if [a, b, c].iter().all(|&k| k as f64 / rf >= eps) {
                        count += 1;
                    }
                }
            }
            let grid = interior_grid(&GridSpec::new(r, eps).unwrap());
            assert_eq!(grid.len(), count, "r = {r}, eps = {eps}");
            for p in &grid {
                assert!((p.z.z1 + p.z.z2 + p.z.z3 - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn grid_is_row_major() {
        let grid = interior_grid(&GridSpec::new(12, 1e-4).unwrap());
        for w in grid.windows(2) {
            let (p, q) = (w[0].xy, w[1].xy);
            assert!(p.y < q.y || (p.y == q.y && p.x < q.x));
        }
    }

    #[test]
    fn bad_grid_specs() {
        assert!(GridSpec::new(1, 1e-4).is_err());
        assert!(GridSpec::new(10, 0.4).is_err());
        assert!(GridSpec::new(10, -1e-3).is_err());
    }

    #[test]
    fn rays_keep_their_ratio() {
        for t in [0.0, 0.2, 0.5, 0.95, 1.0] {
            let pts = ray_points(t, 50, 1e-4).unwrap();
            assert_eq!(pts.len(), 50);
            for z in &pts {
                assert!((z.z1 / (z.z1 + z.z2) - t).abs() < 1e-12);
                if t == 0.5 {
                    assert_eq!(z.z1, z.z2);
                }
                if t == 0.0 {
                    assert_eq!(z.z1, 0.0);
                }
            }
            assert_eq!(pts[0].z3, 1e-4);
            assert_eq!(pts[49].z3, 1.0 - 1e-4);
        }
        assert!(ray_points(0.5, 1, 1e-4).is_err());
        assert!(ray_points(1.5, 10, 1e-4).is_err());
    }

    #[test]
    fn slices_keep_z3() {
        let pts = slice_points(1.0 / 3.0, 21, 1e-4).unwrap();
        for z in &pts {
            assert_eq!(z.z3, 1.0 / 3.0);
            assert!((z.z1 + z.z2 + z.z3 - 1.0).abs() < 1e-15);
        }
        let base = slice_points(0.0, 11, 0.0).unwrap();
        assert!(base.iter().all(|z| z.z3 == 0.0));
        assert_eq!(base[0].z1, 0.0);
        assert!(slice_points(1.0, 11, 1e-4).is_err());
    }

    #[test]
    fn curves_are_monotone_in_z3() {
        for k in [0.2, 1.0, 5.0] {
            let pts = curve_points(k, 100, 1e-4).unwrap();
            for w in pts.windows(2) {
                assert!(w[1].z3 > w[0].z3);
            }
            for z in &pts {
                assert!((z.z2 - k * z.z1).abs() < 1e-12);
            }
        }
        let line = curve_points(1.0, 10, 1e-4).unwrap();
        assert!(line.iter().all(|z| (to_bary(z).x - 0.5).abs() < 1e-15));
        assert!(curve_points(0.0, 10, 1e-4).is_err());
    }

    #[test]
    fn field_csv_layout() {
        let field = ScalarField::sample(GridSpec::new(4, 0.0).unwrap(), |z| (z.z1 > 0.0).then_some(z.z3));
        let mut buf = Vec::new();
        field.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "z1,z2,z3,x,y,value,defined");
        assert_eq!(text.lines().count(), 1 + 15);
        assert!(text.lines().any(|l| l.ends_with(",,false")));
        assert_eq!(field.defined_mask().iter().filter(|d| !**d).count(), 5);
    }
}
