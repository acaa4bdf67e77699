//! Scale-invariant inequality indices for a population of `n` individuals.
//!
//! All four indices are evaluated on income *shares* (entries summing to one),
//! which makes them homogeneous of degree zero by construction:
//!
//! | index | value on shares `z` of length `n`            |
//! |-------|-----------------------------------------------|
//! | MLD   | `-(1/n) Σ ln(n z_i)`                          |
//! | Theil | `Σ z_i ln(n z_i)`, with `0 ln 0 = 0`           |
//! | Gini  | `(1 / (2 n² μ)) Σ_i Σ_j |z_i - z_j|`, `μ = 1/n` |
//! | CV    | `sqrt( Σ (n z_i - 1)² / (n - 1) )`            |
//!
//! The CV uses the Bessel-corrected variance. With that convention the
//! three-person index is `sqrt(½ Σ (3 z_i - 1)²)` and the two-person index on
//! `(t, 1 - t)` is `√2 |2t - 1|`, which are the forms the closed-form
//! decomposition components in [`crate::decomp`] are built from.
//!
//! A single individual carries no inequality, so every index is zero for `n = 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `Σ z_i = 1` for share vectors handed to [`measure_value`].
pub const SHARE_SUM_TOL: f64 = 1e-9;

/// Tolerance on `z1 + z2 + z3 = 1` for [`SharePoint3`].
pub const SIMPLEX_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureId {
    Mld,
    Theil,
    Gini,
    Cv,
}

impl MeasureId {
    /// Order used by reports and figure batches.
    pub const ALL: [MeasureId; 4] = [MeasureId::Mld, MeasureId::Gini, MeasureId::Cv, MeasureId::Theil];

    /// Lowercase identifier used on the command line and in file names.
    pub fn key(self) -> &'static str {
        match self {
            MeasureId::Mld => "mld",
            MeasureId::Theil => "theil",
            MeasureId::Gini => "gini",
            MeasureId::Cv => "cv",
        }
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MeasureId::Mld => "MLD",
            MeasureId::Theil => "Theil",
            MeasureId::Gini => "Gini",
            MeasureId::Cv => "CV",
        })
    }
}

impl FromStr for MeasureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mld" | "ge0" => Ok(MeasureId::Mld),
            "theil" | "ge1" => Ok(MeasureId::Theil),
            "gini" => Ok(MeasureId::Gini),
            "cv" => Ok(MeasureId::Cv),
            other => Err(Error::InvalidArgument(format!("unknown measure `{other}`"))),
        }
    }
}

/// Raw, non-negative incomes in arbitrary units with a strictly positive total.
#[derive(Debug, Clone, PartialEq)]
pub struct IncomeVector(Vec<f64>);

impl IncomeVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyIncomes);
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidIncome { index, value });
            }
        }
        let total: f64 = values.iter().sum();
        if total <= 0.0 {
            return Err(Error::ZeroTotalIncome(total));
        }
        Ok(IncomeVector(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn shares(&self) -> Vec<f64> {
        let total = self.total();
        self.0.iter().map(|y| y / total).collect()
    }
}

/// Income shares `y_i / Σ y`.
pub fn normalize(incomes: &[f64]) -> Result<Vec<f64>> {
    Ok(IncomeVector::new(incomes.to_vec())?.shares())
}

/// A point of the 2-simplex: income shares of a three-person population.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SharePoint3 {
    pub z1: f64,
    pub z2: f64,
    pub z3: f64,
}

impl SharePoint3 {
    pub fn new(z1: f64, z2: f64, z3: f64) -> Result<Self> {
        let ok = [z1, z2, z3].iter().all(|z| z.is_finite() && *z >= 0.0);
        if !ok {
            return Err(Error::InvalidShares(format!("({z1}, {z2}, {z3}) has a negative or non-finite entry")));
        }
        let sum = z1 + z2 + z3;
        if (sum - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::InvalidShares(format!("({z1}, {z2}, {z3}) sums to {sum}")));
        }
        Ok(SharePoint3 { z1, z2, z3 })
    }

    /// Normalizes three raw incomes.
    pub fn from_incomes(y1: f64, y2: f64, y3: f64) -> Result<Self> {
        let z = normalize(&[y1, y2, y3])?;
        Ok(SharePoint3 { z1: z[0], z2: z[1], z3: z[2] })
    }

    /// Builds a point from `z1`, `z3`, taking `z2` as the remainder; used by
    /// generators that already know the point is on the simplex.
    pub(crate) fn from_parts(z1: f64, z2: f64, z3: f64) -> Self {
        debug_assert!((z1 + z2 + z3 - 1.0).abs() <= 1e-12, "({z1}, {z2}, {z3})");
        SharePoint3 { z1: z1.max(0.0), z2: z2.max(0.0), z3: z3.max(0.0) }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.z1, self.z2, self.z3]
    }

    /// Total share of the two-person subgroup, `z1 + z2`.
    pub fn pair_total(&self) -> f64 {
        self.z1 + self.z2
    }

    /// Relative position inside the two-person subgroup, `z1 / (z1 + z2)`.
    pub fn pair_ratio(&self) -> Option<f64> {
        let s = self.pair_total();
        (s > 0.0).then(|| self.z1 / s)
    }

    /// The point with the two-person subgroup's incomes replaced by their mean.
    pub fn smoothed(&self) -> SharePoint3 {
        let m = 0.5 * (self.z1 + self.z2);
        SharePoint3 { z1: m, z2: m, z3: self.z3 }
    }

    pub fn swapped(&self) -> SharePoint3 {
        SharePoint3 { z1: self.z2, z2: self.z1, z3: self.z3 }
    }

    pub fn distance(&self, other: &SharePoint3) -> f64 {
        let d1 = self.z1 - other.z1;
        let d2 = self.z2 - other.z2;
        let d3 = self.z3 - other.z3;
        (d1 * d1 + d2 * d2 + d3 * d3).sqrt()
    }

    /// Whether the singleton's share lies strictly between the pair's shares.
    pub fn rank_overlap(&self) -> bool {
        let lo = self.z1.min(self.z2);
        let hi = self.z1.max(self.z2);
        lo < self.z3 && self.z3 < hi
    }
}

impl fmt::Display for SharePoint3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.z1, self.z2, self.z3)
    }
}

/// `x ln(a x)` with the continuous extension `0` at `x = 0`.
pub(crate) fn x_ln_ax(x: f64, a: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * (a * x).ln()
    }
}

fn check_shares(shares: &[f64]) -> Result<()> {
    if shares.is_empty() {
        return Err(Error::InvalidShares("empty share vector".into()));
    }
    if shares.iter().any(|z| !z.is_finite() || *z < 0.0) {
        return Err(Error::InvalidShares(format!("{shares:?} has a negative or non-finite entry")));
    }
    let sum: f64 = shares.iter().sum();
    if (sum - 1.0).abs() > SHARE_SUM_TOL {
        return Err(Error::InvalidShares(format!("{shares:?} sums to {sum}")));
    }
    Ok(())
}

/// Index value `I^(n)` on a vector of shares, `n = shares.len()`.
pub fn measure_value(m: MeasureId, shares: &[f64]) -> Result<f64> {
    check_shares(shares)?;
    let n = shares.len();
    if n == 1 {
        return Ok(0.0);
    }
    let nf = n as f64;
    let value = match m {
        MeasureId::Mld => {
            if shares.contains(&0.0) {
                return Err(Error::Domain(m));
            }
            -shares.iter().map(|&z| (nf * z).ln()).sum::<f64>() / nf
        }
        MeasureId::Theil => shares.iter().map(|&z| x_ln_ax(z, nf)).sum(),
        MeasureId::Gini => {
            // Ordered double sum; the mean share is 1/n, so 1/(2 n² μ) = 1/(2n).
            let mut total = 0.0;
            for &a in shares {
                for &b in shares {
                    total += (a - b).abs();
                }
            }
            total / (2.0 * nf)
        }
        MeasureId::Cv => {
            let ss: f64 = shares.iter().map(|&z| (nf * z - 1.0).powi(2)).sum();
            (ss / (nf - 1.0)).sqrt()
        }
    };
    Ok(value)
}

/// Index value on raw incomes.
pub fn index_of_incomes(m: MeasureId, incomes: &[f64]) -> Result<f64> {
    measure_value(m, &normalize(incomes)?)
}

/// Three-person index `I^(3)(z)`.
pub fn index3(m: MeasureId, z: &SharePoint3) -> Result<f64> {
    measure_value(m, &z.as_array())
}

/// Two-person index on the normalized pair `(t, 1 - t)`.
pub fn pair_index(m: MeasureId, t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidShares(format!("pair ratio {t} outside [0, 1]")));
    }
    measure_value(m, &[t, 1.0 - t])
}

/// Kullback–Leibler divergence `Σ p_i ln(p_i / q_i)` with `0 ln 0 = 0`.
///
/// Returns `+∞` when `p` puts mass where `q` does not.
pub fn kl_divergence(p: &[f64], q: &[f64]) -> f64 {
    assert_eq!(p.len(), q.len(), "distributions must have the same length");
    p.iter()
        .zip(q)
        .map(|(&pi, &qi)| {
            if pi == 0.0 {
                0.0
            } else if qi == 0.0 {
                f64::INFINITY
            } else {
                pi * (pi / qi).ln()
            }
        })
        .sum()
}
