//! Within/between components of a three-person index under a weighting scheme.
//!
//! For a point `z` split into the pair `{1, 2}` and the singleton `{3}`, write
//! `z̄ = ((z1+z2)/2, (z1+z2)/2, z3)` and `t = z1 / (z1 + z2)`. With pair weight
//! `w` (`2/3` under population-share weighting, `z1 + z2` under income-share
//! weighting, `d(z1, z2)` for a custom scheme):
//!
//! * within  = `(I3(z) - I3(z̄)) / w`, except that population-share weighting
//!   reports the bare numerator `I3(z) - I3(z̄)`;
//! * between = `I3(z) - w · I2(t, 1 - t)`.
//!
//! [`component_value`] computes these from the indices directly,
//! [`closed_form`] evaluates the hand-derived expressions, and the two are
//! checked against each other in the test suite.

use std::f64::consts::SQRT_2;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{index3, kl_divergence, measure_value, x_ln_ax, IncomeVector, MeasureId, SharePoint3};

const SQRT_3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Within,
    Between,
}

impl Part {
    pub const ALL: [Part; 2] = [Part::Within, Part::Between];

    pub fn key(self) -> &'static str {
        match self {
            Part::Within => "within",
            Part::Between => "between",
        }
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for Part {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "within" | "w" | "g1" => Ok(Part::Within),
            "between" | "b" | "g2" => Ok(Part::Between),
            other => Err(Error::InvalidArgument(format!("unknown component `{other}`"))),
        }
    }
}

/// A named pair weight `d(z1, z2)`.
#[derive(Clone)]
pub struct Weighting {
    name: String,
    weight: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
}

impl Weighting {
    pub fn new(name: impl Into<String>, weight: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        Weighting { name: name.into(), weight: Arc::new(weight) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, z1: f64, z2: f64) -> f64 {
        (self.weight)(z1, z2)
    }
}

impl fmt::Debug for Weighting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Weighting").field("name", &self.name).finish_non_exhaustive()
    }
}

#[derive(Debug, Clone)]
pub enum Scheme {
    /// Population-share weighting: the pair carries weight `2/3`.
    Population,
    /// Income-share weighting: the pair carries weight `z1 + z2`.
    Income,
    Custom(Weighting),
}

impl Scheme {
    pub const CLASSICAL: [Scheme; 2] = [Scheme::Population, Scheme::Income];

    pub fn key(&self) -> &str {
        match self {
            Scheme::Population => "dcp",
            Scheme::Income => "dci",
            Scheme::Custom(w) => w.name(),
        }
    }

    /// Weight of the two-person subgroup at `z`.
    pub fn pair_weight(&self, z: &SharePoint3) -> Result<f64> {
        let w = match self {
            Scheme::Population => 2.0 / 3.0,
            Scheme::Income => z.pair_total(),
            Scheme::Custom(d) => d.eval(z.z1, z.z2),
        };
        if !w.is_finite() || w < 0.0 {
            return Err(Error::InvalidWeight(w));
        }
        Ok(w)
    }

    pub fn is_population(&self) -> bool {
        matches!(self, Scheme::Population)
    }

    pub fn is_income(&self) -> bool {
        matches!(self, Scheme::Income)
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scheme::Population => f.write_str("DCP"),
            Scheme::Income => f.write_str("DCI"),
            Scheme::Custom(w) => write!(f, "custom({})", w.name()),
        }
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dcp" | "population" | "pop" => Ok(Scheme::Population),
            "dci" | "income" | "inc" => Ok(Scheme::Income),
            other => Err(Error::InvalidArgument(format!("unknown scheme `{other}`"))),
        }
    }
}

/// Anything that can be evaluated pointwise on the simplex and diagnosed.
pub trait Component: Sync {
    fn measure(&self) -> MeasureId;
    fn part(&self) -> Part;
    fn evaluate(&self, z: &SharePoint3) -> Result<f64>;
    fn label(&self) -> String;
}

#[derive(Debug, Clone)]
pub struct ComponentSpec {
    pub measure: MeasureId,
    pub scheme: Scheme,
    pub part: Part,
}

impl ComponentSpec {
    pub fn new(measure: MeasureId, scheme: Scheme, part: Part) -> Self {
        ComponentSpec { measure, scheme, part }
    }

    pub fn within(measure: MeasureId, scheme: Scheme) -> Self {
        Self::new(measure, scheme, Part::Within)
    }

    pub fn between(measure: MeasureId, scheme: Scheme) -> Self {
        Self::new(measure, scheme, Part::Between)
    }

    /// The sixteen classical combinations, measure-major.
    pub fn classical() -> Vec<ComponentSpec> {
        let mut out = Vec::with_capacity(16);
        for m in MeasureId::ALL {
            for s in Scheme::CLASSICAL {
                for p in Part::ALL {
                    out.push(ComponentSpec::new(m, s.clone(), p));
                }
            }
        }
        out
    }
}

impl Component for ComponentSpec {
    fn measure(&self) -> MeasureId {
        self.measure
    }

    fn part(&self) -> Part {
        self.part
    }

    fn evaluate(&self, z: &SharePoint3) -> Result<f64> {
        component_value(self, z)
    }

    fn label(&self) -> String {
        format!("{}/{}/{}", self.measure.key(), self.scheme.key(), self.part.key())
    }
}

/// `I3(z) - I3(z̄)`: what smoothing the pair removes from the index.
pub fn within_numerator(m: MeasureId, z: &SharePoint3) -> Result<f64> {
    Ok(index3(m, z)? - index3(m, &z.smoothed())?)
}

/// Component value computed from the indices themselves.
pub fn component_value(spec: &ComponentSpec, z: &SharePoint3) -> Result<f64> {
    let m = spec.measure;
    match spec.part {
        Part::Within => {
            let numerator = within_numerator(m, z)?;
            match &spec.scheme {
                Scheme::Population => Ok(numerator),
                scheme => {
                    if z.pair_total() <= 0.0 {
                        return Err(Error::DegenerateSubgroup);
                    }
                    let w = scheme.pair_weight(z)?;
                    if w <= 0.0 {
                        return Err(Error::InvalidWeight(w));
                    }
                    Ok(numerator / w)
                }
            }
        }
        Part::Between => {
            let s = z.pair_total();
            if s <= 0.0 {
                return Err(Error::DegenerateSubgroup);
            }
            let w = spec.scheme.pair_weight(z)?;
            // Both pair shares divided out directly; `1 - t` would lose a tiny z2.
            Ok(index3(m, z)? - w * measure_value(m, &[z.z1 / s, z.z2 / s])?)
        }
    }
}

fn positive(m: MeasureId, z: &SharePoint3) -> Result<()> {
    if z.z1 > 0.0 && z.z2 > 0.0 && z.z3 > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(m))
    }
}

fn pair(z: &SharePoint3) -> Result<(f64, f64)> {
    let s = z.pair_total();
    if s <= 0.0 {
        return Err(Error::DegenerateSubgroup);
    }
    Ok((s, z.z1 / s))
}

fn gini_pairwise(z: &SharePoint3) -> f64 {
    (z.z1 - z.z2).abs() + (z.z1 - z.z3).abs() + (z.z2 - z.z3).abs()
}

fn cv3(z: &SharePoint3) -> f64 {
    let ss: f64 = z.as_array().iter().map(|&v| (3.0 * v - 1.0).powi(2)).sum();
    (0.5 * ss).sqrt()
}

fn theil3(z: &SharePoint3) -> f64 {
    x_ln_ax(z.z1, 3.0) + x_ln_ax(z.z2, 3.0) + x_ln_ax(z.z3, 3.0)
}

/// Hand-derived expressions for the sixteen classical components.
///
/// Custom schemes have no closed form and return [`Error::Unsupported`].
pub fn closed_form(spec: &ComponentSpec, z: &SharePoint3) -> Result<f64> {
    use MeasureId::*;
    use Part::*;

    let income = match spec.scheme {
        Scheme::Population => false,
        Scheme::Income => true,
        Scheme::Custom(_) => return Err(Error::Unsupported),
    };
    let (z1, z2, z3) = (z.z1, z.z2, z.z3);
    let gap = (z1 - z2).abs();

    let value = match (spec.measure, spec.part, income) {
        (Mld, Within, false) => {
            positive(Mld, z)?;
            let (_, t) = pair(z)?;
            -(4.0 * t * (1.0 - t)).ln() / 3.0
        }
        (Mld, Between, false) => {
            positive(Mld, z)?;
            (4.0f64 / 27.0).ln() / 3.0 - z3.ln() / 3.0 - 2.0 * (1.0 - z3).ln() / 3.0
        }
        (Mld, Within, true) => {
            positive(Mld, z)?;
            let (s, t) = pair(z)?;
            -(4.0 * t * (1.0 - t)).ln() / (3.0 * s)
        }
        (Mld, Between, true) => {
            positive(Mld, z)?;
            let (s, _) = pair(z)?;
            -((3.0 * z1).ln() + (3.0 * z2).ln() + (3.0 * z3).ln()) / 3.0 + 0.5 * s * ((2.0 * z1 / s).ln() + (2.0 * z2 / s).ln())
        }
        (Gini, Within, false) => {
            if z3 >= z1.max(z2) || z3 <= z1.min(z2) {
                gap / 3.0
            } else {
                2.0 * gap / 3.0 - (3.0 * z3 - 1.0).abs() / 3.0
            }
        }
        (Gini, Between, false) => {
            let (s, _) = pair(z)?;
            gini_pairwise(z) / 3.0 - gap / (3.0 * s)
        }
        (Gini, Within, true) => {
            let (s, t) = pair(z)?;
            let rel_gap = (t - (1.0 - t)).abs();
            if z3 >= z1.max(z2) || z3 <= z1.min(z2) {
                rel_gap / 3.0
            } else {
                2.0 * rel_gap / 3.0 - (3.0 * z3 - 1.0).abs() / (3.0 * s)
            }
        }
        (Gini, Between, true) => gini_pairwise(z) / 3.0 - 0.5 * gap,
        (Cv, Within, false) => cv3(z) - 0.5 * SQRT_3 * (3.0 * z3 - 1.0).abs(),
        (Cv, Between, false) => {
            let (_, t) = pair(z)?;
            cv3(z) - 2.0 * SQRT_2 / 3.0 * (2.0 * t - 1.0).abs()
        }
        (Cv, Within, true) => {
            if 1.0 - z3 <= 0.0 {
                return Err(Error::DegenerateSubgroup);
            }
            let off = z3 - 1.0 / 3.0;
            1.5 / (1.0 - z3) * (((z1 - z2).powi(2) + 3.0 * off * off).sqrt() - SQRT_3 * off.abs())
        }
        (Cv, Between, true) => {
            let (s, t) = pair(z)?;
            cv3(z) - s * SQRT_2 * (2.0 * t - 1.0).abs()
        }
        (Theil, Within, false) => {
            let s = z.pair_total();
            x_ln_ax(z1, 3.0) + x_ln_ax(z2, 3.0) - x_ln_ax(s, 1.5)
        }
        (Theil, Between, false) => {
            let (s, _) = pair(z)?;
            theil3(z) - 2.0 / 3.0 * (x_ln_ax(z1 / s, 2.0) + x_ln_ax(z2 / s, 2.0))
        }
        (Theil, Within, true) => {
            let (_, t) = pair(z)?;
            kl_divergence(&[t, 1.0 - t], &[0.5, 0.5])
        }
        (Theil, Between, true) => x_ln_ax(1.0 - z3, 1.5) + x_ln_ax(z3, 3.0),
    };
    Ok(value)
}

/// The Theil within component under population-share weighting in its
/// divergence form, `(z1 + z2) · KL((t, 1-t) ‖ (½, ½))`.
pub fn theil_within_kl(z: &SharePoint3) -> Result<f64> {
    let (s, t) = pair(z)?;
    Ok(s * kl_divergence(&[t, 1.0 - t], &[0.5, 0.5]))
}

/// Assignment of `n` individuals to non-empty, disjoint subgroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    groups: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(groups: Vec<Vec<usize>>, n: usize) -> Result<Self> {
        if groups.is_empty() {
            return Err(Error::InvalidPartition("no groups".into()));
        }
        let mut seen = vec![false; n];
        for (g, members) in groups.iter().enumerate() {
            if members.is_empty() {
                return Err(Error::InvalidPartition(format!("group {g} is empty")));
            }
            for &i in members {
                if i >= n {
                    return Err(Error::InvalidPartition(format!("index {i} out of range for n = {n}")));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidPartition(format!("individual {i} assigned twice")));
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("individual {i} is unassigned")));
        }
        Ok(Partition { groups })
    }

    /// Builds a partition from one group label per individual. Labels are
    /// renumbered in order of first appearance.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let mut order: Vec<usize> = Vec::new();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (i, &label) in labels.iter().enumerate() {
            match order.iter().position(|&l| l == label) {
                Some(g) => groups[g].push(i),
                None => {
                    order.push(label);
                    groups.push(vec![i]);
                }
            }
        }
        Partition::new(groups, labels.len())
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn population(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Decomposition {
    pub total: f64,
    pub within_sum: f64,
    pub between: f64,
    /// `total - within_sum - between`, signed.
    pub residual: f64,
}

/// Decomposes `I^(n)` of a whole population over an arbitrary partition.
///
/// Subgroup indices are weighted by `n_i / n` (population shares) or
/// `Y_i / Y` (income shares). The between term is the index of the
/// distribution in which every individual receives their subgroup's mean
/// income.
pub fn decompose_general(incomes: &IncomeVector, parts: &Partition, m: MeasureId, scheme: &Scheme) -> Result<Decomposition> {
    if matches!(scheme, Scheme::Custom(_)) {
        return Err(Error::Unsupported);
    }
    if parts.population() != incomes.len() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} individuals, income vector has {}",
            parts.population(),
            incomes.len()
        )));
    }
    let y = incomes.values();
    let n = y.len() as f64;
    let grand_total = incomes.total();
    let total = measure_value(m, &incomes.shares())?;

    let mut within_sum = 0.0;
    let mut smoothed = vec![0.0; y.len()];
    for members in parts.groups() {
        let group_total: f64 = members.iter().map(|&i| y[i]).sum();
        let size = members.len() as f64;
        let mean = group_total / size;
        for &i in members {
            smoothed[i] = mean;
        }
        let weight = match scheme {
            Scheme::Population => size / n,
            _ => group_total / grand_total,
        };
        if group_total > 0.0 {
            let shares: Vec<f64> = members.iter().map(|&i| y[i] / group_total).collect();
            within_sum += weight * measure_value(m, &shares)?;
        } else if m == MeasureId::Mld {
            return Err(Error::Domain(m));
        }
    }
    let smoothed_total: f64 = smoothed.iter().sum();
    let smoothed_shares: Vec<f64> = smoothed.iter().map(|v| v / smoothed_total).collect();
    let between = measure_value(m, &smoothed_shares)?;
    Ok(Decomposition { total, within_sum, between, residual: total - within_sum - between })
}

/// Gini decomposition whose within-group term depends on the absolute income
/// gap inside the pair: `within = (2/3)|z1 - z2|`, `between = G(z) - within`.
pub fn hs_gini_components(z: &SharePoint3) -> (f64, f64) {
    let within = 2.0 / 3.0 * (z.z1 - z.z2).abs();
    (within, gini_pairwise(z) / 3.0 - within)
}

/// One side of [`hs_gini_components`] as a diagnosable component.
#[derive(Debug, Clone, Copy)]
pub struct HsGini(pub Part);

impl Component for HsGini {
    fn measure(&self) -> MeasureId {
        MeasureId::Gini
    }

    fn part(&self) -> Part {
        self.0
    }

    fn evaluate(&self, z: &SharePoint3) -> Result<f64> {
        let (w, b) = hs_gini_components(z);
        Ok(match self.0 {
            Part::Within => w,
            Part::Between => b,
        })
    }

    fn label(&self) -> String {
        format!("gini/hs/{}", self.0.key())
    }
}
