//! Geometric diagnostics for within/between decompositions of inequality
//! indices on the three-person income-share simplex.
//!
//! The crate covers four indices (mean log deviation, Theil, Gini and the
//! coefficient of variation) under population-share and income-share
//! weighting, plus caller-supplied pair weights:
//!
//! * [`measures`] evaluates the indices for any population size;
//! * [`decomp`] builds the within/between components three ways (from the
//!   indices, from closed forms, from a custom weight) and decomposes
//!   populations of any size over arbitrary partitions;
//! * [`simplex`] maps shares to the plane and generates grids, rays, slices
//!   and curves;
//! * [`diagnostics`] turns the eight decomposability properties into numeric
//!   checks with violation magnitudes and witnesses;
//! * [`zerosets`] constructs the zero curves of the between components;
//! * [`render`] extracts contours and writes SVG heat maps;
//! * [`cli`] backs the `ineq-simplex` binary.

pub mod cli;
pub mod decomp;
pub mod diagnostics;
pub mod error;
pub mod measures;
pub mod render;
pub mod simplex;
pub mod zerosets;

pub use decomp::{
    closed_form, component_value, decompose_general, hs_gini_components, within_numerator, Component, ComponentSpec, Decomposition, HsGini,
    Part, Partition, Scheme, Weighting,
};
pub use diagnostics::{CheckConfig, PropertyId, PropertyVerdict};
pub use error::{Error, Result};
pub use measures::{index3, measure_value, normalize, IncomeVector, MeasureId, SharePoint3};
pub use simplex::{from_bary, to_bary, BaryXY, GridSpec, ScalarField};
