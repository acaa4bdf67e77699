use thiserror::Error;

use crate::measures::MeasureId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("income vector is empty")]
    EmptyIncomes,

    #[error("income {index} is negative or not finite ({value})")]
    InvalidIncome { index: usize, value: f64 },

    #[error("total income must be strictly positive (got {0})")]
    ZeroTotalIncome(f64),

    #[error("not a point of the simplex: {0}")]
    InvalidShares(String),

    #[error("{0} is undefined when some share is zero")]
    Domain(MeasureId),

    #[error("the two-person subgroup has zero total share")]
    DegenerateSubgroup,

    #[error("weighting function returned {0}, expected a finite positive value")]
    InvalidWeight(f64),

    #[error("point ({x}, {y}) lies outside the simplex triangle")]
    OutsideTriangle { x: f64, y: f64 },

    #[error("closed forms exist only for population- and income-share weighting")]
    Unsupported,

    #[error("no root: {0}")]
    NoRoot(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("residual {value:e} exceeds tolerance {tol:e}")]
    ToleranceExceeded { value: f64, tol: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
