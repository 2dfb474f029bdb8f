//! Statistical screening: correlation tables, unit-root tests, and Granger
//! causality.

mod adf;
mod granger;
mod linreg;
mod pearson;

pub use adf::{adf_test, AdfResult, CriticalValues, RegressionKind};
pub use granger::{granger_screen, granger_test, granger_test_f, AdfScreenRow, GrangerFResult, GrangerResult, GrangerScreen};
pub use linreg::{ols, Ols};
pub use pearson::{correlation_table, pearson, CorrelationCell, CorrelationEntry, CorrelationTable};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum StatError {
    #[error("series `{0}` has zero variance")]
    ZeroVariance(String),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("need at least {need} observations, got {got}")]
    SeriesTooShort { need: usize, got: usize },
    #[error("regression design matrix is singular")]
    SingularRegression,
    #[error(transparent)]
    Series(#[from] crate::series::SeriesError),
}
