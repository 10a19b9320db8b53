pub mod coeff;
pub mod laurent;
pub mod matrix;
pub mod scalar;

pub use laurent::{ChartSpec, ExpansionError, LaurentExpansion, Point};
pub use scalar::Scalar;
