//! Exact counting of ±1 matrices whose row and column sums all lie in {−1, 0, 1}.
//!
//! Three independent routes compute α(m, n), the number of such m×n
//! matrices: exhaustive enumeration ([`oracle`]), a column-by-column DP over
//! partial row sums ([`engine`]), and closed forms for m ≤ 4 ([`formulas`]).
//! [`walks`] maps the three-row case onto lattice walks, [`majorization`]
//! checks how row-profile counts order under majorization, and
//! [`asymptotics`] builds the exact ratio and normalization series.

pub mod asymptotics;
pub mod bfile;
pub mod checks;
pub mod count;
pub mod engine;
pub mod error;
pub mod fixed;
pub mod formulas;
pub mod layer;
pub mod majorization;
pub mod matrix;
pub mod oracle;
pub mod walks;

pub use count::BigCount;
pub use error::{Error, Result};
pub use matrix::{Axis, Sign, SignMatrix, SumVector};
