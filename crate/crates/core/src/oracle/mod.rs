//! Brute-force ground truth for the closed-form Tor table.
//!
//! Nothing here consults [`crate::tor`]: finitely presented modules are
//! resolved explicitly and classified through the Smith normal form, and the
//! non-finitely-generated atoms are replaced by explicit direct systems of
//! finite modules whose limits are computed element by element.

pub mod colimit;
pub mod compare;
pub mod matrix;
pub mod presentation;
pub mod resolution;

pub use matrix::{left_kernel, smith_normal_form, verify_smith, Matrix, Smith};
pub use presentation::Presentation;
pub use resolution::{fg_tor_oracle, fg_tor_oracle_with_budget};
pub use colimit::{fraction_tor_oracle, prufer_tor_oracle, LimitResult};
pub use compare::{oracle_compare, OracleCase, OracleGrid, OracleReport, OracleRoute};
