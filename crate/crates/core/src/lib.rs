//! Global optimization of max-plus functions `F(x) = A ⊗ x` over a single
//! affine constraint `Σ k_j x_j = c` with nonnegative coefficients.
//!
//! ```
//! use maxplus_opt::{ExtScalar::*, MaxPlusMatrix, OptProblem, VarConstraint, DEFAULT_TOL};
//!
//! let a = MaxPlusMatrix::from_rows(&[
//!     [Finite(1.0), Finite(2.0), Finite(-2.0)],
//!     [Finite(-1.0), Finite(0.0), NegInf],
//!     [Finite(0.0), Finite(1.0), Finite(3.0)],
//! ])?;
//! let problem = OptProblem::new(a, vec![2.0, 1.0, 0.0], 2.0)?;
//! let report = problem.solve(DEFAULT_TOL)?;
//!
//! assert!(report.solvable && !report.unique);
//! assert_eq!(report.greatest_subsolution, vec![Finite(1.0), Finite(0.0), Finite(-2.0)]);
//! assert_eq!(
//!     report.solutions.unwrap().constraints()[2],
//!     VarConstraint::AtMost(Finite(-2.0)),
//! );
//! # Ok::<(), maxplus_opt::Error>(())
//! ```

pub mod error;
pub mod global_opt;
pub mod instances;
pub mod matrix;
pub mod oracle;
pub mod residuation;
pub mod scalar;

pub use error::{Error, Result};
pub use global_opt::{
    check_criterion, construct_alternative, Evaluation, OptProblem, PreprocessReport,
    SolutionSet, SolveReport, VarConstraint, DEFAULT_TOL,
};
pub use matrix::{vec_leq, MaxPlusMatrix};
pub use oracle::{SampleConfig, Verdict};
pub use residuation::LinearSystem;
pub use scalar::ExtScalar;
