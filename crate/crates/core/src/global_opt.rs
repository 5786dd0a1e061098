//! Minimisation of `F(x) = A ⊗ x` over the hyperplane `Σ k_j x_j = c`.
//!
//! The pipeline run by [`OptProblem::solve`] is
//!
//! 1. [`OptProblem::preprocess`]: drop `eps` rows of `A` and eliminate the
//!    variables whose column is all `eps` and whose coefficient is zero.
//!    Neither affects the optimal solutions.
//! 2. [`OptProblem::greatest_lower_bound`]: `b_i = (Σ_{j∈J} k_j a_ij + c) / Σ_{j∈J} k_j`
//!    where `J = {j | k_j > 0}`. Every `x` on the hyperplane has `F(x) ⩾ b`.
//! 3. `x* = x*(A, b)`, the greatest subsolution of `A ⊗ x = b`.
//! 4. [`check_criterion`]: the problem is solvable iff `b` and `x*` are finite
//!    and `Σ_{j∈J} k_j x*_j = c`. In that case `x*` is the greatest globally
//!    optimal solution and the optimal set is
//!    `{x | x_j = x*_j for k_j > 0, x_j ⩽ x*_j for k_j = 0}`.
//!
//! The optimum is unique iff every coefficient is positive. Variables removed
//! in step 1 are unconstrained, so their presence also makes it non-unique.
//!
//! Indices are 0-based throughout.

use crate::error::{dims, Error, Result};
use crate::matrix::MaxPlusMatrix;
use crate::residuation::LinearSystem;
use crate::scalar::{ExtScalar, Finite, NegInf, PosInf};

/// Absolute tolerance on the solvability criterion sum.
pub const DEFAULT_TOL: f64 = 1e-9;

/// `min F(x) = A ⊗ x` subject to `Σ k_j x_j = c`.
#[derive(Debug, Clone, PartialEq)]
pub struct OptProblem {
    a: MaxPlusMatrix,
    k: Vec<f64>,
    c: f64,
}

impl OptProblem {
    /// Validates the data: `A` over `R ∪ {-inf}`, one finite `k_j ⩾ 0` per
    /// column with at least one positive, and finite `c`.
    pub fn new(a: MaxPlusMatrix, k: Vec<f64>, c: f64) -> Result<Self> {
        if a.contains_pos_inf() {
            return Err(Error::InvalidProblem("matrix entries must be in R ∪ {-inf}".into()));
        }
        if k.len() != a.cols() {
            return Err(Error::DimensionMismatch {
                expected: format!("{} coefficients", a.cols()),
                found: format!("{}", k.len()),
            });
        }
        if let Some(bad) = k.iter().find(|kj| !kj.is_finite() || **kj < 0.0) {
            return Err(Error::InvalidProblem(format!(
                "coefficients must be finite and nonnegative, got {bad}"
            )));
        }
        if k.iter().all(|kj| *kj == 0.0) {
            return Err(Error::InvalidProblem("k must not be all zero".into()));
        }
        if !c.is_finite() {
            return Err(Error::InvalidProblem(format!("c must be finite, got {c}")));
        }
        Ok(Self { a, k, c })
    }

    pub fn matrix(&self) -> &MaxPlusMatrix {
        &self.a
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.k
    }

    pub fn constant(&self) -> f64 {
        self.c
    }

    pub fn num_rows(&self) -> usize {
        self.a.rows()
    }

    pub fn num_vars(&self) -> usize {
        self.a.cols()
    }

    /// `J = {j | k_j > 0}`.
    pub fn support(&self) -> Vec<usize> {
        (0..self.k.len()).filter(|&j| self.k[j] > 0.0).collect()
    }

    /// No `eps` row, and every `eps` column carries a positive coefficient.
    pub fn satisfies_assumptions(&self) -> bool {
        (0..self.a.rows()).all(|i| !self.a.is_eps_row(i))
            && (0..self.a.cols()).all(|j| self.k[j] > 0.0 || !self.a.is_eps_column(j))
    }

    pub fn preprocess(&self) -> Result<PreprocessReport> {
        let (dropped_rows, kept_rows): (Vec<usize>, Vec<usize>) =
            (0..self.a.rows()).partition(|&i| self.a.is_eps_row(i));
        if kept_rows.is_empty() {
            return Err(Error::EmptyObjective);
        }
        let (eliminated_vars, kept_vars): (Vec<usize>, Vec<usize>) = (0..self.a.cols())
            .partition(|&j| self.k[j] == 0.0 && self.a.is_eps_column(j));
        let reduced = OptProblem {
            a: self.a.select(&kept_rows, &kept_vars)?,
            k: kept_vars.iter().map(|&j| self.k[j]).collect(),
            c: self.c,
        };
        debug_assert!(reduced.satisfies_assumptions());
        Ok(PreprocessReport {
            original_rows: self.a.rows(),
            original_vars: self.a.cols(),
            dropped_rows,
            eliminated_vars,
            kept_rows,
            kept_vars,
            reduced,
        })
    }

    fn require_assumptions(&self) -> Result<()> {
        if self.satisfies_assumptions() {
            Ok(())
        } else {
            Err(Error::Domain(
                "problem has an eps row or an eps column with zero coefficient; preprocess first"
                    .into(),
            ))
        }
    }

    /// Greatest lower bound `b` of `F` on the hyperplane, summing over `J` only.
    ///
    /// `b_i = eps` exactly when some `a_ij = eps` with `j ∈ J`.
    pub fn greatest_lower_bound(&self) -> Result<Vec<ExtScalar>> {
        self.require_assumptions()?;
        let b = self.weighted_mean_bound(&self.support());
        debug_assert_eq!(Ok(&b), self.greatest_lower_bound_full().as_ref());
        Ok(b)
    }

    /// The same bound summed over every column, applying `0 * (±inf) = 0` to
    /// the zero coefficients.
    pub fn greatest_lower_bound_full(&self) -> Result<Vec<ExtScalar>> {
        self.require_assumptions()?;
        let all: Vec<usize> = (0..self.num_vars()).collect();
        Ok(self.weighted_mean_bound(&all))
    }

    fn weighted_mean_bound(&self, cols: &[usize]) -> Vec<ExtScalar> {
        let total: f64 = cols.iter().map(|&j| self.k[j]).sum();
        (0..self.a.rows())
            .map(|i| {
                let weighted = cols.iter().fold(Finite(0.0), |acc, &j| {
                    let term = ExtScalar::ext_scale(self.k[j], self.a.get(i, j))
                        .expect("coefficients are validated nonnegative");
                    acc.otimes(term)
                });
                match weighted.otimes(Finite(self.c)) {
                    Finite(v) => Finite(v / total),
                    NegInf => NegInf,
                    PosInf => unreachable!("A has no +inf entries and c is finite"),
                }
            })
            .collect()
    }

    /// `F(x)` together with `Σ k_j x_j` for a real point `x`.
    pub fn evaluate(&self, x: &[f64]) -> Result<Evaluation> {
        if x.len() != self.num_vars() {
            return Err(Error::DimensionMismatch {
                expected: format!("point of length {}", self.num_vars()),
                found: format!("length {}", x.len()),
            });
        }
        let xs = x
            .iter()
            .map(|&v| match ExtScalar::new(v)? {
                Finite(v) => Ok(Finite(v)),
                _ => Err(Error::Domain(format!("point components must be finite, got {v}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Evaluation {
            objective: self.a.otimes_vec(&xs)?,
            constraint_sum: self.k.iter().zip(x).map(|(k, x)| k * x).sum(),
        })
    }

    /// Whether `x` lies on the constraint hyperplane within `tol`.
    pub fn is_feasible(&self, x: &[f64], tol: f64) -> bool {
        x.len() == self.num_vars()
            && (self.k.iter().zip(x).map(|(k, x)| k * x).sum::<f64>() - self.c).abs() <= tol
    }

    /// Runs the full pipeline.
    pub fn solve(&self, tol: f64) -> Result<SolveReport> {
        let preprocess = self.preprocess()?;
        let reduced = &preprocess.reduced;
        let lower_bound = reduced.greatest_lower_bound()?;
        let system = LinearSystem::new(reduced.a.clone(), lower_bound.clone())?;
        let xstar = system.greatest_subsolution();
        let criterion_sum = criterion_sum(reduced, &xstar, &lower_bound);
        let solvable = check_criterion(reduced, &xstar, &lower_bound, tol);

        let zero_coeff = reduced.k.iter().position(|kj| *kj == 0.0);
        let unique = solvable && zero_coeff.is_none() && preprocess.eliminated_vars.is_empty();
        let (solutions, witness) = if solvable {
            let set = SolutionSet::from_optimum(&preprocess, &xstar);
            let witness = zero_coeff
                .map(|j0| construct_alternative(reduced, &xstar, j0))
                .transpose()?;
            (Some(set), witness)
        } else {
            (None, None)
        };

        Ok(SolveReport {
            lower_bound,
            greatest_subsolution: xstar,
            criterion_sum,
            solvable,
            unique,
            solutions,
            witness,
            tol,
            preprocess,
        })
    }
}

/// `F(x)` and the constraint value at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub objective: Vec<ExtScalar>,
    pub constraint_sum: f64,
}

/// Outcome of [`OptProblem::preprocess`].
#[derive(Debug, Clone, PartialEq)]
pub struct PreprocessReport {
    pub original_rows: usize,
    pub original_vars: usize,
    /// Rows of `A` that were entirely `eps`.
    pub dropped_rows: Vec<usize>,
    /// Variables with an all-`eps` column and a zero coefficient.
    pub eliminated_vars: Vec<usize>,
    /// Original index of each row of `reduced`.
    pub kept_rows: Vec<usize>,
    /// Original index of each variable of `reduced`.
    pub kept_vars: Vec<usize>,
    pub reduced: OptProblem,
}

impl PreprocessReport {
    pub fn is_identity(&self) -> bool {
        self.dropped_rows.is_empty() && self.eliminated_vars.is_empty()
    }

    /// Maps a bound on the reduced rows back to the original rows. Dropped
    /// rows get `eps`, which is what `F` evaluates to there.
    pub fn lift_bound(&self, b: &[ExtScalar]) -> Vec<ExtScalar> {
        assert_eq!(b.len(), self.kept_rows.len());
        let mut out = vec![NegInf; self.original_rows];
        for (&i, &v) in self.kept_rows.iter().zip(b) {
            out[i] = v;
        }
        out
    }

    /// Maps a reduced point back to the original variables, filling
    /// eliminated variables with `free_value`.
    pub fn lift_point<T: Copy>(&self, x: &[T], free_value: T) -> Vec<T> {
        assert_eq!(x.len(), self.kept_vars.len());
        let mut out = vec![free_value; self.original_vars];
        for (&j, &v) in self.kept_vars.iter().zip(x) {
            out[j] = v;
        }
        out
    }
}

/// Constraint on one variable in the set of all optimal solutions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VarConstraint {
    /// `x_j = v` (positive coefficient).
    EqualTo(ExtScalar),
    /// `x_j ⩽ v` (zero coefficient).
    AtMost(ExtScalar),
    /// Any real value (eliminated in preprocessing).
    Free,
}

/// The set of all globally optimal solutions, one constraint per original variable.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSet {
    constraints: Vec<VarConstraint>,
}

impl SolutionSet {
    fn from_optimum(pre: &PreprocessReport, xstar: &[ExtScalar]) -> Self {
        let reduced: Vec<VarConstraint> = xstar
            .iter()
            .zip(&pre.reduced.k)
            .map(|(&v, &kj)| {
                if kj > 0.0 {
                    VarConstraint::EqualTo(v)
                } else {
                    VarConstraint::AtMost(v)
                }
            })
            .collect();
        Self { constraints: pre.lift_point(&reduced, VarConstraint::Free) }
    }

    pub fn constraints(&self) -> &[VarConstraint] {
        &self.constraints
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    /// Membership of a real point, with `tol` slack on each constraint.
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        x.len() == self.constraints.len()
            && self.constraints.iter().zip(x).all(|(con, &xj)| match *con {
                VarConstraint::EqualTo(v) => v.finite().is_some_and(|v| (xj - v).abs() <= tol),
                VarConstraint::AtMost(v) => Finite(xj) <= v || v.finite().is_some_and(|v| xj <= v + tol),
                VarConstraint::Free => true,
            })
    }

    /// The greatest member, with `Free` variables set to `free_value`.
    /// `None` if some bound is not finite.
    pub fn greatest_member(&self, free_value: f64) -> Option<Vec<f64>> {
        self.constraints
            .iter()
            .map(|con| match con {
                VarConstraint::EqualTo(v) | VarConstraint::AtMost(v) => v.finite(),
                VarConstraint::Free => Some(free_value),
            })
            .collect()
    }
}

/// Everything [`OptProblem::solve`] determines about a problem.
///
/// `lower_bound`, `greatest_subsolution` and `witness` are indexed by the
/// reduced problem (see [`PreprocessReport::kept_rows`] and
/// [`PreprocessReport::kept_vars`]); `solutions` is indexed by the original
/// variables.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub lower_bound: Vec<ExtScalar>,
    pub greatest_subsolution: Vec<ExtScalar>,
    /// `Σ_{j∈J} k_j x*_j`, when `b` and `x*` are finite.
    pub criterion_sum: Option<f64>,
    pub solvable: bool,
    /// Only meaningful when `solvable`; `false` otherwise.
    pub unique: bool,
    pub solutions: Option<SolutionSet>,
    /// A second optimum `x*` with one zero-coefficient variable set to `eps`.
    pub witness: Option<Vec<ExtScalar>>,
    pub tol: f64,
    pub preprocess: PreprocessReport,
}

impl SolveReport {
    /// `x*` as a real point over the original variables, eliminated variables
    /// set to `free_value`. `None` unless every component is finite.
    pub fn optimum(&self, free_value: f64) -> Option<Vec<f64>> {
        let x: Option<Vec<f64>> = self.greatest_subsolution.iter().map(|v| v.finite()).collect();
        x.map(|x| self.preprocess.lift_point(&x, free_value))
    }

    /// The lower bound over the original rows.
    pub fn lifted_lower_bound(&self) -> Vec<ExtScalar> {
        self.preprocess.lift_bound(&self.lower_bound)
    }
}

fn criterion_sum(p: &OptProblem, xstar: &[ExtScalar], b: &[ExtScalar]) -> Option<f64> {
    if !b.iter().all(|v| v.is_finite()) {
        return None;
    }
    p.support()
        .into_iter()
        .map(|j| xstar[j].finite().map(|x| p.k[j] * x))
        .sum()
}

/// Solvability test: `b` and `x*` finite and `|Σ_{j∈J} k_j x*_j - c| ⩽ tol`.
pub fn check_criterion(p: &OptProblem, xstar: &[ExtScalar], b: &[ExtScalar], tol: f64) -> bool {
    if !xstar.iter().all(|v| v.is_finite()) {
        return false;
    }
    criterion_sum(p, xstar, b).is_some_and(|s| (s - p.c).abs() <= tol)
}

/// `x*` with component `j0` replaced by `eps`; requires `k_{j0} = 0`.
///
/// For a solvable problem this is an optimal solution distinct from `x*`.
pub fn construct_alternative(
    p: &OptProblem,
    xstar: &[ExtScalar],
    j0: usize,
) -> Result<Vec<ExtScalar>> {
    if xstar.len() != p.num_vars() {
        return Err(Error::DimensionMismatch {
            expected: dims(p.num_vars(), 1),
            found: dims(xstar.len(), 1),
        });
    }
    match p.k.get(j0) {
        None => Err(Error::Domain(format!("variable index {j0} out of range"))),
        Some(&kj) if kj > 0.0 => Err(Error::Domain(format!(
            "variable {j0} has positive coefficient {kj}; only zero-coefficient variables can move"
        ))),
        Some(_) => {
            let mut x = xstar.to_vec();
            x[j0] = NegInf;
            Ok(x)
        }
    }
}
