//! Greatest subsolutions of max-plus linear systems `A ⊗ x = b`.
//!
//! For `A` and `b` over `R ∪ {-inf}` the greatest `x` (over the extended
//! reals) with `A ⊗ x ⩽ b` is `x*_j = min_i (b_i - a_ij)`. The system is
//! solvable exactly when `A ⊗ x* = b`.

use crate::error::{Error, Result};
use crate::matrix::{vec_leq, MaxPlusMatrix};
use crate::scalar::{ExtScalar, PosInf};

/// A system `A ⊗ x = b` with `A` and `b` free of `+inf`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem {
    a: MaxPlusMatrix,
    b: Vec<ExtScalar>,
}

impl LinearSystem {
    pub fn new(a: MaxPlusMatrix, b: Vec<ExtScalar>) -> Result<Self> {
        if b.len() != a.rows() {
            return Err(Error::DimensionMismatch {
                expected: format!("right-hand side of length {}", a.rows()),
                found: format!("length {}", b.len()),
            });
        }
        if a.contains_pos_inf() || b.contains(&PosInf) {
            return Err(Error::Domain("system entries must lie in R ∪ {-inf}".into()));
        }
        Ok(Self { a, b })
    }

    pub fn matrix(&self) -> &MaxPlusMatrix {
        &self.a
    }

    pub fn rhs(&self) -> &[ExtScalar] {
        &self.b
    }

    /// `x*(A, b)`, the greatest subsolution.
    ///
    /// Components are `+inf` for all-`eps` columns and `-inf` when some
    /// `b_i = eps` meets a finite `a_ij`.
    pub fn greatest_subsolution(&self) -> Vec<ExtScalar> {
        (0..self.a.cols())
            .map(|j| {
                self.a
                    .column(j)
                    .zip(&self.b)
                    .map(|(a_ij, &b_i)| residual(b_i, a_ij))
                    .min()
                    .expect("a matrix has at least one row")
            })
            .collect()
    }

    /// Whether `x` is a subsolution, `A ⊗ x ⩽ b`.
    pub fn is_subsolution(&self, x: &[ExtScalar]) -> Result<bool> {
        Ok(vec_leq(&self.a.otimes_vec(x)?, &self.b))
    }

    /// Whether the greatest subsolution solves the system exactly.
    pub fn is_solvable(&self) -> bool {
        let x = self.greatest_subsolution();
        self.a.otimes_vec(&x).expect("x* has one entry per column") == self.b
    }
}

/// `b - a` in the extended reals; never undefined for operands in `R ∪ {-inf}`.
fn residual(b: ExtScalar, a: ExtScalar) -> ExtScalar {
    b.ext_sub(a)
        .expect("operands in R ∪ {-inf} always have a defined difference")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Finite, NegInf};

    fn f(v: f64) -> ExtScalar {
        Finite(v)
    }

    fn example1() -> MaxPlusMatrix {
        MaxPlusMatrix::from_rows(&[
            [f(1.), f(2.), f(-2.)],
            [f(-1.), f(0.), NegInf],
            [f(0.), f(1.), f(3.)],
        ])
        .unwrap()
    }

    #[test]
    fn example1_subsolution() {
        let sys = LinearSystem::new(example1(), vec![f(2.), f(0.), f(1.)]).unwrap();
        assert_eq!(sys.greatest_subsolution(), vec![f(1.), f(0.), f(-2.)]);
        assert!(sys.is_solvable());
    }

    #[test]
    fn identity_returns_rhs() {
        let b = vec![f(3.25), f(-7.), f(0.)];
        let sys = LinearSystem::new(MaxPlusMatrix::identity(3).unwrap(), b.clone()).unwrap();
        assert_eq!(sys.greatest_subsolution(), b);
    }

    #[test]
    fn small_solvability_cases() {
        let col = MaxPlusMatrix::from_rows(&[[f(0.)], [f(0.)]]).unwrap();
        assert!(!LinearSystem::new(col, vec![f(0.), f(1.)]).unwrap().is_solvable());
        let one = LinearSystem::new(MaxPlusMatrix::from_rows(&[[f(0.)]]).unwrap(), vec![f(5.)])
            .unwrap();
        assert_eq!(one.greatest_subsolution(), vec![f(5.)]);
        assert!(one.is_solvable());
    }

    #[test]
    fn infinite_components() {
        let a = MaxPlusMatrix::from_rows(&[[f(1.), NegInf], [f(0.), NegInf]]).unwrap();
        let sys = LinearSystem::new(a, vec![NegInf, f(4.)]).unwrap();
        assert_eq!(sys.greatest_subsolution(), vec![NegInf, PosInf]);
    }

    #[test]
    fn rejects_pos_inf_and_bad_shapes() {
        let a = MaxPlusMatrix::from_rows(&[[PosInf]]).unwrap();
        assert!(LinearSystem::new(a, vec![f(0.)]).is_err());
        let a = MaxPlusMatrix::from_rows(&[[f(0.)]]).unwrap();
        assert!(LinearSystem::new(a.clone(), vec![PosInf]).is_err());
        assert!(LinearSystem::new(a, vec![f(0.), f(1.)]).is_err());
    }
}
