//! Dense max-plus matrices and vectors.

use std::fmt;

use crate::error::{dims, Error, Result};
use crate::scalar::{ExtScalar, NegInf};

/// A dense `rows x cols` matrix over the extended max-plus scalars,
/// stored row-major. A vector is a matrix with one column.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxPlusMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ExtScalar>,
}

impl MaxPlusMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<ExtScalar>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch {
                expected: "at least 1x1".into(),
                found: dims(rows, cols),
            });
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{} entries", rows * cols),
                found: format!("{} entries", entries.len()),
            });
        }
        if entries.iter().any(|e| matches!(e, ExtScalar::Finite(v) if !v.is_finite())) {
            return Err(Error::NotANumber);
        }
        Ok(Self { rows, cols, entries })
    }

    /// Builds a matrix from a list of equally long rows.
    pub fn from_rows<R: AsRef<[ExtScalar]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if let Some(bad) = rows.iter().find(|r| r.as_ref().len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: format!("rows of length {cols}"),
                found: format!("a row of length {}", bad.as_ref().len()),
            });
        }
        let entries = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        Self::new(rows.len(), cols, entries)
    }

    pub fn column_vector(v: Vec<ExtScalar>) -> Result<Self> {
        Self::new(v.len(), 1, v)
    }

    /// Matrix with every entry equal to `eps`.
    pub fn eps(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![NegInf; rows * cols])
    }

    /// Max-plus identity: `e` on the diagonal, `eps` elsewhere.
    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::eps(n, n)?;
        for i in 0..n {
            m.entries[i * n + i] = ExtScalar::E;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[ExtScalar] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> ExtScalar {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[ExtScalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = ExtScalar> + '_ {
        assert!(j < self.cols, "column {j} out of bounds");
        self.entries.iter().skip(j).step_by(self.cols).copied()
    }

    pub fn is_eps_row(&self, i: usize) -> bool {
        self.row(i).iter().all(|a| a.is_eps())
    }

    pub fn is_eps_column(&self, j: usize) -> bool {
        self.column(j).all(|a| a.is_eps())
    }

    pub fn contains_pos_inf(&self) -> bool {
        self.entries.iter().any(|a| *a == ExtScalar::PosInf)
    }

    /// Keeps only the listed rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect();
        Self::new(rows.len(), cols.len(), entries)
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: dims(self.rows, self.cols),
                found: dims(other.rows, other.cols),
            });
        }
        Ok(())
    }

    /// Componentwise `⊕`.
    pub fn oplus(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.oplus(*b))
            .collect();
        Ok(Self { rows: self.rows, cols: self.cols, entries })
    }

    /// Max-plus product `(A ⊗ B)_ij = ⊕_k a_ik ⊗ b_kj`.
    pub fn otimes(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows on the right operand", self.cols),
                found: format!("{} rows", other.rows),
            });
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            let row = self.row(i);
            for j in 0..other.cols {
                let acc = row
                    .iter()
                    .enumerate()
                    .fold(NegInf, |acc, (k, a)| acc.oplus(a.otimes(other.get(k, j))));
                entries.push(acc);
            }
        }
        Ok(Self { rows: self.rows, cols: other.cols, entries })
    }

    /// `A ⊗ x` for a vector given as a slice.
    pub fn otimes_vec(&self, x: &[ExtScalar]) -> Result<Vec<ExtScalar>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: format!("vector of length {}", self.cols),
                found: format!("length {}", x.len()),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(NegInf, |acc, (a, xj)| acc.oplus(a.otimes(*xj)))
            })
            .collect())
    }

    /// `A ⩽ B`, i.e. `A ⊕ B = B`.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check_same_shape(other)?;
        Ok(vec_leq(&self.entries, &other.entries))
    }
}

/// Componentwise order on equally long vectors. Panics on a length mismatch.
pub fn vec_leq(a: &[ExtScalar], b: &[ExtScalar]) -> bool {
    assert_eq!(a.len(), b.len(), "vec_leq on vectors of different length");
    a.iter().zip(b).all(|(x, y)| x.oplus(*y) == *y)
}

impl fmt::Display for MaxPlusMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|a| a.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Finite, PosInf};

    fn m(rows: &[&[ExtScalar]]) -> MaxPlusMatrix {
        MaxPlusMatrix::from_rows(rows).unwrap()
    }

    fn f(v: f64) -> ExtScalar {
        Finite(v)
    }

    fn example1() -> MaxPlusMatrix {
        m(&[&[f(1.), f(2.), f(-2.)], &[f(-1.), f(0.), NegInf], &[f(0.), f(1.), f(3.)]])
    }

    #[test]
    fn construction_checks_shape() {
        assert!(MaxPlusMatrix::new(0, 1, vec![]).is_err());
        assert!(MaxPlusMatrix::new(2, 2, vec![f(1.); 3]).is_err());
        assert!(MaxPlusMatrix::from_rows(&[vec![f(1.)], vec![f(1.), f(2.)]]).is_err());
        assert_eq!(
            MaxPlusMatrix::new(1, 1, vec![Finite(f64::NAN)]),
            Err(Error::NotANumber)
        );
    }

    #[test]
    fn mat_oplus_examples() {
        let a = m(&[&[f(1.), NegInf], &[NegInf, f(2.)]]);
        let zeros = m(&[&[f(0.), f(0.)], &[f(0.), f(0.)]]);
        assert_eq!(a.oplus(&zeros).unwrap(), m(&[&[f(1.), f(0.)], &[f(0.), f(2.)]]));
        assert_eq!(a.oplus(&a).unwrap(), a);
        assert_eq!(m(&[&[NegInf]]).oplus(&m(&[&[f(5.)]])).unwrap(), m(&[&[f(5.)]]));
        assert!(a.oplus(&m(&[&[f(1.)]])).is_err());
    }

    #[test]
    fn mat_otimes_examples() {
        let a = example1();
        let x = MaxPlusMatrix::column_vector(vec![f(1.), f(0.), f(-2.)]).unwrap();
        assert_eq!(
            a.otimes(&x).unwrap(),
            MaxPlusMatrix::column_vector(vec![f(2.), f(0.), f(1.)]).unwrap()
        );
        let eps = MaxPlusMatrix::eps(3, 1).unwrap();
        assert_eq!(a.otimes(&eps).unwrap(), eps);
        let id = MaxPlusMatrix::identity(3).unwrap();
        assert_eq!(id.otimes(&x).unwrap(), x);
        assert!(a.otimes(&MaxPlusMatrix::eps(2, 1).unwrap()).is_err());
    }

    #[test]
    fn otimes_vec_matches_matrix_product() {
        let a = example1();
        let x = vec![f(0.5), PosInf, NegInf];
        let as_matrix = a.otimes(&MaxPlusMatrix::column_vector(x.clone()).unwrap()).unwrap();
        assert_eq!(a.otimes_vec(&x).unwrap(), as_matrix.entries());
    }

    #[test]
    fn leq_examples() {
        assert!(m(&[&[NegInf]]).leq(&m(&[&[f(3.)]])).unwrap());
        assert!(!m(&[&[f(2.), f(1.)]]).leq(&m(&[&[f(2.), f(0.)]])).unwrap());
        let xs = MaxPlusMatrix::column_vector(vec![f(1.), f(0.), f(-2.)]).unwrap();
        assert!(xs.leq(&xs).unwrap());
        assert!(xs.leq(&example1()).is_err());
    }

    #[test]
    fn select_and_eps_queries() {
        let a = example1();
        assert!(!a.is_eps_row(1));
        assert!(!a.is_eps_column(2));
        let sub = a.select(&[0, 2], &[1]).unwrap();
        assert_eq!(sub, m(&[&[f(2.)], &[f(1.)]]));
        let b = m(&[&[NegInf, f(1.)], &[NegInf, NegInf]]);
        assert!(b.is_eps_row(1));
        assert!(b.is_eps_column(0));
    }
}
