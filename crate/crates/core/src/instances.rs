//! Random problem generators for property tests and benchmarks.
//!
//! Finite values are drawn from a dyadic grid (multiples of 1/64) and
//! coefficients are small integers, so the sums and differences the solver
//! performs are exact in `f64`.

use rand::Rng;

use crate::global_opt::OptProblem;
use crate::matrix::MaxPlusMatrix;
use crate::scalar::{ExtScalar, Finite, NegInf};

const GRID: f64 = 64.0;

/// A multiple of 1/64 in `[lo, hi]`.
pub fn dyadic<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    let steps = rng.gen_range((lo * GRID).ceil() as i64..=(hi * GRID).floor() as i64);
    steps as f64 / GRID
}

/// An `m x n` matrix with dyadic entries in `[-10, 10]`, each `eps` with
/// probability `eps_prob`.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, m: usize, n: usize, eps_prob: f64) -> MaxPlusMatrix {
    let entries = (0..m * n)
        .map(|_| {
            if rng.gen_bool(eps_prob) {
                NegInf
            } else {
                Finite(dyadic(rng, -10.0, 10.0))
            }
        })
        .collect();
    MaxPlusMatrix::new(m, n, entries).expect("dimensions are positive")
}

/// Integer coefficients in `0..=4`, zero with probability `zero_prob`, never all zero.
pub fn random_coefficients<R: Rng + ?Sized>(rng: &mut R, n: usize, zero_prob: f64) -> Vec<f64> {
    let mut k: Vec<f64> = (0..n)
        .map(|_| if rng.gen_bool(zero_prob) { 0.0 } else { f64::from(rng.gen_range(1..=4)) })
        .collect();
    if k.iter().all(|kj| *kj == 0.0) {
        let j = rng.gen_range(0..n);
        k[j] = f64::from(rng.gen_range(1..=4));
    }
    k
}

/// A problem that may contain `eps` rows and eliminable variables.
pub fn random_raw_problem<R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    n: usize,
    eps_prob: f64,
    zero_prob: f64,
) -> OptProblem {
    let a = random_matrix(rng, m, n, eps_prob);
    let k = random_coefficients(rng, n, zero_prob);
    OptProblem::new(a, k, dyadic(rng, -10.0, 10.0)).expect("generated data is valid")
}

/// A problem with `eps` entries and zero coefficients that already has no
/// `eps` row and no `eps` column with a zero coefficient.
pub fn random_problem<R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    n: usize,
    eps_prob: f64,
    zero_prob: f64,
) -> OptProblem {
    let a = random_matrix(rng, m, n, eps_prob);
    let k = random_coefficients(rng, n, zero_prob);
    let mut entries = a.entries().to_vec();
    for i in 0..m {
        if a.is_eps_row(i) {
            entries[i * n + rng.gen_range(0..n)] = Finite(dyadic(rng, -10.0, 10.0));
        }
    }
    let a = MaxPlusMatrix::new(m, n, entries).expect("same shape");
    let mut entries = a.entries().to_vec();
    for j in 0..n {
        if k[j] == 0.0 && a.is_eps_column(j) {
            entries[rng.gen_range(0..m) * n + j] = Finite(dyadic(rng, -10.0, 10.0));
        }
    }
    let a = MaxPlusMatrix::new(m, n, entries).expect("same shape");
    let p = OptProblem::new(a, k, dyadic(rng, -10.0, 10.0)).expect("generated data is valid");
    debug_assert!(p.satisfies_assumptions());
    p
}

/// A solvable problem together with the optimum it was built around.
#[derive(Debug, Clone)]
pub struct SolvableInstance {
    pub problem: OptProblem,
    /// The designed optimum; equals `x*` on the positive-coefficient variables.
    pub optimum: Vec<f64>,
}

/// Builds a solvable problem around a random point `x°`.
///
/// Each row `i` gets a level `t_i`; positive-coefficient columns get
/// `a_ij = t_i - x°_j` so that `F_i(x°) = t_i` equals the weighted mean, and
/// zero-coefficient columns stay at or below that level (or are `eps`).
/// Then `c = Σ_{j∈J} k_j x°_j`.
pub fn solvable_instance<R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    n: usize,
    zero_prob: f64,
) -> SolvableInstance {
    let k = random_coefficients(rng, n, zero_prob);
    let optimum: Vec<f64> = (0..n).map(|_| dyadic(rng, -5.0, 5.0)).collect();
    let mut entries = Vec::with_capacity(m * n);
    for _ in 0..m {
        let level = dyadic(rng, -5.0, 5.0);
        for j in 0..n {
            entries.push(if k[j] > 0.0 {
                Finite(level - optimum[j])
            } else if rng.gen_bool(0.3) {
                NegInf
            } else {
                Finite(level - optimum[j] - dyadic(rng, 0.0, 3.0))
            });
        }
    }
    let a = MaxPlusMatrix::new(m, n, entries).expect("dimensions are positive");
    let c = k.iter().zip(&optimum).filter(|(kj, _)| **kj > 0.0).map(|(kj, x)| kj * x).sum();
    SolvableInstance {
        problem: OptProblem::new(a, k, c).expect("generated data is valid"),
        optimum,
    }
}

/// A random vector of dyadic values in `[lo, hi]`, each `eps` with
/// probability `eps_prob`.
pub fn random_vector<R: Rng + ?Sized>(
    rng: &mut R,
    len: usize,
    lo: f64,
    hi: f64,
    eps_prob: f64,
) -> Vec<ExtScalar> {
    (0..len)
        .map(|_| if rng.gen_bool(eps_prob) { NegInf } else { Finite(dyadic(rng, lo, hi)) })
        .collect()
}
