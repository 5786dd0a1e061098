//! Brute-force checks of solver claims by sampling the constraint hyperplane.
//!
//! Sampling cannot prove global optimality over an unbounded set, only
//! falsify it. A passing check is therefore reported as *consistent*.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::global_opt::{OptProblem, SolveReport};
use crate::scalar::{ExtScalar, Finite, NegInf};

#[derive(Debug, Clone, PartialEq)]
pub struct SampleConfig {
    /// Half-width of the sampling box around the center.
    pub box_radius: f64,
    /// Grid resolution along each free coordinate; the grid is only laid
    /// out for problems with at most [`SampleConfig::GRID_MAX_VARS`] variables.
    pub grid_points_per_axis: usize,
    /// Number of uniformly random points in the box.
    pub random_samples: usize,
    pub seed: u64,
    /// Tolerance on constraint membership and on comparisons of `F` with `b`.
    pub tol: f64,
}

impl SampleConfig {
    pub const GRID_MAX_VARS: usize = 3;

    pub fn new(
        box_radius: f64,
        grid_points_per_axis: usize,
        random_samples: usize,
        seed: u64,
        tol: f64,
    ) -> Result<Self> {
        if !(box_radius.is_finite() && box_radius > 0.0) {
            return Err(Error::Domain(format!("box radius must be positive, got {box_radius}")));
        }
        if grid_points_per_axis < 2 {
            return Err(Error::Domain(format!(
                "need at least 2 grid points per axis, got {grid_points_per_axis}"
            )));
        }
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(Error::Domain(format!("tolerance must be nonnegative, got {tol}")));
        }
        Ok(Self { box_radius, grid_points_per_axis, random_samples, seed, tol })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            box_radius: 5.0,
            grid_points_per_axis: 7,
            random_samples: 10_000,
            seed: 0,
            tol: crate::global_opt::DEFAULT_TOL,
        }
    }
}

/// A sample that contradicts a claim.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub point: Vec<f64>,
    pub objective: Vec<ExtScalar>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub samples_checked: usize,
    pub counterexample: Option<Counterexample>,
}

impl Verdict {
    pub fn is_consistent(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "consistent ({} samples)", self.samples_checked),
            Some(cx) => {
                let pt: Vec<String> = cx.point.iter().map(|v| v.to_string()).collect();
                write!(f, "inconsistent: {} at x = ({})", cx.reason, pt.join(", "))
            }
        }
    }
}

/// Coordinate solved from the constraint: the largest `k_j`, lowest index on ties.
pub fn pivot_index(k: &[f64]) -> Option<usize> {
    k.iter()
        .enumerate()
        .filter(|(_, kj)| **kj > 0.0)
        .fold(None, |best: Option<(usize, f64)>, (j, &kj)| match best {
            Some((_, bk)) if bk >= kj => best,
            _ => Some((j, kj)),
        })
        .map(|(j, _)| j)
}

/// A point on the hyperplane: the pivot carries all of `c`, the rest are 0.
pub fn feasible_point(p: &OptProblem) -> Vec<f64> {
    let k = p.coefficients();
    let pivot = pivot_index(k).expect("problems always have a positive coefficient");
    let mut x = vec![0.0; k.len()];
    x[pivot] = p.constant() / k[pivot];
    x
}

/// Grid and random points of the constraint hyperplane around `center`.
///
/// Every coordinate except the pivot ranges over the box; the pivot is then
/// solved from `Σ k_j x_j = c`.
pub fn sample_constraint_points(
    p: &OptProblem,
    center: &[f64],
    cfg: &SampleConfig,
) -> Result<Vec<Vec<f64>>> {
    let k = p.coefficients();
    let pivot = pivot_index(k)
        .ok_or_else(|| Error::Domain("no positive coefficient to pivot on".into()))?;
    if center.len() != k.len() || center.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("center must be a finite point with one entry per variable".into()));
    }
    if !p.is_feasible(center, cfg.tol * (1.0 + p.constant().abs())) {
        return Err(Error::Domain("center is not on the constraint hyperplane".into()));
    }

    let n = k.len();
    let solve_pivot = |x: &mut Vec<f64>| {
        let rest: f64 = (0..n).filter(|&j| j != pivot).map(|j| k[j] * x[j]).sum();
        x[pivot] = (p.constant() - rest) / k[pivot];
    };

    if n == 1 {
        let mut x = center.to_vec();
        solve_pivot(&mut x);
        return Ok(vec![x]);
    }

    let free: Vec<usize> = (0..n).filter(|&j| j != pivot).collect();
    let mut out = Vec::new();

    if n <= SampleConfig::GRID_MAX_VARS {
        let g = cfg.grid_points_per_axis;
        let offsets: Vec<f64> = (0..g)
            .map(|t| cfg.box_radius * (2.0 * t as f64 / (g - 1) as f64 - 1.0))
            .collect();
        let total = g.pow(free.len() as u32);
        for mut idx in 0..total {
            let mut x = center.to_vec();
            for &j in &free {
                x[j] = center[j] + offsets[idx % g];
                idx /= g;
            }
            solve_pivot(&mut x);
            out.push(x);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.random_samples {
        let mut x = center.to_vec();
        for &j in &free {
            x[j] = center[j] + rng.gen_range(-cfg.box_radius..=cfg.box_radius);
        }
        solve_pivot(&mut x);
        out.push(x);
    }
    Ok(out)
}

fn scaled(tol: f64, v: f64) -> f64 {
    tol * v.abs().max(1.0)
}

/// `f ⩾ b` up to `tol` (relative for large magnitudes).
fn ge_within(f: ExtScalar, b: ExtScalar, tol: f64) -> bool {
    match (f, b) {
        (Finite(f), Finite(b)) => f >= b - scaled(tol, b),
        _ => f >= b,
    }
}

/// `f = b` up to `tol`; infinite values must match exactly.
fn eq_within(f: ExtScalar, b: ExtScalar, tol: f64) -> bool {
    match (f, b) {
        (Finite(f), Finite(b)) => (f - b).abs() <= scaled(tol, b),
        _ => f == b,
    }
}

/// `f < b` by more than `tol`.
fn lt_beyond(f: ExtScalar, b: ExtScalar, tol: f64) -> bool {
    !ge_within(f, b, tol)
}

fn objective(p: &OptProblem, x: &[f64]) -> Vec<ExtScalar> {
    p.evaluate(x).expect("samples are finite and correctly sized").objective
}

/// Checks `F(x) ⩾ b` on every sample. `b` is indexed by the rows of `p`.
pub fn verify_lower_bound(
    p: &OptProblem,
    b: &[ExtScalar],
    samples: &[Vec<f64>],
    tol: f64,
) -> Verdict {
    for x in samples {
        let fx = objective(p, x);
        if let Some(i) = (0..b.len()).find(|&i| !ge_within(fx[i], b[i], tol)) {
            return Verdict {
                samples_checked: samples.len(),
                counterexample: Some(Counterexample {
                    point: x.clone(),
                    reason: format!("F_{}(x) = {} is below b_{} = {}", i + 1, fx[i], i + 1, b[i]),
                    objective: fx,
                }),
            };
        }
    }
    Verdict { samples_checked: samples.len(), counterexample: None }
}

/// Samples whose objective equals `b` in every component (within `tol`).
pub fn attaining_samples<'a>(
    p: &'a OptProblem,
    b: &'a [ExtScalar],
    samples: &'a [Vec<f64>],
    tol: f64,
) -> impl Iterator<Item = &'a Vec<f64>> + 'a {
    samples.iter().filter(move |x| {
        let fx = objective(p, x);
        fx.iter().zip(b).all(|(f, b)| eq_within(*f, *b, tol))
    })
}

/// Cross-checks a solver report for the (original, unreduced) problem `p`.
///
/// Solvable reports: `F(x*) = b`, `x*` on the hyperplane, every sample obeys
/// the lower bound, and no sample improves on `F(x*)`. Unsolvable reports:
/// every sample obeys the lower bound and none attains it.
pub fn verify_optimality(p: &OptProblem, report: &SolveReport, cfg: &SampleConfig) -> Result<Verdict> {
    let b = report.lifted_lower_bound();
    let fail = |point: Vec<f64>, objective: Vec<ExtScalar>, reason: String, n: usize| Verdict {
        samples_checked: n,
        counterexample: Some(Counterexample { point, objective, reason }),
    };

    if report.solvable {
        let xstar = report.optimum(0.0).ok_or_else(|| {
            Error::Domain("solvable report with a non-finite greatest subsolution".into())
        })?;
        let fstar = objective(p, &xstar);
        if !fstar.iter().zip(&b).all(|(f, b)| eq_within(*f, *b, cfg.tol)) {
            return Ok(fail(xstar, fstar, "F(x*) differs from b".into(), 0));
        }
        if !p.is_feasible(&xstar, cfg.tol * (1.0 + p.constant().abs())) {
            return Ok(fail(xstar, fstar, "x* violates the constraint".into(), 0));
        }
        let samples = sample_constraint_points(p, &xstar, cfg)?;
        let lower = verify_lower_bound(p, &b, &samples, cfg.tol);
        if !lower.is_consistent() {
            return Ok(lower);
        }
        for x in &samples {
            let fx = objective(p, x);
            let dominated = fx.iter().zip(&fstar).all(|(f, s)| !lt_beyond(*s, *f, cfg.tol));
            let strictly = fx.iter().zip(&fstar).any(|(f, s)| lt_beyond(*f, *s, cfg.tol));
            if dominated && strictly {
                return Ok(fail(
                    x.clone(),
                    fx,
                    "sample improves on F(x*)".into(),
                    samples.len(),
                ));
            }
        }
        Ok(Verdict { samples_checked: samples.len(), counterexample: None })
    } else {
        let center = feasible_point(p);
        let samples = sample_constraint_points(p, &center, cfg)?;
        let lower = verify_lower_bound(p, &b, &samples, cfg.tol);
        if !lower.is_consistent() {
            return Ok(lower);
        }
        if let Some(x) = attaining_samples(p, &b, &samples, cfg.tol).next() {
            return Ok(fail(
                x.clone(),
                objective(p, x),
                "sample attains b although the problem was reported unsolvable".into(),
                samples.len(),
            ));
        }
        // an infinite bound can never be attained by a real point, which
        // certifies unsolvability on its own
        debug_assert!(b.iter().any(|v| *v == NegInf) || samples.iter().all(|x| {
            objective(p, x).iter().zip(&b).any(|(f, b)| !eq_within(*f, *b, cfg.tol))
        }));
        Ok(Verdict { samples_checked: samples.len(), counterexample: None })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::global_opt::DEFAULT_TOL;
    use crate::matrix::MaxPlusMatrix;

    fn f(v: f64) -> ExtScalar {
        Finite(v)
    }

    fn example1(k: Vec<f64>) -> OptProblem {
        let a = MaxPlusMatrix::from_rows(&[
            [f(1.), f(2.), f(-2.)],
            [f(-1.), f(0.), NegInf],
            [f(0.), f(1.), f(3.)],
        ])
        .unwrap();
        OptProblem::new(a, k, 2.).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(SampleConfig::new(0.0, 7, 10, 0, 1e-9).is_err());
        assert!(SampleConfig::new(1.0, 1, 10, 0, 1e-9).is_err());
        assert!(SampleConfig::new(1.0, 2, 0, 0, -1.0).is_err());
        assert!(SampleConfig::new(1.0, 2, 0, 0, 0.0).is_ok());
    }

    #[test]
    fn pivot_prefers_largest_then_lowest_index() {
        assert_eq!(pivot_index(&[2., 1., 0.]), Some(0));
        assert_eq!(pivot_index(&[1., 3., 3.]), Some(1));
        assert_eq!(pivot_index(&[0., 0.]), None);
    }

    #[test]
    fn samples_lie_on_the_hyperplane() {
        let p = example1(vec![2., 1., 0.]);
        let cfg = SampleConfig::new(2.0, 5, 500, 3, 1e-9).unwrap();
        let pts = sample_constraint_points(&p, &[1., 0., 0.], &cfg).unwrap();
        assert_eq!(pts.len(), 25 + 500);
        for x in &pts {
            assert!((2. * x[0] + x[1] - 2.).abs() <= 1e-9, "{x:?}");
        }
    }

    #[test]
    fn single_variable_gives_single_point() {
        let p = OptProblem::new(MaxPlusMatrix::from_rows(&[[f(0.)]]).unwrap(), vec![1.], 5.)
            .unwrap();
        let pts = sample_constraint_points(&p, &[5.], &SampleConfig::default()).unwrap();
        assert_eq!(pts, vec![vec![5.]]);
    }

    #[test]
    fn rejects_infeasible_center() {
        let p = example1(vec![2., 1., 0.]);
        assert!(sample_constraint_points(&p, &[0., 0., 0.], &SampleConfig::default()).is_err());
        assert!(sample_constraint_points(&p, &[1., 0.], &SampleConfig::default()).is_err());
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let p = example1(vec![2., 1., 0.]);
        let cfg = SampleConfig { random_samples: 50, ..SampleConfig::default() };
        let a = sample_constraint_points(&p, &[1., 0., -2.], &cfg).unwrap();
        let b = sample_constraint_points(&p, &[1., 0., -2.], &cfg).unwrap();
        let c = sample_constraint_points(&p, &[1., 0., -2.], &cfg.clone().with_seed(9)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn lower_bound_holds_and_inflated_bound_fails() {
        let p = example1(vec![2., 1., 0.]);
        let b = p.greatest_lower_bound().unwrap();
        let pts = sample_constraint_points(&p, &[1., 0., -2.], &SampleConfig::default()).unwrap();
        assert!(pts.len() >= 10_000);
        assert!(verify_lower_bound(&p, &b, &pts, DEFAULT_TOL).is_consistent());

        let inflated: Vec<ExtScalar> = b.iter().map(|v| v.otimes(f(0.1))).collect();
        let v = verify_lower_bound(&p, &inflated, &pts, DEFAULT_TOL);
        assert!(!v.is_consistent());
        // x* is a grid point and sits exactly on b, below the inflated bound
        assert!(pts.contains(&vec![1., 0., -2.]));
        let single = verify_lower_bound(&p, &inflated, &[vec![1., 0., -2.]], DEFAULT_TOL);
        assert_eq!(single.counterexample.unwrap().point, vec![1., 0., -2.]);
    }

    #[test]
    fn mean_bound_for_max_of_two() {
        let a = MaxPlusMatrix::from_rows(&[[f(0.), f(0.)]]).unwrap();
        let p = OptProblem::new(a, vec![1., 1.], 0.).unwrap();
        let b = p.greatest_lower_bound().unwrap();
        assert_eq!(b, vec![f(0.)]);
        let pts = sample_constraint_points(&p, &[0., 0.], &SampleConfig::default()).unwrap();
        assert!(verify_lower_bound(&p, &b, &pts, DEFAULT_TOL).is_consistent());
    }

    #[test]
    fn verify_example1_reports() {
        let p = example1(vec![2., 1., 0.]);
        let r = p.solve(DEFAULT_TOL).unwrap();
        let v = verify_optimality(&p, &r, &SampleConfig::default()).unwrap();
        assert!(v.is_consistent(), "{v}");
        assert!(v.to_string().starts_with("consistent"));

        let q = example1(vec![2., 1., 1.]);
        let r = q.solve(DEFAULT_TOL).unwrap();
        assert!(!r.solvable);
        let v = verify_optimality(&q, &r, &SampleConfig::default()).unwrap();
        assert!(v.is_consistent(), "{v}");
    }

    #[test]
    fn verify_flags_a_false_solvable_claim() {
        // claim the unsolvable problem [[0, 0], [0, 1]] is unsolvable, then lie
        let a = MaxPlusMatrix::from_rows(&[[f(0.), f(0.)], [f(0.), f(1.)]]).unwrap();
        let p = OptProblem::new(a, vec![1., 1.], 0.).unwrap();
        let mut r = p.solve(DEFAULT_TOL).unwrap();
        assert!(!r.solvable);
        r.solvable = true;
        let v = verify_optimality(&p, &r, &SampleConfig::default()).unwrap();
        assert!(!v.is_consistent());
    }
}
