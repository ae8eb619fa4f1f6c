//! Iteration driver with stop rules, shadow recording and diagnostics.
//!
//! For two-set Douglas–Rachford the shadow `P_A x_n` is where solutions are
//! read off; the iterates themselves converge to a point of
//! `Fix T = (A ∩ B) + N_{A-B}(0)` and, when `A ∩ B` is empty, drift along the
//! displacement vector `v` with `x_{n+1} - x_n -> v`.

use std::fmt;

use crate::error::{Error, Result};
use crate::point::Point;
use crate::set::ConstraintSet;

/// Default step-norm tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Default iteration budget.
pub const DEFAULT_MAX_ITER: usize = 10_000;
/// Runs whose iterate norm exceeds this are stopped as divergent.
pub const DEFAULT_DIVERGENCE_BOUND: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// Step norm fell to the tolerance, or the custom predicate fired.
    Converged,
    /// Budget exhausted. Also used for divergent runs, see
    /// [`IterationTrace::diverged`].
    MaxIter,
    /// `x_{n+1}` returned to within tolerance of `x_{n+1-period}`.
    CycleDetected { period: usize },
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StopReason::Converged => f.write_str("converged"),
            StopReason::MaxIter => f.write_str("max_iter"),
            StopReason::CycleDetected { period } => write!(f, "cycle_detected({period})"),
        }
    }
}

pub type StopPredicate = Box<dyn Fn(&IterationTrace) -> bool + Send + Sync>;

pub struct StopRule {
    max_iter: usize,
    tol: f64,
    predicate: Option<StopPredicate>,
    divergence_bound: f64,
    cycle_check: Option<(usize, f64)>,
}

impl Default for StopRule {
    fn default() -> Self {
        StopRule {
            max_iter: DEFAULT_MAX_ITER,
            tol: DEFAULT_TOL,
            predicate: None,
            divergence_bound: DEFAULT_DIVERGENCE_BOUND,
            cycle_check: None,
        }
    }
}

impl StopRule {
    pub fn new(max_iter: usize, tol: f64) -> Result<Self> {
        if max_iter == 0 {
            return Err(Error::InvalidParameter("max_iter must be at least 1".into()));
        }
        if tol.is_nan() || tol < 0.0 {
            return Err(Error::InvalidParameter(format!("tol must be nonnegative, got {tol}")));
        }
        Ok(StopRule { max_iter, tol, ..StopRule::default() })
    }

    /// Stops (as converged) once `predicate` holds on the trace so far.
    pub fn with_predicate<F>(mut self, predicate: F) -> Self
    where
        F: Fn(&IterationTrace) -> bool + Send + Sync + 'static,
    {
        self.predicate = Some(Box::new(predicate));
        self
    }

    /// Looks for periodic orbits of period `2..=max_period`.
    pub fn with_cycle_detection(mut self, max_period: usize, tol: f64) -> Self {
        self.cycle_check = Some((max_period, tol));
        self
    }

    pub fn with_divergence_bound(mut self, bound: f64) -> Self {
        self.divergence_bound = bound;
        self
    }

    pub fn max_iter(&self) -> usize {
        self.max_iter
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }
}

impl fmt::Debug for StopRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StopRule")
            .field("max_iter", &self.max_iter)
            .field("tol", &self.tol)
            .field("predicate", &self.predicate.is_some())
            .field("divergence_bound", &self.divergence_bound)
            .field("cycle_check", &self.cycle_check)
            .finish()
    }
}

/// Complete record of a run: `iterates[n] = x_n`, `shadows[n] = P_A x_n`,
/// `step_norms[n] = ||x_{n+1} - x_n||`.
#[derive(Debug, Clone)]
pub struct IterationTrace {
    pub iterates: Vec<Point>,
    pub shadows: Vec<Point>,
    pub step_norms: Vec<f64>,
    pub iterations: usize,
    pub stop_reason: StopReason,
    /// Set when the run was cut short by a non-finite iterate or by the
    /// divergence bound.
    pub diverged: bool,
}

impl IterationTrace {
    pub fn last(&self) -> &Point {
        self.iterates.last().expect("trace always holds x0")
    }

    pub fn last_shadow(&self) -> &Point {
        self.shadows.last().expect("trace always holds P_A x0")
    }
}

/// Iterates `x_{n+1} = step(x_n)` from `x0` until the rule stops it.
///
/// Errors from `step` or from the shadow projection are propagated; a
/// non-finite iterate ends the run with `diverged` set instead.
pub fn run<F, S>(mut step: F, x0: Point, rule: &StopRule, shadow_set: &S) -> Result<IterationTrace>
where
    F: FnMut(&Point) -> Result<Point>,
    S: ConstraintSet + ?Sized,
{
    let shadow0 = shadow_set.project(&x0)?;
    let mut trace = IterationTrace {
        iterates: vec![x0],
        shadows: vec![shadow0],
        step_norms: Vec::new(),
        iterations: 0,
        stop_reason: StopReason::MaxIter,
        diverged: false,
    };

    for _ in 0..rule.max_iter {
        let current = trace.last();
        let next = step(current)?;
        next.expect_dim(current.dim())?;
        if !next.is_finite() {
            trace.diverged = true;
            trace.stop_reason = StopReason::MaxIter;
            return Ok(trace);
        }
        let step_norm = next.dist(current);
        let shadow = shadow_set.project(&next)?;
        let next_norm = next.norm();
        trace.iterates.push(next);
        trace.shadows.push(shadow);
        trace.step_norms.push(step_norm);
        trace.iterations += 1;

        if next_norm > rule.divergence_bound {
            trace.diverged = true;
            trace.stop_reason = StopReason::MaxIter;
            return Ok(trace);
        }
        if step_norm <= rule.tol {
            trace.stop_reason = StopReason::Converged;
            return Ok(trace);
        }
        if let Some(period) = detect_cycle(&trace.iterates, rule.cycle_check) {
            trace.stop_reason = StopReason::CycleDetected { period };
            return Ok(trace);
        }
        if let Some(pred) = &rule.predicate {
            if pred(&trace) {
                trace.stop_reason = StopReason::Converged;
                return Ok(trace);
            }
        }
    }
    trace.stop_reason = StopReason::MaxIter;
    Ok(trace)
}

fn detect_cycle(iterates: &[Point], check: Option<(usize, f64)>) -> Option<usize> {
    let (max_period, tol) = check?;
    let last = iterates.len() - 1;
    (2..=max_period).take_while(|&p| p <= last).find(|&p| iterates[last].dist(&iterates[last - p]) <= tol)
}

/// `||x_n|| / n`, which tends to `||v|| = d(A, B)` for two-set DR on convex sets.
pub fn displacement_estimate(trace: &IterationTrace, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("displacement estimate needs n >= 1".into()));
    }
    if n > trace.iterations {
        return Err(Error::InvalidParameter(format!("n = {n} exceeds the {} recorded iterations", trace.iterations)));
    }
    Ok(trace.iterates[n].norm() / n as f64)
}

/// Slack allowed by [`fejer_check`].
pub const FEJER_SLACK: f64 = 1e-12;

/// True iff `||x_{n+1} - c|| <= ||x_n - c|| + 1e-12` along the whole trace.
pub fn fejer_check(trace: &IterationTrace, c: &Point) -> bool {
    if trace.iterates.iter().any(|x| x.dim() != c.dim()) {
        return false;
    }
    trace.iterates.windows(2).all(|w| w[1].dist(c) <= w[0].dist(c) + FEJER_SLACK)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::dr_step;
    use crate::sets::{sphere_line_step, AffineSubspace, BallSet, SphereSet, WholeSpace};

    #[test]
    fn rule_validation() {
        assert!(StopRule::new(0, 1e-3).is_err());
        assert!(StopRule::new(5, -1.0).is_err());
        assert!(StopRule::new(5, f64::NAN).is_err());
        let d = StopRule::default();
        assert_eq!(d.max_iter(), 10_000);
        assert_eq!(d.tol(), 1e-12);
    }

    #[test]
    fn identity_step_stops_after_one_iteration() {
        let rule = StopRule::new(100, 0.0).unwrap();
        let x0 = Point::from([3.0, 4.0]);
        let trace = run(|x| Ok(x.clone()), x0.clone(), &rule, &WholeSpace::new(2)).unwrap();
        assert_eq!(trace.iterations, 1);
        assert_eq!(trace.step_norms, vec![0.0]);
        assert_eq!(trace.stop_reason, StopReason::Converged);
        assert_eq!(trace.iterates.len(), trace.shadows.len());
        assert_eq!(displacement_estimate(&trace, 1).unwrap(), 5.0);
    }

    #[test]
    fn intersecting_lines_converge_to_intersection() {
        // y = x and y = -x/2 + 3 meet where x = -x/2 + 3, i.e. (2, 2)
        let a = AffineSubspace::line(Point::from([0.0, 0.0]), Point::from([1.0, 1.0])).unwrap();
        let b = AffineSubspace::line(Point::from([0.0, 3.0]), Point::from([2.0, -1.0])).unwrap();
        let rule = StopRule::new(10_000, 1e-13).unwrap();
        let trace = run(|x| dr_step(&a, &b, x), Point::from([1.0, 1.0]), &rule, &a).unwrap();
        assert_eq!(trace.stop_reason, StopReason::Converged);
        let shadow = trace.last_shadow();
        assert!(shadow.dist(&Point::from([2.0, 2.0])) <= 1e-10);
        assert!(a.contains_point(shadow, 1e-10) && b.contains_point(shadow, 1e-10));
        assert!(trace.step_norms.iter().all(|s| *s >= 0.0));
    }

    #[test]
    fn inconsistent_sphere_and_line_grow_without_bound() {
        let rule = StopRule::new(3_000, 1e-12).unwrap();
        let trace = run(|x| sphere_line_step(x, 1.5), Point::from([0.3, 0.2]), &rule, &SphereSet::unit(2)).unwrap();
        assert_eq!(trace.stop_reason, StopReason::MaxIter);
        assert!(!trace.diverged);
        assert!(trace.last().norm() > 100.0);
        let tail: Vec<f64> = trace.iterates[100..].iter().map(Point::norm).collect();
        assert!(tail.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn divergence_bound_ends_run() {
        let rule = StopRule::new(1_000, 0.0).unwrap().with_divergence_bound(1e3);
        let trace = run(|x| Ok(x.scale(2.0)), Point::from([1.0]), &rule, &WholeSpace::new(1)).unwrap();
        assert!(trace.diverged);
        assert_eq!(trace.stop_reason, StopReason::MaxIter);
        assert_eq!(trace.iterations, 10);

        let trace = run(|_| Ok(Point::from([f64::INFINITY])), Point::from([1.0]), &rule, &WholeSpace::new(1)).unwrap();
        assert!(trace.diverged);
        assert_eq!(trace.iterations, 0);
    }

    #[test]
    fn predicate_and_cycle_stops() {
        let rule = StopRule::new(100, 0.0).unwrap().with_predicate(|t| t.iterations == 7);
        let trace = run(|x| Ok(x.scale(0.5)), Point::from([1.0]), &rule, &WholeSpace::new(1)).unwrap();
        assert_eq!(trace.iterations, 7);
        assert_eq!(trace.stop_reason, StopReason::Converged);

        let rule = StopRule::new(100, 0.0).unwrap().with_cycle_detection(4, 1e-12);
        let trace = run(|x| Ok(x.scale(-1.0)), Point::from([1.0]), &rule, &WholeSpace::new(1)).unwrap();
        assert_eq!(trace.stop_reason, StopReason::CycleDetected { period: 2 });
        assert_eq!(trace.iterations, 2);
    }

    #[test]
    fn displacement_estimate_errors() {
        let rule = StopRule::new(3, 0.0).unwrap();
        let trace = run(|x| Ok(x.scale(2.0)), Point::from([1.0]), &rule, &WholeSpace::new(1)).unwrap();
        assert!(displacement_estimate(&trace, 0).is_err());
        assert!(displacement_estimate(&trace, 4).is_err());
        assert_eq!(displacement_estimate(&trace, 3).unwrap(), 8.0 / 3.0);
    }

    #[test]
    fn displacement_estimate_for_disjoint_balls() {
        let a = BallSet::new(Point::from([0.0, 0.0]), 1.0).unwrap();
        let b = BallSet::new(Point::from([3.0, 0.0]), 1.0).unwrap();
        let rule = StopRule::new(10_000, 1e-12).unwrap();
        let trace = run(|x| dr_step(&a, &b, x), Point::from([0.5, 2.0]), &rule, &a).unwrap();
        let est = displacement_estimate(&trace, 10_000).unwrap();
        assert!((est - 1.0).abs() <= 1e-3, "estimate {est}");
    }

    #[test]
    fn displacement_estimate_vanishes_for_intersecting_sets() {
        let a = BallSet::new(Point::from([0.0, 0.0]), 1.0).unwrap();
        let b = BallSet::new(Point::from([1.5, 0.0]), 1.0).unwrap();
        let rule = StopRule::new(5_000, 0.0).unwrap();
        let trace = run(|x| dr_step(&a, &b, x), Point::from([-4.0, 7.0]), &rule, &a).unwrap();
        // the iterates settle, so ||x_n|| stays bounded and ||x_n||/n -> 0
        let bound = trace.iterates.iter().map(Point::norm).fold(0.0, f64::max);
        assert!(bound < 10.0);
        let n = trace.iterations;
        assert!(displacement_estimate(&trace, n).unwrap() <= bound / n as f64);
        let s = trace.last_shadow();
        assert!(a.contains_point(s, 1e-9) && b.contains_point(s, 1e-9));
    }

    #[test]
    fn fejer_on_convex_pair() {
        let a = BallSet::new(Point::from([0.0, 0.0]), 1.0).unwrap();
        let b = BallSet::new(Point::from([1.5, 0.0]), 1.0).unwrap();
        let rule = StopRule::new(10_000, 1e-14).unwrap();
        let trace = run(|x| dr_step(&a, &b, x), Point::from([-3.0, 2.0]), &rule, &a).unwrap();
        assert_eq!(trace.stop_reason, StopReason::Converged);
        let fixed = trace.last().clone();
        assert!(fejer_check(&trace, &fixed));

        let single = IterationTrace {
            iterates: vec![Point::from([1.0])],
            shadows: vec![Point::from([1.0])],
            step_norms: vec![],
            iterations: 0,
            stop_reason: StopReason::MaxIter,
            diverged: false,
        };
        assert!(fejer_check(&single, &Point::from([0.0])));
        assert!(!fejer_check(&single, &Point::from([0.0, 0.0])));
    }
}
