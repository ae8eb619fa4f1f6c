//! Restarted Douglas–Rachford loop shared by the puzzle front ends.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::point::{dist, Point};

/// Plain DR, or DR with the iterate replaced by its shadow at scheduled
/// iterations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Variant {
    #[default]
    Dr,
    DrProj,
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dr" => Ok(Variant::Dr),
            "dr-proj" | "dr+proj" => Ok(Variant::DrProj),
            other => Err(Error::InvalidParameter(format!("unknown variant {other:?}"))),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::Dr => "dr",
            Variant::DrProj => "dr-proj",
        })
    }
}

pub const DEFAULT_PROJ_SCHEDULE: [usize; 5] = [400, 800, 1600, 3200, 6400];

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Iteration budget of a single attempt.
    pub max_iter: usize,
    /// Fresh random starts allowed after the first attempt fails.
    pub restarts: usize,
    pub variant: Variant,
    pub seed: u64,
    /// Iterations `n` after which `x_{n+1}` is replaced by its shadow under
    /// [`Variant::DrProj`].
    pub proj_schedule: Vec<usize>,
    /// When set, the report records `||shadow_n - reference||` for every
    /// iterate of the final attempt. Must live in the shadow space.
    pub trace_reference: Option<Vec<f64>>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_iter: 10_000,
            restarts: 0,
            variant: Variant::Dr,
            seed: 0,
            proj_schedule: DEFAULT_PROJ_SCHEDULE.to_vec(),
            trace_reference: None,
        }
    }
}

impl SolverConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport<T> {
    pub solved: bool,
    pub solution: Option<T>,
    /// Iterations of the final attempt (the successful one, if any).
    pub iterations: usize,
    /// Iterations summed over all attempts.
    pub total_iterations: usize,
    /// Restarts consumed: 0 when the first attempt succeeded.
    pub restarts: usize,
    pub elapsed: Duration,
    /// Raw shadow distances to [`SolverConfig::trace_reference`].
    pub distances: Option<Vec<f64>>,
}

impl<T> SolveReport<T> {
    pub(crate) fn immediate(solution: T, elapsed: Duration) -> Self {
        SolveReport {
            solved: true,
            solution: Some(solution),
            iterations: 0,
            total_iterations: 0,
            restarts: 0,
            elapsed,
            distances: None,
        }
    }
}

/// `d_n / max_n d_n`; all zeros when every distance is zero.
pub fn normalize_distances(raw: &[f64]) -> Vec<f64> {
    let m = raw.iter().copied().fold(0.0, f64::max);
    if m == 0.0 {
        vec![0.0; raw.len()]
    } else {
        raw.iter().map(|d| d / m).collect()
    }
}

/// Pieces of a lifted feasibility problem the loop needs.
pub(crate) struct LoopSpec<'a, T> {
    /// `x -> (T x, P_first x)`.
    pub step: &'a dyn Fn(&Point) -> Result<(Point, Point)>,
    /// `P_first`.
    pub shadow: &'a dyn Fn(&Point) -> Result<Point>,
    /// Maps a shadow to the space solutions live in (one block of a
    /// diagonal point, say).
    pub read: &'a dyn Fn(Point) -> Point,
    /// Starting point of an attempt; the flag is set on the first attempt.
    pub init: &'a dyn Fn(&mut ChaCha8Rng, bool) -> Point,
    /// Rounds a read-out shadow and returns the decoded solution if it is
    /// feasible.
    pub accept: &'a dyn Fn(&Point) -> Option<T>,
}

pub(crate) fn uniform_point(rng: &mut ChaCha8Rng, dim: usize, lo: f64, hi: f64) -> Point {
    Point::new((0..dim).map(|_| rng.gen_range(lo..hi)).collect())
}

pub(crate) fn run_restarted<T>(cfg: &SolverConfig, spec: LoopSpec<'_, T>) -> Result<SolveReport<T>> {
    cfg.validate()?;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut total = 0usize;

    for attempt in 0..=cfg.restarts {
        let mut x = (spec.init)(&mut rng, attempt == 0);
        let mut distances = cfg.trace_reference.as_ref().map(|_| Vec::with_capacity(cfg.max_iter + 1));
        let mut n = 0usize;
        loop {
            let (next, shadow) = if n < cfg.max_iter {
                let (next, shadow) = (spec.step)(&x)?;
                (Some(next), shadow)
            } else {
                (None, (spec.shadow)(&x)?)
            };
            let shadow = (spec.read)(shadow);
            if let (Some(d), Some(r)) = (distances.as_mut(), cfg.trace_reference.as_ref()) {
                d.push(dist(shadow.coords(), r));
            }
            if let Some(solution) = (spec.accept)(&shadow) {
                return Ok(SolveReport {
                    solved: true,
                    solution: Some(solution),
                    iterations: n,
                    total_iterations: total + n,
                    restarts: attempt,
                    elapsed: start.elapsed(),
                    distances,
                });
            }
            let Some(mut next) = next else {
                total += n;
                if attempt == cfg.restarts {
                    return Ok(SolveReport {
                        solved: false,
                        solution: None,
                        iterations: n,
                        total_iterations: total,
                        restarts: attempt,
                        elapsed: start.elapsed(),
                        distances,
                    });
                }
                break;
            };
            if cfg.variant == Variant::DrProj && cfg.proj_schedule.contains(&n) {
                next = (spec.shadow)(&next)?;
            }
            x = next;
            n += 1;
        }
    }
    unreachable!("the final attempt always returns")
}
