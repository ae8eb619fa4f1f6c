//! Small two-dimensional experiments that print their trajectories as CSV.

use std::f64::consts::PI;

use anyhow::{bail, ensure, Result};
use drfeas::ops::{cyclic_dr_sweep, dr3_step, dr_step};
use drfeas::sets::{sphere_line_step, AffineSubspace, EllipseSet, FinitePointSet, HalfLine, SphereSet};
use drfeas::{ConstraintSet, Point};

use crate::csv::{Csv, Num};

fn line(dir: [f64; 2]) -> AffineSubspace {
    AffineSubspace::line(Point::from([0.0, 0.0]), Point::from(dir)).expect("nonzero direction")
}

/// Three lines through the origin at 90, 30 and 150 degrees, started from
/// `(-sqrt 3, -1)`. The three-set operator sits still while cyclic DR walks
/// to the origin; for cyclic DR the residual `||T_AB x_n - P_C x_n||` is
/// recorded as well.
pub fn lines3(max_iter: usize) -> Result<Csv> {
    let s3 = 3f64.sqrt();
    let (a, b, c) = (line([0.0, 1.0]), line([s3, 1.0]), line([-s3, 1.0]));
    let x0 = Point::from([-s3, -1.0]);
    let mut csv = Csv::new(&["scheme", "iteration", "x1", "x2", "coincidence_residual"]);

    let mut x = x0.clone();
    for n in 0..=max_iter {
        csv.row(["three-set".to_string(), n.to_string(), Num(x[0]).to_string(), Num(x[1]).to_string(), String::new()]);
        x = dr3_step(&a, &b, &c, &x)?;
    }

    let sets: [&dyn ConstraintSet; 3] = [&a, &b, &c];
    let mut x = x0;
    for n in 0..=max_iter {
        let residual = dr_step(&a, &b, &x)?.dist(&c.project(&x)?);
        csv.row([
            "cyclic".to_string(),
            n.to_string(),
            Num(x[0]).to_string(),
            Num(x[1]).to_string(),
            Num(residual).to_string(),
        ]);
        x = cyclic_dr_sweep(&sets, &x)?.pop().expect("sweep ends at the new iterate");
    }
    Ok(csv)
}

/// The unit circle against the line `x2 = alpha`, via the closed-form step.
pub fn sphere_line(alpha: f64, x0: [f64; 2], max_iter: usize) -> Result<Csv> {
    ensure!(alpha >= 0.0 && alpha.is_finite(), "alpha must be a nonnegative number");
    let s = SphereSet::unit(2);
    let mut csv = Csv::new(&["iteration", "x1", "x2", "norm", "shadow1", "shadow2"]);
    let mut x = Point::from(x0);
    for n in 0..=max_iter {
        let p = s.project(&x)?;
        csv.row([
            n.to_string(),
            Num(x[0]).to_string(),
            Num(x[1]).to_string(),
            Num(x.norm()).to_string(),
            Num(p[0]).to_string(),
            Num(p[1]).to_string(),
        ]);
        if n < max_iter {
            x = sphere_line_step(&x, alpha)?;
        }
    }
    Ok(csv)
}

/// The unit circle against the half-line `{(t, 0) : t <= a}` and the
/// point sets `{(a, 0)}`, `{(a, 0), (-1, 0)}`, from `(a/2, sqrt(1 - a²)/2)`.
/// Returns the first four iterates of each and whether every variant
/// returned to its start after two steps.
pub fn two_cycle(a: f64) -> Result<(Csv, bool)> {
    ensure!(a > 0.0 && a < 1.0, "a must lie in (0, 1)");
    let s = SphereSet::unit(2);
    let half = HalfLine::new(a);
    let single = FinitePointSet::new(vec![Point::from([a, 0.0])])?;
    let double = FinitePointSet::new(vec![Point::from([a, 0.0]), Point::from([-1.0, 0.0])])?;
    let x0 = Point::from([a / 2.0, (1.0 - a * a).sqrt() / 2.0]);
    let mut csv = Csv::new(&["variant", "iteration", "x1", "x2", "dist_to_x0"]);
    let mut periodic = true;
    let variants: [(&str, &dyn ConstraintSet); 3] =
        [("half-line", &half), ("singleton", &single), ("doubleton", &double)];
    for (name, b) in variants {
        let mut x = x0.clone();
        for n in 0..=4 {
            let d = x.dist(&x0);
            csv.row([
                name.to_string(),
                n.to_string(),
                Num(x[0]).to_string(),
                Num(x[1]).to_string(),
                Num(d).to_string(),
            ]);
            if n == 1 {
                periodic &= d > 1e-9;
            }
            if n == 2 {
                periodic &= d <= 1e-12;
            }
            x = dr_step(&s, b, &x)?;
        }
    }
    Ok((csv, periodic))
}

/// One ellipse of the ellipse demo: semi-axes, center and axis angle
/// (radians), written `a,b,cx,cy,angle`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseSpec {
    pub a: f64,
    pub b: f64,
    pub center: [f64; 2],
    pub angle: f64,
}

impl std::str::FromStr for EllipseSpec {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        let v: Vec<f64> = s.split(',').map(|t| t.trim().parse::<f64>()).collect::<Result<_, _>>()?;
        let [a, b, cx, cy, angle] = v[..] else {
            bail!("expected a,b,cx,cy,angle");
        };
        ensure!(a > 0.0 && b > 0.0, "semi-axes must be positive");
        Ok(EllipseSpec { a, b, center: [cx, cy], angle })
    }
}

/// Three filled ellipses whose boundaries all pass through `p`, with
/// outward normals there at 90, 210 and 330 degrees; `p` is then their only
/// common point.
pub fn ellipses_through(p: [f64; 2]) -> Vec<EllipseSpec> {
    [(90.0f64, 1.0, 0.6), (210.0, 1.4, 0.8), (330.0, 0.8, 0.5)]
        .iter()
        .map(|&(deg, a, b)| {
            let t = deg * PI / 180.0;
            EllipseSpec { a, b, center: [p[0] - a * t.cos(), p[1] - a * t.sin()], angle: t }
        })
        .collect()
}

/// Cyclic DR over the given ellipses (filled, or just their boundaries).
/// The shadow column is the projection onto the first ellipse.
pub fn ellipses(specs: &[EllipseSpec], x0: [f64; 2], max_iter: usize, boundary: bool) -> Result<Csv> {
    ensure!(specs.len() >= 2, "need at least two ellipses");
    let sets: Vec<EllipseSet> = specs
        .iter()
        .map(|e| {
            let s = EllipseSet::new(e.a, e.b).map(|s| s.with_center(e.center).with_angle(e.angle))?;
            Ok(if boundary { s } else { s.solid() })
        })
        .collect::<Result<_>>()?;
    let refs: Vec<&dyn ConstraintSet> = sets.iter().map(|s| s as &dyn ConstraintSet).collect();
    let mut csv = Csv::new(&["iteration", "x1", "x2", "shadow1", "shadow2"]);
    let mut x = Point::from(x0);
    for n in 0..=max_iter {
        let p = refs[0].project(&x)?;
        csv.row([
            n.to_string(),
            Num(x[0]).to_string(),
            Num(x[1]).to_string(),
            Num(p[0]).to_string(),
            Num(p[1]).to_string(),
        ]);
        if n < max_iter {
            x = cyclic_dr_sweep(&refs, &x)?.pop().expect("sweep ends at the new iterate");
        }
    }
    Ok(csv)
}

/// Last row of a CSV as floats, skipping the first `skip` columns.
pub fn last_values(csv: &Csv, skip: usize) -> Vec<f64> {
    csv.as_str()
        .lines()
        .last()
        .map(|l| l.split(',').skip(skip).filter_map(|t| t.parse().ok()).collect())
        .unwrap_or_default()
}
