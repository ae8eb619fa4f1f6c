//! Reflect–reflect–average operators built from set projections.
//!
//! Every scheme here is a composition of [`ConstraintSet::project`] and
//! [`reflect`]; none is specialised to a particular set.

use crate::error::{Error, Result};
use crate::point::Point;
use crate::set::ConstraintSet;

/// `R_S x = 2 P_S x - x`.
pub fn reflect<S: ConstraintSet + ?Sized>(set: &S, x: &Point) -> Result<Point> {
    let p = set.project(x)?;
    Ok(reflect_about(&p, x))
}

/// Reflection of `x` through an already computed projection `p`.
pub(crate) fn reflect_about(p: &Point, x: &Point) -> Point {
    Point::new(p.coords().iter().zip(x.coords()).map(|(p, x)| 2.0 * p - x).collect())
}

fn average(x: &Point, y: &Point) -> Point {
    Point::new(x.coords().iter().zip(y.coords()).map(|(a, b)| 0.5 * (a + b)).collect())
}

/// Two-set Douglas–Rachford operator `T_{A,B} = (I + R_B R_A) / 2`.
pub fn dr_step<A, B>(a: &A, b: &B, x: &Point) -> Result<Point>
where
    A: ConstraintSet + ?Sized,
    B: ConstraintSet + ?Sized,
{
    let ra = reflect(a, x)?;
    let rba = reflect(b, &ra)?;
    Ok(average(x, &rba))
}

/// Same as [`dr_step`] but also hands back the shadow `P_A x` it computed on
/// the way, so drivers that monitor the shadow do not project twice.
pub fn dr_step_with_shadow<A, B>(a: &A, b: &B, x: &Point) -> Result<(Point, Point)>
where
    A: ConstraintSet + ?Sized,
    B: ConstraintSet + ?Sized,
{
    let pa = a.project(x)?;
    let ra = reflect_about(&pa, x);
    let rba = reflect(b, &ra)?;
    Ok((average(x, &rba), pa))
}

/// Three-set operator `(I + R_C R_B R_A) / 2`.
///
/// Its fixed points need not project onto the intersection; kept for
/// reproducing that failure.
pub fn dr3_step<A, B, C>(a: &A, b: &B, c: &C, x: &Point) -> Result<Point>
where
    A: ConstraintSet + ?Sized,
    B: ConstraintSet + ?Sized,
    C: ConstraintSet + ?Sized,
{
    let r = reflect(c, &reflect(b, &reflect(a, x)?)?)?;
    Ok(average(x, &r))
}

/// Cyclic operator `T_{C_N,C_1} T_{C_{N-1},C_N} ... T_{C_1,C_2}`.
pub fn cyclic_dr_step(sets: &[&dyn ConstraintSet], x: &Point) -> Result<Point> {
    let n = sets.len();
    if n < 2 {
        return Err(Error::TooFewSets { needed: 2, got: n });
    }
    let mut y = x.clone();
    for i in 0..n {
        y = dr_step(sets[i], sets[(i + 1) % n], &y)?;
    }
    Ok(y)
}

/// The inner points `x, T_{C_1,C_2}x, T_{C_2,C_3}T_{C_1,C_2}x, ...` of one
/// cyclic sweep; the last entry equals [`cyclic_dr_step`].
pub fn cyclic_dr_sweep(sets: &[&dyn ConstraintSet], x: &Point) -> Result<Vec<Point>> {
    let n = sets.len();
    if n < 2 {
        return Err(Error::TooFewSets { needed: 2, got: n });
    }
    let mut out = Vec::with_capacity(n + 1);
    out.push(x.clone());
    for i in 0..n {
        let next = dr_step(sets[i], sets[(i + 1) % n], &out[i])?;
        out.push(next);
    }
    Ok(out)
}

/// Averaged scheme `(1/N) sum_i T_{C_i,C_{i+1}} x`, indices modulo `N`.
///
/// The summands only read `x` and are evaluated independently.
pub fn averaged_dr_step(sets: &[&dyn ConstraintSet], x: &Point) -> Result<Point> {
    let n = sets.len();
    if n < 2 {
        return Err(Error::TooFewSets { needed: 2, got: n });
    }
    let mut acc = vec![0.0; x.dim()];
    for i in 0..n {
        let t = dr_step(sets[i], sets[(i + 1) % n], x)?;
        for (a, v) in acc.iter_mut().zip(t.coords()) {
            *a += v;
        }
    }
    let inv = 1.0 / n as f64;
    Ok(Point::new(acc.into_iter().map(|v| v * inv).collect()))
}
