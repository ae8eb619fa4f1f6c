//! Ellipse and spheroid projections via the secular equation.
//!
//! For the ellipse `x²/a² + y²/b² = 1` and a point `(u, v)`, the nearest
//! boundary point is
//!
//! ```text
//! p = (a² u / (a² - t), b² v / (b² - t))
//! ```
//!
//! where `t < min(a², b²)` solves
//!
//! ```text
//! a² u² / (a² - t)² + b² v² / (b² - t)² = 1.
//! ```
//!
//! The left side is increasing in `t` on that interval, so the root is
//! unique. We solve for `s = min(a², b²) - t > 0`, which keeps precision when
//! the root sits close to the pole.

use crate::error::{Error, Result};
use crate::point::{dot, norm, Point};
use crate::set::ConstraintSet;

const BISECT_WIDTH: f64 = 1e-6;
const MAX_POLISH: usize = 200;

/// Nearest boundary point together with the secular root that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseFoot {
    pub point: [f64; 2],
    /// `t` in the secular equation. Equals `min(a², b²)` in the degenerate
    /// case where the minor-axis coordinate vanishes and no root exists below
    /// the pole.
    pub t: f64,
    /// `min(a², b²) - t`, carried separately because forming it from `t`
    /// cancels badly when the root is near the pole.
    pub gap: f64,
}

/// Nearest point on the axis-aligned, origin-centred ellipse with semi-axes
/// `a` (along x) and `b` (along y).
///
/// A point on the minor axis whose projection is not a vertex has two
/// mirror-image nearest points; the one with nonnegative minor coordinate is
/// returned. For a circle (`a == b`) the center is ambiguous and rejected.
pub fn nearest_on_ellipse(a: f64, b: f64, u: f64, v: f64) -> Result<EllipseFoot> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidParameter(format!("ellipse semi-axes must be positive, got ({a}, {b})")));
    }
    if a == b {
        let r = u.hypot(v);
        if r == 0.0 {
            return Err(Error::AmbiguousProjection("point is the center of a circle"));
        }
        return Ok(EllipseFoot { point: [a * u / r, a * v / r], t: a * a - a * r, gap: a * r });
    }

    // Work in the frame (minor, major) with nonnegative coordinates.
    let minor_is_x = a < b;
    let (m, big, xm, xb) = if minor_is_x { (a, b, u.abs(), v.abs()) } else { (b, a, v.abs(), u.abs()) };
    let (m2, big2) = (m * m, big * big);

    let (pm, pb, gap) = if xm == 0.0 {
        if xb * big > big2 - m2 {
            (0.0, big, big * xb - (big2 - m2))
        } else {
            let pb = big2 * xb / (big2 - m2);
            let pm = m * (1.0 - (pb / big) * (pb / big)).max(0.0).sqrt();
            (pm, pb, 0.0)
        }
    } else if xb == 0.0 {
        (m, 0.0, m * xm)
    } else {
        let gap = big2 - m2;
        let g = |s: f64| {
            let qb = big * xb / (gap + s);
            let qm = m * xm / s;
            qb * qb + qm * qm - 1.0
        };
        let dg = |s: f64| {
            let db = gap + s;
            -2.0 * big2 * xb * xb / (db * db * db) - 2.0 * m2 * xm * xm / (s * s * s)
        };
        let s = solve_decreasing(g, dg, big * u.hypot(v) + 1.0);
        (m2 * xm / s, big2 * xb / (gap + s), s)
    };

    let (px, py) = if minor_is_x { (pm, pb) } else { (pb, pm) };
    Ok(EllipseFoot { point: [px.copysign(u), py.copysign(v)], t: m2 - gap, gap })
}

/// Root of a convex decreasing `g` on `(0, hi]` with `g(0+) = +inf` and
/// `g(hi) < 0`: bisect to width `BISECT_WIDTH`, then safeguarded Newton.
fn solve_decreasing(g: impl Fn(f64) -> f64, dg: impl Fn(f64) -> f64, hi: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, hi);
    while hi - lo > BISECT_WIDTH {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut s = 0.5 * (lo + hi);
    for _ in 0..MAX_POLISH {
        let gs = g(s);
        if gs == 0.0 {
            break;
        }
        if gs > 0.0 {
            lo = s;
        } else {
            hi = s;
        }
        let mut next = s - gs / dg(s);
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - s).abs() <= f64::EPSILON * s || next == lo || next == hi {
            s = next;
            break;
        }
        s = next;
    }
    s
}

/// Value of the secular function minus one at `t`; zero at the root.
pub fn secular_residual(a: f64, b: f64, u: f64, v: f64, t: f64) -> f64 {
    let qa = a * u / (a * a - t);
    let qb = b * v / (b * b - t);
    qa * qa + qb * qb - 1.0
}

/// Same residual, evaluated at `t = min(a², b²) - gap` without forming `t`.
pub fn secular_residual_gap(a: f64, b: f64, u: f64, v: f64, gap: f64) -> f64 {
    let m2 = (a * a).min(b * b);
    let qa = a * u / (a * a - m2 + gap);
    let qb = b * v / (b * b - m2 + gap);
    qa * qa + qb * qb - 1.0
}

/// An ellipse in the plane, given by its semi-axes, center and the angle of
/// its first axis. Either the boundary curve (nonconvex) or the filled
/// region (convex).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseSet {
    a: f64,
    b: f64,
    center: [f64; 2],
    angle: f64,
    solid: bool,
}

impl EllipseSet {
    /// Boundary of `x²/a² + y²/b² = 1`.
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidParameter(format!("ellipse semi-axes must be positive, got ({a}, {b})")));
        }
        Ok(EllipseSet { a, b, center: [0.0, 0.0], angle: 0.0, solid: false })
    }

    pub fn with_center(mut self, center: [f64; 2]) -> Self {
        self.center = center;
        self
    }

    /// Rotates the first axis to `angle` radians from the x-axis.
    pub fn with_angle(mut self, angle: f64) -> Self {
        self.angle = angle;
        self
    }

    /// The filled ellipse instead of its boundary.
    pub fn solid(mut self) -> Self {
        self.solid = true;
        self
    }

    pub fn semi_axes(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    fn to_local(self, x: &[f64]) -> (f64, f64) {
        let (s, c) = self.angle.sin_cos();
        let (dx, dy) = (x[0] - self.center[0], x[1] - self.center[1]);
        (c * dx + s * dy, -s * dx + c * dy)
    }

    fn to_world(self, u: f64, v: f64) -> [f64; 2] {
        let (s, c) = self.angle.sin_cos();
        [self.center[0] + c * u - s * v, self.center[1] + s * u + c * v]
    }

    /// `(u/a)² + (v/b)²` in the ellipse frame.
    pub fn level(&self, x: &[f64]) -> f64 {
        let (u, v) = self.to_local(x);
        (u / self.a).powi(2) + (v / self.b).powi(2)
    }

    /// Nearest boundary point in world coordinates, with its secular root.
    pub fn foot(&self, x: &[f64]) -> Result<EllipseFoot> {
        let (u, v) = self.to_local(x);
        let f = nearest_on_ellipse(self.a, self.b, u, v)?;
        Ok(EllipseFoot { point: self.to_world(f.point[0], f.point[1]), ..f })
    }
}

impl ConstraintSet for EllipseSet {
    fn dim(&self) -> usize {
        2
    }

    fn is_convex(&self) -> bool {
        self.solid
    }

    fn project_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        if self.solid && self.level(x) <= 1.0 {
            out.copy_from_slice(x);
        } else {
            out.copy_from_slice(&self.foot(x)?.point);
        }
        Ok(())
    }

    fn contains(&self, x: &[f64], tol: f64) -> bool {
        let level = self.level(x);
        if self.solid {
            level <= 1.0 + tol
        } else {
            (level - 1.0).abs() <= tol
        }
    }
}

/// A spheroid in `R^n`: the ellipse `(axial a, equatorial b)` rotated about
/// `axis` through `center`. Projection reduces to the planar problem in the
/// (axial, radial) half-plane. For points on the axis whose nearest points
/// form a ring, the ring point in the direction of the coordinate axis least
/// aligned with `axis` is selected.
#[derive(Debug, Clone, PartialEq)]
pub struct SpheroidSet {
    center: Point,
    axis: Point,
    a: f64,
    b: f64,
    solid: bool,
}

impl SpheroidSet {
    pub fn new(center: Point, axis: Point, a: f64, b: f64) -> Result<Self> {
        axis.expect_dim(center.dim())?;
        if center.dim() < 2 {
            return Err(Error::InvalidParameter("spheroid needs dimension >= 2".into()));
        }
        let n = axis.norm();
        if n.is_nan() || n == 0.0 {
            return Err(Error::InvalidParameter("spheroid axis must be nonzero".into()));
        }
        EllipseSet::new(a, b)?;
        Ok(SpheroidSet { center, axis: axis.scale(1.0 / n), a, b, solid: false })
    }

    pub fn solid(mut self) -> Self {
        self.solid = true;
        self
    }

    fn split(&self, x: &[f64]) -> (f64, Vec<f64>, f64) {
        let d: Vec<f64> = x.iter().zip(self.center.coords()).map(|(x, c)| x - c).collect();
        let ax = self.axis.coords();
        let u = dot(&d, ax);
        let w: Vec<f64> = d.iter().zip(ax).map(|(d, a)| d - u * a).collect();
        let r = norm(&w);
        (u, w, r)
    }

    fn fallback_radial(&self) -> Vec<f64> {
        let ax = self.axis.coords();
        let k = (0..ax.len()).min_by(|&i, &j| ax[i].abs().total_cmp(&ax[j].abs())).unwrap_or(0);
        let mut e: Vec<f64> = ax.iter().map(|a| -ax[k] * a).collect();
        e[k] += 1.0;
        let n = norm(&e);
        e.iter().map(|v| v / n).collect()
    }
}

impl ConstraintSet for SpheroidSet {
    fn dim(&self) -> usize {
        self.center.dim()
    }

    fn is_convex(&self) -> bool {
        self.solid
    }

    fn project_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        let (u, w, r) = self.split(x);
        if self.solid && (u / self.a).powi(2) + (r / self.b).powi(2) <= 1.0 {
            out.copy_from_slice(x);
            return Ok(());
        }
        let foot = nearest_on_ellipse(self.a, self.b, u, r)?;
        let [pu, pr] = foot.point;
        let radial = if r > 0.0 { w.iter().map(|v| v / r).collect() } else { self.fallback_radial() };
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.center[i] + pu * self.axis[i] + pr * radial[i];
        }
        Ok(())
    }

    fn contains(&self, x: &[f64], tol: f64) -> bool {
        let (u, _, r) = self.split(x);
        let level = (u / self.a).powi(2) + (r / self.b).powi(2);
        if self.solid {
            level <= 1.0 + tol
        } else {
            (level - 1.0).abs() <= tol
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_case() {
        let f = nearest_on_ellipse(1.0, 1.0, 2.0, 0.0).unwrap();
        assert_eq!(f.point, [1.0, 0.0]);
        assert!(nearest_on_ellipse(1.0, 1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn on_axis_cases() {
        let f = nearest_on_ellipse(2.0, 1.0, 0.0, 5.0).unwrap();
        assert_eq!(f.point, [0.0, 1.0]);
        let f = nearest_on_ellipse(2.0, 1.0, 0.0, -5.0).unwrap();
        assert_eq!(f.point, [0.0, -1.0]);
        let f = nearest_on_ellipse(2.0, 1.0, 3.0, 0.0).unwrap();
        assert_eq!(f.point, [2.0, 0.0]);
        // center of a non-circular ellipse goes to a semi-minor vertex
        let f = nearest_on_ellipse(2.0, 1.0, 0.0, 0.0).unwrap();
        assert_eq!(f.point, [0.0, 1.0]);
        let f = nearest_on_ellipse(1.0, 3.0, 0.0, 0.0).unwrap();
        assert_eq!(f.point, [1.0, 0.0]);
    }

    #[test]
    fn degenerate_inner_major_axis_point() {
        // (0.5, 0) inside an (a=2, b=1) ellipse: below the evolute cusp at
        // x = (a² - b²)/a = 1.5, so the foot leaves the axis.
        let f = nearest_on_ellipse(2.0, 1.0, 0.5, 0.0).unwrap();
        let [px, py] = f.point;
        assert!((px - 4.0 * 0.5 / 3.0).abs() <= 1e-15);
        assert!(py > 0.0);
        assert!(((px / 2.0).powi(2) + py * py - 1.0).abs() <= 1e-14);
        // beyond the cusp the vertex is nearest
        let f = nearest_on_ellipse(2.0, 1.0, 1.6, 0.0).unwrap();
        assert_eq!(f.point, [2.0, 0.0]);
    }

    #[test]
    fn kkt_conditions_hold() {
        let cases = [(2.0, 1.0, 2.0, 1.0), (1.0, 3.0, -0.2, 0.1), (0.5, 0.7, 4.0, -6.0), (3.0, 0.2, 0.1, 1e-9)];
        for (a, b, u, v) in cases {
            let f = nearest_on_ellipse(a, b, u, v).unwrap();
            let [px, py] = f.point;
            assert!(((px / a).powi(2) + (py / b).powi(2) - 1.0).abs() <= 1e-10, "{a} {b} {u} {v}");
            assert!(secular_residual_gap(a, b, u, v, f.gap).abs() <= 1e-10);
            // x - p parallel to the normal (px/a², py/b²)
            let (rx, ry) = (u - px, v - py);
            let (nx, ny) = (px / (a * a), py / (b * b));
            let cross = rx * ny - ry * nx;
            let scale = rx.hypot(ry) * nx.hypot(ny);
            assert!(scale == 0.0 || (cross / scale).abs() <= 1e-8);
        }
    }

    #[test]
    fn solid_ellipse_keeps_inside_points() {
        let e = EllipseSet::new(2.0, 1.0).unwrap().solid();
        let inside = Point::from([0.5, 0.5]);
        assert_eq!(e.project(&inside).unwrap(), inside);
        let p = e.project(&Point::from([0.0, 5.0])).unwrap();
        assert!(p.dist(&Point::from([0.0, 1.0])) <= 1e-15);
        assert!(e.is_convex());
    }

    #[test]
    fn rotated_and_shifted_ellipse() {
        let e = EllipseSet::new(2.0, 1.0).unwrap().with_center([1.0, -1.0]).with_angle(std::f64::consts::FRAC_PI_2);
        // first axis now vertical: the top vertex is (1, 1)
        let p = e.project(&Point::from([1.0, 4.0])).unwrap();
        assert!(p.dist(&Point::from([1.0, 1.0])) <= 1e-14);
        assert!(e.contains_point(&p, 1e-12));
    }

    #[test]
    fn spheroid_reduces_to_planar_problem() {
        let s = SpheroidSet::new(Point::zeros(3), Point::from([0.0, 0.0, 1.0]), 2.0, 1.0).unwrap();
        let p = s.project(&Point::from([3.0, 4.0, 0.0])).unwrap();
        assert!(p.dist(&Point::from([0.6, 0.8, 0.0])) <= 1e-14);
        let p = s.project(&Point::from([0.0, 0.0, 5.0])).unwrap();
        assert!(p.dist(&Point::from([0.0, 0.0, 2.0])) <= 1e-14);
        let p = s.project(&Point::from([0.1, -0.3, 1.2])).unwrap();
        assert!(s.contains_point(&p, 1e-10));
        // on the axis near the center: a ring of nearest points, one selected
        let p = s.project(&Point::from([0.0, 0.0, 0.1])).unwrap();
        assert!(s.contains_point(&p, 1e-10));
    }
}
