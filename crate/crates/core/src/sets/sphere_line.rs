use crate::error::{Error, Result};
use crate::point::Point;

/// Closed form of `T_{S,L}` for the unit sphere `S` and the line
/// `L = {λ e_1 + α e_2}`:
///
/// ```text
/// x⁺(1) = x(1) / ρ
/// x⁺(2) = α + (1 - 1/ρ) x(2)
/// x⁺(k) = (1 - 1/ρ) x(k),  k >= 3
/// ```
///
/// with `ρ = ||x||`.
pub fn sphere_line_step(x: &Point, alpha: f64) -> Result<Point> {
    if x.dim() < 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: x.dim() });
    }
    let rho = x.norm();
    if rho == 0.0 {
        return Err(Error::AmbiguousProjection("sphere-line step at the origin"));
    }
    let shrink = 1.0 - 1.0 / rho;
    let mut next: Vec<f64> = x.coords().iter().map(|v| shrink * v).collect();
    next[0] = x[0] / rho;
    next[1] = alpha + shrink * x[1];
    Ok(Point::new(next))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn examples() {
        let p = Point::from([1.0, 0.0]);
        assert_eq!(sphere_line_step(&p, 0.0).unwrap(), p);

        let q = Point::from([FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
        assert!(sphere_line_step(&q, FRAC_1_SQRT_2).unwrap().dist(&q) <= 1e-15);

        // ρ = 1/2: (0.3/0.5, α + (1 - 2)·0.4)
        let r = sphere_line_step(&Point::from([0.3, 0.4]), FRAC_1_SQRT_2).unwrap();
        assert!(r.dist(&Point::from([0.6, FRAC_1_SQRT_2 - 0.4])) <= 1e-15);
    }

    #[test]
    fn errors() {
        assert!(sphere_line_step(&Point::from([0.0, 0.0]), 0.5).is_err());
        assert!(sphere_line_step(&Point::from([1.0]), 0.5).is_err());
    }

    #[test]
    fn higher_coordinates_shrink() {
        let r = sphere_line_step(&Point::from([0.0, 0.0, 2.0]), 0.0).unwrap();
        assert_eq!(r, Point::from([0.0, 0.0, 1.0]));
    }
}
