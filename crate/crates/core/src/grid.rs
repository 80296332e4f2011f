//! Uniform sampling grids and central finite differences.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default full-line window and resolution.
pub const FULL_LINE: (f64, f64, usize) = (-8.0, 8.0, 1601);
/// Default half-line window; starts just right of the x = 0 barrier.
pub const HALF_LINE: (f64, f64, usize) = (1e-3, 8.0, 1200);

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    points: Vec<f64>,
}

impl Grid {
    pub fn linspace(min: f64, max: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 points, got {n}")));
        }
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(Error::InvalidGrid(format!("bad range [{min}, {max}]")));
        }
        let step = (max - min) / (n - 1) as f64;
        let mut points: Vec<f64> = (0..n).map(|i| min + step * i as f64).collect();
        points[n - 1] = max;
        Ok(Grid { points })
    }

    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        if points.len() < 2 || points.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidGrid("points must be strictly increasing".into()));
        }
        Ok(Grid { points })
    }

    pub fn full_line() -> Self {
        let (a, b, n) = FULL_LINE;
        Self::linspace(a, b, n).expect("valid default")
    }

    pub fn half_line() -> Self {
        let (a, b, n) = HALF_LINE;
        Self::linspace(a, b, n).expect("valid default")
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.points[0]
    }

    pub fn max(&self) -> f64 {
        self.points[self.points.len() - 1]
    }

    /// Keeps only points satisfying `keep`.
    pub fn filtered(&self, keep: impl Fn(f64) -> bool) -> Result<Self> {
        Self::from_points(self.points.iter().copied().filter(|&x| keep(x)).collect())
    }
}

/// Trapezoid rule on arbitrary (sorted) abscissae.
pub fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    xs.windows(2).zip(ys.windows(2)).map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1])).sum()
}

/// Values of f at x + offsets * h.
fn stencil<F>(f: &mut F, x: f64, h: f64, offsets: &[f64]) -> Result<Vec<Complex64>>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    offsets.iter().map(|&o| f(x + o * h)).collect()
}

/// Default finite-difference step.
pub const FD_STEP: f64 = 1e-3;

/// Offsets used by [`derivatives`]: the 5-point stencils for h and h/2.
pub const RICHARDSON_OFFSETS: [f64; 7] = [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0];

/// First and second derivatives from the values at `RICHARDSON_OFFSETS * h`,
/// using 5-point central differences at h and h/2 and one Richardson step.
pub fn derivatives_from_samples(v: &[Complex64; 7], h: f64) -> (Complex64, Complex64) {
    let [m2, m1, mh, c, ph, p1, p2] = *v;
    let d1_h = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
    let d2_h = (-p2 + 16.0 * p1 - 30.0 * c + 16.0 * m1 - m2) / (12.0 * h * h);
    let hh = 0.5 * h;
    let d1_hh = (-p1 + 8.0 * ph - 8.0 * mh + m1) / (12.0 * hh);
    let d2_hh = (-p1 + 16.0 * ph - 30.0 * c + 16.0 * mh - m1) / (12.0 * hh * hh);
    ((16.0 * d1_hh - d1_h) / 15.0, (16.0 * d2_hh - d2_h) / 15.0)
}

/// (f'(x), f''(x)) by Richardson-extrapolated central differences.
pub fn derivatives<F>(mut f: F, x: f64, h: f64) -> Result<(Complex64, Complex64)>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let v = stencil(&mut f, x, h, &RICHARDSON_OFFSETS)?;
    let arr: [Complex64; 7] = v.try_into().expect("seven samples");
    Ok(derivatives_from_samples(&arr, h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_hits_both_ends() {
        let g = Grid::linspace(-1.0, 1.0, 5).unwrap();
        assert_eq!(g.points(), &[-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert!(Grid::linspace(1.0, 1.0, 5).is_err());
        assert!(Grid::linspace(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn default_grids() {
        assert_eq!(Grid::full_line().len(), 1601);
        let h = Grid::half_line();
        assert_eq!(h.len(), 1200);
        assert!(h.min() > 0.0);
    }

    #[test]
    fn trapezoid_is_exact_for_lines() {
        let xs = [0.0, 0.5, 2.0];
        let ys = [1.0, 2.0, 5.0];
        assert!((trapezoid(&xs, &ys) - 6.0).abs() < 1e-15);
    }

    #[test]
    fn derivatives_of_exponential() {
        let z = Complex64::new(0.3, 1.1);
        let (d1, d2) = derivatives(|x| Ok((z * x).exp()), 0.7, 1e-2).unwrap();
        let e = (z * 0.7).exp();
        assert!((d1 - z * e).norm() < 1e-11);
        assert!((d2 - z * z * e).norm() < 1e-10);
    }
}
