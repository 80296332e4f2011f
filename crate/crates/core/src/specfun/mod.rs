//! Complex special functions: Kummer's 1F1, Hermite polynomials, erf and a
//! complex log-gamma used for the seed mixing coefficient.
//!
//! 1F1 is summed as a plain power series. The running sum is carried in
//! double-double precision, so the result stays accurate while the
//! individual terms exceed it by up to ~25 orders of magnitude. There is no
//! asymptotic expansion; callers keep |z| bounded and choose the series
//! argument with non-negative real part (see `oscillator`).

mod dd;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use dd::{Dd, DdComplex};

const TWO_OVER_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;

/// Stopping policy for power-series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub max_terms: usize,
    pub rel_tol: f64,
    /// Number of consecutive terms below `rel_tol * |sum|` needed to stop.
    pub consecutive_small: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl { max_terms: 2000, rel_tol: 1e-14, consecutive_small: 2 }
    }
}

impl SeriesControl {
    pub fn new(max_terms: usize, rel_tol: f64, consecutive_small: usize) -> Result<Self> {
        let ctl = SeriesControl { max_terms, rel_tol, consecutive_small };
        ctl.validate()?;
        Ok(ctl)
    }

    /// Tighter tolerance used for seed solutions, whose log-derivatives feed
    /// differences of nearly equal quantities.
    pub fn precise() -> Self {
        SeriesControl { max_terms: 2000, rel_tol: 1e-18, consecutive_small: 3 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_terms < 1 {
            return Err(Error::InvalidControl("max_terms must be at least 1"));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(Error::InvalidControl("rel_tol must lie in (0, 1)"));
        }
        if self.consecutive_small < 2 {
            return Err(Error::InvalidControl("consecutive_small must be at least 2"));
        }
        Ok(())
    }
}

/// Returns `Some(n)` when `z` is exactly the non-positive integer `-n`.
pub fn non_positive_integer(z: Complex64) -> Option<u64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 && z.re > -1e15 {
        Some((-z.re) as u64)
    } else {
        None
    }
}

/// Snaps `z` onto the nearest non-positive integer when it lies within
/// `tol` of one; otherwise returns `z` unchanged.
pub fn snap_non_positive_integer(z: Complex64, tol: f64) -> Complex64 {
    let r = z.re.round();
    if r <= 0.0 && (z - Complex64::new(r, 0.0)).norm() < tol {
        Complex64::new(r, 0.0)
    } else {
        z
    }
}

/// Kummer's confluent hypergeometric function M(a, b, z) = 1F1(a; b; z).
pub fn hyp1f1(a: Complex64, b: Complex64, z: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    ctl.validate()?;
    let terminating = non_positive_integer(a);
    if let Some(nb) = non_positive_integer(b) {
        match terminating {
            Some(na) if na < nb + 1 => {}
            _ => return Err(Error::PoleAtB { b }),
        }
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }

    let zd = DdComplex::from_c64(z);
    let z_abs = z.norm();
    let mut term = DdComplex::ONE;
    let mut sum = DdComplex::ONE;

    if let Some(na) = terminating {
        for m in 0..na {
            term = next_term(term, a, b, zd, m);
            sum = sum + term;
        }
        return Ok(sum.to_c64());
    }

    let mut small_run = 0usize;
    for m in 0..ctl.max_terms as u64 {
        term = next_term(term, a, b, zd, m);
        sum = sum + term;
        let mf = m as f64;
        // Terms only shrink for good once the ratio |(a+m) z / ((b+m)(m+1))| < 1.
        let ratio = (a + mf).norm() * z_abs / ((b + mf).norm() * (mf + 1.0));
        if ratio < 1.0 && term.norm_f64() < ctl.rel_tol * sum.norm_f64() {
            small_run += 1;
            if small_run >= ctl.consecutive_small {
                return Ok(sum.to_c64());
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::NotConverged { z, max_terms: ctl.max_terms })
}

#[inline]
fn next_term(term: DdComplex, a: Complex64, b: Complex64, z: DdComplex, m: u64) -> DdComplex {
    let mf = m as f64;
    let num = DdComplex::shifted(a, mf) * z;
    let den = DdComplex::shifted(b, mf);
    (term * num) / den / Dd::new(mf + 1.0)
}

/// m-th z-derivative of 1F1: (a)_m / (b)_m * M(a + m, b + m, z).
pub fn hyp1f1_deriv(a: Complex64, b: Complex64, z: Complex64, m: u32, ctl: &SeriesControl) -> Result<Complex64> {
    if m == 0 {
        return hyp1f1(a, b, z, ctl);
    }
    if let Some(na) = non_positive_integer(a) {
        if u64::from(m) > na {
            return Ok(Complex64::new(0.0, 0.0));
        }
    }
    let mut coef = Complex64::new(1.0, 0.0);
    for i in 0..m {
        let i = f64::from(i);
        coef *= (a + i) / (b + i);
    }
    let mf = f64::from(m);
    Ok(coef * hyp1f1(a + mf, b + mf, z, ctl)?)
}

/// Physicists' Hermite polynomial H_n(z) by the three-term recurrence.
pub fn hermite(n: usize, z: Complex64) -> Complex64 {
    hermite_pair(n, z).0
}

/// Returns `(H_n(z), H_{n-1}(z))`, with `H_{-1} = 0`.
pub fn hermite_pair(n: usize, z: Complex64) -> (Complex64, Complex64) {
    let mut prev = Complex64::new(0.0, 0.0);
    let mut cur = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let next = 2.0 * z * cur - 2.0 * (k as f64) * prev;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// Error function of a complex argument, erf(z) = 2z/sqrt(pi) M(1/2, 3/2, -z^2).
///
/// When Re(z^2) > 0 the Kummer-transformed series e^{-z^2} M(1, 3/2, z^2) is
/// summed instead; it is the same function with positive-phase terms.
pub fn erf_c(z: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Ok(z);
    }
    let w = z * z;
    let half = Complex64::new(0.5, 0.0);
    let three_halves = Complex64::new(1.5, 0.0);
    let m = if w.re <= 0.0 {
        hyp1f1(half, three_halves, -w, ctl)?
    } else {
        (-w).exp() * hyp1f1(Complex64::new(1.0, 0.0), three_halves, w, ctl)?
    };
    Ok(TWO_OVER_SQRT_PI * z * m)
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Complex log-gamma (Lanczos, g = 7). Only defined up to a multiple of
/// 2*pi*i in the imaginary part, which is all `exp` of differences needs.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let pi = Complex64::new(PI, 0.0);
        return pi.ln() - (pi * z).sin().ln() - ln_gamma(1.0 - z);
    }
    let z = z - 1.0;
    let mut acc = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

/// Gamma(p) / Gamma(q). Returns `None` when p is a pole of Gamma; the
/// ratio is zero when only q is a pole.
pub fn gamma_ratio(p: Complex64, q: Complex64) -> Option<Complex64> {
    if non_positive_integer(p).is_some() {
        return None;
    }
    if non_positive_integer(q).is_some() {
        return Some(Complex64::new(0.0, 0.0));
    }
    Some((ln_gamma(p) - ln_gamma(q)).exp())
}
