//! The complex oscillator V0 = omega^2 x^2 / 2 with omega = e^{i theta}.
//!
//! Every function handled here solves -u''/2 + V0 u = eps u, so a value and
//! first derivative at a point (a [`JetValue`]) together with the
//! [`DerivativeTower`] for (eps, omega) determine all higher derivatives.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{self, SeriesControl};

/// Distance within which a hypergeometric parameter is treated as the
/// non-positive integer it approximates (terminating series / Gamma pole).
const INTEGER_SNAP_TOL: f64 = 1e-9;

/// Derivative orders precomputed by default in a tower.
pub const DEFAULT_TOWER_ORDER: usize = 12;

/// Complex frequency omega = e^{i theta}, restricted to theta in [0, pi/2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frequency {
    theta: f64,
    omega: Complex64,
    sqrt_omega: Complex64,
}

impl Frequency {
    pub fn new(theta: f64) -> Result<Self> {
        if theta == FRAC_PI_2 {
            return Err(Error::RepulsiveOscillator);
        }
        if !(0.0..FRAC_PI_2).contains(&theta) {
            return Err(Error::PhaseOutOfDomain { theta });
        }
        Ok(Self::new_unchecked(theta))
    }

    /// Skips the working-domain guard. Only meant for symmetry checks such
    /// as E_n(-theta) = conj(E_n(theta)).
    pub fn new_unchecked(theta: f64) -> Self {
        Frequency {
            theta,
            omega: Complex64::from_polar(1.0, theta),
            sqrt_omega: Complex64::from_polar(1.0, 0.5 * theta),
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn omega(&self) -> Complex64 {
        self.omega
    }

    pub fn sqrt_omega(&self) -> Complex64 {
        self.sqrt_omega
    }
}

/// E_n = (n + 1/2) omega.
///
/// The theta in (pi/2, 3pi/2) branch, E_n = (n + 1/2) e^{i(theta - pi)}, is
/// the same spectrum under omega -> -omega and never reached here.
pub fn eigenvalue(n: usize, freq: &Frequency) -> Complex64 {
    (n as f64 + 0.5) * freq.omega()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedKind {
    /// The two-parameter solution built from two 1F1 series.
    General,
    /// phi_{2j}
    BoundEven(usize),
    /// phi_{2j+1}
    BoundOdd(usize),
    /// Closed form at eps = -omega/2 in terms of erf (Abraham-Moses-Mielnik).
    Ams,
}

/// A Schrodinger seed solution u(x, eps).
///
/// `nu` is the deformation parameter mixing the even and odd series; the
/// erf-form AMS seed uses the same parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeedSpec {
    pub epsilon: Complex64,
    pub nu: Complex64,
    pub kind: SeedKind,
}

impl SeedSpec {
    pub fn general(epsilon: Complex64, nu: Complex64) -> Result<Self> {
        check_nu(nu)?;
        Ok(SeedSpec { epsilon, nu, kind: SeedKind::General })
    }

    pub fn bound_even(j: usize, freq: &Frequency) -> Self {
        SeedSpec { epsilon: eigenvalue(2 * j, freq), nu: Complex64::new(0.0, 0.0), kind: SeedKind::BoundEven(j) }
    }

    pub fn bound_odd(j: usize, freq: &Frequency) -> Self {
        SeedSpec { epsilon: eigenvalue(2 * j + 1, freq), nu: Complex64::new(0.0, 0.0), kind: SeedKind::BoundOdd(j) }
    }

    pub fn ams(nu: Complex64, freq: &Frequency) -> Result<Self> {
        check_nu(nu)?;
        Ok(SeedSpec { epsilon: -0.5 * freq.omega(), nu, kind: SeedKind::Ams })
    }

    /// Re-checks the invariants, e.g. after fields were edited in place.
    pub fn validate(&self, freq: &Frequency) -> Result<()> {
        check_nu(self.nu)?;
        let forced = match self.kind {
            SeedKind::General => return Ok(()),
            SeedKind::BoundEven(j) => eigenvalue(2 * j, freq),
            SeedKind::BoundOdd(j) => eigenvalue(2 * j + 1, freq),
            SeedKind::Ams => -0.5 * freq.omega(),
        };
        if (self.epsilon - forced).norm() > 1e-12 * (1.0 + forced.norm()) {
            return Err(Error::InvalidSeed(format!(
                "epsilon {} does not match the level {} forced by {:?}",
                self.epsilon, forced, self.kind
            )));
        }
        Ok(())
    }

    /// Index n when the seed is the bound state phi_n.
    pub fn bound_index(&self) -> Option<usize> {
        match self.kind {
            SeedKind::BoundEven(j) => Some(2 * j),
            SeedKind::BoundOdd(j) => Some(2 * j + 1),
            _ => None,
        }
    }
}

fn check_nu(nu: Complex64) -> Result<()> {
    if nu.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidSeed(format!("|nu| = {} must be below 1", nu.norm())))
    }
}

/// Value and first derivative of a Schrodinger solution at `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JetValue {
    pub x: f64,
    pub u: Complex64,
    pub du: Complex64,
}

impl JetValue {
    /// beta = u'/u.
    pub fn log_derivative(&self) -> Complex64 {
        self.du / self.u
    }

    pub fn is_trivial(&self) -> bool {
        self.u == Complex64::new(0.0, 0.0) && self.du == Complex64::new(0.0, 0.0)
    }
}

/// Complex polynomial in x, coefficients from the constant term up.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly(pub Vec<Complex64>);

impl Poly {
    pub fn eval(&self, x: f64) -> Complex64 {
        self.0.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
    }

    fn derivative(&self) -> Poly {
        Poly(self.0.iter().enumerate().skip(1).map(|(i, &c)| c * i as f64).collect())
    }

    fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let zero = Complex64::new(0.0, 0.0);
        Poly((0..n).map(|i| self.0.get(i).copied().unwrap_or(zero) + other.0.get(i).copied().unwrap_or(zero)).collect())
    }

    fn mul(&self, other: &Poly) -> Poly {
        if self.0.is_empty() || other.0.is_empty() {
            return Poly::default();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out)
    }
}

/// Polynomials (p_m, q_m) with u^(m) = p_m(x) u + q_m(x) u' for every
/// solution of u'' = (omega^2 x^2 - 2 eps) u.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeTower {
    epsilon: Complex64,
    omega: Complex64,
    p: Vec<Poly>,
    q: Vec<Poly>,
}

impl DerivativeTower {
    pub fn new(epsilon: Complex64, omega: Complex64) -> Self {
        Self::with_order(epsilon, omega, DEFAULT_TOWER_ORDER)
    }

    pub fn with_order(epsilon: Complex64, omega: Complex64, max_order: usize) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let mut p = vec![Poly(vec![one]), Poly::default()];
        let mut q = vec![Poly::default(), Poly(vec![one])];
        let curvature = Self::curvature(epsilon, omega);
        for m in 1..max_order.max(1) {
            let (pm, qm) = (&p[m], &q[m]);
            let next_p = pm.derivative().add(&qm.mul(&curvature));
            let next_q = pm.add(&qm.derivative());
            p.push(next_p);
            q.push(next_q);
        }
        DerivativeTower { epsilon, omega, p, q }
    }

    /// omega^2 x^2 - 2 eps, the ratio u''/u.
    fn curvature(epsilon: Complex64, omega: Complex64) -> Poly {
        Poly(vec![-2.0 * epsilon, Complex64::new(0.0, 0.0), omega * omega])
    }

    pub fn epsilon(&self) -> Complex64 {
        self.epsilon
    }

    pub fn omega(&self) -> Complex64 {
        self.omega
    }

    pub fn max_order(&self) -> usize {
        self.p.len() - 1
    }

    pub fn coefficients(&self, m: usize) -> Option<(&Poly, &Poly)> {
        Some((self.p.get(m)?, self.q.get(m)?))
    }

    /// u^(m)(x) from the jet.
    pub fn eval(&self, jet: &JetValue, m: usize) -> Complex64 {
        if m < self.p.len() {
            return self.p[m].eval(jet.x) * jet.u + self.q[m].eval(jet.x) * jet.du;
        }
        // Past the cache: keep recurring on fresh copies.
        let curvature = Self::curvature(self.epsilon, self.omega);
        let (mut p, mut q) = (self.p.last().unwrap().clone(), self.q.last().unwrap().clone());
        for _ in self.p.len() - 1..m {
            let next_p = p.derivative().add(&q.mul(&curvature));
            let next_q = p.add(&q.derivative());
            p = next_p;
            q = next_q;
        }
        p.eval(jet.x) * jet.u + q.eval(jet.x) * jet.du
    }
}

/// u^(m)(x) = p_m(x) u + q_m(x) u'.
pub fn tower_eval(tower: &DerivativeTower, jet: &JetValue, m: usize) -> Complex64 {
    tower.eval(jet, m)
}

/// -u''/2 + (omega^2 x^2/2) u - eps u with u'' taken from the tower.
pub fn schrodinger_residual(tower: &DerivativeTower, jet: &JetValue) -> Complex64 {
    let w = tower.omega();
    -0.5 * tower.eval(jet, 2) + 0.5 * w * w * jet.x * jet.x * jet.u - tower.epsilon() * jet.u
}

/// Unnormalized eigenfunction H_n(sqrt(omega) x) e^{-omega x^2 / 2}.
pub fn eigenfunction_jet(n: usize, freq: &Frequency, x: f64) -> JetValue {
    let s = freq.sqrt_omega();
    let w = freq.omega();
    let gauss = (-0.5 * w * x * x).exp();
    let (h, h_prev) = specfun::hermite_pair(n, s * x);
    let u = h * gauss;
    let du = (2.0 * n as f64 * s * h_prev - w * x * h) * gauss;
    JetValue { x, u, du }
}

/// Which of the two equal forms of the general seed to sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// e^{-omega x^2/2} [M(1/4 - eps/2w, 1/2, omega x^2) + ...]
    Decaying,
    /// e^{+omega x^2/2} [M(1/4 + eps/2w, 1/2, -omega x^2) + ...]
    Growing,
}

impl Branch {
    /// The branch whose series argument has non-negative real part, i.e.
    /// whose terms do not alternate into cancellation. For theta in the
    /// working domain this is always the decaying-prefactor form.
    pub fn preferred(freq: &Frequency) -> Branch {
        if freq.omega().re >= 0.0 {
            Branch::Decaying
        } else {
            Branch::Growing
        }
    }

    fn sign(self) -> f64 {
        match self {
            Branch::Decaying => 1.0,
            Branch::Growing => -1.0,
        }
    }
}

/// lambda = 2 nu Gamma(3/4 - eps/2w) / Gamma(1/4 - eps/2w).
pub fn seed_lambda(epsilon: Complex64, nu: Complex64, freq: &Frequency) -> Result<Complex64> {
    let shift = epsilon / (2.0 * freq.omega());
    let p = specfun::snap_non_positive_integer(0.75 - shift, INTEGER_SNAP_TOL);
    let q = specfun::snap_non_positive_integer(0.25 - shift, INTEGER_SNAP_TOL);
    if specfun::non_positive_integer(q).is_some() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if specfun::non_positive_integer(p).is_some() {
        if nu == Complex64::new(0.0, 0.0) {
            return Ok(nu);
        }
        return Err(Error::LambdaPole { epsilon });
    }
    Ok(2.0 * nu * specfun::gamma_ratio(p, q).expect("p is not a pole"))
}

/// General seed evaluated on a chosen branch.
pub fn general_seed_jet(
    epsilon: Complex64,
    nu: Complex64,
    freq: &Frequency,
    x: f64,
    branch: Branch,
) -> Result<JetValue> {
    let ctl = SeriesControl::precise();
    let lambda = seed_lambda(epsilon, nu, freq)?;
    let sigma = branch.sign();
    let w = freq.omega();
    let shift = sigma * epsilon / (2.0 * w);
    let a1 = specfun::snap_non_positive_integer(0.25 - shift, INTEGER_SNAP_TOL);
    let a2 = specfun::snap_non_positive_integer(0.75 - shift, INTEGER_SNAP_TOL);
    let b1 = Complex64::new(0.5, 0.0);
    let b2 = Complex64::new(1.5, 0.0);
    let z = sigma * w * x * x;
    let dz = 2.0 * sigma * w * x;
    let pref = (-0.5 * z).exp();

    let m1 = specfun::hyp1f1(a1, b1, z, &ctl)?;
    let m1z = specfun::hyp1f1_deriv(a1, b1, z, 1, &ctl)?;
    let (m2, m2z) = if lambda == Complex64::new(0.0, 0.0) {
        (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
    } else {
        (specfun::hyp1f1(a2, b2, z, &ctl)?, specfun::hyp1f1_deriv(a2, b2, z, 1, &ctl)?)
    };
    let bracket = m1 + lambda * x * m2;
    let dbracket = m1z * dz + lambda * m2 + lambda * x * m2z * dz;
    let u = pref * bracket;
    let du = pref * (dbracket - 0.5 * dz * bracket);
    Ok(JetValue { x, u, du })
}

/// Both branches of the general seed, for cross-checking.
pub fn general_seed_both_branches(
    epsilon: Complex64,
    nu: Complex64,
    freq: &Frequency,
    x: f64,
) -> Result<(JetValue, JetValue)> {
    Ok((
        general_seed_jet(epsilon, nu, freq, x, Branch::Decaying)?,
        general_seed_jet(epsilon, nu, freq, x, Branch::Growing)?,
    ))
}

/// Jet of the seed solution at `x`.
pub fn seed_jet(spec: &SeedSpec, freq: &Frequency, x: f64) -> Result<JetValue> {
    match spec.kind {
        SeedKind::General => general_seed_jet(spec.epsilon, spec.nu, freq, x, Branch::preferred(freq)),
        SeedKind::BoundEven(j) => Ok(eigenfunction_jet(2 * j, freq, x)),
        SeedKind::BoundOdd(j) => Ok(eigenfunction_jet(2 * j + 1, freq, x)),
        SeedKind::Ams => {
            let s = freq.sqrt_omega();
            let w = freq.omega();
            let erf = specfun::erf_c(s * x, &SeriesControl::precise())?;
            let grow = (0.5 * w * x * x).exp();
            let u = grow * (1.0 + spec.nu / s * erf);
            let du = w * x * u + 2.0 * spec.nu / PI.sqrt() * (-0.5 * w * x * x).exp();
            Ok(JetValue { x, u, du })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Raise,
    Lower,
}

impl Direction {
    /// Energy shift in units of omega.
    pub fn step(self) -> f64 {
        match self {
            Direction::Raise => 1.0,
            Direction::Lower => -1.0,
        }
    }
}

/// Jet of a^{+-} u with a^{+-} = (-+ d/dx + omega x)/sqrt(2).
///
/// The result solves the oscillator equation at eps +- omega.
pub fn ladder_jet(direction: Direction, jet: &JetValue, tower: &DerivativeTower) -> JetValue {
    let w = tower.omega();
    let x = jet.x;
    let d2 = tower.eval(jet, 2);
    let sign = match direction {
        Direction::Raise => -1.0,
        Direction::Lower => 1.0,
    };
    JetValue {
        x,
        u: (sign * jet.du + w * x * jet.u) * FRAC_1_SQRT_2,
        du: (sign * d2 + w * jet.u + w * x * jet.du) * FRAC_1_SQRT_2,
    }
}

/// Status of a level of a transformed Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelStatus {
    Retained,
    Deleted,
    Created,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelLabel {
    /// Oscillator level n with energy (n + 1/2) omega.
    Index(usize),
    /// Factorization energy eps_j of the chain (1-based).
    Created(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub label: LevelLabel,
    pub energy: Complex64,
    pub status: LevelStatus,
}
