//! Painleve IV candidates built from extremal states and their certification.
//!
//! A candidate g is evaluated on the ray y = sqrt(omega) x, x real:
//!
//! ```text
//! g(y) = -y - (ln psi)'(y) = -sqrt(omega) x - (ln psi)'(x) / sqrt(omega)
//! ```
//!
//! and is accepted only if the residual of
//!
//! ```text
//! g'' = g'^2 / (2g) + 3/2 g^3 + 4 y g^2 + 2 (y^2 - a) g + b / g
//! ```
//!
//! stays below tolerance on the sampled grid.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{derivatives_from_samples, Grid, FD_STEP, RICHARDSON_OFFSETS};
use crate::pha::extremal_triple;
use crate::susy::{created_ratio, Chain, Domain, StateRatio, SINGULAR_TOL};

/// delta_g: points with |g| below this are excluded from residual statistics.
pub const G_EXCLUSION: f64 = 1e-3;
pub const ANALYTIC_TOL: f64 = 1e-6;
pub const FD_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Analytic,
    FiniteDifference,
}

impl Scheme {
    pub fn tolerance(self) -> f64 {
        match self {
            Scheme::Analytic => ANALYTIC_TOL,
            Scheme::FiniteDifference => FD_TOL,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Analytic => "analytic",
            Scheme::FiniteDifference => "finite-difference",
        }
    }
}

/// (a, b) with energy `role` (1..=3) in the distinguished slot:
/// a = e_1 + e_2 - 2 e_3 - 1, b = -2 (e_1 - e_2)^2.
pub fn piv_params(energies: [Complex64; 3], role: usize) -> Result<(Complex64, Complex64)> {
    let (e3, e1, e2) = match role {
        1 => (energies[0], energies[1], energies[2]),
        2 => (energies[1], energies[2], energies[0]),
        3 => (energies[2], energies[0], energies[1]),
        _ => return Err(Error::InvalidControl("role must be 1, 2 or 3")),
    };
    let d = e1 - e2;
    Ok((e1 + e2 - 2.0 * e3 - 1.0, -2.0 * d * d))
}

/// Right-hand side of PIV at (y, g, g').
pub fn piv_rhs(y: Complex64, g: Complex64, gy: Complex64, a: Complex64, b: Complex64) -> Complex64 {
    gy * gy / (2.0 * g) + 1.5 * g * g * g + 4.0 * y * g * g + 2.0 * (y * y - a) * g + b / g
}

/// g and its y-derivatives at a point of the ray.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GJet {
    pub x: f64,
    pub y: Complex64,
    pub g: Complex64,
    pub dg: Complex64,
    pub d2g: Complex64,
}

#[derive(Debug, Clone)]
pub struct PivCandidate {
    chain: Chain,
    state: StateRatio,
    role: usize,
    energies: [Complex64; 3],
    a: Complex64,
    b: Complex64,
    g_scale: Complex64,
}

impl PivCandidate {
    /// Candidate generated by `state`, with `role` naming the energy that
    /// belongs to it.
    pub fn new(chain: &Chain, state: StateRatio, energies: [Complex64; 3], role: usize) -> Result<Self> {
        let (a, b) = piv_params(energies, role)?;
        Ok(PivCandidate { chain: chain.clone(), state, role, energies, a, b, g_scale: Complex64::new(1.0, 0.0) })
    }

    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    pub fn state(&self) -> &StateRatio {
        &self.state
    }

    pub fn role(&self) -> usize {
        self.role
    }

    pub fn energies(&self) -> [Complex64; 3] {
        self.energies
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    /// Same g with b replaced.
    pub fn with_b(mut self, b: Complex64) -> Self {
        self.b = b;
        self
    }

    /// Same parameters with g multiplied by `scale`.
    pub fn with_g_scale(mut self, scale: Complex64) -> Self {
        self.g_scale = scale;
        self
    }

    /// Same g with the energy roles reassigned.
    pub fn with_role(&self, role: usize) -> Result<Self> {
        let (a, b) = piv_params(self.energies, role)?;
        Ok(PivCandidate { role, a, b, ..self.clone() })
    }

    pub fn g_jet(&self, x: f64) -> Result<GJet> {
        let jet = self.state.jet(x, 3)?;
        if jet.numerator_level < SINGULAR_TOL {
            return Err(Error::ZeroCrossing { x });
        }
        let s = self.chain.freq().sqrt_omega();
        let w = self.chain.freq().omega();
        let [l1, l2, l3] = jet.log_derivs;
        let k = self.g_scale;
        let g = k * (-s * x - l1 / s);
        let gx = k * (-s - l2 / s);
        let gxx = k * (-l3 / s);
        Ok(GJet { x, y: s * x, g, dg: gx / s, d2g: gxx / w })
    }

    pub fn g(&self, x: f64) -> Result<Complex64> {
        Ok(self.g_jet(x)?.g)
    }

    /// (y, g, g', g'') at x with derivatives from the chosen scheme.
    pub fn sample(&self, x: f64, scheme: Scheme) -> Result<GJet> {
        match scheme {
            Scheme::Analytic => self.g_jet(x),
            Scheme::FiniteDifference => {
                let mut v = [Complex64::new(0.0, 0.0); 7];
                for (slot, o) in v.iter_mut().zip(RICHARDSON_OFFSETS) {
                    let xi = x + o * FD_STEP;
                    if !self.chain.contains(xi) {
                        return Err(Error::OutOfDomain { x: xi });
                    }
                    *slot = self.g(xi)?;
                }
                let (gx, gxx) = derivatives_from_samples(&v, FD_STEP);
                let s = self.chain.freq().sqrt_omega();
                Ok(GJet { x, y: s * x, g: v[3], dg: gx / s, d2g: gxx / (s * s) })
            }
        }
    }

    /// PIV residual at x.
    pub fn residual_at(&self, x: f64, scheme: Scheme) -> Result<Complex64> {
        let j = self.sample(x, scheme)?;
        Ok(residual_of(&j, self.a, self.b))
    }
}

fn residual_of(j: &GJet, a: Complex64, b: Complex64) -> Complex64 {
    j.d2g - piv_rhs(j.y, j.g, j.dg, a, b)
}

/// Outcome of a residual certification run.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    /// Points that entered the statistics.
    pub grid: Vec<f64>,
    pub residuals: Vec<f64>,
    /// Points with |g| < delta_g.
    pub excluded: Vec<f64>,
    /// Points at poles of g or whose stencil left the domain.
    pub singular: Vec<f64>,
    pub max_residual: f64,
    pub scheme: Scheme,
    /// Number of separate runs of excluded points, i.e. observed zeros of g.
    pub zero_count: usize,
}

impl ResidualReport {
    pub fn passes(&self) -> bool {
        self.passes_within(self.scheme.tolerance())
    }

    pub fn passes_within(&self, tol: f64) -> bool {
        self.max_residual < tol
    }
}

pub fn piv_residual(candidate: &PivCandidate, grid: &Grid, scheme: Scheme) -> Result<ResidualReport> {
    piv_residual_excluding(candidate, grid, scheme, G_EXCLUSION)
}

/// [`piv_residual`] with a custom exclusion threshold on |g|.
pub fn piv_residual_excluding(
    candidate: &PivCandidate,
    grid: &Grid,
    scheme: Scheme,
    g_exclusion: f64,
) -> Result<ResidualReport> {
    let samples = sample_grid(candidate, grid, scheme)?;
    assemble(&samples, candidate.a, candidate.b, scheme, g_exclusion)
}

fn sample_grid(candidate: &PivCandidate, grid: &Grid, scheme: Scheme) -> Result<Vec<(f64, Option<GJet>)>> {
    grid.points()
        .iter()
        .map(|&x| match candidate.sample(x, scheme) {
            Ok(j) => Ok((x, Some(j))),
            Err(e @ Error::NotConverged { .. }) => Err(e),
            Err(_) => Ok((x, None)),
        })
        .collect()
}

fn assemble(
    samples: &[(f64, Option<GJet>)],
    a: Complex64,
    b: Complex64,
    scheme: Scheme,
    g_exclusion: f64,
) -> Result<ResidualReport> {
    let mut report = ResidualReport {
        grid: Vec::new(),
        residuals: Vec::new(),
        excluded: Vec::new(),
        singular: Vec::new(),
        max_residual: 0.0,
        scheme,
        zero_count: 0,
    };
    let mut in_run = false;
    for (x, jet) in samples {
        match jet {
            Some(j) if j.g.norm() < g_exclusion => {
                report.excluded.push(*x);
                if !in_run {
                    report.zero_count += 1;
                }
                in_run = true;
                continue;
            }
            Some(j) => {
                let r = residual_of(j, a, b).norm();
                report.grid.push(*x);
                report.residuals.push(r);
                report.max_residual = report.max_residual.max(r);
            }
            None => report.singular.push(*x),
        }
        in_run = false;
    }
    if report.residuals.is_empty() {
        return Err(Error::EmptyGrid);
    }
    Ok(report)
}

fn singular_points(candidate: &PivCandidate, grid: &Grid) -> Result<()> {
    for &x in grid.points() {
        match candidate.state.jet(x, 0) {
            Ok(j) if j.numerator_level < SINGULAR_TOL => return Err(Error::ZeroCrossing { x }),
            Ok(_) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

fn vanishes(candidate: &PivCandidate) -> bool {
    [0.37, 1.13, 2.71, 0.91].iter().all(|&x| match candidate.g(x) {
        Ok(g) => g.norm() < 1e-12 * (1.0 + x),
        Err(_) => false,
    })
}

/// g from the j-th extremal state of a first-order chain.
pub fn g_first_order(chain: &Chain, j: usize, grid: &Grid) -> Result<PivCandidate> {
    if chain.order() != 1 {
        return Err(Error::InvalidChain(format!("first-order construction needs k = 1, got {}", chain.order())));
    }
    let triple = extremal_triple(chain);
    let entry = triple.entry(j)?;
    let cand = PivCandidate::new(chain, entry.state().clone(), triple.energies(), j)?;
    if vanishes(&cand) {
        return Err(Error::DegenerateSolution);
    }
    singular_points(&cand, grid)?;
    Ok(cand)
}

/// g_k = -y - d/dy ln[W(u_1..u_{k-1}) / W(u_1..u_k)] for k >= 2, with the
/// energy role chosen by the smallest analytic residual.
pub fn g_higher_order(chain: &Chain, grid: &Grid) -> Result<PivCandidate> {
    let k = chain.order();
    if k < 2 {
        return Err(Error::InvalidChain("higher-order construction needs k >= 2".into()));
    }
    let state = created_ratio(chain, k)?;
    let base = PivCandidate::new(chain, state, extremal_triple(chain).energies(), 2)?;
    singular_points(&base, grid).map_err(|e| match e {
        Error::ZeroCrossing { x } => Error::SingularPoint { x },
        e => e,
    })?;
    if vanishes(&base) {
        return Err(Error::DegenerateSolution);
    }
    let samples = sample_grid(&base, grid, Scheme::Analytic)?;
    let mut best: Option<(f64, PivCandidate)> = None;
    for role in 1..=3 {
        let cand = base.with_role(role)?;
        let r = assemble(&samples, cand.a, cand.b, Scheme::Analytic, G_EXCLUSION)?.max_residual;
        if best.as_ref().is_none_or(|(b, _)| r < *b) {
            best = Some((r, cand));
        }
    }
    let (r, cand) = best.expect("three roles tried");
    if r >= ANALYTIC_TOL {
        return Err(Error::NoValidAssignment { best: r });
    }
    Ok(cand)
}

/// (ln psi)'(y) + y + g(y) for the generating state; zero for an unaltered
/// candidate.
pub fn reconstruct_extremal(candidate: &PivCandidate, x: f64) -> Result<Complex64> {
    let jet = candidate.state.jet(x, 1)?;
    if jet.numerator_level < SINGULAR_TOL {
        return Err(Error::ZeroCrossing { x });
    }
    let s = candidate.chain.freq().sqrt_omega();
    Ok(jet.log_derivs[0] / s + s * x + candidate.g(x)?)
}

/// max(|g(X)|, |g(-X)|) on the full line, |g(X)| on the half line.
pub fn asymptotic_decay(candidate: &PivCandidate, radius: f64) -> Result<f64> {
    let right = candidate.g(radius)?.norm();
    match candidate.chain.domain() {
        Domain::FullLine => Ok(right.max(candidate.g(-radius)?.norm())),
        Domain::HalfLine => Ok(right),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn params_of_the_rational_case() {
        let e = [c(0.5, 0.0), c(-0.5, 0.0), c(0.5, 0.0)];
        let (a, b) = piv_params(e, 1).unwrap();
        assert_eq!(a, c(-2.0, 0.0));
        assert_eq!(b, c(-2.0, 0.0));
    }

    #[test]
    fn params_of_equal_energies() {
        let e = c(0.3, -1.2);
        let (a, b) = piv_params([e; 3], 2).unwrap();
        assert!((a - c(-1.0, 0.0)).norm() < 1e-15);
        assert_eq!(b, c(0.0, 0.0));
        assert!(piv_params([e; 3], 4).is_err());
    }

    #[test]
    fn minus_inverse_y_solves_piv() {
        let (a, b) = (c(-2.0, 0.0), c(-2.0, 0.0));
        for y in [c(0.7, 0.2), c(-3.0, 1.0), c(5.0, -2.5)] {
            let g = -1.0 / y;
            let gy = 1.0 / (y * y);
            let gyy = -2.0 / (y * y * y);
            assert!((gyy - piv_rhs(y, g, gy, a, b)).norm() < 1e-13);
        }
    }
}
