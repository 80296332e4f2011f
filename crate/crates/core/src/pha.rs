//! Ladder structure of the SUSY partners.
//!
//! The natural ladder operators L^± = B_k^+ a^± B_k^- of H_k obey
//! [H_k, L^±] = ±omega L^±. On the retained states B_k^- psi_n is a
//! multiple of phi_n, so L^± psi_n is computed as B_k^+ (a^± phi_n).
//!
//! For connected chains the algebra reduces to a second-order one whose
//! three extremal states fix the roots of the number operator and feed the
//! Painleve IV construction.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::oscillator::{eigenvalue, Direction};
use crate::susy::{self, created_ratio, ladder_image, Chain, Member, StateRatio};

/// Entry of an extremal triple.
#[derive(Debug, Clone)]
pub struct ExtremalEntry {
    state: StateRatio,
    /// Energy in units of omega.
    energy: Complex64,
    degenerate: bool,
}

impl ExtremalEntry {
    pub fn state(&self) -> &StateRatio {
        &self.state
    }

    pub fn energy(&self) -> Complex64 {
        self.energy
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }
}

/// The three extremal states of the reduced algebra, with energies in units
/// of omega:
///
/// ```text
/// 1: B_k^+ e^{-omega x^2/2}            1/2
/// 2: W(u_1..u_{k-1}) / W(u_1..u_k)      eps_1/omega - (k-1)
/// 3: B_k^+ a^+ u_1                      eps_1/omega + 1
/// ```
#[derive(Debug, Clone)]
pub struct ExtremalTriple {
    entries: [ExtremalEntry; 3],
}

impl ExtremalTriple {
    pub fn energies(&self) -> [Complex64; 3] {
        [self.entries[0].energy, self.entries[1].energy, self.entries[2].energy]
    }

    /// Entry `index` in 1..=3; refuses entries whose state vanishes identically.
    pub fn entry(&self, index: usize) -> Result<&ExtremalEntry> {
        let e =
            self.entries.get(index.wrapping_sub(1)).ok_or(Error::InvalidControl("extremal index must be 1, 2 or 3"))?;
        if e.degenerate {
            return Err(Error::DegenerateTriple { index });
        }
        Ok(e)
    }

    pub fn is_degenerate(&self) -> bool {
        self.entries.iter().any(|e| e.degenerate)
    }
}

pub fn extremal_triple(chain: &Chain) -> ExtremalTriple {
    let w = chain.freq().omega();
    let k = chain.order();
    let eps1 = chain.epsilons()[0] / w;
    let make = |state: StateRatio, energy: Complex64| {
        let degenerate = state.vanishes_identically();
        ExtremalEntry { state, energy, degenerate }
    };
    let created = created_ratio(chain, k).expect("k is a valid created index");
    ExtremalTriple {
        entries: [
            make(ladder_image(chain, Member::Eigen(0)), Complex64::new(0.5, 0.0)),
            make(created, eps1 - (k as f64 - 1.0)),
            make(ladder_image(chain, Member::RaisedSeed), eps1 + 1.0),
        ],
    }
}

/// Roots of the number operator of the reduced algebra, in units of omega.
///
/// Degenerate entries still contribute their energy: the polynomial is
/// defined by the energies, not by the states.
pub fn number_operator_roots(chain: &Chain) -> Vec<Complex64> {
    extremal_triple(chain).energies().to_vec()
}

/// L^± psi_n as a Wronskian ratio.
pub fn natural_ladder_ratio(chain: &Chain, direction: Direction, n: usize) -> Result<StateRatio> {
    let deleted = chain.deleted_levels();
    if deleted.contains(&n) {
        return Err(Error::DeletedLevel { n });
    }
    let target = match direction {
        Direction::Raise => Some(n + 1),
        Direction::Lower => n.checked_sub(1),
    };
    match target {
        Some(t) if !deleted.contains(&t) => Ok(ladder_image(chain, Member::LadderedEigen(n, direction))),
        _ => Err(Error::LadderEdge { n }),
    }
}

/// L^± psi_n(x); proportional to psi_{n±1}.
pub fn apply_natural_ladder(chain: &Chain, direction: Direction, n: usize, x: f64) -> Result<Complex64> {
    natural_ladder_ratio(chain, direction, n)?.value(x)
}

/// Commutation residuals in the original and omega-rescaled energy units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutationReport {
    /// max |H_k f - L(H_k psi_n) ∓ omega f| / max |f| with f = L psi_n.
    pub residual: f64,
    /// Same with H_k / omega and energies in units of omega.
    pub rescaled: f64,
    pub points: usize,
}

/// Evaluates [H_k, L^±] ∓ omega L^± on psi_n over the grid.
///
/// H_k psi_n = E_n psi_n holds exactly, so L(H_k psi_n) = E_n L psi_n and
/// the residual reduces to |H_k f - (E_n ± omega) f|.
pub fn commutation_report(
    chain: &Chain,
    direction: Direction,
    n: usize,
    grid: &Grid,
    h: f64,
) -> Result<CommutationReport> {
    let state = natural_ladder_ratio(chain, direction, n)?;
    let w = chain.freq().omega();
    let e_n = eigenvalue(n, chain.freq());
    let f = |x: f64| state.value(x);
    let samples: Vec<(Complex64, Complex64)> =
        grid.points().iter().filter_map(|&x| susy::apply_hamiltonian(chain, f, x, h).ok()).collect();
    if samples.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let peak = samples.iter().map(|(v, _)| v.norm()).fold(0.0, f64::max);
    let step = direction.step();
    let worst = |g: &dyn Fn(Complex64, Complex64) -> Complex64| {
        samples.iter().map(|&(v, hv)| g(v, hv).norm()).fold(0.0, f64::max) / peak
    };
    let residual = worst(&|v, hv| hv - e_n * v - step * w * v);
    let rescaled = worst(&|v, hv| hv / w - (e_n / w) * v - step * v);
    Ok(CommutationReport { residual, rescaled, points: samples.len() })
}

pub fn commutation_residual(chain: &Chain, direction: Direction, n: usize, grid: &Grid) -> Result<f64> {
    Ok(commutation_report(chain, direction, n, grid, crate::grid::FD_STEP)?.residual)
}

/// max over the grid of |r(x) - r_0| / |r_0| with r = L^± psi_n / psi_{n±1},
/// skipping points where either side is near a zero.
pub fn ladder_proportionality_spread(chain: &Chain, direction: Direction, n: usize, grid: &Grid) -> Result<f64> {
    let moved = natural_ladder_ratio(chain, direction, n)?;
    let target = (n as f64 + direction.step()) as usize;
    let reference = susy::transformed_ratio(chain, target)?;
    let ratios: Vec<Complex64> = grid
        .points()
        .iter()
        .filter_map(|&x| {
            let a = moved.jet(x, 0).ok()?;
            let b = reference.jet(x, 0).ok()?;
            (b.numerator_level > 1e-8 && b.value.norm() > 0.0).then(|| a.value / b.value)
        })
        .collect();
    spread(&ratios)
}

/// Relative spread of a sequence of ratios around their median-magnitude member.
pub fn spread(ratios: &[Complex64]) -> Result<f64> {
    if ratios.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut sorted: Vec<&Complex64> = ratios.iter().collect();
    sorted.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
    let r0 = *sorted[sorted.len() / 2];
    Ok(ratios.iter().map(|r| (r - r0).norm()).fold(0.0, f64::max) / r0.norm())
}
