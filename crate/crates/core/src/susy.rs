//! k-th order SUSY (Darboux-Crum) partners of the complex oscillator built
//! from connected seed chains u_{j+1} = a^- u_j, eps_{j+1} = eps_j - omega.
//!
//! Every state of a partner Hamiltonian is a ratio of Wronskians of
//! oscillator solutions:
//!
//! ```text
//! B_k^+ f          = (-1/sqrt 2)^k W(u_1..u_k, f) / W(u_1..u_k)
//! created at eps_j = W(u_1..u_k without u_j) / W(u_1..u_k)
//! ```
//!
//! [`StateRatio`] evaluates such ratios together with the first three
//! derivatives of their logarithm, which is all the potential, the ladder
//! checks and the Painleve construction need.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{self, Grid};
use crate::oscillator::{
    self, eigenfunction_jet, eigenvalue, ladder_jet, seed_jet, DerivativeTower, Direction, Frequency, JetValue,
    LevelLabel, LevelStatus, SeedKind, SeedSpec, SpectrumEntry,
};

/// Largest supported transformation order.
pub const MAX_ORDER: usize = 5;
/// delta_W: |W| below this times the product of the functions' sup-norms
/// over the derivative orders is a zero of W.
pub const SINGULAR_TOL: f64 = 1e-12;
/// A state decays at an end of the window when |psi(end)| < DECAY_RATIO * max |psi|.
pub const DECAY_RATIO: f64 = 1e-3;
pub const DEFAULT_DECAY_RADIUS: f64 = 8.0;
/// Left edge of half-line windows.
pub const HALF_LINE_MIN: f64 = 1e-3;
/// Oscillator levels listed by [`spectrum`].
pub const SPECTRUM_LEVELS: usize = 10;
/// Fraction of the window at each end treated as tail by [`normalize_on_grid`].
const TAIL_FRACTION: f64 = 0.05;
/// Tail weight above which a density is refused.
const MAX_TAIL_WEIGHT: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    FullLine,
    /// x in (0, inf): the odd seed's node acts as an infinite barrier.
    HalfLine,
}

/// A connected family of k seeds.
#[derive(Debug, Clone)]
pub struct Chain {
    base: SeedSpec,
    freq: Frequency,
    epsilons: Vec<Complex64>,
    domain: Domain,
    towers: Vec<DerivativeTower>,
}

impl Chain {
    pub fn new(base: SeedSpec, freq: Frequency, k: usize) -> Result<Self> {
        if !(1..=MAX_ORDER).contains(&k) {
            return Err(Error::InvalidChain(format!("order k = {k} outside 1..={MAX_ORDER}")));
        }
        base.validate(&freq)?;
        if base.kind == SeedKind::General {
            oscillator::seed_lambda(base.epsilon, base.nu, &freq)?;
        }
        if let Some(n) = base.bound_index() {
            if n + 1 < k {
                return Err(Error::InvalidChain(format!("lowering phi_{n} {} times reaches zero", k - 1)));
            }
        }
        let w = freq.omega();
        let epsilons: Vec<Complex64> = (0..k).map(|j| base.epsilon - j as f64 * w).collect();
        let towers = epsilons.iter().map(|&e| DerivativeTower::new(e, w)).collect();
        let domain = match base.kind {
            SeedKind::BoundOdd(_) => Domain::HalfLine,
            _ => Domain::FullLine,
        };
        Ok(Chain { base, freq, epsilons, domain, towers })
    }

    pub fn base(&self) -> &SeedSpec {
        &self.base
    }

    pub fn freq(&self) -> &Frequency {
        &self.freq
    }

    pub fn order(&self) -> usize {
        self.epsilons.len()
    }

    pub fn epsilons(&self) -> &[Complex64] {
        &self.epsilons
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn towers(&self) -> &[DerivativeTower] {
        &self.towers
    }

    pub fn contains(&self, x: f64) -> bool {
        x.is_finite() && (self.domain == Domain::FullLine || x > 0.0)
    }

    /// Oscillator levels removed by the transformation: the bound indices of
    /// the seeds when the chain is built from an eigenfunction.
    pub fn deleted_levels(&self) -> Vec<usize> {
        match self.base.bound_index() {
            Some(n) => (0..self.order()).map(|j| n - j).collect(),
            None => Vec::new(),
        }
    }

    /// The chain's default sampling window.
    pub fn default_grid(&self) -> Grid {
        match self.domain {
            Domain::FullLine => Grid::full_line(),
            Domain::HalfLine => Grid::half_line(),
        }
    }
}

/// u_1..u_k at x.
pub fn chain_seed_jets(chain: &Chain, x: f64) -> Result<Vec<JetValue>> {
    if !chain.contains(x) {
        return Err(Error::OutOfDomain { x });
    }
    let mut jets = Vec::with_capacity(chain.order());
    jets.push(seed_jet(&chain.base, &chain.freq, x)?);
    for j in 1..chain.order() {
        let next = ladder_jet(Direction::Lower, &jets[j - 1], &chain.towers[j - 1]);
        jets.push(next);
    }
    Ok(jets)
}

/// A Schrodinger solution at a point, with the tower for its energy.
#[derive(Debug, Clone, Copy)]
pub struct SolutionJet<'a> {
    pub jet: JetValue,
    pub tower: &'a DerivativeTower,
    /// Lower bound for this function's size in the zero test; set to the
    /// parent's size for laddered functions so cancellation noise reads as zero.
    pub floor: f64,
}

/// W, W', ..., W^(n) of a set of solutions, plus the scale used
/// for the singularity test.
#[derive(Debug, Clone, PartialEq)]
pub struct WronskianDerivatives {
    pub values: Vec<Complex64>,
    /// Product over the functions of max_r |u^(r)|, r < k; bounds |W| up to
    /// a factor k^(k/2). 1 for the empty Wronskian.
    pub scale: f64,
}

impl WronskianDerivatives {
    pub fn is_singular(&self) -> bool {
        !(self.values[0].norm() >= SINGULAR_TOL * self.scale)
    }

    /// (ln W)', (ln W)'', (ln W)''' as far as the computed order allows.
    pub fn log_derivatives(&self) -> [Complex64; 3] {
        let zero = Complex64::new(0.0, 0.0);
        let w = self.values[0];
        let r: Vec<Complex64> = self.values.iter().map(|v| v / w).collect();
        let r1 = r.get(1).copied().unwrap_or(zero);
        let r2 = r.get(2).copied().unwrap_or(zero);
        let r3 = r.get(3).copied().unwrap_or(zero);
        [r1, r2 - r1 * r1, r3 - 3.0 * r1 * r2 + 2.0 * r1 * r1 * r1]
    }
}

/// The derivative of a Wronskian-type determinant whose rows hold derivative
/// orders `o_0 < o_1 < ...` is the sum over rows of the determinant with that
/// row's order raised by one; terms with repeated orders vanish.
fn expansion(k: usize, d: usize) -> BTreeMap<Vec<usize>, f64> {
    let mut terms = BTreeMap::new();
    terms.insert((0..k).collect::<Vec<_>>(), 1.0);
    for _ in 0..d {
        let mut next: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
        for (orders, coef) in &terms {
            for i in 0..k {
                let raised = orders[i] + 1;
                if i + 1 < k && orders[i + 1] == raised {
                    continue;
                }
                let mut o = orders.clone();
                o[i] = raised;
                *next.entry(o).or_insert(0.0) += coef;
            }
        }
        terms = next;
    }
    terms
}

fn det(vals: &[Vec<Complex64>], orders: &[usize]) -> Complex64 {
    let k = orders.len();
    match k {
        1 => vals[0][orders[0]],
        2 => vals[0][orders[0]] * vals[1][orders[1]] - vals[1][orders[0]] * vals[0][orders[1]],
        _ => DMatrix::from_fn(k, k, |r, c| vals[c][orders[r]]).determinant(),
    }
}

/// W and its first `order` derivatives for the given solutions.
pub fn wronskian_derivatives(fns: &[SolutionJet<'_>], order: usize) -> WronskianDerivatives {
    let k = fns.len();
    if k == 0 {
        let mut values = vec![Complex64::new(0.0, 0.0); order + 1];
        values[0] = Complex64::new(1.0, 0.0);
        return WronskianDerivatives { values, scale: 1.0 };
    }
    let top = k - 1 + order;
    let vals: Vec<Vec<Complex64>> = fns.iter().map(|f| (0..=top).map(|m| f.tower.eval(&f.jet, m)).collect()).collect();
    let scale =
        vals.iter().zip(fns).map(|(col, f)| col[..k].iter().map(|v| v.norm()).fold(f.floor, f64::max)).product();
    let values =
        (0..=order).map(|d| expansion(k, d).iter().map(|(orders, coef)| *coef * det(&vals, orders)).sum()).collect();
    WronskianDerivatives { values, scale }
}

/// (W, W', W'') of the chain seeds at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WronskianJet {
    pub x: f64,
    pub w: Complex64,
    pub dw: Complex64,
    pub d2w: Complex64,
}

fn chain_wronskian(chain: &Chain, x: f64, order: usize) -> Result<WronskianDerivatives> {
    let jets = chain_seed_jets(chain, x)?;
    let fns: Vec<SolutionJet> =
        jets.iter().zip(&chain.towers).map(|(jet, tower)| SolutionJet { jet: *jet, tower, floor: 0.0 }).collect();
    let wd = wronskian_derivatives(&fns, order);
    if wd.is_singular() {
        return Err(Error::SingularPoint { x });
    }
    Ok(wd)
}

pub fn wronskian_jet(chain: &Chain, x: f64) -> Result<WronskianJet> {
    let wd = chain_wronskian(chain, x, 2)?;
    Ok(WronskianJet { x, w: wd.values[0], dw: wd.values[1], d2w: wd.values[2] })
}

/// V_k = omega^2 x^2 / 2 - (ln W)''.
pub fn partner_potential(chain: &Chain, x: f64) -> Result<Complex64> {
    let wj = wronskian_jet(chain, x)?;
    let w2 = chain.freq.omega() * chain.freq.omega();
    let log2 = (wj.d2w * wj.w - wj.dw * wj.dw) / (wj.w * wj.w);
    Ok(0.5 * w2 * x * x - log2)
}

/// Oscillator solutions that can enter a Wronskian ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Member {
    /// u_{j+1} of the chain (0-based).
    Seed(usize),
    /// a^+ u_1, a solution at eps_1 + omega.
    RaisedSeed,
    /// phi_n.
    Eigen(usize),
    /// a^{+-} phi_n, proportional to phi_{n+-1}.
    LadderedEigen(usize, Direction),
}

impl Member {
    pub fn energy(&self, chain: &Chain) -> Complex64 {
        let w = chain.freq.omega();
        match *self {
            Member::Seed(j) => chain.epsilons[j],
            Member::RaisedSeed => chain.epsilons[0] + w,
            Member::Eigen(n) => eigenvalue(n, &chain.freq),
            Member::LadderedEigen(n, d) => eigenvalue(n, &chain.freq) + d.step() * w,
        }
    }
}

/// Value of a Wronskian ratio and the derivatives of its logarithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioJet {
    pub x: f64,
    pub value: Complex64,
    /// (ln psi)', (ln psi)'', (ln psi)''' up to the requested order.
    pub log_derivs: [Complex64; 3],
    /// |W_num| relative to its scale; near zero at zeros of psi.
    pub numerator_level: f64,
}

/// psi = scale * W(numerator) / W(denominator) over a chain.
#[derive(Debug, Clone)]
pub struct StateRatio {
    chain: Chain,
    numerator: Vec<Member>,
    denominator: Vec<Member>,
    scale: Complex64,
    num_towers: Vec<DerivativeTower>,
    den_towers: Vec<DerivativeTower>,
}

impl StateRatio {
    pub fn new(chain: &Chain, numerator: Vec<Member>, denominator: Vec<Member>, scale: Complex64) -> Self {
        let w = chain.freq.omega();
        let mk = |ms: &[Member]| ms.iter().map(|m| DerivativeTower::new(m.energy(chain), w)).collect::<Vec<_>>();
        StateRatio {
            num_towers: mk(&numerator),
            den_towers: mk(&denominator),
            chain: chain.clone(),
            numerator,
            denominator,
            scale,
        }
    }

    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    pub fn numerator(&self) -> &[Member] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[Member] {
        &self.denominator
    }

    /// Jet of a member and the size floor for the zero test.
    fn member_jet(&self, m: Member, seeds: &[JetValue], x: f64) -> (JetValue, f64) {
        let freq = &self.chain.freq;
        let size = |j: &JetValue| j.u.norm().max(j.du.norm());
        match m {
            Member::Seed(j) => (seeds[j], 0.0),
            Member::RaisedSeed => (ladder_jet(Direction::Raise, &seeds[0], &self.chain.towers[0]), size(&seeds[0])),
            Member::Eigen(n) => (eigenfunction_jet(n, freq, x), 0.0),
            Member::LadderedEigen(n, d) => {
                let tower = DerivativeTower::with_order(eigenvalue(n, freq), freq.omega(), 2);
                let base = eigenfunction_jet(n, freq, x);
                (ladder_jet(d, &base, &tower), size(&base))
            }
        }
    }

    fn side(
        &self,
        members: &[Member],
        towers: &[DerivativeTower],
        seeds: &[JetValue],
        x: f64,
        order: usize,
    ) -> WronskianDerivatives {
        let fns: Vec<SolutionJet> = members
            .iter()
            .zip(towers)
            .map(|(&m, tower)| {
                let (jet, floor) = self.member_jet(m, seeds, x);
                SolutionJet { jet, tower, floor }
            })
            .collect();
        wronskian_derivatives(&fns, order)
    }

    fn wronskians(&self, x: f64, order: usize) -> Result<(WronskianDerivatives, WronskianDerivatives)> {
        let seeds = chain_seed_jets(&self.chain, x)?;
        let wn = self.side(&self.numerator, &self.num_towers, &seeds, x, order);
        let wd = self.side(&self.denominator, &self.den_towers, &seeds, x, order);
        if wd.is_singular() {
            return Err(Error::SingularPoint { x });
        }
        Ok((wn, wd))
    }

    /// Value and up to `order` (at most 3) log-derivatives.
    pub fn jet(&self, x: f64, order: usize) -> Result<RatioJet> {
        let order = order.min(3);
        let (wn, wd) = self.wronskians(x, order)?;
        let value = self.scale * wn.values[0] / wd.values[0];
        let mut log_derivs = [Complex64::new(0.0, 0.0); 3];
        if order > 0 {
            let ln = wn.log_derivatives();
            let ld = wd.log_derivatives();
            for i in 0..order {
                log_derivs[i] = ln[i] - ld[i];
            }
        }
        Ok(RatioJet { x, value, log_derivs, numerator_level: wn.values[0].norm() / wn.scale })
    }

    pub fn value(&self, x: f64) -> Result<Complex64> {
        Ok(self.jet(x, 0)?.value)
    }

    /// True when the numerator vanishes at every probe point.
    pub fn vanishes_identically(&self) -> bool {
        let probes = [0.37, -1.13, 2.71, 0.91, -2.2, 1.6];
        probes.iter().map(|&p| if self.chain.contains(p) { p } else { p.abs() }).all(|x| match self.jet(x, 0) {
            Ok(j) => j.numerator_level < SINGULAR_TOL,
            Err(_) => true,
        })
    }
}

fn chain_members(chain: &Chain) -> Vec<Member> {
    (0..chain.order()).map(Member::Seed).collect()
}

/// B_k^+ phi_n as a ratio.
pub fn transformed_ratio(chain: &Chain, n: usize) -> Result<StateRatio> {
    if chain.deleted_levels().contains(&n) {
        return Err(Error::DeletedLevel { n });
    }
    Ok(ladder_image(chain, Member::Eigen(n)))
}

/// B_k^+ f for an oscillator solution f.
pub(crate) fn ladder_image(chain: &Chain, f: Member) -> StateRatio {
    let seeds = chain_members(chain);
    let mut num = seeds.clone();
    num.push(f);
    let scale = Complex64::new((-FRAC_1_SQRT_2).powi(chain.order() as i32), 0.0);
    StateRatio::new(chain, num, seeds, scale)
}

/// Unnormalized psi_n^(k)(x) = B_k^+ phi_n(x).
pub fn transformed_state(chain: &Chain, n: usize, x: f64) -> Result<Complex64> {
    transformed_ratio(chain, n)?.value(x)
}

/// W(u_1..u_k without u_j) / W(u_1..u_k), j in 1..=k.
pub fn created_ratio(chain: &Chain, j: usize) -> Result<StateRatio> {
    if !(1..=chain.order()).contains(&j) {
        return Err(Error::InvalidChain(format!("created index {j} outside 1..={}", chain.order())));
    }
    let seeds = chain_members(chain);
    let num = seeds.iter().copied().filter(|m| *m != Member::Seed(j - 1)).collect();
    Ok(StateRatio::new(chain, num, seeds, Complex64::new(1.0, 0.0)))
}

pub fn created_state(chain: &Chain, j: usize, x: f64) -> Result<Complex64> {
    created_ratio(chain, j)?.value(x)
}

/// Samples a state on a grid, skipping singular points.
pub fn sample_state(state: &StateRatio, grid: &Grid) -> Vec<(f64, Complex64)> {
    grid.points().iter().filter_map(|&x| state.value(x).ok().map(|v| (x, v))).collect()
}

fn decays_at_window_ends(state: &StateRatio, decay_radius: f64) -> bool {
    let grid = match state.chain().domain() {
        Domain::FullLine => Grid::linspace(-decay_radius, decay_radius, 401),
        Domain::HalfLine => Grid::linspace(HALF_LINE_MIN, decay_radius, 400),
    };
    let Ok(grid) = grid else { return false };
    let samples = sample_state(state, &grid);
    if samples.len() < 2 {
        return false;
    }
    let peak = samples.iter().map(|(_, v)| v.norm()).fold(0.0, f64::max);
    let (first, last) = (samples[0], samples[samples.len() - 1]);
    let near = |x: f64, target: f64| (x - target).abs() < 1e-9 * (1.0 + target.abs());
    near(first.0, grid.min())
        && near(last.0, grid.max())
        && first.1.norm() < DECAY_RATIO * peak
        && last.1.norm() < DECAY_RATIO * peak
}

/// Spectrum of H_k with the first [`SPECTRUM_LEVELS`] oscillator levels.
pub fn spectrum(chain: &Chain, decay_radius: f64) -> Vec<SpectrumEntry> {
    spectrum_with_levels(chain, decay_radius, SPECTRUM_LEVELS)
}

pub fn spectrum_with_levels(chain: &Chain, decay_radius: f64, levels: usize) -> Vec<SpectrumEntry> {
    let deleted = chain.deleted_levels();
    let mut out = Vec::new();
    for j in 1..=chain.order() {
        let Ok(state) = created_ratio(chain, j) else { continue };
        if decays_at_window_ends(&state, decay_radius) {
            out.push(SpectrumEntry {
                label: LevelLabel::Created(j),
                energy: chain.epsilons[j - 1],
                status: LevelStatus::Created,
            });
        }
    }
    let indices: Vec<usize> = match chain.domain {
        Domain::FullLine => (0..levels).collect(),
        Domain::HalfLine => (0..levels).map(|m| 2 * m + 1).collect(),
    };
    for n in indices {
        let status = if deleted.contains(&n) { LevelStatus::Deleted } else { LevelStatus::Retained };
        out.push(SpectrumEntry { label: LevelLabel::Index(n), energy: eigenvalue(n, &chain.freq), status });
    }
    out
}

/// |psi|^2 / integral |psi|^2 by the trapezoid rule.
pub fn normalize_on_grid(values: &[Complex64], grid: &[f64]) -> Result<Vec<f64>> {
    if values.len() != grid.len() || grid.len() < 2 {
        return Err(Error::InvalidGrid("values and grid must match and hold 2+ points".into()));
    }
    let density: Vec<f64> = values.iter().map(|v| v.norm_sqr()).collect();
    let total = grid::trapezoid(grid, &density);
    if !(total.is_finite() && total > 0.0) {
        return Err(Error::NonNormalizable { tail_fraction: f64::INFINITY });
    }
    let n = grid.len();
    let edge = ((n as f64 * TAIL_FRACTION).ceil() as usize).clamp(1, n - 1);
    let tail = grid::trapezoid(&grid[..=edge], &density[..=edge])
        + grid::trapezoid(&grid[n - 1 - edge..], &density[n - 1 - edge..]);
    let tail_fraction = tail / total;
    if tail_fraction > MAX_TAIL_WEIGHT {
        return Err(Error::NonNormalizable { tail_fraction });
    }
    Ok(density.into_iter().map(|d| d / total).collect())
}

/// (f(x), H_k f(x)) with f'' from Richardson-extrapolated central
/// differences of step `h`.
pub fn apply_hamiltonian<F>(chain: &Chain, f: F, x: f64, h: f64) -> Result<(Complex64, Complex64)>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if !(chain.contains(x - 2.0 * h) && chain.contains(x + 2.0 * h)) {
        return Err(Error::OutOfDomain { x });
    }
    let v = f(x)?;
    let pot = partner_potential(chain, x)?;
    let (_, d2) = grid::derivatives(&f, x, h)?;
    Ok((v, -0.5 * d2 + pot * v))
}

/// max over the grid of |H_k f - E f| / max |f|.
///
/// Points whose stencil leaves the domain or touches a zero of W are skipped.
pub fn hamiltonian_residual<F>(chain: &Chain, f: F, energy: Complex64, grid: &Grid, h: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let samples: Vec<(Complex64, Complex64)> =
        grid.points().iter().filter_map(|&x| apply_hamiltonian(chain, &f, x, h).ok()).collect();
    if samples.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let peak = samples.iter().map(|(v, _)| v.norm()).fold(0.0, f64::max);
    let worst = samples.iter().map(|(v, hv)| (hv - energy * v).norm()).fold(0.0, f64::max);
    Ok(worst / peak)
}

/// Closed-form partner potentials and states for regression checks.
pub mod closed_form {
    use std::f64::consts::PI;

    use num_complex::Complex64;

    use crate::error::Result;
    use crate::oscillator::{seed_jet, Frequency, SeedSpec};
    use crate::specfun::{hermite, SeriesControl};

    fn hratio(a: usize, b: usize, z: Complex64) -> Complex64 {
        hermite(a, z) / hermite(b, z)
    }

    /// First-order partner from phi_{2j}.
    pub fn bound_even_potential(j: usize, freq: &Frequency, x: f64) -> Complex64 {
        let (w, z) = (freq.omega(), freq.sqrt_omega() * x);
        let base = 0.5 * w * w * x * x + w;
        if j == 0 {
            return base;
        }
        let jf = j as f64;
        let r2 = hratio(2 * j - 2, 2 * j, z);
        let r1 = hratio(2 * j - 1, 2 * j, z);
        base - 8.0 * jf * w * ((2.0 * jf - 1.0) * r2 - 2.0 * jf * r1 * r1)
    }

    /// First-order partner from phi_{2j+1}, singular at x = 0.
    pub fn bound_odd_potential(j: usize, freq: &Frequency, x: f64) -> Complex64 {
        let (w, z) = (freq.omega(), freq.sqrt_omega() * x);
        let jf = j as f64;
        let r1 = if j == 0 { Complex64::new(0.0, 0.0) } else { hratio(2 * j - 1, 2 * j + 1, z) };
        let r0 = hratio(2 * j, 2 * j + 1, z);
        0.5 * w * w * x * x + w - 4.0 * (2.0 * jf + 1.0) * w * (2.0 * jf * r1 - (2.0 * jf + 1.0) * r0 * r0)
    }

    /// Complex Abraham-Moses-Mielnik potential at eps = -omega/2.
    pub fn ams_potential(nu: Complex64, freq: &Frequency, x: f64) -> Result<Complex64> {
        let (w, s) = (freq.omega(), freq.sqrt_omega());
        let erf = crate::specfun::erf_c(s * x, &SeriesControl::precise())?;
        let f = 1.0 + nu / s * erf;
        // G = F'/F with F' = 2 nu/sqrt(pi) e^{-w x^2}, F'' = -2 w x F'.
        let fp = 2.0 * nu / PI.sqrt() * (-w * x * x).exp();
        let g = fp / f;
        let dg = -2.0 * w * x * g - g * g;
        Ok(0.5 * w * w * x * x - w - dg)
    }

    /// Second-order partner from the closed-form Wronskian
    /// W ~ (w^2 x^2 + w - 2 eps) u^2 - u'^2.
    pub fn second_order_potential(base: &SeedSpec, freq: &Frequency, x: f64) -> Result<Complex64> {
        let w = freq.omega();
        let eps = base.epsilon;
        let jet = seed_jet(base, freq, x)?;
        let (u, du) = (jet.u, jet.du);
        let wc = (w * w * x * x + w - 2.0 * eps) * u * u - du * du;
        let dwc = 2.0 * w * w * x * u * u + 2.0 * w * u * du;
        let d2wc = 4.0 * w * w * x * u * du
            + 2.0 * w * w * u * u
            + 2.0 * w * du * du
            + 2.0 * w * (w * w * x * x - 2.0 * eps) * u * u;
        Ok(0.5 * w * w * x * x - d2wc / wc + (dwc / wc) * (dwc / wc))
    }

    /// Transformed eigenfunction for the phi_{2j} seed, up to a constant.
    pub fn bound_even_state(j: usize, n: usize, freq: &Frequency, x: f64) -> Complex64 {
        let (w, z) = (freq.omega(), freq.sqrt_omega() * x);
        let lead = if j == 0 { Complex64::new(0.0, 0.0) } else { 4.0 * j as f64 * hratio(2 * j - 1, 2 * j, z) };
        let prev = if n == 0 { Complex64::new(0.0, 0.0) } else { hermite(n - 1, z) };
        (lead * hermite(n, z) - 2.0 * n as f64 * prev) * (-0.5 * w * x * x).exp()
    }

    /// Half-line eigenfunction (odd sector index m) for the phi_{2j+1} seed.
    pub fn bound_odd_state(j: usize, m: usize, freq: &Frequency, x: f64) -> Complex64 {
        let (w, z) = (freq.omega(), freq.sqrt_omega() * x);
        let lead = (4.0 * j as f64 + 2.0) * hratio(2 * j, 2 * j + 1, z);
        (lead * hermite(2 * m + 1, z) - (4.0 * m as f64 + 2.0) * hermite(2 * m, z)) * (-0.5 * w * x * x).exp()
    }
}
