//! The data-producing subcommands.

use complex_susy::grid::trapezoid;
use complex_susy::oscillator::eigenfunction_jet;
use complex_susy::painleve::{asymptotic_decay, g_first_order, g_higher_order, piv_residual_excluding};
use complex_susy::susy::{self, created_ratio, partner_potential, transformed_ratio, DEFAULT_DECAY_RADIUS};
use complex_susy::{Chain, Complex64, Domain, Grid, LevelLabel, LevelStatus, PivCandidate, Scheme, StateRatio};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::complex::complex_json;
use crate::config::RunConfig;
use crate::error::CliResult;
use crate::output::{Cell, Dataset, Output};

/// What a job computes.
#[derive(Debug, Clone, PartialEq)]
pub enum Task {
    Spectrum,
    Potential,
    States(StateSelection),
    Piv(PivSelection),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct StateSelection {
    /// Oscillator levels n transported to H_k.
    pub levels: Vec<usize>,
    /// Created states, by 1-based seed index.
    pub created: Vec<usize>,
    /// Eigenstates of the unperturbed oscillator, for comparison panels.
    pub original: Vec<usize>,
    /// Also write normalized amplitudes `x,re,im`.
    pub amplitudes: bool,
    /// Also write the partner potential.
    pub potential: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PivSelection {
    /// Extremal state generating g for first-order chains.
    pub role: usize,
    /// Write `x,re_g,im_g` instead of `x,re,im`.
    pub parametric: bool,
    /// Extra radii at which |g| is reported.
    pub decay_radii: Vec<f64>,
}

impl Default for PivSelection {
    fn default() -> Self {
        PivSelection { role: 2, parametric: false, decay_radii: Vec::new() }
    }
}

/// One unit of work: a config, a task and the prefix of its data set names.
#[derive(Debug, Clone)]
pub struct Job {
    pub label: String,
    pub config: RunConfig,
    pub task: Task,
}

impl Job {
    pub fn run(&self) -> CliResult<Output> {
        match &self.task {
            Task::Spectrum => run_spectrum(&self.config, &self.label),
            Task::Potential => run_potential(&self.config, &self.label),
            Task::States(sel) => run_states(&self.config, &self.label, sel),
            Task::Piv(sel) => run_piv(&self.config, &self.label, sel),
        }
    }
}

fn name(label: &str, suffix: &str) -> String {
    if label.is_empty() {
        suffix.to_string()
    } else if suffix.is_empty() {
        label.to_string()
    } else {
        format!("{label}_{suffix}")
    }
}

fn chain_meta(chain: &Chain) -> Value {
    json!({
        "order": chain.order(),
        "epsilons": chain.epsilons().iter().map(|&e| complex_json(e)).collect::<Vec<_>>(),
        "domain": match chain.domain() {
            Domain::FullLine => "full-line",
            Domain::HalfLine => "half-line",
        },
        "deleted_levels": chain.deleted_levels(),
    })
}

/// Evaluates `f` on every grid point in parallel, keeping grid order.
fn sample<F>(grid: &Grid, f: F) -> Vec<Option<Complex64>>
where
    F: Fn(f64) -> Option<Complex64> + Sync,
{
    grid.points().par_iter().map(|&x| f(x)).collect()
}

fn complex_dataset(name: String, columns: &[&'static str], grid: &Grid, values: &[Option<Complex64>]) -> Dataset {
    let mut d = Dataset::new(name, columns);
    for (&x, v) in grid.points().iter().zip(values) {
        d.push_numeric(x, v.map(|z| [z.re, z.im]).as_ref().map(|a| &a[..]));
    }
    d
}

pub fn run_spectrum(config: &RunConfig, label: &str) -> CliResult<Output> {
    let chain = config.chain()?;
    let mut d = Dataset::new(name(label, "spectrum"), &["label", "status", "re", "im"]);
    for e in susy::spectrum(&chain, DEFAULT_DECAY_RADIUS) {
        let tag = match e.label {
            LevelLabel::Index(n) => format!("n={n}"),
            LevelLabel::Created(j) => format!("eps_{j}"),
        };
        let status = match e.status {
            LevelStatus::Retained => "retained",
            LevelStatus::Deleted => "deleted",
            LevelStatus::Created => "created",
        };
        d.rows.push(vec![Cell::Text(tag), Cell::Text(status.into()), Cell::Num(e.energy.re), Cell::Num(e.energy.im)]);
    }
    d.meta = chain_meta(&chain);
    Ok(Output { datasets: vec![d], ..Output::default() })
}

fn potential_dataset(chain: &Chain, grid: &Grid, name: String) -> Dataset {
    let values = sample(grid, |x| partner_potential(chain, x).ok());
    complex_dataset(name, &["x", "re", "im"], grid, &values).with_meta(json!({
        "quantity": "partner potential",
        "chain": chain_meta(chain),
    }))
}

pub fn run_potential(config: &RunConfig, label: &str) -> CliResult<Output> {
    let chain = config.chain()?;
    let grid = config.grid_for(&chain)?;
    let d = potential_dataset(&chain, &grid, name(label, "potential"));
    Ok(Output { datasets: vec![d], ..Output::default() })
}

/// Density and amplitude tables of one state, normalized over its finite samples.
fn state_tables(
    grid: &Grid,
    values: &[Option<Complex64>],
    base: String,
    amplitudes: bool,
    meta: Value,
) -> CliResult<Vec<Dataset>> {
    let (xs, vs): (Vec<f64>, Vec<Complex64>) =
        grid.points().iter().zip(values).filter_map(|(&x, v)| v.map(|v| (x, v))).unzip();
    let density = susy::normalize_on_grid(&vs, &xs)?;
    let norms: Vec<f64> = vs.iter().map(|v| v.norm_sqr()).collect();
    let total = trapezoid(&xs, &norms);
    let mut dens = Dataset::new(format!("{base}_density"), &["x", "density"]);
    let mut amp = Dataset::new(base, &["x", "re", "im"]);
    let mut it = density.iter();
    for (&x, v) in grid.points().iter().zip(values) {
        match v {
            Some(v) => {
                dens.push_numeric(x, Some(&[*it.next().expect("one density per sample")]));
                let a = v / total.sqrt();
                amp.push_numeric(x, Some(&[a.re, a.im]));
            }
            None => {
                dens.push_numeric(x, None);
                amp.push_numeric(x, None);
            }
        }
    }
    let mut meta = meta;
    meta["integral"] = json!(trapezoid(&xs, &density));
    dens.meta = meta.clone();
    amp.meta = meta;
    Ok(if amplitudes { vec![dens, amp] } else { vec![dens] })
}

pub fn run_states(config: &RunConfig, label: &str, sel: &StateSelection) -> CliResult<Output> {
    let chain = config.chain()?;
    let grid = config.grid_for(&chain)?;
    let mut out = Output::default();
    if sel.potential {
        out.datasets.push(potential_dataset(&chain, &grid, name(label, "potential")));
    }
    if !sel.original.is_empty() {
        let freq = *chain.freq();
        let full = match config.grid {
            Some(g) => g.to_grid()?,
            None => Grid::full_line(),
        };
        for &n in &sel.original {
            let values = sample(&full, |x| Some(eigenfunction_jet(n, &freq, x).u));
            let meta =
                json!({ "state": "oscillator", "n": n, "energy": complex_json(complex_susy::eigenvalue(n, &freq)) });
            match state_tables(&full, &values, name(label, &format!("h0_n{n}")), sel.amplitudes, meta) {
                Ok(ds) => out.datasets.extend(ds),
                Err(e) => out.failures.push(format!("oscillator level {n}: {e}")),
            }
        }
    }
    let mut emit = |what: String, state: CliResult<StateRatio>, energy: Complex64, tag: String| {
        let state = match state {
            Ok(s) => s,
            Err(e) => {
                out.failures.push(format!("{what}: {e}"));
                return;
            }
        };
        let values = sample(&grid, |x| state.value(x).ok());
        let meta = json!({ "state": what, "energy": complex_json(energy), "chain": chain_meta(&chain) });
        match state_tables(&grid, &values, name(label, &tag), sel.amplitudes, meta) {
            Ok(ds) => out.datasets.extend(ds),
            Err(e) => out.failures.push(format!("{what}: {e}")),
        }
    };
    for &n in &sel.levels {
        let energy = complex_susy::eigenvalue(n, chain.freq());
        emit(format!("level {n}"), transformed_ratio(&chain, n).map_err(Into::into), energy, format!("n{n}"));
    }
    for &j in &sel.created {
        let energy = chain.epsilons().get(j.wrapping_sub(1)).copied().unwrap_or_default();
        emit(format!("created state {j}"), created_ratio(&chain, j).map_err(Into::into), energy, format!("created{j}"));
    }
    Ok(out)
}

fn build_candidate(chain: &Chain, grid: &Grid, role: usize) -> CliResult<PivCandidate> {
    Ok(if chain.order() == 1 { g_first_order(chain, role, grid)? } else { g_higher_order(chain, grid)? })
}

pub fn run_piv(config: &RunConfig, label: &str, sel: &PivSelection) -> CliResult<Output> {
    let chain = config.chain()?;
    let grid = config.grid_for(&chain)?;
    let cand = build_candidate(&chain, &grid, sel.role)?;
    let tol = config.tolerances;
    let mut out = Output::default();

    let values = sample(&grid, |x| cand.g(x).ok());
    let columns: &[&'static str] = if sel.parametric { &["x", "re_g", "im_g"] } else { &["x", "re", "im"] };
    let g_name = name(label, "g");

    let mut schemes = Vec::new();
    for scheme in [Scheme::Analytic, Scheme::FiniteDifference] {
        let limit = match scheme {
            Scheme::Analytic => tol.analytic,
            Scheme::FiniteDifference => tol.finite_difference,
        };
        let r = piv_residual_excluding(&cand, &grid, scheme, tol.g_exclusion)?;
        let passed = r.passes_within(limit);
        if !passed {
            out.uncertified.push(format!(
                "{g_name}: {} residual {:.3e} exceeds {limit:.1e}",
                scheme.name(),
                r.max_residual
            ));
        }
        schemes.push(json!({
            "scheme": scheme.name(),
            "max_residual": r.max_residual,
            "tolerance": limit,
            "passed": passed,
            "points": r.grid.len(),
            "excluded": r.excluded,
            "singular": r.singular,
            "zero_count": r.zero_count,
        }));
    }

    let edge = match chain.domain() {
        Domain::FullLine => grid.min().abs().min(grid.max().abs()),
        Domain::HalfLine => grid.max(),
    };
    let mut radii = sel.decay_radii.clone();
    if edge > 0.0 && !radii.contains(&edge) {
        radii.push(edge);
    }
    let decay: Vec<Value> =
        radii.iter().map(|&r| json!({ "radius": r, "max_abs_g": asymptotic_decay(&cand, r).ok() })).collect();
    let magnitudes: Vec<f64> = sel.decay_radii.iter().filter_map(|&r| asymptotic_decay(&cand, r).ok()).collect();

    let report = json!({
        "a": complex_json(cand.a()),
        "b": complex_json(cand.b()),
        "role": cand.role(),
        "energies": cand.energies().iter().map(|&e| complex_json(e)).collect::<Vec<_>>(),
        "g_exclusion": tol.g_exclusion,
        "schemes": schemes,
        "asymptotic_decay": decay,
        "decay_non_increasing": magnitudes.windows(2).all(|w| w[1] <= w[0]),
        "chain": chain_meta(&chain),
    });
    let data = complex_dataset(g_name.clone(), columns, &grid, &values)
        .with_meta(json!({ "quantity": "PIV candidate g(y), y = sqrt(omega) x", "a": report["a"], "b": report["b"] }));
    out.datasets.push(data);
    out.reports.push((g_name, report));
    Ok(out)
}
