//! Parameter sets of the published figures.
//!
//! Every preset fixes theta = pi/6 and the seed family; the caller's grid,
//! format and tolerances are kept.

use std::f64::consts::FRAC_PI_6;

use complex_susy::Complex64;

use crate::commands::{Job, PivSelection, StateSelection, Task};
use crate::complex::format_complex;
use crate::config::{GridSpec, RunConfig, SeedChoice};
use crate::error::{CliError, CliResult};

/// Subcommand a preset belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetKind {
    Potential,
    States,
    Piv,
}

pub const PRESETS: [&str; 11] =
    ["fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10", "fig11", "fig12", "fig13"];

/// epsilon values shared by the PIV figures.
pub const PIV_EPSILONS: [(f64, f64); 3] = [(0.01, 1.0), (1.0, 1.0), (2.0, 1.0)];
pub const PIV_NU: (f64, f64) = (0.8, 0.5);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn preset_kind(name: &str) -> CliResult<PresetKind> {
    Ok(match name {
        "fig3" | "fig5" | "fig7" | "fig9" => PresetKind::Potential,
        "fig4" | "fig6" | "fig8" | "fig10" => PresetKind::States,
        "fig11" | "fig12" | "fig13" => PresetKind::Piv,
        _ => return Err(CliError::Validation(format!("unknown preset {name:?}; available: {}", PRESETS.join(", ")))),
    })
}

/// Jobs reproducing figure `name`, built on top of `base`.
pub fn preset_jobs(name: &str, base: &RunConfig) -> CliResult<Vec<Job>> {
    preset_kind(name)?;
    let cfg = |seed: SeedChoice, order: usize, nu: Complex64, epsilon: Complex64| RunConfig {
        theta: FRAC_PI_6,
        seed,
        order,
        nu,
        epsilon,
        ..base.clone()
    };
    let zero = c(0.0, 0.0);
    let job = |label: String, config: RunConfig, task: Task| Job { label, config, task };
    let states = |levels: &[usize], created: &[usize], amplitudes: bool, potential: bool| {
        Task::States(StateSelection {
            levels: levels.to_vec(),
            created: created.to_vec(),
            original: vec![0, 1, 2],
            amplitudes,
            potential,
        })
    };
    let piv =
        |parametric: bool, radii: &[f64]| Task::Piv(PivSelection { role: 2, parametric, decay_radii: radii.to_vec() });
    let nu_piv = c(PIV_NU.0, PIV_NU.1);

    Ok(match name {
        "fig3" => (1..=3)
            .map(|j| job(format!("fig3_j{j}"), cfg(SeedChoice::BoundEven(j), 1, zero, zero), Task::Potential))
            .collect(),
        "fig5" => (1..=3)
            .map(|j| job(format!("fig5_j{j}"), cfg(SeedChoice::BoundOdd(j), 1, zero, zero), Task::Potential))
            .collect(),
        "fig7" => [c(-0.6, 0.3), c(0.0, 0.3), c(0.6, 0.3)]
            .into_iter()
            .map(|nu| job(format!("fig7_nu{}", format_complex(nu)), cfg(SeedChoice::Ams, 1, nu, zero), Task::Potential))
            .collect(),
        "fig9" => [c(0.1, 0.4), c(0.5, 0.4), c(0.9, 0.4)]
            .into_iter()
            .map(|nu| job(format!("fig9_nu{}", format_complex(nu)), cfg(SeedChoice::Ams, 2, nu, zero), Task::Potential))
            .collect(),
        // Seed phi_2; transformed levels 0, 1, 3.
        "fig4" => vec![job(
            "fig4".into(),
            cfg(SeedChoice::BoundEven(1), 1, zero, zero),
            states(&[0, 1, 3], &[], false, false),
        )],
        // Seed phi_3 on x > 0; half-line labels 0, 2, 3 are oscillator levels 1, 5, 7.
        "fig6" => {
            vec![job("fig6".into(), cfg(SeedChoice::BoundOdd(1), 1, zero, zero), states(&[1, 5, 7], &[], false, false))]
        }
        "fig8" => {
            vec![job("fig8".into(), cfg(SeedChoice::Ams, 1, c(0.6, 0.3), zero), states(&[0, 1, 2], &[], false, false))]
        }
        "fig10" => vec![job(
            "fig10".into(),
            cfg(SeedChoice::Ams, 2, c(0.9, 0.4), zero),
            states(&[0, 1, 2], &[1, 2], true, true),
        )],
        "fig11" => PIV_EPSILONS
            .iter()
            .map(|&(re, im)| {
                let eps = c(re, im);
                job(
                    format!("fig11_eps{}", format_complex(eps)),
                    cfg(SeedChoice::General, 1, nu_piv, eps),
                    piv(false, &[]),
                )
            })
            .collect(),
        "fig12" => {
            let mut config = cfg(SeedChoice::General, 1, nu_piv, c(2.0, 1.0));
            config.grid = base.grid.or(Some(GridSpec { x_min: -10.0, x_max: 10.0, points: 2001 }));
            vec![job("fig12".into(), config, piv(true, &[6.0, 8.0, 10.0]))]
        }
        "fig13" => PIV_EPSILONS
            .iter()
            .map(|&(re, im)| {
                let eps = c(re, im);
                job(
                    format!("fig13_eps{}", format_complex(eps)),
                    cfg(SeedChoice::General, 2, nu_piv, eps),
                    piv(false, &[]),
                )
            })
            .collect(),
        _ => unreachable!("checked by preset_kind"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_builds_valid_configs() {
        for name in PRESETS {
            let jobs = preset_jobs(name, &RunConfig::default()).unwrap();
            assert!(!jobs.is_empty());
            for j in jobs {
                assert!(j.config.validate().is_ok(), "{name}");
                assert_eq!(j.config.theta, FRAC_PI_6);
            }
        }
        assert!(preset_kind("fig2").is_err());
    }

    #[test]
    fn figure_parameters() {
        let jobs = preset_jobs("fig7", &RunConfig::default()).unwrap();
        let nus: Vec<Complex64> = jobs.iter().map(|j| j.config.nu).collect();
        assert_eq!(nus, vec![c(-0.6, 0.3), c(0.0, 0.3), c(0.6, 0.3)]);
        let jobs = preset_jobs("fig13", &RunConfig::default()).unwrap();
        assert!(jobs.iter().all(|j| j.config.order == 2 && j.config.nu == c(0.8, 0.5)));
        assert_eq!(jobs[0].label, "fig13_eps0.01+1i");
    }
}
