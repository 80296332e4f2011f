//! Run configuration shared by all subcommands.

use std::fmt;
use std::str::FromStr;

use complex_susy::painleve::{ANALYTIC_TOL, FD_TOL, G_EXCLUSION};
use complex_susy::susy::MAX_ORDER;
use complex_susy::{Chain, Complex64, Frequency, Grid, SeedSpec};
use serde::{Serialize, Serializer};

use crate::complex::{format_complex, serialize_complex};
use crate::error::{CliError, CliResult};

pub const MIN_POINTS: usize = 16;

/// Seed family selected with `--seed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedChoice {
    General,
    BoundEven(usize),
    BoundOdd(usize),
    Ams,
}

impl FromStr for SeedChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let index = |v: &str| v.parse::<usize>().map_err(|_| format!("bad seed index {v:?} in {s:?}"));
        match s.split_once(':') {
            None if s == "general" => Ok(SeedChoice::General),
            None if s == "ams" => Ok(SeedChoice::Ams),
            Some(("bound-even", j)) => Ok(SeedChoice::BoundEven(index(j)?)),
            Some(("bound-odd", j)) => Ok(SeedChoice::BoundOdd(index(j)?)),
            _ => Err(format!("unknown seed {s:?}; expected general, ams, bound-even:J or bound-odd:J")),
        }
    }
}

impl fmt::Display for SeedChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeedChoice::General => f.write_str("general"),
            SeedChoice::BoundEven(j) => write!(f, "bound-even:{j}"),
            SeedChoice::BoundOdd(j) => write!(f, "bound-odd:{j}"),
            SeedChoice::Ams => f.write_str("ams"),
        }
    }
}

impl Serialize for SeedChoice {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `--grid MIN:MAX:N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts[..] else {
            return Err(format!("grid {s:?} must look like MIN:MAX:N"));
        };
        let num = |v: &str| v.trim().parse::<f64>().map_err(|_| format!("bad grid bound {v:?}"));
        let points = n.trim().parse::<usize>().map_err(|_| format!("bad grid point count {n:?}"))?;
        Ok(GridSpec { x_min: num(a)?, x_max: num(b)?, points })
    }
}

impl GridSpec {
    pub fn to_grid(self) -> CliResult<Grid> {
        Ok(Grid::linspace(self.x_min, self.x_max, self.points)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Thresholds that may be overridden from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// |g| below this is excluded from PIV residual statistics.
    pub g_exclusion: f64,
    pub analytic: f64,
    pub finite_difference: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { g_exclusion: G_EXCLUSION, analytic: ANALYTIC_TOL, finite_difference: FD_TOL }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub theta: f64,
    #[serde(serialize_with = "serialize_complex")]
    pub epsilon: Complex64,
    #[serde(serialize_with = "serialize_complex")]
    pub nu: Complex64,
    pub order: usize,
    pub seed: SeedChoice,
    /// None selects the chain's default window.
    pub grid: Option<GridSpec>,
    pub format: OutputFormat,
    pub tolerances: Tolerances,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            theta: std::f64::consts::FRAC_PI_6,
            epsilon: Complex64::new(2.0, 1.0),
            nu: Complex64::new(0.8, 0.5),
            order: 1,
            seed: SeedChoice::General,
            grid: None,
            format: OutputFormat::Csv,
            tolerances: Tolerances::default(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> CliResult<()> {
        let bad = |msg: String| Err(CliError::Validation(msg));
        if !(0.0..std::f64::consts::FRAC_PI_2).contains(&self.theta) {
            return bad(format!("theta = {} must lie in [0, pi/2)", self.theta));
        }
        if self.nu.norm() >= 1.0 {
            return bad(format!("|nu| = {} must be below 1 (nu = {})", self.nu.norm(), format_complex(self.nu)));
        }
        if !(1..=MAX_ORDER).contains(&self.order) {
            return bad(format!("order {} must lie in 1..={MAX_ORDER}", self.order));
        }
        if let Some(g) = self.grid {
            if g.points < MIN_POINTS {
                return bad(format!("grid needs at least {MIN_POINTS} points, got {}", g.points));
            }
            if !(g.x_min < g.x_max) {
                return bad(format!("grid bounds {}:{} are not increasing", g.x_min, g.x_max));
            }
            if matches!(self.seed, SeedChoice::BoundOdd(_)) && g.x_min <= 0.0 {
                return bad(format!("bound-odd seeds live on x > 0; grid starts at {}", g.x_min));
            }
        }
        let t = self.tolerances;
        if [t.g_exclusion, t.analytic, t.finite_difference].iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return bad("tolerances must be positive".into());
        }
        Ok(())
    }

    pub fn frequency(&self) -> CliResult<Frequency> {
        Ok(Frequency::new(self.theta)?)
    }

    /// Seed of the chain. Bound and AMS seeds fix epsilon themselves.
    pub fn seed_spec(&self) -> CliResult<SeedSpec> {
        let f = self.frequency()?;
        Ok(match self.seed {
            SeedChoice::General => SeedSpec::general(self.epsilon, self.nu)?,
            SeedChoice::BoundEven(j) => SeedSpec::bound_even(j, &f),
            SeedChoice::BoundOdd(j) => SeedSpec::bound_odd(j, &f),
            SeedChoice::Ams => SeedSpec::ams(self.nu, &f)?,
        })
    }

    pub fn chain(&self) -> CliResult<Chain> {
        self.validate()?;
        Ok(Chain::new(self.seed_spec()?, self.frequency()?, self.order)?)
    }

    pub fn grid_for(&self, chain: &Chain) -> CliResult<Grid> {
        match self.grid {
            Some(g) => g.to_grid(),
            None => Ok(chain.default_grid()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_choices_round_trip() {
        for s in ["general", "ams", "bound-even:1", "bound-odd:3"] {
            assert_eq!(s.parse::<SeedChoice>().unwrap().to_string(), s);
        }
        assert!("bound-even".parse::<SeedChoice>().is_err());
        assert!("bound-odd:x".parse::<SeedChoice>().is_err());
        assert!("odd:1".parse::<SeedChoice>().is_err());
    }

    #[test]
    fn grid_spec_parses() {
        let g: GridSpec = "-8:8:1601".parse().unwrap();
        assert_eq!(g, GridSpec { x_min: -8.0, x_max: 8.0, points: 1601 });
        assert!("1:2".parse::<GridSpec>().is_err());
        assert!("a:2:3".parse::<GridSpec>().is_err());
    }

    #[test]
    fn validation_rules() {
        let ok = RunConfig::default();
        assert!(ok.validate().is_ok());
        let with = |f: &dyn Fn(&mut RunConfig)| {
            let mut c = ok.clone();
            f(&mut c);
            c.validate()
        };
        assert!(with(&|c| c.theta = std::f64::consts::FRAC_PI_2).is_err());
        assert!(with(&|c| c.theta = -0.1).is_err());
        assert!(with(&|c| c.nu = Complex64::new(0.8, 0.7)).is_err());
        assert!(with(&|c| c.order = 0).is_err());
        assert!(with(&|c| c.grid = Some(GridSpec { x_min: -1.0, x_max: 1.0, points: 15 })).is_err());
        assert!(with(&|c| {
            c.seed = SeedChoice::BoundOdd(1);
            c.grid = Some(GridSpec { x_min: 0.0, x_max: 8.0, points: 100 });
        })
        .is_err());
        assert!(with(&|c| {
            c.seed = SeedChoice::BoundOdd(1);
            c.grid = Some(GridSpec { x_min: 0.01, x_max: 8.0, points: 100 });
        })
        .is_ok());
    }
}
