use std::f64::consts::FRAC_PI_6;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use complex_susy_cli::complex::ComplexArg;
use complex_susy_cli::error::{EXIT_CERTIFICATION, EXIT_OK, EXIT_VALIDATION};
use complex_susy_cli::presets::{preset_jobs, preset_kind, PresetKind};
use complex_susy_cli::verify::{run_suite, SuiteReport};
use complex_susy_cli::{
    CliError, CliResult, GridSpec, Job, OutputFormat, PivSelection, RunConfig, SeedChoice, Sink, StateSelection, Task,
    Tolerances,
};

/// SUSY partners of the complex oscillator and Painleve IV candidates.
#[derive(Debug, Parser)]
#[command(name = "csusy", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct Common {
    /// Phase of omega = e^{i theta}, in [0, pi/2).
    #[arg(long, default_value_t = FRAC_PI_6)]
    theta: f64,
    /// Factorization energy of a general seed, e.g. 2+1i.
    #[arg(long, default_value = "2+1i", allow_hyphen_values = true)]
    epsilon: ComplexArg,
    /// Seed deformation parameter, |nu| < 1.
    #[arg(long, default_value = "0.8+0.5i", allow_hyphen_values = true)]
    nu: ComplexArg,
    /// Order k of the transformation.
    #[arg(long, default_value_t = 1)]
    order: usize,
    /// general, ams, bound-even:J or bound-odd:J.
    #[arg(long, default_value = "general")]
    seed: SeedChoice,
    /// Sampling grid MIN:MAX:N; defaults to the chain's natural window.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<GridSpec>,
    /// Parameters of a published figure (fig3 .. fig13).
    #[arg(long)]
    preset: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Output directory; data go to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Exclusion threshold on |g| for PIV residuals.
    #[arg(long)]
    g_exclusion: Option<f64>,
    /// Residual tolerance of the analytic scheme.
    #[arg(long)]
    analytic_tol: Option<f64>,
    /// Residual tolerance of the finite-difference scheme.
    #[arg(long)]
    fd_tol: Option<f64>,
}

impl Common {
    fn config(&self) -> RunConfig {
        let d = Tolerances::default();
        RunConfig {
            theta: self.theta,
            epsilon: self.epsilon.0,
            nu: self.nu.0,
            order: self.order,
            seed: self.seed,
            grid: self.grid,
            format: self.format,
            tolerances: Tolerances {
                g_exclusion: self.g_exclusion.unwrap_or(d.g_exclusion),
                analytic: self.analytic_tol.unwrap_or(d.analytic),
                finite_difference: self.fd_tol.unwrap_or(d.finite_difference),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the spectrum of the partner Hamiltonian.
    Spectrum(Common),
    /// Partner potential on a grid.
    Potential(Common),
    /// Normalized densities of transformed, created and oscillator states.
    States {
        #[command(flatten)]
        common: Common,
        /// Oscillator levels to transport, e.g. 0,1,3.
        #[arg(long, value_delimiter = ',')]
        levels: Vec<usize>,
        /// Created states by seed index, e.g. 1,2.
        #[arg(long, value_delimiter = ',')]
        created: Vec<usize>,
        /// Unperturbed oscillator levels, for comparison.
        #[arg(long, value_delimiter = ',')]
        original: Vec<usize>,
        /// Also write normalized amplitudes.
        #[arg(long)]
        amplitudes: bool,
        /// Also write the partner potential.
        #[arg(long)]
        with_potential: bool,
    },
    /// Painleve IV candidate g with its residual certification.
    Piv {
        #[command(flatten)]
        common: Common,
        /// Extremal state (1, 2 or 3) generating g for first-order chains.
        #[arg(long, default_value_t = 2)]
        role: usize,
        /// Write x,re_g,im_g columns.
        #[arg(long)]
        parametric: bool,
        /// Radii at which |g| is reported, e.g. 6,8,10.
        #[arg(long, value_delimiter = ',')]
        decay_radii: Vec<f64>,
    },
    /// Run the verification suite.
    Verify {
        /// Include the extended block (real-limit checks).
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Also write the JSON report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn jobs_for(common: &Common, kind: PresetKind, task: Task) -> CliResult<Vec<Job>> {
    let base = common.config();
    match &common.preset {
        None => Ok(vec![Job { label: String::new(), config: base, task }]),
        Some(name) => {
            let found = preset_kind(name)?;
            let jobs = preset_jobs(name, &base)?;
            if matches!(task, Task::Spectrum) {
                return Ok(jobs.into_iter().map(|j| Job { task: Task::Spectrum, ..j }).collect());
            }
            if found != kind {
                return Err(CliError::Validation(format!(
                    "preset {name} belongs to the {} subcommand",
                    match found {
                        PresetKind::Potential => "potential",
                        PresetKind::States => "states",
                        PresetKind::Piv => "piv",
                    }
                )));
            }
            Ok(jobs)
        }
    }
}

fn run_jobs(common: &Common, jobs: Vec<Job>) -> CliResult<i32> {
    let sink = Sink::from_option(common.out.clone());
    let mut code = EXIT_OK;
    for job in jobs {
        let out = job.run()?;
        for path in sink.emit(&job.config, &out)? {
            eprintln!("wrote {}", path.display());
        }
        for f in &out.failures {
            eprintln!("error: {f}");
            code = code.max(EXIT_VALIDATION);
        }
        for f in &out.uncertified {
            eprintln!("certification failed: {f}");
            code = EXIT_CERTIFICATION;
        }
    }
    Ok(code)
}

fn print_report(report: &SuiteReport, format: ReportFormat) -> CliResult<()> {
    match format {
        ReportFormat::Json => println!("{}", serde_json::to_string_pretty(report)?),
        ReportFormat::Text => {
            for o in &report.outcomes {
                println!(
                    "{:<5} {:<40} measured {:<12.4e} bound {:<9.1e} {:>7.2}s  {}",
                    o.status.label(),
                    o.name,
                    o.measured,
                    o.threshold,
                    o.seconds,
                    o.detail
                );
            }
            let failed = report.outcomes.iter().filter(|o| !o.status.is_ok()).count();
            println!("{} checks, {failed} failed, {:.2}s", report.outcomes.len(), report.seconds);
        }
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Spectrum(common) => {
            let jobs = jobs_for(&common, PresetKind::Potential, Task::Spectrum)?;
            run_jobs(&common, jobs)
        }
        Command::Potential(common) => {
            let jobs = jobs_for(&common, PresetKind::Potential, Task::Potential)?;
            run_jobs(&common, jobs)
        }
        Command::States { common, levels, created, original, amplitudes, with_potential } => {
            let levels =
                if levels.is_empty() && created.is_empty() && original.is_empty() { vec![0, 1, 2] } else { levels };
            let sel = StateSelection { levels, created, original, amplitudes, potential: with_potential };
            let jobs = jobs_for(&common, PresetKind::States, Task::States(sel))?;
            run_jobs(&common, jobs)
        }
        Command::Piv { common, role, parametric, decay_radii } => {
            let sel = PivSelection { role, parametric, decay_radii };
            let jobs = jobs_for(&common, PresetKind::Piv, Task::Piv(sel))?;
            run_jobs(&common, jobs)
        }
        Command::Verify { all, format, out } => {
            let report = run_suite(all);
            print_report(&report, format)?;
            if let Some(path) = out {
                std::fs::write(&path, serde_json::to_string_pretty(&report)? + "\n")?;
            }
            Ok(if report.all_passed { EXIT_OK } else { EXIT_CERTIFICATION })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_VALIDATION,
            };
            return ExitCode::from(code as u8);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
