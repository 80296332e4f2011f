//! SUSY partners of the complex oscillator V(x) = omega^2 x^2 / 2 with
//! omega = e^{i theta}, their ladder algebras, and Painleve IV solutions
//! obtained from them and certified by direct residual evaluation.

pub mod error;
pub mod grid;
pub mod oscillator;
pub mod painleve;
pub mod pha;
pub mod specfun;
pub mod susy;

pub use error::{Error, Result};
pub use grid::Grid;
pub use oscillator::{
    eigenvalue, seed_jet, DerivativeTower, Direction, Frequency, JetValue, LevelLabel, LevelStatus, SeedKind, SeedSpec,
    SpectrumEntry,
};

pub use painleve::{PivCandidate, ResidualReport, Scheme};
pub use pha::ExtremalTriple;
pub use specfun::SeriesControl;
pub use susy::{Chain, Domain, StateRatio, WronskianJet};

pub use num_complex::Complex64;

/// Library version, echoed into run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
