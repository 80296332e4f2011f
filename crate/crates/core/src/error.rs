use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("1F1 lower parameter b = {b} is a pole and the series does not terminate before it")]
    PoleAtB { b: Complex64 },

    #[error("series did not converge within {max_terms} terms at z = {z}")]
    NotConverged { z: Complex64, max_terms: usize },

    #[error("invalid series control: {0}")]
    InvalidControl(&'static str),

    #[error("theta = pi/2 is the repulsive oscillator: there are no square-integrable eigenfunctions")]
    RepulsiveOscillator,

    #[error("phase theta = {theta} is outside the working domain [0, pi/2)")]
    PhaseOutOfDomain { theta: f64 },

    #[error("invalid seed: {0}")]
    InvalidSeed(String),

    #[error("lambda is undefined: Gamma(3/4 - eps/2w) has a pole at eps = {epsilon} and nu != 0")]
    LambdaPole { epsilon: Complex64 },

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("x = {x} is outside the chain domain")]
    OutOfDomain { x: f64 },

    #[error("Wronskian vanishes at x = {x} (transformation is singular there)")]
    SingularPoint { x: f64 },

    #[error("level n = {n} has been deleted from the spectrum")]
    DeletedLevel { n: usize },

    #[error("state is not normalizable on the grid (tail fraction {tail_fraction:.3e})")]
    NonNormalizable { tail_fraction: f64 },

    #[error("ladder step from n = {n} leaves the physical ladder")]
    LadderEdge { n: usize },

    #[error("extremal state {index} vanishes identically")]
    DegenerateTriple { index: usize },

    #[error("g vanishes identically; the b/g term of PIV is undefined")]
    DegenerateSolution,

    #[error("state has a zero near x = {x}")]
    ZeroCrossing { x: f64 },

    #[error("no cyclic energy assignment passes the PIV residual tolerance (best {best:.3e})")]
    NoValidAssignment { best: f64 },

    #[error("every grid point was excluded")]
    EmptyGrid,

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}
