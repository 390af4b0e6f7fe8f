use thiserror::Error;

/// Everything that can go wrong while building potentials, solving, or
/// evaluating bounds.
#[derive(Debug, Error)]
pub enum Error {
    #[error("no open scattering channel: E = {energy} must exceed max({v_minus}, {v_plus})")]
    NoOpenChannel {
        energy: f64,
        v_minus: f64,
        v_plus: f64,
    },

    #[error("degenerate energy: E = {energy} equals the barrier height, shift E slightly")]
    DegenerateEnergy { energy: f64 },

    #[error("x = {x} outside tabulated range [{lo}, {hi}]")]
    TabulatedOutOfRange { x: f64, lo: f64, hi: f64 },

    #[error("point-mass potential has no pointwise value; query point_masses() instead")]
    PointMassEvaluation,

    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error(
        "domain truncation failed: |V({x}) - {asymptote}| = {deviation} exceeds tolerance {tol}"
    )]
    TruncationFailure {
        x: f64,
        asymptote: f64,
        deviation: f64,
        tol: f64,
    },

    #[error("comparison asymptotes ({v_minus}, {v_plus}) do not match the potential's ({spec_v_minus}, {spec_v_plus})")]
    ComparisonMismatch {
        v_minus: f64,
        v_plus: f64,
        spec_v_minus: f64,
        spec_v_plus: f64,
    },

    #[error("comparison solved at E = {comparison_energy} but E = {energy} was requested")]
    EnergyMismatch {
        comparison_energy: f64,
        energy: f64,
    },

    #[error("integrator exceeded {max_steps} steps at x = {x}")]
    StepLimit { max_steps: usize, x: f64 },

    #[error("step size underflow at x = {x}")]
    StepUnderflow { x: f64 },

    #[error("quadrature did not converge: error estimate {estimate} > tolerance {tol}")]
    QuadratureNonConvergence { estimate: f64, tol: f64 },

    #[error("phase unwrapping failed: jump of {jump} rad between x = {x_prev} and x = {x}; rerun with more stored nodes")]
    PhaseUnwrap { jump: f64, x_prev: f64, x: f64 },

    #[error("only {count} usable nodes (need at least {needed}) for the residual evaluation")]
    InsufficientNodes { count: usize, needed: usize },

    #[error("potential has distinct asymptotes ({v_minus} vs {v_plus}); a free comparison requires equal ones")]
    UnequalAsymptotes { v_minus: f64, v_plus: f64 },

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by bad user input rather than numerics.
    pub fn is_config(&self) -> bool {
        matches!(self, Error::Config(_))
    }
}
