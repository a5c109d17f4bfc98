use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero scattering length: a = 0 leaves no interaction scale")]
    ZeroScatteringLength,

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("pole of the eigenvalue equation at nu^2 = {nu_squared}")]
    Pole { nu_squared: f64 },

    #[error("no bracket found for x = {x} after {expansions} expansions")]
    NoBracket { x: f64, expansions: usize },

    #[error("pole misclassification: candidate root nu^2 = {nu_squared} lies within {distance:e} of the pole at nu = {pole}")]
    PoleMisclassification {
        nu_squared: f64,
        pole: f64,
        distance: f64,
    },

    #[error("root search did not converge: {0}")]
    NotConverged(String),

    #[error("branch tracking failed at rho = {rho}: {source}")]
    BranchTracking { rho: f64, source: Box<Error> },

    #[error(
        "step-size control failed at rho = {rho}: h^2 |Q| = {h2q:.3} exceeds the stability limit"
    )]
    StepControl { rho: f64, h2q: f64 },

    #[error(
        "unregularized potential: the -C/rho^2 attraction has no lower bound \
         (Thomas collapse); choose a hard-wall or cap regularization"
    )]
    Unregularized,

    #[error("insufficient nodes: {found} found in the scale window, at least {needed} needed")]
    InsufficientNodes { found: usize, needed: usize },

    #[error("negative density n = {0}")]
    NegativeDensity(f64),

    #[error("energy floor {floor} is not below the spectrum ({count} states beneath it)")]
    FloorNotBelowSpectrum { floor: f64, count: usize },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
