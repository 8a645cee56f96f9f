use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which clause of the two-species existence hypothesis is violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypothesisFailure {
    /// `I_1 ∩ I_2` is empty.
    DisjointIntervals,
    /// The fast pure-species speed lies inside `I_1 ∩ I_2`.
    FastSpeedInside,
    /// The lower end of the fast species' interval lies inside `I_1 ∩ I_2`.
    FastLowerEndInside,
}

impl fmt::Display for HypothesisFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            Self::DisjointIntervals => "admissible intervals I_1 and I_2 do not intersect",
            Self::FastSpeedInside => "fast pure-species speed sigma_2 lies in I_1 ∩ I_2",
            Self::FastLowerEndInside => "chi_2^N - chi_2^S lies in I_1 ∩ I_2",
        };
        f.write_str(msg)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },

    #[error("speed {sigma:e} cm/s lies outside the open admissible interval ({lo:e}, {hi:e}) of species {species}")]
    Inadmissible {
        sigma: f64,
        species: usize,
        lo: f64,
        hi: f64,
    },

    #[error("G is undefined at sigma = {sigma:e} cm/s: {reason}")]
    Domain { sigma: f64, reason: String },

    #[error("bifurcation threshold undefined: {0}")]
    Hypothesis(HypothesisFailure),

    #[error("symmetric profile (lambda_minus + lambda_plus = 0): alpha cannot be recovered")]
    SingularFit,

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("time step {dt:e} s exceeds the CFL bound {max:e} s")]
    CflViolation { dt: f64, max: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("at t = {t:e} s: {source}")]
    Step { t: f64, source: Box<Error> },

    #[error("species {species} has no peak: density is identically zero")]
    NoPeak { species: usize },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("{0}")]
    Config(String),

    #[error("{path}: {reason}")]
    Io { path: String, reason: String },
}

impl Error {
    pub(crate) fn invalid(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Self::InvalidParameter {
            name: name.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: &std::path::Path, err: impl fmt::Display) -> Self {
        Self::Io {
            path: path.display().to_string(),
            reason: err.to_string(),
        }
    }

    /// Stable snake_case identifier of the error kind.
    pub fn kind(&self) -> &'static str {
        match self.root() {
            Self::InvalidParameter { .. } => "invalid_parameter",
            Self::Inadmissible { .. } => "inadmissible_speed",
            Self::Domain { .. } => "domain",
            Self::Hypothesis(_) => "hypothesis",
            Self::SingularFit => "singular_fit",
            Self::InvalidProfile(_) => "invalid_profile",
            Self::CflViolation { .. } => "cfl_violation",
            Self::Numerical(_) => "numerical",
            Self::Step { .. } => unreachable!("root() looks through steps"),
            Self::NoPeak { .. } => "no_peak",
            Self::InsufficientData(_) => "insufficient_data",
            Self::Config(_) => "config",
            Self::Io { .. } => "io",
        }
    }

    /// The innermost error, looking through time-stamped step failures.
    pub fn root(&self) -> &Error {
        match self {
            Self::Step { source, .. } => source.root(),
            other => other,
        }
    }
}
