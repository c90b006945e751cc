use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument was outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A matrix that should be a density operator has a negative eigenvalue.
    #[error("state is not positive semidefinite (minimum eigenvalue {min_eigenvalue:.3e})")]
    Unphysical { min_eigenvalue: f64 },

    #[error(
        "Volterra solver did not converge: change {change:.3e} > tolerance {tolerance:.1e} \
         after {refinements} refinements (finest step {finest_step:.3e})"
    )]
    NoConvergence {
        change: f64,
        tolerance: f64,
        refinements: u32,
        finest_step: f64,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Unphysical { .. } => 2,
            Error::NoConvergence { .. } => 3,
            Error::Domain(_) | Error::Io(_) | Error::Json(_) => 1,
        }
    }
}
