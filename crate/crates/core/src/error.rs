use thiserror::Error;

/// Errors raised by the drag, quadrature, oracle and dynamics routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not converge after {subdivisions} subdivisions (estimate {value}, error {err_estimate})")]
    NonConvergence {
        subdivisions: usize,
        value: f64,
        err_estimate: f64,
    },

    #[error("integrand returned a non-finite value at x = {at}")]
    NonFinite { at: f64 },

    #[error("linear system is singular or not positive definite (pivot {pivot})")]
    SingularSystem { pivot: usize },

    #[error("step size underflow at t = {t}, h = {h}")]
    StepFailure { t: f64, h: f64 },

    #[error("drag model returned a non-finite value at h = {h}")]
    NonFiniteDrag { h: f64 },

    /// The vanishing-lower-limit sequence could not be classified as
    /// convergent or divergent.
    #[error("cannot classify integrability of the drag near contact: {0}")]
    Indeterminate(String),

    #[error("drag is not integrable down to h = {h}")]
    NonIntegrable { h: f64 },
}

impl Error {
    /// Short machine-readable tag, used in the CLI's JSON error payload.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::NonConvergence { .. } => "non_convergence",
            Error::NonFinite { .. } => "non_finite",
            Error::SingularSystem { .. } => "singular_system",
            Error::StepFailure { .. } => "step_failure",
            Error::NonFiniteDrag { .. } => "non_finite_drag",
            Error::Indeterminate(_) => "indeterminate",
            Error::NonIntegrable { .. } => "non_integrable",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
