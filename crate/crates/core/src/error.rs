use alloc::string::String;

/// Everything that can go wrong while evaluating a function, a contour
/// integral or an order shift.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("gamma function pole at {re}{im:+}i")]
    Pole { re: f64, im: f64 },
    #[error("argument lies on the branch cut of the requested phase convention")]
    BranchViolation,
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("no evaluation route met the error target: {0}")]
    Convergence(&'static str),
    #[error("invalid contour geometry: {0}")]
    Geometry(&'static str),
    #[error("quadrature did not converge (error estimate {err_estimate:e} after {panels} panels)")]
    QuadratureNonConvergence { err_estimate: f64, panels: usize },
    #[error("cannot bound the tail of an infinite ray: {0}")]
    Tail(&'static str),
    #[error("parameters outside the validity region: {0}")]
    Validity(String),
    #[error("group parameter |u| = {modulus} outside the convergence disc of radius {radius}")]
    Radius { modulus: f64, radius: f64 },
    #[error("independent evaluation routes disagree (relative difference {0:e})")]
    Inconsistent(f64),
}

pub type Result<T> = core::result::Result<T, Error>;
