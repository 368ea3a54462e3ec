//! Error type shared by every module of the toolkit.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Construction input violates a structural invariant (ordering,
    /// positivity, containment, grid shape, ...).
    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    /// A quadrature-based classification could not separate integrable from
    /// non-integrable behaviour within the refinement budget.
    #[error("analysis inconclusive: {0}")]
    AnalysisInconclusive(String),

    /// Adaptive quadrature exhausted its subdivision budget before reaching
    /// the requested tolerance.
    #[error("quadrature tolerance not met: {0}")]
    ToleranceNotMet(String),

    /// Two objects built against different problems/weights were combined.
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    /// A point lies outside the monotone bands on which the auxiliary-weight
    /// derivative identity holds.
    #[error("point outside monotone band: {0}")]
    OutsideMonotoneBand(String),

    /// Evaluation point(s) violate the required ordering (e.g. anchor and
    /// target on opposite sides of an interval midpoint).
    #[error("ordering violated: {0}")]
    OrderingViolated(String),

    /// A profile fails to lie in the domain required by the operation.
    #[error("profile not in required domain: {0}")]
    NotInDomain(String),

    /// A clipping margin delta reaches or exceeds half an interval length.
    #[error("clipping delta too large: {0}")]
    DeltaTooLarge(String),

    /// The datum g fails the integrability needed by the fidelity term.
    #[error("datum not integrable: {0}")]
    DatumNotIntegrable(String),

    /// An iterative solve exhausted its iteration budget before the
    /// convergence test passed.
    #[error("solver did not converge: {0}")]
    NonConvergence(String),

    /// A competitor field is unusable (wrong grid, non-finite values, ...).
    #[error("competitor not admissible: {0}")]
    CompetitorNotInDomain(String),

    /// Malformed run configuration or data file.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
