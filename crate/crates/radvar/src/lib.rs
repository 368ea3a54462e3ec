//! Numerical toolkit for degenerate radial weighted variational problems.
//!
//! Everything revolves around a radial weight w(x) = η(|x|) on an annulus
//! Ω = {a < |x| < b} ⊂ ℝ^d and an exponent p > 1:
//!
//! * [`weight`] — piecewise weight profiles η (constants, power bumps,
//!   tabulated data) with exact moments;
//! * [`decompose`] — the degeneracy decomposition: maximal intervals where
//!   the kernel (s^{d-1} η)^{-1/(p-1)} is locally summable;
//! * [`aux_weight`] — the auxiliary weight η̂_p built from reciprocal kernel
//!   integrals, with its band structure, boundary limits, and derivative
//!   identity;
//! * [`poincare`] — pointwise and interval-form double-weight Poincaré
//!   verification;
//! * [`relaxation`] — the relaxed p-Dirichlet functional F̄, the tracking
//!   objective H, and Lipschitz clip-and-extend density tables;
//! * [`solver`] — the discrete minimizer of H with an independent
//!   coordinate-descent oracle and a polar-competitor dominance check;
//! * [`quadrature`] — adaptive Gauss–Kronrod integration with closed forms
//!   and substitutions for endpoint singularities;
//! * [`sampling`] — seeded generators for the fuzz suites;
//! * [`config`] / [`report`] — TOML weight configs and CSV artifacts shared
//!   with the command-line tool.
//!
//! The runnable examples (`examples/`) walk through each capability on
//! desk-scale problems.

pub mod aux_weight;
pub mod config;
pub mod decompose;
pub mod error;
pub mod params;
pub mod poincare;
pub mod profile;
pub mod quadrature;
pub mod relaxation;
pub mod report;
pub mod sampling;
pub mod solver;
pub mod weight;

pub use aux_weight::{AuxInterval, AuxWeight, BoundaryBehavior};
pub use decompose::{
    decompose_degeneracy, DegeneracyClass, DegeneracyDecomposition, FlagMethod, IntervalInfo, Side,
};
pub use error::{Error, Result};
pub use params::ProblemParams;
pub use poincare::{check_pointwise, check_poincare, w_norm, PoincareReport, PoincareRow};
pub use profile::RadialProfile;
pub use quadrature::{integrate_energy, integrate_fidelity, QuadratureConfig};
pub use relaxation::{
    clip_profile, density_report, evaluate_h, lipschitz_approximants, relaxed_energy,
    DensityReport, DomainClass, EnergyBreakdown,
};
pub use solver::{
    minimize_h, minimize_h_from, oracle_minimize, radial_dominance_check, solver_grid,
    DominanceReport, MinimizerResult, PolarField, SolverConfig,
};
pub use weight::{RadialWeightSpec, WeightPiece};
