//! Exact solutions and numerical machinery for the curve shortening flow
//! `y_t = y_xx / (1 + y_x^2)` and its anisotropic evaporation-condensation
//! generalisations `y_t = D(y_x) y_xx`.
//!
//! The crate is organised around five pillars:
//!
//! - [`specfun`]: self-contained special functions (error function,
//!   incomplete elliptic integrals, Jacobi elliptic functions) and numerical
//!   primitives (singularity-aware adaptive quadrature, monotone inversion).
//! - [`geometry`]: sampled curve representations with differential-geometric
//!   diagnostics (curvature, arclength, inradius/circumradius, eccentricity).
//! - [`catalog`]: the closed-form solution families, evaluable pointwise on
//!   explicit validity domains, plus residual self-verification against the
//!   governing PDEs.
//! - [`transforms`]: the equivalence group acting on diffusivities and
//!   solutions (reciprocal transformation, rotations, diagonal rescalings,
//!   reflections).
//! - [`reductions`] and [`evolve`]: similarity/travelling-wave reductions
//!   solved by shooting, and direct finite-difference evolvers used to
//!   cross-check every closed form.
//!
//! All evaluation is pure and deterministic. With the default `parallel`
//! feature, grid sweeps run on rayon; without it the same code runs
//! sequentially.

pub mod acceptance;
pub mod catalog;
pub mod error;
pub mod evolve;
pub mod exec;
pub mod geometry;
pub mod io;
pub mod reductions;
pub mod specfun;
pub mod transforms;

pub use error::{Error, Result};
