//! Gauss maps of immersions into pseudo-Riemannian spheres.
//!
//! An immersion `x: M^n_t → S^{m-1}_s ⊂ E^m_s` is given by a parametrized
//! chart. From it the crate builds adapted orthonormal frames, the second
//! fundamental form and curvature invariants, the Gauss map
//! `ν̃ = x ∧ e_1 ∧ … ∧ e_n` in `Λ^{n+1} E^m_s`, and its Laplacian computed
//! both from a closed-form identity and by finite differences. The spectral
//! module classifies the Gauss map (harmonic, 1-type, biharmonic).

// tensor code indexes several arrays per loop
#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod catalog;
pub mod chart;
pub mod cli;
pub mod curvature;
pub mod error;
pub mod gaussmap;
pub mod immersion;
pub mod indefinite;
pub mod jet;
pub mod multivector;
pub mod report;
pub mod spectral;

pub use chart::{Chart, ChartFile, Expr, ExprChart, JetChart};
pub use error::{GeomError, Result};
pub use immersion::Immersion;
pub use indefinite::{AmbientVector, CausalCharacter, Signature};
pub use multivector::{Multivector, MultivectorSpace};
