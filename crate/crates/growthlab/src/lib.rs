//! Growth profiles of degenerate pullback metrics and exact invariant cohomology
//! on complex Lie group models.
//!
//! The crate has four layers, each usable on its own:
//!
//! * [`form`] — pointwise complex exterior algebra on ℂ^m: wedge products,
//!   bidegree decomposition, Hodge star, traces and top-form densities with
//!   respect to a Hermitian metric.
//! * [`gallery`] — a catalogue of holomorphic maps ℂ^{n−1} → X (complex tori,
//!   the Iwasawa and Nakamura quotients, SL(2,ℂ), projective space) given
//!   through closed-form pullback metrics, together with independent
//!   numeric-Jacobian and Maurer–Cartan evaluation paths.
//! * [`growth`] — quadrature of ball volumes and sphere integrals for a
//!   gallery model, the cumulative growth function F, and the numerical
//!   decision of the two subexponential-growth conditions.
//! * [`lie`] — exact (Gaussian-rational) Chevalley–Eilenberg bicomplexes of
//!   left-invariant forms: structure equations, degenerate-balanced witnesses,
//!   Bott-Chern/Aeppli dimensions, the Aeppli-class map P and Gauduchon-cone
//!   certificates.
//!
//! The `growthlab` binary drives batch runs; see the `examples/` directory
//! for one runnable program per capability.

pub mod form;
pub mod gallery;
pub mod growth;
pub mod lie;
pub mod linalg;
pub mod runner;

pub use form::{Density, ExteriorForm, FormError, HermitianForm};
