#![cfg_attr(not(feature = "std"), no_std)]

//! Truncated Fock-space numerics for nonlinear coherent states.
//!
//! A nonlinear coherent state is the eigenstate of f(N)a, where f is a
//! function of the photon-number operator and a is the boson annihilation
//! operator. This crate builds such states and their photon-added
//! relatives, positive and negative added-photon number alike, in a
//! truncated number basis, together with the two-photon analogues
//! (eigenstates of F(N)a²). It verifies the operator identities that the
//! constructions rest on, and computes photon statistics: number
//! distributions, Mandel Q, quadrature variances and squeezing.
//!
//! Everything is plain dense linear algebra over `Vec<Complex64>`; no
//! allocator beyond `alloc` is required, and the crate builds without the
//! standard library (disable the default `std` feature).
//!
//! Quick tour:
//!
//! ```
//! use nlcs_core::{build_nlcs, mandel_q, NlcsSpec, NonlinearFn, TruncationConfig};
//! use num_complex::Complex;
//!
//! // An ordinary coherent state is the f = 1 case.
//! let spec = NlcsSpec::new(
//!     NonlinearFn::unit(),
//!     Complex::new(1.0, 0.0),
//!     TruncationConfig::with_dim(128).unwrap(),
//! );
//! let state = build_nlcs(&spec).unwrap();
//! assert!(mandel_q(&state).unwrap().abs() < 1e-10); // Poissonian
//! ```

extern crate alloc;

pub mod builders;
pub mod error;
pub mod fock;
pub mod geometric;
pub mod nonlinear;
pub mod statistics;
pub mod two_photon;

/// Double-precision complex scalar used throughout.
pub type Complex64 = num_complex::Complex<f64>;

pub use builders::{
    apply_deformed_exponential, build_added_state, build_negative_panlcs_deformed,
    build_negative_panlcs_inverse, build_negative_panlcs_series, build_nlcs, build_panlcs_apply,
    build_panlcs_deformed, commutator_residual, eigen_residual, make_g_dagger, AddedPhotonIndex,
    ConjugateRaisingOp, DeformedLoweringOp, NlcsSpec, Sign,
};
pub use error::{Error, Result};
pub use fock::{FockVector, TruncationConfig};
pub use geometric::{
    build_geometric, build_negative_m_geometric, build_photon_added_geometric, hyp2f1_11,
    lowering_moment_series, moment_nk_series, negative_m_geometric_closed_form, GeometricSpec,
};
pub use nonlinear::NonlinearFn;
pub use statistics::{
    mandel_q, mean_nk, photon_distribution, quadrature_stats, QuadratureStats, StatsRecord,
};
pub use two_photon::{
    build_added_two_photon, build_photon_added_two_photon, build_two_photon_nlcs,
    operator_identity_residual, two_photon_added_residual, TwoPhotonSeed, TwoPhotonSpec,
};
