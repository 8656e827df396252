//! Numerical core for the CP^(N-1) sigma model on the Riemann sphere.
//!
//! Everything grows out of a holomorphic polynomial seed vector `f`:
//! repeated application of the creation operator `P₊ = (I − P)∂` produces
//! the Din–Zakrzewski ladder of rank-1 projectors `P_0 … P_{N-1}`, from
//! which the crate derives
//!
//! * wave functions `Φ_k(λ)` of the linear spectral problem and their
//!   auxiliary companions `Ψ_k(λ)` ([`spectral`]),
//! * soliton surfaces `X_k` immersed in su(N) via three independent
//!   routes ([`surface`]),
//! * induced metrics, curvatures and the global invariants `W`, `Q`, `Δ`
//!   by quadrature over the sphere ([`geometry`]).
//!
//! All point-local differentiation is exact: fields are carried as
//! truncated bivariate Taylor expansions (jets) in the independent
//! variables `(ξ, ξ̄)`, see [`jet`]. The crate is `no_std`-compatible
//! (with `alloc`); file formats and the command line live in the
//! companion crate `cpn-cli`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod cmatrix;
pub mod error;
pub mod geometry;
pub mod jet;
pub mod ladder;
pub mod seed;
pub mod spectral;
pub mod surface;

pub use cmatrix::CMatrix;
pub use error::Error;
pub use jet::{Jet, MatrixJet};
pub use ladder::Projector;
pub use seed::SeedVector;
pub use spectral::{WaveKind, WaveSample};
pub use surface::{EmbeddingBasis, Surface};

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Default jet order: Gaussian curvature needs third mixed derivatives of
/// the projectors; one extra order is margin for cross-checks.
pub const DEFAULT_ORDER: usize = 4;
