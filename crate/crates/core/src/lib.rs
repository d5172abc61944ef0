//! Numerical laboratory for matrix-valued Brownian motions, their
//! Doob-conditioned eigenvalue processes, MacDonald functions of complex
//! order, Riemann's xi and Pólya's falsified xi, and the first-passage
//! laws whose Mellin transforms produce them.
//!
//! Module map:
//!
//! - [`linalg`]: small dense complex kernels (Jacobi eigen, Iwasawa, expm).
//! - [`matrix_bm`]: Hermitian, `SL_n(C)` and `SU(n)` Brownian samplers and
//!   the spectral extraction maps.
//! - [`chamber`]: killed and h-transformed kernels on the Weyl chamber and
//!   the affine simplex, conditioned-diffusion simulators, rank-one spectral
//!   decompositions.
//! - [`specfun`]: Gamma, zeta, the theta kernel Φ, `K_μ` with a scaled
//!   contour route, zero finding, Sturm–Liouville and Dirac checks.
//! - [`xi`]: ξ, ξ*, ξ̃ and zero counting.
//! - [`passage`]: hitting-time laws, samplers, Lévy and Thorin measures.

pub mod chamber;
pub mod error;
pub mod linalg;
pub mod matrix_bm;
pub mod passage;
pub mod quad;
pub mod rng;
pub mod specfun;
pub mod stats;
pub mod xi;

pub use error::{Error, Result};

/// Crate version, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
