//! Special functions: complex Gamma, Riemann zeta, the theta kernel Φ, the
//! MacDonald function of complex order (real-axis and contour routes), its
//! zeros, and the Sturm–Liouville and Dirac checks behind their spectral
//! interpretation.

mod bessel;
mod gamma;
mod sturm;
mod theta;
mod zeros;
mod zeta;

use num_complex::Complex64;

/// Complex scalar used throughout.
pub type ComplexValue = Complex64;

pub use bessel::{
    macdonald_k, macdonald_k_scaled, polya_asymptotic, polya_envelope, polya_g, polya_phase, recurrence_residuals,
    ScaledK, DIRECT_MAX_IM, SCALED_MAX_IM, SCALED_MAX_RE,
};
pub use gamma::{gamma_complex, ln_gamma_complex};
pub use sturm::{dirac_factorization_check, sturm_liouville_spectrum, SturmLiouville, SPECTRUM_SIZE};
pub use theta::{theta_phi, theta_phi_asymptotic_ln, theta_phi_ln, THETA_MAX_U};
pub use zeros::{k_zeros, k_zeros_with, scaled_k_imaginary, zero_count_asymptotic, ZeroList, ZeroScan};
pub use zeta::{zeta_complex, zeta_line, zeta_real, ZETA_LINE_MAX};
