//! First-passage laws: the drifted Brownian hitting time `T_x`, the
//! Bessel-3 hitting times `S_a` and `W_a = S_a + S′_a`, exact samplers,
//! Monte Carlo Mellin moments, and the generalized gamma convolution
//! structure (Thorin and Lévy measures).

mod laws;
mod sample;
mod thorin;

pub use laws::{
    gamma_psi, s_a_laplace, t_x_density, t_x_laplace, t_x_laplace_quadrature, t_x_mellin, t_x_mode, w_a_cdf,
    w_a_cutoff, w_a_density, w_a_mellin, w_a_moment_quadrature, w_a_small_mass_bound, w_a_survival, w_a_upper,
    BesselPassageLaw, DriftedPassageLaw, GammaLaw, MELLIN_MAX_ORDER,
};
pub use sample::{
    mc_mellin, sample_bessel_paths, sample_t_x, sample_w_a, sample_w_a_with, MCEstimate, Samples, WCdfTable,
    MC_MIN_SAMPLES, PATH_STEP,
};
pub use thorin::{
    correspond_spectral_thorin, stated_w_atoms, fit_multiplier, ggc_exponent, lambda_grid, levy_exponent,
    levy_fit, t_x_exponent, t_x_levy_density, thorin_t_x, thorin_t_x_shape, thorin_w_a, w_a_exponent,
    w_a_levy_density, CorrespondenceCase, CorrespondenceReport, GgcFit, ThorinMeasure, SIGMA_VARIABLE, W_ATOMS,
};
