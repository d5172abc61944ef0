//! Killed and conditioned Brownian motions on the Weyl chamber and on the
//! alcove of the affine Weyl group.

mod domain;
mod harmonic;
mod identities;
mod laplacian;
mod points;
pub mod rank1;
mod simulate;
mod table;

pub use domain::{
    default_truncation, doob_kernel, killed_kernel, simplex_eigenvalue_formula, simplex_ground_eigenvalue,
    DomainFamily, KernelSpec, WeylDomain,
};
pub use harmonic::{h_rho, h_sinh, h_u, rho_iwasawa, rho_sorted, vandermonde_h};
pub use identities::{kernel_identities_n2, KernelIdentities};
pub use laplacian::{dirichlet_eigen_check, half_laplacian_ratio, DirichletEigenCheck, LAPLACIAN_STEP};
pub use points::{hyperplane_basis, ChamberPoint, SimplexPoint};
pub use rank1::{
    stated_nu, plancherel_nu, rank1_generator_apply, spectral_phi, spectral_reconstruct, Density, DensityFn,
    Rank1Kind, ReconstructOptions, Reconstruction, SpectralIndex, SpectralMeasure,
};
pub use simulate::{
    simulate_conditioned, simulate_conditioned_endpoints, ConditionedEndpoints, ConditionedPath, MAX_STEP,
};
pub use table::{kernel_table, KernelRow};
