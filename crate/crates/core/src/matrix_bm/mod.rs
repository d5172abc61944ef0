//! Brownian motions on traceless Hermitian matrices, `SL_n(C)` and `SU(n)`,
//! and the maps extracting their radial parts.

mod extract;
mod family;
mod grid;
mod path;
mod record;

pub use extract::{eigenangles, hermitian_eigenvalues, iwasawa_log_a, log_singular_values, unitary_eigenvalues};
pub use family::{
    build_family, hermitian_basis, sl_basis, su_basis, Family, HermitianFamily, LieIncrement, MatrixFamily,
    SlFamily, SuFamily, MAX_GROUP_STEP,
};
pub use grid::TimeGrid;
pub use path::{
    sample_endpoints, sample_hermitian_bm, sample_path, sample_slnc_bm, sample_snapshots, sample_sun_bm,
    sample_sun_bm_from, MatrixPath,
};
pub use record::{path_header, path_rows};
