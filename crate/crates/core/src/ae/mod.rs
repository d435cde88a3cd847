//! The planar walk on `{x >= 0} x Z` with boundary self-loops, its Fourier
//! reduction to half-line walks, and the bulk/edge dispersion relation.

mod cmv;
mod dispersion;
mod fourier;
mod params;
mod planar;

pub use cmv::{ae_verblunsky, apply_cmv_transpose, cmv_matrix, lm_factors, CMVData};
pub use dispersion::{
    classify_k, dispersion_table, edge_point, mass, record, theta_c, DispersionTable, EdgePoint, FourierRecord,
    ModeClass, EDGE_TOL, RADICAND_TOL,
};
pub use fourier::{fourier_reconstruct, fourier_reconstruct_windowed};
pub use params::{eta_of_k, hhat, rho_k, rotation, AEParams, Omega};
pub use planar::{gamma_step, PlanarState, Topology};
