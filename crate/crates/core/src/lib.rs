//! Exact-diagonalization toolkit for spin-1/2 chains: Hamiltonian construction,
//! symmetry sectors, Lanczos tridiagonalization of the Liouvillian, Krylov
//! complexity, level-spacing statistics and the spectral form factor.

pub mod chaos;
pub mod csv;
pub mod error;
pub mod fits;
pub mod krylov;
pub mod pipeline;
pub mod scalar;
pub mod sparse;
pub mod spin_models;
pub mod symmetry;

pub use error::{Error, Result, Symmetry};
pub use scalar::Scalar;
pub use sparse::{Csr, SparseOperator};
pub use spin_models::{build_hamiltonian, seed_operator, ModelFamily, ModelSpec, SeedKind};
pub use symmetry::{build_sector_basis, project, project_sparse, SectorBasis, SectorSpec};
