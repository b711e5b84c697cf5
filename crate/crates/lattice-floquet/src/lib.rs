//! Floquet matrices, spectral bands, and gap detection for discrete
//! periodic Schrödinger operators on the square, triangular, hexagonal,
//! and EHM (square plus next-nearest-neighbor) lattices.
//!
//! The operator is `H_Q = Delta + Q` with the adjacency convention for
//! `Delta` (no diagonal degree term) and a `(p1, p2)`-periodic real
//! potential `Q`. For each quasimomentum `theta` on the two-torus the
//! restriction to twisted-boundary functions is a `P x P` Hermitian
//! matrix `H_Q(theta)`; the union of its eigenvalue ranges over `theta`
//! is the spectrum, organized into bands `F_1, ..., F_P`.
//!
//! Modules:
//! - [`lattice`]: the four geometries as edge stencils with wrap counts
//! - [`eigen`]: dense Hermitian eigensolver (cyclic complex Jacobi)
//! - [`floquet`]: `H_Q(theta)` and the closed-form dispersion oracles
//! - [`potentials`]: builtin examples, random ensembles, file I/O
//! - [`bands`]: grid sweeps, band-edge refinement, spectrum intervals,
//!   gap queries
//! - [`verify`]: executable checks of the quantitative identities (exact
//!   gap edges, determinant coefficient formulas, trigonometric solution
//!   sets, perturb-and-count censuses)

pub mod bands;
pub mod eigen;
pub mod floquet;
pub mod lattice;
pub mod potentials;
pub mod verify;

pub use bands::{BandTable, GapInfo, GapQuery, GapReport, GridSpec, SpectrumIntervals};
pub use eigen::{eigvalsh, EigenError, HermitianMatrix};
pub use floquet::{
    build_floquet, dispersion_sqn, dispersion_tri, hex_bands_from_tri, sorted_eigs, FloquetError,
    FloquetIndex, FloquetPoint,
};
pub use lattice::{fundamental_sites, neighbor_list, FundamentalSite, LatticeKind, Periods};
pub use potentials::{builtin, load, random_potential, save, PeriodicPotential, PotentialError};
