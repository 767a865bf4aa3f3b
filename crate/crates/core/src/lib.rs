//! Ingham-type inequality data for two-dimensional lattices built from tilings.
//!
//! A lattice `Λ = ⋃_j L*(u_j + ℤ²)` paired with grid offsets `n_k` yields an
//! integration domain `Ω = L⁻¹(⋃_k (2πn_k + (0,2π)²))` on which the
//! exponentials `e^{i(λ,x)}`, `λ ∈ Λ`, satisfy two-sided Parseval-type
//! estimates whenever the matrix `E = (e^{2πi⟨u_j,n_k⟩})` is invertible.
//!
//! * [`quad`]: exact arithmetic in `ℚ(√d)`.
//! * [`lattice`]: lattice data, membership and the minimality criterion.
//! * [`spectral`]: `E`, condition (A2) and the optimal constants.
//! * [`geometry`]: the domain `Ω`, polyominoes and disk-radius bounds.
//! * [`search`]: exhaustive surveys over offset configurations.
//! * [`verify`]: Gram matrices of exponentials over `Ω`.
//! * [`catalog`]: the built-in tilings and their expected values.
//! * [`report`]: the reproduction harness.

pub mod catalog;
pub mod geometry;
pub mod lattice;
pub mod quad;
pub mod report;
pub mod search;
pub mod spectral;
pub mod verify;

pub use lattice::{LatticePoint, LatticeSpec};
pub use quad::{QuadNumber, Rational};
pub use spectral::{SpectralResult, TranslationConfig};
