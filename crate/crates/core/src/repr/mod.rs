//! Finite truncations of the representations on `ℓ²(X)` and `ℓ²(X × ℤ)`.

mod basis;
mod build;
mod operator;
mod residuals;

pub use basis::{build_orbit_basis, BasisSpec, Mode, DEFAULT_BASIS_CAP, UNBOUNDED};
pub use build::{build_m, build_s, build_s_power, build_s_star_power, build_u, represent, represent_monomial};
pub use operator::Operator;
pub use residuals::{relation_residuals, ResidualEntry, ResidualReport};
