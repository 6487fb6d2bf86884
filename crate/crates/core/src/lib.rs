//! Exact arithmetic in finite towers of field extensions over F_p and
//! F_p(t), with decision procedures for separability built on counting and
//! comparing embeddings into a common extension.

pub mod base;
pub mod error;
pub mod embed;
pub mod factor;
pub mod field;
pub mod lattice;
pub mod linalg;
pub mod poly;
pub mod prime;
pub mod ratfunc;
pub mod separability;
pub mod subfield;
pub mod tower;

pub use base::BaseField;
pub use error::{AlgebraError, Result};
pub use factor::FactorConfig;
pub use field::{Field, PerfectionOracle};
pub use poly::Poly;
pub use prime::PrimeField;
pub use ratfunc::{RatFunc, RationalFunctionField};
pub use tower::{Element, Tower, TowerPoly};

/// Towers over a prime field.
pub type FiniteTower = Tower<PrimeField>;
/// Towers over F_p(t).
pub type FunctionTower = Tower<RationalFunctionField>;
