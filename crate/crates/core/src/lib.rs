//! Walls for divisorial stability conditions on the blow-up of the plane at two points:
//! lattice arithmetic, central charges, wall quadrics and their classification,
//! exact certification of polynomial identities, and candidate searches.

pub mod certifier;
pub mod charge;
pub mod chern;
pub mod field;
pub mod lattice;
pub mod search;
mod serde_rational;
pub mod symbolic;
pub mod walls;
