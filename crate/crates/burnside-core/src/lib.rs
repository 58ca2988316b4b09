//! Exact computation in double Burnside groups of finite groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`groups`]: Cayley-table groups, subgroup lattices, homomorphisms;
//! * [`goursat`]: subgroups of direct products and their Goursat data;
//! * [`burnside`]: standard bases, marks, Mackey products and explicit bisets;
//! * [`ghost`]: the ghost ring, the mark homomorphism and the matrix models;
//! * [`fusion`]: fusion systems, characteristic idempotents and saturation.
//!
//! All coefficients are exact rationals ([`num::BigRational`]).

pub mod burnside;
pub mod error;
pub mod fusion;
pub mod ghost;
pub mod goursat;
pub mod groups;
pub mod linalg;

pub use error::{Error, Result};
