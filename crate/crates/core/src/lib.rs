//! Exact algebra over `F_q(x)`: maximal orders, lattice reduction over
//! `F_q[x]` and explicit isomorphisms `A -> M_n(F_q(x))` for algebras given
//! by structure constants.

// Field handles carry their modulus, so `from_*` constructors take `&self`.
#![allow(clippy::wrong_self_convention, clippy::type_complexity)]

pub mod algebra;
pub mod error;
pub mod ff;
pub mod finalg;
pub mod io;
pub mod gen;
pub mod lattice;
pub mod linalg;
pub mod order;
pub mod polyrat;
pub mod split;

pub use error::{Error, Result};
