//! Polynomials over `F_q`, rational functions in `F_q(x)` and factoring.

mod factor;
mod poly;
mod ratfunc;

pub use factor::{
    berlekamp, distinct_degree, equal_degree, factor_poly, is_irreducible, squarefree_decomposition, Factorization,
};
pub use poly::{Poly, PolyRing};
pub use ratfunc::{common_denominator, FqPoly, RatField, RatFunc, Val};
