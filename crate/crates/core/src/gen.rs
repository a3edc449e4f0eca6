//! Random split instances with a known isomorphism.
//!
//! The basis is `f_k = sum_l Q[l][k] E_l` for a random invertible polynomial
//! matrix `Q`, with `E_l` the matrix units in row-major order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::StructureAlgebra;
use crate::error::{Error, Result};
use crate::ff::{make_field, Field, FieldOps, FiniteField};
use crate::linalg::{determinant, Matrix};
use crate::polyrat::{RatField, RatFunc};

/// Resampling budget before giving up on a seed.
pub const MAX_ATTEMPTS: usize = 100;

/// Matrix units `E_{ij}` at index `i * n + j`.
pub fn matrix_units(rf: &RatField, n: usize) -> Vec<Matrix<RatFunc>> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut e = Matrix::zeros(rf, n, n);
            e.set(i, j, rf.one());
            out.push(e);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub algebra: StructureAlgebra,
    pub n: usize,
    /// Change of basis: column `k` holds the matrix-unit coordinates of `f_k`.
    pub q: Matrix<RatFunc>,
}

impl Instance {
    /// The algebra on the basis `f_k` defined by `q`.
    pub fn from_change_of_basis(field: Field, n: usize, q: Matrix<RatFunc>) -> Result<Self> {
        let rf = RatField::new(field.clone());
        let m = n * n;
        if q.rows() != m || q.cols() != m {
            return Err(Error::NotSquare);
        }
        let mats: Vec<Matrix<RatFunc>> = (0..m).map(|k| image_of(&rf, n, &q.col(k))).collect();
        let algebra = StructureAlgebra::from_matrix_basis(field, n, &mats)?;
        Ok(Instance { algebra, n, q })
    }

    /// Matrix of the element with coordinates `a` under the known isomorphism.
    pub fn image(&self, a: &[RatFunc]) -> Matrix<RatFunc> {
        let rf = self.algebra.rf();
        let coords = crate::linalg::mat_vec(rf, &self.q, a);
        image_of(rf, self.n, &coords)
    }
}

fn image_of(rf: &RatField, n: usize, unit_coords: &[RatFunc]) -> Matrix<RatFunc> {
    let mut out = Matrix::zeros(rf, n, n);
    for (l, c) in unit_coords.iter().enumerate() {
        out.set(l / n, l % n, c.clone());
    }
    out
}

/// Seeded random instance over `F_{p^e}` with entries of `Q` of degree at
/// most `max_deg`.
pub fn gen_instance(p: u32, e: usize, n: usize, max_deg: usize, seed: u64) -> Result<Instance> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let field = make_field(p, e, None)?;
    let rf = RatField::new(field.clone());
    let ring = rf.ring();
    let m = n * n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let rows: Vec<Vec<RatFunc>> = (0..m)
            .map(|_| {
                (0..m)
                    .map(|_| {
                        let c = (0..=max_deg).map(|_| field.random(&mut rng)).collect();
                        rf.from_poly(ring.from_vec(c))
                    })
                    .collect()
            })
            .collect();
        let q = Matrix::from_rows(rows);
        if !determinant(&rf, &q)?.is_zero() {
            return Instance::from_change_of_basis(field, n, q);
        }
    }
    Err(Error::DegenerateSeed)
}

/// Quaternion algebra `(a, b)` on the basis `1, i, j, k = ij` with
/// `i^2 = a`, `j^2 = b`, `ji = -ij`; requires odd characteristic.
pub fn quaternion_algebra(field: Field, a: RatFunc, b: RatFunc) -> Result<StructureAlgebra> {
    if field.characteristic() == 2 {
        return Err(Error::InvalidInput("quaternion algebras need odd characteristic".into()));
    }
    let rf = RatField::new(field.clone());
    let z = rf.zero();
    let ab = rf.mul(&a, &b);
    let neg = |v: &RatFunc| rf.neg(v);
    // table[i][j] = (coefficient, target basis index) of the product.
    let one = rf.one();
    let table: [[(RatFunc, usize); 4]; 4] = [
        [(one.clone(), 0), (one.clone(), 1), (one.clone(), 2), (one.clone(), 3)],
        [(one.clone(), 1), (a.clone(), 0), (one.clone(), 3), (a.clone(), 2)],
        [(one.clone(), 2), (neg(&one), 3), (b.clone(), 0), (neg(&b), 1)],
        [(one.clone(), 3), (neg(&a), 2), (b.clone(), 1), (neg(&ab), 0)],
    ];
    let mut gamma = vec![z; 64];
    for (i, row) in table.iter().enumerate() {
        for (j, (c, k)) in row.iter().enumerate() {
            gamma[(i * 4 + j) * 4 + k] = c.clone();
        }
    }
    StructureAlgebra::new(field, 4, gamma)
}
