//! Finite-dimensional associative algebras over a finite field.
//!
//! Used for the finite algebra `C` (intersection of the two maximal orders)
//! and for quotients `Lambda / g Lambda` over residue fields.

mod idempotent;
mod radical;
mod residue;

pub use idempotent::{
    central_idempotents, is_primitive, lift_idempotent, primitive_idempotent_system, simple_components,
    wm_complement, IdempotentSystem,
};
pub use radical::{radical, radical_by_restriction};
pub use residue::ResidueField;

use crate::error::{Error, Result};
use crate::ff::FiniteField;
use crate::linalg::{axpy, kernel, scale_vec, Echelon, Matrix};
use crate::polyrat::{Poly, PolyRing};

/// Element of a [`FiniteAlgebra`], as basis coordinates.
pub type FElem<F> = Vec<<F as crate::ff::FieldOps>::Elem>;

#[derive(Clone, Debug)]
pub struct FiniteAlgebra<F: FiniteField> {
    field: F,
    dim: usize,
    /// Flat, index `(i * dim + j) * dim + k`.
    gamma: Vec<F::Elem>,
}

impl<F: FiniteField> FiniteAlgebra<F> {
    pub fn new(field: F, dim: usize, gamma: Vec<F::Elem>) -> Result<Self> {
        if gamma.len() != dim * dim * dim {
            return Err(Error::InvalidInput(format!("expected {} structure constants", dim * dim * dim)));
        }
        Ok(FiniteAlgebra { field, dim, gamma })
    }

    /// Structure constants of the span of `basis`, given a product on
    /// ambient coordinate vectors. The span must be closed under `mul`.
    pub fn from_subspace(
        field: F,
        basis: &[Vec<F::Elem>],
        mul: impl Fn(&[F::Elem], &[F::Elem]) -> Vec<F::Elem>,
    ) -> Result<Self> {
        let dim = basis.len();
        let ambient = basis.first().map_or(0, Vec::len);
        let mut ech = Echelon::new(field.clone(), ambient);
        for b in basis {
            if !ech.insert(b) {
                return Err(Error::Dependent);
            }
        }
        let mut gamma = Vec::with_capacity(dim * dim * dim);
        for a in basis {
            for b in basis {
                let c = ech
                    .coords(&mul(a, b))
                    .ok_or_else(|| Error::InvalidInput("subspace is not closed under multiplication".into()))?;
                gamma.extend(c);
            }
        }
        Self::new(field, dim, gamma)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn gamma(&self, i: usize, j: usize, k: usize) -> &F::Elem {
        &self.gamma[(i * self.dim + j) * self.dim + k]
    }

    pub fn zero(&self) -> FElem<F> {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis_elem(&self, i: usize) -> FElem<F> {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    pub fn add(&self, a: &[F::Elem], b: &[F::Elem]) -> FElem<F> {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }
    pub fn sub(&self, a: &[F::Elem], b: &[F::Elem]) -> FElem<F> {
        a.iter().zip(b).map(|(x, y)| self.field.sub(x, y)).collect()
    }
    pub fn scale(&self, s: &F::Elem, a: &[F::Elem]) -> FElem<F> {
        scale_vec(&self.field, s, a)
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> FElem<F> {
        let f = &self.field;
        let mut out = self.zero();
        for (i, ai) in a.iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if f.is_zero(bj) {
                    continue;
                }
                let s = f.mul(ai, bj);
                let row = &self.gamma[(i * self.dim + j) * self.dim..(i * self.dim + j + 1) * self.dim];
                out = axpy(f, &out, &s, row);
            }
        }
        out
    }

    pub fn is_zero(&self, a: &[F::Elem]) -> bool {
        a.iter().all(|x| self.field.is_zero(x))
    }

    /// Matrix of `b -> a b` (columns are images of basis vectors).
    pub fn left_mul_matrix(&self, a: &[F::Elem]) -> Matrix<F::Elem> {
        let cols: Vec<_> = (0..self.dim).map(|j| self.mul(a, &self.basis_elem(j))).collect();
        Matrix::from_cols(self.dim, &cols)
    }

    pub fn identity(&self) -> Option<FElem<F>> {
        let f = &self.field;
        let d = self.dim;
        if d == 0 {
            return Some(vec![]);
        }
        // Unknowns e_k; equations e b_i = b_i and b_i e = b_i.
        let mut a = Matrix::zeros(f, 2 * d * d, d + 1);
        for i in 0..d {
            for l in 0..d {
                for k in 0..d {
                    a.set(i * d + l, k, self.gamma(k, i, l).clone());
                    a.set(d * d + i * d + l, k, self.gamma(i, k, l).clone());
                }
                if i == l {
                    a.set(i * d + l, d, f.neg(&f.one()));
                    a.set(d * d + i * d + l, d, f.neg(&f.one()));
                }
            }
        }
        // Kernel vectors with last coordinate 1 are the solutions.
        let ker = kernel(f, &a);
        let v = ker.into_iter().find(|v| !f.is_zero(&v[d]))?;
        let inv = f.inv(&v[d]).unwrap();
        Some(v[..d].iter().map(|x| f.mul(x, &inv)).collect())
    }

    pub fn is_associative(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                (0..self.dim).all(|l| {
                    let (a, b, c) = (self.basis_elem(i), self.basis_elem(j), self.basis_elem(l));
                    self.mul(&self.mul(&a, &b), &c) == self.mul(&a, &self.mul(&b, &c))
                })
            })
        })
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| (0..self.dim).all(|k| self.gamma(i, j, k) == self.gamma(j, i, k))))
    }

    /// Basis of the center.
    pub fn center(&self) -> Vec<FElem<F>> {
        let f = &self.field;
        let d = self.dim;
        // sum_k z_k (gamma_kjl - gamma_jkl) = 0 for all j, l.
        let mut a = Matrix::zeros(f, d * d, d);
        for j in 0..d {
            for l in 0..d {
                for k in 0..d {
                    a.set(j * d + l, k, f.sub(self.gamma(k, j, l), self.gamma(j, k, l)));
                }
            }
        }
        kernel(f, &a)
    }

    /// Smallest power `k` with `a^k = 0`, if `a` is nilpotent.
    pub fn nilpotency_index(&self, a: &[F::Elem]) -> Option<usize> {
        let mut pw = a.to_vec();
        for k in 1..=self.dim + 1 {
            if self.is_zero(&pw) {
                return Some(k);
            }
            pw = self.mul(&pw, a);
        }
        None
    }

    /// Monic minimal polynomial of `a` in the subalgebra with unit `unit`.
    pub fn min_poly_with_unit(&self, a: &[F::Elem], unit: &[F::Elem]) -> Poly<F::Elem> {
        let f = &self.field;
        let mut ech = Echelon::new(f.clone(), self.dim);
        let mut pw = unit.to_vec();
        loop {
            if let Some(c) = ech.coords(&pw) {
                let mut coeffs: Vec<F::Elem> = c.iter().map(|x| f.neg(x)).collect();
                coeffs.push(f.one());
                return PolyRing::new(f.clone()).from_vec(coeffs);
            }
            ech.insert(&pw);
            pw = self.mul(a, &pw);
        }
    }

    /// `p(a)` with `unit` standing for the constant term.
    pub fn eval_poly(&self, p: &Poly<F::Elem>, a: &[F::Elem], unit: &[F::Elem]) -> FElem<F> {
        let f = &self.field;
        p.coeffs().iter().rev().fold(self.zero(), |acc, c| {
            let t = self.mul(a, &acc);
            axpy(f, &t, c, unit)
        })
    }

    /// Basis of the two-sided ideal generated by `gens`.
    pub fn ideal_closure(&self, gens: &[FElem<F>]) -> Vec<FElem<F>> {
        let mut ech = Echelon::new(self.field.clone(), self.dim);
        let mut queue: Vec<FElem<F>> = Vec::new();
        let mut accepted = Vec::new();
        for g in gens {
            if ech.insert(g) {
                queue.push(g.clone());
                accepted.push(g.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for j in 0..self.dim {
                let b = self.basis_elem(j);
                for w in [self.mul(&v, &b), self.mul(&b, &v)] {
                    if ech.insert(&w) {
                        queue.push(w.clone());
                        accepted.push(w);
                    }
                }
            }
        }
        accepted
    }

    /// Basis of the span of all products `a b` with `a` in `x`, `b` in `y`.
    pub fn product_space(&self, x: &[FElem<F>], y: &[FElem<F>]) -> Vec<FElem<F>> {
        let mut ech = Echelon::new(self.field.clone(), self.dim);
        let mut out = Vec::new();
        for a in x {
            for b in y {
                let c = self.mul(a, b);
                if ech.insert(&c) {
                    out.push(c);
                }
            }
        }
        out
    }

    /// Quotient by a two-sided ideal, with the projection.
    pub fn quotient(&self, ideal: &[FElem<F>]) -> Result<Quotient<F>> {
        let f = &self.field;
        let mut ech = Echelon::new(f.clone(), self.dim);
        for v in ideal {
            ech.insert(v);
        }
        let pivots = ech.pivots().to_vec();
        let free: Vec<usize> = (0..self.dim).filter(|j| !pivots.contains(j)).collect();
        let q = free.len();
        let mut gamma = Vec::with_capacity(q * q * q);
        for &i in &free {
            for &j in &free {
                let r = ech.reduce(&self.mul(&self.basis_elem(i), &self.basis_elem(j)));
                gamma.extend(free.iter().map(|&k| r[k].clone()));
            }
        }
        let algebra = FiniteAlgebra::new(f.clone(), q, gamma)?;
        Ok(Quotient { algebra, ideal: ech, free })
    }

    /// The same algebra with an identity adjoined as a new last basis vector.
    pub fn unitalize(&self) -> FiniteAlgebra<F> {
        let f = &self.field;
        let d = self.dim + 1;
        let mut gamma = vec![f.zero(); d * d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let v = if i < self.dim && j < self.dim {
                        if k < self.dim { self.gamma(i, j, k).clone() } else { f.zero() }
                    } else if i == self.dim {
                        if k == j { f.one() } else { f.zero() }
                    } else if k == i {
                        f.one()
                    } else {
                        f.zero()
                    };
                    gamma[(i * d + j) * d + k] = v;
                }
            }
        }
        FiniteAlgebra { field: f.clone(), dim: d, gamma }
    }

    /// Subspace `e B e` for an idempotent `e`.
    pub fn corner(&self, e: &[F::Elem]) -> Vec<FElem<F>> {
        let mut ech = Echelon::new(self.field.clone(), self.dim);
        let mut out = Vec::new();
        for j in 0..self.dim {
            let v = self.mul(&self.mul(e, &self.basis_elem(j)), e);
            if ech.insert(&v) {
                out.push(v);
            }
        }
        out
    }
}

/// `B / I` with the chosen basis: images of the basis vectors `free`.
#[derive(Clone, Debug)]
pub struct Quotient<F: FiniteField> {
    pub algebra: FiniteAlgebra<F>,
    ideal: Echelon<F>,
    free: Vec<usize>,
}

impl<F: FiniteField> Quotient<F> {
    pub fn project(&self, v: &[F::Elem]) -> FElem<F> {
        let r = self.ideal.reduce(v);
        self.free.iter().map(|&k| r[k].clone()).collect()
    }

    /// The preimage representative supported on `free`.
    pub fn lift(&self, v: &[F::Elem]) -> FElem<F> {
        let f = self.algebra.field();
        let mut out = vec![f.zero(); self.ideal.ambient_dim()];
        for (c, &k) in v.iter().zip(&self.free) {
            out[k] = c.clone();
        }
        out
    }

    pub fn ideal_contains(&self, v: &[F::Elem]) -> bool {
        self.ideal.contains(v)
    }
}
