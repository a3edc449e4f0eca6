//! Dense linear algebra over any [`FieldOps`] context.
//!
//! Elimination always picks, within the current column, the nonzero entry of
//! least [`FieldOps::pivot_weight`]; over `F_q(x)` this keeps intermediate
//! degrees small.

use crate::error::{Error, Result};
use crate::ff::FieldOps;
use crate::polyrat::{Poly, PolyRing};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn zeros<F: FieldOps<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity<F: FieldOps<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_cols(rows: usize, cols: &[Vec<E>]) -> Self {
        let c = cols.len();
        let mut data = Vec::with_capacity(rows * c);
        for i in 0..rows {
            for col in cols {
                data.push(col[i].clone());
            }
        }
        Matrix { rows, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn col(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
}

pub fn mat_mul<F: FieldOps>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "dimension mismatch");
    let mut out = Matrix::zeros(field, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if field.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let t = field.mul(x, b.get(k, j));
                let s = field.add(out.get(i, j), &t);
                out.set(i, j, s);
            }
        }
    }
    out
}

pub fn mat_vec<F: FieldOps>(field: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(a.cols, v.len(), "dimension mismatch");
    (0..a.rows).map(|i| dot(field, a.row(i), v)).collect()
}

pub fn dot<F: FieldOps>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter().zip(b).fold(field.zero(), |acc, (x, y)| {
        if field.is_zero(x) || field.is_zero(y) {
            acc
        } else {
            field.add(&acc, &field.mul(x, y))
        }
    })
}

/// `a + s * b` componentwise.
pub fn axpy<F: FieldOps>(field: &F, a: &[F::Elem], s: &F::Elem, b: &[F::Elem]) -> Vec<F::Elem> {
    if field.is_zero(s) {
        return a.to_vec();
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| if field.is_zero(y) { x.clone() } else { field.add(x, &field.mul(s, y)) })
        .collect()
}

pub fn scale_vec<F: FieldOps>(field: &F, s: &F::Elem, a: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().map(|x| field.mul(s, x)).collect()
}

pub fn is_zero_vec<F: FieldOps>(field: &F, a: &[F::Elem]) -> bool {
    a.iter().all(|x| field.is_zero(x))
}

fn best_pivot<F: FieldOps>(field: &F, m: &Matrix<F::Elem>, col: usize, from: usize) -> Option<usize> {
    (from..m.rows)
        .filter(|&i| !field.is_zero(m.get(i, col)))
        .min_by_key(|&i| field.pivot_weight(m.get(i, col)))
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref<F: FieldOps>(field: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = best_pivot(field, m, c, r) else { continue };
        m.swap_rows(r, p);
        let inv = field.inv(m.get(r, c)).unwrap();
        for j in c..m.cols {
            let v = field.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i == r || field.is_zero(m.get(i, c)) {
                continue;
            }
            let f = m.get(i, c).clone();
            for j in c..m.cols {
                if field.is_zero(m.get(r, j)) {
                    continue;
                }
                let v = field.sub(m.get(i, j), &field.mul(&f, m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: FieldOps>(field: &F, m: &Matrix<F::Elem>) -> usize {
    rref(field, &mut m.clone()).len()
}

/// Basis of `{ v : m v = 0 }`.
pub fn kernel<F: FieldOps>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut r = m.clone();
    let pivots = rref(field, &mut r);
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); m.cols];
        v[free] = field.one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(r.get(row, free));
        }
        out.push(v);
    }
    out
}

/// Basis of `{ v : v m = 0 }`.
pub fn left_kernel<F: FieldOps>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    kernel(field, &m.transpose())
}

/// Some solution of `a x = b`, if one exists.
pub fn solve<F: FieldOps>(field: &F, a: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(a.rows, b.len(), "dimension mismatch");
    let mut aug = Matrix::zeros(field, a.rows, a.cols + 1);
    for (i, bi) in b.iter().enumerate() {
        for j in 0..a.cols {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, a.cols, bi.clone());
    }
    let pivots = rref(field, &mut aug);
    if pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut x = vec![field.zero(); a.cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug.get(row, a.cols).clone();
    }
    Some(x)
}

pub fn inverse<F: FieldOps>(field: &F, a: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    if a.rows != a.cols {
        return Err(Error::NotSquare);
    }
    let n = a.rows;
    let mut aug = Matrix::zeros(field, n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, n + i, field.one());
    }
    let pivots = rref(field, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::Dependent);
    }
    let mut out = Matrix::zeros(field, n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, aug.get(i, n + j).clone());
        }
    }
    Ok(out)
}

pub fn determinant<F: FieldOps>(field: &F, a: &Matrix<F::Elem>) -> Result<F::Elem> {
    if a.rows != a.cols {
        return Err(Error::NotSquare);
    }
    let n = a.rows;
    let mut m = a.clone();
    let mut det = field.one();
    for c in 0..n {
        let Some(p) = best_pivot(field, &m, c, c) else { return Ok(field.zero()) };
        if p != c {
            m.swap_rows(c, p);
            det = field.neg(&det);
        }
        let piv = m.get(c, c).clone();
        det = field.mul(&det, &piv);
        let inv = field.inv(&piv).unwrap();
        for i in c + 1..n {
            if field.is_zero(m.get(i, c)) {
                continue;
            }
            let f = field.mul(m.get(i, c), &inv);
            for j in c + 1..n {
                if field.is_zero(m.get(c, j)) {
                    continue;
                }
                let v = field.sub(m.get(i, j), &field.mul(&f, m.get(c, j)));
                m.set(i, j, v);
            }
        }
    }
    Ok(det)
}

/// Characteristic polynomial `det(X I - a)` through a Hessenberg form.
pub fn charpoly<F: FieldOps>(field: &F, a: &Matrix<F::Elem>) -> Result<Poly<F::Elem>> {
    if a.rows != a.cols {
        return Err(Error::NotSquare);
    }
    let n = a.rows;
    let mut h = a.clone();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = best_pivot(field, &h, m - 1, m) else { continue };
        h.swap_rows(i, m);
        h.swap_cols(i, m);
        let inv = field.inv(h.get(m, m - 1)).unwrap();
        for j in m + 1..n {
            if field.is_zero(h.get(j, m - 1)) {
                continue;
            }
            let u = field.mul(h.get(j, m - 1), &inv);
            for k in 0..n {
                let v = field.sub(h.get(j, k), &field.mul(&u, h.get(m, k)));
                h.set(j, k, v);
            }
            for k in 0..n {
                let v = field.add(h.get(k, m), &field.mul(&u, h.get(k, j)));
                h.set(k, m, v);
            }
        }
    }
    let ring = PolyRing::new(field.clone());
    let mut ps: Vec<Poly<F::Elem>> = vec![ring.one()];
    for m in 0..n {
        let lin = ring.from_vec(vec![field.neg(h.get(m, m)), field.one()]);
        let mut next = ring.mul(&lin, &ps[m]);
        let mut t = field.one();
        for i in (0..m).rev() {
            t = field.mul(&t, h.get(i + 1, i));
            let c = field.mul(&t, h.get(i, m));
            next = ring.sub(&next, &ring.scale(&ps[i], &c));
        }
        ps.push(next);
    }
    Ok(ps.pop().unwrap())
}

/// Incrementally built row-echelon basis of a subspace, remembering how each
/// basis row was obtained from the inserted vectors.
#[derive(Clone, Debug)]
pub struct Echelon<F: FieldOps> {
    field: F,
    dim: usize,
    /// Rows normalized so the pivot entry is one.
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    /// `rows[k] = sum_j combo[k][j] * inserted[j]`.
    combo: Vec<Vec<F::Elem>>,
    inserted: usize,
}

impl<F: FieldOps> Echelon<F> {
    pub fn new(field: F, dim: usize) -> Self {
        Echelon { field, dim, rows: Vec::new(), pivots: Vec::new(), combo: Vec::new(), inserted: 0 }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Residual of `v` after reduction, and the coefficients `c` with
    /// `v = residual + sum c_j inserted_j`.
    fn reduce_full(&self, v: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
        let f = &self.field;
        let mut r = v.to_vec();
        let mut c = vec![f.zero(); self.inserted];
        for (k, row) in self.rows.iter().enumerate() {
            let piv = &r[self.pivots[k]];
            if f.is_zero(piv) {
                continue;
            }
            let s = piv.clone();
            r = axpy(f, &r, &f.neg(&s), row);
            c = axpy(f, &c, &s, &self.combo[k]);
        }
        (r, c)
    }

    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        self.reduce_full(v).0
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        is_zero_vec(&self.field, &self.reduce(v))
    }

    /// Coordinates of `v` in terms of the inserted vectors (including the
    /// dependent ones, which get coefficient zero).
    pub fn coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let (r, c) = self.reduce_full(v);
        is_zero_vec(&self.field, &r).then_some(c)
    }

    /// Inserts `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        let f = self.field.clone();
        let (r, c) = self.reduce_full(v);
        let idx = self.inserted;
        self.inserted += 1;
        for combo in &mut self.combo {
            combo.push(f.zero());
        }
        let Some(p) = (0..self.dim).filter(|&j| !f.is_zero(&r[j])).min_by_key(|&j| (f.pivot_weight(&r[j]), j)) else {
            return false;
        };
        // New row: (v - sum c_j inserted_j) / r[p].
        let inv = f.inv(&r[p]).unwrap();
        let row = scale_vec(&f, &inv, &r);
        let mut combo: Vec<F::Elem> = c.iter().map(|x| f.neg(&f.mul(x, &inv))).collect();
        combo.push(inv);
        debug_assert_eq!(combo.len(), idx + 1);
        // Keep the rows reduced at the new pivot.
        for k in 0..self.rows.len() {
            let s = self.rows[k][p].clone();
            if f.is_zero(&s) {
                continue;
            }
            self.rows[k] = axpy(&f, &self.rows[k], &f.neg(&s), &row);
            self.combo[k] = axpy(&f, &self.combo[k], &f.neg(&s), &combo);
        }
        self.rows.push(row);
        self.pivots.push(p);
        self.combo.push(combo);
        true
    }

    /// Basis rows (pivot entries equal one).
    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    /// Pivot column of each basis row; every other row vanishes there.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}
