//! Structure-constant algebras over `F_q(x)`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::ff::{Field, FieldOps};
use crate::linalg::{self, determinant, mat_mul, solve, Echelon, Matrix};
use crate::polyrat::{common_denominator, FqPoly, Poly, PolyRing, RatField, RatFunc};

/// An element, as coordinates in the ambient basis.
pub type AlgElem = Vec<RatFunc>;

/// Algebra of dimension `m = n^2` with `a_i a_j = sum_k gamma[i][j][k] a_k`.
#[derive(Debug)]
pub struct StructureAlgebra {
    rf: RatField,
    m: usize,
    n: usize,
    /// `n = p^r k` with `p` not dividing `k`.
    p_part: (u32, u64),
    /// Flat, index `(i * m + j) * m + k`.
    gamma: Vec<RatFunc>,
    identity: OnceLock<Result<AlgElem>>,
    traces: OnceLock<Result<Vec<RatFunc>>>,
}

impl Clone for StructureAlgebra {
    fn clone(&self) -> Self {
        StructureAlgebra {
            rf: self.rf.clone(),
            m: self.m,
            n: self.n,
            p_part: self.p_part,
            gamma: self.gamma.clone(),
            identity: self.identity.clone(),
            traces: self.traces.clone(),
        }
    }
}

pub fn isqrt(m: usize) -> usize {
    let mut n = (m as f64).sqrt() as usize;
    while n * n > m {
        n -= 1;
    }
    while (n + 1) * (n + 1) <= m {
        n += 1;
    }
    n
}

impl StructureAlgebra {
    /// `gamma[i][j][k]` nested as given in instance files.
    pub fn new(field: Field, m: usize, gamma: Vec<RatFunc>) -> Result<Self> {
        if gamma.len() != m * m * m {
            return Err(Error::InvalidInput(format!("expected {} structure constants", m * m * m)));
        }
        let n = isqrt(m);
        if m == 0 || n * n != m {
            return Err(Error::InvalidInput(format!("dimension {m} is not a perfect square")));
        }
        let p = field.p();
        let (mut r, mut k) = (0u32, n as u64);
        while k % p as u64 == 0 {
            k /= p as u64;
            r += 1;
        }
        Ok(StructureAlgebra {
            rf: RatField::new(field),
            m,
            n,
            p_part: (r, k),
            gamma,
            identity: OnceLock::new(),
            traces: OnceLock::new(),
        })
    }

    /// Structure constants of the basis `mats` of `M_n(F_q(x))`.
    pub fn from_matrix_basis(field: Field, n: usize, mats: &[Matrix<RatFunc>]) -> Result<Self> {
        let rf = RatField::new(field.clone());
        let m = n * n;
        if mats.len() != m || mats.iter().any(|a| a.rows() != n || a.cols() != n) {
            return Err(Error::InvalidInput(format!("need {m} matrices of size {n}x{n}")));
        }
        let flat: Vec<Vec<RatFunc>> = mats.iter().map(|a| a.to_rows().concat()).collect();
        let basis = Matrix::from_cols(m, &flat);
        let inv = linalg::inverse(&rf, &basis)?;
        let mut gamma = Vec::with_capacity(m * m * m);
        for a in mats {
            for b in mats {
                let prod = mat_mul(&rf, a, b).to_rows().concat();
                gamma.extend(linalg::mat_vec(&rf, &inv, &prod));
            }
        }
        Self::new(field, m, gamma)
    }

    pub fn rf(&self) -> &RatField {
        &self.rf
    }
    pub fn field(&self) -> &Field {
        self.rf.field()
    }
    pub fn dim(&self) -> usize {
        self.m
    }
    pub fn degree(&self) -> usize {
        self.n
    }
    pub fn p_part(&self) -> (u32, u64) {
        self.p_part
    }
    pub fn gamma(&self, i: usize, j: usize, k: usize) -> &RatFunc {
        &self.gamma[(i * self.m + j) * self.m + k]
    }
    pub fn gamma_flat(&self) -> &[RatFunc] {
        &self.gamma
    }

    pub fn basis_elem(&self, i: usize) -> AlgElem {
        (0..self.m).map(|k| if k == i { self.rf.one() } else { self.rf.zero() }).collect()
    }

    pub fn zero(&self) -> AlgElem {
        vec![self.rf.zero(); self.m]
    }

    pub fn mul(&self, a: &[RatFunc], b: &[RatFunc]) -> AlgElem {
        let rf = &self.rf;
        let mut out = self.zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let s = rf.mul(ai, bj);
                for (k, o) in out.iter_mut().enumerate() {
                    let g = self.gamma(i, j, k);
                    if !g.is_zero() {
                        *o = rf.add(o, &rf.mul(&s, g));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, a: &[RatFunc], b: &[RatFunc]) -> AlgElem {
        a.iter().zip(b).map(|(x, y)| self.rf.add(x, y)).collect()
    }
    pub fn sub(&self, a: &[RatFunc], b: &[RatFunc]) -> AlgElem {
        a.iter().zip(b).map(|(x, y)| self.rf.sub(x, y)).collect()
    }
    pub fn scale(&self, s: &RatFunc, a: &[RatFunc]) -> AlgElem {
        a.iter().map(|x| self.rf.mul(s, x)).collect()
    }

    /// Checks `(a_i a_j) a_l = a_i (a_j a_l)` on all basis triples.
    pub fn check_associativity(&self) -> Result<()> {
        for i in 0..self.m {
            let ai = self.basis_elem(i);
            for j in 0..self.m {
                let aij = self.mul(&ai, &self.basis_elem(j));
                for l in 0..self.m {
                    let al = self.basis_elem(l);
                    let lhs = self.mul(&aij, &al);
                    let rhs = self.mul(&ai, &self.mul(&self.basis_elem(j), &al));
                    if lhs != rhs {
                        return Err(Error::InvalidInput(format!("not associative at basis triple ({i}, {j}, {l})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The two-sided identity.
    pub fn find_identity(&self) -> Result<AlgElem> {
        self.identity.get_or_init(|| self.compute_identity()).clone()
    }

    fn compute_identity(&self) -> Result<AlgElem> {
        let rf = &self.rf;
        let m = self.m;
        // Row (i, l): sum_k e_k gamma_kil = delta_il.
        let mut a = Matrix::zeros(rf, m * m, m);
        let mut b = vec![rf.zero(); m * m];
        for i in 0..m {
            for l in 0..m {
                for k in 0..m {
                    a.set(i * m + l, k, self.gamma(k, i, l).clone());
                }
                if i == l {
                    b[i * m + l] = rf.one();
                }
            }
        }
        let e = solve(rf, &a, &b).ok_or(Error::NotUnital)?;
        for i in 0..m {
            let ai = self.basis_elem(i);
            if self.mul(&ai, &e) != ai {
                return Err(Error::NotUnital);
            }
        }
        Ok(e)
    }

    /// Matrix of `b -> a b`; column `j` holds `a a_j`.
    pub fn regular_representation(&self, a: &[RatFunc]) -> Matrix<RatFunc> {
        let rf = &self.rf;
        let m = self.m;
        let mut out = Matrix::zeros(rf, m, m);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for j in 0..m {
                for l in 0..m {
                    let g = self.gamma(i, j, l);
                    if !g.is_zero() {
                        let v = rf.add(out.get(l, j), &rf.mul(ai, g));
                        out.set(l, j, v);
                    }
                }
            }
        }
        out
    }

    fn basis_traces(&self) -> Result<&Vec<RatFunc>> {
        self.traces
            .get_or_init(|| (0..self.m).map(|i| self.trace_from_charpoly(&self.basis_elem(i))).collect())
            .as_ref()
            .map_err(Clone::clone)
    }

    fn trace_from_charpoly(&self, a: &[RatFunc]) -> Result<RatFunc> {
        let rf = &self.rf;
        let field = rf.field();
        let l = self.regular_representation(a);
        let (r, k) = self.p_part;
        let kinv = field.inv(&field.from_int(k as i64)).unwrap();
        if r == 0 {
            let tr = (0..self.m).fold(rf.zero(), |acc, i| rf.add(&acc, l.get(i, i)));
            let ninv = field.inv(&field.from_int(self.n as i64)).unwrap();
            return Ok(rf.mul(&tr, &rf.constant(ninv)));
        }
        let cp = linalg::charpoly(rf, &l)?;
        let pr = (field.p() as usize).pow(r);
        let c = cp.coeff(self.m - pr).cloned().unwrap_or_else(|| rf.zero());
        let root = rf.pth_power_root(&rf.neg(&c), r).ok_or(Error::RootFailure)?;
        Ok(rf.mul(&root, &rf.constant(kinv)))
    }

    /// Reduced trace, extended linearly from the basis.
    pub fn reduced_trace(&self, a: &[RatFunc]) -> Result<RatFunc> {
        let t = self.basis_traces()?;
        let rf = &self.rf;
        Ok(a.iter().zip(t).fold(rf.zero(), |acc, (x, y)| if x.is_zero() { acc } else { rf.add(&acc, &rf.mul(x, y)) }))
    }

    /// `det(tr(b_i b_j))`, with the numerator scaled monic.
    pub fn discriminant(&self, basis: &[AlgElem]) -> Result<RatFunc> {
        let rf = &self.rf;
        let m = basis.len();
        let mut g = Matrix::zeros(rf, m, m);
        for i in 0..m {
            for j in i..m {
                let t = self.reduced_trace(&self.mul(&basis[i], &basis[j]))?;
                g.set(i, j, t.clone());
                g.set(j, i, t);
            }
        }
        let d = determinant(rf, &g)?;
        if d.is_zero() {
            return Err(Error::DegenerateBasis);
        }
        Ok(monic_normal(rf, &d))
    }

    /// `dim(aA) / n`.
    pub fn rank(&self, a: &[RatFunc]) -> Result<usize> {
        let d = linalg::rank(&self.rf, &self.regular_representation(a));
        if !d.is_multiple_of(self.n) {
            return Err(Error::PromiseViolation(format!("dim aA = {d} is not a multiple of {}", self.n)));
        }
        Ok(d / self.n)
    }

    /// Monic minimal polynomial over `F_q(x)`.
    pub fn min_poly(&self, a: &[RatFunc]) -> Result<Poly<RatFunc>> {
        let rf = &self.rf;
        let one = self.find_identity()?;
        let mut ech = Echelon::new(rf.clone(), self.m);
        let mut pw = one;
        loop {
            if let Some(c) = ech.coords(&pw) {
                let mut coeffs: Vec<RatFunc> = c.iter().map(|x| rf.neg(x)).collect();
                coeffs.push(rf.one());
                return Ok(PolyRing::new(rf.clone()).from_vec(coeffs));
            }
            ech.insert(&pw);
            pw = self.mul(a, &pw);
        }
    }
}

/// Structure constants `delta * gamma` of the basis `delta a_i`, with
/// `delta` the least common denominator of all `gamma`.
#[derive(Clone, Debug)]
pub struct IntegralStructure {
    ring: PolyRing<Field>,
    m: usize,
    pub delta: FqPoly,
    /// Flat, polynomial.
    pub gamma: Vec<FqPoly>,
}

impl IntegralStructure {
    pub fn new(alg: &StructureAlgebra) -> Self {
        let rf = alg.rf();
        let delta = common_denominator(rf, alg.gamma_flat());
        let gamma = alg.gamma_flat().iter().map(|g| rf.scale_poly(g, &delta).num().clone()).collect();
        IntegralStructure { ring: rf.ring().clone(), m: alg.dim(), delta, gamma }
    }

    /// Rows of left multiplication by `sum u_i (delta a_i)`.
    pub fn left_mul(&self, u: &[FqPoly]) -> Vec<Vec<FqPoly>> {
        let (r, m) = (&self.ring, self.m);
        let mut out = vec![vec![r.zero(); m]; m];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for j in 0..m {
                for (k, row) in out.iter_mut().enumerate() {
                    let g = &self.gamma[(i * m + j) * m + k];
                    if !g.is_zero() {
                        row[j] = r.add(&row[j], &r.mul(ui, g));
                    }
                }
            }
        }
        out
    }

    /// Product in the basis `delta a_i`.
    pub fn mul(&self, u: &[FqPoly], v: &[FqPoly]) -> Vec<FqPoly> {
        poly_mat_vec(&self.ring, &self.left_mul(u), v)
    }
}

/// Product of a polynomial matrix (by rows) with a polynomial vector.
pub fn poly_mat_vec(r: &PolyRing<Field>, rows: &[Vec<FqPoly>], v: &[FqPoly]) -> Vec<FqPoly> {
    rows.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(r.zero(), |acc, (a, b)| r.add(&acc, &r.mul(a, b)))
        })
        .collect()
}

/// Scales `d` so that its numerator is monic.
pub fn monic_normal(rf: &RatField, d: &RatFunc) -> RatFunc {
    match d.num().lc() {
        None => d.clone(),
        Some(lc) => rf.mul(d, &rf.constant(rf.field().inv(lc).unwrap())),
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::ff::make_field;

    /// Matrix units `E_11, E_12, ..., E_nn` in row-major order.
    pub(crate) fn matrix_units(rf: &RatField, n: usize) -> Vec<Matrix<RatFunc>> {
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let mut e = Matrix::zeros(rf, n, n);
                e.set(i, j, rf.one());
                out.push(e);
            }
        }
        out
    }

    fn mu_algebra(p: u32, e: usize, n: usize) -> StructureAlgebra {
        let field = make_field(p, e, None).unwrap();
        let rf = RatField::new(field.clone());
        StructureAlgebra::from_matrix_basis(field, n, &matrix_units(&rf, n)).unwrap()
    }

    #[test]
    fn identity_examples() {
        let a = mu_algebra(3, 1, 2);
        let rf = a.rf().clone();
        let (o, z) = (rf.one(), rf.zero());
        assert_eq!(a.find_identity().unwrap(), vec![o.clone(), z.clone(), z.clone(), o.clone()]);

        let one_dim = StructureAlgebra::new(a.field().clone(), 1, vec![o.clone()]).unwrap();
        assert_eq!(one_dim.find_identity().unwrap(), vec![o.clone()]);

        // Basis {e11, e22, x e12, e21}.
        let mut mats = matrix_units(&rf, 2);
        let x = rf.x();
        let mut xe12 = Matrix::zeros(&rf, 2, 2);
        xe12.set(0, 1, x.clone());
        let reordered = vec![mats[0].clone(), mats[3].clone(), xe12, mats.remove(2)];
        let b = StructureAlgebra::from_matrix_basis(a.field().clone(), 2, &reordered).unwrap();
        assert_eq!(b.find_identity().unwrap(), vec![o.clone(), o.clone(), z.clone(), z.clone()]);
        assert_eq!(b.discriminant(&(0..4).map(|i| b.basis_elem(i)).collect::<Vec<_>>()).unwrap(), rf.x_pow(2));

        let zero = StructureAlgebra::new(a.field().clone(), 1, vec![z]).unwrap();
        assert_eq!(zero.find_identity(), Err(Error::NotUnital));
        assert!(matches!(StructureAlgebra::new(a.field().clone(), 2, vec![o; 8]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn regular_representation_of_e12() {
        let a = mu_algebra(3, 1, 2);
        let rf = a.rf();
        let l = a.regular_representation(&a.basis_elem(1));
        // e12 e21 = e11, e12 e22 = e12.
        let mut want = Matrix::zeros(rf, 4, 4);
        want.set(0, 2, rf.one());
        want.set(1, 3, rf.one());
        assert_eq!(l, want);
        assert_eq!(a.regular_representation(&a.zero()), Matrix::zeros(rf, 4, 4));
        assert_eq!(a.regular_representation(&a.find_identity().unwrap()), Matrix::identity(rf, 4));
    }

    #[test]
    fn traces_including_char_dividing_n() {
        for (p, e, n) in [(3, 1, 2), (2, 1, 2), (2, 2, 2), (3, 1, 3), (2, 1, 4), (3, 2, 3)] {
            let a = mu_algebra(p, e, n);
            let rf = a.rf();
            for i in 0..n {
                for j in 0..n {
                    let t = a.reduced_trace(&a.basis_elem(i * n + j)).unwrap();
                    assert_eq!(t, if i == j { rf.one() } else { rf.zero() }, "p={p} e={e} n={n}");
                }
            }
            let id = a.find_identity().unwrap();
            assert_eq!(a.reduced_trace(&id).unwrap(), rf.from_int(n as i64));
        }
    }

    #[test]
    fn discriminant_scaling() {
        let a = mu_algebra(5, 1, 2);
        let rf = a.rf();
        let basis: Vec<_> = (0..4).map(|i| a.basis_elem(i)).collect();
        assert_eq!(a.discriminant(&basis).unwrap(), rf.one());
        let delta = rf.from_poly(rf.ring().from_vec(vec![rf.field().from_int(1), rf.field().from_int(1)]));
        let scaled: Vec<_> = basis.iter().map(|b| a.scale(&delta, b)).collect();
        let d8 = (0..8).fold(rf.one(), |acc, _| rf.mul(&acc, &delta));
        assert_eq!(a.discriminant(&scaled).unwrap(), d8);
    }

    #[test]
    fn rank_and_min_poly() {
        let a = mu_algebra(3, 1, 2);
        let rf = a.rf();
        let ring = PolyRing::new(rf.clone());
        let id = a.find_identity().unwrap();
        assert_eq!(a.rank(&id).unwrap(), 2);
        assert_eq!(a.rank(&a.zero()).unwrap(), 0);
        assert_eq!(a.rank(&a.basis_elem(0)).unwrap(), 1);
        assert_eq!(a.min_poly(&id).unwrap(), ring.from_vec(vec![rf.from_int(-1), rf.one()]));
        assert_eq!(a.min_poly(&a.basis_elem(0)).unwrap(), ring.from_vec(vec![rf.zero(), rf.from_int(-1), rf.one()]));
        assert_eq!(a.min_poly(&a.basis_elem(1)).unwrap(), ring.from_vec(vec![rf.zero(), rf.zero(), rf.one()]));
        a.check_associativity().unwrap();
    }
}
