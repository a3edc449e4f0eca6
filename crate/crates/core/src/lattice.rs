//! Full `F_q[x]`-lattices in `F_q(x)^m`.
//!
//! Reduction is leading-coefficient elimination: while the `F_q`-matrix of
//! leading coefficient vectors is singular, a kernel vector cancels the top
//! term of the highest-degree vector involved. The sum of degrees strictly
//! drops at each step, and no vector ever grows.

use crate::error::{Error, Result};
use crate::ff::{Field, FieldOps};
use crate::linalg::{determinant, left_kernel, Matrix};
use crate::polyrat::{common_denominator, FqPoly, PolyRing, RatField, RatFunc, Val};

/// Vector valuation: the largest coordinate valuation.
pub fn vec_valuation(v: &[RatFunc]) -> Val {
    v.iter().map(RatFunc::valuation).max().unwrap_or(Val::NegInf)
}

/// Degree of a polynomial vector, `None` for the zero vector.
pub fn poly_vec_degree(v: &[FqPoly]) -> Option<usize> {
    v.iter().filter_map(|p| p.degree()).max()
}

/// A lattice given by `m` basis vectors (or a generating set) in `F_q(x)^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub m: usize,
    pub vectors: Vec<Vec<RatFunc>>,
}

impl Lattice {
    pub fn new(m: usize, vectors: Vec<Vec<RatFunc>>) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != m) {
            return Err(Error::InvalidInput(format!("every vector must have {m} coordinates")));
        }
        Ok(Lattice { m, vectors })
    }

    pub fn standard(rf: &RatField, m: usize) -> Self {
        let vectors = (0..m)
            .map(|i| (0..m).map(|j| if i == j { rf.one() } else { rf.zero() }).collect())
            .collect();
        Lattice { m, vectors }
    }

    /// Matrix with the vectors as columns.
    pub fn matrix(&self) -> Matrix<RatFunc> {
        Matrix::from_cols(self.m, &self.vectors)
    }
}

/// Result of [`reduce_basis`]: the new basis is `old * transform`, where
/// column `j` of `transform` expresses new vector `j` in the old basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub od_before: i64,
    pub od_after: i64,
    pub transform: Matrix<FqPoly>,
}

pub fn orthogonality_defect(rf: &RatField, vectors: &[Vec<RatFunc>]) -> Result<i64> {
    let m = vectors.len();
    if vectors.iter().any(|v| v.len() != m) {
        return Err(Error::NotSquare);
    }
    let det = determinant(rf, &Matrix::from_cols(m, vectors))?;
    let Val::Fin(d) = det.valuation() else { return Err(Error::Dependent) };
    let sum: i64 = vectors.iter().map(|v| vec_valuation(v).unwrap()).sum();
    Ok(sum - d)
}

/// Polynomial vectors under reduction, with optional transform tracking.
struct Reducer<'a> {
    ring: &'a PolyRing<Field>,
    vecs: Vec<Vec<FqPoly>>,
    /// `track[i]` expresses `vecs[i]` in the original vectors.
    track: Option<Vec<Vec<FqPoly>>>,
}

impl Reducer<'_> {
    fn leading_row(&self, v: &[FqPoly], d: usize) -> Vec<crate::ff::Fq> {
        let f = &self.ring.field;
        v.iter().map(|p| p.coeff(d).copied().unwrap_or_else(|| f.zero())).collect()
    }

    /// Runs elimination until the leading coefficient vectors are independent.
    fn run(&mut self) {
        let field = self.ring.field.clone();
        loop {
            self.drop_zeros();
            let degs: Vec<usize> = self.vecs.iter().map(|v| poly_vec_degree(v).unwrap()).collect();
            let lc_rows: Vec<_> = self.vecs.iter().zip(&degs).map(|(v, &d)| self.leading_row(v, d)).collect();
            if lc_rows.is_empty() {
                return;
            }
            let lc = Matrix::from_rows(lc_rows);
            let Some(c) = left_kernel(&field, &lc).into_iter().next() else { return };
            let support: Vec<usize> = (0..c.len()).filter(|&i| !field.is_zero(&c[i])).collect();
            let t = *support.iter().max_by_key(|&&i| (degs[i], std::cmp::Reverse(i))).unwrap();
            let inv_ct = field.inv(&c[t]).unwrap();
            let mut v = self.vecs[t].clone();
            let mut tr = self.track.as_ref().map(|tr| tr[t].clone());
            for &i in support.iter().filter(|&&i| i != t) {
                let s = field.mul(&c[i], &inv_ct);
                let mono = self.ring.monomial(s, degs[t] - degs[i]);
                for (a, b) in v.iter_mut().zip(&self.vecs[i]) {
                    *a = self.ring.add(a, &self.ring.mul(&mono, b));
                }
                if let (Some(tr), Some(all)) = (tr.as_mut(), self.track.as_ref()) {
                    for (a, b) in tr.iter_mut().zip(&all[i]) {
                        *a = self.ring.add(a, &self.ring.mul(&mono, b));
                    }
                }
            }
            debug_assert!(poly_vec_degree(&v).is_none_or(|d| d < degs[t]));
            self.vecs[t] = v;
            if let (Some(all), Some(tr)) = (self.track.as_mut(), tr) {
                all[t] = tr;
            }
        }
    }

    fn drop_zeros(&mut self) {
        let keep: Vec<bool> = self.vecs.iter().map(|v| poly_vec_degree(v).is_some()).collect();
        if keep.iter().all(|&k| k) {
            return;
        }
        let mut i = 0;
        self.vecs.retain(|_| {
            i += 1;
            keep[i - 1]
        });
        if let Some(tr) = self.track.as_mut() {
            let mut i = 0;
            tr.retain(|_| {
                i += 1;
                keep[i - 1]
            });
        }
    }
}

/// Reduced basis of the `F_q[x]`-module spanned by polynomial vectors of
/// length `m`. Zero vectors are dropped.
pub fn reduce_poly_generators(ring: &PolyRing<Field>, m: usize, gens: Vec<Vec<FqPoly>>) -> Result<Vec<Vec<FqPoly>>> {
    let mut r = Reducer { ring, vecs: gens, track: None };
    r.run();
    if r.vecs.len() != m {
        return Err(Error::NotFullRank);
    }
    Ok(r.vecs)
}

/// Splits rational vectors into `(gamma, gamma * vectors)` with `gamma` the
/// monic lcm of all denominators.
pub fn clear_denominators(rf: &RatField, vectors: &[Vec<RatFunc>]) -> (FqPoly, Vec<Vec<FqPoly>>) {
    let ring = rf.ring();
    let gamma = common_denominator(rf, vectors.iter().flatten());
    let polys = vectors
        .iter()
        .map(|v| {
            v.iter()
                .map(|a| ring.mul(a.num(), &ring.div_exact(&gamma, a.den())))
                .collect()
        })
        .collect();
    (gamma, polys)
}

fn divide_out(rf: &RatField, gamma: &FqPoly, polys: Vec<Vec<FqPoly>>) -> Vec<Vec<RatFunc>> {
    polys
        .into_iter()
        .map(|v| v.into_iter().map(|p| rf.frac(p, gamma.clone()).unwrap()).collect())
        .collect()
}

pub fn reduce_basis(rf: &RatField, basis: &Lattice) -> Result<(Lattice, ReductionCertificate)> {
    let m = basis.m;
    if basis.vectors.len() != m {
        return Err(Error::NotSquare);
    }
    let od_before = orthogonality_defect(rf, &basis.vectors)?;
    let ring = rf.ring();
    let (gamma, polys) = clear_denominators(rf, &basis.vectors);
    let track = (0..m)
        .map(|i| (0..m).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
        .collect();
    let mut r = Reducer { ring, vecs: polys, track: Some(track) };
    r.run();
    // An independent input never reduces to zero.
    debug_assert_eq!(r.vecs.len(), m);
    let vectors = divide_out(rf, &gamma, r.vecs);
    let od_after = orthogonality_defect(rf, &vectors)?;
    let cols = r.track.unwrap();
    let transform = Matrix::from_cols(m, &cols);
    Ok((Lattice { m, vectors }, ReductionCertificate { od_before, od_after, transform }))
}

pub fn reduce_generators(rf: &RatField, m: usize, gens: &[Vec<RatFunc>]) -> Result<Lattice> {
    if gens.iter().any(|v| v.len() != m) {
        return Err(Error::InvalidInput(format!("every vector must have {m} coordinates")));
    }
    let (gamma, polys) = clear_denominators(rf, gens);
    let reduced = reduce_poly_generators(rf.ring(), m, polys)?;
    Ok(Lattice { m, vectors: divide_out(rf, &gamma, reduced) })
}

/// `F_q`-basis of `{ v in L : |v| <= k }` for a reduced basis of `L`.
pub fn bounded_elements(rf: &RatField, basis: &Lattice, k: i64) -> Result<Vec<Vec<RatFunc>>> {
    let od = orthogonality_defect(rf, &basis.vectors)?;
    if od != 0 {
        return Err(Error::NotReduced(od));
    }
    let mut out = Vec::new();
    for c in &basis.vectors {
        let d = vec_valuation(c).unwrap();
        for j in 0..=(k - d).max(-1) {
            let xj = rf.x_pow(j);
            out.push(c.iter().map(|a| rf.mul(&xj, a)).collect());
        }
    }
    Ok(out)
}

/// Rational matrix `N / d` with `N` polynomial, applied to polynomial
/// vectors in exact polynomial arithmetic.
#[derive(Clone, Debug)]
pub struct ClearedMatrix {
    num: Vec<Vec<FqPoly>>,
    den: FqPoly,
}

impl ClearedMatrix {
    /// `a / extra`.
    pub fn new(rf: &RatField, a: &Matrix<RatFunc>, extra: &FqPoly) -> Self {
        let ring = rf.ring();
        let entries = a.to_rows();
        let d = common_denominator(rf, entries.iter().flatten());
        let num = entries.iter().map(|row| row.iter().map(|c| rf.scale_poly(c, &d).num().clone()).collect()).collect();
        ClearedMatrix { num, den: ring.mul(&d, extra) }
    }

    /// `None` unless the image is polynomial.
    pub fn apply(&self, ring: &PolyRing<Field>, v: &[FqPoly]) -> Option<Vec<FqPoly>> {
        crate::algebra::poly_mat_vec(ring, &self.num, v)
            .into_iter()
            .map(|acc| {
                let (q, rem) = ring.divrem(&acc, &self.den);
                rem.is_zero().then_some(q)
            })
            .collect()
    }
}

/// Coordinates of `v` with respect to a basis, over `F_q(x)`.
pub fn coordinates(rf: &RatField, basis: &Lattice, v: &[RatFunc]) -> Option<Vec<RatFunc>> {
    crate::linalg::solve(rf, &basis.matrix(), v)
}

/// Whether every vector of `other` lies in the lattice spanned by `basis`.
pub fn contains_all(rf: &RatField, basis: &Lattice, other: &[Vec<RatFunc>]) -> bool {
    let Ok(inv) = crate::linalg::inverse(rf, &basis.matrix()) else { return false };
    other.iter().all(|v| crate::linalg::mat_vec(rf, &inv, v).iter().all(RatFunc::is_polynomial))
}
