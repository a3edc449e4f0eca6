//! Explicit isomorphism `A -> M_n(F_q(x))` from the two maximal orders.
//!
//! `C = Lambda ∩ Delta` is finite over `F_q`. A reduced basis `c_i` of
//! `Lambda` in `Delta`-coordinates gives `C = span{x^j c_i : 0 <= j <= -|c_i|}`,
//! because on a reduced basis `|sum f_i c_i| = max(|f_i| + |c_i|)`.

use crate::algebra::{poly_mat_vec, AlgElem, IntegralStructure, StructureAlgebra};
use crate::error::{Error, Result};
use crate::ff::{Field, FieldOps, Fq};
use crate::finalg::{primitive_idempotent_system, radical, wm_complement, FiniteAlgebra};
use crate::lattice::{bounded_elements, clear_denominators, reduce_basis, vec_valuation, ClearedMatrix, Lattice};
use crate::linalg::{inverse, mat_mul, mat_vec, rank, Echelon, Matrix};
use crate::order::{maximal_order_fqx, maximal_order_infinity, OrderRep};
use crate::polyrat::{FqPoly, RatField, RatFunc};

#[derive(Clone, Debug)]
pub struct IntersectionReport {
    /// `F_q`-basis of `C` in ambient coordinates.
    pub c_basis: Vec<AlgElem>,
    /// `|c_j|` for the reduced basis.
    pub d_values: Vec<i64>,
    pub d_min: i64,
    pub d_max: i64,
    /// Reduced basis of `Lambda` in `Delta`-coordinates.
    pub reduced_c: Vec<Vec<RatFunc>>,
    /// `C` with structure constants in `c_basis`.
    pub algebra: FiniteAlgebra<Field>,
}

#[derive(Clone, Debug)]
pub struct Isomorphism {
    pub n: usize,
    pub idempotent: AlgElem,
    /// Images of the ambient basis elements.
    pub images: Vec<Matrix<RatFunc>>,
    /// Basis `v_1 = e, v_2, ..., v_n` of `Ae`.
    pub left_ideal: Vec<AlgElem>,
    pub verified: bool,
}

#[derive(Clone, Debug)]
pub struct SplitResult {
    pub lambda: OrderRep,
    pub delta: OrderRep,
    pub report: IntersectionReport,
    pub iso: Isomorphism,
}

/// `F_q`-coordinates in `C` from polynomial coordinates over the reduced
/// basis, if the element lies in `C`.
fn c_coords(f: &Field, coefs: &[FqPoly], d_values: &[i64]) -> Option<Vec<Fq>> {
    let mut out = Vec::new();
    for (coef, &d) in coefs.iter().zip(d_values) {
        if !coef.is_zero() && coef.deg_i64() > -d {
            return None;
        }
        for j in 0..=-d {
            out.push(coef.coeff(j as usize).copied().unwrap_or_else(|| f.zero()));
        }
    }
    Some(out)
}

/// `C = Lambda ∩ Delta` from ambient bases of the two orders.
pub fn intersect_orders(alg: &StructureAlgebra, lambda: &[AlgElem], delta: &[AlgElem]) -> Result<IntersectionReport> {
    let rf = alg.rf();
    let m = alg.dim();
    let u = Matrix::from_cols(m, delta);
    let uinv = inverse(rf, &u)?;
    let coords: Vec<Vec<RatFunc>> = lambda.iter().map(|b| mat_vec(rf, &uinv, b)).collect();
    let (reduced, _) = reduce_basis(rf, &Lattice::new(m, coords)?)?;
    let d_values: Vec<i64> = reduced.vectors.iter().map(|c| vec_valuation(c).unwrap()).collect();
    let d_min = *d_values.iter().min().unwrap();
    let d_max = *d_values.iter().max().unwrap();
    let in_delta = bounded_elements(rf, &reduced, 0)?;
    let c_basis: Vec<AlgElem> = in_delta.iter().map(|v| mat_vec(rf, &u, v)).collect();
    // Ambient coordinates to coordinates over the reduced basis.
    let to_reduced = mat_mul(rf, &inverse(rf, &reduced.matrix())?, &uinv);
    let ring = rf.ring();
    let f = rf.field();
    let integral = IntegralStructure::new(alg);
    // c_basis = nums / dc, and products of `dc delta`-multiples are integral.
    let (dc, nums) = clear_denominators(rf, &c_basis);
    let scale = ring.mul(&ring.mul(&dc, &dc), &integral.delta);
    let to_c = ClearedMatrix::new(rf, &to_reduced, &scale);
    let dim = c_basis.len();
    let mut gamma = Vec::with_capacity(dim * dim * dim);
    let not_closed = || Error::VerificationFailure("intersection is not closed under multiplication".into());
    for a in &nums {
        let left = integral.left_mul(a);
        for b in &nums {
            let coefs = to_c.apply(ring, &poly_mat_vec(ring, &left, b)).ok_or_else(not_closed)?;
            gamma.extend(c_coords(f, &coefs, &d_values).ok_or_else(not_closed)?);
        }
    }
    let one = mat_vec(rf, &to_reduced, &alg.find_identity()?);
    let one_in_c = one.iter().all(RatFunc::is_polynomial)
        && c_coords(f, &one.iter().map(|c| c.num().clone()).collect::<Vec<_>>(), &d_values).is_some();
    if !one_in_c {
        return Err(Error::VerificationFailure("intersection does not contain the identity".into()));
    }
    let algebra = FiniteAlgebra::new(rf.field().clone(), dim, gamma)?;
    Ok(IntersectionReport { c_basis, d_values, d_min, d_max, reduced_c: reduced.vectors, algebra })
}

/// Ambient element with `F_q`-coordinates `v` in `C`.
pub fn embed(alg: &StructureAlgebra, report: &IntersectionReport, v: &[Fq]) -> AlgElem {
    let rf = alg.rf();
    v.iter()
        .zip(&report.c_basis)
        .filter(|(s, _)| !rf.field().is_zero(s))
        .fold(alg.zero(), |acc, (s, b)| alg.add(&acc, &alg.scale(&rf.constant(*s), b)))
}

/// A rank-one idempotent of `A` inside `C`.
pub fn select_rank_one(alg: &StructureAlgebra, report: &IntersectionReport, seed: u64) -> Result<AlgElem> {
    let c = &report.algebra;
    let field = c.field();
    let rad = radical(c);
    let comp = wm_complement(c, &rad)?;
    let s = FiniteAlgebra::from_subspace(field.clone(), &comp, |a, b| c.mul(a, b))?;
    let system = primitive_idempotent_system(&s, seed)?;
    for e in &system.elements {
        let in_c = e.iter().zip(&comp).fold(c.zero(), |acc, (k, v)| crate::linalg::axpy(field, &acc, k, v));
        let ea = embed(alg, report, &in_c);
        if alg.rank(&ea)? == 1 {
            return Ok(ea);
        }
    }
    Err(Error::NotSplit)
}

/// Left multiplication on `Ae` in the basis `v_1 = e`, then greedily chosen
/// `(1 - e) a_i e` in index order.
pub fn explicit_isomorphism(alg: &StructureAlgebra, e: &[RatFunc]) -> Result<Isomorphism> {
    let rf = alg.rf();
    let n = alg.degree();
    let m = alg.dim();
    if alg.mul(e, e) != e {
        return Err(Error::BadIdempotent(0));
    }
    let mut ech = Echelon::new(rf.clone(), m);
    let mut basis = Vec::with_capacity(n);
    if ech.insert(e) {
        basis.push(e.to_vec());
    }
    for i in 0..m {
        let ae = alg.mul(&alg.basis_elem(i), e);
        let v = alg.sub(&ae, &alg.mul(e, &ae));
        if ech.insert(&v) {
            basis.push(v);
        }
    }
    // Ae = F e + (1 - e)Ae when e has rank one.
    for i in 0..m {
        if ech.insert(&alg.mul(&alg.basis_elem(i), e)) {
            return Err(Error::BadIdempotent(ech.len()));
        }
    }
    if basis.len() != n {
        return Err(Error::BadIdempotent(basis.len()));
    }
    let mut coords = Echelon::new(rf.clone(), m);
    for v in &basis {
        coords.insert(v);
    }
    let mut images = Vec::with_capacity(m);
    for i in 0..m {
        let a = alg.basis_elem(i);
        let cols: Vec<Vec<RatFunc>> = basis
            .iter()
            .map(|v| coords.coords(&alg.mul(&a, v)).ok_or_else(|| Error::VerificationFailure("Ae is not a left ideal".into())))
            .collect::<Result<_>>()?;
        images.push(Matrix::from_cols(n, &cols));
    }
    verify_images(alg, &images)?;
    Ok(Isomorphism { n, idempotent: e.to_vec(), images, left_ideal: basis, verified: true })
}

/// Image of an element under the linear extension of `images`.
pub fn apply(rf: &RatField, images: &[Matrix<RatFunc>], a: &[RatFunc]) -> Matrix<RatFunc> {
    let n = images[0].rows();
    let mut out = Matrix::zeros(rf, n, n);
    for (c, img) in a.iter().zip(images) {
        if c.is_zero() {
            continue;
        }
        for r in 0..n {
            for s in 0..n {
                let v = rf.add(out.get(r, s), &rf.mul(c, img.get(r, s)));
                out.set(r, s, v);
            }
        }
    }
    out
}

/// Exhaustive check: all `m^2` basis products, the identity, and linear
/// independence of the images.
pub fn verify_images(alg: &StructureAlgebra, images: &[Matrix<RatFunc>]) -> Result<()> {
    let rf = alg.rf();
    let m = alg.dim();
    let n = alg.degree();
    if images.len() != m || images.iter().any(|x| x.rows() != n || x.cols() != n) {
        return Err(Error::VerificationFailure(format!("expected {m} images of size {n}x{n}")));
    }
    for i in 0..m {
        for j in 0..m {
            let lhs = mat_mul(rf, &images[i], &images[j]);
            let rhs = apply(rf, images, &alg.mul(&alg.basis_elem(i), &alg.basis_elem(j)));
            if lhs != rhs {
                return Err(Error::VerificationFailure(format!("product of basis elements {i} and {j}")));
            }
        }
    }
    if apply(rf, images, &alg.find_identity()?) != Matrix::identity(rf, n) {
        return Err(Error::VerificationFailure("identity does not map to I_n".into()));
    }
    let flat: Vec<Vec<RatFunc>> = images.iter().map(|x| x.to_rows().concat()).collect();
    if rank(rf, &Matrix::from_cols(n * n, &flat)) != m {
        return Err(Error::VerificationFailure("images are linearly dependent".into()));
    }
    Ok(())
}

/// The two orders are independent; compute them concurrently where threads exist.
#[cfg(not(target_arch = "wasm32"))]
fn both_orders(alg: &StructureAlgebra, seed: u64) -> (Result<OrderRep>, Result<OrderRep>) {
    std::thread::scope(|s| {
        let inf = s.spawn(|| maximal_order_infinity(alg, seed));
        let fx = maximal_order_fqx(alg, seed);
        (fx, inf.join().expect("infinity-side worker panicked"))
    })
}

#[cfg(target_arch = "wasm32")]
fn both_orders(alg: &StructureAlgebra, seed: u64) -> (Result<OrderRep>, Result<OrderRep>) {
    (maximal_order_fqx(alg, seed), maximal_order_infinity(alg, seed))
}

/// Both maximal orders, the intersection, a rank-one idempotent and the
/// verified isomorphism.
pub fn split_pipeline(alg: &StructureAlgebra, seed: u64) -> Result<SplitResult> {
    alg.find_identity()?;
    let (lambda, delta) = both_orders(alg, seed);
    let (lambda, delta) = (lambda?, delta?);
    let report = intersect_orders(alg, &lambda.basis, &delta.basis)?;
    let e = select_rank_one(alg, &report, seed)?;
    let iso = explicit_isomorphism(alg, &e)?;
    Ok(SplitResult { lambda, delta, report, iso })
}

/// Largest coefficient degree of the elements in the `F_q[x]`-basis
/// `basis`, or `None` if some element is not in its span.
pub fn max_coefficient_degree(rf: &RatField, basis: &[AlgElem], elems: &[AlgElem]) -> Option<i64> {
    let inv = inverse(rf, &Matrix::from_cols(basis.len(), basis)).ok()?;
    let mut best = i64::MIN;
    for v in elems {
        for c in mat_vec(rf, &inv, v) {
            if !c.is_polynomial() {
                return None;
            }
            best = best.max(c.num().deg_i64());
        }
    }
    Some(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;
    use crate::gen::{gen_instance, matrix_units};

    fn mu(p: u32, n: usize) -> StructureAlgebra {
        let field = make_field(p, 1, None).unwrap();
        let rf = RatField::new(field.clone());
        StructureAlgebra::from_matrix_basis(field, n, &matrix_units(&rf, n)).unwrap()
    }

    #[test]
    fn matrix_units_intersection() {
        let alg = mu(3, 2);
        let std: Vec<AlgElem> = (0..4).map(|i| alg.basis_elem(i)).collect();
        let rep = intersect_orders(&alg, &std, &std).unwrap();
        assert_eq!(rep.algebra.dim(), 4);
        assert_eq!((rep.d_min, rep.d_max), (0, 0));
        assert!(radical(&rep.algebra).is_empty());
    }

    #[test]
    fn isomorphism_on_matrix_units() {
        let alg = mu(5, 2);
        let e11 = alg.basis_elem(0);
        let iso = explicit_isomorphism(&alg, &e11).unwrap();
        assert!(iso.verified);
        assert_eq!(iso.left_ideal, vec![alg.basis_elem(0), alg.basis_elem(2)]);
        assert_eq!(iso.images[1].get(0, 1), &alg.rf().one());
        let one = alg.find_identity().unwrap();
        assert!(explicit_isomorphism(&alg, &one).is_err());
    }

    #[test]
    fn pipeline_on_generated_instance() {
        let inst = gen_instance(3, 1, 2, 1, 7).unwrap();
        let res = split_pipeline(&inst.algebra, 7).unwrap();
        assert!(res.iso.verified);
        assert_eq!(res.lambda.disc.degree(), Some(0));
        assert_eq!(res.delta.disc.degree(), Some(0));
        assert_eq!(inst.algebra.rank(&res.iso.idempotent).unwrap(), 1);
    }

    #[test]
    fn one_dimensional_gives_unit() {
        let field = make_field(2, 1, None).unwrap();
        let rf = RatField::new(field.clone());
        let alg = StructureAlgebra::new(field, 1, vec![rf.x()]).unwrap();
        let res = split_pipeline(&alg, 0).unwrap();
        assert_eq!(res.iso.idempotent, alg.find_identity().unwrap());
        assert_eq!(res.report.algebra.dim(), 1);
    }

    #[test]
    fn quaternion_division_algebra_is_not_split() {
        let field = make_field(3, 1, None).unwrap();
        let rf = RatField::new(field.clone());
        let h = crate::gen::quaternion_algebra(field, rf.x(), rf.from_int(2)).unwrap();
        assert!(matches!(split_pipeline(&h, 0), Err(Error::NotSplit)));
    }

    #[test]
    fn conjugated_units_fixture() {
        for p in [2, 3, 5] {
            let alg = mu(p, 2);
            let rf = alg.rf();
            let unit = |i: usize, c: RatFunc| alg.scale(&c, &alg.basis_elem(i));
            let lambda = vec![unit(0, rf.one()), unit(1, rf.x_pow(2)), unit(2, rf.x_pow(-2)), unit(3, rf.one())];
            let std: Vec<AlgElem> = (0..4).map(|i| alg.basis_elem(i)).collect();
            let rep = intersect_orders(&alg, &lambda, &std).unwrap();
            assert_eq!(rep.algebra.dim(), 5);
            let rad = radical(&rep.algebra);
            assert_eq!(rad.len(), 3);
            for r in &rad {
                let a = embed(&alg, &rep, r);
                assert!(a[0].is_zero() && a[3].is_zero() && a[1].is_zero());
            }
            let e = select_rank_one(&alg, &rep, 1).unwrap();
            assert!(explicit_isomorphism(&alg, &e).unwrap().verified);
        }
    }
}
