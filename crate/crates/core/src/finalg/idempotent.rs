//! Idempotents: Wedderburn-Malcev complements, central and primitive
//! idempotent systems, and lifting modulo the radical.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ff::FiniteField;
use crate::linalg::{axpy, kernel, solve, Echelon, Matrix};
use crate::polyrat::{factor_poly, PolyRing};

use super::{FElem, FiniteAlgebra};

/// Pairwise orthogonal idempotents summing to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentSystem<E> {
    pub elements: Vec<Vec<E>>,
}

impl<E: Clone + PartialEq> IdempotentSystem<E> {
    /// Checks `e_i e_j = delta_ij e_i` and `sum e_i = 1`.
    pub fn verify<F: FiniteField<Elem = E>>(&self, b: &FiniteAlgebra<F>) -> bool {
        let Some(one) = b.identity() else { return false };
        let sum = self.elements.iter().fold(b.zero(), |acc, e| b.add(&acc, e));
        if sum != one {
            return false;
        }
        self.elements.iter().enumerate().all(|(i, ei)| {
            self.elements.iter().enumerate().all(|(j, ej)| {
                let prod = b.mul(ei, ej);
                if i == j {
                    prod == *ei
                } else {
                    b.is_zero(&prod)
                }
            })
        })
    }
}

/// `z -> z^Q` for the field size `Q`, as `E` successive `p`-th powers.
fn frobenius_q<F: FiniteField>(b: &FiniteAlgebra<F>, z: &[F::Elem], unit: &[F::Elem]) -> FElem<F> {
    let p = b.field().characteristic() as u64;
    let mut r = z.to_vec();
    for _ in 0..b.field().abs_degree() {
        let mut acc = unit.to_vec();
        let mut base = r.clone();
        let mut k = p;
        while k > 0 {
            if k & 1 == 1 {
                acc = b.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = b.mul(&base, &base);
            }
        }
        r = acc;
    }
    r
}

/// Basis of `{ z in span(zs) : z^Q = z }` for a commutative subalgebra
/// spanned by `zs` with unit `unit`.
fn frobenius_fixed<F: FiniteField>(b: &FiniteAlgebra<F>, zs: &[FElem<F>], unit: &[F::Elem]) -> Vec<FElem<F>> {
    let f = b.field();
    let cols: Vec<FElem<F>> = zs.iter().map(|z| b.sub(&frobenius_q(b, z, unit), z)).collect();
    let m = Matrix::from_cols(b.dim(), &cols);
    kernel(f, &m)
        .iter()
        .map(|c| c.iter().zip(zs).fold(b.zero(), |acc, (s, z)| axpy(f, &acc, s, z)))
        .collect()
}

/// Splits the unit `e` of a commutative subalgebra `F^s` (given by a
/// spanning set `zs` of elements below `e`) into its primitive idempotents.
fn split_commutative<F: FiniteField>(
    b: &FiniteAlgebra<F>,
    e: &[F::Elem],
    zs: &[FElem<F>],
    seed: u64,
) -> Vec<FElem<F>> {
    let f = b.field();
    let mut idems = vec![e.to_vec()];
    for z in zs {
        let mut next = Vec::new();
        for e in idems {
            let ez = b.mul(&e, z);
            let mp = b.min_poly_with_unit(&ez, &e);
            if mp.degree() == Some(1) {
                next.push(e);
                continue;
            }
            let roots: Vec<F::Elem> = factor_poly(f, &mp, seed)
                .expect("minimal polynomial is nonzero")
                .factors
                .iter()
                .map(|(g, _)| {
                    debug_assert_eq!(g.degree(), Some(1), "split semisimple element");
                    f.neg(&g.coeffs()[0])
                })
                .collect();
            for (i, c) in roots.iter().enumerate() {
                // Lagrange idempotent prod_{c' != c} (ez - c' e) / (c - c').
                let mut acc = e.clone();
                for (j, c2) in roots.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    let lin = axpy(f, &ez, &f.neg(c2), &e);
                    let s = f.inv(&f.sub(c, c2)).unwrap();
                    acc = b.scale(&s, &b.mul(&acc, &lin));
                }
                next.push(acc);
            }
        }
        idems = next;
    }
    idems
}

/// Primitive central idempotents of a semisimple algebra.
pub fn central_idempotents<F: FiniteField>(b: &FiniteAlgebra<F>) -> Result<Vec<FElem<F>>> {
    let one = b.identity().ok_or(Error::NotUnital)?;
    let z = b.center();
    let fixed = frobenius_fixed(b, &z, &one);
    Ok(split_commutative(b, &one, &fixed, 0))
}

/// Simple components: each primitive central idempotent with a basis of
/// the two-sided ideal it cuts out.
pub fn simple_components<F: FiniteField>(b: &FiniteAlgebra<F>) -> Result<Vec<(FElem<F>, Vec<FElem<F>>)>> {
    Ok(central_idempotents(b)?
        .into_iter()
        .map(|e| {
            let mut ech = Echelon::new(b.field().clone(), b.dim());
            let basis = (0..b.dim())
                .map(|j| b.mul(&e, &b.basis_elem(j)))
                .filter(|v| ech.insert(v))
                .collect();
            (e, basis)
        })
        .collect())
}

/// Whether `e B e` has no idempotents besides `0` and `e`. Valid when
/// `e B e` is commutative or `B` is semisimple.
pub fn is_primitive<F: FiniteField>(b: &FiniteAlgebra<F>, e: &[F::Elem]) -> bool {
    if b.is_zero(e) {
        return false;
    }
    let corner = b.corner(e);
    let commutative = corner.iter().all(|x| corner.iter().all(|y| b.mul(x, y) == b.mul(y, x)));
    commutative && frobenius_fixed(b, &corner, e).len() == 1
}

fn random_elem<F: FiniteField>(b: &FiniteAlgebra<F>, rng: &mut ChaCha8Rng) -> FElem<F> {
    (0..b.dim()).map(|_| b.field().random(rng)).collect()
}

const MAX_SAMPLES: usize = 4000;

/// Splits an idempotent `e` inside one simple component into primitives.
fn split_in_simple<F: FiniteField>(b: &FiniteAlgebra<F>, e: FElem<F>, rng: &mut ChaCha8Rng) -> Vec<FElem<F>> {
    if is_primitive(b, &e) {
        return vec![e];
    }
    let f = b.field();
    let ring = PolyRing::new(f.clone());
    for _ in 0..MAX_SAMPLES {
        let a = b.mul(&b.mul(&e, &random_elem(b, rng)), &e);
        let mp = b.min_poly_with_unit(&a, &e);
        let fac = factor_poly(f, &mp, rand::Rng::gen(rng)).expect("nonzero minimal polynomial");
        if fac.factors.len() < 2 {
            continue;
        }
        // u = 1 mod g, 0 mod h with g the first primary part.
        let (g0, k0) = &fac.factors[0];
        let g = ring.pow(g0, *k0 as u64);
        let h = ring.div_exact(&mp, &g);
        let hinv = ring.inv_mod(&h, &g).expect("coprime primary parts");
        let u = ring.rem(&ring.mul(&h, &hinv), &mp);
        let e1 = b.eval_poly(&u, &a, &e);
        let e2 = b.sub(&e, &e1);
        debug_assert_eq!(b.mul(&e1, &e1), e1);
        let mut out = split_in_simple(b, e1, rng);
        out.extend(split_in_simple(b, e2, rng));
        return out;
    }
    panic!("no splitting element found after {MAX_SAMPLES} samples")
}

/// Complete system of orthogonal primitive idempotents of a semisimple
/// algebra. Deterministic for a fixed seed.
pub fn primitive_idempotent_system<F: FiniteField>(
    b: &FiniteAlgebra<F>,
    seed: u64,
) -> Result<IdempotentSystem<F::Elem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut elements = Vec::new();
    for eps in central_idempotents(b)? {
        elements.extend(split_in_simple(b, eps, &mut rng));
    }
    Ok(IdempotentSystem { elements })
}

/// Lifts `e`, idempotent modulo the ideal spanned by `rad` (nilpotent), to
/// an idempotent of `b` congruent to it.
pub fn lift_idempotent<F: FiniteField>(b: &FiniteAlgebra<F>, rad: &[FElem<F>], e: &[F::Elem]) -> Result<FElem<F>> {
    let f = b.field();
    let mut ech = Echelon::new(f.clone(), b.dim());
    for r in rad {
        ech.insert(r);
    }
    let mut e = e.to_vec();
    let sq = b.mul(&e, &e);
    if !ech.contains(&b.sub(&sq, &e)) {
        return Err(Error::NotIdempotentModRadical);
    }
    // e <- 3e^2 - 2e^3 squares the defect e^2 - e in every characteristic.
    for _ in 0..=usize::BITS {
        let sq = b.mul(&e, &e);
        if sq == e {
            return Ok(e);
        }
        let cube = b.mul(&sq, &e);
        e = b.sub(&b.scale(&f.from_int(3), &sq), &b.scale(&f.from_int(2), &cube));
    }
    Err(Error::NotIdempotentModRadical)
}

/// Subalgebra `S` with `B = S + Rad B` as a direct sum of subspaces. Returns
/// a basis of `S` in `B`-coordinates.
pub fn wm_complement<F: FiniteField>(b: &FiniteAlgebra<F>, rad: &[FElem<F>]) -> Result<Vec<FElem<F>>> {
    let f = b.field();
    if rad.is_empty() {
        return Ok((0..b.dim()).map(|i| b.basis_elem(i)).collect());
    }
    let q = b.quotient(rad)?;
    let s = &q.algebra;
    let d = s.dim();
    // sigma(s_i): current lifts of the quotient basis.
    let mut sigma: Vec<FElem<F>> = (0..d).map(|i| q.lift(&s.basis_elem(i))).collect();
    // Layers: complements of R^{k+1} in R^k.
    let mut powers = vec![rad.to_vec()];
    loop {
        let next = b.product_space(powers.last().unwrap(), rad);
        if next.is_empty() {
            break;
        }
        powers.push(next);
    }
    let mut layers: Vec<Vec<FElem<F>>> = Vec::new();
    for k in 0..powers.len() {
        let mut ech = Echelon::new(f.clone(), b.dim());
        if let Some(deeper) = powers.get(k + 1) {
            for v in deeper {
                ech.insert(v);
            }
        }
        layers.push(powers[k].iter().filter(|v| ech.insert(v)).cloned().collect());
    }
    // Coordinates in the adapted basis sigma ++ layer_0 ++ layer_1 ++ ...
    let mut adapted = Echelon::new(f.clone(), b.dim());
    for v in sigma.iter().chain(layers.iter().flatten()) {
        assert!(adapted.insert(v), "adapted basis is independent");
    }
    let mut offsets = vec![d];
    for l in &layers {
        offsets.push(offsets.last().unwrap() + l.len());
    }
    for (k, layer) in layers.iter().enumerate() {
        let ell = layer.len();
        let (lo, hi) = (offsets[k], offsets[k + 1]);
        let coords = |v: &[F::Elem]| -> Vec<F::Elem> {
            let c = adapted.coords(v).expect("element of B");
            debug_assert!(c[..lo].iter().all(|x| f.is_zero(x)), "element outside the current power of the radical");
            c[lo..hi].to_vec()
        };
        let left: Vec<Vec<Vec<F::Elem>>> =
            sigma.iter().map(|si| layer.iter().map(|r| coords(&b.mul(si, r))).collect()).collect();
        let right: Vec<Vec<Vec<F::Elem>>> =
            sigma.iter().map(|sj| layer.iter().map(|r| coords(&b.mul(r, sj))).collect()).collect();
        let rows = d * d * ell;
        let mut mat = Matrix::zeros(f, rows, d * ell);
        let mut rhs = vec![f.zero(); rows];
        for i in 0..d {
            for j in 0..d {
                let sij = s.mul(&s.basis_elem(i), &s.basis_elem(j));
                let lifted = sij.iter().zip(&sigma).fold(b.zero(), |acc, (c, v)| axpy(f, &acc, c, v));
                let delta = b.sub(&lifted, &b.mul(&sigma[i], &sigma[j]));
                let dc = coords(&delta);
                for v in 0..ell {
                    let row = (i * d + j) * ell + v;
                    rhs[row] = f.neg(&dc[v]);
                    for u in 0..ell {
                        // f(s_i s_j) term.
                        for (l, c) in sij.iter().enumerate() {
                            if !f.is_zero(c) && u == v {
                                let col = l * ell + u;
                                let val = f.add(mat.get(row, col), c);
                                mat.set(row, col, val);
                            }
                        }
                        let col = j * ell + u;
                        let val = f.sub(mat.get(row, col), &left[i][u][v]);
                        mat.set(row, col, val);
                        let col = i * ell + u;
                        let val = f.sub(mat.get(row, col), &right[j][u][v]);
                        mat.set(row, col, val);
                    }
                }
            }
        }
        let x = solve(f, &mat, &rhs).ok_or_else(|| {
            Error::PromiseViolation("no Wedderburn-Malcev correction exists (quotient not separable)".into())
        })?;
        for (l, sl) in sigma.iter_mut().enumerate() {
            for (u, r) in layer.iter().enumerate() {
                *sl = axpy(f, sl, &x[l * ell + u], r);
            }
        }
    }
    Ok(sigma)
}

#[cfg(test)]
mod tests {
    use super::super::tests::{full_matrix_algebra, matrix_algebra, upper_triangular};
    use super::super::radical;
    use super::*;
    use crate::ff::{make_field, FieldOps, Fq};

    #[test]
    fn idempotent_systems() {
        let f3 = make_field(3, 1, None).unwrap();
        let one_dim = matrix_algebra(&f3, 1, &[vec![1]]);
        let sys = primitive_idempotent_system(&one_dim, 0).unwrap();
        assert_eq!(sys.elements, vec![vec![Fq(1)]]);

        let diag = matrix_algebra(&f3, 2, &[vec![1, 0, 0, 0], vec![0, 0, 0, 1]]);
        let sys = primitive_idempotent_system(&diag, 0).unwrap();
        assert_eq!(sys.elements.len(), 2);
        assert!(sys.elements.contains(&vec![Fq(1), Fq(0)]) && sys.elements.contains(&vec![Fq(0), Fq(1)]));

        for (p, e, k) in [(3, 1, 2), (2, 1, 3), (2, 2, 2), (5, 1, 3)] {
            let f = make_field(p, e, None).unwrap();
            let m = full_matrix_algebra(&f, k);
            for seed in 0..3 {
                let sys = primitive_idempotent_system(&m, seed).unwrap();
                assert!(sys.verify(&m));
                assert_eq!(sys.elements.len(), k);
                for e in &sys.elements {
                    assert!(is_primitive(&m, e));
                    assert_eq!(m.corner(e).len(), 1);
                }
            }
        }
    }

    #[test]
    fn field_extension_is_primitive() {
        // F_9 as 2x2 matrices over F_3: [[a, -b], [b, a]].
        let f3 = make_field(3, 1, None).unwrap();
        let f9 = matrix_algebra(&f3, 2, &[vec![1, 0, 0, 1], vec![0, 2, 1, 0]]);
        let sys = primitive_idempotent_system(&f9, 1).unwrap();
        assert_eq!(sys.elements.len(), 1);
        assert_eq!(central_idempotents(&f9).unwrap().len(), 1);
    }

    #[test]
    fn complement_and_lift_upper_triangular() {
        let f2 = make_field(2, 1, None).unwrap();
        let ut = upper_triangular(&f2);
        let rad = radical(&ut);
        let s = wm_complement(&ut, &rad).unwrap();
        assert_eq!(s.len(), 2);
        let sub = FiniteAlgebra::from_subspace(f2.clone(), &s, |a, b| ut.mul(a, b)).unwrap();
        assert!(sub.identity().is_some());
        assert!(radical(&sub).is_empty());
        let mut ech = Echelon::new(f2.clone(), 3);
        for v in rad.iter().chain(&s) {
            assert!(ech.insert(v));
        }

        // e11 + e12 is already idempotent.
        let e = vec![Fq(1), Fq(1), Fq(0)];
        assert_eq!(lift_idempotent(&ut, &rad, &e).unwrap(), e);
        let bad = vec![Fq(0), Fq(1), Fq(0)];
        assert_eq!(lift_idempotent(&ut, &rad, &ut.add(&bad, &ut.basis_elem(2))).unwrap().len(), 3);
        assert_eq!(lift_idempotent(&ut, &[], &bad), Err(Error::NotIdempotentModRadical));
    }

    #[test]
    fn lift_needs_iterations() {
        // 3x3 upper triangular over F_5, e = e11 + e12 + e23 + e11 * 0.
        let f5 = make_field(5, 1, None).unwrap();
        let mats: Vec<Vec<u32>> = [0, 1, 2, 4, 5, 8]
            .iter()
            .map(|&k| (0..9).map(|j| u32::from(j == k)).collect())
            .collect();
        let ut3 = matrix_algebra(&f5, 3, &mats);
        let rad = radical(&ut3);
        assert_eq!(rad.len(), 3);
        // e11 + e12 + 2 e13 + e23 (basis order e11 e12 e13 e22 e23 e33).
        let e: Vec<Fq> = [1, 1, 2, 0, 1, 0].iter().map(|&v| f5.from_int(v)).collect();
        let l = lift_idempotent(&ut3, &rad, &e).unwrap();
        assert_eq!(ut3.mul(&l, &l), l);
        let mut ech = Echelon::new(f5.clone(), 6);
        rad.iter().for_each(|r| {
            ech.insert(r);
        });
        assert!(ech.contains(&ut3.sub(&l, &e)));
        let s = wm_complement(&ut3, &rad).unwrap();
        let sub = FiniteAlgebra::from_subspace(f5, &s, |a, b| ut3.mul(a, b)).unwrap();
        assert_eq!(sub.dim(), 3);
        assert!(sub.is_commutative());
    }
}
