//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use fqiso::ff::{make_field, Field, FieldOps, FiniteField, Fq};
use fqiso::finalg::{FElem, FiniteAlgebra};
use fqiso::linalg::{determinant, Echelon, Matrix};
use fqiso::polyrat::{FqPoly, RatField, RatFunc};
use rand::Rng;

pub fn prime_field(p: u32) -> Field {
    make_field(p, 1, None).unwrap()
}

fn mat_mul_flat(f: &Field, k: usize, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    let mut out = vec![f.zero(); k * k];
    for i in 0..k {
        for l in 0..k {
            if f.is_zero(&a[i * k + l]) {
                continue;
            }
            for j in 0..k {
                out[i * k + j] = f.add(&out[i * k + j], &f.mul(&a[i * k + l], &b[l * k + j]));
            }
        }
    }
    out
}

fn random_masked_matrix<R: Rng>(f: &Field, k: usize, rng: &mut R) -> Vec<Fq> {
    let upper = rng.gen_bool(0.4);
    (0..k * k)
        .map(|idx| {
            let (i, j) = (idx / k, idx % k);
            if (upper && i > j) || rng.gen_bool(0.3) {
                f.zero()
            } else {
                f.random(rng)
            }
        })
        .collect()
}

fn companion<R: Rng>(f: &Field, k: usize, rng: &mut R) -> Vec<Fq> {
    let mut c = vec![f.zero(); k * k];
    for i in 1..k {
        c[i * k + i - 1] = f.one();
    }
    for i in 0..k {
        c[i * k + k - 1] = f.random(rng);
    }
    c
}

/// A random unital algebra of dimension at most `max_dim`: the unital
/// subalgebra of `M_k(F_p)` generated by random (often triangular or sparse)
/// matrices, presented on a random basis.
pub fn random_unital_algebra<R: Rng>(p: u32, max_dim: usize, rng: &mut R) -> FiniteAlgebra<Field> {
    let f = prime_field(p);
    loop {
        let use_companion = rng.gen_bool(0.25);
        let k = if use_companion { rng.gen_range(1..=max_dim) } else { rng.gen_range(1..=3) };
        let gens: Vec<Vec<Fq>> = if use_companion {
            vec![companion(&f, k, rng)]
        } else {
            (0..rng.gen_range(1..=2)).map(|_| random_masked_matrix(&f, k, rng)).collect()
        };
        let mut one = vec![f.zero(); k * k];
        for i in 0..k {
            one[i * k + i] = f.one();
        }
        let mut ech = Echelon::new(f.clone(), k * k);
        let mut basis = vec![];
        for g in std::iter::once(one).chain(gens) {
            if ech.insert(&g) {
                basis.push(g);
            }
        }
        let mut too_big = false;
        let mut i = 0;
        while i < basis.len() && !too_big {
            for j in 0..basis.len() {
                let prod = mat_mul_flat(&f, k, &basis[i], &basis[j]);
                if ech.insert(&prod) {
                    basis.push(prod);
                    if basis.len() > max_dim {
                        too_big = true;
                        break;
                    }
                }
            }
            i += 1;
        }
        if too_big {
            continue;
        }
        let d = basis.len();
        let scrambled = loop {
            let t: Vec<Vec<Fq>> = (0..d).map(|_| (0..d).map(|_| f.random(rng)).collect()).collect();
            if !f.is_zero(&determinant(&f, &Matrix::from_rows(t.clone())).unwrap()) {
                break t
                    .iter()
                    .map(|row| {
                        row.iter().zip(&basis).fold(vec![f.zero(); k * k], |acc, (c, b)| {
                            acc.iter().zip(b).map(|(x, y)| f.add(x, &f.mul(c, y))).collect()
                        })
                    })
                    .collect::<Vec<_>>();
            }
        };
        return FiniteAlgebra::from_subspace(f.clone(), &scrambled, |a, b| mat_mul_flat(&f, k, a, b)).unwrap();
    }
}

/// Every element of `b`; only for tiny algebras.
pub fn all_elements<F: FiniteField>(b: &FiniteAlgebra<F>) -> Vec<FElem<F>> {
    let f = b.field();
    let q = f.size().unwrap();
    let total = q.pow(b.dim() as u32);
    (0..total)
        .map(|mut k| {
            (0..b.dim())
                .map(|_| {
                    let c = f.element_by_index(k % q);
                    k /= q;
                    c
                })
                .collect()
        })
        .collect()
}

fn span_products<F: FiniteField>(b: &FiniteAlgebra<F>, xs: &[FElem<F>], ys: &[FElem<F>]) -> Vec<FElem<F>> {
    let mut ech = Echelon::new(b.field().clone(), b.dim());
    let mut out = vec![];
    for x in xs {
        for y in ys {
            let v = b.mul(x, y);
            if ech.insert(&v) {
                out.push(v);
            }
        }
    }
    out
}

/// Whether the two-sided ideal generated by `x` is nilpotent.
fn generates_nilpotent_ideal<F: FiniteField>(b: &FiniteAlgebra<F>, x: &FElem<F>) -> bool {
    let units: Vec<FElem<F>> = (0..b.dim()).map(|i| b.basis_elem(i)).collect();
    let left = span_products(b, &units, std::slice::from_ref(x));
    let ideal = span_products(b, &left, &units);
    let mut power = ideal.clone();
    loop {
        if power.is_empty() {
            return true;
        }
        let next = span_products(b, &power, &ideal);
        if next.len() == power.len() {
            return false;
        }
        power = next;
    }
}

/// The largest nilpotent two-sided ideal, as the set of its elements: all
/// `x` whose generated ideal is nilpotent.
pub fn brute_force_radical<F: FiniteField>(b: &FiniteAlgebra<F>) -> HashSet<FElem<F>>
where
    F::Elem: std::hash::Hash,
{
    all_elements(b).into_iter().filter(|x| generates_nilpotent_ideal(b, x)).collect()
}

/// All `F`-linear combinations of `basis`.
pub fn span_elements<F: FiniteField>(b: &FiniteAlgebra<F>, basis: &[FElem<F>]) -> Vec<FElem<F>> {
    let f = b.field();
    let q = f.size().unwrap();
    (0..q.pow(basis.len() as u32))
        .map(|mut k| {
            basis.iter().fold(b.zero(), |acc, v| {
                let c = f.element_by_index(k % q);
                k /= q;
                b.add(&acc, &b.scale(&c, v))
            })
        })
        .collect()
}

pub fn random_poly<R: Rng>(rf: &RatField, max_deg: usize, rng: &mut R) -> FqPoly {
    let f = rf.field();
    let d = rng.gen_range(0..=max_deg);
    rf.ring().from_vec((0..=d).map(|_| f.random(rng)).collect())
}

/// Random rational function with numerator and denominator degree at most
/// `max_deg`; the denominator is often `1` or a power of `x`.
pub fn random_ratfunc<R: Rng>(rf: &RatField, max_deg: usize, rng: &mut R) -> RatFunc {
    let num = random_poly(rf, max_deg, rng);
    let den = match rng.gen_range(0..4) {
        0 | 1 => rf.ring().one(),
        2 => rf.ring().monomial(rf.field().one(), rng.gen_range(1..=max_deg.max(1))),
        _ => {
            let d = random_poly(rf, max_deg.min(2), rng);
            if d.is_zero() {
                rf.ring().one()
            } else {
                d
            }
        }
    };
    rf.frac(num, den).unwrap()
}

pub fn random_vectors<R: Rng>(rf: &RatField, m: usize, k: usize, max_deg: usize, rng: &mut R) -> Vec<Vec<RatFunc>> {
    (0..k).map(|_| (0..m).map(|_| random_ratfunc(rf, max_deg, rng)).collect()).collect()
}

/// Random full-rank basis of `F_q(x)^m`.
pub fn random_basis<R: Rng>(rf: &RatField, m: usize, max_deg: usize, rng: &mut R) -> Vec<Vec<RatFunc>> {
    loop {
        let v = random_vectors(rf, m, m, max_deg, rng);
        if !determinant(rf, &Matrix::from_cols(m, &v)).unwrap().is_zero() {
            return v;
        }
    }
}
