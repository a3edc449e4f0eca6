//! Factoring univariate polynomials over finite fields.
//!
//! Squarefree decomposition, then either Berlekamp (fields with at most 16
//! elements, fully deterministic) or distinct-degree factorization followed
//! by trace-based equal-degree splitting driven by a seeded RNG.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ff::FiniteField;
use crate::linalg::{kernel, Matrix};

use super::poly::{Poly, PolyRing};

const BERLEKAMP_MAX_Q: u64 = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<E> {
    pub unit: E,
    /// Monic irreducible factors with multiplicities, sorted by degree and
    /// then coefficients.
    pub factors: Vec<(Poly<E>, usize)>,
}

impl<E: Clone> Factorization<E> {
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

pub fn factor_poly<F: FiniteField>(field: &F, f: &Poly<F::Elem>, seed: u64) -> Result<Factorization<F::Elem>> {
    let ring = PolyRing::new(field.clone());
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (unit, monic) = ring.monic(f);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let small = field.size().is_some_and(|q| q <= BERLEKAMP_MAX_Q);
    let mut factors: Vec<(Poly<F::Elem>, usize)> = Vec::new();
    for (sqf, mult) in squarefree_decomposition(&ring, &monic) {
        let irr = if small {
            berlekamp(&ring, &sqf)
        } else {
            let mut out = Vec::new();
            for (g, d) in distinct_degree(&ring, &sqf) {
                out.extend(equal_degree(&ring, &g, d, &mut rng));
            }
            out
        };
        for g in irr {
            match factors.iter_mut().find(|(h, _)| *h == g) {
                Some(entry) => entry.1 += mult,
                None => factors.push((g, mult)),
            }
        }
    }
    factors.sort_by_key(|(g, _)| ring.sort_key(g));
    Ok(Factorization { unit, factors })
}

/// Irreducibility test (used when building extension fields).
pub fn is_irreducible<F: FiniteField>(field: &F, coeffs: &[F::Elem]) -> bool {
    let ring = PolyRing::new(field.clone());
    let f = ring.monic(&ring.from_vec(coeffs.to_vec())).1;
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    if !ring.is_one(&ring.gcd(&f, &ring.derivative(&f))) {
        return false;
    }
    // No factor of degree <= n/2 means irreducible.
    let x = ring.x();
    let mut h = x.clone();
    for _ in 1..=n / 2 {
        h = ring.frobenius_mod(&h, &f);
        if !ring.is_one(&ring.gcd(&f, &ring.sub(&h, &x))) {
            return false;
        }
    }
    true
}

/// Returns pairs `(g_i, i)` with `f = prod g_i^i`, every `g_i` squarefree
/// and monic. Input must be monic.
pub fn squarefree_decomposition<F: FiniteField>(
    ring: &PolyRing<F>,
    f: &Poly<F::Elem>,
) -> Vec<(Poly<F::Elem>, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = ring.field.characteristic() as usize;
    let df = ring.derivative(f);
    let mut c = ring.gcd(f, &df);
    let mut w = ring.div_exact(f, &c);
    let mut i = 1;
    while !ring.is_one(&w) {
        let y = ring.gcd(&w, &c);
        let fac = ring.div_exact(&w, &y);
        if !ring.is_one(&fac) {
            out.push((fac, i));
        }
        w = y;
        c = ring.div_exact(&c, &w);
        i += 1;
    }
    if !ring.is_one(&c) {
        let root = ring.pth_root(&c).expect("remaining cofactor is a p-th power");
        for (g, k) in squarefree_decomposition(ring, &root) {
            out.push((g, k * p));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree; returns `(product, degree)` pairs.
pub fn distinct_degree<F: FiniteField>(ring: &PolyRing<F>, f: &Poly<F::Elem>) -> Vec<(Poly<F::Elem>, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x = ring.x();
    let mut h = x.clone();
    let mut d = 0;
    while f.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = ring.frobenius_mod(&h, &f);
        let g = ring.gcd(&f, &ring.sub(&h, &x));
        if !ring.is_one(&g) {
            f = ring.div_exact(&f, &g);
            h = ring.rem(&h, &f);
            out.push((g, d));
        }
    }
    if let Some(k) = f.degree() {
        if k > 0 {
            out.push((f, k));
        }
    }
    out
}

/// Splits `f`, a product of distinct monic irreducibles of degree `d`,
/// using the absolute trace to the prime field.
pub fn equal_degree<F: FiniteField, R: rand::Rng>(
    ring: &PolyRing<F>,
    f: &Poly<F::Elem>,
    d: usize,
    rng: &mut R,
) -> Vec<Poly<F::Elem>> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let field = &ring.field;
    let p = field.characteristic();
    let steps = field.abs_degree() * d;
    loop {
        let r = ring.from_vec((0..n).map(|_| field.random(rng)).collect());
        if r.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut t = r.clone();
        let mut acc = r.clone();
        for _ in 1..steps {
            t = ring.pow_mod(&t, p as u64, f);
            acc = ring.add(&acc, &t);
        }
        let mut parts = Vec::new();
        let mut rest = f.clone();
        for c in 0..p {
            let g = ring.gcd(&rest, &ring.sub(&acc, &ring.constant(field.from_int(c as i64))));
            if g.degree().unwrap_or(0) > 0 {
                rest = ring.div_exact(&rest, &g);
                parts.push(g);
            }
        }
        if parts.len() > 1 {
            return parts.into_iter().flat_map(|g| equal_degree(ring, &g, d, rng)).collect();
        }
    }
}

/// Berlekamp's algorithm for a squarefree monic polynomial over a small field.
pub fn berlekamp<F: FiniteField>(ring: &PolyRing<F>, f: &Poly<F::Elem>) -> Vec<Poly<F::Elem>> {
    let n = match f.degree() {
        None | Some(0) => return vec![],
        Some(1) => return vec![f.clone()],
        Some(n) => n,
    };
    let field = &ring.field;
    let q = field.size().unwrap();
    // Column i holds x^{iQ} mod f; the fixed space of v -> v^Q is ker(M - I).
    let xq = ring.frobenius_mod(&ring.x(), f);
    let mut m = Matrix::zeros(field, n, n);
    let mut cur = ring.one();
    for i in 0..n {
        for j in 0..n {
            let c = cur.coeff(j).cloned().unwrap_or_else(|| field.zero());
            let c = if i == j { field.sub(&c, &field.one()) } else { c };
            m.set(j, i, c);
        }
        cur = ring.mulmod(&cur, &xq, f);
    }
    let basis = kernel(field, &m);
    let r = basis.len();
    let mut factors = vec![f.clone()];
    for v in &basis {
        if factors.len() == r {
            break;
        }
        let vp = ring.from_vec(v.clone());
        if vp.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut next = Vec::new();
        for h in factors {
            if h.degree() == Some(1) {
                next.push(h);
                continue;
            }
            let mut rest = h.clone();
            for k in 0..q {
                let c = field.element_by_index(k);
                let g = ring.gcd(&rest, &ring.sub(&vp, &ring.constant(c)));
                if g.degree().unwrap_or(0) > 0 {
                    rest = ring.div_exact(&rest, &g);
                    next.push(g);
                }
            }
        }
        factors = next;
    }
    factors
}
