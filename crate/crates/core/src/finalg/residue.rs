//! Residue fields `F_q[x]/(g)` for monic irreducible `g`.
//!
//! Elements are stored as polynomials over `F_p` modulo the minimal
//! polynomial `h` of a generator `theta` of the whole field over `F_p`. This
//! gives the single-level power basis required by [`FiniteField`]; the
//! change of basis to `F_q`-coefficients in powers of `x` is kept as a pair
//! of matrices over `F_p`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ff::{Field, FieldOps, FiniteField, Fq};
use crate::linalg::{inverse, mat_vec, Echelon, Matrix};
use crate::polyrat::{is_irreducible, FqPoly, Poly, PolyRing};

#[derive(Debug)]
struct Inner {
    base: Field,
    g: FqPoly,
    prime: PolyRing<Field>,
    h: Poly<Fq>,
    /// Columns: `theta^k` in the flat coordinates `(x^b y^a) -> b * e + a`.
    to_flat: Matrix<Fq>,
    from_flat: Matrix<Fq>,
}

#[derive(Clone, Debug)]
pub struct ResidueField {
    inner: Arc<Inner>,
}

impl PartialEq for ResidueField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || (self.inner.base == other.inner.base && self.inner.g == other.inner.g)
    }
}

impl ResidueField {
    pub fn new(base: &Field, g: &FqPoly) -> Result<Self> {
        let ring = PolyRing::new(base.clone());
        let g = ring.monic(g).1;
        if g.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidInput("residue modulus must have positive degree".into()));
        }
        if !is_irreducible(base, g.coeffs()) {
            return Err(Error::Reducible);
        }
        let d = g.degree().unwrap();
        let e = base.e();
        let big_e = d * e;
        let prime = Field::prime(base.p());
        let flat = |a: &FqPoly| -> Vec<Fq> {
            let mut v = vec![prime.zero(); big_e];
            for (b, c) in a.coeffs().iter().enumerate() {
                for (i, digit) in base.coeffs(*c).into_iter().enumerate() {
                    v[b * e + i] = Fq(digit);
                }
            }
            v
        };
        // Search for a generator theta: first x + lambda, then everything.
        let x = ring.x();
        let q = base.q() as u64;
        let candidates = (0..q)
            .map(|k| ring.add(&x, &ring.constant(base.element_by_index(k))))
            .chain((0..).map_while(|k: u64| {
                let total = q.checked_pow(d as u32)?;
                (k < total).then(|| {
                    let mut r = k;
                    ring.from_vec(
                        (0..d)
                            .map(|_| {
                                let c = base.element_by_index(r % q);
                                r /= q;
                                c
                            })
                            .collect(),
                    )
                })
            }));
        for theta in candidates {
            let mut ech = Echelon::new(prime.clone(), big_e);
            let mut cols = Vec::with_capacity(big_e);
            let mut pw = ring.one();
            let mut ok = true;
            for _ in 0..big_e {
                let v = flat(&pw);
                if !ech.insert(&v) {
                    ok = false;
                    break;
                }
                cols.push(v);
                pw = ring.mulmod(&pw, &theta, &g);
            }
            if !ok {
                continue;
            }
            // theta^E in the power basis gives h.
            let to_flat = Matrix::from_cols(big_e, &cols);
            let from_flat = inverse(&prime, &to_flat).expect("powers are independent");
            let top = mat_vec(&prime, &from_flat, &flat(&pw));
            let mut h: Vec<Fq> = top.iter().map(|c| prime.neg(c)).collect();
            h.push(prime.one());
            let prime_ring = PolyRing::new(prime.clone());
            let h = prime_ring.from_vec(h);
            return Ok(ResidueField { inner: Arc::new(Inner { base: base.clone(), g, prime: prime_ring, h, to_flat, from_flat }) });
        }
        unreachable!("a finite field always has a generator")
    }

    pub fn base(&self) -> &Field {
        &self.inner.base
    }
    pub fn modulus(&self) -> &FqPoly {
        &self.inner.g
    }
    pub fn degree(&self) -> usize {
        self.inner.g.degree().unwrap()
    }

    /// Image of a polynomial over `F_q`.
    pub fn from_poly(&self, a: &FqPoly) -> Poly<Fq> {
        let base = &self.inner.base;
        let ring = PolyRing::new(base.clone());
        let r = ring.rem(a, &self.inner.g);
        let e = base.e();
        let mut v = vec![Fq(0); self.abs_degree()];
        for (b, c) in r.coeffs().iter().enumerate() {
            for (i, digit) in base.coeffs(*c).into_iter().enumerate() {
                v[b * e + i] = Fq(digit);
            }
        }
        let coords = mat_vec(&self.inner.prime.field, &self.inner.from_flat, &v);
        self.inner.prime.from_vec(coords)
    }

    /// Canonical representative of degree below `deg g`.
    pub fn to_poly(&self, a: &Poly<Fq>) -> FqPoly {
        let base = &self.inner.base;
        let e = base.e();
        let mut c = a.coeffs().to_vec();
        c.resize(self.abs_degree(), Fq(0));
        let v = mat_vec(&self.inner.prime.field, &self.inner.to_flat, &c);
        let coeffs = v
            .chunks(e)
            .map(|ch| base.from_coeffs(&ch.iter().map(|x| x.raw()).collect::<Vec<_>>()).unwrap())
            .collect();
        PolyRing::new(base.clone()).from_vec(coeffs)
    }

    pub fn from_base(&self, c: Fq) -> Poly<Fq> {
        self.from_poly(&PolyRing::new(self.inner.base.clone()).constant(c))
    }
}

impl FieldOps for ResidueField {
    type Elem = Poly<Fq>;

    fn zero(&self) -> Poly<Fq> {
        self.inner.prime.zero()
    }
    fn one(&self) -> Poly<Fq> {
        self.inner.prime.one()
    }
    fn add(&self, a: &Poly<Fq>, b: &Poly<Fq>) -> Poly<Fq> {
        self.inner.prime.add(a, b)
    }
    fn sub(&self, a: &Poly<Fq>, b: &Poly<Fq>) -> Poly<Fq> {
        self.inner.prime.sub(a, b)
    }
    fn neg(&self, a: &Poly<Fq>) -> Poly<Fq> {
        self.inner.prime.neg(a)
    }
    fn mul(&self, a: &Poly<Fq>, b: &Poly<Fq>) -> Poly<Fq> {
        self.inner.prime.mulmod(a, b, &self.inner.h)
    }
    fn inv(&self, a: &Poly<Fq>) -> Option<Poly<Fq>> {
        if a.is_zero() {
            return None;
        }
        self.inner.prime.inv_mod(a, &self.inner.h)
    }
    fn is_zero(&self, a: &Poly<Fq>) -> bool {
        a.is_zero()
    }
    fn from_int(&self, k: i64) -> Poly<Fq> {
        self.inner.prime.constant(self.inner.prime.field.from_int(k))
    }
}

impl FiniteField for ResidueField {
    fn characteristic(&self) -> u32 {
        self.inner.base.p()
    }
    fn abs_degree(&self) -> usize {
        self.inner.h.degree().unwrap()
    }
    fn prime_modulus(&self) -> Vec<u32> {
        self.inner.h.coeffs().iter().map(|c| c.raw()).collect()
    }
    fn to_prime_coeffs(&self, a: &Poly<Fq>) -> Vec<u32> {
        let mut c: Vec<u32> = a.coeffs().iter().map(|c| c.raw()).collect();
        c.resize(self.abs_degree(), 0);
        c
    }
    fn from_prime_coeffs(&self, c: &[u32]) -> Poly<Fq> {
        let f = &self.inner.prime.field;
        self.inner.prime.from_vec(c.iter().map(|&v| f.from_int(v as i64)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;

    #[test]
    fn arithmetic_matches_polynomials_mod_g() {
        for (p, e, g) in [(2u32, 1usize, vec![1u32, 1, 1]), (3, 2, vec![0, 1]), (2, 2, vec![2, 1, 1]), (5, 1, vec![2, 0, 1])] {
            let base = make_field(p, e, None).unwrap();
            let ring = PolyRing::new(base.clone());
            let gp = ring.from_vec(g.iter().map(|&c| base.element_by_index(c as u64)).collect());
            if !is_irreducible(&base, gp.coeffs()) {
                continue;
            }
            let rf = ResidueField::new(&base, &gp).unwrap();
            assert_eq!(rf.size(), (base.q() as u64).checked_pow(gp.degree().unwrap() as u32));
            let n = rf.size().unwrap().min(40);
            for i in 0..n {
                let a = rf.element_by_index(i);
                assert_eq!(rf.from_poly(&rf.to_poly(&a)), a);
                for j in 0..n {
                    let b = rf.element_by_index(j);
                    let direct = ring.mulmod(&rf.to_poly(&a), &rf.to_poly(&b), &gp);
                    assert_eq!(rf.to_poly(&rf.mul(&a, &b)), direct);
                }
                if !rf.is_zero(&a) {
                    assert_eq!(rf.mul(&a, &rf.inv(&a).unwrap()), rf.one());
                    assert_eq!(rf.frobenius(&rf.pth_root(&a)), a);
                }
            }
        }
    }

    #[test]
    fn rejects_reducible() {
        let base = make_field(2, 1, None).unwrap();
        let ring = PolyRing::new(base.clone());
        let g = ring.from_vec(vec![Fq(1), Fq(0), Fq(1)]);
        assert_eq!(ResidueField::new(&base, &g).unwrap_err(), Error::Reducible);
    }
}
