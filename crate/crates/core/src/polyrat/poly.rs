use crate::ff::{FieldOps, FiniteField};

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
/// The zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly<E> {
    c: Vec<E>,
}

impl<E> Poly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.c
    }
    pub fn into_coeffs(self) -> Vec<E> {
        self.c
    }
    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    /// Degree with `-1` standing in for the zero polynomial.
    pub fn deg_i64(&self) -> i64 {
        self.c.len() as i64 - 1
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn lc(&self) -> Option<&E> {
        self.c.last()
    }
    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.c.get(i)
    }
}

/// Polynomial arithmetic over a field context.
#[derive(Clone, Debug)]
pub struct PolyRing<F> {
    pub field: F,
}

impl<F: FieldOps> PolyRing<F> {
    pub fn new(field: F) -> Self {
        PolyRing { field }
    }

    pub fn from_vec(&self, mut c: Vec<F::Elem>) -> Poly<F::Elem> {
        while c.last().is_some_and(|x| self.field.is_zero(x)) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero(&self) -> Poly<F::Elem> {
        Poly { c: Vec::new() }
    }
    pub fn one(&self) -> Poly<F::Elem> {
        Poly { c: vec![self.field.one()] }
    }
    pub fn x(&self) -> Poly<F::Elem> {
        self.monomial(self.field.one(), 1)
    }
    pub fn constant(&self, a: F::Elem) -> Poly<F::Elem> {
        self.from_vec(vec![a])
    }
    pub fn monomial(&self, a: F::Elem, k: usize) -> Poly<F::Elem> {
        if self.field.is_zero(&a) {
            return self.zero();
        }
        let mut c = vec![self.field.zero(); k + 1];
        c[k] = a;
        Poly { c }
    }

    pub fn is_one(&self, a: &Poly<F::Elem>) -> bool {
        a.c.len() == 1 && self.field.is_one(&a.c[0])
    }

    pub fn add(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let (long, short) = if a.c.len() >= b.c.len() { (a, b) } else { (b, a) };
        let mut c = long.c.clone();
        for (x, y) in c.iter_mut().zip(&short.c) {
            *x = self.field.add(x, y);
        }
        self.from_vec(c)
    }

    pub fn sub(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let n = a.c.len().max(b.c.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.field.sub(a.c.get(i).unwrap_or(&z), b.c.get(i).unwrap_or(&z)))
            .collect();
        self.from_vec(c)
    }

    pub fn neg(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly { c: a.c.iter().map(|x| self.field.neg(x)).collect() }
    }

    pub fn mul(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut c = vec![self.field.zero(); a.c.len() + b.c.len() - 1];
        for (i, x) in a.c.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                let t = self.field.mul(x, y);
                c[i + j] = self.field.add(&c[i + j], &t);
            }
        }
        self.from_vec(c)
    }

    pub fn scale(&self, a: &Poly<F::Elem>, s: &F::Elem) -> Poly<F::Elem> {
        if self.field.is_zero(s) {
            return self.zero();
        }
        Poly { c: a.c.iter().map(|x| self.field.mul(x, s)).collect() }
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, a: &Poly<F::Elem>, k: usize) -> Poly<F::Elem> {
        if a.is_zero() {
            return self.zero();
        }
        let mut c = vec![self.field.zero(); k];
        c.extend(a.c.iter().cloned());
        Poly { c }
    }

    pub fn divrem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> (Poly<F::Elem>, Poly<F::Elem>) {
        let db = b.degree().expect("division by the zero polynomial");
        if a.c.len() < b.c.len() {
            return (self.zero(), a.clone());
        }
        let inv_lc = self.field.inv(b.lc().unwrap()).unwrap();
        let mut r = a.c.clone();
        let mut q = vec![self.field.zero(); a.c.len() - db];
        for k in (db..r.len()).rev() {
            let c = self.field.mul(&r[k], &inv_lc);
            if self.field.is_zero(&c) {
                continue;
            }
            for (i, bc) in b.c.iter().enumerate() {
                let t = self.field.mul(&c, bc);
                r[k - db + i] = self.field.sub(&r[k - db + i], &t);
            }
            q[k - db] = c;
        }
        r.truncate(db);
        (self.from_vec(q), self.from_vec(r))
    }

    pub fn rem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.divrem(a, b).1
    }

    /// Exact quotient; panics in debug builds if the division leaves a remainder.
    pub fn div_exact(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        if self.is_one(b) {
            return a.clone();
        }
        let (q, r) = self.divrem(a, b);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, b: &Poly<F::Elem>, a: &Poly<F::Elem>) -> bool {
        self.rem(a, b).is_zero()
    }

    /// Returns `(lc, a / lc)`; the zero polynomial maps to `(0, 0)`.
    pub fn monic(&self, a: &Poly<F::Elem>) -> (F::Elem, Poly<F::Elem>) {
        match a.lc() {
            None => (self.field.zero(), self.zero()),
            Some(lc) if self.field.is_one(lc) => (lc.clone(), a.clone()),
            Some(lc) => {
                let inv = self.field.inv(lc).unwrap();
                (lc.clone(), self.scale(a, &inv))
            }
        }
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        while !r1.is_zero() {
            if r1.degree() == Some(0) {
                return self.one();
            }
            let r = self.rem(&r0, &r1);
            r0 = r1;
            r1 = r;
        }
        self.monic(&r0).1
    }

    /// `(g, s, t)` with `g = s a + t b` monic.
    pub fn xgcd(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        match r0.lc().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = self.field.inv(&lc).unwrap();
                (self.scale(&r0, &inv), self.scale(&s0, &inv), self.scale(&t0, &inv))
            }
        }
    }

    pub fn lcm(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let g = self.gcd(a, b);
        self.monic(&self.mul(&self.div_exact(a, &g), b)).1
    }

    /// Inverse of `a` modulo `m`, if it exists.
    pub fn inv_mod(&self, a: &Poly<F::Elem>, m: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let (g, s, _) = self.xgcd(&self.rem(a, m), m);
        self.is_one(&g).then(|| self.rem(&s, m))
    }

    pub fn derivative(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        let c = a
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, x)| self.field.mul(x, &self.field.from_int(i as i64)))
            .collect();
        self.from_vec(c)
    }

    pub fn eval(&self, a: &Poly<F::Elem>, x: &F::Elem) -> F::Elem {
        a.c.iter().rev().fold(self.field.zero(), |acc, c| self.field.add(&self.field.mul(&acc, x), c))
    }

    pub fn mulmod(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.rem(&self.mul(a, b), m)
    }

    pub fn pow_mod(&self, a: &Poly<F::Elem>, mut exp: u64, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut base = self.rem(a, m);
        let mut acc = self.rem(&self.one(), m);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mulmod(&acc, &base, m);
            }
            base = self.mulmod(&base, &base, m);
            exp >>= 1;
        }
        acc
    }

    pub fn pow(&self, a: &Poly<F::Elem>, mut exp: u64) -> Poly<F::Elem> {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

impl<F: FiniteField> PolyRing<F> {
    /// `a^Q mod m` where `Q` is the field size, computed as `E` successive
    /// `p`-th powers.
    pub fn frobenius_mod(&self, a: &Poly<F::Elem>, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        let p = self.field.characteristic() as u64;
        let mut r = self.rem(a, m);
        for _ in 0..self.field.abs_degree() {
            r = self.pow_mod(&r, p, m);
        }
        r
    }

    /// The polynomial `b` with `b^p = a`, if `a` is a `p`-th power.
    pub fn pth_root(&self, a: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let p = self.field.characteristic() as usize;
        let mut out = Vec::with_capacity(a.c.len() / p + 1);
        for (i, c) in a.c.iter().enumerate() {
            if i % p == 0 {
                out.push(self.field.pth_root(c));
            } else if !self.field.is_zero(c) {
                return None;
            }
        }
        Some(self.from_vec(out))
    }

    /// Sort key giving a deterministic total order on polynomials.
    pub fn sort_key(&self, a: &Poly<F::Elem>) -> (usize, Vec<Vec<u32>>) {
        (a.c.len(), a.c.iter().rev().map(|c| self.field.to_prime_coeffs(c)).collect())
    }
}
