//! Finite fields `F_{p^e}` and the scalar traits shared by every other module.
//!
//! Two traits carry the arithmetic: [`FieldOps`] is the context object for an
//! arbitrary field (used by the generic linear algebra), and [`FiniteField`]
//! adds what the finite-field algorithms need: the characteristic, the
//! coordinates over the prime field and Frobenius.
//!
//! [`Field`] is the base field `F_q` of the whole library. Its elements are
//! packed into a [`Fq`] (the base-`p` digits of the residue polynomial) and
//! multiplied through log/antilog tables, so `q` is limited to desk scale.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};

/// Arithmetic context of a field. Elements are plain values; all operations
/// go through the context so that runtime-defined fields work.
pub trait FieldOps: Clone {
    type Elem: Clone + PartialEq + Eq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` exactly for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Image of an integer under the canonical map `Z -> F`.
    fn from_int(&self, k: i64) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b).expect("division by zero"))
    }

    /// Cost estimate used for pivot selection during elimination; smaller is
    /// preferred. Exact fields with constant-size elements return 0.
    fn pivot_weight(&self, _a: &Self::Elem) -> usize {
        0
    }
}

/// A finite field presented as `F_p[t]/(h)` for some monic irreducible `h`
/// (for prime fields `h = t`).
pub trait FiniteField: FieldOps {
    fn characteristic(&self) -> u32;
    /// Degree over the prime field.
    fn abs_degree(&self) -> usize;
    /// Monic defining polynomial over `F_p`, ascending, of degree
    /// [`abs_degree`](Self::abs_degree).
    fn prime_modulus(&self) -> Vec<u32>;
    /// Coordinates in the power basis `1, t, ..., t^{E-1}` over `F_p`.
    fn to_prime_coeffs(&self, a: &Self::Elem) -> Vec<u32>;
    fn from_prime_coeffs(&self, c: &[u32]) -> Self::Elem;

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        let p = self.characteristic();
        let c: Vec<u32> = (0..self.abs_degree()).map(|_| rng.gen_range(0..p)).collect();
        self.from_prime_coeffs(&c)
    }

    /// Field size, when it fits in a `u64`.
    fn size(&self) -> Option<u64> {
        (self.characteristic() as u64).checked_pow(self.abs_degree() as u32)
    }

    /// Enumerates the field (index order of the prime coordinates). Intended
    /// for brute-force checks on tiny fields only.
    fn element_by_index(&self, mut k: u64) -> Self::Elem {
        let p = self.characteristic() as u64;
        let c: Vec<u32> = (0..self.abs_degree())
            .map(|_| {
                let d = (k % p) as u32;
                k /= p;
                d
            })
            .collect();
        self.from_prime_coeffs(&c)
    }

    fn pow(&self, a: &Self::Elem, mut exp: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, self.characteristic() as u64)
    }

    /// The unique `b` with `b^p = a`, i.e. `a^{p^{E-1}}`.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        let mut b = a.clone();
        for _ in 1..self.abs_degree() {
            b = self.frobenius(&b);
        }
        b
    }
}

/// Packed element of a [`Field`]: the residue polynomial's coefficients read
/// as base-`p` digits (constant term least significant).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fq(pub(crate) u32);

impl Fq {
    pub fn raw(self) -> u32 {
        self.0
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

const MAX_TABLE_Q: u64 = 1 << 20;
const MAX_ADD_TABLE_Q: u32 = 1 << 10;

struct FieldInner {
    p: u32,
    e: usize,
    q: u32,
    modulus: Vec<u32>,
    // Only populated when e > 1.
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Vec<u32>,
    neg: Vec<u32>,
}

/// The base field `F_q`, `q = p^e`.
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.inner.p, self.inner.e)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }
}
impl Eq for Field {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if (n as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds `F_{p^e}`. Without an explicit modulus the first irreducible monic
/// polynomial of degree `e` is taken, enumerating the lower coefficients as
/// base-`p` numbers `0, 1, 2, ...` (constant term least significant).
pub fn make_field(p: u32, e: usize, modulus: Option<&[u32]>) -> Result<Field> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 {
        return Err(Error::InvalidInput("extension degree must be at least 1".into()));
    }
    if p >= 1 << 31 {
        return Err(Error::InvalidInput("characteristic must be below 2^31".into()));
    }
    let prime = Field::prime(p);
    if e == 1 {
        if let Some(m) = modulus {
            // A degree-1 modulus is allowed but carries no information.
            if m.len() != 2 || m[1] % p == 0 {
                return Err(Error::InvalidInput("modulus must have degree e".into()));
            }
        }
        return Ok(prime);
    }
    let q = (p as u64).checked_pow(e as u32).filter(|&q| q <= MAX_TABLE_Q).ok_or_else(|| {
        Error::InvalidInput(format!("field size {p}^{e} exceeds the supported range"))
    })?;
    let modulus: Vec<u32> = match modulus {
        Some(m) => {
            if m.len() != e + 1 || m.iter().any(|&c| c >= p) || m[e] == 0 {
                return Err(Error::InvalidInput("modulus must have degree e with residues in [0, p)".into()));
            }
            let inv = prime.inv(&Fq(m[e])).unwrap();
            let mono: Vec<u32> = m.iter().map(|&c| prime.mul(&Fq(c), &inv).0).collect();
            if !crate::polyrat::is_irreducible(&prime, &mono.iter().map(|&c| Fq(c)).collect::<Vec<_>>()) {
                return Err(Error::Reducible);
            }
            mono
        }
        None => {
            let mut found = None;
            for k in 0..(q as u32) {
                let mut c = Vec::with_capacity(e + 1);
                let mut r = k;
                for _ in 0..e {
                    c.push(r % p);
                    r /= p;
                }
                c.push(1);
                let f: Vec<Fq> = c.iter().map(|&v| Fq(v)).collect();
                if crate::polyrat::is_irreducible(&prime, &f) {
                    found = Some(c);
                    break;
                }
            }
            found.expect("an irreducible polynomial of every degree exists")
        }
    };
    Ok(Field::extension(p, e, q as u32, modulus))
}

impl Field {
    /// The prime field `F_p`; `p` must be prime.
    pub fn prime(p: u32) -> Field {
        assert!(is_prime(p), "{p} is not prime");
        Field {
            inner: Arc::new(FieldInner {
                p,
                e: 1,
                q: p,
                modulus: vec![0, 1],
                exp: vec![],
                log: vec![],
                add: vec![],
                neg: vec![],
            }),
        }
    }

    fn extension(p: u32, e: usize, q: u32, modulus: Vec<u32>) -> Field {
        let digits = |mut k: u32| -> Vec<u32> {
            (0..e)
                .map(|_| {
                    let d = k % p;
                    k /= p;
                    d
                })
                .collect()
        };
        let pack = |c: &[u32]| -> u32 { c.iter().rev().fold(0u32, |acc, &d| acc * p + d) };
        let mulmod = |a: &[u32], b: &[u32]| -> Vec<u32> {
            let mut prod = vec![0u64; 2 * e - 1];
            for (i, &x) in a.iter().enumerate() {
                for (j, &y) in b.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
                }
            }
            for k in (e..prod.len()).rev() {
                let c = prod[k];
                if c != 0 {
                    for (i, &mc) in modulus.iter().enumerate().take(e) {
                        let idx = k - e + i;
                        prod[idx] = (prod[idx] + (p as u64 - c) * mc as u64) % p as u64;
                    }
                    prod[k] = 0;
                }
            }
            prod.truncate(e);
            prod.into_iter().map(|v| v as u32).collect()
        };
        // Find a generator of the multiplicative group.
        let mut exp = Vec::new();
        for g in 2..q {
            let gd = digits(g);
            let mut cur = digits(1);
            let mut table = Vec::with_capacity(q as usize - 1);
            let mut ok = true;
            for k in 0..(q - 1) {
                let packed = pack(&cur);
                if k > 0 && packed == 1 {
                    ok = false;
                    break;
                }
                table.push(packed);
                cur = mulmod(&cur, &gd);
            }
            if ok {
                exp = table;
                break;
            }
        }
        assert_eq!(exp.len(), q as usize - 1, "no primitive element found");
        let mut log = vec![0u32; q as usize];
        for (k, &v) in exp.iter().enumerate() {
            log[v as usize] = k as u32;
        }
        let digit_add = |a: u32, b: u32| -> u32 {
            let (da, db) = (digits(a), digits(b));
            let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            pack(&s)
        };
        let add = if q <= MAX_ADD_TABLE_Q {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = digit_add(a, b);
                }
            }
            t
        } else {
            vec![]
        };
        let neg = (0..q)
            .map(|a| pack(&digits(a).iter().map(|&d| (p - d) % p).collect::<Vec<_>>()))
            .collect();
        Field {
            inner: Arc::new(FieldInner { p, e, q, modulus, exp, log, add, neg }),
        }
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }
    pub fn e(&self) -> usize {
        self.inner.e
    }
    pub fn q(&self) -> u32 {
        self.inner.q
    }
    /// Monic modulus over `F_p`, ascending; `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u32]> {
        (self.inner.e > 1).then_some(&self.inner.modulus[..])
    }

    /// Coefficients of the residue polynomial, ascending, each in `[0, p)`.
    pub fn coeffs(&self, a: Fq) -> Vec<u32> {
        let p = self.inner.p;
        let mut k = a.0;
        (0..self.inner.e)
            .map(|_| {
                let d = k % p;
                k /= p;
                d
            })
            .collect()
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<Fq> {
        let p = self.inner.p;
        if c.len() != self.inner.e || c.iter().any(|&d| d >= p) {
            return Err(Error::InvalidInput(format!(
                "field element must be {} residues in [0, {p})",
                self.inner.e
            )));
        }
        Ok(Fq(c.iter().rev().fold(0u32, |acc, &d| acc * p + d)))
    }

    /// All `q` elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.inner.q).map(Fq)
    }

    /// Generator of `F_q` over `F_p` (the class of `t`).
    pub fn gen(&self) -> Fq {
        if self.inner.e == 1 {
            Fq(0)
        } else {
            Fq(self.inner.p)
        }
    }

    #[inline]
    fn add_raw(&self, a: u32, b: u32) -> u32 {
        let inner = &*self.inner;
        if inner.e == 1 {
            let s = a + b;
            if s >= inner.p {
                s - inner.p
            } else {
                s
            }
        } else if !inner.add.is_empty() {
            inner.add[(a * inner.q + b) as usize]
        } else {
            let p = inner.p;
            let (mut x, mut y, mut out, mut place) = (a, b, 0u32, 1u32);
            for _ in 0..inner.e {
                out += ((x % p + y % p) % p) * place;
                x /= p;
                y /= p;
                place *= p;
            }
            out
        }
    }

    #[inline]
    fn neg_raw(&self, a: u32) -> u32 {
        let inner = &*self.inner;
        if inner.e == 1 {
            if a == 0 {
                0
            } else {
                inner.p - a
            }
        } else {
            inner.neg[a as usize]
        }
    }

    #[inline]
    fn mul_raw(&self, a: u32, b: u32) -> u32 {
        let inner = &*self.inner;
        if inner.e == 1 {
            ((a as u64 * b as u64) % inner.p as u64) as u32
        } else if a == 0 || b == 0 {
            0
        } else {
            let s = inner.log[a as usize] as u64 + inner.log[b as usize] as u64;
            inner.exp[(s % (inner.q as u64 - 1)) as usize]
        }
    }

    fn inv_raw(&self, a: u32) -> Option<u32> {
        let inner = &*self.inner;
        if a == 0 {
            return None;
        }
        if inner.e == 1 {
            // Extended Euclid on machine integers.
            let (mut r0, mut r1) = (inner.p as i64, a as i64);
            let (mut t0, mut t1) = (0i64, 1i64);
            while r1 != 0 {
                let qq = r0 / r1;
                (r0, r1) = (r1, r0 - qq * r1);
                (t0, t1) = (t1, t0 - qq * t1);
            }
            Some(t0.rem_euclid(inner.p as i64) as u32)
        } else {
            let l = inner.log[a as usize];
            let n = inner.q - 1;
            Some(inner.exp[((n - l) % n) as usize])
        }
    }
}

impl FieldOps for Field {
    type Elem = Fq;

    #[inline]
    fn zero(&self) -> Fq {
        Fq(0)
    }
    #[inline]
    fn one(&self) -> Fq {
        Fq(1)
    }
    #[inline]
    fn add(&self, a: &Fq, b: &Fq) -> Fq {
        Fq(self.add_raw(a.0, b.0))
    }
    #[inline]
    fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        Fq(self.add_raw(a.0, self.neg_raw(b.0)))
    }
    #[inline]
    fn neg(&self, a: &Fq) -> Fq {
        Fq(self.neg_raw(a.0))
    }
    #[inline]
    fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        Fq(self.mul_raw(a.0, b.0))
    }
    fn inv(&self, a: &Fq) -> Option<Fq> {
        self.inv_raw(a.0).map(Fq)
    }
    #[inline]
    fn is_zero(&self, a: &Fq) -> bool {
        a.0 == 0
    }
    fn from_int(&self, k: i64) -> Fq {
        Fq(k.rem_euclid(self.inner.p as i64) as u32)
    }
}

impl FiniteField for Field {
    fn characteristic(&self) -> u32 {
        self.inner.p
    }
    fn abs_degree(&self) -> usize {
        self.inner.e
    }
    fn prime_modulus(&self) -> Vec<u32> {
        self.inner.modulus.clone()
    }
    fn to_prime_coeffs(&self, a: &Fq) -> Vec<u32> {
        self.coeffs(*a)
    }
    fn from_prime_coeffs(&self, c: &[u32]) -> Fq {
        self.from_coeffs(c).expect("prime coordinates out of range")
    }
    fn size(&self) -> Option<u64> {
        Some(self.inner.q as u64)
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fq {
        Fq(rng.gen_range(0..self.inner.q))
    }
    fn element_by_index(&self, k: u64) -> Fq {
        Fq(k as u32)
    }
}

/// `b` with `b^p = a`.
pub fn pth_root(field: &Field, a: Fq) -> Fq {
    field.pth_root(&a)
}
