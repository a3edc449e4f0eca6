use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::ff::{Field, FieldOps, FiniteField, Fq};

use super::poly::{Poly, PolyRing};

pub type FqPoly = Poly<Fq>;

/// Degree valuation `|f/g| = deg f - deg g`, with `NegInf` for zero.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Val {
    NegInf,
    Fin(i64),
}

impl Val {
    pub fn finite(self) -> Option<i64> {
        match self {
            Val::NegInf => None,
            Val::Fin(v) => Some(v),
        }
    }

    pub fn unwrap(self) -> i64 {
        self.finite().expect("valuation of zero")
    }
}

impl std::ops::Add for Val {
    type Output = Val;
    fn add(self, rhs: Val) -> Val {
        match (self, rhs) {
            (Val::Fin(a), Val::Fin(b)) => Val::Fin(a + b),
            _ => Val::NegInf,
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::NegInf => write!(f, "-inf"),
            Val::Fin(v) => write!(f, "{v}"),
        }
    }
}

/// Element of `F_q(x)` in canonical form: monic denominator coprime to the
/// numerator. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: FqPoly,
    den: FqPoly,
}

impl RatFunc {
    pub fn num(&self) -> &FqPoly {
        &self.num
    }
    pub fn den(&self) -> &FqPoly {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_polynomial(&self) -> bool {
        self.den.coeffs().len() == 1
    }
    pub fn valuation(&self) -> Val {
        if self.num.is_zero() {
            Val::NegInf
        } else {
            Val::Fin(self.num.deg_i64() - self.den.deg_i64())
        }
    }
    /// `max(deg num, deg den)`.
    pub fn height(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }
}

/// `F_q(x)` as a [`FieldOps`] context.
#[derive(Clone, Debug)]
pub struct RatField {
    ring: PolyRing<Field>,
}

impl RatField {
    pub fn new(field: Field) -> Self {
        RatField { ring: PolyRing::new(field) }
    }
    pub fn field(&self) -> &Field {
        &self.ring.field
    }
    pub fn ring(&self) -> &PolyRing<Field> {
        &self.ring
    }

    /// Canonical form of `num / den`.
    pub fn frac(&self, num: FqPoly, den: FqPoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(self.canon(num, den))
    }

    fn canon(&self, num: FqPoly, den: FqPoly) -> RatFunc {
        let r = &self.ring;
        if num.is_zero() {
            return RatFunc { num, den: r.one() };
        }
        let g = r.gcd(&num, &den);
        let (num, den) = if r.is_one(&g) { (num, den) } else { (r.div_exact(&num, &g), r.div_exact(&den, &g)) };
        let (lc, den) = r.monic(&den);
        let num = if self.field().is_one(&lc) { num } else { r.scale(&num, &self.field().inv(&lc).unwrap()) };
        RatFunc { num, den }
    }

    pub fn from_poly(&self, p: FqPoly) -> RatFunc {
        RatFunc { num: p, den: self.ring.one() }
    }
    pub fn constant(&self, c: Fq) -> RatFunc {
        self.from_poly(self.ring.constant(c))
    }
    pub fn x(&self) -> RatFunc {
        self.from_poly(self.ring.x())
    }
    /// `x^k` for any integer `k`.
    pub fn x_pow(&self, k: i64) -> RatFunc {
        let one = self.field().one();
        if k >= 0 {
            self.from_poly(self.ring.monomial(one, k as usize))
        } else {
            RatFunc { num: self.ring.one(), den: self.ring.monomial(one, (-k) as usize) }
        }
    }

    pub fn valuation(&self, r: &RatFunc) -> Val {
        r.valuation()
    }

    /// Membership in `R = { r : |r| <= 0 }`.
    pub fn is_in_r(&self, r: &RatFunc) -> bool {
        r.valuation() <= Val::Fin(0)
    }

    /// Rewrites `r` in the variable `y = 1/x`.
    pub fn flip_variable(&self, r: &RatFunc) -> RatFunc {
        if r.is_zero() {
            return r.clone();
        }
        let d = r.height();
        let rev = |p: &FqPoly| -> FqPoly {
            let mut c = p.coeffs().to_vec();
            c.resize(d + 1, self.field().zero());
            c.reverse();
            self.ring.from_vec(c)
        };
        self.canon(rev(&r.num), rev(&r.den))
    }

    /// The `p^r`-th root taken coefficientwise, if `a` is a `p^r`-th power.
    pub fn pth_power_root(&self, a: &RatFunc, r: u32) -> Option<RatFunc> {
        let (mut num, mut den) = (a.num.clone(), a.den.clone());
        for _ in 0..r {
            num = self.ring.pth_root(&num)?;
            den = self.ring.pth_root(&den)?;
        }
        Some(self.canon(num, den))
    }

    pub fn scale_poly(&self, a: &RatFunc, p: &FqPoly) -> RatFunc {
        self.mul(a, &self.from_poly(p.clone()))
    }

    /// Compares by valuation.
    pub fn cmp_val(&self, a: &RatFunc, b: &RatFunc) -> Ordering {
        a.valuation().cmp(&b.valuation())
    }

    /// Field element as an integer over `F_p`, else as a polynomial in the
    /// generator `t`.
    pub fn format_elem(&self, c: &Fq) -> String {
        let coeffs = self.field().to_prime_coeffs(c);
        if coeffs.len() == 1 {
            return coeffs[0].to_string();
        }
        let terms = format_terms(&coeffs.iter().map(|&d| (d != 0).then(|| d.to_string())).collect::<Vec<_>>(), "t");
        if terms.contains(" + ") {
            format!("({terms})")
        } else {
            terms
        }
    }

    /// Polynomial in `var`, highest degree first.
    pub fn format_poly(&self, p: &FqPoly, var: &str) -> String {
        let terms: Vec<Option<String>> =
            p.coeffs().iter().map(|c| (!self.field().is_zero(c)).then(|| self.format_elem(c))).collect();
        format_terms(&terms, var)
    }

    pub fn format(&self, r: &RatFunc) -> String {
        let num = self.format_poly(&r.num, "x");
        if self.ring.is_one(&r.den) {
            return num;
        }
        let wrap = |s: String| if s.contains(' ') { format!("({s})") } else { s };
        format!("{}/{}", wrap(num), wrap(self.format_poly(&r.den, "x")))
    }
}

/// `c_k var^k + ... + c_0` from optional coefficient strings, ascending.
fn format_terms(coeffs: &[Option<String>], var: &str) -> String {
    let mut out: Vec<String> = Vec::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        let Some(c) = c else { continue };
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        out.push(match (c.as_str(), k) {
            (_, 0) => c.clone(),
            ("1", _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    if out.is_empty() {
        "0".into()
    } else {
        out.join(" + ")
    }
}

impl FieldOps for RatField {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc { num: self.ring.zero(), den: self.ring.one() }
    }
    fn one(&self) -> RatFunc {
        RatFunc { num: self.ring.one(), den: self.ring.one() }
    }

    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let r = &self.ring;
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        if a.den == b.den {
            let num = r.add(&a.num, &b.num);
            if a.is_polynomial() {
                return RatFunc { num, den: a.den.clone() };
            }
            return self.canon(num, a.den.clone());
        }
        let g = r.gcd(&a.den, &b.den);
        if r.is_one(&g) {
            let num = r.add(&r.mul(&a.num, &b.den), &r.mul(&b.num, &a.den));
            // Coprime monic denominators: the sum is already reduced.
            return RatFunc { num, den: r.mul(&a.den, &b.den) };
        }
        let ad = r.div_exact(&a.den, &g);
        let bd = r.div_exact(&b.den, &g);
        let num = r.add(&r.mul(&a.num, &bd), &r.mul(&b.num, &ad));
        let den = r.mul(&ad, &b.den);
        if num.is_zero() {
            return self.zero();
        }
        let g2 = r.gcd(&num, &g);
        if r.is_one(&g2) {
            RatFunc { num, den }
        } else {
            RatFunc { num: r.div_exact(&num, &g2), den: r.div_exact(&den, &g2) }
        }
    }

    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc { num: self.ring.neg(&a.num), den: a.den.clone() }
    }

    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let r = &self.ring;
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        if a.is_polynomial() && b.is_polynomial() {
            return RatFunc { num: r.mul(&a.num, &b.num), den: r.one() };
        }
        let g1 = r.gcd(&a.num, &b.den);
        let g2 = r.gcd(&b.num, &a.den);
        let an = r.div_exact(&a.num, &g1);
        let bd = r.div_exact(&b.den, &g1);
        let bn = r.div_exact(&b.num, &g2);
        let ad = r.div_exact(&a.den, &g2);
        let num = r.mul(&an, &bn);
        let den = r.mul(&ad, &bd);
        let (lc, den) = r.monic(&den);
        let num = if self.field().is_one(&lc) { num } else { r.scale(&num, &self.field().inv(&lc).unwrap()) };
        RatFunc { num, den }
    }

    fn inv(&self, a: &RatFunc) -> Option<RatFunc> {
        if a.is_zero() {
            return None;
        }
        let r = &self.ring;
        let (lc, num) = r.monic(&a.num);
        let inv_lc = self.field().inv(&lc).unwrap();
        Some(RatFunc { num: r.scale(&a.den, &inv_lc), den: num })
    }

    fn is_zero(&self, a: &RatFunc) -> bool {
        a.is_zero()
    }

    fn from_int(&self, k: i64) -> RatFunc {
        self.constant(self.field().from_int(k))
    }

    fn pivot_weight(&self, a: &RatFunc) -> usize {
        a.num.degree().unwrap_or(0) + a.den.degree().unwrap_or(0)
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(rf: &RatField, xs: impl IntoIterator<Item = &'a RatFunc>) -> FqPoly {
    let r = rf.ring();
    xs.into_iter().fold(r.one(), |acc, x| if x.is_polynomial() { acc } else { r.lcm(&acc, x.den()) })
}
