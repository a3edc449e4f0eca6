//! Maximal orders of a split algebra over `F_q[x]` and at the prime `1/x`.
//!
//! All orders are carried in coordinates of the almost order
//! `Lambda_0 = span{delta a_i}`: a basis is a common denominator `den`
//! together with polynomial numerator vectors `w_j`, so that
//! `omega_j = (w_j / den) . (delta a)`. Every order containing `Lambda_0`
//! lies in `(1 / D_0) Lambda_0`, which bounds `den`.
//!
//! Local tests at a prime `g` work in `Lambda / g Lambda`, an algebra over the
//! residue field `F_q[x]/(g)`. For a two-sided ideal `g Lambda <= I <= Lambda`
//! the left order satisfies `Lambda <= O_l(I) <= (1/g) Lambda`, so it is
//! determined by the kernel of `a -> (a eta_j mod g I)_j` on `Lambda / g Lambda`,
//! a linear map over the residue field.

use crate::algebra::{monic_normal, poly_mat_vec, AlgElem, IntegralStructure, StructureAlgebra};
use crate::error::{Error, Result};
use crate::ff::{Field, FieldOps};
use crate::finalg::{radical, simple_components, FElem, FiniteAlgebra, ResidueField};
use crate::lattice::{reduce_poly_generators, ClearedMatrix};
use crate::linalg::{determinant, inverse, kernel, Matrix};
use crate::polyrat::{common_denominator, factor_poly, FqPoly, PolyRing, RatField, RatFunc};

/// Which ring the order is over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    /// `F_q[x]`.
    Fx,
    /// Localization at the prime `1/x`; data is reported in `y = 1/x`.
    Infinity,
}

/// An order, with its basis in the coordinates of the input algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderRep {
    pub ring: Ring,
    /// Basis elements in the ambient basis (always in the variable `x`).
    pub basis: Vec<AlgElem>,
    /// Monic discriminant. For [`Ring::Infinity`] only its `y`-part
    /// `y^v`, `y = 1/x`, since other primes are units in `R`.
    pub disc: FqPoly,
    /// Discriminant of the almost order the run started from.
    pub d0: FqPoly,
    pub enlargements: usize,
    /// Discriminant after unital closure and after each enlargement.
    pub disc_chain: Vec<FqPoly>,
}

/// Order inside `(1/den) Lambda_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Order {
    pub den: FqPoly,
    pub w: Vec<Vec<FqPoly>>,
}

/// Result of the local maximality tests at one prime.
#[derive(Clone, Debug)]
pub enum Enlarge {
    Unchanged,
    Enlarged(Order),
}

/// Shared data of a maximal-order computation for one algebra.
pub struct OrderContext<'a> {
    alg: &'a StructureAlgebra,
    rf: RatField,
    ring: PolyRing<Field>,
    m: usize,
    integral: IntegralStructure,
    d0: FqPoly,
}

impl<'a> OrderContext<'a> {
    pub fn new(alg: &'a StructureAlgebra) -> Result<Self> {
        let rf = alg.rf().clone();
        let ring = rf.ring().clone();
        let m = alg.dim();
        let integral = IntegralStructure::new(alg);
        let delta = integral.delta.clone();
        let basis: Vec<AlgElem> = (0..m).map(|i| alg.scale(&rf.from_poly(delta.clone()), &alg.basis_elem(i))).collect();
        let d = alg.discriminant(&basis)?;
        if !d.is_polynomial() {
            return Err(Error::PromiseViolation("almost order has a non-integral discriminant".into()));
        }
        Ok(OrderContext { alg, rf, ring, m, integral, d0: d.num().clone() })
    }

    pub fn delta(&self) -> &FqPoly {
        &self.integral.delta
    }
    pub fn d0(&self) -> &FqPoly {
        &self.d0
    }

    pub fn almost_order(&self) -> Order {
        let r = &self.ring;
        let w = (0..self.m).map(|i| (0..self.m).map(|j| if i == j { r.one() } else { r.zero() }).collect()).collect();
        Order { den: r.one(), w }
    }

    /// Reduced basis of the module spanned by `gens / den`.
    pub fn from_generators(&self, den: FqPoly, gens: Vec<Vec<FqPoly>>) -> Result<Order> {
        let r = &self.ring;
        let w = reduce_poly_generators(r, self.m, gens)?;
        let g = w.iter().flatten().fold(den.clone(), |acc, p| if p.is_zero() { acc } else { r.gcd(&acc, p) });
        if r.is_one(&g) {
            return Ok(Order { den, w });
        }
        let w = w.into_iter().map(|v| v.iter().map(|p| r.div_exact(p, &g)).collect()).collect();
        Ok(Order { den: r.div_exact(&den, &g), w })
    }

    pub fn unital_closure(&self, o: &Order) -> Result<Order> {
        let r = &self.ring;
        let rf = &self.rf;
        let one = self.alg.find_identity()?;
        let inv_delta = rf.inv(&rf.from_poly(self.integral.delta.clone())).unwrap();
        let one0: Vec<RatFunc> = one.iter().map(|c| rf.mul(c, &inv_delta)).collect();
        let den = r.lcm(&o.den, &common_denominator(rf, &one0));
        let mut gens: Vec<Vec<FqPoly>> =
            o.w.iter().map(|v| v.iter().map(|p| r.mul(p, &r.div_exact(&den, &o.den))).collect()).collect();
        gens.push(one0.iter().map(|c| r.mul(c.num(), &r.div_exact(&den, c.den()))).collect());
        self.from_generators(den, gens)
    }

    fn w_matrix(&self, o: &Order) -> Matrix<RatFunc> {
        let cols: Vec<Vec<RatFunc>> = o.w.iter().map(|v| v.iter().map(|p| self.rf.from_poly(p.clone())).collect()).collect();
        Matrix::from_cols(self.m, &cols)
    }

    pub fn disc(&self, o: &Order) -> Result<FqPoly> {
        let rf = &self.rf;
        let det = determinant(rf, &self.w_matrix(o))?;
        let scale = rf.frac(det.num().clone(), self.ring.mul(det.den(), &self.ring.pow(&o.den, self.m as u64)))?;
        let d = rf.mul(&rf.from_poly(self.d0.clone()), &rf.mul(&scale, &scale));
        if !d.is_polynomial() {
            return Err(Error::PromiseViolation("module is not an order (non-integral discriminant)".into()));
        }
        Ok(monic_normal(rf, &d).num().clone())
    }

    /// Structure constants of the order in its own basis (flat, polynomial).
    pub fn structure(&self, o: &Order) -> Result<Vec<FqPoly>> {
        let r = &self.ring;
        let inv = poly_inverse(&self.rf, &o.w, &o.den)?;
        let mut out = Vec::with_capacity(self.m.pow(3));
        for wi in &o.w {
            let left = self.integral.left_mul(wi);
            for wj in &o.w {
                let prod = poly_mat_vec(r, &left, wj);
                let c = inv
                    .apply(r, &prod)
                    .ok_or_else(|| Error::PromiseViolation("basis is not closed under multiplication".into()))?;
                out.extend(c);
            }
        }
        Ok(out)
    }

    /// Basis in the coordinates of the input algebra.
    pub fn ambient_basis(&self, o: &Order) -> Vec<AlgElem> {
        let rf = &self.rf;
        o.w.iter()
            .map(|v| v.iter().map(|p| rf.frac(self.ring.mul(p, &self.integral.delta), o.den.clone()).unwrap()).collect())
            .collect()
    }

    /// Left order of the two-sided ideal with basis `ideal` (columns in
    /// order coordinates), where `g Lambda <= I <= Lambda`. Returns the
    /// numerators `c` of the new elements `(sum c_i omega_i) / g`.
    pub fn left_order_gens(
        &self,
        s: &[FqPoly],
        ideal: &[Vec<FqPoly>],
        k: &ResidueField,
    ) -> Result<Vec<Vec<FqPoly>>> {
        let r = &self.ring;
        let m = self.m;
        let pinv = poly_inverse(&self.rf, ideal, &r.one())?;
        let sc = |i: usize, l: usize, t: usize| &s[(i * m + l) * m + t];
        let mut ymat = Matrix::zeros(k, m * m, m);
        for i in 0..m {
            for (j, eta) in ideal.iter().enumerate() {
                // omega_i eta_j in order coordinates.
                let mut v = vec![r.zero(); m];
                for (l, pl) in eta.iter().enumerate() {
                    if pl.is_zero() {
                        continue;
                    }
                    for (t, vt) in v.iter_mut().enumerate() {
                        let c = sc(i, l, t);
                        if !c.is_zero() {
                            *vt = r.add(vt, &r.mul(pl, c));
                        }
                    }
                }
                let y = pinv.apply(r, &v).ok_or_else(|| Error::PromiseViolation("ideal is not a left module".into()))?;
                for (t, yt) in y.iter().enumerate() {
                    ymat.set(j * m + t, i, k.from_poly(yt));
                }
            }
        }
        Ok(kernel(k, &ymat).iter().map(|c| c.iter().map(|x| k.to_poly(x)).collect()).collect())
    }

    fn ideal_basis(&self, g: &FqPoly, k: &ResidueField, gens: &[FElem<ResidueField>]) -> Result<Vec<Vec<FqPoly>>> {
        let r = &self.ring;
        let m = self.m;
        let mut all: Vec<Vec<FqPoly>> = gens.iter().map(|v| v.iter().map(|x| k.to_poly(x)).collect()).collect();
        for i in 0..m {
            all.push((0..m).map(|j| if i == j { g.clone() } else { r.zero() }).collect());
        }
        reduce_poly_generators(r, m, all)
    }

    fn enlarge_with(&self, o: &Order, g: &FqPoly, new: &[Vec<FqPoly>]) -> Result<Order> {
        let r = &self.ring;
        let mut gens: Vec<Vec<FqPoly>> = o.w.iter().map(|v| v.iter().map(|p| r.mul(p, g)).collect()).collect();
        for c in new {
            // sum_i c_i w_i
            let mut v = vec![r.zero(); self.m];
            for (ci, wi) in c.iter().zip(&o.w) {
                if ci.is_zero() {
                    continue;
                }
                for (a, b) in v.iter_mut().zip(wi) {
                    *a = r.add(a, &r.mul(ci, b));
                }
            }
            gens.push(v);
        }
        self.from_generators(r.mul(&o.den, g), gens)
    }

    /// Both local tests at the prime `g`.
    pub fn enlarge_at_prime(&self, o: &Order, g: &FqPoly) -> Result<Enlarge> {
        let s = self.structure(o)?;
        let k = ResidueField::new(self.rf.field(), g)?;
        let gamma: Vec<_> = s.iter().map(|c| k.from_poly(c)).collect();
        let bbar = FiniteAlgebra::new(k.clone(), self.m, gamma)?;
        let rad = radical(&bbar);
        let try_ideal = |gens: &[FElem<ResidueField>]| -> Result<Option<Order>> {
            let ideal = self.ideal_basis(g, &k, gens)?;
            let new = self.left_order_gens(&s, &ideal, &k)?;
            if new.is_empty() {
                return Ok(None);
            }
            Ok(Some(self.enlarge_with(o, g, &new)?))
        };
        if let Some(o2) = try_ideal(&rad)? {
            return Ok(Enlarge::Enlarged(o2));
        }
        let q = bbar.quotient(&rad)?;
        let comps = simple_components(&q.algebra)?;
        if comps.len() > 1 {
            for (_, basis) in comps {
                let mut gens = rad.clone();
                gens.extend(basis.iter().map(|v| q.lift(v)));
                if let Some(o2) = try_ideal(&gens)? {
                    return Ok(Enlarge::Enlarged(o2));
                }
            }
        }
        Ok(Enlarge::Unchanged)
    }

    /// Runs the enlargement loop at each given prime until unchanged.
    fn saturate(&self, mut o: Order, primes: &[FqPoly]) -> Result<(Order, Vec<FqPoly>)> {
        let mut disc = self.disc(&o)?;
        let mut chain = vec![disc.clone()];
        for g in primes {
            while let Enlarge::Enlarged(o2) = self.enlarge_at_prime(&o, g)? {
                let d2 = self.disc(&o2)?;
                debug_assert!(d2.degree() < disc.degree() && self.ring.divides(&d2, &disc), "discriminant must drop");
                debug_assert!(self.inside_bound(&o2), "order escaped (1/D0) Lambda_0");
                o = o2;
                chain.push(d2.clone());
                disc = d2;
            }
        }
        Ok((o, chain))
    }

    /// `D_0 omega` lies in `Lambda_0` for every basis element.
    pub fn inside_bound(&self, o: &Order) -> bool {
        let r = &self.ring;
        o.w.iter().flatten().all(|p| r.divides(&o.den, &r.mul(&self.d0, p)))
    }

    fn rep(&self, o: &Order, ring: Ring, disc_chain: Vec<FqPoly>) -> Result<OrderRep> {
        Ok(OrderRep {
            ring,
            basis: self.ambient_basis(o),
            disc: self.disc(o)?,
            d0: self.d0.clone(),
            enlargements: disc_chain.len() - 1,
            disc_chain,
        })
    }
}

fn primes_of(field: &Field, d: &FqPoly, seed: u64) -> Result<Vec<FqPoly>> {
    if d.degree().unwrap_or(0) == 0 {
        return Ok(vec![]);
    }
    Ok(factor_poly(field, d, seed)?.factors.into_iter().map(|(g, _)| g).collect())
}

/// A maximal `F_q[x]`-order (for split algebras: unit discriminant).
pub fn maximal_order_fqx(alg: &StructureAlgebra, seed: u64) -> Result<OrderRep> {
    let ctx = OrderContext::new(alg)?;
    let o = ctx.unital_closure(&ctx.almost_order())?;
    let primes = primes_of(alg.field(), &ctx.disc(&o)?, seed)?;
    let (o, chain) = ctx.saturate(o, &primes)?;
    ctx.rep(&o, Ring::Fx, chain)
}

/// The algebra rewritten in the variable `y = 1/x` (same basis).
pub fn flipped_algebra(alg: &StructureAlgebra) -> Result<StructureAlgebra> {
    let rf = alg.rf();
    let gamma = alg.gamma_flat().iter().map(|g| rf.flip_variable(g)).collect();
    StructureAlgebra::new(alg.field().clone(), alg.dim(), gamma)
}

/// An order maximal at the prime `1/x`; basis returned in `x`.
pub fn maximal_order_infinity(alg: &StructureAlgebra, _seed: u64) -> Result<OrderRep> {
    let flipped = flipped_algebra(alg)?;
    let ctx = OrderContext::new(&flipped)?;
    let o = ctx.unital_closure(&ctx.almost_order())?;
    let y = ctx.ring.x();
    let primes = if ctx.ring.divides(&y, &ctx.disc(&o)?) { vec![y.clone()] } else { vec![] };
    let (o, chain) = ctx.saturate(o, &primes)?;
    let mut rep = ctx.rep(&o, Ring::Infinity, chain)?;
    rep.disc = prime_part(&ctx.ring, &rep.disc, &y);
    rep.d0 = prime_part(&ctx.ring, &rep.d0, &y);
    rep.disc_chain = rep.disc_chain.iter().map(|d| prime_part(&ctx.ring, d, &y)).collect();
    let rf = alg.rf();
    rep.basis = rep.basis.iter().map(|v| v.iter().map(|c| rf.flip_variable(c)).collect()).collect();
    Ok(rep)
}

/// `(W d)^{-1}` for a polynomial matrix `W` given by columns.
fn poly_inverse(rf: &RatField, cols: &[Vec<FqPoly>], d: &FqPoly) -> Result<ClearedMatrix> {
    let w = Matrix::from_cols(cols.len(), &cols.iter().map(|v| v.iter().map(|p| rf.from_poly(p.clone())).collect()).collect::<Vec<_>>());
    Ok(ClearedMatrix::new(rf, &inverse(rf, &w)?, d))
}

/// `g^v` with `v` the `g`-adic valuation of `d != 0`.
fn prime_part(ring: &PolyRing<Field>, d: &FqPoly, g: &FqPoly) -> FqPoly {
    let (mut d, mut out) = (d.clone(), ring.one());
    while ring.divides(g, &d) {
        d = ring.div_exact(&d, g);
        out = ring.mul(&out, g);
    }
    out
}

/// `max(deg num, deg den)` over all structure constants, at least one.
pub fn structure_height(alg: &StructureAlgebra) -> usize {
    alg.gamma_flat().iter().map(RatFunc::height).max().unwrap_or(0).max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::matrix_units;
    use crate::ff::make_field;
    use crate::lattice::contains_all;
    use crate::lattice::Lattice;

    fn basis_algebra(p: u32, mats: impl Fn(&RatField) -> Vec<Matrix<RatFunc>>) -> StructureAlgebra {
        let field = make_field(p, 1, None).unwrap();
        let rf = RatField::new(field.clone());
        StructureAlgebra::from_matrix_basis(field, 2, &mats(&rf)).unwrap()
    }

    fn with_x_e12(rf: &RatField) -> Vec<Matrix<RatFunc>> {
        let mu = matrix_units(rf, 2);
        let mut xe12 = Matrix::zeros(rf, 2, 2);
        xe12.set(0, 1, rf.x());
        vec![mu[0].clone(), mu[3].clone(), xe12, mu[2].clone()]
    }

    #[test]
    fn matrix_units_already_maximal() {
        let alg = basis_algebra(3, |rf| matrix_units(rf, 2));
        let o = maximal_order_fqx(&alg, 0).unwrap();
        assert_eq!(o.disc.degree(), Some(0));
        assert_eq!(o.enlargements, 0);
        let rf = alg.rf();
        let std = Lattice::standard(rf, 4);
        let got = Lattice::new(4, o.basis.clone()).unwrap();
        assert!(contains_all(rf, &std, &got.vectors) && contains_all(rf, &got, &std.vectors));
        let inf = maximal_order_infinity(&alg, 0).unwrap();
        assert_eq!(inf.disc.degree(), Some(0));
        let got = Lattice::new(4, inf.basis).unwrap();
        assert!(contains_all(rf, &std, &got.vectors) && contains_all(rf, &got, &std.vectors));
    }

    #[test]
    fn x_e12_gets_enlarged() {
        let alg = basis_algebra(3, with_x_e12);
        let ctx = OrderContext::new(&alg).unwrap();
        let l = ctx.unital_closure(&ctx.almost_order()).unwrap();
        assert_eq!(ctx.disc(&l).unwrap(), alg.rf().ring().monomial(alg.field().one(), 2));
        let x = alg.rf().ring().x();
        let Enlarge::Enlarged(l2) = ctx.enlarge_at_prime(&l, &x).unwrap() else { panic!("expected enlargement") };
        assert!(ctx.disc(&l2).unwrap().degree() < Some(2));
        let o = maximal_order_fqx(&alg, 0).unwrap();
        assert_eq!(o.disc.degree(), Some(0));
        // Contains e12 = (1/x) * basis vector 2.
        let rf = alg.rf();
        let e12 = vec![rf.zero(), rf.zero(), rf.x_pow(-1), rf.zero()];
        assert!(contains_all(rf, &Lattice::new(4, o.basis.clone()).unwrap(), &[e12]));
        // At infinity, x e12 = (1/y) e12 is not integral; the result is maximal at y.
        let inf = maximal_order_infinity(&alg, 0).unwrap();
        assert_eq!(inf.disc.degree(), Some(0));
    }

    #[test]
    fn one_dimensional() {
        let field = make_field(5, 1, None).unwrap();
        let rf = RatField::new(field.clone());
        let alg = StructureAlgebra::new(field, 1, vec![rf.x_pow(-1)]).unwrap();
        let ctx = OrderContext::new(&alg).unwrap();
        assert_eq!(ctx.delta(), &rf.ring().x());
        let l0 = ctx.almost_order();
        let l = ctx.unital_closure(&l0).unwrap();
        assert_eq!(l, l0);
        let inf = maximal_order_infinity(&alg, 0).unwrap();
        // Delta = R . 1 with 1 = x a_1.
        assert_eq!(inf.basis.len(), 1);
        let ratio = rf.div(&inf.basis[0][0], &rf.x());
        assert!(ratio.is_polynomial() && ratio.num().degree() == Some(0));
    }
}
