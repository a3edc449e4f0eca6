//! Randomized invariants of the arithmetic layers, with independent checks.

mod common;

use common::*;
use fqiso::algebra::StructureAlgebra;
use fqiso::ff::{make_field, Field, FieldOps, FiniteField};
use fqiso::finalg::{radical, ResidueField};
use fqiso::gen::gen_instance;
use fqiso::io::{AlgebraFile, LatticeFile};
use fqiso::lattice::{contains_all, orthogonality_defect, reduce_basis, Lattice};
use fqiso::linalg::{determinant, inverse, mat_mul, Matrix};
use fqiso::polyrat::{factor_poly, is_irreducible, FqPoly, RatField};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field_params() -> impl Strategy<Value = (u32, usize)> {
    prop_oneof![Just((2, 1)), Just((3, 1)), Just((5, 1)), Just((7, 1)), Just((2, 2)), Just((2, 3)), Just((3, 2))]
}

fn field(p: u32, e: usize) -> Field {
    make_field(p, e, None).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((p, e) in field_params(), seed in any::<u64>()) {
        let f = field(p, e);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.add(&f.sub(&a, &b), &b), a);
        if !f.is_zero(&a) {
            prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
            // Lagrange: a^(q-1) = 1.
            prop_assert!(f.is_one(&f.pow(&a, u64::from(f.q()) - 1)));
        }
        // Frobenius is additive and the p-th root inverts it.
        prop_assert_eq!(f.frobenius(&f.add(&a, &b)), f.add(&f.frobenius(&a), &f.frobenius(&b)));
        prop_assert_eq!(f.frobenius(&f.pth_root(&a)), a);
    }

    #[test]
    fn polynomial_division_and_gcd((p, e) in field_params(), seed in any::<u64>()) {
        let rf = RatField::new(field(p, e));
        let r = rf.ring();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_poly(&rf, 8, &mut rng);
        let b = random_poly(&rf, 5, &mut rng);
        prop_assume!(!b.is_zero());
        let (q, rem) = r.divrem(&a, &b);
        prop_assert_eq!(r.add(&r.mul(&q, &b), &rem), a.clone());
        prop_assert!(rem.deg_i64() < b.deg_i64());
        let (g, s, t) = r.xgcd(&a, &b);
        prop_assert_eq!(r.add(&r.mul(&s, &a), &r.mul(&t, &b)), g.clone());
        prop_assert!(r.divides(&g, &a) && r.divides(&g, &b));
    }

    #[test]
    fn factorization_reconstructs((p, e) in field_params(), seed in any::<u64>()) {
        let rf = RatField::new(field(p, e));
        let r = rf.ring();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Products of small random factors force repeated and mixed degrees.
        let mut f = r.one();
        for _ in 0..3 {
            let g = random_poly(&rf, 3, &mut rng);
            if !g.is_zero() {
                f = r.mul(&f, &g);
            }
        }
        let fac = factor_poly(rf.field(), &f, seed).unwrap();
        let mut prod = r.constant(fac.unit);
        for (g, k) in &fac.factors {
            prop_assert!(is_irreducible(rf.field(), g.coeffs()));
            prop_assert_eq!(g.lc().cloned(), Some(rf.field().one()));
            prod = r.mul(&prod, &r.pow(g, *k as u64));
        }
        prop_assert_eq!(prod, f);
    }

    #[test]
    fn residue_field_is_a_field((p, e) in field_params(), seed in any::<u64>()) {
        let base = field(p, e);
        let rf = RatField::new(base.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // The first irreducible factor of a random polynomial of degree 2..4.
        let f = loop {
            let f = random_poly(&rf, 4, &mut rng);
            if f.deg_i64() >= 2 { break f; }
        };
        let g = factor_poly(&base, &f, seed).unwrap().factors.pop().unwrap().0;
        let k = ResidueField::new(&base, &g).unwrap();
        let a = k.random(&mut rng);
        prop_assume!(!k.is_zero(&a));
        prop_assert!(k.is_one(&k.mul(&a, &k.inv(&a).unwrap())));
        prop_assert!(k.is_one(&k.pow(&a, k.size().unwrap() - 1)));
        // Round trip through polynomials modulo g.
        let a_poly = k.to_poly(&a);
        prop_assert_eq!(k.from_poly(&a_poly), a);
    }

    #[test]
    fn rational_functions((p, e) in field_params(), seed in any::<u64>()) {
        let rf = RatField::new(field(p, e));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_ratfunc(&rf, 4, &mut rng);
        let b = random_ratfunc(&rf, 4, &mut rng);
        prop_assert_eq!(rf.flip_variable(&rf.flip_variable(&a)), a.clone());
        if !a.is_zero() && !b.is_zero() {
            let v = rf.valuation(&rf.mul(&a, &b)).unwrap();
            prop_assert_eq!(v, rf.valuation(&a).unwrap() + rf.valuation(&b).unwrap());
            prop_assert_eq!(rf.mul(&rf.div(&a, &b), &b), a.clone());
        }
        // Ultrametric: |a + b| <= max(|a|, |b|).
        prop_assert!(rf.valuation(&rf.add(&a, &b)) <= rf.valuation(&a).max(rf.valuation(&b)));
    }

    #[test]
    fn linear_algebra_inverse(p in prop_oneof![Just(2u32), Just(3), Just(5)], seed in any::<u64>(), m in 1usize..5) {
        let rf = RatField::new(field(p, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Matrix::from_cols(m, &random_basis(&rf, m, 3, &mut rng));
        let inv = inverse(&rf, &a).unwrap();
        prop_assert_eq!(mat_mul(&rf, &a, &inv), Matrix::identity(&rf, m));
        let det = determinant(&rf, &a).unwrap();
        prop_assert_eq!(rf.mul(&det, &determinant(&rf, &inv).unwrap()), rf.one());
    }

    #[test]
    fn reduction_preserves_lattice(p in prop_oneof![Just(2u32), Just(3), Just(5)], seed in any::<u64>(), m in 1usize..5) {
        let rf = RatField::new(field(p, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lat = Lattice::new(m, random_basis(&rf, m, 4, &mut rng)).unwrap();
        let (red, _) = reduce_basis(&rf, &lat).unwrap();
        prop_assert_eq!(orthogonality_defect(&rf, &red.vectors).unwrap(), 0);
        prop_assert!(contains_all(&rf, &red, &lat.vectors));
        prop_assert!(contains_all(&rf, &lat, &red.vectors));
    }

    #[test]
    fn radical_matches_brute_force(p in prop_oneof![Just(2u32), Just(3)], seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_unital_algebra(p, 4, &mut rng);
        let rad = radical(&b);
        let oracle = brute_force_radical(&b);
        let span = span_elements(&b, &rad);
        prop_assert_eq!(span.len(), oracle.len());
        prop_assert!(span.iter().all(|x| oracle.contains(x)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn reduced_trace_is_linear_and_matches_matrix_trace((p, e) in field_params(), seed in 0u64..1000, n in 1usize..3) {
        let inst = gen_instance(p, e, n, 1, seed).unwrap();
        let alg = &inst.algebra;
        let rf = alg.rf();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a: Vec<_> = (0..alg.dim()).map(|_| random_ratfunc(rf, 2, &mut rng)).collect();
        let b: Vec<_> = (0..alg.dim()).map(|_| random_ratfunc(rf, 2, &mut rng)).collect();
        let ta = alg.reduced_trace(&a).unwrap();
        let tb = alg.reduced_trace(&b).unwrap();
        prop_assert_eq!(alg.reduced_trace(&alg.add(&a, &b)).unwrap(), rf.add(&ta, &tb));
        // tr(ab) = tr(ba).
        prop_assert_eq!(alg.reduced_trace(&alg.mul(&a, &b)).unwrap(), alg.reduced_trace(&alg.mul(&b, &a)).unwrap());
        let img = inst.image(&a);
        let tr = (0..n).fold(rf.zero(), |acc, i| rf.add(&acc, img.get(i, i)));
        prop_assert_eq!(ta, tr);
    }

    #[test]
    fn files_round_trip((p, e) in field_params(), seed in 0u64..1000) {
        let inst = gen_instance(p, e, 2, 2, seed).unwrap();
        let text = serde_json::to_string(&AlgebraFile::from_algebra(&inst.algebra)).unwrap();
        let back: AlgebraFile = serde_json::from_str(&text).unwrap();
        let alg: StructureAlgebra = back.to_algebra().unwrap();
        prop_assert_eq!(alg.gamma_flat(), inst.algebra.gamma_flat());

        let rf = alg.rf();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lat = Lattice::new(3, random_basis(rf, 3, 3, &mut rng)).unwrap();
        let file = LatticeFile::from_lattice(alg.field(), &lat);
        let back: LatticeFile = serde_json::from_str(&serde_json::to_string(&file).unwrap()).unwrap();
        prop_assert_eq!(back.to_lattice(rf).unwrap(), lat);
    }
}

#[test]
fn known_irreducibles() {
    // x^2 + 1 is irreducible over F_3 and splits over F_5 and F_2.
    for (p, irreducible) in [(3, true), (5, false), (2, false)] {
        let f = field(p, 1);
        let coeffs: Vec<_> = [1, 0, 1].iter().map(|&c| f.from_int(c)).collect();
        assert_eq!(is_irreducible(&f, &coeffs), irreducible, "p = {p}");
    }
    let f = field(2, 1);
    let r = RatField::new(f.clone());
    let x4x1: FqPoly = r.ring().from_vec([1, 1, 0, 0, 1].iter().map(|&c| f.from_int(c)).collect());
    assert!(factor_poly(&f, &x4x1, 0).unwrap().is_irreducible());
}
