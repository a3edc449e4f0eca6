//! Radical in characteristic `p` through the chain of `p`-power trace
//! functions.
//!
//! With `D` the size of the (faithful) regular representation and
//! `l = floor(log_p D)`, set `I_{-1} = B` and
//! `I_i = { a in I_{i-1} : g_i(a b) = 0 for all b }`, where
//! `g_i(M) = Tr(M~^{p^i}) / p^i mod p` for any lift `M~` of `M` to the Galois
//! ring `GR(p^{l+1}, E)`. Then `Rad B = I_l`. Each `g_i` is `p^i`-semilinear
//! on `I_{i-1} B`, so applying the inverse Frobenius to its values makes every
//! step a linear system over the base field.

use crate::ff::{Field, FieldOps, FiniteField, Fq};
use crate::linalg::{kernel, Echelon, Matrix};

use super::{FElem, FiniteAlgebra};

/// `(Z / p^N)[t] / (h~)` with `h~` the lift of the field's prime modulus.
struct GaloisRing {
    pn: u64,
    h: Vec<u64>,
}

type GrElem = Vec<u64>;

impl GaloisRing {
    fn deg(&self) -> usize {
        self.h.len() - 1
    }

    fn zero(&self) -> GrElem {
        vec![0; self.deg()]
    }

    fn add(&self, a: &GrElem, b: &GrElem) -> GrElem {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.pn).collect()
    }

    fn mul(&self, a: &GrElem, b: &GrElem) -> GrElem {
        let e = self.deg();
        let pn = self.pn as u128;
        let mut prod = vec![0u128; 2 * e - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % pn;
            }
        }
        for k in (e..prod.len()).rev() {
            let c = prod[k];
            if c != 0 {
                for i in 0..e {
                    let idx = k - e + i;
                    prod[idx] = (prod[idx] + (pn - c) * self.h[i] as u128) % pn;
                }
            }
        }
        prod.truncate(e);
        prod.into_iter().map(|v| v as u64).collect()
    }

    fn mat_mul(&self, a: &[Vec<GrElem>], b: &[Vec<GrElem>]) -> Vec<Vec<GrElem>> {
        let n = a.len();
        let mut out = vec![vec![self.zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if a[i][k].iter().all(|&c| c == 0) {
                    continue;
                }
                for j in 0..n {
                    if b[k][j].iter().all(|&c| c == 0) {
                        continue;
                    }
                    out[i][j] = self.add(&out[i][j], &self.mul(&a[i][k], &b[k][j]));
                }
            }
        }
        out
    }

    fn mat_pow(&self, a: &[Vec<GrElem>], mut exp: u64) -> Vec<Vec<GrElem>> {
        let n = a.len();
        let mut acc: Vec<Vec<GrElem>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut z = self.zero();
                        if i == j {
                            z[0] = 1;
                        }
                        z
                    })
                    .collect()
            })
            .collect();
        let mut base = a.to_vec();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mat_mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mat_mul(&base, &base);
            }
        }
        acc
    }
}

/// `Rad B`, as a basis in `B`-coordinates.
pub fn radical<F: FiniteField>(b: &FiniteAlgebra<F>) -> Vec<FElem<F>> {
    if b.dim() == 0 {
        return vec![];
    }
    if b.identity().is_none() {
        // B is an ideal of codimension one in its unitalization, and the
        // radical of the latter lies in B.
        let u = b.unitalize();
        return radical(&u).into_iter().map(|mut v| {
            v.pop();
            v
        }).collect();
    }
    let f = b.field();
    let d = b.dim();
    let p = f.characteristic() as u64;
    let mut l = 0u32;
    while p.checked_pow(l + 1).is_some_and(|v| v <= d as u64) {
        l += 1;
    }
    let ring = GaloisRing {
        pn: p.pow(l + 1),
        h: f.prime_modulus().into_iter().map(u64::from).collect(),
    };
    let mut ideal: Vec<FElem<F>> = (0..d).map(|i| b.basis_elem(i)).collect();
    for i in 0..=l {
        if ideal.is_empty() {
            break;
        }
        let mut values = Matrix::zeros(f, d, ideal.len());
        for (k, a) in ideal.iter().enumerate() {
            for j in 0..d {
                let m = b.left_mul_matrix(&b.mul(a, &b.basis_elem(j)));
                let v = if i == 0 { trace(f, &m) } else { twisted_trace(f, &ring, &m, i) };
                values.set(j, k, v);
            }
        }
        let ker = kernel(f, &values);
        let mut ech = Echelon::new(f.clone(), d);
        ideal = ker
            .iter()
            .map(|c| {
                c.iter().zip(&ideal).fold(b.zero(), |acc, (s, v)| crate::linalg::axpy(f, &acc, s, v))
            })
            .filter(|v| ech.insert(v))
            .collect();
    }
    ideal
}

fn trace<F: FiniteField>(f: &F, m: &Matrix<F::Elem>) -> F::Elem {
    (0..m.rows()).fold(f.zero(), |acc, i| f.add(&acc, m.get(i, i)))
}

/// `g_i(m)^{p^{-i}}`.
fn twisted_trace<F: FiniteField>(f: &F, ring: &GaloisRing, m: &Matrix<F::Elem>, i: u32) -> F::Elem {
    let p = f.characteristic() as u64;
    let lifted: Vec<Vec<GrElem>> = (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| f.to_prime_coeffs(m.get(r, c)).into_iter().map(u64::from).collect()).collect())
        .collect();
    let pw = ring.mat_pow(&lifted, p.pow(i));
    let tr = (0..pw.len()).fold(ring.zero(), |acc, r| ring.add(&acc, &pw[r][r]));
    let pi = p.pow(i);
    let coeffs: Vec<u32> = tr
        .iter()
        .map(|&c| {
            debug_assert_eq!(c % pi, 0, "trace of p^i-th power not divisible by p^i");
            ((c / pi) % p) as u32
        })
        .collect();
    let mut v = f.from_prime_coeffs(&coeffs);
    for _ in 0..i {
        v = f.pth_root(&v);
    }
    v
}

/// Radical computed after restricting scalars to `F_p`; an independent
/// route used for cross-checking.
pub fn radical_by_restriction<F: FiniteField>(b: &FiniteAlgebra<F>) -> Vec<FElem<F>> {
    let f = b.field();
    let p = f.characteristic();
    let e = f.abs_degree();
    let prime = Field::prime(p);
    let d = b.dim();
    let big = d * e;
    // Basis t^a b_i at index i * e + a.
    let t = if e > 1 {
        let mut c = vec![0u32; e];
        c[1] = 1;
        f.from_prime_coeffs(&c)
    } else {
        f.one()
    };
    let t_pow = |a: usize| f.pow(&t, a as u64);
    let mut gamma = vec![prime.zero(); big * big * big];
    for i in 0..d {
        for a in 0..e {
            for j in 0..d {
                for c in 0..e {
                    let s = t_pow(a + c);
                    let prod = b.mul(&b.basis_elem(i), &b.basis_elem(j));
                    for (k, coeff) in prod.iter().enumerate() {
                        let v = f.to_prime_coeffs(&f.mul(&s, coeff));
                        for (g, &digit) in v.iter().enumerate() {
                            gamma[((i * e + a) * big + j * e + c) * big + k * e + g] = Fq(digit % p);
                        }
                    }
                }
            }
        }
    }
    let restricted = FiniteAlgebra::new(prime, big, gamma).unwrap();
    let rad = radical(&restricted);
    let mut ech = Echelon::new(f.clone(), d);
    rad.iter()
        .map(|v| {
            (0..d)
                .map(|i| f.from_prime_coeffs(&v[i * e..(i + 1) * e].iter().map(|x| x.raw()).collect::<Vec<_>>()))
                .collect::<Vec<_>>()
        })
        .filter(|v| ech.insert(v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::tests::{full_matrix_algebra, matrix_algebra, upper_triangular};
    use super::*;
    use crate::ff::make_field;

    #[test]
    fn examples() {
        let f3 = make_field(3, 1, None).unwrap();
        assert!(radical(&full_matrix_algebra(&f3, 2)).is_empty());
        let f2 = make_field(2, 1, None).unwrap();
        let ut = upper_triangular(&f2);
        let rad = radical(&ut);
        assert_eq!(rad.len(), 1);
        assert_eq!(rad[0], ut.basis_elem(1));
        // Full M_2 and M_3 over F_2 and F_4 are semisimple even though p | D.
        for (p, e, k) in [(2, 1, 2), (2, 2, 2), (2, 1, 3), (3, 1, 3), (3, 2, 2)] {
            let f = make_field(p, e, None).unwrap();
            assert!(radical(&full_matrix_algebra(&f, k)).is_empty(), "M_{k}(F_{p}^{e})");
        }
    }

    #[test]
    fn dual_numbers_and_group_algebra() {
        let f2 = make_field(2, 1, None).unwrap();
        // F_2[C_2] = F_2[x]/(x^2 - 1): radical spanned by 1 + g.
        let g = matrix_algebra(&f2, 2, &[vec![1, 0, 0, 1], vec![0, 1, 1, 0]]);
        let rad = radical(&g);
        assert_eq!(rad.len(), 1);
        assert_eq!(rad[0], vec![Fq(1), Fq(1)]);
        let f3 = make_field(3, 1, None).unwrap();
        // F_3[C_3] as 3x3 permutation matrices.
        let c3 = matrix_algebra(
            &f3,
            3,
            &[vec![1, 0, 0, 0, 1, 0, 0, 0, 1], vec![0, 1, 0, 0, 0, 1, 1, 0, 0], vec![0, 0, 1, 1, 0, 0, 0, 1, 0]],
        );
        assert_eq!(radical(&c3).len(), 2);
        assert_eq!(radical_by_restriction(&c3).len(), 2);
    }
}
