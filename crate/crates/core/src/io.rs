//! JSON file formats.
//!
//! Field elements are arrays of `e` residues in ascending degree, polynomials
//! are arrays of field elements in ascending degree, and rational functions
//! are `{"num": poly, "den": poly}` with a nonzero denominator.

use serde::{Deserialize, Serialize};

use crate::algebra::{isqrt, StructureAlgebra};
use crate::error::{Error, Result};
use crate::ff::{make_field, Field, FiniteField, Fq};
use crate::gen::Instance;
use crate::lattice::Lattice;
use crate::linalg::Matrix;
use crate::order::{OrderRep, Ring};
use crate::polyrat::{FqPoly, RatField, RatFunc};
use crate::split::{Isomorphism, IntersectionReport};

pub type PolyJson = Vec<Vec<u32>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFuncJson {
    pub num: PolyJson,
    pub den: PolyJson,
}

/// Field parameters shared by all files that carry them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldHeader {
    pub p: u32,
    pub e: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

impl FieldHeader {
    pub fn of(field: &Field) -> Self {
        let e = field.abs_degree();
        FieldHeader { p: field.characteristic(), e, modulus: (e > 1).then(|| field.prime_modulus()) }
    }

    pub fn field(&self) -> Result<Field> {
        make_field(self.p, self.e, self.modulus.as_deref()).map_err(|err| match err {
            Error::InvalidInput(_) => err,
            other => Error::InvalidInput(other.to_string()),
        })
    }
}

pub fn encode_poly(field: &Field, p: &FqPoly) -> PolyJson {
    p.coeffs().iter().map(|c| field.to_prime_coeffs(c)).collect()
}

pub fn decode_poly(rf: &RatField, p: &PolyJson) -> Result<FqPoly> {
    let coeffs: Vec<Fq> = p.iter().map(|c| rf.field().from_coeffs(c)).collect::<Result<_>>()?;
    Ok(rf.ring().from_vec(coeffs))
}

pub fn encode_rat(field: &Field, r: &RatFunc) -> RatFuncJson {
    RatFuncJson { num: encode_poly(field, r.num()), den: encode_poly(field, r.den()) }
}

pub fn decode_rat(rf: &RatField, r: &RatFuncJson) -> Result<RatFunc> {
    let den = decode_poly(rf, &r.den)?;
    if den.is_zero() {
        return Err(Error::InvalidInput("zero denominator".into()));
    }
    rf.frac(decode_poly(rf, &r.num)?, den)
}

pub fn encode_vec(field: &Field, v: &[RatFunc]) -> Vec<RatFuncJson> {
    v.iter().map(|r| encode_rat(field, r)).collect()
}

pub fn decode_vec(rf: &RatField, v: &[RatFuncJson]) -> Result<Vec<RatFunc>> {
    v.iter().map(|r| decode_rat(rf, r)).collect()
}

fn encode_matrix(field: &Field, m: &Matrix<RatFunc>) -> Vec<Vec<RatFuncJson>> {
    m.to_rows().iter().map(|row| encode_vec(field, row)).collect()
}

fn decode_matrix(rf: &RatField, rows: &[Vec<RatFuncJson>], n: usize) -> Result<Matrix<RatFunc>> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput(format!("expected a {n}x{n} matrix")));
    }
    Ok(Matrix::from_rows(rows.iter().map(|r| decode_vec(rf, r)).collect::<Result<_>>()?))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    #[serde(flatten)]
    pub field: FieldHeader,
    pub dim: usize,
    /// `gamma[i][j][k]`.
    pub gamma: Vec<Vec<Vec<RatFuncJson>>>,
}

impl AlgebraFile {
    pub fn from_algebra(alg: &StructureAlgebra) -> Self {
        let f = alg.field();
        let m = alg.dim();
        let gamma = (0..m)
            .map(|i| (0..m).map(|j| (0..m).map(|k| encode_rat(f, alg.gamma(i, j, k))).collect()).collect())
            .collect();
        AlgebraFile { field: FieldHeader::of(f), dim: m, gamma }
    }

    /// Validates shape and entries; the dimension must be a perfect square.
    pub fn to_algebra(&self) -> Result<StructureAlgebra> {
        let m = self.dim;
        let n = isqrt(m);
        if m == 0 || n * n != m {
            return Err(Error::InvalidInput(format!("dimension {m} is not a positive perfect square")));
        }
        let shape_ok = self.gamma.len() == m
            && self.gamma.iter().all(|a| a.len() == m && a.iter().all(|b| b.len() == m));
        if !shape_ok {
            return Err(Error::InvalidInput(format!("gamma must be {m}x{m}x{m}")));
        }
        let field = self.field.field()?;
        let rf = RatField::new(field.clone());
        let flat = self.gamma.iter().flatten().flatten().map(|r| decode_rat(&rf, r)).collect::<Result<_>>()?;
        StructureAlgebra::new(field, m, flat)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeFile {
    /// Optional so that bare `{"m", "vectors"}` files over `F_p` are read
    /// with `p` supplied separately.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    pub m: usize,
    pub vectors: Vec<Vec<RatFuncJson>>,
    /// Discriminant of an order (monic polynomial).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disc: Option<PolyJson>,
    /// `"fx"` or `"infty"` for orders.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<String>,
}

impl LatticeFile {
    pub fn from_lattice(field: &Field, l: &Lattice) -> Self {
        let h = FieldHeader::of(field);
        LatticeFile {
            p: Some(h.p),
            e: Some(h.e),
            modulus: h.modulus,
            m: l.m,
            vectors: l.vectors.iter().map(|v| encode_vec(field, v)).collect(),
            disc: None,
            ring: None,
        }
    }

    pub fn from_order(field: &Field, o: &OrderRep) -> Self {
        let mut out = Self::from_lattice(field, &Lattice { m: o.basis.len(), vectors: o.basis.clone() });
        out.disc = Some(encode_poly(field, &o.disc));
        out.ring = Some(match o.ring {
            Ring::Fx => "fx".into(),
            Ring::Infinity => "infty".into(),
        });
        out
    }

    /// Field from the file, falling back to `F_p` with the given `p`.
    pub fn field(&self, default_p: Option<u32>) -> Result<Field> {
        let p = self
            .p
            .or(default_p)
            .ok_or_else(|| Error::InvalidInput("lattice file has no \"p\"; pass --p".into()))?;
        FieldHeader { p, e: self.e.unwrap_or(1), modulus: self.modulus.clone() }.field()
    }

    pub fn to_lattice(&self, rf: &RatField) -> Result<Lattice> {
        if self.vectors.iter().any(|v| v.len() != self.m) {
            return Err(Error::InvalidInput(format!("every vector must have {} coordinates", self.m)));
        }
        let vectors = self.vectors.iter().map(|v| decode_vec(rf, v)).collect::<Result<_>>()?;
        Ok(Lattice { m: self.m, vectors })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    #[serde(rename = "dimC")]
    pub dim_c: usize,
    pub dmin: i64,
    pub dmax: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IsoFile {
    pub n: usize,
    pub idempotent: Vec<RatFuncJson>,
    pub images: Vec<Vec<Vec<RatFuncJson>>>,
    pub left_ideal: Vec<Vec<RatFuncJson>>,
    pub verified: bool,
    pub report: ReportJson,
}

impl IsoFile {
    pub fn new(field: &Field, iso: &Isomorphism, report: &IntersectionReport) -> Self {
        IsoFile {
            n: iso.n,
            idempotent: encode_vec(field, &iso.idempotent),
            images: iso.images.iter().map(|m| encode_matrix(field, m)).collect(),
            left_ideal: iso.left_ideal.iter().map(|v| encode_vec(field, v)).collect(),
            verified: iso.verified,
            report: ReportJson { dim_c: report.algebra.dim(), dmin: report.d_min, dmax: report.d_max },
        }
    }

    pub fn images(&self, rf: &RatField) -> Result<Vec<Matrix<RatFunc>>> {
        self.images.iter().map(|m| decode_matrix(rf, m, self.n)).collect()
    }
}

/// Known isomorphism of a generated instance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroundTruthFile {
    #[serde(flatten)]
    pub field: FieldHeader,
    pub n: usize,
    /// Rows of the change of basis; column `k` is `f_k` in matrix units.
    pub q: Vec<Vec<RatFuncJson>>,
}

impl GroundTruthFile {
    pub fn new(inst: &Instance) -> Self {
        let f = inst.algebra.field();
        GroundTruthFile { field: FieldHeader::of(f), n: inst.n, q: encode_matrix(f, &inst.q) }
    }

    pub fn to_instance(&self) -> Result<Instance> {
        let field = self.field.field()?;
        let rf = RatField::new(field.clone());
        let q = decode_matrix(&rf, &self.q, self.n * self.n)?;
        Instance::from_change_of_basis(field, self.n, q)
    }
}
