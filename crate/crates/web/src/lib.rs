//! Browser bindings. Every entry point returns a JSON string with either
//! `"ok": true` and the payload, or `"ok": false` and an `"error"` message,
//! so the same functions run natively in tests.

use fqiso::algebra::{AlgElem, StructureAlgebra};
use fqiso::ff::{make_field, FieldOps};
use fqiso::finalg::radical;
use fqiso::gen::{gen_instance, matrix_units};
use fqiso::io::LatticeFile;
use fqiso::lattice::{orthogonality_defect, reduce_basis, reduce_generators};
use fqiso::linalg::Matrix;
use fqiso::polyrat::{RatField, RatFunc};
use fqiso::split::{intersect_orders, split_pipeline};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

/// Largest matrix size the demo accepts; larger instances block the page.
pub const MAX_DEMO_N: usize = 3;

fn respond(r: Result<Value, String>) -> String {
    match r {
        Ok(mut v) => {
            v["ok"] = json!(true);
            v.to_string()
        }
        Err(e) => json!({"ok": false, "error": e}).to_string(),
    }
}

fn fmt_vec(rf: &RatField, v: &[RatFunc]) -> Vec<String> {
    v.iter().map(|c| rf.format(c)).collect()
}

fn fmt_matrix(rf: &RatField, m: &Matrix<RatFunc>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| fmt_vec(rf, r)).collect()
}

/// Reduces a lattice given as `{"m", "vectors"}` (optionally with `"p"`).
#[wasm_bindgen]
pub fn reduce_lattice(p: u32, input: &str) -> String {
    respond((|| {
        let file: LatticeFile = serde_json::from_str(input).map_err(|e| e.to_string())?;
        let field = file.field(Some(p)).map_err(|e| e.to_string())?;
        let rf = RatField::new(field);
        let l = file.to_lattice(&rf).map_err(|e| e.to_string())?;
        let (reduced, od_before) = if l.vectors.len() == l.m {
            let (r, cert) = reduce_basis(&rf, &l).map_err(|e| e.to_string())?;
            (r, Some(cert.od_before))
        } else {
            (reduce_generators(&rf, l.m, &l.vectors).map_err(|e| e.to_string())?, None)
        };
        let od_after = orthogonality_defect(&rf, &reduced.vectors).map_err(|e| e.to_string())?;
        Ok(json!({
            "od_before": od_before,
            "od_after": od_after,
            "basis": reduced.vectors.iter().map(|v| fmt_vec(&rf, v)).collect::<Vec<_>>(),
        }))
    })())
}

/// Generates a random split instance and runs the full pipeline on it.
#[wasm_bindgen]
pub fn split_random(p: u32, e: usize, n: usize, max_deg: usize, seed: u64) -> String {
    respond((|| {
        if n == 0 || n > MAX_DEMO_N {
            return Err(format!("n must be between 1 and {MAX_DEMO_N}"));
        }
        let inst = gen_instance(p, e, n, max_deg, seed).map_err(|e| e.to_string())?;
        let alg = &inst.algebra;
        let rf = alg.rf();
        let res = split_pipeline(alg, seed).map_err(|e| e.to_string())?;
        Ok(json!({
            "n": n,
            "dimC": res.report.algebra.dim(),
            "dmin": res.report.d_min,
            "dmax": res.report.d_max,
            "enlargements": [res.lambda.enlargements, res.delta.enlargements],
            "idempotent": fmt_vec(rf, &res.iso.idempotent),
            "images": res.iso.images.iter().map(|m| fmt_matrix(rf, m)).collect::<Vec<_>>(),
            "verified": res.iso.verified,
        }))
    })())
}

fn matrix_of(alg: &StructureAlgebra, a: &AlgElem) -> Vec<Vec<String>> {
    let rf = alg.rf();
    let n = alg.degree();
    (0..n).map(|i| (0..n).map(|j| rf.format(&a[i * n + j])).collect()).collect()
}

/// `Lambda ∩ M_2(R)` for `Lambda = span{e11, x^k e12, x^-k e21, e22}`.
#[wasm_bindgen]
pub fn conjugated_units(p: u32, k: u32) -> String {
    respond((|| {
        if k > 16 {
            return Err("k must be at most 16".into());
        }
        let field = make_field(p, 1, None).map_err(|e| e.to_string())?;
        let rf = RatField::new(field.clone());
        let alg = StructureAlgebra::from_matrix_basis(field, 2, &matrix_units(&rf, 2)).map_err(|e| e.to_string())?;
        let k = i64::from(k);
        let unit = |i: usize, c: RatFunc| alg.scale(&c, &alg.basis_elem(i));
        let lambda = vec![unit(0, rf.one()), unit(1, rf.x_pow(k)), unit(2, rf.x_pow(-k)), unit(3, rf.one())];
        let delta: Vec<AlgElem> = (0..4).map(|i| alg.basis_elem(i)).collect();
        let rep = intersect_orders(&alg, &lambda, &delta).map_err(|e| e.to_string())?;
        let rad = radical(&rep.algebra);
        Ok(json!({
            "dimC": rep.algebra.dim(),
            "radical_dim": rad.len(),
            "semisimple_dim": rep.algebra.dim() - rad.len(),
            "c_basis": rep.c_basis.iter().map(|a| matrix_of(&alg, a)).collect::<Vec<_>>(),
        }))
    })())
}
