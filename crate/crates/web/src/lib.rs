//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export takes plain numbers and strings and returns a JSON string, so
//! the page needs no generated type glue. The `*_json` functions hold the
//! logic and are ordinary Rust, testable without a browser.

use flagconn::connection::basis_labels;
use flagconn::oracle::{check_metric_compat, check_oracle_equivalence, check_torsion, DEFAULT_TOLERANCE};
use flagconn::su::{su3_coefficients, u_su3, SuRealization};
use flagconn::{assemble_tensor, build_metric, CheckReport, Family, FlagManifold, Kind, MVector, MetricSpec};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Keeps the page responsive; D4 is the largest system the demo offers.
pub const MAX_DIM: usize = 24;

#[derive(Serialize)]
struct RootSystemView {
    family: String,
    rank: usize,
    dim: usize,
    cartan: Vec<Vec<i32>>,
    positive_roots: Vec<Vec<i32>>,
}

#[derive(Serialize)]
struct ConnectionView {
    labels: Vec<String>,
    coefficients: Vec<f64>,
    /// Row-major `dim × dim` array of `|U(e_i, e_j)|`.
    u_norms: Vec<f64>,
    checks: Vec<CheckReport>,
}

#[derive(Serialize)]
struct Su3View {
    coefficients: [f64; 3],
    labels: Vec<String>,
    u_norms: Vec<f64>,
}

fn manifold(family: &str, rank: usize) -> Result<FlagManifold, String> {
    let family: Family = family.parse().map_err(|e: flagconn::Error| e.to_string())?;
    let fm = FlagManifold::new(family, rank).map_err(|e| e.to_string())?;
    if fm.dim() > MAX_DIM {
        return Err(format!("{family}{rank} has dim m = {}, the demo stops at {MAX_DIM}", fm.dim()));
    }
    Ok(fm)
}

fn label(root: &[i32], kind: Kind) -> String {
    let k = match kind {
        Kind::U => "U",
        Kind::V => "V",
    };
    let r: Vec<String> = root.iter().map(|c| c.to_string()).collect();
    format!("{k}{}", r.join(""))
}

fn norm(v: &MVector) -> f64 {
    v.coords().iter().map(|c| c * c).sum::<f64>().sqrt()
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

pub fn root_system_json(family: &str, rank: usize) -> Result<String, String> {
    let fm = manifold(family, rank)?;
    let rs = fm.roots();
    Ok(to_json(&RootSystemView {
        family: rs.family().to_string(),
        rank: rs.rank(),
        dim: fm.dim(),
        cartan: rs.cartan_matrix().to_vec(),
        positive_roots: rs.positive_roots().iter().map(|r| r.coords().to_vec()).collect(),
    }))
}

/// `coeffs` lists `c_α` in the order of `positive_roots`; empty means the
/// normal metric.
pub fn connection_json(family: &str, rank: usize, coeffs: &[f64]) -> Result<String, String> {
    let fm = manifold(family, rank)?;
    let rs = fm.roots();
    let spec = if coeffs.is_empty() {
        MetricSpec::normal(rs, 1.0)
    } else {
        MetricSpec::from_values(rs, coeffs)
    }
    .map_err(|e| e.to_string())?;
    let run = || -> flagconn::Result<ConnectionView> {
        let tensor = assemble_tensor(&fm, &spec)?;
        let gram = build_metric(rs, fm.killing(), fm.basis(), &spec)?;
        let n = fm.dim();
        let u = tensor.u_part(&fm);
        let u_norms = u.chunks(n).map(|row| norm(&MVector(row.to_vec()))).collect();
        Ok(ConnectionView {
            labels: basis_labels(&fm).iter().map(|(r, k)| label(r.coords(), *k)).collect(),
            coefficients: spec.values().to_vec(),
            u_norms,
            checks: vec![
                check_oracle_equivalence(&fm, &spec, DEFAULT_TOLERANCE)?,
                check_torsion(&tensor, fm.m_structure(), DEFAULT_TOLERANCE)?,
                check_metric_compat(&tensor, &gram, DEFAULT_TOLERANCE)?,
            ],
        })
    };
    run().map(|v| to_json(&v)).map_err(|e| e.to_string())
}

/// `c1 = c_{ε1−ε2}`, `c2 = c_{ε1−ε3}`, `c3 = c_{ε2−ε3}`.
pub fn su3_json(c1: f64, c2: f64, c3: f64) -> Result<String, String> {
    let coefficients = su3_coefficients(c1, c2, c3).map_err(|e| e.to_string())?;
    let real = SuRealization::new(2).map_err(|e| e.to_string())?;
    let eps = real.eps_roots();
    let labels = eps.iter().flat_map(|r| [format!("U{r}"), format!("V{r}")]).collect();
    let n = real.basis().len();
    let mut u_norms = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let u = u_su3(&real, c1, c2, c3, &MVector::unit(n, i), &MVector::unit(n, j)).map_err(|e| e.to_string())?;
            u_norms.push(norm(&u));
        }
    }
    Ok(to_json(&Su3View {
        coefficients,
        labels,
        u_norms,
    }))
}

#[wasm_bindgen(js_name = rootSystem)]
pub fn root_system(family: &str, rank: usize) -> Result<String, JsValue> {
    root_system_json(family, rank).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn connection(family: &str, rank: usize, coeffs: Vec<f64>) -> Result<String, JsValue> {
    connection_json(family, rank, &coeffs).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn su3(c1: f64, c2: f64, c3: f64) -> Result<String, JsValue> {
    su3_json(c1, c2, c3).map_err(|e| JsValue::from_str(&e))
}
