//! Browser bindings for the `www/` demo page.
//!
//! Each export wraps a plain function that returns `Result<_, String>`, so
//! the logic is testable off the wasm target.

use lsqlab::lattice::analyze;
use lsqlab::semigroup::{
    f_four, four_square_membership, frobenius_gamma, gamma_membership_table, sylvester_frobenius,
    DEFAULT_FACTOR,
};
use wasm_bindgen::prelude::*;

/// Largest n the page will analyze; enumeration is cubic in √n.
pub const ANALYZE_MAX: u32 = 1_000_000;
/// Largest n for the semigroup views.
pub const SEMIGROUP_MAX: u32 = 120;

fn check(n: u32, lo: u32, hi: u32) -> Result<u64, String> {
    if (lo..=hi).contains(&n) {
        Ok(n as u64)
    } else {
        Err(format!("n must be between {lo} and {hi}, got {n}"))
    }
}

/// Text report: min K, l_max, representation count, then the witnesses.
pub fn analysis_report(n: u32) -> Result<String, String> {
    let a = analyze(check(n, 1, ANALYZE_MAX)?).map_err(|e| e.to_string())?;
    let mut out = format!(
        "n = {}\nmin K = {}\nl_max = {}\nrepresentations = {}\nfour nonzero parts: {}\nwitnesses:\n",
        a.n,
        a.min_k,
        a.l_max,
        a.reps.len(),
        if a.has_four_nonzero { "yes" } else { "no" }
    );
    for q in &a.witnesses {
        out.push_str(&format!("  {q}\n"));
    }
    Ok(out)
}

/// Frobenius data for n and a membership strip over `0..=F(Γₙ) + n²`.
///
/// The first three entries of the result are `F(Γₙ)`, `F(n)` and the
/// Sylvester bound; the rest is one code per m: 0 not in Γₙ, 1 in Γₙ only,
/// 2 a sum of at most four squares `>= n²`.
pub fn semigroup_strip(n: u32) -> Result<Vec<u32>, String> {
    let n = check(n, 2, SEMIGROUP_MAX)?;
    let err = |e: lsqlab::Error| e.to_string();
    let gamma = frobenius_gamma(n).map_err(err)?;
    let four = f_four(n, DEFAULT_FACTOR).map_err(err)?;
    let syl = sylvester_frobenius(n).map_err(err)?;
    let end = gamma.certified_bound;
    let g = gamma_membership_table(n, end).map_err(err)?;
    let f = four_square_membership(n, end).map_err(err)?;
    let mut out = vec![gamma.frobenius as u32, four.largest_gap as u32, syl as u32];
    out.extend((0..=end).map(|m| match (g.get(m), f.get(m)) {
        (_, true) => 2,
        (true, false) => 1,
        _ => 0,
    }));
    Ok(out)
}

/// Rows `n, F(Γₙ), F(n), 46n², 64n²` for `n = 2..=max_n`, flattened.
pub fn figure1_points(max_n: u32) -> Result<Vec<f64>, String> {
    let max_n = check(max_n, 2, SEMIGROUP_MAX)?;
    let err = |e: lsqlab::Error| e.to_string();
    let mut out = Vec::with_capacity(5 * max_n as usize);
    for n in 2..=max_n {
        let fg = frobenius_gamma(n).map_err(err)?.frobenius;
        let f4 = f_four(n, DEFAULT_FACTOR).map_err(err)?.largest_gap;
        out.extend([n, fg, f4, 46 * n * n, 64 * n * n].map(|v| v as f64));
    }
    Ok(out)
}

#[wasm_bindgen(js_name = analyze)]
pub fn analyze_js(n: u32) -> Result<String, JsError> {
    analysis_report(n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = semigroupStrip)]
pub fn semigroup_strip_js(n: u32) -> Result<Vec<u32>, JsError> {
    semigroup_strip(n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = figure1Points)]
pub fn figure1_points_js(max_n: u32) -> Result<Vec<f64>, JsError> {
    figure1_points(max_n).map_err(|e| JsError::new(&e))
}
