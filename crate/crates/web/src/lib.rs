//! Browser bindings: the three operations of the demo page, each taking and
//! returning plain strings so the page needs no glue beyond wasm-bindgen.

use holo24::affine::{module_table_text, HVector, ProductAlgebra};
use holo24::orbifold::fixed_subalgebra as fixed;
use holo24::qseries::{character_fit, dimension_identities};
use holo24::rational::parse_q;
use holo24::rootsys::SimpleType;
use wasm_bindgen::prelude::*;

fn parse_ideal(s: &str) -> Result<(SimpleType, u32), String> {
    let (t, k) = s.trim().split_once(':').ok_or_else(|| format!("expected TYPE:LEVEL, got {s:?}"))?;
    let t: SimpleType = t.trim().parse().map_err(|e| format!("{e}"))?;
    let k: u32 = k.trim().parse().map_err(|_| format!("bad level in {s:?}"))?;
    Ok((t, k))
}

/// Parses `1,0,0,0,0,-1 | 0,1 | 0,1 | 0,0`, one group per factor.
fn parse_h(text: &str) -> Result<Vec<Vec<i64>>, String> {
    text.split('|')
        .map(|g| {
            g.split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<i64>().map_err(|_| format!("bad coefficient {x:?}")))
                .collect()
        })
        .collect()
}

/// Dominant highest weights of level `k` and their conformal weights, one
/// per line.
#[wasm_bindgen]
pub fn module_table(ideal: &str) -> Result<String, String> {
    let (t, k) = parse_ideal(ideal)?;
    module_table_text(t, k).map_err(|e| e.to_string())
}

/// Fixed-point subalgebra of the inner involution `exp(2πi h)`, where
/// `h = scale · coeffs` in fundamental-weight coordinates.
#[wasm_bindgen]
pub fn fixed_subalgebra(ambient: &str, scale: &str, coeffs: &str) -> Result<String, String> {
    let a: ProductAlgebra = ambient.parse().map_err(|e| format!("ambient: {e}"))?;
    let s = parse_q(scale).map_err(|e| format!("scale: {e}"))?;
    let h = HVector::from_scaled(&s, &parse_h(coeffs)?);
    let hh = a.hh(&h).map_err(|e| e.to_string())?;
    let (shape, seeds) = fixed(&a, &h).map_err(|e| e.to_string())?;
    let mut out = format!("(h|h) = {hh}\nfixed: {shape}\ndim: {}\n", shape.dim());
    for sd in &seeds {
        let side = if sd.long_in_ambient { "long" } else { "short" };
        out.push_str(&format!("  {}:{} ({} roots, {side})\n", sd.ty, sd.level, sd.roots.len()));
    }
    Ok(out)
}

/// `dim Ṽ_1`, `dim (V^g)_2` and the first coefficients of the fixed-point
/// character.
#[wasm_bindgen]
pub fn dimension_formula(dim_v1: u32, dim_g1: u32, dim_half: u32) -> Result<String, String> {
    let d = dimension_identities(dim_v1.into(), dim_g1.into(), dim_half.into()).map_err(|e| e.to_string())?;
    let fit = character_fit(dim_g1.into(), dim_half.into(), 4).map_err(|e| e.to_string())?;
    let mut out = format!(
        "dim Ṽ_1 = {}\ndim (V^g)_2 = {}\nc0 = {}, c_-1 = {}\n",
        d.dim_tilde1, d.dim_g2, fit.c0, fit.c_minus1
    );
    // Exponents are stored in half-units.
    for n in [-1, 0, 1] {
        let c = fit.series.coeff(2 * n).map_err(|e| e.to_string())?;
        out.push_str(&format!("  q^{n}: {c}\n"));
    }
    Ok(out)
}
