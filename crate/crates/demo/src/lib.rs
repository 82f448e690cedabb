//! WebAssembly bindings behind `www/index.html`.
//!
//! Every export returns a flat `Float64Array`; the page knows the row width.
//! The plain Rust functions are what the native tests exercise.

use uncert::bounds::overlap_bound;
use uncert::channels::Basis;
use uncert::gallery::figures::{fig5_row, fig7_grid, fig7_row};
use uncert::measures::complementarity;
use uncert::numerics::ComplexMatrix;
use wasm_bindgen::prelude::*;

/// Width of an [`mz_point`] row.
pub const MZ_WIDTH: usize = 5;
/// Width of a [`gaussian_curves`] row.
pub const GAUSSIAN_WIDTH: usize = 4;

/// `[theta, eps, nu, nu_bound(eps), eta_bound(eps)]` for the Mach-Zehnder
/// apparatus at phase `theta`.
pub fn mz_point(theta: f64) -> Result<Vec<f64>, String> {
    if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&theta) {
        return Err(format!("theta must lie in [0, pi/2], got {theta}"));
    }
    fig5_row(theta).map_err(|e| e.to_string())
}

/// Rows `[c, sigma_q sigma_p, measurement, preparation]` on a log grid in `c`.
pub fn gaussian_curves(grid: usize) -> Result<Vec<f64>, String> {
    if !(2..=2001).contains(&grid) {
        return Err(format!("grid must be between 2 and 2001, got {grid}"));
    }
    let mut out = Vec::with_capacity(grid * GAUSSIAN_WIDTH);
    for c in fig7_grid(grid) {
        out.extend(fig7_row(c).map_err(|e| e.to_string())?);
    }
    Ok(out)
}

/// `[c_m, c_p, c_p_hat, overlap_bound]` for the computational basis against
/// the real basis rotated by `angle` on the Bloch circle.
pub fn qubit_complementarity(angle: f64) -> Result<Vec<f64>, String> {
    if !angle.is_finite() {
        return Err("angle must be finite".into());
    }
    let (c, s) = ((angle / 2.0).cos(), (angle / 2.0).sin());
    let err = |e: uncert::Error| e.to_string();
    let u = ComplexMatrix::from_real(2, 2, &[c, -s, s, c]).map_err(err)?;
    let x = Basis::from_unitary("X", &u).map_err(err)?;
    let z = Basis::computational(2);
    let r = complementarity(&x, &z).map_err(err)?;
    Ok(vec![r.c_m.value, r.c_p.value, r.c_p_hat.value, overlap_bound(&x, &z).map_err(err)?])
}

fn js(r: Result<Vec<f64>, String>) -> Result<Vec<f64>, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = mzPoint)]
pub fn mz_point_js(theta: f64) -> Result<Vec<f64>, JsError> {
    js(mz_point(theta))
}

#[wasm_bindgen(js_name = gaussianCurves)]
pub fn gaussian_curves_js(grid: usize) -> Result<Vec<f64>, JsError> {
    js(gaussian_curves(grid))
}

#[wasm_bindgen(js_name = qubitComplementarity)]
pub fn qubit_complementarity_js(angle: f64) -> Result<Vec<f64>, JsError> {
    js(qubit_complementarity(angle))
}
