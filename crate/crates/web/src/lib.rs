//! WebAssembly bindings for the browser demo. Every export returns a JSON
//! string so the page needs no generated types.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use cpb_core::condensate::{cone_scan as scan, overlap_asymptotic, overlap_exact, CondensateConfig};
use cpb_core::effective::{charge_dispersion_sweep, qubit_states, EffectiveParams};

fn to_json<T: Serialize>(value: &T) -> Result<String, JsError> {
    serde_json::to_string(value).map_err(|e| JsError::new(&e.to_string()))
}

fn core_err(e: cpb_core::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[derive(Serialize)]
struct Dispersion {
    ng: Vec<f64>,
    /// `levels[j][i]` is level `j` at `ng[i]`.
    levels: Vec<Vec<f64>>,
}

/// Lowest `levels` energies over `steps` gate charges in [-1, 1].
#[wasm_bindgen]
pub fn charge_dispersion(ec: f64, ej: f64, steps: usize, levels: usize) -> Result<String, JsError> {
    let steps = steps.max(2);
    let grid: Vec<f64> = (0..steps).map(|i| -1.0 + 2.0 * i as f64 / (steps - 1) as f64).collect();
    let rows = charge_dispersion_sweep(&EffectiveParams::new(ec, ej, 0.0), &grid, levels).map_err(core_err)?;
    let mut out = Dispersion {
        ng: grid,
        levels: vec![Vec::with_capacity(steps); levels],
    };
    for r in rows {
        for (j, e) in r.energies.into_iter().enumerate() {
            out.levels[j].push(e);
        }
    }
    to_json(&out)
}

#[derive(Serialize)]
struct Cone {
    delta_n: Vec<f64>,
    exact: Vec<f64>,
    asymptotic: Vec<f64>,
    /// First grid point below 1/2, if any.
    half_width: Option<f64>,
}

/// Condensate overlap against charge difference, `steps` points in
/// `[0, delta_max]`.
#[wasm_bindgen]
pub fn cone_scan(n_total: f64, n1: f64, delta_max: f64, steps: usize) -> Result<String, JsError> {
    if !(n_total >= 1.0 && n_total <= u64::MAX as f64) {
        return Err(JsError::new("n_total must be at least 1"));
    }
    let steps = steps.max(2);
    let grid: Vec<f64> = (0..steps).map(|i| delta_max * i as f64 / (steps - 1) as f64).collect();
    let s = scan(n_total as u64, n1, &grid, &[0.5]).map_err(core_err)?;
    to_json(&Cone {
        delta_n: s.rows.iter().map(|r| r.delta_n).collect(),
        exact: s.rows.iter().map(|r| r.overlap_exact).collect(),
        asymptotic: s.rows.iter().map(|r| r.overlap_asymptotic).collect(),
        half_width: s.crossings[0].delta_n,
    })
}

#[derive(Serialize)]
struct Contrast {
    e0: f64,
    e1: f64,
    n_max: usize,
    effective_overlap: f64,
    delta_n: f64,
    condensate_overlap_exact: f64,
    condensate_overlap_asymptotic: f64,
    /// Charge values `-n_max..=n_max`.
    charges: Vec<i64>,
    /// Squared amplitudes of the two qubit states.
    p0: Vec<f64>,
    p1: Vec<f64>,
}

/// Qubit states of the charge-basis model and the overlap of the matching
/// condensate product states with `n1` pairs on the island out of `n_total`.
#[wasm_bindgen]
pub fn qubit_contrast(ec: f64, ej: f64, ng: f64, n_total: f64, n1: f64) -> Result<String, JsError> {
    if !(n_total >= 1.0 && n_total <= u64::MAX as f64) {
        return Err(JsError::new("n_total must be at least 1"));
    }
    let q = qubit_states(&EffectiveParams::new(ec, ej, ng)).map_err(core_err)?;
    let cfg = CondensateConfig::new(n_total as u64, n1, q.delta_n).map_err(core_err)?;
    let n_max = q.n_max as i64;
    to_json(&Contrast {
        e0: q.e0,
        e1: q.e1,
        n_max: q.n_max,
        effective_overlap: q.overlap(),
        delta_n: q.delta_n,
        condensate_overlap_exact: overlap_exact(&cfg).overlap,
        condensate_overlap_asymptotic: overlap_asymptotic(&cfg).overlap,
        charges: (-n_max..=n_max).collect(),
        p0: q.v0.iter().map(|a| a * a).collect(),
        p1: q.v1.iter().map(|a| a * a).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dispersion_shape() {
        let s = charge_dispersion(1.0, 0.0, 5, 2).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["ng"].as_array().unwrap().len(), 5);
        assert_eq!(v["levels"][0][2].as_f64(), Some(0.0));
        assert_eq!(v["levels"][1][2].as_f64(), Some(1.0));
    }

    #[test]
    fn cone_half_width() {
        let s = cone_scan(1e8, 1e4, 1000.0, 11).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["exact"][0].as_f64(), Some(1.0));
        assert_eq!(v["half_width"].as_f64(), Some(300.0));
    }

    #[test]
    fn contrast_at_degenerate_sweet_spot() {
        let s = qubit_contrast(1.0, 0.0, 0.5, 1e6, 1e4).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["delta_n"].as_f64(), Some(1.0));
        let p0: Vec<f64> = serde_json::from_value(v["p0"].clone()).unwrap();
        assert!((p0.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}
