//! Mapping from the two-mode Hamiltonian to the effective charge-basis
//! model, and the comparison between the two pictures.
//!
//! Treating `a₁, a₂` as classical amplitudes around `n₁ ≈ n̄₁` gives
//!
//! ```text
//! E_J = −(λ/2)·√((N − n̄₁)·n̄₁),    n_g = −U / (2 E_C)
//! ```
//!
//! up to a constant energy, so only gaps are compared.

use serde::Serialize;

use crate::condensate::{overlap_asymptotic, overlap_exact, CondensateConfig};
use crate::effective::{effective_spectrum, qubit_states, EffectiveParams};
use crate::error::{Error, Result};
use crate::two_mode::{two_mode_ground_state, two_mode_observables, two_mode_spectrum, TwoModeParams};

/// Number of gaps the contrast pipeline tabulates (capped by `N`).
pub const PIPELINE_GAP_LEVELS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Validity {
    /// Ground-state spread `√Var(n₁)` of the island occupation.
    pub n_scale: f64,
    /// `n_scale / min(n̄₁, N − n̄₁)`; small when `n ≪ n₁, n₂`.
    pub ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BridgeMap {
    pub e_j: f64,
    pub n_g: f64,
    pub validity: Option<Validity>,
}

impl BridgeMap {
    pub fn effective(&self, e_c: f64) -> EffectiveParams {
        EffectiveParams::new(e_c, self.e_j, self.n_g)
    }
}

fn check_background(p: &TwoModeParams) -> Result<()> {
    p.validate()?;
    let n = p.n_total as f64;
    if (n - p.n_bar1) * p.n_bar1 < 0.0 {
        return Err(Error::InvalidParams(format!(
            "n_bar1 = {} must lie in [0, {}] for a real Josephson energy",
            p.n_bar1, p.n_total
        )));
    }
    Ok(())
}

pub fn map_parameters(p: &TwoModeParams, with_validity: bool) -> Result<BridgeMap> {
    check_background(p)?;
    let n = p.n_total as f64;
    let e_j = -0.5 * p.lambda * ((n - p.n_bar1) * p.n_bar1).sqrt();
    let n_g = -p.u / (2.0 * p.e_c);
    let validity = if with_validity {
        let (_, ground) = two_mode_ground_state(p)?;
        let obs = two_mode_observables(p, &ground)?;
        let n_scale = obs.var_n1.sqrt();
        Some(Validity {
            n_scale,
            ratio: n_scale / p.n_bar1.min(n - p.n_bar1),
        })
    } else {
        None
    };
    Ok(BridgeMap { e_j, n_g, validity })
}

/// Tunneling amplitude `λ` that maps onto the given `E_J`.
pub fn lambda_for_josephson(e_j: f64, n_total: u64, n_bar1: f64) -> Result<f64> {
    let root = ((n_total as f64 - n_bar1) * n_bar1).sqrt();
    if !(root > 0.0) {
        return Err(Error::InvalidParams(format!(
            "n_bar1 = {n_bar1} must lie strictly inside (0, {n_total})"
        )));
    }
    Ok(-2.0 * e_j / root)
}

/// Bias `U` that maps onto the given gate charge.
pub fn bias_for_gate_charge(n_g: f64, e_c: f64) -> f64 {
    -2.0 * e_c * n_g
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapRow {
    pub level: usize,
    pub gap_two_mode: f64,
    pub gap_effective: f64,
    pub rel_discrepancy: f64,
}

fn relative(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

/// Gaps `E_j − E_0`, `j = 1..=k_levels`, of the two-mode sector and of the
/// mapped effective model (AUTO truncation).
pub fn compare_spectra(p: &TwoModeParams, k_levels: usize) -> Result<Vec<GapRow>> {
    if k_levels == 0 {
        return Err(Error::InvalidParams("k_levels must be positive".into()));
    }
    if k_levels + 1 > p.dim() {
        return Err(Error::InvalidParams(format!(
            "k_levels + 1 = {} exceeds the sector dimension {}",
            k_levels + 1,
            p.dim()
        )));
    }
    let map = map_parameters(p, false)?;
    let two_mode = two_mode_spectrum(p, k_levels + 1)?.eigenvalues;
    let (_, eff) = effective_spectrum(&map.effective(p.e_c), k_levels + 1)?;
    let eff = eff.eigenvalues;
    Ok((1..=k_levels)
        .map(|j| {
            let gap_two_mode = two_mode[j] - two_mode[0];
            let gap_effective = eff[j] - eff[0];
            GapRow {
                level: j,
                gap_two_mode,
                gap_effective,
                rel_discrepancy: relative(gap_two_mode, gap_effective),
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContrastReport {
    pub e_j: f64,
    pub n_g: f64,
    pub validity: Option<Validity>,
    pub e0: f64,
    pub e1: f64,
    /// `|⟨v0, v1⟩|` of the effective-model qubit states.
    pub effective_overlap: f64,
    pub delta_n: f64,
    pub n_total: u64,
    pub n1_for_overlap: f64,
    pub condensate_overlap_exact: f64,
    pub condensate_log_overlap_exact: f64,
    pub condensate_overlap_asymptotic: f64,
    pub gap_table: Vec<GapRow>,
}

/// Qubit states of the mapped effective model, their charge separation,
/// and the overlap of the corresponding condensate product states with
/// `N₁ = n1_for_overlap` pairs on the island.
pub fn contrast_pipeline(p: &TwoModeParams, n1_for_overlap: f64) -> Result<ContrastReport> {
    let map = map_parameters(p, true)?;
    let qubit = qubit_states(&map.effective(p.e_c))?;
    let cfg = CondensateConfig::new(p.n_total, n1_for_overlap, qubit.delta_n)?;
    let exact = overlap_exact(&cfg);
    let asymptotic = overlap_asymptotic(&cfg);
    let gap_table = compare_spectra(p, PIPELINE_GAP_LEVELS.min(p.n_total as usize))?;
    Ok(ContrastReport {
        e_j: map.e_j,
        n_g: map.n_g,
        validity: map.validity,
        e0: qubit.e0,
        e1: qubit.e1,
        effective_overlap: qubit.overlap(),
        delta_n: qubit.delta_n,
        n_total: p.n_total,
        n1_for_overlap,
        condensate_overlap_exact: exact.overlap,
        condensate_log_overlap_exact: exact.log_overlap,
        condensate_overlap_asymptotic: asymptotic.overlap,
        gap_table,
    })
}
