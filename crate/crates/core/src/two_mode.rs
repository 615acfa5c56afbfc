//! Two-electrode bosonic Hamiltonian in the fixed-total-number sector.
//!
//! With `n₁ = k` pairs on the island and `n₂ = N − k` in the reservoir,
//!
//! ```text
//! H = E_C (n₁ − n̄₁)² + (U/2)(n₁ − n₂) + (λ/2)(a₁a₂† + a₁†a₂)
//! ```
//!
//! is tridiagonal in `k = 0..=N`: the charging and bias terms are diagonal and
//! the tunneling term couples `k − 1 ↔ k` with amplitude `(λ/2)·√(k(N−k+1))`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tridiag::{eigen_lowest, Spectrum, TridiagMatrix};

const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoModeParams {
    /// Charging energy `E_C`.
    pub e_c: f64,
    /// Bias potential `U` between the electrodes.
    pub u: f64,
    /// Tunneling amplitude `λ`.
    pub lambda: f64,
    /// Total number of pairs `N = n₁ + n₂`.
    pub n_total: u64,
    /// Background island occupation `n̄₁` of the neutral reference state.
    pub n_bar1: f64,
}

impl TwoModeParams {
    pub fn validate(&self) -> Result<()> {
        if self.n_total == 0 {
            return Err(Error::InvalidParams("n_total must be at least 1".into()));
        }
        if !(self.e_c.is_finite() && self.u.is_finite() && self.lambda.is_finite() && self.n_bar1.is_finite()) {
            return Err(Error::InvalidParams("parameters must be finite".into()));
        }
        if self.e_c <= 0.0 {
            return Err(Error::InvalidParams(format!("e_c must be positive, got {}", self.e_c)));
        }
        if self.n_bar1 < 0.0 {
            return Err(Error::InvalidParams(format!("n_bar1 must be nonnegative, got {}", self.n_bar1)));
        }
        Ok(())
    }

    /// Soft check: a background occupation above `N` is accepted here but
    /// has no real Josephson-energy mapping.
    pub fn background_exceeds_total(&self) -> bool {
        self.n_bar1 > self.n_total as f64
    }

    pub fn dim(&self) -> usize {
        self.n_total as usize + 1
    }
}

/// Amplitudes over the occupation basis; index `k` means `n₁ = k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FockVector {
    amplitudes: Vec<f64>,
}

impl FockVector {
    pub fn new(amplitudes: Vec<f64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        let norm = amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { amplitudes })
    }

    /// Wraps amplitudes the caller has already normalized (numerically
    /// generated states whose norm error is checked elsewhere).
    pub(crate) fn from_normalized(amplitudes: Vec<f64>) -> Self {
        Self { amplitudes }
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn n_total(&self) -> u64 {
        self.amplitudes.len() as u64 - 1
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn dot(&self, other: &FockVector) -> Result<f64> {
        if self.amplitudes.len() != other.amplitudes.len() {
            return Err(Error::DimensionMismatch {
                expected: self.amplitudes.len(),
                found: other.amplitudes.len(),
            });
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a * b).sum())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoModeObservables {
    pub mean_n1: f64,
    pub var_n1: f64,
    /// `⟨a₁†a₂⟩`, real for real amplitudes.
    pub coherence: f64,
}

fn tunneling(k: u64, n: u64) -> f64 {
    ((k as f64) * ((n - k + 1) as f64)).sqrt()
}

pub fn build_two_mode(params: &TwoModeParams) -> Result<TridiagMatrix> {
    params.validate()?;
    let n = params.n_total;
    let nf = n as f64;
    let diag = (0..=n)
        .map(|k| {
            let kf = k as f64;
            params.e_c * (kf - params.n_bar1).powi(2) + 0.5 * params.u * (2.0 * kf - nf)
        })
        .collect();
    let offdiag = (1..=n).map(|k| 0.5 * params.lambda * tunneling(k, n)).collect();
    TridiagMatrix::new(diag, offdiag)
}

pub fn two_mode_observables(params: &TwoModeParams, state: &FockVector) -> Result<TwoModeObservables> {
    let n = params.n_total;
    let amps = state.amplitudes();
    if amps.len() as u64 != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: (n + 1) as usize,
            found: amps.len(),
        });
    }
    let mut mean = 0.0;
    let mut second = 0.0;
    for (k, a) in amps.iter().enumerate() {
        let p = a * a;
        mean += k as f64 * p;
        second += (k as f64).powi(2) * p;
    }
    let coherence = amps
        .windows(2)
        .enumerate()
        .map(|(k, w)| w[0] * w[1] * tunneling(k as u64 + 1, n))
        .sum();
    Ok(TwoModeObservables {
        mean_n1: mean,
        var_n1: (second - mean * mean).max(0.0),
        coherence,
    })
}

pub fn two_mode_spectrum(params: &TwoModeParams, k_levels: usize) -> Result<Spectrum> {
    let m = build_two_mode(params)?;
    if k_levels == 0 || k_levels > m.dim() {
        return Err(Error::InvalidParams(format!(
            "k_levels must lie in 1..={}, got {k_levels}",
            m.dim()
        )));
    }
    eigen_lowest(&m, k_levels)
}

/// Ground state of the sector as a [`FockVector`].
///
/// For `λ ≠ 0` the ground state is nondegenerate and, after the gauge
/// `k ↦ (−1)ᵏ` when `λ > 0`, has strictly positive amplitudes. That sign
/// pattern is imposed on the result, so tail amplitudes below roundoff
/// never carry a spurious sign.
pub fn two_mode_ground_state(params: &TwoModeParams) -> Result<(f64, FockVector)> {
    let s = two_mode_spectrum(params, 1)?;
    let mut v = s.eigenvectors.expect("eigen_lowest returns vectors").swap_remove(0);
    if params.lambda != 0.0 {
        let gauge = |k: usize| if params.lambda > 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
        let peak = (0..v.len()).max_by(|&a, &b| v[a].abs().total_cmp(&v[b].abs())).unwrap_or(0);
        let global = (v[peak] * gauge(peak)).signum();
        v.iter_mut().enumerate().for_each(|(k, x)| *x = global * gauge(k) * x.abs());
    }
    Ok((s.eigenvalues[0], FockVector::from_normalized(v)))
}
