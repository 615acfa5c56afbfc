//! Condensate product states and their overlaps.
//!
//! The two qubit states of the many-particle picture are N-fold tensor powers
//! of single-pair states
//!
//! ```text
//! ψ± = √((N₁ ± δN/2)/N) φ₁ + √((N₂ ∓ δN/2)/N) φ₂
//! ```
//!
//! with orthonormal mode functions φ₁, φ₂, so `⟨Ψ₋|Ψ₊⟩ = sᴺ` where `s` is the
//! single-pair overlap. For `N₁ ≪ N₂` this is close to `exp(−δN²/(8N₁))`.
//!
//! Only occupations enter, so the mode functions are never represented.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::two_mode::FockVector;

/// Largest particle number accepted by [`fock_embedding`].
pub const MAX_EMBED_N: u64 = 1_000_000;
/// Overlaps with a smaller natural log are reported as exactly zero.
pub const UNDERFLOW_LOG: f64 = -745.0;

const AMP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CondensateConfig {
    n_total: u64,
    n1: f64,
    delta_n: f64,
}

impl CondensateConfig {
    pub fn new(n_total: u64, n1: f64, delta_n: f64) -> Result<Self> {
        if n_total == 0 {
            return Err(Error::InvalidConfig("n_total must be at least 1".into()));
        }
        if !(n1.is_finite() && delta_n.is_finite()) {
            return Err(Error::InvalidConfig("n1 and delta_n must be finite".into()));
        }
        if n1 <= 0.0 {
            return Err(Error::InvalidConfig(format!("n1 must be positive, got {n1}")));
        }
        if delta_n < 0.0 {
            return Err(Error::InvalidConfig(format!("delta_n must be nonnegative, got {delta_n}")));
        }
        let half = 0.5 * delta_n;
        let n2 = n_total as f64 - n1;
        if n1 - half < 0.0 || n2 - half < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "occupations must stay nonnegative: n1 = {n1}, n2 = {n2}, delta_n = {delta_n}"
            )));
        }
        Ok(Self { n_total, n1, delta_n })
    }

    pub fn n_total(&self) -> u64 {
        self.n_total
    }

    pub fn n1(&self) -> f64 {
        self.n1
    }

    pub fn n2(&self) -> f64 {
        self.n_total as f64 - self.n1
    }

    pub fn delta_n(&self) -> f64 {
        self.delta_n
    }

    /// Single-pair amplitudes of `Ψ₋` (`sign = -1`) or `Ψ₊` (`sign = +1`).
    pub fn amps(&self, sign: i8) -> SingleParticleAmps {
        let n = self.n_total as f64;
        let shift = 0.5 * self.delta_n * f64::from(sign.signum());
        SingleParticleAmps::from_occupation(self.n1 + shift, n)
    }
}

/// `c₁φ₁ + c₂φ₂` with `c₁² + c₂² = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingleParticleAmps {
    c1: f64,
    c2: f64,
}

impl SingleParticleAmps {
    pub fn new(c1: f64, c2: f64) -> Result<Self> {
        if !(c1.is_finite() && c2.is_finite()) {
            return Err(Error::InvalidAmps("amplitudes must be finite".into()));
        }
        let norm2 = c1 * c1 + c2 * c2;
        if (norm2 - 1.0).abs() > AMP_TOL {
            return Err(Error::InvalidAmps(format!("c1² + c2² = {norm2}, expected 1")));
        }
        Ok(Self { c1, c2 })
    }

    /// `(√(occupation/N), √(1 − occupation/N))`.
    fn from_occupation(occupation: f64, n: f64) -> Self {
        let p = (occupation / n).clamp(0.0, 1.0);
        Self {
            c1: p.sqrt(),
            c2: ((n - occupation).max(0.0) / n).sqrt(),
        }
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }
}

/// Overlap `s` of the two single-pair factors.
pub fn single_particle_overlap(cfg: &CondensateConfig) -> f64 {
    let n = cfg.n_total as f64;
    let h = 0.5 * cfg.delta_n;
    let (n1, n2) = (cfg.n1, cfg.n2());
    (((n1 - h) * (n1 + h)).sqrt() + ((n2 - h) * (n2 + h)).sqrt()) / n
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExactOverlap {
    pub overlap: f64,
    pub log_overlap: f64,
}

/// `⟨Ψ₋|Ψ₊⟩ = sᴺ`, evaluated as `N·log1p(s − 1)` with the deficit `1 − s`
/// formed without cancellation.
pub fn overlap_exact(cfg: &CondensateConfig) -> ExactOverlap {
    let h = 0.5 * cfg.delta_n;
    if h == 0.0 {
        return ExactOverlap {
            overlap: 1.0,
            log_overlap: 0.0,
        };
    }
    let n = cfg.n_total as f64;
    // N_i − √(N_i² − h²) = h² / (N_i + √(N_i² − h²))
    let gap = |ni: f64| h * h / (ni + ((ni - h) * (ni + h)).sqrt());
    let deficit = gap(cfg.n1) + gap(cfg.n2());
    let log_overlap = n * (-deficit / n).ln_1p();
    let overlap = if log_overlap < UNDERFLOW_LOG { 0.0 } else { log_overlap.exp() };
    ExactOverlap { overlap, log_overlap }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticOverlap {
    /// `exp(−δN²/(8N₁))`
    pub overlap: f64,
    /// `1 − δN²/(8N₁)`; may be negative far outside its range of validity.
    pub linearized: f64,
}

pub fn overlap_asymptotic(cfg: &CondensateConfig) -> AsymptoticOverlap {
    let x = cfg.delta_n * cfg.delta_n / (8.0 * cfg.n1);
    AsymptoticOverlap {
        overlap: (-x).exp(),
        linearized: 1.0 - x,
    }
}

/// Expands `⊗ᴺ(c₁φ₁ + c₂φ₂)` in the occupation basis: the amplitude at
/// `n₁ = k` is `√C(N,k)·c₁ᵏ·c₂ᴺ⁻ᵏ`, computed as the square root of a
/// binomial probability in log space.
pub fn fock_embedding(n_total: u64, amps: &SingleParticleAmps) -> Result<FockVector> {
    if n_total > MAX_EMBED_N {
        return Err(Error::SizeLimit {
            n: n_total,
            limit: MAX_EMBED_N,
        });
    }
    let (c1, c2) = (amps.c1, amps.c2);
    let w = c1 * c1 + c2 * c2;
    let p = c1 * c1 / w;
    let q = c2 * c2 / w;
    let amplitudes = (0..=n_total)
        .map(|k| {
            let log_pmf = binomial_log_pmf(k, n_total, p, q);
            let mut a = (0.5 * log_pmf).exp();
            if (c1 < 0.0 && k % 2 == 1) ^ (c2 < 0.0 && (n_total - k) % 2 == 1) {
                a = -a;
            }
            a
        })
        .collect();
    Ok(FockVector::from_normalized(amplitudes))
}

/// Both qubit states of `cfg` in the occupation basis.
pub fn embed_pair(cfg: &CondensateConfig) -> Result<(FockVector, FockVector)> {
    Ok((
        fock_embedding(cfg.n_total, &cfg.amps(-1))?,
        fock_embedding(cfg.n_total, &cfg.amps(1))?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConeRow {
    pub delta_n: f64,
    pub overlap_exact: f64,
    pub log_overlap_exact: f64,
    pub overlap_asymptotic: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdCrossing {
    pub threshold: f64,
    /// Smallest grid `δN` whose exact overlap falls below the threshold.
    pub delta_n: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConeScan {
    pub rows: Vec<ConeRow>,
    pub crossings: Vec<ThresholdCrossing>,
}

/// Overlaps over a grid of charge differences at fixed `N`, `N₁`.
pub fn cone_scan(n_total: u64, n1: f64, delta_grid: &[f64], thresholds: &[f64]) -> Result<ConeScan> {
    if let Some(t) = thresholds.iter().find(|t| !(**t > 0.0 && **t < 1.0)) {
        return Err(Error::InvalidConfig(format!("threshold {t} is outside (0, 1)")));
    }
    let rows = delta_grid
        .iter()
        .map(|&delta_n| {
            let cfg = CondensateConfig::new(n_total, n1, delta_n)?;
            let exact = overlap_exact(&cfg);
            Ok(ConeRow {
                delta_n,
                overlap_exact: exact.overlap,
                log_overlap_exact: exact.log_overlap,
                overlap_asymptotic: overlap_asymptotic(&cfg).overlap,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let crossings = thresholds
        .iter()
        .map(|&threshold| ThresholdCrossing {
            threshold,
            delta_n: rows
                .iter()
                .filter(|r| r.overlap_exact < threshold)
                .map(|r| r.delta_n)
                .min_by(f64::total_cmp),
        })
        .collect();
    Ok(ConeScan { rows, crossings })
}

const LN_2PI: f64 = 1.837_877_066_409_345_5;
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// `ln n! − [(n + ½) ln n − n + ln √(2π)]` for integer `n ≥ 1`.
fn stirling_error(n: u64) -> f64 {
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const S4: f64 = 1.0 / 1188.0;
    let x = n as f64;
    if n <= 15 {
        let ln_fact: f64 = (2..=n).map(|i| (i as f64).ln()).sum();
        return ln_fact - (x + 0.5) * x.ln() + x - LN_SQRT_2PI;
    }
    let nn = x * x;
    if n > 500 {
        (S0 - S1 / nn) / x
    } else if n > 80 {
        (S0 - (S1 - S2 / nn) / nn) / x
    } else if n > 35 {
        (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / x
    } else {
        (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / x
    }
}

/// Deviance term `x ln(x/m) + m − x`, accurate when `x ≈ m`.
fn deviance(x: f64, m: f64) -> f64 {
    if (x - m).abs() < 0.1 * (x + m) {
        let mut v = (x - m) / (x + m);
        let mut s = (x - m) * v;
        let mut ej = 2.0 * x * v;
        v *= v;
        for j in 1..1000 {
            ej *= v;
            let s1 = s + ej / (2 * j + 1) as f64;
            if s1 == s {
                return s1;
            }
            s = s1;
        }
        s
    } else {
        x * (x / m).ln() + m - x
    }
}

/// Natural log of `C(n,k) pᵏ qⁿ⁻ᵏ` by the saddle-point expansion.
fn binomial_log_pmf(k: u64, n: u64, p: f64, q: f64) -> f64 {
    if p == 0.0 {
        return if k == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    if q == 0.0 {
        return if k == n { 0.0 } else { f64::NEG_INFINITY };
    }
    let nf = n as f64;
    if k == 0 {
        if n == 0 {
            return 0.0;
        }
        return if p < 0.1 { -deviance(nf, nf * q) - nf * p } else { nf * q.ln() };
    }
    if k == n {
        return if q < 0.1 { -deviance(nf, nf * p) - nf * q } else { nf * p.ln() };
    }
    let kf = k as f64;
    let lc = stirling_error(n) - stirling_error(k) - stirling_error(n - k) - deviance(kf, nf * p) - deviance(nf - kf, nf * q);
    let lf = LN_2PI + kf.ln() + (-kf / nf).ln_1p();
    lc - 0.5 * lf
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: u64, n1: f64, d: f64) -> CondensateConfig {
        CondensateConfig::new(n, n1, d).unwrap()
    }

    #[test]
    fn identical_states() {
        let c = cfg(10, 3.0, 0.0);
        assert_eq!(single_particle_overlap(&c), 1.0);
        assert_eq!(overlap_exact(&c), ExactOverlap { overlap: 1.0, log_overlap: 0.0 });
        assert_eq!(overlap_asymptotic(&c), AsymptoticOverlap { overlap: 1.0, linearized: 1.0 });
    }

    #[test]
    fn four_pair_example() {
        let c = cfg(4, 2.0, 2.0);
        let s = single_particle_overlap(&c);
        assert!((s - 3f64.sqrt() / 2.0).abs() < 1e-15);
        let e = overlap_exact(&c);
        assert!((e.overlap - 0.5625).abs() < 1e-15);
        assert!((e.log_overlap - 4.0 * (3f64.sqrt() / 2.0).ln()).abs() < 1e-15);
        let a = overlap_asymptotic(&c);
        assert!((a.overlap - (-0.25f64).exp()).abs() < 1e-15);
        let (m, p) = embed_pair(&c).unwrap();
        assert!((m.dot(&p).unwrap() - 0.5625).abs() < 1e-14);
    }

    #[test]
    fn boundary_first_root_vanishes() {
        // δN = 2N₁: Ψ₋ has no pair on the island.
        let (n, n1) = (10u64, 2.0);
        let c = cfg(n, n1, 2.0 * n1);
        let n2 = n as f64 - n1;
        let want = (n2 * n2 - n1 * n1).sqrt() / n as f64;
        assert!((single_particle_overlap(&c) - want).abs() < 1e-15);
        assert!(want < 1.0);
    }

    #[test]
    fn orthogonal_corner() {
        // N₁ = N₂ = δN/2 maps φ₂ onto φ₁: the only orthogonal pair.
        let e = overlap_exact(&cfg(4, 2.0, 4.0));
        assert_eq!(e.overlap, 0.0);
        assert_eq!(e.log_overlap, f64::NEG_INFINITY);
    }

    #[test]
    fn large_condensate_matches_asymptotics() {
        let c = cfg(100_000_000, 1e4, 10.0);
        let e = overlap_exact(&c);
        let a = overlap_asymptotic(&c);
        assert!((e.log_overlap + 0.00125).abs() < 1e-6);
        assert!((a.overlap - (-0.00125f64).exp()).abs() < 1e-15);
        assert!((a.linearized - 0.99875).abs() < 1e-15);
        assert!((e.overlap - 0.998751).abs() < 1e-6);
    }

    #[test]
    fn underflow_reports_zero_with_finite_log() {
        let e = overlap_exact(&cfg(1_000_000, 5e5, 2e5));
        assert_eq!(e.overlap, 0.0);
        assert!(e.log_overlap.is_finite() && e.log_overlap < UNDERFLOW_LOG);
    }

    #[test]
    fn config_validation() {
        assert!(CondensateConfig::new(0, 1.0, 0.0).is_err());
        assert!(CondensateConfig::new(10, 0.0, 0.0).is_err());
        assert!(CondensateConfig::new(10, 2.0, 4.5).is_err());
        assert!(CondensateConfig::new(10, 8.0, 4.5).is_err());
        assert!(CondensateConfig::new(10, 2.0, -1.0).is_err());
        assert!(CondensateConfig::new(10, 2.0, f64::NAN).is_err());
        assert!(CondensateConfig::new(10, 2.0, 4.0).is_ok());
    }

    #[test]
    fn embedding_extremes() {
        let v = fock_embedding(5, &SingleParticleAmps::new(1.0, 0.0).unwrap()).unwrap();
        assert_eq!(v.amplitudes(), &[0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        let v = fock_embedding(5, &SingleParticleAmps::new(0.0, 1.0).unwrap()).unwrap();
        assert_eq!(v.amplitudes()[0], 1.0);
    }

    #[test]
    fn embedding_two_pairs_by_hand() {
        let r = 0.5f64.sqrt();
        let v = fock_embedding(2, &SingleParticleAmps::new(r, r).unwrap()).unwrap();
        let want = [0.5, r, 0.5];
        for (a, b) in v.amplitudes().iter().zip(want) {
            assert!((a - b).abs() < 1e-15, "{a} vs {b}");
        }
    }

    #[test]
    fn embedding_signs_follow_amplitudes() {
        let r = 0.5f64.sqrt();
        let v = fock_embedding(3, &SingleParticleAmps::new(-r, r).unwrap()).unwrap();
        let signs: Vec<f64> = v.amplitudes().iter().map(|a| a.signum()).collect();
        assert_eq!(signs, vec![1.0, -1.0, 1.0, -1.0]);
    }

    #[test]
    fn embedding_rejects_bad_input() {
        assert!(SingleParticleAmps::new(0.5, 0.5).is_err());
        assert!(matches!(
            fock_embedding(MAX_EMBED_N + 1, &SingleParticleAmps::new(1.0, 0.0).unwrap()),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn log_pmf_matches_direct_product_for_small_n() {
        for n in 1..=30u64 {
            for k in 0..=n {
                let p: f64 = 0.37;
                let mut c = 1.0;
                for i in 0..k {
                    c *= (n - i) as f64 / (i + 1) as f64;
                }
                let direct = c * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32);
                let got = binomial_log_pmf(k, n, p, 1.0 - p).exp();
                assert!((got - direct).abs() <= 5e-14 * direct.max(1e-300), "n={n} k={k} rel={}", (got - direct).abs() / direct);
            }
        }
    }

    #[test]
    fn cone_scan_columns_and_crossings() {
        let grid: Vec<f64> = (0..=400).map(f64::from).collect();
        let scan = cone_scan(100_000_000, 1e4, &grid, &[0.5, 0.99]).unwrap();
        assert_eq!(scan.rows.len(), grid.len());
        assert_eq!(scan.rows[0].overlap_exact, 1.0);
        // invert exp(−δ²/8N₁) = t for the oracle
        let oracle = |t: f64| (8.0 * 1e4 * (1.0 / t).ln()).sqrt();
        let first = scan.crossings[0].delta_n.unwrap();
        assert_eq!(first, oracle(0.5).ceil());
        assert_eq!(scan.crossings[1].delta_n.unwrap(), oracle(0.99).ceil());
    }

    #[test]
    fn cone_scan_no_crossing_and_validation() {
        let scan = cone_scan(1000, 10.0, &[0.0, 0.0], &[0.5]).unwrap();
        assert!(scan.rows.iter().all(|r| r.overlap_exact == 1.0));
        assert_eq!(scan.crossings[0].delta_n, None);
        assert!(cone_scan(1000, 10.0, &[0.0], &[1.0]).is_err());
        assert!(cone_scan(1000, 10.0, &[25.0], &[0.5]).is_err());
    }
}
