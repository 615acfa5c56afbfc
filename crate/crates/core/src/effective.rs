//! Requantized Cooper-pair-box Hamiltonian `E_C (n − n_g)² − E_J cos φ` in
//! the integer charge basis `k = −n_max..=n_max`.
//!
//! `cos φ` shifts charge by ±1, so the matrix is tridiagonal with constant
//! off-diagonal `−E_J/2`. The phase is compact and the charge integer.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tridiag::{eigen_lowest, lowest_eigenvalues, Spectrum, TridiagMatrix};

/// First entry of the doubling schedule used by AUTO truncation.
pub const AUTO_START: usize = 8;
/// Largest `n_max` the doubling schedule tries before giving up.
pub const AUTO_LIMIT: usize = 4096;
/// AUTO tracks this many levels beyond the ones requested.
pub const AUTO_EXTRA_LEVELS: usize = 2;
/// AUTO convergence tolerance in units of `E_C`.
pub const AUTO_TOL: f64 = 1e-10;
/// Eigenvalues closer than this (in units of `E_C`) count as degenerate when
/// picking the qubit pair.
pub const DEGENERACY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Truncation {
    Auto,
    Fixed(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EffectiveParams {
    pub e_c: f64,
    /// Josephson energy, either sign.
    pub e_j: f64,
    /// Gate charge.
    pub n_g: f64,
    pub n_max: Truncation,
}

impl EffectiveParams {
    pub fn new(e_c: f64, e_j: f64, n_g: f64) -> Self {
        Self {
            e_c,
            e_j,
            n_g,
            n_max: Truncation::Auto,
        }
    }

    pub fn with_n_max(mut self, n_max: usize) -> Self {
        self.n_max = Truncation::Fixed(n_max);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.e_c.is_finite() && self.e_j.is_finite() && self.n_g.is_finite()) {
            return Err(Error::InvalidParams("parameters must be finite".into()));
        }
        if self.e_c <= 0.0 {
            return Err(Error::InvalidParams(format!("e_c must be positive, got {}", self.e_c)));
        }
        if self.n_max == Truncation::Fixed(0) {
            return Err(Error::InvalidParams("n_max must be at least 1".into()));
        }
        Ok(())
    }

    /// Explicit `n_max`, or the AUTO value for `k_levels` requested levels.
    pub fn resolve_n_max(&self, k_levels: usize) -> Result<usize> {
        match self.n_max {
            Truncation::Fixed(n) => {
                self.validate()?;
                Ok(n)
            }
            Truncation::Auto => auto_truncation(self, k_levels + AUTO_EXTRA_LEVELS, AUTO_TOL * self.e_c),
        }
    }
}

/// Charge-basis matrix at an explicit truncation.
pub fn build_effective_at(params: &EffectiveParams, n_max: usize) -> Result<TridiagMatrix> {
    params.validate()?;
    if n_max == 0 {
        return Err(Error::InvalidParams("n_max must be at least 1".into()));
    }
    let diag = (0..=2 * n_max)
        .map(|i| params.e_c * (charge(i, n_max) - params.n_g).powi(2))
        .collect();
    let offdiag = vec![-0.5 * params.e_j; 2 * n_max];
    TridiagMatrix::new(diag, offdiag)
}

/// Charge-basis matrix; AUTO truncation is resolved for the qubit pair.
pub fn build_effective(params: &EffectiveParams) -> Result<TridiagMatrix> {
    let n_max = params.resolve_n_max(2)?;
    build_effective_at(params, n_max)
}

fn charge(i: usize, n_max: usize) -> f64 {
    i as f64 - n_max as f64
}

/// Smallest `n_max` on the schedule 8, 16, 32, … whose lowest `k_levels`
/// eigenvalues move by less than `tol` when `n_max` is doubled.
pub fn auto_truncation(params: &EffectiveParams, k_levels: usize, tol: f64) -> Result<usize> {
    params.validate()?;
    if k_levels == 0 {
        return Err(Error::InvalidParams("k_levels must be positive".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParams(format!("tol must be positive, got {tol}")));
    }
    let mut n_max = AUTO_START;
    while 2 * n_max + 1 < k_levels {
        n_max *= 2;
    }
    let mut current = lowest_eigenvalues(&build_effective_at(params, n_max)?, k_levels)?;
    loop {
        let doubled = lowest_eigenvalues(&build_effective_at(params, 2 * n_max)?, k_levels)?;
        let change = current
            .iter()
            .zip(&doubled)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if change < tol {
            return Ok(n_max);
        }
        if n_max >= AUTO_LIMIT {
            return Err(Error::TruncationFailure { n_max });
        }
        n_max *= 2;
        current = doubled;
    }
}

/// Lowest `k_levels` eigenpairs and the truncation they were computed at.
pub fn effective_spectrum(params: &EffectiveParams, k_levels: usize) -> Result<(usize, Spectrum)> {
    if k_levels == 0 {
        return Err(Error::InvalidParams("k_levels must be positive".into()));
    }
    let n_max = params.resolve_n_max(k_levels)?;
    let m = build_effective_at(params, n_max)?;
    if k_levels > m.dim() {
        return Err(Error::InvalidParams(format!(
            "k_levels = {k_levels} exceeds the basis size {}",
            m.dim()
        )));
    }
    Ok((n_max, eigen_lowest(&m, k_levels)?))
}

/// The two lowest eigenstates of the effective model.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QubitPair {
    pub e0: f64,
    pub e1: f64,
    pub v0: Vec<f64>,
    pub v1: Vec<f64>,
    /// `|⟨n⟩₁ − ⟨n⟩₀|`.
    pub delta_n: f64,
    /// Charge basis used for `v0`, `v1`: `k = −n_max..=n_max`.
    pub n_max: usize,
}

impl QubitPair {
    pub fn overlap(&self) -> f64 {
        dot(&self.v0, &self.v1).abs()
    }

    pub fn mean_charge(&self, which: usize) -> f64 {
        let v = if which == 0 { &self.v0 } else { &self.v1 };
        mean_charge(v, self.n_max)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn mean_charge(v: &[f64], n_max: usize) -> f64 {
    v.iter().enumerate().map(|(i, a)| charge(i, n_max) * a * a).sum()
}

/// Charge operator restricted to span(vs), diagonalized. Returns eigenvalues
/// ascending and the matching orthonormal combinations of `vs`.
fn diagonalize_charge(vs: &[Vec<f64>], n_max: usize) -> (Vec<f64>, Vec<Vec<f64>>) {
    let c = vs.len();
    let mut q = vec![vec![0.0; c]; c];
    for a in 0..c {
        for b in 0..=a {
            let qab: f64 = vs[a]
                .iter()
                .zip(&vs[b])
                .enumerate()
                .map(|(i, (x, y))| charge(i, n_max) * x * y)
                .sum();
            q[a][b] = qab;
            q[b][a] = qab;
        }
    }
    let (vals, rot) = jacobi_eigen(q);
    let mut order: Vec<usize> = (0..c).collect();
    order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
    let len = vs[0].len();
    let combos = order
        .iter()
        .map(|&col| {
            let mut w = vec![0.0; len];
            for (a, v) in vs.iter().enumerate() {
                let coef = rot[a][col];
                w.iter_mut().zip(v).for_each(|(wi, vi)| *wi += coef * vi);
            }
            crate::tridiag::fix_sign(&mut w);
            w
        })
        .collect();
    (order.iter().map(|&i| vals[i]).collect(), combos)
}

/// Cyclic Jacobi for the small dense matrices of `diagonalize_charge`.
/// Columns of the returned rotation are the eigenvectors.
fn jacobi_eigen(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for r in p + 1..n {
                if a[p][r] == 0.0 {
                    continue;
                }
                let theta = (a[r][r] - a[p][p]) / (2.0 * a[p][r]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akr = a[k][r];
                    a[k][p] = c * akp - s * akr;
                    a[k][r] = s * akp + c * akr;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let ark = a[r][k];
                    a[p][k] = c * apk - s * ark;
                    a[r][k] = s * apk + c * ark;
                }
                for row in v.iter_mut() {
                    let vkp = row[p];
                    let vkr = row[r];
                    row[p] = c * vkp - s * vkr;
                    row[r] = s * vkp + c * vkr;
                }
            }
        }
    }
    ((0..n).map(|i| a[i][i]).collect(), v)
}

/// Runs of eigenvalue indices closer than `tol`, as `start..end` ranges.
fn clusters(values: &[f64], tol: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] >= tol {
            out.push(start..i);
            start = i;
        }
    }
    out
}

/// The qubit pair: the two lowest eigenstates.
///
/// Degenerate levels are resolved through the charge operator. If the
/// ground level is degenerate, the pair is the two lowest-charge states that
/// diagonalize `n` on that cluster. If only the first excited level is
/// degenerate, `v1` is the member of its cluster whose mean charge is
/// closest to that of `v0` (for `n_g = 0, E_J = 0` this is the symmetric
/// combination of `k = ±1`).
pub fn qubit_states(params: &EffectiveParams) -> Result<QubitPair> {
    const TRACKED: usize = 2 + AUTO_EXTRA_LEVELS;
    let n_max = params.resolve_n_max(2)?;
    let m = build_effective_at(params, n_max)?;
    let levels = TRACKED.min(m.dim());
    let s = eigen_lowest(&m, levels)?;
    let vectors = s.eigenvectors.expect("eigen_lowest returns vectors");
    let values = s.eigenvalues;
    let groups = clusters(&values, DEGENERACY_TOL * params.e_c);

    let (v0, v1) = if groups[0].len() >= 2 {
        let (_, combos) = diagonalize_charge(&vectors[groups[0].clone()], n_max);
        (combos[0].clone(), combos[1].clone())
    } else if groups[1].len() >= 2 {
        let v0 = vectors[0].clone();
        let target = mean_charge(&v0, n_max);
        let (charges, combos) = diagonalize_charge(&vectors[groups[1].clone()], n_max);
        (v0, closest_charge_mix(&charges, &combos, target))
    } else {
        (vectors[0].clone(), vectors[1].clone())
    };

    let delta_n = (mean_charge(&v1, n_max) - mean_charge(&v0, n_max)).abs();
    Ok(QubitPair {
        e0: values[0],
        e1: values[1],
        v0,
        v1,
        delta_n,
        n_max,
    })
}

/// Unit vector in span(combos) whose mean charge is as close as possible to
/// `target`. `combos` diagonalize the charge with ascending `charges`, so
/// the mean charge of `cos θ·u_a + sin θ·u_b` is `cos²θ·q_a + sin²θ·q_b`.
fn closest_charge_mix(charges: &[f64], combos: &[Vec<f64>], target: f64) -> Vec<f64> {
    let last = charges.len() - 1;
    if target <= charges[0] {
        return combos[0].clone();
    }
    if target >= charges[last] {
        return combos[last].clone();
    }
    let b = charges.iter().position(|&q| q >= target).unwrap();
    let a = b - 1;
    let weight_b = (target - charges[a]) / (charges[b] - charges[a]);
    let (ca, cb) = ((1.0 - weight_b).sqrt(), weight_b.sqrt());
    let mut w: Vec<f64> = combos[a].iter().zip(&combos[b]).map(|(x, y)| ca * x + cb * y).collect();
    let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    w.iter_mut().for_each(|x| *x /= norm);
    w
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub n_g: f64,
    pub energies: Vec<f64>,
}

/// Lowest `k_levels` energies at each gate charge of `ng_grid`, in grid
/// order. AUTO truncation is resolved separately at every point.
pub fn charge_dispersion_sweep(params: &EffectiveParams, ng_grid: &[f64], k_levels: usize) -> Result<Vec<SweepRow>> {
    if ng_grid.is_empty() {
        return Err(Error::InvalidParams("empty n_g grid".into()));
    }
    if k_levels == 0 {
        return Err(Error::InvalidParams("k_levels must be positive".into()));
    }
    ng_grid
        .iter()
        .map(|&n_g| {
            let p = EffectiveParams { n_g, ..*params };
            let n_max = p.resolve_n_max(k_levels)?;
            let m = build_effective_at(&p, n_max)?;
            if k_levels > m.dim() {
                return Err(Error::InvalidParams(format!(
                    "k_levels = {k_levels} exceeds the basis size {}",
                    m.dim()
                )));
            }
            Ok(SweepRow {
                n_g,
                energies: lowest_eigenvalues(&m, k_levels)?,
            })
        })
        .collect()
}
