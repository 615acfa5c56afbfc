//! Real symmetric tridiagonal eigensolver.
//!
//! Two routes are provided. [`eigen_all`] runs implicit-shift QL with
//! accumulated plane rotations and returns the whole spectrum.
//! [`eigen_lowest`] splits the matrix into unreduced blocks, locates the
//! requested eigenvalues by Sturm-sequence bisection and recovers their
//! eigenvectors by inverse iteration, re-orthogonalizing inside clusters of
//! close eigenvalues. It costs O(k·M) per call, which is what the large
//! Fock-sector and charge-basis matrices need.
//!
//! Both routes are deterministic: inverse iteration starts from a fixed
//! pseudo-random sequence.

use serde::Serialize;

use crate::error::{Error, Result};

/// Per-eigenvalue iteration cap for QL sweeps and inverse iteration.
pub const MAX_SWEEPS: usize = 50;

/// Acceptance bound on eigenpair residuals, relative to `max(1, ‖m‖∞)`.
pub const RESIDUAL_TOL: f64 = 1e-10;

const EPS: f64 = f64::EPSILON;

/// Real symmetric tridiagonal matrix stored by its diagonal and first
/// off-diagonal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TridiagMatrix {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl TridiagMatrix {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::InvalidMatrix("empty diagonal".into()));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::InvalidMatrix(format!(
                "off-diagonal has length {}, expected {}",
                offdiag.len(),
                diag.len() - 1
            )));
        }
        if diag.iter().chain(&offdiag).any(|x| !x.is_finite()) {
            return Err(Error::InvalidMatrix("non-finite entry".into()));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        block_norm(&self.diag, &self.offdiag)
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim());
        tridiag_mul(&self.diag, &self.offdiag, x)
    }

    /// Euclidean norm of `H v − λ v`.
    pub fn residual(&self, lambda: f64, v: &[f64]) -> f64 {
        self.mul_vec(v)
            .iter()
            .zip(v)
            .map(|(hv, vi)| (hv - lambda * vi).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    fn residual_scale(&self) -> f64 {
        self.norm_inf().max(1.0)
    }
}

/// Eigenvalues in ascending order, optionally with matching orthonormal
/// eigenvectors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Option<Vec<Vec<f64>>>,
    /// Total QL sweeps or inverse-iteration steps performed.
    pub iterations: usize,
    /// Largest residual `‖H v − λ v‖` over the returned pairs. When no
    /// vectors were requested this is the a-priori bound `M·ε·max(1, ‖m‖∞)`.
    pub residual_bound: f64,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn vector(&self, i: usize) -> Option<&[f64]> {
        self.eigenvectors.as_ref().map(|vs| vs[i].as_slice())
    }
}

/// All eigenvalues (and optionally eigenvectors) by implicit QL.
pub fn eigen_all(m: &TridiagMatrix, want_vectors: bool) -> Result<Spectrum> {
    let n = m.dim();
    let mut d = m.diag.clone();
    let mut e = m.offdiag.clone();
    e.push(0.0);
    let mut z: Vec<Vec<f64>> = if want_vectors {
        (0..n)
            .map(|i| {
                let mut col = vec![0.0; n];
                col[i] = 1.0;
                col
            })
            .collect()
    } else {
        Vec::new()
    };

    let mut shift = 0.0;
    let mut tst1: f64 = 0.0;
    let mut total = 0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut mm = l;
        while mm < n - 1 && e[mm].abs() > EPS * tst1 {
            mm += 1;
        }
        if mm > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_SWEEPS {
                    return Err(Error::ConvergenceFailure {
                        index: l,
                        iterations: MAX_SWEEPS,
                    });
                }
                // Wilkinson-type shift from the leading 2x2 block.
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                shift += h;

                // Implicit QL sweep from mm back up to l.
                p = d[mm];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..mm).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    let h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if want_vectors {
                        let (left, right) = z.split_at_mut(i + 1);
                        let zi = &mut left[i];
                        let zi1 = &mut right[0];
                        for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                            let t = *b;
                            *b = s * *a + c * t;
                            *a = c * *a - s * t;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= EPS * tst1 {
                    break;
                }
            }
            total += iter;
        }
        d[l] += shift;
        e[l] = 0.0;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]).then(a.cmp(&b)));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| d[i]).collect();

    if !want_vectors {
        return Ok(Spectrum {
            eigenvalues,
            eigenvectors: None,
            iterations: total,
            residual_bound: n as f64 * EPS * m.residual_scale(),
        });
    }

    let mut vectors: Vec<Vec<f64>> = order.iter().map(|&i| std::mem::take(&mut z[i])).collect();
    let degenerate_tol = 1e-12 * m.residual_scale();
    reorthogonalize_clusters(&eigenvalues, &mut vectors, degenerate_tol);
    for v in vectors.iter_mut() {
        fix_sign(v);
    }
    let residual_bound = max_residual(m, &eigenvalues, &vectors);
    Ok(Spectrum {
        eigenvalues,
        eigenvectors: Some(vectors),
        iterations: total,
        residual_bound,
    })
}

/// The `k` lowest eigenpairs by bisection and inverse iteration.
pub fn eigen_lowest(m: &TridiagMatrix, k: usize) -> Result<Spectrum> {
    let n = m.dim();
    if k == 0 || k > n {
        return Err(Error::InvalidParams(format!(
            "requested {k} eigenpairs from a {n}x{n} matrix"
        )));
    }

    let blocks = split_blocks(&m.diag, &m.offdiag);

    // Candidate eigenvalues: the lowest min(k, len) of every block.
    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    for (b, &(start, len)) in blocks.iter().enumerate() {
        let d = &m.diag[start..start + len];
        let e = &m.offdiag[start..start + len - 1];
        for (j, w) in bisect_lowest(d, e, k.min(len)).into_iter().enumerate() {
            candidates.push((w, b, j));
        }
    }
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    candidates.truncate(k);

    // Group the selected eigenvalues by block for inverse iteration.
    let mut per_block: Vec<Vec<(usize, f64)>> = vec![Vec::new(); blocks.len()];
    for (slot, &(w, b, _)) in candidates.iter().enumerate() {
        per_block[b].push((slot, w));
    }

    let scale = m.residual_scale();
    let mut vectors = vec![Vec::new(); k];
    let mut total = 0;
    for (b, selected) in per_block.iter().enumerate() {
        if selected.is_empty() {
            continue;
        }
        let (start, len) = blocks[b];
        let d = &m.diag[start..start + len];
        let e = &m.offdiag[start..start + len - 1];
        let values: Vec<f64> = selected.iter().map(|&(_, w)| w).collect();
        let (local, iters) = inverse_iteration(d, e, &values, scale).map_err(|err| match err {
            Error::ConvergenceFailure { index, iterations } => Error::ConvergenceFailure {
                index: selected[index].0,
                iterations,
            },
            other => other,
        })?;
        total += iters;
        for ((slot, _), v) in selected.iter().zip(local) {
            let mut full = vec![0.0; n];
            full[start..start + len].copy_from_slice(&v);
            fix_sign(&mut full);
            vectors[*slot] = full;
        }
    }

    let eigenvalues: Vec<f64> = candidates.iter().map(|c| c.0).collect();
    let residual_bound = max_residual(m, &eigenvalues, &vectors);
    if residual_bound > RESIDUAL_TOL * scale {
        let worst = eigenvalues
            .iter()
            .zip(&vectors)
            .position(|(&w, v)| m.residual(w, v) > RESIDUAL_TOL * scale)
            .unwrap_or(0);
        return Err(Error::ConvergenceFailure {
            index: worst,
            iterations: MAX_SWEEPS,
        });
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors: Some(vectors),
        iterations: total,
        residual_bound,
    })
}

/// The `k` lowest eigenvalues only, by bisection. Cheaper than
/// [`eigen_lowest`] when vectors are not needed.
pub fn lowest_eigenvalues(m: &TridiagMatrix, k: usize) -> Result<Vec<f64>> {
    let n = m.dim();
    if k == 0 || k > n {
        return Err(Error::InvalidParams(format!(
            "requested {k} eigenvalues from a {n}x{n} matrix"
        )));
    }
    let mut all = Vec::new();
    for (start, len) in split_blocks(&m.diag, &m.offdiag) {
        let d = &m.diag[start..start + len];
        let e = &m.offdiag[start..start + len - 1];
        all.extend(bisect_lowest(d, e, k.min(len)));
    }
    all.sort_by(f64::total_cmp);
    all.truncate(k);
    Ok(all)
}

fn block_norm(d: &[f64], e: &[f64]) -> f64 {
    let n = d.len();
    (0..n)
        .map(|i| {
            let left = if i > 0 { e[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { e[i].abs() } else { 0.0 };
            left + d[i].abs() + right
        })
        .fold(0.0, f64::max)
}

fn tridiag_mul(d: &[f64], e: &[f64], x: &[f64]) -> Vec<f64> {
    let n = d.len();
    (0..n)
        .map(|i| {
            let mut acc = d[i] * x[i];
            if i > 0 {
                acc += e[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                acc += e[i] * x[i + 1];
            }
            acc
        })
        .collect()
}

fn max_residual(m: &TridiagMatrix, values: &[f64], vectors: &[Vec<f64>]) -> f64 {
    values
        .iter()
        .zip(vectors)
        .map(|(&w, v)| m.residual(w, v))
        .fold(0.0, f64::max)
}

/// Splits at off-diagonal entries that are negligible relative to their
/// diagonal neighbours. Returns `(start, len)` per unreduced block.
fn split_blocks(d: &[f64], e: &[f64]) -> Vec<(usize, usize)> {
    let mut blocks = Vec::new();
    let mut start = 0;
    for (i, &ei) in e.iter().enumerate() {
        let negligible =
            ei == 0.0 || ei * ei <= EPS * EPS * (d[i] * d[i + 1]).abs() + f64::MIN_POSITIVE;
        if negligible {
            blocks.push((start, i + 1 - start));
            start = i + 1;
        }
    }
    blocks.push((start, d.len() - start));
    blocks
}

fn pivot_floor(e: &[f64]) -> f64 {
    let max_e2 = e.iter().map(|x| x * x).fold(0.0, f64::max);
    f64::MIN_POSITIVE * max_e2.max(1.0)
}

/// Number of eigenvalues strictly below `x` (LDLᵀ inertia count).
fn sturm_count(d: &[f64], e: &[f64], x: f64, pivmin: f64) -> usize {
    let mut count = 0;
    let mut q = d[0] - x;
    if q.abs() < pivmin {
        q = -pivmin;
    }
    if q < 0.0 {
        count += 1;
    }
    for i in 1..d.len() {
        q = d[i] - x - e[i - 1] * e[i - 1] / q;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Lowest `k` eigenvalues of an unreduced block, ascending.
fn bisect_lowest(d: &[f64], e: &[f64], k: usize) -> Vec<f64> {
    let n = d.len();
    if n == 1 {
        return vec![d[0]];
    }
    let pivmin = pivot_floor(e);
    let radius = |i: usize| if i > 0 { e[i - 1].abs() } else { 0.0 } + if i + 1 < n { e[i].abs() } else { 0.0 };
    let mut upper: Vec<f64> = (0..n).map(|i| d[i] + radius(i)).collect();
    let lo_g = (0..n).map(|i| d[i] - radius(i)).fold(f64::INFINITY, f64::min);
    let hi_g = upper.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let tnorm = lo_g.abs().max(hi_g.abs());
    let pad = 2.1 * tnorm * EPS * n as f64 + 4.2 * pivmin;
    // Absolute floor for eigenvalues at or near zero.
    let abs_floor = EPS * EPS * tnorm + pivmin;
    // The j-th eigenvalue is at most the largest eigenvalue of the principal
    // submatrix on the j+1 rows with the smallest Gershgorin upper ends.
    upper.select_nth_unstable_by(k.min(n - 1), f64::total_cmp);
    upper.truncate(k.min(n - 1) + 1);
    upper.sort_by(f64::total_cmp);

    // Every count evaluated so far, as (point, eigenvalues below point).
    let mut probes: Vec<(f64, usize)> = vec![(lo_g - pad, 0), (hi_g + pad, n)];
    let mut out = Vec::with_capacity(k);
    for j in 0..k {
        // Invariant: count(a) <= j < count(b).
        let mut a = lo_g - pad;
        let mut b = upper[j] + pad;
        for &(x, c) in &probes {
            if c <= j && x > a {
                a = x;
            }
            if c > j && x < b {
                b = x;
            }
        }
        loop {
            let mid = 0.5 * (a + b);
            let width = b - a;
            if mid <= a || mid >= b || width <= 2.0 * EPS * a.abs().max(b.abs()) + abs_floor {
                break;
            }
            let c = sturm_count(d, e, mid, pivmin);
            probes.push((mid, c));
            if c > j {
                b = mid;
            } else {
                a = mid;
            }
        }
        out.push(0.5 * (a + b));
    }
    out
}

/// LU factors of a shifted tridiagonal matrix with partial pivoting.
struct ShiftedLu {
    u0: Vec<f64>,
    u1: Vec<f64>,
    u2: Vec<f64>,
    mult: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn factor(d: &[f64], e: &[f64], shift: f64, tiny: f64) -> Self {
        let n = d.len();
        let mut u0 = vec![0.0; n];
        let mut u1 = vec![0.0; n.saturating_sub(1)];
        let mut u2 = vec![0.0; n.saturating_sub(1)];
        let mut mult = vec![0.0; n.saturating_sub(1)];
        let mut swapped = vec![false; n.saturating_sub(1)];

        // Pending row i has entries only in columns i and i+1.
        let mut pd = d[0] - shift;
        let mut ps = if n > 1 { e[0] } else { 0.0 };
        for i in 0..n - 1 {
            let sub = e[i];
            let nd = d[i + 1] - shift;
            let ns = if i + 2 < n { e[i + 1] } else { 0.0 };
            if pd.abs() >= sub.abs() {
                let l = if pd == 0.0 { 0.0 } else { sub / pd };
                u0[i] = pd;
                u1[i] = ps;
                mult[i] = l;
                pd = nd - l * ps;
                ps = ns;
            } else {
                let l = pd / sub;
                u0[i] = sub;
                u1[i] = nd;
                u2[i] = ns;
                mult[i] = l;
                swapped[i] = true;
                pd = ps - l * nd;
                ps = -l * ns;
            }
        }
        u0[n - 1] = pd;
        for p in u0.iter_mut() {
            if p.abs() < tiny {
                *p = if *p < 0.0 { -tiny } else { tiny };
            }
        }
        Self {
            u0,
            u1,
            u2,
            mult,
            swapped,
        }
    }

    fn solve(&self, y: &mut [f64]) {
        let n = y.len();
        for i in 0..n - 1 {
            if self.swapped[i] {
                y.swap(i, i + 1);
            }
            y[i + 1] -= self.mult[i] * y[i];
        }
        for i in (0..n).rev() {
            let mut acc = y[i];
            if i + 1 < n {
                acc -= self.u1[i] * y[i + 1];
            }
            if i + 2 < n {
                acc -= self.u2[i] * y[i + 2];
            }
            y[i] = acc / self.u0[i];
        }
    }
}

fn start_vector(len: usize, seed: u64) -> Vec<f64> {
    // splitmix64, fixed seed
    let mut state = 0x9E37_79B9_7F4A_7C15u64 ^ seed.wrapping_mul(0xD1B5_4A32_D192_ED03);
    (0..len)
        .map(|_| {
            state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
            z ^= z >> 31;
            2.0 * ((z >> 11) as f64 / (1u64 << 53) as f64) - 1.0
        })
        .collect()
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn project_out(x: &mut [f64], basis: &[Vec<f64>]) {
    for p in basis {
        let c = dot(p, x);
        for (xi, pi) in x.iter_mut().zip(p) {
            *xi -= c * pi;
        }
    }
}

/// Inverse iteration on one unreduced block for ascending eigenvalues
/// `values`. Vectors whose eigenvalues lie within `1e-3·‖block‖` of their
/// neighbour are kept orthogonal to the earlier members of that cluster.
fn inverse_iteration(
    d: &[f64],
    e: &[f64],
    values: &[f64],
    scale: f64,
) -> Result<(Vec<Vec<f64>>, usize)> {
    let n = d.len();
    if n == 1 {
        return Ok((vec![vec![1.0]; values.len()], 0));
    }
    let bnorm = block_norm(d, e).max(f64::MIN_POSITIVE);
    let ortol = 1e-3 * bnorm;
    let tiny = EPS * bnorm;
    let accept = RESIDUAL_TOL * scale;

    let mut out: Vec<Vec<f64>> = Vec::with_capacity(values.len());
    let mut cluster_start = 0;
    let mut prev_shift = f64::NEG_INFINITY;
    let mut total = 0;

    for (j, &w) in values.iter().enumerate() {
        if j > 0 && w - values[j - 1] > ortol {
            cluster_start = j;
        }
        // Separate coincident shifts so each factorization differs.
        let pertol = 10.0 * EPS * w.abs().max(tiny);
        let shift = if j > 0 && w - prev_shift < pertol { prev_shift + pertol } else { w };
        prev_shift = shift;

        let lu = ShiftedLu::factor(d, e, shift, tiny);
        let mut x = start_vector(n, j as u64);
        let s = norm2(&x);
        x.iter_mut().for_each(|xi| *xi /= s);

        let mut best: Option<(f64, Vec<f64>)> = None;
        let mut last = f64::INFINITY;
        let mut iters = 0;
        while iters < MAX_SWEEPS {
            iters += 1;
            lu.solve(&mut x);
            project_out(&mut x, &out[cluster_start..j]);
            let s = norm2(&x);
            if !s.is_finite() || s == 0.0 {
                // Restart from a different deterministic vector.
                x = start_vector(n, (j + 1000 * iters) as u64);
                project_out(&mut x, &out[cluster_start..j]);
                let s = norm2(&x);
                x.iter_mut().for_each(|xi| *xi /= s);
                continue;
            }
            x.iter_mut().for_each(|xi| *xi /= s);

            let hx = tridiag_mul(d, e, &x);
            let r = hx.iter().zip(&x).map(|(h, xi)| (h - w * xi).powi(2)).sum::<f64>().sqrt();
            if best.as_ref().is_none_or(|(br, _)| r < *br) {
                best = Some((r, x.clone()));
            }
            let stalled = r > 0.5 * last;
            last = r;
            if r == 0.0 || (iters >= 3 && stalled) {
                break;
            }
        }
        total += iters;
        match best {
            Some((r, v)) if r <= accept => out.push(v),
            _ => {
                return Err(Error::ConvergenceFailure {
                    index: j,
                    iterations: iters,
                })
            }
        }
    }
    Ok((out, total))
}

/// Modified Gram-Schmidt inside runs of eigenvalues closer than `tol`.
fn reorthogonalize_clusters(values: &[f64], vectors: &mut [Vec<f64>], tol: f64) {
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > tol {
            if i - start > 1 {
                for a in start..i {
                    let (done, rest) = vectors.split_at_mut(a);
                    let v = &mut rest[0];
                    project_out(v, &done[start..a]);
                    let s = norm2(v);
                    v.iter_mut().for_each(|x| *x /= s);
                }
            }
            start = i;
        }
    }
}

/// Makes the first component that is not negligible positive.
pub(crate) fn fix_sign(v: &mut [f64]) {
    let big = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let cut = big * 1e-6;
    if let Some(&lead) = v.iter().find(|x| x.abs() > cut) {
        if lead < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(d: &[f64], e: &[f64]) -> TridiagMatrix {
        TridiagMatrix::new(d.to_vec(), e.to_vec()).unwrap()
    }

    #[test]
    fn one_by_one() {
        let s = eigen_all(&mat(&[3.5], &[]), true).unwrap();
        assert_eq!(s.eigenvalues, vec![3.5]);
        assert_eq!(s.vector(0).unwrap(), &[1.0]);
        let s = eigen_lowest(&mat(&[3.5], &[]), 1).unwrap();
        assert_eq!(s.eigenvalues, vec![3.5]);
    }

    #[test]
    fn two_by_two_quadratic_formula() {
        // diag [1, 0], offdiag lambda/2 with lambda = 2
        let m = mat(&[1.0, 0.0], &[1.0]);
        let want = [(1.0 - 5f64.sqrt()) / 2.0, (1.0 + 5f64.sqrt()) / 2.0];
        for s in [eigen_all(&m, true).unwrap(), eigen_lowest(&m, 2).unwrap()] {
            for (got, w) in s.eigenvalues.iter().zip(want) {
                assert!((got - w).abs() < 1e-14, "{got} vs {w}");
            }
        }
    }

    #[test]
    fn three_by_three_ground_state() {
        let s = eigen_lowest(&mat(&[0.0; 3], &[1.0, 1.0]), 1).unwrap();
        assert!((s.eigenvalues[0] + 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn decoupled_diagonal() {
        let s = eigen_lowest(&mat(&[5.0, 1.0, 9.0], &[0.0, 0.0]), 2).unwrap();
        assert_eq!(s.eigenvalues, vec![1.0, 5.0]);
        assert_eq!(s.vector(0).unwrap(), &[0.0, 1.0, 0.0]);
        assert_eq!(s.vector(1).unwrap(), &[1.0, 0.0, 0.0]);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(matches!(TridiagMatrix::new(vec![], vec![]), Err(Error::InvalidMatrix(_))));
        assert!(matches!(
            TridiagMatrix::new(vec![1.0, 2.0], vec![]),
            Err(Error::InvalidMatrix(_))
        ));
        assert!(matches!(
            TridiagMatrix::new(vec![1.0, f64::NAN], vec![0.0]),
            Err(Error::InvalidMatrix(_))
        ));
        let m = mat(&[1.0, 2.0], &[0.5]);
        assert!(eigen_lowest(&m, 0).is_err());
        assert!(eigen_lowest(&m, 3).is_err());
    }

    #[test]
    fn exact_degeneracy_gives_orthonormal_pair() {
        let m = mat(&[0.25, 0.25, 2.25, 2.25], &[0.0, 0.0, 0.0]);
        let s = eigen_all(&m, true).unwrap();
        let v = s.eigenvectors.unwrap();
        assert!(dot(&v[0], &v[1]).abs() < 1e-15);
        assert!(dot(&v[2], &v[3]).abs() < 1e-15);
    }

    #[test]
    fn near_degenerate_cluster_in_one_block() {
        // Two weakly coupled copies of the same chain: eigenvalues come in
        // pairs split by ~1e-12.
        let mut d = vec![0.0; 20];
        let mut e = vec![1.0; 19];
        d[10..].iter_mut().for_each(|x| *x = 0.0);
        e[9] = 1e-12;
        let m = mat(&d, &e);
        let s = eigen_lowest(&m, 6).unwrap();
        let v = s.eigenvectors.as_ref().unwrap();
        for a in 0..6 {
            for b in 0..a {
                assert!(dot(&v[a], &v[b]).abs() < 1e-10, "pair {a},{b}");
            }
            assert!(m.residual(s.eigenvalues[a], &v[a]) < 1e-10);
        }
    }

    #[test]
    fn start_vector_is_deterministic() {
        assert_eq!(start_vector(8, 3), start_vector(8, 3));
        assert_ne!(start_vector(8, 3), start_vector(8, 4));
    }
}
