use cpb_core::tridiag::{eigen_all, eigen_lowest, TridiagMatrix};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn dense_eigenvalues(m: &TridiagMatrix) -> Vec<f64> {
    let n = m.dim();
    let mut a = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        a[(i, i)] = m.diag()[i];
        if i + 1 < n {
            a[(i, i + 1)] = m.offdiag()[i];
            a[(i + 1, i)] = m.offdiag()[i];
        }
    }
    let mut w: Vec<f64> = a.symmetric_eigen().eigenvalues.iter().copied().collect();
    w.sort_by(f64::total_cmp);
    w
}

fn scale(m: &TridiagMatrix) -> f64 {
    m.norm_inf().max(1.0)
}

fn arb_matrix() -> impl Strategy<Value = TridiagMatrix> {
    (1usize..=50).prop_flat_map(|n| {
        (
            prop::collection::vec(-10.0f64..10.0, n),
            prop::collection::vec(-5.0f64..5.0, n - 1),
        )
            .prop_map(|(d, e)| TridiagMatrix::new(d, e).unwrap())
    })
}

#[test]
fn open_chain_cosine_spectrum() {
    let m_dim = 10;
    let t = 1.0;
    let m = TridiagMatrix::new(vec![0.0; m_dim], vec![t; m_dim - 1]).unwrap();
    let mut exact: Vec<f64> = (1..=m_dim)
        .map(|j| 2.0 * t * (j as f64 * std::f64::consts::PI / (m_dim as f64 + 1.0)).cos())
        .collect();
    exact.sort_by(f64::total_cmp);
    let all = eigen_all(&m, true).unwrap();
    let low = eigen_lowest(&m, m_dim).unwrap();
    for s in [&all, &low] {
        for (got, want) in s.eigenvalues.iter().zip(&exact) {
            assert!((got - want).abs() <= 1e-12, "{got} vs {want}");
        }
    }
}

#[test]
fn lowest_full_set_matches_all() {
    let d: Vec<f64> = (0..30).map(|i| ((i * 7) % 11) as f64 - 3.0).collect();
    let e: Vec<f64> = (0..29).map(|i| 0.3 + ((i * 5) % 7) as f64 * 0.1).collect();
    let m = TridiagMatrix::new(d, e).unwrap();
    let all = eigen_all(&m, true).unwrap();
    let low = eigen_lowest(&m, m.dim()).unwrap();
    let va = all.eigenvectors.as_ref().unwrap();
    let vl = low.eigenvectors.as_ref().unwrap();
    for i in 0..m.dim() {
        assert!((all.eigenvalues[i] - low.eigenvalues[i]).abs() <= 1e-12 * scale(&m));
        let overlap: f64 = va[i].iter().zip(&vl[i]).map(|(a, b)| a * b).sum();
        assert!((overlap - 1.0).abs() < 1e-9, "vector {i}: overlap {overlap}");
    }
}

#[test]
fn graded_large_matrix_low_levels() {
    // Fock-sector-like grading: diagonal grows quadratically away from the
    // middle, so ‖m‖∞ is far larger than the low-lying gaps.
    let n = 4001;
    let d: Vec<f64> = (0..n).map(|k| (k as f64 - 2000.0).powi(2)).collect();
    let e: Vec<f64> = (1..n).map(|k| 0.05 * ((k * (n - k)) as f64).sqrt() / 20.0).collect();
    let m = TridiagMatrix::new(d, e).unwrap();
    let s = eigen_lowest(&m, 4).unwrap();
    for w in s.eigenvalues.windows(2) {
        assert!(w[0] <= w[1]);
    }
    assert!(s.residual_bound <= 1e-10 * scale(&m));
    // local accuracy: residuals are far below the global bound
    assert!(s.residual_bound < 1e-8, "{}", s.residual_bound);
}

fn arb_degenerate() -> impl Strategy<Value = TridiagMatrix> {
    (2usize..=30).prop_flat_map(|n| {
        (
            prop::collection::vec((-2i32..=2).prop_map(f64::from), n),
            prop::collection::vec(prop::sample::select(vec![0.0, 0.0, 1.0, -1.0]), n - 1),
        )
            .prop_map(|(d, e)| TridiagMatrix::new(d, e).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn degenerate_spectra_stay_orthonormal(m in arb_degenerate()) {
        let want = dense_eigenvalues(&m);
        let s = eigen_lowest(&m, m.dim()).unwrap();
        let v = s.eigenvectors.as_ref().unwrap();
        for a in 0..v.len() {
            prop_assert!((s.eigenvalues[a] - want[a]).abs() <= 1e-12 * scale(&m));
            for b in 0..a {
                let ip: f64 = v[a].iter().zip(&v[b]).map(|(x, y)| x * y).sum();
                prop_assert!(ip.abs() <= 1e-10);
            }
        }
        prop_assert!(s.residual_bound <= 1e-10 * scale(&m));
    }

    #[test]
    fn agrees_with_dense_oracle(m in arb_matrix()) {
        let want = dense_eigenvalues(&m);
        let tol = 1e-12 * scale(&m);
        let all = eigen_all(&m, false).unwrap();
        let low = eigen_lowest(&m, m.dim()).unwrap();
        for i in 0..m.dim() {
            prop_assert!((all.eigenvalues[i] - want[i]).abs() <= tol);
            prop_assert!((low.eigenvalues[i] - want[i]).abs() <= tol);
        }
    }

    #[test]
    fn eigenpairs_are_orthonormal_with_small_residuals(m in arb_matrix()) {
        let tol = 1e-10 * scale(&m);
        for s in [eigen_all(&m, true).unwrap(), eigen_lowest(&m, m.dim()).unwrap()] {
            prop_assert!(s.residual_bound <= tol);
            let v = s.eigenvectors.as_ref().unwrap();
            for a in 0..v.len() {
                let norm: f64 = v[a].iter().map(|x| x * x).sum::<f64>().sqrt();
                prop_assert!((norm - 1.0).abs() <= 1e-12);
                prop_assert!(m.residual(s.eigenvalues[a], &v[a]) <= tol);
                for b in 0..a {
                    let ip: f64 = v[a].iter().zip(&v[b]).map(|(x, y)| x * y).sum();
                    prop_assert!(ip.abs() <= 1e-10, "<v{},v{}> = {}", a, b, ip);
                }
            }
            for w in s.eigenvalues.windows(2) {
                prop_assert!(w[0] <= w[1]);
            }
        }
    }

    #[test]
    fn sign_flip_similarity(m in arb_matrix()) {
        let flipped = TridiagMatrix::new(
            m.diag().to_vec(),
            m.offdiag().iter().map(|x| -x).collect(),
        ).unwrap();
        let a = eigen_all(&m, false).unwrap();
        let b = eigen_all(&flipped, false).unwrap();
        for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
            prop_assert!((x - y).abs() <= 1e-12 * scale(&m));
        }
    }

    #[test]
    fn shift_equivariance(m in arb_matrix(), c in -20.0f64..20.0) {
        let shifted = TridiagMatrix::new(
            m.diag().iter().map(|x| x + c).collect(),
            m.offdiag().to_vec(),
        ).unwrap();
        let a = eigen_all(&m, false).unwrap();
        let b = eigen_all(&shifted, false).unwrap();
        for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
            prop_assert!((x + c - y).abs() <= 1e-12 * scale(&shifted));
        }
    }

    #[test]
    fn lowest_k_prefix_of_all(m in arb_matrix(), frac in 0.0f64..1.0) {
        let k = 1 + ((m.dim() - 1) as f64 * frac) as usize;
        let all = eigen_all(&m, false).unwrap();
        let low = eigen_lowest(&m, k).unwrap();
        prop_assert_eq!(low.len(), k);
        for i in 0..k {
            prop_assert!((all.eigenvalues[i] - low.eigenvalues[i]).abs() <= 1e-12 * scale(&m));
        }
    }

    #[test]
    fn deterministic(m in arb_matrix()) {
        prop_assert_eq!(eigen_lowest(&m, m.dim()).unwrap(), eigen_lowest(&m, m.dim()).unwrap());
        prop_assert_eq!(eigen_all(&m, true).unwrap(), eigen_all(&m, true).unwrap());
    }
}
