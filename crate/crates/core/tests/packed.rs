mod common;

use common::*;
use rfpk::kernels::potrf_ref;
use rfpk::packed::{pptrf_ref, pptrs_ref, spd_generate, SpdSpec};
use rfpk::{DenseMatrix, Error, PackedTriangle, Scalar, Uplo};

fn factor_case<T: Scalar>(n: usize, seed: u64) {
    let a: DenseMatrix<T> = spd(n, seed, 100.0);
    for uplo in [Uplo::Lower, Uplo::Upper] {
        let mut full = a.clone();
        potrf_ref(uplo, full.as_mut()).unwrap();
        let full = triangle(&full, uplo);
        let mut p = PackedTriangle::from_dense(a.as_ref(), uplo).unwrap();
        pptrf_ref(&mut p).unwrap();
        let got = p.to_dense(n.max(1)).unwrap();
        assert!(max_diff(&got, &full) <= 10.0 * n as f64 * EPS * max_abs(&a), "n={n} {uplo:?}");
    }
}

#[test]
fn pptrf_matches_potrf() {
    for n in (1..=40).chain([65, 100]) {
        factor_case::<f64>(n, n as u64);
        factor_case::<Z>(n, 9 + n as u64);
    }
}

fn solve_case<T: Scalar>(n: usize, nrhs: usize, seed: u64) {
    let a: DenseMatrix<T> = spd(n, seed, 100.0);
    let mut g = rng(seed);
    let b: DenseMatrix<T> = random(n, nrhs, &mut g);
    for uplo in [Uplo::Lower, Uplo::Upper] {
        let mut p = PackedTriangle::from_dense(a.as_ref(), uplo).unwrap();
        pptrf_ref(&mut p).unwrap();
        let mut x = b.clone();
        pptrs_ref(&p, x.as_mut()).unwrap();
        let resid = fro(&sub(&matmul(&a, &x), &b));
        assert!(resid <= 30.0 * n as f64 * EPS * fro(&a) * fro(&x), "n={n} {uplo:?}");
    }
}

#[test]
fn pptrs_residual() {
    for n in [1, 2, 7, 30] {
        for nrhs in [0, 1, 5] {
            solve_case::<f64>(n, nrhs, n as u64);
            solve_case::<Z>(n, nrhs, 2 * n as u64);
        }
    }
}

#[test]
fn pptrf_failure_index() {
    let mut a = DenseMatrix::<f64>::identity(6);
    a[(3, 3)] = -1.0;
    for uplo in [Uplo::Lower, Uplo::Upper] {
        let mut p = PackedTriangle::from_dense(a.as_ref(), uplo).unwrap();
        assert_eq!(pptrf_ref(&mut p), Err(Error::NotPositiveDefinite { index: 4 }));
    }
}

#[test]
fn generator_properties() {
    let a: DenseMatrix<f64> = spd_generate(&SpdSpec::new(30, 1, 1.0)).unwrap();
    assert!(identity_residual(&a) <= 8.0 * 30.0 * EPS);
    let b: DenseMatrix<Z> = spd_generate(&SpdSpec::new(25, 42, 100.0)).unwrap();
    let c: DenseMatrix<Z> = spd_generate(&SpdSpec::new(25, 42, 100.0)).unwrap();
    assert_eq!(b, c);
    assert_eq!(b, b.adjoint());
    assert!(cholesky_lower(&b).is_some());
    let e: DenseMatrix<f64> = spd_generate(&SpdSpec::new(0, 3, 10.0)).unwrap();
    assert_eq!(e.rows(), 0);
    assert!(spd_generate::<f64>(&SpdSpec::new(3, 0, 0.5)).is_err());
    assert!(spd_generate::<f64>(&SpdSpec::new(3, 0, f64::NAN)).is_err());
}

#[test]
fn generator_hits_target_condition() {
    // Smallest and largest eigenvalues bounded through Rayleigh quotients of the inverse and the matrix.
    let n = 40;
    let kappa = 100.0;
    let a: DenseMatrix<f64> = spd(n, 5, kappa);
    let mut inv = a.clone();
    potrf_ref(Uplo::Lower, inv.as_mut()).unwrap();
    let l = triangle(&inv, Uplo::Lower);
    let power = |m: &dyn Fn(&DenseMatrix<f64>) -> DenseMatrix<f64>| {
        let mut v = DenseMatrix::from_fn(n, 1, |i, _| 1.0 + i as f64 * 0.01);
        let mut lam = 0.0;
        for _ in 0..2000 {
            let w = m(&v);
            lam = fro(&w) / fro(&v);
            v = DenseMatrix::from_fn(n, 1, |i, _| w[(i, 0)] / fro(&w));
        }
        lam
    };
    let lmax = power(&|v| matmul(&a, v));
    let lmin_inv = power(&|v| {
        let y = tri_solve(&l, Uplo::Lower, v);
        tri_solve(&l.adjoint(), Uplo::Upper, &y)
    });
    let est = lmax * lmin_inv;
    assert!((est - kappa).abs() <= 1e-6 * kappa, "estimated condition {est}");
}

#[test]
fn ill_conditioned_matrices_still_factor() {
    for (n, kappa) in [(10, 1e6), (150, 1e4), (300, 1e6), (500, 1e6)] {
        let a: DenseMatrix<f64> = spd(n, n as u64, kappa);
        for (uplo, transr) in rfpk::layout::ALL_CASES {
            let mut r = rfpk::convert::trttf(a.as_ref(), uplo, transr).unwrap();
            assert!(rfpk::rfp::pftrf(&mut r).is_ok(), "n={n} kappa={kappa:e} {uplo:?} {transr:?}");
        }
    }
    let z: DenseMatrix<Z> = spd(200, 4, 1e6);
    let mut p = PackedTriangle::from_dense(z.as_ref(), Uplo::Upper).unwrap();
    pptrf_ref(&mut p).unwrap();
}
