//! Self-checks run by `rfpk verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rfpk::convert::{tfttp, tfttr, tpttf, trttf};
use rfpk::kernels::{gemm, potrf_ref, syrk_herk, trsm, Diag, Op, Side};
use rfpk::layout::ALL_CASES;
use rfpk::packed::{spd_generate, SpdSpec};
use rfpk::rfp::{lansf, pftrf, pftri, pftrs, sfrk, tfsm, trace_kernel_calls, KernelCall, Norm};
use rfpk::{c64, DenseMatrix, LayoutDescriptor, PackedTriangle, Scalar, Transr, Uplo};

use crate::UNIT_ROUNDOFF as U;

pub struct CheckResult {
    pub name: &'static str,
    pub outcome: Result<(), String>,
}

type Check = (&'static str, fn() -> Result<(), String>);

const CHECKS: [Check; 12] = [
    ("minimal storage", storage),
    ("layout bijection", bijection),
    ("layout positions", positions),
    ("conversion round trips", round_trips),
    ("factorization residual", factor::<f64>),
    ("complex factorization residual", factor::<c64>),
    ("solve residual", solve),
    ("inverse residual", inverse),
    ("kernel call structure", structure),
    ("failure index", failure_index),
    ("triangular solve", triangular_solve),
    ("rank-k update and norms", update_and_norms),
];

/// Runs every check in order.
pub fn run_all() -> Vec<CheckResult> {
    CHECKS.iter().map(|&(name, f)| CheckResult { name, outcome: f() }).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib(e: rfpk::Error) -> String {
    e.to_string()
}

fn random<T: Scalar>(rows: usize, cols: usize, g: &mut ChaCha8Rng) -> DenseMatrix<T> {
    DenseMatrix::from_fn(rows, cols, |_, _| T::from_parts(g.gen_range(-1.0..1.0), g.gen_range(-1.0..1.0)))
}

fn hermitian<T: Scalar>(t: &DenseMatrix<T>, uplo: Uplo) -> DenseMatrix<T> {
    let n = t.rows();
    DenseMatrix::from_fn(n, n, |i, j| if uplo.contains(i, j) { t[(i, j)] } else { t[(j, i)].conj() })
}

fn product<T: Scalar>(a: &DenseMatrix<T>, ta: Op, b: &DenseMatrix<T>, tb: Op) -> Result<DenseMatrix<T>, String> {
    let m = if ta.is_trans() { a.cols() } else { a.rows() };
    let n = if tb.is_trans() { b.rows() } else { b.cols() };
    let mut c = DenseMatrix::zeros(m, n);
    gemm(ta, tb, T::one(), a.as_ref(), b.as_ref(), T::zero(), c.as_mut()).map_err(lib)?;
    Ok(c)
}

fn diff_norm<T: Scalar>(a: &DenseMatrix<T>, b: &DenseMatrix<T>) -> f64 {
    DenseMatrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)] - b[(i, j)]).frobenius_norm()
}

fn sizes() -> impl Iterator<Item = usize> {
    (1..=20).chain([31, 32, 64, 127, 128])
}

fn storage() -> Result<(), String> {
    for n in 1..=64 {
        for (uplo, transr) in ALL_CASES {
            let r = rfpk::RfpTriangle::<f64>::zeros(n, uplo, transr);
            ensure(r.as_slice().len() == n * (n + 1) / 2, || format!("n={n}: length {}", r.as_slice().len()))?;
        }
    }
    Ok(())
}

fn bijection() -> Result<(), String> {
    for n in 0..=64 {
        for (uplo, transr) in ALL_CASES {
            let d = LayoutDescriptor::new(n, uplo, transr);
            let mut seen = vec![false; d.nt];
            for j in 0..n {
                for i in 0..n {
                    if uplo.contains(i, j) {
                        let (off, _) = d.locate(i, j);
                        ensure(!seen[off], || format!("n={n} {uplo:?} {transr:?}: offset {off} hit twice"))?;
                        seen[off] = true;
                    }
                }
            }
            ensure(seen.iter().all(|&s| s), || format!("n={n} {uplo:?} {transr:?}: not onto"))?;
        }
    }
    Ok(())
}

fn positions() -> Result<(), String> {
    let golden = [
        (7, Uplo::Lower, 5, 5, 8),
        (7, Uplo::Lower, 7, 4, 28),
        (7, Uplo::Lower, 2, 1, 2),
        (6, Uplo::Lower, 4, 4, 1),
        (6, Uplo::Lower, 6, 4, 15),
        (6, Uplo::Lower, 6, 5, 16),
        (6, Uplo::Upper, 4, 5, 11),
        (6, Uplo::Upper, 5, 6, 19),
        (1, Uplo::Lower, 1, 1, 1),
    ];
    for (n, uplo, i, j, want) in golden {
        let got = LayoutDescriptor::new(n, uplo, Transr::Normal).map_index(i, j).map_err(lib)?;
        ensure(got == want, || format!("n={n} {uplo:?} ({i},{j}): {got} != {want}"))?;
    }
    Ok(())
}

fn round_trip<T: Scalar>(n: usize, g: &mut ChaCha8Rng) -> Result<(), String> {
    let a: DenseMatrix<T> = random(n, n, g);
    for (uplo, transr) in ALL_CASES {
        let r = trttf(a.as_ref(), uplo, transr).map_err(lib)?;
        let back = tfttr(&r, n.max(1)).map_err(lib)?;
        let p = PackedTriangle::from_dense(a.as_ref(), uplo).map_err(lib)?;
        let pr = tfttp(&tpttf(&p, transr));
        for j in 0..n {
            for i in 0..n {
                if uplo.contains(i, j) {
                    let same = |x: T, y: T| x.re().to_bits() == y.re().to_bits() && x.im().to_bits() == y.im().to_bits();
                    ensure(same(back[(i, j)], a[(i, j)]), || format!("full n={n} {uplo:?} {transr:?} ({i},{j})"))?;
                    ensure(same(pr.get(i, j), a[(i, j)]), || format!("packed n={n} {uplo:?} {transr:?} ({i},{j})"))?;
                }
            }
        }
    }
    Ok(())
}

fn round_trips() -> Result<(), String> {
    let mut g = ChaCha8Rng::seed_from_u64(3);
    for n in 0..=40 {
        round_trip::<f64>(n, &mut g)?;
        round_trip::<c64>(n, &mut g)?;
    }
    Ok(())
}

fn spd<T: Scalar>(n: usize, seed: u64) -> Result<DenseMatrix<T>, String> {
    spd_generate(&SpdSpec::new(n, seed, 100.0)).map_err(lib)
}

fn factor<T: Scalar>() -> Result<(), String> {
    for n in sizes() {
        let a = spd::<T>(n, n as u64)?;
        for (uplo, transr) in ALL_CASES {
            let mut r = trttf(a.as_ref(), uplo, transr).map_err(lib)?;
            pftrf(&mut r).map_err(lib)?;
            let f = r.to_full_triangular();
            let (ta, tb) = if uplo == Uplo::Lower { (Op::NoTrans, Op::ConjTrans) } else { (Op::ConjTrans, Op::NoTrans) };
            let llh = product(&f, ta, &f, tb)?;
            let res = diff_norm(&a, &llh) / (n as f64 * U * a.frobenius_norm());
            ensure(res <= 30.0, || format!("n={n} {uplo:?} {transr:?}: scaled residual {res:.2}"))?;
            for k in 0..n {
                ensure(r.get(k, k).im() == 0.0, || format!("n={n}: complex diagonal"))?;
            }
        }
    }
    Ok(())
}

fn solve() -> Result<(), String> {
    let mut g = ChaCha8Rng::seed_from_u64(5);
    for n in sizes() {
        let a = spd::<c64>(n, n as u64)?;
        for nrhs in [1, 3, 100] {
            let b: DenseMatrix<c64> = random(n, nrhs, &mut g);
            for (uplo, transr) in ALL_CASES {
                let mut r = trttf(a.as_ref(), uplo, transr).map_err(lib)?;
                pftrf(&mut r).map_err(lib)?;
                let mut x = b.clone();
                pftrs(&r, x.as_mut()).map_err(lib)?;
                let res =
                    diff_norm(&product(&a, Op::NoTrans, &x, Op::NoTrans)?, &b) / (n as f64 * U * a.frobenius_norm() * x.frobenius_norm());
                ensure(res <= 30.0, || format!("n={n} nrhs={nrhs} {uplo:?} {transr:?}: {res:.2}"))?;
            }
        }
    }
    Ok(())
}

fn inverse() -> Result<(), String> {
    for n in sizes() {
        let a = spd::<f64>(n, n as u64)?;
        for (uplo, transr) in ALL_CASES {
            let mut r = trttf(a.as_ref(), uplo, transr).map_err(lib)?;
            pftrf(&mut r).map_err(lib)?;
            pftri(&mut r).map_err(lib)?;
            let ai = product(&a, Op::NoTrans, &r.to_full_hermitian(), Op::NoTrans)?;
            let res = diff_norm(&ai, &DenseMatrix::identity(n)) / (n as f64 * U);
            ensure(res <= 1000.0, || format!("n={n} {uplo:?} {transr:?}: {res:.2}"))?;
        }
    }
    Ok(())
}

fn structure() -> Result<(), String> {
    for n in [2, 3, 64, 65] {
        let a = spd::<f64>(n, 1)?;
        for (uplo, transr) in ALL_CASES {
            let mut r = trttf(a.as_ref(), uplo, transr).map_err(lib)?;
            let (res, calls) = trace_kernel_calls(|| pftrf(&mut r));
            res.map_err(lib)?;
            let lapack = calls.iter().filter(|c| c.is_lapack()).count();
            ensure(lapack == 2 && calls.len() == 4, || format!("n={n} {uplo:?} {transr:?}: {calls:?}"))?;
            ensure(calls[0] == KernelCall::Potrf && calls[3] == KernelCall::Potrf, || format!("{calls:?}"))?;
        }
    }
    Ok(())
}

fn failure_index() -> Result<(), String> {
    let mut g = ChaCha8Rng::seed_from_u64(9);
    for n in [3, 8, 17, 40] {
        let mut a = spd::<f64>(n, n as u64)?;
        let k = g.gen_range(0..n);
        a[(k, k)] = -1.0;
        let mut full = a.clone();
        let want = potrf_ref(Uplo::Lower, full.as_mut()).err();
        for (uplo, transr) in ALL_CASES {
            let mut r = trttf(a.as_ref(), uplo, transr).map_err(lib)?;
            let got = pftrf(&mut r).err();
            ensure(got == want && want.is_some(), || format!("n={n}: {got:?} != {want:?}"))?;
        }
    }
    Ok(())
}

fn triangular_solve() -> Result<(), String> {
    let mut g = ChaCha8Rng::seed_from_u64(11);
    for n in [1, 2, 7, 20, 32] {
        for (uplo, transr) in ALL_CASES {
            let mut t: DenseMatrix<f64> = random(n, n, &mut g);
            for k in 0..n {
                t[(k, k)] = 4.0;
            }
            let r = trttf(t.as_ref(), uplo, transr).map_err(lib)?;
            for side in [Side::Left, Side::Right] {
                for trans in [Op::NoTrans, Op::Trans] {
                    for diag in [Diag::NonUnit, Diag::Unit] {
                        let b: DenseMatrix<f64> = if side == Side::Left { random(n, 3, &mut g) } else { random(3, n, &mut g) };
                        let mut x = b.clone();
                        tfsm(side, trans, diag, 1.5, &r, x.as_mut()).map_err(lib)?;
                        let mut y = b.clone();
                        trsm(side, uplo, trans, diag, 1.5, t.as_ref(), y.as_mut()).map_err(lib)?;
                        let rel = diff_norm(&x, &y) / y.frobenius_norm();
                        ensure(rel <= 1e3 * U, || format!("n={n} {uplo:?} {transr:?} {side:?} {trans:?} {diag:?}: {rel:e}"))?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn update_and_norms() -> Result<(), String> {
    let mut g = ChaCha8Rng::seed_from_u64(13);
    for n in [1, 2, 9, 20, 32] {
        for (uplo, transr) in ALL_CASES {
            for trans in [Op::NoTrans, Op::ConjTrans] {
                let a: DenseMatrix<c64> = if trans == Op::NoTrans { random(n, 5, &mut g) } else { random(5, n, &mut g) };
                let c0 = hermitian(&spd::<c64>(n, 2)?, uplo);
                let mut r = trttf(c0.as_ref(), uplo, transr).map_err(lib)?;
                sfrk(trans, -0.5, a.as_ref(), 2.0, &mut r).map_err(lib)?;
                let mut c = c0.clone();
                syrk_herk(uplo, trans, -0.5, a.as_ref(), 2.0, c.as_mut()).map_err(lib)?;
                let c = hermitian(&c, uplo);
                let rel = diff_norm(&r.to_full_hermitian(), &c) / c.frobenius_norm();
                ensure(rel <= 8.0 * U * n as f64, || format!("sfrk n={n} {uplo:?} {transr:?} {trans:?}: {rel:e}"))?;
                let fro = lansf(Norm::Frobenius, &r);
                let want = c.frobenius_norm();
                ensure((fro - want).abs() <= 4.0 * U * ((n * (n + 1) / 2) as f64).sqrt() * want, || format!("lansf n={n}"))?;
                ensure(lansf(Norm::Max, &r) == c.max_abs(), || format!("lansf max n={n}"))?;
            }
        }
    }
    Ok(())
}
