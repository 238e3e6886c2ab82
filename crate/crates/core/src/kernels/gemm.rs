use crate::error::{Error, Result};
use crate::matrix::{MatMut, MatRef};
use crate::scalar::Scalar;

use super::{scale, Op};

const MR: usize = 8;
const NR: usize = 6;
const MC: usize = 96;
const KC: usize = 256;
const NC: usize = 1024;

/// Upper bound on the packing workspace of one `gemm` call, in scalars.
pub const GEMM_WORKSPACE: usize = MC.next_multiple_of(MR) * KC + KC * NC.next_multiple_of(NR);

/// Products below this many multiply-adds skip packing.
const SMALL: usize = 4096;

#[inline(always)]
fn dims<T: Scalar>(op: Op, a: &MatRef<'_, T>) -> (usize, usize) {
    if op.is_trans() {
        (a.cols(), a.rows())
    } else {
        (a.rows(), a.cols())
    }
}

/// Element `(i, j)` of `op(a)`.
///
/// # Safety
/// `(i, j)` in bounds of `op(a)`.
#[inline(always)]
unsafe fn op_at<T: Scalar>(op: Op, a: &MatRef<'_, T>, i: usize, j: usize) -> T {
    match op {
        Op::NoTrans => a.at(i, j),
        Op::Trans => a.at(j, i),
        Op::ConjTrans => a.at(j, i).conj(),
    }
}

/// `C <- alpha * op(A) * op(B) + beta * C`.
///
/// `beta == 0` overwrites `C` without reading it. The k-loop order is fixed,
/// so results are reproducible run to run.
pub fn gemm<T: Scalar>(transa: Op, transb: Op, alpha: T, a: MatRef<'_, T>, b: MatRef<'_, T>, beta: T, mut c: MatMut<'_, T>) -> Result<()> {
    let (m, k) = dims(transa, &a);
    let (kb, n) = dims(transb, &b);
    if k != kb || c.rows() != m || c.cols() != n {
        return Err(Error::Shape(format!("gemm: op(A) is {m}x{k}, op(B) is {kb}x{n}, C is {}x{}", c.rows(), c.cols())));
    }
    if m == 0 || n == 0 {
        return Ok(());
    }
    scale(beta, &mut c);
    if alpha == T::zero() || k == 0 {
        return Ok(());
    }

    if m * n * k <= SMALL {
        small(transa, transb, alpha, &a, &b, &mut c, m, n, k);
        return Ok(());
    }

    let mut apack = vec![T::zero(); MC.min(m).next_multiple_of(MR) * KC.min(k)];
    let mut bpack = vec![T::zero(); KC.min(k) * NC.min(n).next_multiple_of(NR)];

    for jc in (0..n).step_by(NC) {
        let nc = NC.min(n - jc);
        for pc in (0..k).step_by(KC) {
            let kc = KC.min(k - pc);
            pack_b(transb, &b, pc, kc, jc, nc, &mut bpack);
            for ic in (0..m).step_by(MC) {
                let mc = MC.min(m - ic);
                pack_a(transa, alpha, &a, ic, mc, pc, kc, &mut apack);
                macro_kernel(mc, nc, kc, &apack, &bpack, &mut c, ic, jc);
            }
        }
    }
    Ok(())
}

/// Multiplies packed panels into `C[ic.., jc..]`, using a wider vector
/// build when the CPU has one.
#[allow(clippy::too_many_arguments)]
fn macro_kernel<T: Scalar>(mc: usize, nc: usize, kc: usize, apack: &[T], bpack: &[T], c: &mut MatMut<'_, T>, ic: usize, jc: usize) {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("avx2") {
            unsafe { macro_kernel_avx2(mc, nc, kc, apack, bpack, c, ic, jc) };
            return;
        }
    }
    macro_kernel_body(mc, nc, kc, apack, bpack, c, ic, jc);
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2")]
#[allow(clippy::too_many_arguments)]
unsafe fn macro_kernel_avx2<T: Scalar>(
    mc: usize,
    nc: usize,
    kc: usize,
    apack: &[T],
    bpack: &[T],
    c: &mut MatMut<'_, T>,
    ic: usize,
    jc: usize,
) {
    macro_kernel_body(mc, nc, kc, apack, bpack, c, ic, jc);
}

#[inline(always)]
#[allow(clippy::too_many_arguments)]
fn macro_kernel_body<T: Scalar>(mc: usize, nc: usize, kc: usize, apack: &[T], bpack: &[T], c: &mut MatMut<'_, T>, ic: usize, jc: usize) {
    for jr in (0..nc).step_by(NR) {
        let nr = NR.min(nc - jr);
        let bp = &bpack[(jr / NR) * kc * NR..][..kc * NR];
        for ir in (0..mc).step_by(MR) {
            let mr = MR.min(mc - ir);
            let ap = &apack[(ir / MR) * kc * MR..][..kc * MR];
            let acc = tile(kc, ap, bp);
            for (j, col) in acc.iter().enumerate().take(nr) {
                for (i, v) in col.iter().enumerate().take(mr) {
                    unsafe {
                        let p = c.slot(ic + ir + i, jc + jr + j);
                        *p += *v;
                    }
                }
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn small<T: Scalar>(
    transa: Op,
    transb: Op,
    alpha: T,
    a: &MatRef<'_, T>,
    b: &MatRef<'_, T>,
    c: &mut MatMut<'_, T>,
    m: usize,
    n: usize,
    k: usize,
) {
    unsafe {
        if transa == Op::NoTrans {
            for j in 0..n {
                for p in 0..k {
                    let t = alpha * op_at(transb, b, p, j);
                    for i in 0..m {
                        *c.slot(i, j) += a.at(i, p) * t;
                    }
                }
            }
        } else {
            for j in 0..n {
                for i in 0..m {
                    let mut s = T::zero();
                    for p in 0..k {
                        s += op_at(transa, a, i, p) * op_at(transb, b, p, j);
                    }
                    *c.slot(i, j) += alpha * s;
                }
            }
        }
    }
}

/// Packs `alpha * op(A)[ic.., pc..]` into `MR`-row strips, zero padded.
#[allow(clippy::too_many_arguments)]
fn pack_a<T: Scalar>(op: Op, alpha: T, a: &MatRef<'_, T>, ic: usize, mc: usize, pc: usize, kc: usize, out: &mut [T]) {
    for (s, ir) in (0..mc).step_by(MR).enumerate() {
        let mr = MR.min(mc - ir);
        let strip = &mut out[s * kc * MR..][..kc * MR];
        for p in 0..kc {
            let dst = &mut strip[p * MR..][..MR];
            for (i, d) in dst.iter_mut().enumerate() {
                *d = if i < mr { alpha * unsafe { op_at(op, a, ic + ir + i, pc + p) } } else { T::zero() };
            }
        }
    }
}

/// Packs `op(B)[pc.., jc..]` into `NR`-column strips, zero padded.
fn pack_b<T: Scalar>(op: Op, b: &MatRef<'_, T>, pc: usize, kc: usize, jc: usize, nc: usize, out: &mut [T]) {
    for (s, jr) in (0..nc).step_by(NR).enumerate() {
        let nr = NR.min(nc - jr);
        let strip = &mut out[s * kc * NR..][..kc * NR];
        for p in 0..kc {
            let dst = &mut strip[p * NR..][..NR];
            for (j, d) in dst.iter_mut().enumerate() {
                *d = if j < nr { unsafe { op_at(op, b, pc + p, jc + jr + j) } } else { T::zero() };
            }
        }
    }
}

#[inline(always)]
fn tile<T: Scalar>(kc: usize, ap: &[T], bp: &[T]) -> [[T; MR]; NR] {
    #[cfg(target_arch = "x86_64")]
    {
        use std::any::TypeId;
        if TypeId::of::<T>() == TypeId::of::<f64>() && fma_available() {
            let mut acc = [[T::zero(); MR]; NR];
            // T is f64 here, so the casts are identities.
            unsafe {
                let acc64 = &mut *(&mut acc as *mut [[T; MR]; NR] as *mut [[f64; MR]; NR]);
                tile_f64_fma(kc, ap.as_ptr() as *const f64, bp.as_ptr() as *const f64, acc64);
            }
            return acc;
        }
    }
    micro_kernel(kc, ap, bp)
}

#[cfg(target_arch = "x86_64")]
#[inline(always)]
fn fma_available() -> bool {
    std::arch::is_x86_feature_detected!("avx2") && std::arch::is_x86_feature_detected!("fma")
}

/// 8x6 register tile for `f64`.
///
/// # Safety
/// `ap` holds `kc * 8` and `bp` holds `kc * 6` readable values; the CPU
/// supports AVX2 and FMA.
#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2,fma")]
unsafe fn tile_f64_fma(kc: usize, ap: *const f64, bp: *const f64, acc: &mut [[f64; MR]; NR]) {
    use std::arch::x86_64::*;
    let mut c = [[_mm256_setzero_pd(); 2]; NR];
    for p in 0..kc {
        let a0 = _mm256_loadu_pd(ap.add(p * MR));
        let a1 = _mm256_loadu_pd(ap.add(p * MR + 4));
        let b = bp.add(p * NR);
        for (j, cj) in c.iter_mut().enumerate() {
            let bj = _mm256_broadcast_sd(&*b.add(j));
            cj[0] = _mm256_fmadd_pd(a0, bj, cj[0]);
            cj[1] = _mm256_fmadd_pd(a1, bj, cj[1]);
        }
    }
    for (j, cj) in c.iter().enumerate() {
        _mm256_storeu_pd(acc[j].as_mut_ptr(), cj[0]);
        _mm256_storeu_pd(acc[j].as_mut_ptr().add(4), cj[1]);
    }
}

#[inline(always)]
fn micro_kernel<T: Scalar>(kc: usize, ap: &[T], bp: &[T]) -> [[T; MR]; NR] {
    let mut acc = [[T::zero(); MR]; NR];
    for (a, b) in ap.chunks_exact(MR).zip(bp.chunks_exact(NR)).take(kc) {
        for j in 0..NR {
            let bj = b[j];
            for i in 0..MR {
                acc[j][i] += a[i] * bj;
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::DenseMatrix;
    use crate::scalar::c64;

    fn naive<T: Scalar>(ta: Op, tb: Op, alpha: T, a: &DenseMatrix<T>, b: &DenseMatrix<T>, beta: T, c: &DenseMatrix<T>) -> DenseMatrix<T> {
        let (m, k) = if ta.is_trans() { (a.cols(), a.rows()) } else { (a.rows(), a.cols()) };
        let n = c.cols();
        let ga = |i: usize, p: usize| match ta {
            Op::NoTrans => a[(i, p)],
            Op::Trans => a[(p, i)],
            Op::ConjTrans => a[(p, i)].conj(),
        };
        let gb = |p: usize, j: usize| match tb {
            Op::NoTrans => b[(p, j)],
            Op::Trans => b[(j, p)],
            Op::ConjTrans => b[(j, p)].conj(),
        };
        DenseMatrix::from_fn(m, n, |i, j| {
            let mut s = T::zero();
            for p in 0..k {
                s += ga(i, p) * gb(p, j);
            }
            alpha * s + beta * c[(i, j)]
        })
    }

    #[test]
    fn two_by_two_times_vector() {
        let a = DenseMatrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]);
        let b = DenseMatrix::from_rows(&[[5.0], [6.0]]);
        let mut c = DenseMatrix::zeros(2, 1);
        gemm(Op::NoTrans, Op::NoTrans, 1.0, a.as_ref(), b.as_ref(), 0.0, c.as_mut()).unwrap();
        assert_eq!(c, DenseMatrix::from_rows(&[[17.0], [39.0]]));
    }

    #[test]
    fn identity_and_zero_alpha() {
        let b = DenseMatrix::from_rows(&[[1.0, -2.0], [0.5, 3.0], [7.0, 8.0]]);
        let mut c = DenseMatrix::from_rows(&[[f64::NAN; 2]; 3]);
        gemm(Op::NoTrans, Op::NoTrans, 1.0, DenseMatrix::identity(3).as_ref(), b.as_ref(), 0.0, c.as_mut()).unwrap();
        assert_eq!(c, b);

        let before = c.clone();
        gemm(Op::NoTrans, Op::NoTrans, 0.0, b.as_ref(), DenseMatrix::identity(2).as_ref(), 1.0, c.as_mut()).unwrap();
        assert_eq!(c, before);
    }

    #[test]
    fn shape_mismatch() {
        let a = DenseMatrix::<f64>::zeros(2, 3);
        let mut c = DenseMatrix::zeros(2, 2);
        let r = gemm(Op::NoTrans, Op::NoTrans, 1.0, a.as_ref(), a.as_ref(), 0.0, c.as_mut());
        assert!(matches!(r, Err(Error::Shape(_))));
    }

    #[test]
    fn packed_path_matches_naive_for_all_ops() {
        let mut seed = 7u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let (m, n, k) = (37, 29, 300);
        for ta in [Op::NoTrans, Op::Trans, Op::ConjTrans] {
            for tb in [Op::NoTrans, Op::Trans, Op::ConjTrans] {
                let a = if ta.is_trans() {
                    DenseMatrix::from_fn(k, m, |_, _| c64::new(next(), next()))
                } else {
                    DenseMatrix::from_fn(m, k, |_, _| c64::new(next(), next()))
                };
                let b = if tb.is_trans() {
                    DenseMatrix::from_fn(n, k, |_, _| c64::new(next(), next()))
                } else {
                    DenseMatrix::from_fn(k, n, |_, _| c64::new(next(), next()))
                };
                let c0 = DenseMatrix::from_fn(m, n, |_, _| c64::new(next(), next()));
                let alpha = c64::new(0.5, -1.25);
                let beta = c64::new(-0.75, 0.5);
                let want = naive(ta, tb, alpha, &a, &b, beta, &c0);
                let mut c = c0.clone();
                gemm(ta, tb, alpha, a.as_ref(), b.as_ref(), beta, c.as_mut()).unwrap();
                for j in 0..n {
                    for i in 0..m {
                        assert!((c[(i, j)] - want[(i, j)]).norm() < 1e-12, "{ta:?} {tb:?} ({i},{j})");
                    }
                }
            }
        }
    }
}
