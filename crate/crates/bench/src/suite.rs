use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rfpk::convert::trttf;
use rfpk::kernels::{gemm, lauum_ref, potrf_ref, potrs_ref, syrk_herk, trtri_ref, Diag, Op};
use rfpk::packed::{pptrf_ref, pptrs_ref, spd_generate, SpdSpec};
use rfpk::rfp::{pftrf, pftri, pftrs};
use rfpk::{DenseMatrix, PackedTriangle, RfpTriangle, Transr, Uplo};

use crate::record::{BenchRecord, Format, Routine};
use crate::UNIT_ROUNDOFF;

/// Scaled residual thresholds of the inline checks.
pub const FACTOR_LIMIT: f64 = 30.0;
pub const SOLVE_LIMIT: f64 = 30.0;
pub const INVERT_LIMIT: f64 = 1000.0;

/// How many right-hand sides a solve benchmark uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NrhsRule {
    Fixed(usize),
    /// `max(100, n / 10)`.
    Scaled,
}

impl NrhsRule {
    pub fn nrhs(self, n: usize) -> usize {
        match self {
            NrhsRule::Fixed(k) => k,
            NrhsRule::Scaled => (n / 10).max(100),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub sizes: Vec<usize>,
    pub routines: Vec<Routine>,
    pub formats: Vec<Format>,
    pub cases: Vec<(Uplo, Transr)>,
    pub nrhs_rule: NrhsRule,
    pub reps: usize,
    pub seed: u64,
    pub kappa: f64,
    /// Continue after a failed residual check.
    pub keep_going: bool,
}

pub const DEFAULT_SIZES: [usize; 9] = [50, 100, 200, 400, 500, 800, 1000, 1600, 2000];

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            sizes: DEFAULT_SIZES.to_vec(),
            routines: Routine::ALL.to_vec(),
            formats: Format::ALL.to_vec(),
            cases: rfpk::layout::ALL_CASES.to_vec(),
            nrhs_rule: NrhsRule::Scaled,
            reps: 5,
            seed: 42,
            kappa: 100.0,
            keep_going: false,
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum SuiteError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Library(#[from] rfpk::Error),
}

/// Timing and residual of one routine on one format.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub median_seconds: f64,
    pub residual: f64,
}

/// Runs every size, routine and case; the formats of one case are timed in
/// interleaved repetitions so machine drift affects them alike.
///
/// Stops after the first failed residual check unless `keep_going` is set;
/// the failing record is still returned.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<BenchRecord>, SuiteError> {
    if cfg.sizes.is_empty() {
        return Err(SuiteError::Config("no sizes given".into()));
    }
    if cfg.reps < 3 {
        return Err(SuiteError::Config(format!("reps must be at least 3, got {}", cfg.reps)));
    }
    if cfg.kappa.is_nan() || cfg.kappa < 1.0 || cfg.kappa.is_infinite() {
        return Err(SuiteError::Config(format!("kappa must be finite and >= 1, got {}", cfg.kappa)));
    }
    let mut records = Vec::new();
    for &n in &cfg.sizes {
        let a: DenseMatrix<f64> = spd_generate(&SpdSpec::new(n, cfg.seed, cfg.kappa))?;
        for &routine in &cfg.routines {
            let nrhs = if routine == Routine::Solve { cfg.nrhs_rule.nrhs(n) } else { 0 };
            let b = rhs(n, nrhs, cfg.seed);
            let limit = match routine {
                Routine::Factor => FACTOR_LIMIT,
                Routine::Solve => SOLVE_LIMIT,
                Routine::Invert => INVERT_LIMIT * (cfg.kappa / 100.0).max(1.0),
            };
            for &(uplo, transr) in &cfg.cases {
                let mut jobs =
                    cfg.formats.iter().map(|&format| Job::new(routine, format, uplo, transr, &a, &b)).collect::<rfpk::Result<Vec<_>>>()?;
                let mut times = vec![Vec::with_capacity(cfg.reps); jobs.len()];
                for _ in 0..cfg.reps {
                    for (job, t) in jobs.iter_mut().zip(&mut times) {
                        t.push(job.run_once()?);
                    }
                }
                for (job, t) in jobs.iter().zip(times) {
                    let m = Measurement { median_seconds: median(t), residual: job.residual()? };
                    let passed = m.residual <= limit;
                    records.push(BenchRecord {
                        routine,
                        format: job.format,
                        n,
                        nrhs,
                        uplo,
                        transr: (job.format == Format::Rfp).then_some(transr),
                        reps: cfg.reps,
                        median_seconds: m.median_seconds,
                        mflops: routine.flops(n, nrhs) / m.median_seconds / 1e6,
                        residual: m.residual,
                        seed: cfg.seed,
                        passed,
                    });
                    if !passed && !cfg.keep_going {
                        return Ok(records);
                    }
                }
            }
        }
    }
    Ok(records)
}

/// Seeded right-hand sides with entries in `[-1, 1)`.
pub fn rhs(n: usize, nrhs: usize, seed: u64) -> DenseMatrix<f64> {
    let mut g = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_mul(n as u64 + 1));
    DenseMatrix::from_fn(n, nrhs, |_, _| g.gen_range(-1.0..1.0))
}

fn median(mut t: Vec<f64>) -> f64 {
    t.sort_by(f64::total_cmp);
    let k = t.len();
    if k % 2 == 1 {
        t[k / 2]
    } else {
        0.5 * (t[k / 2 - 1] + t[k / 2])
    }
}

#[derive(Clone)]
enum Stored {
    Full(DenseMatrix<f64>),
    Packed(PackedTriangle<f64>),
    Rfp(RfpTriangle<f64>),
}

impl Stored {
    fn new(format: Format, a: &DenseMatrix<f64>, uplo: Uplo, transr: Transr) -> rfpk::Result<Self> {
        Ok(match format {
            Format::Full => Stored::Full(a.clone()),
            Format::Packed => Stored::Packed(PackedTriangle::from_dense(a.as_ref(), uplo)?),
            Format::Rfp => Stored::Rfp(trttf(a.as_ref(), uplo, transr)?),
        })
    }

    fn factor(&mut self, uplo: Uplo) -> rfpk::Result<()> {
        match self {
            Stored::Full(f) => potrf_ref(uplo, f.as_mut()),
            Stored::Packed(p) => pptrf_ref(p),
            Stored::Rfp(r) => pftrf(r),
        }
    }

    /// The stored triangle as a full matrix; the other triangle is unspecified.
    fn triangle(&self) -> rfpk::Result<DenseMatrix<f64>> {
        match self {
            Stored::Full(f) => Ok(f.clone()),
            Stored::Packed(p) => p.to_dense(p.n().max(1)),
            Stored::Rfp(r) => Ok(r.to_full_triangular()),
        }
    }
}

/// One routine on one storage format, timed a run at a time.
struct Job<'a> {
    routine: Routine,
    format: Format,
    uplo: Uplo,
    b: &'a DenseMatrix<f64>,
    a: &'a DenseMatrix<f64>,
    /// Routine input: the matrix for `factor`, its factor otherwise.
    input: Stored,
    last: Option<Stored>,
}

impl<'a> Job<'a> {
    fn new(
        routine: Routine,
        format: Format,
        uplo: Uplo,
        transr: Transr,
        a: &'a DenseMatrix<f64>,
        b: &'a DenseMatrix<f64>,
    ) -> rfpk::Result<Self> {
        let mut input = Stored::new(format, a, uplo, transr)?;
        if routine != Routine::Factor {
            input.factor(uplo)?;
        }
        Ok(Job { routine, format, uplo, a, b, input, last: None })
    }

    /// Copies the input untimed, then times the routine alone.
    fn run_once(&mut self) -> rfpk::Result<f64> {
        let uplo = self.uplo;
        let dense_stages = |f: &mut DenseMatrix<f64>| {
            trtri_ref(uplo, Diag::NonUnit, f.as_mut())?;
            lauum_ref(uplo, f.as_mut())
        };
        let (secs, out) = match self.routine {
            Routine::Factor => {
                let mut s = self.input.clone();
                let t0 = Instant::now();
                s.factor(uplo)?;
                (t0.elapsed().as_secs_f64(), s)
            }
            Routine::Solve => {
                let mut x = self.b.clone();
                let t0 = Instant::now();
                match &self.input {
                    Stored::Full(f) => potrs_ref(uplo, f.as_ref(), x.as_mut())?,
                    Stored::Packed(p) => pptrs_ref(p, x.as_mut())?,
                    Stored::Rfp(r) => pftrs(r, x.as_mut())?,
                }
                (t0.elapsed().as_secs_f64(), Stored::Full(x))
            }
            Routine::Invert => match self.input.clone() {
                Stored::Full(mut f) => {
                    let t0 = Instant::now();
                    dense_stages(&mut f)?;
                    (t0.elapsed().as_secs_f64(), Stored::Full(f))
                }
                Stored::Packed(p) => {
                    let t0 = Instant::now();
                    let mut f = p.to_dense(p.n().max(1))?;
                    dense_stages(&mut f)?;
                    (t0.elapsed().as_secs_f64(), Stored::Full(f))
                }
                Stored::Rfp(mut r) => {
                    let t0 = Instant::now();
                    pftri(&mut r)?;
                    (t0.elapsed().as_secs_f64(), Stored::Rfp(r))
                }
            },
        };
        self.last = Some(out);
        Ok(secs)
    }

    /// Scaled residual of the most recent run.
    fn residual(&self) -> rfpk::Result<f64> {
        let last = self.last.as_ref().expect("run_once called first");
        match self.routine {
            Routine::Factor => factor_residual(self.a, &last.triangle()?, self.uplo),
            Routine::Solve => solve_residual(self.a, &last.triangle()?, self.b),
            Routine::Invert => inverse_residual(self.a, &last.triangle()?, self.uplo),
        }
    }
}

/// Times one routine on one format `reps` times and checks the last result.
pub fn measure(
    routine: Routine,
    format: Format,
    uplo: Uplo,
    transr: Transr,
    a: &DenseMatrix<f64>,
    b: &DenseMatrix<f64>,
    reps: usize,
) -> rfpk::Result<Measurement> {
    let mut job = Job::new(routine, format, uplo, transr, a, b)?;
    let times = (0..reps.max(1)).map(|_| job.run_once()).collect::<rfpk::Result<Vec<_>>>()?;
    Ok(Measurement { median_seconds: median(times), residual: job.residual()? })
}

fn mirrored(t: &DenseMatrix<f64>, uplo: Uplo) -> DenseMatrix<f64> {
    let n = t.rows();
    DenseMatrix::from_fn(n, n, |i, j| if uplo.contains(i, j) { t[(i, j)] } else { t[(j, i)] })
}

/// `||A - L L^T||_F / (n u ||A||_F)` for a factor stored in the `uplo`
/// triangle of `f`. The other triangle of `f` is ignored.
pub fn factor_residual(a: &DenseMatrix<f64>, f: &DenseMatrix<f64>, uplo: Uplo) -> rfpk::Result<f64> {
    let n = a.rows();
    if n == 0 {
        return Ok(0.0);
    }
    let f = DenseMatrix::from_fn(n, n, |i, j| if uplo.contains(i, j) { f[(i, j)] } else { 0.0 });
    let mut c = DenseMatrix::zeros(n, n);
    let trans = if uplo == Uplo::Lower { Op::NoTrans } else { Op::ConjTrans };
    syrk_herk(uplo, trans, 1.0, f.as_ref(), 0.0, c.as_mut())?;
    let c = mirrored(&c, uplo);
    let diff = DenseMatrix::from_fn(n, n, |i, j| a[(i, j)] - c[(i, j)]);
    Ok(diff.frobenius_norm() / (n as f64 * UNIT_ROUNDOFF * a.frobenius_norm()))
}

/// `||A X - B||_F / (n u ||A||_F ||X||_F)`.
pub fn solve_residual(a: &DenseMatrix<f64>, x: &DenseMatrix<f64>, b: &DenseMatrix<f64>) -> rfpk::Result<f64> {
    let n = a.rows();
    if n == 0 || x.cols() == 0 {
        return Ok(0.0);
    }
    let mut r = b.clone();
    gemm(Op::NoTrans, Op::NoTrans, 1.0, a.as_ref(), x.as_ref(), -1.0, r.as_mut())?;
    let scale = n as f64 * UNIT_ROUNDOFF * a.frobenius_norm() * x.frobenius_norm();
    Ok(if scale > 0.0 { r.frobenius_norm() / scale } else { r.frobenius_norm() })
}

/// `||A A^{-1} - I||_F / (n u)` with the inverse given by its `uplo` triangle.
pub fn inverse_residual(a: &DenseMatrix<f64>, inv: &DenseMatrix<f64>, uplo: Uplo) -> rfpk::Result<f64> {
    let n = a.rows();
    if n == 0 {
        return Ok(0.0);
    }
    let mut r = DenseMatrix::<f64>::identity(n);
    gemm(Op::NoTrans, Op::NoTrans, 1.0, a.as_ref(), mirrored(inv, uplo).as_ref(), -1.0, r.as_mut())?;
    Ok(r.frobenius_norm() / (n as f64 * UNIT_ROUNDOFF))
}
