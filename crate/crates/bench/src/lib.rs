//! Timing harness, CSV output, matrix files and self-checks for `rfpk`.

pub mod matfile;
pub mod record;
pub mod suite;
pub mod verify;

pub use matfile::{convert, FileError, MatrixData, MatrixFile, Storage};
pub use record::{emit_csv, read_csv, write_csv, BenchRecord, Format, Routine};
pub use suite::{run_suite, Measurement, NrhsRule, SuiteConfig, SuiteError};

/// Unit roundoff of `f64`.
pub const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

/// Exit status for command-line usage errors.
pub const EXIT_USAGE: i32 = 64;
/// Exit status for malformed input data.
pub const EXIT_DATA: i32 = 65;
/// Exit status for I/O failures.
pub const EXIT_IO: i32 = 2;
/// Exit status when a residual check fails.
pub const EXIT_CHECK: i32 = 1;
