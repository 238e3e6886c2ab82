//! Plain-text matrix files.
//!
//! A file is a header line `RFPK1 <real|complex> <n> <full|packed|rfp>
//! <L|U> <N|T|->` followed by whitespace-separated values in storage order.
//! Complex values are written as `re im` pairs. Full storage is column-major
//! `n x n` with the other triangle ignored on input and written as zero.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use rfpk::convert::{tfttr, trttf};
use rfpk::{c64, DenseMatrix, LayoutDescriptor, PackedTriangle, RfpTriangle, Scalar, Transr, Uplo};

const MAGIC: &str = "RFPK1";

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed matrix file: {0}")]
    Format(String),
}

fn bad(msg: impl Into<String>) -> FileError {
    FileError::Format(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Storage {
    Full,
    Packed,
    Rfp,
}

impl Storage {
    pub fn as_str(self) -> &'static str {
        match self {
            Storage::Full => "full",
            Storage::Packed => "packed",
            Storage::Rfp => "rfp",
        }
    }

    /// Number of stored scalars for order `n`.
    pub fn len(self, n: usize) -> usize {
        match self {
            Storage::Full => n * n,
            Storage::Packed | Storage::Rfp => n * (n + 1) / 2,
        }
    }
}

impl FromStr for Storage {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "full" => Ok(Storage::Full),
            "packed" => Ok(Storage::Packed),
            "rfp" => Ok(Storage::Rfp),
            _ => Err(format!("unknown storage '{s}' (expected full, packed or rfp)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MatrixData {
    Real(Vec<f64>),
    Complex(Vec<c64>),
}

impl MatrixData {
    pub fn len(&self) -> usize {
        match self {
            MatrixData::Real(v) => v.len(),
            MatrixData::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn domain_name(&self) -> &'static str {
        match self {
            MatrixData::Real(_) => "real",
            MatrixData::Complex(_) => "complex",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixFile {
    pub n: usize,
    pub storage: Storage,
    pub uplo: Uplo,
    /// Present exactly for RFP storage.
    pub transr: Option<Transr>,
    pub data: MatrixData,
}

pub fn parse_uplo(s: &str) -> Result<Uplo, String> {
    match s {
        "L" | "l" | "lower" => Ok(Uplo::Lower),
        "U" | "u" | "upper" => Ok(Uplo::Upper),
        _ => Err(format!("unknown uplo '{s}' (expected L or U)")),
    }
}

pub fn parse_transr(s: &str) -> Result<Transr, String> {
    match s {
        "N" | "n" | "normal" => Ok(Transr::Normal),
        "T" | "t" | "C" | "c" | "transposed" => Ok(Transr::Transposed),
        _ => Err(format!("unknown transr '{s}' (expected N or T)")),
    }
}

impl MatrixFile {
    pub fn parse(text: &str) -> Result<Self, FileError> {
        let mut words = text.split_whitespace();
        let mut next = |what: &str| words.next().ok_or_else(|| bad(format!("missing {what}")));
        if next("header")? != MAGIC {
            return Err(bad(format!("file does not start with {MAGIC}")));
        }
        let complex = match next("domain")? {
            "real" => false,
            "complex" => true,
            other => return Err(bad(format!("unknown domain '{other}'"))),
        };
        let n: usize = next("order")?.parse().map_err(|_| bad("order is not a count"))?;
        let storage: Storage = next("storage")?.parse().map_err(bad)?;
        let uplo = parse_uplo(next("uplo")?).map_err(bad)?;
        let transr = match (storage, next("transr")?) {
            (Storage::Rfp, t) => Some(parse_transr(t).map_err(bad)?),
            (_, "-") => None,
            (_, t) => return Err(bad(format!("transr '{t}' given for {} storage", storage.as_str()))),
        };
        let count = storage.len(n);
        let values: Vec<f64> =
            words.map(|w| w.parse::<f64>().map_err(|_| bad(format!("'{w}' is not a number")))).collect::<Result<_, _>>()?;
        let expected = if complex { 2 * count } else { count };
        if values.len() != expected {
            return Err(bad(format!("expected {expected} values, found {}", values.len())));
        }
        let data = if complex {
            MatrixData::Complex(values.chunks_exact(2).map(|p| c64::new(p[0], p[1])).collect())
        } else {
            MatrixData::Real(values)
        };
        Ok(MatrixFile { n, storage, uplo, transr, data })
    }

    pub fn render(&self) -> String {
        let mut s = format!(
            "{MAGIC} {} {} {} {} {}\n",
            self.data.domain_name(),
            self.n,
            self.storage.as_str(),
            self.uplo.as_char(),
            self.transr.map_or('-', |t| t.as_char())
        );
        // `{:e}` is the shortest representation that parses back exactly.
        match &self.data {
            MatrixData::Real(v) => {
                for x in v {
                    let _ = writeln!(s, "{x:e}");
                }
            }
            MatrixData::Complex(v) => {
                for z in v {
                    let _ = writeln!(s, "{:e} {:e}", z.re, z.im);
                }
            }
        }
        s
    }

    pub fn read(path: &Path) -> Result<Self, FileError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<(), FileError> {
        std::fs::write(path, self.render())?;
        Ok(())
    }
}

/// The stored triangle as a full matrix, zero elsewhere.
fn to_dense<T: Scalar>(f: &MatrixFile, data: &[T]) -> Result<DenseMatrix<T>, FileError> {
    let n = f.n;
    let ld = n.max(1);
    let lib = |e: rfpk::Error| bad(e.to_string());
    Ok(match f.storage {
        Storage::Full => {
            let all = DenseMatrix::from_col_major(n, n, ld, padded(data, n, ld)).map_err(lib)?;
            DenseMatrix::from_fn(n, n, |i, j| if f.uplo.contains(i, j) { all[(i, j)] } else { T::zero() })
        }
        Storage::Packed => PackedTriangle::from_buffer(data.to_vec(), n, f.uplo).map_err(lib)?.to_dense(ld).map_err(lib)?,
        Storage::Rfp => {
            let desc = LayoutDescriptor::new(n, f.uplo, f.transr.unwrap_or(Transr::Normal));
            tfttr(&RfpTriangle::from_buffer(data.to_vec(), desc).map_err(lib)?, ld).map_err(lib)?
        }
    })
}

fn padded<T: Scalar>(data: &[T], n: usize, ld: usize) -> Vec<T> {
    if ld == n {
        return data.to_vec();
    }
    let mut v = vec![T::zero(); ld * n];
    for j in 0..n {
        v[j * ld..j * ld + n].copy_from_slice(&data[j * n..j * n + n]);
    }
    v
}

fn convert_typed<T: Scalar>(f: &MatrixFile, data: &[T], to: Storage, uplo: Uplo, transr: Transr) -> Result<Vec<T>, FileError> {
    let mut a = to_dense(f, data)?;
    let n = f.n;
    if uplo != f.uplo {
        for j in 0..n {
            for i in 0..n {
                if f.uplo.contains(i, j) && i != j {
                    a[(j, i)] = a[(i, j)].conj();
                    a[(i, j)] = T::zero();
                }
            }
        }
    }
    let lib = |e: rfpk::Error| bad(e.to_string());
    Ok(match to {
        Storage::Full => (0..n).flat_map(|j| (0..n).map(move |i| (i, j))).map(|(i, j)| a[(i, j)]).collect(),
        Storage::Packed => PackedTriangle::from_dense(a.as_ref(), uplo).map_err(lib)?.into_vec(),
        Storage::Rfp => trttf(a.as_ref(), uplo, transr).map_err(lib)?.into_vec(),
    })
}

/// Re-stores the triangle of `f` in `to` storage with the given triangle and
/// RFP orientation. Changing `uplo` mirrors the data as a Hermitian matrix.
pub fn convert(f: &MatrixFile, to: Storage, uplo: Uplo, transr: Transr) -> Result<MatrixFile, FileError> {
    if f.data.len() != f.storage.len(f.n) {
        return Err(bad(format!("expected {} values, found {}", f.storage.len(f.n), f.data.len())));
    }
    let data = match &f.data {
        MatrixData::Real(v) => MatrixData::Real(convert_typed(f, v, to, uplo, transr)?),
        MatrixData::Complex(v) => MatrixData::Complex(convert_typed(f, v, to, uplo, transr)?),
    };
    Ok(MatrixFile { n: f.n, storage: to, uplo, transr: (to == Storage::Rfp).then_some(transr), data })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(n: usize) -> MatrixFile {
        let data = (0..n * n).map(|k| c64::new(k as f64 * 0.1, -(k as f64) / 3.0)).collect();
        MatrixFile { n, storage: Storage::Full, uplo: Uplo::Lower, transr: None, data: MatrixData::Complex(data) }
    }

    #[test]
    fn render_parse_round_trip() {
        let f = sample(4);
        assert_eq!(MatrixFile::parse(&f.render()).unwrap(), f);
        let r = MatrixFile {
            n: 1,
            storage: Storage::Rfp,
            uplo: Uplo::Upper,
            transr: Some(Transr::Transposed),
            data: MatrixData::Real(vec![f64::MIN_POSITIVE]),
        };
        assert_eq!(MatrixFile::parse(&r.render()).unwrap(), r);
    }

    #[test]
    fn header_errors() {
        assert!(MatrixFile::parse("RFPK2 real 1 full L -\n1").is_err());
        assert!(MatrixFile::parse("RFPK1 real 2 full L -\n1 2 3").is_err());
        assert!(MatrixFile::parse("RFPK1 real 1 packed L N\n1").is_err());
        assert!(MatrixFile::parse("RFPK1 real 1 rfp L -\n1").is_err());
        assert!(MatrixFile::parse("RFPK1 real 0 rfp U T\n").is_ok());
    }

    #[test]
    fn full_rfp_full_keeps_triangle() {
        let f = sample(5);
        let r = convert(&f, Storage::Rfp, Uplo::Lower, Transr::Transposed).unwrap();
        let back = convert(&r, Storage::Full, Uplo::Lower, Transr::Normal).unwrap();
        let (MatrixData::Complex(a), MatrixData::Complex(b)) = (&f.data, &back.data) else { unreachable!() };
        for j in 0..5 {
            for i in 0..5 {
                let want = if i >= j { a[i + 5 * j] } else { c64::new(0.0, 0.0) };
                assert_eq!(b[i + 5 * j], want);
            }
        }
    }

    #[test]
    fn switching_triangle_mirrors() {
        let f = MatrixFile {
            n: 2,
            storage: Storage::Packed,
            uplo: Uplo::Lower,
            transr: None,
            data: MatrixData::Complex(vec![c64::new(1.0, 0.0), c64::new(2.0, 3.0), c64::new(4.0, 0.0)]),
        };
        let u = convert(&f, Storage::Packed, Uplo::Upper, Transr::Normal).unwrap();
        assert_eq!(u.data, MatrixData::Complex(vec![c64::new(1.0, 0.0), c64::new(2.0, -3.0), c64::new(4.0, 0.0)]));
    }
}
