use std::fmt;
use std::io::{self, Write};
use std::path::Path;
use std::str::FromStr;

use rfpk::{Transr, Uplo};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Routine {
    Factor,
    Solve,
    Invert,
}

impl Routine {
    pub const ALL: [Routine; 3] = [Routine::Factor, Routine::Solve, Routine::Invert];

    pub fn as_str(self) -> &'static str {
        match self {
            Routine::Factor => "factor",
            Routine::Solve => "solve",
            Routine::Invert => "invert",
        }
    }

    /// Conventional flop count for order `n` with `nrhs` right-hand sides.
    pub fn flops(self, n: usize, nrhs: usize) -> f64 {
        let n = n as f64;
        match self {
            Routine::Factor => n * n * n / 3.0,
            Routine::Solve => 2.0 * n * n * nrhs as f64,
            Routine::Invert => 2.0 * n * n * n / 3.0,
        }
    }
}

impl fmt::Display for Routine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Routine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Routine::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| format!("unknown routine '{s}' (expected factor, solve or invert)"))
    }
}

/// Storage format a benchmark runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Full,
    Packed,
    Rfp,
}

impl Format {
    pub const ALL: [Format; 3] = [Format::Full, Format::Packed, Format::Rfp];

    pub fn as_str(self) -> &'static str {
        match self {
            Format::Full => "full",
            Format::Packed => "packed",
            Format::Rfp => "rfp",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Format::ALL.into_iter().find(|r| r.as_str() == s).ok_or_else(|| format!("unknown format '{s}' (expected full, packed or rfp)"))
    }
}

/// One timed benchmark configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub routine: Routine,
    pub format: Format,
    pub n: usize,
    pub nrhs: usize,
    pub uplo: Uplo,
    /// Only meaningful for RFP rows.
    pub transr: Option<Transr>,
    pub reps: usize,
    pub median_seconds: f64,
    pub mflops: f64,
    /// Scaled residual of the inline check.
    pub residual: f64,
    pub seed: u64,
    /// Whether the residual met its threshold. Not part of the CSV row.
    pub passed: bool,
}

pub const CSV_HEADER: [&str; 11] =
    ["routine", "format", "n", "nrhs", "uplo", "transr", "reps", "median_seconds", "mflops", "residual", "seed"];

/// Note appended when packed inversion rows are present.
pub const PACKED_INVERT_NOTE: &str = "# packed invert baseline: pptrf_ref factor, unpack to full, then trtri_ref and lauum_ref";

fn real(x: f64) -> String {
    format!("{x:.16e}")
}

impl BenchRecord {
    fn fields(&self) -> [String; 11] {
        [
            self.routine.to_string(),
            self.format.to_string(),
            self.n.to_string(),
            self.nrhs.to_string(),
            self.uplo.as_char().to_string(),
            self.transr.map_or("-".to_string(), |t| t.as_char().to_string()),
            self.reps.to_string(),
            real(self.median_seconds),
            real(self.mflops),
            real(self.residual),
            self.seed.to_string(),
        ]
    }

    /// The columns that do not depend on timing.
    pub fn stable_fields(&self) -> (Routine, Format, usize, usize, Uplo, Option<Transr>, usize, u64, u64) {
        (self.routine, self.format, self.n, self.nrhs, self.uplo, self.transr, self.reps, self.residual.to_bits(), self.seed)
    }
}

/// Writes the header, one row per record and trailing `#` notes.
pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record(r.fields())?;
    }
    w.flush()?;
    let mut out = w.into_inner().map_err(|e| e.into_error())?;
    if records.iter().any(|r| r.routine == Routine::Invert && r.format == Format::Packed) {
        writeln!(out, "{PACKED_INVERT_NOTE}")?;
    }
    for r in records.iter().filter(|r| !r.passed) {
        writeln!(
            out,
            "# residual check failed: {} {} n={} uplo={} transr={} residual={}",
            r.routine,
            r.format,
            r.n,
            r.uplo.as_char(),
            r.transr.map_or('-', |t| t.as_char()),
            real(r.residual)
        )?;
    }
    out.flush()
}

/// Writes records to `path`.
pub fn emit_csv(records: &[BenchRecord], path: &Path) -> io::Result<()> {
    let file = std::fs::File::create(path)?;
    write_csv(records, io::BufWriter::new(file))
}

fn parse_field<T: FromStr>(row: &csv::StringRecord, k: usize) -> io::Result<T> {
    let raw = row.get(k).unwrap_or("");
    raw.parse().map_err(|_| io::Error::new(io::ErrorKind::InvalidData, format!("bad value '{raw}' in column {}", CSV_HEADER[k])))
}

fn parse_uplo(s: &str) -> io::Result<Uplo> {
    match s {
        "L" => Ok(Uplo::Lower),
        "U" => Ok(Uplo::Upper),
        _ => Err(io::Error::new(io::ErrorKind::InvalidData, format!("bad uplo '{s}'"))),
    }
}

fn parse_transr(s: &str) -> io::Result<Option<Transr>> {
    match s {
        "N" => Ok(Some(Transr::Normal)),
        "T" => Ok(Some(Transr::Transposed)),
        "-" => Ok(None),
        _ => Err(io::Error::new(io::ErrorKind::InvalidData, format!("bad transr '{s}'"))),
    }
}

/// Parses a CSV written by [`write_csv`]. `passed` is taken from the
/// trailing failure notes.
pub fn read_csv(path: &Path) -> io::Result<Vec<BenchRecord>> {
    let text = std::fs::read_to_string(path)?;
    let mut rd = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let header = rd.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(io::Error::new(io::ErrorKind::InvalidData, "unexpected CSV header"));
    }
    let bad = |e: String| io::Error::new(io::ErrorKind::InvalidData, e);
    let mut records = Vec::new();
    for row in rd.records() {
        let row = row?;
        records.push(BenchRecord {
            routine: row[0].parse().map_err(bad)?,
            format: row[1].parse().map_err(bad)?,
            n: parse_field(&row, 2)?,
            nrhs: parse_field(&row, 3)?,
            uplo: parse_uplo(&row[4])?,
            transr: parse_transr(&row[5])?,
            reps: parse_field(&row, 6)?,
            median_seconds: parse_field(&row, 7)?,
            mflops: parse_field(&row, 8)?,
            residual: parse_field(&row, 9)?,
            seed: parse_field(&row, 10)?,
            passed: true,
        });
    }
    for line in text.lines().filter(|l| l.starts_with("# residual check failed:")) {
        let tag = |key: &str| line.split_whitespace().find_map(|w| w.strip_prefix(key)).map(str::to_string);
        let words: Vec<&str> = line.split_whitespace().collect();
        let (routine, format) = (words.get(4).copied(), words.get(5).copied());
        for r in records.iter_mut() {
            if Some(r.routine.as_str()) == routine
                && Some(r.format.as_str()) == format
                && tag("n=") == Some(r.n.to_string())
                && tag("uplo=") == Some(r.uplo.as_char().to_string())
                && tag("transr=") == Some(r.transr.map_or('-', |t| t.as_char()).to_string())
            {
                r.passed = false;
            }
        }
    }
    Ok(records)
}
