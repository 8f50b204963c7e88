//! File formats: matrices as JSON or headerless CSV, 2-vectors and
//! embeddings as JSON, reduction trajectories as JSON lines.
//!
//! Numbers are written with shortest round-trip precision, so reading
//! back any written file reproduces the values bit for bit.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::exterior::{TwoVector, VectorN};
use crate::pc::{AdditiveMatrix, MultiplicativeMatrix};
use crate::reduction::StepRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Additive,
    Multiplicative,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Additive => "additive",
            Mode::Multiplicative => "multiplicative",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "additive" => Ok(Mode::Additive),
            "multiplicative" => Ok(Mode::Multiplicative),
            other => Err(Error::InvalidArgument(format!("unknown mode '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    /// Infers the format from a `.json` or `.csv` extension.
    pub fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "json" | "jsonl" => Some(Format::Json),
            "csv" => Some(Format::Csv),
            _ => None,
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::InvalidArgument(format!("unknown format '{other}'"))),
        }
    }
}

/// `{"n", "mode", "entries"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n: usize,
    #[serde(default)]
    pub mode: Option<Mode>,
    pub entries: Vec<Vec<f64>>,
}

/// A parsed matrix in whichever form the file declared.
#[derive(Debug, Clone, PartialEq)]
pub enum PcMatrix {
    Additive(AdditiveMatrix),
    Multiplicative(MultiplicativeMatrix),
}

impl PcMatrix {
    pub fn mode(&self) -> Mode {
        match self {
            PcMatrix::Additive(_) => Mode::Additive,
            PcMatrix::Multiplicative(_) => Mode::Multiplicative,
        }
    }

    /// The additive form, converting through `ln` when needed.
    pub fn to_additive(&self) -> Result<AdditiveMatrix> {
        match self {
            PcMatrix::Additive(a) => Ok(a.clone()),
            PcMatrix::Multiplicative(m) => m.to_additive(),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        match self {
            PcMatrix::Additive(a) => a.to_rows(),
            PcMatrix::Multiplicative(m) => m.to_rows(),
        }
    }
}

/// Reads a headerless numeric CSV grid.
pub fn read_csv_grid(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (r, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(format!("row {}: {e}", r + 1)))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let row = record
            .iter()
            .enumerate()
            .map(|(c, field)| {
                field
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("entry ({}, {}): '{field}' is not a number", r + 1, c + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

pub fn write_csv_grid(rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().map(|v| format_number(*v)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Shortest representation that parses back to the same `f64`.
pub fn format_number(v: f64) -> String {
    format!("{v:?}")
}

/// Parses and validates a matrix. `mode` overrides the JSON `mode` field;
/// without either the matrix is read as additive.
pub fn parse_matrix(text: &str, format: Format, mode: Option<Mode>, tol: f64) -> Result<PcMatrix> {
    let (rows, declared) = match format {
        Format::Csv => (read_csv_grid(text)?, None),
        Format::Json => {
            let file: MatrixFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
            if file.entries.len() != file.n {
                return Err(Error::Parse(format!(
                    "declared n = {} but found {} rows",
                    file.n,
                    file.entries.len()
                )));
            }
            (file.entries, file.mode)
        }
    };
    match mode.or(declared).unwrap_or_default() {
        Mode::Additive => AdditiveMatrix::new(&rows, tol).map(PcMatrix::Additive),
        Mode::Multiplicative => MultiplicativeMatrix::new(&rows, tol).map(PcMatrix::Multiplicative),
    }
}

pub fn matrix_file(rows: Vec<Vec<f64>>, mode: Mode) -> MatrixFile {
    MatrixFile { n: rows.len(), mode: Some(mode), entries: rows }
}

pub fn parse_two_vector(text: &str) -> Result<TwoVector> {
    #[derive(Deserialize)]
    struct Raw {
        n: usize,
        coords: Vec<f64>,
    }
    let raw: Raw = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    TwoVector::new(raw.n, raw.coords)
}

/// `{"n": int, "vectors": [[...], ...]}`; exactly `n` rows of length `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingFile {
    pub n: usize,
    pub vectors: Vec<Vec<f64>>,
}

pub fn parse_embedding(text: &str) -> Result<Embedding> {
    let file: EmbeddingFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if file.vectors.len() != file.n {
        return Err(Error::DimensionMismatch { expected: file.n, found: file.vectors.len() });
    }
    let vectors = file.vectors.into_iter().map(VectorN::new).collect::<Result<_>>()?;
    Embedding::custom(vectors)
}

/// `{"u": [...], "v": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorPairFile {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

pub fn parse_vector_pair(text: &str) -> Result<(VectorN, VectorN)> {
    let file: VectorPairFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Ok((VectorN::new(file.u)?, VectorN::new(file.v)?))
}

/// One `{"step", "I_alg", "I_geom"}` object per line.
pub fn trajectory_json_lines<'a>(records: impl IntoIterator<Item = &'a StepRecord>) -> String {
    records
        .into_iter()
        .map(|r| serde_json::to_string(r).expect("plain record") + "\n")
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn json_and_csv_matrices() {
        let json = r#"{"n": 3, "mode": "additive", "entries": [[0,1,0],[-1,0,-1],[0,1,0]]}"#;
        let PcMatrix::Additive(a) = parse_matrix(json, Format::Json, None, 1e-9).unwrap() else {
            panic!("expected additive");
        };
        assert_eq!(a.upper(), &[1.0, 0.0, -1.0]);

        let csv = "0, 1, 0\n-1, 0, -1\n0, 1, 0\n";
        let b = parse_matrix(csv, Format::Csv, None, 1e-9).unwrap();
        assert_eq!(b, PcMatrix::Additive(a.clone()));

        let m = parse_matrix(json, Format::Json, Some(Mode::Multiplicative), 1e-9);
        assert!(matches!(m, Err(Error::NonPositiveEntry { .. })));

        let sym = "0,1\n1,0\n";
        assert!(matches!(
            parse_matrix(sym, Format::Csv, None, 1e-9),
            Err(Error::NotSkewSymmetric { i: 0, j: 1, .. })
        ));
        assert!(matches!(parse_matrix("0,x\n0,0", Format::Csv, None, 1e-9), Err(Error::Parse(_))));
        let short = r#"{"n": 3, "entries": [[0,1],[-1,0]]}"#;
        assert!(matches!(parse_matrix(short, Format::Json, None, 1e-9), Err(Error::Parse(_))));
    }

    #[test]
    fn other_files() {
        let p = parse_two_vector(r#"{"n": 3, "coords": [1, 0, 0]}"#).unwrap();
        assert_eq!(p, TwoVector::basis(3, 0, 1));
        assert!(parse_two_vector(r#"{"n": 4, "coords": [1, 0, 0]}"#).is_err());
        assert_eq!(serde_json::to_value(&p).unwrap(), serde_json::json!({"n": 3, "coords": [1.0, 0.0, 0.0]}));

        let e = parse_embedding(r#"{"n": 2, "vectors": [[1, 0], [0, 2]]}"#).unwrap();
        assert_eq!(e.n(), 2);
        assert!(parse_embedding(r#"{"n": 3, "vectors": [[1, 0], [0, 2]]}"#).is_err());

        let (u, v) = parse_vector_pair(r#"{"u": [1, 0, 0], "v": [0, 1, 0]}"#).unwrap();
        assert_eq!((u.dim(), v.dim()), (3, 3));

        let recs = [StepRecord { step: 0, i_alg: 1.0, i_geom: 3.0 }];
        assert_eq!(trajectory_json_lines(&recs), "{\"step\":0,\"I_alg\":1.0,\"I_geom\":3.0}\n");
    }

    #[test]
    fn format_inference() {
        assert_eq!(Format::from_path(Path::new("a.JSON")), Some(Format::Json));
        assert_eq!(Format::from_path(Path::new("dir/a.csv")), Some(Format::Csv));
        assert_eq!(Format::from_path(Path::new("a.txt")), None);
    }

    proptest! {
        #[test]
        fn written_matrices_read_back_exactly(
            (n, upper) in (2usize..7).prop_flat_map(|n| (Just(n), prop::collection::vec(-1e6f64..1e6, n * (n - 1) / 2)))
        ) {
            let a = AdditiveMatrix::from_upper(n, upper).unwrap();
            let csv = write_csv_grid(&a.to_rows());
            prop_assert_eq!(parse_matrix(&csv, Format::Csv, None, 1e-9).unwrap(), PcMatrix::Additive(a.clone()));
            let json = serde_json::to_string(&matrix_file(a.to_rows(), Mode::Additive)).unwrap();
            prop_assert_eq!(parse_matrix(&json, Format::Json, None, 1e-9).unwrap(), PcMatrix::Additive(a));
        }

        #[test]
        fn two_vectors_read_back_exactly(coords in prop::collection::vec(-1e3f64..1e3, 10)) {
            let p = TwoVector::new(5, coords).unwrap();
            let text = serde_json::to_string(&p).unwrap();
            prop_assert_eq!(parse_two_vector(&text).unwrap(), p);
        }
    }
}
