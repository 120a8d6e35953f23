//! JSON matrix files:
//!
//! ```text
//! {
//!   "dim": 2,
//!   "matrix": [
//!     [[0.8, 0.0], [0.4, 0.0]],
//!     [[0.4, 0.0], [0.2, 0.0]]
//!   ]
//! }
//! ```
//!
//! `matrix` is row-major and every entry is `[re, im]`.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrices::{Complex64, ComplexMatrix};

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("malformed matrix: {0}")]
    Shape(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub dim: usize,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl MatrixFile {
    /// Panics if `m` is not square.
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        assert!(m.is_square(), "matrix files hold square matrices");
        let matrix = (0..m.rows())
            .map(|r| (0..m.cols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
            .collect();
        Self { dim: m.rows(), matrix }
    }

    pub fn parse(text: &str) -> Result<Self, FileError> {
        let file: Self = serde_json::from_str(text).map_err(|e| FileError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        file.check_shape()?;
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<Self, FileError> {
        let text = std::fs::read_to_string(path).map_err(|source| FileError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn write(&self, path: &Path) -> Result<(), FileError> {
        std::fs::write(path, self.to_json()).map_err(|source| FileError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    fn check_shape(&self) -> Result<(), FileError> {
        if self.dim == 0 {
            return Err(FileError::Shape("dim must be positive".into()));
        }
        if self.matrix.len() != self.dim {
            return Err(FileError::Shape(format!(
                "dim is {} but the matrix has {} rows",
                self.dim,
                self.matrix.len()
            )));
        }
        if let Some((r, row)) = self.matrix.iter().enumerate().find(|(_, row)| row.len() != self.dim) {
            return Err(FileError::Shape(format!(
                "row {} has {} entries, expected {}",
                r + 1,
                row.len(),
                self.dim
            )));
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix, FileError> {
        self.check_shape()?;
        let data = self
            .matrix
            .iter()
            .flatten()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        ComplexMatrix::from_vec(self.dim, self.dim, data).map_err(|e| FileError::Shape(e.to_string()))
    }

    /// One matrix row per line; numbers in shortest round-trip form.
    pub fn to_json(&self) -> String {
        let num = |x: f64| serde_json::to_string(&x).expect("finite entries");
        let mut out = format!("{{\n  \"dim\": {},\n  \"matrix\": [\n", self.dim);
        for (r, row) in self.matrix.iter().enumerate() {
            out.push_str("    [");
            for (c, [re, im]) in row.iter().enumerate() {
                let sep = if c + 1 < row.len() { ", " } else { "" };
                let _ = write!(out, "[{}, {}]{sep}", num(*re), num(*im));
            }
            out.push_str(if r + 1 < self.matrix.len() { "],\n" } else { "]\n" });
        }
        out.push_str("  ]\n}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let m = ComplexMatrix::from_rows(&[
            vec![Complex64::new(0.1, -0.3), Complex64::new(1.0 / 3.0, 0.0)],
            vec![Complex64::new(-2.5e-17, 7.0), Complex64::new(0.0, 0.0)],
        ]);
        let text = MatrixFile::from_matrix(&m).to_json();
        let back = MatrixFile::parse(&text).unwrap().to_matrix().unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn syntax_error_has_position() {
        let err = MatrixFile::parse("{\n  \"dim\": 1,\n  \"matrix\": [[[1.0, 0.0]]\n").unwrap_err();
        match err {
            FileError::Syntax { line, .. } => assert!(line >= 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn shape_errors() {
        let ragged = r#"{"dim": 2, "matrix": [[[1,0],[0,0]], [[0,0]]]}"#;
        assert!(matches!(MatrixFile::parse(ragged), Err(FileError::Shape(_))));
        let short = r#"{"dim": 2, "matrix": [[[1,0],[0,0]]]}"#;
        assert!(matches!(MatrixFile::parse(short), Err(FileError::Shape(_))));
        let empty = r#"{"dim": 0, "matrix": []}"#;
        assert!(matches!(MatrixFile::parse(empty), Err(FileError::Shape(_))));
        let triple = r#"{"dim": 1, "matrix": [[[1,0,0]]]}"#;
        assert!(matches!(MatrixFile::parse(triple), Err(FileError::Syntax { .. })));
    }
}
