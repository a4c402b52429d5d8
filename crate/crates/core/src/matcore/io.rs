// Copyright 2026 The sqisw-synth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! JSON matrix files: `{"dim": d, "re": [[...]], "im": [[...]]}`.

use serde::{Deserialize, Serialize};

use super::{CMatrix, UnitaryMatrix, C64};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MatrixFile {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let dim = m.nrows();
        let re = (0..dim).map(|i| (0..dim).map(|j| m[(i, j)].re).collect()).collect();
        let im = (0..dim).map(|i| (0..dim).map(|j| m[(i, j)].im).collect()).collect();
        MatrixFile { dim, re, im }
    }

    /// Builds the raw matrix, validating the shape of both planes.
    pub fn to_matrix(&self) -> Result<CMatrix> {
        for (name, plane) in [("re", &self.re), ("im", &self.im)] {
            if plane.len() != self.dim {
                return Err(Error::Parse(format!(
                    "field `{name}` has {} rows, expected dim = {}",
                    plane.len(),
                    self.dim
                )));
            }
            if let Some((i, row)) = plane.iter().enumerate().find(|(_, r)| r.len() != self.dim) {
                return Err(Error::Parse(format!(
                    "field `{name}` row {i} has {} entries, expected {}",
                    row.len(),
                    self.dim
                )));
            }
        }
        Ok(CMatrix::from_fn(self.dim, self.dim, |i, j| {
            C64::new(self.re[i][j], self.im[i][j])
        }))
    }
}

pub fn matrix_to_json(m: &CMatrix) -> String {
    serde_json::to_string(&MatrixFile::from_matrix(m)).expect("matrix serialises")
}

/// Parses a matrix file; non-unitary input is rejected unless `raw`.
pub fn matrix_from_json(text: &str, raw: bool) -> Result<UnitaryMatrix> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let m = file.to_matrix()?;
    if raw {
        if m.nrows() == 0 {
            return Err(Error::Parse("field `dim` must be positive".into()));
        }
        Ok(UnitaryMatrix::new_unchecked(m))
    } else {
        UnitaryMatrix::new(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{gates, haar_random_unitary};

    #[test]
    fn round_trip() {
        let u = haar_random_unitary(4, 8);
        let back = matrix_from_json(&matrix_to_json(u.matrix()), false).unwrap();
        assert_eq!(back, u);
        let c = matrix_from_json(&matrix_to_json(gates::cnot().matrix()), false).unwrap();
        assert_eq!(c, gates::cnot());
    }

    #[test]
    fn rejects_non_unitary_unless_raw() {
        let text = r#"{"dim": 2, "re": [[1, 1], [0, 1]], "im": [[0, 0], [0, 0]]}"#;
        assert!(matches!(matrix_from_json(text, false), Err(Error::NotUnitary { .. })));
        assert!(matrix_from_json(text, true).is_ok());
    }

    #[test]
    fn names_the_offending_field() {
        let text = r#"{"dim": 2, "re": [[1, 0], [0, 1]], "im": [[0, 0]]}"#;
        let err = matrix_from_json(text, false).unwrap_err().to_string();
        assert!(err.contains("`im`"), "{err}");
        let text = r#"{"dim": 2, "re": [[1, 0], [0, 1]]}"#;
        let err = matrix_from_json(text, false).unwrap_err().to_string();
        assert!(err.contains("im"), "{err}");
    }
}
