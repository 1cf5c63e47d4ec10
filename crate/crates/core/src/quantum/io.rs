//! Matrix files: `{"d1": n, "d2": m, "matrix": [[[re, im], ...], ...]}`,
//! row-major.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::hermitian::{BipartiteHermitian, C64};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub d1: usize,
    pub d2: usize,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl MatrixFile {
    pub fn to_operator(&self) -> Result<BipartiteHermitian> {
        let n = self.matrix.len();
        if self.matrix.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInput("matrix must be square".into()));
        }
        let m = DMatrix::from_fn(n, n, |i, j| C64::new(self.matrix[i][j][0], self.matrix[i][j][1]));
        BipartiteHermitian::new(self.d1, self.d2, m)
    }

    pub fn from_operator(a: &BipartiteHermitian) -> Self {
        let m = a.matrix();
        let matrix = (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
            .collect();
        Self { d1: a.d1(), d2: a.d2(), matrix }
    }
}

pub fn parse_matrix(text: &str) -> Result<BipartiteHermitian> {
    let f: MatrixFile = serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
    f.to_operator()
}

pub fn matrix_to_string(a: &BipartiteHermitian) -> String {
    serde_json::to_string(&MatrixFile::from_operator(a)).expect("finite entries")
}
