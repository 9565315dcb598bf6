use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{mat_mul, Matrix, Scalar};
use crate::word::Word;

/// Indexed family `{A_1, …, A_m}` of square matrices of one dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixSet {
    matrices: Vec<Matrix>,
}

impl MatrixSet {
    pub fn new(matrices: Vec<Matrix>) -> Result<Self> {
        let first = matrices
            .first()
            .ok_or_else(|| Error::InvalidArgument("a matrix set needs at least one matrix".into()))?;
        let n = first.rows();
        for (k, a) in matrices.iter().enumerate() {
            if !a.is_square() {
                return Err(Error::NotSquare {
                    rows: a.rows(),
                    cols: a.cols(),
                });
            }
            if a.rows() != n {
                return Err(Error::dims(format!(
                    "A_{} is {}x{} but A_1 is {n}x{n}",
                    k + 1,
                    a.rows(),
                    a.cols()
                )));
            }
        }
        Ok(MatrixSet { matrices })
    }

    pub fn alphabet_size(&self) -> usize {
        self.matrices.len()
    }

    pub fn dim(&self) -> usize {
        self.matrices[0].rows()
    }

    /// `A_k` for 1-based `k`.
    pub fn get(&self, k: usize) -> &Matrix {
        &self.matrices[k - 1]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn is_binary(&self) -> bool {
        self.matrices.iter().all(Matrix::is_binary)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.matrices.iter().all(Matrix::is_nonnegative)
    }

    /// `A_w = A_{w_1} ⋯ A_{w_t}`; the identity for the empty word.
    pub fn product(&self, w: &Word) -> Result<Matrix> {
        w.validate(self.alphabet_size())?;
        w.symbols()
            .iter()
            .try_fold(Matrix::identity(self.dim()), |acc, &k| mat_mul(&acc, self.get(k)))
    }

    pub fn transposed(&self) -> MatrixSet {
        MatrixSet {
            matrices: self.matrices.iter().map(Matrix::transpose).collect(),
        }
    }

    /// Every matrix multiplied by `factor`.
    pub fn scaled(&self, factor: &Scalar) -> MatrixSet {
        MatrixSet {
            matrices: self.matrices.iter().map(|a| a.scale(factor)).collect(),
        }
    }

    /// Entrywise sum of all matrices.
    pub fn sum(&self) -> Matrix {
        let n = self.dim();
        let mut out = Matrix::zeros(n, n);
        for a in &self.matrices {
            for r in 0..n {
                for c in 0..n {
                    let v = out.get(r, c) + a.get(r, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }
}

impl Serialize for MatrixSet {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrices.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for MatrixSet {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let matrices = Vec::<Matrix>::deserialize(de)?;
        MatrixSet::new(matrices).map_err(|e| D::Error::custom(e.to_string()))
    }
}
