use crate::error::{Error, Result};
use crate::field::{FieldMatrix, PrimeField};

/// Generating matrices `C_1, ..., C_s` of a digital net: `s` matrices of
/// `p` rows and `m` columns over F_b, with `p >= m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingMatrixSet {
    field: PrimeField,
    rows: usize,
    cols: usize,
    matrices: Vec<FieldMatrix>,
}

impl GeneratingMatrixSet {
    pub fn new(matrices: Vec<FieldMatrix>) -> Result<Self> {
        let first = matrices.first().ok_or_else(|| Error::param("need at least one matrix"))?;
        let (field, rows, cols) = (first.field(), first.rows(), first.cols());
        if matrices.iter().any(|c| c.field() != field || c.rows() != rows || c.cols() != cols) {
            return Err(Error::param("generating matrices must share base and shape"));
        }
        if rows < cols {
            return Err(Error::param(format!(
                "generating matrices need at least as many rows as columns ({rows} < {cols})"
            )));
        }
        Ok(Self { field, rows, cols, matrices })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn base(&self) -> u32 {
        self.field.base()
    }

    pub fn dim(&self) -> usize {
        self.matrices.len()
    }

    /// `p`: output digits per coordinate.
    pub fn precision(&self) -> usize {
        self.rows
    }

    /// `m`: the net has `b^m` points.
    pub fn m(&self) -> usize {
        self.cols
    }

    pub fn matrices(&self) -> &[FieldMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, j: usize) -> &FieldMatrix {
        &self.matrices[j]
    }

    pub fn num_points(&self) -> Result<u64> {
        u64::from(self.base())
            .checked_pow(self.cols as u32)
            .ok_or_else(|| Error::capacity("b^m overflows u64"))
    }

    /// `[C_1^T | ... | C_s^T]`: `m` rows, `s * p` columns.
    pub fn stacked_transpose(&self) -> FieldMatrix {
        let (p, m) = (self.rows, self.cols);
        let mut out = FieldMatrix::zeros(self.field, m, p * self.dim());
        for (j, c) in self.matrices.iter().enumerate() {
            for r in 0..p {
                for col in 0..m {
                    out.set(col, j * p + r, c.get(r, col));
                }
            }
        }
        out
    }

    /// Membership of `k` in the dual space, by substitution into
    /// `C_1^T k_1 + ... + C_s^T k_s = 0`; digits of `k_j` beyond `p` do
    /// not enter the system.
    pub fn is_dual(&self, k: &[u64]) -> bool {
        assert_eq!(k.len(), self.dim());
        let f = self.field;
        let b = u64::from(f.base());
        let mut acc = vec![0u32; self.cols];
        for (c, &kj) in self.matrices.iter().zip(k) {
            let mut rest = kj;
            for r in 0..self.rows {
                let kappa = (rest % b) as u32;
                rest /= b;
                if kappa == 0 {
                    continue;
                }
                for (col, a) in acc.iter_mut().enumerate() {
                    *a = f.add(*a, f.mul(kappa, c.get(r, col)));
                }
            }
        }
        acc.iter().all(|&a| a == 0)
    }
}

/// Column-finite generating matrices of a digital sequence.
///
/// Indices are 0-based: `entry(j, k, l)` is row `k`, column `l` of the
/// matrix for coordinate `j`.
pub trait SequenceMatrices {
    fn field(&self) -> PrimeField;

    fn dim(&self) -> usize;

    fn entry(&self, j: usize, k: usize, l: usize) -> u32;

    /// Every entry of column `l` at row index `>= column_height(l)` is zero.
    fn column_height(&self, l: usize) -> usize;

    /// Upper-left `rows x cols` block of matrix `j`.
    fn block(&self, j: usize, rows: usize, cols: usize) -> FieldMatrix {
        let mut out = FieldMatrix::zeros(self.field(), rows, cols);
        for l in 0..cols {
            for k in 0..rows.min(self.column_height(l)) {
                out.set(k, l, self.entry(j, k, l));
            }
        }
        out
    }
}
