use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::field::{binomial_mod_p, FieldMatrix, PrimeField};
use crate::net::GeneratingMatrixSet;

/// Parameters of the Chen–Skriganov net: `alpha * s` distinct field
/// elements `betas[i][l]` with `b >= alpha * s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsParams {
    field: PrimeField,
    alpha: usize,
    m: usize,
    s: usize,
    betas: Vec<Vec<u32>>,
}

impl CsParams {
    /// With `betas = None` the values `0, 1, ..., alpha*s - 1` are assigned
    /// row-major.
    pub fn new(b: u32, alpha: usize, m: usize, s: usize, betas: Option<Vec<Vec<u32>>>) -> Result<Self> {
        let field = PrimeField::new(b).map_err(|e| Error::param(e.to_string()))?;
        if alpha == 0 || m == 0 || s == 0 {
            return Err(Error::param("alpha, m and s must be positive"));
        }
        if (b as usize) < alpha * s {
            return Err(Error::param(format!("need b >= alpha*s, got b={b}, alpha*s={}", alpha * s)));
        }
        let betas = match betas {
            Some(bs) => bs,
            None => (0..s).map(|i| (0..alpha).map(|l| (i * alpha + l) as u32).collect()).collect(),
        };
        if betas.len() != s || betas.iter().any(|row| row.len() != alpha) {
            return Err(Error::param(format!("betas must be an {s} x {alpha} array")));
        }
        let mut seen = HashSet::new();
        for &v in betas.iter().flatten() {
            if v >= b {
                return Err(Error::param(format!("beta {v} is not an element of F_{b}")));
            }
            if !seen.insert(v) {
                return Err(Error::param(format!("beta {v} repeated; all betas must be distinct")));
            }
        }
        Ok(Self { field, alpha, m, s, betas })
    }

    pub fn base(&self) -> u32 {
        self.field.base()
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn betas(&self) -> &[Vec<u32>] {
        &self.betas
    }
}

/// `alpha*m x alpha*m` matrices with row `(l-1)m + j`, column `k` equal to
/// `C(k-1, j-1) * beta_{i,l}^(k-j)` (1-based), using `0^0 = 1`.
pub fn cs_matrices(params: &CsParams) -> GeneratingMatrixSet {
    let f = params.field;
    let n = params.alpha * params.m;
    let matrices = params
        .betas
        .iter()
        .map(|row_betas| {
            let mut c = FieldMatrix::zeros(f, n, n);
            for (l, &beta) in row_betas.iter().enumerate() {
                for j in 1..=params.m {
                    for k in j..=n {
                        let binom = binomial_mod_p((k - 1) as u64, (j - 1) as u64, f).value();
                        let v = f.mul(binom, f.pow(beta, (k - j) as u64));
                        c.set(l * params.m + j - 1, k - 1, v);
                    }
                }
            }
            c
        })
        .collect();
    GeneratingMatrixSet::new(matrices).expect("square matrices of equal shape")
}

/// Faure's matrices: the `alpha = 1` case with `beta_i = i - 1`.
pub fn faure_matrices(b: u32, m: usize, s: usize) -> Result<GeneratingMatrixSet> {
    Ok(cs_matrices(&CsParams::new(b, 1, m, s, None)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_example() {
        let p = CsParams::new(5, 2, 2, 2, Some(vec![vec![0, 1], vec![2, 3]])).unwrap();
        let c = cs_matrices(&p);
        assert_eq!(
            c.matrix(0).to_rows(),
            vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![1, 1, 1, 1], vec![0, 1, 2, 3]]
        );
        assert_eq!(
            c.matrix(1).to_rows(),
            vec![vec![1, 2, 4, 3], vec![0, 1, 4, 2], vec![1, 3, 4, 2], vec![0, 1, 1, 2]]
        );
    }

    #[test]
    fn faure_rows_are_shifted_pascal() {
        let b = 7;
        let c = faure_matrices(b, 4, 3).unwrap();
        let f = PrimeField::new(b).unwrap();
        for (i, mat) in c.matrices().iter().enumerate() {
            for j in 1..=4u64 {
                for k in 1..=4u64 {
                    let want = if k < j {
                        0
                    } else {
                        f.mul(binomial_mod_p(k - 1, j - 1, f).value(), f.pow(i as u32, k - j))
                    };
                    assert_eq!(mat.get(j as usize - 1, k as usize - 1), want);
                }
            }
        }
        // beta = 0 gives the identity
        assert_eq!(c.matrix(0), &FieldMatrix::identity(f, 4));
    }

    #[test]
    fn parameter_errors() {
        assert!(CsParams::new(3, 2, 2, 2, None).is_err());
        assert!(CsParams::new(5, 2, 2, 2, Some(vec![vec![0, 1], vec![1, 3]])).is_err());
        assert!(CsParams::new(6, 1, 2, 2, None).is_err());
        assert!(CsParams::new(5, 2, 2, 2, Some(vec![vec![0, 1]])).is_err());
    }

    #[test]
    fn default_betas_row_major() {
        let p = CsParams::new(11, 2, 1, 3, None).unwrap();
        assert_eq!(p.betas(), &[vec![0, 1], vec![2, 3], vec![4, 5]]);
    }
}
