use crate::error::{Error, Result};
use crate::field::{FieldMatrix, PrimeField};
use crate::net::{Coord, DigitVector, GeneratingMatrixSet, PointSet, SequenceMatrices};

/// Interlacing factor `alpha` mapping `alpha * s` input coordinates to `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InterlaceSpec {
    pub alpha: usize,
    pub s: usize,
}

impl InterlaceSpec {
    pub fn new(alpha: usize, s: usize) -> Result<Self> {
        if alpha == 0 || s == 0 {
            return Err(Error::param("interlacing factor and dimension must be positive"));
        }
        Ok(Self { alpha, s })
    }

    pub fn input_dim(self) -> usize {
        self.alpha * self.s
    }
}

/// Digit interlacing: digit `a` of input `r` lands at position
/// `r + (a - 1) * alpha` (all 1-based).
pub fn interlace_point(xs: &[DigitVector]) -> Result<DigitVector> {
    let alpha = xs.len();
    if alpha == 0 {
        return Err(Error::param("nothing to interlace"));
    }
    if let Some(x) = xs.iter().find(|x| x.base() != 2) {
        return Err(Error::domain(format!("digit interlacing is defined for base 2, got base {}", x.base())));
    }
    let precision = xs.iter().map(DigitVector::precision).max().unwrap_or(0);
    let mut out = vec![0u8; alpha * precision];
    for (r, x) in xs.iter().enumerate() {
        for (a, &d) in x.digits().iter().enumerate() {
            out[a * alpha + r] = d;
        }
    }
    Ok(DigitVector::new_unchecked(2, out))
}

/// Applies [`interlace_point`] blockwise to every point.
pub fn interlace_points(points: &PointSet, alpha: usize) -> Result<PointSet> {
    if alpha == 0 || points.dim() % alpha != 0 {
        return Err(Error::param(format!(
            "dimension {} is not divisible by the interlacing factor {alpha}",
            points.dim()
        )));
    }
    let s = points.dim() / alpha;
    let mut out = Vec::with_capacity(points.len());
    for n in 0..points.len() {
        let mut row = Vec::with_capacity(s);
        for j in 0..s {
            let block: Vec<DigitVector> = (0..alpha)
                .map(|v| points.digits(n, j * alpha + v).cloned())
                .collect::<Result<_>>()?;
            row.push(Coord::Digits(interlace_point(&block)?));
        }
        out.push(row);
    }
    PointSet::new(2, s, out)
}

/// Row `u*alpha + v` (0-based) of `E_j` is row `u` of `C_{j*alpha + v}`.
pub fn interlace_matrices(c: &GeneratingMatrixSet, alpha: usize) -> Result<GeneratingMatrixSet> {
    if alpha == 0 || c.dim() % alpha != 0 {
        return Err(Error::param(format!(
            "dimension {} is not divisible by the interlacing factor {alpha}",
            c.dim()
        )));
    }
    let (p, m) = (c.precision(), c.m());
    let s = c.dim() / alpha;
    let matrices = (0..s)
        .map(|j| {
            let mut e = FieldMatrix::zeros(c.field(), alpha * p, m);
            for u in 0..p {
                for v in 0..alpha {
                    let src = c.matrix(j * alpha + v);
                    for col in 0..m {
                        e.set(u * alpha + v, col, src.get(u, col));
                    }
                }
            }
            e
        })
        .collect();
    GeneratingMatrixSet::new(matrices)
}

/// Matrix-level interlacing of a digital sequence.
#[derive(Debug, Clone)]
pub struct Interlaced<S> {
    inner: S,
    alpha: usize,
}

impl<S: SequenceMatrices> Interlaced<S> {
    pub fn new(inner: S, alpha: usize) -> Result<Self> {
        if alpha == 0 || inner.dim() % alpha != 0 {
            return Err(Error::param(format!(
                "dimension {} is not divisible by the interlacing factor {alpha}",
                inner.dim()
            )));
        }
        Ok(Self { inner, alpha })
    }
}

impl<S: SequenceMatrices> SequenceMatrices for Interlaced<S> {
    fn field(&self) -> PrimeField {
        self.inner.field()
    }

    fn dim(&self) -> usize {
        self.inner.dim() / self.alpha
    }

    fn entry(&self, j: usize, k: usize, l: usize) -> u32 {
        self.inner.entry(j * self.alpha + k % self.alpha, k / self.alpha, l)
    }

    fn column_height(&self, l: usize) -> usize {
        self.alpha * self.inner.column_height(l)
    }

    fn block(&self, j: usize, rows: usize, cols: usize) -> FieldMatrix {
        let inner_rows = rows.div_ceil(self.alpha);
        let blocks: Vec<_> = (0..self.alpha)
            .map(|v| self.inner.block(j * self.alpha + v, inner_rows, cols))
            .collect();
        let mut out = FieldMatrix::zeros(self.field(), rows, cols);
        for k in 0..rows {
            let src = &blocks[k % self.alpha];
            for l in 0..cols {
                out.set(k, l, src.get(k / self.alpha, l));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn dv(d: Vec<u8>) -> DigitVector {
        DigitVector::new(2, d).unwrap()
    }

    #[test]
    fn interlace_examples() {
        let x = interlace_point(&[dv(vec![1]), dv(vec![0, 1])]).unwrap();
        assert_eq!(x.to_ratio_u128(), Some((9, 16)));
        assert!(interlace_point(&[dv(vec![0, 0]), dv(vec![0])]).unwrap().is_zero());
        let y = dv(vec![1, 0, 1, 1]);
        assert_eq!(interlace_point(std::slice::from_ref(&y)).unwrap(), y);
        assert!(interlace_point(&[DigitVector::new(3, vec![1]).unwrap()]).is_err());
    }

    #[test]
    fn matrix_rule_small() {
        let f = PrimeField::new(2).unwrap();
        let one = FieldMatrix::identity(f, 1);
        let c = GeneratingMatrixSet::new(vec![one.clone(), one]).unwrap();
        let e = interlace_matrices(&c, 2).unwrap();
        assert_eq!(e.dim(), 1);
        assert_eq!(e.matrix(0).to_rows(), vec![vec![1], vec![1]]);
        let same = interlace_matrices(&c, 1).unwrap();
        assert_eq!(same, c);
        assert!(interlace_matrices(&c, 3).is_err());
    }
}
