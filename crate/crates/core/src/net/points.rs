use std::fmt;

use rayon::prelude::*;

use super::digits::{digit_vector_of_index, digits_for_count, Coord, DigitVector};
use super::matrices::{GeneratingMatrixSet, SequenceMatrices};
use crate::error::{Error, Result};

/// Construction family and parameters that regenerate a point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub family: String,
    pub params: Vec<(String, String)>,
}

impl Provenance {
    pub fn new(family: impl Into<String>) -> Self {
        Self { family: family.into(), params: Vec::new() }
    }

    pub fn with(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.params.push((key.into(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.params.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

/// Ordered, immutable list of points in `[0,1)^s` with exact coordinates.
///
/// Every digit coordinate is stored with exactly `precision` digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    base: u32,
    dim: usize,
    precision: usize,
    points: Vec<Vec<Coord>>,
    provenance: Option<Provenance>,
}

impl PointSet {
    pub fn new(base: u32, dim: usize, points: Vec<Vec<Coord>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::param("dimension must be positive"));
        }
        let mut precision = 1;
        for p in &points {
            if p.len() != dim {
                return Err(Error::param(format!("point of dimension {} in a {dim}-dimensional set", p.len())));
            }
            for c in p {
                if let Coord::Digits(d) = c {
                    if d.base() != base {
                        return Err(Error::domain(format!("base-{} coordinate in a base-{base} set", d.base())));
                    }
                    precision = precision.max(d.precision());
                }
            }
        }
        Ok(Self::assemble(base, dim, precision, points))
    }

    fn assemble(base: u32, dim: usize, precision: usize, points: Vec<Vec<Coord>>) -> Self {
        let points = points
            .into_iter()
            .map(|p| {
                p.into_iter()
                    .map(|c| match c {
                        Coord::Digits(d) => Coord::Digits(d.padded(precision)),
                        other => other,
                    })
                    .collect()
            })
            .collect();
        Self { base, dim, precision, points, provenance: None }
    }

    pub fn from_digit_points(base: u32, dim: usize, points: Vec<Vec<DigitVector>>) -> Result<Self> {
        Self::new(base, dim, points.into_iter().map(|p| p.into_iter().map(Coord::Digits).collect()).collect())
    }

    pub fn empty(base: u32, dim: usize) -> Self {
        Self { base, dim, precision: 1, points: Vec::new(), provenance: None }
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = Some(provenance);
        self
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<Coord>] {
        &self.points
    }

    pub fn point(&self, n: usize) -> &[Coord] {
        &self.points[n]
    }

    pub fn into_points(self) -> Vec<Vec<Coord>> {
        self.points
    }

    pub fn is_digital(&self) -> bool {
        self.points.iter().flatten().all(|c| matches!(c, Coord::Digits(_)))
    }

    /// Coordinate `j` of point `n` as digits, or a domain error.
    pub fn digits(&self, n: usize, j: usize) -> Result<&DigitVector> {
        self.points[n][j]
            .as_digits()
            .ok_or_else(|| Error::domain("point set has non-b-adic coordinates"))
    }

    /// Row-major `N x s` floating-point copy.
    pub fn to_f64(&self) -> Vec<f64> {
        self.points.iter().flatten().map(Coord::to_f64).collect()
    }

    /// First `n` points.
    pub fn prefix(&self, n: usize) -> Self {
        let mut out = self.clone();
        out.points.truncate(n);
        out
    }

    /// Points in the given order, for symmetry checks.
    pub fn permuted(&self, order: &[usize]) -> Self {
        let mut out = self.clone();
        out.points = order.iter().map(|&i| self.points[i].clone()).collect();
        out
    }
}

/// All `b^m` points of the digital net: coordinate `j` of point `n` has the
/// digit vector `C_j n`, where `n` is written least significant digit first.
pub fn generate_net_points(c: &GeneratingMatrixSet) -> Result<PointSet> {
    let count = c.num_points()?;
    let (b, m) = (c.base(), c.m());
    let points: Vec<Vec<Coord>> = (0..count)
        .into_par_iter()
        .map(|n| {
            let nv = digit_vector_of_index(n, b, m).expect("index below b^m");
            c.matrices()
                .iter()
                .map(|cj| Coord::Digits(DigitVector::new_unchecked(b, cj.mul_vec(&nv))))
                .collect()
        })
        .collect();
    Ok(PointSet::assemble(b, c.dim(), c.precision().max(1), points))
}

/// Points `n_from..n_to` of a digital sequence, exact to `precision` digits.
///
/// Fails with a precision error if any point has a nonzero digit past
/// `precision`.
pub fn generate_sequence_points<S: SequenceMatrices + ?Sized>(
    source: &S,
    n_from: u64,
    n_to: u64,
    precision: usize,
) -> Result<PointSet> {
    let field = source.field();
    let b = field.base();
    let s = source.dim();
    if n_to <= n_from {
        return Ok(PointSet::empty(b, s));
    }
    let cols = digits_for_count(n_to, b).max(1);
    let height = (0..cols).map(|l| source.column_height(l)).max().unwrap_or(0).max(precision);
    let blocks: Vec<_> = (0..s).map(|j| source.block(j, height, cols)).collect();
    let points: Result<Vec<Vec<Coord>>> = (n_from..n_to)
        .into_par_iter()
        .map(|n| {
            let nv = digit_vector_of_index(n, b, cols)?;
            blocks
                .iter()
                .map(|blk| {
                    let mut digits = blk.mul_vec(&nv);
                    if digits[precision..].iter().any(|&d| d != 0) {
                        return Err(Error::Precision(format!(
                            "point {n} has nonzero digits beyond precision {precision}"
                        )));
                    }
                    digits.truncate(precision);
                    Ok(Coord::Digits(DigitVector::new_unchecked(b, digits)))
                })
                .collect()
        })
        .collect();
    Ok(PointSet::assemble(b, s, precision.max(1), points?))
}
