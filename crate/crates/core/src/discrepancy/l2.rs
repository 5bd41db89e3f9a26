use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::net::PointSet;

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::default();
        iter.into_iter().for_each(|x| s.add(x));
        s
    }
}

fn pair_kernel(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| 1.0 - a.max(*b)).product()
}

fn single_term(x: &[f64]) -> f64 {
    x.iter().map(|a| (1.0 - a * a) / 2.0).product()
}

/// Row `i` of the pairwise sum: `K(x_i, x_i) + 2 sum_{k < i} K(x_k, x_i)`.
fn row_sums(coords: &[f64], s: usize) -> Vec<f64> {
    let n = coords.len() / s;
    (0..n)
        .into_par_iter()
        .map(|i| {
            let xi = &coords[i * s..(i + 1) * s];
            let mut acc: CompensatedSum = (0..i).map(|k| pair_kernel(&coords[k * s..(k + 1) * s], xi)).collect();
            acc.sum *= 2.0;
            acc.carry *= 2.0;
            acc.add(pair_kernel(xi, xi));
            acc.value()
        })
        .collect()
}

/// Squared L2 discrepancy by Warnock's pairwise formula. Row sums are
/// reduced in index order, so the result does not depend on the number of
/// worker threads.
pub fn l2_squared(points: &PointSet) -> f64 {
    let n = points.len();
    let s = points.dim();
    if n == 0 {
        return 3f64.powi(-(s as i32));
    }
    let coords = points.to_f64();
    let pair: CompensatedSum = row_sums(&coords, s).into_iter().collect();
    let single: CompensatedSum = coords.chunks(s).map(single_term).collect();
    let nf = n as f64;
    let mut total = CompensatedSum::default();
    total.add(pair.value() / (nf * nf));
    total.add(-2.0 * single.value() / nf);
    total.add(3f64.powi(-(s as i32)));
    total.value().max(0.0)
}

/// L2 discrepancy of every prefix: entry `i` is `L_2` of the first `i + 1`
/// points.
pub fn l2_prefix_profile(points: &PointSet) -> Vec<f64> {
    let s = points.dim();
    let coords = points.to_f64();
    let rows = row_sums(&coords, s);
    let third = 3f64.powi(-(s as i32));
    let mut pair = CompensatedSum::default();
    let mut single = CompensatedSum::default();
    rows.iter()
        .zip(coords.chunks(s))
        .enumerate()
        .map(|(i, (&r, x))| {
            pair.add(r);
            single.add(single_term(x));
            let nf = (i + 1) as f64;
            let mut total = CompensatedSum::default();
            total.add(pair.value() / (nf * nf));
            total.add(-2.0 * single.value() / nf);
            total.add(third);
            total.value().max(0.0).sqrt()
        })
        .collect()
}

pub const RATIONAL_MAX_POINTS: usize = 64;
pub const RATIONAL_MAX_DIM: usize = 3;

/// Exact squared L2 discrepancy in rational arithmetic, for `N <= 64` and
/// `s <= 3`.
pub fn l2_exact_rational(points: &PointSet) -> Result<BigRational> {
    let (n, s) = (points.len(), points.dim());
    if n == 0 || n > RATIONAL_MAX_POINTS || s > RATIONAL_MAX_DIM {
        return Err(Error::capacity(format!(
            "exact rational L2 supports 1..={RATIONAL_MAX_POINTS} points in at most {RATIONAL_MAX_DIM} dimensions, got N={n}, s={s}"
        )));
    }
    let xs: Vec<Vec<BigRational>> =
        points.points().iter().map(|p| p.iter().map(|c| c.to_rational()).collect()).collect();
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    let mut pair = BigRational::zero();
    for a in &xs {
        for b in &xs {
            let mut prod = one.clone();
            for (x, y) in a.iter().zip(b) {
                prod *= &one - if x > y { x } else { y };
            }
            pair += prod;
        }
    }
    let mut single = BigRational::zero();
    for a in &xs {
        let mut prod = one.clone();
        for x in a {
            prod *= (&one - x * x) / &two;
        }
        single += prod;
    }
    let nn = BigRational::from_integer(BigInt::from(n));
    let third = BigRational::new(BigInt::one(), BigInt::from(3).pow(s as u32));
    Ok(pair / (&nn * &nn) - two * single / nn + third)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::{Coord, DigitVector};

    fn set1(xs: &[(u8, usize)]) -> PointSet {
        // (digit value at position 1) in base 2, precision given
        PointSet::from_digit_points(
            2,
            1,
            xs.iter().map(|&(d, p)| {
                let mut v = vec![0; p];
                v[0] = d;
                vec![DigitVector::new(2, v).unwrap()]
            }).collect(),
        )
        .unwrap()
    }

    #[test]
    fn closed_forms() {
        let origin = set1(&[(0, 1)]);
        assert!((l2_squared(&origin) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(l2_exact_rational(&origin).unwrap(), BigRational::new(1.into(), 3.into()));
        let two = set1(&[(0, 1), (1, 1)]);
        assert!((l2_squared(&two) - 1.0 / 12.0).abs() < 1e-15);
        assert_eq!(l2_exact_rational(&two).unwrap(), BigRational::new(1.into(), 12.into()));
    }

    #[test]
    fn origin_in_two_dimensions() {
        // (1/N^2) * 1 - 2 * (1/4) + 1/9 = 11/18
        let p = PointSet::new(2, 2, vec![vec![Coord::rational(0, 1).unwrap(), Coord::rational(0, 1).unwrap()]]).unwrap();
        assert_eq!(l2_exact_rational(&p).unwrap(), BigRational::new(11.into(), 18.into()));
        assert!((l2_squared(&p) - 11.0 / 18.0).abs() < 1e-15);
    }

    #[test]
    fn prefix_profile_matches_direct() {
        let xs: Vec<_> = (0..37u128).map(|k| vec![Coord::rational((k * 13) % 37, 37).unwrap(), Coord::rational(k, 37).unwrap()]).collect();
        let p = PointSet::new(2, 2, xs).unwrap();
        let prof = l2_prefix_profile(&p);
        for n in [1, 2, 10, 37] {
            assert!((prof[n - 1] - l2_squared(&p.prefix(n)).sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn rational_caps() {
        let p = PointSet::new(2, 4, vec![vec![Coord::rational(0, 1).unwrap(); 4]]).unwrap();
        assert!(l2_exact_rational(&p).is_err());
        assert!(l2_exact_rational(&PointSet::empty(2, 1)).is_err());
    }
}
