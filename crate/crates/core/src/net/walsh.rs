use std::f64::consts::PI;

use num_complex::Complex64;

use super::digits::DigitVector;
use super::points::PointSet;
use crate::error::{Error, Result};

/// Exponent `e` with `wal_k(x) = omega_b^e`: digit `kappa_i` of `k` (weight
/// `b^i`) pairs with digit `x_{i+1}` of `x`.
pub fn walsh_exponent(k: u64, x: &DigitVector) -> u32 {
    let b = x.base();
    let mut rest = k;
    let mut e = 0u32;
    let mut i = 1;
    while rest > 0 {
        let kappa = (rest % u64::from(b)) as u32;
        e = (e + kappa * u32::from(x.digit(i))) % b;
        rest /= u64::from(b);
        i += 1;
    }
    e
}

fn root_of_unity(b: u32, e: u32) -> Complex64 {
    if b == 2 {
        return Complex64::new(if e == 0 { 1.0 } else { -1.0 }, 0.0);
    }
    Complex64::from_polar(1.0, 2.0 * PI * f64::from(e) / f64::from(b))
}

/// The `k`-th base-b Walsh function at `x`.
pub fn walsh_eval(k: u64, x: &DigitVector) -> Complex64 {
    root_of_unity(x.base(), walsh_exponent(k, x))
}

/// `(1/N) sum_n wal_k(x_n)` for a point set with b-adic coordinates.
///
/// Exponents are tallied exactly, so the only rounding is in the final
/// combination of at most `b` roots of unity.
pub fn char_property_sum(points: &PointSet, k: &[u64]) -> Result<Complex64> {
    if k.len() != points.dim() {
        return Err(Error::param(format!("k has {} entries for a {}-dimensional set", k.len(), points.dim())));
    }
    if points.is_empty() {
        return Err(Error::domain("empty point set"));
    }
    let b = points.base();
    let mut tally = vec![0u64; b as usize];
    for n in 0..points.len() {
        let mut e = 0;
        for (j, &kj) in k.iter().enumerate() {
            e = (e + walsh_exponent(kj, points.digits(n, j)?)) % b;
        }
        tally[e as usize] += 1;
    }
    let n = points.len() as f64;
    let sum: Complex64 = tally
        .iter()
        .enumerate()
        .map(|(e, &c)| root_of_unity(b, e as u32) * c as f64)
        .sum();
    Ok(sum / n)
}
