use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Base-b digits of a number in `[0, 1)`, most significant first:
/// `value = sum_i digits[i] * b^-(i+1)`.
///
/// Equality and hashing ignore trailing zero digits, so two expansions of
/// the same number at different precisions compare equal.
#[derive(Clone)]
pub struct DigitVector {
    base: u32,
    digits: Vec<u8>,
}

impl DigitVector {
    pub fn new(base: u32, digits: Vec<u8>) -> Result<Self> {
        if base < 2 {
            return Err(Error::domain(format!("invalid base {base}")));
        }
        if let Some(d) = digits.iter().find(|&&d| u32::from(d) >= base) {
            return Err(Error::domain(format!("digit {d} out of range for base {base}")));
        }
        Ok(Self { base, digits })
    }

    pub(crate) fn new_unchecked(base: u32, digits: Vec<u8>) -> Self {
        Self { base, digits }
    }

    pub fn zero(base: u32, precision: usize) -> Self {
        Self { base, digits: vec![0; precision] }
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn precision(&self) -> usize {
        self.digits.len()
    }

    /// Digit `i` (1-based, weight `b^-i`); zero past the stored precision.
    pub fn digit(&self, i: usize) -> u8 {
        debug_assert!(i >= 1);
        self.digits.get(i - 1).copied().unwrap_or(0)
    }

    fn significant(&self) -> &[u8] {
        let end = self.digits.iter().rposition(|&d| d != 0).map_or(0, |p| p + 1);
        &self.digits[..end]
    }

    pub fn is_zero(&self) -> bool {
        self.significant().is_empty()
    }

    pub(crate) fn padded(mut self, precision: usize) -> Self {
        if self.digits.len() < precision {
            self.digits.resize(precision, 0);
        }
        self
    }

    pub fn to_f64(&self) -> f64 {
        let b = f64::from(self.base);
        self.significant().iter().rev().fold(0.0, |acc, &d| (acc + f64::from(d)) / b)
    }

    /// Exact value as `(numerator, b^len)` when it fits in `u128`.
    pub fn to_ratio_u128(&self) -> Option<(u128, u128)> {
        let b = u128::from(self.base);
        let mut num: u128 = 0;
        let mut den: u128 = 1;
        for &d in self.significant() {
            num = num.checked_mul(b)?.checked_add(u128::from(d))?;
            den = den.checked_mul(b)?;
        }
        Some((num, den))
    }

    pub fn to_rational(&self) -> BigRational {
        let b = BigInt::from(self.base);
        let mut num = BigInt::from(0);
        let mut den = BigInt::from(1);
        for &d in self.significant() {
            num = num * &b + BigInt::from(d);
            den *= &b;
        }
        BigRational::new(num, den)
    }
}

impl PartialEq for DigitVector {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.significant() == other.significant()
    }
}

impl Eq for DigitVector {}

impl Hash for DigitVector {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.base.hash(state);
        self.significant().hash(state);
    }
}

impl fmt::Debug for DigitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0.")?;
        if self.base <= 10 {
            for d in &self.digits {
                write!(f, "{d}")?;
            }
        } else {
            write!(f, "{:?}", self.digits)?;
        }
        write!(f, "_{}", self.base)
    }
}

/// One coordinate of a point: either an exact base-b expansion or an
/// exact rational `num/den` in `[0, 1)` for sets that leave the b-adic
/// grid (rescaled trims, Kronecker-type sets).
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Coord {
    Digits(DigitVector),
    Rational { num: u128, den: u128 },
}

impl fmt::Debug for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::Digits(d) => write!(f, "{d:?}"),
            Coord::Rational { num, den } => write!(f, "{num}/{den}"),
        }
    }
}

impl Coord {
    /// Reduced rational coordinate; requires `num < den`.
    pub fn rational(num: u128, den: u128) -> Result<Self> {
        if den == 0 || num >= den {
            return Err(Error::domain(format!("{num}/{den} is not in [0, 1)")));
        }
        let g = num.gcd(&den);
        Ok(Coord::Rational { num: num / g, den: den / g })
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Coord::Digits(d) => d.to_f64(),
            Coord::Rational { num, den } => *num as f64 / *den as f64,
        }
    }

    pub fn to_rational(&self) -> BigRational {
        match self {
            Coord::Digits(d) => d.to_rational(),
            Coord::Rational { num, den } => {
                BigRational::new(BigInt::from(*num), BigInt::from(*den))
            }
        }
    }

    pub fn to_ratio_u128(&self) -> Option<(u128, u128)> {
        match self {
            Coord::Digits(d) => d.to_ratio_u128(),
            Coord::Rational { num, den } => Some((*num, *den)),
        }
    }

    pub fn as_digits(&self) -> Option<&DigitVector> {
        match self {
            Coord::Digits(d) => Some(d),
            Coord::Rational { .. } => None,
        }
    }
}

impl From<DigitVector> for Coord {
    fn from(d: DigitVector) -> Self {
        Coord::Digits(d)
    }
}

/// Digits of the index `n`, least significant first, exactly `m` of them.
pub fn digit_vector_of_index(n: u64, b: u32, m: usize) -> Result<Vec<u8>> {
    let mut out = Vec::with_capacity(m);
    let mut rest = n;
    for _ in 0..m {
        out.push((rest % u64::from(b)) as u8);
        rest /= u64::from(b);
    }
    if rest != 0 {
        return Err(Error::domain(format!("index {n} does not fit in {m} base-{b} digits")));
    }
    Ok(out)
}

/// Number of base-b digits needed to write every index below `n`.
pub(crate) fn digits_for_count(n: u64, b: u32) -> usize {
    let mut m = 0;
    let mut cap: u128 = 1;
    while cap < u128::from(n) {
        cap *= u128::from(b);
        m += 1;
    }
    m
}
