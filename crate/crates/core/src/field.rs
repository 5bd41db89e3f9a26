//! Exact arithmetic over prime fields, dense matrices over them, and binary
//! polynomials.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported base. Digits are stored as `u8`.
pub const MAX_BASE: u32 = 251;

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field F_b.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    b: u32,
}

impl PrimeField {
    pub fn new(b: u32) -> Result<Self> {
        if !is_prime(b) {
            return Err(Error::domain(format!("base {b} is not prime")));
        }
        if b > MAX_BASE {
            return Err(Error::domain(format!("base {b} exceeds the supported maximum {MAX_BASE}")));
        }
        Ok(Self { b })
    }

    #[inline]
    pub fn base(self) -> u32 {
        self.b
    }

    #[inline]
    pub fn add(self, x: u32, y: u32) -> u32 {
        (x + y) % self.b
    }

    #[inline]
    pub fn sub(self, x: u32, y: u32) -> u32 {
        (x + self.b - y) % self.b
    }

    #[inline]
    pub fn neg(self, x: u32) -> u32 {
        (self.b - x) % self.b
    }

    #[inline]
    pub fn mul(self, x: u32, y: u32) -> u32 {
        (x * y) % self.b
    }

    /// `x^e` with the convention `0^0 = 1`.
    pub fn pow(self, x: u32, mut e: u64) -> u32 {
        let mut base = x % self.b;
        let mut acc = 1 % self.b;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat's little theorem; `None` for zero.
    pub fn inv(self, x: u32) -> Option<u32> {
        let x = x % self.b;
        if x == 0 {
            None
        } else {
            Some(self.pow(x, u64::from(self.b - 2)))
        }
    }
}

/// An element of F_b together with its field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    value: u32,
    field: PrimeField,
}

impl FieldElem {
    pub fn new(value: u32, b: u32) -> Result<Self> {
        let field = PrimeField::new(b)?;
        Ok(Self::in_field(value, field))
    }

    pub fn in_field(value: u32, field: PrimeField) -> Self {
        Self { value: value % field.base(), field }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> PrimeField {
        self.field
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub fn field_inverse(a: FieldElem) -> Result<FieldElem> {
    a.field
        .inv(a.value)
        .map(|v| FieldElem::in_field(v, a.field))
        .ok_or_else(|| Error::domain("zero has no multiplicative inverse"))
}

fn binomial_small(i: u64, j: u64, field: PrimeField) -> u32 {
    // i < b here, so every factor of the multiplicative formula is a unit.
    if j > i {
        return 0;
    }
    let j = j.min(i - j);
    let (mut num, mut den) = (1u32, 1u32);
    for t in 0..j {
        num = field.mul(num, ((i - t) % u64::from(field.base())) as u32);
        den = field.mul(den, ((t + 1) % u64::from(field.base())) as u32);
    }
    field.mul(num, field.inv(den).expect("nonzero denominator"))
}

/// `C(i, j) mod b` via Lucas' theorem; zero whenever `j > i`.
pub fn binomial_mod_p(i: u64, j: u64, field: PrimeField) -> FieldElem {
    let b = u64::from(field.base());
    let (mut i, mut j) = (i, j);
    let mut acc = 1u32;
    if j > i {
        return FieldElem::in_field(0, field);
    }
    while j > 0 || i > 0 {
        let (id, jd) = (i % b, j % b);
        acc = field.mul(acc, binomial_small(id, jd, field));
        if acc == 0 {
            break;
        }
        i /= b;
        j /= b;
    }
    FieldElem::in_field(acc, field)
}

/// Dense row-major matrix over F_b.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FieldMatrix(b={}, {}x{})", self.field.base(), self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: PrimeField, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::param("ragged matrix rows"));
        }
        let b = field.base();
        if let Some(v) = rows.iter().flatten().find(|&&v| v >= b) {
            return Err(Error::domain(format!("entry {v} is not an element of F_{b}")));
        }
        let data = rows.iter().flatten().map(|&v| v as u8).collect();
        Ok(Self { field, rows: rows.len(), cols, data })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        u32::from(self.data[r * self.cols + c])
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(v < self.field.base());
        self.data[r * self.cols + c] = v as u8;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|&v| u32::from(v)).collect()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Matrix-vector product over F_b; `v.len()` must equal `cols`.
    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        let b = self.field.base();
        (0..self.rows)
            .map(|r| {
                let acc: u32 = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .map(|(&a, &x)| u32::from(a) * u32::from(x))
                    .sum();
                (acc % b) as u8
            })
            .collect()
    }

    /// Upper-left `rows x cols` block.
    pub fn truncate(&self, rows: usize, cols: usize) -> Self {
        assert!(rows <= self.rows && cols <= self.cols);
        let mut out = Self::zeros(self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(r, c));
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if p != row {
                for c in 0..self.cols {
                    self.data.swap(p * self.cols + c, row * self.cols + c);
                }
            }
            let inv = f.inv(self.get(row, col)).expect("pivot is nonzero");
            for c in col..self.cols {
                let v = f.mul(self.get(row, c), inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                let factor = self.get(r, col);
                if r == row || factor == 0 {
                    continue;
                }
                for c in col..self.cols {
                    let v = f.sub(self.get(r, c), f.mul(factor, self.get(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<u8>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u8; self.cols];
                v[free] = 1;
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(m.get(r, free)) as u8;
                }
                v
            })
            .collect()
    }
}

/// Polynomial over F_2, bit `i` holding the coefficient of `x^i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinaryPoly {
    limbs: Vec<u64>,
}

impl fmt::Debug for BinaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryPoly({self})")
    }
}

impl fmt::Display for BinaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(deg) = self.degree() else {
            return write!(f, "0");
        };
        let mut terms = Vec::new();
        for i in (0..=deg).rev() {
            if self.coeff(i) {
                terms.push(match i {
                    0 => "1".to_string(),
                    1 => "x".to_string(),
                    _ => format!("x^{i}"),
                });
            }
        }
        write!(f, "{}", terms.join("+"))
    }
}

impl BinaryPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_bits(1)
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut p = Self { limbs: vec![0; k / 64 + 1] };
        p.limbs[k / 64] = 1 << (k % 64);
        p
    }

    pub fn from_bits(bits: u64) -> Self {
        let mut p = Self { limbs: vec![bits] };
        p.normalize();
        p
    }

    /// Low 64 coefficients as a bit mask.
    pub fn low_bits(&self) -> u64 {
        self.limbs.first().copied().unwrap_or(0)
    }

    fn normalize(&mut self) {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        let top = *self.limbs.last()?;
        Some((self.limbs.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.limbs.get(i / 64).is_some_and(|l| (l >> (i % 64)) & 1 == 1)
    }

    fn xor_shifted(&mut self, other: &Self, shift: usize) {
        let (ls, bs) = (shift / 64, shift % 64);
        let need = other.limbs.len() + ls + 1;
        if self.limbs.len() < need {
            self.limbs.resize(need, 0);
        }
        for (i, &l) in other.limbs.iter().enumerate() {
            self.limbs[i + ls] ^= l << bs;
            if bs != 0 {
                self.limbs[i + ls + 1] ^= l >> (64 - bs);
            }
        }
        self.normalize();
    }

    /// Multiplication by `x^k`.
    pub fn shifted(&self, k: usize) -> Self {
        let mut out = Self::zero();
        out.xor_shifted(self, k);
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_shifted(other, 0);
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        if let Some(deg) = other.degree() {
            for i in 0..=deg {
                if other.coeff(i) {
                    out.xor_shifted(self, i);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Remainder of division by a nonzero divisor.
    pub fn rem(&self, divisor: &Self) -> Self {
        let d = divisor.degree().expect("division by the zero polynomial");
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < d {
                break;
            }
            r.xor_shifted(divisor, rd - d);
        }
        r
    }

    pub fn has_root_in_f2(&self) -> bool {
        // p(0) = constant term, p(1) = parity of the coefficient count.
        let ones: u32 = self.limbs.iter().map(|l| l.count_ones()).sum();
        !self.coeff(0) || ones % 2 == 0
    }

    /// Laurent coefficients `a_1, ..., a_len` of `numerator / self` in
    /// powers of `x^{-1}`; requires `deg(numerator) < deg(self)`.
    pub fn laurent_coefficients(&self, numerator: &Self, len: usize) -> Vec<u8> {
        let d = self.degree().expect("division by the zero polynomial");
        assert!(numerator.degree().map_or(true, |nd| nd < d), "improper fraction");
        let mut r = numerator.clone();
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            r = r.shifted(1);
            if r.degree() == Some(d) {
                r.xor_shifted(self, 0);
                out.push(1);
            } else {
                out.push(0);
            }
        }
        out
    }
}

/// `x` followed by the first `count - 1` irreducible polynomials over F_2
/// other than `x`, ordered by degree and then by coefficient value.
pub fn irreducible_polys_f2(count: usize) -> Vec<BinaryPoly> {
    let mut out = vec![BinaryPoly::monomial(1)];
    let mut found: Vec<BinaryPoly> = Vec::new();
    let mut candidate: u64 = 2;
    while out.len() < count {
        candidate += 1;
        let p = BinaryPoly::from_bits(candidate);
        let deg = p.degree().unwrap_or(0);
        let irreducible = if deg == 1 {
            p.coeff(0)
        } else {
            !p.has_root_in_f2()
                && found
                    .iter()
                    .take_while(|q| 2 * q.degree().unwrap_or(0) <= deg)
                    .all(|q| !p.rem(q).is_zero())
        };
        if irreducible {
            found.push(p.clone());
            out.push(p);
        }
    }
    out
}
