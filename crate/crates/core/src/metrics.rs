//! Weights on nonnegative integers and integer vectors (NRT, Hamming and the
//! higher-order `mu_alpha`), and their minima over dual spaces.

use std::fmt;

use crate::error::{Error, Result};
use crate::net::{compute_t_value, DualSpace, GeneratingMatrixSet};

/// Positions `a_1 > a_2 > ...` (1-based) of the nonzero base-b digits of `k`.
fn digit_positions(k: u64, b: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut rest = k;
    let mut pos = 1;
    while rest > 0 {
        if rest % u64::from(b) != 0 {
            out.push(pos);
        }
        rest /= u64::from(b);
        pos += 1;
    }
    out.reverse();
    out
}

/// Position of the most significant nonzero digit; 0 for `k = 0`.
pub fn nrt_weight(k: u64, b: u32) -> u32 {
    let mut rest = k;
    let mut a = 0;
    while rest > 0 {
        rest /= u64::from(b);
        a += 1;
    }
    a
}

/// Number of nonzero base-b digits.
pub fn hamming_weight(k: u64, b: u32) -> u32 {
    let mut rest = k;
    let mut n = 0;
    while rest > 0 {
        if rest % u64::from(b) != 0 {
            n += 1;
        }
        rest /= u64::from(b);
    }
    n
}

/// Sum of the `alpha` most significant nonzero digit positions.
pub fn mu_alpha(k: u64, alpha: u32, b: u32) -> u32 {
    digit_positions(k, b).iter().take(alpha as usize).sum()
}

/// Hamming weight of the digitwise difference of `k` and `l` in F_b.
pub fn digitwise_difference_weight(k: u64, l: u64, b: u32) -> u32 {
    let (mut x, mut y) = (k, l);
    let b64 = u64::from(b);
    let mut n = 0;
    while x > 0 || y > 0 {
        if x % b64 != y % b64 {
            n += 1;
        }
        x /= b64;
        y /= b64;
    }
    n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightKind {
    Nrt,
    Hamming,
    MuAlpha(u32),
}

impl WeightKind {
    pub fn of(self, k: u64, b: u32) -> u32 {
        match self {
            WeightKind::Nrt => nrt_weight(k, b),
            WeightKind::Hamming => hamming_weight(k, b),
            WeightKind::MuAlpha(a) => mu_alpha(k, a, b),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            WeightKind::Nrt => "nrt",
            WeightKind::Hamming => "hamming",
            WeightKind::MuAlpha(_) => "mu_alpha",
        }
    }

    pub fn alpha(self) -> u32 {
        match self {
            WeightKind::MuAlpha(a) => a,
            _ => 1,
        }
    }
}

impl fmt::Display for WeightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Coordinatewise sum of weights.
pub fn vector_weight(ks: &[u64], kind: WeightKind, b: u32) -> u32 {
    ks.iter().map(|&k| kind.of(k, b)).sum()
}

/// Minimum weight over the nonzero elements of a dual space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightProfile {
    pub kind: WeightKind,
    /// `None` when no nonzero element lies in range (an infinite minimum).
    pub min: Option<u32>,
    pub witness: Option<Vec<u64>>,
    pub dual_size: u64,
}

impl WeightProfile {
    pub const CSV_HEADER: &'static str = "kind,alpha,min,witness,dual_size";

    pub fn csv_row(&self) -> String {
        let min = self.min.map_or("inf".to_string(), |m| m.to_string());
        let witness = self.witness.as_ref().map_or(String::new(), |w| {
            w.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
        });
        format!("{},{},{},{},{}", self.kind, self.kind.alpha(), min, witness, self.dual_size)
    }
}

/// Minimum of `kind` over nonzero dual elements whose coordinates are all
/// below `range_limit`.
pub fn min_dual_weight(dual: &DualSpace, kind: WeightKind, range_limit: u64) -> WeightProfile {
    let b = dual.matrices().base();
    let mut best: Option<(u32, Vec<u64>)> = None;
    dual.for_each(|k| {
        if k.iter().all(|&x| x == 0) || k.iter().any(|&x| x >= range_limit) {
            return;
        }
        let w = vector_weight(k, kind, b);
        if best.as_ref().map_or(true, |(bw, _)| w < *bw) {
            best = Some((w, k.to_vec()));
        }
    });
    WeightProfile {
        kind,
        min: best.as_ref().map(|(w, _)| *w),
        witness: best.map(|(_, k)| k),
        dual_size: dual.len(),
    }
}

/// `alpha * t + s * C(alpha, 2)`.
pub fn t_alpha(alpha: u32, t: u32, s: u32) -> u32 {
    alpha * t + s * alpha * (alpha.saturating_sub(1)) / 2
}

/// Whether the interlaced matrices satisfy
/// `min mu_alpha >= alpha * m - t_alpha(alpha, t_base, s)` over the dual.
pub fn verify_order_alpha(
    interlaced: &GeneratingMatrixSet,
    alpha: u32,
    m: u32,
    t_base: u32,
    cap: u64,
) -> Result<bool> {
    let dual = DualSpace::new(interlaced, cap)?;
    let s = interlaced.dim() as u32;
    let profile = min_dual_weight(&dual, WeightKind::MuAlpha(alpha), u64::MAX);
    let target = i64::from(alpha * m) - i64::from(t_alpha(alpha, t_base, s));
    Ok(profile.min.map_or(true, |w| i64::from(w) >= target))
}

/// `m - t + 1` against the dual minimum of the NRT weight.
pub fn nrt_identity_holds(c: &GeneratingMatrixSet, cap: u64) -> Result<(bool, usize, Option<u32>)> {
    let t = compute_t_value(c);
    let dual = DualSpace::new(c, cap)?;
    let profile = min_dual_weight(&dual, WeightKind::Nrt, u64::MAX);
    let expected = (c.m() - t + 1) as u32;
    match profile.min {
        Some(w) => Ok((w == expected, t, Some(w))),
        // no nonzero dual in range: only possible for a single square full-rank matrix
        None if c.dim() == 1 && c.precision() == c.m() && t == 0 => Ok((true, t, None)),
        None => Err(Error::Consistency("nonzero dual expected but none found".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nrt_examples() {
        assert_eq!(nrt_weight(0, 2), 0);
        assert_eq!(nrt_weight(6, 2), 3);
        for b in [2, 3, 5, 11] {
            assert_eq!(nrt_weight(1, b), 1);
        }
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(hamming_weight(0, 2), 0);
        assert_eq!(hamming_weight(5, 2), 2);
        assert_eq!(hamming_weight(50, 5), 1);
    }

    #[test]
    fn mu_alpha_examples() {
        assert_eq!(mu_alpha(6, 2, 2), 5);
        assert_eq!(mu_alpha(4, 3, 2), 3);
        assert_eq!(mu_alpha(0, 3, 2), 0);
        for b in [2, 5] {
            for k in 0..1024 {
                assert_eq!(mu_alpha(k, 1, b), nrt_weight(k, b));
            }
        }
    }

    #[test]
    fn vector_weight_examples() {
        assert_eq!(vector_weight(&[0, 0, 0], WeightKind::Nrt, 2), 0);
        assert_eq!(vector_weight(&[5, 5], WeightKind::Hamming, 2), 4);
        assert_eq!(vector_weight(&[6, 1], WeightKind::MuAlpha(2), 2), 6);
    }

    #[test]
    fn t_alpha_examples() {
        for t in 0..5 {
            assert_eq!(t_alpha(1, t, 3), t);
        }
        assert_eq!(t_alpha(3, 0, 1), 3);
        assert_eq!(t_alpha(5, 2, 2), 30);
    }

    #[test]
    fn weight_ordering() {
        for b in [2u32, 5] {
            for k in 0..=(1u64 << 16) {
                let mut prev = 0;
                for a in 1..=5 {
                    let w = mu_alpha(k, a, b);
                    assert!(w >= prev);
                    prev = w;
                }
                let (h, n) = (hamming_weight(k, b), nrt_weight(k, b));
                assert!(h <= n);
                for a in 1..=5 {
                    assert!(n <= mu_alpha(k, a, b) && mu_alpha(k, a, b) <= a * n);
                }
            }
        }
    }

    #[test]
    fn digitwise_difference() {
        // 0b1011 vs 0b0001 differ in positions 2 and 4
        assert_eq!(digitwise_difference_weight(0b1011, 0b0001, 2), 2);
        assert_eq!(digitwise_difference_weight(0b111, 0, 2), 3);
        // base 5: 13 = (2,3), 8 = (1,3) -> one digit differs
        assert_eq!(digitwise_difference_weight(13, 8, 5), 1);
    }

    #[test]
    fn csv_row_layout() {
        let p = WeightProfile { kind: WeightKind::MuAlpha(3), min: Some(7), witness: Some(vec![1, 4]), dual_size: 64 };
        assert_eq!(p.csv_row(), "mu_alpha,3,7,1 4,64");
        let q = WeightProfile { kind: WeightKind::Nrt, min: None, witness: None, dual_size: 1 };
        assert_eq!(q.csv_row(), "nrt,1,inf,,1");
    }
}
