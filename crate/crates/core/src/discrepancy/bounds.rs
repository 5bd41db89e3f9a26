//! Lower-bound constants and the normalizers of the upper-bound shapes.
//! All logarithms are natural.

/// `c_s = 7 / (27 * 2^(2s-1) * (log 2)^((s-1)/2) * sqrt((s-1)!))`.
pub fn roth_constant(s: usize) -> f64 {
    assert!(s >= 1);
    let fact: f64 = (1..s).map(|i| i as f64).product();
    let sm1 = (s - 1) as f64;
    7.0 / (27.0 * 2f64.powi(2 * s as i32 - 1) * std::f64::consts::LN_2.powf(sm1 / 2.0) * fact.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RothBound {
    /// `constant * (log N)^((s-1)/2) / N`.
    pub value: f64,
    pub constant: f64,
    /// False for `1 < q < 2`, where no explicit constant is known and the
    /// constant is reported as 0.
    pub explicit: bool,
}

/// Lower bound on `L_q` for any `N`-point set in `[0,1)^s`.
pub fn roth_lower_bound(s: usize, n: usize, q: f64) -> RothBound {
    let constant = if q >= 2.0 { roth_constant(s) } else { 0.0 };
    let shape = (n as f64).ln().max(0.0).powf((s as f64 - 1.0) / 2.0) / n as f64;
    RothBound { value: constant * shape, constant, explicit: q >= 2.0 }
}

/// Number of ones in the binary expansion.
pub fn sum_of_digits(n: u64) -> u32 {
    n.count_ones()
}

/// `r^(3/2 - 1/q) * sqrt(sum_v m_v^(s-1))` for `N = 2^m_1 + ... + 2^m_r`,
/// with `0^0 = 1`.
pub fn lq_sequence_normalizer(n: u64, s: usize, q: f64) -> f64 {
    let r = f64::from(n.count_ones());
    let sum: f64 = (0..64)
        .filter(|&v| (n >> v) & 1 == 1)
        .map(|v| (v as f64).powi(s as i32 - 1))
        .sum();
    r.powf(1.5 - 1.0 / q) * sum.sqrt()
}
