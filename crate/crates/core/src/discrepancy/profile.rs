use std::fmt;
use std::str::FromStr;

use super::bounds::{lq_sequence_normalizer, sum_of_digits};
use super::l2::l2_prefix_profile;
use super::lq::lq_estimate;
use crate::constructions::{dp_sequence, Niederreiter, VanDerCorput};
use crate::error::{Error, Result};
use crate::net::{digits_for_count, generate_sequence_points, PointSet, Provenance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceFamily {
    /// Order-5 interlaced Niederreiter sequence.
    DpSequence,
    Niederreiter,
    /// Base-`b` van der Corput; only `s = 1`.
    VanDerCorput(u32),
}

impl SequenceFamily {
    pub fn name(self) -> &'static str {
        match self {
            SequenceFamily::DpSequence => "dp-sequence",
            SequenceFamily::Niederreiter => "niederreiter-sequence",
            SequenceFamily::VanDerCorput(_) => "van-der-corput-sequence",
        }
    }

    /// The first `n_max` points in `[0,1)^s`.
    pub fn points(self, s: usize, n_max: usize) -> Result<PointSet> {
        match self {
            SequenceFamily::DpSequence => dp_sequence(s, n_max),
            SequenceFamily::Niederreiter => {
                let p = digits_for_count(n_max as u64, 2).max(1);
                let pts = generate_sequence_points(&Niederreiter::with_dim(s)?, 0, n_max as u64, p)?;
                Ok(pts.with_provenance(Provenance::new("niederreiter-sequence").with("s", s).with("N", n_max)))
            }
            SequenceFamily::VanDerCorput(b) => {
                if s != 1 {
                    return Err(Error::param("van der Corput is one-dimensional"));
                }
                let p = digits_for_count(n_max as u64, b).max(1);
                let pts = generate_sequence_points(&VanDerCorput::new(b)?, 0, n_max as u64, p)?;
                Ok(pts.with_provenance(Provenance::new("van-der-corput-sequence").with("b", b).with("N", n_max)))
            }
        }
    }
}

impl fmt::Display for SequenceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SequenceFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dp-sequence" => Ok(SequenceFamily::DpSequence),
            "niederreiter-sequence" => Ok(SequenceFamily::Niederreiter),
            "van-der-corput-sequence" => Ok(SequenceFamily::VanDerCorput(2)),
            other => Err(Error::param(format!("unknown sequence family {other:?}"))),
        }
    }
}

/// `2..=min(256, n_max)`, then `2^m - 1` and `2^m` up to `n_max`.
pub fn profile_grid(n_max: usize) -> Vec<usize> {
    let mut grid: Vec<usize> = (2..=n_max.min(256)).collect();
    let mut p = 512usize;
    while p - 1 <= n_max {
        grid.push(p - 1);
        if p <= n_max {
            grid.push(p);
        }
        p = match p.checked_mul(2) {
            Some(v) => v,
            None => break,
        };
    }
    grid
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileRow {
    pub n: usize,
    pub value: f64,
    pub stderr: Option<f64>,
    pub sum_of_digits: u32,
    /// `N L_q / ((log N)^((s-1)/2) sqrt(S(N)))`.
    pub ratio_digit_sum: f64,
    /// `N L_q` over the binary-expansion normalizer; absent when the
    /// normalizer vanishes.
    pub ratio_binary: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SequenceProfile {
    pub family: SequenceFamily,
    pub s: usize,
    pub q: f64,
    pub rows: Vec<ProfileRow>,
}

impl SequenceProfile {
    pub const CSV_HEADER: &'static str = "family,s,q,N,value,stderr,S_N,ratio_digit_sum,ratio_binary";

    pub fn csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                self.family,
                self.s,
                self.q,
                r.n,
                r.value,
                r.stderr.map(|v| v.to_string()).unwrap_or_default(),
                r.sum_of_digits,
                r.ratio_digit_sum,
                r.ratio_binary.map(|v| v.to_string()).unwrap_or_default()
            ));
        }
        out
    }

    /// `max / min` of the digit-sum ratio column.
    pub fn ratio_spread(&self) -> f64 {
        let (lo, hi) = self
            .rows
            .iter()
            .map(|r| r.ratio_digit_sum)
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), v| (lo.min(v), hi.max(v)));
        hi / lo
    }
}

/// Sampling controls for `q != 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LqOptions {
    pub samples: usize,
    pub seed: u64,
}

impl Default for LqOptions {
    fn default() -> Self {
        Self { samples: 1 << 14, seed: 0 }
    }
}

/// `L_q` of the first `N` points for every `N` in [`profile_grid`]. For
/// `q = 2` all prefixes come from one incremental pairwise pass; other `q`
/// are estimated per grid point with seed `seed + N`.
pub fn sequence_profile(
    family: SequenceFamily,
    s: usize,
    n_max: usize,
    q: f64,
    lq: LqOptions,
) -> Result<SequenceProfile> {
    if n_max < 2 {
        return Err(Error::param(format!("need N_max >= 2, got {n_max}")));
    }
    if s == 0 {
        return Err(Error::param("s must be positive"));
    }
    let points = family.points(s, n_max)?;
    let grid = profile_grid(n_max);
    let values: Vec<(f64, Option<f64>)> = if q == 2.0 {
        let prefix = l2_prefix_profile(&points);
        grid.iter().map(|&n| (prefix[n - 1], None)).collect()
    } else {
        grid.iter()
            .map(|&n| {
                let r = lq_estimate(&points.prefix(n), q, lq.samples, lq.seed.wrapping_add(n as u64))?;
                Ok((r.value, r.stderr))
            })
            .collect::<Result<_>>()?
    };
    let rows = grid
        .iter()
        .zip(values)
        .map(|(&n, (value, stderr))| {
            let nf = n as f64;
            let sn = sum_of_digits(n as u64);
            let shape = nf.ln().powf((s as f64 - 1.0) / 2.0) * f64::from(sn).sqrt();
            let norm = lq_sequence_normalizer(n as u64, s, q);
            ProfileRow {
                n,
                value,
                stderr,
                sum_of_digits: sn,
                ratio_digit_sum: nf * value / shape,
                ratio_binary: (norm > 0.0).then(|| nf * value / norm),
            }
        })
        .collect();
    Ok(SequenceProfile { family, s, q, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrepancy::l2_exact_rational;
    use num_traits::ToPrimitive;

    #[test]
    fn grid_contract() {
        let g = profile_grid(4096);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(g[0], 2);
        assert!((2..=256).all(|n| g.contains(&n)));
        for m in 1..12 {
            assert!(g.contains(&((2usize << m) - 1)), "missing {}", (2usize << m) - 1);
        }
        assert_eq!(*g.last().unwrap(), 4096);
        assert_eq!(profile_grid(2), vec![2]);
        assert_eq!(profile_grid(600), [(2..=256).collect::<Vec<_>>(), vec![511, 512]].concat());
    }

    #[test]
    fn dp_sequence_profile() {
        let prof = sequence_profile(SequenceFamily::DpSequence, 1, 64, 2.0, LqOptions::default()).unwrap();
        assert!(prof.rows.iter().all(|r| r.ratio_digit_sum.is_finite() && r.ratio_digit_sum > 0.0));
        let pts = dp_sequence(1, 2).unwrap();
        let exact = l2_exact_rational(&pts).unwrap().to_f64().unwrap().sqrt();
        assert!((prof.rows[0].value - exact).abs() < 1e-12);
        assert!(prof.csv().starts_with(SequenceProfile::CSV_HEADER));
    }

    #[test]
    fn estimated_profile_rows_carry_errors() {
        let opts = LqOptions { samples: 256, seed: 3 };
        let prof = sequence_profile(SequenceFamily::VanDerCorput(2), 1, 8, 3.0, opts).unwrap();
        assert_eq!(prof.rows.len(), 7);
        assert!(prof.rows.iter().all(|r| r.stderr.is_some()));
        assert!(sequence_profile(SequenceFamily::VanDerCorput(2), 2, 8, 2.0, opts).is_err());
        assert!(sequence_profile(SequenceFamily::Niederreiter, 2, 1, 2.0, opts).is_err());
    }
}
