use crate::error::{Error, Result};
use crate::net::{Coord, PointSet, Provenance};

/// Continued fraction `[a0; a1, a2, ...]`, optionally repeating its tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub a0: u64,
    pub terms: Vec<u64>,
    pub periodic: bool,
}

impl ContinuedFraction {
    pub fn golden_ratio() -> Self {
        Self { a0: 1, terms: vec![1], periodic: true }
    }

    pub fn sqrt2() -> Self {
        Self { a0: 1, terms: vec![2], periodic: true }
    }

    pub fn finite(a0: u64, terms: Vec<u64>) -> Self {
        Self { a0, terms, periodic: false }
    }

    pub fn name(&self) -> String {
        let terms: Vec<String> = self.terms.iter().map(u64::to_string).collect();
        format!("[{};{}{}]", self.a0, terms.join(","), if self.periodic { "..." } else { "" })
    }

    /// First convergent `p/q` with `q > min_den`.
    pub fn convergent_above(&self, min_den: u128) -> Result<(u128, u128)> {
        if self.terms.iter().any(|&a| a == 0) {
            return Err(Error::param("partial quotients must be positive"));
        }
        let (mut p_prev, mut q_prev) = (1u128, 0u128);
        let (mut p, mut q) = (u128::from(self.a0), 1u128);
        let mut i = 0usize;
        while q <= min_den {
            let a = if i < self.terms.len() {
                self.terms[i]
            } else if self.periodic && !self.terms.is_empty() {
                self.terms[i % self.terms.len()]
            } else {
                return Err(Error::param(format!(
                    "continued fraction prefix exhausted before a denominator above {min_den}"
                )));
            };
            let a = u128::from(a);
            let overflow = || Error::capacity("convergent overflows u128");
            let np = a.checked_mul(p).and_then(|v| v.checked_add(p_prev)).ok_or_else(overflow)?;
            let nq = a.checked_mul(q).and_then(|v| v.checked_add(q_prev)).ok_or_else(overflow)?;
            (p_prev, q_prev, p, q) = (p, q, np, nq);
            i += 1;
        }
        Ok((p, q))
    }
}

/// The symmetrized set `({n a}, n/M)`, `({-n a}, n/M)` for `n = 1..M`, with
/// `a` replaced by a convergent whose denominator exceeds `M^2`. The second
/// coordinate `M/M = 1` is wrapped to 0.
pub fn davenport_symmetrized(alpha: &ContinuedFraction, big_m: usize) -> Result<PointSet> {
    if big_m == 0 {
        return Err(Error::param("M must be positive"));
    }
    let m = big_m as u128;
    let (p, q) = alpha.convergent_above(m * m)?;
    let mut rows = Vec::with_capacity(2 * big_m);
    for n in 1..=m {
        let frac = (n * (p % q)) % q;
        let y = Coord::rational(n % m, m)?;
        rows.push(vec![Coord::rational(frac, q)?, y.clone()]);
        rows.push(vec![Coord::rational((q - frac) % q, q)?, y]);
    }
    Ok(PointSet::new(2, 2, rows)?.with_provenance(
        Provenance::new("davenport").with("alpha", alpha.name()).with("M", big_m),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_convergents_are_fibonacci() {
        let g = ContinuedFraction::golden_ratio();
        assert_eq!(g.convergent_above(1).unwrap(), (3, 2));
        assert_eq!(g.convergent_above(20).unwrap(), (34, 21));
        assert_eq!(g.convergent_above(21).unwrap(), (55, 34));
        assert_eq!(ContinuedFraction::sqrt2().convergent_above(12).unwrap(), (41, 29));
        assert!(ContinuedFraction::finite(0, vec![2, 3]).convergent_above(100).is_err());
    }

    #[test]
    fn counts_and_symmetry() {
        for m in [1, 2, 5, 16] {
            let p = davenport_symmetrized(&ContinuedFraction::golden_ratio(), m).unwrap();
            assert_eq!(p.len(), 2 * m);
            for pair in p.points().chunks(2) {
                let (a, b) = (&pair[0], &pair[1]);
                assert_eq!(a[1], b[1]);
                let (x, y) = (a[0].to_rational(), b[0].to_rational());
                assert!(x.clone() + y == num_rational::BigRational::from_integer(1.into()) || x == num_rational::BigRational::from_integer(0.into()));
            }
            assert!(p.points().iter().flatten().all(|c| (0.0..1.0).contains(&c.to_f64())));
        }
    }

    #[test]
    fn single_pair_wraps_second_coordinate() {
        let p = davenport_symmetrized(&ContinuedFraction::sqrt2(), 1).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.points().iter().all(|x| x[1].to_f64() == 0.0));
        // sqrt(2) ~ 3/2 (first convergent with q > 1): {3/2} = 1/2
        assert_eq!(p.point(0)[0].to_ratio_u128(), Some((1, 2)));
    }
}
