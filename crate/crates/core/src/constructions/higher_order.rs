//! Interlaced (higher-order) nets and sequences over F_2.

use super::interlace::{interlace_matrices, interlace_points};
use super::niederreiter::{niederreiter_net_matrices, NiedParams, Niederreiter};
use super::trim::{arbitrary_n_trim, first_coordinate_is_zero_m_one_net};
use crate::error::{Error, Result};
use crate::net::{
    digits_for_count, generate_net_points, generate_sequence_points, Coord, DigitVector,
    GeneratingMatrixSet, PointSet, Provenance,
};

/// Generating matrices of the interlaced net: Niederreiter matrices in
/// dimension `alpha * s`, truncated to `m x m`, then interlaced.
pub fn dp_net_matrices(alpha: usize, m: usize, s: usize) -> Result<GeneratingMatrixSet> {
    let base = niederreiter_net_matrices(&NiedParams::new(alpha * s)?, m);
    interlace_matrices(&base, alpha)
}

/// The `2^m`-point interlaced net in `[0,1)^s`.
pub fn dp_net(alpha: usize, m: usize, s: usize) -> Result<PointSet> {
    if alpha == 0 || s == 0 {
        return Err(Error::param("alpha and s must be positive"));
    }
    let base = niederreiter_net_matrices(&NiedParams::new(alpha * s)?, m);
    let points = interlace_points(&generate_net_points(&base)?, alpha)?;
    Ok(points.with_provenance(
        Provenance::new("dp-net").with("alpha", alpha).with("m", m).with("s", s),
    ))
}

/// `2^m` points `D_3(n 2^-m, x_{1,n}, ..., x_{3s-1,n})` built from the
/// first `2^m` points of the `(3s-1)`-dimensional Niederreiter sequence.
pub fn dp_untrimmed_pointset(m: usize, s: usize) -> Result<PointSet> {
    if s == 0 {
        return Err(Error::param("s must be positive"));
    }
    let count = 1u64 << m;
    let base = generate_net_points(&niederreiter_net_matrices(&NiedParams::new(3 * s - 1)?, m))?;
    let mut rows = Vec::with_capacity(count as usize);
    for n in 0..count {
        // n 2^-m: the bits of n, most significant first
        let lead: Vec<u8> = (0..m).rev().map(|i| ((n >> i) & 1) as u8).collect();
        let mut row = vec![Coord::Digits(DigitVector::new_unchecked(2, lead))];
        row.extend(base.point(n as usize).iter().cloned());
        rows.push(row);
    }
    interlace_points(&PointSet::new(2, 3 * s, rows)?, 3)
}

/// Exactly `N` points in `[0,1)^s`: the untrimmed interlaced set with
/// `m = ceil(log2 N)`, cut to `x_1 < N 2^-m` and stretched.
pub fn dp_finite_pointset(n: usize, s: usize) -> Result<PointSet> {
    if n < 2 {
        return Err(Error::param(format!("need N >= 2, got {n}")));
    }
    let m = digits_for_count(n as u64, 2);
    let full = dp_untrimmed_pointset(m, s)?;
    if !first_coordinate_is_zero_m_one_net(&full, m)? {
        return Err(Error::Consistency(format!(
            "first coordinate of the m={m} interlaced set is not a (0,m,1)-net"
        )));
    }
    let trimmed = arbitrary_n_trim(&full, n)?;
    Ok(trimmed.with_provenance(Provenance::new("dp-finite").with("N", n).with("s", s)))
}

/// First `n_max` points of the order-5 interlaced Niederreiter sequence in
/// `[0,1)^s`.
pub fn dp_sequence(s: usize, n_max: usize) -> Result<PointSet> {
    if s == 0 {
        return Err(Error::param("s must be positive"));
    }
    let precision = digits_for_count(n_max as u64, 2).max(1);
    let base = generate_sequence_points(&Niederreiter::with_dim(5 * s)?, 0, n_max as u64, precision)?;
    let points = if base.is_empty() { PointSet::empty(2, s) } else { interlace_points(&base, 5)? };
    Ok(points.with_provenance(Provenance::new("dp-sequence").with("s", s).with("N", n_max)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::Interlaced;
    use crate::net::SequenceMatrices;

    fn ratios(p: &PointSet, j: usize) -> Vec<(u128, u128)> {
        p.points().iter().map(|x| x[j].to_ratio_u128().unwrap()).collect()
    }

    #[test]
    fn alpha_one_is_van_der_corput() {
        let p = dp_net(1, 2, 1).unwrap();
        assert_eq!(ratios(&p, 0), vec![(0, 1), (1, 2), (1, 4), (3, 4)]);
    }

    #[test]
    fn two_point_interlaced_net() {
        let p = dp_net(2, 1, 1).unwrap();
        assert_eq!(ratios(&p, 0), vec![(0, 1), (3, 4)]);
    }

    #[test]
    fn net_sizes() {
        for (a, m, s) in [(3, 4, 2), (2, 5, 1), (1, 3, 3)] {
            let p = dp_net(a, m, s).unwrap();
            assert_eq!(p.len(), 1 << m);
            assert_eq!(p.dim(), s);
        }
    }

    #[test]
    fn finite_sets_have_requested_size() {
        for s in 1..=2 {
            for n in 2..=20 {
                let p = dp_finite_pointset(n, s).unwrap();
                assert_eq!(p.len(), n);
                assert!(p.points().iter().flatten().all(|c| (0.0..1.0).contains(&c.to_f64())));
            }
        }
        assert!(dp_finite_pointset(1, 1).is_err());
    }

    #[test]
    fn power_of_two_is_untrimmed() {
        let p = dp_finite_pointset(8, 2).unwrap();
        let full = dp_untrimmed_pointset(3, 2).unwrap();
        assert_eq!(p.points(), full.points());
    }

    #[test]
    fn sequence_prefixes_agree() {
        for s in 1..=2 {
            let long = dp_sequence(s, 16).unwrap();
            let short = dp_sequence(s, 8).unwrap();
            assert_eq!(long.prefix(8).points(), short.points());
        }
        let p = dp_sequence(1, 4).unwrap();
        assert!(p.point(0)[0].as_digits().unwrap().is_zero());
    }

    #[test]
    fn sequence_matches_interlaced_matrices() {
        let seq = dp_sequence(1, 64).unwrap();
        let mats = Interlaced::new(Niederreiter::with_dim(5).unwrap(), 5).unwrap();
        assert_eq!(mats.dim(), 1);
        let direct = generate_sequence_points(&mats, 0, 64, 30).unwrap();
        assert_eq!(seq.points(), direct.points());
    }

    #[test]
    fn second_point_of_sequence() {
        // n = 1 picks column 1 of each of the five matrices; every first
        // row has c_{j,1,1} = 1, so all five coordinates equal 1/2 and the
        // interlaced value has ones in positions 1..5.
        let p = dp_sequence(1, 2).unwrap();
        assert_eq!(p.point(1)[0].to_ratio_u128(), Some((31, 32)));
    }
}
