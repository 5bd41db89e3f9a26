//! Local discrepancy, exact L2 and estimated Lq norms, and comparators
//! against the known lower and upper bound shapes.

mod bounds;
mod l2;
mod lq;
mod profile;

use std::fmt;

use num_rational::BigRational;
use num_traits::ToPrimitive;

pub use bounds::{lq_sequence_normalizer, roth_constant, roth_lower_bound, sum_of_digits, RothBound};
pub use l2::{l2_exact_rational, l2_prefix_profile, l2_squared, CompensatedSum, RATIONAL_MAX_DIM, RATIONAL_MAX_POINTS};
pub use lq::lq_estimate;
pub use profile::{profile_grid, sequence_profile, LqOptions, ProfileRow, SequenceFamily, SequenceProfile};

use crate::constructions::arbitrary_n_trim;
use crate::error::{Error, Result};
use crate::net::{Coord, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ExactPairwise,
    ExactRational,
    Estimated,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ExactPairwise => "exact-pairwise",
            Method::ExactRational => "exact-rational",
            Method::Estimated => "estimated",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscrepancyReport {
    pub family: String,
    pub params: String,
    pub n: usize,
    pub s: usize,
    pub q: f64,
    pub value: f64,
    pub method: Method,
    pub stderr: Option<f64>,
    /// `N L_q / (c_s (log N)^((s-1)/2))`; absent when `q < 2` or the
    /// logarithm vanishes.
    pub roth_ratio: Option<f64>,
}

impl DiscrepancyReport {
    pub const CSV_HEADER: &'static str = "family,params,N,s,q,method,value,stderr,roth_ratio,S_N";

    pub fn new(points: &PointSet, q: f64, value: f64, method: Method, stderr: Option<f64>) -> Self {
        let (family, params) = match points.provenance() {
            Some(p) => {
                let kv: Vec<String> = p.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                (p.family.clone(), kv.join(" "))
            }
            None => (String::new(), String::new()),
        };
        let (n, s) = (points.len(), points.dim());
        Self { family, params, n, s, q, value, method, stderr, roth_ratio: roth_ratio(n, s, q, value) }
    }

    pub fn sum_of_digits(&self) -> u32 {
        sum_of_digits(self.n as u64)
    }

    pub fn csv_row(&self) -> String {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            csv_field(&self.family),
            csv_field(&self.params),
            self.n,
            self.s,
            self.q,
            self.method,
            self.value,
            opt(self.stderr),
            opt(self.roth_ratio),
            self.sum_of_digits()
        )
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn roth_ratio(n: usize, s: usize, q: f64, value: f64) -> Option<f64> {
    if q < 2.0 || n == 0 {
        return None;
    }
    let shape = (n as f64).ln().powf((s as f64 - 1.0) / 2.0);
    let denom = roth_constant(s) * shape;
    (denom > 0.0).then(|| n as f64 * value / denom)
}

/// Count of points in `[0, t)` divided by `N`, minus the volume of the box.
pub fn local_discrepancy(points: &PointSet, t: &[f64]) -> Result<f64> {
    if t.len() != points.dim() {
        return Err(Error::param(format!("t has {} coordinates, expected {}", t.len(), points.dim())));
    }
    if t.iter().any(|x| !(0.0..=1.0).contains(x)) {
        return Err(Error::domain("t must lie in [0,1]^s"));
    }
    if points.is_empty() {
        return Err(Error::param("empty point set"));
    }
    let bounds: Vec<BigRational> = t.iter().map(|&x| BigRational::from_float(x).expect("finite")).collect();
    let inside = points
        .points()
        .iter()
        .filter(|p| p.iter().zip(&bounds).all(|(c, b)| below(c, b, f64_of(b))))
        .count();
    Ok(inside as f64 / points.len() as f64 - t.iter().product::<f64>())
}

fn f64_of(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn below(c: &Coord, bound: &BigRational, bound_f64: f64) -> bool {
    let x = c.to_f64();
    // f64 conversion is monotone; only near-ties need the exact comparison
    if (x - bound_f64).abs() > 1e-9 {
        x < bound_f64
    } else {
        &c.to_rational() < bound
    }
}

/// Floating-point local discrepancy on a flat `N x s` coordinate array.
pub(crate) fn local_discrepancy_f64(coords: &[f64], s: usize, t: &[f64]) -> f64 {
    let n = coords.len() / s;
    let inside = coords.chunks(s).filter(|x| x.iter().zip(t).all(|(a, b)| a < b)).count();
    inside as f64 / n as f64 - t.iter().product::<f64>()
}

/// Exact L2 discrepancy by the pairwise formula.
pub fn l2_exact(points: &PointSet) -> Result<DiscrepancyReport> {
    if points.is_empty() {
        return Err(Error::param("need at least one point"));
    }
    Ok(DiscrepancyReport::new(points, 2.0, l2_squared(points).sqrt(), Method::ExactPairwise, None))
}

/// Exact L2 discrepancy in rational arithmetic, reported as a float.
pub fn l2_exact_rational_report(points: &PointSet) -> Result<DiscrepancyReport> {
    let sq = l2_exact_rational(points)?;
    let value = sq.to_f64().ok_or_else(|| Error::Consistency("rational L2 not representable".into()))?.sqrt();
    Ok(DiscrepancyReport::new(points, 2.0, value, Method::ExactRational, None))
}

/// The first `N` points with `k/N` appended as an extra coordinate.
pub fn append_index_coordinate(prefix: &PointSet, n: usize) -> Result<PointSet> {
    if n == 0 || prefix.len() < n {
        return Err(Error::precondition(format!("need 1 <= N <= {}, got N = {n}", prefix.len())));
    }
    let rows = prefix.points()[..n]
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let mut row = x.to_vec();
            row.push(Coord::rational(k as u128, n as u128)?);
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    PointSet::new(prefix.base(), prefix.dim() + 1, rows)
}

/// `N L2(trimmed) <= sqrt(b) b^m L2(full)` with relative slack `1e-9`.
pub fn lemma6_inequality_check(full: &PointSet, n: usize) -> Result<bool> {
    let trimmed = arbitrary_n_trim(full, n)?;
    let lhs = n as f64 * l2_squared(&trimmed).sqrt();
    let rhs = f64::from(full.base()).sqrt() * full.len() as f64 * l2_squared(full).sqrt();
    Ok(lhs <= rhs * (1.0 + 1e-9))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::{generate_net_points, GeneratingMatrixSet, Provenance};
    use crate::field::{FieldMatrix, PrimeField};

    fn vdc(m: usize) -> PointSet {
        let f = PrimeField::new(2).unwrap();
        let c = GeneratingMatrixSet::new(vec![FieldMatrix::identity(f, m)]).unwrap();
        generate_net_points(&c).unwrap()
    }

    fn origin(s: usize) -> PointSet {
        PointSet::new(2, s, vec![vec![Coord::rational(0, 1).unwrap(); s]]).unwrap()
    }

    #[test]
    fn local_discrepancy_examples() {
        let p = vdc(3);
        assert_eq!(local_discrepancy(&p, &[1.0]).unwrap(), 0.0);
        assert_eq!(local_discrepancy(&p, &[0.0]).unwrap(), 0.0);
        assert_eq!(local_discrepancy(&origin(1), &[0.5]).unwrap(), 0.5);
        assert_eq!(local_discrepancy(&origin(2), &[0.0, 0.7]).unwrap(), 0.0);
        // points on the boundary are excluded: {0, 1/2} at t = 1/2
        assert_eq!(local_discrepancy(&vdc(1), &[0.5]).unwrap(), 0.0);
        assert!(local_discrepancy(&p, &[0.5, 0.5]).is_err());
    }

    #[test]
    fn exact_boundary_for_thirds() {
        let p = PointSet::new(3, 1, vec![vec![Coord::rational(1, 3).unwrap()]]).unwrap();
        let t = 1.0 / 3.0;
        let below_t = BigRational::from_float(t).unwrap() > BigRational::new(1.into(), 3.into());
        let expected = if below_t { 1.0 - t } else { -t };
        assert_eq!(local_discrepancy(&p, &[t]).unwrap(), expected);
    }

    #[test]
    fn l2_reports() {
        let r = l2_exact(&origin(1)).unwrap();
        assert!((r.value - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(r.method, Method::ExactPairwise);
        let r2 = l2_exact(&vdc(1)).unwrap();
        assert!((r2.value - (1.0f64 / 12.0).sqrt()).abs() < 1e-15);
        assert!(r2.roth_ratio.unwrap() >= 1.0);
        assert!(l2_exact(&PointSet::empty(2, 1)).is_err());
        let e = l2_exact_rational_report(&vdc(2)).unwrap();
        assert!((e.value - l2_exact(&vdc(2)).unwrap().value).abs() < 1e-15);
    }

    #[test]
    fn csv_layout() {
        let p = vdc(2).with_provenance(Provenance::new("van-der-corput").with("b", 2).with("m", 2));
        let r = l2_exact(&p).unwrap();
        let row = r.csv_row();
        assert!(row.starts_with("van-der-corput,b=2 m=2,4,1,2,exact-pairwise,"), "{row}");
        assert!(row.ends_with(",1"));
        assert_eq!(DiscrepancyReport::CSV_HEADER.split(',').count(), row.split(',').count());
    }

    #[test]
    fn index_coordinate() {
        let p = vdc(2);
        let h = append_index_coordinate(&p, 4).unwrap();
        assert_eq!(h.dim(), 2);
        let last: Vec<_> = h.points().iter().map(|x| x[1].to_ratio_u128().unwrap()).collect();
        assert_eq!(last, vec![(0, 1), (1, 4), (1, 2), (3, 4)]);
        let first: Vec<_> = h.points().iter().map(|x| x[0].to_ratio_u128().unwrap()).collect();
        assert_eq!(first, vec![(0, 1), (1, 2), (1, 4), (3, 4)]);
        let one = append_index_coordinate(&p, 1).unwrap();
        assert_eq!(one.point(0)[1].to_f64(), 0.0);
        assert!(append_index_coordinate(&p, 5).is_err());
    }

    #[test]
    fn trim_inequality_on_van_der_corput() {
        let full = vdc(2);
        assert!(lemma6_inequality_check(&full, 4).unwrap());
        assert!(lemma6_inequality_check(&full, 3).unwrap());
        assert!(lemma6_inequality_check(&full, 2).is_err());
        let trimmed = arbitrary_n_trim(&full, 3).unwrap();
        let lhs = BigRational::from_integer(9.into()) * l2_exact_rational(&trimmed).unwrap();
        let rhs = BigRational::from_integer(32.into()) * l2_exact_rational(&full).unwrap();
        assert!(lhs <= rhs);
    }
}
