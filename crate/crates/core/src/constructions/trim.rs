use crate::error::{Error, Result};
use crate::net::{Coord, PointSet, Provenance};

/// `floor(x * b^m)` for an exact coordinate.
fn cell_index(c: &Coord, b: u32, m: usize) -> Result<u64> {
    if let Coord::Digits(d) = c {
        return Ok((1..=m).fold(0u64, |acc, i| acc * u64::from(b) + u64::from(d.digit(i))));
    }
    let (num, den) = c.to_ratio_u128().expect("rational coordinate");
    let scale = u128::from(b)
        .checked_pow(m as u32)
        .and_then(|s| s.checked_mul(num))
        .ok_or_else(|| Error::capacity("coordinate scaling overflows u128"))?;
    Ok((scale / den) as u64)
}

/// Whether each interval `[r b^-m, (r+1) b^-m)` holds exactly one first
/// coordinate, i.e. `|{x_1 < r b^-m}| = r` for all `r < b^m`.
pub fn first_coordinate_is_zero_m_one_net(points: &PointSet, m: usize) -> Result<bool> {
    let b = points.base();
    let n = u64::from(b).pow(m as u32);
    if points.len() as u64 != n {
        return Ok(false);
    }
    let mut seen = vec![false; n as usize];
    for x in points.points() {
        let idx = cell_index(&x[0], b, m)? as usize;
        if seen[idx] {
            return Ok(false);
        }
        seen[idx] = true;
    }
    Ok(true)
}

/// Keeps the points with `x_1 < N b^-m` and stretches their first
/// coordinate by `b^m / N`.
pub fn arbitrary_n_trim(points: &PointSet, n: usize) -> Result<PointSet> {
    let b = points.base();
    let full = points.len() as u64;
    let mut m = 0usize;
    let mut size = 1u64;
    while size < full {
        size *= u64::from(b);
        m += 1;
    }
    if size != full {
        return Err(Error::precondition(format!("{full} points is not a power of {b}")));
    }
    let lower = if m == 0 { 0 } else { size / u64::from(b) };
    if !(n as u64 > lower && n as u64 <= size) {
        return Err(Error::precondition(format!("need {lower} < N <= {size}, got N = {n}")));
    }
    if !first_coordinate_is_zero_m_one_net(points, m)? {
        return Err(Error::precondition("projection onto the first coordinate is not a (0,m,1)-net"));
    }
    let provenance = points.provenance().map(|p| {
        let mut p = p.clone();
        p.params.push(("trim".into(), n.to_string()));
        p
    });
    if n as u64 == size {
        let mut out = points.clone();
        if let Some(p) = provenance {
            out = out.with_provenance(p);
        }
        return Ok(out);
    }
    let scale = u128::from(size);
    let mut kept = Vec::with_capacity(n);
    for x in points.points() {
        if cell_index(&x[0], b, m)? >= n as u64 {
            continue;
        }
        let (num, den) = x[0]
            .to_ratio_u128()
            .ok_or_else(|| Error::capacity("coordinate does not fit in u128"))?;
        let g = num_integer::gcd(scale, n as u128);
        let (sc, nn) = (scale / g, n as u128 / g);
        let g2 = num_integer::gcd(num, nn);
        let g3 = num_integer::gcd(sc, den);
        let new_num = (num / g2)
            .checked_mul(sc / g3)
            .ok_or_else(|| Error::capacity("rescaled coordinate overflows u128"))?;
        let new_den = (den / g3)
            .checked_mul(nn / g2)
            .ok_or_else(|| Error::capacity("rescaled coordinate overflows u128"))?;
        let mut row = x.clone();
        row[0] = Coord::rational(new_num, new_den)?;
        kept.push(row);
    }
    if kept.len() != n {
        return Err(Error::Consistency(format!("trim kept {} points, expected {n}", kept.len())));
    }
    let mut out = PointSet::new(b, points.dim(), kept)?;
    out = out.with_provenance(provenance.unwrap_or_else(|| Provenance::new("trim").with("N", n)));
    Ok(out)
}
