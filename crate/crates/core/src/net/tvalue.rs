use super::matrices::GeneratingMatrixSet;
use super::points::PointSet;
use crate::error::{Error, Result};
use crate::field::FieldMatrix;

/// Calls `f` on every `d` with `d_1 + ... + d_s = total` and `d_j <= max_part`;
/// stops early and returns `false` as soon as `f` does.
pub(crate) fn for_each_composition(
    total: usize,
    parts: usize,
    max_part: usize,
    f: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    fn rec(
        d: &mut Vec<usize>,
        left: usize,
        parts: usize,
        max_part: usize,
        f: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        if d.len() + 1 == parts {
            if left > max_part {
                return true;
            }
            d.push(left);
            let go = f(d);
            d.pop();
            return go;
        }
        for x in 0..=left.min(max_part) {
            d.push(x);
            let go = rec(d, left - x, parts, max_part, f);
            d.pop();
            if !go {
                return false;
            }
        }
        true
    }
    if parts == 0 {
        return total == 0 && f(&[]);
    }
    rec(&mut Vec::with_capacity(parts), total, parts, max_part, f)
}

fn rows_independent(c: &GeneratingMatrixSet, d: &[usize]) -> bool {
    let total: usize = d.iter().sum();
    let mut pooled = FieldMatrix::zeros(c.field(), total, c.m());
    let mut r = 0;
    for (cj, &dj) in c.matrices().iter().zip(d) {
        for row in 0..dj {
            for col in 0..c.m() {
                pooled.set(r, col, cj.get(row, col));
            }
            r += 1;
        }
    }
    pooled.rank() == total
}

/// Whether the first `d_j` rows of every `C_j`, pooled, are linearly
/// independent for every composition of `m - t`.
pub fn is_tms_net(c: &GeneratingMatrixSet, t: usize) -> bool {
    let m = c.m();
    if t >= m {
        return true;
    }
    for_each_composition(m - t, c.dim(), c.precision(), &mut |d| rows_independent(c, d))
}

/// Smallest `t` for which the net generated by `c` is a `(t, m, s)`-net.
pub fn compute_t_value(c: &GeneratingMatrixSet) -> usize {
    (0..=c.m()).find(|&t| is_tms_net(c, t)).unwrap_or(c.m())
}

/// Direct count over every elementary interval of volume `b^(t-m)`.
pub fn geometric_net_check(points: &PointSet, t: usize) -> Result<bool> {
    let b = points.base();
    let n = points.len() as u64;
    let mut m = 0usize;
    let mut size = 1u64;
    while size < n {
        size *= u64::from(b);
        m += 1;
    }
    if size != n || n == 0 {
        return Err(Error::domain(format!("{n} points is not a power of the base {b}")));
    }
    if t >= m {
        return Ok(true);
    }
    if !points.is_digital() {
        return Err(Error::domain("geometric net check needs b-adic coordinates"));
    }
    let cells = (n / u64::from(b).pow(t as u32)) as usize;
    let want = u64::from(b).pow(t as u32);
    let mut counts = vec![0u64; cells];
    let ok = for_each_composition(m - t, points.dim(), m - t, &mut |d| {
        counts.iter_mut().for_each(|c| *c = 0);
        for x in points.points() {
            let mut idx = 0usize;
            for (coord, &dj) in x.iter().zip(d) {
                let digits = coord.as_digits().expect("checked digital");
                for i in 1..=dj {
                    idx = idx * b as usize + digits.digit(i) as usize;
                }
            }
            counts[idx] += 1;
        }
        counts.iter().all(|&c| c == want)
    });
    Ok(ok)
}
