use crate::error::{Error, Result};
use crate::field::{irreducible_polys_f2, BinaryPoly, FieldMatrix, PrimeField};
use crate::net::{GeneratingMatrixSet, SequenceMatrices};

/// Polynomials `p_1 = x, p_2, ..., p_s` over F_2 with nondecreasing degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiedParams {
    polys: Vec<BinaryPoly>,
}

impl NiedParams {
    /// `x` followed by the first `s - 1` irreducibles in the standard order.
    pub fn new(s: usize) -> Result<Self> {
        if s == 0 {
            return Err(Error::param("dimension must be positive"));
        }
        Ok(Self { polys: irreducible_polys_f2(s) })
    }

    pub fn from_polys(polys: Vec<BinaryPoly>) -> Result<Self> {
        if polys.first() != Some(&BinaryPoly::monomial(1)) {
            return Err(Error::param("the first polynomial must be x"));
        }
        let degs: Vec<usize> = polys.iter().map(|p| p.degree().unwrap_or(0)).collect();
        if degs.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::param("polynomial degrees must be nondecreasing"));
        }
        for p in &polys[1..] {
            let d = p.degree().unwrap_or(0);
            let reducible = d == 0
                || (d > 1 && p.has_root_in_f2())
                || (2..(1u64 << d.min(20)))
                    .map(BinaryPoly::from_bits)
                    .filter(|q| q.degree().is_some_and(|qd| qd >= 1 && 2 * qd <= d))
                    .any(|q| p.rem(&q).is_zero());
            if reducible {
                return Err(Error::param(format!("{p} is not irreducible")));
            }
        }
        Ok(Self { polys })
    }

    pub fn s(&self) -> usize {
        self.polys.len()
    }

    pub fn polys(&self) -> &[BinaryPoly] {
        &self.polys
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.polys.iter().map(|p| p.degree().unwrap_or(0)).collect()
    }

    /// Row `k0` (0-based) of matrix `j` (0-based), columns `0..len`.
    fn row(&self, j: usize, k0: usize, len: usize) -> Vec<u8> {
        let p = &self.polys[j];
        let e = p.degree().expect("nonzero polynomial");
        let (i, z) = (k0 / e + 1, k0 % e);
        p.pow(i).laurent_coefficients(&BinaryPoly::monomial(e - z - 1), len)
    }
}

/// `c_{j,k,l}` with 1-based `j`, `k`, `l`: the coefficient of `x^-l` in the
/// Laurent expansion of `x^(e_j - z - 1) / p_j(x)^i`, where
/// `k - 1 = (i - 1) e_j + z`.
pub fn niederreiter_matrix_entries(params: &NiedParams, j: usize, k: usize, l: usize) -> u32 {
    assert!(j >= 1 && k >= 1 && l >= 1, "indices are 1-based");
    if k > l {
        return 0;
    }
    u32::from(params.row(j - 1, k - 1, l)[l - 1])
}

/// `sum_j (e_j - 1)`.
pub fn niederreiter_t_bound(params: &NiedParams) -> usize {
    params.degrees().iter().map(|e| e - 1).sum()
}

/// Generalized Niederreiter sequence over F_2.
#[derive(Debug, Clone)]
pub struct Niederreiter {
    params: NiedParams,
}

impl Niederreiter {
    pub fn new(params: NiedParams) -> Self {
        Self { params }
    }

    pub fn with_dim(s: usize) -> Result<Self> {
        Ok(Self::new(NiedParams::new(s)?))
    }

    pub fn params(&self) -> &NiedParams {
        &self.params
    }
}

impl SequenceMatrices for Niederreiter {
    fn field(&self) -> PrimeField {
        PrimeField::new(2).expect("2 is prime")
    }

    fn dim(&self) -> usize {
        self.params.s()
    }

    fn entry(&self, j: usize, k: usize, l: usize) -> u32 {
        niederreiter_matrix_entries(&self.params, j + 1, k + 1, l + 1)
    }

    fn column_height(&self, l: usize) -> usize {
        l + 1
    }

    fn block(&self, j: usize, rows: usize, cols: usize) -> FieldMatrix {
        let mut out = FieldMatrix::zeros(self.field(), rows, cols);
        for k in 0..rows.min(cols) {
            for (l, &v) in self.params.row(j, k, cols).iter().enumerate() {
                out.set(k, l, u32::from(v));
            }
        }
        out
    }
}

/// Upper-left `m x m` blocks: the net of the first `2^m` sequence points.
pub fn niederreiter_net_matrices(params: &NiedParams, m: usize) -> GeneratingMatrixSet {
    let seq = Niederreiter::new(params.clone());
    let blocks = (0..params.s()).map(|j| seq.block(j, m, m)).collect();
    GeneratingMatrixSet::new(blocks).expect("square blocks")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_matrix_is_identity() {
        let p = NiedParams::new(3).unwrap();
        for k in 1..=8 {
            for l in 1..=8 {
                assert_eq!(niederreiter_matrix_entries(&p, 1, k, l), u32::from(k == l));
            }
        }
    }

    #[test]
    fn second_matrix_first_row_all_ones() {
        let p = NiedParams::new(2).unwrap();
        for l in 1..=20 {
            assert_eq!(niederreiter_matrix_entries(&p, 2, 1, l), 1);
        }
    }

    #[test]
    fn second_matrix_is_pascal_mod_two() {
        // 1/(1+x)^i expands to binomial coefficients mod 2
        let p = NiedParams::new(2).unwrap();
        let f = PrimeField::new(2).unwrap();
        for k in 1..=12u64 {
            for l in 1..=12u64 {
                let want = crate::field::binomial_mod_p(l - 1, k - 1, f).value();
                assert_eq!(niederreiter_matrix_entries(&p, 2, k as usize, l as usize), want);
            }
        }
    }

    #[test]
    fn upper_triangular() {
        let p = NiedParams::new(6).unwrap();
        for j in 1..=6 {
            for k in 1..=10 {
                for l in 1..k {
                    assert_eq!(niederreiter_matrix_entries(&p, j, k, l), 0);
                }
            }
        }
    }

    #[test]
    fn t_bounds() {
        assert_eq!(niederreiter_t_bound(&NiedParams::new(1).unwrap()), 0);
        assert_eq!(niederreiter_t_bound(&NiedParams::new(2).unwrap()), 0);
        assert_eq!(niederreiter_t_bound(&NiedParams::new(5).unwrap()), 5);
    }

    #[test]
    fn block_matches_entries() {
        let n = Niederreiter::with_dim(4).unwrap();
        for j in 0..4 {
            let b = n.block(j, 7, 7);
            for k in 0..7 {
                for l in 0..7 {
                    assert_eq!(b.get(k, l), n.entry(j, k, l));
                }
            }
        }
    }

    #[test]
    fn explicit_polys_validated() {
        let x = BinaryPoly::monomial(1);
        assert!(NiedParams::from_polys(vec![x.clone(), BinaryPoly::from_bits(0b11)]).is_ok());
        assert!(NiedParams::from_polys(vec![x.clone(), BinaryPoly::from_bits(0b101)]).is_err());
        assert!(NiedParams::from_polys(vec![BinaryPoly::from_bits(0b11)]).is_err());
        assert!(NiedParams::from_polys(vec![x, BinaryPoly::from_bits(0b111), BinaryPoly::from_bits(0b11)]).is_err());
    }
}
