use super::matrices::GeneratingMatrixSet;
use crate::error::{Error, Result};

/// The dual space `{k : C_1^T k_1 + ... + C_s^T k_s = 0}` restricted to
/// coordinates below `b^p`, enumerated by spanning the kernel of the
/// stacked system `[C_1^T | ... | C_s^T]`.
#[derive(Debug, Clone)]
pub struct DualSpace {
    matrices: GeneratingMatrixSet,
    basis: Vec<Vec<u8>>,
    size: u64,
}

impl DualSpace {
    /// Refuses kernels with more than `cap` elements.
    pub fn new(matrices: &GeneratingMatrixSet, cap: u64) -> Result<Self> {
        let b = u64::from(matrices.base());
        let p = matrices.precision();
        if u64::from(matrices.base()).checked_pow(p as u32).is_none() {
            return Err(Error::capacity(format!("dual coordinates below {b}^{p} do not fit in u64")));
        }
        let basis = matrices.stacked_transpose().kernel_basis();
        let size = b
            .checked_pow(basis.len() as u32)
            .filter(|&n| n <= cap)
            .ok_or_else(|| {
                Error::capacity(format!(
                    "dual space has {b}^{} elements, enumeration cap is {cap}",
                    basis.len()
                ))
            })?;
        Ok(Self { matrices: matrices.clone(), basis, size })
    }

    pub fn matrices(&self) -> &GeneratingMatrixSet {
        &self.matrices
    }

    pub fn kernel_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn kernel_basis(&self) -> &[Vec<u8>] {
        &self.basis
    }

    /// Number of elements, including zero.
    pub fn len(&self) -> u64 {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, k: &[u64]) -> bool {
        self.matrices.is_dual(k)
    }

    /// Visits every element as its stacked digit vector (`s` blocks of `p`
    /// digits, least significant first). Successive elements differ by one
    /// basis vector, as in a mixed-radix Gray walk.
    pub fn for_each_digits(&self, mut f: impl FnMut(&[u8])) {
        let field = self.matrices.field();
        let b = field.base();
        let width = self.matrices.precision() * self.matrices.dim();
        let mut current = vec![0u8; width];
        let mut counter = vec![0u32; self.basis.len()];
        f(&current);
        for _ in 1..self.size {
            let mut i = 0;
            loop {
                for (c, &v) in current.iter_mut().zip(&self.basis[i]) {
                    *c = field.add(u32::from(*c), u32::from(v)) as u8;
                }
                counter[i] += 1;
                if counter[i] < b {
                    break;
                }
                // b additions of the same vector wrapped back to zero
                counter[i] = 0;
                i += 1;
            }
            f(&current);
        }
    }

    /// Visits every element as an integer vector `(k_1, ..., k_s)`.
    pub fn for_each(&self, mut f: impl FnMut(&[u64])) {
        let b = u64::from(self.matrices.base());
        let p = self.matrices.precision();
        let mut k = vec![0u64; self.matrices.dim()];
        self.for_each_digits(|digits| {
            for (kj, block) in k.iter_mut().zip(digits.chunks(p)) {
                *kj = block.iter().rev().fold(0, |acc, &d| acc * b + u64::from(d));
            }
            f(&k);
        });
    }

    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = Vec::with_capacity(self.size as usize);
        self.for_each(|k| out.push(k.to_vec()));
        out
    }
}

/// See [`DualSpace::new`].
pub fn dual_space(matrices: &GeneratingMatrixSet, cap: u64) -> Result<DualSpace> {
    DualSpace::new(matrices, cap)
}
