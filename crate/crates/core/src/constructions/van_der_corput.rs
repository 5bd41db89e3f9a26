use crate::error::Result;
use crate::field::{FieldMatrix, PrimeField};
use crate::net::{generate_net_points, GeneratingMatrixSet, PointSet, Provenance, SequenceMatrices};

/// Radical-inverse sequence in base `b`: identity generating matrix.
#[derive(Debug, Clone, Copy)]
pub struct VanDerCorput {
    field: PrimeField,
}

impl VanDerCorput {
    pub fn new(b: u32) -> Result<Self> {
        Ok(Self { field: PrimeField::new(b)? })
    }
}

impl SequenceMatrices for VanDerCorput {
    fn field(&self) -> PrimeField {
        self.field
    }

    fn dim(&self) -> usize {
        1
    }

    fn entry(&self, _j: usize, k: usize, l: usize) -> u32 {
        u32::from(k == l)
    }

    fn column_height(&self, l: usize) -> usize {
        l + 1
    }
}

/// The first `b^m` points of the van der Corput sequence.
pub fn van_der_corput(b: u32, m: usize) -> Result<PointSet> {
    let field = PrimeField::new(b)?;
    let c = GeneratingMatrixSet::new(vec![FieldMatrix::identity(field, m)])?;
    Ok(generate_net_points(&c)?.with_provenance(Provenance::new("van-der-corput").with("b", b).with("m", m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::generate_sequence_points;

    #[test]
    fn radical_inverse() {
        let p = van_der_corput(3, 2).unwrap();
        let xs: Vec<_> = p.points().iter().map(|x| x[0].to_ratio_u128().unwrap()).collect();
        assert_eq!(xs[..4], [(0, 1), (1, 3), (2, 3), (1, 9)]);
        let seq = generate_sequence_points(&VanDerCorput::new(3).unwrap(), 0, 9, 2).unwrap();
        assert_eq!(seq.points(), p.points());
        assert!(van_der_corput(4, 1).is_err());
    }
}
