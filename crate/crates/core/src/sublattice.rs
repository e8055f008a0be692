//! Primitive sublattices of an ambient lattice.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Lattice, Signature};
use crate::linalg::{hermite_rows, inverse, kernel, rank, smith, Matrix};
use crate::{Int, IntMatrix, Rational};

/// Saturated sublattice `S` of `L`, with basis rows in coordinates of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveSublattice {
    ambient: Lattice,
    basis: IntMatrix,
}

/// Saturation `(K (x) Q) ∩ L` of the span of `rows`.
pub fn saturation(ambient: &Lattice, rows: &IntMatrix) -> Result<PrimitiveSublattice> {
    let n = ambient.rank();
    if rows.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: rows.cols() });
    }
    if rows.rows() == 0 || rank(rows) == 0 {
        return Ok(PrimitiveSublattice { ambient: ambient.clone(), basis: Matrix::empty(n) });
    }
    let perp = kernel(rows);
    let basis = if perp.rows() == 0 { Matrix::identity(n) } else { kernel(&perp) };
    Ok(PrimitiveSublattice { ambient: ambient.clone(), basis: hermite_rows(&basis) })
}

/// Orthogonal complement of a sublattice (always saturated).
pub fn orthogonal_complement(ambient: &Lattice, rows: &IntMatrix) -> PrimitiveSublattice {
    let n = ambient.rank();
    if rows.rows() == 0 {
        return PrimitiveSublattice { ambient: ambient.clone(), basis: Matrix::identity(n) };
    }
    let bg = rows * ambient.gram();
    PrimitiveSublattice { ambient: ambient.clone(), basis: kernel(&bg) }
}

impl PrimitiveSublattice {
    /// Checked constructor: rows must be independent and span a saturated
    /// sublattice.
    pub fn new(ambient: &Lattice, rows: IntMatrix) -> Result<Self> {
        if rows.cols() != ambient.rank() {
            return Err(Error::DimensionMismatch { expected: ambient.rank(), found: rows.cols() });
        }
        if rank(&rows) != rows.rows() {
            return Err(Error::DependentRows);
        }
        let s = smith(&rows);
        if s.diagonal.iter().any(|d| !d.is_one()) {
            return Err(Error::NotSaturated);
        }
        Ok(PrimitiveSublattice { ambient: ambient.clone(), basis: rows })
    }

    pub fn from_i64(ambient: &Lattice, rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::new(ambient, Matrix::from_rows(rows).map(|&x| Int::from(x)))
    }

    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn gram_matrix(&self) -> IntMatrix {
        self.ambient.gram().congruent(&self.basis)
    }

    /// The sublattice as an abstract lattice; fails if degenerate.
    pub fn lattice(&self) -> Result<Lattice> {
        Lattice::new(self.gram_matrix())
    }

    pub fn signature(&self) -> Result<Signature> {
        Ok(self.lattice()?.signature())
    }

    pub fn complement(&self) -> PrimitiveSublattice {
        orthogonal_complement(&self.ambient, &self.basis)
    }

    /// Coordinates of an ambient vector in this basis, if it lies in `S`.
    pub fn coordinates(&self, v: &[Int]) -> Option<Vec<Int>> {
        let k = self.rank();
        if k == 0 {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        }
        // solve c B = v through the Gram-like system B B^T
        let b = self.basis.map(|x| Rational::from_integer(x.clone()));
        let bbt = &b * &b.transpose();
        let inv = inverse(&bbt)?;
        let vq: Vec<Rational> = v.iter().map(|x| Rational::from_integer(x.clone())).collect();
        let rhs = b.mul_vec(&vq);
        let c = inv.mul_vec(&rhs);
        if c.iter().any(|x| !x.is_integer()) {
            return None;
        }
        let c: Vec<Int> = c.iter().map(|x| x.to_integer()).collect();
        (self.basis.vec_mul(&c) == v).then_some(c)
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Ambient vector from coordinates in this basis.
    pub fn vector(&self, coords: &[Int]) -> Vec<Int> {
        self.basis.vec_mul(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    #[test]
    fn saturation_and_complement_in_uu() {
        let l = Lattice::sum(&[Lattice::u(), Lattice::u()]);
        let rows = Matrix::from_rows(vec![vec![int(2), int(2), int(0), int(0)]]);
        let s = saturation(&l, &rows).unwrap();
        assert_eq!(s.basis().row_vec(0), vec![int(1), int(1), int(0), int(0)]);
        assert!(PrimitiveSublattice::new(&l, rows).is_err());
        let c = s.complement();
        assert_eq!(c.rank(), 3);
        assert_eq!(c.complement().basis(), s.basis());
    }
}
