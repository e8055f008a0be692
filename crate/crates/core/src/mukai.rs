//! Mukai vectors on a K3 surface, order-2 Brauer classes through B-fields,
//! twists and the lattice invariants of moduli of twisted sheaves.

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{is_primitive, Lattice};
use crate::linalg::{kernel, Matrix};
use crate::sublattice::orthogonal_complement;
use crate::{int, Int, IntMatrix};

/// Rank of the K3 lattice `U^3 + E8^2`.
pub const K3_RANK: usize = 22;

/// Mukai vector `(r, H, s)` with `H` in coordinates of [`Lattice::k3`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MukaiVector {
    pub r: Int,
    pub h: Vec<Int>,
    pub s: Int,
}

impl MukaiVector {
    pub fn new(r: Int, h: Vec<Int>, s: Int) -> Result<Self> {
        if h.len() != K3_RANK {
            return Err(Error::DimensionMismatch { expected: K3_RANK, found: h.len() });
        }
        Ok(MukaiVector { r, h, s })
    }

    pub fn from_i64(r: i64, h: &[i64], s: i64) -> Result<Self> {
        Self::new(int(r), h.iter().map(|&x| int(x)).collect(), int(s))
    }

    /// Coordinates in [`Lattice::mukai`]: `H` fills the K3 slots and
    /// `(r, s)` becomes `r e - s f` in the fourth copy of `U`.
    pub fn to_coords(&self) -> Vec<Int> {
        let mut c = vec![Int::zero(); K3_RANK + 2];
        for (i, x) in self.h.iter().enumerate() {
            c[if i < 6 { i } else { i + 2 }] = x.clone();
        }
        c[6] = self.r.clone();
        c[7] = -self.s.clone();
        c
    }

    pub fn from_coords(c: &[Int]) -> Result<Self> {
        if c.len() != K3_RANK + 2 {
            return Err(Error::DimensionMismatch { expected: K3_RANK + 2, found: c.len() });
        }
        let h = (0..K3_RANK).map(|i| c[if i < 6 { i } else { i + 2 }].clone()).collect();
        Ok(MukaiVector { r: c[6].clone(), h, s: -c[7].clone() })
    }

    pub fn is_primitive(&self) -> bool {
        is_primitive(&self.to_coords())
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h: Vec<String> = self.h.iter().map(|x| x.to_string()).collect();
        write!(f, "({}, [{}], {})", self.r, h.join(", "), self.s)
    }
}

/// `(r,H,s).(r',H',s') = H.H' - r s' - r' s`.
pub fn mukai_pairing(v: &MukaiVector, w: &MukaiVector) -> Int {
    let k3 = Lattice::k3();
    k3.pairing(&v.h, &w.h) - &v.r * &w.s - &w.r * &v.s
}

/// Half-integral class `B`, stored as the integral class `2B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BField {
    two_b: Vec<Int>,
}

impl BField {
    pub fn from_doubled(two_b: Vec<Int>) -> Result<Self> {
        if two_b.len() != K3_RANK {
            return Err(Error::DimensionMismatch { expected: K3_RANK, found: two_b.len() });
        }
        Ok(BField { two_b })
    }

    /// `B = x / 2` for an integral class `x`.
    pub fn half(x: &[i64]) -> Result<Self> {
        Self::from_doubled(x.iter().map(|&v| int(v)).collect())
    }

    pub fn zero() -> Self {
        BField { two_b: vec![Int::zero(); K3_RANK] }
    }

    pub fn doubled(&self) -> &[Int] {
        &self.two_b
    }

    /// The Brauer class is trivial iff `B` is integral.
    pub fn is_integral(&self) -> bool {
        self.two_b.iter().all(|x| x.is_even())
    }

    /// Representative with `2B` reduced to `{0,1}` coordinates; it defines
    /// the same Brauer class.
    pub fn normalized(&self) -> Self {
        BField { two_b: self.two_b.iter().map(|x| x.mod_floor(&int(2))).collect() }
    }
}

/// `v_B = (r, H + rB, s + B.H + r B^2 / 2)`.
pub fn twist(v: &MukaiVector, b: &BField) -> Result<MukaiVector> {
    let k3 = Lattice::k3();
    let two = int(2);
    let mut h = Vec::with_capacity(K3_RANK);
    for (x, y) in v.h.iter().zip(&b.two_b) {
        let num = &v.r * y;
        if !num.is_even() {
            return Err(Error::NonIntegralTwist);
        }
        h.push(x + num / &two);
    }
    // 8 (B.H + r B^2 / 2) = 4 (2B).H + r (2B)^2
    let num = int(4) * k3.pairing(&b.two_b, &v.h) + &v.r * k3.square(&b.two_b);
    if !(&num % int(8)).is_zero() {
        return Err(Error::NonIntegralTwist);
    }
    Ok(MukaiVector { r: v.r.clone(), h, s: &v.s + num / int(8) })
}

/// Positivity of a Mukai vector; `effective` decides whether a nonzero `H`
/// with `r = 0` is effective.
pub fn is_positive(v: &MukaiVector, effective: impl Fn(&[Int]) -> bool) -> bool {
    if v.r.is_positive() {
        return true;
    }
    if v.r.is_zero() {
        if v.h.iter().any(|x| !x.is_zero()) {
            return effective(&v.h);
        }
        return v.s.is_positive();
    }
    false
}

/// Picard lattice of a K3 surface with an order-2 Brauer class.
#[derive(Clone, Debug)]
pub struct TwistedSurfaceData {
    /// Basis rows of `Pic` in K3 coordinates.
    pub picard: IntMatrix,
    pub b: BField,
}

/// Sublattice of `Trans` together with its index.
#[derive(Clone, Debug)]
pub struct BrauerKernel {
    pub basis: IntMatrix,
    pub lattice: Lattice,
    pub index: u32,
}

impl TwistedSurfaceData {
    pub fn new(picard: IntMatrix, b: BField) -> Result<Self> {
        if picard.cols() != K3_RANK {
            return Err(Error::DimensionMismatch { expected: K3_RANK, found: picard.cols() });
        }
        Ok(TwistedSurfaceData { picard, b })
    }

    /// Transcendental lattice: complement of `Pic` in the K3 lattice.
    pub fn transcendental(&self) -> IntMatrix {
        orthogonal_complement(&Lattice::k3(), &self.picard).basis().clone()
    }
}

/// Kernel of `alpha = (2B, .) mod 2` on the transcendental lattice.
pub fn brauer_kernel(data: &TwistedSurfaceData) -> Result<BrauerKernel> {
    let k3 = Lattice::k3();
    let trans = data.transcendental();
    let parity: Vec<bool> = trans.row_iter().map(|t| k3.pairing(&data.b.two_b, t).is_odd()).collect();
    let rows: Vec<Vec<Int>> = match parity.iter().position(|&p| p) {
        None => trans.to_rows(),
        Some(i0) => {
            let pivot = trans.row_vec(i0);
            trans
                .row_iter()
                .enumerate()
                .map(|(i, t)| {
                    if i == i0 {
                        pivot.iter().map(|x| x * int(2)).collect()
                    } else if parity[i] {
                        t.iter().zip(&pivot).map(|(a, b)| a + b).collect()
                    } else {
                        t.to_vec()
                    }
                })
                .collect()
        }
    };
    let index = if parity.iter().any(|&p| p) { 2 } else { 1 };
    let basis = Matrix::from_rows(rows);
    let lattice = Lattice::new(k3.gram().congruent(&basis))?;
    Ok(BrauerKernel { basis, lattice, index })
}

/// Invariants of the moduli space of twisted sheaves with vector `v_B`.
#[derive(Clone, Debug)]
pub struct ModuliInvariants {
    pub n: i64,
    /// Basis of `v_B^perp` inside the twisted Picard lattice, in Mukai
    /// coordinates.
    pub picard_basis: IntMatrix,
    pub picard: Lattice,
    pub transcendental: Lattice,
    pub kernel_index: u32,
}

/// Generators of `Pic(S, alpha)`: `Pic(S)`, `(0,0,1)` and `(2, 2B, 0)`.
pub fn twisted_picard_generators(data: &TwistedSurfaceData) -> Result<Vec<MukaiVector>> {
    let zero = vec![Int::zero(); K3_RANK];
    let mut gens = Vec::new();
    for p in data.picard.row_iter() {
        gens.push(MukaiVector::new(Int::zero(), p.to_vec(), Int::zero())?);
    }
    gens.push(MukaiVector::new(Int::zero(), zero, int(1))?);
    gens.push(MukaiVector::new(int(2), data.b.two_b.clone(), Int::zero())?);
    Ok(gens)
}

pub fn moduli_invariants(data: &TwistedSurfaceData, v_b: &MukaiVector) -> Result<ModuliInvariants> {
    if !v_b.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let sq = mukai_pairing(v_b, v_b);
    if sq < int(2) {
        return Err(Error::InvalidParameter(format!("v_B^2 = {sq} must be at least 2")));
    }
    let n: i64 = (sq / int(2) + int(1)).try_into().map_err(|_| Error::Internal("n overflow".into()))?;
    let gens = twisted_picard_generators(data)?;
    let values: Vec<Vec<Int>> = gens.iter().map(|g| vec![mukai_pairing(g, v_b)]).collect();
    // combinations c with sum c_i (g_i, v_B) = 0
    let combos = kernel(&Matrix::from_rows(values).transpose());
    let gen_rows = Matrix::from_rows(gens.iter().map(MukaiVector::to_coords).collect());
    let picard_basis = &combos * &gen_rows;
    let picard = Lattice::new(Lattice::mukai().gram().congruent(&picard_basis))?;
    let k = brauer_kernel(data)?;
    Ok(ModuliInvariants { n, picard_basis, picard, transcendental: k.lattice, kernel_index: k.index })
}

fn unit(i: usize, x: i64) -> Vec<i64> {
    let mut v = vec![0; K3_RANK];
    v[i] = x;
    v
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Primitive polarization of square `2(n-1)` with a Brauer class pairing
/// nontrivially only with a second copy of `U`: `H = e1 + (n-1) f1`,
/// `B = e2 / 2`, `v = (0, H, 0)`.
pub fn polarized_example(n: i64) -> Result<(TwistedSurfaceData, MukaiVector)> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n = {n} must be at least 2")));
    }
    let h = add(&unit(0, 1), &unit(1, n - 1));
    let data = TwistedSurfaceData::new(Matrix::from_rows(vec![h.iter().map(|&x| int(x)).collect()]), BField::half(&unit(2, 1))?)?;
    let v = MukaiVector::from_i64(0, &h, 0)?;
    let vb = twist(&v, &data.b)?;
    Ok((data, vb))
}

/// Degree-2 surface `Pic = Z(e1 + f1)` with `B = f1 / 2` and
/// `v = (0, 2(e1 + f1), 0)`, whose twist `(0, 2(e1 + f1), 1)` is primitive of
/// square 8.
pub fn degree_two_example() -> Result<(TwistedSurfaceData, MukaiVector)> {
    let h = add(&unit(0, 1), &unit(1, 1));
    let data = TwistedSurfaceData::new(Matrix::from_rows(vec![h.iter().map(|&x| int(x)).collect()]), BField::half(&unit(1, 1))?)?;
    let v = MukaiVector::from_i64(0, &h.iter().map(|x| 2 * x).collect::<Vec<_>>(), 0)?;
    let vb = twist(&v, &data.b)?;
    Ok((data, vb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embeddings::GenusTag;
    use crate::finite_form::DEFAULT_GROUP_BOUND;

    fn same_genus(a: &Lattice, b: &Lattice) -> bool {
        GenusTag::of(a).same_genus(&GenusTag::of(b), DEFAULT_GROUP_BOUND).unwrap()
    }

    #[test]
    fn pairing_values() {
        let spherical = MukaiVector::from_i64(1, &[0; 22], 1).unwrap();
        assert_eq!(mukai_pairing(&spherical, &spherical), int(-2));
        let p = MukaiVector::from_i64(0, &[0; 22], 1).unwrap();
        let q = MukaiVector::from_i64(2, &unit(2, 1), 0).unwrap();
        assert_eq!(mukai_pairing(&p, &q), int(-2));
        // coordinates realise the same pairing
        let m = Lattice::mukai();
        assert_eq!(m.pairing(&p.to_coords(), &q.to_coords()), int(-2));
        assert_eq!(MukaiVector::from_coords(&q.to_coords()).unwrap(), q);
    }

    #[test]
    fn twists() {
        let v = MukaiVector::from_i64(2, &[0; 22], 0).unwrap();
        let b = BField::half(&unit(0, 1)).unwrap();
        assert_eq!(twist(&v, &b).unwrap(), MukaiVector::from_i64(2, &unit(0, 1), 0).unwrap());
        assert_eq!(twist(&v, &BField::zero()).unwrap(), v);
        let odd = MukaiVector::from_i64(1, &[0; 22], 0).unwrap();
        assert_eq!(twist(&odd, &b), Err(Error::NonIntegralTwist));
    }

    #[test]
    fn positivity() {
        let ample = |h: &[Int]| Lattice::k3().square(h) > Int::zero();
        assert!(is_positive(&MukaiVector::from_i64(0, &add(&unit(0, 1), &unit(1, 1)), 0).unwrap(), ample));
        assert!(is_positive(&MukaiVector::from_i64(0, &[0; 22], 3).unwrap(), ample));
        assert!(!is_positive(&MukaiVector::from_i64(-1, &[0; 22], 0).unwrap(), ample));
    }

    #[test]
    fn polarized_twist_invariants() {
        for n in 2..=5 {
            let (data, vb) = polarized_example(n).unwrap();
            let inv = moduli_invariants(&data, &vb).unwrap();
            assert_eq!(inv.n, n);
            assert_eq!(inv.picard.gram(), &Matrix::from_rows(vec![vec![int(0), int(-2)], vec![int(-2), int(0)]]));
            let s = Lattice::sum(&[
                Lattice::u(),
                Lattice::scaled_u(2),
                Lattice::e8(),
                Lattice::e8(),
                Lattice::diagonal(-2 * (n - 1)).unwrap(),
            ]);
            assert!(same_genus(&inv.transcendental, &s));
            assert_eq!(inv.kernel_index, 2);
        }
    }

    #[test]
    fn degree_two_twist_invariants() {
        let (data, vb) = degree_two_example().unwrap();
        assert_eq!(vb, MukaiVector::from_i64(0, &add(&unit(0, 2), &unit(1, 2)), 1).unwrap());
        let inv = moduli_invariants(&data, &vb).unwrap();
        assert_eq!(inv.n, 5);
        assert!(same_genus(&inv.picard, &Lattice::scaled_u(2)));
        let s = Lattice::sum(&[Lattice::u(), Lattice::u(), Lattice::e8(), Lattice::e8(), Lattice::diagonal(-8).unwrap()]);
        assert!(same_genus(&inv.transcendental, &s));
    }

    #[test]
    fn trivial_class_keeps_everything() {
        let data = TwistedSurfaceData::new(Matrix::from_rows(vec![vec![int(1), int(1)].into_iter().chain((2..22).map(|_| int(0))).collect()]), BField::half(&unit(2, 2)).unwrap()).unwrap();
        let k = brauer_kernel(&data).unwrap();
        assert_eq!(k.index, 1);
        assert_eq!(k.lattice.rank(), 21);
    }
}
