//! Lattice involutions `id_T + (-id_S)`: construction, discriminant action,
//! 2-elementary dichotomy and discriminant-group cases.

use std::fmt;

use num_traits::One;

use crate::embeddings::GenusTag;
use crate::error::{Error, Result};
use crate::finite_form::{Elem, FiniteQuadraticForm};
use crate::lattice::Lattice;
use crate::linalg::{inverse, kernel, smith, Matrix};
use crate::sublattice::PrimitiveSublattice;
use crate::{IntMatrix, Rational};

/// Action of an involution on the discriminant group of its lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiscriminantAction {
    Plus,
    Minus,
}

impl DiscriminantAction {
    pub fn sign(self) -> i64 {
        match self {
            DiscriminantAction::Plus => 1,
            DiscriminantAction::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            DiscriminantAction::Plus => DiscriminantAction::Minus,
            DiscriminantAction::Minus => DiscriminantAction::Plus,
        }
    }
}

impl fmt::Display for DiscriminantAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiscriminantAction::Plus => "+1",
            DiscriminantAction::Minus => "-1",
        })
    }
}

/// Isometric involution of a lattice with its eigenlattices.
#[derive(Clone, Debug)]
pub struct LatticeInvolution {
    ambient: Lattice,
    matrix: IntMatrix,
    invariant: PrimitiveSublattice,
    coinvariant: PrimitiveSublattice,
    action: DiscriminantAction,
    /// `+1` and `-1` coincide on the discriminant group (exponent at most 2).
    action_ambiguous: bool,
    glue_exponent: u32,
}

fn log4(x: u64) -> Option<u32> {
    let mut k = 0;
    let mut v = 1u64;
    while v < x {
        v *= 4;
        k += 1;
    }
    (v == x).then_some(k)
}

impl LatticeInvolution {
    /// Validate `g` (acting on column coordinate vectors) and derive its data.
    pub fn from_matrix(ambient: &Lattice, g: IntMatrix) -> Result<Self> {
        let n = ambient.rank();
        if g.rows() != n || g.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: g.rows() });
        }
        let id = Matrix::identity(n);
        if &g * &g != id {
            return Err(Error::NotInvolution("matrix does not square to the identity".into()));
        }
        if ambient.gram().congruent(&g.transpose()) != *ambient.gram() {
            return Err(Error::NotInvolution("matrix does not preserve the form".into()));
        }
        let minus = |sign: i64| {
            let mut m = g.clone();
            for i in 0..n {
                m[(i, i)] -= crate::int(sign);
            }
            m
        };
        let invariant = PrimitiveSublattice::new(ambient, kernel(&minus(1)))?;
        let coinvariant = PrimitiveSublattice::new(ambient, kernel(&minus(-1)))?;
        let disc = ambient.discriminant();
        let form = &disc.form;
        let gq = g.map(|x| Rational::from_integer(x.clone()));
        let mut plus = true;
        let mut neg = true;
        for i in 0..form.ngens() {
            let e = form.generator(i);
            let image = disc.coordinates(&gq.mul_vec(&disc.lift(&e)))?;
            plus &= image == e;
            neg &= image == form.neg(&e);
        }
        let action = match (plus, neg) {
            (true, _) => DiscriminantAction::Plus,
            (false, true) => DiscriminantAction::Minus,
            _ => return Err(Error::ActionNotPlusMinus),
        };
        let at = invariant.lattice()?.discriminant_group().order();
        let as_ = coinvariant.lattice()?.discriminant_group().order();
        let glue_exponent = log4(at * as_ / form.order())
            .ok_or_else(|| Error::Internal("glue index is not a power of two".into()))?;
        Ok(LatticeInvolution {
            ambient: ambient.clone(),
            matrix: g,
            invariant,
            coinvariant,
            action,
            action_ambiguous: plus && neg,
            glue_exponent,
        })
    }

    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn invariant(&self) -> &PrimitiveSublattice {
        &self.invariant
    }

    pub fn coinvariant(&self) -> &PrimitiveSublattice {
        &self.coinvariant
    }

    pub fn discriminant_action(&self) -> DiscriminantAction {
        self.action
    }

    pub fn action_ambiguous(&self) -> bool {
        self.action_ambiguous
    }

    /// `a` with `[L : T + S] = 2^a`.
    pub fn glue_exponent(&self) -> u32 {
        self.glue_exponent
    }

    /// The involution `-g`.
    pub fn negated(&self) -> Result<Self> {
        Self::from_matrix(&self.ambient, self.matrix.scale(&crate::int(-1)))
    }
}

/// Unique integral extension of `id_{S^perp} + (-id_S)`, returned together
/// with its negative.
pub fn extend_reflection(ambient: &Lattice, s: &PrimitiveSublattice) -> Result<(LatticeInvolution, LatticeInvolution)> {
    if s.ambient() != ambient {
        return Err(Error::InvalidParameter("sublattice lives in a different ambient lattice".into()));
    }
    let t = s.complement();
    let n = ambient.rank();
    if t.rank() + s.rank() != n {
        return Err(Error::Degenerate);
    }
    // columns of c: basis of T then basis of S
    let rows = t.basis().vstack(s.basis());
    let c = rows.transpose().map(|x| Rational::from_integer(x.clone()));
    let cinv = inverse(&c).ok_or(Error::Degenerate)?;
    let signs: Vec<Rational> = (0..n)
        .map(|i| if i < t.rank() { Rational::one() } else { -Rational::one() })
        .collect();
    let d = Matrix::diagonal(&signs);
    let g = &(&c * &d) * &cinv;
    if g.row_iter().flatten().any(|x| !x.is_integer()) {
        return Err(Error::ExtensionObstruction);
    }
    let g = g.map(|x| x.to_integer());
    let rho = LatticeInvolution::from_matrix(ambient, g)?;
    let minus = rho.negated()?;
    Ok((rho, minus))
}

/// Side of an involution whose eigenlattice is 2-elementary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Invariant,
    Coinvariant,
}

/// The 2-elementary side predicted by the discriminant action, verified on
/// the actual invariant factors. When `+1` and `-1` coincide both sides are
/// tried, coinvariant first.
pub fn two_elementary_side(inv: &LatticeInvolution) -> Result<Side> {
    let t2 = inv.invariant().lattice()?.discriminant_group().is_2_elementary();
    let s2 = inv.coinvariant().lattice()?.discriminant_group().is_2_elementary();
    let preferred = match inv.discriminant_action() {
        DiscriminantAction::Plus => Side::Coinvariant,
        DiscriminantAction::Minus => Side::Invariant,
    };
    let ok = |side: Side| match side {
        Side::Invariant => t2,
        Side::Coinvariant => s2,
    };
    if ok(preferred) {
        return Ok(preferred);
    }
    if inv.action_ambiguous() {
        let other = match preferred {
            Side::Invariant => Side::Coinvariant,
            Side::Coinvariant => Side::Invariant,
        };
        if ok(other) {
            return Ok(other);
        }
    }
    Err(Error::NeitherTwoElementary)
}

/// Case label of the discriminant-group classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseLabel {
    I,
    II,
    III,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseLabel::I => "i",
            CaseLabel::II => "ii",
            CaseLabel::III => "iii",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DiscriminantCase {
    pub label: CaseLabel,
    pub n: i64,
    /// `2(n-1) = 2^l m` with `m` odd.
    pub l: u32,
    pub m: i64,
    pub a: u32,
    /// True when the non-2-elementary group was supplied as `A_S`.
    pub swapped: bool,
}

fn abelian_invariants(parts: &[i64]) -> Vec<i64> {
    let s = smith(&Matrix::diagonal(parts));
    let mut d: Vec<i64> = s.diagonal.into_iter().filter(|&x| x > 1).collect();
    d.sort();
    d
}

/// Match `(A_T, A_S)` against the three possible group structures.
///
/// Overlapping cases (only possible for `n = 2`) resolve in the order
/// (iii), (i), (ii).
pub fn classify_discriminant_case(n: i64, a_t: &FiniteQuadraticForm, a_s: &FiniteQuadraticForm) -> Result<DiscriminantCase> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n = {n} must be at least 2")));
    }
    let d = 2 * (n - 1);
    let l = d.trailing_zeros();
    let m = d >> l;
    let prod = a_t.order() * a_s.order();
    if prod % d as u64 != 0 {
        return Err(Error::NoCaseMatch(format!("|A_T||A_S| = {prod} is not a multiple of {d}")));
    }
    let a = log4(prod / d as u64)
        .ok_or_else(|| Error::NoCaseMatch(format!("|A_T||A_S| / {d} is not a power of 4")))?;
    let gt = a_t.invariant_factors();
    let gs = a_s.invariant_factors();
    let twos = |k: u32| vec![2i64; k as usize];
    let with = |k: u32, extra: i64| {
        let mut v = twos(k);
        v.push(extra);
        abelian_invariants(&v)
    };
    let matches = |x: &[i64], y: &[i64]| -> Option<bool> {
        if gt == x && gs == y {
            Some(false)
        } else if gt == y && gs == x {
            Some(true)
        } else {
            None
        }
    };
    let mut candidates: Vec<(CaseLabel, Vec<i64>, Vec<i64>)> = Vec::new();
    if l == 1 && a == 0 {
        candidates.push((CaseLabel::III, abelian_invariants(&[m]), abelian_invariants(&[2])));
    }
    candidates.push((CaseLabel::I, with(a, d), abelian_invariants(&twos(a))));
    if a >= 1 {
        candidates.push((CaseLabel::II, with(a - 1, d), abelian_invariants(&twos(a + 1))));
    }
    for (label, x, y) in candidates {
        if let Some(swapped) = matches(&x, &y) {
            return Ok(DiscriminantCase { label, n, l, m, a, swapped });
        }
    }
    Err(Error::NoCaseMatch(format!("A_T = {gt:?}, A_S = {gs:?}, a = {a}")))
}

/// `S1` specializes into `S2`: the row span of `S1` is contained in `S2`.
pub fn is_specialization(s1: &PrimitiveSublattice, s2: &PrimitiveSublattice) -> Result<bool> {
    if s1.ambient() != s2.ambient() {
        return Err(Error::InvalidParameter("sublattices live in different ambient lattices".into()));
    }
    Ok(s1.basis().row_iter().all(|r| s2.contains(r)))
}

/// Dimension `21 - rk T` of the family of `(rho, T)`-polarized manifolds.
pub fn family_dimension(t: &PrimitiveSublattice) -> Result<usize> {
    let sig = t.signature()?;
    if sig.positive != 1 {
        return Err(Error::NotHyperbolic);
    }
    if t.rank() > 20 {
        return Err(Error::InvalidParameter("rank exceeds 20".into()));
    }
    Ok(21 - t.rank())
}

/// Genus tags of the eigenlattices.
pub fn eigen_tags(inv: &LatticeInvolution) -> Result<(GenusTag, GenusTag)> {
    Ok((GenusTag::of(&inv.invariant().lattice()?), GenusTag::of(&inv.coinvariant().lattice()?)))
}

/// Apply an involution matrix to a group element of `A_L`, for diagnostics.
pub fn act_on_discriminant(inv: &LatticeInvolution, x: &Elem) -> Result<Elem> {
    let disc = inv.ambient().discriminant();
    let gq = inv.matrix().map(|v| Rational::from_integer(v.clone()));
    disc.coordinates(&gq.mul_vec(&disc.lift(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_form::Q64;
    use crate::int;
    use crate::lattice::overlattice_from_glue;

    #[test]
    fn swap_on_u() {
        let u = Lattice::u();
        let s = PrimitiveSublattice::from_i64(&u, vec![vec![1, -1]]).unwrap();
        let (rho, minus) = extend_reflection(&u, &s).unwrap();
        assert_eq!(rho.matrix(), &Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]));
        assert_eq!(rho.invariant().basis().row_vec(0), vec![int(1), int(1)]);
        assert_eq!(rho.discriminant_action(), DiscriminantAction::Plus);
        assert_eq!(minus.invariant().basis(), s.basis());
    }

    #[test]
    fn l3_delta_reflection_acts_by_minus() {
        let l = Lattice::k3n(3).unwrap();
        let mut row = vec![0; 23];
        row[22] = 1;
        let s = PrimitiveSublattice::from_i64(&l, vec![row]).unwrap();
        let (rho, minus) = extend_reflection(&l, &s).unwrap();
        assert_eq!(rho.discriminant_action(), DiscriminantAction::Minus);
        assert_eq!(minus.discriminant_action(), DiscriminantAction::Plus);
        assert_eq!(rho.glue_exponent(), 0);
    }

    #[test]
    fn epw_toy_extension_is_integral() {
        let t = Lattice::diagonal(4).unwrap();
        let s = Lattice::sum(&[Lattice::diagonal(-2).unwrap(), Lattice::diagonal(-2).unwrap()]);
        let (l, basis) = overlattice_from_glue(&t, &s, &[vec![2, 1, 1]]).unwrap();
        // coordinates of s1, s2 in the overlattice basis
        let binv = inverse(&basis).unwrap();
        let coords = |v: Vec<i64>| -> Vec<crate::Int> {
            let q: Vec<Rational> = v.into_iter().map(|x| Rational::from_integer(int(x))).collect();
            binv.transpose().mul_vec(&q).into_iter().map(|x| x.to_integer()).collect()
        };
        let rows = Matrix::from_rows(vec![coords(vec![0, 1, 0]), coords(vec![0, 0, 1])]);
        let sub = crate::sublattice::saturation(&l, &rows).unwrap();
        let (rho, _) = extend_reflection(&l, &sub).unwrap();
        assert_eq!(rho.glue_exponent(), 1);
        assert_eq!(rho.invariant().gram_matrix(), Matrix::from_rows(vec![vec![int(4)]]));
    }

    #[test]
    fn discriminant_cases() {
        let z4 = FiniteQuadraticForm::cyclic(4, Q64::new(1, 4)).unwrap();
        let h = FiniteQuadraticForm::cyclic(2, Q64::new(3, 2)).unwrap();
        let z22 = h.direct_sum(&h);
        let c = classify_discriminant_case(3, &z4, &z22).unwrap();
        assert_eq!((c.label, c.a, c.swapped), (CaseLabel::II, 1, false));
        let c = classify_discriminant_case(3, &z22, &z4).unwrap();
        assert_eq!((c.label, c.swapped), (CaseLabel::II, true));
        let c = classify_discriminant_case(2, &FiniteQuadraticForm::trivial(), &h).unwrap();
        assert_eq!((c.label, c.l, c.m, c.a), (CaseLabel::III, 1, 1, 0));
    }

    #[test]
    fn dimensions() {
        let l = Lattice::k3n(2).unwrap();
        let t = PrimitiveSublattice::from_i64(&l, vec![{
            let mut r = vec![0; 23];
            r[0] = 1;
            r[1] = 1;
            r
        }])
        .unwrap();
        assert_eq!(family_dimension(&t).unwrap(), 20);
        assert!(is_specialization(&t, &t).unwrap());
    }
}
