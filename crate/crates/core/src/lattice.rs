//! Even integral lattices given by Gram matrices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::finite_form::{mod1, mod2, Elem, FiniteQuadraticForm, Q64};
use crate::linalg::{determinant, hermite_rows, inertia, smith, Matrix};
use crate::{int, IntMatrix, Int, Rational};

/// Signature `(positive, negative)` of a nondegenerate form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
}

impl Signature {
    pub fn new(positive: usize, negative: usize) -> Self {
        Signature { positive, negative }
    }

    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }

    /// `positive - negative` reduced mod 8.
    pub fn mod8(&self) -> u8 {
        (self.positive as i64 - self.negative as i64).rem_euclid(8) as u8
    }

    pub fn checked_sub(&self, other: &Signature) -> Option<Signature> {
        Some(Signature {
            positive: self.positive.checked_sub(other.positive)?,
            negative: self.negative.checked_sub(other.negative)?,
        })
    }
}

impl std::ops::Add for Signature {
    type Output = Signature;
    fn add(self, o: Signature) -> Signature {
        Signature::new(self.positive + o.positive, self.negative + o.negative)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.positive, self.negative)
    }
}

/// Nondegenerate even lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    gram: IntMatrix,
}

impl Lattice {
    /// Validate a Gram matrix: square, symmetric, nondegenerate and even.
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        for i in 0..gram.rows() {
            if gram[(i, i)].is_odd() {
                return Err(Error::NotEven(gram[(i, i)].to_string()));
            }
        }
        if gram.rows() > 0 && determinant(&gram).is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(Lattice { gram })
    }

    pub fn from_i64(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::new(Matrix::from_rows(rows).map(|&x| int(x)))
    }

    pub fn zero() -> Self {
        Lattice { gram: Matrix::zeros(0, 0) }
    }

    /// Hyperbolic plane `U`.
    pub fn u() -> Self {
        Self::scaled_u(1)
    }

    /// `U(m)`.
    pub fn scaled_u(m: i64) -> Self {
        Lattice { gram: Matrix::from_rows(vec![vec![int(0), int(m)], vec![int(m), int(0)]]) }
    }

    /// Negative definite `E8`.
    pub fn e8() -> Self {
        let mut g = Matrix::<Int>::zeros(8, 8);
        for i in 0..8 {
            g[(i, i)] = int(-2);
        }
        // Dynkin diagram: chain 0-2-3-4-5-6-7 with 1 attached to 3
        for (a, b) in [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)] {
            g[(a, b)] = int(1);
            g[(b, a)] = int(1);
        }
        Lattice { gram: g }
    }

    /// Rank one lattice `<t>`, `t` even and nonzero.
    pub fn diagonal(t: i64) -> Result<Self> {
        if t == 0 || t % 2 != 0 {
            return Err(Error::InvalidParameter(format!("<{t}> must be even and nonzero")));
        }
        Ok(Lattice { gram: Matrix::from_rows(vec![vec![int(t)]]) })
    }

    /// `U^3 + E8^2 + <-2(n-1)>`, the lattice `L_n` of type K3^[n].
    ///
    /// Coordinates: three copies of `U` at 0..6, two `E8` at 6..22, `delta` at 22.
    pub fn k3n(n: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("n = {n} must be at least 2")));
        }
        Ok(Self::sum(&[
            Self::u(),
            Self::u(),
            Self::u(),
            Self::e8(),
            Self::e8(),
            Self::diagonal(-2 * (n - 1))?,
        ]))
    }

    /// K3 lattice `U^3 + E8^2`.
    pub fn k3() -> Self {
        Self::sum(&[Self::u(), Self::u(), Self::u(), Self::e8(), Self::e8()])
    }

    /// Mukai lattice `U^4 + E8^2`; `U` copies at 0..8, `E8` copies at 8..24.
    pub fn mukai() -> Self {
        Self::sum(&[Self::u(), Self::u(), Self::u(), Self::u(), Self::e8(), Self::e8()])
    }

    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        Lattice { gram: Matrix::block_diag(&[&self.gram, &other.gram]) }
    }

    pub fn sum(parts: &[Lattice]) -> Lattice {
        let blocks: Vec<&IntMatrix> = parts.iter().map(|l| &l.gram).collect();
        Lattice { gram: Matrix::block_diag(&blocks) }
    }

    /// `L(m)`: the same group with form scaled by `m`.
    pub fn rescale(&self, m: i64) -> Result<Lattice> {
        if m == 0 {
            return Err(Error::InvalidParameter("scale factor must be nonzero".into()));
        }
        Ok(Lattice { gram: self.gram.scale(&int(m)) })
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn determinant(&self) -> Int {
        determinant(&self.gram)
    }

    pub fn signature(&self) -> Signature {
        let q = self.gram.map(|x| Rational::from_integer(x.clone()));
        let i = inertia(&q);
        Signature::new(i.positive, i.negative)
    }

    pub fn is_definite(&self) -> bool {
        let s = self.signature();
        s.positive == 0 || s.negative == 0
    }

    pub fn pairing(&self, x: &[Int], y: &[Int]) -> Int {
        self.gram.bilinear(x, y)
    }

    pub fn square(&self, x: &[Int]) -> Int {
        self.pairing(x, x)
    }

    /// Rational pairing, for vectors of the dual.
    pub fn pairing_q(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.rational_gram().bilinear(x, y)
    }

    pub fn rational_gram(&self) -> Matrix<Rational> {
        self.gram.map(|x| Rational::from_integer(x.clone()))
    }

    /// `div(v)`: positive generator of the ideal `(v, L)`.
    pub fn divisibility(&self, v: &[Int]) -> Result<Int> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: v.len() });
        }
        if v.iter().all(Zero::is_zero) {
            return Err(Error::ZeroVector);
        }
        let gv = self.gram.mul_vec(v);
        Ok(gv.iter().fold(Int::zero(), |g, x| g.gcd(x)))
    }

    /// Discriminant group together with the maps between it and `L^v`.
    pub fn discriminant(&self) -> Discriminant {
        let s = smith(&self.gram);
        let n = self.rank();
        let g = self.rational_gram();
        let mut orders = Vec::new();
        let mut lifts = Vec::new();
        let mut coord_rows = Vec::new();
        for i in 0..n {
            let d = &s.diagonal[i];
            if *d > Int::one() {
                orders.push(d.to_i64().expect("discriminant exponent fits in i64"));
                let dq = Rational::from_integer(d.clone());
                lifts.push(s.right.col_vec(i).into_iter().map(|x| Rational::from_integer(x) / dq.clone()).collect::<Vec<_>>());
                coord_rows.push((&s.left * &self.gram).row_vec(i));
            }
        }
        let k = orders.len();
        let mut gm = Matrix::<Q64>::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                let v = g.bilinear(&lifts[i], &lifts[j]);
                let v = to_q64(&v);
                gm[(i, j)] = if i == j { mod2(v) } else { mod1(v) };
            }
        }
        let form = FiniteQuadraticForm::new(orders, gm).expect("discriminant form is well defined");
        Discriminant { form, lifts, coord_rows }
    }

    pub fn discriminant_group(&self) -> FiniteQuadraticForm {
        self.discriminant().form
    }

    /// Overlattice generated by `L` and rational vectors of `L^v`, with its
    /// basis in the rational coordinates of `L`.
    pub fn overlattice(&self, lifts: &[Vec<Rational>]) -> Result<(Lattice, Matrix<Rational>)> {
        let n = self.rank();
        let mut rows: Vec<Vec<Rational>> = lifts.to_vec();
        for i in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[i] = Rational::one();
            rows.push(e);
        }
        let den = rows
            .iter()
            .flatten()
            .fold(Int::one(), |acc, x| acc.lcm(x.denom()));
        let dq = Rational::from_integer(den.clone());
        let scaled: Vec<Vec<Int>> = rows
            .iter()
            .map(|r| r.iter().map(|x| (x * &dq).to_integer()).collect())
            .collect();
        let h = hermite_rows(&Matrix::from_rows(scaled));
        let basis = h.map(|x| Rational::from_integer(x.clone()) / dq.clone());
        let gram = self.rational_gram().congruent(&basis);
        if gram.row_iter().flatten().any(|x| !x.is_integer()) {
            return Err(Error::OverlatticeNotEven);
        }
        let gi = gram.map(|x| x.to_integer());
        let lat = Lattice::new(gi).map_err(|_| Error::OverlatticeNotEven)?;
        Ok((lat, basis))
    }

    /// Canonical text rendering of the Gram matrix.
    pub fn gram_string(&self) -> String {
        self.gram.to_string()
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.gram)
    }
}

pub(crate) fn to_q64(x: &Rational) -> Q64 {
    let two = Rational::from_integer(int(2));
    // reduce mod 2 before narrowing so large lifts stay representable
    let r = x - &two * (x / &two).floor();
    Q64::new(
        r.numer().to_i64().expect("numerator fits in i64"),
        r.denom().to_i64().expect("denominator fits in i64"),
    )
}

/// Discriminant group `A_L = L^v / L` with generator lifts and coordinates.
#[derive(Clone, Debug)]
pub struct Discriminant {
    pub form: FiniteQuadraticForm,
    lifts: Vec<Vec<Rational>>,
    coord_rows: Vec<Vec<Int>>,
}

impl Discriminant {
    /// Rational lift in `L^v` of a group element.
    pub fn lift(&self, x: &[i64]) -> Vec<Rational> {
        let n = self.lifts.first().map_or(0, Vec::len);
        let mut out = vec![Rational::zero(); n];
        for (c, l) in x.iter().zip(&self.lifts) {
            let c = Rational::from_integer(int(*c));
            for (o, v) in out.iter_mut().zip(l) {
                *o += &c * v;
            }
        }
        out
    }

    pub fn lifts(&self) -> &[Vec<Rational>] {
        &self.lifts
    }

    /// Coordinates of the class of `y` in `L^v`.
    pub fn coordinates(&self, y: &[Rational]) -> Result<Elem> {
        let mut out = Vec::with_capacity(self.coord_rows.len());
        for (row, d) in self.coord_rows.iter().zip(self.form.orders()) {
            let v = row.iter().zip(y).fold(Rational::zero(), |acc, (a, b)| acc + Rational::from_integer(a.clone()) * b);
            if !v.is_integer() {
                return Err(Error::NotInGroup);
            }
            out.push(v.to_integer().mod_floor(&int(*d)).to_i64().expect("coordinate fits"));
        }
        Ok(out)
    }
}

/// Even overlattice of `T + S` from glue elements given in coordinates of
/// `A_T + A_S` (concatenated). The projections of the glue group must be
/// injective and the glue group must be isotropic.
pub fn overlattice_from_glue(t: &Lattice, s: &Lattice, glue: &[Elem]) -> Result<(Lattice, Matrix<Rational>)> {
    let dt = t.discriminant();
    let ds = s.discriminant();
    let sum = dt.form.direct_sum(&ds.form);
    let kt = dt.form.ngens();
    for g in glue {
        if g.len() != sum.ngens() {
            return Err(Error::DimensionMismatch { expected: sum.ngens(), found: g.len() });
        }
    }
    let h = sum.span(glue);
    if !sum.is_isotropic(&h) {
        let bad = glue.iter().find(|g| !sum.q(g).is_zero()).cloned().unwrap_or_default();
        return Err(Error::NotIsotropic(format!("{bad:?}")));
    }
    for x in h.elements() {
        if x.iter().all(|&c| c == 0) {
            continue;
        }
        if x[..kt].iter().all(|&c| c == 0) {
            return Err(Error::GlueNotInjective("T"));
        }
        if x[kt..].iter().all(|&c| c == 0) {
            return Err(Error::GlueNotInjective("S"));
        }
    }
    let ts = t.direct_sum(s);
    let lifts: Vec<Vec<Rational>> = h
        .generators()
        .iter()
        .map(|g| {
            let mut v = dt.lift(&g[..kt]);
            if v.is_empty() {
                v = vec![Rational::zero(); t.rank()];
            }
            let mut w = ds.lift(&g[kt..]);
            if w.is_empty() {
                w = vec![Rational::zero(); s.rank()];
            }
            v.extend(w);
            v
        })
        .collect();
    ts.overlattice(&lifts)
}

/// Greatest common divisor of an integer vector.
pub fn content(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

pub fn is_primitive(v: &[Int]) -> bool {
    content(v).is_one()
}

/// Convert a small-coefficient vector.
pub fn ivec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn abs_det(l: &Lattice) -> Int {
    l.determinant().abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_invariants() {
        let e8 = Lattice::e8();
        assert_eq!(e8.determinant(), int(1));
        assert_eq!(e8.signature(), Signature::new(0, 8));
        let l3 = Lattice::k3n(3).unwrap();
        assert_eq!(l3.rank(), 23);
        assert_eq!(l3.determinant(), int(4));
        assert_eq!(l3.signature(), Signature::new(3, 20));
        assert_eq!(Lattice::mukai().signature(), Signature::new(4, 20));
    }

    #[test]
    fn discriminant_of_l3() {
        let a = Lattice::k3n(3).unwrap().discriminant_group();
        assert_eq!(a.orders(), &[4]);
        assert_eq!(a.gram()[(0, 0)], Q64::new(7, 4));
    }

    #[test]
    fn discriminant_coordinates_round_trip() {
        let l = Lattice::from_i64(vec![vec![2, 1], vec![1, 4]]).unwrap();
        let d = l.discriminant();
        assert_eq!(d.form.order(), 7);
        for k in 0..7 {
            let y = d.lift(&[k]);
            assert_eq!(d.coordinates(&y).unwrap(), vec![k]);
        }
    }

    #[test]
    fn divisibility_in_l2() {
        let l = Lattice::k3n(2).unwrap();
        let mut v = vec![int(0); 23];
        v[22] = int(1);
        assert_eq!(l.divisibility(&v).unwrap(), int(2));
        v[0] = int(1);
        assert_eq!(l.divisibility(&v).unwrap(), int(1));
        assert_eq!(l.divisibility(&vec![int(0); 23]), Err(Error::ZeroVector));
    }

    #[test]
    fn epw_glue() {
        let t = Lattice::diagonal(4).unwrap();
        let s = Lattice::sum(&[Lattice::diagonal(-2).unwrap(), Lattice::diagonal(-2).unwrap()]);
        let (l, _) = overlattice_from_glue(&t, &s, &[vec![2, 1, 1]]).unwrap();
        assert_eq!(l.determinant(), int(4));
        assert_eq!(l.rank(), 3);
        let bad = overlattice_from_glue(&t, &s, &[vec![2, 1, 0]]);
        assert!(matches!(bad, Err(Error::NotIsotropic(_))));
    }
}
