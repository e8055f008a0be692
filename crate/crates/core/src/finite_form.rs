//! Finite quadratic forms `q : A -> Q/2Z` on finite abelian groups.
//!
//! A form is stored on a cyclic decomposition `A = (+) Z/d_i` together with a
//! rational Gram matrix: diagonal entries are `q(e_i) mod 2`, off-diagonal
//! entries are `b(e_i, e_j) mod 1`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{hermite_rows, smith, Matrix};

/// Small exact rationals used for discriminant form values.
pub type Q64 = Ratio<i64>;

/// Group element in generator coordinates.
pub type Elem = Vec<i64>;

/// Default cap on the number of group elements any routine will enumerate.
pub const DEFAULT_GROUP_BOUND: u64 = 1 << 12;

pub(crate) fn mod1(x: Q64) -> Q64 {
    x - Q64::from_integer(x.floor().to_integer())
}

pub(crate) fn mod2(x: Q64) -> Q64 {
    let two = Q64::from_integer(2);
    x - two * Q64::from_integer((x / two).floor().to_integer())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteQuadraticForm {
    orders: Vec<i64>,
    gram: Matrix<Q64>,
}

/// Subgroup of a finite quadratic form, stored by generators and the full
/// sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    generators: Vec<Elem>,
    elements: Vec<Elem>,
}

impl Subgroup {
    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, x: &Elem) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

impl FiniteQuadraticForm {
    /// Build a form, dropping trivial generators and reducing entries.
    pub fn new(orders: Vec<i64>, gram: Matrix<Q64>) -> Result<Self> {
        let k = orders.len();
        if gram.rows() != k || gram.cols() != k {
            return Err(Error::DimensionMismatch { expected: k, found: gram.rows() });
        }
        if orders.iter().any(|&d| d < 1) {
            return Err(Error::InvalidForm("generator orders must be positive".into()));
        }
        if !gram.is_symmetric() {
            return Err(Error::InvalidForm("Gram matrix is not symmetric".into()));
        }
        let keep: Vec<usize> = (0..k).filter(|&i| orders[i] > 1).collect();
        let mut g = Matrix::<Q64>::zeros(keep.len(), keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                g[(a, b)] = if a == b { mod2(gram[(i, j)]) } else { mod1(gram[(i, j)]) };
            }
        }
        let orders: Vec<i64> = keep.iter().map(|&i| orders[i]).collect();
        for (a, &d) in orders.iter().enumerate() {
            let dq = Q64::from_integer(d);
            for b in 0..orders.len() {
                if !(dq * g[(a, b)]).is_integer() {
                    return Err(Error::InvalidForm(format!(
                        "entry ({a},{b}) is not killed by the generator order {d}"
                    )));
                }
            }
            let dd = dq * dq * g[(a, a)];
            if !dd.is_integer() || dd.to_integer() % 2 != 0 {
                return Err(Error::InvalidForm(format!("q is not well defined on generator {a}")));
            }
        }
        Ok(FiniteQuadraticForm { orders, gram: g })
    }

    pub fn trivial() -> Self {
        FiniteQuadraticForm { orders: vec![], gram: Matrix::zeros(0, 0) }
    }

    /// `Z/d` with `q(1) = q`.
    pub fn cyclic(d: i64, q: Q64) -> Result<Self> {
        Self::new(vec![d], Matrix::from_rows(vec![vec![q]]))
    }

    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn gram(&self) -> &Matrix<Q64> {
        &self.gram
    }

    pub fn ngens(&self) -> usize {
        self.orders.len()
    }

    /// Group order `|A|`.
    pub fn order(&self) -> u64 {
        self.orders.iter().map(|&d| d as u64).product()
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.ngens()]
    }

    pub fn generator(&self, i: usize) -> Elem {
        let mut e = self.zero();
        e[i] = 1;
        e
    }

    pub fn reduce(&self, x: &[i64]) -> Elem {
        x.iter().zip(&self.orders).map(|(a, d)| a.mod_floor(d)).collect()
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Elem {
        x.iter().zip(y).zip(&self.orders).map(|((a, b), d)| (a + b).mod_floor(d)).collect()
    }

    pub fn neg(&self, x: &[i64]) -> Elem {
        self.scale(-1, x)
    }

    pub fn scale(&self, k: i64, x: &[i64]) -> Elem {
        x.iter().zip(&self.orders).map(|(a, d)| (k * a).mod_floor(d)).collect()
    }

    pub fn q(&self, x: &[i64]) -> Q64 {
        let k = self.ngens();
        let mut s = Q64::zero();
        for i in 0..k {
            if x[i] == 0 {
                continue;
            }
            s += self.gram[(i, i)] * (x[i] * x[i]);
            for j in i + 1..k {
                s += self.gram[(i, j)] * (2 * x[i] * x[j]);
            }
        }
        mod2(s)
    }

    pub fn b(&self, x: &[i64], y: &[i64]) -> Q64 {
        let k = self.ngens();
        let mut s = Q64::zero();
        for i in 0..k {
            if x[i] == 0 {
                continue;
            }
            for j in 0..k {
                s += self.gram[(i, j)] * (x[i] * y[j]);
            }
        }
        mod1(s)
    }

    pub fn element_order(&self, x: &[i64]) -> i64 {
        x.iter().zip(&self.orders).fold(1, |acc, (a, d)| acc.lcm(&(d / a.gcd(d))))
    }

    fn check_bound(&self, bound: u64) -> Result<()> {
        let order = self.order();
        if order > bound {
            return Err(Error::GroupTooLarge { order, bound });
        }
        Ok(())
    }

    /// All group elements in mixed-radix order.
    pub fn elements(&self, bound: u64) -> Result<Vec<Elem>> {
        self.check_bound(bound)?;
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut cur = self.zero();
        loop {
            out.push(cur.clone());
            let mut i = 0;
            loop {
                if i == cur.len() {
                    return Ok(out);
                }
                cur[i] += 1;
                if cur[i] < self.orders[i] {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders = self.orders.clone();
        orders.extend(&other.orders);
        FiniteQuadraticForm {
            orders,
            gram: Matrix::block_diag(&[&self.gram, &other.gram]),
        }
    }

    /// The form `-q`.
    pub fn negated(&self) -> Self {
        let k = self.ngens();
        let mut g = Matrix::<Q64>::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                let v = -self.gram[(i, j)];
                g[(i, j)] = if i == j { mod2(v) } else { mod1(v) };
            }
        }
        FiniteQuadraticForm { orders: self.orders.clone(), gram: g }
    }

    /// Invariant factors `d_1 | d_2 | ...` of the underlying group, all > 1.
    pub fn invariant_factors(&self) -> Vec<i64> {
        let s = smith(&Matrix::diagonal(&self.orders));
        let mut d: Vec<i64> = s.diagonal.into_iter().filter(|&x| x > 1).collect();
        d.sort();
        d
    }

    /// Minimal number of generators of the group.
    pub fn length(&self) -> usize {
        self.invariant_factors().len()
    }

    pub fn exponent(&self) -> i64 {
        self.orders.iter().fold(1, |a, d| a.lcm(d))
    }

    pub fn is_2_elementary(&self) -> bool {
        self.exponent() <= 2
    }

    /// Same form on an invariant-factor presentation.
    pub fn normalized(&self) -> Self {
        let all: Vec<Elem> = (0..self.ngens()).map(|i| self.generator(i)).collect();
        self.subquotient(&all, &[])
    }

    /// Form induced on `N / D` for subgroups `D <= N` given by generators.
    /// The caller guarantees that `D` lies in the radical of `N`.
    pub fn subquotient(&self, num: &[Elem], den: &[Elem]) -> Self {
        let (orders, lifts) = self.subquotient_presentation(num, den);
        let k = orders.len();
        let mut g = Matrix::<Q64>::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                g[(i, j)] = if i == j { self.q(&lifts[i]) } else { self.b(&lifts[i], &lifts[j]) };
            }
        }
        FiniteQuadraticForm { orders, gram: g }
    }

    /// Cyclic decomposition of `N / D` with lifts of the generators into `A`.
    pub fn subquotient_presentation(&self, num: &[Elem], den: &[Elem]) -> (Vec<i64>, Vec<Elem>) {
        let k = self.ngens();
        if k == 0 {
            return (vec![], vec![]);
        }
        let rel: Vec<Elem> = (0..k)
            .map(|i| {
                let mut r = vec![0; k];
                r[i] = self.orders[i];
                r
            })
            .collect();
        let mut nrows: Vec<Elem> = num.to_vec();
        nrows.extend(rel.iter().cloned());
        let nbasis = hermite_rows(&Matrix::from_rows(nrows));
        debug_assert_eq!(nbasis.rows(), k);
        let mut drows: Vec<Elem> = den.to_vec();
        drows.extend(rel);
        let coeffs: Vec<Elem> = drows.iter().map(|r| solve_upper(&nbasis, r)).collect();
        let s = smith(&Matrix::from_rows(coeffs));
        let mut orders = Vec::new();
        let mut lifts = Vec::new();
        for (i, d) in s.diagonal.iter().enumerate() {
            if *d > 1 {
                orders.push(*d);
                let comb = s.right_inv.row(i);
                lifts.push(self.reduce(&nbasis.vec_mul(comb)));
            }
        }
        (orders, lifts)
    }

    /// Subgroup generated by `gens`.
    pub fn span(&self, gens: &[Elem]) -> Subgroup {
        let mut set: HashSet<Elem> = HashSet::new();
        let zero = self.zero();
        set.insert(zero.clone());
        let mut elems = vec![zero];
        let mut kept = Vec::new();
        for g in gens {
            let g = self.reduce(g);
            if set.contains(&g) {
                continue;
            }
            kept.push(g.clone());
            // add cosets k*g + H until k*g falls into H
            let base = elems.clone();
            let mut shift = g.clone();
            while !set.contains(&shift) {
                for h in &base {
                    let e = self.add(h, &shift);
                    if set.insert(e.clone()) {
                        elems.push(e);
                    }
                }
                shift = self.add(&shift, &g);
            }
        }
        elems.sort();
        Subgroup { generators: kept, elements: elems }
    }

    /// Every subgroup, enumerated by breadth-first extension.
    pub fn subgroups(&self, bound: u64) -> Result<Vec<Subgroup>> {
        let all = self.elements(bound)?;
        let trivial = self.span(&[]);
        let mut seen: HashSet<Vec<Elem>> = HashSet::new();
        seen.insert(trivial.elements.clone());
        let mut queue = VecDeque::from([trivial]);
        let mut out = Vec::new();
        while let Some(h) = queue.pop_front() {
            for g in &all {
                if h.contains(g) {
                    continue;
                }
                let mut gens = h.generators.clone();
                gens.push(g.clone());
                let h2 = self.span(&gens);
                if seen.insert(h2.elements.clone()) {
                    queue.push_back(h2);
                }
            }
            out.push(h);
        }
        out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
        Ok(out)
    }

    /// `H^perp` with respect to the bilinear form.
    pub fn orthogonal(&self, h: &Subgroup, bound: u64) -> Result<Subgroup> {
        let all = self.elements(bound)?;
        let gens = h.generators();
        let perp: Vec<Elem> = all
            .into_iter()
            .filter(|x| gens.iter().all(|g| self.b(x, g).is_zero()))
            .collect();
        Ok(Subgroup { generators: perp.clone(), elements: perp }.minimized(self))
    }

    pub fn is_isotropic(&self, h: &Subgroup) -> bool {
        let g = h.generators();
        g.iter().all(|x| self.q(x).is_zero())
            && g.iter().enumerate().all(|(i, x)| g[i + 1..].iter().all(|y| self.b(x, y).is_zero()))
    }

    /// `H^perp / H` for an isotropic subgroup `H`.
    pub fn perp_mod(&self, h: &Subgroup, bound: u64) -> Result<Self> {
        if !self.is_isotropic(h) {
            let bad = h.generators().iter().find(|x| !self.q(x).is_zero()).cloned().unwrap_or_default();
            return Err(Error::NotIsotropic(format!("{bad:?}")));
        }
        let perp = self.orthogonal(h, bound)?;
        Ok(self.subquotient(perp.generators(), h.generators()))
    }

    /// Form restricted to a subgroup, on a cyclic presentation, together with
    /// the ambient coordinates of the presentation generators.
    pub fn restrict(&self, h: &Subgroup) -> (Self, Vec<Elem>) {
        let (orders, lifts) = self.subquotient_presentation(h.generators(), &[]);
        let k = orders.len();
        let mut g = Matrix::<Q64>::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                g[(i, j)] = if i == j { self.q(&lifts[i]) } else { self.b(&lifts[i], &lifts[j]) };
            }
        }
        (FiniteQuadraticForm { orders, gram: g }, lifts)
    }

    /// True when the bilinear form has trivial radical.
    pub fn is_nondegenerate(&self, bound: u64) -> Result<bool> {
        let all = self.elements(bound)?;
        let k = self.ngens();
        let gens: Vec<Elem> = (0..k).map(|i| self.generator(i)).collect();
        Ok(all.iter().filter(|x| gens.iter().all(|g| self.b(x, g).is_zero())).count() == 1)
    }

    /// Decide whether two forms are isometric.
    pub fn is_isomorphic(&self, other: &Self, bound: u64) -> Result<bool> {
        if self.invariant_factors() != other.invariant_factors() {
            return Ok(false);
        }
        if value_multiset(self, bound)? != value_multiset(other, bound)? {
            return Ok(false);
        }
        let src = self.normalized();
        let cands = other.elements(bound)?;
        Ok(!isometric_maps(&src, other, &cands, 1, Some(1)).is_empty())
    }

    /// All maps `H1 -> H2` with `q(phi x) = -q(x)`, as images of the
    /// presentation generators of `H1` returned alongside.
    pub fn anti_isometries(
        &self,
        h1: &Subgroup,
        other: &Self,
        h2: &Subgroup,
    ) -> (Vec<Elem>, Vec<Vec<Elem>>) {
        if h1.order() != h2.order() {
            return (vec![], vec![]);
        }
        let (src, lifts) = self.restrict(h1);
        let maps = isometric_maps(&src, other, h2.elements(), -1, None);
        (lifts, maps)
    }
}

impl Subgroup {
    fn minimized(self, ambient: &FiniteQuadraticForm) -> Self {
        let (_, lifts) = ambient.subquotient_presentation(&self.generators, &[]);
        Subgroup { generators: lifts, elements: self.elements }
    }
}

/// Solve `c * n = r` for an upper-triangular full-rank Hermite basis `n`.
fn solve_upper(n: &Matrix<i64>, r: &[i64]) -> Elem {
    let k = n.rows();
    let mut rem = r.to_vec();
    let mut c = vec![0; k];
    for i in 0..k {
        let p = n[(i, i)];
        debug_assert!(rem[i] % p == 0, "row not in the lattice");
        c[i] = rem[i] / p;
        if c[i] != 0 {
            for j in i..k {
                rem[j] -= c[i] * n[(i, j)];
            }
        }
    }
    c
}

fn value_multiset(f: &FiniteQuadraticForm, bound: u64) -> Result<Vec<(i64, Q64)>> {
    let mut v: Vec<(i64, Q64)> =
        f.elements(bound)?.iter().map(|x| (f.element_order(x), f.q(x))).collect();
    v.sort();
    Ok(v)
}

/// Backtracking search for injective maps from the generators of `src` into
/// `candidates` (elements of `dst`) scaling `q` by `sign`. The image must
/// have exactly `|src|` elements.
fn isometric_maps(
    src: &FiniteQuadraticForm,
    dst: &FiniteQuadraticForm,
    candidates: &[Elem],
    sign: i64,
    limit: Option<usize>,
) -> Vec<Vec<Elem>> {
    let k = src.ngens();
    let s = Q64::from_integer(sign);
    let options: Vec<Vec<&Elem>> = (0..k)
        .map(|i| {
            let gi = src.generator(i);
            let target = mod2(s * src.q(&gi));
            candidates
                .iter()
                .filter(|c| dst.element_order(c) == src.orders()[i] && dst.q(c) == target)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<&Elem> = Vec::with_capacity(k);
    fn rec<'a>(
        src: &FiniteQuadraticForm,
        dst: &FiniteQuadraticForm,
        options: &[Vec<&'a Elem>],
        s: Q64,
        chosen: &mut Vec<&'a Elem>,
        out: &mut Vec<Vec<Elem>>,
        limit: Option<usize>,
    ) {
        if limit.is_some_and(|l| out.len() >= l) {
            return;
        }
        let i = chosen.len();
        if i == options.len() {
            let imgs: Vec<Elem> = chosen.iter().map(|e| (*e).clone()).collect();
            if dst.span(&imgs).order() == src.order() {
                out.push(imgs);
            }
            return;
        }
        let gi = src.generator(i);
        for &c in &options[i] {
            let ok = (0..i).all(|j| {
                let gj = src.generator(j);
                dst.b(c, chosen[j]) == mod1(s * src.b(&gi, &gj))
            });
            if ok {
                chosen.push(c);
                rec(src, dst, options, s, chosen, out, limit);
                chosen.pop();
            }
        }
    }
    rec(src, dst, &options, s, &mut chosen, &mut out, limit);
    out
}

/// Render `p/q` canonically, integers without a denominator.
pub fn fmt_q(x: &Q64) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl fmt::Display for FiniteQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "0");
        }
        let k = self.ngens();
        let diagonal = (0..k).all(|i| (0..k).all(|j| i == j || self.gram[(i, j)].is_zero()));
        if diagonal {
            let parts: Vec<String> = (0..k)
                .map(|i| format!("Z/{}({})", self.orders[i], fmt_q(&self.gram[(i, i)])))
                .collect();
            return write!(f, "{}", parts.join(" + "));
        }
        let groups: Vec<String> = self.orders.iter().map(|d| format!("Z/{d}")).collect();
        let rows: Vec<String> = (0..k)
            .map(|i| {
                let r: Vec<String> = (0..k).map(|j| fmt_q(&self.gram[(i, j)])).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "{} with Gram [{}]", groups.join(" + "), rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q64 {
        Q64::new(n, d)
    }

    #[test]
    fn cyclic_values() {
        let f = FiniteQuadraticForm::cyclic(4, q(1, 4)).unwrap();
        assert_eq!(f.q(&[2]), q(1, 1));
        assert_eq!(f.q(&[3]), q(9, 4) - q(2, 1));
        assert_eq!(f.element_order(&[2]), 2);
    }

    #[test]
    fn rejects_ill_defined_forms() {
        assert!(FiniteQuadraticForm::cyclic(2, q(1, 4)).is_err());
        assert!(FiniteQuadraticForm::cyclic(2, q(1, 2)).is_ok());
    }

    #[test]
    fn subgroups_of_z4_and_klein() {
        let f = FiniteQuadraticForm::cyclic(4, q(1, 4)).unwrap();
        assert_eq!(f.subgroups(100).unwrap().len(), 3);
        let k = FiniteQuadraticForm::cyclic(2, q(1, 2)).unwrap().direct_sum(&FiniteQuadraticForm::cyclic(2, q(3, 2)).unwrap());
        assert_eq!(k.subgroups(100).unwrap().len(), 5);
    }

    #[test]
    fn perp_mod_isotropic_line() {
        // Z/4(1/4) + Z/4(-1/4): the diagonal is isotropic and H^perp/H is trivial.
        let a = FiniteQuadraticForm::cyclic(4, q(1, 4)).unwrap();
        let f = a.direct_sum(&a.negated());
        let h = f.span(&[vec![1, 1]]);
        let r = f.perp_mod(&h, 100).unwrap();
        assert_eq!(r.order(), 1);
    }

    #[test]
    fn isomorphism_detects_sign() {
        let a = FiniteQuadraticForm::cyclic(3, q(2, 3)).unwrap();
        let b = FiniteQuadraticForm::cyclic(3, q(4, 3)).unwrap();
        assert!(!a.is_isomorphic(&b, 100).unwrap());
        let c = FiniteQuadraticForm::cyclic(5, q(2, 5)).unwrap();
        let d = FiniteQuadraticForm::cyclic(5, q(8, 5)).unwrap();
        // 4 is a square mod 5
        assert!(c.is_isomorphic(&d, 100).unwrap());
    }

    #[test]
    fn normalization_merges_coprime_factors() {
        let f = FiniteQuadraticForm::cyclic(2, q(1, 2)).unwrap().direct_sum(&FiniteQuadraticForm::cyclic(3, q(2, 3)).unwrap());
        let n = f.normalized();
        assert_eq!(n.orders(), &[6]);
        assert!(n.is_isomorphic(&f, 100).unwrap());
    }
}
