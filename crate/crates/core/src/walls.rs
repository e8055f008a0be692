//! Wall-divisor numerics: admissible `(square, divisibility)` pairs, wall
//! classes inside a rank-2 invariant lattice and chamber counting.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::int;
use crate::sublattice::PrimitiveSublattice;
use crate::Int;

/// Numerical type of a wall divisor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WallPair {
    pub square: i64,
    pub divisibility: i64,
}

// Decreasing square, then increasing divisibility.
impl Ord for WallPair {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.square.cmp(&self.square).then(self.divisibility.cmp(&other.divisibility))
    }
}

impl PartialOrd for WallPair {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WallPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.square, self.divisibility)
    }
}

/// Admissible wall pairs for `K3^[n]`-type lattices, sorted by decreasing
/// square then increasing divisibility.
///
/// Inside the Mukai lattice put `v^2 = 2(n-1)`. A wall comes from a rank-2
/// hyperbolic lattice `H` containing `v` primitively and a class `a` with
/// `a^2 >= -2` and `0 <= (a,v) <= n-1`. Its class is the primitive generator
/// `delta` of `v^perp` in `H`, and `div(delta) = [H : Zv + Z delta]`. Every
/// even lattice of rank 2 embeds primitively into the Mukai lattice, so it
/// suffices to enumerate the abstract overlattices `H` of `<v, a>` in which
/// `v` stays primitive. The enumeration is finite: hyperbolicity bounds `a^2`
/// from above.
pub fn wall_pairs(n: i64) -> Result<Vec<WallPair>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n = {n} must be at least 2")));
    }
    let d = 2 * (n - 1);
    let mut out = BTreeSet::new();
    for s in 0..n {
        let mut a2 = -2;
        while d * a2 - s * s < 0 {
            let det = (d * a2 - s * s).abs();
            for k in (1..).take_while(|k| k * k <= det) {
                if det % (k * k) != 0 {
                    continue;
                }
                // H = Zv + Zu with u = (a + p v) / k
                for p in 0..k {
                    let uv = s + d * p;
                    let uu = a2 + 2 * p * s + p * p * d;
                    if uv % k != 0 || uu % (k * k) != 0 || (uu / (k * k)) % 2 != 0 {
                        continue;
                    }
                    let (uv, uu) = (uv / k, uu / (k * k));
                    let g = d.gcd(&uv);
                    let (cu, cv) = (d / g, -uv / g);
                    let square = cv * cv * d + 2 * cv * cu * uv + cu * cu * uu;
                    out.insert((-square, cu));
                }
            }
            a2 += 2;
        }
    }
    Ok(out
        .into_iter()
        .map(|(s, div)| WallPair { square: -s, divisibility: div })
        .collect())
}

/// Pairs found by a bounded direct search, used to cross-check
/// [`wall_pairs`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallPairSearch {
    pub pairs: Vec<WallPair>,
    pub bound: i64,
    /// Doubling the bound produced the same pairs.
    pub stable: bool,
}

fn search_pairs(n: i64, bound: i64) -> BTreeSet<WallPair> {
    let d = 2 * (n - 1);
    let mut out = BTreeSet::new();
    // H = Zv + Zw with Gram [[d, b], [b, c]]; w -> +-w + kv normalises b
    for b in 0..n {
        let mut c = -2 * bound;
        while c * d < b * b {
            let found = (-bound..=bound).any(|y| {
                y != 0
                    && (-bound..=bound).any(|x| {
                        let av = x * d + y * b;
                        let aa = x * x * d + 2 * x * y * b + y * y * c;
                        (0..n).contains(&av) && aa >= -2
                    })
            });
            if found {
                let g = d.gcd(&b);
                let (cw, cv) = (d / g, -b / g);
                let square = cv * cv * d + 2 * cv * cw * b + cw * cw * c;
                out.insert(WallPair { square, divisibility: cw });
            }
            c += 2;
        }
    }
    out
}

/// Direct search over rank-2 lattices `H` containing `v` primitively, with
/// Gram entries and coefficients of `a` bounded by `bound`.
pub fn wall_pairs_search(n: i64, bound: i64) -> Result<WallPairSearch> {
    if n < 2 || bound < 1 {
        return Err(Error::InvalidParameter(format!("n = {n}, bound = {bound}")));
    }
    let first = search_pairs(n, bound);
    let stable = first == search_pairs(n, 2 * bound);
    Ok(WallPairSearch { pairs: first.into_iter().collect(), bound, stable })
}

/// A wall class of `T`, given both in `T` coordinates and in the ambient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub coords: [i64; 2],
    pub class: Vec<Int>,
    pub pair: WallPair,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallSearch {
    pub walls: Vec<Wall>,
    /// Doubling the coordinate bound found nothing new and `T` is isotropic,
    /// so every square has finitely many representatives.
    pub exhaustive: bool,
    pub bound: i64,
}

/// Default coordinate bound `4 (|min square| + |det T|)`.
pub fn default_wall_bound(t: &PrimitiveSublattice, pairs: &[WallPair]) -> Result<i64> {
    let det = t.lattice()?.determinant().to_i64().ok_or(Error::Internal("determinant overflow".into()))?;
    let min = pairs.iter().map(|p| p.square).min().unwrap_or(0);
    Ok(4 * (min.abs() + det.abs()))
}

fn gram2(t: &PrimitiveSublattice) -> Result<[i64; 3]> {
    let g = t.gram_matrix();
    let e = |i, j| g[(i, j)].to_i64().ok_or(Error::Internal("gram entry overflow".into()));
    Ok([e(0, 0)?, e(0, 1)?, e(1, 1)?])
}

fn search(t: &PrimitiveSublattice, pairs: &[WallPair], bound: i64) -> Result<Vec<Wall>> {
    let [a, b, c] = gram2(t)?;
    let squares: BTreeSet<i64> = pairs.iter().map(|p| p.square).collect();
    let lat = t.ambient();
    let mut out = Vec::new();
    for x in 0..=bound {
        for y in -bound..=bound {
            // canonical sign: first nonzero coordinate positive
            if x == 0 && y <= 0 {
                continue;
            }
            if x.gcd(&y) != 1 {
                continue;
            }
            let q = a * x * x + 2 * b * x * y + c * y * y;
            if !squares.contains(&q) {
                continue;
            }
            let class = t.vector(&[int(x), int(y)]);
            let div = lat.divisibility(&class)?.to_i64().unwrap_or(0);
            let pair = WallPair { square: q, divisibility: div };
            if pairs.contains(&pair) {
                out.push(Wall { coords: [x, y], class, pair });
            }
        }
    }
    out.sort_by(|u, v| u.pair.cmp(&v.pair).then(u.coords.cmp(&v.coords)));
    Ok(out)
}

fn is_square(x: i64) -> bool {
    x >= 0 && {
        let r = (x as f64).sqrt().round() as i64;
        (r - 1..=r + 1).any(|s| s >= 0 && s * s == x)
    }
}

/// Primitive wall classes of `T` (up to sign) with `(square, div_L)` in
/// `pairs`. For rank 1 the list is empty, since `T` is positive.
///
/// Negative classes always have a positive orthogonal line in a hyperbolic
/// plane, so every returned class cuts the positive cone.
pub fn walls_in_t(t: &PrimitiveSublattice, pairs: &[WallPair], bound: Option<i64>) -> Result<WallSearch> {
    let sig = t.signature()?;
    if sig.positive != 1 {
        return Err(Error::NotHyperbolic);
    }
    match t.rank() {
        1 => return Ok(WallSearch { walls: vec![], exhaustive: true, bound: 0 }),
        2 => {}
        r => return Err(Error::InvalidParameter(format!("rank {r} invariant lattice is not supported"))),
    }
    let bound = match bound {
        Some(b) => b,
        None => default_wall_bound(t, pairs)?,
    };
    let walls = search(t, pairs, bound)?;
    let doubled = search(t, pairs, 2 * bound)?;
    let det = t.lattice()?.determinant().to_i64().unwrap_or(0);
    let exhaustive = walls == doubled && is_square(-det);
    Ok(WallSearch { walls, exhaustive, bound })
}

/// Orbit count of chambers: exact under the separation condition,
/// otherwise an interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitCount {
    Exact(usize),
    Bounds(usize, usize),
}

impl fmt::Display for OrbitCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitCount::Exact(k) => write!(f, "{k}"),
            OrbitCount::Bounds(lo, hi) => write!(f, "[{lo},{hi}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberReport {
    pub gram: Vec<Vec<i64>>,
    pub walls: Vec<Wall>,
    pub chambers: usize,
    pub orbits: OrbitCount,
    /// All walls carry pairwise distinct `(square, divisibility)`.
    pub separation: bool,
    pub exhaustive: bool,
}

/// Chamber count of the positive cone cut by the wall lines.
///
/// Walls are distinct up to sign, hence give distinct lines through a
/// 2-dimensional cone. Orbits equal chambers only when no two walls share
/// their numerical type; then no isometry can exchange chambers.
pub fn count_chambers(t: &PrimitiveSublattice, search: &WallSearch) -> Result<ChamberReport> {
    let g = t.gram_matrix();
    let gram = g.to_rows().iter().map(|r| r.iter().map(|x| x.to_i64().unwrap_or(0)).collect()).collect();
    let chambers = search.walls.len() + 1;
    let types: BTreeSet<WallPair> = search.walls.iter().map(|w| w.pair).collect();
    let separation = types.len() == search.walls.len();
    let orbits = if separation { OrbitCount::Exact(chambers) } else { OrbitCount::Bounds(1, chambers) };
    Ok(ChamberReport {
        gram,
        walls: search.walls.clone(),
        chambers,
        orbits,
        separation,
        exhaustive: search.exhaustive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;

    fn wp(v: &[(i64, i64)]) -> Vec<WallPair> {
        v.iter().map(|&(s, d)| WallPair { square: s, divisibility: d }).collect()
    }

    fn row(n: usize, entries: &[(usize, i64)]) -> Vec<i64> {
        let mut r = vec![0; n];
        for &(i, x) in entries {
            r[i] = x;
        }
        r
    }

    #[test]
    fn n5_table() {
        let expect = wp(&[(-2, 1), (-8, 2), (-8, 4), (-8, 8), (-16, 2), (-40, 4), (-72, 8), (-136, 8), (-200, 8)]);
        assert_eq!(wall_pairs(5).unwrap(), expect);
    }

    #[test]
    fn n2_table() {
        assert_eq!(wall_pairs(2).unwrap(), wp(&[(-2, 1), (-2, 2), (-10, 2)]));
    }

    #[test]
    fn search_agrees() {
        for n in 2..=4 {
            let s = wall_pairs_search(n, 12).unwrap();
            assert!(s.stable);
            assert_eq!(s.pairs, wall_pairs(n).unwrap());
        }
    }

    #[test]
    fn toy_plane() {
        let l = Lattice::k3n(3).unwrap();
        let t = PrimitiveSublattice::from_i64(&l, vec![row(23, &[(0, 1), (1, 1)]), row(23, &[(2, 1), (3, -1)])]).unwrap();
        let s = walls_in_t(&t, &wp(&[(-2, 1)]), None).unwrap();
        assert_eq!(s.walls.len(), 1);
        assert_eq!(s.walls[0].coords, [0, 1]);
        assert!(s.exhaustive);
        let r = count_chambers(&t, &s).unwrap();
        assert_eq!((r.chambers, r.orbits), (2, OrbitCount::Exact(2)));
    }

    #[test]
    fn u2_rho2_n5() {
        let l = Lattice::k3n(5).unwrap();
        let t = PrimitiveSublattice::from_i64(&l, vec![row(23, &[(0, 2), (1, 2), (22, 1)]), row(23, &[(1, 1)])]).unwrap();
        let s = walls_in_t(&t, &wall_pairs(5).unwrap(), None).unwrap();
        let types: Vec<WallPair> = s.walls.iter().map(|w| w.pair).collect();
        assert_eq!(types, wp(&[(-8, 2), (-16, 2)]));
        let r = count_chambers(&t, &s).unwrap();
        assert_eq!((r.chambers, r.orbits, r.separation), (3, OrbitCount::Exact(3), true));
    }
}
