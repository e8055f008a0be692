//! Classification drivers for involutions of `L_n` with invariant lattice of
//! rank one or two, explicit representatives and the maximal families.
//!
//! Genus-level rows come from glue data. If `S` is 2-elementary, the
//! complement `N` of `S` in the Mukai lattice is a fixed 2-elementary
//! lattice and `T` is the complement of `<2(n-1)>` in `N`. If `T` is
//! 2-elementary, `S` is the complement of `<2(n-1)>` in the complement of
//! `T`. Representatives are then found inside `U + U + <-2(n-1)>` and
//! checked by extending `id_T + (-id_S)` to all of `L_n`.

use std::fmt;

use num_traits::ToPrimitive;

use crate::embeddings::{rank1_embedding_classes, GenusTag};
use crate::error::{Error, Result};
use crate::expr::parse_lattice;
use crate::finite_form::FiniteQuadraticForm;
use crate::involutions::{extend_reflection, DiscriminantAction, LatticeInvolution};
use crate::lattice::Lattice;
use crate::linalg::Matrix;
use crate::sublattice::{orthogonal_complement, PrimitiveSublattice};
use crate::walls::{count_chambers, wall_pairs, walls_in_t, OrbitCount};
use crate::{int, Int};

/// Largest `n` for which the rank-two lists are backed by uniqueness results.
pub const VERIFIED_MAX_N: i64 = 5;

/// Explicit primitive `T` in `L_n` with its involution.
#[derive(Clone, Debug)]
pub struct Representative {
    pub t: PrimitiveSublattice,
    pub involution: LatticeInvolution,
}

/// One `(T, S)` genus pair with a discriminant action.
#[derive(Clone, Debug)]
pub struct Family {
    pub n: i64,
    pub rank: usize,
    pub action: DiscriminantAction,
    /// Short provenance of the glue data.
    pub label: String,
    pub t_name: String,
    pub s_name: String,
    pub t: GenusTag,
    pub s: GenusTag,
    /// A lattice in the genus of `T`.
    pub t_lattice: Lattice,
    /// Backed by genus uniqueness in the verified range.
    pub verified: bool,
    pub representative: Option<Representative>,
}

#[derive(Clone, Debug)]
pub struct Rank1Row {
    pub label: &'static str,
    pub action: DiscriminantAction,
    pub exists: bool,
    pub family: Option<Family>,
}

fn lat(expr: &str) -> Lattice {
    parse_lattice(expr).and_then(|e| e.lattice()).expect("catalogue expression")
}

fn gram(rows: Vec<Vec<i64>>) -> Result<Lattice> {
    Lattice::from_i64(rows)
}

/// Named lattices used to label rows.
fn t_catalogue(n: i64) -> Vec<(String, Lattice)> {
    let d = 2 * (n - 1);
    let mut out = vec![
        ("<2>".to_string(), lat("<2>")),
        (format!("<{d}>"), Lattice::diagonal(d).expect("even")),
        ("U".to_string(), lat("U")),
        ("U(2)".to_string(), lat("U(2)")),
        ("<2> + <-2>".to_string(), lat("<2> + <-2>")),
        (format!("<2> + <{}>", -d), Lattice::sum(&[lat("<2>"), Lattice::diagonal(-d).expect("even")])),
    ];
    // n - 1 = k^2 + 4h with k maximal
    let k = (0..=n).filter(|k| k * k < n && (n - 1 - k * k) % 4 == 0).max();
    if let Some(k) = k {
        let h = (n - 1 - k * k) / 4;
        if let Ok(l) = gram(vec![vec![-2 * h, k], vec![k, 2]]) {
            out.push((format!("[[{}, {k}], [{k}, 2]]", -2 * h), l));
        }
    }
    out.push(("[[2, 4], [4, -2]]".to_string(), gram(vec![vec![2, 4], vec![4, -2]]).expect("valid")));
    out
}

fn s_catalogue(n: i64) -> Vec<(String, Lattice)> {
    let d = 2 * (n - 1);
    let mut out: Vec<(String, Lattice)> = [
        "2*U + 2*E8 + <-2> + <-2>".to_string(),
        format!("2*U + 2*E8 + <{}> + <-2>", -d),
        "2*U + 2*E8 + <-2>".to_string(),
        "U + U(2) + 2*E8 + <-2>".to_string(),
        format!("2*U + 2*E8 + <{}>", -d),
        format!("U + U(2) + 2*E8 + <{}>", -d),
        format!("U + 2*E8 + <2> + <-2> + <{}>", -d),
    ]
    .into_iter()
    .map(|e| {
        let l = lat(&e);
        (e, l)
    })
    .collect();
    if n % 4 == 0 {
        let m = gram(vec![vec![-n / 2, n - 1], vec![n - 1, -d]]).expect("even for n = 0 mod 4");
        out.push((
            format!("2*U + 2*E8 + [[{}, {}], [{}, {}]]", -n / 2, n - 1, n - 1, -d),
            Lattice::sum(&[lat("2*U + 2*E8"), m]),
        ));
    }
    let odd = gram(vec![vec![-2, 1, 0], vec![1, -2, 1], vec![0, 1, 2]]).expect("valid");
    out.push(("U + 2*E8 + [[-2, 1, 0], [1, -2, 1], [0, 1, 2]]".to_string(), Lattice::sum(&[lat("U + 2*E8"), odd])));
    out
}

fn name_of(tag: &GenusTag, catalogue: &[(String, Lattice)], bound: u64) -> Result<String> {
    for (name, l) in catalogue {
        if GenusTag::of(l).same_genus(tag, bound)? {
            return Ok(name.clone());
        }
    }
    Ok(format!("genus {} {}", tag.signature, tag.form))
}

/// A binary lattice in the genus of `tag`, preferring named ones.
///
/// Every class contains a form `2(a x^2 + b xy + c y^2)` with
/// `|b| <= |a| <= |c|` or with `a = 0`, so the search below is complete.
pub fn binary_representative(tag: &GenusTag, n: i64, bound: u64) -> Result<Option<Lattice>> {
    if tag.signature.rank() != 2 {
        return Err(Error::InvalidParameter("binary representative needs rank 2".into()));
    }
    for (_, l) in t_catalogue(n) {
        if l.rank() == 2 && GenusTag::of(&l).same_genus(tag, bound)? {
            return Ok(Some(l));
        }
    }
    let order = tag.form.order() as i64;
    let det_sign = if tag.signature.negative % 2 == 1 { -1 } else { 1 };
    let det = det_sign * order;
    let disc = -det;
    let mut cands: Vec<[i64; 3]> = Vec::new();
    for a in -order..=order {
        if a == 0 {
            if disc > 0 {
                let b = (disc as f64).sqrt().round() as i64;
                if b * b == disc {
                    for c in 0..b.max(1) {
                        cands.push([0, b, c]);
                    }
                }
            }
            continue;
        }
        for b in -a.abs()..=a.abs() {
            let num = b * b - disc;
            if num % (4 * a) == 0 {
                let c = num / (4 * a);
                if c.abs() >= a.abs() {
                    cands.push([a, b, c]);
                }
            }
        }
    }
    for [a, b, c] in cands {
        let l = match gram(vec![vec![2 * a, b], vec![b, 2 * c]]) {
            Ok(l) => l,
            Err(_) => continue,
        };
        if GenusTag::of(&l).same_genus(tag, bound)? {
            return Ok(Some(l));
        }
    }
    Ok(None)
}

/// Coordinates of `U + U + <delta>` (and optionally the third `U`) in `L_n`.
fn sub_coords(wide: bool) -> Vec<usize> {
    if wide {
        vec![0, 1, 2, 3, 4, 5, 22]
    } else {
        vec![0, 1, 2, 3, 22]
    }
}

fn sub_lattice(n: i64, wide: bool) -> Result<Lattice> {
    let mut parts = vec![Lattice::u(), Lattice::u()];
    if wide {
        parts.push(Lattice::u());
    }
    parts.push(Lattice::diagonal(-2 * (n - 1))?);
    Ok(Lattice::sum(&parts))
}

fn lift(rows: &[Vec<i64>], coords: &[usize]) -> Vec<Vec<Int>> {
    rows.iter()
        .map(|r| {
            let mut v = vec![int(0); 23];
            for (x, &c) in r.iter().zip(coords) {
                v[c] = int(*x);
            }
            v
        })
        .collect()
}

struct Target<'a> {
    n: i64,
    t: &'a GenusTag,
    t_gram: &'a Lattice,
    s_form: &'a FiniteQuadraticForm,
    action: DiscriminantAction,
    bound: u64,
}

/// Check a candidate basis of `T` given in sub-lattice coordinates.
fn try_candidate(target: &Target, sub: &Lattice, coords: &[usize], rows: &[Vec<i64>], exact_gram: bool) -> Result<Option<Representative>> {
    let t_sub = match PrimitiveSublattice::from_i64(sub, rows.to_vec()) {
        Ok(t) => t,
        Err(_) => return Ok(None),
    };
    let t_lat = match t_sub.lattice() {
        Ok(l) => l,
        Err(_) => return Ok(None),
    };
    if exact_gram {
        if t_lat.gram() != target.t_gram.gram() {
            return Ok(None);
        }
    } else if !GenusTag::of(&t_lat).same_genus(target.t, target.bound)? {
        return Ok(None);
    }
    // the third U and the E8 copies are unimodular, so the sub-lattice
    // complement already carries the discriminant form of S
    let comp = orthogonal_complement(sub, t_sub.basis());
    let comp_form = comp.lattice()?.discriminant_group();
    if !comp_form.is_isomorphic(target.s_form, target.bound)? {
        return Ok(None);
    }
    let ln = Lattice::k3n(target.n)?;
    let t = PrimitiveSublattice::new(&ln, Matrix::from_rows(lift(rows, coords)))?;
    let s = t.complement();
    let (rho, _) = match extend_reflection(&ln, &s) {
        Ok(x) => x,
        Err(Error::ExtensionObstruction) | Err(Error::ActionNotPlusMinus) => return Ok(None),
        Err(e) => return Err(e),
    };
    if rho.discriminant_action() != target.action && !rho.action_ambiguous() {
        return Ok(None);
    }
    Ok(Some(Representative { t, involution: rho }))
}

fn box_vectors(sub: &Lattice, b: i64, square: i64) -> Vec<Vec<i64>> {
    let k = sub.rank();
    let g: Vec<Vec<i64>> = sub.gram().to_rows().iter().map(|r| r.iter().map(|x| x.to_i64().unwrap_or(0)).collect()).collect();
    let mut out = Vec::new();
    let mut x = vec![-b; k];
    loop {
        let q: i64 = (0..k).map(|i| (0..k).map(|j| x[i] * g[i][j] * x[j]).sum::<i64>()).sum();
        if q == square && x.iter().any(|&c| c != 0) {
            out.push(x.clone());
        }
        let mut i = 0;
        while i < k {
            x[i] += 1;
            if x[i] <= b {
                break;
            }
            x[i] = -b;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    out
}

fn pairing_i64(sub: &Lattice, a: &[i64], b: &[i64]) -> i64 {
    let g = sub.gram();
    let k = a.len();
    (0..k).map(|i| (0..k).map(|j| a[i] * g[(i, j)].to_i64().unwrap_or(0) * b[j]).sum::<i64>()).sum()
}

/// Explicit representative: seeds first, then bounded searches.
fn find_representative(target: &Target, seeds: &[Vec<Vec<i64>>]) -> Result<Option<Representative>> {
    let narrow = sub_lattice(target.n, false)?;
    let nc = sub_coords(false);
    for s in seeds {
        if let Some(r) = try_candidate(target, &narrow, &nc, s, false)? {
            return Ok(Some(r));
        }
    }
    let g = target.t_gram.gram();
    let rank = target.t_gram.rank();
    for (wide, b) in [(false, 2), (false, 3), (true, 1)] {
        let sub = sub_lattice(target.n, wide)?;
        let coords = sub_coords(wide);
        let sq0 = g[(0, 0)].to_i64().unwrap_or(0);
        let first = box_vectors(&sub, b, sq0);
        if rank == 1 {
            for a in &first {
                if let Some(r) = try_candidate(target, &sub, &coords, std::slice::from_ref(a), true)? {
                    return Ok(Some(r));
                }
            }
            continue;
        }
        let sq1 = g[(1, 1)].to_i64().unwrap_or(0);
        let off = g[(0, 1)].to_i64().unwrap_or(0);
        let second = box_vectors(&sub, b, sq1);
        for a in first.iter().filter(|a| a.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)) {
            for c in &second {
                if pairing_i64(&sub, a, c) != off {
                    continue;
                }
                if let Some(r) = try_candidate(target, &sub, &coords, &[a.clone(), c.clone()], true)? {
                    return Ok(Some(r));
                }
            }
        }
    }
    Ok(None)
}

/// Coprime `(x, y)`, `0 <= x <= y`, with `x^2 + y^2 = m`.
pub fn coprime_two_squares(m: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let mut x = 0;
    while 2 * x * x <= m {
        let r = m - x * x;
        let y = (r as f64).sqrt().round() as i64;
        for y in [y - 1, y, y + 1] {
            if y >= x && y * y == r && num_integer::gcd(x, y) == 1 {
                out.push((x, y));
            }
        }
        x += 1;
    }
    out
}

fn rank1_seeds(n: i64) -> Vec<Vec<Vec<i64>>> {
    let m = n - 1;
    let mut seeds = vec![vec![vec![1, 1, 0, 0, 0]]];
    if let Some(y) = (0..m.max(1)).find(|y| (y * y + 1) % m == 0) {
        let k = (y * y + 1) / m;
        seeds.push(vec![vec![m, m * k, 0, 0, y]]);
    }
    if n % 2 == 0 {
        seeds.push(vec![vec![2, n / 2, 0, 0, 1]]);
    }
    seeds
}

fn rank2_seeds(n: i64) -> Vec<Vec<Vec<i64>>> {
    let mut seeds = vec![
        vec![vec![1, 0, 0, 0, 0], vec![0, 1, 0, 0, 0]],
        vec![vec![1, 0, 1, 0, 0], vec![0, 1, 0, 1, 0]],
        vec![vec![1, 1, 0, 0, 0], vec![0, 0, 0, 0, 1]],
        vec![vec![1, 1, 0, 0, 0], vec![0, 0, 1, -1, 0]],
        // delta + (n-1) e1 has divisibility n-1, giving glue of order 4
        vec![vec![0, 0, 1, 1, 0], vec![n - 1, 0, 0, 0, 1]],
    ];
    if n % 2 == 1 {
        seeds.push(vec![vec![2, (n - 1) / 2, 0, 0, 1], vec![0, 1, 0, 0, 0]]);
    }
    seeds
}

#[allow(clippy::too_many_arguments)]
fn build_family(
    n: i64,
    rank: usize,
    action: DiscriminantAction,
    label: String,
    t: GenusTag,
    s: GenusTag,
    t_lattice: Lattice,
    verified: bool,
    seeds: &[Vec<Vec<i64>>],
    bound: u64,
) -> Result<Family> {
    let t_name = name_of(&t, &t_catalogue(n), bound)?;
    let s_name = name_of(&s, &s_catalogue(n), bound)?;
    let target = Target { n, t: &t, t_gram: &t_lattice, s_form: &s.form, action, bound };
    let representative = find_representative(&target, seeds)?;
    Ok(Family { n, rank, action, label, t_name, s_name, t, s, t_lattice, verified, representative })
}

/// The three rank-one families with existence flags.
pub fn classify_rank1(n: i64, bound: u64) -> Result<Vec<Rank1Row>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n = {n} must be at least 2")));
    }
    let d = 2 * (n - 1);
    let seeds = rank1_seeds(n);
    let mut rows = Vec::new();

    // S 2-elementary: S^perp in the Mukai lattice is <2> + <2>
    let s1 = GenusTag::of(&lat("2*U + 2*E8 + <-2> + <-2>"));
    let exists = !coprime_two_squares(n - 1).is_empty();
    let family = if exists {
        let classes = rank1_embedding_classes(n - 1, &lat("<2> + <2>"), bound)?;
        let class = classes.into_iter().next().ok_or_else(|| {
            Error::Internal(format!("two-square decomposition of {} has no glue class", n - 1))
        })?;
        Some(build_family(n, 1, DiscriminantAction::Plus, "1".into(), class.complement, s1, Lattice::diagonal(d)?, true, &seeds, bound)?)
    } else {
        None
    };
    rows.push(Rank1Row { label: "1", action: DiscriminantAction::Plus, exists, family });

    // T 2-elementary: T = <2> and T^perp = U^3 + E8^2 + <-2>
    let classes = rank1_embedding_classes(n - 1, &lat("3*U + 2*E8 + <-2>"), bound)?;
    let s2a = GenusTag::of(&Lattice::sum(&[lat("2*U + 2*E8 + <-2>"), Lattice::diagonal(-d)?]));
    let t2 = GenusTag::of(&lat("<2>"));
    let mut a_row = None;
    let mut b_row = None;
    for c in classes {
        let is_a = c.complement.same_genus(&s2a, bound)?;
        let label = if is_a { "2a" } else { "2b" };
        let f = build_family(n, 1, DiscriminantAction::Minus, label.into(), t2.clone(), c.complement, lat("<2>"), true, &seeds, bound)?;
        if is_a {
            a_row = Some(f);
        } else {
            b_row = Some(f);
        }
    }
    rows.push(Rank1Row { label: "2a", action: DiscriminantAction::Minus, exists: a_row.is_some(), family: a_row });
    rows.push(Rank1Row { label: "2b", action: DiscriminantAction::Minus, exists: b_row.is_some(), family: b_row });
    Ok(rows)
}

/// Rank-two `(T, S)` genus pairs for one discriminant action.
pub fn classify_rank2(n: i64, action: DiscriminantAction, bound: u64) -> Result<Vec<Family>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n = {n} must be at least 2")));
    }
    let verified = n <= VERIFIED_MAX_N;
    let seeds = rank2_seeds(n);
    let mut pairs: Vec<(String, GenusTag, GenusTag)> = Vec::new();
    match action {
        DiscriminantAction::Plus => {
            for (nname, sname) in [("U + <2>", "2*U + 2*E8 + <-2>"), ("U(2) + <2>", "U + U(2) + 2*E8 + <-2>")] {
                let s = GenusTag::of(&lat(sname));
                for c in rank1_embedding_classes(n - 1, &lat(nname), bound)? {
                    pairs.push((format!("N = {nname}, |H| = {}", c.subgroup_order), c.complement, s.clone()));
                }
            }
        }
        DiscriminantAction::Minus => {
            for (tname, perp) in [("U", "3*U + 2*E8"), ("U(2)", "U(2) + 2*U + 2*E8"), ("<2> + <-2>", "2*U + 2*E8 + <2> + <-2>")] {
                let t = GenusTag::of(&lat(tname));
                for c in rank1_embedding_classes(n - 1, &lat(perp), bound)? {
                    pairs.push((format!("T = {tname}, |H| = {}", c.subgroup_order), t.clone(), c.complement));
                }
            }
        }
    }
    let mut out: Vec<Family> = Vec::new();
    for (label, t, s) in pairs {
        let mut dup = false;
        for f in &out {
            if f.t.same_genus(&t, bound)? && f.s.same_genus(&s, bound)? {
                dup = true;
                break;
            }
        }
        if dup {
            continue;
        }
        // a rank-two genus without lattices contributes nothing
        let Some(t_lattice) = binary_representative(&t, n, bound)? else { continue };
        out.push(build_family(n, 2, action, label, t, s, t_lattice, verified, &seeds, bound)?);
    }
    Ok(out)
}

/// Whether the invariant lattice contains a rank-one admissible sublattice,
/// in which case the family lies in the closure of a rank-one family.
pub fn contains_admissible_rank1(rep: &Representative, n: i64, box_bound: i64) -> Result<bool> {
    let t_lat = rep.t.lattice()?;
    let ln = rep.t.ambient().clone();
    for sq in [2, 2 * (n - 1)] {
        let search = crate::embeddings::vectors_of_square(&t_lat, sq, crate::embeddings::SearchRegion::Box(box_bound))?;
        for coords in search.vectors {
            let v = rep.t.vector(&coords);
            let line = PrimitiveSublattice::new(&ln, Matrix::from_rows(vec![v]))?;
            match extend_reflection(&ln, &line.complement()) {
                Ok(_) => return Ok(true),
                Err(Error::ExtensionObstruction) | Err(Error::ActionNotPlusMinus) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(false)
}

/// A family of maximal dimension with its number of components.
#[derive(Clone, Debug)]
pub struct MaximalFamily {
    pub name: String,
    pub family: Family,
    pub dimension: usize,
    pub chambers: usize,
    pub components: OrbitCount,
}

impl fmt::Display for MaximalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {}, components {})", self.name, self.dimension, self.components)
    }
}

/// Family names in the customary notation.
pub fn family_name(f: &Family) -> String {
    let d = 2 * (f.n - 1);
    match f.rank {
        1 if f.label == "1" && f.n > 2 => format!("<{d}>,rho"),
        1 if f.label == "2b" => "<2>,rho_b".into(),
        1 => "<2>,rho_a".into(),
        _ if f.t_name == "U(2)" && f.s_name == format!("U + U(2) + 2*E8 + <{}>", -d) => "U(2),rho_1".into(),
        _ if f.t_name == "U(2)" && f.s_name == format!("2*U + 2*E8 + <{}>", -d) => "U(2),rho_2".into(),
        _ => format!("{} / {}", f.t_name, f.s_name),
    }
}

/// Families of dimension at least 19 that are not contained in the closure
/// of a larger family.
pub fn maximal_families(n: i64, bound: u64) -> Result<Vec<MaximalFamily>> {
    let pairs = wall_pairs(n)?;
    let mut fams: Vec<Family> = Vec::new();
    let push_unique = |fams: &mut Vec<Family>, f: Family| -> Result<()> {
        for g in fams.iter() {
            if g.rank == f.rank && g.t.same_genus(&f.t, bound)? && g.s.same_genus(&f.s, bound)? {
                return Ok(());
            }
        }
        fams.push(f);
        Ok(())
    };
    // rank one first so that at n = 2 the coincident family keeps the name rho_a
    let mut rank1: Vec<Family> = classify_rank1(n, bound)?.into_iter().filter_map(|r| r.family).collect();
    rank1.sort_by_key(|f| f.label != "2a");
    for f in rank1 {
        push_unique(&mut fams, f)?;
    }
    for action in [DiscriminantAction::Plus, DiscriminantAction::Minus] {
        for f in classify_rank2(n, action, bound)? {
            let rep = f.representative.as_ref().ok_or_else(|| {
                Error::Internal(format!("no explicit representative for {} / {}", f.t_name, f.s_name))
            })?;
            if !contains_admissible_rank1(rep, n, 12)? {
                push_unique(&mut fams, f)?;
            }
        }
    }
    let mut out = Vec::new();
    for f in fams {
        let rep = f.representative.as_ref().ok_or_else(|| Error::Internal("missing representative".into()))?;
        let search = walls_in_t(&rep.t, &pairs, None)?;
        let report = count_chambers(&rep.t, &search)?;
        out.push(MaximalFamily {
            name: family_name(&f),
            dimension: 21 - f.rank,
            chambers: report.chambers,
            components: report.orbits,
            family: f,
        });
    }
    out.sort_by(|a, b| a.family.rank.cmp(&b.family.rank).then(a.name.cmp(&b.name)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_form::DEFAULT_GROUP_BOUND;

    #[test]
    fn two_squares() {
        assert_eq!(coprime_two_squares(1), vec![(0, 1)]);
        assert_eq!(coprime_two_squares(5), vec![(1, 2)]);
        assert!(coprime_two_squares(9).is_empty());
        assert!(coprime_two_squares(3).is_empty());
    }

    #[test]
    fn rank1_n3() {
        let rows = classify_rank1(3, DEFAULT_GROUP_BOUND).unwrap();
        let flags: Vec<(&str, bool)> = rows.iter().map(|r| (r.label, r.exists)).collect();
        assert_eq!(flags, vec![("1", true), ("2a", true), ("2b", false)]);
        for r in rows.iter().filter(|r| r.exists) {
            let f = r.family.as_ref().unwrap();
            let rep = f.representative.as_ref().unwrap();
            assert_eq!(rep.involution.discriminant_action(), r.action);
        }
    }

    #[test]
    fn binary_reps() {
        let tag = GenusTag::of(&Lattice::scaled_u(2));
        let l = binary_representative(&tag, 3, DEFAULT_GROUP_BOUND).unwrap().unwrap();
        assert_eq!(l, Lattice::scaled_u(2));
    }
}
