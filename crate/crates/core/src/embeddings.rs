//! Primitive embeddings: discriminant-form classification of rank one
//! sources, genus tags, explicit vector searches and the Mukai embedding.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::finite_form::{Elem, FiniteQuadraticForm};
use crate::gauss::milgram_signature;
use crate::lattice::{is_primitive, Lattice, Signature};
use crate::linalg::{ldl_definite, Matrix};
use crate::{int, Int, IntMatrix};

/// Genus data: signature plus discriminant form up to isometry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusTag {
    pub signature: Signature,
    pub form: FiniteQuadraticForm,
}

impl GenusTag {
    pub fn of(l: &Lattice) -> Self {
        GenusTag { signature: l.signature(), form: l.discriminant_group() }
    }

    /// Two tags describe the same genus of even lattices.
    pub fn same_genus(&self, other: &GenusTag, bound: u64) -> Result<bool> {
        Ok(self.signature == other.signature && self.form.is_isomorphic(&other.form, bound)?)
    }
}

/// Whether `l` lies in the genus described by `tag`.
pub fn genus_match(l: &Lattice, tag: &GenusTag, bound: u64) -> Result<bool> {
    GenusTag::of(l).same_genus(tag, bound)
}

/// One class of primitive embeddings `<2k> -> N`, described by the glue data
/// and the genus of the orthogonal complement.
#[derive(Clone, Debug)]
pub struct Rank1EmbeddingClass {
    pub source_square: i64,
    /// Order of the glue subgroup `H_S` of `A_<2k>`.
    pub subgroup_order: u64,
    /// Generator of `H_S` in `A_<2k>` and its image in `A_N`.
    pub glue: Option<(Elem, Elem)>,
    pub complement: GenusTag,
}

/// Classify primitive embeddings of `<2k>` into `target` via glue data.
///
/// Classes are deduplicated by glue order and complement form.
pub fn rank1_embedding_classes(k: i64, target: &Lattice, bound: u64) -> Result<Vec<Rank1EmbeddingClass>> {
    let source = Lattice::diagonal(2 * k)?;
    let src_sig = source.signature();
    let comp_sig = target.signature().checked_sub(&src_sig).ok_or_else(|| {
        Error::SignatureObstruction(format!("{} does not fit in {}", src_sig, target.signature()))
    })?;
    let comp_rank = comp_sig.rank();
    let qs = source.discriminant_group();
    let qn = target.discriminant_group();
    let sum = qs.negated().direct_sum(&qn);
    let an = qn.elements(bound)?;
    let mut out: Vec<Rank1EmbeddingClass> = Vec::new();
    for h in qs.subgroups(bound)? {
        let gen = h.generators().first().cloned();
        let images: Vec<Option<Elem>> = match &gen {
            None => vec![None],
            Some(g) => {
                let ord = qs.element_order(g);
                let val = qs.q(g);
                an.iter()
                    .filter(|y| qn.element_order(y) == ord && qn.q(y) == val)
                    .map(|y| Some(y.clone()))
                    .collect()
            }
        };
        for img in images {
            let gamma: Vec<Elem> = match (&gen, &img) {
                (Some(g), Some(y)) => {
                    let mut e = g.clone();
                    e.extend(y.iter().copied());
                    vec![e]
                }
                _ => vec![],
            };
            let graph = sum.span(&gamma);
            let comp = sum.perp_mod(&graph, bound)?;
            if comp.length() > comp_rank {
                continue;
            }
            if comp_rank == 0 {
                if comp.order() != 1 {
                    continue;
                }
            } else if comp_rank == 1 {
                let c = comp.order() as i64 * if comp_sig.positive == 1 { 1 } else { -1 };
                if c % 2 != 0 {
                    continue;
                }
                let cand = Lattice::diagonal(c)?.discriminant_group();
                if !cand.is_isomorphic(&comp, bound)? {
                    continue;
                }
            }
            match milgram_signature(&comp, bound) {
                Ok(s) if s == comp_sig.mod8() => {}
                _ => continue,
            }
            let tag = GenusTag { signature: comp_sig, form: comp };
            let mut dup = false;
            for c in &out {
                if c.subgroup_order == h.order() && c.complement.same_genus(&tag, bound)? {
                    dup = true;
                    break;
                }
            }
            if !dup {
                out.push(Rank1EmbeddingClass {
                    source_square: 2 * k,
                    subgroup_order: h.order(),
                    glue: gen.clone().zip(img.clone()),
                    complement: tag,
                });
            }
        }
    }
    Ok(out)
}

/// Region for explicit vector searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchRegion {
    /// Complete enumeration; only valid for definite lattices.
    Exhaustive,
    /// Coordinates bounded by the given absolute value.
    Box(i64),
}

/// Result of a vector search, flagged when the search may have missed vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSearch {
    pub vectors: Vec<Vec<Int>>,
    pub exhaustive: bool,
}

fn canonical_sign(v: &mut [Int]) {
    if let Some(x) = v.iter().find(|x| !x.is_zero()) {
        if x.is_negative() {
            for c in v.iter_mut() {
                *c = -c.clone();
            }
        }
    }
}

/// Primitive vectors of square `m`, up to sign (first nonzero coordinate
/// positive), sorted. Definite lattices are always enumerated completely.
pub fn vectors_of_square(lat: &Lattice, m: i64, region: SearchRegion) -> Result<VectorSearch> {
    let sig = lat.signature();
    let n = lat.rank();
    let raw: Vec<Vec<i64>> = if sig.negative == 0 || sig.positive == 0 {
        let flip = if sig.positive == 0 { -1 } else { 1 };
        let target = m * flip;
        if target <= 0 {
            return Ok(VectorSearch { vectors: vec![], exhaustive: true });
        }
        let g = lat.gram().map(|x| x.to_f64().unwrap() * flip as f64);
        short_vectors(&g, target as f64)
    } else {
        let b = match region {
            SearchRegion::Exhaustive => return Err(Error::IndefiniteWithoutBox),
            SearchRegion::Box(b) => b,
        };
        let mut out = Vec::new();
        let mut x = vec![-b; n];
        if n > 0 {
            loop {
                out.push(x.clone());
                let mut i = 0;
                loop {
                    if i == n {
                        break;
                    }
                    x[i] += 1;
                    if x[i] <= b {
                        break;
                    }
                    x[i] = -b;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
        out
    };
    let exhaustive = sig.negative == 0 || sig.positive == 0;
    let mut vecs: Vec<Vec<Int>> = raw
        .into_iter()
        .map(|x| x.into_iter().map(int).collect::<Vec<Int>>())
        .filter(|v: &Vec<Int>| !v.iter().all(Zero::is_zero) && is_primitive(v) && lat.square(v) == int(m))
        .map(|mut v| {
            canonical_sign(&mut v);
            v
        })
        .collect();
    vecs.sort();
    vecs.dedup();
    Ok(VectorSearch { vectors: vecs, exhaustive })
}

/// All integer `x` with `x^T g x <= bound` for positive definite `g`
/// (Fincke-Pohst with a small safety margin; callers filter exactly).
fn short_vectors(g: &Matrix<f64>, bound: f64) -> Vec<Vec<i64>> {
    let n = g.rows();
    let (d, mu) = ldl_definite(g).expect("definite lattice");
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    fn rec(i: usize, rem: f64, x: &mut Vec<i64>, d: &[f64], mu: &Matrix<f64>, out: &mut Vec<Vec<i64>>) {
        let n = d.len();
        let c: f64 = -(i + 1..n).map(|j| mu[(i, j)] * x[j] as f64).sum::<f64>();
        let r = (rem.max(0.0) / d[i]).sqrt() + 1e-7;
        let lo = (c - r).ceil() as i64;
        let hi = (c + r).floor() as i64;
        for v in lo..=hi {
            x[i] = v;
            let t = v as f64 - c;
            let rem2 = rem - d[i] * t * t;
            if rem2 < -1e-6 {
                continue;
            }
            if i == 0 {
                out.push(x.clone());
            } else {
                rec(i - 1, rem2, x, d, mu, out);
            }
        }
        x[i] = 0;
    }
    if n > 0 {
        rec(n - 1, bound + 1e-6, &mut x, &d, &mu, &mut out);
    }
    out
}

/// Embedding of `L_n` into the Mukai lattice as `v^perp`.
///
/// Returns the image basis (rows, coordinates of the Mukai lattice) and `v`,
/// with `delta -> e4 - (n-1) f4` and `v = e4 + (n-1) f4`.
pub fn embed_k3n_in_mukai(n: i64) -> Result<(IntMatrix, Vec<Int>)> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n = {n} must be at least 2")));
    }
    let mut rows = Vec::with_capacity(23);
    for i in 0..23 {
        let mut r = vec![int(0); 24];
        match i {
            0..=5 => r[i] = int(1),
            6..=21 => r[i + 2] = int(1),
            _ => {
                r[6] = int(1);
                r[7] = int(-(n - 1));
            }
        }
        rows.push(r);
    }
    let mut v = vec![int(0); 24];
    v[6] = int(1);
    v[7] = int(n - 1);
    Ok((Matrix::from_rows(rows), v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_form::{DEFAULT_GROUP_BOUND, Q64};

    #[test]
    fn e8_roots() {
        let r = vectors_of_square(&Lattice::e8(), -2, SearchRegion::Exhaustive).unwrap();
        assert_eq!(r.vectors.len(), 120);
        assert!(r.exhaustive);
    }

    #[test]
    fn four_in_two_two() {
        let n = Lattice::sum(&[Lattice::diagonal(2).unwrap(), Lattice::diagonal(2).unwrap()]);
        let classes = rank1_embedding_classes(2, &n, DEFAULT_GROUP_BOUND).unwrap();
        assert_eq!(classes.len(), 1);
        let expect = FiniteQuadraticForm::cyclic(4, Q64::new(1, 4)).unwrap();
        assert!(classes[0].complement.form.is_isomorphic(&expect, 100).unwrap());
        let vs = vectors_of_square(&n, 4, SearchRegion::Exhaustive).unwrap();
        assert_eq!(vs.vectors, vec![vec![int(1), int(-1)], vec![int(1), int(1)]]);
    }

    #[test]
    fn indefinite_needs_box() {
        assert_eq!(
            vectors_of_square(&Lattice::u(), 2, SearchRegion::Exhaustive),
            Err(Error::IndefiniteWithoutBox)
        );
        let r = vectors_of_square(&Lattice::u(), 2, SearchRegion::Box(3)).unwrap();
        assert_eq!(r.vectors, vec![vec![int(1), int(1)]]);
        assert!(!r.exhaustive);
    }

    #[test]
    fn mukai_embedding_is_isometric() {
        let (b, v) = embed_k3n_in_mukai(5).unwrap();
        let m = Lattice::mukai();
        let g = m.gram().congruent(&b);
        assert_eq!(&g, Lattice::k3n(5).unwrap().gram());
        assert_eq!(m.square(&v), int(8));
        assert!(b.row_iter().all(|r| m.pairing(r, &v).is_zero()));
    }
}
