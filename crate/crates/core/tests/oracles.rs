//! Independent recomputations of values the library derives.

use std::collections::{BTreeMap, BTreeSet};

use latclass::finite_form::fmt_q;
use latclass::{Lattice, Q64};
use proptest::prelude::*;

fn mod2(q: Q64) -> Q64 {
    let two = Q64::from_integer(2);
    q - two * (q / two).floor()
}

/// Histogram of q-values on `L^v / L` for a binary form, enumerated as
/// `adj(G) y / det` with `y` running over a box of residues.
fn brute_histogram(a: i64, b: i64, c: i64) -> BTreeMap<Q64, usize> {
    let det = a * c - b * b;
    let m = det.abs();
    let adj = [[c, -b], [-b, a]];
    let mut classes = BTreeSet::new();
    let mut out = BTreeMap::new();
    for y0 in 0..m {
        for y1 in 0..m {
            let x = [adj[0][0] * y0 + adj[0][1] * y1, adj[1][0] * y0 + adj[1][1] * y1];
            let key = [x[0].rem_euclid(m), x[1].rem_euclid(m)];
            if classes.insert(key) {
                let q = Q64::new(y0 * x[0] + y1 * x[1], det);
                *out.entry(mod2(q)).or_insert(0) += 1;
            }
        }
    }
    out
}

fn library_histogram(l: &Lattice) -> BTreeMap<Q64, usize> {
    let f = l.discriminant_group();
    let mut out = BTreeMap::new();
    for x in f.elements(1 << 12).unwrap() {
        *out.entry(f.q(&x)).or_insert(0) += 1;
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn binary_discriminant_forms(a in -6i64..7, b in -6i64..7, c in -6i64..7) {
        let det = 4 * a * c - b * b;
        prop_assume!(det != 0 && det.abs() <= 80);
        let l = Lattice::from_i64(vec![vec![2 * a, b], vec![b, 2 * c]]).unwrap();
        prop_assert_eq!(library_histogram(&l), brute_histogram(2 * a, b, 2 * c));
    }
}

#[test]
fn hand_computed_forms() {
    // U(2): x = (1/2, 0), y = (0, 1/2) give q = 0, 0 and b(x, y) = 1/2
    let f = Lattice::scaled_u(2).discriminant_group();
    let vals: Vec<String> = f.gram().row_iter().flat_map(|r| r.iter().map(fmt_q).collect::<Vec<_>>()).collect();
    assert_eq!(f.orders(), [2, 2]);
    assert_eq!(vals, ["0", "1/2", "1/2", "0"]);
    assert_eq!(Lattice::e8().discriminant_group().order(), 1);
    let l3 = Lattice::k3n(3).unwrap();
    assert_eq!((l3.rank(), l3.signature().positive, l3.signature().negative), (23, 3, 20));
    assert_eq!(l3.determinant(), latclass::int(4));
}
