use latclass::embeddings::GenusTag;
use latclass::expr::{parse_lattice, Atom, LatticeExpr, Term};
use latclass::finite_form::DEFAULT_GROUP_BOUND;
use latclass::gauss::milgram_signature;
use latclass::linalg::Matrix;
use latclass::mukai::{mukai_pairing, twist, BField, MukaiVector, K3_RANK};
use latclass::sublattice::PrimitiveSublattice;
use latclass::{int, Error, Lattice};
use proptest::prelude::*;

fn atom() -> impl Strategy<Value = Atom> {
    prop_oneof![
        prop::option::of(2i64..7).prop_map(Atom::U),
        prop::option::of(2i64..4).prop_map(Atom::E8),
        (1i64..20, any::<bool>()).prop_map(|(k, neg)| Atom::Diag(if neg { -2 * k } else { 2 * k })),
        (2i64..12).prop_map(Atom::K3n),
        Just(Atom::Mukai),
    ]
}

fn expr() -> impl Strategy<Value = LatticeExpr> {
    prop::collection::vec((prop::option::of(1u64..4), atom()), 1..5)
        .prop_map(|ts| LatticeExpr { terms: ts.into_iter().map(|(multiplicity, atom)| Term { multiplicity, atom }).collect() })
}

/// Small lattices whose discriminant groups stay well inside the bound.
fn small_lattice() -> impl Strategy<Value = Lattice> {
    prop::collection::vec(
        prop_oneof![
            (1i64..5).prop_map(Lattice::scaled_u),
            (1i64..12, any::<bool>()).prop_map(|(k, neg)| Lattice::diagonal(if neg { -2 * k } else { 2 * k }).unwrap()),
            Just(Lattice::e8()),
        ],
        1..4,
    )
    .prop_map(|parts| Lattice::sum(&parts))
    .prop_filter("group within bound", |l| l.discriminant_group().order() <= 512)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn parser_round_trip(e in expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse_lattice(&text).unwrap(), e);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn milgram_congruence(l in small_lattice()) {
        let tag = GenusTag::of(&l);
        prop_assert_eq!(milgram_signature(&tag.form, DEFAULT_GROUP_BOUND).unwrap(), l.signature().mod8());
    }

    #[test]
    fn signature_is_additive(a in small_lattice(), b in small_lattice()) {
        let s = a.direct_sum(&b);
        prop_assert_eq!(s.signature().positive, a.signature().positive + b.signature().positive);
        prop_assert_eq!(s.signature().negative, a.signature().negative + b.signature().negative);
        prop_assert_eq!(s.discriminant_group().order(), a.discriminant_group().order() * b.discriminant_group().order());
    }

    #[test]
    fn discriminant_order_is_determinant(l in small_lattice()) {
        let det = l.determinant();
        prop_assert_eq!(int(l.discriminant_group().order() as i64), if det < int(0) { -det } else { det });
    }

    #[test]
    fn isotropic_quotient_order(l in small_lattice()) {
        let a = l.discriminant_group();
        prop_assume!(a.order() <= 64);
        for h in a.subgroups(DEFAULT_GROUP_BOUND).unwrap() {
            if a.is_isotropic(&h) {
                let q = a.perp_mod(&h, DEFAULT_GROUP_BOUND).unwrap();
                prop_assert_eq!(q.order() * h.order() * h.order(), a.order());
            }
        }
    }

    #[test]
    fn complement_is_involutive(v in prop::collection::vec(-4i64..5, 5), w in prop::collection::vec(-4i64..5, 5)) {
        let ambient = Lattice::sum(&[Lattice::u(), Lattice::u(), Lattice::diagonal(-4).unwrap()]);
        let rows = vec![v.iter().map(|&x| int(x)).collect::<Vec<_>>(), w.iter().map(|&x| int(x)).collect()];
        let s = match latclass::sublattice::saturation(&ambient, &Matrix::from_rows(rows)) {
            Ok(s) => s,
            Err(Error::DependentRows) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        let back: PrimitiveSublattice = s.complement().complement();
        prop_assert_eq!(back.rank(), s.rank());
        for r in s.basis().row_iter() {
            prop_assert!(back.contains(r));
        }
    }

    #[test]
    fn twist_preserves_squares(
        r in -4i64..5,
        s in -6i64..7,
        h in prop::collection::vec(-3i64..4, K3_RANK),
        b in prop::collection::vec(-1i64..2, K3_RANK),
    ) {
        let v = MukaiVector::from_i64(r, &h, s).unwrap();
        let field = BField::from_doubled(b.into_iter().map(int).collect()).unwrap();
        match twist(&v, &field) {
            Ok(w) => prop_assert_eq!(mukai_pairing(&w, &w), mukai_pairing(&v, &v)),
            Err(Error::NonIntegralTwist) => {}
            Err(e) => panic!("{e}"),
        }
    }
}
