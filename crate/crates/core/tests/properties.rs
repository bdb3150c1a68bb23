use gkforge_core::construction::{build, ConstructionState, Schedule};
use gkforge_core::ideal::EOracle;
use gkforge_core::subspace::dense::DenseSpace;
use gkforge_core::{word_from_index, word_index, Field, GradedSubspace, Poly, Word};
use proptest::prelude::*;
use std::sync::OnceLock;

fn state() -> &'static ConstructionState {
    static S: OnceLock<ConstructionState> = OnceLock::new();
    S.get_or_init(|| build(&Schedule::default(), 4).unwrap())
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..3, 0..=max).prop_map(Word::from_letters)
}

fn homogeneous_word(n: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..3, n).prop_map(Word::from_letters)
}

fn poly(field: Field, max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((word(max_deg), -6i64..6), 0..6)
        .prop_map(move |ts| Poly::from_terms(field, ts.into_iter().map(|(w, c)| (w, field.from_i64(c)))))
}

fn homogeneous(field: Field, n: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((homogeneous_word(n), 1i64..5), 1..5)
        .prop_map(move |ts| Poly::from_terms(field, ts.into_iter().map(|(w, c)| (w, field.from_i64(c)))))
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::GF2), Just(Field::Prime { p: 3 }), Just(Field::Prime { p: 7 }), Just(Field::Rational)]
}

proptest! {
    #[test]
    fn ring_axioms((a, b, c) in fields().prop_flat_map(|f| (poly(f, 3), poly(f, 3), poly(f, 3)))) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(b.add(&c).mul(&a), b.mul(&a).add(&c.mul(&a)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn display_parses_back(p in poly(Field::Rational, 4)) {
        prop_assert_eq!(Poly::parse(&p.to_string(), Field::Rational).unwrap(), p);
    }

    #[test]
    fn word_index_round_trip(w in word(12)) {
        prop_assert_eq!(word_from_index(w.degree(), &word_index(&w)).unwrap(), w);
    }

    #[test]
    fn components_reassemble(p in poly(Field::Prime { p: 5 }, 4)) {
        let mut acc = Poly::zero(p.field());
        for (n, c) in p.homogeneous_components() {
            prop_assert_eq!(c.homogeneous_degree(), Some(n));
            acc = acc.add(&c);
        }
        prop_assert_eq!(acc, p);
    }

    #[test]
    fn sum_and_intersection_dimensions(
        a in prop::collection::vec(homogeneous(Field::GF2, 3), 0..6),
        b in prop::collection::vec(homogeneous(Field::GF2, 3), 0..6),
    ) {
        let sa = GradedSubspace::span(Field::GF2, &a, 3).unwrap();
        let sb = GradedSubspace::span(Field::GF2, &b, 3).unwrap();
        let s = sa.sum(&sb).unwrap();
        let i = sa.intersect(&sb).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), sa.dim() + sb.dim());
        let da = DenseSpace::from_subspace(&sa).unwrap();
        let db = DenseSpace::from_subspace(&sb).unwrap();
        prop_assert!(da.sum(&db).same_as(&s).unwrap());
        prop_assert!(da.intersect(&db).unwrap().same_as(&i).unwrap());
    }

    #[test]
    fn membership_is_componentwise(a in (1usize..=3).prop_flat_map(|n| homogeneous(Field::GF2, n)), b in homogeneous(Field::GF2, 4)) {
        let o = EOracle::new(state());
        let expect = o.e_membership(&a).unwrap().member && o.e_membership(&b).unwrap().member;
        prop_assert_eq!(o.e_membership(&a.add(&b)).unwrap().member, expect);
    }

    #[test]
    fn fast_criterion_matches_context_images(p in (1usize..=6).prop_flat_map(|n| homogeneous(Field::GF2, n))) {
        let d = p.homogeneous_degree().unwrap();
        let o = EOracle::new(state());
        let fast = o.homogeneous_membership(&p, d).unwrap();
        let generic = o.generic_membership(&p, d).unwrap();
        prop_assert_eq!(fast.member, generic.member);
        if let Some(w) = generic.witness {
            prop_assert!(o.revalidate(&w).unwrap());
        }
    }

    #[test]
    fn e_is_closed_under_letters(n in 1usize..=5, k in any::<u64>(), side in any::<bool>(), l in 0u8..3) {
        let o = EOracle::new(state());
        let e = o.e_subspace(n).unwrap();
        let basis = e.basis(1 << 12).unwrap();
        prop_assume!(!basis.is_empty());
        let r = &basis[(k % basis.len() as u64) as usize];
        let lw = Word::from_letters(vec![l]);
        let p = if side { r.left_mul_word(&lw) } else { r.right_mul_word(&lw) };
        prop_assert!(o.e_membership(&p).unwrap().member);
    }
}
