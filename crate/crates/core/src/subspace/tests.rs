use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;

use super::dense::DenseSpace;
use super::*;

const F: Field = Field::GF2;

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn p(s: &str) -> Poly {
    Poly::parse(s, F).unwrap()
}

fn mono(n: usize, ws: &[&str]) -> GradedSubspace {
    GradedSubspace::monomials(F, n, ws.iter().map(|s| w(s))).unwrap()
}

fn dim(s: &GradedSubspace) -> usize {
    s.dim_usize().unwrap()
}

#[test]
fn span_examples() {
    let v1 = GradedSubspace::span(F, &[p("x"), p("y")], 1).unwrap();
    assert_eq!(v1.repr_name(), "monomials");
    assert_eq!(dim(&v1), 2);
    let q = Field::Rational;
    let a = Poly::parse("x+y", q).unwrap();
    assert_eq!(GradedSubspace::span(q, &[a.clone(), a], 1).unwrap().dim_usize(), Some(1));
    assert!(GradedSubspace::span(F, &[], 4).unwrap().is_zero());
    assert!(GradedSubspace::span(F, &[p("x+xy")], 1).is_err());
}

#[test]
fn sum_and_intersection_of_first_level() {
    let v1 = mono(1, &["x", "y"]);
    let u1 = mono(1, &["z"]);
    let h = v1.sum(&u1).unwrap();
    assert_eq!(dim(&h), 3);
    assert!(v1.intersect(&u1).unwrap().is_zero());
    assert_eq!(v1.sum(&GradedSubspace::zero(F, 1)).unwrap(), v1);
    assert_eq!(v1.intersect(&v1).unwrap(), v1);
    assert!(v1.sum(&mono(2, &["xx"])).is_err());
}

#[test]
fn products() {
    let v1 = mono(1, &["x", "y"]);
    let vv = v1.product(&v1).unwrap();
    assert_eq!(vv, mono(2, &["xx", "xy", "yx", "yy"]));
    assert!(v1.product(&GradedSubspace::zero(F, 3)).unwrap().is_zero());
    let h1 = GradedSubspace::full(F, 1);
    let h2 = h1.product(&h1).unwrap();
    assert_eq!(h2, GradedSubspace::full(F, 2));
    assert_eq!(h2.dim(), BigUint::from(9u32));
}

#[test]
fn complements() {
    let a = mono(2, &["xx", "xy"]);
    let within = mono(2, &["xx", "xy", "yx", "yy"]);
    assert_eq!(a.complement(&within, ComplementRule::MonomialLex).unwrap(), mono(2, &["yx", "yy"]));
    assert!(a.complement(&a, ComplementRule::MonomialLex).unwrap().is_zero());
    let h2 = GradedSubspace::full(F, 2);
    let z = GradedSubspace::zero(F, 2);
    assert_eq!(z.complement(&h2, ComplementRule::MonomialLex).unwrap(), h2);
    assert!(matches!(within.complement(&a, ComplementRule::MonomialLex), Err(Error::NotContained)));
}

#[test]
fn membership_examples() {
    let v1 = mono(1, &["x", "y"]);
    assert!(v1.contains(&p("x+y")).unwrap());
    assert!(!v1.contains(&p("z")).unwrap());
    assert!(v1.contains(&Poly::zero(F)).unwrap());
    assert!(v1.contains(&p("xx")).is_err());
}

#[test]
fn comonomial_normalization() {
    let excl: BTreeSet<Word> = [w("xx"), w("xy"), w("yx")].into();
    let rows = vec![vec![(w("xx"), F.one())], vec![(w("xy"), F.one()), (w("yx"), F.one())]];
    let s = GradedSubspace::comonomial(F, 2, excl, rows).unwrap();
    assert_eq!(s.excluded().unwrap().len(), 2);
    assert_eq!(dim(&s), 9 - 2 + 1);
    assert!(s.contains(&p("xx + xy + yx + zz")).unwrap());
    assert!(!s.contains(&p("xy")).unwrap());
}

#[test]
fn json_round_trip() {
    let excl: BTreeSet<Word> = [w("xx"), w("xy")].into();
    let s = GradedSubspace::comonomial(F, 2, excl, vec![vec![(w("xx"), F.one()), (w("xy"), F.one())]]).unwrap();
    let text = serde_json::to_string(&s.to_json()).unwrap();
    let back: SubspaceJson = serde_json::from_str(&text).unwrap();
    assert_eq!(GradedSubspace::from_json(&back).unwrap(), s);
    let e = GradedSubspace::span(F, &[p("xz+zx"), p("zz")], 2).unwrap();
    assert_eq!(GradedSubspace::from_json(&e.to_json()).unwrap(), e);
}

fn dense_of(s: &GradedSubspace) -> DenseSpace {
    DenseSpace::from_subspace(s).unwrap()
}

/// Random subspaces of H(n) in all three representations.
fn arb_subspace(n: usize) -> impl Strategy<Value = GradedSubspace> {
    let m = 3usize.pow(n as u32) as u64;
    let vecs = prop::collection::vec(prop::collection::btree_set(0..m, 1..4), 0..6);
    let excl = prop::collection::btree_set(0..m, 0..(m as usize).min(10));
    (0u8..3, vecs, excl).prop_map(move |(kind, vecs, excl)| {
        let polys: Vec<Poly> = vecs
            .iter()
            .map(|s| Poly::from_terms(F, s.iter().map(|&k| (Word::from_index_u64(n, k), F.one()))))
            .collect();
        match kind {
            0 => GradedSubspace::monomials(F, n, polys.iter().flat_map(|q| q.terms().keys().next().cloned())).unwrap(),
            1 => GradedSubspace::span(F, &polys, n).unwrap(),
            _ => {
                let excl: BTreeSet<Word> = excl.iter().map(|&k| Word::from_index_u64(n, k)).collect();
                let rows = polys.iter().map(|q| q.terms().iter().map(|(a, c)| (a.clone(), c.clone())).collect());
                GradedSubspace::comonomial(F, n, excl, rows).unwrap()
            }
        }
    })
}

fn arb_poly(n: usize) -> impl Strategy<Value = Poly> {
    let m = 3usize.pow(n as u32) as u64;
    prop::collection::btree_set(0..m, 0..5)
        .prop_map(move |s| Poly::from_terms(F, s.into_iter().map(|k| (Word::from_index_u64(n, k), F.one()))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sum_intersection_against_dense(a in arb_subspace(3), b in arb_subspace(3)) {
        let (da, db) = (dense_of(&a), dense_of(&b));
        prop_assert!(da.same_as(&a).unwrap());
        let s = a.sum(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        prop_assert!(da.sum(&db).same_as(&s).unwrap());
        prop_assert!(da.intersect(&db).unwrap().same_as(&i).unwrap());
        prop_assert_eq!(dim(&s) + dim(&i), dim(&a) + dim(&b));
    }

    #[test]
    fn rank_nullity_degree_four(a in arb_subspace(4), b in arb_subspace(4)) {
        let s = a.sum(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        prop_assert_eq!(dim(&s) + dim(&i), dim(&a) + dim(&b));
        prop_assert!(s.contains_sub(&a).unwrap() && s.contains_sub(&b).unwrap());
        prop_assert!(a.contains_sub(&i).unwrap() && b.contains_sub(&i).unwrap());
    }

    #[test]
    fn membership_against_dense(a in arb_subspace(3), f in arb_poly(3)) {
        let d = dense_of(&a);
        prop_assert_eq!(a.contains(&f).unwrap(), d.contains(&d.vector(&f).unwrap()));
    }

    #[test]
    fn containment_against_dense(a in arb_subspace(3), b in arb_subspace(3)) {
        let (da, db) = (dense_of(&a), dense_of(&b));
        let dense_answer = da.sum(&db).rank() == da.rank();
        prop_assert_eq!(a.contains_sub(&b).unwrap(), dense_answer);
        if let Some(wit) = a.find_not_contained(&b).unwrap() {
            prop_assert!(b.contains(&wit).unwrap());
            prop_assert!(!a.contains(&wit).unwrap());
        }
    }

    #[test]
    fn complement_postcondition(a in arb_subspace(3), b in arb_subspace(3)) {
        let within = a.sum(&b).unwrap();
        for rule in [ComplementRule::MonomialLex, ComplementRule::EchelonGreedy] {
            let c = a.complement(&within, rule).unwrap();
            prop_assert!(a.intersect(&c).unwrap().is_zero());
            prop_assert_eq!(a.sum(&c).unwrap(), within.clone());
        }
    }

    #[test]
    fn products_against_dense(a in arb_subspace(1), b in arb_subspace(2)) {
        let prod = a.product(&b).unwrap();
        let mut d = DenseSpace::new(3).unwrap();
        for x in a.basis(100).unwrap() {
            for y in b.basis(100).unwrap() {
                d.insert(d.vector(&x.mul(&y)).unwrap());
            }
        }
        prop_assert!(d.same_as(&prod).unwrap());
        if a.is_monomial() && b.is_monomial() && a.is_finite() && b.is_finite() {
            prop_assert_eq!(dim(&prod), dim(&a) * dim(&b));
        }
    }

    #[test]
    fn representation_round_trip(a in arb_subspace(3), probes in prop::collection::vec(arb_poly(3), 100)) {
        let rows = a.basis(1000).unwrap();
        let b = GradedSubspace::from_rows(F, 3, rows.iter().map(|q| q.terms().iter().map(|(x, c)| (x.clone(), c.clone())).collect()));
        prop_assert_eq!(a.dim(), b.dim());
        for f in &probes {
            prop_assert_eq!(a.contains(f).unwrap(), b.contains(f).unwrap());
        }
    }
}

#[test]
fn rational_sums() {
    let q = Field::Rational;
    let a = GradedSubspace::span(q, &[Poly::parse("x - y", q).unwrap()], 1).unwrap();
    let b = GradedSubspace::span(q, &[Poly::parse("x + y", q).unwrap()], 1).unwrap();
    let s = a.sum(&b).unwrap();
    assert_eq!(s, GradedSubspace::monomials(q, 1, [w("x"), w("y")]).unwrap());
    // Over GF(2) the same two vectors coincide.
    let a2 = GradedSubspace::span(F, &[p("x + y")], 1).unwrap();
    assert_eq!(a2.sum(&a2).unwrap().dim_usize(), Some(1));
}
