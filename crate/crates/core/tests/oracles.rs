use gkforge_core::construction::{build, verify_seven, ProviderSpec, Schedule};
use gkforge_core::decomposition::{verify_absorption, verify_direct_sum, verify_recursion};
use gkforge_core::ideal::{verify_oracle, EOracle};
use gkforge_core::nil::{bwifi_fault, verify_bwifi};
use gkforge_core::word::all_words;
use gkforge_core::{Field, Poly};

#[test]
fn generic_membership_matches_generator_space_on_a_non_monomial_level() {
    let s = build(&Schedule::scaled(2, &[2], ProviderSpec::Random { seed: 3 }), 5).unwrap();
    let o = EOracle::new(&s);
    assert!(!o.fast_path(8).unwrap());
    let e = o.e_subspace_generators(8).unwrap();
    let mut outside = 0;
    for w in all_words(8) {
        let p = Poly::word(s.field(), w);
        let m = o.generic_membership(&p, 8).unwrap();
        assert_eq!(m.member, e.contains(&p).unwrap(), "{p}");
        if let Some(w) = m.witness {
            outside += 1;
            assert!(o.revalidate(&w).unwrap());
        }
    }
    assert!(e.dim() + num_bigint::BigUint::from(outside as u32) >= gkforge_core::word::pow3(8));
}

#[test]
fn definition_check_on_default_tower() {
    let s = build(&Schedule::default(), 4).unwrap();
    let r = verify_oracle(&EOracle::new(&s), 6);
    assert!(r.passed(), "{}", r.render_text());
}

#[test]
fn scaled_tower_with_f_satisfies_lemmas() {
    let s = build(&Schedule::scaled(2, &[2], ProviderSpec::Random { seed: 5 }), 5).unwrap();
    for n in 0..5 {
        assert!(verify_seven(&s, n).passed());
    }
    for j in 1..=8 {
        assert!(verify_direct_sum(&s, j).passed(), "{}", verify_direct_sum(&s, j).render_text());
    }
    for (j, t) in [(5, 1), (6, 1), (7, 2)] {
        assert!(verify_recursion(&s, j, t).passed());
        assert!(verify_absorption(&s, j, t).passed());
    }
}

#[test]
fn bwifi_detects_a_factoring_fault() {
    let s = build(&Schedule::scaled(2, &[2], ProviderSpec::Random { seed: 1 }), 6).unwrap();
    let r = verify_bwifi(&s, 2, 5);
    assert!(r.passed(), "{}", r.render_text());
    let bad = bwifi_fault(&s, 2).unwrap();
    let r = verify_bwifi(&bad, 2, 5);
    let failed: Vec<_> = r.failures().collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().any(|c| c.witness.get("revalidated").map(String::as_str) == Some("true")));
}

#[test]
fn gf3_tower_is_consistent() {
    let sched = Schedule { field: Field::Prime { p: 3 }, ..Schedule::default() };
    let s = build(&sched, 4).unwrap();
    for n in 0..4 {
        assert!(verify_seven(&s, n).passed());
    }
    let o = EOracle::new(&s);
    assert_eq!(o.quotient_dim(4).unwrap(), 5u32.into());
}
