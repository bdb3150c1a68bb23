use super::*;
use crate::field::Field;
use crate::word::Word;

fn words(state: &ConstructionState, n: usize) -> Vec<String> {
    state.tower().level(n).v_words().iter().map(Word::to_string).collect()
}

#[test]
fn default_small_levels() {
    let s = build(&Schedule::default(), 3).unwrap();
    assert_eq!(words(&s, 0), ["x", "y"]);
    assert_eq!(words(&s, 1), ["xx", "xy"]);
    assert_eq!(words(&s, 2), ["xxxx", "xxxy"]);
    assert_eq!(words(&s, 3), ["xxxxxxxx", "xxxxxxxy"]);
    assert_eq!(s.u(0).unwrap().excluded().unwrap().len(), 2);
    assert_eq!(s.u(1).unwrap().dim_usize(), Some(7));
    assert!(s.is_monomial(3));
}

#[test]
fn scaled_onset_squares_inside_the_window() {
    let s = build(&Schedule::scaled(2, &[], ProviderSpec::None), 4).unwrap();
    let dims: Vec<usize> = (0..=4).map(|n| s.tower().level(n).dim_v()).collect();
    assert_eq!(dims, [2, 2, 4, 16, 2]);
    assert_eq!(s.cases_fired().into_iter().collect::<Vec<_>>(), [1, 2, 3]);
}

#[test]
fn scaled_with_random_f() {
    let sched = Schedule::scaled(2, &[2], ProviderSpec::Random { seed: 3 });
    let s = build(&sched, 5).unwrap();
    let f = s.f_space(2).unwrap();
    assert!(f.dim_usize().unwrap() >= 1);
    assert!(!s.is_monomial(4));
    for n in 0..=4 {
        let r = verify_seven(&s, n);
        assert!(r.passed(), "{}", r.render_text());
    }
}

#[test]
fn lex_last_choice() {
    let sched = Schedule { v_choice: VChoice::LexLast, ..Schedule::default() };
    let s = build(&sched, 2).unwrap();
    assert_eq!(words(&s, 1), ["yx", "yy"]);
    assert!(verify_seven(&s, 1).passed());
}

#[test]
fn state_round_trip() {
    let sched = Schedule::scaled(2, &[2], ProviderSpec::Random { seed: 11 });
    let s = build(&sched, 5).unwrap();
    let text = serde_json::to_string(&s.to_json()).unwrap();
    let back = ConstructionState::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    for n in 0..=5 {
        assert_eq!(words(&s, n), words(&back, n));
    }
    let w: Word = "xxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxy".parse().unwrap();
    assert_eq!(s.tower().project(5, w.letters()), back.tower().project(5, w.letters()));
}

#[test]
fn condition_five_fault() {
    let s = build(&Schedule::default(), 3).unwrap();
    let v = s.tower().level(2).v_words()[1].clone();
    let bad = s.with_override(2, v, vec![(1, Field::GF2.one())]);
    let r = verify_seven(&bad, 2);
    let c = r.checks.iter().find(|c| c.name.starts_with("cond5")).unwrap();
    assert!(!c.passed);
    assert_eq!(c.witness["element"], "xxxy");
}

#[test]
fn condition_six_fault() {
    let s = build(&Schedule::default(), 3).unwrap();
    let w: Word = "zxxxxxxx".parse().unwrap();
    let bad = s.with_override(3, w, vec![(0, Field::GF2.one())]);
    let r = verify_seven(&bad, 2);
    assert!(r.checks.iter().any(|c| c.name.starts_with("cond6") && !c.passed));
}
