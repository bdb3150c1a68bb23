//! Checks of the seven structural conditions at one level of a built construction.

use num_bigint::BigUint;

use crate::construction::build::ConstructionState;
use crate::construction::tower::{add_coords, scale_coords, Coords};
use crate::field::Scalar;
use crate::poly::Poly;
use crate::report::{Check, Report};
use crate::word::{pow3, Word};

/// Largest number of words tested exhaustively for condition 6.
const COND6_CAP: usize = 1 << 17;

/// Conditions 1–5 at level `n`; 6 and 7 for the step `n → n+1` when that level exists.
pub fn verify_seven(state: &ConstructionState, n: usize) -> Report {
    let mut r = Report::new("thm2");
    if state.schedule().is_scaled() {
        r.label("non-paper constants");
    }
    if n > state.max_pow() {
        r.push(Check::fail(format!("level {n}"), format!("only levels through {} are built", state.max_pow())));
        return r;
    }
    r.push(cond1_2(state, n));
    r.push(cond3(state, n));
    r.push(cond4(state, n));
    r.push(cond5(state, n));
    if n < state.max_pow() {
        r.push(cond6(state, n));
        r.push(cond7(state, n));
    } else {
        r.note(format!("conditions 6 and 7 at level {n} need level {} (not built)", n + 1));
    }
    r
}

fn cond1_2(state: &ConstructionState, n: usize) -> Check {
    let s = state.schedule();
    let dim = state.tower().level(n).dim_v();
    match s.window_of(n as u64) {
        None => Check::new(format!("cond1 n={n}"), dim == 2, format!("level outside every window, dim V = {dim}")),
        Some(i) => {
            let (lo, _) = crate::construction::Schedule::window(i);
            let j = n as u64 - lo;
            let want = BigUint::from(1u32) << (1u64 << j);
            Check::new(
                format!("cond2 n={n}"),
                BigUint::from(dim) == want,
                format!("window {i} position {j}: dim V = {dim}, expected {want}"),
            )
        }
    }
}

fn cond3(state: &ConstructionState, n: usize) -> Check {
    let v = state.v(n);
    let ok = v.is_monomial() && v.dim_usize() == Some(state.tower().level(n).dim_v());
    Check::new(format!("cond3 n={n}"), ok, format!("V spanned by {} monomials", state.tower().level(n).dim_v()))
}

fn cond4(state: &ConstructionState, n: usize) -> Check {
    let name = format!("cond4 n={n}");
    let s = state.schedule();
    if !n.is_power_of_two() {
        return Check::pass(name, "not of the form 2^i");
    }
    let i = n.trailing_zeros();
    if i < s.onset || !s.in_z(i) {
        return Check::pass(name, format!("index {i} not in Z"));
    }
    let Some(f) = state.f_space(i) else {
        return Check::pass(name, format!("index {i} in Z, provider supplied no F"));
    };
    let rows = f.finite_rows().unwrap_or_default();
    for row in &rows {
        let img = state.tower().project_row(n, row);
        if !img.is_empty() {
            let p = Poly::from_terms(f.field(), row.iter().cloned());
            return Check::fail(name, format!("an F_{i} basis vector lies outside U"))
                .with("element", p)
                .with("image", coords_text(state, &img));
        }
    }
    Check::pass(name, format!("all {} basis vectors of F_{i} lie in U", rows.len()))
}

fn cond5(state: &ConstructionState, n: usize) -> Check {
    let name = format!("cond5 n={n}");
    let u = match state.u(n) {
        Ok(u) => u,
        Err(e) => return Check::fail(name, format!("U not materialized: {e}")),
    };
    let v = state.v(n);
    let total = pow3(1 << n);
    let sum = v.dim() + u.dim();
    let meet = match v.intersect(&u) {
        Ok(m) => m,
        Err(e) => return Check::fail(name, format!("intersection failed: {e}")),
    };
    if !meet.is_zero() {
        let w = meet.basis(1 << 20).ok().and_then(|b| b.into_iter().next());
        let mut c = Check::fail(name, format!("V ∩ U has dimension {}", meet.dim()));
        if let Some(w) = w {
            c = c.with("element", w);
        }
        return c;
    }
    Check::new(name, sum == total, format!("dim V + dim U = {sum}, 3^{} = {total}, V ∩ U = 0", 1usize << n))
}

/// `H·U(2^n) + U(2^n)·H ⊆ U(2^{n+1})`, i.e. `π_{n+1}` factors through `π_n ⊗ π_n`.
///
/// Words outside the override set agree with the factored map by construction, so the
/// override words (and all of `X_n²` when small enough) are compared with the factored
/// value. A mismatch at `w` yields the witness `w − Σ_c (π_n⊗π_n)(w)_c · p_c`.
fn cond6(state: &ConstructionState, n: usize) -> Check {
    let name = format!("cond6 n={n}");
    let t = state.tower();
    let f = state.field();
    let lower = t.level(n);
    let d = lower.dim_v() as u32;
    let pairs: Vec<Word> =
        lower.v_words().iter().flat_map(|a| lower.v_words().iter().map(move |b| a.concat(b))).collect();
    let values: Vec<Coords> = pairs.iter().map(|w| t.project(n + 1, w.letters())).collect();
    let mut words: Vec<Word> = t.level(n + 1).overrides().keys().cloned().collect();
    let mut exhaustive = false;
    if let Ok(x) = t.support(n) {
        if x.len().saturating_mul(x.len()) <= COND6_CAP {
            words.extend(x.iter().flat_map(|a| x.iter().map(move |b| a.concat(b))));
            exhaustive = true;
        }
    }
    words.sort();
    words.dedup();
    for w in &words {
        let mut factored: Coords = Vec::new();
        let mut expansion: Vec<(Word, Scalar)> = vec![(w.clone(), f.one())];
        for (k, c) in t.project_blocks(&[n, n], w.letters()) {
            let idx = (k[0] * d + k[1]) as usize;
            factored = add_coords(f, &factored, &scale_coords(f, &values[idx], &c));
            expansion.push((pairs[idx].clone(), f.neg(&c)));
        }
        let actual = t.project(n + 1, w.letters());
        if actual != factored {
            let witness = Poly::from_terms(f, expansion);
            let img =
                t.project_row(n + 1, &witness.terms().iter().map(|(a, b)| (a.clone(), b.clone())).collect::<Vec<_>>());
            return Check::fail(name, "an element of H·U + U·H maps outside U(2^{n+1})")
                .with("element", witness)
                .with("image", coords_text(state, &img));
        }
    }
    let scope = if exhaustive { "all of X_n·X_n and perturbed words" } else { "perturbed words" };
    Check::pass(name, format!("π_{} factors through π_{n} ⊗ π_{n} on {} words ({scope})", n + 1, words.len()))
}

fn cond7(state: &ConstructionState, n: usize) -> Check {
    let name = format!("cond7 n={n}");
    let t = state.tower();
    let h = 1usize << n;
    for w in t.level(n + 1).v_words() {
        let (a, b) = (w.slice(0, h), w.slice(h, 2 * h));
        let lower = t.level(n);
        if lower.index_of(a.letters()).is_none() || lower.index_of(b.letters()).is_none() {
            return Check::fail(name, "a V monomial does not split into lower V monomials").with("word", w);
        }
    }
    Check::pass(name, format!("V(2^{}) ⊆ V(2^{n})V(2^{n})", n + 1))
}

fn coords_text(state: &ConstructionState, c: &[(u32, Scalar)]) -> String {
    let f = state.field();
    let parts: Vec<String> = c.iter().map(|(k, x)| format!("{}*e{k}", f.format_scalar(x))).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}
