use clap::ValueEnum;
use gkforge_core::construction::{build, verify_seven, ConstructionState, ProviderSpec, Schedule};
use gkforge_core::decomposition::{verify_absorption, verify_direct_sum, verify_recursion, BinaryDecomposition};
use gkforge_core::ideal::{
    verify_growth, verify_ideal, verify_oracle, verify_sufficient, verify_witnesses, window_exponent, EOracle,
};
use gkforge_core::nil::{bwifi_fault, verify_bwifi, verify_enumeration};
use gkforge_core::report::{Check, Report};
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Thm2,
    Lemma5,
    Lemma6,
    Thm7,
    Ideal,
    Thm8,
    Bwifi,
    Oracle,
    Growth,
    Witness,
    Enumerate,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Perturb π on one word so that condition 6 breaks at the level above F.
    Cond6,
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub max_degree: usize,
    pub seed: u64,
    pub onset: u32,
    pub i: u32,
    pub max_m: usize,
    pub fault: Option<Fault>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { max_degree: 12, seed: 0, onset: 2, i: 2, max_m: 6, fault: None }
    }
}

pub const SAMPLES_PER_DEGREE: usize = 200;
pub const ENUMERATION_COUNT: usize = 100;

/// Levels the suite needs on the main state.
pub fn required_power(suite: Suite, opts: &SuiteOptions) -> usize {
    let e_level = |n: usize| window_exponent(n.max(1)) + 1;
    match suite {
        Suite::Thm2 | Suite::All => 6.max(e_level(opts.max_degree)),
        Suite::Lemma5 | Suite::Lemma6 | Suite::Thm7 | Suite::Growth => e_level(opts.max_degree),
        Suite::Ideal => e_level(opts.max_degree),
        Suite::Thm8 | Suite::Oracle => e_level(opts.max_degree.min(6)),
        Suite::Witness => 5,
        Suite::Bwifi | Suite::Enumerate => 0,
    }
}

fn merge(name: &str, reports: impl IntoIterator<Item = Report>) -> Report {
    let mut out = Report::new(name);
    for r in reports {
        out.extend(r);
    }
    out
}

pub fn thm2(state: &ConstructionState) -> Vec<Report> {
    let top = state.max_pow().min(6);
    let main = merge("thm2", (0..top).map(|n| verify_seven(state, n)));
    let mut scaled = match build(&Schedule::scaled(2, &[], ProviderSpec::None), 5) {
        Ok(s) => {
            let mut r = merge("thm2-scaled", (0..=4).map(|n| verify_seven(&s, n)));
            let fired = s.cases_fired();
            r.push(Check::new(
                "cases fired",
                fired.len() == 3,
                format!("cases {:?} executed", fired.iter().collect::<Vec<_>>()),
            ));
            for line in s.provenance() {
                r.note(line);
            }
            r
        }
        Err(e) => {
            let mut r = Report::new("thm2-scaled");
            r.push(Check::fail("build", e.to_string()));
            r
        }
    };
    scaled.label("non-paper constants");
    vec![main, scaled]
}

pub fn lemma5(state: &ConstructionState, max_j: usize) -> Report {
    let parts: Vec<Report> = (1..=max_j).into_par_iter().map(|j| verify_direct_sum(state, j)).collect();
    merge("lemma5", parts)
}

pub fn lemma6(state: &ConstructionState, max_j: usize) -> Report {
    let pairs: Vec<(usize, usize)> =
        (1..=max_j).flat_map(|j| (1..BinaryDecomposition::new(j).len()).map(move |t| (j, t))).collect();
    let parts: Vec<Report> = pairs.par_iter().map(|&(j, t)| verify_recursion(state, j, t)).collect();
    let mut r = merge("lemma6", parts);
    if r.checks.is_empty() {
        r.push(Check::pass("lemma6", "no admissible split"));
    }
    r
}

pub fn thm7(state: &ConstructionState, max_total: usize) -> Report {
    let pairs: Vec<(usize, usize)> = (1..max_total).flat_map(|j| (1..=max_total - j).map(move |t| (j, t))).collect();
    let parts: Vec<Report> = pairs.par_iter().map(|&(j, t)| verify_absorption(state, j, t)).collect();
    merge("thm7", parts)
}

pub fn ideal(state: &ConstructionState, max_n: usize) -> Report {
    let o = EOracle::new(state);
    merge("ideal", (1..max_n.max(2)).map(|n| verify_ideal(&o, n)))
}

pub fn bwifi(opts: &SuiteOptions) -> Report {
    let mut rep = Report::new("bwifi");
    let level = (1usize << opts.i) + 1;
    let pow = opts.max_m.max(level);
    let sched = Schedule::scaled(opts.onset, &[opts.i], ProviderSpec::Random { seed: opts.seed });
    let state = match sched.validate().and_then(|_| build(&sched, pow)) {
        Ok(s) => s,
        Err(e) => {
            rep.push(Check::fail("bwifi", format!("scaled build failed: {e}")));
            return rep;
        }
    };
    if let Some(f) = state.f_space(opts.i) {
        rep.note(format!("mock F_{} of dimension {} in degree {}", opts.i, f.dim(), f.degree()));
    }
    let faulted = bwifi_fault(&state, opts.i);
    match opts.fault {
        Some(Fault::Cond6) => match &faulted {
            Some(bad) => rep.extend(verify_bwifi(bad, opts.i, opts.max_m)),
            None => rep.push(Check::fail("fault injection", "no F to perturb")),
        },
        None => {
            rep.extend(verify_bwifi(&state, opts.i, opts.max_m));
            let c = match &faulted {
                Some(bad) => {
                    let r = verify_bwifi(bad, opts.i, opts.max_m);
                    let w = r.failures().find(|c| c.witness.get("revalidated").is_some_and(|v| v == "true"));
                    match w {
                        Some(c) => Check::pass("fault detection", format!("condition-6 fault flagged by `{}`", c.name)),
                        None => Check::fail("fault detection", "a condition-6 fault went unnoticed"),
                    }
                }
                None => Check::pass("fault detection", "no F supplied; nothing to perturb"),
            };
            rep.push(c);
        }
    }
    rep
}

pub fn run_suite(suite: Suite, state: &ConstructionState, opts: &SuiteOptions) -> Vec<Report> {
    let d = opts.max_degree;
    let o = || EOracle::new(state);
    match suite {
        Suite::Thm2 => thm2(state),
        Suite::Lemma5 => vec![lemma5(state, d)],
        Suite::Lemma6 => vec![lemma6(state, d)],
        Suite::Thm7 => vec![thm7(state, d)],
        Suite::Ideal => vec![ideal(state, d)],
        Suite::Thm8 => vec![verify_sufficient(&o(), d.min(6), SAMPLES_PER_DEGREE, opts.seed)],
        Suite::Oracle => vec![verify_oracle(&o(), d.min(6))],
        Suite::Growth => vec![verify_growth(&o(), d)],
        Suite::Witness => vec![verify_witnesses(&o(), 4.min(state.max_pow().saturating_sub(1)))],
        Suite::Enumerate => vec![verify_enumeration(state.field(), ENUMERATION_COUNT)],
        Suite::Bwifi => vec![bwifi(opts)],
        Suite::All => {
            let parts = [
                Suite::Thm2,
                Suite::Lemma5,
                Suite::Lemma6,
                Suite::Thm7,
                Suite::Ideal,
                Suite::Thm8,
                Suite::Oracle,
                Suite::Growth,
                Suite::Witness,
                Suite::Enumerate,
                Suite::Bwifi,
            ];
            let out: Vec<Vec<Report>> = parts.par_iter().map(|&s| run_suite(s, state, opts)).collect();
            out.into_iter().flatten().collect()
        }
    }
}
