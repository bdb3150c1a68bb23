//! Command-line front end: argument parsing, state resolution and command dispatch.
//!
//! [`run`] takes parsed arguments and returns the exit status together with the bytes
//! to print, so tests can drive it without spawning a process.

pub mod output;
pub mod suites;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use gkforge_core::construction::{
    build, parse_provider, ConstructionState, Schedule, ScheduleJson, StateJson, VChoice,
};
use gkforge_core::decomposition::dims_row;
use gkforge_core::ideal::{growth_table, nonnilpotence_witness, window_exponent, EOracle};
use gkforge_core::nil::enumerate;
use gkforge_core::word::pow3;
use gkforge_core::{Field, Poly};
use serde_json::{json, Value};

pub use output::{render_reports, Format, Table};
pub use suites::{run_suite, Fault, Suite, SuiteOptions};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "gkforge",
    version,
    about = "Build and verify the graded subspace tower, W/S/R/Q spaces and the ideal E"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Load a state written by `build --out` instead of rebuilding.
    #[arg(long, global = true)]
    pub state: Option<PathBuf>,
    /// Schedule JSON; flags below override its fields.
    #[arg(long, global = true)]
    pub schedule: Option<PathBuf>,
    /// gf2, gf<p> or q.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Index of the first window.
    #[arg(long, global = true)]
    pub onset: Option<u32>,
    /// Comma-separated indices consuming F (default: every index in the image of θ).
    #[arg(long, global = true, value_delimiter = ',')]
    pub z: Option<Vec<u32>>,
    /// none, random:<seed> or file:<path>.
    #[arg(long, global = true)]
    pub provider: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub v_choice: Option<VChoiceArg>,
    /// Highest level 2^P to build.
    #[arg(long, global = true, default_value_t = 6)]
    pub max_power: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VChoiceArg {
    Lex,
    LexLast,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DimsWhat {
    /// j, dimW, dimS, dimR, dimQ, 3^j
    Blocks,
    /// n, d, D, bound_ok
    Quotient,
    /// Level dimensions of V and U.
    Levels,
    /// Monomials spanning V at each level.
    Basis,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the tower and optionally save it.
    Build {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dimension tables.
    Dims {
        #[arg(long, value_enum, default_value_t = DimsWhat::Blocks)]
        what: DimsWhat,
        /// Inclusive range `a..b`.
        #[arg(long)]
        n_range: Option<String>,
    },
    /// Decide membership in E.
    Member {
        #[arg(long)]
        element: String,
        /// Print the failing context when the element is not in E.
        #[arg(long)]
        witness: bool,
    },
    /// Quotient dimensions and the growth estimate.
    Growth {
        #[arg(long, default_value_t = 16)]
        max_degree: usize,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 12)]
        max_degree: usize,
        /// Window index whose F is checked by the bwifi suite.
        #[arg(long, default_value_t = 2)]
        i: u32,
        /// Largest m+1 for the bwifi suite.
        #[arg(long, default_value_t = 6)]
        max_m: usize,
        #[arg(long, value_enum)]
        inject_fault: Option<Fault>,
    },
    /// A word of V(2^m) outside E and its factorization.
    Witness {
        #[arg(long, required = true)]
        non_nilpotent: bool,
        #[arg(long)]
        m: usize,
    },
    /// The pairs (i, f_i) with i in the image of θ.
    Enumerate {
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
}

/// Result of one invocation: exit status and the bytes for stdout and stderr.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn usage(msg: impl Into<String>) -> Outcome {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {}\n", msg.into()) }
    }
}

type Step<T> = std::result::Result<T, Outcome>;

fn usage_err<E: std::fmt::Display>(e: E) -> Outcome {
    Outcome::usage(e.to_string())
}

pub fn schedule_from(common: &Common) -> Step<Schedule> {
    let mut j: ScheduleJson = match &common.schedule {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Outcome::usage(format!("cannot read schedule {}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| Outcome::usage(format!("bad schedule {}: {e}", p.display())))?
        }
        None => serde_json::from_str("{}").unwrap(),
    };
    if let Some(f) = &common.field {
        j.field = Field::parse(f).map_err(usage_err)?;
    }
    if let Some(o) = common.onset {
        j.onset = o;
    }
    if let Some(z) = &common.z {
        j.z_set = Some(z.clone());
    }
    if let Some(p) = &common.provider {
        parse_provider(p).map_err(usage_err)?;
        j.f_provider = p.clone();
    }
    if let Some(v) = common.v_choice {
        j.v_choice = match v {
            VChoiceArg::Lex => VChoice::Lex,
            VChoiceArg::LexLast => VChoice::LexLast,
        };
    }
    Schedule::from_json(&j).map_err(usage_err)
}

fn load_state(path: &Path) -> Step<ConstructionState> {
    if !path.exists() {
        return Err(Outcome::usage(format!(
            "state file {} does not exist; run `gkforge build --out` first",
            path.display()
        )));
    }
    let text =
        std::fs::read_to_string(path).map_err(|e| Outcome::usage(format!("cannot read {}: {e}", path.display())))?;
    let j: StateJson = serde_json::from_str(&text).map_err(|e| Outcome::usage(format!("bad state file: {e}")))?;
    ConstructionState::from_json(&j).map_err(|e| Outcome::usage(format!("bad state file: {e}")))
}

/// The state for this invocation, built or loaded, covering at least `need` levels.
pub fn resolve_state(common: &Common, need: usize) -> Step<ConstructionState> {
    let pow = common.max_power.max(need);
    if pow > 24 {
        return Err(Outcome::usage(format!("power {pow} exceeds the supported 24")));
    }
    if let Some(p) = &common.state {
        let s = load_state(p)?;
        if s.max_pow() >= pow {
            return Ok(s);
        }
        // Lower levels are a function of the schedule alone, so extending reproduces them.
        return build(s.schedule(), pow).map_err(usage_err);
    }
    build(&schedule_from(common)?, pow).map_err(usage_err)
}

fn parse_range(text: &str) -> Step<(usize, usize)> {
    let bad = || Outcome::usage(format!("bad range `{text}`; expected a..b"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn e_level(n: usize) -> usize {
    window_exponent(n.max(1)) + 1
}

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(o) | Err(o) => o,
    }
}

fn dispatch(cli: &Cli) -> Step<Outcome> {
    let common = &cli.common;
    let fmt = common.format;
    match &cli.command {
        Command::Build { out } => {
            let s = resolve_state(common, 0)?;
            let mut t = Table::new(vec!["level", "degree", "case", "dimV", "monomial"]);
            for n in 0..=s.max_pow() {
                let case = if n == 0 { Value::Null } else { json!(s.steps()[n - 1].case.number()) };
                t.push(vec![
                    json!(n),
                    json!(1u64 << n),
                    case,
                    json!(s.tower().level(n).dim_v()),
                    json!(s.is_monomial(n)),
                ]);
            }
            if let Some(path) = out {
                let text = serde_json::to_string(&s.to_json()).map_err(usage_err)?;
                std::fs::write(path, text)
                    .map_err(|e| Outcome::usage(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(Outcome::ok(t.render(fmt)))
        }
        Command::Dims { what, n_range } => {
            let default = match what {
                DimsWhat::Blocks => "1..12",
                DimsWhat::Quotient => "1..16",
                DimsWhat::Levels | DimsWhat::Basis => "0..5",
            };
            let (a, b) = parse_range(n_range.as_deref().unwrap_or(default))?;
            let t = match what {
                DimsWhat::Blocks => {
                    let s = resolve_state(common, e_level(b))?;
                    let mut t = Table::new(vec!["j", "dimW", "dimS", "dimR", "dimQ", "3^j"]);
                    for j in a.max(1)..=b {
                        let r = dims_row(&s, j).map_err(usage_err)?;
                        t.push(vec![
                            json!(j),
                            json!(r.dim_w),
                            json!(r.dim_s),
                            json!(r.dim_r),
                            json!(r.dim_q),
                            json!(r.total),
                        ]);
                    }
                    t
                }
                DimsWhat::Quotient => {
                    let s = resolve_state(common, e_level(b))?;
                    let g = growth_table(&EOracle::new(&s), b).map_err(usage_err)?;
                    growth_rows(g.rows.iter().filter(|r| r.n >= a))
                }
                DimsWhat::Levels | DimsWhat::Basis => {
                    let s = resolve_state(common, b)?;
                    if *what == DimsWhat::Levels {
                        let mut t = Table::new(vec!["level", "degree", "dimV", "dimU"]);
                        for n in a..=b {
                            let dv = s.tower().level(n).dim_v();
                            t.push(vec![
                                json!(n),
                                json!(1u64 << n),
                                json!(dv),
                                json!((pow3(1 << n) - dv as u32).to_string()),
                            ]);
                        }
                        t
                    } else {
                        let mut t = Table::new(vec!["level", "V"]);
                        for n in a..=b {
                            let words: Vec<String> =
                                s.tower().level(n).v_words().iter().map(|w| w.to_string()).collect();
                            let note = if s.is_monomial(n) { "" } else { " (support; map not monomial)" };
                            t.push(vec![json!(n), json!(format!("{}{note}", words.join(" ")))]);
                        }
                        t
                    }
                }
            };
            Ok(Outcome::ok(t.render(fmt)))
        }
        Command::Member { element, witness } => {
            let field = schedule_field(common)?;
            let p = Poly::parse(element, field).map_err(usage_err)?;
            let top = p.degree().unwrap_or(0);
            let s = resolve_state(common, e_level(top))?;
            if s.field() != field {
                return Err(Outcome::usage(format!("element parsed over {field}, state is over {}", s.field())));
            }
            let m = EOracle::new(&s).e_membership(&p).map_err(usage_err)?;
            let verdict = if m.member { "IN E" } else { "NOT IN E" };
            let text = match fmt {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&json!({
                        "element": p.to_string(),
                        "member": m.member,
                        "witness": m.witness,
                    }))
                    .unwrap();
                    s.push('\n');
                    s
                }
                Format::Csv => {
                    let mut t = Table::new(vec!["element", "member", "n", "j", "left", "right", "image"]);
                    let w = m.witness.as_ref();
                    t.push(vec![
                        json!(p.to_string()),
                        json!(m.member),
                        w.map_or(Value::Null, |w| json!(w.n)),
                        w.map_or(Value::Null, |w| json!(w.j)),
                        w.map_or(Value::Null, |w| json!(w.left.to_string())),
                        w.map_or(Value::Null, |w| json!(w.right.to_string())),
                        w.map_or(Value::Null, |w| json!(w.image)),
                    ]);
                    t.render(Format::Csv)
                }
                Format::Text => {
                    let mut s = format!("{verdict}\n");
                    if let (true, Some(w)) = (*witness, &m.witness) {
                        s.push_str(&format!(
                            "  component {} (degree {}) fails at offset {}: {} · r · {} maps to {}\n",
                            w.element, w.n, w.j, w.left, w.right, w.image
                        ));
                    }
                    s
                }
            };
            Ok(Outcome::ok(text))
        }
        Command::Growth { max_degree } => {
            let s = resolve_state(common, e_level(*max_degree))?;
            let g = growth_table(&EOracle::new(&s), *max_degree).map_err(usage_err)?;
            let t = growth_rows(g.rows.iter());
            let text = match fmt {
                Format::Csv => t.render(Format::Csv),
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&json!({
                        "rows": t.to_json(),
                        "slope": (g.slope * 1e6).round() / 1e6,
                        "caveat": g.caveat,
                    }))
                    .unwrap();
                    s.push('\n');
                    s
                }
                Format::Text => format!("{}slope {:.4}\n{}\n", t.render(Format::Text), g.slope, g.caveat),
            };
            Ok(Outcome::ok(text))
        }
        Command::Verify { suite, max_degree, i, max_m, inject_fault } => {
            let opts = SuiteOptions {
                max_degree: *max_degree,
                seed: common.seed,
                onset: common.onset.unwrap_or(2),
                i: *i,
                max_m: *max_m,
                fault: *inject_fault,
            };
            if *max_degree == 0 {
                return Err(Outcome::usage("--max-degree must be positive"));
            }
            let need = suites::required_power(*suite, &opts);
            let reports = if *suite == Suite::Bwifi {
                vec![suites::bwifi(&opts)]
            } else {
                let s = resolve_state(common, need)?;
                run_suite(*suite, &s, &opts)
            };
            let passed = reports.iter().all(|r| r.passed());
            Ok(Outcome {
                code: if passed { EXIT_OK } else { EXIT_FAILED },
                stdout: render_reports(&reports, fmt),
                stderr: String::new(),
            })
        }
        Command::Witness { m, .. } => {
            let s = resolve_state(common, m + 1)?;
            let w = nonnilpotence_witness(&EOracle::new(&s), *m).map_err(usage_err)?;
            let ok = w.factorization_ok && w.outside_e;
            let factors: Vec<String> = w.factors.iter().map(|f| f.to_string()).collect();
            let text = match fmt {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&w).unwrap();
                    s.push('\n');
                    s
                }
                Format::Csv => {
                    let mut t = Table::new(vec!["m", "word", "factors", "factorization_ok", "outside_e"]);
                    t.push(vec![
                        json!(w.m),
                        json!(w.word.to_string()),
                        json!(factors.join(" ")),
                        json!(w.factorization_ok),
                        json!(w.outside_e),
                    ]);
                    t.render(Format::Csv)
                }
                Format::Text => format!(
                    "{} in V(2^{}) and not in E\nfactors ({}): {}\nfactorization {}, non-membership {}\n",
                    w.word,
                    w.m,
                    factors.len(),
                    factors.join(" "),
                    if w.factorization_ok { "verified" } else { "FAILED" },
                    if w.outside_e { "verified" } else { "FAILED" },
                ),
            };
            Ok(Outcome { code: if ok { EXIT_OK } else { EXIT_FAILED }, stdout: text, stderr: String::new() })
        }
        Command::Enumerate { count } => {
            let field = schedule_field(common)?;
            let mut t = Table::new(vec!["i", "f_i", "t_i", "w_i"]);
            for e in enumerate(field, *count) {
                t.push(vec![json!(e.i), json!(e.f.to_string()), json!(e.t), json!(e.w.to_string())]);
            }
            Ok(Outcome::ok(t.render(fmt)))
        }
    }
}

fn schedule_field(common: &Common) -> Step<Field> {
    if let Some(p) = &common.state {
        return Ok(load_state(p)?.field());
    }
    Ok(schedule_from(common)?.field)
}

fn growth_rows<'a>(rows: impl Iterator<Item = &'a gkforge_core::ideal::GrowthRow>) -> Table {
    let mut t = Table::new(vec!["n", "d", "D", "bound_ok"]);
    for r in rows {
        t.push(vec![json!(r.n), json!(r.d), json!(r.cumulative), json!(r.bound_ok)]);
    }
    t
}

/// Caps the global rayon pool at `GKFORGE_THREADS` when set.
pub fn configure_threads() -> std::result::Result<(), String> {
    let Ok(v) = std::env::var("GKFORGE_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| format!("GKFORGE_THREADS must be a positive integer, got `{v}`"))?;
    if n == 0 {
        return Err("GKFORGE_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}
