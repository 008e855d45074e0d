//! Command-line surface: diagram operations over the DSL, the randomized
//! law suites, and the finite-category checkers. One command per process,
//! all output through a single writer. Exit codes: 0 for success or a true
//! verdict, 1 for a false verdict or a law violation, 2 for any error,
//! reported as a JSON object with a stable `kind` tag.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::diagram::DEFAULT_BUDGET;
use crate::dsl::{diagram_to_json, parse_diagram, parse_signature, print_diagram};
use crate::error::{Error, Result};
use crate::fincat::{
    canonical_proactions, coyoneda_check, identity_effectful, kleisli_check, make_writer_effectful,
    monoid_cat, monoid_mon, proaction_square_check, promonad_from_ioo, representable,
    representable_embedding, Effectful, Monoid, Promonad,
};
use crate::laws::run_suite;
use crate::optic::{Comb, Optic};
use crate::render::render_dot;
use crate::signature::Signature;

#[derive(Debug, Parser)]
#[command(name = "preopt", about = "premonoidal string-diagram engine", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SigOpt {
    /// Inline signature literal; defaults to the built-in demo signature
    #[arg(long, value_name = "TEXT", conflicts_with = "sig_file")]
    pub sig: Option<String>,

    /// Read the signature from a file
    #[arg(long, value_name = "PATH")]
    pub sig_file: Option<PathBuf>,
}

impl SigOpt {
    fn load(&self) -> Result<Arc<Signature>> {
        let text = match (&self.sig, &self.sig_file) {
            (Some(t), _) => t.clone(),
            (None, Some(p)) => std::fs::read_to_string(p)
                .map_err(|e| Error::mismatch(format!("cannot read {}: {e}", p.display())))?,
            (None, None) => return Ok(Signature::demo()),
        };
        Ok(parse_signature(&text)?.into_arc())
    }
}

#[derive(Debug, Args)]
pub struct BudgetOpt {
    /// State budget for class enumeration (overrides PREOPT_BUDGET)
    #[arg(long)]
    pub budget: Option<usize>,
}

impl BudgetOpt {
    fn resolve(&self) -> Result<usize> {
        resolve_budget(self.budget, std::env::var("PREOPT_BUDGET").ok().as_deref())
    }
}

/// Flag beats environment beats default.
pub fn resolve_budget(flag: Option<usize>, env: Option<&str>) -> Result<usize> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match env {
        Some(s) => s
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::mismatch(format!("PREOPT_BUDGET must be a nonnegative integer, got {s:?}"))),
        None => Ok(DEFAULT_BUDGET),
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and typecheck a diagram literal
    Check {
        #[command(flatten)]
        sig: SigOpt,
        /// Diagram literal, e.g. "A*B | s@0, g@1"
        diagram: String,
    },
    /// Print the least member of the congruence class
    Normalize {
        #[command(flatten)]
        sig: SigOpt,
        #[command(flatten)]
        budget: BudgetOpt,
        diagram: String,
    },
    /// Decide congruence of two parallel diagrams
    Eq {
        #[command(flatten)]
        sig: SigOpt,
        #[command(flatten)]
        budget: BudgetOpt,
        left: String,
        right: String,
    },
    /// Sequential composition of two diagram literals
    Compose {
        #[command(flatten)]
        sig: SigOpt,
        first: String,
        second: String,
    },
    /// Optic composition: plug the inner one-hole comb into the outer hole
    Plug {
        #[command(flatten)]
        sig: SigOpt,
        outer: String,
        inner: String,
    },
    /// Run a randomized law suite deterministically
    Laws {
        /// One of: diagram, optic, order, all
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        iters: usize,
        #[command(flatten)]
        budget: BudgetOpt,
    },
    /// Build a finite example and run its checkers
    Fincat {
        /// writer:M3, writer:Z2, writer:Z3, identity:Z2, identity:Z3, identity:M3
        #[arg(long)]
        example: String,
        /// all, or one of: effectful, interchange, centre, promonad, kleisli, coyoneda, proaction
        #[arg(long, default_value = "all")]
        verify: String,
    },
    /// Emit deterministic DOT for a diagram
    Render {
        #[command(flatten)]
        sig: SigOpt,
        diagram: String,
    },
}

/// Execute a parsed command, writing to `out`; returns the process exit
/// code. Never panics on engine errors: they become the JSON error object.
pub fn run<W: Write>(cli: Cli, out: &mut W) -> i32 {
    match exec(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let obj = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
            let _ = writeln!(out, "{obj}");
            2
        }
    }
}

fn emit<W: Write>(out: &mut W, v: serde_json::Value) -> Result<()> {
    writeln!(out, "{v}").map_err(|e| Error::mismatch(format!("cannot write output: {e}")))
}

fn exec<W: Write>(cmd: Command, out: &mut W) -> Result<i32> {
    match cmd {
        Command::Check { sig, diagram } => {
            let sig = sig.load()?;
            let d = parse_diagram(&sig, &diagram)?;
            let holes: Vec<u32> = d
                .slices()
                .iter()
                .filter_map(|s| match s.kind {
                    crate::diagram::SliceKind::Hole(k) => Some(k),
                    _ => None,
                })
                .collect();
            emit(
                out,
                json!({
                    "ok": true,
                    "dom": d.dom().to_string(),
                    "cod": d.cod().to_string(),
                    "slices": d.slices().len(),
                    "holes": holes,
                    "central": d.is_central(),
                }),
            )?;
            Ok(0)
        }
        Command::Normalize { sig, budget, diagram } => {
            let sig = sig.load()?;
            let budget = budget.resolve()?;
            let d = parse_diagram(&sig, &diagram)?;
            let nf = d.normal_form_with_budget(budget)?;
            emit(
                out,
                json!({
                    "literal": print_diagram(&nf),
                    "diagram": diagram_to_json(&nf),
                    "class_size": d.class_size(budget)?,
                }),
            )?;
            Ok(0)
        }
        Command::Eq { sig, budget, left, right } => {
            let sig = sig.load()?;
            let budget = budget.resolve()?;
            let a = parse_diagram(&sig, &left)?;
            let b = parse_diagram(&sig, &right)?;
            let equal = a.equal_with_budget(&b, budget)?;
            emit(
                out,
                json!({
                    "equal": equal,
                    "class_sizes": [a.class_size(budget)?, b.class_size(budget)?],
                }),
            )?;
            Ok(if equal { 0 } else { 1 })
        }
        Command::Compose { sig, first, second } => {
            let sig = sig.load()?;
            let a = parse_diagram(&sig, &first)?;
            let b = parse_diagram(&sig, &second)?;
            let c = a.compose(&b)?;
            emit(
                out,
                json!({"literal": print_diagram(&c), "diagram": diagram_to_json(&c)}),
            )?;
            Ok(0)
        }
        Command::Plug { sig, outer, inner } => {
            let sig = sig.load()?;
            let o = Optic::from_comb(Comb::from_diagram(parse_diagram(&sig, &outer)?)?)?;
            let i = Optic::from_comb(Comb::from_diagram(parse_diagram(&sig, &inner)?)?)?;
            let res = o.plug(&i)?;
            emit(
                out,
                json!({
                    "literal": print_diagram(res.under()),
                    "diagram": diagram_to_json(res.under()),
                    "slot": res.slot(),
                }),
            )?;
            Ok(0)
        }
        Command::Laws { suite, seed, iters, budget } => {
            let budget = budget.resolve()?;
            let report = run_suite(&suite, seed, iters, budget)?;
            emit(out, serde_json::to_value(&report).expect("report serializes"))?;
            Ok(if report.passed { 0 } else { 1 })
        }
        Command::Fincat { example, verify } => {
            let (checks, ok) = fincat_checks(&example, &verify)?;
            emit(out, json!({"example": example, "verify": verify, "checks": checks, "ok": ok}))?;
            Ok(if ok { 0 } else { 1 })
        }
        Command::Render { sig, diagram } => {
            let sig = sig.load()?;
            let d = parse_diagram(&sig, &diagram)?;
            writeln!(out, "{}", render_dot(&d))
                .map_err(|e| Error::mismatch(format!("cannot write output: {e}")))?;
            Ok(0)
        }
    }
}

// ── fincat examples and checkers ─────────────────────────────────────────

struct CheckLine {
    name: &'static str,
    ok: bool,
    witness: Option<String>,
}

impl CheckLine {
    fn pass(name: &'static str, witness: Option<String>) -> CheckLine {
        CheckLine { name, ok: true, witness }
    }

    fn to_json(&self) -> serde_json::Value {
        match &self.witness {
            Some(w) => json!({"name": self.name, "ok": self.ok, "witness": w}),
            None => json!({"name": self.name, "ok": self.ok}),
        }
    }
}

const FINCAT_CHECKS: &[&str] =
    &["effectful", "interchange", "centre", "promonad", "kleisli", "coyoneda", "proaction"];

fn build_example(example: &str) -> Result<(Effectful, Monoid)> {
    let (kind, mname) = example
        .split_once(':')
        .ok_or_else(|| Error::mismatch(format!("example must look like writer:M3, got {example:?}")))?;
    let monoid = Monoid::by_name(mname)
        .ok_or_else(|| Error::mismatch(format!("unknown monoid {mname:?}; expected M3, Z2 or Z3")))?;
    let eff = match kind {
        // two set sizes keep the object count finite while the tensor
        // stays closed: 0*1 = 0, 1*1 = 1
        "writer" => make_writer_effectful(monoid.clone(), &[0, 1])?.eff,
        "identity" => {
            let cat = monoid_cat(&monoid)?;
            identity_effectful(monoid_mon(&cat)?)?
        }
        other => {
            return Err(Error::mismatch(format!(
                "unknown example kind {other:?}; expected writer or identity"
            )))
        }
    };
    Ok((eff, monoid))
}

/// A law violation is a verdict, anything else is an error.
fn verdict(name: &'static str, r: Result<Option<String>>) -> Result<CheckLine> {
    match r {
        Ok(w) => Ok(CheckLine::pass(name, w)),
        Err(Error::LawViolation { check, witness }) => Ok(CheckLine {
            name,
            ok: false,
            witness: Some(format!("{check}: {witness}")),
        }),
        Err(e) => Err(e),
    }
}

fn fincat_checks(example: &str, verify: &str) -> Result<(Vec<serde_json::Value>, bool)> {
    let wanted: Vec<&str> = match verify {
        "all" => FINCAT_CHECKS.to_vec(),
        one if FINCAT_CHECKS.contains(&one) => vec![one],
        other => {
            return Err(Error::mismatch(format!(
                "unknown verification {other:?}; expected all or one of {FINCAT_CHECKS:?}"
            )))
        }
    };

    let mut lines: Vec<CheckLine> = Vec::new();
    let built = match build_example(example) {
        Ok(pair) => Some(pair),
        Err(Error::LawViolation { check, witness }) => {
            lines.push(CheckLine {
                name: "effectful",
                ok: false,
                witness: Some(format!("{check}: {witness}")),
            });
            None
        }
        Err(e) => return Err(e),
    };

    if let Some((eff, monoid)) = built {
        let mut promonad: Option<Promonad> = None;
        let mut with_promonad = |eff: &Effectful| -> Result<Promonad> {
            if promonad.is_none() {
                promonad = Some(promonad_from_ioo(&eff.j)?);
            }
            Ok(promonad.clone().expect("just built"))
        };
        for name in &wanted {
            let line = match *name {
                "effectful" => CheckLine::pass(
                    "effectful",
                    Some(format!(
                        "{} objects, {} tight arrows, {} loose arrows",
                        eff.c0().object_count(),
                        eff.c0().arrow_count(),
                        eff.c1().arrow_count()
                    )),
                ),
                "interchange" => {
                    let comm = monoid.is_commutative();
                    let loose = eff.mon1.is_monoidal();
                    let witness = if comm {
                        format!("{} is commutative; the loose level is monoidal", monoid.name)
                    } else {
                        let (x, y) = noncommuting_pair(&monoid);
                        format!(
                            "{}.{} = {} but {}.{} = {}; loose interchange fails",
                            monoid.elems[x],
                            monoid.elems[y],
                            monoid.elems[monoid.mul(x, y)],
                            monoid.elems[y],
                            monoid.elems[x],
                            monoid.elems[monoid.mul(y, x)],
                        )
                    };
                    CheckLine { name: "interchange", ok: comm == loose, witness: Some(witness) }
                }
                "centre" => {
                    let central = eff.central_arrows();
                    let image = eff.image();
                    let ok = image.iter().all(|f| central.contains(f));
                    CheckLine {
                        name: "centre",
                        ok,
                        witness: Some(format!(
                            "{} central arrows, image size {}, centre equals image: {}",
                            central.len(),
                            image.len(),
                            eff.centre_equals_image()
                        )),
                    }
                }
                "promonad" => verdict("promonad", with_promonad(&eff).map(|_| None))?,
                "kleisli" => verdict(
                    "kleisli",
                    with_promonad(&eff).and_then(|p| {
                        let rep = kleisli_check(&p)?;
                        Ok(Some(format!("{} kleisli arrows", rep.cat.arrow_count())))
                    }),
                )?,
                "coyoneda" => verdict(
                    "coyoneda",
                    with_promonad(&eff).and_then(|p| coyoneda_check(&p.t).map(|_| None)),
                )?,
                "proaction" => {
                    let p0 = representable(&eff.mon0)?.p;
                    let (p1l, p1r) = canonical_proactions(&eff)?;
                    let el = representable_embedding(&eff);
                    let er = representable_embedding(&eff);
                    let rep = proaction_square_check(&eff.j, &p0, &p1l, &p1r, el, er)?;
                    CheckLine { name: "proaction", ok: rep.ok, witness: rep.witness }
                }
                _ => unreachable!("wanted is filtered against FINCAT_CHECKS"),
            };
            lines.push(line);
        }
    }

    let ok = lines.iter().all(|l| l.ok);
    Ok((lines.iter().map(CheckLine::to_json).collect(), ok))
}

fn noncommuting_pair(m: &Monoid) -> (usize, usize) {
    let n = m.elems.len();
    for x in 0..n {
        for y in 0..n {
            if m.mul(x, y) != m.mul(y, x) {
                return (x, y);
            }
        }
    }
    unreachable!("called only on noncommutative monoids")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn capture(args: &[&str]) -> (i32, String) {
        let cli = Cli::try_parse_from(args).expect("arguments parse");
        let mut buf = Vec::new();
        let code = run(cli, &mut buf);
        (code, String::from_utf8(buf).expect("output is utf-8"))
    }

    #[test]
    fn eq_distinguishes_central_from_noncentral_slides() {
        let (code, out) = capture(&["preopt", "eq", "A*B | s@0, g@1", "A*B | g@1, s@0"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["equal"], serde_json::Value::Bool(true));
        assert_eq!(v["class_sizes"], serde_json::json!([2, 2]));

        let (code, out) = capture(&["preopt", "eq", "A*B | f@0, g@1", "A*B | g@1, f@0"]);
        assert_eq!(code, 1);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["equal"], serde_json::Value::Bool(false));
    }

    #[test]
    fn normalize_prints_the_class_minimum() {
        let (code, out) = capture(&["preopt", "normalize", "A*B | g@1, s@0"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["literal"], serde_json::json!("A*B | s@0, g@1"));
        assert_eq!(v["class_size"], serde_json::json!(2));
    }

    #[test]
    fn errors_become_json_with_exit_2() {
        let (code, out) = capture(&["preopt", "check", "A | g@0"]);
        assert_eq!(code, 2);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["error"]["kind"], serde_json::json!("TypeMismatch"));

        let (code, out) = capture(&["preopt", "check", "A | s@"]);
        assert_eq!(code, 2);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["error"]["kind"], serde_json::json!("SyntaxError"));
    }

    #[test]
    fn laws_subcommand_reports_pass() {
        let (code, out) = capture(&["preopt", "laws", "--suite", "optic", "--seed", "7", "--iters", "20"]);
        assert_eq!(code, 0, "output: {out}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["passed"], serde_json::Value::Bool(true));
        assert_eq!(v["counterexample"], serde_json::Value::Null);
    }

    #[test]
    fn fincat_writer_m3_verifies_all() {
        let (code, out) = capture(&["preopt", "fincat", "--example", "writer:M3"]);
        assert_eq!(code, 0, "output: {out}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["ok"], serde_json::Value::Bool(true));
        let checks = v["checks"].as_array().unwrap();
        assert_eq!(checks.len(), FINCAT_CHECKS.len());
        let inter = checks.iter().find(|c| c["name"] == "interchange").unwrap();
        let witness = inter["witness"].as_str().unwrap();
        assert!(witness.contains("loose interchange fails"), "witness: {witness}");
    }

    #[test]
    fn fincat_identity_m3_reports_the_violation() {
        // a noncommutative monoid is not monoidal, so the degenerate
        // inclusion of it into itself is rejected as an effectful category
        let (code, out) = capture(&["preopt", "fincat", "--example", "identity:M3"]);
        assert_eq!(code, 1, "output: {out}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["ok"], serde_json::Value::Bool(false));
    }

    #[test]
    fn unknown_names_exit_2() {
        let (code, _) = capture(&["preopt", "fincat", "--example", "writer:M4"]);
        assert_eq!(code, 2);
        let (code, _) = capture(&["preopt", "fincat", "--example", "writer:M3", "--verify", "nope"]);
        assert_eq!(code, 2);
        let (code, _) = capture(&["preopt", "laws", "--suite", "nope"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn budget_resolution_prefers_flag_over_environment() {
        assert_eq!(resolve_budget(Some(5), Some("9")).unwrap(), 5);
        assert_eq!(resolve_budget(None, Some("9")).unwrap(), 9);
        assert_eq!(resolve_budget(None, None).unwrap(), DEFAULT_BUDGET);
        assert!(resolve_budget(None, Some("many")).is_err());
    }

    #[test]
    fn render_emits_dot_text() {
        let (code, out) = capture(&["preopt", "render", "A |"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("digraph"), "output: {out}");
    }

    #[test]
    fn plug_composes_one_hole_combs() {
        let (code, out) = capture(&[
            "preopt",
            "plug",
            "A | hole(A,B,1)@0",
            "A | f@0, hole(A,B,2)@0",
        ]);
        assert_eq!(code, 0, "output: {out}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["slot"], serde_json::json!(2));
        assert_eq!(v["literal"], serde_json::json!("A | f@0, hole(A,B,2)@0"));
    }
}
