//! Seeded random generators and the randomized law suites behind the
//! `laws` subcommand. Every suite is a pure function of (seed, iters):
//! rerunning with the same arguments reproduces the same diagrams, the
//! same checks, and the same first counterexample.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagram::Diagram;
use crate::dsl::print_diagram;
use crate::error::{Error, Result};
use crate::optic::{horiz_element, FillOrder, ObjPair, Optic};
use crate::signature::{HoleSpec, ObjectWord, Signature};

/// How many times a slice draw may be rejected before the diagram is
/// considered complete at its current depth.
const REJECTION_ATTEMPTS: usize = 32;

pub fn suite_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform word over the signature's atoms with length in `min..=max`.
pub fn random_word(
    rng: &mut ChaCha8Rng,
    sig: &Arc<Signature>,
    min_len: usize,
    max_len: usize,
) -> ObjectWord {
    let atoms = sig.atoms();
    let len = rng.gen_range(min_len..=max_len);
    ObjectWord::new(
        (0..len)
            .map(|_| atoms[rng.gen_range(0..atoms.len())].clone())
            .collect(),
    )
}

/// Well-typed diagram on `dom` with at most `max_slices` slices, built by
/// rejection sampling: draw a generator and an offset uniformly, keep the
/// slice only if the generator's domain sits at that offset.
pub fn random_diagram(
    rng: &mut ChaCha8Rng,
    sig: &Arc<Signature>,
    dom: ObjectWord,
    max_slices: usize,
) -> Result<Diagram> {
    let target = rng.gen_range(0..=max_slices);
    let mut d = Diagram::identity(sig, dom)?;
    'slices: for _ in 0..target {
        let w = d.cod().clone();
        for _ in 0..REJECTION_ATTEMPTS {
            let gi = rng.gen_range(0..sig.generators().len());
            let g = &sig.generators()[gi];
            if g.dom.len() > w.len() {
                continue;
            }
            let off = rng.gen_range(0..=w.len() - g.dom.len());
            if !w.segment_matches(off, &g.dom) {
                continue;
            }
            let name = g.name.clone();
            d = d.compose(&Diagram::generator(sig, &name, w, off)?)?;
            continue 'slices;
        }
        break;
    }
    Ok(d)
}

/// Well-typed optic on the signature: a random forward diagram, a hole
/// window chosen inside its codomain, and a random backward diagram.
pub fn random_optic(rng: &mut ChaCha8Rng, sig: &Arc<Signature>, slot: u32) -> Result<Optic> {
    let dom = random_word(rng, sig, 0, 3);
    let f = random_diagram(rng, sig, dom, 3)?;
    let cod = f.cod().clone();
    let x = rng.gen_range(0..=cod.len());
    let in_len = rng.gen_range(0..=cod.len() - x);
    let in_type = cod.slice(x, x + in_len);
    let out_type = random_word(rng, sig, 0, 2);
    let spec = HoleSpec::new(slot, in_type, out_type.clone());
    let g_dom = cod.splice(x, in_len, &out_type);
    let g = random_diagram(rng, sig, g_dom, 3)?;
    Optic::new(&f, x, &spec, &g)
}

/// Random optic whose hole boundary is exactly `target`, so an optic with
/// source `target` plugs into it. The forward diagram is whiskered until
/// its codomain carries `target.fwd` as a segment.
pub fn random_optic_with_hole(
    rng: &mut ChaCha8Rng,
    sig: &Arc<Signature>,
    slot: u32,
    target: &ObjPair,
) -> Result<Optic> {
    let f0_dom = random_word(rng, sig, 0, 2);
    let f0 = random_diagram(rng, sig, f0_dom, 2)?;
    let left = random_word(rng, sig, 0, 1);
    let right = random_word(rng, sig, 0, 1);
    let f = f0.whisker(&left, &target.fwd.tensor(&right))?;
    let x = left.len() + f0.cod().len();
    let spec = HoleSpec::new(slot, target.fwd.clone(), target.bwd.clone());
    let g_dom = f.cod().splice(x, target.fwd.len(), &target.bwd);
    let g = random_diagram(rng, sig, g_dom, 2)?;
    Optic::new(&f, x, &spec, &g)
}

/// Walk a few random adjacent swaps; illegal positions are skipped, so the
/// result is always congruent to the input.
pub fn scramble(rng: &mut ChaCha8Rng, d: &Diagram, attempts: usize) -> Diagram {
    let mut cur = d.clone();
    for _ in 0..attempts {
        if cur.slices().len() < 2 {
            break;
        }
        let i = rng.gen_range(0..cur.slices().len() - 1);
        if let Ok(next) = cur.swap_adjacent(i) {
            cur = next;
        }
    }
    cur
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub iters: usize,
    /// Individual assertions evaluated before the run ended.
    pub checks: usize,
    pub passed: bool,
    pub counterexample: Option<String>,
}

struct SuiteRun {
    checks: usize,
    counterexample: Option<String>,
}

impl SuiteRun {
    fn new() -> Self {
        SuiteRun { checks: 0, counterexample: None }
    }

    /// Record one assertion; returns false once a counterexample is held.
    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(witness());
        }
        self.counterexample.is_none()
    }

    fn into_report(self, suite: &str, seed: u64, iters: usize) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            seed,
            iters,
            checks: self.checks,
            passed: self.counterexample.is_none(),
            counterexample: self.counterexample,
        }
    }
}

/// Normal forms agree with the exact class minimum, congruence is an
/// equivalence, and it respects composition and whiskering.
fn diagram_suite(seed: u64, iters: usize, budget: usize) -> Result<SuiteRun> {
    let sig = Signature::demo();
    let mut rng = suite_rng(seed);
    let mut run = SuiteRun::new();
    for it in 0..iters {
        let dom = random_word(&mut rng, &sig, 0, 3);
        let d = random_diagram(&mut rng, &sig, dom, 5)?;
        let nf = d.normal_form_with_budget(budget)?;
        let gf = d.greedy_form();
        if !run.check(gf.slices() == nf.slices(), || {
            format!(
                "iter {it}: greedy form {} differs from exact minimum {} for {}",
                print_diagram(&gf),
                print_diagram(&nf),
                print_diagram(&d)
            )
        }) {
            break;
        }

        let s1 = scramble(&mut rng, &d, 6);
        let s2 = scramble(&mut rng, &s1, 6);
        let refl = d.equal_with_budget(&d, budget)?;
        let fwd = d.equal_with_budget(&s1, budget)?;
        let sym = s1.equal_with_budget(&d, budget)?;
        let trans = d.equal_with_budget(&s2, budget)?;
        if !run.check(refl && fwd && sym && trans, || {
            format!(
                "iter {it}: equivalence failure (refl {refl}, fwd {fwd}, sym {sym}, trans {trans}) on {}",
                print_diagram(&d)
            )
        }) {
            break;
        }

        if !run.check(
            nf.slices() == s1.normal_form_with_budget(budget)?.slices(),
            || {
                format!(
                    "iter {it}: normal form is not a class invariant: {} vs {}",
                    print_diagram(&d),
                    print_diagram(&s1)
                )
            },
        ) {
            break;
        }

        let e = random_diagram(&mut rng, &sig, d.cod().clone(), 2)?;
        let comp = d.compose(&e)?.equal_with_budget(&s1.compose(&e)?, budget)?;
        if !run.check(comp, || {
            format!(
                "iter {it}: composing congruent diagrams with {} broke congruence: {}",
                print_diagram(&e),
                print_diagram(&d)
            )
        }) {
            break;
        }

        let l = random_word(&mut rng, &sig, 0, 1);
        let r = random_word(&mut rng, &sig, 0, 1);
        let wh = d.whisker(&l, &r)?.equal_with_budget(&s1.whisker(&l, &r)?, budget)?;
        if !run.check(wh, || {
            format!(
                "iter {it}: whiskering by ({l}, {r}) broke congruence: {}",
                print_diagram(&d)
            )
        }) {
            break;
        }
    }
    Ok(run)
}

/// Plugging is associative and unital under optic equality.
fn optic_suite(seed: u64, iters: usize, _budget: usize) -> Result<SuiteRun> {
    let sig = Signature::demo();
    let mut rng = suite_rng(seed);
    let mut run = SuiteRun::new();
    for it in 0..iters {
        let o3 = random_optic(&mut rng, &sig, 3)?;
        let o2 = random_optic_with_hole(&mut rng, &sig, 2, &o3.src())?;
        let o1 = random_optic_with_hole(&mut rng, &sig, 1, &o2.src())?;

        let left = o1.plug(&o2)?.plug(&o3)?;
        let right = o1.plug(&o2.plug(&o3)?)?;
        let assoc = left.equal(&right)?;
        if !run.check(assoc, || {
            format!(
                "iter {it}: (o1.o2).o3 = {} but o1.(o2.o3) = {}",
                print_diagram(left.under()),
                print_diagram(right.under())
            )
        }) {
            break;
        }
        if !run.check(right.equal(&left)?, || {
            format!("iter {it}: optic equality is asymmetric on {}", print_diagram(left.under()))
        }) {
            break;
        }

        // identity at the hole reuses the hole's slot label so the
        // substituted comb is literally the original
        let idd = Optic::identity(&sig, &o1.dst(), o1.slot())?;
        let runit = o1.plug(&idd)?.equal(&o1)?;
        if !run.check(runit, || {
            format!("iter {it}: plugging the identity changed {}", print_diagram(o1.under()))
        }) {
            break;
        }
        let ids = Optic::identity(&sig, &o1.src(), 9)?;
        let lunit = ids.plug(&o1)?.equal(&o1)?;
        if !run.check(lunit, || {
            format!("iter {it}: plugging into the identity changed {}", print_diagram(o1.under()))
        }) {
            break;
        }
    }
    Ok(run)
}

/// Side-by-side fills: the two evaluation orders agree exactly when one
/// fill is central.
fn order_suite(seed: u64, iters: usize, budget: usize) -> Result<SuiteRun> {
    let sig = Signature::demo();
    let mut rng = suite_rng(seed);
    let mut run = SuiteRun::new();
    for it in 0..iters {
        let fa = {
            let dom = random_word(&mut rng, &sig, 1, 2);
            random_diagram(&mut rng, &sig, dom, 3)?
        };
        let fb = {
            let dom = random_word(&mut rng, &sig, 1, 2);
            random_diagram(&mut rng, &sig, dom, 3)?
        };
        let x = random_word(&mut rng, &sig, 0, 1);
        let y = random_word(&mut rng, &sig, 0, 1);
        let z = random_word(&mut rng, &sig, 0, 1);

        let ambient = x.tensor(fa.dom()).tensor(&y).tensor(fb.dom()).tensor(&z);
        let f = Diagram::identity(&sig, ambient)?;
        let a = HoleSpec::new(0, fa.dom().clone(), fa.cod().clone());
        let b = HoleSpec::new(1, fb.dom().clone(), fb.cod().clone());
        let g_dom = x.tensor(fa.cod()).tensor(&y).tensor(fb.cod()).tensor(&z);
        let g = Diagram::identity(&sig, g_dom)?;
        let elem = horiz_element(&f, x.len(), &a, y.len(), &b, &g, FillOrder::AB)?;

        let mut fills = BTreeMap::new();
        fills.insert(0u32, fa.clone());
        fills.insert(1u32, fb.clone());
        let r_ab = elem.comb().eval(&fills, &[0, 1])?;
        let r_ba = elem.comb().eval(&fills, &[1, 0])?;
        let agree = r_ab.equal_with_budget(&r_ba, budget)?;
        let expect = fa.is_central() || fb.is_central();
        if !run.check(agree == expect, || {
            format!(
                "iter {it}: fills {} and {} (central {}/{}) gave AB {} vs BA {} with equal = {agree}",
                print_diagram(&fa),
                print_diagram(&fb),
                fa.is_central(),
                fb.is_central(),
                print_diagram(&r_ab),
                print_diagram(&r_ba)
            )
        }) {
            break;
        }
    }
    Ok(run)
}

pub const SUITES: &[&str] = &["diagram", "optic", "order"];

/// Run a named law suite. `"all"` chains the three suites and reports the
/// first counterexample found.
pub fn run_suite(suite: &str, seed: u64, iters: usize, budget: usize) -> Result<SuiteReport> {
    match suite {
        "diagram" => Ok(diagram_suite(seed, iters, budget)?.into_report(suite, seed, iters)),
        "optic" => Ok(optic_suite(seed, iters, budget)?.into_report(suite, seed, iters)),
        "order" => Ok(order_suite(seed, iters, budget)?.into_report(suite, seed, iters)),
        "all" => {
            let mut checks = 0;
            for name in SUITES {
                let rep = run_suite(name, seed, iters, budget)?;
                checks += rep.checks;
                if !rep.passed {
                    return Ok(SuiteReport {
                        suite: format!("all (failed in {name})"),
                        seed,
                        iters,
                        checks,
                        passed: false,
                        counterexample: rep.counterexample,
                    });
                }
            }
            Ok(SuiteReport {
                suite: suite.to_string(),
                seed,
                iters,
                checks,
                passed: true,
                counterexample: None,
            })
        }
        other => Err(Error::mismatch(format!(
            "unknown suite {other:?}; expected one of diagram, optic, order, all"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_seed_deterministic() {
        let sig = Signature::demo();
        let mut r1 = suite_rng(11);
        let mut r2 = suite_rng(11);
        let draw = |rng: &mut ChaCha8Rng| {
            let w = random_word(rng, &sig, 0, 3);
            random_diagram(rng, &sig, w, 5).unwrap()
        };
        for _ in 0..20 {
            let d1 = draw(&mut r1);
            let d2 = draw(&mut r2);
            assert_eq!(d1.dom(), d2.dom());
            assert_eq!(d1.slices(), d2.slices());
        }
        let mut r3 = suite_rng(12);
        let mut diverged = false;
        for _ in 0..20 {
            let d1 = draw(&mut r1);
            let d3 = draw(&mut r3);
            if d1.dom() != d3.dom() || d1.slices() != d3.slices() {
                diverged = true;
            }
        }
        assert!(diverged, "distinct seeds should produce distinct streams");
    }

    #[test]
    fn random_optics_compose_along_prescribed_boundaries() {
        let sig = Signature::demo();
        let mut rng = suite_rng(5);
        for _ in 0..30 {
            let inner = random_optic(&mut rng, &sig, 3).unwrap();
            let outer = random_optic_with_hole(&mut rng, &sig, 1, &inner.src()).unwrap();
            assert_eq!(outer.dst(), inner.src());
            outer.plug(&inner).unwrap();
        }
    }

    #[test]
    fn all_three_suites_pass() {
        for name in SUITES {
            let rep = run_suite(name, 7, 60, 200_000).unwrap();
            assert!(rep.passed, "suite {name} failed: {:?}", rep.counterexample);
            assert!(rep.checks >= 60, "suite {name} ran only {} checks", rep.checks);
        }
    }

    #[test]
    fn the_combined_suite_aggregates_checks() {
        let rep = run_suite("all", 7, 25, 200_000).unwrap();
        assert!(rep.passed);
        let solo: usize = SUITES
            .iter()
            .map(|n| run_suite(n, 7, 25, 200_000).unwrap().checks)
            .sum();
        assert_eq!(rep.checks, solo);
    }

    #[test]
    fn order_suite_sees_both_agreeing_and_differing_instances() {
        // replicate the sampling to confirm the suite exercises both the
        // central-agreement branch and the noncentral-divergence branch
        let sig = Signature::demo();
        let mut rng = suite_rng(7);
        let mut central = 0;
        let mut noncentral = 0;
        for _ in 0..60 {
            let fa = {
                let dom = random_word(&mut rng, &sig, 1, 2);
                random_diagram(&mut rng, &sig, dom, 3).unwrap()
            };
            let fb = {
                let dom = random_word(&mut rng, &sig, 1, 2);
                random_diagram(&mut rng, &sig, dom, 3).unwrap()
            };
            let _ = random_word(&mut rng, &sig, 0, 1);
            let _ = random_word(&mut rng, &sig, 0, 1);
            let _ = random_word(&mut rng, &sig, 0, 1);
            if fa.is_central() || fb.is_central() {
                central += 1;
            } else {
                noncentral += 1;
            }
        }
        assert!(central > 5, "only {central} agreeing instances");
        assert!(noncentral > 5, "only {noncentral} differing instances");
    }

    #[test]
    fn unknown_suites_are_rejected() {
        let err = run_suite("frobnicate", 1, 1, 1000).unwrap_err();
        assert_eq!(err.kind(), "TypeMismatch");
    }
}
