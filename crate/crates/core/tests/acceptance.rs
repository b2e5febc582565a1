//! Acceptance criteria 1 to 10, one line per criterion.
//!
//! Run with `cargo test -p cubetact --test acceptance`. Exits nonzero when a
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cubetact::builtins;
use cubetact::median::random_median_complex;
use cubetact::ra::{Ball, DefiningGraph, GroupKind};
use cubetact::reconstruction::{i0_classes, kernel_subgroup, CliqueAtlas};
use cubetact::verify::{Context, Entry, Instance, SuiteRegistry, VerificationReport};
use cubetact::{ContactFamily, DEFAULT_CLIQUE_CAP, DEFAULT_VERTEX_CAP};

const RANDOM_DIM: usize = 6;
const RANDOM_SEEDS: usize = 5;
const RANDOM_COUNT: u64 = 100;
const HELLY_BUDGET: Duration = Duration::from_secs(60);
const ROUNDTRIP_BUDGET: Duration = Duration::from_secs(120);
const MARGIN: usize = 2;
const BALL_CAP: usize = 20_000;

type Verdict = Result<String, String>;
type Check<'a> = Box<dyn Fn() -> Verdict + 'a>;

fn random_instances() -> Vec<Instance> {
    (1..=RANDOM_COUNT)
        .map(|seed| {
            let cx = random_median_complex(RANDOM_DIM, RANDOM_SEEDS, seed, DEFAULT_VERTEX_CAP).expect("random complex");
            Instance::complex(format!("random/{seed}"), cx)
        })
        .collect()
}

fn builtin_instances() -> Vec<Instance> {
    builtins::COMPLEX_NAMES.iter().map(|n| Instance::complex(*n, builtins::complex(n).unwrap())).collect()
}

fn ball(gamma: &str, kind: GroupKind, radius: usize) -> Ball {
    Ball::build(DefiningGraph::builtin(gamma).unwrap(), kind, radius, BALL_CAP).unwrap()
}

fn ball_instance(gamma: &str, kind: GroupKind, radius: usize) -> Instance {
    Instance::ball(format!("{gamma}/{kind}/R{radius}"), ball(gamma, kind, radius))
}

fn run(suites: &[&str], instances: Vec<Instance>) -> VerificationReport {
    let mut ctx = Context::new(instances);
    ctx.margin = MARGIN;
    let names: Vec<String> = suites.iter().map(|s| s.to_string()).collect();
    SuiteRegistry::default().run(&names, &ctx, false).expect("registered suites")
}

fn entry<'a>(r: &'a VerificationReport, lemma: &str) -> &'a Entry {
    r.suites.iter().flat_map(|s| &s.entries).find(|e| e.lemma_id == lemma).unwrap_or_else(|| panic!("no lemma {lemma}"))
}

/// Every listed lemma was checked on at least `min` instances with no violations.
fn lemmas_hold(r: &VerificationReport, lemmas: &[&str], min: usize) -> Result<usize, String> {
    let mut checked = 0;
    for l in lemmas {
        let e = entry(r, l);
        if e.violation_count > 0 {
            return Err(format!("{l}: {} violations, first {}", e.violation_count, e.violations[0]));
        }
        if e.instances_checked < min {
            return Err(format!("{l}: checked on {} instances, expected at least {min}", e.instances_checked));
        }
        checked += e.instances_checked;
    }
    Ok(checked)
}

fn criterion_1(random: &[Instance]) -> Verdict {
    let start = Instant::now();
    let r = run(&["helly"], random.to_vec());
    let elapsed = start.elapsed();
    lemmas_hold(&r, &["convexity", "helly"], random.len())?;
    let weakened: Vec<&String> = entry(&r, "helly").notes.iter().chain(&entry(&r, "convexity").notes).collect();
    if let Some(n) = weakened.first() {
        return Err(format!("check was weakened: {n}"));
    }
    if elapsed > HELLY_BUDGET {
        return Err(format!("took {elapsed:?}, budget {HELLY_BUDGET:?}"));
    }
    Ok(format!("{} instances, convexity and 4-wise Helly, {:.1}s", random.len(), elapsed.as_secs_f64()))
}

fn criterion_2(random: &[Instance]) -> Verdict {
    let mut inst = random.to_vec();
    inst.extend(builtin_instances());
    let n = inst.len();
    let r = run(&["cliques", "cone-links"], inst);
    lemmas_hold(&r, &["clique-in-some-Wv", "maximal-clique-is-Wv", "dominated-iff-cone"], n)?;
    Ok(format!("{n} instances"))
}

fn criterion_3(random: &[Instance]) -> Verdict {
    let mut inst = random.to_vec();
    inst.extend(builtin_instances());
    let n = inst.len();
    let r = run(&["iw"], inst);
    lemmas_hold(&r, &["iw-characterization", "i0-star", "i0-partition", "iw-dimension"], n)?;
    Ok(format!("{n} instances"))
}

fn kernel_generators(cx: &cubetact::CubeComplex) -> usize {
    let fam = ContactFamily::build(cx, Default::default());
    let atlas = CliqueAtlas::build(cx, &fam, DEFAULT_CLIQUE_CAP).unwrap();
    kernel_subgroup(cx, &fam, &atlas).unwrap().len()
}

fn criterion_4() -> Verdict {
    let square = builtins::complex("SQUARE").unwrap();
    let tripod = builtins::complex("TRIPOD").unwrap();
    let star_eq = ball_instance("STAR_EQ5", GroupKind::Coxeter, 3);
    let c5 = ball_instance("C5", GroupKind::Coxeter, 3);
    let r = run(
        &["kernel"],
        vec![Instance::complex("SQUARE", square.clone()), Instance::complex("TRIPOD", tripod.clone()), star_eq.clone(), c5.clone()],
    );
    lemmas_hold(&r, &["kernel-automorphism", "kernel-in-ker-rho", "kernel-product", "kernel-torsion"], 4)?;
    lemmas_hold(&r, &["kernel-star-equality"], 2)?;
    let (ns, ne, nt) = (kernel_generators(&square), kernel_generators(&star_eq.complex), kernel_generators(&tripod));
    if ns == 0 || ne == 0 {
        return Err(format!("expected kernel generators on SQUARE and STAR_EQ5, found {ns} and {ne}"));
    }
    if nt != 0 {
        return Err(format!("TRIPOD has {nt} kernel generators"));
    }
    let c5_ball = c5.ball.as_ref().unwrap();
    let interior = c5_ball.interior_hyperplanes(MARGIN);
    let big: Vec<Vec<usize>> =
        i0_classes(&c5_ball.complex).unwrap().into_iter().filter(|c| c.len() > 1 && c.iter().any(|&h| interior.contains(h))).collect();
    if !big.is_empty() {
        return Err(format!("C5 interior has non-singleton I0 classes {big:?}"));
    }
    Ok(format!("SQUARE {ns} and STAR_EQ5 R3 {ne} generators; TRIPOD and the C5 interior trivial"))
}

fn criterion_5() -> Verdict {
    let mut parts = Vec::new();
    for (kind, radius) in [(GroupKind::Coxeter, 3), (GroupKind::Artin, 2)] {
        let start = Instant::now();
        let r = run(&["roundtrip"], vec![ball_instance("C5", kind, radius)]);
        let elapsed = start.elapsed();
        lemmas_hold(&r, &["interior-cliques", "roundtrip-edges", "rho-iota"], 1).map_err(|e| format!("C5/{kind}: {e}"))?;
        if elapsed > ROUNDTRIP_BUDGET {
            return Err(format!("C5/{kind} took {elapsed:?}, budget {ROUNDTRIP_BUDGET:?}"));
        }
        parts.push(format!("C5/{kind}/R{radius} {:.1}s", elapsed.as_secs_f64()));
    }
    Ok(parts.join(", "))
}

fn criterion_6(random: &[Instance]) -> Verdict {
    let mut inst = random.to_vec();
    inst.extend(builtin_instances());
    for (g, k, r) in
        [("C5", GroupKind::Coxeter, 3), ("P4", GroupKind::Coxeter, 3), ("F2", GroupKind::Artin, 2), ("K2", GroupKind::Artin, 3)]
    {
        inst.push(ball_instance(g, k, r));
    }
    let n = inst.len();
    let r = run(&["criterion"], inst);
    lemmas_hold(&r, &["criterion-nonadjacent"], n)?;
    Ok(format!("{n} instances"))
}

fn criterion_7() -> Verdict {
    let r = run(&["davis"], vec![ball_instance("P4", GroupKind::Coxeter, 4), ball_instance("C5", GroupKind::Coxeter, 3)]);
    lemmas_hold(&r, &["davis-hypothesis"], 2)?;
    lemmas_hold(&r, &["davis-contact", "davis-rho", "davis-square", "davis-psi"], 1)?;
    let rejected = entry(&r, "davis-hypothesis").notes.iter().any(|n| n.starts_with("C5/") && n.contains("rejected"));
    if !rejected {
        return Err("C5 was not rejected".into());
    }
    let square = entry(&r, "davis-square").notes.first().cloned().unwrap_or_default();
    Ok(format!("P4: {}; C5 rejected", square.trim_start_matches("P4/coxeter/R4: ")))
}

fn criterion_8() -> Verdict {
    let r = run(&["iw"], vec![ball_instance("P4", GroupKind::Coxeter, 4), ball_instance("STAR_EQ5", GroupKind::Coxeter, 4)]);
    lemmas_hold(&r, &["star-inclusion"], 2)?;
    Ok("P4 and STAR_EQ5 at R4".into())
}

fn criterion_9() -> Verdict {
    let r = run(&["twist"], vec![ball_instance("F2", GroupKind::Artin, 3), ball_instance("C5", GroupKind::Artin, 3)]);
    lemmas_hold(&r, &["twist-automorphism", "twist-conjugation"], 2)?;
    Ok("F2 and C5 at R3".into())
}

fn criterion_10() -> Verdict {
    let r = run(&["extension-graph"], vec![ball_instance("C5", GroupKind::Artin, 3), ball_instance("K2", GroupKind::Artin, 3)]);
    lemmas_hold(&r, &["extension-vs-reduced", "extension-quotient"], 2)?;
    lemmas_hold(&r, &["shuffle-syllable", "shuffle-word-metric", "shuffle-extension"], 1)?;
    let notes = &entry(&r, "extension-vs-reduced").notes;
    let c5 = notes.iter().find(|n| n.starts_with("C5/")).cloned().unwrap_or_default();
    if c5.contains("skipped") {
        return Err(c5);
    }
    let witness = entry(&r, "shuffle-word-metric").notes.first().cloned().unwrap_or_default();
    Ok(format!("{c5}; {witness}"))
}

fn main() -> ExitCode {
    let random = random_instances();
    let criteria: Vec<(&str, Check)> = vec![
        ("median convexity and Helly", Box::new(|| criterion_1(&random))),
        ("clique correspondence", Box::new(|| criterion_2(&random))),
        ("I(w) characterization", Box::new(|| criterion_3(&random))),
        ("kernel", Box::new(criterion_4)),
        ("reconstruction roundtrip", Box::new(criterion_5)),
        ("unconditional criterion direction", Box::new(|| criterion_6(&random))),
        ("Davis exotic automorphism", Box::new(criterion_7)),
        ("star inclusion", Box::new(criterion_8)),
        ("halfspace twist", Box::new(criterion_9)),
        ("extension graph and shuffle", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS {title}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {title}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
