//! Verification suites, looked up by name in a [`SuiteRegistry`].
//!
//! A suite checks a fixed list of lemmas over every instance in a
//! [`Context`] and records, per lemma, how many instances it looked at and
//! the witnesses of any failure.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::contact::ReducedMode;
use crate::median::CubeComplex;
use crate::ra::{Ball, GroupKind};

mod complex;
mod groups;
mod reconstruct;

pub use complex::{CliquesSuite, ConeLinksSuite, CriterionSuite, HellySuite, InteractionSuite};
pub use groups::{DavisSuite, ExtensionGraphSuite, TwistSuite};
pub use reconstruct::{KernelSuite, RoundtripSuite};

/// Witnesses kept per lemma; the total count is always exact.
pub const MAX_WITNESSES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma {
    pub id: &'static str,
    /// Where the checked statement lives, as a short description.
    pub anchor: &'static str,
}

/// A complex to check, with the ball it came from when there is one.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub complex: CubeComplex,
    pub ball: Option<Ball>,
}

impl Instance {
    pub fn complex(name: impl Into<String>, complex: CubeComplex) -> Self {
        Instance { name: name.into(), complex, ball: None }
    }

    pub fn ball(name: impl Into<String>, ball: Ball) -> Self {
        Instance { name: name.into(), complex: ball.complex.clone(), ball: Some(ball) }
    }

    pub fn ball_of(&self, kind: GroupKind) -> Option<&Ball> {
        self.ball.as_ref().filter(|b| b.kind() == kind)
    }
}

#[derive(Clone, Debug)]
pub struct Context {
    pub instances: Vec<Instance>,
    pub mode: ReducedMode,
    pub clique_cap: usize,
    /// Interior margin for ball instances.
    pub margin: usize,
}

impl Context {
    pub fn new(instances: Vec<Instance>) -> Self {
        Context { instances, mode: ReducedMode::default(), clique_cap: crate::DEFAULT_CLIQUE_CAP, margin: 2 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub lemma_id: &'static str,
    pub anchor: &'static str,
    pub instances_checked: usize,
    pub violation_count: usize,
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Collects results for the lemmas of one suite.
#[derive(Debug)]
pub struct Recorder {
    entries: BTreeMap<&'static str, Entry>,
    order: Vec<&'static str>,
}

impl Recorder {
    pub fn new(lemmas: &[Lemma]) -> Self {
        let entries = lemmas
            .iter()
            .map(|l| {
                let e = Entry {
                    lemma_id: l.id,
                    anchor: l.anchor,
                    instances_checked: 0,
                    violation_count: 0,
                    violations: Vec::new(),
                    notes: Vec::new(),
                };
                (l.id, e)
            })
            .collect();
        Recorder { entries, order: lemmas.iter().map(|l| l.id).collect() }
    }

    fn entry(&mut self, id: &str) -> &mut Entry {
        self.entries.get_mut(id).unwrap_or_else(|| panic!("lemma {id} is not declared by the suite"))
    }

    pub fn checked(&mut self, id: &str) {
        self.entry(id).instances_checked += 1;
    }

    pub fn fail(&mut self, id: &str, instance: &str, witness: impl std::fmt::Display) {
        let e = self.entry(id);
        e.violation_count += 1;
        if e.violations.len() < MAX_WITNESSES {
            e.violations.push(format!("{instance}: {witness}"));
        }
    }

    pub fn note(&mut self, id: &str, instance: &str, text: impl std::fmt::Display) {
        self.entry(id).notes.push(format!("{instance}: {text}"));
    }

    /// Counts one instance and records every witness in `failures`.
    pub fn record<I, T>(&mut self, id: &str, instance: &str, failures: I)
    where
        I: IntoIterator<Item = T>,
        T: std::fmt::Display,
    {
        self.checked(id);
        for f in failures {
            self.fail(id, instance, f);
        }
    }

    pub fn finish(mut self) -> Vec<Entry> {
        self.order.iter().map(|id| self.entries.remove(id).expect("declared")).collect()
    }
}

pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;
    fn lemmas(&self) -> &'static [Lemma];
    /// Ball kinds this suite has something to say about.
    fn kinds(&self) -> &'static [GroupKind] {
        &[GroupKind::Coxeter, GroupKind::Artin]
    }
    fn run(&self, ctx: &Context, rec: &mut Recorder);
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub entries: Vec<Entry>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub instance: String,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn first_violation(&self) -> Option<String> {
        self.suites
            .iter()
            .flat_map(|s| s.entries.iter().map(move |e| (s.suite, e)))
            .find_map(|(s, e)| e.violations.first().map(|v| format!("[{s}/{}] {v}", e.lemma_id)))
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unknown suite {0:?}")]
pub struct UnknownSuite(pub String);

pub struct SuiteRegistry {
    suites: Vec<Box<dyn Suite>>,
}

impl Default for SuiteRegistry {
    fn default() -> Self {
        let mut r = SuiteRegistry::empty();
        r.register(Box::new(HellySuite));
        r.register(Box::new(CliquesSuite));
        r.register(Box::new(ConeLinksSuite));
        r.register(Box::new(InteractionSuite));
        r.register(Box::new(CriterionSuite));
        r.register(Box::new(RoundtripSuite));
        r.register(Box::new(KernelSuite));
        r.register(Box::new(DavisSuite));
        r.register(Box::new(TwistSuite));
        r.register(Box::new(ExtensionGraphSuite));
        r
    }
}

impl SuiteRegistry {
    pub fn empty() -> Self {
        SuiteRegistry { suites: Vec::new() }
    }

    /// Adds a suite, replacing any suite of the same name.
    pub fn register(&mut self, suite: Box<dyn Suite>) {
        self.suites.retain(|s| s.name() != suite.name());
        self.suites.push(suite);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.suites.iter().map(|s| s.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn Suite, UnknownSuite> {
        self.suites.iter().find(|s| s.name() == name).map(|s| s.as_ref()).ok_or_else(|| UnknownSuite(name.into()))
    }

    /// Runs the named suites (all of them when `names` is empty) in
    /// registration order.
    pub fn run(&self, names: &[String], ctx: &Context, timing: bool) -> Result<VerificationReport, UnknownSuite> {
        for n in names {
            self.get(n)?;
        }
        let selected: Vec<&dyn Suite> =
            self.suites.iter().map(|s| s.as_ref()).filter(|s| names.is_empty() || names.iter().any(|n| n == s.name())).collect();
        let mut suites = Vec::new();
        for s in selected {
            let start = Instant::now();
            let mut rec = Recorder::new(s.lemmas());
            s.run(ctx, &mut rec);
            let entries = rec.finish();
            let passed = entries.iter().all(|e| e.violation_count == 0);
            let elapsed_ms = timing.then(|| start.elapsed().as_millis());
            suites.push(SuiteReport { suite: s.name(), entries, passed, elapsed_ms });
        }
        let instance = describe(&ctx.instances);
        let passed = suites.iter().all(|s| s.passed);
        Ok(VerificationReport { instance, suites, passed })
    }
}

fn describe(instances: &[Instance]) -> String {
    let names: Vec<&str> = instances.iter().map(|i| i.name.as_str()).collect();
    if names.len() <= 4 {
        names.join(", ")
    } else {
        format!("{}, ... {} ({} instances)", names[..2].join(", "), names[names.len() - 1], names.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::ra::DefiningGraph;

    fn ball(g: &str, kind: GroupKind, r: usize) -> Instance {
        let b = Ball::build(DefiningGraph::builtin(g).unwrap(), kind, r, 20_000).unwrap();
        Instance::ball(format!("{g}/{kind}/R{r}"), b)
    }

    fn entry<'a>(r: &'a VerificationReport, suite: &str, lemma: &str) -> &'a Entry {
        let s = r.suites.iter().find(|s| s.suite == suite).unwrap();
        s.entries.iter().find(|e| e.lemma_id == lemma).unwrap()
    }

    #[test]
    fn registry_lists_every_suite() {
        let r = SuiteRegistry::default();
        assert_eq!(
            r.names(),
            ["helly", "cliques", "cone-links", "iw", "criterion", "roundtrip", "kernel", "davis", "twist", "extension-graph"]
        );
        for n in r.names() {
            assert!(!r.get(n).unwrap().lemmas().is_empty());
        }
    }

    #[test]
    fn unknown_suite_is_an_error() {
        let ctx = Context::new(vec![]);
        let err = SuiteRegistry::default().run(&["nope".into()], &ctx, false).unwrap_err();
        assert_eq!(err.0, "nope");
    }

    #[test]
    fn register_replaces_by_name() {
        let mut r = SuiteRegistry::default();
        r.register(Box::new(HellySuite));
        assert_eq!(r.names().len(), 10);
        assert_eq!(r.names().last(), Some(&"helly"));
    }

    #[test]
    fn builtins_pass_every_suite() {
        let inst = builtins::COMPLEX_NAMES.iter().map(|n| Instance::complex(*n, builtins::complex(n).unwrap())).collect();
        let r = SuiteRegistry::default().run(&[], &Context::new(inst), false).unwrap();
        assert!(r.passed, "{:?}", r.first_violation());
        assert!(entry(&r, "iw", "i0-partition").notes.iter().any(|n| n.starts_with("SQUARE")));
        assert!(r.suites.iter().all(|s| s.elapsed_ms.is_none()));
    }

    #[test]
    fn small_balls_pass_selected_suites() {
        let inst = vec![ball("P4", GroupKind::Coxeter, 4), ball("K2", GroupKind::Artin, 3)];
        let names: Vec<String> = ["davis", "twist", "extension-graph", "kernel"].iter().map(|s| s.to_string()).collect();
        let r = SuiteRegistry::default().run(&names, &Context::new(inst), true).unwrap();
        assert!(r.passed, "{:?}", r.first_violation());
        assert_eq!(r.suites.len(), 4);
        assert!(r.suites.iter().all(|s| s.elapsed_ms.is_some()));
        assert_eq!(entry(&r, "davis", "davis-contact").instances_checked, 1);
        assert_eq!(entry(&r, "extension-graph", "shuffle-word-metric").instances_checked, 1);
    }

    #[test]
    fn recorder_caps_witnesses() {
        const L: &[Lemma] = &[Lemma { id: "x", anchor: "" }];
        let mut rec = Recorder::new(L);
        rec.record("x", "i", 0..30);
        let e = rec.finish().remove(0);
        assert_eq!((e.instances_checked, e.violation_count, e.violations.len()), (1, 30, MAX_WITNESSES));
    }

    #[test]
    fn long_instance_lists_are_summarized() {
        let inst: Vec<Instance> = (0..6).map(|i| Instance::complex(format!("c{i}"), builtins::complex("SQUARE").unwrap())).collect();
        assert_eq!(describe(&inst), "c0, c1, ... c5 (6 instances)");
    }
}
