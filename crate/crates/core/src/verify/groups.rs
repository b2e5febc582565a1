//! Suites for the explicit automorphisms of right-angled group balls.

use std::collections::BTreeMap;

use super::{Context, Lemma, Recorder, Suite};
use crate::ra::davis::{davis_phi, davis_psi, default_pair};
use crate::ra::extension::compare_with_reduced;
use crate::ra::syllable::syllable_shuffle;
use crate::ra::twist::{conjugation_check, halfspace_twist, Side};
use crate::ra::{Ball, GroupKind, RaError};

pub struct DavisSuite;

impl Suite for DavisSuite {
    fn name(&self) -> &'static str {
        "davis"
    }

    fn lemmas(&self) -> &'static [Lemma] {
        &[
            Lemma { id: "davis-hypothesis", anchor: "phi needs distinct labels a, b with St a ⊆ St b" },
            Lemma { id: "davis-contact", anchor: "phi, identity off the halfspace a+ and r_b on it, is a contact automorphism" },
            Lemma { id: "davis-rho", anchor: "rho(phi) fixes a- and acts as r_b on a+" },
            Lemma { id: "davis-square", anchor: "rho(phi) breaks a square crossed by a and b, so it is not a cubical automorphism" },
            Lemma { id: "davis-psi", anchor: "rho(psi_n) fixes exactly the vertices outside a+ and a_n+, and these sets differ with n" },
        ]
    }

    fn kinds(&self) -> &'static [GroupKind] {
        &[GroupKind::Coxeter]
    }

    fn run(&self, ctx: &Context, rec: &mut Recorder) {
        for inst in &ctx.instances {
            let Some(ball) = inst.ball_of(GroupKind::Coxeter) else { continue };
            let name = inst.name.as_str();
            let Some((a, b)) = default_pair(&ball.group) else {
                // no star containment: the construction must refuse
                let refused =
                    ball.gamma().order() < 2 || matches!(davis_phi(ball, 0, 1, ball.identity_vertex()), Err(RaError::StarNotContained(..)));
                rec.record("davis-hypothesis", name, (!refused).then_some("accepted a pair without star containment"));
                rec.note("davis-hypothesis", name, "rejected, no star containment");
                continue;
            };
            rec.checked("davis-hypothesis");
            let phi = match davis_phi(ball, a, b, ball.identity_vertex()) {
                Ok(p) => p,
                Err(e @ (RaError::NotInterior(_) | RaError::BallTooSmall(_))) => {
                    rec.note("davis-contact", name, format!("skipped: {e}"));
                    continue;
                }
                Err(e) => {
                    rec.record("davis-contact", name, Some(e));
                    continue;
                }
            };
            let r = &phi.report;
            let mut contact = r.contact_violations.clone();
            if !r.injective {
                contact.push("phi is not injective on interior hyperplanes".into());
            }
            contact.extend(r.reflection_moves_transverse.iter().map(|m| format!("r_b moves transverse {m}")));
            rec.note(
                "davis-contact",
                name,
                format!(
                    "a = {}, b = {}: {} interior hyperplanes ({} in a+, {} in a-, {} transverse or equal)",
                    ball.gamma().name(a),
                    ball.gamma().name(b),
                    r.interior_hyperplanes,
                    r.plus,
                    r.minus,
                    r.transverse
                ),
            );
            rec.record("davis-contact", name, contact);
            rec.record("davis-rho", name, r.rho_violations.clone());
            rec.checked("davis-square");
            let sq = &phi.square;
            rec.note(
                "davis-square",
                name,
                format!(
                    "square {:?} goes to {:?}; edge {}-{} lands at distance {}",
                    sq.corners, sq.images, sq.broken_edge.0, sq.broken_edge.1, sq.image_distance
                ),
            );

            let mut psi_bad = Vec::new();
            let mut fixed_sets = Vec::new();
            for n in [1, 2] {
                match davis_psi(ball, &phi, n) {
                    Ok(p) => {
                        if !p.sides_disjoint {
                            psi_bad.push(format!("n = {n}: a_n+ meets a+"));
                        }
                        psi_bad.extend(p.contact_violations.iter().map(|v| format!("n = {n}: contact changes at {v}")));
                        if p.fixed != p.predicted {
                            psi_bad.push(format!("n = {n}: fixed set {:?} differs from prediction {:?}", p.fixed, p.predicted));
                        }
                        fixed_sets.push(p.fixed);
                    }
                    Err(e) => psi_bad.push(format!("n = {n}: {e}")),
                }
            }
            if fixed_sets.len() == 2 {
                if fixed_sets[0] == fixed_sets[1] {
                    rec.note("davis-psi", name, "interior too small to separate psi_1 from psi_2");
                } else {
                    rec.note(
                        "davis-psi",
                        name,
                        format!("psi_1 fixes {}, psi_2 fixes {} interior vertices", fixed_sets[0].len(), fixed_sets[1].len()),
                    );
                }
            }
            rec.record("davis-psi", name, psi_bad);
        }
    }
}

pub struct TwistSuite;

impl Suite for TwistSuite {
    fn name(&self) -> &'static str {
        "twist"
    }

    fn lemmas(&self) -> &'static [Lemma] {
        &[
            Lemma {
                id: "twist-automorphism",
                anchor: "inverting y on one side of an x-hyperplane is an automorphism fixing its carrier, not the identity",
            },
            Lemma {
                id: "twist-conjugation",
                anchor: "every 2-element interior set is moved by some g into the fixed side, where g^-1 psi g fixes it",
            },
        ]
    }

    fn kinds(&self) -> &'static [GroupKind] {
        &[GroupKind::Artin]
    }

    fn run(&self, ctx: &Context, rec: &mut Recorder) {
        for inst in &ctx.instances {
            let Some(ball) = inst.ball_of(GroupKind::Artin) else { continue };
            let name = inst.name.as_str();
            let gamma = ball.gamma();
            let n = gamma.order();
            let Some((x, y)) = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| x != y && !gamma.commute(x, y)) else {
                rec.note("twist-automorphism", name, "rejected, the defining graph is complete");
                continue;
            };
            let twist = match halfspace_twist(ball, x, y, Side::B) {
                Ok(t) => t,
                Err(e @ RaError::BallTooSmall(_)) => {
                    rec.note("twist-automorphism", name, format!("skipped: {e}"));
                    continue;
                }
                Err(e) => {
                    rec.record("twist-automorphism", name, Some(e));
                    continue;
                }
            };
            rec.checked("twist-automorphism");
            let r = conjugation_check(ball, &twist, ctx.margin);
            rec.note(
                "twist-automorphism",
                name,
                format!(
                    "x = {}, y = {}: moves {} vertices, carrier of {} vertices",
                    gamma.name(x),
                    gamma.name(y),
                    r.moved_vertices,
                    r.carrier_size
                ),
            );
            let mut bad: Vec<String> = r.pairs_without_witness.iter().map(|(a, b)| format!("no g for {{{a}, {b}}}")).collect();
            bad.extend(r.conjugation_failures.iter().cloned());
            rec.note("twist-conjugation", name, format!("{} interior pairs", r.pairs_checked));
            rec.record("twist-conjugation", name, bad);
        }
    }
}

pub struct ExtensionGraphSuite;

impl Suite for ExtensionGraphSuite {
    fn name(&self) -> &'static str {
        "extension-graph"
    }

    fn lemmas(&self) -> &'static [Lemma] {
        &[
            Lemma { id: "extension-vs-reduced", anchor: "with distinct vertex links, the reduced crossing graph is the extension graph" },
            Lemma { id: "extension-quotient", anchor: "parallel hyperplanes are twins and crossing matches commuting conjugates, so the reduced crossing graph is the extension graph modulo twins" },
            Lemma { id: "shuffle-syllable", anchor: "for a cone over z, shuffling the z-coordinate is an isometry of the syllable metric" },
            Lemma { id: "shuffle-word-metric", anchor: "such a shuffle need not preserve the word metric" },
            Lemma { id: "shuffle-extension", anchor: "such a shuffle induces the identity on the extension graph" },
        ]
    }

    fn kinds(&self) -> &'static [GroupKind] {
        &[GroupKind::Artin]
    }

    fn run(&self, ctx: &Context, rec: &mut Recorder) {
        for inst in &ctx.instances {
            let Some(ball) = inst.ball_of(GroupKind::Artin) else { continue };
            let name = inst.name.as_str();
            match compare_with_reduced(ball, ctx.margin) {
                Ok(c) if c.skipped.is_some() => {
                    rec.note("extension-vs-reduced", name, format!("skipped: {}", c.skipped.unwrap_or_default()))
                }
                Ok(c) => {
                    rec.note(
                        "extension-vs-reduced",
                        name,
                        format!("{} classes, {} reduced edges, {} extension edges", c.reduced_classes, c.reduced_edges, c.extension_edges),
                    );
                    if let Some(lc) = &c.link_containment {
                        rec.note(
                            "extension-vs-reduced",
                            name,
                            format!(
                                "lk {} ⊆ lk {}: walls {}@1 and {}@{} twins from different parallelism classes: {}",
                                lc.smaller, lc.larger, lc.smaller, lc.smaller, lc.larger, lc.twins_confirmed
                            ),
                        );
                    }
                    rec.record("extension-vs-reduced", name, c.mismatches);
                    rec.record("extension-quotient", name, c.quotient_mismatches);
                }
                Err(e) => rec.record("extension-vs-reduced", name, Some(e)),
            }
            shuffle(ball, name, rec);
        }
    }
}

fn shuffle(ball: &Ball, name: &str, rec: &mut Recorder) {
    if ball.radius < 2 {
        return rec.note("shuffle-syllable", name, "skipped, radius below 2");
    }
    let swap: BTreeMap<i64, i64> = [(1, 2), (2, 1)].into_iter().collect();
    match syllable_shuffle(ball, None, &swap) {
        Err(RaError::NotACone) => rec.note("shuffle-syllable", name, "skipped, the defining graph is not a cone"),
        Err(e) => rec.record("shuffle-syllable", name, Some(e)),
        Ok(r) => {
            rec.note("shuffle-syllable", name, format!("apex {}, {} pairs at syllable distance ≤ 2", r.apex, r.pairs_checked));
            rec.record("shuffle-syllable", name, r.syllable_violations);
            match r.word_metric_witness {
                Some((u, v, d0, d1)) => {
                    rec.checked("shuffle-word-metric");
                    rec.note("shuffle-word-metric", name, format!("d_w({u}, {v}) = {d0} becomes {d1}"));
                }
                None => rec.record("shuffle-word-metric", name, Some("the shuffle preserves every word distance in the ball")),
            }
            rec.record("shuffle-extension", name, (!r.extension_identity).then_some("the shuffle moves a parallelism class"));
        }
    }
}
