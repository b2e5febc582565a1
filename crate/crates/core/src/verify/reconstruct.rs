//! Suites for the clique reconstruction, the section `ρ∘ι = id` and the
//! kernel of `ρ`.

use std::collections::HashMap;

use super::complex::hyperplanes_have_extremal_vertices;
use super::{Context, Instance, Lemma, Recorder, Suite};
use crate::contact::ContactFamily;
use crate::ra::word::alphabet;
use crate::ra::{Ball, GroupKind};
use crate::reconstruction::{i0_classes, induce_iota_partial, induce_rho, kernel_subgroup, reconstruct, rho_at, CliqueAtlas};

pub struct RoundtripSuite;

impl Suite for RoundtripSuite {
    fn name(&self) -> &'static str {
        "roundtrip"
    }

    fn lemmas(&self) -> &'static [Lemma] {
        &[
            Lemma { id: "interior-cliques", anchor: "W_v is a maximal clique, distinct for distinct vertices, when lk v is not a cone" },
            Lemma { id: "roundtrip-edges", anchor: "the clique graph rebuilt from the contact graph alone is the 1-skeleton" },
            Lemma { id: "rho-iota", anchor: "rho composed with iota is the identity on Aut X" },
        ]
    }

    fn run(&self, ctx: &Context, rec: &mut Recorder) {
        for inst in &ctx.instances {
            let name = inst.name.as_str();
            let Some(ball) = &inst.ball else {
                rec.note("roundtrip-edges", name, "skipped, finite complexes always have hyperplanes with extremal vertices");
                continue;
            };
            if hyperplanes_have_extremal_vertices(ball) {
                rec.note("roundtrip-edges", name, "skipped, hyperplanes of the cover have extremal vertices");
                continue;
            }
            roundtrip_ball(ctx, inst, ball, rec);
        }
    }
}

fn roundtrip_ball(ctx: &Context, inst: &Instance, ball: &Ball, rec: &mut Recorder) {
    let name = inst.name.as_str();
    let cx = &ball.complex;
    let margin = ctx.margin.max(2);
    let fam = ContactFamily::build(cx, ctx.mode);
    let r = match reconstruct(&fam.contact, ctx.clique_cap) {
        Ok(r) => r,
        Err(e) => return rec.record("interior-cliques", name, Some(e)),
    };
    let index: HashMap<&Vec<usize>, usize> = r.cliques.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let interior = ball.interior_vertices(margin);
    let mut of = Vec::with_capacity(interior.len());
    let mut bad = Vec::new();
    for &v in &interior {
        let wv: Vec<usize> = cx.hyperplanes_at(v).expect("valid").ones().collect();
        match index.get(&wv) {
            Some(&c) => of.push(c),
            None => bad.push(format!("W_{} is not a maximal clique", cx.name(v))),
        }
    }
    let mut sorted = of.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != of.len() {
        bad.push("two interior vertices share a clique".to_string());
    }
    let ok = bad.is_empty();
    rec.record("interior-cliques", name, bad);
    rec.note("interior-cliques", name, format!("{} interior vertices, {} maximal cliques", interior.len(), r.cliques.len()));
    if ok {
        let mut bad = Vec::new();
        for i in 0..interior.len() {
            for j in i + 1..interior.len() {
                let want = cx.graph().has_edge(interior[i], interior[j]);
                if r.graph.has_edge(of[i], of[j]) != want {
                    bad.push(format!("{} and {}: adjacent {want}, rebuilt {}", cx.name(interior[i]), cx.name(interior[j]), !want));
                }
            }
        }
        rec.record("roundtrip-edges", name, bad);
    }

    let atlas = match CliqueAtlas::build(cx, &fam, ctx.clique_cap) {
        Ok(a) => a,
        Err(e) => return rec.record("rho-iota", name, Some(e)),
    };
    let mut bad = Vec::new();
    for l in alphabet(ball.gamma(), ball.kind()) {
        let g = ball.group.normal_form(&[l]);
        let left = ball.left_multiplication(&g);
        let iota = match induce_iota_partial(cx, &left) {
            Ok(m) => m,
            Err(e) => {
                bad.push(format!("iota({}): {e}", g.display(ball.gamma())));
                continue;
            }
        };
        for &v in &interior {
            let got = rho_at(&atlas, &|h| iota.get(&h).copied(), v);
            if got.as_ref().ok() != left.get(&v) {
                bad.push(format!("rho(iota({})) at {}: {got:?}", g.display(ball.gamma()), cx.name(v)));
            }
        }
    }
    rec.record("rho-iota", name, bad);
}

pub struct KernelSuite;

impl Suite for KernelSuite {
    fn name(&self) -> &'static str {
        "kernel"
    }

    fn lemmas(&self) -> &'static [Lemma] {
        &[
            Lemma {
                id: "kernel-automorphism",
                anchor: "permutations inside each I0 class are contact automorphisms fixing every maximal clique",
            },
            Lemma { id: "kernel-in-ker-rho", anchor: "the subgroup N of such permutations lies in the kernel of rho" },
            Lemma { id: "kernel-product", anchor: "N is the direct product of the symmetric groups of the I0 classes" },
            Lemma { id: "kernel-torsion", anchor: "generators of N have order 2 and I0 classes have at most dim X members" },
            Lemma {
                id: "kernel-star-equality",
                anchor: "in Davis complexes, rho fails to be injective exactly when two labels have the same star",
            },
        ]
    }

    fn run(&self, ctx: &Context, rec: &mut Recorder) {
        for inst in &ctx.instances {
            let name = inst.name.as_str();
            let cx = &inst.complex;
            let fam = ContactFamily::build(cx, ctx.mode);
            let atlas = match CliqueAtlas::build(cx, &fam, ctx.clique_cap) {
                Ok(a) => a,
                Err(e) => {
                    rec.record("kernel-automorphism", name, Some(e));
                    continue;
                }
            };
            let gens = match kernel_subgroup(cx, &fam, &atlas) {
                Ok(g) => g,
                Err(e) => {
                    rec.record("kernel-automorphism", name, Some(e));
                    continue;
                }
            };
            rec.checked("kernel-automorphism");
            rec.note("kernel-automorphism", name, format!("{} generators", gens.len()));

            let mut bad = Vec::new();
            for g in &gens {
                let rho = induce_rho(&atlas, &|h| Some(g.automorphism.apply(h)), 0..cx.order());
                if let Some((v, u)) = rho.map.iter().find(|(v, u)| v != u) {
                    bad.push(format!("swap {:?} moves {} to {}", g.swap, cx.name(*v), cx.name(*u)));
                }
            }
            rec.record("kernel-in-ker-rho", name, bad);

            let mut bad = Vec::new();
            for (i, a) in gens.iter().enumerate() {
                for b in &gens[i + 1..] {
                    if a.class != b.class {
                        let ab = a.automorphism.compose(&b.automorphism);
                        let ba = b.automorphism.compose(&a.automorphism);
                        if ab != ba {
                            bad.push(format!("swaps {:?} and {:?} do not commute", a.swap, b.swap));
                        }
                    }
                }
            }
            rec.record("kernel-product", name, bad);

            let dim = cx.dimension();
            let mut bad = Vec::new();
            for g in &gens {
                if g.automorphism.order() != 2 {
                    bad.push(format!("swap {:?} has order {}", g.swap, g.automorphism.order()));
                }
                if g.class.len() > dim {
                    bad.push(format!("class {:?} exceeds dim {dim}", g.class));
                }
            }
            rec.record("kernel-torsion", name, bad);

            if let Some(ball) = inst.ball_of(GroupKind::Coxeter) {
                kernel_star_equality(ctx, ball, name, rec);
            }
        }
    }
}

/// Non-singleton `I⁰` classes meeting the interior exist exactly when two
/// generators have the same star.
fn kernel_star_equality(ctx: &Context, ball: &Ball, name: &str, rec: &mut Recorder) {
    let gamma = ball.gamma();
    let equal = (0..gamma.order()).any(|a| (a + 1..gamma.order()).any(|b| gamma.star(a) == gamma.star(b)));
    let interior = ball.interior_hyperplanes(ctx.margin.max(2));
    let classes = match i0_classes(&ball.complex) {
        Ok(c) => c,
        Err(e) => return rec.record("kernel-star-equality", name, Some(e)),
    };
    let nontrivial: Vec<&Vec<usize>> = classes.iter().filter(|c| c.len() > 1 && c.iter().any(|&h| interior.contains(h))).collect();
    rec.note("kernel-star-equality", name, format!("{} interior classes with several members", nontrivial.len()));
    rec.record(
        "kernel-star-equality",
        name,
        (nontrivial.is_empty() == equal).then(|| format!("equal stars {equal}, non-singleton interior classes {}", nontrivial.len())),
    );
}
