//! Suites that only need the cube complex.

use fixedbitset::FixedBitSet;

use super::{Context, Lemma, Recorder, Suite};
use crate::cliques::maximal_cliques;
use crate::contact::{
    all_interaction_sets, characterized_interaction_set, interaction, separated_by_third, twins, ContactFamily, Interaction,
};
use crate::graph::is_subset;
use crate::median::CubeComplex;
use crate::ra::{Ball, GroupKind};
use crate::reconstruction::{adjacency_criterion, i0_classes};
use crate::GraphAutomorphism;

/// Largest complex on which convexity is checked pair by pair.
pub const CONVEXITY_LIMIT: usize = 200;
/// Largest family of sides and carriers checked 4-wise for Helly; larger
/// families are checked 3-wise.
pub const HELLY4_LIMIT: usize = 90;

pub struct HellySuite;

impl Suite for HellySuite {
    fn name(&self) -> &'static str {
        "helly"
    }

    fn lemmas(&self) -> &'static [Lemma] {
        &[
            Lemma { id: "theta-classes", anchor: "dual edges cross their hyperplane; the two sides partition the vertices" },
            Lemma { id: "convexity", anchor: "sides and carriers of hyperplanes are convex" },
            Lemma { id: "helly", anchor: "Helly property for pairwise intersecting sides and carriers" },
            Lemma { id: "hyperplane-complex", anchor: "a hyperplane is a connected cube complex on its dual edges" },
        ]
    }

    fn run(&self, ctx: &Context, rec: &mut Recorder) {
        for inst in &ctx.instances {
            let cx = &inst.complex;
            let name = inst.name.as_str();
            rec.record("theta-classes", name, theta_failures(cx));

            if cx.order() <= CONVEXITY_LIMIT {
                let mut bad = Vec::new();
                for h in cx.hyperplanes() {
                    for (label, set) in [("sideA", &h.side_a), ("sideB", &h.side_b), ("carrier", &h.carrier)] {
                        if let Some((a, b, x)) = cx.convexity_violation(set) {
                            bad.push(format!("{label} of {}: {} lies between {} and {}", h.id, cx.name(x), cx.name(a), cx.name(b)));
                        }
                    }
                }
                rec.record("convexity", name, bad);
            } else {
                rec.note("convexity", name, format!("skipped, {} vertices", cx.order()));
            }

            let sets: Vec<FixedBitSet> =
                cx.hyperplanes().iter().flat_map(|h| [h.side_a.clone(), h.side_b.clone(), h.carrier.clone()]).collect();
            let depth = if sets.len() <= HELLY4_LIMIT { 4 } else { 3 };
            if depth < 4 {
                rec.note("helly", name, format!("{} sets, checked 3-wise", sets.len()));
            }
            rec.record("helly", name, helly_failures(&sets, depth));

            let mut bad = Vec::new();
            for h in cx.hyperplanes() {
                match cx.hyperplane_complex(h.id) {
                    Ok(sub) if sub.order() == h.dual_edges.len() && sub.graph().is_connected() => {}
                    Ok(sub) => bad.push(format!("hyperplane {} has {} vertices for {} dual edges", h.id, sub.order(), h.dual_edges.len())),
                    Err(e) => bad.push(format!("hyperplane {}: {e}", h.id)),
                }
            }
            rec.record("hyperplane-complex", name, bad);
        }
    }
}

fn theta_failures(cx: &CubeComplex) -> Vec<String> {
    let mut bad = Vec::new();
    for h in cx.hyperplanes() {
        if !h.side_a.is_disjoint(&h.side_b) || h.side_a.count_ones(..) + h.side_b.count_ones(..) != cx.order() {
            bad.push(format!("sides of {} do not partition the vertices", h.id));
        }
        for &e in &h.dual_edges {
            let (u, v) = cx.edges()[e];
            if h.side_a.contains(u) == h.side_a.contains(v) {
                bad.push(format!("dual edge {}-{} of {} does not cross it", cx.name(u), cx.name(v), h.id));
            }
        }
    }
    bad
}

/// Families of at most `depth` sets that pairwise intersect but have empty
/// total intersection.
pub fn helly_failures(sets: &[FixedBitSet], depth: usize) -> Vec<String> {
    let n = sets.len();
    let meets: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| !sets[i].is_disjoint(&sets[j])).collect()).collect();
    let mut bad = Vec::new();
    let mut chosen = Vec::new();
    fn grow(sets: &[FixedBitSet], meets: &[Vec<bool>], depth: usize, chosen: &mut Vec<usize>, inter: &FixedBitSet, bad: &mut Vec<String>) {
        let start = chosen.last().map_or(0, |&l| l + 1);
        for j in start..sets.len() {
            if !chosen.iter().all(|&c| meets[c][j]) {
                continue;
            }
            let mut next = inter.clone();
            next.intersect_with(&sets[j]);
            chosen.push(j);
            if next.is_clear() {
                bad.push(format!("sets {chosen:?} meet pairwise but not all together"));
            } else if chosen.len() < depth {
                grow(sets, meets, depth, chosen, &next, bad);
            }
            chosen.pop();
        }
    }
    if let Some(first) = sets.first() {
        let mut full = FixedBitSet::with_capacity(first.len());
        full.insert_range(..);
        grow(sets, &meets, depth, &mut chosen, &full, &mut bad);
    }
    bad
}

pub struct CliquesSuite;

impl Suite for CliquesSuite {
    fn name(&self) -> &'static str {
        "cliques"
    }

    fn lemmas(&self) -> &'static [Lemma] {
        &[
            Lemma { id: "clique-in-some-Wv", anchor: "every clique of the contact graph lies in some W_v" },
            Lemma { id: "maximal-clique-is-Wv", anchor: "every maximal clique of the contact graph equals some W_v" },
            Lemma { id: "clique-size-bound", anchor: "cliques of the contact graph have at most max |W_v| elements" },
            Lemma { id: "transverse-square", anchor: "four-quadrant transversality agrees with sharing a square" },
            Lemma { id: "contact-separation", anchor: "contact edges join hyperplanes not separated by a third" },
            Lemma { id: "reduced-classes", anchor: "reduced crossing graph: maximal classes with equal crossing neighbourhoods" },
        ]
    }

    fn run(&self, ctx: &Context, rec: &mut Recorder) {
        for inst in &ctx.instances {
            let cx = &inst.complex;
            let name = inst.name.as_str();
            let fam = ContactFamily::build(cx, ctx.mode);
            let cliques = match maximal_cliques(&fam.contact, ctx.clique_cap) {
                Ok(c) => c,
                Err(e) => {
                    rec.fail("clique-in-some-Wv", name, e);
                    continue;
                }
            };
            let h = cx.hyperplane_count();
            let walls: Vec<&FixedBitSet> = (0..cx.order()).map(|v| cx.hyperplanes_at(v).expect("valid")).collect();
            let mut outside = Vec::new();
            let mut not_equal = Vec::new();
            for c in &cliques {
                let cs = crate::graph::bitset_from(h, c.iter().copied());
                if !walls.iter().any(|w| is_subset(&cs, w)) {
                    outside.push(format!("clique {c:?} lies in no W_v"));
                }
                if !walls.iter().any(|w| **w == cs) {
                    not_equal.push(format!("maximal clique {c:?} is no W_v"));
                }
            }
            rec.record("clique-in-some-Wv", name, outside);
            rec.record("maximal-clique-is-Wv", name, not_equal);
            let largest = cliques.iter().map(Vec::len).max().unwrap_or(0);
            let bound = walls.iter().map(|w| w.count_ones(..)).max().unwrap_or(0);
            rec.record(
                "clique-size-bound",
                name,
                (largest > bound).then(|| format!("clique of size {largest} exceeds max |W_v| = {bound}")),
            );

            let mut square = Vec::new();
            let mut separation = Vec::new();
            for u in 0..h {
                for w in u + 1..h {
                    let t = cx.transverse(u, w);
                    if t != cx.share_square(u, w) {
                        square.push(format!("hyperplanes {u}, {w}: quadrants say {t}, squares disagree"));
                    }
                    if t && !fam.contact.has_edge(u, w) {
                        square.push(format!("crossing edge {u}-{w} missing from contact graph"));
                    }
                    let i = interaction(cx, u, w).expect("valid ids");
                    let disjoint = cx.hyperplanes()[u].carrier.is_disjoint(&cx.hyperplanes()[w].carrier);
                    let third = separated_by_third(cx, u, w);
                    let sep = i == Interaction::Separated;
                    if sep != disjoint || sep != third || sep == fam.contact.has_edge(u, w) {
                        separation.push(format!("hyperplanes {u}, {w}: {i}, carriers disjoint {disjoint}, separated by a third {third}"));
                    }
                }
            }
            rec.record("transverse-square", name, square);
            rec.record("contact-separation", name, separation);

            let mut reduced = Vec::new();
            if let Err((u, v)) = fam.check_quotient() {
                reduced.push(format!("hyperplanes {u}, {v} break the quotient"));
            }
            for (a, ca) in fam.classes.iter().enumerate() {
                for cb in &fam.classes[a + 1..] {
                    if twins(&fam.crossing, ca[0], cb[0], fam.mode) {
                        reduced.push(format!("classes of {} and {} should merge", ca[0], cb[0]));
                    }
                }
            }
            rec.record("reduced-classes", name, reduced);
        }
    }
}

pub struct ConeLinksSuite;

impl Suite for ConeLinksSuite {
    fn name(&self) -> &'static str {
        "cone-links"
    }

    fn lemmas(&self) -> &'static [Lemma] {
        &[
            Lemma { id: "dominated-iff-cone", anchor: "W_v lies in some other W_w exactly when lk v is a cone" },
            Lemma {
                id: "maximal-unique-iff-not-cone",
                anchor: "W_v is a maximal clique attained only at v exactly when lk v is not a cone",
            },
        ]
    }

    fn run(&self, ctx: &Context, rec: &mut Recorder) {
        for inst in &ctx.instances {
            let cx = &inst.complex;
            let name = inst.name.as_str();
            let fam = ContactFamily::build(cx, ctx.mode);
            let cliques = match maximal_cliques(&fam.contact, ctx.clique_cap) {
                Ok(c) => c,
                Err(e) => {
                    rec.fail("dominated-iff-cone", name, e);
                    continue;
                }
            };
            let walls: Vec<&FixedBitSet> = (0..cx.order()).map(|v| cx.hyperplanes_at(v).expect("valid")).collect();
            let mut dom = Vec::new();
            let mut uniq = Vec::new();
            for v in 0..cx.order() {
                let cone = cx.is_extremal(v);
                let dominated = (0..cx.order()).any(|w| w != v && is_subset(walls[v], walls[w]));
                if dominated != cone {
                    dom.push(format!("{}: dominated {dominated}, cone link {cone}", cx.name(v)));
                }
                let set: Vec<usize> = walls[v].ones().collect();
                let maximal = cliques.binary_search(&set).is_ok();
                let unique = (0..cx.order()).all(|w| w == v || walls[w] != walls[v]);
                if (maximal && unique) == cone {
                    uniq.push(format!("{}: maximal {maximal}, unique {unique}, cone link {cone}", cx.name(v)));
                }
            }
            rec.record("dominated-iff-cone", name, dom);
            rec.record("maximal-unique-iff-not-cone", name, uniq);
        }
    }
}

pub struct InteractionSuite;

impl Suite for InteractionSuite {
    fn name(&self) -> &'static str {
        "iw"
    }

    fn lemmas(&self) -> &'static [Lemma] {
        &[
            Lemma { id: "iw-characterization", anchor: "I(w) is w with the hyperplanes transverse to w and to all others transverse to w" },
            Lemma { id: "i0-carrier", anchor: "u lies in I0(w) exactly when u and w have the same carrier" },
            Lemma { id: "i0-star", anchor: "members of I0(w) have the same star in the contact graph" },
            Lemma { id: "i0-partition", anchor: "the sets I0(w) partition the hyperplanes" },
            Lemma { id: "iw-dimension", anchor: "#I(w) is at most dim X" },
            Lemma { id: "iw-equivariance", anchor: "contact automorphisms carry I(w) and I0(w) to I(phi w) and I0(phi w)" },
            Lemma {
                id: "star-inclusion",
                anchor: "in Davis complexes, I(w) and I0(w) are given by star inclusion and star equality of labels",
            },
        ]
    }

    fn run(&self, ctx: &Context, rec: &mut Recorder) {
        for inst in &ctx.instances {
            let cx = &inst.complex;
            let name = inst.name.as_str();
            let fam = ContactFamily::build(cx, ctx.mode);
            let sets = all_interaction_sets(cx);
            let dim = cx.dimension();
            let mut charac = Vec::new();
            let mut carrier = Vec::new();
            let mut star = Vec::new();
            let mut bound = Vec::new();
            let closed = |u: usize| {
                let mut s = fam.contact.neighbor_set(u).clone();
                s.insert(u);
                s
            };
            for s in &sets {
                let w = s.base;
                let by_lemma = characterized_interaction_set(cx, w).expect("valid id");
                if by_lemma != s.i {
                    charac.push(format!("I({w}) = {:?}, characterization gives {by_lemma:?}", s.i));
                }
                let cw = &cx.hyperplanes()[w].carrier;
                for &u in &s.i {
                    let same = cx.hyperplanes()[u].carrier == *cw;
                    if same != s.i0.contains(&u) {
                        carrier.push(format!("{u} in I({w}): in I0 {}, same carrier {same}", !same));
                    }
                }
                for &u in &s.i0 {
                    if closed(u) != closed(w) {
                        star.push(format!("{u} in I0({w}) with a different contact star"));
                    }
                }
                if s.i.len() > dim {
                    bound.push(format!("#I({w}) = {} > dim = {dim}", s.i.len()));
                }
            }
            rec.record("iw-characterization", name, charac);
            rec.record("i0-carrier", name, carrier);
            rec.record("i0-star", name, star);
            rec.record("iw-dimension", name, bound);

            match i0_classes(cx) {
                Ok(classes) => {
                    let covered: usize = classes.iter().map(Vec::len).sum();
                    rec.record(
                        "i0-partition",
                        name,
                        (covered != cx.hyperplane_count())
                            .then(|| format!("classes cover {covered} of {} hyperplanes", cx.hyperplane_count())),
                    );
                    let big: Vec<&Vec<usize>> = classes.iter().filter(|c| c.len() > 1).take(5).collect();
                    if !big.is_empty() {
                        rec.note("i0-partition", name, format!("I0 classes with several members: {big:?}"));
                    }
                    let mut eq = Vec::new();
                    for class in classes.iter().filter(|c| c.len() > 1) {
                        for (i, &a) in class.iter().enumerate() {
                            for &b in &class[i + 1..] {
                                let t = GraphAutomorphism::transposition(cx.hyperplane_count(), a, b);
                                eq.extend(equivariance_failures(&sets, &t));
                            }
                        }
                    }
                    rec.record("iw-equivariance", name, eq);
                }
                Err(e) => rec.record("i0-partition", name, Some(e)),
            }

            if let Some(ball) = inst.ball_of(GroupKind::Coxeter) {
                star_inclusion(ball, ctx.margin.max(2), name, rec);
            }
        }
    }
}

fn equivariance_failures(sets: &[crate::contact::InteractionSets], phi: &GraphAutomorphism) -> Vec<String> {
    let image = |xs: &[usize]| {
        let mut v: Vec<usize> = xs.iter().map(|&x| phi.apply(x)).collect();
        v.sort_unstable();
        v
    };
    let mut bad = Vec::new();
    for s in sets {
        let t = &sets[phi.apply(s.base)];
        if image(&s.i) != t.i || image(&s.i0) != t.i0 {
            bad.push(format!("φ = {:?} does not carry I({}) to I({})", phi.moved(), s.base, t.base));
        }
    }
    bad
}

fn star_inclusion(ball: &Ball, margin: usize, name: &str, rec: &mut Recorder) {
    match crate::ra::stars::star_inclusion_check(ball, margin) {
        Ok(r) => {
            rec.note(
                "star-inclusion",
                name,
                format!("{} interior hyperplanes, non-singleton I0 classes {:?}", r.hyperplanes_checked, r.nontrivial_i0),
            );
            rec.record("star-inclusion", name, r.mismatches);
        }
        Err(e) => rec.record("star-inclusion", name, Some(e)),
    }
}

pub struct CriterionSuite;

impl Suite for CriterionSuite {
    fn name(&self) -> &'static str {
        "criterion"
    }

    fn lemmas(&self) -> &'static [Lemma] {
        &[
            Lemma { id: "criterion-nonadjacent", anchor: "a vertex x with W_v ∩ W_w ⊆ W_x exists for every non-adjacent pair v, w" },
            Lemma { id: "criterion-adjacent", anchor: "no such x exists for adjacent pairs when hyperplanes have no extremal vertices" },
            Lemma {
                id: "transverse-separated",
                anchor: "transverse u, w in W_v admit a third hyperplane in W_v transverse to u and not to w",
            },
        ]
    }

    fn run(&self, ctx: &Context, rec: &mut Recorder) {
        for inst in &ctx.instances {
            let cx = &inst.complex;
            let name = inst.name.as_str();
            let n = cx.order();
            let mut bad = Vec::new();
            for v in 0..n {
                for w in v + 1..n {
                    if !cx.graph().has_edge(v, w) && adjacency_criterion(cx, v, w).expect("valid").holds {
                        bad.push(format!("{} and {} are not adjacent but have no witness", cx.name(v), cx.name(w)));
                    }
                }
            }
            rec.record("criterion-nonadjacent", name, bad);

            // The adjacent direction needs hyperplanes without extremal
            // vertices; finite complexes never qualify, balls qualify on
            // their interior when the defining graph does.
            let region: Option<Vec<usize>> = match &inst.ball {
                Some(b) if !hyperplanes_have_extremal_vertices(b) => Some(b.interior_vertices(ctx.margin.max(2))),
                _ => None,
            };
            let Some(region) = region else {
                rec.note("criterion-adjacent", name, "skipped, hyperplanes have extremal vertices");
                rec.note("transverse-separated", name, "skipped, hyperplanes have extremal vertices");
                continue;
            };
            let mut bad = Vec::new();
            for &v in &region {
                for u in cx.graph().neighbors(v) {
                    if let Some(x) = adjacency_criterion(cx, v, u).expect("valid").witness {
                        bad.push(format!("edge {}-{} has witness {}", cx.name(v), cx.name(u), cx.name(x)));
                    }
                }
            }
            rec.record("criterion-adjacent", name, bad);
            let mut bad = Vec::new();
            for &v in &region {
                let wv: Vec<usize> = cx.hyperplanes_at(v).expect("valid").ones().collect();
                for &u in &wv {
                    for &w in &wv {
                        if u == w || !cx.transverse(u, w) {
                            continue;
                        }
                        let found = wv.iter().any(|&x| x != u && x != w && cx.transverse(x, u) && !cx.transverse(x, w));
                        if !found {
                            bad.push(format!("at {}: no third hyperplane for ({u}, {w})", cx.name(v)));
                        }
                    }
                }
            }
            rec.record("transverse-separated", name, bad);
        }
    }
}

/// Whether the hyperplanes of the full cover have extremal vertices. An
/// `a`-hyperplane is the cover for `lk a`; its vertex links are cones
/// exactly when `lk a` is empty or, in the Coxeter case, a cone.
pub fn hyperplanes_have_extremal_vertices(ball: &Ball) -> bool {
    let gamma = ball.gamma();
    (0..gamma.order()).any(|a| {
        let lk = gamma.link(a);
        lk.is_clear() || (ball.kind() == GroupKind::Coxeter && (0..gamma.order()).any(|b| b != a && gamma.star_contained(a, b)))
    })
}
