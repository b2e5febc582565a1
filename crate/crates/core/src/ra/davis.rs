//! Contact-graph automorphisms of Davis complexes that do not come from
//! cubical automorphisms, built from a star containment `St a ⊆ St b`.
//!
//! Hyperplanes of `Y_Γ` are handled through exact keys: the hyperplane
//! dual to the edge `(g, g·s)` is `(s, g·W_{St s})`, stored as a
//! [`ClassKey`] with the shortest coset representative. Group elements act
//! on keys by left multiplication, and contact between two keys is decided
//! by a double-coset computation, so none of the checks below depend on
//! how the ball truncates `Y_Γ`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::ball::Ball;
use super::extension::{class_key, hyperplane_class, ClassKey};
use super::gamma::Generator;
use super::word::{Group, GroupKind, Letter, NormalForm};
use super::RaError;
use crate::median::{HyperplaneId, VertexId};

/// `r · H`.
pub fn translate_key(group: &Group, r: &NormalForm, key: &ClassKey) -> ClassKey {
    class_key(group, &group.mul(r, &key.rep), key.gen)
}

/// Whether the carriers of two distinct hyperplanes of `Y_Γ` meet.
pub fn keys_in_contact(group: &Group, h: &ClassKey, k: &ClassKey) -> bool {
    if h == k {
        return false;
    }
    let d = group.mul(&group.inverse(&h.rep), &k.rep);
    let s = group.gamma.star(h.gen);
    let t = group.gamma.star(k.gen);
    group.min_double_coset_rep(&d, &s, &t).is_empty()
}

pub fn keys_transverse(group: &Group, h: &ClassKey, k: &ClassKey) -> bool {
    h.gen != k.gen && group.gamma.commute(h.gen, k.gen) && keys_in_contact(group, h, k)
}

/// The hyperplanes adjacent to `g` in `Y_Γ`, one per generator.
pub fn vertex_keys(group: &Group, g: &NormalForm) -> BTreeSet<ClassKey> {
    (0..group.gamma.order()).map(|s| class_key(group, g, s)).collect()
}

/// Side test for the hyperplane dual to `(base, base·a)`: true when `g` is
/// on the far side from `base`.
fn beyond(group: &Group, base: &NormalForm, a: Generator, g: &NormalForm) -> bool {
    group.is_left_descent(&group.mul(&group.inverse(base), g), Letter::new(a, false))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Part {
    Plus,
    Minus,
    Transverse,
}

/// `φ_{𝔞⁺,𝔟}` on keys: `r_𝔟` on the hyperplanes inside `𝔞⁺`, the identity
/// elsewhere.
#[derive(Clone, Debug)]
pub struct KeyMap {
    pub a: Generator,
    /// A vertex on the carrier of `𝔞`, on the side `𝔞⁻`.
    pub base: NormalForm,
    pub wall_a: ClassKey,
    pub wall_b: ClassKey,
    pub reflection: NormalForm,
}

impl KeyMap {
    fn new(group: &Group, base: NormalForm, a: Generator, b: Generator) -> Self {
        let gb = group.generator_element(b);
        let reflection = group.mul(&group.mul(&base, &gb), &group.inverse(&base));
        KeyMap { a, wall_a: class_key(group, &base, a), wall_b: class_key(group, &base, b), base, reflection }
    }

    /// The image of this map under left multiplication by `t`.
    fn conjugate(&self, group: &Group, t: &NormalForm) -> Self {
        let base = group.mul(t, &self.base);
        let reflection = group.mul(&group.mul(t, &self.reflection), &group.inverse(t));
        KeyMap { a: self.a, wall_a: translate_key(group, t, &self.wall_a), wall_b: translate_key(group, t, &self.wall_b), base, reflection }
    }

    /// Flips which side counts as `𝔞⁺` by moving the base across `𝔞`.
    fn flipped(&self, group: &Group) -> Self {
        let base = group.mul_letter(&self.base, Letter::new(self.a, false));
        KeyMap { base, ..self.clone() }
    }

    pub fn in_plus(&self, group: &Group, g: &NormalForm) -> bool {
        beyond(group, &self.base, self.a, g)
    }

    /// `sample` is any vertex of the carrier of `key`.
    pub fn part(&self, group: &Group, key: &ClassKey, sample: &NormalForm) -> Part {
        if *key == self.wall_a || keys_transverse(group, key, &self.wall_a) {
            Part::Transverse
        } else if self.in_plus(group, sample) {
            Part::Plus
        } else {
            Part::Minus
        }
    }

    pub fn apply(&self, group: &Group, key: &ClassKey, sample: &NormalForm) -> ClassKey {
        match self.part(group, key, sample) {
            Part::Plus => translate_key(group, &self.reflection, key),
            _ => key.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SquareWitness {
    pub corners: [String; 4],
    pub images: [String; 4],
    /// An edge of the square whose image is not an edge.
    pub broken_edge: (String, String),
    pub image_distance: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct DavisReport {
    pub interior_hyperplanes: usize,
    pub plus: usize,
    pub minus: usize,
    pub transverse: usize,
    pub contact_pairs_checked: usize,
    pub contact_violations: Vec<String>,
    pub injective: bool,
    /// Transverse hyperplanes moved by `r_𝔟`.
    pub reflection_moves_transverse: Vec<String>,
    pub vertices_checked: usize,
    pub rho_violations: Vec<String>,
}

impl DavisReport {
    pub fn passed(&self) -> bool {
        self.contact_violations.is_empty()
            && self.injective
            && self.reflection_moves_transverse.is_empty()
            && self.rho_violations.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct DavisPhi {
    pub a: Generator,
    pub b: Generator,
    pub base: VertexId,
    pub wall_a: HyperplaneId,
    pub wall_b: HyperplaneId,
    pub map: KeyMap,
    /// Part and image key of every interior hyperplane.
    pub parts: BTreeMap<HyperplaneId, Part>,
    pub images: BTreeMap<HyperplaneId, ClassKey>,
    /// Images that are hyperplanes of the ball.
    pub permutation: BTreeMap<HyperplaneId, Option<HyperplaneId>>,
    pub report: DavisReport,
    pub square: SquareWitness,
}

/// Interior margin used for the hyperplanes and vertices checked here.
pub const DAVIS_MARGIN: usize = 2;

/// The first ordered pair `(a, b)` with `a ≠ b` and `St a ⊆ St b`.
pub fn default_pair(group: &Group) -> Option<(Generator, Generator)> {
    let n = group.gamma.order();
    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| a != b && group.gamma.star_contained(a, b))
}

struct Index {
    keys: Vec<ClassKey>,
    by_key: HashMap<ClassKey, HyperplaneId>,
    by_walls: HashMap<BTreeSet<ClassKey>, VertexId>,
}

impl Index {
    fn new(ball: &Ball) -> Self {
        let keys: Vec<ClassKey> = (0..ball.complex.hyperplane_count()).map(|w| hyperplane_class(ball, w)).collect();
        let by_key = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        let by_walls = (0..ball.order()).map(|v| (vertex_keys(&ball.group, ball.element(v)), v)).collect();
        Index { keys, by_key, by_walls }
    }

    fn sample<'a>(&self, ball: &'a Ball, w: HyperplaneId) -> &'a NormalForm {
        let e = ball.complex.hyperplanes()[w].dual_edges[0];
        ball.element(ball.complex.edges()[e].0)
    }
}

/// Builds `φ_{𝔞⁺,𝔟}` at `base` and certifies it on the interior of the
/// ball: contact between interior hyperplanes is preserved and reflected,
/// `ρ(φ)` is `v ↦ v` on `𝔞⁻` and `v ↦ r_𝔟·v` on `𝔞⁺`, and the square
/// `{w, wa, wb, wab}` is not mapped to a square.
pub fn davis_phi(ball: &Ball, a: Generator, b: Generator, base: VertexId) -> Result<DavisPhi, RaError> {
    if ball.kind() != GroupKind::Coxeter {
        return Err(RaError::WrongKind("φ is built on Davis balls".into()));
    }
    let group = &ball.group;
    let gamma = ball.gamma();
    if a >= gamma.order() || b >= gamma.order() || base >= ball.order() {
        return Err(RaError::InvalidParameter("generator or vertex out of range".into()));
    }
    if a == b || !gamma.star_contained(a, b) {
        return Err(RaError::StarNotContained(gamma.name(a).into(), gamma.name(b).into()));
    }
    if !ball.is_interior_vertex(base, DAVIS_MARGIN) {
        return Err(RaError::NotInterior(format!("base {} has depth {} < {DAVIS_MARGIN}", ball.complex.name(base), ball.depth[base])));
    }
    let idx = Index::new(ball);
    let w = ball.element(base).clone();
    let map = KeyMap::new(group, w.clone(), a, b);
    let wall_a = idx.by_key[&map.wall_a];
    let wall_b = idx.by_key[&map.wall_b];

    let interior: Vec<HyperplaneId> = ball.interior_hyperplanes(DAVIS_MARGIN).ones().collect();
    let mut report = DavisReport { interior_hyperplanes: interior.len(), ..Default::default() };
    let mut parts = BTreeMap::new();
    let mut images = BTreeMap::new();
    let mut permutation = BTreeMap::new();
    for &h in &interior {
        let key = &idx.keys[h];
        let sample = idx.sample(ball, h);
        let part = map.part(group, key, sample);
        match part {
            Part::Plus => report.plus += 1,
            Part::Minus => report.minus += 1,
            Part::Transverse => {
                report.transverse += 1;
                if translate_key(group, &map.reflection, key) != *key {
                    report.reflection_moves_transverse.push(format!("hyperplane {h}"));
                }
            }
        }
        let image = map.apply(group, key, sample);
        permutation.insert(h, idx.by_key.get(&image).copied());
        parts.insert(h, part);
        images.insert(h, image);
    }

    let distinct: BTreeSet<&ClassKey> = images.values().collect();
    report.injective = distinct.len() == images.len();
    for (i, &h) in interior.iter().enumerate() {
        for &k in &interior[i + 1..] {
            report.contact_pairs_checked += 1;
            let before = keys_in_contact(group, &idx.keys[h], &idx.keys[k]);
            let after = keys_in_contact(group, &images[&h], &images[&k]);
            if before != after {
                report.contact_violations.push(format!("hyperplanes {h}, {k}: contact {before} becomes {after}"));
            }
        }
    }

    let rho = |v: &NormalForm| -> BTreeSet<ClassKey> {
        // v lies on the carrier of each of its own walls
        vertex_keys(group, v).iter().map(|k| map.apply(group, k, v)).collect()
    };
    for v in ball.interior_vertices(DAVIS_MARGIN) {
        report.vertices_checked += 1;
        let g = ball.element(v);
        let expected = if map.in_plus(group, g) { group.mul(&map.reflection, g) } else { g.clone() };
        if rho(g) != vertex_keys(group, &expected) {
            report.rho_violations.push(format!("ρ(φ) sends {} elsewhere than {}", ball.complex.name(v), expected.display(gamma)));
        }
    }

    let square = square_witness(ball, &idx, &w, a, b, &rho)?;
    Ok(DavisPhi { a, b, base, wall_a, wall_b, map, parts, images, permutation, report, square })
}

fn square_witness(
    ball: &Ball,
    idx: &Index,
    w: &NormalForm,
    a: Generator,
    b: Generator,
    rho: &dyn Fn(&NormalForm) -> BTreeSet<ClassKey>,
) -> Result<SquareWitness, RaError> {
    let group = &ball.group;
    let (la, lb) = (Letter::new(a, false), Letter::new(b, false));
    let wa = group.mul_letter(w, la);
    let wb = group.mul_letter(w, lb);
    let wab = group.mul_letter(&wa, lb);
    let corners = [w.clone(), wa, wab, wb];
    let mut verts = [0; 4];
    let mut imgs = [0; 4];
    for i in 0..4 {
        let missing = || RaError::BallTooSmall("the square at the base leaves the ball".into());
        verts[i] = ball.vertex_of(&corners[i]).ok_or_else(missing)?;
        imgs[i] = *idx.by_walls.get(&rho(&corners[i])).ok_or_else(missing)?;
    }
    let cx = &ball.complex;
    let broken = (0..4)
        .find(|&i| cx.find_edge(imgs[i], imgs[(i + 1) % 4]).is_none())
        .ok_or_else(|| RaError::InvalidParameter(format!("ρ(φ) keeps the square at {} intact", w.display(ball.gamma()))))?;
    let j = (broken + 1) % 4;
    Ok(SquareWitness {
        corners: verts.map(|v| cx.name(v).to_string()),
        images: imgs.map(|v| cx.name(v).to_string()),
        broken_edge: (cx.name(verts[broken]).into(), cx.name(verts[j]).into()),
        image_distance: cx.distance(imgs[broken], imgs[j]),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PsiReport {
    pub n: usize,
    /// The generator `c` with `c ∉ St a` used to push `𝔞` away.
    pub c: String,
    pub wall_a_n: String,
    pub sides_disjoint: bool,
    pub contact_violations: Vec<String>,
    /// Interior vertices fixed by `ρ(ψ_n)`.
    pub fixed: Vec<String>,
    /// Interior vertices outside `𝔞⁺ ∪ 𝔞_n⁺`.
    pub predicted: Vec<String>,
}

impl PsiReport {
    pub fn passed(&self) -> bool {
        self.sides_disjoint && self.contact_violations.is_empty() && self.fixed == self.predicted
    }
}

/// `ψ_n = φ_{𝔞⁺,𝔟} ∘ φ_{𝔞_n⁺,𝔟_n}` with `𝔞_n = (r_𝔠 r_𝔞)ⁿ 𝔞`, where `𝔠` is
/// the hyperplane at the base labelled by the first generator outside
/// `St a`.
pub fn davis_psi(ball: &Ball, phi: &DavisPhi, n: usize) -> Result<PsiReport, RaError> {
    let group = &ball.group;
    let gamma = ball.gamma();
    let c = (0..gamma.order())
        .find(|&c| !gamma.star(phi.a).contains(c))
        .ok_or_else(|| RaError::InvalidParameter("St a is everything, so W_Γ has a finite factor".into()))?;
    let map = &phi.map;
    let w = &map.base;
    let (gc, ga) = (group.generator_element(c), group.generator_element(phi.a));
    let step = group.mul(&group.mul(&group.mul(w, &gc), &ga), &group.inverse(w));
    let mut t = NormalForm::identity();
    for _ in 0..n {
        t = group.mul(&step, &t);
    }
    let mut far = map.conjugate(group, &t);
    if far.in_plus(group, w) {
        far = far.flipped(group);
    }

    let keys: Vec<ClassKey> = (0..ball.complex.hyperplane_count()).map(|h| hyperplane_class(ball, h)).collect();
    let interior_vertices = ball.interior_vertices(DAVIS_MARGIN);
    let sides_disjoint = (0..ball.order()).all(|v| !(map.in_plus(group, ball.element(v)) && far.in_plus(group, ball.element(v))));

    let psi = |k: &ClassKey, g: &NormalForm| -> ClassKey {
        let inner = far.apply(group, k, g);
        // a carrier vertex of the image: move g along with the key
        let g2 = if far.part(group, k, g) == Part::Plus { group.mul(&far.reflection, g) } else { g.clone() };
        map.apply(group, &inner, &g2)
    };
    let sample = |h: HyperplaneId| {
        let e = ball.complex.hyperplanes()[h].dual_edges[0];
        ball.element(ball.complex.edges()[e].0).clone()
    };
    let interior: Vec<HyperplaneId> = ball.interior_hyperplanes(DAVIS_MARGIN).ones().collect();
    let images: Vec<ClassKey> = interior.iter().map(|&h| psi(&keys[h], &sample(h))).collect();
    let mut contact_violations = Vec::new();
    for i in 0..interior.len() {
        for j in i + 1..interior.len() {
            let before = keys_in_contact(group, &keys[interior[i]], &keys[interior[j]]);
            let after = keys_in_contact(group, &images[i], &images[j]);
            if before != after {
                contact_violations.push(format!("hyperplanes {}, {}", interior[i], interior[j]));
            }
        }
    }

    let mut fixed = Vec::new();
    let mut predicted = Vec::new();
    for &v in &interior_vertices {
        let g = ball.element(v);
        let walls = vertex_keys(group, g);
        let moved: BTreeSet<ClassKey> = walls.iter().map(|k| psi(k, g)).collect();
        let name = ball.complex.name(v).to_string();
        if moved == walls {
            fixed.push(name.clone());
        }
        if !map.in_plus(group, g) && !far.in_plus(group, g) {
            predicted.push(name);
        }
    }
    Ok(PsiReport {
        n,
        c: gamma.name(c).into(),
        wall_a_n: format!("{} at {}", gamma.name(phi.a), far.base.display(gamma)),
        sides_disjoint,
        contact_violations,
        fixed,
        predicted,
    })
}
