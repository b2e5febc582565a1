//! Halfspace twists in Artin balls: apply the inversion of one generator on
//! one side of a hyperplane and the identity on the other.

use serde::Serialize;

use super::ball::Ball;
use super::gamma::Generator;
use super::word::{GroupKind, Letter};
use super::RaError;
use crate::automorphism::GraphAutomorphism;
use crate::median::{HyperplaneId, VertexId};

/// Side of the twisting hyperplane: `A` contains the identity, `B` contains
/// the generator `x`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum Side {
    A,
    #[default]
    B,
}

#[derive(Clone, Debug)]
pub struct Twist {
    pub x: Generator,
    pub y: Generator,
    /// The hyperplane dual to the edge from the identity to `x`.
    pub wall: HyperplaneId,
    pub side: Side,
    pub psi: GraphAutomorphism,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct TwistReport {
    pub moved_vertices: usize,
    pub carrier_size: usize,
    pub pairs_checked: usize,
    /// Interior pairs with no conjugating element inside the ball.
    pub pairs_without_witness: Vec<(String, String)>,
    pub conjugation_failures: Vec<String>,
}

/// Builds `ψ` and certifies that it is an automorphism of the ball, that it
/// moves some vertex, and that it fixes the carrier of the wall pointwise.
pub fn halfspace_twist(ball: &Ball, x: Generator, y: Generator, side: Side) -> Result<Twist, RaError> {
    if ball.kind() != GroupKind::Artin {
        return Err(RaError::WrongKind("halfspace twists act on Artin balls".into()));
    }
    let gamma = ball.gamma();
    if x >= gamma.order() || y >= gamma.order() {
        return Err(RaError::InvalidParameter("generator index out of range".into()));
    }
    if x == y || gamma.commute(x, y) {
        return Err(RaError::GeneratorsAdjacent(gamma.name(x).into(), gamma.name(y).into()));
    }
    if ball.radius < 2 {
        return Err(RaError::BallTooSmall("the twist is the identity on balls of radius 1".into()));
    }
    let cx = &ball.complex;
    let wall = ball.hyperplane_at(ball.identity_vertex(), Letter::new(x, false)).expect("radius ≥ 1 contains the edge to x");
    let hp = &cx.hyperplanes()[wall];
    let twisted = match side {
        Side::A => &hp.side_a,
        Side::B => &hp.side_b,
    };
    let flip = |l: Letter| if l.gen == y { Letter::new(y, !l.inverse) } else { l };
    let mut perm = Vec::with_capacity(ball.order());
    for v in 0..ball.order() {
        if twisted.contains(v) {
            let image = ball.group.substitute(ball.element(v), flip);
            let u = ball.vertex_of(&image).ok_or_else(|| RaError::BallTooSmall(format!("image of {} leaves the ball", cx.name(v))))?;
            perm.push(u);
        } else {
            perm.push(v);
        }
    }
    let psi = GraphAutomorphism::new(cx.graph(), perm)?;
    if psi.is_identity() {
        return Err(RaError::BallTooSmall("the twist moves no vertex".into()));
    }
    if let Some(v) = hp.carrier.ones().find(|&v| psi.apply(v) != v) {
        return Err(RaError::InvalidParameter(format!("the twist moves carrier vertex {}", cx.name(v))));
    }
    Ok(Twist { x, y, wall, side, psi })
}

/// For every pair `F` of vertices of depth at least `margin`, looks for a
/// ball element `g` with `gF` on the untwisted side, and checks that
/// `g⁻¹ψg` fixes `F`.
pub fn conjugation_check(ball: &Ball, twist: &Twist, margin: usize) -> TwistReport {
    let cx = &ball.complex;
    let hp = &cx.hyperplanes()[twist.wall];
    let fixed_side = match twist.side {
        Side::A => &hp.side_b,
        Side::B => &hp.side_a,
    };
    let mut report = TwistReport { moved_vertices: twist.psi.moved().len(), carrier_size: hp.carrier.count_ones(..), ..Default::default() };
    let interior = ball.interior_vertices(margin);
    let translate = |g: VertexId, f: VertexId| ball.vertex_of(&ball.group.mul(ball.element(g), ball.element(f)));
    for (i, &f1) in interior.iter().enumerate() {
        for &f2 in &interior[i + 1..] {
            report.pairs_checked += 1;
            let witness = (0..ball.order()).find_map(|g| {
                let (a, b) = (translate(g, f1)?, translate(g, f2)?);
                (fixed_side.contains(a) && fixed_side.contains(b)).then_some((g, a, b))
            });
            let Some((g, a, b)) = witness else {
                report.pairs_without_witness.push((cx.name(f1).into(), cx.name(f2).into()));
                continue;
            };
            let g_inv = ball.group.inverse(ball.element(g));
            for (f, gf) in [(f1, a), (f2, b)] {
                let back = ball.group.mul(&g_inv, ball.element(twist.psi.apply(gf)));
                if ball.vertex_of(&back) != Some(f) {
                    report.conjugation_failures.push(format!("g = {} moves {}", cx.name(g), cx.name(f)));
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ra::DefiningGraph;

    fn ball(name: &str, r: usize) -> Ball {
        Ball::build(DefiningGraph::builtin(name).unwrap(), GroupKind::Artin, r, 10_000).unwrap()
    }

    #[test]
    fn free_group_twist() {
        let b = ball("F2", 2);
        let t = halfspace_twist(&b, 0, 1, Side::B).unwrap();
        let v = |w: &str| b.parse_vertex(w).unwrap();
        assert_eq!(t.psi.apply(v("x y")), v("x y^-1"));
        assert_eq!(t.psi.apply(v("y")), v("y"));
        let r = conjugation_check(&b, &t, 1);
        assert!(r.pairs_without_witness.is_empty() && r.conjugation_failures.is_empty());
    }

    #[test]
    fn rejections() {
        let k2 = ball("K2", 2);
        assert!(matches!(halfspace_twist(&k2, 0, 1, Side::B), Err(RaError::GeneratorsAdjacent(..))));
        let f2 = ball("F2", 1);
        assert!(matches!(halfspace_twist(&f2, 0, 1, Side::B), Err(RaError::BallTooSmall(_))));
    }
}
