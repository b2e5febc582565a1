//! Invariants of random median complexes and group balls.

use cubetact::automorphism::check_partial_isomorphism;
use cubetact::cliques::is_clique;
use cubetact::contact::all_interaction_sets;
use cubetact::io::{complex_json, parse_complex};
use cubetact::median::{hypercube_subgraph, median_closure};
use cubetact::ra::extension::{compare_with_reduced, wall_key, walls_transverse};
use cubetact::ra::word::alphabet;
use cubetact::ra::{Ball, DefiningGraph, GroupKind};
use cubetact::reconstruction::{adjacency_criterion, reconstruct};
use cubetact::{maximal_cliques, ContactFamily, CubeComplex, ReducedMode};
use proptest::prelude::*;

const CAP: usize = 4096;

fn bits(cx: &CubeComplex, v: usize) -> u32 {
    u32::from_str_radix(cx.name(v), 2).unwrap()
}

fn complex() -> impl Strategy<Value = (usize, CubeComplex)> {
    (2usize..=6).prop_flat_map(|dim| {
        prop::collection::vec(0u32..(1 << dim), 1..=6).prop_map(move |seeds| {
            let vs = median_closure(dim, &seeds, CAP).unwrap();
            (dim, hypercube_subgraph(dim, &vs).unwrap())
        })
    })
}

fn mode() -> impl Strategy<Value = ReducedMode> {
    prop_oneof![Just(ReducedMode::SelfExclusive), Just(ReducedMode::Strict)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph_distance_is_hamming_distance((_, cx) in complex()) {
        for u in 0..cx.order() {
            for v in 0..cx.order() {
                prop_assert_eq!(cx.distance(u, v), (bits(&cx, u) ^ bits(&cx, v)).count_ones() as usize);
            }
        }
    }

    #[test]
    fn hyperplanes_are_varying_coordinates((_, cx) in complex()) {
        let base = bits(&cx, 0);
        let varying = (0..cx.order()).fold(0u32, |acc, v| acc | (bits(&cx, v) ^ base));
        prop_assert_eq!(cx.hyperplane_count(), varying.count_ones() as usize);
        for h in cx.hyperplanes() {
            prop_assert_eq!(h.side_a.count_ones(..) + h.side_b.count_ones(..), cx.order());
            prop_assert!(h.side_a.is_disjoint(&h.side_b));
            prop_assert!(cx.convexity_violation(&h.side_a).is_none());
            prop_assert!(cx.convexity_violation(&h.carrier).is_none());
        }
    }

    #[test]
    fn separating_hyperplanes_count_distance((_, cx) in complex()) {
        let last = cx.order() - 1;
        prop_assert_eq!(cx.separating(&[0], &[last]).unwrap().len(), cx.distance(0, last));
    }

    #[test]
    fn contact_family_is_consistent((_, cx) in complex(), m in mode()) {
        let f = ContactFamily::build(&cx, m);
        for (u, w) in f.crossing.edges() {
            prop_assert!(f.contact.has_edge(u, w));
            prop_assert!(cx.share_square(u, w));
        }
        prop_assert_eq!(f.check_quotient(), Ok(()));
        let members: usize = f.classes.iter().map(Vec::len).sum();
        prop_assert_eq!(members, cx.hyperplane_count());
    }

    #[test]
    fn maximal_cliques_are_vertex_sets((_, cx) in complex()) {
        let f = ContactFamily::build(&cx, ReducedMode::default());
        let wv: Vec<Vec<usize>> = (0..cx.order()).map(|v| cx.hyperplanes_at(v).unwrap().ones().collect()).collect();
        for w in &wv {
            prop_assert!(is_clique(&f.contact, w));
        }
        for c in maximal_cliques(&f.contact, 100_000).unwrap() {
            prop_assert!(wv.contains(&c), "maximal clique {:?} is no W_v", c);
        }
        prop_assert!(reconstruct(&f.contact, 100_000).is_ok());
    }

    #[test]
    fn nonadjacent_pairs_fail_the_criterion((_, cx) in complex()) {
        for u in 0..cx.order() {
            for v in u + 1..cx.order() {
                if !cx.graph().has_edge(u, v) {
                    prop_assert!(!adjacency_criterion(&cx, u, v).unwrap().holds);
                }
            }
        }
    }

    #[test]
    fn interaction_sets_are_bounded_by_dimension((_, cx) in complex()) {
        for s in all_interaction_sets(&cx) {
            prop_assert!(s.i.len() <= cx.dimension());
            prop_assert!(s.i0.contains(&s.base));
            prop_assert!(s.i0.iter().all(|h| s.i.contains(h)));
        }
    }

    #[test]
    fn json_roundtrip_is_byte_stable((_, cx) in complex()) {
        let text = complex_json(&cx);
        prop_assert_eq!(complex_json(&parse_complex(&text).unwrap()), text);
    }
}

fn defining_graph() -> impl Strategy<Value = DefiningGraph> {
    (1usize..=4).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        prop::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
            let edges: Vec<(String, String)> =
                pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(&(a, b), _)| (names[a].clone(), names[b].clone())).collect();
            DefiningGraph::new(names, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn left_multiplication_preserves_adjacency(gamma in defining_graph(), coxeter in any::<bool>()) {
        let kind = if coxeter { GroupKind::Coxeter } else { GroupKind::Artin };
        let ball = Ball::build(gamma, kind, 2, 20_000).unwrap();
        for l in alphabet(ball.gamma(), kind) {
            let g = ball.group.normal_form(&[l]);
            prop_assert!(check_partial_isomorphism(ball.complex.graph(), &ball.left_multiplication(&g)).is_ok());
        }
    }

    #[test]
    fn balls_are_median_with_one_label_per_hyperplane(gamma in defining_graph(), coxeter in any::<bool>()) {
        let kind = if coxeter { GroupKind::Coxeter } else { GroupKind::Artin };
        let ball = Ball::build(gamma, kind, 2, 20_000).unwrap();
        prop_assert_eq!(ball.labels.len(), ball.complex.hyperplane_count());
        // each edge's label is the generator separating its endpoints
        for (e, &(u, v)) in ball.complex.edges().iter().enumerate() {
            let step = ball.group.mul(&ball.group.inverse(ball.element(u)), ball.element(v));
            prop_assert_eq!(step.len(), 1);
            prop_assert_eq!(step.letters()[0].gen, ball.labels[ball.complex.edge_hyperplane(e)]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ball_squares_cross_exactly(gamma in defining_graph()) {
        let ball = Ball::build(gamma, GroupKind::Artin, 2, 20_000).unwrap();
        let keys: Vec<_> = (0..ball.complex.hyperplane_count()).map(|w| wall_key(&ball, w)).collect();
        for u in 0..keys.len() {
            for w in u + 1..keys.len() {
                if ball.complex.transverse(u, w) {
                    prop_assert!(walls_transverse(&ball.group, &keys[u], &keys[w]));
                }
            }
        }
    }

    #[test]
    fn reduced_crossing_graph_is_extension_graph_modulo_twins(gamma in defining_graph()) {
        let ball = Ball::build(gamma, GroupKind::Artin, 3, 20_000).unwrap();
        let c = compare_with_reduced(&ball, 2).unwrap();
        prop_assume!(c.skipped.is_none());
        prop_assert!(c.quotient_mismatches.is_empty(), "{} {:?}", ball.gamma().to_json(), c.quotient_mismatches);
        match &c.link_containment {
            None => prop_assert!(c.mismatches.is_empty(), "{} {:?}", ball.gamma().to_json(), c.mismatches),
            Some(lc) => {
                prop_assert!(lc.twins_confirmed, "{} {:?}", ball.gamma().to_json(), lc);
                prop_assert!(!c.mismatches.is_empty());
            }
        }
    }
}
