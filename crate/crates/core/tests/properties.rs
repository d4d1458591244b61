use std::collections::BTreeSet;

use billiard_core::dynamics::{bridged_edge, state_count};
use billiard_core::graphs::{
    emit_graph6, family, graph_from_mask, pair_count, parse_graph6, EnumerateOptions, GraphEnumerator,
};
use billiard_core::orbits::orbit_states;
use billiard_core::{
    all_orbits, classify, orbit_summary, theta, theta_inverse, BilliardState, EventKind, Graph, MaterializedGraph,
    Orientation,
};
use proptest::prelude::*;

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    GraphEnumerator::new(n, EnumerateOptions::default()).unwrap()
}

fn iso_classes(n: usize) -> Vec<Graph> {
    let opts = EnumerateOptions {
        connected: false,
        iso_dedup: true,
    };
    GraphEnumerator::new(n, opts).unwrap().collect()
}

/// A graph on 3..=6 vertices, a reflect-edge selector and a state index.
fn instance() -> impl Strategy<Value = (MaterializedGraph, BilliardState)> {
    (3usize..=6)
        .prop_flat_map(|n| (Just(n), 0u64..1 << pair_count(n), any::<u64>(), 0..state_count(n)))
        .prop_map(|(n, mask, sel, idx)| {
            let g = graph_from_mask(n, mask).unwrap();
            let reflect: Vec<_> = g
                .edges()
                .enumerate()
                .filter(|(k, _)| sel >> k & 1 == 1)
                .map(|(_, e)| e)
                .collect();
            let m = MaterializedGraph::new(g, &reflect).unwrap();
            (m, BilliardState::from_index(n, idx).unwrap())
        })
}

fn random_graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi)
        .prop_flat_map(|n| (Just(n), 0u64..1 << pair_count(n)))
        .prop_map(|(n, mask)| graph_from_mask(n, mask).unwrap())
}

proptest! {
    #[test]
    fn swap_locality((m, s) in instance()) {
        let n = s.order();
        let (t, ev) = theta(&m, &s).unwrap();
        let i = s.pointer() % n;
        let changed: Vec<usize> = (0..n).filter(|&p| s.occupant_at(p) != t.occupant_at(p)).collect();
        let eps = s.orientation().sign();
        let step = |d: i64| ((s.pointer() as i64 - 1 + d).rem_euclid(n as i64) + 1) as usize;
        match ev.kind {
            EventKind::Window => {
                prop_assert_eq!(changed, vec![i.min((i + 1) % n), i.max((i + 1) % n)]);
                prop_assert_eq!((t.pointer(), t.orientation()), (step(eps), s.orientation()));
            }
            EventKind::Refract => {
                prop_assert_eq!(changed.len(), 2);
                prop_assert_eq!((t.pointer(), t.orientation()), (step(-eps), s.orientation().flip()));
            }
            EventKind::Reflect => {
                prop_assert!(changed.is_empty());
                prop_assert_eq!((t.pointer(), t.orientation()), (step(eps), s.orientation()));
            }
        }
    }

    #[test]
    fn stone_step_consistency((m, s) in instance()) {
        let n = s.order() as i64;
        let (t, ev) = theta(&m, &s).unwrap();
        let moved = (s.stone_position() as i64 + ev.stone_delta - 1).rem_euclid(n) + 1;
        prop_assert_eq!(t.stone_position() as i64, moved);
    }

    #[test]
    fn coin_moves_only_across_refraction_edges((m, s) in instance()) {
        let m = MaterializedGraph::from(m.graph().clone());
        let (t, ev) = theta(&m, &s).unwrap();
        if ev.kind == EventKind::Refract {
            let (a, b) = (s.coin_vertex(), t.coin_vertex());
            prop_assert!(a != b && m.graph().has_edge(a, b));
        } else {
            prop_assert_eq!(s.coin_vertex(), t.coin_vertex());
        }
    }

    #[test]
    fn theta_round_trips((m, s) in instance()) {
        let (t, _) = theta(&m, &s).unwrap();
        prop_assert_eq!(theta_inverse(&m, &t).unwrap(), s);
        prop_assert_eq!(theta(&m, &theta_inverse(&m, &s).unwrap()).unwrap().0, s);
    }

    #[test]
    fn isomorphism_invariance(g in random_graph(3, 6), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let n = g.order();
        let mut perm: Vec<usize> = (1..=n).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let h = g.relabel(&perm).unwrap();
        let shape = |g: &Graph| {
            let mut v: Vec<(u64, Vec<i64>, i64)> = all_orbits(&g.clone().into(), 1)
                .unwrap()
                .into_iter()
                .map(|o| {
                    let mut w = o.winding.clone();
                    w.sort();
                    (o.period, w, o.stone_winding)
                })
                .collect();
            v.sort();
            v
        };
        prop_assert_eq!(shape(&g), shape(&h));
        let (a, b) = (classify(&g.into()).unwrap(), classify(&h.into()).unwrap());
        prop_assert_eq!((a.kind, a.revolutionary), (b.kind, b.revolutionary));
    }

    #[test]
    fn bipartition_matches_brute_force(g in random_graph(1, 7)) {
        let n = g.order();
        let colourable = (0u32..1 << n).any(|c| g.edges().all(|(a, b)| (c >> (a - 1) & 1) != (c >> (b - 1) & 1)));
        let found = g.is_bipartite();
        prop_assert_eq!(found.is_some(), colourable);
        if let Some((x, y)) = found {
            prop_assert_eq!(x.len() + y.len(), n);
            for (a, b) in g.edges() {
                prop_assert!(x.contains(&a) != x.contains(&b));
            }
        }
    }

    #[test]
    fn complement_invariants(g in random_graph(1, 8), extra in 0usize..4) {
        let n = g.order();
        prop_assert_eq!(g.complement().complement(), g.clone());
        prop_assert_eq!(g.compl_n(n).unwrap(), g.complement());
        let big = g.compl_n(n + extra).unwrap();
        let total = (n + extra) * (n + extra - 1) / 2;
        prop_assert_eq!(big.edge_count(), total - g.edge_count());
        for v in n + 1..=n + extra {
            prop_assert_eq!(big.degree(v), n + extra - 1);
        }
    }
}

#[test]
fn graph6_round_trip() {
    for n in 1..=5 {
        for g in all_graphs(n) {
            assert_eq!(parse_graph6(&emit_graph6(&g).unwrap()).unwrap(), g);
        }
    }
}

#[test]
fn winding_sums_and_periods() {
    for n in 3..=5 {
        for g in all_graphs(n) {
            for m in MaterializedGraph::all_partitions(&g) {
                let orbits = all_orbits(&m, 1).unwrap();
                assert_eq!(orbits.iter().map(|o| o.period).sum::<u64>(), state_count(n));
                for o in &orbits {
                    assert_eq!(o.winding.iter().sum::<i64>(), 0);
                }
            }
        }
    }
}

#[test]
fn representative_independence() {
    for n in 3..=5 {
        for g in all_graphs(n) {
            let m = MaterializedGraph::from(g);
            for o in all_orbits(&m, 1).unwrap() {
                for s in orbit_states(&m, &o.representative).unwrap() {
                    assert_eq!(orbit_summary(&m, &s).unwrap(), o);
                }
            }
        }
    }
}

/// Within an orbit of a bipartite graph the orientation is determined by the
/// side of the coin vertex.
#[test]
fn bipartite_orientation_parity() {
    for n in 3..=5 {
        for g in all_graphs(n) {
            let Some((x, _)) = g.is_bipartite() else { continue };
            let m = MaterializedGraph::from(g);
            for o in all_orbits(&m, 1).unwrap() {
                let signs: BTreeSet<i64> = orbit_states(&m, &o.representative)
                    .unwrap()
                    .iter()
                    .map(|s| {
                        let side = if x.contains(&s.coin_vertex()) { 1 } else { -1 };
                        side * s.orientation().sign()
                    })
                    .collect();
                assert_eq!(signs.len(), 1, "{}", billiard_core::print_spec(&m));
            }
        }
    }
}

/// Bridged edges stay in one complement component, the stone always sits on
/// or faces that component, and the orbit is the same under the graph that
/// keeps only that component's complement edges.
#[test]
fn bridged_components() {
    for n in 3..=5 {
        for g in all_graphs(n) {
            let comps = g.complement_components();
            let m = MaterializedGraph::from(g.clone());
            for o in all_orbits(&m, 1).unwrap() {
                let orbit = orbit_states(&m, &o.representative).unwrap();
                let bridged: BTreeSet<(usize, usize)> =
                    orbit.iter().filter_map(|s| bridged_edge(&m, s, 0).unwrap()).collect();
                let Some(&(a, _)) = bridged.iter().next() else { continue };
                let comp = comps.iter().find(|c| c.contains(&a)).unwrap();
                for &(u, v) in &bridged {
                    assert!(comp.contains(&u) && comp.contains(&v));
                }
                for s in &orbit {
                    assert!(comp.contains(&s.coin_vertex()) || comp.contains(&s.pointed_vertex()));
                }
                let isolated = MaterializedGraph::from(g.isolate_complement_component(comp).unwrap());
                assert_eq!(orbit_states(&isolated, &o.representative).unwrap(), orbit);
            }
        }
    }
}

/// The only complement edge is {1, 2}, so every bridged edge is one of its
/// two orientations. Orbits that never bring the stone between 1 and 2 have
/// no prerefractive state and hence no bridged edge.
#[test]
fn bridged_edge_of_two_vertex_complement() {
    let m = MaterializedGraph::from(family("complete", &[2]).unwrap().compl_n(5).unwrap());
    let (mut with, mut without) = (0, 0);
    for o in all_orbits(&m, 1).unwrap() {
        let period = o.period as usize;
        for s in orbit_states(&m, &o.representative).unwrap() {
            match bridged_edge(&m, &s, period).unwrap() {
                Some(e) => {
                    assert!(o.has_prerefractive);
                    assert!(e == (1, 2) || e == (2, 1), "{s}: {e:?}");
                    with += 1;
                }
                None => {
                    assert!(!o.has_prerefractive, "{s}");
                    without += 1;
                }
            }
        }
    }
    assert_eq!(with + without, state_count(5));
    assert!(with > 0 && without > 0);
}

#[test]
fn complement_of_path_orbit_sizes() {
    let m = MaterializedGraph::from(family("path", &[3]).unwrap().compl_n(6).unwrap());
    let periods: BTreeSet<u64> = all_orbits(&m, 1).unwrap().iter().map(|o| o.period).collect();
    assert_eq!(periods, BTreeSet::from([6, 42]));
}

#[test]
fn union_law() {
    let classes: Vec<Vec<Graph>> = (0..=6).map(|n| if n == 0 { vec![] } else { iso_classes(n) }).collect();
    for n1 in 1..=6 {
        for n2 in 1..=7 - n1 {
            if n1 + n2 < 3 {
                continue;
            }
            for a in &classes[n1] {
                let ca = classify(&a.clone().into()).unwrap();
                for b in &classes[n2] {
                    let cb = classify(&b.clone().into()).unwrap();
                    let u = classify(&a.disjoint_union(b).unwrap().into()).unwrap();
                    let expect = ca.is_ensnaring() && !ca.revolutionary && cb.is_ensnaring() && !cb.revolutionary;
                    assert_eq!(u.is_ensnaring(), expect, "{a:?} + {b:?}");
                }
            }
        }
    }
}

#[test]
fn wedge_law() {
    let ensnaring: Vec<Graph> = (1..=4)
        .flat_map(iso_classes)
        .filter(|g| classify(&g.clone().into()).unwrap().is_ensnaring())
        .collect();
    for a in &ensnaring {
        for b in &ensnaring {
            for v1 in 1..=a.order() {
                for v2 in 1..=b.order() {
                    let w = a.wedge(v1, b, v2).unwrap();
                    if w.order() >= 3 {
                        assert!(classify(&w.clone().into()).unwrap().is_ensnaring(), "{w:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn states_round_trip_through_text() {
    let s = BilliardState::new(&[3, 1, 2], 2, Orientation::Counterclockwise).unwrap();
    let t: BilliardState = s.to_string().parse().unwrap();
    assert_eq!(s, t);
}
