use num_bigint::BigInt;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use islandpoly::analysis::detect::{detect, Classification};
use islandpoly::closed_forms::{circle_modes, closed_beta, line_modes, ClosedKind};
use islandpoly::generators::{cycle, discrete, path, random_planar_map, random_torus_map, random_tree, EdgeKinds};
use islandpoly::surface::complement_components;
use islandpoly::transforms::{contract, subdivide};
use islandpoly::engine::{beta, beta_colored};
use islandpoly::{Coloring, EmbeddedGraph, Host, IntPoly, Multigraph, RotationMap, VertexSubset};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn choose(n: usize, k: usize) -> BigInt {
    let mut row = vec![BigInt::from(1)];
    for _ in 0..n {
        let mut next = vec![BigInt::from(1); row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_default()
}

fn one_plus_x(k: usize) -> IntPoly {
    IntPoly::new((0..=k).map(|i| choose(k, i)).collect())
}

/// Components of the subgraph of `g` induced on the vertices in `mask`.
fn component_count(g: &Multigraph, mask: u64) -> usize {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    let mut count = mask.count_ones() as usize;
    for e in g.edges() {
        if mask >> e.u & 1 == 1 && mask >> e.v & 1 == 1 {
            let (a, b) = (root(&mut parent, e.u), root(&mut parent, e.v));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
    }
    count
}

/// A forest on the vertices of `m`: a random acyclic subset of its edges.
fn forest_edges(m: &RotationMap, r: &mut ChaCha8Rng) -> Vec<usize> {
    let g = m.graph();
    let mut ids: Vec<usize> = (0..g.edge_count()).collect();
    ids.shuffle(r);
    let mut kept = Vec::new();
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn root(p: &[usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for e in ids {
        let edge = g.edge(e).unwrap();
        let (a, b) = (root(&parent, edge.u), root(&parent, edge.v));
        if a != b && r.gen_bool(0.7) {
            parent[a] = b;
            kept.push(e);
        }
    }
    kept.sort_unstable();
    kept
}

fn random_map(r: &mut ChaCha8Rng, torus: bool) -> RotationMap {
    let n = r.gen_range(1..=7);
    let extra = r.gen_range(0..=n + 1);
    if torus {
        random_torus_map(n, extra, EdgeKinds::Multi, r)
    } else {
        random_planar_map(n, extra, EdgeKinds::Multi, r)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn single_vertex_complement_is_connected(seed in any::<u64>(), torus in any::<bool>()) {
        let m = random_map(&mut rng(seed), torus);
        for v in 0..m.graph().vertex_count() {
            let s = VertexSubset::from_members(m.graph().vertex_count(), [v]).unwrap();
            prop_assert_eq!(complement_components(&m, &s, &[]).unwrap(), 1);
        }
    }

    #[test]
    fn whole_host_complement_is_the_face_set(seed in any::<u64>(), torus in any::<bool>()) {
        let m = random_map(&mut rng(seed), torus);
        let n = m.graph().vertex_count();
        let all: Vec<usize> = (0..m.graph().edge_count()).collect();
        prop_assert_eq!(
            complement_components(&m, &VertexSubset::full(n), &all).unwrap(),
            m.face_count()
        );
    }

    #[test]
    fn genus_zero_surface_mode_agrees_with_planar_mode(seed in any::<u64>()) {
        let m = random_map(&mut rng(seed), false);
        let n = m.graph().vertex_count();
        let planar = EmbeddedGraph::planar(m.graph().clone());
        let surface = EmbeddedGraph::surface(m);
        for mask in 1..1u64 << n {
            let s = VertexSubset::from_mask(n, mask).unwrap();
            prop_assert_eq!(planar.face_count(&s).unwrap(), surface.face_count(&s).unwrap());
        }
    }

    #[test]
    fn forests_have_one_face_per_island(seed in any::<u64>(), torus in any::<bool>()) {
        let mut r = rng(seed);
        let m = random_map(&mut r, torus);
        let n = m.graph().vertex_count();
        let es = forest_edges(&m, &mut r);
        let surface = EmbeddedGraph::with_marks(Host::Surface(m.clone()), VertexSubset::full(n), &es).unwrap();
        let planar = EmbeddedGraph::with_marks(Host::Planar(m.graph().clone()), VertexSubset::full(n), &es).unwrap();
        let forest = surface.graph();
        for mask in 1..1u64 << n {
            let s = VertexSubset::from_mask(n, mask).unwrap();
            let islands = component_count(&forest, mask);
            prop_assert_eq!(surface.face_count(&s).unwrap(), islands);
            prop_assert_eq!(planar.face_count(&s).unwrap(), islands);
        }
    }

    #[test]
    fn forest_counts_ignore_the_embedding(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_map(&mut r, true);
        let n = m.graph().vertex_count();
        let es = forest_edges(&m, &mut r);
        let on_torus = EmbeddedGraph::with_marks(Host::Surface(m), VertexSubset::full(n), &es).unwrap();
        let on_plane = EmbeddedGraph::planar(on_torus.graph());
        prop_assert_eq!(beta(&on_torus).unwrap(), beta(&on_plane).unwrap());
    }

    #[test]
    fn renaming_colors_keeps_colored_beta(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=7);
        let g = EmbeddedGraph::planar(random_tree(n, &mut r));
        let palette = ["r", "g", "b", "y"];
        let mut shuffled = palette;
        shuffled.shuffle(&mut r);
        let picks: Vec<usize> = (0..n).map(|_| r.gen_range(0..palette.len())).collect();
        let a: Vec<(usize, &str)> = picks.iter().enumerate().map(|(v, &c)| (v, palette[c])).collect();
        let b: Vec<(usize, &str)> = picks.iter().enumerate().map(|(v, &c)| (v, shuffled[c])).collect();
        let (Ok(ca), Ok(cb)) = (Coloring::from_names(&g, &a), Coloring::from_names(&g, &b)) else {
            return Ok(());
        };
        prop_assert_eq!(beta_colored(&g, &ca).unwrap(), beta_colored(&g, &cb).unwrap());
    }

    #[test]
    fn disconnected_graphs_vanish_at_minus_one(seed in any::<u64>()) {
        let mut r = rng(seed);
        let torus = r.gen_bool(0.5);
        let m = random_map(&mut r, torus);
        let n = m.graph().vertex_count();
        let es: Vec<usize> = (0..m.graph().edge_count()).filter(|_| r.gen_bool(0.5)).collect();
        let eg = EmbeddedGraph::with_marks(Host::Surface(m), VertexSubset::full(n), &es).unwrap();
        if component_count(&eg.graph(), (1u64 << n) - 1) > 1 {
            prop_assert_eq!(beta(&eg).unwrap().at_minus_one(), BigInt::from(0));
        }
    }

    #[test]
    fn contracting_a_subdivision_restores_beta(seed in any::<u64>(), torus in any::<bool>()) {
        let mut r = rng(seed);
        let eg = EmbeddedGraph::surface(random_map(&mut r, torus));
        let Some(&e) = eg.marked_edges().choose(&mut r) else {
            return Ok(());
        };
        let sub = subdivide(&eg, e).unwrap();
        let new_edge = sub.host_graph().edge_count() - 1;
        let (back, _) = contract(&sub, new_edge).unwrap();
        prop_assert_eq!(beta(&back).unwrap(), beta(&eg).unwrap());
        prop_assert_eq!(back.genus(), eg.genus());
    }

    #[test]
    fn transforms_yield_valid_maps(seed in any::<u64>(), torus in any::<bool>()) {
        let mut r = rng(seed);
        let mut eg = EmbeddedGraph::surface(random_map(&mut r, torus));
        let genus = eg.genus();
        for _ in 0..4 {
            let es = eg.marked_edges();
            let Some(&e) = es.choose(&mut r) else {
                return Ok(());
            };
            let loop_edge = eg.host_graph().edge(e).unwrap().is_loop();
            eg = if r.gen_bool(0.5) || loop_edge || eg.n() < 3 {
                subdivide(&eg, e).unwrap()
            } else {
                contract(&eg, e).unwrap().0
            };
            let m = eg.map().unwrap();
            let rebuilt = RotationMap::new(m.graph().clone(), m.rotations().to_vec()).unwrap();
            prop_assert_eq!(rebuilt.genus(), genus);
        }
    }
}

#[test]
fn discrete_graphs() {
    for n in 1..=12 {
        let b = beta(&EmbeddedGraph::planar(discrete(n))).unwrap();
        assert_eq!(b.total, one_plus_x(n - 1).scale(&BigInt::from(n)), "n={n}");
    }
}

#[test]
fn trees_follow_the_binomial_formula() {
    let mut r = rng(7);
    for n in 2..=10 {
        let want = &one_plus_x(n - 1) + &one_plus_x(n - 2).scale(&BigInt::from(n - 1));
        for g in [path(n), random_tree(n, &mut r), random_tree(n, &mut r)] {
            assert_eq!(beta(&EmbeddedGraph::planar(g)).unwrap().total, want, "n={n}");
        }
    }
}

#[test]
fn cycle_counts_match_circle_counts() {
    let modes = circle_modes();
    for n in 3..=12 {
        let b = beta(&EmbeddedGraph::planar(cycle(n))).unwrap();
        for m in 1..n {
            for mode in modes.iter() {
                assert_eq!(b.counts.0[m - 1], mode.count(n, m).unwrap(), "n={n} m={m} {}", mode.name());
            }
        }
        assert_eq!(b.bar.at_minus_one(), BigInt::from(0), "n={n}");
    }
}

#[test]
fn cycle_values_at_minus_one_alternate() {
    let at = |n: usize| beta(&EmbeddedGraph::planar(cycle(n))).unwrap().at_minus_one();
    for n in 3..12 {
        assert_eq!(at(n + 1), -at(n), "n={n}");
    }
}

#[test]
fn line_modes_agree_up_to_fourteen() {
    let modes = line_modes();
    for n in 1..=14 {
        for m in 1..=n {
            // interval [1, n] of a path: count islands by brute force
            let g = path(n);
            let mut brute = BigInt::from(0);
            for mask in 1..1u64 << n {
                if mask.count_ones() as usize == m {
                    brute += component_count(&g, mask);
                }
            }
            for mode in modes.iter() {
                assert_eq!(mode.count(n, m).unwrap(), brute, "n={n} m={m} {}", mode.name());
            }
        }
    }
}

#[test]
fn detect_inverts_closed_forms() {
    for n in 2..=10 {
        let p = closed_beta(ClosedKind::Tree(n)).unwrap();
        assert_eq!(detect(&p, n).classification, Classification::Tree);
    }
    for n in 3..=10 {
        for (separating, c) in [(true, 2), (false, 1)] {
            let p = closed_beta(ClosedKind::Cycle { n, separating }).unwrap();
            assert_eq!(detect(&p, n).classification, Classification::Cycle { c }, "n={n}");
        }
    }
    for n in 3..=8 {
        for k in 0..3u64 {
            for m in 0..n as u64 - 1 {
                let a = BigInt::from(1 + k + m);
                let b = BigInt::from(n as u64 - 1 - m);
                let p = &one_plus_x(n - 1).scale(&a) + &one_plus_x(n - 2).scale(&b);
                match detect(&p, n).classification {
                    Classification::DecoratedTree { loops, parallels, .. } => assert_eq!((loops, parallels), (k, m)),
                    Classification::Tree => assert_eq!((k, m), (0, 0)),
                    other => panic!("n={n} k={k} m={m}: {other:?}"),
                }
            }
        }
    }
}
