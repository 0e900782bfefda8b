use std::collections::BTreeSet;

use proptest::prelude::*;

use endspace::catalog;
use endspace::cuts::flow::Network;
use endspace::graph_model::{truncate, EdgeRef, FiniteGraph, Presentation, VertexRef};
use endspace::separation::Separator;
use endspace::spaces::enumerate_edge_directions;
use endspace::starcomb::star_or_comb_in;
use endspace::transforms::{completion, line_component_check, line_graph, HGraph};

fn catalog_graph() -> impl Strategy<Value = Presentation> {
    (0..catalog::names().len()).prop_map(|i| catalog::get(catalog::names()[i]).unwrap())
}

/// A simple graph on `n` vertices from a mask over vertex pairs.
fn simple_graph(max_n: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let m = pairs.len();
        proptest::collection::vec(any::<bool>(), m).prop_map(move |mask| {
            let es = pairs.iter().zip(&mask).filter(|(_, &keep)| keep).map(|(e, _)| *e).collect();
            (n, es)
        })
    })
}

/// A connected graph: a random tree plus extra edges.
fn connected_graph(max_n: usize) -> impl Strategy<Value = FiniteGraph<usize>> {
    (2..=max_n).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<prop::sample::Index>(), n - 1),
            proptest::collection::vec((0..n, 0..n), 0..n),
        )
            .prop_map(move |(parents, extra)| {
                let mut es: BTreeSet<(usize, usize)> = BTreeSet::new();
                for (i, p) in parents.iter().enumerate() {
                    es.insert((p.index(i + 1), i + 1));
                }
                for (a, b) in extra {
                    if a != b {
                        es.insert((a.min(b), a.max(b)));
                    }
                }
                FiniteGraph::new(0..n, es).unwrap()
            })
    })
}

fn components_with_an_edge(n: usize, es: &[(usize, usize)]) -> usize {
    let g = FiniteGraph::new(0..n, es.iter().copied()).unwrap();
    g.components().iter().filter(|c| c.iter().any(|&v| g.degree(v) > 0)).count()
}

/// Least number of edges whose removal separates `s` from `t`, by brute force.
fn brute_min_cut(n: usize, es: &[(usize, usize)], s: usize, t: usize) -> usize {
    for k in 0..=es.len() {
        let mut found = false;
        for mask in 0u32..(1 << es.len()) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let kept: Vec<(usize, usize)> = es
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 0)
                .map(|(_, e)| *e)
                .collect();
            let g = FiniteGraph::new(0..n, kept).unwrap();
            let (comp, _) = g.components_without(&[], &BTreeSet::new());
            if comp[s] != comp[t] {
                found = true;
                break;
            }
        }
        if found {
            return k;
        }
    }
    unreachable!("removing every edge separates")
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn truncations_nest(p in catalog_graph(), n in 1u64..7) {
        let small = truncate(&p, n).graph;
        let big = truncate(&p, n + 1).graph;
        prop_assert!(small.is_induced_subgraph_of(&big));
    }

    #[test]
    fn documents_round_trip(p in catalog_graph()) {
        let text = serde_json::to_string(&p.to_doc()).unwrap();
        prop_assert_eq!(Presentation::parse(&text).unwrap(), p);
    }

    #[test]
    fn line_graph_components_match((n, es) in simple_graph(8), picks in proptest::collection::vec(any::<prop::sample::Index>(), 0..=3)) {
        let g = FiniteGraph::new(0..n, es.iter().copied()).unwrap();
        let lg = line_graph(&g);
        let pairs: usize = (0..n).map(|v| g.degree(v) * g.degree(v).saturating_sub(1) / 2).sum();
        prop_assert_eq!(lg.graph.edge_count(), pairs);
        let f: BTreeSet<(usize, usize)> = if es.is_empty() {
            BTreeSet::new()
        } else {
            picks.iter().map(|i| es[i.index(es.len())]).collect()
        };
        let f: Vec<(usize, usize)> = f.into_iter().collect();
        let kept: Vec<(usize, usize)> = es.iter().copied().filter(|e| !f.contains(e)).collect();
        let got = line_component_check(&g, &f);
        prop_assert_eq!(got, Ok(components_with_an_edge(n, &kept)));
    }

    #[test]
    fn max_flow_is_min_cut((n, es) in simple_graph(6), s in any::<prop::sample::Index>(), t in any::<prop::sample::Index>()) {
        prop_assume!(n >= 2 && es.len() <= 10);
        let (s, t) = (s.index(n), t.index(n));
        prop_assume!(s != t);
        let mut net = Network::new(n);
        for &(a, b) in &es {
            net.add_edge(a, b, 1);
        }
        let flow = net.max_flow(s, t, u64::MAX);
        prop_assert_eq!(flow as usize, brute_min_cut(n, &es, s, t));
    }

    #[test]
    fn theta_maps_walks_to_walks(which in 0usize..3, start in any::<prop::sample::Index>(), steps in proptest::collection::vec(any::<prop::sample::Index>(), 1..12)) {
        let name = ["double_ray_dominator", "three_cliques", "nonmet_countable"][which];
        let p = catalog::get(name).unwrap();
        let h = HGraph::new(&p).unwrap();
        let t = truncate(&p, 4).graph;
        let mut at = start.index(t.vertex_count());
        let mut walk = vec![t.label(at).clone()];
        for s in steps {
            let nb = t.neighbors(at);
            if nb.is_empty() {
                break;
            }
            at = nb[s.index(nb.len())];
            walk.push(t.label(at).clone());
        }
        let image = h.theta_walk(&walk);
        let hg = h.truncate(4);
        for pair in image.windows(2) {
            let (a, b) = (hg.index_of(&pair[0]), hg.index_of(&pair[1]));
            prop_assert!(a.is_some() && b.is_some(), "{} {}", pair[0], pair[1]);
            prop_assert!(hg.has_edge(a.unwrap(), b.unwrap()), "{} {}", pair[0], pair[1]);
        }
    }

    #[test]
    fn partitions_refine_along_inclusion(p in catalog_graph(), a in proptest::collection::vec(any::<prop::sample::Index>(), 0..3), b in proptest::collection::vec(any::<prop::sample::Index>(), 0..3)) {
        let dirs = enumerate_edge_directions(&p).unwrap();
        let es: Vec<EdgeRef> = truncate(&p, 3).graph.edge_labels().into_iter().map(|(x, y)| EdgeRef::new(x, y)).collect();
        prop_assume!(!es.is_empty());
        let small: BTreeSet<EdgeRef> = a.iter().map(|i| es[i.index(es.len())].clone()).collect();
        let mut big = small.clone();
        big.extend(b.iter().map(|i| es[i.index(es.len())].clone()));
        let coarse = dirs.partition_of(&Separator::Edges(small)).unwrap();
        let fine = dirs.partition_of(&Separator::Edges(big)).unwrap();
        prop_assert!(fine.refines(&coarse));
    }

    #[test]
    fn completion_flanks_stay_bounded(p in catalog_graph(), picks in proptest::collection::vec(any::<prop::sample::Index>(), 1..6)) {
        let r = completion(&p).unwrap();
        let es: Vec<EdgeRef> = truncate(&p, 5).graph.edge_labels().into_iter().map(|(x, y)| EdgeRef::new(x, y)).collect();
        prop_assume!(!es.is_empty());
        let f = Separator::edges(picks.iter().map(|i| es[i.index(es.len())].clone()));
        let g = r.map_separator(&f).unwrap();
        prop_assert!(g.len() <= 4 * f.len());
        if let (Separator::Edges(x), Separator::Edges(y)) = (&f, &g) {
            prop_assert!(x.is_subset(y));
        }
    }

    #[test]
    fn star_comb_certificates_verify(g in connected_graph(24), picks in proptest::collection::vec(any::<prop::sample::Index>(), 1..24), k in 1usize..6) {
        let n = g.vertex_count();
        let d: BTreeSet<usize> = picks.iter().map(|i| i.index(n)).collect();
        prop_assume!(d.len() >= k);
        let found = star_or_comb_in(&g, &d, k).unwrap();
        prop_assert_eq!(found.verify(&g, &d), Ok(()));
        if found.kind() != "exhausted" {
            prop_assert_eq!(found.targets().len(), k);
            // Fewer targets are never harder.
            if k > 1 {
                let easier = star_or_comb_in(&g, &d, k - 1).unwrap();
                prop_assert_ne!(easier.kind(), "exhausted");
            }
        }
    }

    #[test]
    fn two_targets_always_certify(g in connected_graph(20), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        // Any path between two targets is a comb with trivial teeth.
        let n = g.vertex_count();
        let d: BTreeSet<usize> = [a.index(n), b.index(n)].into();
        prop_assume!(d.len() == 2);
        let found = star_or_comb_in(&g, &d, 2).unwrap();
        prop_assert_ne!(found.kind(), "exhausted");
    }
}

#[test]
fn core_vertices_are_addresses() {
    for p in catalog::all() {
        for c in &p.core {
            assert_eq!(VertexRef::parse(&format!("c:{c}")).unwrap(), VertexRef::core(c));
        }
    }
}
