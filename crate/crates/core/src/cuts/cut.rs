//! Minimum cuts on a skeleton with certificates.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use super::flow::Network;
use super::skeleton::{Cap, Node, SkeletonGraph};
use crate::graph_model::{EdgeRef, VertexRef};

/// Which elements a separator may contain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Separation {
    /// Finite sets of unit arcs.
    Edge,
    /// Finite sets of vertex nodes whose flag is set.
    Vertex(Vec<bool>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CutValue {
    Finite(u64),
    Infinite,
}

impl fmt::Display for CutValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutValue::Finite(k) => write!(f, "{k}"),
            CutValue::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Edges(Vec<EdgeRef>),
    Vertices(Vec<VertexRef>),
    /// Node names along a route no finite separator can cut.
    Omega(Vec<String>),
}

/// A cut value with its certificate: a separating set together with as many
/// disjoint paths, or an uncuttable route.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutAnswer {
    pub value: CutValue,
    pub witness: Witness,
    /// Disjoint paths (node names) realizing a finite value.
    pub paths: Vec<Vec<String>>,
    pub budget: u64,
}

impl CutAnswer {
    pub fn is_infinite(&self) -> bool {
        self.value == CutValue::Infinite
    }

    pub fn to_json(&self) -> serde_json::Value {
        let witness = match &self.witness {
            Witness::Edges(es) => serde_json::json!({
                "edges": es.iter().map(|e| e.to_string()).collect::<Vec<_>>()
            }),
            Witness::Vertices(vs) => serde_json::json!({
                "vertices": vs.iter().map(|v| v.to_string()).collect::<Vec<_>>()
            }),
            Witness::Omega(route) => serde_json::json!({ "omega_route": route }),
        };
        serde_json::json!({
            "value": self.value.to_string(),
            "witness": witness,
            "paths": self.paths,
            "budget": self.budget,
        })
    }
}

/// A route from `a` to `b` that no admissible finite separator meets.
fn omega_route(sk: &SkeletonGraph, sep: &Separation, a: &[usize], b: &[usize]) -> Option<Vec<usize>> {
    let n = sk.nodes.len();
    let mut is_b = vec![false; n];
    b.iter().for_each(|&x| is_b[x] = true);
    let mut prev = vec![usize::MAX; n];
    let mut q = VecDeque::new();
    for &s in a {
        prev[s] = s;
        q.push_back(s);
    }
    while let Some(u) = q.pop_front() {
        if is_b[u] {
            let mut route = vec![u];
            let mut x = u;
            while prev[x] != x {
                x = prev[x];
                route.push(x);
            }
            route.reverse();
            return Some(route);
        }
        for &arc in sk.arcs_at(u) {
            let w = sk.other_end(arc, u);
            if prev[w] != usize::MAX {
                continue;
            }
            let ok = match sep {
                Separation::Edge => sk.arcs[arc].cap == Cap::Omega,
                Separation::Vertex(flags) => is_b[w] || !flags[w],
            };
            if ok {
                prev[w] = u;
                q.push_back(w);
            }
        }
    }
    None
}

struct Built {
    net: Network,
    s: usize,
    t: usize,
    /// Network node -> skeleton node (in-copies only for vertex separation).
    owner: Vec<Option<usize>>,
}

/// Flow network with the listed elements removed (unit arcs or vertex nodes).
fn network(sk: &SkeletonGraph, sep: &Separation, a: &[usize], b: &[usize], removed: &[usize], inf: u64) -> Built {
    let n = sk.nodes.len();
    let mut terminal = vec![false; n];
    a.iter().chain(b).for_each(|&x| terminal[x] = true);
    match sep {
        Separation::Edge => {
            let mut net = Network::new(n + 2);
            let (s, t) = (n, n + 1);
            for (i, arc) in sk.arcs.iter().enumerate() {
                let cap = match arc.cap {
                    Cap::Unit(_) if removed.contains(&i) => 0,
                    Cap::Unit(_) => 1,
                    Cap::Omega => inf,
                };
                net.add_edge(arc.a, arc.b, cap);
            }
            a.iter().for_each(|&x| {
                net.add_arc(s, x, inf);
            });
            b.iter().for_each(|&x| {
                net.add_arc(x, t, inf);
            });
            let mut owner: Vec<Option<usize>> = (0..n).map(Some).collect();
            owner.extend([None, None]);
            Built { net, s, t, owner }
        }
        Separation::Vertex(flags) => {
            // Node i splits into in = i and out = n + i.
            let mut net = Network::new(2 * n + 2);
            let (s, t) = (2 * n, 2 * n + 1);
            for i in 0..n {
                let cap = if removed.contains(&i) {
                    0
                } else if flags[i] && !terminal[i] {
                    1
                } else {
                    inf
                };
                net.add_arc(i, n + i, cap);
            }
            for arc in &sk.arcs {
                net.add_arc(n + arc.a, arc.b, inf);
                net.add_arc(n + arc.b, arc.a, inf);
            }
            a.iter().for_each(|&x| {
                net.add_arc(s, x, inf);
            });
            b.iter().for_each(|&x| {
                net.add_arc(n + x, t, inf);
            });
            let mut owner: Vec<Option<usize>> = (0..n).map(Some).collect();
            owner.extend((0..n).map(|_| None));
            owner.extend([None, None]);
            Built { net, s, t, owner }
        }
    }
}

/// Candidate separator elements in canonical order, with the budget.
fn elements(sk: &SkeletonGraph, sep: &Separation, a: &[usize], b: &[usize]) -> Vec<usize> {
    match sep {
        Separation::Edge => sk.unit_arcs(),
        Separation::Vertex(flags) => sk
            .vertex_nodes()
            .map(|(_, i)| i)
            .filter(|&i| flags[i] && !a.contains(&i) && !b.contains(&i))
            .collect(),
    }
}

/// Exact cut value only, without certificate.
pub fn cut_value(sk: &SkeletonGraph, sep: &Separation, a: &[usize], b: &[usize]) -> CutValue {
    if a.iter().any(|x| b.contains(x)) || omega_route(sk, sep, a, b).is_some() {
        return CutValue::Infinite;
    }
    let budget = elements(sk, sep, a, b).len() as u64;
    let mut built = network(sk, sep, a, b, &[], budget + 1);
    CutValue::Finite(built.net.max_flow(built.s, built.t, budget + 1))
}

/// Minimum cut between node sets `a` and `b` with a self-verified certificate.
/// The finite witness is the lexicographically least minimum separator in
/// canonical element order.
pub fn min_cut(sk: &SkeletonGraph, sep: &Separation, a: &[usize], b: &[usize]) -> CutAnswer {
    let elems = elements(sk, sep, a, b);
    let budget = elems.len() as u64;
    if let Some(x) = a.iter().find(|x| b.contains(x)) {
        return CutAnswer {
            value: CutValue::Infinite,
            witness: Witness::Omega(vec![sk.node_name(*x)]),
            paths: Vec::new(),
            budget,
        };
    }
    if let Some(route) = omega_route(sk, sep, a, b) {
        return CutAnswer {
            value: CutValue::Infinite,
            witness: Witness::Omega(route.iter().map(|&i| sk.node_name(i)).collect()),
            paths: Vec::new(),
            budget,
        };
    }
    let inf = budget + 1;
    let mut built = network(sk, sep, a, b, &[], inf);
    let k = built.net.max_flow(built.s, built.t, inf);
    assert!(k <= budget, "finite cut exceeds the unit budget");
    let paths: Vec<Vec<String>> = built
        .net
        .unit_paths(built.s, built.t, k)
        .into_iter()
        .map(|p| {
            let mut names: Vec<String> = Vec::new();
            for x in p {
                if let Some(i) = built.owner[x] {
                    names.push(sk.node_name(i));
                }
            }
            names
        })
        .collect();

    let mut chosen: Vec<usize> = Vec::new();
    for &e in &elems {
        if chosen.len() as u64 == k {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(e);
        let mut b2 = network(sk, sep, a, b, &trial, inf);
        let f = b2.net.max_flow(b2.s, b2.t, inf);
        if f + trial.len() as u64 == k {
            chosen = trial;
        }
    }
    assert_eq!(chosen.len() as u64, k, "greedy witness reaches the cut value");
    assert!(
        separates(sk, sep, a, b, &chosen),
        "witness must disconnect the terminals"
    );
    assert_eq!(paths.len() as u64, k, "flow decomposes into k disjoint paths");

    let witness = match sep {
        Separation::Edge => Witness::Edges(
            chosen
                .iter()
                .map(|&i| match &sk.arcs[i].cap {
                    Cap::Unit(e) => e.clone(),
                    Cap::Omega => unreachable!("only unit arcs are candidates"),
                })
                .collect(),
        ),
        Separation::Vertex(_) => Witness::Vertices(
            chosen
                .iter()
                .map(|&i| match &sk.nodes[i] {
                    Node::Vertex(v) => v.clone(),
                    Node::Region(_) => unreachable!("only vertex nodes are candidates"),
                })
                .collect(),
        ),
    };
    CutAnswer {
        value: CutValue::Finite(k),
        witness,
        paths,
        budget,
    }
}

/// Whether removing `chosen` (arcs or nodes per `sep`) disconnects `a` from `b`.
pub fn separates(sk: &SkeletonGraph, sep: &Separation, a: &[usize], b: &[usize], chosen: &[usize]) -> bool {
    let n = sk.nodes.len();
    let mut removed_nodes = vec![false; n];
    let mut removed_arcs = vec![false; sk.arcs.len()];
    match sep {
        Separation::Edge => chosen.iter().for_each(|&i| removed_arcs[i] = true),
        Separation::Vertex(_) => chosen.iter().for_each(|&i| removed_nodes[i] = true),
    }
    let (comp, _) = sk.components(&removed_nodes, &removed_arcs);
    a.iter()
        .all(|&x| b.iter().all(|&y| comp[x].is_none() || comp[y].is_none() || comp[x] != comp[y]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::cuts::skeleton::Materialization;

    #[test]
    fn three_cliques_left_right_is_one() {
        let p = catalog::get("three_cliques").unwrap();
        let sk = SkeletonGraph::build(&p, &Materialization::edge());
        let a = sk.atoms[sk.atom("g:A").unwrap()].node;
        let c = sk.atoms[sk.atom("g:C").unwrap()].node;
        let ans = min_cut(&sk, &Separation::Edge, &[a], &[c]);
        assert_eq!(ans.value, CutValue::Finite(1));
        assert_eq!(
            ans.witness,
            Witness::Edges(vec![EdgeRef::parse("c:a -- c:b").unwrap()])
        );
    }

    #[test]
    fn inside_one_clique_is_infinite() {
        let p = catalog::get("three_cliques").unwrap();
        let sk = SkeletonGraph::build(&p, &Materialization::edge());
        let a = sk.vertex_node(&VertexRef::core("a")).unwrap();
        let rest = sk.atoms[sk.atom("g:A").unwrap()].node;
        assert!(min_cut(&sk, &Separation::Edge, &[a], &[rest]).is_infinite());
    }
}
