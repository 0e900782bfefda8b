//! Line graphs: one vertex per edge, adjacent when the edges share an end.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::json;

use super::{Output, SeparatorRule, TransformKind, TransformResult, VertexRule};
use crate::graph_model::{neighborhood, truncate, EdgeRef, FiniteGraph, Presentation, VertexRef};

/// The line-graph vertex `v_e` of the edge `e = {a, b}`, stored with `a < b`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinePoint<V> {
    pub a: V,
    pub b: V,
}

impl<V: Ord> LinePoint<V> {
    pub fn new(a: V, b: V) -> LinePoint<V> {
        if a <= b {
            LinePoint { a, b }
        } else {
            LinePoint { a: b, b: a }
        }
    }
}

impl<V: fmt::Display> fmt::Display for LinePoint<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v[{} -- {}]", self.a, self.b)
    }
}

/// A finite line graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineGraph<V> {
    pub graph: FiniteGraph<LinePoint<V>>,
}

impl<V: Ord + Clone + fmt::Display> LineGraph<V> {
    /// `F ↦ F′ = {v_e : e ∈ F}`.
    pub fn separator_map(&self, f: &[(V, V)]) -> Vec<LinePoint<V>> {
        f.iter().map(|(a, b)| LinePoint::new(a.clone(), b.clone())).collect()
    }
}

/// Line graph of a finite simple graph.
pub fn line_graph<V: Ord + Clone + fmt::Display>(g: &FiniteGraph<V>) -> LineGraph<V> {
    let edges = g.edge_labels();
    let points: Vec<LinePoint<V>> = edges.iter().map(|(a, b)| LinePoint::new(a.clone(), b.clone())).collect();
    // Edges at each vertex, then every pair of them.
    let mut at: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, (i, j)) in g.edges().into_iter().enumerate() {
        at.entry(i).or_default().push(k);
        at.entry(j).or_default().push(k);
    }
    let mut adj = Vec::new();
    for ks in at.values() {
        for (x, &k) in ks.iter().enumerate() {
            for &l in &ks[x + 1..] {
                adj.push((points[k].clone(), points[l].clone()));
            }
        }
    }
    LineGraph {
        graph: FiniteGraph::new(points, adj).expect("distinct edges give distinct line vertices"),
    }
}

/// Checks the commuting square for one edge set `f`: the components of
/// `G ∖ F` that keep an edge correspond one-to-one to the components of
/// `G′ ∖ F′`. Returns the number of corresponding pairs, or the first edge
/// pair that breaks the correspondence.
pub fn line_component_check<V: Ord + Clone + fmt::Display>(
    g: &FiniteGraph<V>,
    f: &[(V, V)],
) -> std::result::Result<usize, (LinePoint<V>, LinePoint<V>)> {
    let lg = line_graph(g);
    let removed: BTreeSet<(usize, usize)> = f
        .iter()
        .filter_map(|(a, b)| {
            let (i, j) = (g.index_of(a)?, g.index_of(b)?);
            Some((i.min(j), i.max(j)))
        })
        .collect();
    let (gc, _) = g.components_without(&[], &removed);
    let gone: Vec<bool> = lg
        .graph
        .vertices()
        .iter()
        .map(|pt| {
            let (i, j) = (g.index_of(&pt.a).expect("end exists"), g.index_of(&pt.b).expect("end exists"));
            removed.contains(&(i.min(j), i.max(j)))
        })
        .collect();
    let (lc, lcount) = lg.graph.components_without(&gone, &BTreeSet::new());
    // Line component -> graph component must be a bijection onto the graph
    // components that still carry an edge.
    let mut forward: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    let mut backward: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for (k, pt) in lg.graph.vertices().iter().enumerate() {
        let Some(c) = lc[k] else { continue };
        let gcomp = gc[g.index_of(&pt.a).expect("end exists")].expect("no vertex removed");
        if let Some(&(other, k0)) = forward.get(&c) {
            if other != gcomp {
                return Err((lg.graph.label(k0).clone(), pt.clone()));
            }
        } else {
            forward.insert(c, (gcomp, k));
        }
        if let Some(&(other, k0)) = backward.get(&gcomp) {
            if other != c {
                return Err((lg.graph.label(k0).clone(), pt.clone()));
            }
        } else {
            backward.insert(gcomp, (c, k));
        }
    }
    debug_assert_eq!(forward.len(), lcount);
    Ok(forward.len())
}

/// The line graph of a presented infinite graph, evaluated lazily.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineView {
    pub p: Presentation,
}

impl LineView {
    /// Line graph of the depth-`n` truncation.
    pub fn truncate(&self, n: u64) -> LineGraph<VertexRef> {
        line_graph(&truncate(&self.p, n).graph)
    }

    /// Whether `v_e` and `v_f` are adjacent: distinct edges sharing an end.
    pub fn adjacent(&self, e: &EdgeRef, f: &EdgeRef) -> bool {
        let exists = |x: &EdgeRef| {
            neighborhood(&self.p, &x.0)
                .map(|nb| nb.contains(&x.1))
                .unwrap_or(false)
        };
        e != f && (f.contains(&e.0) || f.contains(&e.1)) && exists(e) && exists(f)
    }

    pub fn describe(&self) -> serde_json::Value {
        json!({
            "line_graph_of": self.p.name,
            "vertices": "one per edge",
            "adjacency": "edges sharing an end",
        })
    }
}

pub(crate) fn line_view(p: &Presentation) -> TransformResult {
    TransformResult {
        kind: TransformKind::LineGraph,
        input: p.clone(),
        output: Output::Line(LineView { p: p.clone() }),
        vertex_rule: VertexRule::EdgesAt,
        separator_rule: SeparatorRule::EdgesToLineVertices,
        point_rule: "edge-direction of G to end of the line graph".into(),
        notes: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: u32, es: &[(u32, u32)]) -> FiniteGraph<u32> {
        FiniteGraph::new(0..n, es.iter().copied()).unwrap()
    }

    #[test]
    fn path_gives_one_edge() {
        let lg = line_graph(&graph(3, &[(0, 1), (1, 2)]));
        assert_eq!((lg.graph.vertex_count(), lg.graph.edge_count()), (2, 1));
    }

    #[test]
    fn triangle_is_its_own_line_graph() {
        let lg = line_graph(&graph(3, &[(0, 1), (1, 2), (0, 2)]));
        assert_eq!((lg.graph.vertex_count(), lg.graph.edge_count()), (3, 3));
    }

    #[test]
    fn k4_gives_the_octahedron() {
        let es: Vec<(u32, u32)> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
        let lg = line_graph(&graph(4, &es));
        // Brute force from the definition: two edges meet iff they share an end.
        let mut expected = 0;
        for (x, e) in es.iter().enumerate() {
            for f in &es[x + 1..] {
                if e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1 {
                    expected += 1;
                }
            }
        }
        assert_eq!(lg.graph.vertex_count(), 6);
        assert_eq!(lg.graph.edge_count(), expected);
        assert!((0..6).all(|i| lg.graph.degree(i) == 4));
    }

    #[test]
    fn bridge_removal_corresponds() {
        let g = graph(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]);
        assert_eq!(line_component_check(&g, &[(2, 3)]), Ok(2));
        assert_eq!(line_component_check(&g, &[]), Ok(1));
    }

    #[test]
    fn presentation_view_adjacency() {
        let p = crate::catalog::get("three_cliques").unwrap();
        let v = LineView { p };
        let ab = EdgeRef::parse("c:a -- c:b").unwrap();
        let a0 = EdgeRef::parse("c:a -- g:A:0").unwrap();
        let b0 = EdgeRef::parse("c:b -- g:B:0").unwrap();
        assert!(v.adjacent(&ab, &a0));
        assert!(v.adjacent(&ab, &b0));
        assert!(!v.adjacent(&a0, &b0));
        assert!(v.truncate(3).graph.vertex_count() > 0);
    }
}
