//! Finite simple graphs over an ordered vertex label type.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;

use crate::error::{Error, Result};

/// A finite simple undirected graph. Vertices are kept in canonical (sorted)
/// order and addressed internally by their position in that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGraph<V> {
    vertices: Vec<V>,
    index: BTreeMap<V, usize>,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl<V: Ord + Clone + Display> FiniteGraph<V> {
    /// Builds a graph; duplicate vertices and edges collapse, loops and edges
    /// with undeclared endpoints are rejected.
    pub fn new(
        vertices: impl IntoIterator<Item = V>,
        edges: impl IntoIterator<Item = (V, V)>,
    ) -> Result<Self> {
        let set: BTreeSet<V> = vertices.into_iter().collect();
        let vertices: Vec<V> = set.into_iter().collect();
        let index: BTreeMap<V, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let mut adj_sets = vec![BTreeSet::new(); vertices.len()];
        for (a, b) in edges {
            if a == b {
                return Err(Error::LoopEdge(a.to_string()));
            }
            let ia = *index.get(&a).ok_or_else(|| Error::DanglingRef(a.to_string()))?;
            let ib = *index.get(&b).ok_or_else(|| Error::DanglingRef(b.to_string()))?;
            adj_sets[ia].insert(ib);
            adj_sets[ib].insert(ia);
        }
        let adj: Vec<Vec<usize>> = adj_sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(FiniteGraph {
            vertices,
            index,
            adj,
            edge_count,
        })
    }

    /// Like [`FiniteGraph::new`] but drops edges whose endpoints are not declared.
    pub fn induced_from(
        vertices: impl IntoIterator<Item = V>,
        edges: impl IntoIterator<Item = (V, V)>,
    ) -> Result<Self> {
        let set: BTreeSet<V> = vertices.into_iter().collect();
        let kept: Vec<(V, V)> = edges
            .into_iter()
            .filter(|(a, b)| set.contains(a) && set.contains(b))
            .collect();
        Self::new(set, kept)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> &[V] {
        &self.vertices
    }

    pub fn label(&self, i: usize) -> &V {
        &self.vertices[i]
    }

    pub fn index_of(&self, v: &V) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn contains(&self, v: &V) -> bool {
        self.index.contains_key(v)
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }

    /// Edges as index pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (i, ns) in self.adj.iter().enumerate() {
            for &j in ns {
                if i < j {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_labels(&self) -> Vec<(V, V)> {
        self.edges()
            .into_iter()
            .map(|(i, j)| (self.vertices[i].clone(), self.vertices[j].clone()))
            .collect()
    }

    /// Induced subgraph on the vertices satisfying `keep`.
    pub fn induced(&self, keep: impl Fn(&V) -> bool) -> FiniteGraph<V> {
        let vs: Vec<V> = self.vertices.iter().filter(|v| keep(v)).cloned().collect();
        let es: Vec<(V, V)> = self
            .edge_labels()
            .into_iter()
            .filter(|(a, b)| keep(a) && keep(b))
            .collect();
        FiniteGraph::new(vs, es).expect("induced subgraph of a valid graph")
    }

    /// True when `self` is the subgraph of `other` induced by `self`'s vertices.
    pub fn is_induced_subgraph_of(&self, other: &FiniteGraph<V>) -> bool {
        if !self.vertices.iter().all(|v| other.contains(v)) {
            return false;
        }
        let restricted = other.induced(|v| self.contains(v));
        restricted == *self
    }

    /// Connected components after deleting the vertices flagged in
    /// `removed_vertices` and the edges (index pairs, `i < j`) in `removed_edges`.
    /// Returns one component id per vertex (`None` for deleted vertices) and the
    /// component count. Component ids follow the order of least vertices.
    pub fn components_without(
        &self,
        removed_vertices: &[bool],
        removed_edges: &BTreeSet<(usize, usize)>,
    ) -> (Vec<Option<usize>>, usize) {
        let n = self.vertices.len();
        let mut comp = vec![None; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s].is_some() || removed_vertices.get(s).copied().unwrap_or(false) {
                continue;
            }
            comp[s] = Some(count);
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if comp[w].is_some() || removed_vertices.get(w).copied().unwrap_or(false) {
                        continue;
                    }
                    let key = if u < w { (u, w) } else { (w, u) };
                    if removed_edges.contains(&key) {
                        continue;
                    }
                    comp[w] = Some(count);
                    stack.push(w);
                }
            }
            count += 1;
        }
        (comp, count)
    }

    /// A shortest path from `a` to `b` as vertex indices, both ends included.
    pub fn shortest_path(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let mut parent = vec![None; self.vertices.len()];
        let mut seen = vec![false; self.vertices.len()];
        seen[a] = true;
        let mut queue = std::collections::VecDeque::from([a]);
        while let Some(u) = queue.pop_front() {
            if u == b {
                let mut path = vec![b];
                while let Some(p) = parent[*path.last().expect("path starts at b")] {
                    path.push(p);
                }
                path.reverse();
                return Some(path);
            }
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Connected components as sorted vertex-index lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let (comp, count) = self.components_without(&[], &BTreeSet::new());
        let mut out = vec![Vec::new(); count];
        for (i, c) in comp.iter().enumerate() {
            out[c.expect("no vertex removed")].push(i);
        }
        out
    }

    /// Maps every label through `f`, which must be injective.
    pub fn map_labels<W: Ord + Clone + Display>(&self, f: impl Fn(&V) -> W) -> FiniteGraph<W> {
        let vs: Vec<W> = self.vertices.iter().map(&f).collect();
        let es: Vec<(W, W)> = self
            .edge_labels()
            .iter()
            .map(|(a, b)| (f(a), f(b)))
            .collect();
        FiniteGraph::new(vs, es).expect("injective relabelling")
    }

    /// DOT rendering with vertices and edges in canonical order.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph \"{name}\" {{\n");
        for v in &self.vertices {
            s.push_str(&format!("  \"{v}\";\n"));
        }
        for (a, b) in self.edge_labels() {
            s.push_str(&format!("  \"{a}\" -- \"{b}\";\n"));
        }
        s.push_str("}\n");
        s
    }

    /// JSON rendering: `{"vertices": [...], "edges": [[u, v], ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "edges": self
                .edge_labels()
                .iter()
                .map(|(a, b)| vec![a.to_string(), b.to_string()])
                .collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: u32) -> FiniteGraph<u32> {
        FiniteGraph::new(0..n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn rejects_loops_and_dangling_edges() {
        assert!(matches!(FiniteGraph::new([1u32], [(1, 1)]), Err(Error::LoopEdge(_))));
        assert!(matches!(FiniteGraph::new([1u32], [(1, 2)]), Err(Error::DanglingRef(_))));
    }

    #[test]
    fn parallel_edges_collapse() {
        let g = FiniteGraph::new([1u32, 2], [(1, 2), (2, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn path_minus_middle_vertex_has_two_components() {
        let g = path(5);
        let mut removed = vec![false; 5];
        removed[2] = true;
        let (_, count) = g.components_without(&removed, &BTreeSet::new());
        assert_eq!(count, 2);
    }

    #[test]
    fn induced_subgraph_check() {
        let g = path(4);
        let h = g.induced(|v| *v < 3);
        assert!(h.is_induced_subgraph_of(&g));
        let not_induced = FiniteGraph::new([0u32, 1, 2], [(0, 1)]).unwrap();
        assert!(!not_induced.is_induced_subgraph_of(&g));
    }
}
