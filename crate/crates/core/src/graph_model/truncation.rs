//! Depth-n truncations.
//!
//! All growth parameters are coupled to the single depth `n`: rays become
//! paths on `n` vertices, cliques get `n` fresh vertices, stars get `n` rays of
//! length `n`, families get their first `n` copies. The truncation is the
//! subgraph induced by those vertices, so `truncate(p, n)` is an induced
//! subgraph of `truncate(p, n + 1)`.

use std::collections::BTreeSet;

use super::address::{Local, RayId, StarId, VertexRef};
use super::finite::FiniteGraph;
use super::neighbors::neighborhood;
use super::presentation::{GadgetKind, Host, Mode, Pattern, Presentation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncation {
    pub depth: u64,
    pub graph: FiniteGraph<VertexRef>,
    pub frontier: BTreeSet<VertexRef>,
}

/// Whether `v` is a vertex of the depth-`n` truncation (before subdivision).
pub fn in_truncation(p: &Presentation, v: &VertexRef, n: u64) -> bool {
    match v {
        VertexRef::Core(_) => true,
        VertexRef::Gadget(_, i) => *i < n,
        VertexRef::StarRay(_, j, i) => *j < n && *i < n,
        VertexRef::Family(f, k, l) => {
            p.family(f).is_some()
                && *k < n
                && match l {
                    Local::Index(i) => *i < n,
                    Local::StarRay(j, i) => *j < n && *i < n,
                    _ => true,
                }
        }
        VertexRef::Subdiv(a, b) => in_truncation(p, a, n) && in_truncation(p, b, n),
    }
}

/// Builds the depth-`n` truncation. Panics if `n == 0`.
pub fn truncate(p: &Presentation, n: u64) -> Truncation {
    assert!(n >= 1, "truncation depth must be at least 1");
    let (vertices, edges) = base_truncation(p, n);
    let graph = if p.subdivided {
        let base: BTreeSet<VertexRef> = vertices.iter().cloned().collect();
        let mut vs = vertices.clone();
        let mut es = Vec::new();
        for (a, b) in edges {
            if !base.contains(&a) || !base.contains(&b) {
                continue;
            }
            let m = VertexRef::midpoint(a.clone(), b.clone());
            vs.push(m.clone());
            es.push((a, m.clone()));
            es.push((m, b));
        }
        FiniteGraph::induced_from(vs, es)
    } else {
        FiniteGraph::induced_from(vertices, edges)
    }
    .expect("truncation rules produce a simple graph");
    let frontier = graph
        .vertices()
        .iter()
        .filter(|v| {
            let nb = neighborhood(p, v).expect("truncation vertices resolve");
            !nb.is_finite() || nb.finite.iter().any(|u| !graph.contains(u))
        })
        .cloned()
        .collect();
    Truncation {
        depth: n,
        graph,
        frontier,
    }
}

fn ray_path(ray: &RayId, n: u64, vs: &mut Vec<VertexRef>, es: &mut Vec<(VertexRef, VertexRef)>) {
    for i in 0..n {
        vs.push(ray.vertex(i));
        if i + 1 < n {
            es.push((ray.vertex(i), ray.vertex(i + 1)));
        }
    }
}

fn star(
    s: &StarId,
    center: &VertexRef,
    chained: bool,
    n: u64,
    vs: &mut Vec<VertexRef>,
    es: &mut Vec<(VertexRef, VertexRef)>,
) {
    for j in 0..n {
        let ray = s.ray(j);
        ray_path(&ray, n, vs, es);
        es.push((center.clone(), ray.vertex(0)));
        if chained && j + 1 < n {
            es.push((ray.vertex(0), s.ray(j + 1).vertex(0)));
        }
    }
}

pub(crate) type EdgeList = Vec<(VertexRef, VertexRef)>;

/// Vertices and edges of the unsubdivided truncation (edges may mention
/// vertices outside the truncation; callers restrict).
pub(crate) fn base_truncation(p: &Presentation, n: u64) -> (Vec<VertexRef>, EdgeList) {
    let mut vs: Vec<VertexRef> = p.core.iter().map(|c| VertexRef::core(c)).collect();
    let mut es: EdgeList = p.core_edges.clone();
    for g in &p.gadgets {
        match g.kind {
            GadgetKind::Ray => {
                let ray = RayId::Top(g.id.clone());
                ray_path(&ray, n, &mut vs, &mut es);
                for a in &g.attachments {
                    match (&a.host, a.mode) {
                        (Host::Vertex(h), Mode::FirstOnly) => es.push((h.clone(), ray.vertex(0))),
                        (Host::Vertex(h), Mode::All) => {
                            es.extend((0..n).map(|i| (h.clone(), ray.vertex(i))))
                        }
                        (Host::Along(h), _) => {
                            es.extend((0..n).map(|i| (ray.vertex(i), VertexRef::gadget(h, i))))
                        }
                    }
                }
            }
            GadgetKind::OmegaClique => {
                let fresh: Vec<VertexRef> = (0..n).map(|i| VertexRef::gadget(&g.id, i)).collect();
                vs.extend(fresh.iter().cloned());
                let all: Vec<VertexRef> = g.core_members.iter().cloned().chain(fresh).collect();
                for i in 0..all.len() {
                    for j in i + 1..all.len() {
                        es.push((all[i].clone(), all[j].clone()));
                    }
                }
                for a in &g.attachments {
                    match (&a.host, a.mode) {
                        (Host::Vertex(h), Mode::FirstOnly) => {
                            es.push((h.clone(), VertexRef::gadget(&g.id, 0)))
                        }
                        (Host::Vertex(h), Mode::All) => {
                            es.extend((0..n).map(|i| (h.clone(), VertexRef::gadget(&g.id, i))))
                        }
                        (Host::Along(_), _) => {}
                    }
                }
            }
            GadgetKind::StarOfRays => {
                let center = g.center().expect("validated star").clone();
                star(&StarId::Top(g.id.clone()), &center, g.chained, n, &mut vs, &mut es);
            }
        }
    }
    for f in &p.families {
        for k in 0..n {
            let at = |l: &Local| VertexRef::family(&f.id, k, l.clone());
            match &f.pattern {
                Pattern::SingleVertex => vs.push(at(&Local::Index(0))),
                Pattern::Ray => ray_path(&RayId::Copy(f.id.clone(), k), n, &mut vs, &mut es),
                Pattern::Star { chained } => {
                    let center = at(&Local::Center);
                    vs.push(center.clone());
                    star(&f.star(k), &center, *chained, n, &mut vs, &mut es);
                }
                Pattern::Graph { vertices, edges, .. } => {
                    vs.extend(vertices.iter().map(|x| at(&Local::Named(x.clone()))));
                    es.extend(edges.iter().map(|(a, b)| {
                        (at(&Local::Named(a.clone())), at(&Local::Named(b.clone())))
                    }));
                }
            }
            for (l, target) in &f.per_copy {
                let t = match target {
                    Host::Vertex(t) => t.clone(),
                    Host::Along(g) => VertexRef::gadget(g, k),
                };
                es.push((at(l), t));
            }
            if let Some((a, b)) = &f.chain {
                es.push((at(a), VertexRef::family(&f.id, k + 1, b.clone())));
            }
        }
    }
    (vs, es)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn ray_truncation_is_a_path_with_one_frontier_vertex() {
        let p = Presentation::parse(
            r#"{"name":"r","core":{"vertices":[]},"gadgets":[{"id":"r","kind":"Ray"}]}"#,
        )
        .unwrap();
        let t = truncate(&p, 3);
        assert_eq!(t.graph.vertex_count(), 3);
        assert_eq!(t.graph.edge_count(), 2);
        assert_eq!(t.frontier, BTreeSet::from([VertexRef::gadget("r", 2)]));
    }

    #[test]
    fn star_of_rays_depth_two() {
        let t = truncate(&catalog::get("star_of_rays").unwrap(), 2);
        assert_eq!(t.graph.vertex_count(), 5);
    }

    #[test]
    fn three_cliques_depth_four() {
        let t = truncate(&catalog::get("three_cliques").unwrap(), 4);
        assert_eq!(t.graph.vertex_count(), 14);
    }

    #[test]
    fn monotone_in_depth() {
        for p in catalog::all() {
            for n in 1..6 {
                assert!(
                    truncate(&p, n).graph.is_induced_subgraph_of(&truncate(&p, n + 1).graph),
                    "{} at depth {n}",
                    p.name
                );
            }
        }
    }
}
