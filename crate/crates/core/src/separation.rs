//! Components of `G ∖ F` for finite vertex or edge sets `F`, computed
//! symbolically on a skeleton and concretely on truncations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::cuts::{Cap, Materialization, Node, Region, SkeletonGraph};
use crate::error::{Error, Result};
use crate::graph_model::{neighborhood, EdgeRef, Pattern, Presentation, Truncation, VertexRef};

/// Finite components beyond this size are reported as an error rather than
/// guessed.
pub const SIZE_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Separator {
    Vertices(BTreeSet<VertexRef>),
    Edges(BTreeSet<EdgeRef>),
}

impl Separator {
    pub fn empty_vertices() -> Separator {
        Separator::Vertices(BTreeSet::new())
    }

    pub fn empty_edges() -> Separator {
        Separator::Edges(BTreeSet::new())
    }

    pub fn vertices<I: IntoIterator<Item = VertexRef>>(vs: I) -> Separator {
        Separator::Vertices(vs.into_iter().collect())
    }

    pub fn edges<I: IntoIterator<Item = EdgeRef>>(es: I) -> Separator {
        Separator::Edges(es.into_iter().collect())
    }

    /// Parses `;`-separated vertex addresses or `a -- b` edges; the kind is
    /// chosen by the presence of `--`.
    pub fn parse(s: &str) -> Result<Separator> {
        let items: Vec<&str> = s.split(';').map(str::trim).filter(|x| !x.is_empty()).collect();
        if items.iter().any(|x| x.contains("--")) {
            Ok(Separator::Edges(
                items.iter().map(|x| EdgeRef::parse(x)).collect::<Result<_>>()?,
            ))
        } else {
            Ok(Separator::Vertices(
                items.iter().map(|x| VertexRef::parse(x)).collect::<Result<_>>()?,
            ))
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Separator::Vertices(v) => v.len(),
            Separator::Edges(e) => e.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_edge_kind(&self) -> bool {
        matches!(self, Separator::Edges(_))
    }

    /// Vertices the skeleton must materialize to carry this separator.
    pub fn touched(&self) -> Vec<VertexRef> {
        match self {
            Separator::Vertices(v) => v.iter().cloned().collect(),
            Separator::Edges(e) => e.iter().flat_map(|e| [e.0.clone(), e.1.clone()]).collect(),
        }
    }

    /// Checks that every element exists in `p`.
    pub fn check(&self, p: &Presentation) -> Result<()> {
        match self {
            Separator::Vertices(vs) => vs.iter().try_for_each(|v| p.check(v)),
            Separator::Edges(es) => es.iter().try_for_each(|e| {
                p.check(&e.0)?;
                p.check(&e.1)?;
                if neighborhood(p, &e.0)?.contains(&e.1) {
                    Ok(())
                } else {
                    Err(Error::UnresolvedRef(format!("no edge {e}")))
                }
            }),
        }
    }

    /// Whether `self ⊆ other` (same kind).
    pub fn is_subset(&self, other: &Separator) -> bool {
        match (self, other) {
            (Separator::Vertices(a), Separator::Vertices(b)) => a.is_subset(b),
            (Separator::Edges(a), Separator::Edges(b)) => a.is_subset(b),
            _ => false,
        }
    }
}

impl fmt::Display for Separator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = match self {
            Separator::Vertices(v) => v.iter().map(|x| x.to_string()).collect(),
            Separator::Edges(e) => e.iter().map(|x| x.to_string()).collect(),
        };
        write!(f, "{{{}}}", items.join("; "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SizeClass {
    Finite(u64),
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RayClass {
    Rayless,
    NonRayless,
}

/// A record stands for one component, or for ω many isomorphic ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Multiplicity {
    One,
    Omega,
}

/// An infinite part of the presentation surviving inside a component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Residue {
    pub owner: String,
    pub descriptor: String,
    /// The residue contains a ray on its own.
    pub carries_rays: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentRecord {
    pub id: usize,
    pub representative: VertexRef,
    pub residues: Vec<Residue>,
    pub size: SizeClass,
    pub rays: RayClass,
    pub multiplicity: Multiplicity,
    /// Materialized vertices of the component, in canonical order.
    pub members: Vec<VertexRef>,
    /// Skeleton nodes in this component.
    pub nodes: Vec<usize>,
}

impl ComponentRecord {
    pub fn is_infinite(&self) -> bool {
        self.size == SizeClass::Infinite
    }
}

/// NonRayless iff some residue carries rays. A ray visits each hub once, so
/// it cannot thread infinitely many unchained finite copies through finitely
/// many hubs; ray existence therefore localizes to residues.
pub fn classify_rayless(c: &ComponentRecord) -> RayClass {
    if c.residues.iter().any(|r| r.carries_rays) {
        RayClass::NonRayless
    } else {
        RayClass::Rayless
    }
}

fn region_owner(r: &Region) -> String {
    match r {
        Region::RayTail { ray, .. } => ray.atom_name(),
        Region::CliqueRest { clique, .. } => format!("g:{clique}"),
        Region::StarRest { star, .. } => star.atom_prefix(),
        Region::FamilyRest { family, .. } => format!("f:{family}"),
    }
}

/// Whether a region (intact) contains a ray.
fn region_rays(p: &Presentation, r: &Region) -> bool {
    match r {
        Region::FamilyRest { family, chained, .. } => {
            *chained || p.family(family).is_some_and(|f| f.pattern.has_rays())
        }
        _ => true,
    }
}

/// Some vertex inside a region.
pub fn region_representative(p: &Presentation, r: &Region) -> VertexRef {
    let v = match r {
        Region::RayTail { ray, from } => ray.vertex(*from),
        Region::CliqueRest { clique, from } => VertexRef::gadget(clique, *from),
        Region::StarRest { star, from, .. } => star.ray(*from).vertex(0),
        Region::FamilyRest { family, from, .. } => {
            let local = p
                .family(family)
                .map(|f| f.pattern.default_boundary())
                .unwrap_or(crate::graph_model::Local::Index(0));
            VertexRef::family(family, *from, local)
        }
    };
    v
}

/// Per-piece shape of a shattered region.
fn shattered_piece(p: &Presentation, r: &Region) -> (SizeClass, RayClass) {
    match r {
        Region::FamilyRest { family, .. } => {
            let f = p.family(family).expect("region of a declared family");
            match (&f.pattern, f.pattern.finite_size()) {
                (Pattern::Ray | Pattern::Star { .. }, _) | (_, None) => {
                    (SizeClass::Infinite, RayClass::NonRayless)
                }
                (_, Some(k)) => (SizeClass::Finite(k), RayClass::Rayless),
            }
        }
        _ => (SizeClass::Infinite, RayClass::NonRayless),
    }
}

/// Components of a skeleton after removing nodes and arcs. Returns the
/// records and, per node, the record id it belongs to.
pub fn split(
    p: &Presentation,
    sk: &SkeletonGraph,
    removed_nodes: &[bool],
    removed_arcs: &[bool],
) -> Result<(Vec<ComponentRecord>, Vec<Option<usize>>)> {
    let (comp, count) = sk.components(removed_nodes, removed_arcs);
    let shattered = sk.shattered(removed_nodes);
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); count];
    for (i, c) in comp.iter().enumerate() {
        if let Some(c) = c {
            groups[*c].push(i);
        }
    }
    // Canonical order: by least vertex name, region-only groups after.
    let key = |g: &Vec<usize>| -> (u8, String) {
        let v = g.iter().find_map(|&i| match &sk.nodes[i] {
            Node::Vertex(v) => Some(v.to_string()),
            Node::Region(_) => None,
        });
        match v {
            Some(v) => (0, v),
            None => (1, sk.node_name(g[0])),
        }
    };
    groups.sort_by_key(|g| key(g));

    let mut records = Vec::new();
    let mut owner = vec![None; sk.nodes.len()];
    for g in groups {
        let id = records.len();
        for &i in &g {
            owner[i] = Some(id);
        }
        let mut members: Vec<VertexRef> = Vec::new();
        let mut residues = Vec::new();
        let mut regions = Vec::new();
        for &i in &g {
            match &sk.nodes[i] {
                Node::Vertex(v) => members.push(v.clone()),
                Node::Region(r) => {
                    regions.push((i, r.clone()));
                    residues.push(Residue {
                        owner: region_owner(r),
                        descriptor: r.to_string(),
                        carries_rays: region_rays(p, r),
                    });
                }
            }
        }
        members.sort();
        if let [(i, r)] = regions.as_slice() {
            if members.is_empty() && shattered[*i] {
                let (size, rays) = shattered_piece(p, r);
                residues[0].carries_rays = rays == RayClass::NonRayless;
                records.push(ComponentRecord {
                    id,
                    representative: region_representative(p, r),
                    residues,
                    size,
                    rays,
                    multiplicity: Multiplicity::Omega,
                    members,
                    nodes: g,
                });
                continue;
            }
        }
        let size = if regions.is_empty() {
            let k = members.len() as u64;
            if k > SIZE_CAP {
                return Err(Error::CapExceeded(SIZE_CAP));
            }
            SizeClass::Finite(k)
        } else {
            SizeClass::Infinite
        };
        let representative = members
            .first()
            .cloned()
            .unwrap_or_else(|| region_representative(p, &regions[0].1));
        let mut rec = ComponentRecord {
            id,
            representative,
            residues,
            size,
            rays: RayClass::Rayless,
            multiplicity: Multiplicity::One,
            members,
            nodes: g,
        };
        rec.rays = classify_rayless(&rec);
        records.push(rec);
    }
    Ok((records, owner))
}

/// Skeleton materialization that carries `f` exactly.
pub fn materialization_for(f: &Separator) -> Materialization {
    let base = if f.is_edge_kind() {
        Materialization::edge()
    } else {
        Materialization::vertex()
    };
    base.cover_all(&f.touched())
}

/// Removal masks of `f` on a skeleton that materializes its elements.
pub fn removal_masks(sk: &SkeletonGraph, f: &Separator) -> Result<(Vec<bool>, Vec<bool>)> {
    let mut nodes = vec![false; sk.nodes.len()];
    let mut arcs = vec![false; sk.arcs.len()];
    match f {
        Separator::Vertices(vs) => {
            for v in vs {
                let i = sk
                    .vertex_node(v)
                    .ok_or_else(|| Error::NonSkeletonSeparator(v.to_string()))?;
                nodes[i] = true;
            }
        }
        Separator::Edges(es) => {
            for e in es {
                let i = sk
                    .unit_arc_of(e)
                    .ok_or_else(|| Error::NonSkeletonSeparator(e.to_string()))?;
                debug_assert!(matches!(sk.arcs[i].cap, Cap::Unit(_)));
                arcs[i] = true;
            }
        }
    }
    Ok((nodes, arcs))
}

/// Symbolic components of `G ∖ F`. Elements outside the default skeleton are
/// absorbed by materializing them, so every finite separator is exact.
pub fn components(p: &Presentation, f: &Separator) -> Result<Vec<ComponentRecord>> {
    f.check(p)?;
    let sk = SkeletonGraph::build(p, &materialization_for(f));
    let (nodes, arcs) = removal_masks(&sk, f)?;
    Ok(split(p, &sk, &nodes, &arcs)?.0)
}

/// Components in the edge-direction convention: infinite ones only.
pub fn infinite_components(p: &Presentation, f: &Separator) -> Result<Vec<ComponentRecord>> {
    Ok(components(p, f)?
        .into_iter()
        .filter(ComponentRecord::is_infinite)
        .collect())
}

/// Number of components counted with multiplicity; `None` when infinite.
pub fn component_count(records: &[ComponentRecord]) -> Option<usize> {
    if records.iter().any(|r| r.multiplicity == Multiplicity::Omega) {
        None
    } else {
        Some(records.len())
    }
}

/// Checks the connected hint against the empty-separator component count.
pub fn validate_connected_hint(p: &Presentation) -> Result<bool> {
    let c = components(p, &Separator::empty_vertices())?;
    Ok(p.connected_hint == (component_count(&c) == Some(1)))
}

pub fn report_json(f: &Separator, records: &[ComponentRecord]) -> serde_json::Value {
    serde_json::json!({
        "separator": f.to_string(),
        "components": records.iter().map(|r| serde_json::json!({
            "id": r.id,
            "representative": r.representative.to_string(),
            "size": match r.size { SizeClass::Finite(k) => k.to_string(), SizeClass::Infinite => "infinite".into() },
            "rays": r.rays,
            "multiplicity": r.multiplicity,
            "residues": r.residues,
        })).collect::<Vec<_>>(),
    })
}

/// One component of a finite truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteComponent {
    pub vertices: Vec<VertexRef>,
    /// The component reaches the truncation frontier, so it may still grow.
    pub touches_frontier: bool,
}

/// Exact components of a truncation minus `f`.
pub fn components_finite(t: &Truncation, f: &Separator) -> Result<Vec<FiniteComponent>> {
    let g = &t.graph;
    let mut removed_v = vec![false; g.vertex_count()];
    let mut removed_e = BTreeSet::new();
    let idx = |v: &VertexRef| {
        g.index_of(v)
            .ok_or_else(|| Error::UnresolvedRef(format!("{v} is not in the depth-{} truncation", t.depth)))
    };
    match f {
        Separator::Vertices(vs) => {
            for v in vs {
                removed_v[idx(v)?] = true;
            }
        }
        Separator::Edges(es) => {
            for e in es {
                let (a, b) = (idx(&e.0)?, idx(&e.1)?);
                if !g.has_edge(a, b) {
                    return Err(Error::UnresolvedRef(format!("no edge {e} in the truncation")));
                }
                removed_e.insert((a.min(b), a.max(b)));
            }
        }
    }
    let (comp, count) = g.components_without(&removed_v, &removed_e);
    let mut out: BTreeMap<usize, FiniteComponent> = BTreeMap::new();
    for (i, c) in comp.iter().enumerate() {
        if let Some(c) = c {
            let e = out.entry(*c).or_insert(FiniteComponent {
                vertices: Vec::new(),
                touches_frontier: false,
            });
            let v = g.label(i);
            e.touches_frontier |= t.frontier.contains(v);
            e.vertices.push(v.clone());
        }
    }
    debug_assert_eq!(out.len(), count);
    Ok(out.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::graph_model::{truncate, FiniteGraph};

    #[test]
    fn bridge_splits_three_cliques() {
        let p = catalog::get("three_cliques").unwrap();
        let f = Separator::parse("c:a -- c:b").unwrap();
        let c = components(&p, &f).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c
            .iter()
            .all(|r| r.is_infinite() && r.rays == RayClass::NonRayless));
    }

    #[test]
    fn star_center_shatters() {
        let p = catalog::get("star_of_rays").unwrap();
        let c = components(&p, &Separator::parse("c:c").unwrap()).unwrap();
        assert_eq!(component_count(&c), None);
        assert!(c
            .iter()
            .all(|r| r.is_infinite() && r.rays == RayClass::NonRayless));
        assert!(c.iter().any(|r| r.multiplicity == Multiplicity::Omega));
    }

    #[test]
    fn infinite_star_is_rayless() {
        let p = catalog::get("infinite_star").unwrap();
        let c = components(&p, &Separator::empty_vertices()).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].rays, RayClass::Rayless);
        assert!(c[0].is_infinite());
        let c = components(&p, &Separator::parse("c:h").unwrap()).unwrap();
        assert!(c.iter().all(|r| r.size == SizeClass::Finite(1)));
        let omega = c.iter().filter(|r| r.multiplicity == Multiplicity::Omega);
        assert_eq!(omega.count(), 1);
    }

    #[test]
    fn connected_hints_hold_on_catalog() {
        for p in catalog::all() {
            assert!(validate_connected_hint(&p).unwrap(), "{}", p.name);
        }
    }

    #[test]
    fn path_minus_middle_vertex() {
        let vs: Vec<VertexRef> = (0..5).map(|i| VertexRef::gadget("r", i)).collect();
        let es: Vec<(VertexRef, VertexRef)> = (0..4).map(|i| (vs[i].clone(), vs[i + 1].clone())).collect();
        let t = Truncation {
            depth: 5,
            graph: FiniteGraph::new(vs.clone(), es).unwrap(),
            frontier: BTreeSet::new(),
        };
        let c = components_finite(&t, &Separator::vertices([vs[2].clone()])).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|x| x.vertices.len() == 2));
    }

    #[test]
    fn truncated_bridge_touches_frontier() {
        let p = catalog::get("three_cliques").unwrap();
        let t = truncate(&p, 4);
        let c = components_finite(&t, &Separator::parse("c:a -- c:b").unwrap()).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|x| x.touches_frontier));
    }

    #[test]
    fn missing_edge_is_unresolved() {
        let p = catalog::get("three_cliques").unwrap();
        let f = Separator::parse("c:a -- c:c").unwrap();
        assert!(matches!(components(&p, &f), Err(Error::UnresolvedRef(_))));
    }
}
