//! Compactness of the edge-end space.
//!
//! Four decision routes are implemented independently and compared:
//! the timid-separator criterion (finitely many non-rayless components after
//! deleting any finite timid set), compactness of the edge-end summary,
//! closedness of the ends inside the edge-directions, openness of the
//! rayless directions, and isolation of every timid hub by finitely many
//! edges. On connected graphs they must agree.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::json;

use crate::cuts::{min_cut, AtomKind, CutValue, Engine, Materialization, Separation, Witness};
use crate::error::{Error, Result};
use crate::graph_model::presentation::{Family, GadgetKind, Pattern};
use crate::graph_model::{truncate, Host, Local, Presentation, VertexRef};
use crate::separation::{
    components, materialization_for, removal_masks, split, ComponentRecord, Multiplicity, RayClass, Separator,
};
use crate::spaces::{enumerate_edge_directions, enumerate_edge_ends, iota, Block, Source, SpaceSummary};

/// Largest candidate set searched exhaustively; beyond it only sets of at
/// most [`PAIR_LIMIT`] vertices are tried.
const EXHAUSTIVE_LIMIT: usize = 6;
const PAIR_LIMIT: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Compact,
    /// A finite timid set leaving infinitely many non-rayless components.
    Witness(BTreeSet<VertexRef>),
}

impl Verdict {
    pub fn is_compact(&self) -> bool {
        matches!(self, Verdict::Compact)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchStep {
    pub separator: String,
    /// Non-rayless components: a number, or `"ω"`.
    pub non_rayless: String,
}

#[derive(Debug, Clone)]
pub struct TimidSearch {
    pub verdict: Verdict,
    /// Vertices the search drew from: timid core vertices, timid hubs and
    /// one representative per generic timid hub class.
    pub candidates: Vec<VertexRef>,
    pub log: Vec<SearchStep>,
}

impl TimidSearch {
    pub fn to_json(&self) -> serde_json::Value {
        let verdict = match &self.verdict {
            Verdict::Compact => json!("compact"),
            Verdict::Witness(f) => json!({ "witness": f.iter().map(|v| v.to_string()).collect::<Vec<_>>() }),
        };
        json!({
            "verdict": verdict,
            "candidates": self.candidates.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "search": self.log,
        })
    }
}

fn non_rayless(records: &[ComponentRecord]) -> Option<usize> {
    let mut n = 0;
    for r in records.iter().filter(|r| r.rays == RayClass::NonRayless) {
        if r.multiplicity == Multiplicity::Omega {
            return None;
        }
        n += 1;
    }
    Some(n)
}

fn subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for size in 1..=max.min(n) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(idx.clone());
            let Some(i) = (0..size).rev().find(|&i| idx[i] < n - size + i) else { break };
            idx[i] += 1;
            for j in i + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    out
}

fn timid_candidates(p: &Presentation, engine: &Engine) -> Result<Vec<VertexRef>> {
    let mut out = BTreeSet::new();
    for c in &p.core {
        let v = VertexRef::core(c);
        if engine.timid(&v)? {
            out.insert(v);
        }
    }
    let hubs = engine.timid_hubs()?;
    out.extend(hubs.vertices.iter().cloned());
    out.extend(hubs.generic.iter().map(|g| g.representative.clone()));
    Ok(out.into_iter().collect())
}

/// Searches for a finite timid vertex set whose deletion leaves infinitely
/// many non-rayless components.
pub fn compact_by_timid_criterion(p: &Presentation) -> Result<TimidSearch> {
    let engine = Engine::new(p);
    let candidates = timid_candidates(p, &engine)?;
    let max = if candidates.len() <= EXHAUSTIVE_LIMIT {
        candidates.len()
    } else {
        PAIR_LIMIT
    };
    let mut log = Vec::new();
    for idx in subsets(candidates.len(), max) {
        let f: BTreeSet<VertexRef> = idx.iter().map(|&i| candidates[i].clone()).collect();
        let sep = Separator::vertices(f.iter().cloned());
        let count = non_rayless(&components(p, &sep)?);
        log.push(SearchStep {
            separator: sep.to_string(),
            non_rayless: count.map_or("ω".into(), |n| n.to_string()),
        });
        if count.is_none() {
            return Ok(TimidSearch {
                verdict: Verdict::Witness(f),
                candidates,
                log,
            });
        }
    }
    Ok(TimidSearch {
        verdict: Verdict::Compact,
        candidates,
        log,
    })
}

/// One timid hub and whether finitely many edges isolate it in a rayless
/// component.
#[derive(Debug, Clone, Serialize)]
pub struct HubIsolation {
    pub hub: String,
    /// The isolating edges, when they exist.
    pub edges: Option<Vec<String>>,
    /// Route along which no finite edge set separates the hub from rays.
    pub obstruction: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClauseReport {
    pub connected: bool,
    pub timid_criterion: bool,
    /// The edge-end space is compact.
    pub compact: bool,
    /// Ends form a closed subset of the edge-directions; `None` when the
    /// graph is disconnected and the clause does not apply.
    pub ends_closed: Option<bool>,
    /// The rayless directions form an open set.
    pub rayless_open: Option<bool>,
    /// Every timid hub sits in a rayless component after deleting finitely
    /// many edges.
    pub hubs_isolable: Option<bool>,
    pub hubs: Vec<HubIsolation>,
    /// Non-compact witnesses of the edge-end summary.
    pub unbounded_families: Vec<String>,
    /// Hub points accumulating on ends.
    pub accumulating_hubs: Vec<String>,
    pub agree: bool,
}

/// Whether no rayless hub point accumulates on an ω-family of ends.
fn ends_closed(dirs: &SpaceSummary) -> (bool, Vec<String>) {
    let mut bad = BTreeSet::new();
    for &(x, s) in &dirs.accumulation {
        if dirs.points[x].source == Source::RaylessHub && dirs.points[s].source == Source::End {
            bad.insert(dirs.points[x].name.clone());
        }
    }
    (bad.is_empty(), bad.into_iter().collect())
}

/// Whether every rayless hub point has a basic open neighbourhood free of
/// ends. The finest partition available is the one of the union of all
/// summary separators.
fn rayless_open(dirs: &SpaceSummary) -> Result<bool> {
    let hubs: Vec<usize> = dirs
        .points
        .iter()
        .filter(|x| x.source == Source::RaylessHub)
        .map(|x| x.id)
        .collect();
    if hubs.is_empty() {
        return Ok(true);
    }
    let mut edges = BTreeSet::new();
    for f in &dirs.separators {
        if let Separator::Edges(es) = f {
            edges.extend(es.iter().cloned());
        }
    }
    let part = dirs.partition_of(&Separator::Edges(edges))?;
    for h in hubs {
        let Block::In(b) = part.0[h] else { continue };
        let touches_end = dirs
            .points
            .iter()
            .any(|q| q.source == Source::End && part.0[q.id] == Block::In(b));
        if touches_end {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Minimum edge cut between the hub and every ray seed, then a component
/// scan confirming the hub's side is rayless.
fn isolate_hub(p: &Presentation, engine: &Engine, hub: &VertexRef) -> Result<HubIsolation> {
    let sk = engine.skeleton(&Materialization::edge().cover_all([hub]));
    let a = sk
        .vertex_node(hub)
        .ok_or_else(|| Error::UnresolvedRef(hub.to_string()))?;
    let seeds: Vec<usize> = sk
        .atoms
        .iter()
        .filter(|x| x.kind == AtomKind::Seed)
        .map(|x| x.node)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let answer = min_cut(&sk, &Separation::Edge, &[a], &seeds);
    let (edges, obstruction) = match (&answer.value, &answer.witness) {
        (CutValue::Finite(_), Witness::Edges(es)) => (Some(es.clone()), Vec::new()),
        (_, Witness::Omega(route)) => (None, route.clone()),
        _ => (None, Vec::new()),
    };
    if let Some(es) = &edges {
        let f = Separator::edges(es.iter().cloned());
        let m = materialization_for(&f).cover_all([hub]);
        let sk = engine.skeleton(&m);
        let (nodes, arcs) = removal_masks(&sk, &f)?;
        let (records, owner) = split(p, &sk, &nodes, &arcs)?;
        let node = sk.vertex_node(hub).ok_or_else(|| Error::UnresolvedRef(hub.to_string()))?;
        let r = owner[node].ok_or_else(|| Error::UnresolvedRef(hub.to_string()))?;
        if records[r].rays != RayClass::Rayless {
            return Err(Error::UnresolvedRef(format!(
                "cut {f} leaves {hub} in a component with rays"
            )));
        }
    }
    Ok(HubIsolation {
        hub: hub.to_string(),
        edges: edges.map(|es| es.iter().map(|e| e.to_string()).collect()),
        obstruction,
    })
}

fn is_connected(p: &Presentation) -> Result<bool> {
    Ok(components(p, &Separator::empty_vertices())?.len() == 1)
}

/// Evaluates every clause of the rayless characterization and compares them
/// with the timid criterion.
pub fn raylesschar_clauses(p: &Presentation) -> Result<ClauseReport> {
    let connected = is_connected(p)?;
    let timid_criterion = compact_by_timid_criterion(p)?.verdict.is_compact();
    let ends = enumerate_edge_ends(p)?;
    let compact = ends.is_compact();
    let unbounded_families = ends.non_compact_witnesses();
    let dirs = enumerate_edge_directions(p)?;
    let (closed, accumulating_hubs) = ends_closed(&dirs);
    let open = rayless_open(&dirs)?;

    let engine = Engine::new(p);
    let th = engine.timid_hubs()?;
    let mut hubs = Vec::new();
    for v in th.vertices.iter().chain(th.generic.iter().map(|g| &g.representative)) {
        hubs.push(isolate_hub(p, &engine, v)?);
    }
    let isolable = hubs.iter().all(|h| h.edges.is_some());

    let (ends_closed, rayless_open, hubs_isolable) = if connected {
        (Some(closed), Some(open), Some(isolable))
    } else {
        (None, None, None)
    };
    let agree = timid_criterion == compact
        && [ends_closed, rayless_open, hubs_isolable]
            .iter()
            .flatten()
            .all(|&c| c == compact);
    Ok(ClauseReport {
        connected,
        timid_criterion,
        compact,
        ends_closed,
        rayless_open,
        hubs_isolable,
        hubs,
        unbounded_families,
        accumulating_hubs,
        agree,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Condition {
    pub holds: bool,
    pub witnesses: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DenseReport {
    /// `G ∖ H` is rayless.
    pub rayless_outside: Condition,
    /// Every component of `G ∖ H` has exactly one neighbour in `H`.
    pub single_attachment: Condition,
    /// For every timid hub `v` of `H`, at most one component of `H ∖ {v}` is rayless.
    pub hubs_ray_rich: Condition,
}

impl DenseReport {
    pub fn pass(&self) -> bool {
        self.rayless_outside.holds && self.single_attachment.holds && self.hubs_ray_rich.holds
    }
}

fn owner_kept(v: &VertexRef, core: &BTreeSet<String>, parts: &BTreeSet<String>) -> bool {
    match v {
        VertexRef::Core(c) => core.contains(c),
        VertexRef::Subdiv(a, b) => owner_kept(a, core, parts) && owner_kept(b, core, parts),
        other => other.owner().is_some_and(|o| parts.contains(o)),
    }
}

/// The sub-presentation induced by some core vertices, gadgets and families.
/// `None` when nothing is kept. A star of rays losing its center becomes an
/// ω-family of rays under the same identifier.
fn restrict(p: &Presentation, core: &BTreeSet<String>, parts: &BTreeSet<String>) -> Result<Option<Presentation>> {
    if core.is_empty() && parts.is_empty() {
        return Ok(None);
    }
    let keep = |v: &VertexRef| owner_kept(v, core, parts);
    let keep_host = |h: &Host| match h {
        Host::Vertex(v) => keep(v),
        Host::Along(g) => parts.contains(g),
    };
    let mut q = p.clone();
    q.core.retain(|c| core.contains(c));
    q.core_edges.retain(|(a, b)| keep(a) && keep(b));
    q.gadgets.retain(|g| parts.contains(&g.id));
    for g in &mut q.gadgets {
        g.attachments.retain(|a| keep_host(&a.host));
        g.core_members.retain(|v| keep(v));
    }
    q.families.retain(|f| parts.contains(&f.id));
    let (headless, gadgets): (Vec<_>, Vec<_>) = std::mem::take(&mut q.gadgets)
        .into_iter()
        .partition(|g| g.kind == GadgetKind::StarOfRays && g.attachments.is_empty());
    q.gadgets = gadgets;
    q.families.extend(headless.into_iter().map(|g| Family {
        id: g.id,
        pattern: Pattern::Ray,
        host: None,
        per_copy: Vec::new(),
        chain: g.chained.then_some((Local::Index(0), Local::Index(0))),
    }));
    for f in &mut q.families {
        if f.host.as_ref().is_some_and(|h| !keep_host(h)) {
            f.host = None;
        }
        f.per_copy.retain(|(_, h)| keep_host(h));
    }
    Ok(Some(Presentation::from_doc(&q.to_doc())?))
}

fn parts_of(p: &Presentation) -> BTreeSet<String> {
    p.gadgets
        .iter()
        .map(|g| g.id.clone())
        .chain(p.families.iter().map(|f| f.id.clone()))
        .collect()
}

/// Depths at which the attachment condition is scanned on truncations.
const ATTACHMENT_DEPTHS: [u64; 2] = [6, 8];

/// Checks the three conditions making `H` a dense subgraph whose edge-ends
/// and directions coincide. `H` must keep whole gadgets and families of `p`
/// and everything between the parts it keeps.
pub fn verify_dense_subgraph(p: &Presentation, h: &Presentation) -> Result<DenseReport> {
    let h_core: BTreeSet<String> = h.core.iter().cloned().collect();
    let h_parts = parts_of(h);
    let p_core: BTreeSet<String> = p.core.iter().cloned().collect();
    let p_parts = parts_of(p);
    if !h_core.is_subset(&p_core) || !h_parts.is_subset(&p_parts) {
        return Err(Error::NotInduced(format!("{} names vertices outside {}", h.name, p.name)));
    }
    let induced = restrict(p, &h_core, &h_parts)?;
    let same = induced.as_ref().is_some_and(|q| {
        let (mut a, mut b) = (q.to_doc(), h.to_doc());
        a.name.clear();
        b.name.clear();
        a.connected_hint = false;
        b.connected_hint = false;
        a == b
    });
    if !same {
        return Err(Error::NotInduced(format!(
            "{} is not the subgraph of {} induced by its parts",
            h.name, p.name
        )));
    }

    // G ∖ H as a presentation of the remaining parts.
    let rest_core: BTreeSet<String> = p_core.difference(&h_core).cloned().collect();
    let rest_parts: BTreeSet<String> = p_parts.difference(&h_parts).cloned().collect();
    let rayless_outside = match restrict(p, &rest_core, &rest_parts)? {
        None => Condition {
            holds: true,
            witnesses: Vec::new(),
        },
        Some(rest) => {
            let records = components(&rest, &Separator::empty_vertices())?;
            let witnesses: Vec<String> = records
                .iter()
                .filter(|r| r.rays == RayClass::NonRayless)
                .flat_map(|r| r.residues.iter().filter(|x| x.carries_rays))
                .map(|x| match x.owner.strip_prefix("f:") {
                    Some(rest) if p.gadget(rest.split(':').next().unwrap_or_default()).is_some() => format!("g:{rest}"),
                    _ => x.owner.clone(),
                })
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            Condition {
                holds: witnesses.is_empty(),
                witnesses,
            }
        }
    };

    let mut bad = BTreeSet::new();
    for n in ATTACHMENT_DEPTHS {
        let g = truncate(p, n).graph;
        let in_h: Vec<bool> = g.vertices().iter().map(|v| owner_kept(v, &h_core, &h_parts)).collect();
        let (comp, count) = g.components_without(&in_h, &BTreeSet::new());
        let mut attach: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); count];
        for (i, c) in comp.iter().enumerate() {
            let Some(c) = c else { continue };
            attach[*c].extend(g.neighbors(i).iter().copied().filter(|&j| in_h[j]));
        }
        for (c, a) in attach.iter().enumerate() {
            if a.len() > 1 {
                let first = comp.iter().position(|x| *x == Some(c)).expect("component is non-empty");
                let names: Vec<String> = a.iter().map(|&j| g.label(j).to_string()).collect();
                bad.insert(format!("{} attaches to {}", g.label(first), names.join(", ")));
            }
        }
    }
    let single_attachment = Condition {
        holds: bad.is_empty(),
        witnesses: bad.into_iter().collect(),
    };

    let engine = Engine::new(h);
    let th = engine.timid_hubs()?;
    let mut witnesses = Vec::new();
    for v in th.vertices.iter().chain(th.generic.iter().map(|g| &g.representative)) {
        let records = components(h, &Separator::vertices([v.clone()]))?;
        let rayless: Vec<&ComponentRecord> = records.iter().filter(|r| r.rays == RayClass::Rayless).collect();
        let many = rayless.len() > 1 || rayless.iter().any(|r| r.multiplicity == Multiplicity::Omega);
        if many {
            witnesses.push(format!("{v}: {} rayless components", if rayless.iter().any(|r| r.multiplicity == Multiplicity::Omega) { "ω".to_string() } else { rayless.len().to_string() }));
        }
    }
    let hubs_ray_rich = Condition {
        holds: witnesses.is_empty(),
        witnesses,
    };
    Ok(DenseReport {
        rayless_outside,
        single_attachment,
        hubs_ray_rich,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DirectionSpaceReport {
    pub connected: bool,
    pub compact: bool,
    pub iota_injective: bool,
    pub iota_surjective: bool,
    pub image_closed: bool,
    /// Directions missed by the ends.
    pub missed: Vec<String>,
    /// Compact graphs must have closed image; non-compact connected graphs
    /// must fail surjectivity or closedness.
    pub consistent: bool,
}

/// Checks the embedding of edge-ends into edge-directions against the
/// compactness verdict on the graph itself.
pub fn compact_space_as_direction_space(p: &Presentation) -> Result<DirectionSpaceReport> {
    let compact = compact_by_timid_criterion(p)?.verdict.is_compact();
    let ends = enumerate_edge_ends(p)?;
    let dirs = enumerate_edge_directions(p)?;
    let mut image = BTreeSet::new();
    let mut injective = true;
    for e in 0..ends.points.len() {
        let d = iota(&ends, &dirs, e)?;
        if dirs.points[d].shape != ends.points[e].shape || !image.insert(d) {
            injective = false;
        }
    }
    let missed: Vec<String> = dirs
        .points
        .iter()
        .filter(|d| !image.contains(&d.id))
        .map(|d| d.name.clone())
        .collect();
    let (closed, _) = ends_closed(&dirs);
    let surjective = missed.is_empty();
    let connected = is_connected(p)?;
    let consistent = if compact {
        closed
    } else {
        !connected || !surjective || !closed
    };
    Ok(DirectionSpaceReport {
        connected,
        compact,
        iota_injective: injective,
        iota_surjective: surjective,
        image_closed: closed,
        missed,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn subsets_enumerate_by_size() {
        assert_eq!(subsets(3, 2), vec![vec![], vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(0, 3), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn star_is_shattered_by_its_center() {
        let p = catalog::get("star_of_rays").unwrap();
        let s = compact_by_timid_criterion(&p).unwrap();
        assert_eq!(s.verdict, Verdict::Witness([VertexRef::core("c")].into()));
        let r = raylesschar_clauses(&p).unwrap();
        assert_eq!(
            (r.compact, r.ends_closed, r.rayless_open, r.hubs_isolable),
            (false, Some(false), Some(false), Some(false))
        );
        assert!(r.agree);
    }

    #[test]
    fn omega_rays_fail_with_nothing_removed() {
        let p = catalog::get("omega_rays").unwrap();
        let s = compact_by_timid_criterion(&p).unwrap();
        assert_eq!(s.verdict, Verdict::Witness(BTreeSet::new()));
        let r = raylesschar_clauses(&p).unwrap();
        assert!(!r.connected && r.ends_closed.is_none() && r.agree);
    }

    #[test]
    fn rayless_and_dominated_graphs_are_compact() {
        for name in ["three_cliques", "infinite_star", "two_cliques_bridge"] {
            let p = catalog::get(name).unwrap();
            let r = raylesschar_clauses(&p).unwrap();
            assert!(r.timid_criterion && r.compact, "{name}");
            assert!(r.agree, "{name}: {r:?}");
        }
        let p = catalog::get("infinite_star").unwrap();
        let r = raylesschar_clauses(&p).unwrap();
        assert_eq!(r.hubs[0].edges, Some(Vec::new()));
    }

    #[test]
    fn every_catalog_graph_agrees() {
        for p in catalog::all() {
            let r = raylesschar_clauses(&p).unwrap();
            assert!(r.agree, "{}: {r:?}", p.name);
            let d = compact_space_as_direction_space(&p).unwrap();
            assert!(d.consistent && d.iota_injective, "{}: {d:?}", p.name);
        }
    }

    #[test]
    fn embedding_of_ends() {
        let p = catalog::get("three_cliques").unwrap();
        let d = compact_space_as_direction_space(&p).unwrap();
        assert!(d.compact && d.iota_surjective && d.image_closed);
        let p = catalog::get("star_of_rays").unwrap();
        let d = compact_space_as_direction_space(&p).unwrap();
        assert!(!d.compact && !d.iota_surjective);
        assert_eq!(d.missed, vec!["hub c:c".to_string()]);
    }

    fn star_with_pendants() -> Presentation {
        Presentation::parse(
            r#"{"name":"pendants","core":{"vertices":["c"]},
                "gadgets":[{"id":"S","kind":"StarOfRays","attachments":[{"host":"c","mode":"FirstOnly"}]}],
                "families":[{"id":"P","pattern":{"graph":{"vertices":["x","y"],"edges":[["x","y"]],"boundary":["x"]}},"host":"c"}],
                "connected_hint":true}"#,
        )
        .unwrap()
    }

    #[test]
    fn pendant_paths_keep_the_star_dense() {
        let p = star_with_pendants();
        let h = catalog::get("star_of_rays").unwrap();
        let r = verify_dense_subgraph(&p, &h).unwrap();
        assert!(r.pass(), "{r:?}");
        let same = verify_dense_subgraph(&p, &p).unwrap();
        assert!(same.rayless_outside.holds && same.single_attachment.holds);
    }

    #[test]
    fn dropping_the_rays_is_reported() {
        let p = catalog::get("star_of_rays").unwrap();
        let h = Presentation::parse(r#"{"name":"center","core":{"vertices":["c"]}}"#).unwrap();
        let r = verify_dense_subgraph(&p, &h).unwrap();
        assert!(!r.rayless_outside.holds);
        assert!(r.rayless_outside.witnesses.contains(&"g:S".to_string()));
        assert!(r.rayless_outside.witnesses.iter().all(|w| w.starts_with("g:S")));
        assert!(r.single_attachment.holds);
    }

    #[test]
    fn foreign_or_non_induced_subgraphs_are_rejected() {
        let p = catalog::get("star_of_rays").unwrap();
        let h = Presentation::parse(r#"{"name":"x","core":{"vertices":["z"]}}"#).unwrap();
        assert!(matches!(verify_dense_subgraph(&p, &h), Err(Error::NotInduced(_))));
        let p = catalog::get("three_cliques").unwrap();
        let mut h = p.clone();
        h.core_edges.pop();
        assert!(matches!(verify_dense_subgraph(&p, &h), Err(Error::NotInduced(_))));
    }
}
