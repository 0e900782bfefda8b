//! Verification suites: each theorem of the toolkit checked on one
//! presentation, as a list of named pass/fail checks.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::compactness::{compact_by_timid_criterion, compact_space_as_direction_space, raylesschar_clauses};
use crate::cuts::{tail_anchor, Engine, RaySpec, USpec};
use crate::error::{Error, Result};
use crate::graph_model::{neighborhood, truncate, EdgeRef, Presentation, VertexRef};
use crate::oracle::{birth_depth, end_count, max_depth_from_env, Value, DEFAULT_WINDOW};
use crate::separation::Separator;
use crate::spaces::{
    correspondence_check, enumerate_edge_directions, enumerate_ends, enumerate_edge_ends, enumerate_timid_ends,
    enumerate_u_directions, rho_surjectivity_check, subsets, RhoOutcome, Shape, Source, SpaceSummary,
};
use crate::transforms::{
    completion, component_bijection, line_component_check, line_graph, preimage, quotient_sim, ray_projection,
    subdivide, timid_to_edge, HGraph, HVertex, SeparatorRule, TransformResult,
};

/// Truncation depth for the finite checks.
pub const DEPTH: u64 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Theorem {
    LineDir,
    HGraph,
    Completion,
    Quotient,
    Timid,
    PiDSurj,
    Compactness,
    RaylessChar,
}

impl Theorem {
    pub const ALL: [Theorem; 8] = [
        Theorem::LineDir,
        Theorem::HGraph,
        Theorem::Completion,
        Theorem::Quotient,
        Theorem::Timid,
        Theorem::PiDSurj,
        Theorem::Compactness,
        Theorem::RaylessChar,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Theorem::LineDir => "line-dir",
            Theorem::HGraph => "hgraph",
            Theorem::Completion => "completion",
            Theorem::Quotient => "quotient",
            Theorem::Timid => "timid",
            Theorem::PiDSurj => "pidsurj",
            Theorem::Compactness => "compactness",
            Theorem::RaylessChar => "raylesschar",
        }
    }

    pub fn parse(s: &str) -> Result<Theorem> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.id() == s)
            .ok_or_else(|| Error::Schema(format!("unknown theorem {s}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The check does not apply to this graph.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub theorem: &'static str,
    pub graph: String,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(t: Theorem, p: &Presentation) -> Report {
        Report {
            theorem: t.id(),
            graph: p.name.clone(),
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        });
    }

    fn skip(&mut self, name: &str, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            status: Status::Skipped,
            detail: detail.into(),
        });
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serialises");
        v["pass"] = self.pass().into();
        v
    }
}

/// Runs one suite.
pub fn run(t: Theorem, p: &Presentation) -> Result<Report> {
    let mut r = Report::new(t, p);
    match t {
        Theorem::LineDir => line_dir(p, &mut r)?,
        Theorem::HGraph => hgraph(p, &mut r)?,
        Theorem::Completion => completion_suite(p, &mut r)?,
        Theorem::Quotient => quotient_suite(p, &mut r)?,
        Theorem::Timid => timid_suite(p, &mut r)?,
        Theorem::PiDSurj => pidsurj(p, &mut r)?,
        Theorem::Compactness => compactness(p, &mut r)?,
        Theorem::RaylessChar => raylesschar(p, &mut r)?,
    }
    Ok(r)
}

/// `Some(k)` for `k` points, `None` for ω many.
fn as_count(v: &Value) -> Option<Option<usize>> {
    match v {
        Value::Count(k) => Some(Some(*k as usize)),
        Value::Omega => Some(None),
        _ => None,
    }
}

fn show(c: Option<usize>) -> String {
    c.map_or("ω".into(), |k| k.to_string())
}

fn correspondence(
    r: &mut Report,
    name: &str,
    s1: &SpaceSummary,
    s2: &SpaceSummary,
    t: &TransformResult,
    with_vertices: bool,
) -> Result<()> {
    let m = match t.point_map(s1, s2) {
        Ok(m) => m,
        Err(e) => {
            r.check(name, false, e.to_string());
            return Ok(());
        }
    };
    let sep = |f: &Separator| t.map_separator(f);
    let vm = |_: &Separator, v: &VertexRef| t.map_vertex(v);
    let rep = match correspondence_check(s1, s2, &m, &sep, with_vertices.then_some(&vm as _)) {
        Ok(rep) => rep,
        Err(e) => {
            r.check(name, false, e.to_string());
            return Ok(());
        }
    };
    let detail = match rep.failures.first() {
        None => format!("{} separators checked, {} not translatable", rep.checked, rep.skipped),
        Some(f) => format!("{} splits {} from {} (image {})", f.separator, f.points.0, f.points.1, f.image),
    };
    r.check(name, rep.pass, detail);
    Ok(())
}

fn line_dir(p: &Presentation, r: &mut Report) -> Result<()> {
    let dirs = enumerate_edge_directions(p)?;
    let t = truncate(p, DEPTH).graph;
    let short = truncate(p, 3).graph;
    let mut seps: Vec<Vec<(VertexRef, VertexRef)>> = Vec::new();
    for f in &dirs.separators {
        if let Separator::Edges(es) = f {
            seps.push(es.iter().map(|e| (e.0.clone(), e.1.clone())).collect());
        }
    }
    seps.extend(short.edge_labels().into_iter().map(|e| vec![e]));
    let (mut checked, mut failure) = (0, None);
    for f in &seps {
        if !f.iter().all(|(a, b)| t.contains(a) && t.contains(b)) {
            continue;
        }
        checked += 1;
        if let Err((x, y)) = line_component_check(&t, f) {
            failure.get_or_insert(format!("{x} and {y}"));
        }
    }
    let detail = failure.clone().unwrap_or(format!("{checked} edge sets at depth {DEPTH}"));
    r.check("component correspondence", failure.is_none(), detail);

    let ends = end_count(
        |n| line_graph(&truncate(p, n).graph).graph,
        |pt| birth_depth(&pt.a).max(birth_depth(&pt.b)),
        max_depth_from_env(),
        DEFAULT_WINDOW,
    );
    match ends.as_ref().map(as_count) {
        Ok(Some(k)) => r.check(
            "line-graph ends match edge-directions",
            k == dirs.count(),
            format!("{} ends, {} edge-directions", show(k), show(dirs.count())),
        ),
        _ => r.skip("line-graph ends match edge-directions", "end count did not stabilize"),
    }
    Ok(())
}

/// Points of `s1` sent to the point of `s2` of the same shape sharing an atom.
fn atom_map(s1: &SpaceSummary, s2: &SpaceSummary) -> Option<Vec<usize>> {
    s1.points
        .iter()
        .map(|x| {
            s2.points
                .iter()
                .position(|y| y.shape == x.shape && y.atoms.iter().any(|a| x.atoms.contains(a)))
        })
        .collect()
}

/// Most timid vertices considered for separators.
const TIMID_CANDIDATES: usize = 10;

/// Timid vertices of the vertex skeleton and of a small truncation, in
/// canonical order.
fn timid_candidates(p: &Presentation, engine: &Engine) -> Result<Vec<VertexRef>> {
    let mut pool: BTreeSet<VertexRef> = engine.vertex_skeleton().vertex_nodes().map(|(v, _)| v.clone()).collect();
    pool.extend(truncate(p, 2).graph.vertices().iter().cloned());
    let mut out = Vec::new();
    for v in pool {
        if out.len() == TIMID_CANDIDATES {
            break;
        }
        if engine.timid(&v)? {
            out.push(v);
        }
    }
    Ok(out)
}

fn hgraph(p: &Presentation, r: &mut Report) -> Result<()> {
    let h = HGraph::new(p)?;
    let engine = Engine::new(p);
    let t = truncate(p, DEPTH - 1).graph;
    let (mut worst, mut tried, mut at) = (0, 0, None);
    for i in 0..t.vertex_count() {
        let v = t.label(i);
        if !h.dominates(v) {
            continue;
        }
        for &j in t.neighbors(i) {
            let x = HVertex::copy(v, t.label(j));
            let k = h.components_without(DEPTH, &x)?;
            tried += 1;
            if k > worst {
                worst = k;
                at = Some(x.to_string());
            }
        }
    }
    if tried == 0 {
        r.skip("at most two components at a clique vertex", "no vertex edge-dominates a ray");
    } else {
        let detail = format!("{tried} clique vertices, at most {worst} components (at {})", at.unwrap_or_default());
        r.check("at most two components at a clique vertex", worst <= 2, detail);
    }

    let named = timid_candidates(p, &engine)?;
    let (mut checked, mut failure) = (0, None);
    for s in subsets(named.len(), 2) {
        let f: BTreeSet<VertexRef> = s.iter().map(|&i| named[i].clone()).collect();
        match component_bijection(p, &f, DEPTH) {
            Ok(b) => {
                checked += 1;
                if !b.pass() {
                    failure.get_or_insert(format!("{}: {}", b.separator, b.failure.unwrap_or_default()));
                }
            }
            Err(Error::UnresolvedRef(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let detail = failure.clone().unwrap_or(format!("{checked} timid separators of size at most 2"));
    r.check("component bijection", failure.is_none(), detail);

    let edge_ends = enumerate_edge_ends(p)?;
    if h.dominating.is_empty() {
        // H_G = G: compare the two topologies on G directly. Deleting a
        // finite-degree vertex and deleting its edges leave the same
        // ray-carrying components.
        let ends = enumerate_ends(p)?;
        let Some(m) = atom_map(&ends, &edge_ends) else {
            r.check("ends of H_G match edge-ends", false, "an end has no edge-end with the same rays");
            return Ok(());
        };
        let incident = |f: &Separator| -> Option<Separator> {
            let Separator::Vertices(vs) = f else { return None };
            let mut out = BTreeSet::new();
            for v in vs {
                let nb = neighborhood(p, v).ok()?;
                if !nb.is_finite() {
                    return None;
                }
                out.extend(nb.finite.iter().map(|u| EdgeRef::new(v.clone(), u.clone())));
            }
            Some(Separator::Edges(out))
        };
        match correspondence_check(&ends, &edge_ends, &m, &incident, None) {
            Ok(rep) => r.check(
                "ends of H_G match edge-ends",
                rep.pass,
                format!("H_G = G; {} separators checked, {} at infinite degree", rep.checked, rep.skipped),
            ),
            Err(e) => r.check("ends of H_G match edge-ends", false, e.to_string()),
        }
        return Ok(());
    }
    let want = edge_ends.count();
    let got = end_count(
        |n| h.truncate(n),
        |x| match x {
            HVertex::Plain(v) => birth_depth(v),
            HVertex::Copy { hub, nb } => birth_depth(hub).max(birth_depth(nb)),
        },
        max_depth_from_env(),
        DEFAULT_WINDOW,
    );
    match got.as_ref().map(as_count) {
        Ok(Some(k)) => r.check(
            "ends of H_G match edge-ends",
            k == want,
            format!("{} ends of H_G, {} edge-ends", show(k), show(want)),
        ),
        _ => r.skip("ends of H_G match edge-ends", "end count did not stabilize"),
    }
    Ok(())
}

/// Every separator of the summary plus single edges and pairs of edges of a
/// small truncation.
pub fn sample_edge_separators(p: &Presentation, dirs: &SpaceSummary) -> Vec<Separator> {
    let mut out: Vec<Separator> = dirs.separators.iter().filter(|f| f.is_edge_kind()).cloned().collect();
    let es: Vec<EdgeRef> = truncate(p, 2)
        .graph
        .edge_labels()
        .into_iter()
        .map(|(a, b)| EdgeRef::new(a, b))
        .collect();
    for s in subsets(es.len().min(12), 2) {
        if !s.is_empty() {
            out.push(Separator::edges(s.iter().map(|&i| es[i].clone())));
        }
    }
    out
}

fn completion_suite(p: &Presentation, r: &mut Report) -> Result<()> {
    let t = completion(p)?;
    let q = t.output.presentation().expect("completion is presentable");
    let before = enumerate_edge_directions(p)?;
    let seps = sample_edge_separators(p, &before);
    let mut worst = None;
    for f in &seps {
        let Some(g) = t.map_separator(f) else { continue };
        if g.len() > 4 * f.len() {
            worst.get_or_insert(format!("{f} grows to {} edges", g.len()));
        }
    }
    let detail = worst.clone().unwrap_or(format!("{} edge sets", seps.len()));
    r.check("flanked separators at most four times larger", worst.is_none(), detail);

    let ends = enumerate_edge_ends(q)?;
    r.check(
        "directions of G are edge-ends of the completion",
        before.count() == ends.count(),
        format!("{} directions, {} edge-ends", show(before.count()), show(ends.count())),
    );
    correspondence(r, "partitions correspond", &before, &ends, &t, true)?;

    let left: Vec<String> = enumerate_edge_directions(q)?
        .points
        .iter()
        .filter(|x| x.source == Source::RaylessHub)
        .map(|x| x.name.clone())
        .collect();
    r.check("no rayless direction left", left.is_empty(), left.join(", "));
    Ok(())
}

/// A ray per end atom, reached from the least core vertex by a shortest path
/// in a small truncation.
fn sample_rays(p: &Presentation, s: &SpaceSummary) -> Result<Vec<RaySpec>> {
    let t = truncate(p, 4).graph;
    let start = p.core.first().map(|c| VertexRef::core(c)).and_then(|v| t.index_of(&v));
    let mut out = Vec::new();
    for pt in s.points.iter().filter(|x| x.source == Source::End) {
        for atom in &pt.atoms {
            let Ok(Some(anchor)) = tail_anchor(p, atom) else { continue };
            let mut ray = RaySpec::tail(atom);
            if let (Some(a), Some(b)) = (start, t.index_of(&anchor)) {
                if let Some(path) = t.shortest_path(a, b) {
                    ray.prefix = path[..path.len() - 1].iter().map(|&i| t.label(i).clone()).collect();
                }
            }
            out.push(ray);
        }
    }
    Ok(out)
}

fn quotient_suite(p: &Presentation, r: &mut Report) -> Result<()> {
    let t = match quotient_sim(p) {
        Ok(t) => t,
        Err(Error::UnpresentableClass(why)) => {
            r.skip("quotient", why);
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    let q = t.output.presentation().expect("quotient is presentable");
    let SeparatorRule::Quotient(pi) = &t.separator_rule else {
        unreachable!("quotient transforms carry their projection")
    };
    let tq = truncate(q, 4).graph;
    let mut empty = Vec::new();
    let mut total = 0;
    for (a, b) in tq.edge_labels() {
        let e = EdgeRef::new(a, b);
        let pre = preimage(p, pi, &e)?;
        total += pre.len();
        if pre.is_empty() {
            empty.push(e.to_string());
        }
    }
    let detail = if empty.is_empty() {
        format!("{} quotient edges, {total} preimage edges", tq.edge_count())
    } else {
        format!("no preimage: {}", empty.join(", "))
    };
    r.check("finite nonempty edge preimages", empty.is_empty(), detail);

    let s1 = enumerate_edge_ends(p)?;
    let mut bad = None;
    let rays = sample_rays(p, &s1)?;
    for ray in &rays {
        let proj = ray_projection(&t, ray)?;
        let image: BTreeSet<VertexRef> = ray.prefix.iter().filter_map(|v| t.map_vertex(v)).collect();
        if proj.tail != ray.tail || !proj.prefix.iter().all(|v| image.contains(v)) {
            bad.get_or_insert(ray.to_string());
        }
    }
    let detail = bad.clone().unwrap_or(format!("{} rays", rays.len()));
    r.check("projected rays stay in the image", bad.is_none(), detail);

    let s2 = enumerate_edge_ends(q)?;
    correspondence(r, "edge-ends correspond", &s1, &s2, &t, true)
}

fn timid_suite(p: &Presentation, r: &mut Report) -> Result<()> {
    match subdivide(p) {
        Ok(t) => {
            let s1 = enumerate_edge_ends(p)?;
            let s2 = enumerate_timid_ends(t.output.presentation().expect("subdivision is presentable"))?;
            correspondence(r, "edge-ends are timid ends of the subdivision", &s1, &s2, &t, false)?;
        }
        Err(Error::Schema(why)) => r.skip("edge-ends are timid ends of the subdivision", why),
        Err(e) => return Err(e),
    }
    match timid_to_edge(p) {
        Ok(t) => {
            let s1 = enumerate_timid_ends(p)?;
            let s2 = enumerate_edge_ends(t.output.presentation().expect("timid_to_edge is presentable"))?;
            correspondence(r, "timid ends are edge-ends after adding families", &s1, &s2, &t, false)?;
        }
        Err(Error::UnpresentableClass(why)) => r.skip("timid ends are edge-ends after adding families", why),
        Err(e) => return Err(e),
    }
    Ok(())
}

fn pidsurj(p: &Presentation, r: &mut Report) -> Result<()> {
    let engine = Engine::new(p);
    let mut us = vec![("all".to_string(), USpec::All), ("timid".to_string(), USpec::Timid)];
    for v in engine.timid_hubs()?.vertices {
        let spec = format!("all-but:{v}");
        us.push((spec.clone(), USpec::parse(&spec)?));
    }
    for (name, u) in &us {
        let rho = rho_surjectivity_check(p, u)?;
        let outcome = match &rho.outcome {
            RhoOutcome::Surjective => "every direction is induced by a ray".to_string(),
            RhoOutcome::Misses(m) => format!("misses {}", m.join(", ")),
        };
        r.check(
            &format!("U = {name}: misses exactly when the boundary leaves U"),
            rho.consistent,
            outcome,
        );
    }

    let dirs = enumerate_u_directions(p, &USpec::Timid)?;
    let ends = enumerate_timid_ends(p)?;
    let Some(m) = atom_map(&dirs, &ends) else {
        r.check("timid directions are timid ends", false, "a timid direction has no timid end");
        return Ok(());
    };
    let id = |f: &Separator| Some(f.clone());
    let rep = correspondence_check(&dirs, &ends, &m, &id, None);
    match rep {
        Ok(rep) => r.check(
            "timid directions are timid ends",
            rep.pass,
            format!("{} separators checked", rep.checked),
        ),
        Err(e) => r.check("timid directions are timid ends", false, e.to_string()),
    }
    Ok(())
}

fn compactness(p: &Presentation, r: &mut Report) -> Result<()> {
    let search = compact_by_timid_criterion(p)?;
    let ends = enumerate_edge_ends(p)?;
    let families = ends.points.iter().filter(|x| x.shape != Shape::Singleton).count();
    r.check(
        "timid criterion matches the edge-end space",
        search.verdict.is_compact() == ends.is_compact(),
        format!(
            "criterion says {}, space has {} point families, witnesses {:?}",
            if search.verdict.is_compact() { "compact" } else { "not compact" },
            families,
            ends.non_compact_witnesses()
        ),
    );
    let d = compact_space_as_direction_space(p)?;
    r.check(
        "embedding into edge-directions",
        d.consistent,
        format!(
            "surjective {}, closed {}, missed {:?}",
            d.iota_surjective, d.image_closed, d.missed
        ),
    );
    Ok(())
}

fn raylesschar(p: &Presentation, r: &mut Report) -> Result<()> {
    let c = raylesschar_clauses(p)?;
    let show = |x: Option<bool>| x.map_or("n/a".to_string(), |b| b.to_string());
    r.check(
        "clauses agree",
        c.agree,
        format!(
            "compact {}, timid criterion {}, ends closed {}, rayless open {}, hubs isolable {}",
            c.compact,
            c.timid_criterion,
            show(c.ends_closed),
            show(c.rayless_open),
            show(c.hubs_isolable)
        ),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn ids_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(Theorem::parse(t.id()).unwrap(), t);
        }
        assert!(Theorem::parse("nope").is_err());
    }

    #[test]
    fn every_suite_passes_on_the_catalog() {
        for p in catalog::all() {
            for t in Theorem::ALL {
                let r = run(t, &p).unwrap_or_else(|e| panic!("{} {}: {e}", p.name, t.id()));
                assert!(r.pass(), "{}", serde_json::to_string_pretty(&r.to_json()).unwrap());
            }
        }
    }
}
