//! Brute-force answers on truncations, read off once they stabilize.
//!
//! Every query is evaluated on `truncate(p, n)` for `n = 2, 3, …` until `w`
//! consecutive depths agree, or until the values grow in the way an infinite
//! answer grows (component counts linearly, cut values past a cap, path
//! lengths strictly). Stabilization is a heuristic, not a proof: every answer
//! carries that caveat, and the symbolic engine is compared against it rather
//! than trusted because of it.

use std::cell::OnceCell;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cuts::flow::Network;
use crate::cuts::{CutValue, Engine, Materialization, RaySpec};
use crate::error::{Error, Result};
use crate::graph_model::{in_truncation, truncate, EdgeRef, FiniteGraph, Local, Presentation, Truncation, VertexRef};
use crate::separation::{components, materialization_for, removal_masks, split, Multiplicity, RayClass, Separator};

pub const DEFAULT_WINDOW: usize = 3;
pub const DEFAULT_MAX_DEPTH: u64 = 16;
pub const DEFAULT_CAP: u64 = 10;
const FIRST_DEPTH: u64 = 2;

/// The oracle depth: `ENDSPACE_MAX_DEPTH` when set to a number, otherwise
/// [`DEFAULT_MAX_DEPTH`].
pub fn max_depth_from_env() -> u64 {
    std::env::var("ENDSPACE_MAX_DEPTH")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&d| d > FIRST_DEPTH)
        .unwrap_or(DEFAULT_MAX_DEPTH)
}

fn default_cap() -> u64 {
    DEFAULT_CAP
}

/// One oracle question. Vertex lists and separators use the address syntax
/// of [`Separator::parse`]; a cut endpoint is a vertex address or `@tail`
/// for every vertex of a ray, clique, star ray or family copy (`@g:r`,
/// `@g:S:2`, `@f:F:0`, `@f:X:1:0`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Query {
    ComponentCount {
        separator: String,
    },
    SameComponent {
        separator: String,
        a: String,
        b: String,
    },
    Rayless {
        separator: String,
        vertex: String,
    },
    Cut {
        a: String,
        b: String,
        /// Vertex separators instead of edge separators.
        #[serde(default)]
        vertex: bool,
        #[serde(default = "default_cap")]
        cap: u64,
    },
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::ComponentCount { separator } => write!(f, "components without {{{separator}}}"),
            Query::SameComponent { separator, a, b } => write!(f, "{a} ~ {b} without {{{separator}}}"),
            Query::Rayless { separator, vertex } => write!(f, "rayless at {vertex} without {{{separator}}}"),
            Query::Cut { a, b, vertex, .. } => {
                write!(f, "{} cut {a} | {b}", if *vertex { "vertex" } else { "edge" })
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Value {
    Count(u64),
    /// Infinitely many components.
    Omega,
    Cut(u64),
    Infinite,
    Bool(bool),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Count(n) | Value::Cut(n) => write!(f, "{n}"),
            Value::Omega => write!(f, "ω"),
            Value::Infinite => write!(f, "infinite"),
            Value::Bool(b) => write!(f, "{b}"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StableAnswer {
    pub query: String,
    pub value: Value,
    pub first_stable_depth: u64,
    pub window: usize,
    /// Always true: a stable window is evidence, not a certificate.
    pub heuristic: bool,
    /// Raw value per depth from the first evaluated depth; `None` while the
    /// query's elements are not yet in the truncation.
    pub trace: Vec<(u64, Option<u64>)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Growth {
    Count,
    Cut(u64),
    Path,
    Flag,
}

/// Reads a stable value off a sequence of raw per-depth answers.
fn stabilize(
    mut raw: impl FnMut(u64) -> Result<Option<u64>>,
    growth: Growth,
    max_depth: u64,
    w: usize,
) -> Result<(Value, u64, Vec<(u64, Option<u64>)>)> {
    let w = w.max(1);
    let mut trace: Vec<(u64, Option<u64>)> = Vec::new();
    for n in FIRST_DEPTH..=max_depth {
        trace.push((n, raw(n)?));
        let tail = |k: usize| -> Option<Vec<u64>> {
            (trace.len() >= k).then(|| trace[trace.len() - k..].iter().map(|(_, v)| *v).collect::<Option<Vec<_>>>())?
        };
        if let Some(last) = tail(w) {
            if last.iter().all(|&v| v == last[0]) {
                let value = match growth {
                    Growth::Count => Value::Count(last[0]),
                    Growth::Cut(_) => Value::Cut(last[0]),
                    Growth::Path => Value::Bool(true),
                    Growth::Flag => Value::Bool(last[0] == 1),
                };
                return Ok((value, n + 1 - w as u64, trace));
            }
        }
        if let Some(ext) = tail(w + 1) {
            let steps: Vec<i64> = ext.windows(2).map(|p| p[1] as i64 - p[0] as i64).collect();
            let grown = match growth {
                Growth::Count => steps.iter().all(|&d| d >= 1 && d == steps[0]).then_some(Value::Omega),
                Growth::Cut(cap) => {
                    (ext[1..].iter().all(|&v| v > cap) && ext[0] < ext[w] && steps.iter().all(|&d| d >= 0))
                        .then_some(Value::Infinite)
                }
                Growth::Path => steps.iter().all(|&d| d >= 1).then_some(Value::Bool(false)),
                Growth::Flag => None,
            };
            if let Some(value) = grown {
                return Ok((value, n - w as u64, trace));
            }
        }
    }
    Err(Error::Unstable(max_depth as usize))
}

/// Smallest depth whose truncation contains `v`.
pub fn birth_depth(v: &VertexRef) -> u64 {
    let local = |l: &Local| match l {
        Local::Index(i) => *i,
        Local::StarRay(j, i) => *j.max(i),
        _ => 0,
    };
    1 + match v {
        VertexRef::Core(_) => 0,
        VertexRef::Gadget(_, i) => *i,
        VertexRef::StarRay(_, j, i) => *j.max(i),
        VertexRef::Family(_, k, l) => (*k).max(local(l)),
        VertexRef::Subdiv(a, b) => return birth_depth(a).max(birth_depth(b)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Endpoint {
    Vertex(VertexRef),
    Tail(String),
}

impl Endpoint {
    fn parse(s: &str) -> Result<Endpoint> {
        match s.trim().strip_prefix('@') {
            Some(t) => Ok(Endpoint::Tail(t.to_string())),
            None => Ok(Endpoint::Vertex(VertexRef::parse(s)?)),
        }
    }

    /// Vertex indices of this endpoint in a truncation.
    fn indices(&self, g: &FiniteGraph<VertexRef>) -> Vec<usize> {
        match self {
            Endpoint::Vertex(v) => g.index_of(v).into_iter().collect(),
            Endpoint::Tail(t) => (0..g.vertex_count()).filter(|&i| in_tail(t, g.label(i))).collect(),
        }
    }
}

/// Whether `v` is a vertex of the part named `tail`: the address continues
/// the name with exactly one more index.
fn in_tail(tail: &str, v: &VertexRef) -> bool {
    let s = v.to_string();
    match s.strip_prefix(tail) {
        Some(rest) => rest
            .strip_prefix(':')
            .or_else(|| rest.strip_prefix('.'))
            .is_some_and(|i| i.parse::<u64>().is_ok()),
        None => false,
    }
}

/// Truncations of one presentation, built on first use.
pub struct Oracle {
    p: Presentation,
    max_depth: u64,
    window: usize,
    cache: Vec<OnceCell<Truncation>>,
}

impl Oracle {
    pub fn new(p: &Presentation, max_depth: u64, window: usize) -> Oracle {
        Oracle {
            p: p.clone(),
            max_depth,
            window,
            cache: (0..=max_depth).map(|_| OnceCell::new()).collect(),
        }
    }

    pub fn with_defaults(p: &Presentation) -> Oracle {
        Oracle::new(p, max_depth_from_env(), DEFAULT_WINDOW)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.p
    }

    pub fn truncation(&self, n: u64) -> &Truncation {
        self.cache[n as usize].get_or_init(|| truncate(&self.p, n))
    }

    fn present(&self, v: &VertexRef, n: u64) -> bool {
        in_truncation(&self.p, v, n)
    }

    /// Removal masks of a separator in the depth-`n` truncation, or `None`
    /// while part of it lies deeper.
    fn masks(&self, f: &Separator, n: u64) -> Option<(Vec<bool>, BTreeSet<(usize, usize)>)> {
        let g = &self.truncation(n).graph;
        let mut vs = vec![false; g.vertex_count()];
        let mut es = BTreeSet::new();
        match f {
            Separator::Vertices(x) => {
                for v in x {
                    vs[g.index_of(v)?] = true;
                }
            }
            Separator::Edges(x) => {
                for EdgeRef(a, b) in x {
                    let (i, j) = (g.index_of(a)?, g.index_of(b)?);
                    es.insert((i.min(j), i.max(j)));
                }
            }
        }
        Some((vs, es))
    }

    pub fn ask(&self, q: &Query) -> Result<StableAnswer> {
        let (value, depth, trace) = match q {
            Query::ComponentCount { separator } => {
                let f = Separator::parse(separator)?;
                stabilize(
                    |n| {
                        Ok(self.masks(&f, n).map(|(vs, es)| {
                            self.truncation(n).graph.components_without(&vs, &es).1 as u64
                        }))
                    },
                    Growth::Count,
                    self.max_depth,
                    self.window,
                )?
            }
            Query::SameComponent { separator, a, b } => {
                let f = Separator::parse(separator)?;
                let (a, b) = (VertexRef::parse(a)?, VertexRef::parse(b)?);
                stabilize(
                    |n| {
                        let g = &self.truncation(n).graph;
                        let Some((vs, es)) = self.masks(&f, n) else { return Ok(None) };
                        let (Some(i), Some(j)) = (g.index_of(&a), g.index_of(&b)) else { return Ok(None) };
                        let (comp, _) = g.components_without(&vs, &es);
                        if comp[i].is_none() || comp[j].is_none() {
                            return Err(Error::Schema(format!("{a} or {b} lies in the separator")));
                        }
                        Ok(Some(u64::from(comp[i] == comp[j])))
                    },
                    Growth::Flag,
                    self.max_depth,
                    self.window,
                )?
            }
            Query::Rayless { separator, vertex } => {
                let f = Separator::parse(separator)?;
                let v = VertexRef::parse(vertex)?;
                stabilize(
                    |n| {
                        let g = &self.truncation(n).graph;
                        let Some((vs, es)) = self.masks(&f, n) else { return Ok(None) };
                        let Some(i) = g.index_of(&v) else { return Ok(None) };
                        let (comp, _) = g.components_without(&vs, &es);
                        let Some(c) = comp[i] else {
                            return Err(Error::Schema(format!("{v} lies in the separator")));
                        };
                        let members: Vec<usize> = (0..g.vertex_count()).filter(|&x| comp[x] == Some(c)).collect();
                        Ok(Some(longest_greedy_path(g, &members, &es)))
                    },
                    Growth::Path,
                    self.max_depth,
                    self.window,
                )?
            }
            Query::Cut { a, b, vertex, cap } => {
                let (ea, eb) = (Endpoint::parse(a)?, Endpoint::parse(b)?);
                stabilize(
                    |n| {
                        for e in [&ea, &eb] {
                            if let Endpoint::Vertex(v) = e {
                                if !self.present(v, n) {
                                    return Ok(None);
                                }
                            }
                        }
                        let g = &self.truncation(n).graph;
                        let (sa, sb) = (ea.indices(g), eb.indices(g));
                        if sa.is_empty() || sb.is_empty() {
                            return Ok(None);
                        }
                        Ok(Some(finite_cut(g, &sa, &sb, *vertex)))
                    },
                    Growth::Cut(*cap),
                    self.max_depth,
                    self.window,
                )?
            }
        };
        Ok(StableAnswer {
            query: q.to_string(),
            value,
            first_stable_depth: depth,
            window: self.window,
            heuristic: true,
            trace,
        })
    }
}

/// Warnsdorff-style walks from every vertex of a component: always step to
/// the unvisited neighbour with fewest unvisited neighbours. The longest walk
/// (in vertices) is a lower bound for the longest path; it stays bounded on
/// rayless pieces of presented graphs and grows along rays.
fn longest_greedy_path<V: Ord + Clone + fmt::Display>(
    g: &FiniteGraph<V>,
    members: &[usize],
    removed_edges: &BTreeSet<(usize, usize)>,
) -> u64 {
    let inside: BTreeSet<usize> = members.iter().copied().collect();
    let ok = |u: usize, w: usize| inside.contains(&w) && !removed_edges.contains(&(u.min(w), u.max(w)));
    let mut best = 0;
    let mut visited = vec![false; g.vertex_count()];
    for &s in members {
        let mut walk = vec![s];
        visited[s] = true;
        let mut u = s;
        loop {
            let free = |x: usize, visited: &[bool]| g.neighbors(x).iter().filter(|&&y| ok(x, y) && !visited[y]).count();
            let next = g
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&w| ok(u, w) && !visited[w])
                .min_by_key(|&w| (free(w, &visited), w));
            match next {
                Some(w) => {
                    visited[w] = true;
                    walk.push(w);
                    u = w;
                }
                None => break,
            }
        }
        for &x in &walk {
            visited[x] = false;
        }
        best = best.max(walk.len() as u64);
    }
    best
}

/// Minimum edge (or vertex) cut between two vertex sets of a finite graph.
/// Vertex cuts may delete vertices of either set, as a finite separator may
/// delete an initial piece of a tail. Overlapping sets give `u64::MAX`.
fn finite_cut<V: Ord + Clone + fmt::Display>(g: &FiniteGraph<V>, a: &[usize], b: &[usize], vertex: bool) -> u64 {
    let n = g.vertex_count();
    let big = (g.edge_count() + n + 1) as u64;
    if a.iter().any(|x| b.contains(x)) {
        return u64::MAX;
    }
    let (mut is_a, mut is_b) = (vec![false; n], vec![false; n]);
    a.iter().for_each(|&x| is_a[x] = true);
    b.iter().for_each(|&x| is_b[x] = true);
    let mut net = Network::new(2 * n + 2);
    let (s, t) = (2 * n, 2 * n + 1);
    for i in 0..n {
        let cap = if vertex { 1 } else { big };
        net.add_arc(2 * i, 2 * i + 1, cap);
        for &j in g.neighbors(i) {
            net.add_arc(2 * i + 1, 2 * j, if vertex { big } else { 1 });
        }
        if is_a[i] {
            net.add_arc(s, 2 * i, big);
        }
        if is_b[i] {
            net.add_arc(2 * i + 1, t, big);
        }
    }
    let f = net.max_flow(s, t, big);
    if f >= big {
        u64::MAX
    } else {
        f
    }
}

/// The symbolic engine's answer to the same query.
pub fn symbolic(p: &Presentation, q: &Query) -> Result<Value> {
    match q {
        Query::ComponentCount { separator } => {
            let records = components(p, &Separator::parse(separator)?)?;
            if records.iter().any(|r| r.multiplicity == Multiplicity::Omega) {
                Ok(Value::Omega)
            } else {
                Ok(Value::Count(records.len() as u64))
            }
        }
        Query::SameComponent { separator, a, b } => {
            let f = Separator::parse(separator)?;
            let vs = [VertexRef::parse(a)?, VertexRef::parse(b)?];
            let (records, owner) = owners(p, &f, &vs)?;
            let _ = records;
            Ok(Value::Bool(owner[0] == owner[1]))
        }
        Query::Rayless { separator, vertex } => {
            let f = Separator::parse(separator)?;
            let v = VertexRef::parse(vertex)?;
            let (records, owner) = owners(p, &f, std::slice::from_ref(&v))?;
            Ok(Value::Bool(records[owner[0]].rays == RayClass::Rayless))
        }
        Query::Cut { a, b, vertex, .. } => {
            let engine = Engine::new(p);
            let answer = match (Endpoint::parse(a)?, Endpoint::parse(b)?, vertex) {
                (Endpoint::Vertex(u), Endpoint::Vertex(v), false) => engine.sim_e(&u, &v)?,
                (Endpoint::Vertex(u), Endpoint::Tail(t), false) | (Endpoint::Tail(t), Endpoint::Vertex(u), false) => {
                    engine.edge_dominates(&u, &RaySpec::tail(&t))?
                }
                (Endpoint::Tail(s), Endpoint::Tail(t), false) => {
                    engine.edge_equivalent(&RaySpec::tail(&s), &RaySpec::tail(&t))?
                }
                (Endpoint::Tail(s), Endpoint::Tail(t), true) => {
                    engine.end_equivalent(&RaySpec::tail(&s), &RaySpec::tail(&t))?
                }
                _ => return Err(Error::Schema("vertex cuts are asked between two tails".into())),
            };
            Ok(match answer.value {
                CutValue::Finite(k) => Value::Cut(k),
                CutValue::Infinite => Value::Infinite,
            })
        }
    }
}

/// Component record index of each vertex after deleting `f`.
fn owners(
    p: &Presentation,
    f: &Separator,
    vs: &[VertexRef],
) -> Result<(Vec<crate::separation::ComponentRecord>, Vec<usize>)> {
    f.check(p)?;
    for v in vs {
        p.check(v)?;
    }
    let m: Materialization = materialization_for(f).cover_all(vs);
    let sk = Engine::new(p).skeleton(&m);
    let (nodes, arcs) = removal_masks(&sk, f)?;
    let (records, owner) = split(p, &sk, &nodes, &arcs)?;
    let idx = vs
        .iter()
        .map(|v| {
            sk.locate(p, v)
                .and_then(|x| owner[x])
                .ok_or_else(|| Error::UnresolvedRef(format!("{v} lies in the separator")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((records, idx))
}

/// One differential comparison.
#[derive(Debug, Clone, Serialize)]
pub struct DiffRow {
    pub presentation: String,
    pub query: Query,
    pub symbolic: Option<Value>,
    pub oracle: Option<Value>,
    pub stable_from: Option<u64>,
    pub error: Option<String>,
    pub agree: bool,
}

pub fn compare(o: &Oracle, q: &Query) -> DiffRow {
    let s = symbolic(o.presentation(), q);
    let a = o.ask(q);
    let error = match (&s, &a) {
        (Err(e), _) => Some(format!("symbolic: {e}")),
        (_, Err(e)) => Some(format!("oracle: {e}")),
        _ => None,
    };
    let symbolic = s.ok();
    let (oracle, stable_from) = match a {
        Ok(x) => (Some(x.value), Some(x.first_stable_depth)),
        Err(_) => (None, None),
    };
    DiffRow {
        presentation: o.presentation().name.clone(),
        query: q.clone(),
        agree: error.is_none() && symbolic == oracle,
        symbolic,
        oracle,
        stable_from,
        error,
    }
}

/// One line of a query matrix file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixEntry {
    pub presentation: String,
    #[serde(flatten)]
    pub query: Query,
}

/// Probe vertices: core vertices, the first vertex of every gadget (and of
/// the first two rays of a star), and the boundary vertex of copies 0 and 1
/// of every family.
fn probes(p: &Presentation) -> Vec<VertexRef> {
    use crate::graph_model::GadgetKind;
    let mut out: Vec<VertexRef> = p.core.iter().map(|c| VertexRef::core(c)).collect();
    for g in &p.gadgets {
        match g.kind {
            GadgetKind::StarOfRays => out.extend((0..2).map(|j| VertexRef::star(&g.id, j, 0))),
            _ => out.push(VertexRef::gadget(&g.id, 0)),
        }
    }
    for f in &p.families {
        let b = f.pattern.default_boundary();
        out.extend((0..2).map(|k| VertexRef::family(&f.id, k, b.clone())));
    }
    out
}

/// Ray-carrying parts usable as cut tails.
fn tails(p: &Presentation) -> Vec<String> {
    use crate::graph_model::{GadgetKind, Pattern};
    let mut out = Vec::new();
    for g in &p.gadgets {
        match g.kind {
            GadgetKind::StarOfRays => out.extend((0..2).map(|j| format!("g:{}:{j}", g.id))),
            _ => out.push(format!("g:{}", g.id)),
        }
    }
    for f in &p.families {
        match f.pattern {
            Pattern::Ray => out.extend((0..2).map(|k| format!("f:{}:{k}", f.id))),
            Pattern::Star { .. } => out.push(format!("f:{}:0:0", f.id)),
            _ => {}
        }
    }
    out
}

/// The differential matrix over a list of presentations: component counts
/// after deleting up to two probes or one edge near the core, same-component
/// and rayless checks after deleting one probe, and edge and vertex cuts
/// between probes and tails.
pub fn query_matrix(ps: &[Presentation]) -> Vec<MatrixEntry> {
    let mut out = Vec::new();
    for p in ps {
        let mut push = |query: Query| {
            out.push(MatrixEntry {
                presentation: p.name.clone(),
                query,
            })
        };
        let pr = probes(p);
        let names: Vec<String> = pr.iter().map(|v| v.to_string()).collect();
        push(Query::ComponentCount { separator: String::new() });
        for (i, a) in names.iter().enumerate() {
            push(Query::ComponentCount { separator: a.clone() });
            for b in &names[i + 1..] {
                push(Query::ComponentCount {
                    separator: format!("{a}; {b}"),
                });
            }
        }
        let t2 = truncate(p, 2).graph;
        for (a, b) in t2.edge_labels().into_iter().filter(|(a, b)| pr.contains(a) || pr.contains(b)) {
            push(Query::ComponentCount {
                separator: format!("{a} -- {b}"),
            });
        }
        for sep in std::iter::once(None).chain(pr.iter().map(Some)) {
            let s = sep.map(|v| v.to_string()).unwrap_or_default();
            let rest: Vec<&VertexRef> = pr.iter().filter(|v| Some(*v) != sep).collect();
            for (i, a) in rest.iter().enumerate() {
                push(Query::Rayless {
                    separator: s.clone(),
                    vertex: a.to_string(),
                });
                for b in &rest[i + 1..] {
                    push(Query::SameComponent {
                        separator: s.clone(),
                        a: a.to_string(),
                        b: b.to_string(),
                    });
                }
            }
        }
        let ts = tails(p);
        for t in &ts {
            for v in pr.iter().filter(|v| !in_tail(t, v)) {
                push(Query::Cut {
                    a: v.to_string(),
                    b: format!("@{t}"),
                    vertex: false,
                    cap: DEFAULT_CAP,
                });
            }
        }
        for (i, s) in ts.iter().enumerate() {
            for t in &ts[i + 1..] {
                for vertex in [false, true] {
                    push(Query::Cut {
                        a: format!("@{s}"),
                        b: format!("@{t}"),
                        vertex,
                        cap: DEFAULT_CAP,
                    });
                }
            }
        }
    }
    out
}

/// Runs a matrix; one row per entry, in order.
pub fn run_matrix(entries: &[MatrixEntry], ps: &[Presentation], max_depth: u64, w: usize) -> Result<Vec<DiffRow>> {
    let mut oracles: BTreeMap<String, Oracle> = BTreeMap::new();
    let mut rows = Vec::new();
    for e in entries {
        if !oracles.contains_key(&e.presentation) {
            let p = ps
                .iter()
                .find(|p| p.name == e.presentation)
                .ok_or_else(|| Error::UnknownCatalog(e.presentation.clone()))?;
            oracles.insert(e.presentation.clone(), Oracle::new(p, max_depth, w));
        }
        rows.push(compare(&oracles[&e.presentation], &e.query));
    }
    Ok(rows)
}

pub fn rows_json(rows: &[DiffRow]) -> serde_json::Value {
    let mismatches = rows.iter().filter(|r| !r.agree).count();
    json!({ "queries": rows.len(), "mismatches": mismatches, "rows": rows })
}

/// Number of ends seen in a family of finite graphs indexed by depth, where
/// every vertex is born at some depth. For each `m`, delete everything born
/// by depth `m` and count the pieces reaching from depth `m + 1` to the
/// newest layer; that count is stabilized in `n`, and the result again in
/// `m` (linear growth in `m` meaning ω).
pub fn end_count<V: Ord + Clone + fmt::Display>(
    graph: impl Fn(u64) -> FiniteGraph<V>,
    birth: impl Fn(&V) -> u64,
    max_depth: u64,
    w: usize,
) -> Result<Value> {
    let graphs: Vec<OnceCell<FiniteGraph<V>>> = (0..=max_depth).map(|_| OnceCell::new()).collect();
    let get = |n: u64| graphs[n as usize].get_or_init(|| graph(n));
    let deep = |m: u64, n: u64| -> u64 {
        let g = get(n);
        let born: Vec<u64> = g.vertices().iter().map(&birth).collect();
        let removed: Vec<bool> = born.iter().map(|&b| b <= m).collect();
        let (comp, count) = g.components_without(&removed, &BTreeSet::new());
        let mut near = vec![false; count];
        let mut far = vec![false; count];
        for (i, c) in comp.iter().enumerate() {
            let Some(c) = c else { continue };
            near[*c] |= born[i] == m + 1;
            far[*c] |= born[i] == n;
        }
        (0..count).filter(|&c| near[c] && far[c]).count() as u64
    };
    let inner_max = max_depth;
    let outer_max = max_depth / 2;
    let (value, _, _) = stabilize(
        |m| {
            let (v, _, _) = stabilize(
                |n| Ok((n >= m + 2).then(|| deep(m, n))),
                Growth::Count,
                inner_max,
                w,
            )?;
            match v {
                Value::Count(k) => Ok(Some(k)),
                _ => Err(Error::Unstable(inner_max as usize)),
            }
        },
        Growth::Count,
        outer_max,
        w,
    )?;
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn disjoint_rays_stay_apart() {
        let p = catalog::get("omega_rays").unwrap();
        let o = Oracle::new(&p, 16, 3);
        let a = o
            .ask(&Query::SameComponent {
                separator: String::new(),
                a: "f:R:0:0".into(),
                b: "f:R:1:0".into(),
            })
            .unwrap();
        assert_eq!((a.value, a.first_stable_depth), (Value::Bool(false), 2));
        assert!(a.heuristic);
    }

    #[test]
    fn dominating_hub_has_no_finite_cut() {
        let p = catalog::get("double_ray_dominator").unwrap();
        let o = Oracle::new(&p, 16, 3);
        let q = Query::Cut {
            a: "h".into(),
            b: "@g:r1".into(),
            vertex: false,
            cap: 10,
        };
        assert_eq!(o.ask(&q).unwrap().value, Value::Infinite);
        assert_eq!(symbolic(&p, &q).unwrap(), Value::Infinite);
    }

    #[test]
    fn star_rays_count_as_omega() {
        let p = catalog::get("star_of_rays").unwrap();
        let o = Oracle::new(&p, 16, 3);
        let q = Query::ComponentCount { separator: "c".into() };
        let a = o.ask(&q).unwrap();
        assert_eq!(a.value, Value::Omega);
        assert!(a.trace.iter().all(|(n, v)| *v == Some(*n)));
        assert_eq!(symbolic(&p, &q).unwrap(), Value::Omega);
    }

    #[test]
    fn short_depth_is_unstable() {
        let p = catalog::get("star_of_rays").unwrap();
        let o = Oracle::new(&p, 3, 3);
        assert!(matches!(
            o.ask(&Query::ComponentCount { separator: "c".into() }),
            Err(Error::Unstable(3))
        ));
    }

    #[test]
    fn rayless_flags() {
        let p = catalog::get("infinite_star").unwrap();
        let o = Oracle::new(&p, 16, 3);
        let hub = p.core[0].clone();
        let q = Query::Rayless {
            separator: String::new(),
            vertex: hub,
        };
        assert_eq!(o.ask(&q).unwrap().value, Value::Bool(true));
        let p = catalog::get("star_of_rays").unwrap();
        let o = Oracle::new(&p, 16, 3);
        let q = Query::Rayless {
            separator: String::new(),
            vertex: "c".into(),
        };
        assert_eq!(o.ask(&q).unwrap().value, Value::Bool(false));
    }

    #[test]
    fn matrix_files_round_trip() {
        let m = query_matrix(&[catalog::get("three_cliques").unwrap()]);
        let text = serde_json::to_string(&m).unwrap();
        let back: Vec<MatrixEntry> = serde_json::from_str(&text).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn tails_match_one_more_index() {
        assert!(in_tail("g:r", &VertexRef::gadget("r", 4)));
        assert!(in_tail("f:X:1:0", &VertexRef::family("X", 1, Local::StarRay(0, 3))));
        assert!(!in_tail("g:S", &VertexRef::star("S", 0, 3)));
        assert!(!in_tail("g:r", &VertexRef::gadget("r2", 0)));
    }

    #[test]
    fn ends_of_truncated_graphs() {
        for (name, want) in [
            ("double_ray_dominator", Value::Count(2)),
            ("star_of_rays", Value::Omega),
            ("infinite_star", Value::Count(0)),
        ] {
            let p = catalog::get(name).unwrap();
            let got = end_count(|n| truncate(&p, n).graph, birth_depth, 16, 3).unwrap();
            assert_eq!(got, want, "{name}");
        }
    }
}
