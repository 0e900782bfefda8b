//! Points of the end, edge-end, timid-end and U-end spaces and of the edge-
//! and U-direction spaces, with the partitions finite separators induce on
//! them.
//!
//! A space is summarized at a resolution: its points (singletons and
//! ω-indexed families), and for every separator drawn from the skeleton's
//! candidate elements, the partition of the points into components. Two
//! summaries correspond when a point bijection transports every partition.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::cuts::{cut_value, AtomKind, CutValue, Engine, Materialization, Separation, SkeletonGraph, USpec, VertexClassSet};
use crate::error::{Error, Result};
use crate::graph_model::{EdgeRef, Presentation, VertexRef};
use crate::separation::{removal_masks, split, ComponentRecord, Separator};

/// Largest candidate count for which every subset is a separator.
pub const FULL_SUBSET_LIMIT: usize = 12;
/// Subset size used when the candidates are too many for all subsets.
pub const DEFAULT_SUBSET_SIZE: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpaceKind {
    End,
    EdgeEnd,
    TimidEnd,
    UEnd(USpec),
    EdgeDirection,
    UDirection(USpec),
}

impl SpaceKind {
    pub fn is_edge(&self) -> bool {
        matches!(self, SpaceKind::EdgeEnd | SpaceKind::EdgeDirection)
    }

    pub fn is_direction(&self) -> bool {
        matches!(self, SpaceKind::EdgeDirection | SpaceKind::UDirection(_))
    }

    /// The vertex set separators are drawn from (vertex kinds only).
    pub fn u(&self) -> USpec {
        match self {
            SpaceKind::TimidEnd => USpec::Timid,
            SpaceKind::UEnd(u) | SpaceKind::UDirection(u) => u.clone(),
            _ => USpec::All,
        }
    }

    /// The end space whose points a direction space contains.
    pub fn end_kind(&self) -> SpaceKind {
        match self {
            SpaceKind::EdgeDirection => SpaceKind::EdgeEnd,
            SpaceKind::UDirection(u) => SpaceKind::UEnd(u.clone()),
            k => k.clone(),
        }
    }

    /// Parses `end`, `edge`, `timid`, `u-end`, `edge-dir`, `u-dir`; the U
    /// kinds take `u`.
    pub fn parse(s: &str, u: Option<&USpec>) -> Result<SpaceKind> {
        let need_u = || {
            u.cloned()
                .ok_or_else(|| Error::UnsupportedUSpec(format!("space {s} needs a vertex set U")))
        };
        match s {
            "end" | "ends" => Ok(SpaceKind::End),
            "edge" | "edge-end" | "edge-ends" => Ok(SpaceKind::EdgeEnd),
            "timid" | "timid-end" | "timid-ends" => Ok(SpaceKind::TimidEnd),
            "u-end" | "u-ends" | "u" => Ok(SpaceKind::UEnd(need_u()?)),
            "edge-dir" | "edge-direction" | "edge-directions" => Ok(SpaceKind::EdgeDirection),
            "u-dir" | "u-direction" | "u-directions" => Ok(SpaceKind::UDirection(need_u()?)),
            _ => Err(Error::Schema(format!("unknown space {s}"))),
        }
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceKind::End => write!(f, "end"),
            SpaceKind::EdgeEnd => write!(f, "edge-end"),
            SpaceKind::TimidEnd => write!(f, "timid-end"),
            SpaceKind::UEnd(u) => write!(f, "u-end({u})"),
            SpaceKind::EdgeDirection => write!(f, "edge-direction"),
            SpaceKind::UDirection(u) => write!(f, "u-direction({u})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Shape {
    Singleton,
    /// ω pairwise distinct points: the unmaterialized members of a family.
    OmegaFamily,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Source {
    /// An end, or the direction a ray induces.
    End,
    /// A direction induced by a vertex of infinite degree and by no ray.
    RaylessHub,
}

/// How a point is found on a skeleton.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Anchor {
    Atom(String),
    Vertex(VertexRef),
}

/// One point (or ω-family of points) of a space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    pub id: usize,
    pub name: String,
    pub shape: Shape,
    pub source: Source,
    /// Atom names (or hub vertex names) merged into this point.
    pub atoms: Vec<String>,
    pub anchor: Anchor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Block {
    /// The point lies in this component (a family: cofinitely many members do).
    In(usize),
    /// Each member of a family point lies in its own component.
    Each,
}

/// Component of every point for one separator, blocks numbered by first use.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition(pub Vec<Block>);

impl Partition {
    fn canonical(raw: Vec<Block>) -> Partition {
        let mut renum = BTreeMap::new();
        Partition(
            raw.into_iter()
                .map(|b| match b {
                    Block::In(x) => {
                        let n = renum.len();
                        Block::In(*renum.entry(x).or_insert(n))
                    }
                    Block::Each => Block::Each,
                })
                .collect(),
        )
    }

    pub fn together(&self, i: usize, j: usize) -> bool {
        matches!((self.0[i], self.0[j]), (Block::In(x), Block::In(y)) if x == y)
    }

    pub fn block_count(&self) -> usize {
        self.0
            .iter()
            .filter_map(|b| match b {
                Block::In(x) => Some(*x),
                Block::Each => None,
            })
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// Every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        let n = self.0.len();
        (0..n).all(|i| {
            (coarser.0[i] != Block::Each || self.0[i] == Block::Each)
                && (i + 1..n).all(|j| !self.together(i, j) || coarser.together(i, j))
        })
    }

    /// First pair `(i, j)` on which `m` fails to carry `self` onto `other`
    /// (`i == j` for a family split differently).
    pub fn transport_failure(&self, m: &[usize], other: &Partition) -> Option<(usize, usize)> {
        let n = self.0.len();
        for i in 0..n {
            if (self.0[i] == Block::Each) != (other.0[m[i]] == Block::Each) {
                return Some((i, i));
            }
            for j in i + 1..n {
                if self.together(i, j) != other.together(m[i], m[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// Which separators a summary ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resolution {
    /// All subsets when there are at most 12 candidates, else subsets of size ≤ 3.
    Auto,
    /// Subsets of size at most `k`.
    UpTo(usize),
    /// All subsets; fails with `ResolutionOverflow` beyond 12 candidates.
    Full,
}

impl Resolution {
    fn max_size(self, candidates: usize) -> Result<usize> {
        match self {
            Resolution::Auto if candidates <= FULL_SUBSET_LIMIT => Ok(candidates),
            Resolution::Auto => Ok(DEFAULT_SUBSET_SIZE),
            Resolution::UpTo(k) => Ok(k.min(candidates)),
            Resolution::Full if candidates <= FULL_SUBSET_LIMIT => Ok(candidates),
            Resolution::Full => Err(Error::ResolutionOverflow {
                candidates,
                limit: FULL_SUBSET_LIMIT,
            }),
        }
    }
}

/// Subsets of `0..n` of size at most `k`, by size then lexicographically.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..k.min(n) {
        let mut next = Vec::new();
        for s in &layer {
            let start = s.last().map_or(0, |x| x + 1);
            for x in start..n {
                let mut t = s.clone();
                t.push(x);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Finite description of a space.
#[derive(Clone)]
pub struct SpaceSummary {
    pub kind: SpaceKind,
    pub presentation: String,
    pub points: Vec<Point>,
    /// Separator candidates (unit edges or removable vertices) in canonical order.
    pub candidates: Vec<String>,
    pub separators: Vec<Separator>,
    pub partitions: Vec<Partition>,
    /// `(x, S)`: point `x` lies with the family point `S` under every separator.
    pub accumulation: Vec<(usize, usize)>,
    /// Decisions taken while building (family collapses and the like).
    pub notes: Vec<String>,
    engine: Arc<Engine>,
    skeleton: Arc<SkeletonGraph>,
}

impl fmt::Debug for SpaceSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpaceSummary")
            .field("kind", &self.kind)
            .field("points", &self.points)
            .field("separators", &self.separators.len())
            .finish()
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (a, b) = (find(parent, a), find(parent, b));
    parent[a.max(b)] = a.min(b);
}

/// A member far beyond any window, used to locate a generic class's region.
fn far_member(name: &str) -> Result<VertexRef> {
    VertexRef::parse(&name.replace('*', "1000000"))
}

fn anchor_node(p: &Presentation, sk: &SkeletonGraph, a: &Anchor) -> Result<usize> {
    match a {
        Anchor::Atom(name) => sk
            .atom(name)
            .map(|i| sk.atoms[i].node)
            .ok_or_else(|| Error::UnresolvedRef(format!("atom {name}"))),
        Anchor::Vertex(v) => sk
            .locate(p, v)
            .ok_or_else(|| Error::UnresolvedRef(v.to_string())),
    }
}

impl SpaceSummary {
    pub fn engine(&self) -> &Arc<Engine> {
        &self.engine
    }

    pub fn skeleton(&self) -> &Arc<SkeletonGraph> {
        &self.skeleton
    }

    /// Number of points, or `None` when some point is an ω-family.
    pub fn count(&self) -> Option<usize> {
        if self.points.iter().any(|p| p.shape == Shape::OmegaFamily) {
            None
        } else {
            Some(self.points.len())
        }
    }

    pub fn point(&self, name: &str) -> Option<usize> {
        self.points
            .iter()
            .position(|p| p.name == name || p.atoms.iter().any(|a| a == name))
    }

    pub fn families(&self) -> impl Iterator<Item = &Point> {
        self.points.iter().filter(|p| p.shape == Shape::OmegaFamily)
    }

    /// Points accumulating on family point `s`.
    pub fn accumulating_on(&self, s: usize) -> Vec<usize> {
        self.accumulation
            .iter()
            .filter(|(_, t)| *t == s)
            .map(|(x, _)| *x)
            .collect()
    }

    /// No point accumulates on any family: every point is isolated.
    pub fn is_discrete(&self) -> bool {
        self.accumulation.is_empty()
    }

    /// Compact at resolution: every ω-family has an accumulation point.
    /// Points are countable, so this is the sequential compactness test.
    pub fn is_compact(&self) -> bool {
        self.families().all(|s| !self.accumulating_on(s.id).is_empty())
    }

    /// Families without an accumulation point.
    pub fn non_compact_witnesses(&self) -> Vec<String> {
        self.families()
            .filter(|s| self.accumulating_on(s.id).is_empty())
            .map(|s| s.name.clone())
            .collect()
    }

    fn check_kind(&self, f: &Separator) -> Result<()> {
        if f.is_edge_kind() != self.kind.is_edge() {
            return Err(Error::UnresolvedRef(format!(
                "separator {f} has the wrong kind for the {} space",
                self.kind
            )));
        }
        if let Separator::Vertices(vs) = f {
            let u = self.kind.u();
            for v in vs {
                if !self.engine.in_u(&u, v)? {
                    return Err(Error::UnsupportedUSpec(format!("{v} is not in {u}")));
                }
            }
        }
        Ok(())
    }

    /// The partition induced by any finite separator of the right kind.
    pub fn partition_of(&self, f: &Separator) -> Result<Partition> {
        if let Some(i) = self.separators.iter().position(|g| g == f) {
            return Ok(self.partitions[i].clone());
        }
        self.check_kind(f)?;
        f.check(self.engine.presentation())?;
        let sk = self
            .engine
            .skeleton(&self.skeleton.materialization.clone().cover_all(&f.touched()));
        partition_on(self.engine.presentation(), &sk, &self.points, f)
    }

    fn evaluate(&self, f: &Separator) -> Result<Eval> {
        self.check_kind(f)?;
        let p = self.engine.presentation();
        f.check(p)?;
        let sk = self
            .engine
            .skeleton(&self.skeleton.materialization.clone().cover_all(&f.touched()));
        let (partition, comp, renum, anchors) = evaluate_on(p, &sk, &self.points, f)?;
        Ok(Eval {
            partition,
            sk,
            comp,
            renum,
            anchors,
        })
    }

    /// Components of `G ∖ F` carrying the point's tails (or hub).
    pub fn component_of(&self, point: usize, f: &Separator) -> Result<ComponentRecord> {
        let p = self.engine.presentation();
        f.check(p)?;
        let sk = self
            .engine
            .skeleton(&self.skeleton.materialization.clone().cover_all(&f.touched()));
        let (nodes, arcs) = removal_masks(&sk, f)?;
        let (records, owner) = split(p, &sk, &nodes, &arcs)?;
        let a = anchor_node(p, &sk, &self.points[point].anchor)?;
        let r = owner[a].ok_or_else(|| Error::UnresolvedRef(format!("{} was removed", self.points[point].name)))?;
        Ok(records[r].clone())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let name = |i: usize| self.points[i].name.clone();
        serde_json::json!({
            "space": self.kind.to_string(),
            "presentation": self.presentation,
            "points": self.points.iter().map(|p| serde_json::json!({
                "id": p.id,
                "name": p.name,
                "shape": p.shape,
                "source": p.source,
                "atoms": p.atoms,
            })).collect::<Vec<_>>(),
            "count": self.count(),
            "candidates": self.candidates,
            "partitions": self.separators.iter().zip(&self.partitions).map(|(f, part)| {
                serde_json::json!({ "separator": f.to_string(), "blocks": part.0 })
            }).collect::<Vec<_>>(),
            "accumulation": self.accumulation.iter().map(|(x, s)| [name(*x), name(*s)]).collect::<Vec<_>>(),
            "discrete": self.is_discrete(),
            "compact": self.is_compact(),
            "notes": self.notes,
        })
    }
}

/// A partition together with the skeleton data needed to place vertices.
struct Eval {
    partition: Partition,
    sk: Arc<SkeletonGraph>,
    comp: Vec<Option<usize>>,
    /// Raw component id -> block number.
    renum: BTreeMap<usize, usize>,
    anchors: Vec<usize>,
}

impl Eval {
    /// A vertex of point `i`'s component (least materialized one, or a
    /// vertex of its region).
    fn label(&self, p: &Presentation, i: usize) -> Option<VertexRef> {
        let c = self.comp[self.anchors[i]]?;
        if let Some((v, _)) = self.sk.vertex_nodes().find(|(_, n)| self.comp[*n] == Some(c)) {
            return Some(v.clone());
        }
        match &self.sk.nodes[self.anchors[i]] {
            crate::cuts::Node::Region(r) => Some(crate::separation::region_representative(p, r)),
            crate::cuts::Node::Vertex(v) => Some(v.clone()),
        }
    }

    /// Block of the component containing `v`, if that component holds a point.
    fn block_of(&self, p: &Presentation, v: &VertexRef) -> Option<usize> {
        let n = self.sk.locate(p, v)?;
        self.renum.get(&self.comp[n]?).copied()
    }
}

fn partition_on(p: &Presentation, sk: &SkeletonGraph, points: &[Point], f: &Separator) -> Result<Partition> {
    let (partition, ..) = evaluate_on(p, sk, points, f)?;
    Ok(partition)
}

#[allow(clippy::type_complexity)]
fn evaluate_on(
    p: &Presentation,
    sk: &SkeletonGraph,
    points: &[Point],
    f: &Separator,
) -> Result<(Partition, Vec<Option<usize>>, BTreeMap<usize, usize>, Vec<usize>)> {
    let (nodes, arcs) = removal_masks(sk, f)?;
    let (comp, _) = sk.components(&nodes, &arcs);
    let shattered = sk.shattered(&nodes);
    let mut raw = Vec::with_capacity(points.len());
    let mut anchors = Vec::with_capacity(points.len());
    for pt in points {
        let a = anchor_node(p, sk, &pt.anchor)?;
        anchors.push(a);
        let b = if pt.shape == Shape::OmegaFamily && shattered[a] {
            Block::Each
        } else {
            let c = comp[a].ok_or_else(|| Error::UnresolvedRef(format!("{} was removed by {f}", pt.name)))?;
            Block::In(c)
        };
        raw.push(b);
    }
    let mut renum = BTreeMap::new();
    for b in &raw {
        if let Block::In(x) = b {
            let n = renum.len();
            renum.entry(*x).or_insert(n);
        }
    }
    Ok((Partition::canonical(raw), comp, renum, anchors))
}

fn materialization(engine: &Engine, kind: &SpaceKind, cover: &[VertexRef]) -> Result<Materialization> {
    let m = if kind.is_edge() {
        Materialization::edge()
    } else {
        let u = kind.u();
        u.validate(engine.presentation())?;
        Materialization::vertex().cover_all(&u.named_vertices())
    };
    for v in cover {
        engine.presentation().check(v)?;
    }
    Ok(m.cover_all(cover))
}

fn separation(engine: &Engine, sk: &SkeletonGraph, kind: &SpaceKind) -> Result<Separation> {
    if kind.is_edge() {
        Ok(Separation::Edge)
    } else {
        Ok(Separation::Vertex(engine.flags(sk, &kind.u(), &[])?))
    }
}

/// End points: classes of seed atoms under inseparability, with ω-families
/// decided by their representative pairs.
fn end_points(sk: &SkeletonGraph, sep: &Separation, notes: &mut Vec<String>) -> Vec<Point> {
    let seeds: Vec<usize> = (0..sk.atoms.len())
        .filter(|&i| sk.atoms[i].kind == AtomKind::Seed && !sk.atoms[i].rest)
        .collect();
    let pos: BTreeMap<usize, usize> = seeds.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut parent: Vec<usize> = (0..seeds.len()).collect();
    let inseparable = |a: usize, b: usize| {
        let (x, y) = (sk.atoms[a].node, sk.atoms[b].node);
        x == y || cut_value(sk, sep, &[x], &[y]) == CutValue::Infinite
    };
    for i in 0..seeds.len() {
        for j in i + 1..seeds.len() {
            if find(&mut parent, i) != find(&mut parent, j) && inseparable(seeds[i], seeds[j]) {
                union(&mut parent, i, j);
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (k, &i) in seeds.iter().enumerate() {
        let r = find(&mut parent, k);
        classes.entry(r).or_default().push(sk.atoms[i].name.clone());
    }
    let mut families = Vec::new();
    for fam in &sk.families {
        let rest = &sk.atoms[fam.rest];
        if rest.kind != AtomKind::Seed {
            continue;
        }
        if fam.pairs.iter().all(|&(a, b)| inseparable(a, b)) && !fam.pairs.is_empty() {
            let r = find(&mut parent, pos[&fam.pairs[0].0]);
            classes.get_mut(&r).expect("class of a seed").push(rest.name.clone());
            notes.push(format!("family {} collapsed: representative members inseparable", rest.name));
        } else {
            families.push(Point {
                id: 0,
                name: format!("[{}]", rest.name),
                shape: Shape::OmegaFamily,
                source: Source::End,
                atoms: vec![rest.name.clone()],
                anchor: Anchor::Atom(rest.name.clone()),
            });
        }
    }
    let mut singles: Vec<Point> = classes
        .into_values()
        .map(|atoms| Point {
            id: 0,
            name: format!("[{}]", atoms[0]),
            shape: Shape::Singleton,
            source: Source::End,
            anchor: Anchor::Atom(atoms[0].clone()),
            atoms,
        })
        .collect();
    singles.sort_by(|a, b| a.name.cmp(&b.name));
    families.sort_by(|a, b| a.name.cmp(&b.name));
    singles.extend(families);
    singles
}

/// Rayless hub points: classes of the given hub vertices under
/// inseparability, plus generic hub classes.
fn hub_points(
    p: &Presentation,
    sk: &SkeletonGraph,
    sep: &Separation,
    hubs: &VertexClassSet,
    notes: &mut Vec<String>,
) -> Result<Vec<Point>> {
    let nodes: Vec<usize> = hubs
        .vertices
        .iter()
        .map(|v| sk.locate(p, v).ok_or_else(|| Error::UnresolvedRef(v.to_string())))
        .collect::<Result<_>>()?;
    let mut parent: Vec<usize> = (0..nodes.len()).collect();
    let inseparable =
        |x: usize, y: usize| x == y || cut_value(sk, sep, &[x], &[y]) == CutValue::Infinite;
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if find(&mut parent, i) != find(&mut parent, j) && inseparable(nodes[i], nodes[j]) {
                union(&mut parent, i, j);
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for i in 0..nodes.len() {
        let r = find(&mut parent, i);
        classes.entry(r).or_default().push(hubs.vertices[i].to_string());
    }
    let mut families = Vec::new();
    for g in &hubs.generic {
        let rep = sk
            .locate(p, &g.representative)
            .ok_or_else(|| Error::UnresolvedRef(g.representative.to_string()))?;
        let far = far_member(&g.name)?;
        let region = sk.locate(p, &far).ok_or_else(|| Error::UnresolvedRef(g.name.clone()))?;
        // Two generic members are the representative and the region's members;
        // inseparable from the representative means the class collapses.
        if inseparable(rep, region) {
            if let Some(i) = hubs.vertices.iter().position(|v| v == &g.representative) {
                let r = find(&mut parent, i);
                classes.get_mut(&r).expect("class").push(g.name.clone());
                notes.push(format!("hub class {} collapsed into {}", g.name, g.representative));
                continue;
            }
        }
        families.push(Point {
            id: 0,
            name: format!("hub {}", g.name),
            shape: Shape::OmegaFamily,
            source: Source::RaylessHub,
            atoms: vec![g.name.clone()],
            anchor: Anchor::Vertex(far),
        });
    }
    let mut singles: Vec<Point> = classes
        .into_values()
        .map(|atoms| Point {
            id: 0,
            name: format!("hub {}", atoms[0]),
            shape: Shape::Singleton,
            source: Source::RaylessHub,
            anchor: Anchor::Vertex(VertexRef::parse(&atoms[0]).expect("hub names are addresses")),
            atoms,
        })
        .collect();
    singles.sort_by(|a, b| a.name.cmp(&b.name));
    families.sort_by(|a, b| a.name.cmp(&b.name));
    singles.extend(families);
    Ok(singles)
}

/// Builds the summary of one space. `cover` lists extra vertices the
/// skeleton must materialize (for separators named later).
pub fn summarize(engine: &Arc<Engine>, kind: SpaceKind, res: Resolution, cover: &[VertexRef]) -> Result<SpaceSummary> {
    let p = engine.presentation();
    let m = materialization(engine, &kind, cover)?;
    let sk = engine.skeleton(&m);
    let sep = separation(engine, &sk, &kind)?;
    let mut notes = Vec::new();
    let mut points = end_points(&sk, &sep, &mut notes);
    match &kind {
        SpaceKind::EdgeDirection => {
            let hubs = engine.timid_hubs()?;
            points.extend(hub_points(p, &sk, &sep, &hubs, &mut notes)?);
        }
        SpaceKind::UDirection(u) => {
            let b = engine.boundary_tu(u)?;
            let mut outside = VertexClassSet::default();
            for v in &b.vertices {
                if !engine.in_u(u, v)? {
                    outside.vertices.push(v.clone());
                }
            }
            for g in &b.generic {
                if !engine.in_u(u, &g.representative)? {
                    outside.generic.push(g.clone());
                }
            }
            points.extend(hub_points(p, &sk, &sep, &outside, &mut notes)?);
        }
        _ => {}
    }
    for (i, pt) in points.iter_mut().enumerate() {
        pt.id = i;
    }

    // Separator candidates in canonical order.
    let (candidates, seps): (Vec<String>, Vec<Separator>) = if kind.is_edge() {
        let arcs = sk.unit_arcs();
        let edges: Vec<EdgeRef> = arcs
            .iter()
            .map(|&a| match &sk.arcs[a].cap {
                crate::cuts::Cap::Unit(e) => e.clone(),
                crate::cuts::Cap::Omega => unreachable!("unit arcs only"),
            })
            .collect();
        let k = res.max_size(edges.len())?;
        (
            edges.iter().map(|e| e.to_string()).collect(),
            subsets(edges.len(), k)
                .into_iter()
                .map(|s| Separator::edges(s.into_iter().map(|i| edges[i].clone())))
                .collect(),
        )
    } else {
        let Separation::Vertex(flags) = &sep else { unreachable!() };
        let vs: Vec<VertexRef> = sk
            .vertex_nodes()
            .filter(|(_, i)| flags[*i])
            .map(|(v, _)| v.clone())
            .collect();
        let k = res.max_size(vs.len())?;
        (
            vs.iter().map(|v| v.to_string()).collect(),
            subsets(vs.len(), k)
                .into_iter()
                .map(|s| Separator::vertices(s.into_iter().map(|i| vs[i].clone())))
                .collect(),
        )
    };
    let partitions = seps
        .iter()
        .map(|f| partition_on(p, &sk, &points, f))
        .collect::<Result<Vec<_>>>()?;

    let mut accumulation = Vec::new();
    for s in points.iter().filter(|x| x.shape == Shape::OmegaFamily) {
        for x in points.iter().filter(|x| x.id != s.id) {
            if partitions
                .iter()
                .all(|part| part.0[s.id] != Block::Each && part.together(s.id, x.id))
            {
                accumulation.push((x.id, s.id));
            }
        }
    }

    Ok(SpaceSummary {
        kind,
        presentation: p.name.clone(),
        points,
        candidates,
        separators: seps,
        partitions,
        accumulation,
        notes,
        engine: engine.clone(),
        skeleton: sk,
    })
}

fn engine_for(p: &Presentation) -> Arc<Engine> {
    Arc::new(Engine::new(p))
}

pub fn enumerate_ends(p: &Presentation) -> Result<SpaceSummary> {
    summarize(&engine_for(p), SpaceKind::End, Resolution::Auto, &[])
}

pub fn enumerate_edge_ends(p: &Presentation) -> Result<SpaceSummary> {
    summarize(&engine_for(p), SpaceKind::EdgeEnd, Resolution::Auto, &[])
}

pub fn enumerate_timid_ends(p: &Presentation) -> Result<SpaceSummary> {
    summarize(&engine_for(p), SpaceKind::TimidEnd, Resolution::Auto, &[])
}

pub fn enumerate_u_ends(p: &Presentation, u: &USpec) -> Result<SpaceSummary> {
    summarize(&engine_for(p), SpaceKind::UEnd(u.clone()), Resolution::Auto, &[])
}

pub fn enumerate_edge_directions(p: &Presentation) -> Result<SpaceSummary> {
    summarize(&engine_for(p), SpaceKind::EdgeDirection, Resolution::Auto, &[])
}

pub fn enumerate_u_directions(p: &Presentation, u: &USpec) -> Result<SpaceSummary> {
    summarize(&engine_for(p), SpaceKind::UDirection(u.clone()), Resolution::Auto, &[])
}

/// The canonical embedding of ends into directions: the direction point
/// carrying the same atoms.
pub fn iota(ends: &SpaceSummary, directions: &SpaceSummary, e: usize) -> Result<usize> {
    let pt = &ends.points[e];
    directions
        .points
        .iter()
        .position(|d| d.source == Source::End && d.atoms == pt.atoms)
        .ok_or_else(|| Error::PartialBijection(format!("no direction for {}", pt.name)))
}

/// The components `ρ(F)` a direction picks along an increasing chain.
pub fn direction_thread(dirs: &SpaceSummary, d: usize, chain: &[Separator]) -> Result<Vec<ComponentRecord>> {
    for (i, w) in chain.windows(2).enumerate() {
        if !w[0].is_subset(&w[1]) {
            return Err(Error::IncoherentChain(i + 1));
        }
    }
    let p = dirs.engine.presentation();
    let touched: Vec<VertexRef> = chain.iter().flat_map(|f| f.touched()).collect();
    let sk = dirs
        .engine
        .skeleton(&dirs.skeleton.materialization.clone().cover_all(&touched));
    let a = anchor_node(p, &sk, &dirs.points[d].anchor)?;
    let mut out: Vec<ComponentRecord> = Vec::new();
    for (i, f) in chain.iter().enumerate() {
        dirs.check_kind(f)?;
        f.check(p)?;
        let (nodes, arcs) = removal_masks(&sk, f)?;
        let (records, owner) = split(p, &sk, &nodes, &arcs)?;
        let r = owner[a].ok_or(Error::IncoherentChain(i))?;
        let rec = records[r].clone();
        if let Some(prev) = out.last() {
            if !rec.nodes.iter().all(|n| prev.nodes.contains(n)) {
                return Err(Error::IncoherentChain(i));
            }
        }
        out.push(rec);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrespondenceFailure {
    pub separator: String,
    pub image: String,
    pub points: (String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    pub pass: bool,
    pub checked: usize,
    /// Separators the translation declined to map.
    pub skipped: usize,
    pub failures: Vec<CorrespondenceFailure>,
}

/// Maps a vertex of a component of `G ∖ F` to a vertex expected in the
/// corresponding component on the other side.
pub type VertexMap<'a> = &'a dyn Fn(&Separator, &VertexRef) -> Option<VertexRef>;

/// Checks that the point bijection `m` transports the partition of every
/// separator of `s1` onto the partition of its image under `sep_map`. With a
/// vertex map the components themselves must correspond too: a vertex of the
/// component of point `x` must map into the component of `m(x)`.
pub fn correspondence_check(
    s1: &SpaceSummary,
    s2: &SpaceSummary,
    m: &[usize],
    sep_map: &dyn Fn(&Separator) -> Option<Separator>,
    vertex_map: Option<VertexMap<'_>>,
) -> Result<CorrespondenceReport> {
    if m.len() != s1.points.len() {
        return Err(Error::PartialBijection(format!(
            "map covers {} of {} points",
            m.len(),
            s1.points.len()
        )));
    }
    let image: BTreeSet<usize> = m.iter().copied().collect();
    if image.len() != m.len() || m.iter().any(|&x| x >= s2.points.len()) || image.len() != s2.points.len() {
        return Err(Error::PartialBijection("map is not a bijection onto the target points".into()));
    }
    let mut failures = Vec::new();
    for (i, &j) in m.iter().enumerate() {
        if s1.points[i].shape != s2.points[j].shape {
            failures.push(CorrespondenceFailure {
                separator: "-".into(),
                image: "-".into(),
                points: (s1.points[i].name.clone(), s2.points[j].name.clone()),
            });
        }
    }
    let (p1, p2) = (s1.engine.presentation(), s2.engine.presentation());
    let (mut checked, mut skipped) = (0, 0);
    for (f, part) in s1.separators.iter().zip(&s1.partitions) {
        let Some(g) = sep_map(f) else {
            skipped += 1;
            continue;
        };
        checked += 1;
        let fail = |a: usize, b: usize, failures: &mut Vec<CorrespondenceFailure>| {
            if failures.len() < 20 {
                failures.push(CorrespondenceFailure {
                    separator: f.to_string(),
                    image: g.to_string(),
                    points: (s1.points[a].name.clone(), s1.points[b].name.clone()),
                });
            }
        };
        match vertex_map {
            None => {
                let other = s2.partition_of(&g)?;
                if let Some((a, b)) = part.transport_failure(m, &other) {
                    fail(a, b, &mut failures);
                }
            }
            Some(vm) => {
                let (e1, e2) = (s1.evaluate(f)?, s2.evaluate(&g)?);
                if let Some((a, b)) = part.transport_failure(m, &e2.partition) {
                    fail(a, b, &mut failures);
                    continue;
                }
                for i in 0..m.len() {
                    let Block::In(target) = e2.partition.0[m[i]] else {
                        continue;
                    };
                    let landed = e1
                        .label(p1, i)
                        .and_then(|v| vm(f, &v))
                        .and_then(|w| e2.block_of(p2, &w));
                    if landed != Some(target) {
                        fail(i, i, &mut failures);
                        break;
                    }
                }
            }
        }
    }
    Ok(CorrespondenceReport {
        pass: failures.is_empty(),
        checked,
        skipped,
        failures,
    })
}

/// Identity map between two summaries with the same point names.
pub fn identity_map(s1: &SpaceSummary, s2: &SpaceSummary) -> Result<Vec<usize>> {
    s1.points
        .iter()
        .map(|pt| {
            s2.points
                .iter()
                .position(|q| q.name == pt.name)
                .ok_or_else(|| Error::PartialBijection(format!("{} has no image", pt.name)))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RhoOutcome {
    Surjective,
    /// Directions induced by no ray, by name.
    Misses(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoReport {
    pub outcome: RhoOutcome,
    pub boundary: VertexClassSet,
    pub boundary_within_u: bool,
    /// Misses are nonempty exactly when the boundary leaves `U`.
    pub consistent: bool,
}

/// Whether every U-direction is induced by a ray.
pub fn rho_surjectivity_check(p: &Presentation, u: &USpec) -> Result<RhoReport> {
    let engine = engine_for(p);
    let dirs = summarize(&engine, SpaceKind::UDirection(u.clone()), Resolution::UpTo(1), &[])?;
    let misses: Vec<String> = dirs
        .points
        .iter()
        .filter(|x| x.source == Source::RaylessHub)
        .map(|x| x.name.clone())
        .collect();
    let boundary = engine.boundary_tu(u)?;
    let within = engine.set_within_u(&boundary, u)?;
    let consistent = misses.is_empty() == within;
    Ok(RhoReport {
        outcome: if misses.is_empty() {
            RhoOutcome::Surjective
        } else {
            RhoOutcome::Misses(misses)
        },
        boundary,
        boundary_within_u: within,
        consistent,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpennessReport {
    pub open: bool,
    /// U-end points in the image of the basic open set.
    pub image: Vec<String>,
    /// A point of the image every U-neighbourhood of which leaves the image,
    /// with the outside points of its smallest neighbourhood.
    pub obstruction: Option<(String, Vec<String>)>,
    pub separators_tried: usize,
}

/// Whether the image of the basic open set `Ω(F, e)` under the quotient
/// map onto U-ends is open at resolution.
pub fn openness_probe(p: &Presentation, u: &USpec, e: &str, f: &Separator) -> Result<OpennessReport> {
    if f.is_edge_kind() {
        return Err(Error::UnresolvedRef(format!("{f} is not a vertex separator")));
    }
    f.check(p)?;
    let engine = engine_for(p);
    let cover = f.touched();
    let cover: Vec<VertexRef> = cover.into_iter().chain(u.named_vertices()).collect();
    let ends = summarize(&engine, SpaceKind::End, Resolution::UpTo(0), &cover)?;
    let uends = summarize(&engine, SpaceKind::UEnd(u.clone()), Resolution::Auto, &cover)?;
    let ei = ends
        .points
        .iter()
        .position(|x| x.name == e || x.atoms.iter().any(|a| a == e))
        .ok_or_else(|| Error::UnresolvedRef(format!("end {e}")))?;
    if ends.points[ei].shape != Shape::Singleton {
        return Err(Error::UnresolvedRef(format!("{e} names a family of ends")));
    }
    let pi: Vec<usize> = ends
        .points
        .iter()
        .map(|x| {
            uends
                .points
                .iter()
                .position(|y| x.atoms.iter().all(|a| y.atoms.contains(a)))
                .ok_or_else(|| Error::PartialBijection(format!("{} has no U-class", x.name)))
        })
        .collect::<Result<_>>()?;
    let part = ends.partition_of(f)?;
    let image: BTreeSet<usize> = (0..ends.points.len())
        .filter(|&x| x == ei || part.together(x, ei))
        .map(|x| pi[x])
        .collect();

    let mut obstruction = None;
    for &y in &image {
        let mut best: Option<Vec<usize>> = None;
        for q in &uends.partitions {
            let outside: Vec<usize> = if q.0[y] == Block::Each {
                Vec::new()
            } else {
                (0..uends.points.len())
                    .filter(|&z| z != y && q.together(y, z) && !image.contains(&z))
                    .collect()
            };
            if best.as_ref().is_none_or(|b| outside.len() < b.len()) {
                best = Some(outside);
            }
            if best.as_ref().is_some_and(|b| b.is_empty()) {
                break;
            }
        }
        let best = best.unwrap_or_default();
        if !best.is_empty() {
            obstruction = Some((
                uends.points[y].name.clone(),
                best.iter().map(|&z| uends.points[z].name.clone()).collect(),
            ));
            break;
        }
    }
    Ok(OpennessReport {
        open: obstruction.is_none(),
        image: image.iter().map(|&y| uends.points[y].name.clone()).collect(),
        obstruction,
        separators_tried: uends.partitions.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn counts(name: &str) -> (Option<usize>, Option<usize>, Option<usize>) {
        let p = catalog::get(name).unwrap();
        (
            enumerate_ends(&p).unwrap().count(),
            enumerate_edge_ends(&p).unwrap().count(),
            enumerate_timid_ends(&p).unwrap().count(),
        )
    }

    #[test]
    fn three_cliques_counts() {
        assert_eq!(counts("three_cliques"), (Some(3), Some(2), Some(1)));
    }

    #[test]
    fn two_cliques_bridge_counts() {
        assert_eq!(counts("two_cliques_bridge"), (Some(2), Some(2), Some(1)));
    }

    #[test]
    fn double_ray_dominator_counts() {
        let (v, e, _) = counts("double_ray_dominator");
        assert_eq!((v, e), (Some(2), Some(1)));
    }

    #[test]
    fn omega_rays_is_discrete_and_not_compact() {
        let s = enumerate_edge_ends(&catalog::get("omega_rays").unwrap()).unwrap();
        assert_eq!(s.count(), None);
        assert!(s.is_discrete());
        assert!(!s.is_compact());
    }

    #[test]
    fn star_center_accumulates_on_its_rays() {
        let s = enumerate_edge_directions(&catalog::get("star_of_rays").unwrap()).unwrap();
        let hub = s.point("hub c:c").unwrap();
        let fam = s.point("[g:S:*]").unwrap();
        assert!(s.accumulating_on(fam).contains(&hub));
        assert!(s.is_compact());
        let ends = enumerate_edge_ends(&catalog::get("star_of_rays").unwrap()).unwrap();
        assert!(!ends.is_compact());
    }

    #[test]
    fn infinite_star_has_one_rayless_direction() {
        let s = enumerate_edge_directions(&catalog::get("infinite_star").unwrap()).unwrap();
        assert_eq!(s.count(), Some(1));
        assert_eq!(s.points[0].source, Source::RaylessHub);
    }

    #[test]
    fn identity_correspondence_passes_and_swap_fails() {
        let p = catalog::get("three_cliques").unwrap();
        let s = enumerate_edge_ends(&p).unwrap();
        let id = identity_map(&s, &s).unwrap();
        let same = |_: &Separator, v: &VertexRef| Some(v.clone());
        assert!(correspondence_check(&s, &s, &id, &|f| Some(f.clone()), Some(&same)).unwrap().pass);
        let swapped: Vec<usize> = id.iter().rev().copied().collect();
        // Unlabelled partitions of two discrete points cannot tell a swap.
        assert!(correspondence_check(&s, &s, &swapped, &|f| Some(f.clone()), None).unwrap().pass);
        let r = correspondence_check(&s, &s, &swapped, &|f| Some(f.clone()), Some(&same)).unwrap();
        assert!(!r.pass);
        assert_eq!(r.failures[0].separator, "{c:a -- c:b}");
    }

    #[test]
    fn partitions_refine_along_inclusion() {
        for p in catalog::all() {
            let s = enumerate_edge_ends(&p).unwrap();
            for (i, f) in s.separators.iter().enumerate().take(60) {
                for (j, g) in s.separators.iter().enumerate().take(60) {
                    if f.is_subset(g) {
                        assert!(s.partitions[j].refines(&s.partitions[i]), "{}: {f} vs {g}", p.name);
                    }
                }
            }
        }
    }

    #[test]
    fn star_thread_follows_the_center() {
        let p = catalog::get("star_of_rays").unwrap();
        let s = enumerate_edge_directions(&p).unwrap();
        let hub = s.point("hub c:c").unwrap();
        let chain: Vec<Separator> = (1..=3)
            .map(|k| {
                Separator::edges((0..k).map(|j| EdgeRef::new(VertexRef::core("c"), VertexRef::star("S", j, 0))))
            })
            .collect();
        let thread = direction_thread(&s, hub, &chain).unwrap();
        assert_eq!(thread.len(), 3);
        assert!(thread.iter().all(|c| c.members.contains(&VertexRef::core("c"))));
        let bad = vec![chain[1].clone(), chain[0].clone()];
        assert_eq!(direction_thread(&s, hub, &bad), Err(Error::IncoherentChain(1)));
    }

    #[test]
    fn rho_misses_the_star_center() {
        let p = catalog::get("star_of_rays").unwrap();
        let r = rho_surjectivity_check(&p, &USpec::parse("all-but:c:c").unwrap()).unwrap();
        assert_eq!(r.outcome, RhoOutcome::Misses(vec!["hub c:c".into()]));
        assert!(r.consistent);
        let r = rho_surjectivity_check(&p, &USpec::All).unwrap();
        assert_eq!(r.outcome, RhoOutcome::Surjective);
    }

    #[test]
    fn clique_star_image_is_not_open() {
        let p = catalog::get("clique_star").unwrap();
        let f = Separator::parse("c:v0").unwrap();
        let r = openness_probe(&p, &USpec::Timid, "g:K", &f).unwrap();
        assert!(!r.open);
        let r = openness_probe(&p, &USpec::Timid, "g:K", &Separator::empty_vertices()).unwrap();
        assert!(r.open);
    }

    #[test]
    fn subsets_are_counted() {
        assert_eq!(subsets(4, 4).len(), 16);
        assert_eq!(subsets(5, 2).len(), 1 + 5 + 10);
    }
}
