//! Connectivity queries on a presentation: edge-equivalence of rays,
//! edge-domination, timidity, `∼_E`, U-timidity and U-density.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::cut::{cut_value, min_cut, CutAnswer, CutValue, Separation};
use super::skeleton::{AtomKind, Materialization, Node, SkeletonGraph};
use super::uspec::USpec;
use crate::error::{Error, Result};
use crate::graph_model::{neighborhood, GadgetKind, Local, Pattern, Presentation, VertexRef};

/// A ray given by an optional finite walk into a tail. The tail is named like
/// the atom it seeds: `g:r` (ray gadget or clique), `g:S:3` (ray 3 of a
/// star), `g:S:~` (chain through a chained star), `f:F:2` (copy 2 of a ray
/// family), `f:X:1:0` (ray 0 of the star in copy 1), `f:F:~` (chain through
/// a chained family). A `*` in place of an index means a generic member
/// beyond every index named elsewhere in the query.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RaySpec {
    pub prefix: Vec<VertexRef>,
    pub tail: String,
}

impl RaySpec {
    pub fn tail(name: &str) -> RaySpec {
        RaySpec {
            prefix: Vec::new(),
            tail: name.to_string(),
        }
    }

    /// Parses `tail` or `v1,v2,...@tail`.
    pub fn parse(s: &str) -> Result<RaySpec> {
        let (prefix, tail) = match s.rsplit_once('@') {
            Some((pre, tail)) => (
                pre.split(',')
                    .filter(|x| !x.trim().is_empty())
                    .map(|x| VertexRef::parse(x.trim()))
                    .collect::<Result<Vec<_>>>()?,
                tail.trim(),
            ),
            None => (Vec::new(), s.trim()),
        };
        Ok(RaySpec {
            prefix,
            tail: tail.to_string(),
        })
    }

    /// First vertex of the tail, or `None` for a generic member.
    pub fn anchor(&self, p: &Presentation) -> Result<Option<VertexRef>> {
        tail_anchor(p, &self.tail)
    }
}

impl fmt::Display for RaySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prefix.is_empty() {
            write!(f, "{}", self.tail)
        } else {
            let pre: Vec<String> = self.prefix.iter().map(|v| v.to_string()).collect();
            write!(f, "{}@{}", pre.join(","), self.tail)
        }
    }
}

fn unresolved(name: &str) -> Error {
    Error::UnresolvedRef(format!("ray tail {name}"))
}

/// First vertex of the named tail.
pub fn tail_anchor(p: &Presentation, name: &str) -> Result<Option<VertexRef>> {
    let parts: Vec<&str> = name.split(':').collect();
    let num = |s: &str| s.parse::<u64>().map_err(|_| unresolved(name));
    match parts.as_slice() {
        ["g", id] => match p.gadget(id).map(|g| g.kind) {
            Some(GadgetKind::Ray | GadgetKind::OmegaClique) => Ok(Some(VertexRef::gadget(id, 0))),
            _ => Err(unresolved(name)),
        },
        ["g", id, j] => {
            let g = p.gadget(id).filter(|g| g.kind == GadgetKind::StarOfRays);
            let g = g.ok_or_else(|| unresolved(name))?;
            match *j {
                "*" => Ok(None),
                "~" if g.chained => Ok(Some(VertexRef::star(id, 0, 0))),
                _ => Ok(Some(VertexRef::star(id, num(j)?, 0))),
            }
        }
        ["f", id, k] => {
            let f = p.family(id).ok_or_else(|| unresolved(name))?;
            match (*k, &f.pattern) {
                ("~", _) if f.chain.is_some() => {
                    Ok(Some(VertexRef::family(id, 0, f.pattern.default_boundary())))
                }
                ("*", Pattern::Ray) => Ok(None),
                (k, Pattern::Ray) => Ok(Some(VertexRef::family(id, num(k)?, Local::Index(0)))),
                _ => Err(unresolved(name)),
            }
        }
        ["f", id, k, j] => {
            let f = p.family(id).ok_or_else(|| unresolved(name))?;
            let Pattern::Star { chained } = f.pattern else {
                return Err(unresolved(name));
            };
            if *k == "*" || *j == "*" {
                return Ok(None);
            }
            let k = num(k)?;
            match *j {
                "~" if chained => Ok(Some(VertexRef::family(id, k, Local::StarRay(0, 0)))),
                _ => Ok(Some(VertexRef::family(id, k, Local::StarRay(num(j)?, 0)))),
            }
        }
        _ => Err(unresolved(name)),
    }
}

/// Replaces each `*` in a generic tail name by the largest materialized index.
fn concretize(sk: &SkeletonGraph, name: &str) -> Option<String> {
    if !name.contains('*') {
        return sk.atom(name).map(|_| name.to_string());
    }
    let pattern: Vec<&str> = name.split(':').collect();
    let mut best: Option<(Vec<u64>, String)> = None;
    for a in &sk.atoms {
        if a.rest {
            continue;
        }
        let parts: Vec<&str> = a.name.split(':').collect();
        if parts.len() != pattern.len() {
            continue;
        }
        let mut idx = Vec::new();
        let matches = parts.iter().zip(&pattern).all(|(x, y)| {
            if *y == "*" {
                match x.parse::<u64>() {
                    Ok(v) => {
                        idx.push(v);
                        true
                    }
                    Err(_) => false,
                }
            } else {
                x == y
            }
        });
        if matches && best.as_ref().is_none_or(|(b, _)| idx > *b) {
            best = Some((idx, a.name.clone()));
        }
    }
    best.map(|(_, n)| n)
}

/// Symbolic ∼_E class of vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimClass {
    /// Member names: vertex addresses, or a region description standing for
    /// infinitely many vertices.
    pub members: Vec<String>,
    pub infinite: bool,
    pub timid: bool,
}

/// The ∼_E classes of infinite-degree vertices; all other vertices
/// (finite degree) form singleton classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimClasses {
    pub classes: Vec<SimClass>,
    /// Hub families whose generic members are pairwise ∼_E-inequivalent:
    /// each contributes ω singleton classes.
    pub omega_singletons: Vec<String>,
    /// Hub families whose members are pairwise ∼_E-equivalent.
    pub omega_merged: Vec<String>,
}

/// Symbolic vertex set (e.g. `∂t_U` or the edge-dominating vertices):
/// finitely many named vertices plus generic classes standing for all the
/// unmaterialized members of an ω-indexed family of vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VertexClassSet {
    pub vertices: Vec<VertexRef>,
    pub generic: Vec<Generic>,
}

/// All vertices matching `name` (a vertex address with `*` in place of copy
/// indices) beyond the materialized ones; `representative` decides them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generic {
    pub name: String,
    pub representative: VertexRef,
}

impl VertexClassSet {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.generic.is_empty()
    }

    pub fn len_hint(&self) -> Option<usize> {
        self.generic.is_empty().then_some(self.vertices.len())
    }

    pub fn names(&self) -> Vec<String> {
        self.vertices
            .iter()
            .map(|v| v.to_string())
            .chain(self.generic.iter().map(|g| g.name.clone()))
            .collect()
    }

    /// Whether `v` is a listed vertex or matches a generic class.
    pub fn mentions(&self, v: &VertexRef) -> bool {
        self.vertices.contains(v) || {
            let name = v.to_string();
            self.generic.iter().any(|g| matches_generic(&g.name, &name))
        }
    }
}

fn matches_generic(pattern: &str, name: &str) -> bool {
    let (a, b): (Vec<&str>, Vec<&str>) = (pattern.split([':', '.']).collect(), name.split([':', '.']).collect());
    a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| *x == "*" && y.parse::<u64>().is_ok() || x == y)
}

/// Generic class names of `v`: each nonempty subset of its copy indices
/// replaced by `*`, with the replaced indices.
pub fn generic_keys(p: &Presentation, v: &VertexRef) -> Vec<(String, Vec<u64>)> {
    // Split the address into segments and mark which ones are copy indices.
    let (segs, copy): (Vec<String>, Vec<usize>) = match v {
        VertexRef::StarRay(g, j, i) => (vec![format!("g:{g}"), j.to_string(), i.to_string()], vec![1]),
        VertexRef::Gadget(g, i) if p.gadget(g).is_some_and(|x| x.kind == GadgetKind::OmegaClique) => {
            (vec![format!("g:{g}"), i.to_string()], vec![1])
        }
        VertexRef::Family(f, k, Local::StarRay(j, i)) => {
            (vec![format!("f:{f}"), k.to_string(), format!("{j}.{i}")], vec![1, 2])
        }
        VertexRef::Family(f, k, l) => (vec![format!("f:{f}"), k.to_string(), l.to_string()], vec![1]),
        _ => return Vec::new(),
    };
    let index = |s: &str| -> u64 { s.split('.').next().and_then(|x| x.parse().ok()).unwrap_or(0) };
    let mut out = Vec::new();
    for mask in 1u32..(1 << copy.len()) {
        let mut parts = segs.clone();
        let mut idx = Vec::new();
        for (b, &pos) in copy.iter().enumerate() {
            if mask & (1 << b) != 0 {
                idx.push(index(&segs[pos]));
                parts[pos] = match segs[pos].split_once('.') {
                    Some((_, rest)) => format!("*.{rest}"),
                    None => "*".to_string(),
                };
            }
        }
        out.push((parts.join(":"), idx));
    }
    out
}

/// Collects the qualifying vertices of a skeleton plus the generic classes
/// whose highest materialized member qualifies.
fn collect_classes(
    p: &Presentation,
    sk: &SkeletonGraph,
    mut qualifies: impl FnMut(&VertexRef, usize) -> Result<bool>,
) -> Result<VertexClassSet> {
    let mut out = VertexClassSet::default();
    let mut status = BTreeMap::new();
    let mut groups: BTreeMap<String, (Vec<u64>, VertexRef)> = BTreeMap::new();
    for (v, i) in sk.vertex_nodes() {
        let q = qualifies(v, i)?;
        status.insert(v.clone(), q);
        if q {
            out.vertices.push(v.clone());
        }
        for (key, idx) in generic_keys(p, v) {
            let e = groups.entry(key).or_insert((idx.clone(), v.clone()));
            if idx > e.0 {
                *e = (idx, v.clone());
            }
        }
    }
    for (name, (_, rep)) in groups {
        if status[&rep] {
            out.generic.push(Generic {
                name,
                representative: rep,
            });
        }
    }
    Ok(out)
}

/// Cut engine over one presentation. Skeletons and timidity answers are
/// cached; all methods take `&self` and are safe to call concurrently.
pub struct Engine {
    p: Arc<Presentation>,
    skeletons: Mutex<BTreeMap<Materialization, Arc<SkeletonGraph>>>,
    timid: Mutex<BTreeMap<VertexRef, bool>>,
}

impl Engine {
    pub fn new(p: &Presentation) -> Engine {
        Engine {
            p: Arc::new(p.clone()),
            skeletons: Mutex::new(BTreeMap::new()),
            timid: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.p
    }

    pub fn skeleton(&self, m: &Materialization) -> Arc<SkeletonGraph> {
        if let Some(sk) = self.skeletons.lock().expect("cache lock").get(m) {
            return sk.clone();
        }
        let sk = Arc::new(SkeletonGraph::build(&self.p, m));
        self.skeletons
            .lock()
            .expect("cache lock")
            .insert(m.clone(), sk.clone());
        sk
    }

    pub fn edge_skeleton(&self) -> Arc<SkeletonGraph> {
        self.skeleton(&Materialization::edge())
    }

    pub fn vertex_skeleton(&self) -> Arc<SkeletonGraph> {
        self.skeleton(&Materialization::vertex())
    }

    fn node(&self, sk: &SkeletonGraph, v: &VertexRef) -> Result<usize> {
        self.p.check(v)?;
        sk.locate(&self.p, v)
            .ok_or_else(|| Error::UnresolvedRef(v.to_string()))
    }

    fn check_prefix(&self, r: &RaySpec) -> Result<()> {
        for v in &r.prefix {
            self.p.check(v)?;
        }
        for w in r.prefix.windows(2) {
            if !neighborhood(&self.p, &w[0])?.contains(&w[1]) {
                return Err(Error::UnresolvedRef(format!("{} is not adjacent to {}", w[0], w[1])));
            }
        }
        if let (Some(last), Some(first)) = (r.prefix.last(), r.anchor(&self.p)?) {
            if last != &first && !neighborhood(&self.p, last)?.contains(&first) {
                return Err(Error::UnresolvedRef(format!(
                    "prefix of {r} does not end next to its tail"
                )));
            }
        }
        Ok(())
    }

    /// Skeleton covering the anchors of `rays` and the vertices `vs`, plus the
    /// tails' skeleton nodes.
    fn resolve(
        &self,
        base: Materialization,
        rays: &[&RaySpec],
        vs: &[&VertexRef],
    ) -> Result<(Arc<SkeletonGraph>, Vec<usize>)> {
        let mut m = base;
        for r in rays {
            self.check_prefix(r)?;
            if let Some(a) = r.anchor(&self.p)? {
                m = m.cover(&a);
            }
        }
        for v in vs {
            self.p.check(v)?;
            m = m.cover(v);
        }
        let sk = self.skeleton(&m);
        let mut nodes = Vec::new();
        for r in rays {
            let name = concretize(&sk, &r.tail).ok_or_else(|| unresolved(&r.tail))?;
            nodes.push(sk.atoms[sk.atom(&name).expect("concretized atom exists")].node);
        }
        Ok((sk, nodes))
    }

    /// True iff no finite edge set separates the tails (Infinite answer).
    pub fn edge_equivalent(&self, r1: &RaySpec, r2: &RaySpec) -> Result<CutAnswer> {
        let (sk, n) = self.resolve(Materialization::edge(), &[r1, r2], &[])?;
        Ok(min_cut(&sk, &Separation::Edge, &[n[0]], &[n[1]]))
    }

    /// Vertex-separator analogue of [`Engine::edge_equivalent`]: the rays lie in one end.
    pub fn end_equivalent(&self, r1: &RaySpec, r2: &RaySpec) -> Result<CutAnswer> {
        let (sk, n) = self.resolve(Materialization::vertex(), &[r1, r2], &[])?;
        let flags = self.flags(&sk, &USpec::All, &[])?;
        Ok(min_cut(&sk, &Separation::Vertex(flags), &[n[0]], &[n[1]]))
    }

    pub fn edge_dominates(&self, v: &VertexRef, r: &RaySpec) -> Result<CutAnswer> {
        let (sk, n) = self.resolve(Materialization::edge(), &[r], &[v])?;
        let x = self.node(&sk, v)?;
        Ok(min_cut(&sk, &Separation::Edge, &[x], &[n[0]]))
    }

    /// Minimum edge cut between two vertices.
    pub fn sim_e(&self, u: &VertexRef, v: &VertexRef) -> Result<CutAnswer> {
        let (sk, _) = self.resolve(Materialization::edge(), &[], &[u, v])?;
        let (a, b) = (self.node(&sk, u)?, self.node(&sk, v)?);
        if a == b && u != v {
            return Err(Error::UnresolvedRef(format!("{u} and {v} share a contracted region")));
        }
        Ok(min_cut(&sk, &Separation::Edge, &[a], &[b]))
    }

    /// Seed atoms edge-dominated by `v`, by name.
    pub fn dominated_seeds(&self, v: &VertexRef) -> Result<Vec<String>> {
        let (sk, _) = self.resolve(Materialization::edge(), &[], &[v])?;
        let x = self.node(&sk, v)?;
        Ok(sk
            .atoms
            .iter()
            .filter(|a| a.kind == AtomKind::Seed && !a.rest)
            .filter(|a| cut_value(&sk, &Separation::Edge, &[x], &[a.node]) == CutValue::Infinite)
            .map(|a| a.name.clone())
            .collect())
    }

    /// A vertex is timid when it edge-dominates no ray. Rays of ω-families are
    /// represented by materialized members (copy symmetry).
    pub fn timid(&self, v: &VertexRef) -> Result<bool> {
        self.p.check(v)?;
        if neighborhood(&self.p, v)?.is_finite() {
            return Ok(true);
        }
        if let Some(t) = self.timid.lock().expect("cache lock").get(v) {
            return Ok(*t);
        }
        let t = self.dominated_seeds(v)?.is_empty();
        self.timid.lock().expect("cache lock").insert(v.clone(), t);
        Ok(t)
    }

    /// Membership in `U`.
    pub fn in_u(&self, u: &USpec, v: &VertexRef) -> Result<bool> {
        match u.contains_static(v) {
            Some(b) => Ok(b),
            None => self.timid(v),
        }
    }

    /// Removable flags for vertex separators drawn from `U`, excluding `except`.
    pub fn flags(&self, sk: &SkeletonGraph, u: &USpec, except: &[usize]) -> Result<Vec<bool>> {
        let mut flags = vec![false; sk.nodes.len()];
        for (v, i) in sk.vertex_nodes() {
            flags[i] = !except.contains(&i) && self.in_u(u, v)?;
        }
        Ok(flags)
    }

    fn u_skeleton(&self, u: &USpec, vs: &[&VertexRef]) -> Result<Arc<SkeletonGraph>> {
        u.validate(&self.p)?;
        let named = u.named_vertices();
        let mut m = Materialization::vertex().cover_all(&named);
        for v in vs {
            self.p.check(v)?;
            m = m.cover(v);
        }
        Ok(self.skeleton(&m))
    }

    /// Every ray is separable from `v` by a finite subset of `U ∖ {v}`.
    pub fn u_timid(&self, v: &VertexRef, u: &USpec) -> Result<bool> {
        let sk = self.u_skeleton(u, &[v])?;
        let x = self.node(&sk, v)?;
        self.u_timid_at(&sk, x, u)
    }

    fn u_timid_at(&self, sk: &SkeletonGraph, x: usize, u: &USpec) -> Result<bool> {
        let sep = Separation::Vertex(self.flags(sk, u, &[x])?);
        Ok(sk
            .atoms
            .iter()
            .filter(|a| a.kind == AtomKind::Seed && !a.rest)
            .all(|a| cut_value(sk, &sep, &[x], &[a.node]) != CutValue::Infinite))
    }

    /// No finite `F ⊆ U ∖ {v}` leaves `v` in a finite component.
    pub fn u_dense(&self, v: &VertexRef, u: &USpec) -> Result<bool> {
        let sk = self.u_skeleton(u, &[v])?;
        let x = self.node(&sk, v)?;
        self.u_dense_at(&sk, x, u)
    }

    fn u_dense_at(&self, sk: &SkeletonGraph, x: usize, u: &USpec) -> Result<bool> {
        let flags = self.flags(sk, u, &[x])?;
        let (comp, _) = sk.components(&flags, &vec![false; sk.arcs.len()]);
        let c = comp[x];
        Ok(sk
            .nodes
            .iter()
            .enumerate()
            .any(|(i, n)| matches!(n, Node::Region(_)) && comp[i] == c))
    }

    /// `∂t_U`: vertices both U-timid and U-dense. Deep ray vertices never
    /// qualify (they are either isolated by their two neighbours or joined to
    /// their own tail outside `U`), so materialized vertices plus generic
    /// classes describe the whole set.
    pub fn boundary_tu(&self, u: &USpec) -> Result<VertexClassSet> {
        // Each vertex is judged on a skeleton covering it: a vertex next to a
        // contracted tail needs the following tail vertex as a separator.
        let sk = self.u_skeleton(u, &[])?;
        collect_classes(&self.p, &sk, |v, _| Ok(self.u_dense(v, u)? && self.u_timid(v, u)?))
    }

    /// Whether every element of a symbolic set lies in `U`.
    pub fn set_within_u(&self, s: &VertexClassSet, u: &USpec) -> Result<bool> {
        for v in s.vertices.iter().chain(s.generic.iter().map(|g| &g.representative)) {
            if !self.in_u(u, v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Vertices that edge-dominate some ray (all of infinite degree).
    pub fn dominating(&self) -> Result<VertexClassSet> {
        let sk = self.edge_skeleton();
        collect_classes(&self.p, &sk, |v, _| Ok(!self.timid(v)?))
    }

    /// Timid vertices of infinite degree.
    pub fn timid_hubs(&self) -> Result<VertexClassSet> {
        let sk = self.edge_skeleton();
        collect_classes(&self.p, &sk, |v, _| {
            Ok(!neighborhood(&self.p, v)?.is_finite() && self.timid(v)?)
        })
    }

    /// ∼_E classes of infinite-degree vertices.
    pub fn classes_sim_e(&self) -> Result<SimClasses> {
        let sk = self.edge_skeleton();
        // Units: hub atoms on vertex nodes and clique rests.
        let mut units: Vec<(usize, String)> = sk
            .atoms
            .iter()
            .filter(|a| a.kind == AtomKind::Hub && !a.rest)
            .map(|a| (a.node, a.name.clone()))
            .collect();
        for (i, n) in sk.nodes.iter().enumerate() {
            if let Node::Region(r @ super::skeleton::Region::CliqueRest { .. }) = n {
                units.push((i, r.to_string()));
            }
        }
        let mut parent: Vec<usize> = (0..units.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for i in 0..units.len() {
            for j in i + 1..units.len() {
                if find(&mut parent, i) == find(&mut parent, j) {
                    continue;
                }
                if cut_value(&sk, &Separation::Edge, &[units[i].0], &[units[j].0]) == CutValue::Infinite {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..units.len() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        let mut classes = Vec::new();
        for members in groups.values() {
            let infinite = members
                .iter()
                .any(|&m| matches!(sk.nodes[units[m].0], Node::Region(_)));
            let mut timid = true;
            for &m in members {
                if let Node::Vertex(v) = &sk.nodes[units[m].0] {
                    timid &= self.timid(v)?;
                } else {
                    timid = false;
                }
            }
            classes.push(SimClass {
                members: members.iter().map(|&m| units[m].1.clone()).collect(),
                infinite,
                timid,
            });
        }
        let mut omega_singletons = Vec::new();
        let mut omega_merged = Vec::new();
        for f in &sk.families {
            if sk.atoms[f.rest].kind != AtomKind::Hub {
                continue;
            }
            let (a, b) = f.pairs[0];
            let merged = cut_value(&sk, &Separation::Edge, &[sk.atoms[a].node], &[sk.atoms[b].node])
                == CutValue::Infinite;
            if merged {
                omega_merged.push(sk.atoms[f.rest].name.clone());
            } else {
                omega_singletons.push(sk.atoms[f.rest].name.clone());
            }
        }
        Ok(SimClasses {
            classes,
            omega_singletons,
            omega_merged,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn double_ray_dominator_rays_are_edge_equivalent() {
        let p = catalog::get("double_ray_dominator").unwrap();
        let e = Engine::new(&p);
        assert!(e
            .edge_equivalent(&RaySpec::tail("g:r1"), &RaySpec::tail("g:r2"))
            .unwrap()
            .is_infinite());
        assert!(e
            .edge_dominates(&VertexRef::core("h"), &RaySpec::tail("g:r1"))
            .unwrap()
            .is_infinite());
    }

    #[test]
    fn star_rays_are_separated_by_one_edge() {
        let p = catalog::get("star_of_rays").unwrap();
        let e = Engine::new(&p);
        let ans = e
            .edge_equivalent(&RaySpec::tail("g:S:0"), &RaySpec::tail("g:S:1"))
            .unwrap();
        assert_eq!(ans.value, CutValue::Finite(1));
        assert!(e.timid(&VertexRef::core("c")).unwrap());
    }

    #[test]
    fn clique_members_are_not_timid() {
        let p = catalog::get("three_cliques").unwrap();
        let e = Engine::new(&p);
        assert!(!e.timid(&VertexRef::core("a")).unwrap());
        assert!(!e.timid(&VertexRef::gadget("A", 3)).unwrap());
        assert!(e
            .sim_e(&VertexRef::gadget("A", 0), &VertexRef::gadget("A", 5))
            .unwrap()
            .is_infinite());
        assert_eq!(
            e.sim_e(&VertexRef::core("a"), &VertexRef::core("b")).unwrap().value,
            CutValue::Finite(1)
        );
    }

    #[test]
    fn star_center_is_in_the_boundary_when_left_out_of_u() {
        let p = catalog::get("star_of_rays").unwrap();
        let e = Engine::new(&p);
        let u = USpec::parse("all-but:c:c").unwrap();
        let b = e.boundary_tu(&u).unwrap();
        assert!(b.vertices.contains(&VertexRef::core("c")));
        assert!(b.vertices.contains(&VertexRef::star("S", 0, 0)));
        assert!(!b.vertices.contains(&VertexRef::star("S", 0, 1)));
        assert_eq!(b.names().last().unwrap(), "g:S:*:0");
        assert!(!e.set_within_u(&b, &u).unwrap());
        let all = e.boundary_tu(&USpec::All).unwrap();
        assert!(e.set_within_u(&all, &USpec::All).unwrap());
    }

    #[test]
    fn generic_member_differs_from_named_one() {
        let p = catalog::get("omega_rays").unwrap();
        let e = Engine::new(&p);
        let ans = e
            .edge_equivalent(&RaySpec::tail("f:R:3"), &RaySpec::tail("f:R:*"))
            .unwrap();
        assert_eq!(ans.value, CutValue::Finite(0));
    }

    #[test]
    fn ray_spec_round_trip() {
        let r = RaySpec::parse("c:h,g:r:0@g:r").unwrap();
        assert_eq!(r.prefix.len(), 2);
        assert_eq!(RaySpec::parse(&r.to_string()).unwrap(), r);
    }
}
