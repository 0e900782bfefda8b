//! `H_G`: every edge-dominating vertex expanded into a clique on its
//! neighbours.
//!
//! The clique `K_v` is indexed by the neighbours of `v` (ray positions, clique
//! members and the like), which the gadget grammar cannot express. When some
//! vertex dominates, `H_G` is therefore built per truncation depth from the
//! truncation of `G`, applying the construction rules literally.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use serde_json::json;

use super::{Output, SeparatorRule, TransformKind, TransformResult, VertexRule};
use crate::cuts::{Engine, VertexClassSet};
use crate::error::{Error, Result};
use crate::graph_model::{truncate, EdgeRef, FiniteGraph, Presentation, VertexRef};
use crate::separation::{materialization_for, removal_masks, split, RayClass, Separator};

/// A vertex of `H_G`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HVertex {
    /// A vertex of `G` that dominates no ray.
    Plain(VertexRef),
    /// `nb^hub`: the vertex of `K_hub` standing for the neighbour `nb`.
    Copy { hub: VertexRef, nb: VertexRef },
}

impl HVertex {
    pub fn copy(hub: &VertexRef, nb: &VertexRef) -> HVertex {
        HVertex::Copy {
            hub: hub.clone(),
            nb: nb.clone(),
        }
    }

    /// The vertex of `G` this one comes from (the hub for clique vertices).
    pub fn origin(&self) -> &VertexRef {
        match self {
            HVertex::Plain(v) => v,
            HVertex::Copy { hub, .. } => hub,
        }
    }
}

impl fmt::Display for HVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HVertex::Plain(v) => write!(f, "{v}"),
            HVertex::Copy { hub, nb } => write!(f, "{nb}^{hub}"),
        }
    }
}

/// `H_G` of a presentation, given by its edge-dominating vertices.
#[derive(Debug, Clone)]
pub struct HGraph {
    pub p: Presentation,
    pub dominating: VertexClassSet,
}

impl HGraph {
    pub fn new(p: &Presentation) -> Result<HGraph> {
        let dominating = Engine::new(p).dominating()?;
        Ok(HGraph {
            p: p.clone(),
            dominating,
        })
    }

    pub fn dominates(&self, v: &VertexRef) -> bool {
        self.dominating.mentions(v)
    }

    /// `H_G` restricted to the depth-`n` truncation of `G`: each clique `K_v`
    /// has one vertex per neighbour of `v` inside the truncation.
    pub fn truncate(&self, n: u64) -> FiniteGraph<HVertex> {
        let t = truncate(&self.p, n).graph;
        let d: Vec<bool> = t.vertices().iter().map(|v| self.dominates(v)).collect();
        let mut vs = Vec::new();
        let mut es = Vec::new();
        for i in 0..t.vertex_count() {
            let v = t.label(i);
            if !d[i] {
                vs.push(HVertex::Plain(v.clone()));
                continue;
            }
            let k: Vec<HVertex> = t.neighbors(i).iter().map(|&j| HVertex::copy(v, t.label(j))).collect();
            for (x, a) in k.iter().enumerate() {
                for b in &k[x + 1..] {
                    es.push((a.clone(), b.clone()));
                }
            }
            vs.extend(k);
        }
        for (i, j) in t.edges() {
            es.push(self.theta_at(&d, &t, i, j));
        }
        FiniteGraph::new(vs, es).expect("construction rules give a simple graph")
    }

    fn theta_at(&self, d: &[bool], t: &FiniteGraph<VertexRef>, i: usize, j: usize) -> (HVertex, HVertex) {
        let (u, v) = (t.label(i), t.label(j));
        match (d[i], d[j]) {
            (false, false) => (HVertex::Plain(u.clone()), HVertex::Plain(v.clone())),
            (false, true) => (HVertex::Plain(u.clone()), HVertex::copy(v, u)),
            (true, false) => (HVertex::copy(u, v), HVertex::Plain(v.clone())),
            (true, true) => (HVertex::copy(v, u), HVertex::copy(u, v)),
        }
    }

    /// `θ(e)`: the edge of `H_G` standing for the edge `e` of `G`.
    pub fn theta(&self, e: &EdgeRef) -> (HVertex, HVertex) {
        let (u, v) = (&e.0, &e.1);
        match (self.dominates(u), self.dominates(v)) {
            (false, false) => (HVertex::Plain(u.clone()), HVertex::Plain(v.clone())),
            (false, true) => (HVertex::Plain(u.clone()), HVertex::copy(v, u)),
            (true, false) => (HVertex::copy(u, v), HVertex::Plain(v.clone())),
            (true, true) => (HVertex::copy(v, u), HVertex::copy(u, v)),
        }
    }

    /// Translates a walk of `G` into a walk of `H_G`: the `θ`-images of its
    /// edges joined inside each clique `K_{v_i}` by the connector
    /// `{v_{i-1}^{v_i}, v_{i+1}^{v_i}}`.
    pub fn theta_walk(&self, walk: &[VertexRef]) -> Vec<HVertex> {
        let mut out: Vec<HVertex> = Vec::new();
        for (i, v) in walk.iter().enumerate() {
            if !self.dominates(v) {
                out.push(HVertex::Plain(v.clone()));
                continue;
            }
            if i > 0 {
                out.push(HVertex::copy(v, &walk[i - 1]));
            }
            if i + 1 < walk.len() {
                out.push(HVertex::copy(v, &walk[i + 1]));
            }
        }
        out.dedup();
        out
    }

    /// Number of components of the depth-`n` truncation of `H_G` minus `x`.
    pub fn components_without(&self, n: u64, x: &HVertex) -> Result<usize> {
        let h = self.truncate(n);
        let i = h
            .index_of(x)
            .ok_or_else(|| Error::UnresolvedRef(format!("{x} is not in depth {n}")))?;
        let mut removed = vec![false; h.vertex_count()];
        removed[i] = true;
        Ok(h.components_without(&removed, &BTreeSet::new()).1)
    }

    pub fn describe(&self) -> serde_json::Value {
        json!({
            "h_graph_of": self.p.name,
            "dominating": self.dominating.names(),
            "built_per_truncation_depth": true,
        })
    }
}

/// `H_G` and `θ`. When no vertex edge-dominates a ray the output is the
/// input itself.
pub fn h_graph(p: &Presentation) -> Result<TransformResult> {
    let h = HGraph::new(p)?;
    let (output, vertex_rule, notes) = if h.dominating.is_empty() {
        (
            Output::Presentation(p.clone()),
            VertexRule::Identity,
            vec!["no vertex edge-dominates a ray: H_G = G".to_string()],
        )
    } else {
        let note = format!("cliques replace {}", h.dominating.names().join(", "));
        (Output::HGraph(h), VertexRule::Theta, vec![note])
    };
    Ok(TransformResult {
        kind: TransformKind::HGraph,
        input: p.clone(),
        output,
        vertex_rule,
        separator_rule: SeparatorRule::TimidIdentity,
        point_rule: "[r]_E to the end of theta(r)".into(),
        notes,
    })
}

/// Outcome of checking the component bijection for one timid separator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub separator: String,
    pub depth: u64,
    /// Ray-carrying components of `G ∖ F`; `None` for ω many.
    pub ray_components: Option<usize>,
    /// (component of `G ∖ F`, component of `H_G ∖ F`) for every ray-carrying
    /// component met by the truncation, named by least vertex.
    pub pairs: Vec<(String, String)>,
    pub well_defined: bool,
    pub injective: bool,
    pub surjective: bool,
    pub failure: Option<String>,
}

impl BijectionReport {
    pub fn pass(&self) -> bool {
        self.well_defined && self.injective && self.surjective
    }
}

/// Builds `C ↦ C_H` for a finite set of timid vertices and checks that it is
/// a well defined bijection on the depth-`depth` truncations: `C_H` is the
/// component of a timid `v ∈ C`, or of `u^v` for a dominating `v ∈ C`.
pub fn component_bijection(p: &Presentation, f: &BTreeSet<VertexRef>, depth: u64) -> Result<BijectionReport> {
    let engine = Engine::new(p);
    for v in f {
        if !engine.timid(v)? {
            return Err(Error::NotTimid(v.to_string()));
        }
    }
    let sep = Separator::Vertices(f.clone());
    let h = HGraph::new(p)?;
    let t = truncate(p, depth).graph;
    for v in f {
        if !t.contains(v) {
            return Err(Error::UnresolvedRef(format!("{v} is not in depth {depth}")));
        }
    }
    let removed_t: Vec<bool> = t.vertices().iter().map(|v| f.contains(v)).collect();
    let (tc, tcount) = t.components_without(&removed_t, &BTreeSet::new());
    let hn = h.truncate(depth);
    let removed_h: Vec<bool> = hn
        .vertices()
        .iter()
        .map(|x| matches!(x, HVertex::Plain(v) if f.contains(v)))
        .collect();
    let (hc, hcount) = hn.components_without(&removed_h, &BTreeSet::new());

    // Images of every truncation vertex outside F.
    let mut phi: BTreeMap<usize, usize> = BTreeMap::new();
    let mut failure = None;
    let mut well_defined = true;
    for i in 0..t.vertex_count() {
        let Some(c) = tc[i] else { continue };
        let v = t.label(i);
        let images: Vec<HVertex> = if h.dominates(v) {
            t.neighbors(i).iter().map(|&j| HVertex::copy(v, t.label(j))).collect()
        } else {
            vec![HVertex::Plain(v.clone())]
        };
        for x in images {
            let k = hn.index_of(&x).expect("image lies in the truncation");
            let ch = hc[k].expect("images avoid F");
            match phi.get(&c) {
                Some(&prev) if prev != ch => {
                    well_defined = false;
                    failure.get_or_insert(format!("{v} lands in two components"));
                }
                Some(_) => {}
                None => {
                    phi.insert(c, ch);
                }
            }
        }
    }
    let image: BTreeSet<usize> = phi.values().copied().collect();
    let injective = image.len() == phi.len();
    if !injective {
        failure.get_or_insert("two components share an image".into());
    }
    // Components lost to isolated dominating vertices have no image; every
    // component of H_G ∖ F must be hit.
    let surjective = image.len() == hcount;
    if !surjective {
        failure.get_or_insert(format!("{} of {hcount} components hit", image.len()));
    }

    // Ray-carrying components via the symbolic split of G ∖ F.
    let sk = engine.skeleton(&materialization_for(&sep));
    let (rn, ra) = removal_masks(&sk, &sep)?;
    let (records, owner) = split(p, &sk, &rn, &ra)?;
    let rayful: Vec<&crate::separation::ComponentRecord> =
        records.iter().filter(|r| r.rays == RayClass::NonRayless).collect();
    let ray_components = if rayful
        .iter()
        .any(|r| r.multiplicity == crate::separation::Multiplicity::Omega)
    {
        None
    } else {
        Some(rayful.len())
    };
    let mut least: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..t.vertex_count() {
        if let Some(c) = tc[i] {
            least.entry(c).or_insert(i);
        }
    }
    let mut hleast: BTreeMap<usize, usize> = BTreeMap::new();
    for k in 0..hn.vertex_count() {
        if let Some(c) = hc[k] {
            hleast.entry(c).or_insert(k);
        }
    }
    let mut pairs = Vec::new();
    for c in 0..tcount {
        let Some(&i) = least.get(&c) else { continue };
        let v = t.label(i);
        let carries_rays = sk
            .locate(p, v)
            .and_then(|node| owner[node])
            .is_some_and(|r| records[r].rays == RayClass::NonRayless);
        if let (true, Some(ch)) = (carries_rays, phi.get(&c)) {
            pairs.push((v.to_string(), hn.label(hleast[ch]).to_string()));
        }
    }
    Ok(BijectionReport {
        separator: sep.to_string(),
        depth,
        ray_components,
        pairs,
        well_defined,
        injective,
        surjective,
        failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn no_dominating_vertex_keeps_the_graph() {
        let p = catalog::get("star_of_rays").unwrap();
        let r = h_graph(&p).unwrap();
        assert!(r.is_identity());
    }

    #[test]
    fn hub_becomes_a_clique() {
        let p = catalog::get("double_ray_dominator").unwrap();
        let r = h_graph(&p).unwrap();
        let Output::HGraph(h) = &r.output else {
            panic!("expected a truncation builder")
        };
        assert!(h.dominates(&VertexRef::core("h")));
        let g = h.truncate(4);
        // 8 ray vertices, each with its copy in K_h.
        assert_eq!(g.vertex_count(), 16);
        assert!(!g.contains(&HVertex::Plain(VertexRef::core("h"))));
        let e = EdgeRef::new(VertexRef::core("h"), VertexRef::gadget("r1", 0));
        let x = h.theta(&e).0;
        assert!(h.components_without(6, &x).unwrap() <= 2);
    }

    #[test]
    fn theta_walk_is_a_walk() {
        let p = catalog::get("double_ray_dominator").unwrap();
        let h = HGraph::new(&p).unwrap();
        let walk = [VertexRef::gadget("r1", 2), VertexRef::core("h"), VertexRef::gadget("r2", 1)];
        let w = h.theta_walk(&walk);
        let g = h.truncate(4);
        for pair in w.windows(2) {
            let (a, b) = (g.index_of(&pair[0]).unwrap(), g.index_of(&pair[1]).unwrap());
            assert!(g.has_edge(a, b), "{} {}", pair[0], pair[1]);
        }
    }

    #[test]
    fn star_center_bijection_is_per_ray() {
        let p = catalog::get("star_of_rays").unwrap();
        let f: BTreeSet<VertexRef> = [VertexRef::core("c")].into();
        for depth in [4, 6] {
            let r = component_bijection(&p, &f, depth).unwrap();
            assert!(r.pass(), "{r:?}");
            assert_eq!(r.ray_components, None);
            assert_eq!(r.pairs.len() as u64, depth);
        }
    }

    #[test]
    fn bridge_bijection_is_one_to_one() {
        let p = catalog::get("two_cliques_bridge").unwrap();
        let r = component_bijection(&p, &BTreeSet::new(), 5).unwrap();
        assert!(r.pass(), "{r:?}");
        assert_eq!(r.ray_components, Some(1));
        assert_eq!(r.pairs.len(), 1);
    }

    #[test]
    fn dominating_separator_is_rejected() {
        let p = catalog::get("double_ray_dominator").unwrap();
        let f: BTreeSet<VertexRef> = [VertexRef::core("h")].into();
        assert!(matches!(component_bijection(&p, &f, 4), Err(Error::NotTimid(_))));
    }
}
