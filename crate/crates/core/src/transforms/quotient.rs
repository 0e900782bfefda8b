//! `G/∼`: timid `∼_E` classes contracted to single vertices.
//!
//! A timid vertex is identified with every vertex it is `∼_E`-equivalent to;
//! a vertex that dominates a ray stays alone. Classes of infinite degree
//! vertices are finite sets of named vertices here, so the contraction is a
//! renaming inside the presentation.

use std::collections::{BTreeMap, BTreeSet};

use super::{Output, SeparatorRule, TransformKind, TransformResult, VertexRule};
use crate::cuts::{Engine, RaySpec};
use crate::error::{Error, Result};
use crate::graph_model::{neighborhood, EdgeRef, Host, Presentation, VertexRef};
use crate::separation::Separator;

/// Projection of the contracted vertices onto their class representatives
/// (least member).
pub type Projection = BTreeMap<VertexRef, VertexRef>;

/// Contracts every timid `∼_E` class.
pub fn quotient_sim(p: &Presentation) -> Result<TransformResult> {
    let engine = Engine::new(p);
    let sim = engine.classes_sim_e()?;
    let mut classes = Vec::new();
    for c in &sim.classes {
        if !c.timid || c.members.len() < 2 {
            continue;
        }
        let members = c
            .members
            .iter()
            .map(|m| VertexRef::parse(m).map_err(|_| Error::UnpresentableClass(m.clone())))
            .collect::<Result<Vec<_>>>()?;
        classes.push(members);
    }
    for name in &sim.omega_merged {
        let v = VertexRef::parse(&name.replace('*', "0")).map_err(|_| Error::UnpresentableClass(name.clone()))?;
        if engine.timid(&v)? {
            return Err(Error::UnpresentableClass(format!("{name}: infinitely many members")));
        }
    }
    contract(p, classes, TransformKind::Quotient)
}

/// The single-class quotient `G/[v]_E` for an explicit class.
pub fn quotient_class(p: &Presentation, class: &[VertexRef]) -> Result<TransformResult> {
    let engine = Engine::new(p);
    if let Some((first, rest)) = class.split_first() {
        for v in rest {
            if !engine.sim_e(first, v)?.is_infinite() {
                return Err(Error::UnpresentableClass(format!("{first} and {v} are not edge-equivalent")));
            }
        }
    }
    contract(p, vec![class.to_vec()], TransformKind::Quotient)
}

fn contract(p: &Presentation, classes: Vec<Vec<VertexRef>>, kind: TransformKind) -> Result<TransformResult> {
    let mut pi: Projection = BTreeMap::new();
    for class in &classes {
        let rep = class.iter().min().expect("classes are non-empty").clone();
        for v in class {
            if !matches!(v, VertexRef::Core(_)) {
                return Err(Error::UnpresentableClass(format!("{v} is not a core vertex")));
            }
            if v != &rep {
                pi.insert(v.clone(), rep.clone());
            }
        }
    }
    let map = |v: &VertexRef| pi.get(v).cloned().unwrap_or_else(|| v.clone());
    let map_host = |h: &Host| match h {
        Host::Vertex(v) => Host::Vertex(map(v)),
        other => other.clone(),
    };
    let mut q = p.clone();
    q.core.retain(|c| !pi.contains_key(&VertexRef::core(c)));
    let mut edges = BTreeSet::new();
    for (a, b) in &p.core_edges {
        let (a, b) = (map(a), map(b));
        if a != b {
            edges.insert((a.clone().min(b.clone()), a.max(b)));
        }
    }
    q.core_edges = edges.into_iter().collect();
    for g in &mut q.gadgets {
        let mut seen = Vec::new();
        for a in &g.attachments {
            let a = crate::graph_model::Attachment {
                host: map_host(&a.host),
                mode: a.mode,
            };
            if !seen.contains(&a) {
                seen.push(a);
            }
        }
        g.attachments = seen;
        let members: BTreeSet<VertexRef> = g.core_members.iter().map(map).collect();
        g.core_members = members.into_iter().collect();
    }
    for f in &mut q.families {
        f.host = f.host.as_ref().map(map_host);
        let per: BTreeSet<_> = f.per_copy.iter().map(|(l, h)| (l.clone(), map_host(h))).collect();
        f.per_copy = per.into_iter().collect();
    }
    let q = Presentation::from_doc(&q.to_doc())?;
    let notes = classes
        .iter()
        .map(|c| {
            let names: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            format!("contracted {{{}}}", names.join(", "))
        })
        .collect();
    Ok(TransformResult {
        kind,
        input: p.clone(),
        output: Output::Presentation(q),
        vertex_rule: VertexRule::Projection(pi.clone()),
        separator_rule: SeparatorRule::Quotient(pi),
        point_rule: "[r]_E to [r^pi]_E".into(),
        notes,
    })
}

fn preimage_of(pi: &Projection, x: &VertexRef) -> Vec<VertexRef> {
    let mut out: Vec<VertexRef> = pi.iter().filter(|(_, r)| *r == x).map(|(v, _)| v.clone()).collect();
    out.push(x.clone());
    out
}

/// `π⁻¹e`: the edges of `G` projecting onto the quotient edge `e`. Always
/// finite: classes are finite.
pub fn preimage(p: &Presentation, pi: &Projection, e: &EdgeRef) -> Result<Vec<EdgeRef>> {
    let mut out = Vec::new();
    for a in preimage_of(pi, &e.0) {
        let nb = neighborhood(p, &a)?;
        for b in preimage_of(pi, &e.1) {
            if nb.contains(&b) {
                out.push(EdgeRef::new(a.clone(), b));
            }
        }
    }
    Ok(out)
}

/// `π[F]` when `F = π⁻¹(π[F])`, otherwise `None`.
pub(crate) fn image(p: &Presentation, pi: &Projection, es: &BTreeSet<EdgeRef>) -> Option<Separator> {
    let map = |v: &VertexRef| pi.get(v).cloned().unwrap_or_else(|| v.clone());
    let mut out = BTreeSet::new();
    for e in es {
        let (a, b) = (map(&e.0), map(&e.1));
        if a == b {
            return None;
        }
        out.insert(EdgeRef::new(a, b));
    }
    for e in &out {
        if !preimage(p, pi, e).ok()?.iter().all(|x| es.contains(x)) {
            return None;
        }
    }
    Some(Separator::Edges(out))
}

/// `r^π`: scanning the prefix, each vertex is replaced by its class and the
/// walk jumps past the last later vertex of the same class.
pub fn ray_projection(r: &TransformResult, ray: &RaySpec) -> Result<RaySpec> {
    let map = |v: &VertexRef| {
        r.map_vertex(v)
            .ok_or_else(|| Error::UnpresentableClass(format!("{v} has no projection")))
    };
    let classes = ray.prefix.iter().map(map).collect::<Result<Vec<_>>>()?;
    let mut prefix = Vec::new();
    let mut i = 0;
    while i < classes.len() {
        let last = (i..classes.len()).rev().find(|&j| classes[j] == classes[i]).expect("i matches itself");
        prefix.push(classes[i].clone());
        i = last + 1;
    }
    Ok(RaySpec {
        prefix,
        tail: ray.tail.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::spaces::{correspondence_check, enumerate_edge_ends};

    /// Two timid hubs sharing infinitely many neighbours, plus a ray at `v`.
    fn weave() -> Presentation {
        Presentation::parse(
            r#"{"name":"weave","core":{"vertices":["u","v"]},
                "gadgets":[{"id":"r","kind":"Ray","attachments":[{"host":"v","mode":"FirstOnly"}]}],
                "families":[{"id":"X","pattern":"SingleVertex","host":"u","per_copy_edges":[["0","@host"],["0","v"]]}],
                "connected_hint":true}"#,
        )
        .unwrap()
    }

    #[test]
    fn no_timid_class_keeps_the_graph() {
        let p = catalog::get("three_cliques").unwrap();
        let r = quotient_sim(&p).unwrap();
        assert!(r.is_identity());
        assert_eq!(enumerate_edge_ends(r.output.presentation().unwrap()).unwrap().count(), Some(2));
    }

    #[test]
    fn shared_hubs_contract() {
        let p = weave();
        let r = quotient_sim(&p).unwrap();
        let q = r.output.presentation().unwrap();
        assert_eq!(q.core, vec!["u".to_string()]);
        assert_eq!(r.map_vertex(&VertexRef::core("v")), Some(VertexRef::core("u")));
        let e = EdgeRef::parse("c:u -- f:X:3:0").unwrap();
        let SeparatorRule::Quotient(pi) = &r.separator_rule else { panic!() };
        assert_eq!(preimage(&p, pi, &e).unwrap().len(), 2);

        let s1 = enumerate_edge_ends(&p).unwrap();
        let s2 = enumerate_edge_ends(q).unwrap();
        let m = r.point_map(&s1, &s2).unwrap();
        let sep = |f: &Separator| r.map_separator(f);
        let vm = |_: &Separator, v: &VertexRef| r.map_vertex(v);
        let rep = correspondence_check(&s1, &s2, &m, &sep, Some(&vm)).unwrap();
        assert!(rep.pass, "{:?}", rep.failures);
    }

    #[test]
    fn weaving_prefix_collapses() {
        let r = quotient_sim(&weave()).unwrap();
        let ray = RaySpec::parse("c:u,f:X:0:0,c:v@g:r").unwrap();
        let proj = ray_projection(&r, &ray).unwrap();
        assert_eq!(proj.prefix, vec![VertexRef::core("u")]);
    }

    #[test]
    fn unsaturated_separator_has_no_image() {
        let p = weave();
        let r = quotient_sim(&p).unwrap();
        let f = Separator::parse("c:u -- f:X:0:0").unwrap();
        assert_eq!(r.map_separator(&f), None);
        let g = Separator::parse("c:u -- f:X:0:0; c:v -- f:X:0:0").unwrap();
        assert_eq!(r.map_separator(&g), Some(Separator::parse("c:u -- f:X:0:0").unwrap()));
    }
}
