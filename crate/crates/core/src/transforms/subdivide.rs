//! Subdivision and the timid-to-edge construction.

use std::collections::BTreeSet;

use super::{fresh_id, Output, SeparatorRule, TransformKind, TransformResult, VertexRule};
use crate::cuts::Engine;
use crate::error::{Error, Result};
use crate::graph_model::presentation::{FamilyDoc, PatternDoc, PatternName};
use crate::graph_model::{truncate, Presentation, VertexRef};

/// One fresh vertex on every edge. Edges are subdivided symbolically: the
/// output carries the subdivision flag and names midpoints `s:<u>|<v>`.
pub fn subdivide(p: &Presentation) -> Result<TransformResult> {
    if p.subdivided {
        return Err(Error::Schema(format!("{} is already subdivided", p.name)));
    }
    let mut q = p.clone();
    q.subdivided = true;
    Ok(TransformResult {
        kind: TransformKind::Subdivision,
        input: p.clone(),
        output: Output::Presentation(q),
        vertex_rule: VertexRule::Identity,
        separator_rule: SeparatorRule::EdgesToMidpoints,
        point_rule: "edge-end to the timid end of the same tails".into(),
        notes: Vec::new(),
    })
}

/// Depth at which every edge class of a presentation has a representative.
const EDGE_CLASS_DEPTH: u64 = 4;

/// Attaches an ω-family of vertices adjacent to both ends of every edge that
/// no timid vertex touches, unless its ends are already edge-equivalent
/// (the family would then change nothing).
pub fn timid_to_edge(p: &Presentation) -> Result<TransformResult> {
    let engine = Engine::new(p);
    let named = p.referenced_vertices();
    let t = truncate(p, EDGE_CLASS_DEPTH).graph;
    let mut targets = BTreeSet::new();
    for (a, b) in t.edge_labels() {
        if engine.timid(&a)? || engine.timid(&b)? || engine.sim_e(&a, &b)?.is_infinite() {
            continue;
        }
        if !named.contains(&a) || !named.contains(&b) {
            return Err(Error::UnpresentableClass(format!(
                "edge {a} -- {b} repeats with the copies; one family per copy is not presentable"
            )));
        }
        targets.insert((a, b));
    }
    let mut doc = p.to_doc();
    let token = |v: &VertexRef| match v {
        VertexRef::Core(id) => id.clone(),
        other => other.to_string(),
    };
    let mut taken = BTreeSet::new();
    let mut notes = Vec::new();
    for (a, b) in &targets {
        let id = fresh_id(p, "U", &taken);
        taken.insert(id.clone());
        notes.push(format!("{id} joins {a} and {b}"));
        doc.families.push(FamilyDoc {
            id,
            pattern: PatternDoc::Named(PatternName::SingleVertex),
            host: Some(token(a)),
            per_copy_edges: Some(vec![["0".into(), "@host".into()], ["0".into(), token(b)]]),
            chained: false,
            chain_edge: None,
        });
    }
    let output = if targets.is_empty() {
        p.clone()
    } else {
        Presentation::from_doc(&doc)?
    };
    Ok(TransformResult {
        kind: TransformKind::TimidToEdge,
        input: p.clone(),
        output: Output::Presentation(output),
        vertex_rule: VertexRule::Identity,
        separator_rule: SeparatorRule::TimidToIncidentEdges,
        point_rule: "timid end to the edge-end of the same tails".into(),
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::separation::Separator;
    use crate::spaces::{correspondence_check, enumerate_edge_ends, enumerate_timid_ends};

    #[test]
    fn triangle_becomes_a_hexagon() {
        let p = Presentation::parse(
            r#"{"name":"k3","core":{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"],["a","c"]]},"connected_hint":true}"#,
        )
        .unwrap();
        let q = subdivide(&p).unwrap();
        let g = truncate(q.output.presentation().unwrap(), 1).graph;
        assert_eq!((g.vertex_count(), g.edge_count()), (6, 6));
        assert!((0..6).all(|i| g.degree(i) == 2));
        assert!(subdivide(q.output.presentation().unwrap()).is_err());
    }

    #[test]
    fn subdivided_timid_ends_match_edge_ends() {
        for name in ["three_cliques", "star_of_rays", "double_ray_dominator"] {
            let p = catalog::get(name).unwrap();
            let r = subdivide(&p).unwrap();
            let s1 = enumerate_edge_ends(&p).unwrap();
            let s2 = enumerate_timid_ends(r.output.presentation().unwrap()).unwrap();
            assert_eq!(s1.count(), s2.count(), "{name}");
            let m = r.point_map(&s1, &s2).unwrap();
            let sep = |f: &Separator| r.map_separator(f);
            let rep = correspondence_check(&s1, &s2, &m, &sep, None).unwrap();
            assert!(rep.pass, "{name}: {:?}", rep.failures);
        }
    }

    #[test]
    fn bridge_between_dominating_ends_gets_a_family() {
        let p = catalog::get("two_cliques_bridge").unwrap();
        let r = timid_to_edge(&p).unwrap();
        let q = r.output.presentation().unwrap();
        assert_eq!(q.families.len(), 1);
        let h = enumerate_edge_ends(q).unwrap();
        let t = enumerate_timid_ends(&p).unwrap();
        assert_eq!((h.count(), t.count()), (Some(1), Some(1)));
    }

    #[test]
    fn timid_edges_everywhere_changes_nothing() {
        let p = catalog::get("star_of_rays").unwrap();
        let r = timid_to_edge(&p).unwrap();
        assert!(r.is_identity());
        let s1 = enumerate_timid_ends(&p).unwrap();
        let s2 = enumerate_edge_ends(r.output.presentation().unwrap()).unwrap();
        let m = r.point_map(&s1, &s2).unwrap();
        let sep = |f: &Separator| r.map_separator(f);
        let rep = correspondence_check(&s1, &s2, &m, &sep, None).unwrap();
        assert!(rep.pass, "{:?}", rep.failures);
    }
}
