//! The completion `G̃`: every rayless edge-direction gets a new ray threaded
//! through infinitely many neighbours of one of its hubs.

use std::collections::BTreeSet;

use serde_json::json;

use super::{Output, SeparatorRule, TransformKind, TransformResult, VertexRule};
use crate::error::{Error, Result};
use crate::graph_model::presentation::{PatternDoc, StarOptions};
use crate::graph_model::{neighborhood, EdgeRef, Local, Presentation, StarId, Stream, VertexRef};
use crate::spaces::{enumerate_edge_directions, Shape, Source};

/// What a completion threads a new ray through.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ChainTarget {
    /// The ray starts of a star-of-rays gadget centred at `center`.
    StarGadget { gadget: String, center: VertexRef },
    /// The ray starts of every copy of a star-pattern family.
    StarFamily(String),
    /// Vertex `local` of the copies of a family, around the hub `hub`.
    FamilyCopies {
        family: String,
        local: Local,
        hub: VertexRef,
    },
}

/// One threaded new ray and the hub points it represents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chained {
    pub target: ChainTarget,
    /// Hub names (as in direction point names, without the `hub ` prefix).
    pub hub_names: Vec<String>,
}

impl Chained {
    /// The neighbour stream of `x` the new ray runs through, when `x` is the
    /// hub of this chain.
    fn stream_at(&self, x: &VertexRef) -> Option<Stream> {
        match (&self.target, x) {
            (ChainTarget::StarGadget { gadget, center }, x) if x == center => {
                Some(Stream::StarStarts(StarId::Top(gadget.clone())))
            }
            (ChainTarget::StarFamily(f), VertexRef::Family(g, k, Local::Center)) if f == g => {
                Some(Stream::StarStarts(StarId::Copy(f.clone(), *k)))
            }
            (ChainTarget::FamilyCopies { family, local, hub }, x) if x == hub => {
                Some(Stream::Copies(family.clone(), local.clone()))
            }
            _ => None,
        }
    }

    /// Atom name of the new ray's end, for the hub `hub` of this chain.
    pub fn chain_atom(&self, hub: &str) -> String {
        match &self.target {
            ChainTarget::StarGadget { gadget, .. } => format!("g:{gadget}:~"),
            ChainTarget::FamilyCopies { family, .. } => format!("f:{family}:~"),
            ChainTarget::StarFamily(_) => match hub.strip_suffix(":c") {
                Some(prefix) => format!("{prefix}:~"),
                None => hub.to_string(),
            },
        }
    }

    pub fn describe(&self) -> serde_json::Value {
        let target = match &self.target {
            ChainTarget::StarGadget { gadget, center } => format!("ray starts of {gadget} at {center}"),
            ChainTarget::StarFamily(f) => format!("ray starts in every copy of {f}"),
            ChainTarget::FamilyCopies { family, local, hub } => format!("{family} copies at local {local} around {hub}"),
        };
        json!({ "chain": target, "hubs": self.hub_names })
    }
}

/// New edges flanking `e` along every chain whose hub `e` leaves: for
/// `e = {v, s_t}` with `v` a hub threaded through `s`, the edges
/// `{s_{t-1}, s_t}` and `{s_t, s_{t+1}}`.
pub fn flanks(chains: &[Chained], e: &EdgeRef) -> Vec<EdgeRef> {
    let mut out = Vec::new();
    for (x, y) in [(&e.0, &e.1), (&e.1, &e.0)] {
        for c in chains {
            let Some(s) = c.stream_at(x) else { continue };
            let Some(t) = s.index_of(y) else { continue };
            if t > 0 {
                out.push(EdgeRef::new(s.item(t - 1), s.item(t)));
            }
            out.push(EdgeRef::new(s.item(t), s.item(t + 1)));
        }
    }
    out
}

/// The completion. Each rayless hub point is threaded through the first
/// infinite neighbour stream of its hub (the least hub of its class, as the
/// direction enumeration names it); new rays follow stream index order.
pub fn completion(p: &Presentation) -> Result<TransformResult> {
    let dirs = enumerate_edge_directions(p)?;
    let mut chains: Vec<Chained> = Vec::new();
    for pt in dirs.points.iter().filter(|pt| pt.source == Source::RaylessHub) {
        let hub = pt.name.trim_start_matches("hub ").to_string();
        let generic = hub.contains('*');
        if generic && pt.shape != Shape::OmegaFamily {
            return Err(Error::UnpresentableThreading(format!(
                "{hub}: one direction for infinitely many hubs"
            )));
        }
        let v = VertexRef::parse(&hub.replace('*', "0"))?;
        let nb = neighborhood(p, &v)?;
        let target = match nb.streams.first() {
            Some(Stream::StarStarts(StarId::Top(g))) => ChainTarget::StarGadget {
                gadget: g.clone(),
                center: v.clone(),
            },
            Some(Stream::StarStarts(StarId::Copy(f, _))) => ChainTarget::StarFamily(f.clone()),
            Some(Stream::Copies(f, l)) if !generic && p.family(f).is_some_and(|x| x.chain.is_none()) => {
                ChainTarget::FamilyCopies {
                    family: f.clone(),
                    local: l.clone(),
                    hub: v.clone(),
                }
            }
            _ => return Err(Error::UnpresentableThreading(hub)),
        };
        match chains.iter_mut().find(|c| c.target == target) {
            Some(c) => c.hub_names.push(hub),
            None => chains.push(Chained {
                target,
                hub_names: vec![hub],
            }),
        }
    }

    let mut doc = p.to_doc();
    for c in &chains {
        match &c.target {
            ChainTarget::StarGadget { gadget, .. } => {
                let g = doc.gadgets.iter_mut().find(|g| &g.id == gadget).expect("gadget exists");
                g.chained = true;
            }
            ChainTarget::StarFamily(f) => {
                let fam = doc.families.iter_mut().find(|x| &x.id == f).expect("family exists");
                fam.pattern = PatternDoc::Star {
                    star_of_rays: StarOptions { chained: true },
                };
            }
            ChainTarget::FamilyCopies { family, local, .. } => {
                let fam = doc.families.iter_mut().find(|x| &x.id == family).expect("family exists");
                fam.chained = true;
                fam.chain_edge = Some([local.to_string(), local.to_string()]);
            }
        }
    }
    let output = Presentation::from_doc(&doc)?;
    let notes = chains
        .iter()
        .map(|c| c.describe().to_string())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    Ok(TransformResult {
        kind: TransformKind::Completion,
        input: p.clone(),
        output: Output::Presentation(output),
        vertex_rule: VertexRule::Identity,
        separator_rule: SeparatorRule::Completion(chains),
        point_rule: "ends stay; a rayless hub direction goes to the end of its new ray".into(),
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::spaces::{correspondence_check, enumerate_edge_ends};

    #[test]
    fn nothing_to_complete() {
        let p = catalog::get("double_ray_dominator").unwrap();
        let r = completion(&p).unwrap();
        assert!(r.is_identity());
    }

    #[test]
    fn star_gets_a_new_ray_and_keeps_its_directions() {
        let p = catalog::get("star_of_rays").unwrap();
        let r = completion(&p).unwrap();
        let q = r.output.presentation().unwrap();
        assert!(q.gadget("S").unwrap().chained);
        let before = enumerate_edge_directions(&p).unwrap();
        let after = enumerate_edge_directions(q).unwrap();
        let ends = enumerate_edge_ends(q).unwrap();
        assert_eq!(before.count(), after.count());
        assert_eq!(before.count(), ends.count());
        assert!(ends.point("[g:S:~]").is_some());

        let m = r.point_map(&before, &ends).unwrap();
        assert_eq!(m[before.point("hub c:c").unwrap()], ends.point("[g:S:~]").unwrap());
        let sep = |f: &crate::separation::Separator| r.map_separator(f);
        let vm = |_: &crate::separation::Separator, v: &VertexRef| Some(v.clone());
        let rep = correspondence_check(&before, &ends, &m, &sep, Some(&vm)).unwrap();
        assert!(rep.pass, "{:?}", rep.failures);
        assert!(rep.checked > 0);
    }

    #[test]
    fn flanks_are_bounded() {
        let p = catalog::get("star_of_rays").unwrap();
        let r = completion(&p).unwrap();
        let before = enumerate_edge_directions(&p).unwrap();
        for f in &before.separators {
            let g = r.map_separator(f).unwrap();
            assert!(g.len() - f.len() <= 4 * f.len());
        }
        let e = EdgeRef::parse("c:c -- g:S:2:0").unwrap();
        let SeparatorRule::Completion(chains) = &r.separator_rule else {
            panic!()
        };
        assert_eq!(
            flanks(chains, &e),
            vec![
                EdgeRef::parse("g:S:1:0 -- g:S:2:0").unwrap(),
                EdgeRef::parse("g:S:2:0 -- g:S:3:0").unwrap()
            ]
        );
    }

    #[test]
    fn infinite_star_becomes_one_end() {
        let p = catalog::get("infinite_star").unwrap();
        let r = completion(&p).unwrap();
        let q = r.output.presentation().unwrap();
        assert_eq!(enumerate_edge_ends(q).unwrap().count(), Some(1));
    }

    #[test]
    fn no_rayless_direction_survives() {
        for p in catalog::all() {
            let r = completion(&p).unwrap_or_else(|e| panic!("{}: {e}", p.name));
            let q = r.output.presentation().unwrap();
            let dirs = enumerate_edge_directions(q).unwrap();
            let left: Vec<_> = dirs.points.iter().filter(|x| x.source == Source::RaylessHub).collect();
            assert!(left.is_empty(), "{}: {left:?}", p.name);
        }
    }
}
