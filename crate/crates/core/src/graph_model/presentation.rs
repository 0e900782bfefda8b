//! The presentation document format and its validated form.
//!
//! A presentation is a finite core graph plus gadget and family declarations.
//! The document is JSON; [`Presentation::parse`] validates it and
//! [`Presentation::to_json`] writes it back in canonical field order.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::address::{check_identifier, Local, StarId, VertexRef};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationDoc {
    pub name: String,
    pub core: CoreDoc,
    #[serde(default)]
    pub gadgets: Vec<GadgetDoc>,
    #[serde(default)]
    pub families: Vec<FamilyDoc>,
    #[serde(default)]
    pub connected_hint: bool,
    #[serde(default, skip_serializing_if = "is_false")]
    pub subdivided: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoreDoc {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<[String; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GadgetKind {
    Ray,
    OmegaClique,
    StarOfRays,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mode {
    FirstOnly,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttachmentDoc {
    pub host: String,
    pub mode: Mode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GadgetDoc {
    pub id: String,
    pub kind: GadgetKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub attachments: Vec<AttachmentDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub core_members: Vec<String>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub chained: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PatternName {
    SingleVertex,
    Ray,
    StarOfRays,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StarOptions {
    #[serde(default)]
    pub chained: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternGraphDoc {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<[String; 2]>,
    pub boundary: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PatternDoc {
    Named(PatternName),
    Star { star_of_rays: StarOptions },
    Graph { graph: PatternGraphDoc },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDoc {
    pub id: String,
    pub pattern: PatternDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub host: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_copy_edges: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub chained: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain_edge: Option<[String; 2]>,
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// Where an attachment or per-copy edge lands: one concrete vertex, or the
/// vertex with the same index on an indexed gadget (ray or clique).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Host {
    Vertex(VertexRef),
    Along(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attachment {
    pub host: Host,
    pub mode: Mode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub id: String,
    pub kind: GadgetKind,
    pub attachments: Vec<Attachment>,
    pub core_members: Vec<VertexRef>,
    pub chained: bool,
}

impl Gadget {
    /// Center of a star-of-rays gadget.
    pub fn center(&self) -> Option<&VertexRef> {
        match (self.kind, self.attachments.first()) {
            (
                GadgetKind::StarOfRays,
                Some(Attachment {
                    host: Host::Vertex(c),
                    ..
                }),
            ) => Some(c),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pattern {
    SingleVertex,
    Ray,
    Star {
        chained: bool,
    },
    Graph {
        vertices: Vec<String>,
        edges: Vec<(String, String)>,
        boundary: Vec<String>,
    },
}

impl Pattern {
    pub fn default_boundary(&self) -> Local {
        match self {
            Pattern::SingleVertex | Pattern::Ray => Local::Index(0),
            Pattern::Star { .. } => Local::Center,
            Pattern::Graph { boundary, .. } => Local::Named(boundary[0].clone()),
        }
    }

    pub fn has_local(&self, l: &Local) -> bool {
        match (self, l) {
            (Pattern::SingleVertex, Local::Index(0)) => true,
            (Pattern::Ray, Local::Index(_)) => true,
            (Pattern::Star { .. }, Local::Center | Local::StarRay(..)) => true,
            (Pattern::Graph { vertices, .. }, Local::Named(n)) => vertices.contains(n),
            _ => false,
        }
    }

    /// True when every copy contains a ray.
    pub fn has_rays(&self) -> bool {
        matches!(self, Pattern::Ray | Pattern::Star { .. })
    }

    /// Number of vertices of one copy, `None` when infinite.
    pub fn finite_size(&self) -> Option<u64> {
        match self {
            Pattern::SingleVertex => Some(1),
            Pattern::Graph { vertices, .. } => Some(vertices.len() as u64),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub id: String,
    pub pattern: Pattern,
    pub host: Option<Host>,
    pub per_copy: Vec<(Local, Host)>,
    pub chain: Option<(Local, Local)>,
}

impl Family {
    pub fn star(&self, copy: u64) -> StarId {
        StarId::Copy(self.id.clone(), copy)
    }

    /// The indexed gadget this family runs along, if any.
    pub fn along(&self) -> Option<&str> {
        self.per_copy.iter().find_map(|(_, h)| match h {
            Host::Along(g) => Some(g.as_str()),
            _ => None,
        })
    }
}

/// A validated presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub core: Vec<String>,
    pub core_edges: Vec<(VertexRef, VertexRef)>,
    pub gadgets: Vec<Gadget>,
    pub families: Vec<Family>,
    pub connected_hint: bool,
    pub subdivided: bool,
}

impl Presentation {
    /// Parses and validates a JSON presentation document.
    pub fn parse(text: &str) -> Result<Presentation> {
        let doc: PresentationDoc =
            serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        Presentation::from_doc(&doc)
    }

    pub fn from_doc(doc: &PresentationDoc) -> Result<Presentation> {
        Validator::new(doc)?.run()
    }

    pub fn gadget(&self, id: &str) -> Option<&Gadget> {
        self.gadgets.iter().find(|g| g.id == id)
    }

    pub fn family(&self, id: &str) -> Option<&Family> {
        self.families.iter().find(|f| f.id == id)
    }

    pub fn is_core(&self, id: &str) -> bool {
        self.core.binary_search_by(|c| c.as_str().cmp(id)).is_ok()
    }

    /// Structural address check: the vertex exists in the denoted graph.
    pub fn resolves(&self, v: &VertexRef) -> bool {
        match v {
            VertexRef::Subdiv(a, b) => {
                self.subdivided
                    && self.resolves_base(a)
                    && self.resolves_base(b)
                    && crate::graph_model::neighbors::base_adjacent(self, a, b)
            }
            other => self.resolves_base(other),
        }
    }

    /// Address check ignoring the subdivision flag.
    pub fn resolves_base(&self, v: &VertexRef) -> bool {
        match v {
            VertexRef::Core(id) => self.is_core(id),
            VertexRef::Gadget(g, _) => matches!(
                self.gadget(g).map(|g| g.kind),
                Some(GadgetKind::Ray | GadgetKind::OmegaClique)
            ),
            VertexRef::StarRay(g, _, _) => {
                matches!(self.gadget(g).map(|g| g.kind), Some(GadgetKind::StarOfRays))
            }
            VertexRef::Family(f, _, l) => self.family(f).is_some_and(|f| f.pattern.has_local(l)),
            VertexRef::Subdiv(..) => false,
        }
    }

    pub fn check(&self, v: &VertexRef) -> Result<()> {
        if self.resolves(v) {
            Ok(())
        } else {
            Err(Error::UnresolvedRef(v.to_string()))
        }
    }

    /// Reconstructs the canonical document.
    pub fn to_doc(&self) -> PresentationDoc {
        let token = |v: &VertexRef| match v {
            VertexRef::Core(id) => id.clone(),
            other => other.to_string(),
        };
        let host_token = |h: &Host| match h {
            Host::Vertex(v) => token(v),
            Host::Along(g) => format!("along:{g}"),
        };
        PresentationDoc {
            name: self.name.clone(),
            core: CoreDoc {
                vertices: self.core.clone(),
                edges: self.core_edges.iter().map(|(a, b)| [token(a), token(b)]).collect(),
            },
            gadgets: self
                .gadgets
                .iter()
                .map(|g| GadgetDoc {
                    id: g.id.clone(),
                    kind: g.kind,
                    attachments: g
                        .attachments
                        .iter()
                        .map(|a| AttachmentDoc {
                            host: host_token(&a.host),
                            mode: a.mode,
                        })
                        .collect(),
                    core_members: g.core_members.iter().map(token).collect(),
                    chained: g.chained,
                })
                .collect(),
            families: self
                .families
                .iter()
                .map(|f| FamilyDoc {
                    id: f.id.clone(),
                    pattern: match &f.pattern {
                        Pattern::SingleVertex => PatternDoc::Named(PatternName::SingleVertex),
                        Pattern::Ray => PatternDoc::Named(PatternName::Ray),
                        Pattern::Star { chained: false } => PatternDoc::Named(PatternName::StarOfRays),
                        Pattern::Star { chained: true } => PatternDoc::Star {
                            star_of_rays: StarOptions { chained: true },
                        },
                        Pattern::Graph {
                            vertices,
                            edges,
                            boundary,
                        } => PatternDoc::Graph {
                            graph: PatternGraphDoc {
                                vertices: vertices.clone(),
                                edges: edges.iter().map(|(a, b)| [a.clone(), b.clone()]).collect(),
                                boundary: boundary.clone(),
                            },
                        },
                    },
                    host: f.host.as_ref().map(host_token),
                    per_copy_edges: Some(
                        f.per_copy
                            .iter()
                            .map(|(l, h)| [l.to_string(), host_token(h)])
                            .collect(),
                    ),
                    chained: f.chain.is_some(),
                    chain_edge: f.chain.as_ref().map(|(a, b)| [a.to_string(), b.to_string()]),
                })
                .collect(),
            connected_hint: self.connected_hint,
            subdivided: self.subdivided,
        }
    }

    /// Canonical pretty-printed JSON document.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("document serialises")
    }

    /// Every concrete vertex address named anywhere in the presentation
    /// (core vertices, hosts, clique members, per-copy targets, core-edge endpoints).
    pub fn referenced_vertices(&self) -> BTreeSet<VertexRef> {
        let mut out: BTreeSet<VertexRef> = self.core.iter().map(|c| VertexRef::core(c)).collect();
        for (a, b) in &self.core_edges {
            out.insert(a.clone());
            out.insert(b.clone());
        }
        for g in &self.gadgets {
            for a in &g.attachments {
                if let Host::Vertex(v) = &a.host {
                    out.insert(v.clone());
                }
            }
            out.extend(g.core_members.iter().cloned());
        }
        for f in &self.families {
            for (_, h) in &f.per_copy {
                if let Host::Vertex(v) = h {
                    out.insert(v.clone());
                }
            }
        }
        out
    }

    /// Identifiers of ray gadgets and families whose copies run along gadget `g`.
    pub fn along_users(&self, g: &str) -> Vec<String> {
        let mut out = Vec::new();
        for f in &self.families {
            if f.per_copy.iter().any(|(_, h)| h == &Host::Along(g.to_string())) {
                out.push(f.id.clone());
            }
        }
        for r in &self.gadgets {
            if r.attachments.iter().any(|a| a.host == Host::Along(g.to_string())) {
                out.push(r.id.clone());
            }
        }
        out
    }
}

struct Validator<'a> {
    doc: &'a PresentationDoc,
    core: BTreeSet<String>,
    gadgets: BTreeMap<String, &'a GadgetDoc>,
    families: BTreeMap<String, &'a FamilyDoc>,
}

impl<'a> Validator<'a> {
    fn new(doc: &'a PresentationDoc) -> Result<Self> {
        if doc.name.is_empty() {
            return Err(Error::Schema("presentation name is empty".into()));
        }
        let mut seen = BTreeSet::new();
        let mut core = BTreeSet::new();
        for v in &doc.core.vertices {
            check_identifier(v)?;
            if !seen.insert(v.clone()) {
                return Err(Error::Schema(format!("duplicate identifier {v}")));
            }
            core.insert(v.clone());
        }
        let mut gadgets = BTreeMap::new();
        for g in &doc.gadgets {
            check_identifier(&g.id)?;
            if !seen.insert(g.id.clone()) {
                return Err(Error::Schema(format!("duplicate identifier {}", g.id)));
            }
            gadgets.insert(g.id.clone(), g);
        }
        let mut families = BTreeMap::new();
        for f in &doc.families {
            check_identifier(&f.id)?;
            if !seen.insert(f.id.clone()) {
                return Err(Error::Schema(format!("duplicate identifier {}", f.id)));
            }
            families.insert(f.id.clone(), f);
        }
        Ok(Validator {
            doc,
            core,
            gadgets,
            families,
        })
    }

    /// A vertex token: bare core identifier or a full address.
    fn vertex(&self, s: &str) -> Result<VertexRef> {
        let v = VertexRef::parse(s).map_err(|_| Error::DanglingRef(s.to_string()))?;
        let ok = match &v {
            VertexRef::Core(id) => self.core.contains(id),
            VertexRef::Gadget(g, _) => self.gadgets.get(g).is_some_and(|g| {
                matches!(g.kind, GadgetKind::Ray | GadgetKind::OmegaClique)
            }),
            VertexRef::StarRay(g, _, _) => self
                .gadgets
                .get(g)
                .is_some_and(|g| g.kind == GadgetKind::StarOfRays),
            VertexRef::Family(f, _, l) => match self.families.get(f) {
                Some(fd) => self.pattern(fd)?.has_local(l),
                None => false,
            },
            VertexRef::Subdiv(..) => false,
        };
        if ok {
            Ok(v)
        } else {
            Err(Error::DanglingRef(s.to_string()))
        }
    }

    fn host(&self, s: &str) -> Result<Host> {
        if let Some(g) = s.strip_prefix("along:") {
            match self.gadgets.get(g) {
                Some(gd) if matches!(gd.kind, GadgetKind::Ray | GadgetKind::OmegaClique) => {
                    Ok(Host::Along(g.to_string()))
                }
                Some(_) => Err(Error::Schema(format!(
                    "host {s}: only ray and clique gadgets can be followed"
                ))),
                None => Err(Error::DanglingRef(s.to_string())),
            }
        } else {
            Ok(Host::Vertex(self.vertex(s)?))
        }
    }

    fn pattern(&self, f: &FamilyDoc) -> Result<Pattern> {
        Ok(match &f.pattern {
            PatternDoc::Named(PatternName::SingleVertex) => Pattern::SingleVertex,
            PatternDoc::Named(PatternName::Ray) => Pattern::Ray,
            PatternDoc::Named(PatternName::StarOfRays) => Pattern::Star { chained: false },
            PatternDoc::Star { star_of_rays } => Pattern::Star {
                chained: star_of_rays.chained,
            },
            PatternDoc::Graph { graph } => {
                let mut names = BTreeSet::new();
                for v in &graph.vertices {
                    if !matches!(Local::parse(v)?, Local::Named(_)) {
                        return Err(Error::Schema(format!(
                            "pattern vertex name {v} collides with reserved local forms"
                        )));
                    }
                    if !names.insert(v.clone()) {
                        return Err(Error::Schema(format!("duplicate pattern vertex {v}")));
                    }
                }
                let mut edges = Vec::new();
                for [a, b] in &graph.edges {
                    if !names.contains(a) || !names.contains(b) {
                        return Err(Error::DanglingRef(format!("pattern edge {a}-{b}")));
                    }
                    if a == b {
                        return Err(Error::LoopEdge(format!("pattern vertex {a}")));
                    }
                    edges.push((a.clone(), b.clone()));
                }
                if graph.boundary.is_empty() {
                    return Err(Error::Schema(format!("family {}: empty boundary", f.id)));
                }
                for b in &graph.boundary {
                    if !names.contains(b) {
                        return Err(Error::DanglingRef(format!("boundary vertex {b}")));
                    }
                }
                let g = super::finite::FiniteGraph::new(graph.vertices.clone(), edges.clone())?;
                if g.components().len() != 1 {
                    return Err(Error::Schema(format!(
                        "family {}: pattern graph must be connected",
                        f.id
                    )));
                }
                Pattern::Graph {
                    vertices: graph.vertices.clone(),
                    edges,
                    boundary: graph.boundary.clone(),
                }
            }
        })
    }

    fn run(self) -> Result<Presentation> {
        let doc = self.doc;
        let mut core_edges = Vec::new();
        for [a, b] in &doc.core.edges {
            let va = self.vertex(a)?;
            let vb = self.vertex(b)?;
            if va == vb {
                return Err(Error::LoopEdge(va.to_string()));
            }
            core_edges.push((va, vb));
        }
        let mut gadgets = Vec::new();
        for gd in &doc.gadgets {
            let mut attachments = Vec::new();
            for a in &gd.attachments {
                let host = self.host(&a.host)?;
                match (&host, gd.kind, a.mode) {
                    (Host::Along(_), GadgetKind::Ray, Mode::FirstOnly) => {
                        return Err(Error::Schema(format!(
                            "gadget {}: an along-ray attachment must use mode All",
                            gd.id
                        )))
                    }
                    (Host::Along(h), GadgetKind::Ray, Mode::All) => {
                        if self.gadgets[h].kind != GadgetKind::Ray {
                            return Err(Error::Schema(format!(
                                "gadget {}: ladders join two ray gadgets",
                                gd.id
                            )));
                        }
                        if h == &gd.id {
                            return Err(Error::LoopEdge(format!("g:{}:*", gd.id)));
                        }
                    }
                    (Host::Along(_), _, _) => {
                        return Err(Error::Schema(format!(
                            "gadget {}: only ray gadgets attach along another ray",
                            gd.id
                        )))
                    }
                    (Host::Vertex(v), _, _) => {
                        if v.owner() == Some(gd.id.as_str()) {
                            return Err(Error::LoopEdge(format!("{v} hosts its own gadget")));
                        }
                    }
                }
                attachments.push(Attachment { host, mode: a.mode });
            }
            let mut core_members = Vec::new();
            if gd.kind == GadgetKind::StarOfRays
                && (attachments.len() != 1
                    || attachments[0].mode != Mode::FirstOnly
                    || !matches!(attachments[0].host, Host::Vertex(_)))
            {
                return Err(Error::Schema(format!(
                    "star {}: exactly one center attachment with mode FirstOnly",
                    gd.id
                )));
            }
            if gd.kind == GadgetKind::OmegaClique {
                let mut seen = BTreeSet::new();
                for m in &gd.core_members {
                    let v = self.vertex(m)?;
                    if !seen.insert(v.clone()) {
                        return Err(Error::Schema(format!("clique {}: duplicate member {m}", gd.id)));
                    }
                    if v.owner() == Some(gd.id.as_str()) {
                        return Err(Error::Schema(format!("clique {}: member {m} is its own vertex", gd.id)));
                    }
                    core_members.push(v);
                }
            } else if !gd.core_members.is_empty() {
                return Err(Error::Schema(format!("gadget {}: core_members only for OmegaClique", gd.id)));
            }
            if gd.chained && gd.kind != GadgetKind::StarOfRays {
                return Err(Error::Schema(format!("gadget {}: only stars can be chained", gd.id)));
            }
            gadgets.push(Gadget {
                id: gd.id.clone(),
                kind: gd.kind,
                attachments,
                core_members,
                chained: gd.chained,
            });
        }
        let mut families = Vec::new();
        for fd in &doc.families {
            let pattern = self.pattern(fd)?;
            let host = fd.host.as_deref().map(|h| self.host(h)).transpose()?;
            let local = |s: &str| -> Result<Local> {
                let l = Local::parse(s)?;
                if pattern.has_local(&l) {
                    Ok(l)
                } else {
                    Err(Error::DanglingRef(format!("f:{}:*:{s}", fd.id)))
                }
            };
            let mut per_copy = Vec::new();
            match &fd.per_copy_edges {
                Some(list) => {
                    for [l, t] in list {
                        let l = local(l)?;
                        let target = if t == "@host" {
                            host.clone().ok_or_else(|| {
                                Error::Schema(format!("family {}: @host used without a host", fd.id))
                            })?
                        } else {
                            self.host(t)?
                        };
                        if let Host::Vertex(v) = &target {
                            if v.owner() == Some(fd.id.as_str()) {
                                return Err(Error::Schema(format!(
                                    "family {}: per-copy edge into its own copies",
                                    fd.id
                                )));
                            }
                        }
                        per_copy.push((l, target));
                    }
                }
                None => {
                    if let Some(h) = &host {
                        per_copy.push((pattern.default_boundary(), h.clone()));
                    }
                }
            }
            let alongs: BTreeSet<&Host> =
                per_copy.iter().map(|(_, h)| h).filter(|h| matches!(h, Host::Along(_))).collect();
            if alongs.len() > 1 {
                return Err(Error::Schema(format!("family {}: at most one along-host", fd.id)));
            }
            per_copy.sort();
            per_copy.dedup();
            let chain = if fd.chained {
                let (a, b) = match &fd.chain_edge {
                    Some([a, b]) => (local(a)?, local(b)?),
                    None => (pattern.default_boundary(), pattern.default_boundary()),
                };
                Some((a, b))
            } else {
                if fd.chain_edge.is_some() {
                    return Err(Error::Schema(format!("family {}: chain_edge without chained", fd.id)));
                }
                None
            };
            families.push(Family {
                id: fd.id.clone(),
                pattern,
                host,
                per_copy,
                chain,
            });
        }
        let mut core: Vec<String> = self.core.iter().cloned().collect();
        core.sort();
        let mut core_edges_sorted: Vec<(VertexRef, VertexRef)> = core_edges
            .into_iter()
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        core_edges_sorted.sort();
        core_edges_sorted.dedup();
        Ok(Presentation {
            name: doc.name.clone(),
            core,
            core_edges: core_edges_sorted,
            gadgets,
            families,
            connected_hint: doc.connected_hint,
            subdivided: doc.subdivided,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_graph() {
        let p = Presentation::parse(
            r#"{"name":"edge","core":{"vertices":["a","b"],"edges":[["a","b"]]}}"#,
        )
        .unwrap();
        assert_eq!(p.core.len(), 2);
        assert_eq!(p.core_edges.len(), 1);
    }

    #[test]
    fn along_undeclared_ray_is_dangling() {
        let err = Presentation::parse(
            r#"{"name":"x","core":{"vertices":[]},
                "families":[{"id":"F","pattern":"SingleVertex","host":"along:r9"}]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::DanglingRef(_)), "{err:?}");
    }

    #[test]
    fn loop_edge_rejected() {
        let err = Presentation::parse(r#"{"name":"x","core":{"vertices":["a"],"edges":[["a","a"]]}}"#)
            .unwrap_err();
        assert!(matches!(err, Error::LoopEdge(_)));
    }

    #[test]
    fn malformed_field_is_schema_error() {
        let err = Presentation::parse(r#"{"name":"x","core":{"vertices":"a"}}"#).unwrap_err();
        assert!(matches!(err, Error::Schema(_)));
    }

    #[test]
    fn document_round_trip() {
        let text = r#"{"name":"d","core":{"vertices":["h"]},
            "gadgets":[{"id":"r","kind":"Ray","attachments":[{"host":"h","mode":"All"}]}],
            "families":[{"id":"F","pattern":"SingleVertex","host":"along:r"}],
            "connected_hint":true}"#;
        let p = Presentation::parse(text).unwrap();
        let again = Presentation::parse(&p.to_json()).unwrap();
        assert_eq!(p, again);
    }
}
