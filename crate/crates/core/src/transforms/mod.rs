//! Graph constructions with their correspondence maps.
//!
//! Every transform returns a [`TransformResult`]: the output graph (a
//! presentation, or a truncation builder when the output is not presentable)
//! plus the vertex, separator and point translations that
//! [`crate::spaces::correspondence_check`] consumes.

pub mod completion;
pub mod hgraph;
pub mod line;
pub mod quotient;
pub mod subdivide;

use std::collections::{BTreeMap, BTreeSet};

use serde_json::json;

pub use completion::{completion, Chained};
pub use hgraph::{component_bijection, h_graph, BijectionReport, HGraph, HVertex};
pub use line::{line_component_check, line_graph, LineGraph, LinePoint, LineView};
pub use quotient::{preimage, quotient_class, quotient_sim, ray_projection, Projection};
pub use subdivide::{subdivide, timid_to_edge};

use crate::error::{Error, Result};
use crate::graph_model::{neighborhood, EdgeRef, Presentation, VertexRef};
use crate::separation::Separator;
use crate::spaces::{Source, SpaceSummary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TransformKind {
    LineGraph,
    HGraph,
    Completion,
    Quotient,
    Subdivision,
    TimidToEdge,
}

impl TransformKind {
    pub fn name(&self) -> &'static str {
        match self {
            TransformKind::LineGraph => "line_graph",
            TransformKind::HGraph => "h_graph",
            TransformKind::Completion => "completion",
            TransformKind::Quotient => "quotient_sim",
            TransformKind::Subdivision => "subdivide",
            TransformKind::TimidToEdge => "timid_to_edge",
        }
    }

    pub fn parse(s: &str) -> Result<TransformKind> {
        Ok(match s {
            "line_graph" | "line" => TransformKind::LineGraph,
            "h_graph" | "hg" => TransformKind::HGraph,
            "completion" => TransformKind::Completion,
            "quotient_sim" | "quotient" => TransformKind::Quotient,
            "subdivide" => TransformKind::Subdivision,
            "timid_to_edge" => TransformKind::TimidToEdge,
            other => return Err(Error::Schema(format!("unknown transform {other}"))),
        })
    }
}

/// The transformed graph.
#[derive(Debug, Clone)]
pub enum Output {
    Presentation(Presentation),
    /// `H_G` when it is not the input itself: built per truncation depth.
    HGraph(HGraph),
    /// The line graph, built per truncation depth.
    Line(LineView),
}

impl Output {
    pub fn presentation(&self) -> Option<&Presentation> {
        match self {
            Output::Presentation(p) => Some(p),
            _ => None,
        }
    }
}

/// How separators of the input translate to separators of the output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparatorRule {
    Identity,
    /// `F ↦ {v_e : e ∈ F}`.
    EdgesToLineVertices,
    /// `F ↦ {midpoint of e : e ∈ F}`.
    EdgesToMidpoints,
    /// `F ↦ F̃`: each star edge in `F` at a completed hub brings its
    /// flanking new edges.
    Completion(Vec<Chained>),
    /// `F ↦ π[F]`, defined only when `F = π⁻¹(π[F])`.
    Quotient(BTreeMap<VertexRef, VertexRef>),
    /// A finite set of finite-degree timid vertices goes to the edges at them.
    TimidToIncidentEdges,
    /// Timid vertex separators are kept as they are.
    TimidIdentity,
}

/// How vertices of the input translate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexRule {
    Identity,
    /// The quotient projection; unlisted vertices are fixed.
    Projection(BTreeMap<VertexRef, VertexRef>),
    /// `θ`: see [`HGraph::theta`].
    Theta,
    /// Vertices become the edges at them; see [`LineView`].
    EdgesAt,
}

/// A transform's output with its correspondence maps.
#[derive(Debug, Clone)]
pub struct TransformResult {
    pub kind: TransformKind,
    pub input: Presentation,
    pub output: Output,
    pub vertex_rule: VertexRule,
    pub separator_rule: SeparatorRule,
    /// Point translation in words (the computed map is [`TransformResult::point_map`]).
    pub point_rule: String,
    pub notes: Vec<String>,
}

impl TransformResult {
    /// Whether the transform left the input unchanged.
    pub fn is_identity(&self) -> bool {
        match &self.output {
            Output::Presentation(p) => p == &self.input,
            _ => false,
        }
    }

    pub fn map_vertex(&self, v: &VertexRef) -> Option<VertexRef> {
        match &self.vertex_rule {
            VertexRule::Identity => Some(v.clone()),
            VertexRule::Projection(pi) => Some(pi.get(v).cloned().unwrap_or_else(|| v.clone())),
            VertexRule::Theta | VertexRule::EdgesAt => None,
        }
    }

    /// Translates a separator of the input; `None` when the rule does not
    /// apply to it.
    pub fn map_separator(&self, f: &Separator) -> Option<Separator> {
        match (&self.separator_rule, f) {
            (SeparatorRule::Identity, _) => Some(f.clone()),
            (SeparatorRule::EdgesToMidpoints, Separator::Edges(es)) => Some(Separator::vertices(
                es.iter().map(|e| VertexRef::midpoint(e.0.clone(), e.1.clone())),
            )),
            (SeparatorRule::Completion(chains), Separator::Edges(es)) => {
                let mut out = es.clone();
                for e in es {
                    out.extend(completion::flanks(chains, e));
                }
                Some(Separator::Edges(out))
            }
            (SeparatorRule::Quotient(pi), Separator::Edges(es)) => quotient::image(&self.input, pi, es),
            (SeparatorRule::TimidToIncidentEdges, Separator::Vertices(vs)) => {
                let mut out = BTreeSet::new();
                for v in vs {
                    let nb = neighborhood(&self.input, v).ok()?;
                    if !nb.is_finite() {
                        return None;
                    }
                    out.extend(nb.finite.iter().map(|u| EdgeRef::new(v.clone(), u.clone())));
                }
                Some(Separator::Edges(out))
            }
            (SeparatorRule::TimidIdentity, Separator::Vertices(_)) => Some(f.clone()),
            _ => None,
        }
    }

    /// Point bijection between a space of the input and a space of the
    /// output: points sharing an atom correspond, and a completed hub goes to
    /// the end of its new ray.
    pub fn point_map(&self, s1: &SpaceSummary, s2: &SpaceSummary) -> Result<Vec<usize>> {
        let chains = match &self.separator_rule {
            SeparatorRule::Completion(c) => c.as_slice(),
            _ => &[],
        };
        s1.points
            .iter()
            .map(|pt| {
                let hub = pt.name.trim_start_matches("hub ");
                let mut wanted: Vec<String> = Vec::new();
                if pt.source == Source::RaylessHub {
                    wanted.extend(
                        chains
                            .iter()
                            .filter(|c| c.hub_names.iter().any(|h| h == hub))
                            .map(|c| c.chain_atom(hub)),
                    );
                }
                if wanted.is_empty() {
                    wanted = pt.atoms.clone();
                }
                s2.points
                    .iter()
                    .position(|q| q.atoms.iter().any(|a| wanted.contains(a)))
                    .ok_or_else(|| Error::PartialBijection(format!("{} has no image", pt.name)))
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let output = match &self.output {
            Output::Presentation(p) => serde_json::to_value(p.to_doc()).expect("document serialises"),
            Output::HGraph(h) => h.describe(),
            Output::Line(l) => l.describe(),
        };
        let separator = match &self.separator_rule {
            SeparatorRule::Identity => json!("identity"),
            SeparatorRule::EdgesToLineVertices => json!("edges to line-graph vertices"),
            SeparatorRule::EdgesToMidpoints => json!("edges to midpoints"),
            SeparatorRule::Completion(c) => json!({
                "add_flanking_new_edges": c.iter().map(Chained::describe).collect::<Vec<_>>()
            }),
            SeparatorRule::Quotient(pi) => json!({ "projection": table(pi) }),
            SeparatorRule::TimidToIncidentEdges => json!("finite-degree timid vertices to incident edges"),
            SeparatorRule::TimidIdentity => json!("identity on timid vertices"),
        };
        let vertex = match &self.vertex_rule {
            VertexRule::Identity => json!("identity"),
            VertexRule::Projection(pi) => json!({ "projection": table(pi) }),
            VertexRule::Theta => json!("theta"),
            VertexRule::EdgesAt => json!("edges at the vertex"),
        };
        json!({
            "transform": self.kind.name(),
            "input": self.input.name,
            "identity": self.is_identity(),
            "output": output,
            "vertex_map": vertex,
            "separator_map": separator,
            "point_map": self.point_rule,
            "notes": self.notes,
        })
    }
}

fn table(pi: &BTreeMap<VertexRef, VertexRef>) -> serde_json::Value {
    pi.iter()
        .map(|(a, b)| (a.to_string(), json!(b.to_string())))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

/// Runs one transform by kind. `line_graph` and `h_graph` need no extra
/// arguments at the presentation level.
pub fn apply(kind: TransformKind, p: &Presentation) -> Result<TransformResult> {
    match kind {
        TransformKind::LineGraph => Ok(line::line_view(p)),
        TransformKind::HGraph => h_graph(p),
        TransformKind::Completion => completion(p),
        TransformKind::Quotient => quotient_sim(p),
        TransformKind::Subdivision => subdivide(p),
        TransformKind::TimidToEdge => timid_to_edge(p),
    }
}

/// A fresh family or gadget identifier starting with `stem`.
pub(crate) fn fresh_id(p: &Presentation, stem: &str, taken: &BTreeSet<String>) -> String {
    (0..)
        .map(|i| format!("{stem}{i}"))
        .find(|id| p.gadget(id).is_none() && p.family(id).is_none() && !p.is_core(id) && !taken.contains(id))
        .expect("identifiers are unbounded")
}
