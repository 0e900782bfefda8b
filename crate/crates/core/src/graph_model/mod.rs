//! Finite graphs, the presentation grammar for infinite graphs, lazy
//! adjacency and depth-n truncations.

pub mod address;
pub mod finite;
pub mod neighbors;
pub mod presentation;
pub mod truncation;

pub use address::{EdgeRef, Local, RayId, StarId, VertexRef};
pub use finite::FiniteGraph;
pub use neighbors::{neighborhood, neighbors, Neighborhood, Stream};
pub use presentation::{
    Attachment, Family, Gadget, GadgetKind, Host, Mode, Pattern, Presentation, PresentationDoc,
};
pub use truncation::{in_truncation, truncate, Truncation};
