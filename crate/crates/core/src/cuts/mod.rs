//! The contraction skeleton and every edge- and vertex-connectivity query
//! answered on it.

pub mod cut;
pub mod engine;
pub mod flow;
pub mod skeleton;
pub mod uspec;

pub use cut::{cut_value, min_cut, CutAnswer, CutValue, Separation, Witness};
pub use engine::{generic_keys, tail_anchor, Engine, Generic, RaySpec, SimClass, SimClasses, VertexClassSet};
pub use skeleton::{Atom, AtomFamily, AtomKind, Cap, Materialization, Node, Region, SkelArc, SkeletonGraph};
pub use uspec::USpec;
