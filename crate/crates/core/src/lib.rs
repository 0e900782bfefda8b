//! End, edge-end, timid-end and direction spaces of finitely presented
//! infinite graphs.

pub mod catalog;
pub mod compactness;
pub mod cuts;
pub mod error;
pub mod graph_model;
pub mod oracle;
pub mod separation;
pub mod spaces;
pub mod starcomb;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/presentations.md")]
    mod presentations {}
    #[doc = include_str!("../../../book/src/spaces.md")]
    mod spaces {}
    #[doc = include_str!("../../../book/src/transforms.md")]
    mod transforms {}
    #[doc = include_str!("../../../book/src/compactness.md")]
    mod compactness {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
