use thiserror::Error;

/// Errors raised by the library. Names follow the error vocabulary of the
/// presentation format and the verification commands.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("dangling reference: {0}")]
    DanglingRef(String),
    #[error("loop edge at {0}")]
    LoopEdge(String),
    #[error("unresolved vertex or edge reference: {0}")]
    UnresolvedRef(String),
    #[error("separator element {0} cannot be absorbed into the skeleton")]
    NonSkeletonSeparator(String),
    #[error("resolution overflow: {candidates} separator candidates, exact subsets need at most {limit}")]
    ResolutionOverflow { candidates: usize, limit: usize },
    #[error("vertex set not expressible in the presentation: {0}")]
    UnsupportedUSpec(String),
    #[error("separator chain is not increasing at step {0}")]
    IncoherentChain(usize),
    #[error("point map is not total: {0}")]
    PartialBijection(String),
    #[error("vertex {0} is not timid")]
    NotTimid(String),
    #[error("domination cannot be decided: {0}")]
    DominationUndecidable(String),
    #[error("hub neighbourhood cannot be threaded by a presentable ray: {0}")]
    UnpresentableThreading(String),
    #[error("equivalence class cannot be contracted in the presentation: {0}")]
    UnpresentableClass(String),
    #[error("not an induced sub-presentation: {0}")]
    NotInduced(String),
    #[error("target set too small: {have} < {need}")]
    TargetTooSmall { have: usize, need: usize },
    #[error("no stable answer up to depth {0}")]
    Unstable(usize),
    #[error("finite component exceeds the size cap {0}")]
    CapExceeded(u64),
    #[error("family symmetry assumption violated: {0}")]
    Asymmetric(String),
    #[error("unknown catalog entry {0}")]
    UnknownCatalog(String),
}

pub type Result<T> = std::result::Result<T, Error>;
