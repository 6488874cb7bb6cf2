use thiserror::Error;

/// Errors produced by parsing, validation and the search engines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("empty document: no facets declared")]
    EmptyDocument,

    #[error("unknown vertex name {0:?}")]
    UnknownVertex(String),

    #[error("duplicate vertex name {name:?} in one facet (line {line})")]
    DuplicateVertex { name: String, line: usize },

    #[error("assignment is not total: vertex {0:?} has no image")]
    PartialAssignment(String),

    #[error("assignment is not simplicial: facet {{{facet}}} has image {{{image}}}, not a simplex of the codomain")]
    NonSimplicial { facet: String, image: String },

    #[error("empty facet mask")]
    EmptyMask,

    #[error("facet mask index {index} out of range ({facets} facets)")]
    MaskOutOfRange { index: usize, facets: usize },

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("codomain mismatch: {0}")]
    CodomainMismatch(String),

    #[error("complex is not connected: {0}")]
    Disconnected(String),

    #[error("size guard exceeded for {what}: {size} > cap {cap}")]
    SizeGuard {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("cap exceeded in {what}")]
    CapExceeded { what: &'static str },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
