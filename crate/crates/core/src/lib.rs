//! Encodings of simple multiaspect graphs (MAGs) and tools for measuring how
//! much their compressed size diverges from that of the isomorphic classical
//! graph.
//!
//! * [`mag`]: companion tuples, composite vertices and edges, simple MAGs and
//!   the bitstring-driven companion-tuple constructions.
//! * [`indexing`]: the fixed vertex and edge linearizations.
//! * [`codec`]: characteristic strings, composite edge set strings, encoded
//!   companion tuples and the `.magtxt` text form.
//! * [`isomorphism`]: the MAG to classical graph correspondence.
//! * [`recovery`]: companion-tuple recovery from an edge set string.
//! * [`complexity`]: compressed size as a computable stand-in for
//!   algorithmic complexity.
//! * [`experiments`]: worst-case families, sweeps and reports.

pub mod bits;
pub mod codec;
pub mod complexity;
pub mod error;
pub mod experiments;
pub mod indexing;
pub mod isomorphism;
pub mod mag;
pub mod recovery;

pub use bits::BitString;
pub use error::{MagError, Result};
pub use indexing::{EdgeIndex, VertexIndex};
pub use isomorphism::{check_mag_graph_isomorphism, graph_to_mag, mag_to_graph, ClassicalGraph};
pub use mag::{
    make_mag, signature_of, tau_from_bitstring, tau_from_bitstring_general, BinarySignature, CompanionTuple,
    CompositeEdge, CompositeVertex, SimpleMag, SizeCap,
};
pub use recovery::{recover_signature, RecoveryResult};
