//! Clique-width expressions for (K3, P1+P5)-free and (K3, P2+P4)-free graphs,
//! built through modular decomposition, C5-anchored decompositions into curious
//! and 3-uniform pieces, and slice decompositions of curious graphs.

pub mod curious;
pub mod c5;
pub mod cwx;
pub mod edit;
pub mod error;
pub mod graph;
pub mod io;
pub mod modules;
pub mod patterns;
pub mod pipeline;
pub mod uniform;
pub mod wqo;

pub use error::{Error, Result};
pub use graph::{vset, Graph, VertexId, VertexSet};
