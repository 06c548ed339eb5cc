pub mod certificate;
pub mod cli;
pub mod enumerate;
pub mod families;
pub mod multigraph;
pub mod operations;
pub mod recognize;

pub use multigraph::{CanonicalCode, GraphError, Multigraph, Triangle};
pub use operations::{Direction, OpKind, OpStep};
