//! Static and dynamic analysis of a small single-class Java subset.
//!
//! The pipeline runs source → numbered AST → control-flow graph, then fans out
//! into dependence graphs, static path enumeration and a tracing interpreter.
//! Every result can be rendered as text or Graphviz DOT.

pub mod cfg;
pub mod cli;
pub mod dataflow;
pub mod export;
pub mod frontend;
pub mod interp;
pub mod paths;

pub use cfg::{build_cfg, Cfg, CfgEdge, EdgeLabel, NodeRef};
pub use frontend::{load, NumberedProgram, StatementId};
