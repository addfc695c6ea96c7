pub mod certificate;
pub mod graph;
pub mod ipsolve;
pub mod matching;
pub mod mln;
pub mod oracle;
pub mod params;
pub mod solver_cvd;
pub mod solver_nd;
pub mod solver_tc;
pub mod trails;
pub mod twins;

pub use graph::Graph;
