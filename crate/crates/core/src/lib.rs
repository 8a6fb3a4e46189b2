pub mod analysis;
pub mod annulus;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod fixtures;
mod half;
pub mod homology;
pub mod polynomial;
pub mod state_graph;
mod util;

pub use diagram::{parse_pd, LinkDiagram};
pub use error::{Error, Result};
pub use half::HalfInt;
