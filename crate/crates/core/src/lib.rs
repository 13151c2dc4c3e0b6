//! Exact combinatorial engine for genus-two Heegaard and trisection
//! diagrams: curve systems as combinatorial maps on the cut surface,
//! wave-move recognition of the three-sphere, trisection validation and
//! standardization, and a bounded-complexity census.

pub mod build;
pub mod diagram;
pub mod error;
pub mod canon;
pub mod fixtures;
pub mod geom;
pub mod map;
pub mod moves;
pub mod recut;
pub mod reduce;
pub mod regions;
pub mod route;
pub mod slope;

pub use diagram::{CurveRef, Diagram, ValidationReport};
pub use error::{Error, Result};
pub use map::{CurveId, DartId, Family, Puncture, Side};
pub use slope::Slope;
