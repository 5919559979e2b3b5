//! Divisor theory on finite loopless multigraphs.
//!
//! The crate computes reduced divisors with the iterated burning algorithm,
//! decides whether a divisor is equivalent to an effective one with the
//! modified burning algorithm (fires start at every vertex in debt), and
//! builds rank and higher-gonality searches on top of those engines.
//!
//! ```
//! use chipfire::{families, gonality};
//!
//! let g = families::desc_banana(4, 5).unwrap();
//! let gon2 = gonality::gonality(&g, 2, &gonality::SearchOptions::default()).unwrap();
//! assert_eq!(gon2.value, 6);
//! ```

pub mod bench;
pub mod burning;
pub mod cli;
pub mod divisor;
mod error;
pub mod families;
pub mod gonality;
pub mod graph;

pub use burning::{BurnOutcome, BurnTrace};
pub use divisor::{Divisor, FiringScript};
pub use error::{Error, Result};
pub use graph::{Multigraph, VertexSet};
