//! Random walks on weighted multigraphs viewed as electrical networks.
//!
//! Edge lengths double as resistances. The walk leaves a vertex along an arc
//! with probability proportional to `1/ℓ`, and crossing an edge costs either
//! `ℓ²` or the Brownian conditional mean. The crate computes exact commute
//! and cover quantities from effective resistances and checks each of them
//! by seeded Monte Carlo simulation.
//!
//! ```
//! use edgecover::{closedform, generators, VertexId};
//!
//! let net = generators::unit_path(8).unwrap();
//! let t = closedform::commute_time(&net, VertexId(0), VertexId(8)).unwrap();
//! assert!((t - 128.0).abs() < 1e-9);
//! ```

pub mod cli;
pub mod closedform;
pub mod error;
pub mod estimate;
pub mod exact;
pub mod generators;
pub mod netmodel;
pub mod resistance;
pub mod tours;
pub mod walker;

pub use error::{Error, Result};
pub use netmodel::{Arc, Direction, Edge, EdgeId, Network, Orientation, VertexId};
pub use resistance::SplitSpec;
pub use walker::{StoppingRule, TimingModel, Walker};
