//! Refractive toric promotion on graphs.
//!
//! Each vertex of a graph `G` on `1..=n` has a replica sitting on the cycle
//! `Z/n`; a stone walks around the cycle swapping neighbouring replicas and
//! turns around whenever the swapped pair is an edge of `G`. The crate
//! simulates this map, partitions its state space into orbits, measures how
//! far each replica winds around the cycle over an orbit, and classifies
//! graphs by whether those winding vectors vanish.
//!
//! Modules:
//! - [`graphs`]: graph model, families, operations, graph6 and spec parsing.
//! - [`dynamics`]: states, the step map, its inverse and conjugation.
//! - [`orbits`]: orbit summaries, winding vectors, traces.
//! - [`classify`]: ensnaring / expelling / mixed and the revolutionary flag.
//! - [`verify`]: finite-range theorem checks and conjecture searches.

pub mod classify;
pub mod dynamics;
pub mod error;
pub mod graphs;
pub mod orbits;
pub mod verify;

pub use classify::{classify, classify_many, classify_with, Classification, ClassifyOptions, Kind, Outcome, Question};
pub use dynamics::{conjugate, theta, theta_inverse, BilliardState, EventKind, Orientation, PivotalKind, StepEvent};
pub use error::{Error, Result};
pub use graphs::{parse_spec, print_spec, Graph, MaterializedGraph};
pub use orbits::{all_orbits, orbit_summary, trace, OrbitSummary, TraceRecord};
