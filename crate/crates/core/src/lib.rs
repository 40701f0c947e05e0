//! Möbius and zeta transforms of finite graphs and subset lattices, with a
//! Dempster-Shafer evidence layer and an instrumented operation-cost model.
//!
//! Any finite directed graph from `S` to `T` induces a linear map from
//! vectors over `S` to vectors over `T`: each target collects the sum of
//! its preimage. On the power-set lattice of a frame this map is exactly
//! the mass-to-belief transform of evidence theory, and decomposing the
//! subset relation into one stage per frame element turns the quadratic sum
//! into `n` cheap in-place passes. The same trick runs in the superset
//! direction for commonalities, inverts both directions, and multiplies
//! commonalities pointwise to combine evidence far faster than the defining
//! double loop.
//!
//! The crate keeps both roads: naive defining sums as oracles and slow
//! benchmark arms, fast kernels for real use, explicit graph pipelines for
//! verification, and counters that pin each algorithm's exact addition and
//! multiplication counts.
//!
//! ```
//! use mobius::setfun::{Frame, SetFunction};
//! use mobius::transform::mass_to_belief;
//!
//! let frame = Frame::new(["rain", "sun"]).unwrap();
//! let mut mass = SetFunction::zeros(frame.clone(), mobius::setfun::Kind::Mass);
//! mass.set_value(frame.encode(&["rain"]).unwrap(), 0.7).unwrap();
//! mass.set_value(frame.full_mask(), 0.3).unwrap();
//!
//! let belief = mass_to_belief(&mass, false).unwrap();
//! assert_eq!(belief.value_of(&["rain"]).unwrap(), 0.7);
//! assert_eq!(belief.value(frame.full_mask()), 1.0);
//! ```

pub mod bench;
pub mod cost;
pub mod counter;
pub mod error;
pub mod evidence;
pub mod graph;
pub mod io;
pub mod poset;
pub mod powerset;
pub mod setfun;
pub mod transform;

pub use counter::OpCount;
pub use error::{Error, Result};
pub use graph::{FiniteSet, Graph, Pipeline, Stage, WeightedGraph};
pub use setfun::{Frame, Kind, SetFunction};
pub use transform::TransformKind;
