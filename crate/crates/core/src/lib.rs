//! Popular, Pareto-optimal and perfect matchings in many-to-one markets where
//! only applicants hold preferences.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, parallel search
//! drivers and the command-line tool live in the `popmatch` crate.
//!
//! Module map:
//!
//! * [`model`]: instances, matchings, capacity changes, matching enumeration.
//! * [`engine`]: min-cost-flow bipartite matching and Bellman-Ford.
//! * [`votes`]: both vote semantics and the brute-force oracles.
//! * [`popverify`]: polynomial popularity check for capacitated applicants.
//! * [`chapop`]: popularity in capacitated house allocation.
//! * [`pareto`]: Pareto-optimal maximum matchings.
//! * [`capopt`]: capacity-modification optimizers.
//! * [`reductions`]: 3DM / Set Cover gadgets and their validators.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod capopt;
pub mod chapop;
pub mod engine;
pub mod error;
pub mod model;
pub mod pareto;
pub mod popverify;
pub mod reductions;
pub mod votes;

pub use error::{Error, Result};
pub use model::{
    ApplicantId, CapacityChange, Edge, HouseId, Instance, InstanceBuilder, Matching,
    PopularityNotion,
};
