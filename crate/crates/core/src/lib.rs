//! Exact computation with finite permutation groups, aimed at the
//! generation-dimension invariants r(G), m(G), i(G) and MaxDim(G).
//!
//! The crate works in two regimes:
//!
//! * **generator regime** — a group is known only through a stabilizer chain
//!   built from its generators. Orders, membership, quotient actions and
//!   coset-based maximality tests are available here, at any order.
//! * **enumerated regime** — all elements fit under an explicit cap, so an
//!   [`ElementTable`](elements::ElementTable) and a full
//!   [`SubgroupLattice`](lattice::SubgroupLattice) can be built. Exhaustive
//!   dimension searches, Frattini subgroups and classification predicates
//!   live here.
//!
//! Every budget is an explicit input; exceeding one is an error (or a value
//! marked as a bound), never a silently wrong answer.

pub mod budget;
pub mod classify;
pub mod constructions;
pub mod dimensions;
pub mod elements;
pub mod error;
pub mod group;
pub mod lattice;
pub mod naive;
pub mod perm;

pub use budget::Budgets;
pub use error::{Error, Result};
pub use group::PermGroup;
pub use perm::Permutation;

// bitsets appear in the public lattice API
pub use fixedbitset;
