#![no_std]
//! Exact controllability analysis for degree-constrained Boolean networks.
//!
//! States are packed into a `u32` with `x1` as the least significant bit.

extern crate alloc;

pub mod bounds;
pub mod certify;
pub mod constructions;
pub mod controllability;
pub mod dynamics;
pub mod error;
pub mod generation;
pub mod gf2;
pub mod network;
pub mod search;
pub mod state;

pub use bounds::{beta_lower_bound, bounds_report, BoundKind, BoundsReport, Rational};
pub use certify::{control_partition, degree_identity, necessary_conditions, Certificate, Verdict};
pub use constructions::{
    build_family, construction_schedule, greedy_v1, synthesize_xor_controls, Construction, FamilyKind,
    Fixture, SynthesisPlan,
};
pub use controllability::{is_controllable, pair_reach_oracle, reachable_at, t_star, StateSpace};
pub use dynamics::{controlled_step, simulate, step, ControlSchedule, Trajectory};
pub use error::{Error, Result};
pub use generation::{random_kk_digraph, random_network, GenSpec, NegationPolicy, SelfLoopPolicy};
pub use gf2::{solve_linear_schedule, to_affine_gf2, AffineMap};
pub use network::{
    BooleanNetwork, Connective, Family, Literal, MultiplicityTable, NcLayer, NcSpec, NodeFunction,
    ValidationReport,
};
pub use search::{minimum_control_set, SearchOptions, SearchResult};
pub use state::{NodeSet, StateVector, MAX_NODES};
