//! Problem transformations: minsum scheduling to weighted not-all-equal
//! SAT, minsum scheduling with small scenarios to weighted max-cut, the
//! minmax objective to vector scheduling, and instance gadgets that encode
//! max-cut and set-splitting inputs as scheduling instances.
//!
//! All weights are exact rationals so the transformation identities hold as
//! equalities, never within a tolerance.

mod gadgets;
mod maxcut;
mod nae;
mod vector;

pub use gadgets::{gadget_from_maxcut, gadget_from_set_splitting};
pub use maxcut::{parse_cut_graph, to_maxcut3, CutEdge, CutGraph, ScenarioTriple};
pub use nae::{
    nae_base_weight, nae_shift, parse_clause_set, to_nae_sat, ClauseSet, NaeClause,
    DEFAULT_NAE_R_CAP,
};
pub use vector::{to_vector_scheduling, VectorSet};
