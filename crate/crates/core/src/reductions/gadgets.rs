//! Instance gadgets that encode other combinatorial problems as scheduling
//! instances.
//!
//! From an unweighted graph: a unit job per vertex and a two-job scenario
//! per edge, so every assignment's sum of makespans equals twice the edge
//! count minus the size of the induced cut.
//!
//! From a family of three-element sets: a unit job per object and a
//! three-job scenario per set, so the minmax optimum is 2 exactly when some
//! two-coloring splits every set, and 3 otherwise.

use crate::error::{Error, Result};
use crate::instance::Instance;

/// Unit-job instance whose minsum objective mirrors max-cut on the given
/// simple undirected graph. Vertices are `1..=n`.
pub fn gadget_from_maxcut(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Instance> {
    let mut seen = std::collections::HashSet::new();
    let mut scenarios = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        if u < 1 || u > n_vertices || v < 1 || v > n_vertices {
            return Err(Error::precondition(format!(
                "edge ({u},{v}) out of range for {n_vertices} vertices"
            )));
        }
        if u == v {
            return Err(Error::precondition(format!("self-loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::precondition(format!("duplicate edge ({u},{v})")));
        }
        scenarios.push(vec![u.min(v), u.max(v)]);
    }
    Instance::new(vec![1; n_vertices], scenarios)
}

/// Unit-job instance whose minmax objective decides set splitting for a
/// family of three-element sets over objects `1..=max_id`.
pub fn gadget_from_set_splitting(sets: &[Vec<usize>]) -> Result<Instance> {
    let mut n = 0;
    let mut scenarios = Vec::with_capacity(sets.len());
    for (i, set) in sets.iter().enumerate() {
        let mut s = set.clone();
        s.sort_unstable();
        s.dedup();
        if s.len() != 3 {
            return Err(Error::precondition(format!(
                "set {} must have exactly 3 distinct elements, got {:?}",
                i + 1,
                set
            )));
        }
        if s[0] < 1 {
            return Err(Error::precondition("object ids are 1-based"));
        }
        n = n.max(s[2]);
        scenarios.push(s);
    }
    Instance::new(vec![1; n], scenarios)
}
