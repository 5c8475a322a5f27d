//! Embedding of the minmax objective into vector scheduling: one
//! `k`-dimensional vector per job, coordinate `i` equal to the job's
//! processing time when the job belongs to scenario `i` and zero otherwise.
//! For two machines the minimum over partitions of the maximum per-machine
//! infinity norm is exactly the minmax optimum.

use crate::error::{Error, Result};
use crate::instance::{Assignment, Instance, Machine};

/// The vector-scheduling view of an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorSet {
    /// `vectors[j - 1]` is the `k`-dimensional load vector of job `j`.
    pub vectors: Vec<Vec<u64>>,
    /// Number of machines to partition onto.
    pub m: usize,
}

impl VectorSet {
    pub fn dim(&self) -> usize {
        self.vectors.first().map_or(0, |v| v.len())
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Maximum over machines of the infinity norm of summed vectors, for a
    /// partition given as a 0-based machine index per job.
    pub fn minmax_of_partition(&self, machine_of: &[usize]) -> u64 {
        let dim = self.dim();
        let mut sums = vec![vec![0u64; dim]; self.m];
        for (vec, &m) in self.vectors.iter().zip(machine_of) {
            for (coord, &x) in sums[m].iter_mut().zip(vec) {
                *coord += x;
            }
        }
        sums.iter()
            .flat_map(|v| v.iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// Two-machine partition from an [`Assignment`].
    pub fn partition_of_assignment(&self, a: &Assignment) -> Vec<usize> {
        (1..=self.len())
            .map(|j| match a.machine_of(j) {
                Machine::M1 => 0,
                Machine::M2 => 1,
            })
            .collect()
    }
}

/// Builds the per-job load vectors; requires at least two machines.
pub fn to_vector_scheduling(inst: &Instance, m: usize) -> Result<VectorSet> {
    if m < 2 {
        return Err(Error::precondition(format!(
            "vector scheduling requires at least 2 machines, got {m}"
        )));
    }
    let mut vectors = vec![vec![0u64; inst.k()]; inst.n()];
    for (i, s) in inst.scenarios().iter().enumerate() {
        for &j in s {
            vectors[j - 1][i] = inst.proc_time(j);
        }
    }
    Ok(VectorSet { vectors, m })
}
