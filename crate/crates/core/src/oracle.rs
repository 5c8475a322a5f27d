//! Ground-truth solvers: exhaustive search over assignments, a type-count
//! solver for unit jobs with few scenarios, and exact expectations of the
//! uniform random assignment.
//!
//! Everything here is exact. Expectations are rationals with denominator
//! `2^|S|`; no floating point is used.

use crate::error::{Error, Result};
use crate::instance::{Assignment, Instance, Objective};
use crate::Rational;

/// Default cap on `n` for [`brute_force`].
pub const DEFAULT_BRUTE_CAP: usize = 24;
/// Default cap on `k` for [`unit_dp`].
pub const DEFAULT_UNIT_DP_CAP: usize = 10;
/// Default cap on `|S|` for [`exact_random_profile`].
pub const DEFAULT_PROFILE_CAP: usize = 20;

/// An optimal objective value together with an assignment attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optimum {
    pub value: u64,
    pub witness: Assignment,
}

/// A group of unit jobs sharing the same scenario membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobType {
    /// Bit `i` set means the jobs of this type belong to scenario `i`.
    pub signature: u64,
    /// Job ids with this signature, ascending.
    pub jobs: Vec<usize>,
}

impl JobType {
    pub fn count(&self) -> usize {
        self.jobs.len()
    }
}

/// Iterates machine-1 masks so that the induced `'1'/'2'` strings appear in
/// lexicographic order with job 1 pinned to machine 1. Yields `2^(n-1)`
/// masks; the first optimum found is therefore the canonical witness.
pub(crate) fn symmetric_masks(n: usize) -> Box<dyn Iterator<Item = u64>> {
    if n == 0 {
        return Box::new(std::iter::once(0));
    }
    // v's bit (n - j) decides job j (2-based); job 1 is always on M1.
    let total: u64 = 1 << (n - 1);
    Box::new((0..total).map(move |v| {
        let mut mask = 1u64; // job 1 on M1
        for j in 2..=n {
            if v >> (n - j) & 1 == 0 {
                mask |= 1 << (j - 1);
            }
        }
        mask
    }))
}

/// Exhaustive exact solver. Enumerates the `2^(n-1)` machine-symmetric
/// assignments (job 1 pinned to machine 1) and returns the optimum with the
/// lexicographically smallest witness string.
pub fn brute_force(inst: &Instance, objective: Objective, cap: usize) -> Result<Optimum> {
    let n = inst.n();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "brute-force job count",
            actual: n,
            cap,
        });
    }
    if n == 0 {
        return Ok(Optimum {
            value: 0,
            witness: Assignment::new(vec![]),
        });
    }

    // Subset-sum table per scenario makes each evaluation O(k).
    let table = if n <= 20 { Some(subset_sums(inst)) } else { None };
    let masks: Vec<u64> = (0..inst.k()).map(|i| inst.scenario_mask(i)).collect();
    let totals: Vec<u64> = (0..inst.k()).map(|i| inst.scenario_total(i)).collect();

    let mut best: Option<(u64, u64)> = None; // (value, m1 mask)
    for m1 in symmetric_masks(n) {
        let value = eval_mask(inst, m1, &masks, &totals, table.as_deref(), objective);
        if best.map_or(true, |(v, _)| value < v) {
            best = Some((value, m1));
        }
    }
    let (value, m1) = best.unwrap();
    Ok(Optimum {
        value,
        witness: Assignment::from_m1_mask(n, m1),
    })
}

fn subset_sums(inst: &Instance) -> Vec<u64> {
    let n = inst.n();
    let mut sums = vec![0u64; 1 << n];
    for m in 1usize..1 << n {
        let low = m.trailing_zeros() as usize;
        sums[m] = sums[m & (m - 1)] + inst.proc_time(low + 1);
    }
    sums
}

fn eval_mask(
    inst: &Instance,
    m1: u64,
    masks: &[u64],
    totals: &[u64],
    table: Option<&[u64]>,
    objective: Objective,
) -> u64 {
    let mut acc = 0u64;
    for (&smask, &total) in masks.iter().zip(totals) {
        let load1 = match table {
            Some(t) => t[(m1 & smask) as usize],
            None => {
                let mut sum = 0;
                let mut bits = m1 & smask;
                while bits != 0 {
                    let j = bits.trailing_zeros() as usize + 1;
                    sum += inst.proc_time(j);
                    bits &= bits - 1;
                }
                sum
            }
        };
        let makespan = load1.max(total - load1);
        match objective {
            Objective::MinMax => acc = acc.max(makespan),
            Objective::MinSum => acc += makespan,
        }
    }
    acc
}

/// Groups the jobs of `inst` by scenario membership. Signatures partition
/// the job set; requires `k <= 64`.
pub fn job_types(inst: &Instance) -> Vec<JobType> {
    let mut sig_of_job = vec![0u64; inst.n()];
    for (i, s) in inst.scenarios().iter().enumerate() {
        for &j in s {
            sig_of_job[j - 1] |= 1 << i;
        }
    }
    let mut types: Vec<JobType> = Vec::new();
    for (idx, &sig) in sig_of_job.iter().enumerate() {
        match types.iter_mut().find(|t| t.signature == sig) {
            Some(t) => t.jobs.push(idx + 1),
            None => types.push(JobType {
                signature: sig,
                jobs: vec![idx + 1],
            }),
        }
    }
    types.sort_by_key(|t| t.signature);
    types
}

/// Exact solver for unit processing times with few scenarios. Jobs collapse
/// into at most `2^k` types; for each type only the number of its jobs on
/// machine 1 matters, so enumerating count vectors covers all distinct
/// load profiles.
pub fn unit_dp(inst: &Instance, objective: Objective, cap: usize) -> Result<Optimum> {
    if let Some(j) = (1..=inst.n()).find(|&j| inst.proc_time(j) != 1) {
        return Err(Error::precondition(format!(
            "unit-job solver requires unit processing times, job {j} has p={}",
            inst.proc_time(j)
        )));
    }
    if inst.k() > cap {
        return Err(Error::CapExceeded {
            what: "unit-job solver scenario count",
            actual: inst.k(),
            cap,
        });
    }

    let types = job_types(inst);
    let k = inst.k();
    let scenario_sizes: Vec<u64> = (0..k).map(|i| inst.scenario(i).len() as u64).collect();

    let mut counts = vec![0u64; types.len()];
    let mut best: Option<(u64, Vec<u64>)> = None;
    loop {
        // loads per scenario from the current count vector
        let mut value: u64 = 0;
        let mut per_scenario = vec![0u64; k];
        for (t, &x) in types.iter().zip(&counts) {
            let mut sig = t.signature;
            while sig != 0 {
                let i = sig.trailing_zeros() as usize;
                per_scenario[i] += x;
                sig &= sig - 1;
            }
        }
        for i in 0..k {
            let c1 = per_scenario[i];
            let makespan = c1.max(scenario_sizes[i] - c1);
            match objective {
                Objective::MinMax => value = value.max(makespan),
                Objective::MinSum => value += makespan,
            }
        }
        if best.as_ref().map_or(true, |(v, _)| value < *v) {
            best = Some((value, counts.clone()));
        }

        // odometer over 0..=count per type
        let mut pos = 0;
        loop {
            if pos == types.len() {
                let (value, counts) = best.unwrap();
                let mut m1 = Vec::new();
                for (t, &x) in types.iter().zip(&counts) {
                    m1.extend_from_slice(&t.jobs[..x as usize]);
                }
                let witness = Assignment::from_m1_jobs(inst.n(), &m1);
                debug_assert_eq!(inst.eval(&witness, objective), value);
                return Ok(Optimum { value, witness });
            }
            if counts[pos] < types[pos].count() as u64 {
                counts[pos] += 1;
                break;
            }
            counts[pos] = 0;
            pos += 1;
        }
    }
}

/// Exact distribution profile of assigning each job of scenario `idx`
/// uniformly at random: returns `(E[least load], E[makespan])` with
/// denominator `2^|S|`. The two always sum to `p(S)`.
pub fn exact_random_profile(inst: &Instance, idx: usize, cap: usize) -> Result<(Rational, Rational)> {
    let s = inst.scenario(idx);
    if s.len() > cap {
        return Err(Error::CapExceeded {
            what: "random-profile scenario size",
            actual: s.len(),
            cap,
        });
    }
    let times: Vec<u64> = s.iter().map(|&j| inst.proc_time(j)).collect();
    let total: u64 = times.iter().sum();
    let outcomes: u64 = 1 << s.len();

    let mut min_sum: u128 = 0;
    for mask in 0..outcomes {
        let mut load1 = 0u64;
        for (b, &p) in times.iter().enumerate() {
            if mask >> b & 1 == 1 {
                load1 += p;
            }
        }
        min_sum += load1.min(total - load1) as u128;
    }
    let denom = outcomes as i128;
    let expected_min = Rational::new(min_sum as i128, denom);
    let expected_max = Rational::from_integer(total as i128) - expected_min;
    Ok((expected_min, expected_max))
}

/// Exact expectation of the sum of makespans under the uniform random
/// assignment: the sum over scenarios of `E[makespan]`.
pub fn expected_random_minsum(inst: &Instance, cap: usize) -> Result<Rational> {
    let mut total = Rational::from_integer(0);
    for i in 0..inst.k() {
        total += exact_random_profile(inst, i, cap)?.1;
    }
    Ok(total)
}

/// Smallest possible makespan of scenario `idx` considered alone: the best
/// two-way split of just that scenario's jobs.
pub fn best_split_makespan(inst: &Instance, idx: usize) -> u64 {
    let s = inst.scenario(idx);
    let times: Vec<u64> = s.iter().map(|&j| inst.proc_time(j)).collect();
    let total: u64 = times.iter().sum();
    let mut best = total;
    for mask in 0..(1u64 << s.len()) {
        let mut load1 = 0u64;
        for (b, &p) in times.iter().enumerate() {
            if mask >> b & 1 == 1 {
                load1 += p;
            }
        }
        best = best.min(load1.max(total - load1));
    }
    best
}
