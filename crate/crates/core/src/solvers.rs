//! Assignment solvers: seeded random balancing, its conditional-expectation
//! derandomization for bounded scenario sizes, exact and local-search
//! max-cut back ends, minsum solving through the two reductions, and a
//! greedy list scheduler for the vector embedding.

use crate::error::{Error, Result};
use crate::instance::{Assignment, Instance, Machine, Objective};
use crate::oracle::symmetric_masks;
use crate::reductions::{to_maxcut3, to_nae_sat, CutGraph, VectorSet};
use crate::Rational;

/// Default cap on the scenario size for [`derandomized_assign`]; each
/// scenario costs up to `2^r` evaluations per decision.
pub const DEFAULT_DERAND_R_CAP: usize = 12;
/// Default cap on the vertex count for [`exact_maxcut`].
pub const DEFAULT_CUT_CAP: usize = 22;

/// Back end used by the reduction-based minsum solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    /// Exhaustive maximization; optimal, capped.
    Exact,
    /// Seeded single-flip local search; uncapped.
    LocalSearch,
}

/// Result of the best trial of [`random_assign`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialResult {
    pub seed: u64,
    /// Index of the winning trial (lowest index on ties).
    pub trial: u64,
    pub assignment: Assignment,
    pub minmax: u64,
    pub minsum: u64,
}

/// One side of a cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutSide {
    L,
    R,
}

/// A vertex bipartition with its crossing weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    /// `side[v - 1]` for vertex `v`.
    pub side: Vec<CutSide>,
    pub weight: Rational,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Unbiased bit keyed by (seed, trial, job); independent of evaluation
/// order, so trials can run in any order or in parallel.
fn keyed_bit(seed: u64, trial: u64, job: u64) -> bool {
    splitmix64(splitmix64(splitmix64(seed) ^ trial) ^ job) & 1 == 1
}

/// Assigns every job uniformly at random, independently per trial, and
/// returns the best trial under `objective`. Ties go to the lowest trial
/// index; identical inputs reproduce identical outputs bit for bit.
pub fn random_assign(inst: &Instance, seed: u64, trials: u64, objective: Objective) -> TrialResult {
    assert!(trials >= 1, "at least one trial required");
    let n = inst.n();
    let mut best: Option<(u64, TrialResult)> = None;
    for trial in 0..trials {
        let side: Vec<Machine> = (1..=n)
            .map(|j| {
                if keyed_bit(seed, trial, j as u64) {
                    Machine::M1
                } else {
                    Machine::M2
                }
            })
            .collect();
        let assignment = Assignment::new(side);
        let value = inst.eval(&assignment, objective);
        if best.as_ref().map_or(true, |(v, _)| value < *v) {
            let minmax = inst.eval_minmax(&assignment);
            let minsum = inst.eval_minsum(&assignment);
            best = Some((
                value,
                TrialResult {
                    seed,
                    trial,
                    assignment,
                    minmax,
                    minsum,
                },
            ));
        }
    }
    best.unwrap().1
}

/// Expected sum of makespans over scenarios, conditioned on the jobs fixed
/// so far; undecided jobs are uniform over the two machines.
fn conditional_expected_minsum(inst: &Instance, fixed: &[Option<Machine>]) -> Rational {
    let mut total = Rational::from_integer(0);
    for idx in 0..inst.k() {
        let mut load1 = 0u64;
        let mut load2 = 0u64;
        let mut undecided: Vec<u64> = Vec::new();
        for &j in inst.scenario(idx) {
            match fixed[j - 1] {
                Some(Machine::M1) => load1 += inst.proc_time(j),
                Some(Machine::M2) => load2 += inst.proc_time(j),
                None => undecided.push(inst.proc_time(j)),
            }
        }
        let free_total: u64 = undecided.iter().sum();
        let outcomes = 1u64 << undecided.len();
        let mut sum: u128 = 0;
        for mask in 0..outcomes {
            let mut extra1 = 0u64;
            for (b, &p) in undecided.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    extra1 += p;
                }
            }
            sum += (load1 + extra1).max(load2 + free_total - extra1) as u128;
        }
        total += Rational::new(sum as i128, outcomes as i128);
    }
    total
}

/// Fixes jobs one at a time, each on the machine minimizing the exact
/// conditional expectation of the sum of makespans (ties to machine 1).
/// The result's minsum never exceeds the unconditioned expectation of the
/// uniform random assignment.
pub fn derandomized_assign(inst: &Instance, r_cap: usize) -> Result<Assignment> {
    if inst.r() > r_cap {
        return Err(Error::CapExceeded {
            what: "derandomization scenario size",
            actual: inst.r(),
            cap: r_cap,
        });
    }
    let n = inst.n();
    let mut fixed: Vec<Option<Machine>> = vec![None; n];
    for j in 0..n {
        fixed[j] = Some(Machine::M1);
        let e1 = conditional_expected_minsum(inst, &fixed);
        fixed[j] = Some(Machine::M2);
        let e2 = conditional_expected_minsum(inst, &fixed);
        fixed[j] = Some(if e1 <= e2 { Machine::M1 } else { Machine::M2 });
    }
    Ok(Assignment::new(fixed.into_iter().map(|m| m.unwrap()).collect()))
}

/// Edge weights scaled to a common denominator for exact integer sums.
fn scaled_weights(g: &CutGraph) -> Result<(Vec<i128>, i128)> {
    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let mut denom: i128 = 1;
    for e in &g.edges {
        let d = *e.weight.denom();
        denom = denom
            .checked_div(gcd(denom, d))
            .and_then(|x| x.checked_mul(d))
            .ok_or_else(|| Error::precondition("edge weight denominators too large"))?;
    }
    let scaled = g
        .edges
        .iter()
        .map(|e| e.weight.numer() * (denom / e.weight.denom()))
        .collect();
    Ok((scaled, denom))
}

fn scaled_cut_weight(g: &CutGraph, mask: u64, scaled: &[i128]) -> i128 {
    let mut sum = 0i128;
    for (e, &w) in g.edges.iter().zip(scaled) {
        if (mask >> (e.u - 1) & 1) != (mask >> (e.v - 1) & 1) {
            sum += w;
        }
    }
    sum
}

fn sides_of_mask(n: usize, mask: u64) -> Vec<CutSide> {
    (0..n)
        .map(|i| if mask >> i & 1 == 1 { CutSide::L } else { CutSide::R })
        .collect()
}

/// Maximum-weight cut by exhaustive search over the `2^(n-1)` cuts with
/// vertex 1 pinned left; ties go to the lexicographically smallest side
/// string.
pub fn exact_maxcut(g: &CutGraph, cap: usize) -> Result<Cut> {
    if g.n > cap {
        return Err(Error::CapExceeded {
            what: "exact max-cut vertex count",
            actual: g.n,
            cap,
        });
    }
    if g.n == 0 {
        return Ok(Cut {
            side: vec![],
            weight: Rational::from_integer(0),
        });
    }
    let (scaled, denom) = scaled_weights(g)?;
    let mut best: Option<(i128, u64)> = None;
    for mask in symmetric_masks(g.n) {
        let sum = scaled_cut_weight(g, mask, &scaled);
        if best.map_or(true, |(b, _)| sum > b) {
            best = Some((sum, mask));
        }
    }
    let (sum, mask) = best.unwrap();
    Ok(Cut {
        side: sides_of_mask(g.n, mask),
        weight: Rational::new(sum, denom),
    })
}

/// Single-vertex-flip local search from a seeded random start. With
/// nonnegative weights the returned cut weighs at least half the total
/// edge weight.
pub fn local_search_cut(g: &CutGraph, seed: u64) -> Result<Cut> {
    let (scaled, denom) = scaled_weights(g)?;
    let mut in_left: Vec<bool> = (1..=g.n).map(|v| keyed_bit(seed, 0, v as u64)).collect();

    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.n];
    for (i, e) in g.edges.iter().enumerate() {
        incident[e.u - 1].push(i);
        incident[e.v - 1].push(i);
    }

    loop {
        let mut improved = false;
        for v in 0..g.n {
            let mut gain = 0i128;
            for &i in &incident[v] {
                let e = &g.edges[i];
                let crossing = in_left[e.u - 1] != in_left[e.v - 1];
                gain += if crossing { -scaled[i] } else { scaled[i] };
            }
            if gain > 0 {
                in_left[v] = !in_left[v];
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }

    let mut sum = 0i128;
    for (e, &w) in g.edges.iter().zip(&scaled) {
        if in_left[e.u - 1] != in_left[e.v - 1] {
            sum += w;
        }
    }
    Ok(Cut {
        side: in_left
            .iter()
            .map(|&l| if l { CutSide::L } else { CutSide::R })
            .collect(),
        weight: Rational::new(sum, denom),
    })
}

fn assignment_of_cut(cut: &Cut) -> Assignment {
    Assignment::new(
        cut.side
            .iter()
            .map(|s| match s {
                CutSide::L => Machine::M1,
                CutSide::R => Machine::M2,
            })
            .collect(),
    )
}

/// Minsum solving through the max-cut reduction; requires scenarios of at
/// most three jobs. With [`Backend::Exact`] the result is optimal.
pub fn solve_sm2_via_cut(
    inst: &Instance,
    backend: Backend,
    seed: u64,
    cut_cap: usize,
) -> Result<Assignment> {
    let g = to_maxcut3(inst)?;
    let cut = match backend {
        Backend::Exact => exact_maxcut(&g, cut_cap)?,
        Backend::LocalSearch => local_search_cut(&g, seed)?,
    };
    Ok(assignment_of_cut(&cut))
}

/// Minsum solving through the not-all-equal SAT reduction: maximizes the
/// satisfied shifted weight and maps true to machine 1. Dummy padding
/// variables are pinned false; they carry no processing time, and the
/// satisfied weight is invariant under their placement. With
/// [`Backend::Exact`] the result is optimal.
pub fn solve_sm2_via_nae(
    inst: &Instance,
    backend: Backend,
    seed: u64,
    r_cap: usize,
    exhaustive_cap: usize,
) -> Result<Assignment> {
    let cs = to_nae_sat(inst, r_cap)?;
    let n = cs.num_real_vars;
    let mut truth = vec![false; cs.num_vars];

    // weights share denominators dividing 4(N-1); scale once for integer sums
    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let mut denom: i128 = 1;
    for c in &cs.clauses {
        let d = *c.w_shifted.denom();
        denom = denom / gcd(denom, d) * d;
    }
    let scaled: Vec<i128> = cs
        .clauses
        .iter()
        .map(|c| c.w_shifted.numer() * (denom / c.w_shifted.denom()))
        .collect();
    let score = |truth: &[bool]| -> i128 {
        cs.clauses
            .iter()
            .zip(&scaled)
            .filter(|(c, _)| c.satisfied(truth))
            .map(|(_, &w)| w)
            .sum()
    };

    match backend {
        Backend::Exact => {
            if n > exhaustive_cap {
                return Err(Error::CapExceeded {
                    what: "exhaustive clause maximization variable count",
                    actual: n,
                    cap: exhaustive_cap,
                });
            }
            // satisfied weight is invariant under flipping all real
            // variables, so job 1 can be pinned true
            let mut best: Option<(i128, u64)> = None;
            for mask in symmetric_masks(n) {
                for j in 0..n {
                    truth[j] = mask >> j & 1 == 1;
                }
                let s = score(&truth);
                if best.map_or(true, |(b, _)| s > b) {
                    best = Some((s, mask));
                }
            }
            let mask = best.map(|(_, m)| m).unwrap_or(0);
            for j in 0..n {
                truth[j] = mask >> j & 1 == 1;
            }
        }
        Backend::LocalSearch => {
            for (j, t) in truth.iter_mut().take(n).enumerate() {
                *t = keyed_bit(seed, 0, j as u64 + 1);
            }
            let mut current = score(&truth);
            loop {
                let mut improved = false;
                for j in 0..n {
                    truth[j] = !truth[j];
                    let s = score(&truth);
                    if s > current {
                        current = s;
                        improved = true;
                    } else {
                        truth[j] = !truth[j];
                    }
                }
                if !improved {
                    break;
                }
            }
        }
    }

    Ok(Assignment::new(
        truth[..n]
            .iter()
            .map(|&t| if t { Machine::M1 } else { Machine::M2 })
            .collect(),
    ))
}

/// Greedy list scheduling for the vector embedding: vectors in descending
/// infinity-norm order (ascending id on ties), each placed on the machine
/// minimizing the resulting maximum infinity norm (lowest machine index on
/// ties). Returns a 0-based machine index per vector.
pub fn vector_list_schedule(vs: &VectorSet) -> Vec<usize> {
    let n = vs.len();
    let dim = vs.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&j| {
        let norm = vs.vectors[j].iter().copied().max().unwrap_or(0);
        (std::cmp::Reverse(norm), j)
    });

    let mut sums = vec![vec![0u64; dim]; vs.m];
    let mut machine_of = vec![0usize; n];
    for &j in &order {
        let mut best: Option<(u64, usize)> = None;
        for m in 0..vs.m {
            let mut worst = 0u64;
            for (mi, sum) in sums.iter().enumerate() {
                let norm = sum
                    .iter()
                    .zip(&vs.vectors[j])
                    .map(|(&s, &x)| if mi == m { s + x } else { s })
                    .max()
                    .unwrap_or(0);
                worst = worst.max(norm);
            }
            if best.map_or(true, |(b, _)| worst < b) {
                best = Some((worst, m));
            }
        }
        let m = best.map(|(_, m)| m).unwrap_or(0);
        machine_of[j] = m;
        for (sum, &x) in sums[m].iter_mut().zip(&vs.vectors[j]) {
            *sum += x;
        }
    }
    machine_of
}
