//! Exact max-makespan solver for instances whose scenarios all contain
//! exactly two jobs.
//!
//! Each scenario becomes an edge between its two jobs, weighted by the sum
//! of the two processing times. A two-coloring of the jobs is an assignment,
//! and the objective equals the larger of the heaviest monochromatic edge
//! and the largest processing time of any job that occurs in a scenario.
//! Processing edges by descending weight while growing two-colored
//! components either produces a proper two-coloring or stops at an edge that
//! closes an odd cycle, which certifies optimality of stopping there.

use crate::error::{Error, Result};
use crate::instance::{Assignment, Instance, Machine};
use crate::oracle::Optimum;

/// An edge of the conflict graph, in processing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairEdge {
    pub u: usize,
    pub v: usize,
    pub weight: u64,
    /// Index of the originating scenario.
    pub scenario: usize,
}

/// Where the edge sweep stopped because both endpoints already shared a
/// color inside one component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Termination {
    /// Index into [`PairsRun::edges`] of the edge that ended the sweep.
    pub edge_index: usize,
    pub weight: u64,
}

/// Full trace of one solver run, for auditing the certificates.
#[derive(Debug, Clone)]
pub struct PairsRun {
    pub optimum: Optimum,
    /// Edges in the order they were processed (descending weight, input
    /// order among equal weights).
    pub edges: Vec<PairEdge>,
    /// Present when the sweep stopped early on a monochromatic edge.
    pub termination: Option<Termination>,
    /// How often each job's component label changed; at most ceil(log2 n).
    pub relabel_counts: Vec<u32>,
}

/// Solves the max-makespan objective exactly for two-job scenarios.
pub fn solve_pairs(inst: &Instance) -> Result<Optimum> {
    run_pairs(inst).map(|run| run.optimum)
}

/// As [`solve_pairs`], returning the processing trace.
pub fn run_pairs(inst: &Instance) -> Result<PairsRun> {
    for (i, s) in inst.scenarios().iter().enumerate() {
        if s.len() != 2 {
            return Err(Error::precondition(format!(
                "pair solver requires scenarios of exactly 2 jobs, scenario {} has {}",
                i + 1,
                s.len()
            )));
        }
    }
    let n = inst.n();

    let mut edges: Vec<PairEdge> = inst
        .scenarios()
        .iter()
        .enumerate()
        .map(|(i, s)| PairEdge {
            u: s[0],
            v: s[1],
            weight: inst.proc_time(s[0]) + inst.proc_time(s[1]),
            scenario: i,
        })
        .collect();
    // stable: equal weights keep scenario order
    edges.sort_by(|a, b| b.weight.cmp(&a.weight));

    // Only jobs that occur in a scenario can contribute to any makespan.
    let p_max = edges
        .iter()
        .flat_map(|e| [e.u, e.v])
        .map(|j| inst.proc_time(j))
        .max()
        .unwrap_or(0);

    let mut color = vec![Machine::M1; n + 1]; // 1-based; index 0 unused
    let mut comp_of: Vec<usize> = (0..=n).collect();
    let mut members: Vec<Vec<usize>> = (0..=n).map(|v| vec![v]).collect();
    let mut relabel_counts = vec![0u32; n + 1];

    let mut termination = None;
    for (idx, e) in edges.iter().enumerate() {
        let (cu, cv) = (comp_of[e.u], comp_of[e.v]);
        if color[e.u] == color[e.v] {
            if cu == cv {
                // Case 1: a same-colored edge inside one component closes an
                // odd cycle of heavier edges; stop here.
                termination = Some(Termination {
                    edge_index: idx,
                    weight: e.weight,
                });
                break;
            }
            // Case 3: invert the smaller component, then merge as in Case 2.
            let loser = losing_component(&members, cu, cv);
            for &v in &members[loser] {
                color[v] = color[v].other();
            }
            merge(loser, other_of(loser, cu, cv), &mut comp_of, &mut members, &mut relabel_counts);
        } else if cu != cv {
            // Case 2: colors already differ; just merge the components.
            let loser = losing_component(&members, cu, cv);
            merge(loser, other_of(loser, cu, cv), &mut comp_of, &mut members, &mut relabel_counts);
        }
    }

    let value = match termination {
        Some(t) => p_max.max(t.weight),
        None => p_max,
    };
    let witness = Assignment::new(color[1..=n].to_vec());
    debug_assert_eq!(inst.eval_minmax(&witness), value);

    Ok(PairsRun {
        optimum: Optimum { value, witness },
        edges,
        termination,
        relabel_counts: relabel_counts[1..=n].to_vec(),
    })
}

/// The component to be relabeled (and possibly recolored): the smaller one,
/// or on equal sizes the one whose minimum vertex id is larger.
fn losing_component(members: &[Vec<usize>], a: usize, b: usize) -> usize {
    match members[a].len().cmp(&members[b].len()) {
        std::cmp::Ordering::Less => a,
        std::cmp::Ordering::Greater => b,
        std::cmp::Ordering::Equal => {
            let min_a = members[a].iter().min().copied().unwrap();
            let min_b = members[b].iter().min().copied().unwrap();
            if min_a < min_b {
                b
            } else {
                a
            }
        }
    }
}

fn other_of(loser: usize, a: usize, b: usize) -> usize {
    if loser == a {
        b
    } else {
        a
    }
}

fn merge(
    loser: usize,
    winner: usize,
    comp_of: &mut [usize],
    members: &mut [Vec<usize>],
    relabel_counts: &mut [u32],
) {
    let moved = std::mem::take(&mut members[loser]);
    for &v in &moved {
        comp_of[v] = winner;
        relabel_counts[v] += 1;
    }
    members[winner].extend(moved);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Objective;
    use crate::oracle::{brute_force, DEFAULT_BRUTE_CAP};

    fn unit_pairs(n: usize, scenarios: Vec<Vec<usize>>) -> Instance {
        Instance::new(vec![1; n], scenarios).unwrap()
    }

    #[test]
    fn odd_cycle_forces_monochromatic_edge() {
        let inst = unit_pairs(3, vec![vec![1, 2], vec![2, 3], vec![1, 3]]);
        let opt = solve_pairs(&inst).unwrap();
        assert_eq!(opt.value, 2);
        assert_eq!(inst.eval_minmax(&opt.witness), 2);
    }

    #[test]
    fn bipartite_path_reaches_p_max() {
        let inst = unit_pairs(3, vec![vec![1, 2], vec![2, 3]]);
        let opt = solve_pairs(&inst).unwrap();
        assert_eq!(opt.value, 1);
    }

    #[test]
    fn two_jobs_split_makespan_is_larger_job() {
        let inst = Instance::new(vec![3, 1], vec![vec![1, 2]]).unwrap();
        let opt = solve_pairs(&inst).unwrap();
        assert_eq!(opt.value, 3);
    }

    #[test]
    fn rejects_non_pair_scenarios() {
        let inst = Instance::new(vec![1, 1, 1], vec![vec![1, 2, 3]]).unwrap();
        assert!(matches!(solve_pairs(&inst), Err(Error::Precondition(_))));
        let inst = Instance::new(vec![1], vec![vec![1]]).unwrap();
        assert!(solve_pairs(&inst).is_err());
    }

    #[test]
    fn covered_heavy_job_dominates() {
        // the heaviest covered job sets the objective even though its own
        // edge never goes monochromatic
        let inst = Instance::new(vec![1, 1, 9, 1], vec![vec![1, 2], vec![3, 4]]).unwrap();
        let opt = solve_pairs(&inst).unwrap();
        assert_eq!(opt.value, 9);
    }

    #[test]
    fn uncovered_job_does_not_count() {
        let inst = Instance::new(vec![9, 1, 1], vec![vec![2, 3]]).unwrap();
        let opt = solve_pairs(&inst).unwrap();
        assert_eq!(opt.value, 1);
        let oracle = brute_force(&inst, Objective::MinMax, DEFAULT_BRUTE_CAP).unwrap();
        assert_eq!(opt.value, oracle.value);
    }

    #[test]
    fn no_scenarios_is_zero() {
        let inst = Instance::new(vec![5, 2], vec![]).unwrap();
        assert_eq!(solve_pairs(&inst).unwrap().value, 0);
    }

    /// BFS two-coloring; `None` when the edge set has an odd cycle.
    fn is_bipartite(n: usize, edges: &[(usize, usize)]) -> bool {
        let mut adj = vec![Vec::new(); n + 1];
        for &(u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut side = vec![-1i8; n + 1];
        for start in 1..=n {
            if side[start] != -1 {
                continue;
            }
            side[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if side[v] == -1 {
                        side[v] = 1 - side[u];
                        queue.push_back(v);
                    } else if side[v] == side[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn termination_edge_closes_an_odd_cycle_of_heavier_edges() {
        let inst = Instance::new(
            vec![4, 3, 2, 2, 1],
            vec![vec![1, 2], vec![2, 3], vec![1, 3], vec![4, 5], vec![3, 4]],
        )
        .unwrap();
        let run = run_pairs(&inst).unwrap();
        let t = run.termination.expect("triangle 1-2-3 must terminate the sweep");
        let prefix: Vec<(usize, usize)> = run.edges[..=t.edge_index]
            .iter()
            .map(|e| (e.u, e.v))
            .collect();
        assert!(!is_bipartite(inst.n(), &prefix));
        // every processed edge weighs at least the terminating edge
        assert!(run.edges[..=t.edge_index].iter().all(|e| e.weight >= t.weight));
    }

    #[test]
    fn witness_has_no_monochromatic_edge_above_value() {
        let inst = Instance::new(
            vec![4, 3, 2, 2, 1],
            vec![vec![1, 2], vec![2, 3], vec![1, 3], vec![4, 5], vec![3, 4]],
        )
        .unwrap();
        let run = run_pairs(&inst).unwrap();
        let witness = &run.optimum.witness;
        for e in &run.edges {
            if witness.machine_of(e.u) == witness.machine_of(e.v) {
                assert!(e.weight <= run.optimum.value);
            }
        }
    }

    #[test]
    fn relabels_bounded_by_log_n() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let n = rng.gen_range(2..=12usize);
            let k = rng.gen_range(1..=20);
            let scenarios: Vec<Vec<usize>> = (0..k)
                .map(|_| {
                    rand::seq::index::sample(&mut rng, n, 2)
                        .into_iter()
                        .map(|i| i + 1)
                        .collect()
                })
                .collect();
            let proc: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=9)).collect();
            let inst = Instance::new(proc, scenarios).unwrap();
            let run = run_pairs(&inst).unwrap();
            let bound = (n as f64).log2().ceil() as u32;
            assert!(run.relabel_counts.iter().all(|&c| c <= bound));
        }
    }

    #[test]
    fn matches_brute_force_on_random_pair_instances() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.gen_range(2..=10usize);
            let k = rng.gen_range(1..=15);
            let scenarios: Vec<Vec<usize>> = (0..k)
                .map(|_| {
                    rand::seq::index::sample(&mut rng, n, 2)
                        .into_iter()
                        .map(|i| i + 1)
                        .collect()
                })
                .collect();
            let proc: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=9)).collect();
            let inst = Instance::new(proc, scenarios).unwrap();
            let fast = solve_pairs(&inst).unwrap();
            let slow = brute_force(&inst, Objective::MinMax, DEFAULT_BRUTE_CAP).unwrap();
            assert_eq!(fast.value, slow.value, "{inst:?}");
        }
    }
}
