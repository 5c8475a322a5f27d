//! Seeded instance generators for benchmarking. Identical parameters and
//! seed always produce the identical instance; scenario members are drawn
//! without replacement, so generated instances always satisfy the model
//! invariants.

use crate::error::{Error, Result};
use crate::instance::Instance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn sample_scenario(rng: &mut ChaCha8Rng, n: usize, size: usize) -> Vec<usize> {
    let mut ids: Vec<usize> = rand::seq::index::sample(rng, n, size)
        .into_iter()
        .map(|i| i + 1)
        .collect();
    ids.sort_unstable();
    ids
}

/// Random instance: `k` scenarios of size `1..=r_max`, processing times in
/// `0..=p_max`.
pub fn gen_random(n: usize, k: usize, r_max: usize, p_max: u64, seed: u64) -> Result<Instance> {
    if n == 0 {
        return Err(Error::precondition("generator requires n >= 1"));
    }
    if r_max == 0 || r_max > n {
        return Err(Error::precondition(format!(
            "scenario size bound must be in 1..={n}, got {r_max}"
        )));
    }
    let mut rng = rng_for(seed);
    let proc: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=p_max)).collect();
    let scenarios: Vec<Vec<usize>> = (0..k)
        .map(|_| {
            let size = rng.gen_range(1..=r_max);
            sample_scenario(&mut rng, n, size)
        })
        .collect();
    Instance::new(proc, scenarios)
}

/// Random instance whose scenarios all have exactly two jobs.
pub fn gen_pairs(n: usize, k: usize, p_max: u64, seed: u64) -> Result<Instance> {
    if n < 2 {
        return Err(Error::precondition("pair generator requires n >= 2"));
    }
    let mut rng = rng_for(seed);
    let proc: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=p_max)).collect();
    let scenarios: Vec<Vec<usize>> = (0..k).map(|_| sample_scenario(&mut rng, n, 2)).collect();
    Instance::new(proc, scenarios)
}

/// Random instance whose scenarios all have exactly three jobs.
pub fn gen_triples(n: usize, k: usize, p_max: u64, seed: u64) -> Result<Instance> {
    if n < 3 {
        return Err(Error::precondition("triple generator requires n >= 3"));
    }
    let mut rng = rng_for(seed);
    let proc: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=p_max)).collect();
    let scenarios: Vec<Vec<usize>> = (0..k).map(|_| sample_scenario(&mut rng, n, 3)).collect();
    Instance::new(proc, scenarios)
}

/// Random unit-time instance with scenario sizes in `1..=r_max`.
pub fn gen_unit(n: usize, k: usize, r_max: usize, seed: u64) -> Result<Instance> {
    if n == 0 {
        return Err(Error::precondition("generator requires n >= 1"));
    }
    if r_max == 0 || r_max > n {
        return Err(Error::precondition(format!(
            "scenario size bound must be in 1..={n}, got {r_max}"
        )));
    }
    let mut rng = rng_for(seed);
    let scenarios: Vec<Vec<usize>> = (0..k)
        .map(|_| {
            let size = rng.gen_range(1..=r_max);
            sample_scenario(&mut rng, n, size)
        })
        .collect();
    Instance::new(vec![1; n], scenarios)
}

/// Random simple undirected graph with exactly `m` edges, for the max-cut
/// gadget.
pub fn gen_graph(n: usize, m: usize, seed: u64) -> Result<(usize, Vec<(usize, usize)>)> {
    let max_edges = n * n.saturating_sub(1) / 2;
    if m > max_edges {
        return Err(Error::precondition(format!(
            "{m} edges requested but {n} vertices allow at most {max_edges}"
        )));
    }
    let all_pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect();
    let mut rng = rng_for(seed);
    let mut picked: Vec<(usize, usize)> = rand::seq::index::sample(&mut rng, all_pairs.len(), m)
        .into_iter()
        .map(|i| all_pairs[i])
        .collect();
    picked.sort_unstable();
    Ok((n, picked))
}

/// Random family of three-element sets over objects `1..=objects`, for the
/// set-splitting gadget. Sets may repeat.
pub fn gen_triple_family(objects: usize, count: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if objects < 3 {
        return Err(Error::precondition("triple family requires at least 3 objects"));
    }
    let mut rng = rng_for(seed);
    Ok((0..count)
        .map(|_| sample_scenario(&mut rng, objects, 3))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_instances_are_valid_and_deterministic() {
        let a = gen_random(10, 6, 3, 9, 1).unwrap();
        let b = gen_random(10, 6, 3, 9, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.n(), 10);
        assert_eq!(a.k(), 6);
        assert!(a.r() <= 3);
        for s in a.scenarios() {
            assert!(!s.is_empty());
            let mut sorted = s.clone();
            sorted.dedup();
            assert_eq!(&sorted, s);
        }
        assert!(a.proc_times().iter().all(|&p| p <= 9));

        let c = gen_random(10, 6, 3, 9, 2).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn shaped_generators() {
        let pairs = gen_pairs(8, 12, 9, 7).unwrap();
        assert!(pairs.scenarios().iter().all(|s| s.len() == 2));

        let triples = gen_triples(8, 12, 9, 7).unwrap();
        assert!(triples.scenarios().iter().all(|s| s.len() == 3));

        let unit = gen_unit(8, 3, 4, 7).unwrap();
        assert!(unit.proc_times().iter().all(|&p| p == 1));
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(gen_random(0, 1, 1, 9, 0).is_err());
        assert!(gen_random(5, 1, 6, 9, 0).is_err());
        assert!(gen_pairs(1, 1, 9, 0).is_err());
        assert!(gen_triples(2, 1, 9, 0).is_err());
        assert!(gen_graph(3, 4, 0).is_err());
        assert!(gen_triple_family(2, 1, 0).is_err());
    }

    #[test]
    fn graph_generator_is_simple() {
        let (n, edges) = gen_graph(6, 9, 3).unwrap();
        assert_eq!(n, 6);
        assert_eq!(edges.len(), 9);
        let set: std::collections::HashSet<_> = edges.iter().collect();
        assert_eq!(set.len(), edges.len());
        assert!(edges.iter().all(|&(u, v)| u < v && v <= 6));
    }
}
