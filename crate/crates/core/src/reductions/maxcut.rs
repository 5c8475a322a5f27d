//! Reduction from minsum scheduling with scenarios of at most three jobs to
//! weighted max-cut.
//!
//! Jobs become vertices. A two-job scenario `{i,j}` contributes one edge of
//! weight `min(p_i, p_j)`. A three-job scenario `{i,j,k}` contributes the
//! triangle `{i,j}, {i,k}, {j,k}` with weights solving
//!
//! ```text
//! w(i,j) + w(i,k) = b_i
//! w(i,j) + w(j,k) = b_j
//! w(i,k) + w(j,k) = b_k
//! ```
//!
//! where `b_v` is the least-loaded-machine load when `v` sits alone against
//! the other two. Any cut then crosses zero or exactly two of a scenario's
//! edges, and its weight equals the total least-loaded load over scenarios,
//! so maximizing the cut minimizes the sum of makespans.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::{format_rational, parse_rational, Rational};

/// A weighted undirected edge; multi-edges from duplicate scenarios are kept
/// as separate entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutEdge {
    pub u: usize,
    pub v: usize,
    pub weight: Rational,
}

/// Construction bookkeeping for one three-job scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioTriple {
    /// 0-based scenario index.
    pub scenario: usize,
    pub jobs: [usize; 3],
    /// `b_v = min(p_v, p(S) - p_v)` per job, in `jobs` order.
    pub b: [u64; 3],
    /// Indices into [`CutGraph::edges`] of the triangle edges
    /// `{jobs[0],jobs[1]}, {jobs[0],jobs[2]}, {jobs[1],jobs[2]}`.
    pub edge_indices: [usize; 3],
}

/// Weighted multigraph over the job set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutGraph {
    /// Vertices are job ids `1..=n`.
    pub n: usize,
    pub edges: Vec<CutEdge>,
    pub triples: Vec<ScenarioTriple>,
}

impl CutGraph {
    pub fn total_weight(&self) -> Rational {
        self.edges.iter().map(|e| e.weight).sum()
    }

    /// Weight crossing the cut given by `in_left` (1-based lookup via
    /// `in_left[v - 1]`).
    pub fn cut_weight(&self, in_left: &[bool]) -> Rational {
        self.edges
            .iter()
            .filter(|e| in_left[e.u - 1] != in_left[e.v - 1])
            .map(|e| e.weight)
            .sum()
    }

    /// Serializes as a `c maxcut vertices <n>` header followed by one
    /// `e <u> <v> <num/den>` line per edge.
    pub fn to_text(&self) -> String {
        let mut out = format!("c maxcut vertices {}\n", self.n);
        for e in &self.edges {
            out.push_str(&format!(
                "e {} {} {}\n",
                e.u,
                e.v,
                format_rational(&e.weight)
            ));
        }
        out
    }
}

/// Parses the text form produced by [`CutGraph::to_text`]. Construction
/// bookkeeping is not part of the wire format, so `triples` comes back
/// empty.
pub fn parse_cut_graph(text: &str) -> Result<CutGraph> {
    let mut n = None;
    let mut edges = Vec::new();
    for (line_no, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())) {
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "c" if toks.get(1) == Some(&"maxcut") => {
                if toks.len() != 4 || toks[2] != "vertices" {
                    return Err(Error::parse(line_no, "malformed maxcut header"));
                }
                n = Some(
                    toks[3]
                        .parse()
                        .map_err(|_| Error::parse(line_no, "malformed maxcut header"))?,
                );
            }
            "c" => {}
            "e" => {
                let n = n.ok_or_else(|| Error::parse(line_no, "edge before maxcut header"))?;
                if toks.len() != 4 {
                    return Err(Error::parse(line_no, "malformed edge line"));
                }
                let u: usize = toks[1]
                    .parse()
                    .map_err(|_| Error::parse(line_no, "malformed edge endpoint"))?;
                let v: usize = toks[2]
                    .parse()
                    .map_err(|_| Error::parse(line_no, "malformed edge endpoint"))?;
                if u < 1 || u > n || v < 1 || v > n {
                    return Err(Error::parse(line_no, "edge endpoint out of range"));
                }
                let weight = parse_rational(toks[3])
                    .ok_or_else(|| Error::parse(line_no, "malformed edge weight"))?;
                edges.push(CutEdge { u, v, weight });
            }
            other => return Err(Error::parse(line_no, format!("unexpected token `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| Error::parse(0, "missing maxcut header"))?;
    Ok(CutGraph {
        n,
        edges,
        triples: Vec::new(),
    })
}

/// Builds the weighted max-cut graph for an instance whose scenarios all
/// have at most three jobs. Singleton scenarios contribute no edges.
pub fn to_maxcut3(inst: &Instance) -> Result<CutGraph> {
    let mut edges = Vec::new();
    let mut triples = Vec::new();
    for (idx, s) in inst.scenarios().iter().enumerate() {
        match s.len() {
            1 => {}
            2 => {
                let (i, j) = (s[0], s[1]);
                let weight =
                    Rational::from_integer(inst.proc_time(i).min(inst.proc_time(j)) as i128);
                edges.push(CutEdge { u: i, v: j, weight });
            }
            3 => {
                let jobs = [s[0], s[1], s[2]];
                let p: Vec<u64> = jobs.iter().map(|&j| inst.proc_time(j)).collect();
                let total: u64 = p.iter().sum();
                let b = [
                    p[0].min(total - p[0]),
                    p[1].min(total - p[1]),
                    p[2].min(total - p[2]),
                ];
                // w(e) = (b_i + b_j + b_k)/2 - b_v, v opposite e
                let half_sum = Rational::new(b.iter().map(|&x| x as i128).sum(), 2);
                let w = [
                    half_sum - Rational::from_integer(b[2] as i128),
                    half_sum - Rational::from_integer(b[1] as i128),
                    half_sum - Rational::from_integer(b[0] as i128),
                ];
                debug_assert!(w.iter().all(|x| *x >= Rational::from_integer(0)));
                let base = edges.len();
                edges.push(CutEdge { u: jobs[0], v: jobs[1], weight: w[0] });
                edges.push(CutEdge { u: jobs[0], v: jobs[2], weight: w[1] });
                edges.push(CutEdge { u: jobs[1], v: jobs[2], weight: w[2] });
                triples.push(ScenarioTriple {
                    scenario: idx,
                    jobs,
                    b,
                    edge_indices: [base, base + 1, base + 2],
                });
            }
            len => {
                return Err(Error::precondition(format!(
                    "max-cut reduction requires scenarios of at most 3 jobs, scenario {} has {len}",
                    idx + 1
                )));
            }
        }
    }
    Ok(CutGraph {
        n: inst.n(),
        edges,
        triples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Assignment;

    #[test]
    fn unit_triple_edges() {
        let inst = Instance::new(vec![1, 1, 1], vec![vec![1, 2, 3]]).unwrap();
        let g = to_maxcut3(&inst).unwrap();
        assert_eq!(g.edges.len(), 3);
        for e in &g.edges {
            assert_eq!(e.weight, Rational::new(1, 2));
        }
        // any nontrivial cut crosses two edges: weight 1 = least load
        assert_eq!(g.cut_weight(&[true, false, false]), Rational::from_integer(1));
        assert_eq!(g.cut_weight(&[true, true, true]), Rational::from_integer(0));
    }

    #[test]
    fn pair_scenario_edge_weight_is_min_time() {
        let inst = Instance::new(vec![3, 1], vec![vec![1, 2]]).unwrap();
        let g = to_maxcut3(&inst).unwrap();
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.edges[0].weight, Rational::from_integer(1));
    }

    #[test]
    fn skewed_triple_weights() {
        let inst = Instance::new(vec![5, 1, 1], vec![vec![1, 2, 3]]).unwrap();
        let g = to_maxcut3(&inst).unwrap();
        let t = &g.triples[0];
        assert_eq!(t.b, [2, 1, 1]);
        // edge order: {1,2}, {1,3}, {2,3}
        assert_eq!(g.edges[0].weight, Rational::from_integer(1));
        assert_eq!(g.edges[1].weight, Rational::from_integer(1));
        assert_eq!(g.edges[2].weight, Rational::from_integer(0));
    }

    #[test]
    fn triple_weights_solve_the_b_system() {
        let inst = Instance::new(vec![4, 7, 2, 9], vec![vec![1, 2, 3], vec![2, 3, 4]]).unwrap();
        let g = to_maxcut3(&inst).unwrap();
        for t in &g.triples {
            let [eij, eik, ejk] = t.edge_indices;
            let w_ij = g.edges[eij].weight;
            let w_ik = g.edges[eik].weight;
            let w_jk = g.edges[ejk].weight;
            assert_eq!(w_ij + w_ik, Rational::from_integer(t.b[0] as i128));
            assert_eq!(w_ij + w_jk, Rational::from_integer(t.b[1] as i128));
            assert_eq!(w_ik + w_jk, Rational::from_integer(t.b[2] as i128));
            for idx in t.edge_indices {
                assert!(g.edges[idx].weight >= Rational::from_integer(0));
            }
        }
    }

    #[test]
    fn rejects_scenarios_larger_than_three() {
        let inst = Instance::new(vec![1; 4], vec![vec![1, 2, 3, 4]]).unwrap();
        assert!(matches!(to_maxcut3(&inst), Err(Error::Precondition(_))));
    }

    #[test]
    fn cut_weight_equals_total_least_load() {
        let inst = Instance::new(
            vec![2, 1, 1, 3],
            vec![vec![1, 2, 3], vec![2, 3], vec![1, 4], vec![4]],
        )
        .unwrap();
        let g = to_maxcut3(&inst).unwrap();
        for mask in 0..(1u64 << inst.n()) {
            let in_left: Vec<bool> = (0..inst.n()).map(|i| mask >> i & 1 == 1).collect();
            let a = Assignment::from_m1_mask(inst.n(), mask);
            let least: u64 = (0..inst.k())
                .map(|i| inst.scenario_loads(&a, i).least())
                .sum();
            assert_eq!(g.cut_weight(&in_left), Rational::from_integer(least as i128));
        }
    }

    #[test]
    fn text_round_trip() {
        let inst = Instance::new(vec![5, 1, 1], vec![vec![1, 2, 3], vec![1, 2]]).unwrap();
        let g = to_maxcut3(&inst).unwrap();
        let text = g.to_text();
        let parsed = parse_cut_graph(&text).unwrap();
        assert_eq!(parsed.to_text(), text);
        assert_eq!(parsed.n, g.n);
        assert_eq!(parsed.edges, g.edges);
    }
}
