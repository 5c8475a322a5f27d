//! Reduction from minsum scheduling to weighted not-all-equal SAT.
//!
//! Every job becomes a variable (true = machine 1). After padding all
//! scenarios to a common size `r` with zero-time dummy jobs, each scenario
//! `S` yields `N = 2^(r-1)` clauses, one per unordered two-way partition
//! `{A, comp(A)}` of `S`: the `A`-side variables appear positive, the others
//! negated. A clause is satisfied when its literals are not all equal, so
//! any assignment leaves exactly one clause per scenario unsatisfied — the
//! clause matching the induced partition. Base weights are chosen so that
//! the satisfied weight of a scenario equals the load of its least loaded
//! machine; a per-scenario shift `K(S)` restores nonnegativity.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::{format_rational, parse_rational, Rational};

/// Default cap on the padded scenario size; the clause count per scenario
/// is `2^(r-1)`.
pub const DEFAULT_NAE_R_CAP: usize = 6;

/// One weighted not-all-equal clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaeClause {
    /// 0-based index of the originating scenario.
    pub scenario: usize,
    /// Signed 1-based variable ids; negative means negated. The partition
    /// side containing the lowest job id comes first, non-negated.
    pub literals: Vec<i64>,
    /// Base weight; may be negative.
    pub w: Rational,
    /// `w + K(S)`, always nonnegative.
    pub w_shifted: Rational,
}

impl NaeClause {
    /// Not-all-equal satisfaction: the literals take both truth values.
    pub fn satisfied(&self, truth: &[bool]) -> bool {
        let mut any_true = false;
        let mut any_false = false;
        for &lit in &self.literals {
            let var = truth[lit.unsigned_abs() as usize - 1];
            let value = if lit > 0 { var } else { !var };
            if value {
                any_true = true;
            } else {
                any_false = true;
            }
        }
        any_true && any_false
    }
}

/// The clause system produced by [`to_nae_sat`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseSet {
    /// Common (padded) scenario size; 0 when the instance has no scenarios.
    pub r: usize,
    /// Total variables: real jobs first, then zero-time dummies.
    pub num_vars: usize,
    /// Number of real job variables.
    pub num_real_vars: usize,
    /// Clauses grouped by scenario, `2^(r-1)` per scenario, in canonical
    /// partition order.
    pub clauses: Vec<NaeClause>,
    /// Per-scenario shift `K(S)`.
    pub shifts: Vec<Rational>,
}

impl ClauseSet {
    /// Clauses per scenario.
    pub fn clauses_per_scenario(&self) -> usize {
        if self.r == 0 {
            0
        } else {
            1 << (self.r - 1)
        }
    }

    /// Per-scenario `(satisfied base weight, satisfied shifted weight)`.
    pub fn satisfied_by_scenario(&self, truth: &[bool]) -> Vec<(Rational, Rational)> {
        let mut acc = vec![(Rational::from_integer(0), Rational::from_integer(0)); self.shifts.len()];
        for c in &self.clauses {
            if c.satisfied(truth) {
                acc[c.scenario].0 += c.w;
                acc[c.scenario].1 += c.w_shifted;
            }
        }
        acc
    }

    /// Total satisfied shifted weight, the quantity the SAT solvers maximize.
    pub fn satisfied_shifted_weight(&self, truth: &[bool]) -> Rational {
        self.clauses
            .iter()
            .filter(|c| c.satisfied(truth))
            .map(|c| c.w_shifted)
            .sum()
    }

    /// Per-scenario count of satisfied clauses.
    pub fn satisfied_counts(&self, truth: &[bool]) -> Vec<usize> {
        let mut counts = vec![0usize; self.shifts.len()];
        for c in &self.clauses {
            if c.satisfied(truth) {
                counts[c.scenario] += 1;
            }
        }
        counts
    }

    /// Serializes as DIMACS-like text: a header comment, a `c scenario <id>`
    /// comment per scenario (1-based), then one
    /// `nae <w_shifted as num/den> <±var> ... 0` line per clause.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "c nae r {} vars {} real {}\n",
            self.r, self.num_vars, self.num_real_vars
        );
        let mut current = usize::MAX;
        for c in &self.clauses {
            if c.scenario != current {
                current = c.scenario;
                out.push_str(&format!("c scenario {}\n", c.scenario + 1));
            }
            out.push_str(&format!("nae {}", format_rational(&c.w_shifted)));
            for &lit in &c.literals {
                out.push_str(&format!(" {lit}"));
            }
            out.push_str(" 0\n");
        }
        out
    }
}

/// Clause text as re-read from disk. Base weights and shifts are not part
/// of the wire format, so only shifted weights are populated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedClauseSet {
    pub r: usize,
    pub num_vars: usize,
    pub num_real_vars: usize,
    /// `(scenario index, shifted weight, literals)` in file order.
    pub clauses: Vec<(usize, Rational, Vec<i64>)>,
}

impl ParsedClauseSet {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "c nae r {} vars {} real {}\n",
            self.r, self.num_vars, self.num_real_vars
        );
        let mut current = usize::MAX;
        for (scenario, w, lits) in &self.clauses {
            if *scenario != current {
                current = *scenario;
                out.push_str(&format!("c scenario {}\n", scenario + 1));
            }
            out.push_str(&format!("nae {}", format_rational(w)));
            for lit in lits {
                out.push_str(&format!(" {lit}"));
            }
            out.push_str(" 0\n");
        }
        out
    }
}

/// Parses the text form produced by [`ClauseSet::to_text`].
pub fn parse_clause_set(text: &str) -> Result<ParsedClauseSet> {
    let mut parsed = ParsedClauseSet {
        r: 0,
        num_vars: 0,
        num_real_vars: 0,
        clauses: Vec::new(),
    };
    let mut scenario = None;
    let mut saw_header = false;
    for (line_no, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())) {
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "c" if toks.get(1) == Some(&"nae") => {
                if toks.len() != 8 || toks[2] != "r" || toks[4] != "vars" || toks[6] != "real" {
                    return Err(Error::parse(line_no, "malformed nae header"));
                }
                parsed.r = toks[3].parse().map_err(|_| Error::parse(line_no, "malformed nae header"))?;
                parsed.num_vars = toks[5].parse().map_err(|_| Error::parse(line_no, "malformed nae header"))?;
                parsed.num_real_vars = toks[7].parse().map_err(|_| Error::parse(line_no, "malformed nae header"))?;
                saw_header = true;
            }
            "c" if toks.get(1) == Some(&"scenario") => {
                let id: usize = toks
                    .get(2)
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::parse(line_no, "malformed scenario comment"))?;
                if id == 0 {
                    return Err(Error::parse(line_no, "scenario ids are 1-based"));
                }
                scenario = Some(id - 1);
            }
            "c" => {} // free-form comment
            "nae" => {
                let scenario = scenario
                    .ok_or_else(|| Error::parse(line_no, "clause before any `c scenario` comment"))?;
                if toks.len() < 3 || *toks.last().unwrap() != "0" {
                    return Err(Error::parse(line_no, "clause must end with 0"));
                }
                let w = parse_rational(toks[1])
                    .ok_or_else(|| Error::parse(line_no, "malformed clause weight"))?;
                let mut lits = Vec::with_capacity(toks.len() - 3);
                for tok in &toks[2..toks.len() - 1] {
                    let lit: i64 = tok
                        .parse()
                        .map_err(|_| Error::parse(line_no, format!("malformed literal `{tok}`")))?;
                    if lit == 0 || lit.unsigned_abs() as usize > parsed.num_vars {
                        return Err(Error::parse(line_no, format!("literal out of range `{lit}`")));
                    }
                    lits.push(lit);
                }
                parsed.clauses.push((scenario, w, lits));
            }
            other => {
                return Err(Error::parse(line_no, format!("unexpected token `{other}`")));
            }
        }
    }
    if !saw_header {
        return Err(Error::parse(0, "missing nae header"));
    }
    Ok(parsed)
}

/// Sum over all unordered partitions `{B, comp(B)}` of `min(p(B), p(comp(B)))`.
fn partition_min_sum(times: &[u64]) -> u128 {
    let r = times.len();
    let total: u64 = times.iter().sum();
    let mut sum: u128 = 0;
    // anchoring position 0 in B enumerates each unordered partition once
    for mask in 0..(1u64 << (r - 1)) {
        let b_mask = mask << 1 | 1;
        let mut p_b = 0u64;
        for (i, &p) in times.iter().enumerate() {
            if b_mask >> i & 1 == 1 {
                p_b += p;
            }
        }
        sum += p_b.min(total - p_b) as u128;
    }
    sum
}

/// Base clause weight for the partition of a padded scenario selected by
/// `a_mask` (bit `i` set puts the `i`-th scenario member in `A`):
/// `sum_over_partitions(min) / (N - 1) - min(p(A), p(comp(A)))`.
pub fn nae_base_weight(times: &[u64], a_mask: u64) -> Rational {
    let r = times.len();
    let n_clauses: u64 = 1 << (r - 1);
    let total: u64 = times.iter().sum();
    let mut p_a = 0u64;
    for (i, &p) in times.iter().enumerate() {
        if a_mask >> i & 1 == 1 {
            p_a += p;
        }
    }
    let min_a = p_a.min(total - p_a) as i128;
    if n_clauses == 1 {
        // single-clause scenario: the defining identity pins nothing, and
        // the satisfied weight must be 0, so the weight is 0
        return Rational::from_integer(0);
    }
    Rational::new(partition_min_sum(times) as i128, (n_clauses - 1) as i128)
        - Rational::from_integer(min_a)
}

/// Nonnegativity shift `K(S) = (1/4) * (N-2)/(N-1) * p(S)` with
/// `N = 2^(|S|-1)`; zero for pair and singleton scenarios.
pub fn nae_shift(times: &[u64]) -> Rational {
    let r = times.len();
    let n_clauses: i128 = 1 << (r - 1);
    if n_clauses <= 2 {
        return Rational::from_integer(0);
    }
    let total: u64 = times.iter().sum();
    Rational::new((n_clauses - 2) * total as i128, 4 * (n_clauses - 1))
}

/// Builds the weighted clause system for `inst`. Scenarios are padded to
/// the maximum scenario size with fresh zero-time dummy variables numbered
/// above the real jobs; for every truth assignment the satisfied base
/// weight of a scenario equals the load of its least loaded machine.
pub fn to_nae_sat(inst: &Instance, r_cap: usize) -> Result<ClauseSet> {
    let r = inst.r();
    if r > r_cap {
        return Err(Error::CapExceeded {
            what: "not-all-equal clause width",
            actual: r,
            cap: r_cap,
        });
    }
    let n = inst.n();
    let mut next_dummy = n + 1;
    let mut clauses = Vec::new();
    let mut shifts = Vec::with_capacity(inst.k());

    for (scenario_idx, scenario) in inst.scenarios().iter().enumerate() {
        let mut members = scenario.clone();
        while members.len() < r {
            members.push(next_dummy);
            next_dummy += 1;
        }
        let times: Vec<u64> = members
            .iter()
            .map(|&j| if j <= n { inst.proc_time(j) } else { 0 })
            .collect();
        let shift = nae_shift(&times);
        shifts.push(shift);

        let n_clauses: u64 = 1 << (r - 1);
        for mask in 0..n_clauses {
            let a_mask = mask << 1 | 1; // member 0 (lowest id) anchors side A
            let w = nae_base_weight(&times, a_mask);
            let w_shifted = w + shift;
            debug_assert!(w_shifted >= Rational::from_integer(0));

            let mut literals = Vec::with_capacity(r);
            for (i, &job) in members.iter().enumerate() {
                if a_mask >> i & 1 == 1 {
                    literals.push(job as i64);
                }
            }
            for (i, &job) in members.iter().enumerate() {
                if a_mask >> i & 1 == 0 {
                    literals.push(-(job as i64));
                }
            }
            clauses.push(NaeClause {
                scenario: scenario_idx,
                literals,
                w,
                w_shifted,
            });
        }
    }

    Ok(ClauseSet {
        r,
        num_vars: next_dummy - 1,
        num_real_vars: n,
        clauses,
        shifts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_weight_four_unit_jobs() {
        let times = [1u64, 1, 1, 1];
        // balanced 2|2 partition: 10/7 - 2 = -4/7
        assert_eq!(nae_base_weight(&times, 0b0011), Rational::new(-4, 7));
        // 1|3 split: 10/7 - 1 = 3/7
        assert_eq!(nae_base_weight(&times, 0b0001), Rational::new(3, 7));
    }

    #[test]
    fn base_weight_zero_times() {
        assert_eq!(nae_base_weight(&[0, 0, 0], 0b001), Rational::from_integer(0));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(nae_shift(&[1, 1, 1, 1]), Rational::new(6, 7));
        assert_eq!(
            nae_base_weight(&[1, 1, 1, 1], 0b0011) + nae_shift(&[1, 1, 1, 1]),
            Rational::new(2, 7)
        );
        // pair scenarios need no shift
        assert_eq!(nae_shift(&[3, 5]), Rational::from_integer(0));
        // zero-time scenarios shift by nothing
        assert_eq!(nae_shift(&[0, 0, 0, 0]), Rational::from_integer(0));
    }

    #[test]
    fn pair_scenario_clauses() {
        let inst = Instance::new(vec![3, 1], vec![vec![1, 2]]).unwrap();
        let cs = to_nae_sat(&inst, DEFAULT_NAE_R_CAP).unwrap();
        assert_eq!(cs.clauses.len(), 2);
        assert_eq!(cs.num_vars, 2);
        // canonical partition order: {1}|{2} first, then {1,2}|{}
        assert_eq!(cs.clauses[0].literals, vec![1, -2]);
        assert_eq!(cs.clauses[0].w, Rational::from_integer(0));
        assert_eq!(cs.clauses[1].literals, vec![1, 2]);
        assert_eq!(cs.clauses[1].w, Rational::from_integer(1));

        // satisfied base weight = least load, over all four assignments
        for truth in [[false, false], [false, true], [true, false], [true, true]] {
            let per = cs.satisfied_by_scenario(&truth);
            let least = if truth[0] == truth[1] { 0 } else { 1 };
            assert_eq!(per[0].0, Rational::from_integer(least));
        }
    }

    #[test]
    fn clause_count_follows_padded_width() {
        let inst =
            Instance::new(vec![2, 1, 1], vec![vec![1, 2, 3], vec![2, 3], vec![2, 3]]).unwrap();
        let cs = to_nae_sat(&inst, DEFAULT_NAE_R_CAP).unwrap();
        assert_eq!(cs.r, 3);
        assert_eq!(cs.clauses_per_scenario(), 4);
        assert_eq!(cs.clauses.len(), 12);
        // scenarios 2 and 3 each gained one dummy variable
        assert_eq!(cs.num_vars, 5);
        assert_eq!(cs.num_real_vars, 3);
    }

    #[test]
    fn all_true_assignment_satisfies_weight_zero() {
        let inst =
            Instance::new(vec![2, 1, 1], vec![vec![1, 2, 3], vec![2, 3], vec![2, 3]]).unwrap();
        let cs = to_nae_sat(&inst, DEFAULT_NAE_R_CAP).unwrap();
        let truth = vec![true; cs.num_vars];
        for (w_sat, _) in cs.satisfied_by_scenario(&truth) {
            assert_eq!(w_sat, Rational::from_integer(0));
        }
    }

    #[test]
    fn exactly_all_but_one_clause_satisfied() {
        let inst =
            Instance::new(vec![2, 1, 1], vec![vec![1, 2, 3], vec![2, 3], vec![2, 3]]).unwrap();
        let cs = to_nae_sat(&inst, DEFAULT_NAE_R_CAP).unwrap();
        let per_scenario = cs.clauses_per_scenario();
        for bits in 0..(1u32 << cs.num_vars) {
            let truth: Vec<bool> = (0..cs.num_vars).map(|i| bits >> i & 1 == 1).collect();
            for count in cs.satisfied_counts(&truth) {
                assert_eq!(count, per_scenario - 1);
            }
        }
    }

    #[test]
    fn singleton_scenarios_have_zero_weights() {
        let inst = Instance::new(vec![5], vec![vec![1]]).unwrap();
        let cs = to_nae_sat(&inst, DEFAULT_NAE_R_CAP).unwrap();
        assert_eq!(cs.clauses.len(), 1);
        assert_eq!(cs.clauses[0].w, Rational::from_integer(0));
        assert_eq!(cs.shifts[0], Rational::from_integer(0));
        // a one-literal clause is never not-all-equal
        assert!(!cs.clauses[0].satisfied(&[true]));
        assert!(!cs.clauses[0].satisfied(&[false]));
    }

    #[test]
    fn width_cap_enforced() {
        let inst = Instance::new(vec![1; 7], vec![(1..=7).collect()]).unwrap();
        assert!(matches!(
            to_nae_sat(&inst, DEFAULT_NAE_R_CAP),
            Err(Error::CapExceeded { actual: 7, cap: 6, .. })
        ));
    }

    #[test]
    fn text_round_trip() {
        let inst =
            Instance::new(vec![2, 1, 1], vec![vec![1, 2, 3], vec![2, 3], vec![2, 3]]).unwrap();
        let cs = to_nae_sat(&inst, DEFAULT_NAE_R_CAP).unwrap();
        let text = cs.to_text();
        let parsed = parse_clause_set(&text).unwrap();
        assert_eq!(parsed.to_text(), text);
        assert_eq!(parsed.clauses.len(), cs.clauses.len());
        assert_eq!(parsed.num_vars, cs.num_vars);
    }
}
