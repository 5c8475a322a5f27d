//! Job/scenario instance model, assignments, and objective evaluation.
//!
//! An instance is a set of jobs `1..=n` with nonnegative integer processing
//! times and a list of scenarios, each a nonempty subset of the jobs. An
//! assignment places every job on one of two machines and is fixed across
//! all scenarios. The two objectives are the maximum scenario makespan
//! (`MinMax`) and the sum of scenario makespans (`MinSum`).

use crate::error::{Error, Result};

/// One of the two machines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Machine {
    M1,
    M2,
}

impl Machine {
    pub fn other(self) -> Machine {
        match self {
            Machine::M1 => Machine::M2,
            Machine::M2 => Machine::M1,
        }
    }
}

/// Which objective to optimize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    /// Minimize the maximum makespan over all scenarios.
    MinMax,
    /// Minimize the sum of makespans over all scenarios.
    MinSum,
}

impl std::fmt::Display for Objective {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Objective::MinMax => write!(f, "minmax"),
            Objective::MinSum => write!(f, "minsum"),
        }
    }
}

impl std::str::FromStr for Objective {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "minmax" => Ok(Objective::MinMax),
            "minsum" => Ok(Objective::MinSum),
            other => Err(format!("unknown objective `{other}` (minmax|minsum)")),
        }
    }
}

/// Machine loads of one scenario under an assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoadPair {
    pub load1: u64,
    pub load2: u64,
}

impl LoadPair {
    /// Completion time of the scenario: the larger load.
    pub fn makespan(self) -> u64 {
        self.load1.max(self.load2)
    }

    /// Load of the least loaded machine.
    pub fn least(self) -> u64 {
        self.load1.min(self.load2)
    }
}

/// A total two-way partition of the job set, fixed across scenarios.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    side: Vec<Machine>,
}

impl Assignment {
    pub fn new(side: Vec<Machine>) -> Self {
        Assignment { side }
    }

    /// All `n` jobs on the given machine.
    pub fn uniform(n: usize, m: Machine) -> Self {
        Assignment { side: vec![m; n] }
    }

    /// Jobs listed in `m1` go to machine 1, all others to machine 2.
    /// Job ids are 1-based and must be in `1..=n`.
    pub fn from_m1_jobs(n: usize, m1: &[usize]) -> Self {
        let mut side = vec![Machine::M2; n];
        for &j in m1 {
            side[j - 1] = Machine::M1;
        }
        Assignment { side }
    }

    /// Bit `j-1` of `mask` set means job `j` goes to machine 1.
    pub fn from_m1_mask(n: usize, mask: u64) -> Self {
        let side = (0..n)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    Machine::M1
                } else {
                    Machine::M2
                }
            })
            .collect();
        Assignment { side }
    }

    pub fn len(&self) -> usize {
        self.side.len()
    }

    pub fn is_empty(&self) -> bool {
        self.side.is_empty()
    }

    /// Machine of job `j` (1-based).
    pub fn machine_of(&self, j: usize) -> Machine {
        self.side[j - 1]
    }

    /// Job ids assigned to machine `m`, ascending.
    pub fn jobs_on(&self, m: Machine) -> Vec<usize> {
        self.side
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == m)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Assignment with the two machines exchanged.
    pub fn swapped(&self) -> Assignment {
        Assignment {
            side: self.side.iter().map(|s| s.other()).collect(),
        }
    }

    /// `'1'`/`'2'` per job in id order; the tie-break key used by the
    /// exhaustive solvers.
    pub fn canonical_string(&self) -> String {
        self.side
            .iter()
            .map(|s| match s {
                Machine::M1 => '1',
                Machine::M2 => '2',
            })
            .collect()
    }
}

/// A scheduling-over-scenarios instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    proc: Vec<u64>,
    scenarios: Vec<Vec<usize>>,
}

impl Instance {
    /// Validates and normalizes: scenario members are sorted ascending,
    /// must be distinct, nonempty, and in `1..=n`; the worst-case total
    /// load `p(J) * k` must fit in 64 bits.
    pub fn new(proc: Vec<u64>, scenarios: Vec<Vec<usize>>) -> Result<Instance> {
        let n = proc.len();
        let mut normalized = Vec::with_capacity(scenarios.len());
        for s in scenarios {
            if s.is_empty() {
                return Err(Error::precondition("empty scenario"));
            }
            let mut s = s;
            s.sort_unstable();
            for w in s.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::precondition(format!(
                        "duplicate job id {} in scenario",
                        w[0]
                    )));
                }
            }
            if s[0] < 1 || *s.last().unwrap() > n {
                return Err(Error::precondition("job id out of range"));
            }
            normalized.push(s);
        }
        let inst = Instance {
            proc,
            scenarios: normalized,
        };
        if inst.total_time_bound().is_none() {
            return Err(Error::precondition("total load p(J) * k overflows 64 bits"));
        }
        Ok(inst)
    }

    /// `p(J) * k`, an upper bound on any objective value, or `None` on overflow.
    fn total_time_bound(&self) -> Option<u64> {
        let mut total: u64 = 0;
        for &p in &self.proc {
            total = total.checked_add(p)?;
        }
        total.checked_mul(self.scenarios.len().max(1) as u64)
    }

    pub fn n(&self) -> usize {
        self.proc.len()
    }

    pub fn k(&self) -> usize {
        self.scenarios.len()
    }

    /// Largest scenario size, 0 when there are no scenarios.
    pub fn r(&self) -> usize {
        self.scenarios.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    /// Processing time of job `j` (1-based).
    pub fn proc_time(&self, j: usize) -> u64 {
        self.proc[j - 1]
    }

    pub fn proc_times(&self) -> &[u64] {
        &self.proc
    }

    pub fn scenarios(&self) -> &[Vec<usize>] {
        &self.scenarios
    }

    pub fn scenario(&self, idx: usize) -> &[usize] {
        &self.scenarios[idx]
    }

    /// Total processing time of the jobs in scenario `idx`.
    pub fn scenario_total(&self, idx: usize) -> u64 {
        self.scenarios[idx].iter().map(|&j| self.proc_time(j)).sum()
    }

    /// Per-machine loads of scenario `idx` under `a`.
    pub fn scenario_loads(&self, a: &Assignment, idx: usize) -> LoadPair {
        let mut load1 = 0;
        let mut load2 = 0;
        for &j in &self.scenarios[idx] {
            match a.machine_of(j) {
                Machine::M1 => load1 += self.proc_time(j),
                Machine::M2 => load2 += self.proc_time(j),
            }
        }
        LoadPair { load1, load2 }
    }

    /// Maximum scenario makespan under `a`; 0 when there are no scenarios.
    pub fn eval_minmax(&self, a: &Assignment) -> u64 {
        (0..self.k())
            .map(|i| self.scenario_loads(a, i).makespan())
            .max()
            .unwrap_or(0)
    }

    /// Sum of scenario makespans under `a`.
    pub fn eval_minsum(&self, a: &Assignment) -> u64 {
        (0..self.k())
            .map(|i| self.scenario_loads(a, i).makespan())
            .sum()
    }

    pub fn eval(&self, a: &Assignment, obj: Objective) -> u64 {
        match obj {
            Objective::MinMax => self.eval_minmax(a),
            Objective::MinSum => self.eval_minsum(a),
        }
    }

    /// Bitmask of scenario `idx` members (bit `j-1` for job `j`).
    /// Only valid for `n <= 64`.
    pub fn scenario_mask(&self, idx: usize) -> u64 {
        self.scenarios[idx]
            .iter()
            .fold(0u64, |m, &j| m | 1 << (j - 1))
    }
}

/// Parses the line-oriented instance format:
///
/// ```text
/// jobs <n>
/// p <p_1> ... <p_n>
/// scenarios <k>
/// S <id> <id> ...     (k lines, 1-based job ids)
/// ```
///
/// Lines starting with `#` are comments; blank lines are ignored.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let mut next = |expect: &str| -> Result<(usize, Vec<&str>)> {
        match lines.next() {
            Some((line_no, line)) => Ok((line_no, line.split_whitespace().collect())),
            None => Err(Error::parse(0, format!("unexpected end of input, expected `{expect}`"))),
        }
    };

    let (line_no, toks) = next("jobs <n>")?;
    if toks.len() != 2 || toks[0] != "jobs" {
        return Err(Error::parse(line_no, "malformed header, expected `jobs <n>`"));
    }
    let n: usize = toks[1]
        .parse()
        .map_err(|_| Error::parse(line_no, "malformed header, expected `jobs <n>`"))?;

    let (line_no, toks) = next("p <times>")?;
    if toks.is_empty() || toks[0] != "p" {
        return Err(Error::parse(line_no, "malformed header, expected `p <times>`"));
    }
    if toks.len() != n + 1 {
        return Err(Error::parse(
            line_no,
            format!("expected {} processing times, found {}", n, toks.len() - 1),
        ));
    }
    let mut proc = Vec::with_capacity(n);
    for tok in &toks[1..] {
        let p: u64 = tok.parse().map_err(|_| {
            if tok.starts_with('-') {
                Error::parse(line_no, format!("negative time `{tok}`"))
            } else {
                Error::parse(line_no, format!("malformed processing time `{tok}`"))
            }
        })?;
        proc.push(p);
    }

    let (line_no, toks) = next("scenarios <k>")?;
    if toks.len() != 2 || toks[0] != "scenarios" {
        return Err(Error::parse(
            line_no,
            "malformed header, expected `scenarios <k>`",
        ));
    }
    let k: usize = toks[1]
        .parse()
        .map_err(|_| Error::parse(line_no, "malformed header, expected `scenarios <k>`"))?;

    let mut scenarios = Vec::with_capacity(k);
    for _ in 0..k {
        let (line_no, toks) = next("S <ids>")?;
        if toks.is_empty() || toks[0] != "S" {
            return Err(Error::parse(line_no, "malformed scenario line, expected `S <ids>`"));
        }
        if toks.len() == 1 {
            return Err(Error::parse(line_no, "empty scenario"));
        }
        let mut ids = Vec::with_capacity(toks.len() - 1);
        for tok in &toks[1..] {
            let id: usize = tok
                .parse()
                .map_err(|_| Error::parse(line_no, format!("malformed job id `{tok}`")))?;
            if id < 1 || id > n {
                return Err(Error::parse(
                    line_no,
                    format!("job id out of range: {id} not in 1..={n}"),
                ));
            }
            if ids.contains(&id) {
                return Err(Error::parse(
                    line_no,
                    format!("duplicate job id {id} in scenario"),
                ));
            }
            ids.push(id);
        }
        scenarios.push(ids);
    }

    if let Some((line_no, _)) = lines.next() {
        return Err(Error::parse(line_no, "trailing content after last scenario"));
    }

    Instance::new(proc, scenarios).map_err(|e| match e {
        Error::Precondition(msg) => Error::parse(0, msg),
        other => other,
    })
}

/// Canonical text form: field order as parsed, single spaces, sorted
/// scenario members, trailing newline.
pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::new();
    out.push_str(&format!("jobs {}\n", inst.n()));
    out.push('p');
    for &p in inst.proc_times() {
        out.push_str(&format!(" {p}"));
    }
    out.push('\n');
    out.push_str(&format!("scenarios {}\n", inst.k()));
    for s in inst.scenarios() {
        out.push('S');
        for &j in s {
            out.push_str(&format!(" {j}"));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The 3-job instance used as a running example: p = (2, 1, 1),
    /// scenarios {1,2,3}, {2,3}, {2,3}.
    pub(crate) fn three_job_example() -> Instance {
        Instance::new(vec![2, 1, 1], vec![vec![1, 2, 3], vec![2, 3], vec![2, 3]]).unwrap()
    }

    #[test]
    fn parse_three_job_example() {
        let text = "# two-machine example\njobs 3\np 2 1 1\nscenarios 3\nS 1 2 3\nS 2 3\nS 2 3\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.n(), 3);
        assert_eq!(inst.k(), 3);
        assert_eq!(inst.proc_times(), &[2, 1, 1]);
        assert_eq!(inst, three_job_example());
    }

    #[test]
    fn parse_minimal_instance() {
        let inst = parse_instance("jobs 1\np 4\nscenarios 1\nS 1\n").unwrap();
        assert_eq!(inst.n(), 1);
        assert_eq!(inst.k(), 1);
    }

    #[test]
    fn parse_rejects_out_of_range_job_id() {
        let err = parse_instance("jobs 3\np 1 1 1\nscenarios 1\nS 1 5\n").unwrap_err();
        match err {
            Error::Parse { line, msg } => {
                assert_eq!(line, 4);
                assert!(msg.contains("job id out of range"), "{msg}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_negative_time() {
        let err = parse_instance("jobs 2\np 3 -1\nscenarios 1\nS 1\n").unwrap_err();
        match err {
            Error::Parse { line, msg } => {
                assert_eq!(line, 2);
                assert!(msg.contains("negative time"), "{msg}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_empty_scenario() {
        let err = parse_instance("jobs 2\np 1 1\nscenarios 1\nS\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err:?}");
    }

    #[test]
    fn parse_rejects_duplicate_in_scenario() {
        let err = parse_instance("jobs 2\np 1 1\nscenarios 1\nS 1 1\n").unwrap_err();
        assert!(err.to_string().contains("duplicate job id"), "{err}");
    }

    #[test]
    fn parse_rejects_malformed_header() {
        let err = parse_instance("job 3\np 1 1 1\nscenarios 0\n").unwrap_err();
        assert!(err.to_string().contains("malformed header"), "{err}");
    }

    #[test]
    fn parse_rejects_overflowing_total_load() {
        let text = format!("jobs 2\np {} {}\nscenarios 1\nS 1 2\n", u64::MAX, 1u64);
        assert!(parse_instance(&text).is_err());
    }

    #[test]
    fn serialize_is_canonical_and_round_trips() {
        let inst = three_job_example();
        let text = serialize_instance(&inst);
        assert_eq!(text, "jobs 3\np 2 1 1\nscenarios 3\nS 1 2 3\nS 2 3\nS 2 3\n");
        assert_eq!(parse_instance(&text).unwrap(), inst);
        // members given out of order normalize to the same canonical text
        let shuffled = parse_instance("jobs 3\np 2 1 1\nscenarios 3\nS 3 2 1\nS 3 2\nS 2 3\n").unwrap();
        assert_eq!(serialize_instance(&shuffled), text);
    }

    #[test]
    fn scenario_loads_examples() {
        let inst = three_job_example();
        let a = Assignment::from_m1_jobs(3, &[1]);
        assert_eq!(
            inst.scenario_loads(&a, 0),
            LoadPair { load1: 2, load2: 2 }
        );

        let zero = Instance::new(vec![0, 0], vec![vec![1, 2]]).unwrap();
        let any = Assignment::from_m1_jobs(2, &[1]);
        assert_eq!(
            zero.scenario_loads(&any, 0),
            LoadPair { load1: 0, load2: 0 }
        );

        let all_m1 = Assignment::uniform(3, Machine::M1);
        assert_eq!(
            inst.scenario_loads(&all_m1, 1),
            LoadPair { load1: 2, load2: 0 }
        );
    }

    #[test]
    fn eval_minmax_examples() {
        let inst = three_job_example();
        assert_eq!(inst.eval_minmax(&Assignment::from_m1_jobs(3, &[1])), 2);
        assert_eq!(inst.eval_minmax(&Assignment::from_m1_jobs(3, &[1, 2])), 3);

        let no_scenarios = Instance::new(vec![5, 7], vec![]).unwrap();
        assert_eq!(
            no_scenarios.eval_minmax(&Assignment::uniform(2, Machine::M1)),
            0
        );
    }

    #[test]
    fn eval_minsum_examples() {
        let inst = three_job_example();
        assert_eq!(inst.eval_minsum(&Assignment::from_m1_jobs(3, &[1, 2])), 5);
        assert_eq!(inst.eval_minsum(&Assignment::from_m1_jobs(3, &[1])), 6);

        let no_scenarios = Instance::new(vec![5, 7], vec![]).unwrap();
        assert_eq!(
            no_scenarios.eval_minsum(&Assignment::uniform(2, Machine::M1)),
            0
        );
    }

    #[test]
    fn duplicate_scenario_shifts_minsum_only() {
        let base = Instance::new(vec![2, 1, 1], vec![vec![1, 2, 3], vec![2, 3]]).unwrap();
        let dup = three_job_example();
        let a = Assignment::from_m1_jobs(3, &[1, 2]);
        assert_eq!(base.eval_minmax(&a), dup.eval_minmax(&a));
        let extra = dup.scenario_loads(&a, 2).makespan();
        assert_eq!(base.eval_minsum(&a) + extra, dup.eval_minsum(&a));
    }

    #[test]
    fn single_scenario_objectives_coincide() {
        let inst = Instance::new(vec![3, 1, 4], vec![vec![1, 2, 3]]).unwrap();
        for mask in 0..8u64 {
            let a = Assignment::from_m1_mask(3, mask);
            assert_eq!(inst.eval_minmax(&a), inst.eval_minsum(&a));
        }
    }
}
