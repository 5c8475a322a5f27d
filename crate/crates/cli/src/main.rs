//! Command-line harness: instance generation, solving, and cross-solver
//! comparison with CSV reports.
//!
//! Exit codes: 0 success, 2 usage or configuration error, 3 violated
//! algorithm precondition or cap, 4 instance parse error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use scensched::generate::{
    gen_graph, gen_pairs, gen_random, gen_triple_family, gen_triples, gen_unit,
};
use scensched::instance::{parse_instance, serialize_instance, Assignment, Instance, Machine, Objective};
use scensched::oracle::{brute_force, unit_dp, DEFAULT_BRUTE_CAP, DEFAULT_UNIT_DP_CAP};
use scensched::pairs::solve_pairs;
use scensched::reductions::{
    gadget_from_maxcut, gadget_from_set_splitting, to_vector_scheduling, DEFAULT_NAE_R_CAP,
};
use scensched::solvers::{
    derandomized_assign, random_assign, solve_sm2_via_cut, solve_sm2_via_nae,
    vector_list_schedule, Backend, DEFAULT_CUT_CAP, DEFAULT_DERAND_R_CAP,
};

#[derive(Parser)]
#[command(
    name = "scensched",
    about = "Two-machine scheduling over explicit scenario sets",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file
    Gen(GenArgs),
    /// Solve one instance with one algorithm
    Solve(SolveArgs),
    /// Run several algorithms over several instances and emit a CSV report
    Compare(CompareArgs),
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    kind: GenKind,
}

#[derive(Subcommand)]
enum GenKind {
    /// Random scenarios of mixed sizes
    Random {
        #[arg(long)]
        jobs: usize,
        #[arg(long)]
        scenarios: usize,
        /// Largest scenario size
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        /// Largest processing time
        #[arg(long, default_value_t = 9)]
        max_time: u64,
        #[arg(long, env = "SCHED_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scenarios of exactly two jobs
    Pairs {
        #[arg(long)]
        jobs: usize,
        #[arg(long)]
        scenarios: usize,
        #[arg(long, default_value_t = 9)]
        max_time: u64,
        #[arg(long, env = "SCHED_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scenarios of exactly three jobs
    Triples {
        #[arg(long)]
        jobs: usize,
        #[arg(long)]
        scenarios: usize,
        #[arg(long, default_value_t = 9)]
        max_time: u64,
        #[arg(long, env = "SCHED_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Unit processing times
    Unit {
        #[arg(long)]
        jobs: usize,
        #[arg(long)]
        scenarios: usize,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long, env = "SCHED_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Unit-job pair-scenario instance encoding max-cut on a graph
    MaxcutGadget {
        /// Named graph: k<n> complete, c<n> cycle, p<n> path, or `random`
        #[arg(long)]
        graph: String,
        /// Vertex count for --graph random
        #[arg(long)]
        graph_vertices: Option<usize>,
        /// Edge count for --graph random
        #[arg(long)]
        graph_edges: Option<usize>,
        #[arg(long, env = "SCHED_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Unit-job triple-scenario instance encoding set splitting
    SetsplitGadget {
        /// Explicit family, e.g. `1,2,3;2,3,4`
        #[arg(long)]
        sets: Option<String>,
        /// Universe size for a random family
        #[arg(long)]
        objects: Option<usize>,
        /// Number of random sets
        #[arg(long)]
        num_sets: Option<usize>,
        #[arg(long, env = "SCHED_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    #[value(name = "brute")]
    Brute,
    #[value(name = "unit_dp")]
    UnitDp,
    #[value(name = "pairs")]
    Pairs,
    #[value(name = "random")]
    Random,
    #[value(name = "derand")]
    Derand,
    #[value(name = "cut_exact")]
    CutExact,
    #[value(name = "cut_ls")]
    CutLs,
    #[value(name = "nae_exact")]
    NaeExact,
    #[value(name = "nae_ls")]
    NaeLs,
    #[value(name = "vector_list")]
    VectorList,
}

impl Algorithm {
    fn name(self) -> &'static str {
        match self {
            Algorithm::Brute => "brute",
            Algorithm::UnitDp => "unit_dp",
            Algorithm::Pairs => "pairs",
            Algorithm::Random => "random",
            Algorithm::Derand => "derand",
            Algorithm::CutExact => "cut_exact",
            Algorithm::CutLs => "cut_ls",
            Algorithm::NaeExact => "nae_exact",
            Algorithm::NaeLs => "nae_ls",
            Algorithm::VectorList => "vector_list",
        }
    }

    /// Objectives the algorithm can target.
    fn supports(self, objective: ObjectiveArg) -> bool {
        match self {
            Algorithm::Brute | Algorithm::UnitDp | Algorithm::Random => true,
            Algorithm::Pairs | Algorithm::VectorList => objective == ObjectiveArg::MinMax,
            Algorithm::Derand
            | Algorithm::CutExact
            | Algorithm::CutLs
            | Algorithm::NaeExact
            | Algorithm::NaeLs => objective == ObjectiveArg::MinSum,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ObjectiveArg {
    #[value(name = "minmax")]
    MinMax,
    #[value(name = "minsum")]
    MinSum,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Objective {
        match o {
            ObjectiveArg::MinMax => Objective::MinMax,
            ObjectiveArg::MinSum => Objective::MinSum,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    #[value(name = "text")]
    Text,
    #[value(name = "csv")]
    Csv,
}

#[derive(Args, Clone)]
struct Caps {
    /// Largest n for exhaustive search
    #[arg(long, default_value_t = DEFAULT_BRUTE_CAP)]
    cap_brute: usize,
    /// Largest k for the unit-job solver
    #[arg(long, default_value_t = DEFAULT_UNIT_DP_CAP)]
    cap_unit_k: usize,
    /// Largest padded scenario size for the not-all-equal SAT reduction
    #[arg(long, default_value_t = DEFAULT_NAE_R_CAP)]
    cap_nae_r: usize,
    /// Largest vertex count for exact max-cut
    #[arg(long, default_value_t = DEFAULT_CUT_CAP)]
    cap_cut_n: usize,
    /// Largest scenario size for the derandomized solver
    #[arg(long, default_value_t = DEFAULT_DERAND_R_CAP)]
    cap_derand_r: usize,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file
    instance: PathBuf,
    #[arg(long, value_enum)]
    alg: Algorithm,
    #[arg(long, value_enum)]
    objective: ObjectiveArg,
    #[arg(long, env = "SCHED_SEED", default_value_t = 0)]
    seed: u64,
    /// Trials for the randomized solver
    #[arg(long, default_value_t = 64)]
    trials: u64,
    #[command(flatten)]
    caps: Caps,
    /// Solution file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct CompareArgs {
    /// Instance files or directories of `.inst` files
    paths: Vec<PathBuf>,
    /// Comma-separated algorithm list
    #[arg(long, value_delimiter = ',', required = true)]
    algs: Vec<Algorithm>,
    #[arg(long, value_enum)]
    objective: ObjectiveArg,
    #[arg(long, env = "SCHED_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 64)]
    trials: u64,
    #[command(flatten)]
    caps: Caps,
    /// Report file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

enum CliError {
    Config(String),
    Core(scensched::Error),
    Io(String),
}

impl From<scensched::Error> for CliError {
    fn from(e: scensched::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn io(context: &str, e: std::io::Error) -> Self {
        CliError::Io(format!("{context}: {e}"))
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Core(scensched::Error::Parse { .. }) => 4,
            CliError::Core(_) => 3,
            CliError::Io(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Config(m) | CliError::Io(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Compare(args) => cmd_compare(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::io(&format!("writing {}", path.display()), e)),
        None => {
            print!("{content}");
            std::io::stdout()
                .flush()
                .map_err(|e| CliError::io("writing stdout", e))
        }
    }
}

fn parse_named_graph(spec: &str) -> Result<(usize, Vec<(usize, usize)>), CliError> {
    let (kind, count) = spec.split_at(1);
    let n: usize = count
        .parse()
        .map_err(|_| CliError::Config(format!("bad graph spec `{spec}` (k<n>, c<n>, p<n>)")))?;
    let edges = match kind {
        "k" => (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .collect(),
        "c" => {
            if n < 3 {
                return Err(CliError::Config("cycles need at least 3 vertices".into()));
            }
            (1..=n).map(|u| (u, u % n + 1)).collect()
        }
        "p" => (1..n).map(|u| (u, u + 1)).collect(),
        _ => {
            return Err(CliError::Config(format!(
                "bad graph spec `{spec}` (k<n>, c<n>, p<n>, random)"
            )))
        }
    };
    Ok((n, edges))
}

fn parse_set_family(text: &str) -> Result<Vec<Vec<usize>>, CliError> {
    text.split(';')
        .filter(|chunk| !chunk.trim().is_empty())
        .map(|chunk| {
            chunk
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| CliError::Config(format!("bad set element `{t}`")))
                })
                .collect()
        })
        .collect()
}

fn cmd_gen(args: GenArgs) -> Result<u8, CliError> {
    let (inst, out) = match args.kind {
        GenKind::Random { jobs, scenarios, max_size, max_time, seed, out } => {
            (gen_random(jobs, scenarios, max_size, max_time, seed)?, out)
        }
        GenKind::Pairs { jobs, scenarios, max_time, seed, out } => {
            (gen_pairs(jobs, scenarios, max_time, seed)?, out)
        }
        GenKind::Triples { jobs, scenarios, max_time, seed, out } => {
            (gen_triples(jobs, scenarios, max_time, seed)?, out)
        }
        GenKind::Unit { jobs, scenarios, max_size, seed, out } => {
            (gen_unit(jobs, scenarios, max_size, seed)?, out)
        }
        GenKind::MaxcutGadget { graph, graph_vertices, graph_edges, seed, out } => {
            let (n, edges) = if graph == "random" {
                let n = graph_vertices.ok_or_else(|| {
                    CliError::Config("--graph random needs --graph-vertices".into())
                })?;
                let m = graph_edges.ok_or_else(|| {
                    CliError::Config("--graph random needs --graph-edges".into())
                })?;
                gen_graph(n, m, seed)?
            } else {
                parse_named_graph(&graph)?
            };
            (gadget_from_maxcut(n, &edges)?, out)
        }
        GenKind::SetsplitGadget { sets, objects, num_sets, seed, out } => {
            let family = match (sets, objects, num_sets) {
                (Some(text), _, _) => parse_set_family(&text)?,
                (None, Some(objects), Some(count)) => gen_triple_family(objects, count, seed)?,
                _ => {
                    return Err(CliError::Config(
                        "provide --sets or both --objects and --num-sets".into(),
                    ))
                }
            };
            (gadget_from_set_splitting(&family)?, out)
        }
    };
    emit(&out, &serialize_instance(&inst))?;
    Ok(0)
}

struct SolveOutcome {
    assignment: Assignment,
    value: u64,
    /// Set when the algorithm itself is exact for the requested objective.
    optimal: bool,
}

fn run_algorithm(
    inst: &Instance,
    alg: Algorithm,
    objective: Objective,
    seed: u64,
    trials: u64,
    caps: &Caps,
) -> Result<SolveOutcome, CliError> {
    let outcome = match alg {
        Algorithm::Brute => {
            let opt = brute_force(inst, objective, caps.cap_brute)?;
            SolveOutcome { assignment: opt.witness, value: opt.value, optimal: true }
        }
        Algorithm::UnitDp => {
            let opt = unit_dp(inst, objective, caps.cap_unit_k)?;
            SolveOutcome { assignment: opt.witness, value: opt.value, optimal: true }
        }
        Algorithm::Pairs => {
            let opt = solve_pairs(inst)?;
            SolveOutcome { assignment: opt.witness, value: opt.value, optimal: true }
        }
        Algorithm::Random => {
            if trials == 0 {
                return Err(CliError::Config("--trials must be at least 1".into()));
            }
            let r = random_assign(inst, seed, trials, objective);
            let value = match objective {
                Objective::MinMax => r.minmax,
                Objective::MinSum => r.minsum,
            };
            SolveOutcome { assignment: r.assignment, value, optimal: false }
        }
        Algorithm::Derand => {
            let a = derandomized_assign(inst, caps.cap_derand_r)?;
            let value = inst.eval_minsum(&a);
            SolveOutcome { assignment: a, value, optimal: false }
        }
        Algorithm::CutExact => {
            let a = solve_sm2_via_cut(inst, Backend::Exact, seed, caps.cap_cut_n)?;
            let value = inst.eval_minsum(&a);
            SolveOutcome { assignment: a, value, optimal: true }
        }
        Algorithm::CutLs => {
            let a = solve_sm2_via_cut(inst, Backend::LocalSearch, seed, caps.cap_cut_n)?;
            let value = inst.eval_minsum(&a);
            SolveOutcome { assignment: a, value, optimal: false }
        }
        Algorithm::NaeExact => {
            let a = solve_sm2_via_nae(inst, Backend::Exact, seed, caps.cap_nae_r, caps.cap_brute)?;
            let value = inst.eval_minsum(&a);
            SolveOutcome { assignment: a, value, optimal: true }
        }
        Algorithm::NaeLs => {
            let a =
                solve_sm2_via_nae(inst, Backend::LocalSearch, seed, caps.cap_nae_r, caps.cap_brute)?;
            let value = inst.eval_minsum(&a);
            SolveOutcome { assignment: a, value, optimal: false }
        }
        Algorithm::VectorList => {
            let vs = to_vector_scheduling(inst, 2)?;
            let part = vector_list_schedule(&vs);
            let side = part
                .iter()
                .map(|&m| if m == 0 { Machine::M1 } else { Machine::M2 })
                .collect();
            let assignment = Assignment::new(side);
            let value = inst.eval_minmax(&assignment);
            SolveOutcome { assignment, value, optimal: false }
        }
    };
    Ok(outcome)
}

fn solution_text(inst: &Instance, a: &Assignment) -> String {
    let mut out = String::new();
    for (label, machine) in [("M1", Machine::M1), ("M2", Machine::M2)] {
        out.push_str(label);
        for j in a.jobs_on(machine) {
            out.push_str(&format!(" {j}"));
        }
        out.push('\n');
    }
    out.push_str(&format!("minmax {}\n", inst.eval_minmax(a)));
    out.push_str(&format!("minsum {}\n", inst.eval_minsum(a)));
    out
}

const REPORT_HEADER: &str = "instance,n,k,r,alg,objective,value,opt,ratio,seed,ms";

#[derive(Clone)]
struct ReportRow {
    instance: String,
    n: usize,
    k: usize,
    r: usize,
    alg: &'static str,
    objective: Objective,
    value: u64,
    opt: Option<u64>,
    ratio: Option<f64>,
    seed: u64,
    ms: Option<u128>,
}

impl ReportRow {
    fn csv_record(&self) -> Vec<String> {
        vec![
            self.instance.clone(),
            self.n.to_string(),
            self.k.to_string(),
            self.r.to_string(),
            self.alg.to_string(),
            self.objective.to_string(),
            self.value.to_string(),
            self.opt.map(|o| o.to_string()).unwrap_or_default(),
            self.ratio.map(|r| format!("{r:.6}")).unwrap_or_default(),
            self.seed.to_string(),
            self.ms.map(|ms| ms.to_string()).unwrap_or_default(),
        ]
    }

    fn text_line(&self) -> String {
        let mut line = format!(
            "instance={} n={} k={} r={} alg={} objective={} value={}",
            self.instance, self.n, self.k, self.r, self.alg, self.objective, self.value
        );
        if let Some(opt) = self.opt {
            line.push_str(&format!(" opt={opt}"));
        }
        if let Some(ratio) = self.ratio {
            line.push_str(&format!(" ratio={ratio:.6}"));
        }
        line.push_str(&format!(" seed={}", self.seed));
        line
    }
}

fn rows_to_csv(rows: &[ReportRow]) -> Result<String, CliError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(REPORT_HEADER.split(','))
        .map_err(|e| CliError::Io(format!("csv: {e}")))?;
    for row in rows {
        writer
            .write_record(row.csv_record())
            .map_err(|e| CliError::Io(format!("csv: {e}")))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| CliError::Io(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(format!("csv: {e}")))
}

fn cmd_solve(args: SolveArgs) -> Result<u8, CliError> {
    if !args.alg.supports(args.objective) {
        return Err(CliError::Config(format!(
            "algorithm `{}` does not target objective `{}`",
            args.alg.name(),
            Objective::from(args.objective)
        )));
    }
    let text = std::fs::read_to_string(&args.instance)
        .map_err(|e| CliError::io(&format!("reading {}", args.instance.display()), e))?;
    let inst = parse_instance(&text)?;
    let objective = Objective::from(args.objective);
    let outcome = run_algorithm(&inst, args.alg, objective, args.seed, args.trials, &args.caps)?;

    emit(&args.out, &solution_text(&inst, &outcome.assignment))?;

    let row = ReportRow {
        instance: args.instance.display().to_string(),
        n: inst.n(),
        k: inst.k(),
        r: inst.r(),
        alg: args.alg.name(),
        objective,
        value: outcome.value,
        opt: outcome.optimal.then_some(outcome.value),
        ratio: outcome.optimal.then_some(1.0),
        seed: args.seed,
        // wall time is reported by `compare` only; solve output stays
        // byte-identical across runs
        ms: None,
    };
    match args.format {
        Format::Text => println!("{}", row.text_line()),
        Format::Csv => print!("{}", rows_to_csv(std::slice::from_ref(&row))?),
    }
    Ok(0)
}

fn expand_paths(paths: &[PathBuf]) -> Result<Vec<PathBuf>, CliError> {
    let mut files = Vec::new();
    for path in paths {
        if path.is_dir() {
            let mut entries: Vec<PathBuf> = std::fs::read_dir(path)
                .map_err(|e| CliError::io(&format!("reading {}", path.display()), e))?
                .filter_map(|entry| entry.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|ext| ext == "inst"))
                .collect();
            entries.sort();
            files.extend(entries);
        } else {
            files.push(path.clone());
        }
    }
    Ok(files)
}

fn cmd_compare(args: CompareArgs) -> Result<u8, CliError> {
    if !args.algs.iter().all(|a| a.supports(args.objective)) {
        let bad = args
            .algs
            .iter()
            .find(|a| !a.supports(args.objective))
            .unwrap();
        return Err(CliError::Config(format!(
            "algorithm `{}` does not target objective `{}`",
            bad.name(),
            Objective::from(args.objective)
        )));
    }
    let objective = Objective::from(args.objective);
    let files = expand_paths(&args.paths)?;

    let mut rows = Vec::new();
    let mut trailer = Vec::new();
    let mut parse_failed = false;
    for path in &files {
        let display = path.display().to_string();
        let inst = match std::fs::read_to_string(path) {
            Ok(text) => match parse_instance(&text) {
                Ok(inst) => inst,
                Err(e) => {
                    parse_failed = true;
                    trailer.push(format!("# parse-failed: {display}: {e}"));
                    continue;
                }
            },
            Err(e) => {
                parse_failed = true;
                trailer.push(format!("# parse-failed: {display}: {e}"));
                continue;
            }
        };

        let opt = if inst.n() <= args.caps.cap_brute {
            Some(brute_force(&inst, objective, args.caps.cap_brute).map_err(CliError::from)?)
        } else {
            None
        };

        for &alg in &args.algs {
            let start = Instant::now();
            let outcome = match run_algorithm(&inst, alg, objective, args.seed, args.trials, &args.caps) {
                Ok(o) => o,
                Err(e) => {
                    trailer.push(format!("# skipped: {display} {}: {}", alg.name(), e.message()));
                    continue;
                }
            };
            let ms = start.elapsed().as_millis();
            let opt_value = opt.as_ref().map(|o| o.value);
            let ratio = opt_value.map(|o| {
                if o == 0 {
                    1.0
                } else {
                    outcome.value as f64 / o as f64
                }
            });
            rows.push(ReportRow {
                instance: display.clone(),
                n: inst.n(),
                k: inst.k(),
                r: inst.r(),
                alg: alg.name(),
                objective,
                value: outcome.value,
                opt: opt_value,
                ratio,
                seed: args.seed,
                ms: Some(ms),
            });
        }
    }

    let mut report = rows_to_csv(&rows)?;
    for line in &trailer {
        report.push_str(line);
        report.push('\n');
    }
    emit(&args.out, &report)?;
    Ok(if parse_failed { 4 } else { 0 })
}
