use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use partcover::report::{append_rows, write_rows};
use partcover::runner::{default_jobs, run_many, solve_exact, Prepared, Problem, RunConfig, JOBS_ENV};
use partcover::{edgelist, format};
use partcover_core::instances::{
    assign_costs, gen_hardness, gen_logdet, gen_random_coverage, gen_random_graph, gen_synthetic_setcover,
    toy_instance, GraphKind, Instance, SyntheticParams,
};

#[derive(Parser)]
#[command(
    name = "partcover",
    version,
    about = "Submodular cover and maximization under partition constraints"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file.
    Gen(GenArgs),
    /// Run an algorithm and emit CSV rows.
    Run(RunArgs),
    /// Solve a small instance exactly by enumeration.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    generator: Generator,
    /// Output file; the instance goes to stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Attach uniform random costs in [LO, HI].
    #[arg(long, global = true, value_delimiter = ',', value_name = "LO,HI")]
    costs: Option<Vec<f64>>,
    /// Seed for the attached costs.
    #[arg(long, global = true, default_value_t = 0)]
    cost_seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Cut,
    Coverage,
}

impl From<Kind> for GraphKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Cut => GraphKind::Cut,
            Kind::Coverage => GraphKind::Coverage,
        }
    }
}

#[derive(Subcommand)]
enum Generator {
    /// Weighted cover on which standard greedy reaches only 1/2 + eps of the optimum.
    Hardness {
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
    },
    /// The eight-element two-group example.
    Toy,
    /// Synthetic set cover with shared blocks in every group after the first.
    Setcover {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        groups: usize,
        #[arg(long, default_value_t = 200)]
        base: usize,
        #[arg(long, default_value_t = 40)]
        increment: usize,
        #[arg(long, default_value_t = 100)]
        block: usize,
        #[arg(long, default_value_t = 25)]
        tags: usize,
    },
    /// Random coverage; weighted when --weights is given.
    Coverage {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        groups: usize,
        #[arg(long)]
        universe: usize,
        #[arg(long, default_value_t = 4)]
        max_tags: usize,
        #[arg(long, value_delimiter = ',', value_name = "LO,HI")]
        weights: Option<Vec<f64>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random graph with m distinct edges.
    Graph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        groups: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Kind::Cut)]
        kind: Kind,
        #[arg(long, value_delimiter = ',', value_name = "LO,HI", default_value = "1,1")]
        weights: Vec<f64>,
    },
    /// Graph from a `u v [w]` edge-list file with random group labels.
    Edgelist {
        path: PathBuf,
        #[arg(long, default_value_t = 2)]
        groups: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Kind::Cut)]
        kind: Kind,
    },
    /// Log-determinant objective over a Gaussian kernel of random points.
    Logdet {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        groups: usize,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct ProblemArgs {
    /// Budget v.
    #[arg(long)]
    v: Option<f64>,
    /// Cover threshold tau.
    #[arg(long)]
    tau: Option<f64>,
    /// Per-group caps (overrides the caps derived from --v).
    #[arg(long, value_delimiter = ',')]
    caps: Option<Vec<usize>>,
    /// Fairness cardinality k.
    #[arg(long)]
    k: Option<usize>,
    /// Group proportions; uniform by default.
    #[arg(long, value_delimiter = ',')]
    p: Option<Vec<f64>>,
    /// Lower fairness proportions; 0.9/N by default.
    #[arg(long, value_delimiter = ',')]
    p_lo: Option<Vec<f64>>,
    /// Upper fairness proportions; 1.1/N by default.
    #[arg(long, value_delimiter = ',')]
    p_hi: Option<Vec<f64>>,
}

#[derive(Args)]
struct RunArgs {
    problem: ProblemArg,
    instance: PathBuf,
    /// Algorithm id; the first one listed for the problem by default
    /// (smp: block-g, block-g-gcd, block-g-nonmono, block-g-aug, nonmono-bi,
    /// greedy, rg; smkp: block-g, greedy; smf: block-fair, greedy; scp:
    /// block-g, rg; sckp: block-g, greedy, greedy-knapsack; scf: block-fair,
    /// greedy)
    #[arg(long)]
    alg: Option<String>,
    #[command(flatten)]
    params: ProblemArgs,
    #[arg(long, default_value_t = 0.05)]
    eps: f64,
    #[arg(long, default_value_t = 0.2)]
    alpha: f64,
    #[arg(long, default_value_t = 0.1)]
    delta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Independent runs with seeds seed, seed+1, ...
    #[arg(long, default_value_t = 1)]
    repetitions: usize,
    /// Worker threads for the repetitions.
    #[arg(long, env = JOBS_ENV)]
    jobs: Option<usize>,
    /// Append rows to this CSV file instead of printing them.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    problem: ProblemArg,
    instance: PathBuf,
    #[command(flatten)]
    params: ProblemArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Smp,
    Smkp,
    Smf,
    Scp,
    Sckp,
    Scf,
}

impl From<ProblemArg> for Problem {
    fn from(p: ProblemArg) -> Self {
        match p {
            ProblemArg::Smp => Problem::Smp,
            ProblemArg::Smkp => Problem::Smkp,
            ProblemArg::Smf => Problem::Smf,
            ProblemArg::Scp => Problem::Scp,
            ProblemArg::Sckp => Problem::Sckp,
            ProblemArg::Scf => Problem::Scf,
        }
    }
}

fn config(problem: Problem, alg: &str, params: &ProblemArgs) -> RunConfig {
    let mut c = RunConfig::new(problem, alg);
    c.v = params.v;
    c.tau = params.tau;
    c.caps = params.caps.clone();
    c.k = params.k;
    c.p = params.p.clone();
    c.p_lo = params.p_lo.clone();
    c.p_hi = params.p_hi.clone();
    c
}

fn pair(values: &[f64], flag: &str) -> Result<(f64, f64)> {
    match values {
        [lo, hi] => Ok((*lo, *hi)),
        _ => bail!("--{flag} takes two comma-separated values"),
    }
}

fn generate(args: GenArgs) -> Result<()> {
    let mut instance: Instance = match args.generator {
        Generator::Hardness { k, eps } => gen_hardness(&k, eps)?,
        Generator::Toy => toy_instance(),
        Generator::Setcover {
            seed,
            groups,
            base,
            increment,
            block,
            tags,
        } => {
            let params = SyntheticParams {
                groups,
                base,
                increment,
                block,
                tags_per_element: tags,
            };
            gen_synthetic_setcover(seed, params)?
        }
        Generator::Coverage {
            n,
            groups,
            universe,
            max_tags,
            weights,
            seed,
        } => {
            let weights = weights.map(|w| pair(&w, "weights")).transpose()?;
            gen_random_coverage(seed, n, groups, universe, max_tags, weights)?
        }
        Generator::Graph {
            n,
            m,
            groups,
            seed,
            kind,
            weights,
        } => gen_random_graph(seed, n, m, groups, pair(&weights, "weights")?, kind.into())?,
        Generator::Edgelist {
            path,
            groups,
            seed,
            kind,
        } => edgelist::load_graph_instance(&path, groups, seed, kind.into())?,
        Generator::Logdet {
            n,
            dim,
            groups,
            sigma,
            seed,
        } => gen_logdet(seed, n, dim, groups, sigma)?,
    };
    if let Some(c) = &args.costs {
        let (lo, hi) = pair(c, "costs")?;
        instance = assign_costs(&instance, args.cost_seed, lo, hi)?;
    }
    let groups = instance.ground()?.groups();
    let summary = format!(
        "n={} N={} kind={}",
        instance.n(),
        groups,
        instance.objective.kind()
    );
    match &args.out {
        Some(path) => {
            format::save(path, &instance)?;
            println!("{summary}");
        }
        None => {
            print!("{}", format::to_json(&instance)?);
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn run(args: RunArgs) -> Result<bool> {
    let problem = Problem::from(args.problem);
    let alg = args.alg.as_deref().unwrap_or(problem.algorithms()[0]);
    let mut cfg = config(problem, alg, &args.params);
    cfg.eps = args.eps;
    cfg.alpha = args.alpha;
    cfg.delta = args.delta;
    cfg.seed = args.seed;
    cfg.validate()?;
    if args.repetitions == 0 {
        bail!("--repetitions must be at least 1");
    }
    let prepared = Prepared::new(format::load(&args.instance)?)?;
    let jobs = args.jobs.unwrap_or_else(default_jobs);
    let outcomes = run_many(&cfg, &prepared, args.repetitions, jobs)?;
    let rows: Vec<_> = outcomes.iter().map(|o| o.row.clone()).collect();
    match &args.out {
        Some(path) => append_rows(path, &rows)?,
        None => write_rows(io::stdout().lock(), &rows, true)?,
    }
    for o in outcomes.iter().filter(|o| !o.ok) {
        eprintln!("seed {}: {}", o.row.seed, o.row.status);
    }
    Ok(outcomes.iter().all(|o| o.ok))
}

fn oracle(args: OracleArgs) -> Result<()> {
    let problem = Problem::from(args.problem);
    let cfg = config(problem, problem.algorithms()[0], &args.params);
    let prepared = Prepared::new(format::load(&args.instance)?)?;
    let r = solve_exact(&cfg, &prepared)?;
    let set: Vec<String> = r.set.iter().map(usize::to_string).collect();
    let mut out = io::stdout().lock();
    writeln!(out, "value {}", r.value)?;
    writeln!(out, "set {}", set.join(" "))?;
    writeln!(out, "enumerated {}", r.enumerated)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => generate(args).map(|()| true),
        Command::Run(args) => run(args),
        Command::Oracle(args) => oracle(args).map(|()| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
