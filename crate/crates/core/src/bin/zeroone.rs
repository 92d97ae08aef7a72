use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use zeroone::circuit::{
    circuit_stats, compile_function_sentence, compile_graph_sentence, exact_weight_probability,
    mc_weight_probability, to_levelled, Circuit,
};
use zeroone::harness::{
    coupling_identity_check, csv_string, delta_scan, restriction_experiment, sample_host, CouplingSpec, EstimateRow,
    HarnessError, Host, ModelKind, ModelSpec, Quantity, SubsetMode,
};
use zeroone::logic::{parse_sentence, Sentence};
use zeroone::models::{OrderedGraph, SubsetSelection, TernaryFunction};
use zeroone::rng::Stream;
use zeroone::semantics::{eval_graph_sentence, eval_partial_function_sentence};

const EXIT_USAGE: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_INVARIANT: u8 = 3;

#[derive(Parser)]
#[command(name = "zeroone", version, about = "First-order sentences on random ordered graphs and random functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a sentence on a model file with the brute-force checker.
    Check(CheckArgs),
    /// Compile a sentence over a host model and print the circuit.
    Compile(CompileArgs),
    /// Probability that the compiled circuit accepts a uniform i-subset.
    Prob(ProbArgs),
    /// Random restrictions, level-1 survey and depth-2 inversion.
    Restrict(RestrictArgs),
    /// Compare direct f(i) with the host average of g(i), i = n, n+1.
    Couple(CoupleArgs),
    /// Estimate f(n+1) - f(n) over a range of n.
    Scan(ScanArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Graph,
    Func,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Mc,
}

#[derive(Args)]
struct Common {
    /// Sentence text, or a path to a file holding it.
    #[arg(long)]
    sentence: String,
    #[arg(long, value_enum, default_value = "graph")]
    model: Model,
    /// Edge probability for graphs.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// CSV (or dump) destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HostArgs {
    /// Host model dump; a random host of size --m is drawn when absent.
    #[arg(long)]
    model_file: Option<PathBuf>,
    #[arg(long, default_value_t = 7)]
    m: usize,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    model_file: PathBuf,
    /// One-based comma-separated elements to restrict to first.
    #[arg(long)]
    subset: Option<String>,
}

#[derive(Args)]
struct CompileArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    host: HostArgs,
    /// Print the levelled form.
    #[arg(long)]
    levelled: bool,
}

#[derive(Args)]
struct ProbArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    host: HostArgs,
    #[arg(long)]
    i: usize,
    /// Enumerate all i-subsets instead of sampling.
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct RestrictArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 21)]
    m: usize,
}

#[derive(Args)]
struct CoupleArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 6)]
    n: usize,
    #[arg(long, value_enum, default_value = "exact")]
    mode: Mode,
    /// Subsets sampled per host in mc mode.
    #[arg(long, default_value_t = 200)]
    subset_trials: u64,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 4)]
    n_min: usize,
    #[arg(long, default_value_t = 16)]
    n_max: usize,
    #[arg(long, default_value_t = 4)]
    n_step: usize,
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let code = match error.downcast_ref::<HarnessError>() {
            Some(e) if e.is_infeasible() => EXIT_INFEASIBLE,
            _ => EXIT_USAGE,
        };
        Failure { code, error }
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        anyhow::Error::from(e).into()
    }
}

fn invariant(message: String) -> Failure {
    Failure {
        code: EXIT_INVARIANT,
        error: anyhow!(message),
    }
}

impl Model {
    fn spec(self, p: f64) -> anyhow::Result<ModelSpec> {
        match self {
            Model::Graph => {
                if !(0.0..=1.0).contains(&p) {
                    bail!("--p must lie in [0, 1], got {p}");
                }
                Ok(ModelSpec::graph(p))
            }
            Model::Func => Ok(ModelSpec::function()),
        }
    }
}

impl Common {
    fn model_spec(&self) -> anyhow::Result<ModelSpec> {
        self.model.spec(self.p)
    }

    fn sentence(&self) -> anyhow::Result<Sentence> {
        let path = Path::new(&self.sentence);
        let text = if path.is_file() {
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
        } else {
            self.sentence.clone()
        };
        let spec = self.model_spec()?;
        Ok(parse_sentence(&text, spec.kind.vocabulary()).map_err(HarnessError::from)?)
    }

    fn stream(&self) -> Stream {
        Stream::new(self.seed)
    }

    fn write(&self, text: &str) -> anyhow::Result<()> {
        match &self.out {
            Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => std::io::stdout().write_all(text.as_bytes()).context("writing standard output"),
        }
    }
}

fn read_host(kind: ModelKind, path: &Path) -> anyhow::Result<Host> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let host = match kind {
        ModelKind::Graph => Host::Graph(OrderedGraph::from_dump(&text).map_err(HarnessError::from)?),
        ModelKind::Function => Host::Function(TernaryFunction::from_dump(&text).map_err(HarnessError::from)?),
    };
    Ok(host)
}

fn host_for(common: &Common, args: &HostArgs) -> anyhow::Result<Host> {
    let spec = common.model_spec()?;
    match &args.model_file {
        Some(p) => read_host(spec.kind, p),
        None => Ok(sample_host(&spec, args.m, &mut common.stream().branch_named("host").rng())),
    }
}

fn compile(host: &Host, s: &Sentence) -> Result<Circuit, HarnessError> {
    Ok(match host {
        Host::Graph(g) => compile_graph_sentence(g, s)?,
        Host::Function(f) => compile_function_sentence(f, s)?,
    })
}

fn parse_subset(text: &str, host: usize) -> anyhow::Result<SubsetSelection> {
    let members = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v - 1),
            _ => Err(anyhow!("bad subset element `{t}` (elements are one-based)")),
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(SubsetSelection::new(host, members).map_err(HarnessError::from)?)
}

fn row(common: &Common, experiment: &str, n: usize, quantity: &str, estimate: f64, stderr: f64, trials: u64) -> EstimateRow {
    EstimateRow {
        experiment: experiment.into(),
        n,
        quantity: Quantity::Named(quantity.into()),
        estimate,
        stderr,
        trials,
        seed: common.seed,
    }
}

fn check(args: &CheckArgs) -> Result<(), Failure> {
    let c = &args.common;
    let s = c.sentence()?;
    let host = read_host(c.model_spec()?.kind, &args.model_file)?;
    let subset = match &args.subset {
        Some(t) => parse_subset(t, host.size())?,
        None => SubsetSelection::full(host.size()),
    };
    let verdict = match &host {
        Host::Graph(g) => eval_graph_sentence(&g.induced_substructure(&subset), &s).map_err(HarnessError::from)?,
        Host::Function(f) => eval_partial_function_sentence(&f.project(&subset), &s).map_err(HarnessError::from)?,
    };
    eprintln!("{verdict}");
    let r = row(c, "check", subset.len(), "verdict", f64::from(u8::from(verdict)), 0.0, 1);
    c.write(&csv_string(&[r]))?;
    Ok(())
}

fn compile_cmd(args: &CompileArgs) -> Result<(), Failure> {
    let c = &args.common;
    let s = c.sentence()?;
    let host = host_for(c, &args.host)?;
    let mut circuit = compile(&host, &s)?;
    if args.levelled {
        circuit = to_levelled(&circuit).into_circuit();
    }
    let stats = circuit_stats(&circuit);
    let m = host.size();
    eprintln!(
        "inputs {m} depth {} gates {} literals {} quantifier_depth {}",
        stats.depth,
        stats.gate_count,
        stats.literal_count,
        s.depth()
    );
    eprintln!("per_level {:?}", stats.per_level);
    eprintln!("level1_fanins {:?}", stats.level1_fanins);
    c.write(&circuit.to_dump())?;
    Ok(())
}

fn prob(args: &ProbArgs) -> Result<(), Failure> {
    let c = &args.common;
    let s = c.sentence()?;
    let host = host_for(c, &args.host)?;
    let circuit = compile(&host, &s)?;
    if args.i > circuit.inputs() {
        return Err(anyhow!("--i {} exceeds the host size {}", args.i, circuit.inputs()).into());
    }
    let r = if args.exact {
        let exact = exact_weight_probability(&circuit, args.i).map_err(HarnessError::from)?;
        eprintln!("f_C({}) = {exact}", args.i);
        let value = num_traits::ToPrimitive::to_f64(&exact).unwrap_or(f64::NAN);
        row(c, "prob", args.i, "f_C(i)", value, 0.0, 0)
    } else {
        let est = mc_weight_probability(&circuit, args.i, c.trials, &c.stream()).map_err(HarnessError::from)?;
        row(c, "prob", args.i, "f_C(i)", est.estimate, est.stderr, c.trials)
    };
    c.write(&csv_string(&[r]))?;
    Ok(())
}

fn restrict(args: &RestrictArgs) -> Result<(), Failure> {
    let c = &args.common;
    let s = c.sentence()?;
    let report = restriction_experiment(&s, &c.model_spec()?, args.m, c.trials, &c.stream())?;
    c.write(&csv_string(&report.rows))?;
    if report.mismatches > 0 {
        return Err(invariant(format!(
            "switched circuits disagreed with the original on {} completions",
            report.mismatches
        )));
    }
    Ok(())
}

fn couple(args: &CoupleArgs) -> Result<(), Failure> {
    let c = &args.common;
    let s = c.sentence()?;
    let spec = CouplingSpec {
        model: c.model_spec()?,
        n: args.n,
        host_trials: c.trials,
        direct_trials: c.trials,
        mode: match args.mode {
            Mode::Exact => SubsetMode::Exact,
            Mode::Mc => SubsetMode::MonteCarlo(args.subset_trials),
        },
    };
    let report = coupling_identity_check(&s, &spec, &c.stream())?;
    for p in &report.points {
        eprintln!(
            "i={} direct {:.6} coupled {:.6} diff {:+.6} se {:.6} {}",
            p.i,
            p.direct.estimate,
            p.coupled.estimate,
            p.difference.estimate,
            p.difference.stderr,
            if p.agrees { "within 3se" } else { "outside 3se" }
        );
    }
    c.write(&csv_string(&report.rows()))?;
    Ok(())
}

fn scan(args: &ScanArgs) -> Result<(), Failure> {
    let c = &args.common;
    let s = c.sentence()?;
    if args.n_step == 0 || args.n_min > args.n_max {
        return Err(anyhow!("need --n-step >= 1 and --n-min <= --n-max").into());
    }
    let ns: Vec<usize> = (args.n_min..=args.n_max).step_by(args.n_step).collect();
    let report = delta_scan(&s, &ns, c.trials, &c.model_spec()?, &c.stream())?;
    c.write(&csv_string(&report.rows))?;
    eprintln!("growing={} alternating={}", report.growing, report.alternating);
    eprintln!("{}", report.footer);
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::Check(a) => check(a),
        Command::Compile(a) => compile_cmd(a),
        Command::Prob(a) => prob(a),
        Command::Restrict(a) => restrict(a),
        Command::Couple(a) => couple(a),
        Command::Scan(a) => scan(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
