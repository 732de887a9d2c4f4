//! Command-line interface.

use std::io::Write;
use std::path::{Path, PathBuf};

use bnctl_core::bounds::bounds_report_with_t_star;
use bnctl_core::generation::{NegationPolicy, SelfLoopPolicy};
use bnctl_core::{
    build_family, construction_schedule, is_controllable, necessary_conditions, random_network,
    simulate, t_star, BooleanNetwork, Connective, ControlSchedule, FamilyKind, Fixture, GenSpec,
    SearchOptions, StateVector, Trajectory,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{CliError, CliResult};
use crate::experiment::{run_experiment, write_csv, ExperimentConfig, Summary, DEFAULT_N};
use crate::format::{network_to_json, read_network};
use crate::parallel::parallel_minimum_control_set;
use crate::report::{
    node_names, parse_node_list, parse_state, to_json, BoundsJson, CertificateJson, CheckJson,
    ConstructionJson, ScheduleFile, SearchJson, TrajectoryJson,
};

#[derive(Debug, Parser)]
#[command(name = "bnctl", version, about = "Controllability analysis of k-k Boolean networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random k-k network.
    Gen(GenArgs),
    /// Decide whether a control set makes the network controllable.
    Check(CheckArgs),
    /// Find the minimum control node sets by exhaustive search.
    Minset(MinsetArgs),
    /// Evaluate every applicable bound on the minimum control set size.
    Bounds(BoundsArgs),
    /// Build a constructed family member with its control set.
    Construct(ConstructArgs),
    /// Run the network from x0, optionally under a control schedule.
    Simulate(SimulateArgs),
    /// Minimum horizon connecting every state pair.
    Tstar(TstarArgs),
    /// Minimum set sizes of random networks against the bounds, as CSV.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Xor,
    And,
    Or,
    Nc,
}

impl From<FamilyArg> for Connective {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Xor => Connective::Xor,
            FamilyArg::And => Connective::And,
            FamilyArg::Or => Connective::Or,
            FamilyArg::Nc => Connective::Nc,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LoopArg {
    Allow,
    Forbid,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Negate literals at random (for XOR: the constant term).
    #[arg(long)]
    pub negate: bool,
    /// Defaults to allow for XOR and forbid otherwise.
    #[arg(long, value_enum)]
    pub self_loops: Option<LoopArg>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Control nodes, e.g. `x3,x4` or `3,4`.
    #[arg(long)]
    pub u: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MinsetArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Report every minimum set instead of the first.
    #[arg(long)]
    pub all: bool,
    /// Disable bound and certificate pruning.
    #[arg(long)]
    pub no_prune: bool,
    /// Give up after examining this many candidates.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Control set whose t* feeds the horizon bounds (XOR only).
    #[arg(long)]
    pub u: Option<String>,
    #[arg(long, conflicts_with = "u")]
    pub t_star: Option<usize>,
    /// Print a text table instead of JSON.
    #[arg(long)]
    pub text: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructFamily {
    Star2Xor,
    PairedXor,
    BlockXor,
    PairedAnd,
    Star2And,
    AndShift,
    NcShift,
    Example,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub family: ConstructFamily,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Example id, 1..9 or R1.
    #[arg(long)]
    pub id: Option<String>,
    /// With --xt, include the constructive schedule from x0 to xT.
    #[arg(long, requires = "xt")]
    pub x0: Option<String>,
    #[arg(long, requires = "x0")]
    pub xt: Option<String>,
    /// Network file; the sidecar goes next to it unless --sidecar is given.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, requires = "out")]
    pub sidecar: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub x0: String,
    /// Schedule file with `control` and `masks`.
    #[arg(long)]
    pub schedule: Option<PathBuf>,
    /// Uncontrolled steps when no schedule is given.
    #[arg(long, conflicts_with = "schedule")]
    pub steps: Option<usize>,
    /// Report whether the final state equals this target.
    #[arg(long)]
    pub xt: Option<String>,
    #[arg(long)]
    pub table: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TstarArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub u: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(long, value_enum, value_delimiter = ',', default_value = "xor,and,nc")]
    pub families: Vec<FamilyArg>,
    /// 10 for the larger setting; at most 12.
    #[arg(long, default_value_t = DEFAULT_N)]
    pub n: usize,
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    pub k: Vec<usize>,
    /// Instances per (family, k) cell.
    #[arg(long, default_value_t = 20)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Write `-` in the ms column.
    #[arg(long)]
    pub no_timing: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn load(path: &Path) -> CliResult<BooleanNetwork> {
    read_network(path)
        .map_err(|e| CliError::io(path, e))?
        .map(|(net, _)| net)
        .map_err(|source| CliError::Format {
            path: path.to_path_buf(),
            source,
        })
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Writes to `out` if given, else to `stdout`.
fn emit(stdout: &mut dyn Write, out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => write_file(p, text),
        None => stdout
            .write_all(text.as_bytes())
            .and_then(|()| if text.ends_with('\n') { Ok(()) } else { stdout.write_all(b"\n") })
            .map_err(|e| CliError::io("<stdout>", e)),
    }
}

fn required(v: Option<usize>, flag: &str, family: ConstructFamily) -> CliResult<usize> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for {family:?}")))
}

pub fn family_kind(a: &ConstructArgs) -> CliResult<FamilyKind> {
    use ConstructFamily as F;
    let f = a.family;
    Ok(match f {
        F::Star2Xor => FamilyKind::Star2Xor { n: required(a.n, "n", f)? },
        F::PairedXor => FamilyKind::PairedXor { n: required(a.n, "n", f)? },
        F::PairedAnd => FamilyKind::PairedAnd { n: required(a.n, "n", f)? },
        F::Star2And => FamilyKind::Star2And { n: required(a.n, "n", f)? },
        F::BlockXor => FamilyKind::BlockXor {
            k: required(a.k, "k", f)?,
            m: required(a.m, "m", f)?,
        },
        F::AndShift => match required(a.k, "k", f)? {
            2 => FamilyKind::AndShift2 { m: required(a.m, "m", f)? },
            k => FamilyKind::AndShiftK { k, m: required(a.m, "m", f)? },
        },
        F::NcShift => FamilyKind::NcShift {
            k: required(a.k, "k", f)?,
            n: required(a.n, "n", f)?,
        },
        F::Example => {
            let id = a
                .id
                .as_deref()
                .ok_or_else(|| CliError::Usage("--id is required for example".into()))?;
            FamilyKind::Example(id.parse::<Fixture>()?)
        }
    })
}

fn sidecar_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("network");
    out.with_file_name(format!("{stem}.construction.json"))
}

fn gen(a: &GenArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let family: Connective = a.family.into();
    let spec = GenSpec {
        negation: if a.negate {
            NegationPolicy::Random
        } else {
            NegationPolicy::None
        },
        self_loops: match a.self_loops {
            Some(LoopArg::Allow) => SelfLoopPolicy::Allow,
            Some(LoopArg::Forbid) => SelfLoopPolicy::Forbid,
            None => SelfLoopPolicy::default_for(family),
        },
        ..GenSpec::new(a.n, a.k, family, a.seed)
    };
    let net = random_network(&spec)?;
    let meta = json!({
        "seed": a.seed,
        "spec": {
            "n": a.n,
            "k": a.k,
            "family": family.name(),
            "negation": if a.negate { "random" } else { "none" },
            "self_loops": if spec.self_loops == SelfLoopPolicy::Allow { "allow" } else { "forbid" },
            "generator": "chacha8",
        }
    });
    emit(stdout, a.out.as_deref(), &network_to_json(&net, Some(meta)))
}

fn check(a: &CheckArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let net = load(&a.input)?;
    let u = parse_node_list(&a.u, net.n())?;
    let report = CheckJson {
        controllable: is_controllable(&net, u)?,
        control: node_names(u),
        certificate: CertificateJson::from(&necessary_conditions(&net, u)),
    };
    emit(stdout, a.out.as_deref(), &to_json(&report))
}

fn minset(a: &MinsetArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let net = load(&a.input)?;
    let options = SearchOptions {
        max_witnesses: if a.all { None } else { Some(1) },
        use_bound_pruning: !a.no_prune,
        use_certificate_pruning: !a.no_prune,
        candidate_budget: a.budget,
        ..SearchOptions::default()
    };
    let result = parallel_minimum_control_set(&net, &options, a.jobs)?;
    for &w in &result.witnesses {
        if !is_controllable(&net, w)? {
            return Err(CliError::Verification(format!(
                "reported set {} is not controllable",
                node_names(w).join(",")
            )));
        }
    }
    emit(stdout, a.out.as_deref(), &to_json(&SearchJson::new(&result, true)))
}

fn bounds(a: &BoundsArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let net = load(&a.input)?;
    let ts = match (&a.u, a.t_star) {
        (Some(u), _) => t_star(&net, parse_node_list(u, net.n())?, None)?,
        (None, t) => t,
    };
    let report = bounds_report_with_t_star(&net, ts);
    let text = if a.text {
        report.to_string()
    } else {
        to_json(&BoundsJson::new(&report, ts))
    };
    emit(stdout, a.out.as_deref(), &text)
}

fn construct(a: &ConstructArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let c = build_family(family_kind(a)?)?;
    let n = c.network.n();
    let schedule = match (&a.x0, &a.xt) {
        (Some(x0), Some(xt)) => Some(construction_schedule(&c, parse_state(x0, n)?, parse_state(xt, n)?)?),
        _ => None,
    };
    let side = ConstructionJson::new(&c, schedule.as_ref());
    match &a.out {
        Some(out) => {
            write_file(out, &network_to_json(&c.network, None))?;
            let path = a.sidecar.clone().unwrap_or_else(|| sidecar_path(out));
            write_file(&path, &to_json(&side))
        }
        None => {
            let net: serde_json::Value = serde_json::from_str(&network_to_json(&c.network, None))
                .expect("network JSON round-trips");
            let both = json!({ "network": net, "construction": side });
            emit(stdout, None, &to_json(&both))
        }
    }
}

fn read_schedule(path: &Path, n: usize) -> CliResult<ControlSchedule> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let file: ScheduleFile = serde_json::from_str(&text).map_err(|e| CliError::Format {
        path: path.to_path_buf(),
        source: e.into(),
    })?;
    file.to_schedule(n)
}

fn run_simulation(net: &BooleanNetwork, x0: StateVector, a: &SimulateArgs) -> CliResult<Trajectory> {
    let schedule = match &a.schedule {
        Some(p) => read_schedule(p, net.n())?,
        None => {
            let zero = StateVector::zeros(net.n())?;
            ControlSchedule::new(Default::default(), vec![zero; a.steps.unwrap_or(1)])?
        }
    };
    Ok(simulate(net, x0, &schedule)?)
}

fn simulate_cmd(a: &SimulateArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let net = load(&a.input)?;
    let x0 = parse_state(&a.x0, net.n())?;
    let xt = a.xt.as_deref().map(|s| parse_state(s, net.n())).transpose()?;
    let traj = run_simulation(&net, x0, a)?;
    let text = if a.table {
        traj.to_table()
    } else {
        to_json(&TrajectoryJson::new(&traj, xt))
    };
    emit(stdout, a.out.as_deref(), &text)
}

fn tstar(a: &TstarArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let net = load(&a.input)?;
    let u = parse_node_list(&a.u, net.n())?;
    let ts = t_star(&net, u, None)?;
    let body = json!({ "control": node_names(u), "t_star": ts });
    emit(stdout, a.out.as_deref(), &to_json(&body))
}

fn reproduce(a: &ReproduceArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<()> {
    let cfg = ExperimentConfig {
        families: a.families.iter().map(|&f| f.into()).collect(),
        n: a.n,
        ks: a.k.clone(),
        count: a.count,
        seed: a.seed,
        jobs: a.jobs,
    };
    let rows = run_experiment(&cfg)?;
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf, !a.no_timing)?;
    let text = String::from_utf8(buf).expect("csv output is UTF-8");
    emit(stdout, a.out.as_deref(), &text)?;
    writeln!(stderr, "{}", Summary::of(&rows)).map_err(|e| CliError::io("<stderr>", e))
}

/// Runs one parsed command, writing results to `stdout` or the `--out` file.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Gen(a) => gen(a, stdout),
        Command::Check(a) => check(a, stdout),
        Command::Minset(a) => minset(a, stdout),
        Command::Bounds(a) => bounds(a, stdout),
        Command::Construct(a) => construct(a, stdout),
        Command::Simulate(a) => simulate_cmd(a, stdout),
        Command::Tstar(a) => tstar(a, stdout),
        Command::Reproduce(a) => reproduce(a, stdout, stderr),
    }
}
