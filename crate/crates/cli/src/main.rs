//! `bbncg`: command-line front end for bounded-budget network creation games.
//!
//! All player indices on the command line and in files are 1-based. Every
//! JSON artifact carries a `meta` object with the tool version, the full run
//! configuration and the seed.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use bbncg::analysis::{
    brute_force_kcenter, brute_force_kmedian, check_connectivity_theorem, expansion_profile,
    price_of_anarchy_exhaustive, reduce_kcenter, reduce_kmedian, tree_diameter_bound_check, unit_budget_structure,
};
use bbncg::constructions::{
    construct_equilibrium, gen_perfect_binary_tree, gen_spider, gen_sqrtlog_instance, gen_word_graph,
    ConstructionOutput,
};
use bbncg::cost::cost_report;
use bbncg::equilibria::{
    best_response_dynamics, best_response_exact, best_response_swap, enumerate_equilibria, is_equilibrium_exact,
    is_equilibrium_sufficient, random_profile, seeded_rng, BestResponseResult, DynamicsConfig, MoveOracle,
    OrderPolicy, Sufficiency,
};
use bbncg::io::{parse_game, parse_graph, parse_profile, to_dot, trace_to_jsonl, GameFile, ProfileFile, WitnessFile};
use bbncg::{Caps, Error, GameSpec, Realization, StrategyProfile, Version};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_CHECK_FAILED: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "bbncg", version, about = "Bounded-budget network creation games")]
struct Cli {
    /// Worker threads (default: BBNCG_THREADS, else all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(flatten)]
    caps: CapArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct CapArgs {
    /// Maximum candidate strategies for one exact best response.
    #[arg(long, global = true, default_value_t = Caps::default().candidate_cap)]
    candidate_cap: u64,
    /// Maximum strategy profiles for exhaustive enumeration.
    #[arg(long, global = true, default_value_t = Caps::default().profile_cap)]
    profile_cap: u64,
    /// Maximum vertices for generated families.
    #[arg(long, global = true, default_value_t = Caps::default().vertex_cap)]
    vertex_cap: u64,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        Caps {
            candidate_cap: self.candidate_cap,
            profile_cap: self.profile_cap,
            vertex_cap: self.vertex_cap,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a construction and write game.json, profile.json and graph.dot.
    Generate(GenerateArgs),
    /// Per-player costs of a profile.
    Cost {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        profile: PathBuf,
        /// Report only this player (1-based).
        #[arg(long)]
        player: Option<usize>,
    },
    /// Best response of one player.
    BestResponse {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        profile: PathBuf,
        /// Player (1-based).
        #[arg(long)]
        player: usize,
        #[arg(long, value_enum, default_value_t = OracleArg::Exact)]
        mode: OracleArg,
    },
    /// Equilibrium check; exits 4 when the exact check finds an improving move.
    Check {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        profile: PathBuf,
        #[arg(long, value_enum, default_value_t = CheckMode::Exact)]
        mode: CheckMode,
    },
    /// Best-response dynamics; writes a JSON-lines trace.
    Dynamics(DynamicsArgs),
    /// All equilibria of a tiny game with the price of anarchy and stability.
    Enumerate {
        #[arg(long)]
        game: PathBuf,
    },
    /// Structural validators; exits 4 if any reports a violation.
    Analyze {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        profile: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', required = true)]
        checks: Vec<Check>,
    },
    /// Solve k-center (or k-median) on a graph through a best response.
    Reduce {
        /// Graph JSON `{"n", "edges"}` with 1-based endpoints.
        #[arg(long = "kcenter")]
        graph: PathBuf,
        #[arg(short = 'k', long = "k")]
        k: usize,
        /// Use the SUM version, which solves k-median.
        #[arg(long)]
        median: bool,
        /// Also run the brute-force solver and require agreement.
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    /// Comma-separated budgets for the existence construction.
    #[arg(long, value_delimiter = ',')]
    budgets: Option<Vec<usize>>,
    /// Version written to game.json (families have a natural default).
    #[arg(long, value_enum)]
    version: Option<VersionArg>,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct DynamicsArgs {
    #[arg(long)]
    game: PathBuf,
    #[arg(long, value_enum, default_value_t = InitArg::Random)]
    init: InitArg,
    /// Initial profile when `--init profile`.
    #[arg(long)]
    profile: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OrderArg::RoundRobin)]
    order: OrderArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    rounds: usize,
    #[arg(long, value_enum, default_value_t = OracleArg::Exact)]
    oracle: OracleArg,
    /// Trace file; the trace goes to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Family {
    Spider,
    BinaryTree,
    WordGraph,
    #[value(alias = "theorem3")]
    Existence,
    Sqrtlog,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum VersionArg {
    Sum,
    Max,
}

impl From<VersionArg> for Version {
    fn from(v: VersionArg) -> Self {
        match v {
            VersionArg::Sum => Version::Sum,
            VersionArg::Max => Version::Max,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum OracleArg {
    Exact,
    Swap,
}

impl From<OracleArg> for MoveOracle {
    fn from(o: OracleArg) -> Self {
        match o {
            OracleArg::Exact => MoveOracle::Exact,
            OracleArg::Swap => MoveOracle::Swap,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum CheckMode {
    Exact,
    Sufficient,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum InitArg {
    Profile,
    Random,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum OrderArg {
    RoundRobin,
    Random,
}

impl From<OrderArg> for OrderPolicy {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::RoundRobin => OrderPolicy::RoundRobin,
            OrderArg::Random => OrderPolicy::Random,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Check {
    Structure,
    TreeBound,
    Connectivity,
    Expansion,
}

/// Everything that determines a run's output.
#[derive(Debug, Clone, Serialize)]
struct RunConfig {
    command: &'static str,
    inputs: Vec<String>,
    output: Option<String>,
    seed: u64,
    caps: Caps,
    round_limit: Option<usize>,
    version: Option<Version>,
    order: Option<OrderPolicy>,
    #[serde(skip_serializing_if = "Value::is_null")]
    params: Value,
}

impl RunConfig {
    fn new(command: &'static str, caps: Caps) -> Self {
        RunConfig {
            command,
            inputs: Vec::new(),
            output: None,
            seed: 0,
            caps,
            round_limit: None,
            version: None,
            order: None,
            params: Value::Null,
        }
    }

    fn input(mut self, path: &Path) -> Self {
        self.inputs.push(path.display().to_string());
        self
    }

    fn meta(&self) -> Value {
        json!({
            "tool_version": env!("CARGO_PKG_VERSION"),
            "run_config": self,
            "seed": self.seed,
        })
    }
}

/// A command's result: JSON for stdout and whether a check failed.
struct Report {
    body: Value,
    failed: bool,
}

impl Report {
    fn ok(body: Value) -> Self {
        Report { body, failed: false }
    }
}

fn with_meta(mut body: Value, rc: &RunConfig) -> Value {
    if let Value::Object(map) = &mut body {
        map.insert("meta".into(), rc.meta());
    }
    body
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_game(path: &Path) -> anyhow::Result<GameSpec> {
    parse_game(&read(path)?).with_context(|| format!("parsing game {}", path.display()))
}

fn load_profile(path: &Path, spec: &GameSpec) -> anyhow::Result<StrategyProfile> {
    parse_profile(&read(path)?, spec).with_context(|| format!("parsing profile {}", path.display()))
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn player_index(player: usize, n: usize) -> anyhow::Result<usize> {
    if player == 0 || player > n {
        bail!(Error::IndexOutOfRange { index: player, n });
    }
    Ok(player - 1)
}

fn best_response_json(br: &BestResponseResult) -> Value {
    json!({
        "player": br.player + 1,
        "strategy": one_based(&br.strategy),
        "cost": br.cost,
        "current_cost": br.current_cost,
        "improved": br.improved,
        "candidates_examined": br.candidates_examined,
    })
}

fn construction_json(out: &ConstructionOutput) -> Value {
    json!({
        "provenance": out.provenance,
        "n": out.spec.n(),
        "claims": out.claims,
        "permutation": out.permutation.as_ref().map(|p| one_based(p)),
        "layered": out.layered.as_ref().map(|t| json!({
            "zero_budget": t.zero_budget,
            "t": t.t,
            "s": t.s,
            "phase2_counts": t.phase2_counts.iter().map(|&(pos, c)| json!([pos + 1, c])).collect::<Vec<_>>(),
            "single_incoming_after_phase2": t.single_incoming_after_phase2,
            "connector_leaves_private": t.connector_leaves_private,
        })),
    })
}

fn generate(args: &GenerateArgs, caps: Caps) -> anyhow::Result<Report> {
    let need = |v: Option<usize>, name: &str| v.with_context(|| format!("--{name} is required for this family"));
    let out = match args.family {
        Family::Spider => gen_spider(need(args.k, "k")?)?,
        Family::BinaryTree => gen_perfect_binary_tree(need(args.k, "k")?)?,
        Family::WordGraph => gen_word_graph(need(args.t, "t")?, need(args.k, "k")?, caps.vertex_cap)?,
        Family::Sqrtlog => gen_sqrtlog_instance(need(args.k, "k")?, caps.vertex_cap)?,
        Family::Existence => {
            let budgets = args.budgets.as_ref().context("--budgets is required for the existence family")?;
            let version = args.version.map(Version::from).unwrap_or(Version::Sum);
            construct_equilibrium(budgets, version)?
        }
    };
    let spec = match args.version {
        Some(v) => out.spec.with_version(v.into()),
        None => out.spec.clone(),
    };
    let mut rc = RunConfig::new("generate", caps);
    rc.output = Some(args.out.display().to_string());
    rc.version = Some(spec.version());
    rc.params = json!({ "family": args.family, "k": args.k, "t": args.t, "budgets": args.budgets });
    let meta = rc.meta();

    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let game = GameFile::from_spec(&spec, Some(meta.clone()));
    let profile = ProfileFile::from_profile(&out.profile, Some(meta.clone()));
    let r = Realization::from_profile(&out.profile);
    let comment = format!("bbncg {}", serde_json::to_string(&meta)?);
    let dot = to_dot(&r, out.labels.as_deref(), Some(&comment));
    fs::write(args.out.join("game.json"), serde_json::to_string_pretty(&game)? + "\n")?;
    fs::write(args.out.join("profile.json"), serde_json::to_string_pretty(&profile)? + "\n")?;
    fs::write(args.out.join("graph.dot"), dot)?;
    let mut body = construction_json(&out);
    body["version"] = json!(spec.version());
    body["files"] = json!(["game.json", "profile.json", "graph.dot"]);
    Ok(Report::ok(with_meta(body, &rc)))
}

fn run_cost(game: &Path, profile: &Path, player: Option<usize>, caps: Caps) -> anyhow::Result<Report> {
    let spec = load_game(game)?;
    let p = load_profile(profile, &spec)?;
    let mut rc = RunConfig::new("cost", caps).input(game).input(profile);
    rc.version = Some(spec.version());
    let rep = cost_report(&Realization::from_profile(&p), spec.version());
    let body = match player {
        Some(i) => {
            let u = player_index(i, spec.n())?;
            json!({
                "version": spec.version(),
                "player": i,
                "cost": rep.costs[u],
                "local_diameter": rep.local_diameters[u],
                "kappa": rep.kappa,
            })
        }
        None => serde_json::to_value(&rep)?,
    };
    Ok(Report::ok(with_meta(body, &rc)))
}

fn run_best_response(game: &Path, profile: &Path, player: usize, mode: OracleArg, caps: Caps) -> anyhow::Result<Report> {
    let spec = load_game(game)?;
    let p = load_profile(profile, &spec)?;
    let u = player_index(player, spec.n())?;
    let mut rc = RunConfig::new("best-response", caps).input(game).input(profile);
    rc.version = Some(spec.version());
    rc.params = json!({ "player": player, "mode": format!("{mode:?}").to_lowercase() });
    let br = match mode {
        OracleArg::Exact => best_response_exact(&spec, &p, u, &caps)?,
        OracleArg::Swap => best_response_swap(&spec, &p, u)?,
    };
    Ok(Report::ok(with_meta(best_response_json(&br), &rc)))
}

fn run_check(game: &Path, profile: &Path, mode: CheckMode, caps: Caps) -> anyhow::Result<Report> {
    let spec = load_game(game)?;
    let p = load_profile(profile, &spec)?;
    let mut rc = RunConfig::new("check", caps).input(game).input(profile);
    rc.version = Some(spec.version());
    match mode {
        CheckMode::Exact => {
            rc.params = json!({ "mode": "exact" });
            let chk = is_equilibrium_exact(&spec, &p, &caps)?;
            let body = json!({
                "mode": "exact",
                "version": spec.version(),
                "is_equilibrium": chk.is_equilibrium,
                "witness": chk.witness.as_ref().map(WitnessFile::from),
            });
            Ok(Report {
                body: with_meta(body, &rc),
                failed: !chk.is_equilibrium,
            })
        }
        CheckMode::Sufficient => {
            rc.params = json!({ "mode": "sufficient" });
            let s = is_equilibrium_sufficient(&spec, &p)?;
            let body = json!({
                "mode": "sufficient",
                "result": s,
                "is_equilibrium": if s == Sufficiency::Proven { Value::Bool(true) } else { Value::Null },
            });
            Ok(Report::ok(with_meta(body, &rc)))
        }
    }
}

fn run_dynamics(args: &DynamicsArgs, caps: Caps) -> anyhow::Result<Report> {
    let spec = load_game(&args.game)?;
    let mut rc = RunConfig::new("dynamics", caps).input(&args.game);
    let initial = match args.init {
        InitArg::Profile => {
            let path = args.profile.as_ref().context("--init profile needs --profile")?;
            rc = rc.input(path);
            load_profile(path, &spec)?
        }
        InitArg::Random => random_profile(&spec, &mut seeded_rng(args.seed)),
    };
    let config = DynamicsConfig {
        order: args.order.into(),
        oracle: args.oracle.into(),
        seed: args.seed,
        round_limit: args.rounds,
        caps,
    };
    rc.seed = args.seed;
    rc.round_limit = Some(args.rounds);
    rc.version = Some(spec.version());
    rc.order = Some(config.order);
    rc.output = args.out.as_ref().map(|p| p.display().to_string());
    rc.params = json!({
        "init": format!("{:?}", args.init).to_lowercase(),
        "oracle": config.oracle,
    });
    let trace = best_response_dynamics(&spec, &initial, &config)?;
    let jsonl = trace_to_jsonl(&trace, Some(rc.meta()));
    let summary = json!({
        "outcome": trace.outcome,
        "rounds": trace.rounds,
        "moves": trace.moves.len(),
        "final_profile": trace.final_profile.strategies().iter().map(|s| one_based(s)).collect::<Vec<_>>(),
    });
    match &args.out {
        Some(path) => {
            fs::write(path, jsonl).with_context(|| format!("writing {}", path.display()))?;
            Ok(Report::ok(with_meta(summary, &rc)))
        }
        None => {
            emit(&jsonl);
            Ok(Report {
                body: Value::Null,
                failed: false,
            })
        }
    }
}

fn run_enumerate(game: &Path, caps: Caps) -> anyhow::Result<Report> {
    let spec = load_game(game)?;
    let mut rc = RunConfig::new("enumerate", caps).input(game);
    rc.version = Some(spec.version());
    let en = enumerate_equilibria(&spec, &caps)?;
    let poa = price_of_anarchy_exhaustive(&spec, &caps)?;
    let equilibria: Vec<Value> = en
        .profiles
        .iter()
        .zip(&en.diameters)
        .map(|(p, d)| {
            json!({
                "strategies": p.strategies().iter().map(|s| one_based(s)).collect::<Vec<_>>(),
                "diameter": d,
            })
        })
        .collect();
    let body = json!({
        "version": spec.version(),
        "total_profiles": en.total_profiles,
        "equilibrium_count": en.count(),
        "equilibria": equilibria,
        "poa": poa,
    });
    Ok(Report {
        body: with_meta(body, &rc),
        // every game has an equilibrium; an empty enumeration is a violation
        failed: en.count() == 0,
    })
}

fn run_analyze(game: &Path, profile: &Path, checks: &[Check], caps: Caps) -> anyhow::Result<Report> {
    let spec = load_game(game)?;
    let p = load_profile(profile, &spec)?;
    let mut rc = RunConfig::new("analyze", caps).input(game).input(profile);
    rc.version = Some(spec.version());
    rc.params = json!({ "checks": checks });
    let mut results = serde_json::Map::new();
    let mut failed = false;
    for check in checks {
        let (key, value, holds) = match check {
            Check::Structure => {
                let rep = unit_budget_structure(&spec, &p)?;
                let holds = rep.verdict(spec.version()).is_none_or(|v| v.holds);
                let mut v = serde_json::to_value(&rep)?;
                v["cycle"] = json!(one_based(&rep.cycle));
                for (i, verdict) in rep.verdicts.iter().enumerate() {
                    if let Some(bbncg::analysis::StructureWitness::FarFromCycle { vertex, .. }) = verdict.witness {
                        v["verdicts"][i]["witness"]["vertex"] = json!(vertex + 1);
                    }
                }
                ("structure", v, holds)
            }
            Check::TreeBound => {
                let v = tree_diameter_bound_check(&spec, &p, &caps)?;
                ("tree-bound", serde_json::to_value(&v)?, v.holds)
            }
            Check::Connectivity => {
                let v = check_connectivity_theorem(&spec, &p, &caps)?;
                ("connectivity", serde_json::to_value(&v)?, v.holds)
            }
            Check::Expansion => {
                let f = expansion_profile(Realization::from_profile(&p).underlying())?;
                ("expansion", json!({ "f": f }), true)
            }
        };
        failed |= !holds;
        results.insert(key.into(), value);
    }
    Ok(Report {
        body: with_meta(json!({ "checks": results, "all_hold": !failed }), &rc),
        failed,
    })
}

fn run_reduce(graph: &Path, k: usize, median: bool, verify: bool, caps: Caps) -> anyhow::Result<Report> {
    let h = parse_graph(&read(graph)?).with_context(|| format!("parsing graph {}", graph.display()))?;
    let mut rc = RunConfig::new("reduce", caps).input(graph);
    let red = if median { reduce_kmedian(&h, k)? } else { reduce_kcenter(&h, k)? };
    rc.version = Some(red.spec.version());
    rc.params = json!({ "k": k, "median": median, "verify": verify });
    let br = best_response_exact(&red.spec, &red.profile, red.player, &caps)?;
    let objective = red.objective_from_cost(br.cost);
    let mut body = json!({
        "problem": if median { "k-median" } else { "k-center" },
        "k": k,
        "appended_player": red.player + 1,
        "best_response": best_response_json(&br),
        "centers": one_based(&br.strategy),
        "objective": objective,
    });
    let mut failed = false;
    if verify {
        let (opt, set) = if median {
            brute_force_kmedian(&h, k, caps.candidate_cap)?
        } else {
            brute_force_kcenter(&h, k, caps.candidate_cap)?
        };
        failed = opt != objective;
        body["verify"] = json!({ "brute_force_objective": opt, "brute_force_centers": one_based(&set), "agrees": !failed });
    }
    Ok(Report {
        body: with_meta(body, &rc),
        failed,
    })
}

fn configure_threads(flag: Option<usize>) -> anyhow::Result<()> {
    let threads = match flag {
        Some(t) => Some(t),
        None => match std::env::var("BBNCG_THREADS") {
            Ok(s) => Some(s.trim().parse().with_context(|| format!("BBNCG_THREADS = {s:?} is not a number"))?),
            Err(_) => None,
        },
    };
    if let Some(t) = threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global()?;
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> anyhow::Result<Report> {
    configure_threads(cli.threads)?;
    let caps = cli.caps.caps();
    match &cli.command {
        Command::Generate(args) => generate(args, caps),
        Command::Cost { game, profile, player } => run_cost(game, profile, *player, caps),
        Command::BestResponse {
            game,
            profile,
            player,
            mode,
        } => run_best_response(game, profile, *player, *mode, caps),
        Command::Check { game, profile, mode } => run_check(game, profile, *mode, caps),
        Command::Dynamics(args) => run_dynamics(args, caps),
        Command::Enumerate { game } => run_enumerate(game, caps),
        Command::Analyze { game, profile, checks } => run_analyze(game, profile, checks, caps),
        Command::Reduce { graph, k, median, verify } => run_reduce(graph, *k, *median, *verify, caps),
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::EnumerationCapExceeded { .. } | Error::ResourceBound { .. }) => EXIT_CAP,
        Some(Error::NotAnEquilibrium { .. }) => EXIT_CHECK_FAILED,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(report) => {
            if !report.body.is_null() {
                emit(&(serde_json::to_string_pretty(&report.body).expect("reports serialize") + "\n"));
            }
            if report.failed {
                ExitCode::from(EXIT_CHECK_FAILED)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
