use std::fs;
use std::io::{self, Read as _, Write as _};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::Duration;

use anyhow::{bail, Context as _, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use textpuzzle_core::generators::{generate, generate_dataset, DatasetConfig};
use textpuzzle_core::lexicon::KnowledgeBase;
use textpuzzle_core::solvers::{count_solutions, solve, DEFAULT_BUDGET};
use textpuzzle_core::{
    grade, read_instances, serialize_instance, Difficulty, GameKind, Lexicon, PuzzleInstance, Resources,
};
use textpuzzle_harness::report::{render_table, write_report, EPISODES_FILE, METRICS_FILE};
use textpuzzle_harness::{
    run_suite, FlawedPlayer, OraclePlayer, Player, RandomPlayer, RemoteConfig, RemoteModelPlayer, Shot, ShotBank,
    SuiteConfig,
};
use textpuzzle_serve::{ApiConfig, PuzzleSource, Store, SystemClock};

#[derive(Parser)]
#[command(name = "textpuzzle", version, about = "Text puzzle generation, grading and evaluation")]
struct Cli {
    /// Word list, one word per line (replaces the bundled list).
    #[arg(long, global = true)]
    words: Option<PathBuf>,
    /// Country table: country, capital, continent (tab separated).
    #[arg(long, global = true)]
    countries: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate instances as JSON lines.
    Gen(GenArgs),
    /// Generate the full test and train splits into a directory.
    Dataset(DatasetArgs),
    /// Grade an answer against an instance.
    Grade(GradeArgs),
    /// Print reference answers, or count solutions.
    Solve(SolveArgs),
    /// Run the multi-turn loop over a suite and write a report.
    Eval(EvalArgs),
    /// Serve the play API.
    Serve(ServeArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Game slug, short name, or `all`.
    #[arg(long, default_value = "all")]
    game: String,
    /// easy, medium, hard or `all`.
    #[arg(long, default_value = "all")]
    difficulty: String,
    /// Instances per game and difficulty.
    #[arg(long, default_value_t = 1)]
    count: u64,
    /// Instance k of a cell uses seed S + k.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print rendered prompts instead of JSON lines.
    #[arg(long)]
    prompt: bool,
}

#[derive(Args)]
struct DatasetArgs {
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 0)]
    master_seed: u64,
    #[arg(long, default_value_t = 1000)]
    per_cell_test: usize,
    #[arg(long, default_value_t = 100)]
    per_cell_train: usize,
    #[arg(long, default_value = "all")]
    game: String,
    #[arg(long, default_value = "all")]
    difficulty: String,
}

#[derive(Args)]
struct GradeArgs {
    /// Instance file (JSON lines); the first instance is used unless --id is given.
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    id: Option<String>,
    /// Answer file, or `-` for stdin.
    #[arg(long)]
    answer: String,
    /// Print the verdict as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Count solutions up to K instead of printing one.
    #[arg(long)]
    count_limit: Option<usize>,
    /// Solver time budget per instance, in seconds.
    #[arg(long, default_value_t = DEFAULT_BUDGET.as_secs_f64())]
    budget: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlayerKind {
    Oracle,
    Flawed,
    Random,
    Remote,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    suite: PathBuf,
    #[arg(long, value_enum)]
    player: PlayerKind,
    /// 0 or 1 in-context examples.
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    shot: u8,
    /// Train split used for one-shot examples.
    #[arg(long)]
    train: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    turns: usize,
    #[arg(long, default_value_t = 4)]
    parallel: usize,
    #[arg(long)]
    out: PathBuf,
    /// Fraction of instances the flawed player answers wrongly on turn 1.
    #[arg(long, default_value_t = 1.0)]
    flaw_rate: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Base URL of an OpenAI-style chat completions API.
    #[arg(long)]
    endpoint: Option<String>,
    #[arg(long)]
    model: Option<String>,
    /// Environment variable holding the API key.
    #[arg(long, default_value = textpuzzle_harness::remote::DEFAULT_API_KEY_ENV)]
    api_key_env: String,
    #[arg(long)]
    max_tokens: Option<u32>,
    #[arg(long, default_value_t = 120)]
    timeout_s: u64,
    #[arg(long, default_value_t = 3)]
    max_attempts: u32,
    /// Minimum milliseconds between requests.
    #[arg(long, default_value_t = 0)]
    rate_limit_ms: u64,
    /// Transcript file; defaults to transcript.jsonl in the output directory.
    #[arg(long)]
    transcript: Option<PathBuf>,
}

#[derive(Args)]
struct ServeArgs {
    #[arg(long, default_value_t = 8080)]
    port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    host: String,
    /// Draw puzzles from this suite instead of generating them.
    #[arg(long)]
    suite: Option<PathBuf>,
    /// Session log directory; sessions are kept in memory when omitted.
    #[arg(long)]
    log_dir: Option<PathBuf>,
    /// Environment variable holding a shared access token.
    #[arg(long)]
    token_env: Option<String>,
    #[arg(long)]
    cors_origin: Option<String>,
}

fn games(spec: &str) -> Result<Vec<GameKind>> {
    if spec == "all" {
        return Ok(GameKind::ALL.to_vec());
    }
    spec.split(',').map(|s| s.parse().map_err(anyhow::Error::from)).collect()
}

fn difficulties(spec: &str) -> Result<Vec<Difficulty>> {
    if spec == "all" {
        return Ok(Difficulty::ALL.to_vec());
    }
    spec.split(',').map(|s| s.parse().map_err(anyhow::Error::from)).collect()
}

fn load_instances(path: &Path) -> Result<Vec<PuzzleInstance>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let instances = read_instances(&text).with_context(|| format!("parsing {}", path.display()))?;
    if instances.is_empty() {
        bail!("{} holds no instances", path.display());
    }
    Ok(instances)
}

fn output(path: Option<&Path>) -> Result<Box<dyn io::Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn cmd_gen(a: GenArgs) -> Result<ExitCode> {
    let mut out = output(a.out.as_deref())?;
    for g in games(&a.game)? {
        for d in difficulties(&a.difficulty)? {
            for k in 0..a.count {
                let inst = generate(g, d, a.seed + k)?;
                if a.prompt {
                    writeln!(out, "# {}\n{}\n", inst.id, inst.prompt)?;
                } else {
                    writeln!(out, "{}", serialize_instance(&inst))?;
                }
            }
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_dataset(a: DatasetArgs) -> Result<ExitCode> {
    let config = DatasetConfig {
        master_seed: a.master_seed,
        per_cell_test: a.per_cell_test,
        per_cell_train: a.per_cell_train,
        games: games(&a.game)?,
        difficulties: difficulties(&a.difficulty)?,
    };
    let summary = generate_dataset(&config, &a.out)?;
    println!("game\tdifficulty\ttest\ttrain\tshortfall");
    for c in &summary.cells {
        println!("{}\t{}\t{}\t{}\t{}", c.game.slug(), c.difficulty.slug(), c.test, c.train, c.shortfall);
    }
    println!("total\t-\t{}\t-\t-", summary.total());
    Ok(ExitCode::SUCCESS)
}

fn cmd_grade(a: GradeArgs) -> Result<ExitCode> {
    let instances = load_instances(&a.instance)?;
    let inst = match &a.id {
        Some(id) => instances.iter().find(|i| &i.id == id).with_context(|| format!("no instance {id}"))?,
        None => &instances[0],
    };
    let answer = if a.answer == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(&a.answer).with_context(|| format!("reading {}", a.answer))?
    };
    let v = grade(inst, &answer);
    if a.json {
        println!("{}", serde_json::to_string(&v)?);
    } else {
        println!("instance: {}", inst.id);
        println!("solved: {}", v.solved);
        println!("feedback:");
        for line in &v.feedback {
            println!("- {line}");
        }
    }
    Ok(if v.solved { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_solve(a: SolveArgs) -> Result<ExitCode> {
    let budget = Duration::from_secs_f64(a.budget);
    let mut failed = false;
    for inst in load_instances(&a.instance)? {
        match a.count_limit {
            Some(k) => match count_solutions(&inst, k, budget) {
                Ok(n) => println!("{}\t{n}", inst.id),
                Err(e) => {
                    failed = true;
                    println!("{}\terror: {e}", inst.id);
                }
            },
            None => match solve(&inst, budget) {
                Ok(r) => println!("# {}\n{}\n", inst.id, r.answer),
                Err(e) => {
                    failed = true;
                    println!("# {}\nerror: {e}\n", inst.id);
                }
            },
        }
    }
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn cmd_eval(a: EvalArgs) -> Result<ExitCode> {
    let suite = load_instances(&a.suite)?;
    let shot = if a.shot == 1 { Shot::One } else { Shot::Zero };
    let bank = match (shot, &a.train) {
        (Shot::One, Some(train)) => ShotBank::from_train(&load_instances(train)?, DEFAULT_BUDGET)?,
        (Shot::One, None) => bail!("--shot 1 needs --train"),
        (Shot::Zero, _) => ShotBank::default(),
    };
    fs::create_dir_all(&a.out)?;
    let player: Box<dyn Player> = match a.player {
        PlayerKind::Oracle => Box::new(OraclePlayer::default()),
        PlayerKind::Flawed => Box::new(FlawedPlayer::with_rate(a.flaw_rate)),
        PlayerKind::Random => Box::new(RandomPlayer { seed: a.seed }),
        PlayerKind::Remote => {
            let endpoint = a.endpoint.clone().context("--player remote needs --endpoint")?;
            let model = a.model.clone().context("--player remote needs --model")?;
            let config = RemoteConfig {
                api_key_env: a.api_key_env.clone(),
                max_attempts: a.max_attempts,
                timeout: Duration::from_secs(a.timeout_s),
                min_interval: Duration::from_millis(a.rate_limit_ms),
                max_tokens: a.max_tokens,
                transcript_path: Some(a.transcript.clone().unwrap_or_else(|| a.out.join("transcript.jsonl"))),
                ..RemoteConfig::new(endpoint, model)
            };
            Box::new(RemoteModelPlayer::new(config)?)
        }
    };
    let config = SuiteConfig { shot, max_turns: a.turns, parallelism: a.parallel };
    let done = AtomicUsize::new(0);
    let total = suite.len();
    let progress = |_: &textpuzzle_core::EpisodeRecord| {
        let n = done.fetch_add(1, Ordering::Relaxed) + 1;
        if n.is_multiple_of(100) || n == total {
            eprintln!("{n}/{total} episodes");
        }
    };
    let result = run_suite(player.as_ref(), &suite, &bank, &config, &progress)?;
    write_report(&a.out, &result.metrics, &result.episodes)?;
    print!("{}", render_table(&result.metrics));
    let errors: usize = result.metrics.cells.iter().map(|c| c.errors).sum();
    eprintln!(
        "wrote {} and {} to {} ({errors} episodes ended in errors)",
        METRICS_FILE,
        EPISODES_FILE,
        a.out.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_serve(a: ServeArgs) -> Result<ExitCode> {
    let source = match &a.suite {
        Some(p) => PuzzleSource::Suite(load_instances(p)?),
        None => PuzzleSource::Generate,
    };
    let clock = Arc::new(SystemClock);
    let store = match &a.log_dir {
        Some(dir) => Store::open(dir, source, clock)?,
        None => Store::in_memory(source, clock),
    };
    let token = match &a.token_env {
        Some(var) => Some(std::env::var(var).with_context(|| format!("{var} is not set"))?),
        None => None,
    };
    let addr: SocketAddr = format!("{}:{}", a.host, a.port).parse().context("bad --host/--port")?;
    let config = ApiConfig { token, cors_origin: a.cors_origin };
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind(addr).await?;
        eprintln!("listening on http://{}", listener.local_addr()?);
        textpuzzle_serve::serve_on(listener, Arc::new(store), config).await
    })?;
    Ok(ExitCode::SUCCESS)
}

fn install_resources(words: Option<&Path>, countries: Option<&Path>) -> Result<()> {
    if words.is_none() && countries.is_none() {
        return Ok(());
    }
    let mut resources = Resources::bundled();
    if let Some(p) = words {
        resources.lexicon = Lexicon::load(p)?;
    }
    if let Some(p) = countries {
        resources.knowledge = KnowledgeBase::load(p)?;
    }
    Resources::install(resources)?;
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    install_resources(cli.words.as_deref(), cli.countries.as_deref())?;
    match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Dataset(a) => cmd_dataset(a),
        Command::Grade(a) => cmd_grade(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Serve(a) => cmd_serve(a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
