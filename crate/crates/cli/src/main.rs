//! `mahjong`: runs single games, batches, duels, weight sweeps and t-tests.
//!
//! Exit status is 0 on success, 2 for invalid flags or parameters and 1 for
//! runtime failures such as unwritable output paths.

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use mahjong_core::arena::{run_batch, run_match_series, sweep, Pairing, Stakes};
use mahjong_core::engine::{render_snapshot, Game, Outcome};
use mahjong_core::hand_eval::ScoreRules;
use mahjong_core::planner::q_values;
use mahjong_core::report;
use mahjong_core::stats::{critical_value, one_tailed_t, Significance, TTestResult};
use mahjong_core::ShapingParams;

#[derive(Parser)]
#[command(
    name = "mahjong",
    version,
    about = "Single-player Mahjong solver and experiment harness"
)]
struct Cli {
    /// Worker threads; 0 uses one per core. Outputs do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play one game with the greedy planner.
    Play(PlayArgs),
    /// Play many independent games and summarize them.
    Batch(BatchArgs),
    /// Run a series of tandem matches between two weights.
    Duel(DuelArgs),
    /// Run a match series for every pair of weights.
    Sweep(SweepArgs),
    /// One-tailed one-sample t-test on a one-column CSV.
    Ttest(TtestArgs),
}

#[derive(Args)]
struct Common {
    /// Master seed.
    #[arg(long)]
    seed: u64,
    /// Base payoff b.
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    base_payoff: f64,
    /// Score rule table as `key = value` lines.
    #[arg(long)]
    score_table: Option<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct PlayArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    weight: f64,
    /// Record every turn's Q-values in the game log.
    #[arg(long)]
    record_q: bool,
}

#[derive(Args)]
struct BatchArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    weight: f64,
    #[arg(long, default_value_t = 1000)]
    games: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum PairingArg {
    Independent,
    Mirrored,
}

#[derive(Args)]
struct Stake {
    /// Winner takes factor · 2^m · b; 3 (every opponent pays) or 1.
    #[arg(long, default_value_t = 3)]
    transfer_factor: u32,
}

#[derive(Args)]
struct DuelArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    stake: Stake,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    w1: f64,
    #[arg(long, default_value_t = 1.2, allow_negative_numbers = true)]
    w2: f64,
    #[arg(long, default_value_t = 500)]
    matches: usize,
    #[arg(long, value_enum, default_value_t = PairingArg::Independent)]
    pairing: PairingArg,
    #[command(flatten)]
    test: TestArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    stake: Stake,
    /// Player-1 weights (matrix rows), comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_negative_numbers = true
    )]
    w1: Vec<f64>,
    /// Player-2 weights (matrix columns), comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_negative_numbers = true
    )]
    w2: Vec<f64>,
    #[arg(long, default_value_t = 100)]
    matches: usize,
}

#[derive(Args)]
struct TestArgs {
    /// Null-hypothesis mean.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    mu0: f64,
    /// Significance level for the table lookup: 1 or 5 (percent).
    #[arg(long, default_value = "1")]
    significance: String,
    /// Critical value to use instead of the table.
    #[arg(long, allow_negative_numbers = true)]
    critical: Option<f64>,
}

#[derive(Args)]
struct TtestArgs {
    /// CSV with one numeric column; a non-numeric header line is skipped.
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    test: TestArgs,
}

/// Failures split by exit status.
enum Failure {
    Usage(String),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

type CmdResult = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let verbose = cli.verbose;
    let result = pool.install(|| match cli.command {
        Command::Play(a) => cmd_play(a, verbose),
        Command::Batch(a) => cmd_batch(a, verbose),
        Command::Duel(a) => cmd_duel(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Ttest(a) => cmd_ttest(a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn load_params(common: &Common, weight: f64) -> Result<ShapingParams, Failure> {
    let rules = match &common.score_table {
        None => ScoreRules::default(),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading score table {}", path.display()))?;
            ScoreRules::from_kv_str(&text).map_err(usage)?
        }
    };
    let params = ShapingParams {
        weight,
        base_payoff: common.base_payoff,
        rules,
    };
    params.validate().map_err(usage)?;
    Ok(params)
}

fn stakes(common: &Common, stake: &Stake) -> Result<Stakes, Failure> {
    let s = Stakes {
        base_payoff: common.base_payoff,
        transfer_factor: stake.transfer_factor,
    };
    s.validate().map_err(usage)?;
    Ok(s)
}

fn require_positive(name: &str, n: usize) -> CmdResult {
    if n == 0 {
        return Err(usage(format!("--{name} must be at least 1")));
    }
    Ok(())
}

fn write(dir: &Path, name: &str, contents: &str) -> CmdResult {
    output::write_atomic(&dir.join(name), contents)?;
    Ok(())
}

fn cmd_play(a: PlayArgs, verbose: bool) -> CmdResult {
    let params = load_params(&a.common, a.weight)?;
    let mut game = Game::new(a.common.seed, &params, a.record_q).map_err(usage)?;
    while game.outcome().is_none() {
        if verbose {
            let report = q_values(game.state(), &params).context("computing Q-values")?;
            let snapshot = render_snapshot(game.state(), &report).context("rendering snapshot")?;
            println!("turn {}\n{snapshot}", game.discards() + 1);
        }
        game.step();
    }
    let log = game.finish();
    write(&a.common.out, "game.log", &log.to_text())?;
    match &log.outcome {
        Outcome::Won { score, discards } => println!(
            "won after {discards} discards: multiplier {}, individual payoff {}, total payoff {}",
            score.multiplier, score.individual_payoff, score.total_payoff
        ),
        Outcome::Exhausted { discards } => println!("wall exhausted after {discards} discards"),
    }
    Ok(())
}

fn cmd_batch(a: BatchArgs, verbose: bool) -> CmdResult {
    require_positive("games", a.games)?;
    let params = load_params(&a.common, a.weight)?;
    let run = run_batch(a.games, &params, a.common.seed).context("running batch")?;
    if verbose {
        for g in &run.games {
            eprintln!(
                "game {} seed {}: won {} after {} discards",
                g.index, g.seed, g.won, g.discards
            );
        }
    }
    let summary = report::batch_report(&run.stats, &params, a.common.seed);
    let out = &a.common.out;
    write(out, "report.txt", &summary)?;
    write(out, "games.csv", &report::batch_games_csv(&run))?;
    write(
        out,
        "discard_histogram.csv",
        &report::discard_histogram_csv(&run.stats),
    )?;
    write(
        out,
        "score_histogram.csv",
        &report::score_histogram_csv(&run.stats),
    )?;
    print!("{summary}");
    Ok(())
}

fn resolve_critical(test: &TestArgs, n: usize) -> Result<Option<f64>, Failure> {
    if let Some(c) = test.critical {
        if !c.is_finite() {
            return Err(usage("--critical must be finite"));
        }
        return Ok(Some(c));
    }
    let sig: Significance = test.significance.parse().map_err(usage)?;
    Ok(critical_value(sig, n).ok())
}

fn run_test(samples: &[f64], test: &TestArgs) -> Result<Option<TTestResult>, Failure> {
    let Some(critical) = resolve_critical(test, samples.len())? else {
        return Ok(None);
    };
    Ok(one_tailed_t(samples, test.mu0, critical).ok())
}

fn cmd_duel(a: DuelArgs) -> CmdResult {
    require_positive("matches", a.matches)?;
    let p1 = load_params(&a.common, a.w1)?;
    let p2 = load_params(&a.common, a.w2)?;
    let stakes = stakes(&a.common, &a.stake)?;
    let pairing = match a.pairing {
        PairingArg::Independent => Pairing::Independent,
        PairingArg::Mirrored => Pairing::Mirrored,
    };
    let series = run_match_series(a.matches, &p1, &p2, &stakes, a.common.seed, pairing)
        .context("running matches")?;
    let test = run_test(&series.transfers(), &a.test)?;
    let summary = report::series_report(&series, &p1, &p2, &stakes, a.common.seed, test.as_ref());
    let out = &a.common.out;
    write(out, "matches.csv", &report::series_csv(&series))?;
    write(out, "cumulative.csv", &report::cumulative_csv(&series))?;
    write(out, "report.txt", &summary)?;
    print!("{summary}");
    Ok(())
}

fn cmd_sweep(a: SweepArgs) -> CmdResult {
    require_positive("matches", a.matches)?;
    let base = load_params(&a.common, 0.0)?;
    let stakes = stakes(&a.common, &a.stake)?;
    let matrix = sweep(&a.w1, &a.w2, a.matches, &base, &stakes, a.common.seed).map_err(usage)?;
    let csv = report::sweep_csv(&matrix);
    write(&a.common.out, "sweep.csv", &csv)?;
    print!("{csv}");
    Ok(())
}

fn read_samples(path: &Path) -> Result<Vec<f64>, Failure> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut samples = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let field = line.trim();
        if field.is_empty() {
            continue;
        }
        match field.parse::<f64>() {
            Ok(x) if x.is_finite() => samples.push(x),
            _ if i == 0 => {}
            _ => {
                return Err(usage(format!(
                    "{}:{}: not a number: `{field}`",
                    path.display(),
                    i + 1
                )))
            }
        }
    }
    Ok(samples)
}

fn cmd_ttest(a: TtestArgs) -> CmdResult {
    let samples = read_samples(&a.input)?;
    let critical = resolve_critical(&a.test, samples.len())?.ok_or_else(|| {
        usage(format!(
            "no tabulated critical value for n = {}; pass --critical",
            samples.len()
        ))
    })?;
    let r = one_tailed_t(&samples, a.test.mu0, critical).map_err(usage)?;
    println!("n: {}", r.n);
    println!("mean: {:.6}", r.mean);
    println!("std: {:.6}", r.std);
    println!("mu0: {}", r.mu0);
    println!("t: {:.6}", r.t_statistic);
    println!("critical: {}", r.critical);
    println!("reject: {}", r.reject);
    Ok(())
}
