use std::error::Error;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use cubetutor_audit::MetricKind;
use cubetutor_core::macros::{LearnParams, MacroLibrary};
use cubetutor_core::search::{astar_solve, HeuristicProvider, LearnedHeuristic, MisplacedBound, TrainingParams};
use cubetutor_core::{check_reachable, CubeState, PartialGoal};
use cubetutor_dialogue::{DialogueEngine, UserProfile};

use crate::api::{audit_corpus, router, AppState};
use crate::config::Config;
use crate::library::{build_engine, learn_library, load_or_learn};
use crate::replay::replay_file;
use crate::store::{ProfileStore, Stores};

type CliResult = Result<ExitCode, Box<dyn Error>>;

#[derive(Debug, Parser)]
#[command(name = "cubetutor", version, about = "Rubik's cube tutor: server and operator tools")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum HeuristicChoice {
    Misplaced,
    Learned,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MetricArg {
    Die,
    Wrs,
}

impl From<MetricArg> for MetricKind {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Die => MetricKind::Die,
            MetricArg::Wrs => MetricKind::Wrs,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the HTTP API.
    Serve {
        #[arg(long)]
        config: PathBuf,
    },
    /// Print a shortest move sequence from FACELETS to the goal.
    Solve {
        facelets: String,
        #[arg(long, default_value = "solved")]
        goal: String,
        #[arg(long, value_enum, default_value = "misplaced")]
        heuristic: HeuristicChoice,
        #[arg(long, default_value_t = 1.0)]
        weight: f64,
        #[arg(long, default_value_t = 2_000_000)]
        budget: usize,
    },
    /// Learn a macro library for a goal and write it as JSON.
    DiscoverMacros {
        #[arg(long, default_value = "white-cross")]
        goal: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 200)]
        configs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 48)]
        macro_cap: usize,
    },
    /// Audit sentiment scorers on a template corpus.
    Audit {
        #[arg(long)]
        corpus: PathBuf,
        /// Built-in scorer name; repeat to compare several.
        #[arg(long = "system", required = true)]
        systems: Vec<String>,
        #[arg(long, value_enum)]
        metric: MetricArg,
        /// Use the cross product of templates, persons and words.
        #[arg(long)]
        expand: bool,
        /// Also write per-system scores as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Re-run a recorded transcript and report any response that differs.
    Replay {
        transcript: PathBuf,
        /// Lexicons, library and profiles come from here when the
        /// transcript does not carry its own.
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

pub fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Serve { config } => serve(config),
        Command::Solve {
            facelets,
            goal,
            heuristic,
            weight,
            budget,
        } => solve(&facelets, &goal, heuristic, weight, budget),
        Command::DiscoverMacros {
            goal,
            out,
            configs,
            seed,
            macro_cap,
        } => {
            let goal = PartialGoal::named(&goal)?;
            let params = LearnParams {
                config_count: configs,
                seed,
                macro_cap,
                ..LearnParams::default()
            };
            let library = learn_library(&goal, &params)?;
            library.save(&out)?;
            for m in library.macros() {
                println!("{}\t{}\t{}", m.name, m.sequence, m.precondition);
            }
            eprintln!("{} macros written to {}", library.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Audit {
            corpus,
            systems,
            metric,
            expand,
            csv,
        } => {
            let text = std::fs::read_to_string(&corpus).map_err(|e| format!("{}: {e}", corpus.display()))?;
            let report = audit_corpus(&text, expand, &systems)?;
            let rating = report.rating(metric.into());
            for r in &rating.systems {
                println!("{}\t{:.6}\t{}", r.system, r.score, r.rating);
            }
            if let Some(path) = csv {
                report.write_csv(std::fs::File::create(&path)?)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Replay { transcript, config } => replay(&transcript, config),
    }
}

fn solve(facelets: &str, goal: &str, heuristic: HeuristicChoice, weight: f64, budget: usize) -> CliResult {
    let start = CubeState::parse_facelets(facelets)?;
    start.validate()?;
    check_reachable(&start)?;
    let goal = PartialGoal::named(goal)?;
    let learned;
    let h: &dyn HeuristicProvider = match heuristic {
        HeuristicChoice::Misplaced => &MisplacedBound,
        HeuristicChoice::Learned => {
            learned = LearnedHeuristic::new(TrainingParams::default());
            &learned
        }
    };
    let result = astar_solve(&start, &goal, h, weight, budget)?;
    println!("{}", result.path);
    eprintln!("{} moves, {} nodes expanded", result.cost, result.nodes_expanded);
    Ok(ExitCode::SUCCESS)
}

fn load_config(path: &std::path::Path) -> Result<Config, Box<dyn Error>> {
    let config = Config::load(path)?.apply_env()?;
    config.validate()?;
    Ok(config)
}

fn serve(path: PathBuf) -> CliResult {
    let config = load_config(&path)?;
    let stores = Stores::open(&config.data_dir)?;
    let library = load_or_learn(&config)?;
    let engine = build_engine(&config, library)?;
    let addr = format!("{}:{}", config.host, config.port);
    let app = router(Arc::new(AppState::new(config, engine, stores)));
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind(&addr).await?;
        tracing::info!(%addr, "listening");
        axum::serve(listener, app)
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await
    })?;
    Ok(ExitCode::SUCCESS)
}

fn replay(transcript: &std::path::Path, config: Option<PathBuf>) -> CliResult {
    let (engine, profiles): (DialogueEngine, Box<dyn cubetutor_dialogue::ProfileLookup>) = match config {
        Some(path) => {
            let config = load_config(&path)?;
            let library = match &config.library {
                Some(p) => Some(MacroLibrary::load(p)?),
                None => None,
            };
            let profiles = ProfileStore::open(config.data_dir.join("profiles"))?;
            (build_engine(&config, library)?, Box::new(profiles))
        }
        None => (DialogueEngine::with_builtin_lexicons(), Box::new(Vec::<UserProfile>::new())),
    };
    let outcome = replay_file(transcript, &engine, profiles.as_ref())?;
    for m in &outcome.mismatches {
        println!("turn {} {}:\n- {}\n+ {}", m.turn, m.field, m.expected, m.actual);
    }
    for line in &outcome.quarantined {
        println!("line {line}: checksum mismatch, skipped");
    }
    println!(
        "{} turns replayed, {} differences, {} corrupt lines",
        outcome.turns,
        outcome.mismatches.len(),
        outcome.quarantined.len()
    );
    Ok(if outcome.is_clean() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
