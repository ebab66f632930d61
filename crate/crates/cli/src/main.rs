use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use udtc::compose::Limits;
use udtc::evaluate::{DEFAULT_RESTARTS, DEFAULT_SEED};
use udtc::runner::{self, RunConfig, RunError, EXIT_INPUT, EXIT_OK};

/// Derive DRS logical forms from dependency trees and score them.
#[derive(Parser)]
#[command(name = "udtc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derive every distinct form for each sentence of a CoNLL-U file.
    Derive {
        conllu: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
    /// Score system clause files against gold, best form per item.
    Score {
        system: PathBuf,
        gold: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
    /// Derive and score a corpus, writing a report.
    EvalCorpus {
        conllu: PathBuf,
        gold: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
    /// Print corpus statistics from an earlier report.
    Stats { report: PathBuf },
    /// Load a lexicon and report problems.
    CheckLexicon {
        #[arg(long)]
        lexicon: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Opts {
    /// Lexicon file; the built-in lexicon when absent.
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Cap on distinct forms per node and per sentence.
    #[arg(long, default_value_t = 10_000)]
    limits_forms: usize,
    /// Time budget per sentence.
    #[arg(long, default_value_t = 10.0)]
    limits_seconds: f64,
    /// all, or a comma-separated list of +D+L, +D-L, -D+L, -D-L.
    #[arg(long, default_value = "all", allow_hyphen_values = true)]
    metrics: String,
    #[arg(long, default_value_t = DEFAULT_RESTARTS)]
    restarts: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads; 0 for one per core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Opts {
    fn config(self) -> Result<RunConfig, String> {
        if !(self.limits_seconds.is_finite() && self.limits_seconds > 0.0) {
            return Err("--limits-seconds must be positive".into());
        }
        if self.limits_forms == 0 {
            return Err("--limits-forms must be positive".into());
        }
        let metrics = runner::parse_metrics(&self.metrics)?;
        Ok(RunConfig {
            lexicon: self.lexicon,
            limits: Limits {
                max_node_forms: self.limits_forms,
                max_sentence_forms: self.limits_forms,
                time_budget: Duration::from_secs_f64(self.limits_seconds),
            },
            metrics,
            restarts: self.restarts,
            seed: self.seed,
            jobs: self.jobs,
            out: self.out,
        })
    }
}

fn run(cli: Cli) -> Result<i32, RunError> {
    match cli.command {
        Command::Derive { conllu, opts } => {
            let cfg = match opts.config() {
                Ok(c) => c,
                Err(e) => return Ok(usage(&e)),
            };
            let out = runner::derive(&conllu, &cfg)?;
            if cfg.out.is_none() {
                print!("{}", out.forms_text);
            }
            for it in &out.items {
                eprintln!(
                    "item {}: {} forms ({} derivations){}",
                    it.item,
                    it.distinct_forms,
                    it.raw_derivations,
                    if it.truncated { ", truncated" } else { "" }
                );
                for w in &it.warnings {
                    eprintln!("  warning: {}", w);
                }
                if let (Some(f), Some(d)) = (&it.failure, &it.failure_detail) {
                    eprintln!("  failed: {}: {}", f, d);
                }
            }
            Ok(out.exit_code())
        }
        Command::Score { system, gold, opts } => {
            let cfg = match opts.config() {
                Ok(c) => c,
                Err(e) => return Ok(usage(&e)),
            };
            let out = runner::score(&system, &gold, &cfg)?;
            print!("{}", runner::metric_table(&out.summaries));
            Ok(EXIT_OK)
        }
        Command::EvalCorpus { conllu, gold, opts } => {
            let cfg = match opts.config() {
                Ok(c) => c,
                Err(e) => return Ok(usage(&e)),
            };
            let out = runner::eval_corpus(&conllu, &gold, &cfg)?;
            print!("{}", runner::metric_table(&out.report.metrics));
            print!("{}", runner::format_stats(&out.report.stats));
            Ok(EXIT_OK)
        }
        Command::Stats { report } => {
            let stats = runner::stats_from_report(&report)?;
            print!("{}", runner::format_stats(&stats));
            Ok(EXIT_OK)
        }
        Command::CheckLexicon { lexicon } => {
            let cfg = RunConfig {
                lexicon,
                ..RunConfig::default()
            };
            let lex = runner::load_configured_lexicon(&cfg)?;
            println!(
                "{} word templates, {} relation entries",
                lex.word_count(),
                lex.relation_count()
            );
            for w in &lex.warnings {
                println!("warning: {}", w);
            }
            Ok(EXIT_OK)
        }
    }
}

fn usage(message: &str) -> i32 {
    eprintln!("error: {}", message);
    EXIT_INPUT
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = match run(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}", e);
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
