//! Batch derivation and scoring over corpora.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clauses::{parse_items, write_items, ClauseError, ClauseSet};
use crate::compose::{derive_sentence, Limits};
use crate::conllu::{parse_conllu, ConlluError, DepTree};
use crate::evaluate::{best_score, MatchConfig, DEFAULT_RESTARTS, DEFAULT_SEED};
use crate::lexicon::{load_lexicon, Lexicon, LexiconError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DERIVATION: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

pub const FORMS_FILE: &str = "forms.clauses";
pub const DERIVATION_FILE: &str = "derivation.json";
pub const SCORES_FILE: &str = "scores.tsv";
pub const REPORT_FILE: &str = "report.json";
pub const TIMINGS_FILE: &str = "timings.tsv";

#[derive(Debug, Error)]
pub enum RunError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Conllu { path: PathBuf, source: ConlluError },
    #[error("{path}: {source}")]
    Clauses { path: PathBuf, source: ClauseError },
    #[error("{path}: {source}")]
    Lexicon {
        path: PathBuf,
        source: Box<LexiconError>,
    },
    #[error("{path}: malformed report: {message}")]
    Report { path: PathBuf, message: String },
    #[error("item counts differ: {system} system items, {gold} gold items")]
    CountMismatch { system: usize, gold: usize },
    #[error("gold item {item} holds {forms} DRSs; expected exactly one")]
    AmbiguousGold { item: usize, forms: usize },
    #[error("worker pool: {0}")]
    Pool(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Write { .. } | RunError::Pool(_) => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    /// `None` selects the built-in lexicon.
    pub lexicon: Option<PathBuf>,
    pub limits: Limits,
    pub metrics: Vec<MatchConfig>,
    pub restarts: usize,
    pub seed: u64,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            lexicon: None,
            limits: Limits::default(),
            metrics: MatchConfig::ALL.to_vec(),
            restarts: DEFAULT_RESTARTS,
            seed: DEFAULT_SEED,
            jobs: 0,
            out: None,
        }
    }
}

/// Parses `all` or a comma-separated list of metric labels.
pub fn parse_metrics(s: &str) -> Result<Vec<MatchConfig>, String> {
    if s == "all" {
        return Ok(MatchConfig::ALL.to_vec());
    }
    let mut out = Vec::new();
    for part in s.split(',') {
        let m: MatchConfig = part.trim().parse()?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    Ok(out)
}

fn read(path: &Path) -> Result<String, RunError> {
    fs::read_to_string(path).map_err(|source| RunError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), RunError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|source| RunError::Write {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    fs::write(path, text).map_err(|source| RunError::Write {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_configured_lexicon(cfg: &RunConfig) -> Result<Lexicon, RunError> {
    match &cfg.lexicon {
        None => Ok(Lexicon::default_lexicon()),
        Some(path) => load_lexicon(&read(path)?).map_err(|source| RunError::Lexicon {
            path: path.clone(),
            source: Box::new(source),
        }),
    }
}

pub fn read_trees(path: &Path) -> Result<Vec<DepTree>, RunError> {
    parse_conllu(&read(path)?).map_err(|source| RunError::Conllu {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_items(path: &Path) -> Result<Vec<Vec<ClauseSet>>, RunError> {
    parse_items(&read(path)?).map_err(|source| RunError::Clauses {
        path: path.to_path_buf(),
        source,
    })
}

/// One gold DRS per item.
pub fn read_gold(path: &Path) -> Result<Vec<ClauseSet>, RunError> {
    read_items(path)?
        .into_iter()
        .enumerate()
        .map(|(i, mut forms)| match forms.len() {
            0 => Ok(ClauseSet::default()),
            1 => Ok(forms.remove(0)),
            n => Err(RunError::AmbiguousGold {
                item: i + 1,
                forms: n,
            }),
        })
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ItemDerivation {
    pub item: usize,
    pub text: String,
    #[serde(skip)]
    pub forms: Vec<ClauseSet>,
    pub distinct_forms: usize,
    pub raw_derivations: u64,
    pub truncated: bool,
    pub warnings: Vec<String>,
    pub failure: Option<String>,
    pub failure_detail: Option<String>,
    #[serde(skip)]
    pub seconds: f64,
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, RunError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| RunError::Pool(e.to_string()))
}

/// Derives every tree concurrently; results come back in input order.
pub fn derive_trees(
    trees: &[DepTree],
    lex: &Lexicon,
    cfg: &RunConfig,
) -> Result<Vec<ItemDerivation>, RunError> {
    let limits = cfg.limits;
    Ok(pool(cfg.jobs)?.install(|| {
        trees
            .par_iter()
            .enumerate()
            .map(|(i, tree)| {
                let start = Instant::now();
                let r = derive_sentence(tree, lex, &limits);
                let forms: Vec<ClauseSet> = r.forms.iter().map(|d| d.to_clauses()).collect();
                ItemDerivation {
                    item: i + 1,
                    text: tree.sentence_text(),
                    distinct_forms: forms.len(),
                    forms,
                    raw_derivations: r.count_before_dedup,
                    truncated: r.truncated,
                    warnings: r.warnings,
                    failure: r.failure.as_ref().map(|f| f.kind.as_str().to_string()),
                    failure_detail: r.failure.map(|f| f.detail),
                    seconds: start.elapsed().as_secs_f64(),
                }
            })
            .collect()
    }))
}

#[derive(Debug, Clone)]
pub struct DeriveOutcome {
    pub items: Vec<ItemDerivation>,
    pub forms_text: String,
    pub report_json: String,
}

impl DeriveOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.items.iter().all(|i| i.distinct_forms > 0) {
            EXIT_OK
        } else {
            EXIT_DERIVATION
        }
    }
}

/// Derives a CoNLL-U file; with an output directory, writes the numbered
/// forms and a derivation report there.
pub fn derive(conllu: &Path, cfg: &RunConfig) -> Result<DeriveOutcome, RunError> {
    let lex = load_configured_lexicon(cfg)?;
    let trees = read_trees(conllu)?;
    let items = derive_trees(&trees, &lex, cfg)?;
    let forms: Vec<Vec<ClauseSet>> = items.iter().map(|i| i.forms.clone()).collect();
    let forms_text = if forms.is_empty() {
        String::new()
    } else {
        write_items(&forms)
    };
    let report_json = to_json(&items);
    if let Some(dir) = &cfg.out {
        write(&dir.join(FORMS_FILE), &forms_text)?;
        write(&dir.join(DERIVATION_FILE), &report_json)?;
    }
    Ok(DeriveOutcome {
        items,
        forms_text,
        report_json,
    })
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable report");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary {
    pub metric: String,
    /// Mean over items with output.
    pub mean_precision: f64,
    pub mean_recall: f64,
    pub mean_f1: f64,
    pub scored_items: usize,
    /// Items without output, as a percentage of all items.
    pub pct_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ItemScore {
    pub item: usize,
    /// Per metric: index of the best form and its P, R, F1.
    pub scores: BTreeMap<String, (usize, f64, f64, f64)>,
}

fn summarize(
    metrics: &[MatchConfig],
    scores: &[Option<ItemScore>],
    total: usize,
) -> Vec<MetricSummary> {
    let scored: Vec<&ItemScore> = scores.iter().flatten().collect();
    let n = scored.len();
    let failed = total - n;
    metrics
        .iter()
        .map(|m| {
            let label = m.label();
            let mean = |k: fn(&(usize, f64, f64, f64)) -> f64| {
                if n == 0 {
                    0.0
                } else {
                    scored.iter().map(|s| k(&s.scores[label])).sum::<f64>() / n as f64
                }
            };
            MetricSummary {
                metric: label.to_string(),
                mean_precision: mean(|s| s.1),
                mean_recall: mean(|s| s.2),
                mean_f1: mean(|s| s.3),
                scored_items: n,
                pct_error: if total == 0 {
                    0.0
                } else {
                    100.0 * failed as f64 / total as f64
                },
            }
        })
        .collect()
}

fn score_item(
    item: usize,
    forms: &[ClauseSet],
    gold: &ClauseSet,
    cfg: &RunConfig,
) -> Option<ItemScore> {
    if forms.is_empty() {
        return None;
    }
    let scores = cfg
        .metrics
        .iter()
        .map(|m| {
            let (i, r) =
                best_score(forms, gold, *m, cfg.restarts, cfg.seed).expect("non-empty forms");
            (m.label().to_string(), (i + 1, r.precision, r.recall, r.f1))
        })
        .collect();
    Some(ItemScore { item, scores })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreOutcome {
    pub summaries: Vec<MetricSummary>,
    pub items: Vec<Option<ItemScore>>,
}

/// Scores a system clause file against a gold file item by item, taking
/// the best form of each system item.
pub fn score(sys: &Path, gold: &Path, cfg: &RunConfig) -> Result<ScoreOutcome, RunError> {
    let sys_items = read_items(sys)?;
    let gold_items = read_gold(gold)?;
    if sys_items.len() != gold_items.len() {
        return Err(RunError::CountMismatch {
            system: sys_items.len(),
            gold: gold_items.len(),
        });
    }
    let items: Vec<Option<ItemScore>> = pool(cfg.jobs)?.install(|| {
        sys_items
            .par_iter()
            .zip(gold_items.par_iter())
            .enumerate()
            .map(|(i, (forms, g))| score_item(i + 1, forms, g, cfg))
            .collect()
    });
    let outcome = ScoreOutcome {
        summaries: summarize(&cfg.metrics, &items, sys_items.len()),
        items,
    };
    if let Some(dir) = &cfg.out {
        write(&dir.join("score.json"), &to_json(&outcome))?;
    }
    Ok(outcome)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    pub min: f64,
    pub median: f64,
    pub max: f64,
}

impl Distribution {
    pub fn of(values: &[f64]) -> Option<Distribution> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(|a, b| a.total_cmp(b));
        let n = v.len();
        let median = if n % 2 == 1 {
            v[n / 2]
        } else {
            (v[n / 2 - 1] + v[n / 2]) / 2.0
        };
        Some(Distribution {
            min: v[0],
            median,
            max: v[n - 1],
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub items_total: usize,
    pub items_derived: usize,
    pub items_failed: usize,
    pub failure_reasons: BTreeMap<String, usize>,
    pub items_truncated: usize,
    /// Over derived items.
    pub distinct_forms: Option<Distribution>,
    pub raw_derivations: Option<Distribution>,
    /// Only filled from a timings file; never part of the report.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_seconds: Option<Distribution>,
}

pub fn corpus_stats(items: &[ItemDerivation]) -> CorpusStats {
    let derived: Vec<&ItemDerivation> = items.iter().filter(|i| i.distinct_forms > 0).collect();
    let mut failure_reasons = BTreeMap::new();
    for i in items.iter().filter(|i| i.distinct_forms == 0) {
        let reason = i.failure.clone().unwrap_or_else(|| "no-output".to_string());
        *failure_reasons.entry(reason).or_insert(0) += 1;
    }
    CorpusStats {
        items_total: items.len(),
        items_derived: derived.len(),
        items_failed: items.len() - derived.len(),
        failure_reasons,
        items_truncated: items.iter().filter(|i| i.truncated).count(),
        distinct_forms: Distribution::of(
            &derived
                .iter()
                .map(|i| i.distinct_forms as f64)
                .collect::<Vec<_>>(),
        ),
        raw_derivations: Distribution::of(
            &derived
                .iter()
                .map(|i| i.raw_derivations as f64)
                .collect::<Vec<_>>(),
        ),
        wall_seconds: None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub restarts: usize,
    pub seed: u64,
    pub max_node_forms: usize,
    pub max_sentence_forms: usize,
    /// Percentage error counts items whose derivation produced no output.
    pub error_definition: String,
    pub metrics: Vec<MetricSummary>,
    pub stats: CorpusStats,
    pub items: Vec<ItemDerivation>,
}

#[derive(Debug, Clone)]
pub struct EvalOutcome {
    pub report: CorpusReport,
    pub scores: Vec<Option<ItemScore>>,
    pub scores_tsv: String,
    pub timings_tsv: String,
}

fn fmt4(x: f64) -> String {
    format!("{:.4}", x)
}

/// Derives and scores a corpus against positional gold DRSs.
pub fn eval_corpus(conllu: &Path, gold: &Path, cfg: &RunConfig) -> Result<EvalOutcome, RunError> {
    let lex = load_configured_lexicon(cfg)?;
    let trees = read_trees(conllu)?;
    let gold_items = read_gold(gold)?;
    if trees.len() != gold_items.len() {
        return Err(RunError::CountMismatch {
            system: trees.len(),
            gold: gold_items.len(),
        });
    }
    let items = derive_trees(&trees, &lex, cfg)?;
    let scores: Vec<Option<ItemScore>> = pool(cfg.jobs)?.install(|| {
        items
            .par_iter()
            .zip(gold_items.par_iter())
            .map(|(it, g)| score_item(it.item, &it.forms, g, cfg))
            .collect()
    });

    let mut scores_tsv = String::from("item\tforms\traw\tstatus");
    for m in &cfg.metrics {
        scores_tsv.push_str(&format!("\tF1{}", m.label()));
    }
    scores_tsv.push_str("\ttext\n");
    for (it, sc) in items.iter().zip(&scores) {
        let status = it.failure.clone().unwrap_or_else(|| "ok".into());
        scores_tsv.push_str(&format!(
            "{}\t{}\t{}\t{}",
            it.item, it.distinct_forms, it.raw_derivations, status
        ));
        for m in &cfg.metrics {
            let cell = sc
                .as_ref()
                .map_or("-".to_string(), |s| fmt4(s.scores[m.label()].3));
            scores_tsv.push('\t');
            scores_tsv.push_str(&cell);
        }
        scores_tsv.push_str(&format!("\t{}\n", it.text));
    }
    let mut timings_tsv = String::from("item\tseconds\n");
    for it in &items {
        timings_tsv.push_str(&format!("{}\t{:.6}\n", it.item, it.seconds));
    }

    let report = CorpusReport {
        restarts: cfg.restarts,
        seed: cfg.seed,
        max_node_forms: cfg.limits.max_node_forms,
        max_sentence_forms: cfg.limits.max_sentence_forms,
        error_definition: "items for which derivation produced no output".into(),
        metrics: summarize(&cfg.metrics, &scores, items.len()),
        stats: corpus_stats(&items),
        items,
    };
    if let Some(dir) = &cfg.out {
        let forms: Vec<Vec<ClauseSet>> = report.items.iter().map(|i| i.forms.clone()).collect();
        write(&dir.join(FORMS_FILE), &write_items(&forms))?;
        write(&dir.join(SCORES_FILE), &scores_tsv)?;
        write(&dir.join(REPORT_FILE), &to_json(&report))?;
        write(&dir.join(TIMINGS_FILE), &timings_tsv)?;
    }
    Ok(EvalOutcome {
        report,
        scores,
        scores_tsv,
        timings_tsv,
    })
}

/// Re-reads a report, adding wall-time numbers from a sibling timings file
/// when one exists.
pub fn stats_from_report(report: &Path) -> Result<CorpusStats, RunError> {
    let text = read(report)?;
    let parsed: CorpusReport = serde_json::from_str(&text).map_err(|e| RunError::Report {
        path: report.to_path_buf(),
        message: e.to_string(),
    })?;
    let mut stats = parsed.stats;
    let timings = report.with_file_name(TIMINGS_FILE);
    if let Ok(t) = fs::read_to_string(&timings) {
        let secs: Vec<f64> = t
            .lines()
            .skip(1)
            .filter_map(|l| l.split('\t').nth(1)?.parse().ok())
            .collect();
        stats.wall_seconds = Distribution::of(&secs);
    }
    Ok(stats)
}

/// Formats the per-metric table in the usual column order.
pub fn metric_table(summaries: &[MetricSummary]) -> String {
    let mut out = String::from("metric\tP\tR\tF1\tscored\t%error\n");
    for s in summaries {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{:.2}\n",
            s.metric,
            fmt4(s.mean_precision),
            fmt4(s.mean_recall),
            fmt4(s.mean_f1),
            s.scored_items,
            s.pct_error
        ));
    }
    out
}

pub fn format_stats(s: &CorpusStats) -> String {
    let dist = |d: &Option<Distribution>| match d {
        Some(d) => format!("min {} / median {} / max {}", d.min, d.median, d.max),
        None => "n/a".to_string(),
    };
    let mut out = format!(
        "items: {} total, {} derived, {} failed, {} truncated\n",
        s.items_total, s.items_derived, s.items_failed, s.items_truncated
    );
    for (k, v) in &s.failure_reasons {
        out.push_str(&format!("  {}: {}\n", k, v));
    }
    out.push_str(&format!("distinct forms: {}\n", dist(&s.distinct_forms)));
    out.push_str(&format!("raw derivations: {}\n", dist(&s.raw_derivations)));
    if s.wall_seconds.is_some() {
        out.push_str(&format!("wall seconds: {}\n", dist(&s.wall_seconds)));
    }
    out
}
