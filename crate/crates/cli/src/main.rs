//! `finrel` command-line interface.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use log::info;

use finrel::corpus::{load_annotations, load_corpus, write_corpus};
use finrel::eval::{compare_systems, render_report, SystemOutput};
use finrel::pipeline::{
    self, labeled_units, load_results, process_corpus, render_html, results_to_json, Models, OfflineQuotes,
    PipelineConfig, QuoteProvider, Resources,
};
use finrel::temporal::{cross_validate, load_labeled};
use finrel::{LdaModel, SupervisedModel, TemporalModel};

#[derive(Debug, Parser)]
#[command(name = "finrel", version, about = "Relevant text and forecast detection for financial news")]
struct Cli {
    /// Pipeline configuration (TOML).
    #[arg(long, global = true, default_value = "data/config.toml")]
    config: PathBuf,
    /// Overrides the configured master seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Overrides the configured corpus path.
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate and normalize a raw JSON-lines corpus.
    Ingest {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Split and segment every item; writes segments as JSON.
    Segment {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Segment, resolve and tag every sentence; writes JSON lines.
    Tag {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Train the two-topic LDA model on corpus segments.
    TrainLda {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Train the temporal classifier on the labelled sentence file.
    TrainTemporal {
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also report k-fold cross-validation.
        #[arg(long)]
        cv: Option<usize>,
    },
    /// Run the full pipeline and write results.json.
    Detect {
        #[arg(long, default_value = "results.json")]
        out: PathBuf,
        /// Train both models first instead of loading them.
        #[arg(long)]
        train: bool,
    },
    /// Comparison systems.
    Baseline {
        #[command(subcommand)]
        command: BaselineCommand,
    },
    /// Compare systems against the annotations (ROUGE-L per annotator).
    Evaluate {
        /// Comma-separated subset of proposed,rule,supervised.
        #[arg(long, value_delimiter = ',', default_value = "proposed,rule,supervised")]
        systems: Vec<SystemName>,
        #[arg(long)]
        annotations: Option<PathBuf>,
        /// Existing results.json for the proposed system; otherwise it is run.
        #[arg(long)]
        results: Option<PathBuf>,
        /// Train models instead of loading them.
        #[arg(long)]
        train: bool,
        #[arg(long, default_value = "report.json")]
        out: PathBuf,
    },
    /// Render results.json as a static HTML report.
    Report {
        #[arg(long, default_value = "results.json")]
        results: PathBuf,
        #[arg(long, default_value = "report.html")]
        out: PathBuf,
        /// Skip the offline quote lookup.
        #[arg(long)]
        no_quotes: bool,
    },
}

#[derive(Debug, Subcommand)]
enum BaselineCommand {
    /// Extract relevant and prediction text with a baseline; writes JSON.
    Run {
        #[arg(long, value_enum, default_value = "rule")]
        system: BaselineSystem,
        #[arg(long, default_value = "baseline.json")]
        out: PathBuf,
    },
    /// Train the supervised relevance model on all annotated items.
    TrainSupervised {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BaselineSystem {
    Rule,
    Supervised,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SystemName {
    Proposed,
    Rule,
    Supervised,
}

struct Workspace {
    config: PipelineConfig,
    resources: Resources,
    corpus: Vec<finrel::corpus::NewsItem>,
}

fn load_context(cli: &Cli) -> Result<Workspace> {
    let mut config = PipelineConfig::load(&cli.config)?;
    if let Some(seed) = cli.seed {
        config.seed = seed;
        config.propagate_seed();
    }
    if let Some(corpus) = &cli.corpus {
        config.paths.corpus = corpus.clone();
    }
    let resources = Resources::load(&config.paths)?;
    let corpus = load_corpus(&config.paths.corpus)?;
    if corpus.is_empty() {
        bail!(finrel::Error::EmptyCorpus);
    }
    info!("loaded {} news items", corpus.len());
    Ok(Workspace { config, resources, corpus })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn write_or_print(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn train_lda(ctx: &Workspace) -> Result<LdaModel> {
    let mut items = process_corpus(&ctx.corpus, &ctx.resources, &ctx.config);
    if let Some(path) = &ctx.config.paths.lda_corpus {
        let extra = load_corpus(path)?;
        info!("adding {} items from {} to LDA training", extra.len(), path.display());
        items.extend(process_corpus(&extra, &ctx.resources, &ctx.config));
    }
    Ok(pipeline::train_lda(&items, &ctx.resources, &ctx.config)?)
}

fn train_temporal(ctx: &Workspace) -> Result<TemporalModel> {
    let texts = load_labeled(&ctx.config.paths.temporal_train)?;
    Ok(pipeline::train_temporal_texts(&texts, &ctx.resources, &ctx.config)?)
}

fn models(ctx: &Workspace, train: bool) -> Result<Models> {
    if train {
        Ok(Models::new(train_lda(ctx)?, train_temporal(ctx)?)?)
    } else {
        Models::load(&ctx.config.paths).context("loading models (run train-lda and train-temporal, or pass --train)")
    }
}

fn run(cli: Cli) -> Result<()> {
    if let Command::Ingest { input, output } = &cli.command {
        let items = load_corpus(input)?;
        write_corpus(output, &items)?;
        println!("{} items written to {}", items.len(), output.display());
        return Ok(());
    }
    let ctx = load_context(&cli)?;
    match &cli.command {
        Command::Ingest { .. } => unreachable!(),
        Command::Segment { out } => {
            let items = process_corpus(&ctx.corpus, &ctx.resources, &ctx.config);
            let segments: Vec<_> = items.iter().flat_map(|i| i.segments.clone()).collect();
            write_or_print(out, &(serde_json::to_string_pretty(&segments)? + "\n"))?;
        }
        Command::Tag { out } => {
            let items = process_corpus(&ctx.corpus, &ctx.resources, &ctx.config);
            let mut text = String::new();
            for s in items.iter().flat_map(|i| &i.tagged) {
                text.push_str(&serde_json::to_string(s)?);
                text.push('\n');
            }
            write_or_print(out, &text)?;
            for (tag, n) in pipeline::tag_histogram(&items) {
                eprintln!("{tag:>12} {n}");
            }
        }
        Command::TrainLda { out } => {
            let model = train_lda(&ctx)?;
            let path = out.clone().unwrap_or_else(|| ctx.config.paths.lda_model.clone());
            write_file(&path, &model.to_json()?)?;
            let rel = finrel::topicmodel::compute_rho::<f64>(&model)?;
            println!(
                "LDA model written to {} (vocabulary {}, relevant topic {}, rho {:?})",
                path.display(),
                model.vocabulary.len(),
                rel.relevant_topic,
                rel.rho
            );
        }
        Command::TrainTemporal { out, cv } => {
            let texts = load_labeled(&ctx.config.paths.temporal_train)?;
            if let Some(folds) = cv {
                let (units, labels) = labeled_units(&texts, &ctx.resources);
                let reports = cross_validate::<f64>(&units, &labels, &ctx.config.classifier, *folds, ctx.config.seed)?;
                for r in &reports {
                    println!(
                        "fold {:>2}: n={:<4} precision {:.3} recall {:.3} f1 {:.3} accuracy {:.3}",
                        r.fold, r.size, r.precision, r.recall, r.f1, r.accuracy
                    );
                }
                let n = reports.len() as f64;
                println!(
                    "mean: precision {:.3} recall {:.3}",
                    reports.iter().map(|r| r.precision).sum::<f64>() / n,
                    reports.iter().map(|r| r.recall).sum::<f64>() / n
                );
            }
            let model = pipeline::train_temporal_texts(&texts, &ctx.resources, &ctx.config)?;
            let path = out.clone().unwrap_or_else(|| ctx.config.paths.temporal_model.clone());
            write_file(&path, &model.to_json()?)?;
            println!("temporal model written to {} ({} features)", path.display(), model.selected.len());
        }
        Command::Detect { out, train } => {
            let models = models(&ctx, *train)?;
            let results = pipeline::run_pipeline(&ctx.corpus, &models, &ctx.resources, &ctx.config)?;
            write_file(out, &results_to_json(&results)?)?;
            let predictions: usize = results.iter().map(|r| r.summary.predictions).sum();
            let relevant: usize = results.iter().map(|r| r.relevant.len()).sum();
            println!(
                "{} items: {relevant} relevant sentences, {predictions} predictions -> {}",
                results.len(),
                out.display()
            );
        }
        Command::Baseline { command } => match command {
            BaselineCommand::Run { system, out } => {
                let output = match system {
                    BaselineSystem::Rule => pipeline::rule_system(&ctx.corpus, &ctx.resources),
                    BaselineSystem::Supervised => {
                        let path = &ctx.config.paths.supervised_model;
                        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                        let model = SupervisedModel::from_json(&text)?;
                        let temporal = TemporalModel::load(&ctx.config.paths.temporal_model)?;
                        pipeline::supervised_system(&ctx.corpus, &model, &ctx.resources, &temporal)?
                    }
                };
                write_file(out, &(serde_json::to_string_pretty(&output)? + "\n"))?;
                println!("{} extractions -> {}", output.extractions.len(), out.display());
            }
            BaselineCommand::TrainSupervised { out } => {
                let annotations = load_annotations(&ctx.config.paths.annotations, &ctx.corpus)?;
                let model = pipeline::train_supervised_model(&ctx.corpus, &annotations, &ctx.resources, &ctx.config)?;
                let path = out.clone().unwrap_or_else(|| ctx.config.paths.supervised_model.clone());
                write_file(&path, &model.to_json()?)?;
                println!("supervised model written to {}", path.display());
            }
        },
        Command::Evaluate {
            systems,
            annotations,
            results,
            train,
            out,
        } => {
            let ann_path = annotations.clone().unwrap_or_else(|| ctx.config.paths.annotations.clone());
            let annotations = load_annotations(&ann_path, &ctx.corpus)?;
            let needs_models = systems.contains(&SystemName::Supervised)
                || (systems.contains(&SystemName::Proposed) && results.is_none());
            let models = if needs_models { Some(models(&ctx, *train)?) } else { None };
            let mut outputs: Vec<SystemOutput> = Vec::new();
            for name in systems {
                outputs.push(match name {
                    SystemName::Proposed => {
                        let res = match results {
                            Some(path) => load_results(path)?,
                            None => pipeline::run_pipeline(
                                &ctx.corpus,
                                models.as_ref().expect("models loaded"),
                                &ctx.resources,
                                &ctx.config,
                            )?,
                        };
                        pipeline::proposed_system(&res)
                    }
                    SystemName::Rule => pipeline::rule_system(&ctx.corpus, &ctx.resources),
                    SystemName::Supervised => pipeline::supervised_system_loo(
                        &ctx.corpus,
                        &annotations,
                        &ctx.resources,
                        &models.as_ref().expect("models loaded").temporal,
                        &ctx.config,
                    )?,
                });
            }
            let report = compare_systems(&outputs, &ctx.corpus, &annotations);
            write_file(out, &(serde_json::to_string_pretty(&report)? + "\n"))?;
            print!("{}", render_report(&report));
        }
        Command::Report { results, out, no_quotes } => {
            let res = load_results(results)?;
            let quotes = match (&ctx.config.paths.quotes, no_quotes) {
                (Some(path), false) => Some(OfflineQuotes::load(path)?),
                _ => None,
            };
            let html = render_html(&res, &ctx.corpus, quotes.as_ref().map(|q| q as &dyn QuoteProvider))?;
            write_file(out, &html)?;
            println!("report written to {}", out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
