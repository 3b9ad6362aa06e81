use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use syllogistic::datagen::{generate, DatasetItem, DatasetKind, Setting};
use syllogistic::{HeuristicTheory, Report, Schema};
use syllogistic_harness::pipeline::{
    build_prompts, default_pool, evaluate_run, heuristic_predictions_csv, oracle_check,
    render_table, report_json, PromptRecord, Table, TableFormat,
};
use syllogistic_harness::{
    predict_mock, predict_with_model, read_records, write_records, write_text, HttpChat,
    MockReasoner, ModelClient, PredictionRecord, RunConfig,
};

#[derive(Parser)]
#[command(
    name = "syllogistic",
    version,
    about = "Syllogistic reasoning datasets, mock reasoners and evaluation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The 64 schemas with their valid conclusions and human accuracy.
    Schemas {
        #[arg(long, default_value = "csv")]
        format: TableFormat,
    },
    /// Re-derive the validity table by countermodel search and compare it with the stored one.
    OracleCheck {
        #[arg(long, default_value_t = 4)]
        max_universe: u8,
    },
    Heuristic {
        #[command(subcommand)]
        command: HeuristicCommand,
    },
    /// Write a dataset as JSONL.
    Generate {
        /// believable, unbelievable, pseudo, dev, chain2, chain3 or chain4.
        #[arg(long, alias = "dataset")]
        condition: DatasetKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the prompt for every item of a dataset as JSONL.
    Prompt {
        #[arg(long)]
        dataset: PathBuf,
        /// zs-cot, icl-in, icl-out or direct.
        #[arg(long)]
        setting: Setting,
        /// Demonstration pool; defaults to the pseudo-word training set for the seed.
        #[arg(long)]
        pool: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Answer every item with a mock reasoner or a model endpoint.
    Predict {
        #[arg(long)]
        dataset: Option<PathBuf>,
        /// gold, atmosphere, matching, conversion, phm, constant:LABEL or random:SEED.
        #[arg(long, conflicts_with = "config")]
        mock: Option<MockReasoner>,
        /// Run configuration (TOML) for a live endpoint.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score predictions and write a JSON report.
    Evaluate {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        predictions: PathBuf,
        /// Unbelievable set and its predictions, for the content-effect analysis.
        #[arg(long, requires = "unbelievable_predictions")]
        unbelievable_dataset: Option<PathBuf>,
        #[arg(long, requires = "unbelievable_dataset")]
        unbelievable_predictions: Option<PathBuf>,
        #[arg(long, default_value = "model")]
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render tables from evaluation reports.
    Report {
        /// accuracy, top1, consistency, completeness, per-schema, gold or coverage.
        #[arg(long, default_value = "accuracy")]
        table: Table,
        #[arg(long, default_value = "markdown")]
        format: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        reports: Vec<PathBuf>,
    },
}

#[derive(Subcommand)]
enum HeuristicCommand {
    /// Predicted conclusions per schema.
    Predict {
        #[arg(long)]
        theory: Option<HeuristicTheory>,
        #[arg(long)]
        schema: Option<Schema>,
    },
    /// How much of the logical ground truth each theory predicts.
    Coverage {
        #[arg(long, default_value = "csv")]
        format: TableFormat,
    },
}

fn load_items(path: &Path) -> Result<Vec<DatasetItem>> {
    Ok(read_records(path)?)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Schemas { format } => write_text(None, &render_table(Table::Gold, &[], format)?)?,
        Command::OracleCheck { max_universe } => {
            let diffs = oracle_check(max_universe);
            if !diffs.is_empty() {
                for d in &diffs {
                    eprintln!("{d}");
                }
                bail!("{} schemas differ from the stored table", diffs.len());
            }
            println!("validity table matches the oracle (universe up to {max_universe})");
        }
        Command::Heuristic {
            command: HeuristicCommand::Predict { theory, schema },
        } => write_text(None, &heuristic_predictions_csv(theory, schema))?,
        Command::Heuristic {
            command: HeuristicCommand::Coverage { format },
        } => write_text(None, &render_table(Table::Coverage, &[], format)?)?,
        Command::Generate {
            condition,
            seed,
            out,
        } => {
            let items = generate(condition, seed)?;
            write_records(out.as_deref(), &items)?;
            log::info!("wrote {} {} items", items.len(), condition.name());
        }
        Command::Prompt {
            dataset,
            setting,
            pool,
            seed,
            out,
        } => {
            let items = load_items(&dataset)?;
            let pool = match pool {
                Some(p) => load_items(&p)?,
                None => default_pool(seed)?,
            };
            let prompts = build_prompts(&items, setting, &pool, seed)?;
            let records: Vec<PromptRecord> = items
                .iter()
                .zip(prompts)
                .map(|(i, prompt)| PromptRecord {
                    item_id: i.id.clone(),
                    prompt,
                })
                .collect();
            write_records(out.as_deref(), &records)?;
        }
        Command::Predict {
            dataset,
            mock,
            config,
            out,
        } => {
            let records = match (mock, config) {
                (Some(mock), None) => {
                    let dataset = dataset.context("--dataset is required with --mock")?;
                    let records = predict_mock(&load_items(&dataset)?, mock);
                    write_records(out.as_deref(), &records)?;
                    records
                }
                (None, Some(path)) => {
                    let mut cfg = RunConfig::load(&path)?;
                    if let Some(d) = dataset {
                        cfg.dataset = d;
                    }
                    if let Some(o) = out {
                        cfg.output = o;
                    }
                    let records = predict_live(&cfg)?;
                    write_records(Some(&cfg.output), &records)?;
                    records
                }
                _ => bail!("give either --mock or --config"),
            };
            let failed = records.iter().filter(|r| r.error.is_some()).count();
            if failed > 0 {
                log::warn!(
                    "{failed} of {} items failed and will score as missing",
                    records.len()
                );
            }
        }
        Command::Evaluate {
            dataset,
            predictions,
            unbelievable_dataset,
            unbelievable_predictions,
            name,
            out,
        } => {
            let items = load_items(&dataset)?;
            let records: Vec<PredictionRecord> = read_records(&predictions)?;
            let unb = match (unbelievable_dataset, unbelievable_predictions) {
                (Some(d), Some(p)) => {
                    Some((load_items(&d)?, read_records::<PredictionRecord>(&p)?))
                }
                _ => None,
            };
            let report = evaluate_run(
                &name,
                &items,
                &records,
                unb.as_ref().map(|(i, r)| (i.as_slice(), r.as_slice())),
            );
            write_text(out.as_deref(), &report_json(&report))?;
        }
        Command::Report {
            table,
            format,
            out,
            reports,
        } => {
            let reports: Vec<Report> = reports
                .iter()
                .map(|p| {
                    let text =
                        std::fs::read_to_string(p).with_context(|| p.display().to_string())?;
                    serde_json::from_str(&text)
                        .with_context(|| format!("{}: not an evaluation report", p.display()))
                })
                .collect::<Result<_>>()?;
            if reports.is_empty() && !matches!(table, Table::Gold | Table::Coverage) {
                bail!("no reports given");
            }
            write_text(out.as_deref(), &render_table(table, &reports, format)?)?;
        }
    }
    Ok(())
}

fn predict_live(cfg: &RunConfig) -> Result<Vec<PredictionRecord>> {
    let items = load_items(&cfg.dataset)?;
    let pool = match &cfg.pool {
        Some(p) => load_items(p)?,
        None => default_pool(cfg.seed)?,
    };
    let prompts = build_prompts(&items, cfg.setting, &pool, cfg.seed)?;
    let transport = HttpChat::new(&cfg.endpoint, cfg.decoding.greedy)?;
    let client = ModelClient::new(transport, cfg.decoding.clone(), cfg.retry.clone());
    Ok(predict_with_model(
        &items,
        &prompts,
        &client,
        cfg.concurrency,
    ))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
