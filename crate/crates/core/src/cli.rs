//! The `hlb` command line: runs experiments, writes CSV or JSON tables, SVG
//! figures and a replayable `manifest.json`.
//!
//! Exit codes: 0 on success, 2 for usage or configuration errors, 1 for
//! runtime failures such as unwritable output paths.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::codebook::Codebook;
use crate::error::{Result, VsaError};
use crate::experiments::{
    correction_to_result, curve_series, curve_table, run_correction_heatmap, run_cosine_curve,
    run_csps_demo, run_noise_heatmap, run_norm_curve, run_retrieval, run_sequential, run_xml_demo,
    CspsConfig, CurvePoint, ExperimentResult, HeatmapConfig, NegativeCase, RelationConfig,
    RetrievalConfig, SequentialConfig, SequentialMode, XmlConfig,
};
use crate::models::{BindingModel, ModelKind, DEFAULT_MU};
use crate::report::unix_now;
use crate::report::{render_curves, render_heatmap, RunManifest};
use crate::seed::SeedSpec;
use crate::similarity::Metric;
use crate::theory::GridResult;
use crate::vector::HyperVector;

#[derive(Debug, Parser)]
#[command(
    name = "hlb",
    version,
    about = "Hadamard-derived linear binding experiments"
)]
struct Cli {
    /// Re-run the command recorded in a manifest.
    #[arg(long, value_name = "PATH")]
    from_manifest: Option<PathBuf>,

    /// Output directory for a manifest replay.
    #[arg(long, value_name = "DIR", requires = "from_manifest")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classical benchmarks.
    #[command(subcommand)]
    Bench(BenchCmd),
    /// Corrected-similarity and noise grids over d = 2^n and ρ.
    #[command(subcommand)]
    Heatmap(HeatmapCmd),
    /// Composite norm and retrieval cosine against theory.
    #[command(subcommand)]
    Relation(RelationCmd),
    /// Multi-label target encoding.
    #[command(subcommand)]
    Xml(DemoCmd<XmlArgs>),
    /// Secret-vector masking.
    #[command(subcommand)]
    Csps(DemoCmd<CspsArgs>),
    /// Create, inspect and query symbol codebooks.
    #[command(subcommand)]
    Codebook(CodebookCmd),
}

#[derive(Debug, Subcommand)]
enum BenchCmd {
    /// Bundle ρ pairs and clean up each retrieval against a pool.
    Retrieval(RetrievalArgs),
    /// Bind repeatedly and unbind one step back.
    Sequential(SequentialArgs),
}

#[derive(Debug, Subcommand)]
enum HeatmapCmd {
    /// Mean corrected cosine for true and other partners.
    Correction(HeatmapArgs),
    /// Log mean retrieval noise with and without projection.
    Noise(HeatmapArgs),
}

#[derive(Debug, Subcommand)]
enum RelationCmd {
    Norm(RelationArgs),
    Cosine(RelationArgs),
}

#[derive(Debug, Subcommand)]
enum DemoCmd<A: Args> {
    Demo(A),
}

#[derive(Debug, Subcommand)]
enum CodebookCmd {
    /// Sample a codebook and write it as JSON.
    New(CodebookNewArgs),
    /// List the symbols of a codebook.
    Show { path: PathBuf },
    /// Bundle key:value pairs, unbind one key and report the nearest symbol.
    Query(CodebookQueryArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Base seed; falls back to VSA_SEED, then 0.
    #[arg(long, env = "VSA_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_name = "DIR", default_value = "out")]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Also render SVG figures (heatmap and relation commands).
    #[arg(long)]
    svg: bool,
    /// Worker threads; defaults to all cores.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Debug, Args)]
struct RetrievalArgs {
    #[arg(long, default_value = "all", value_parser = parse_models)]
    model: ::std::vec::Vec<ModelKind>,
    #[arg(long, default_value = "16,64,256,1024", value_parser = parse_list)]
    dims: ::std::vec::Vec<usize>,
    #[arg(long, default_value = "1..25", value_parser = parse_list)]
    rho: ::std::vec::Vec<usize>,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = 1000)]
    pool_size: usize,
    #[arg(long, default_value = "dot")]
    metric: Metric,
    #[arg(long, default_value_t = DEFAULT_MU)]
    mu: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct SequentialArgs {
    #[arg(long, default_value = "all", value_parser = parse_models)]
    model: ::std::vec::Vec<ModelKind>,
    #[arg(long, default_value_t = 1024)]
    d: usize,
    #[arg(long, default_value_t = 50)]
    depth: usize,
    /// Comma-separated subset of random,auto.
    #[arg(long, default_value = "random,auto", value_parser = parse_modes)]
    mode: ::std::vec::Vec<SequentialMode>,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = DEFAULT_MU)]
    mu: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct HeatmapArgs {
    /// log2 of the dimension.
    #[arg(long, default_value = "1..10", value_parser = parse_list)]
    n: ::std::vec::Vec<usize>,
    /// Defaults to 1..50 for correction and 2..50 for noise.
    #[arg(long, value_parser = parse_list)]
    rho: Option<::std::vec::Vec<usize>>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = DEFAULT_MU)]
    mu: f64,
    /// Average the negative case over every other bundled item.
    #[arg(long)]
    all_negatives: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct RelationArgs {
    /// Defaults to 1024 for norm and 512 for cosine.
    #[arg(long)]
    d: Option<usize>,
    /// Largest ρ; defaults to 200 for norm and 50 for cosine.
    #[arg(long)]
    rho_max: Option<usize>,
    /// Defaults to 0.5 for norm and 1.0 for cosine.
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct XmlArgs {
    #[arg(long, default_value = "all", value_parser = parse_models)]
    model: ::std::vec::Vec<ModelKind>,
    #[arg(long, default_value_t = 1024)]
    d: usize,
    #[arg(long, default_value_t = 100)]
    labels: usize,
    /// Present-set sizes.
    #[arg(long, default_value = "1,3,10", value_parser = parse_list)]
    k: ::std::vec::Vec<usize>,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = DEFAULT_MU)]
    mu: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct CspsArgs {
    #[arg(long, default_value = "all", value_parser = parse_models)]
    model: ::std::vec::Vec<ModelKind>,
    #[arg(long, default_value_t = 1024)]
    d: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = DEFAULT_MU)]
    mu: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct CodebookNewArgs {
    path: PathBuf,
    #[arg(long, default_value = "hlb")]
    model: ModelKind,
    #[arg(long, default_value_t = 1024)]
    d: usize,
    #[arg(long, default_value_t = DEFAULT_MU)]
    mu: f64,
    /// Comma-separated symbol names.
    #[arg(long, value_delimiter = ',', required = true)]
    names: Vec<String>,
    #[arg(long, env = "VSA_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct CodebookQueryArgs {
    path: PathBuf,
    /// Pairs `key:value`, each stored as bind(value, key).
    #[arg(long, value_delimiter = ',', required = true)]
    bundle: Vec<String>,
    /// Symbol to unbind with.
    #[arg(long)]
    key: String,
    #[arg(long, default_value = "dot")]
    metric: Metric,
}

/// Parses `a..b`, `a..=b` and `a-b` (all inclusive) or comma lists of those.
pub fn parse_list(s: &str) -> std::result::Result<Vec<usize>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("`{t}` is not a non-negative integer"))
    };
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bounds = part
            .split_once("..=")
            .or_else(|| part.split_once(".."))
            .or_else(|| part.split_once('-'));
        match bounds {
            Some((lo, hi)) => {
                let (lo, hi) = (num(lo)?, num(hi)?);
                if lo > hi {
                    return Err(format!("range `{part}` is empty"));
                }
                out.extend(lo..=hi);
            }
            None => out.push(num(part)?),
        }
    }
    if out.is_empty() {
        return Err("expected at least one value".into());
    }
    Ok(out)
}

fn parse_models(s: &str) -> std::result::Result<Vec<ModelKind>, String> {
    ModelKind::parse_list(s).map_err(|e| e.to_string())
}

fn parse_modes(s: &str) -> std::result::Result<Vec<SequentialMode>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().map_err(|e: VsaError| e.to_string()))
        .collect()
}

// Fields typed `::std::vec::Vec` are parsed as one value by the list
// parsers above rather than as a repeated flag.

/// A rendered artifact waiting to be written.
enum Artifact {
    Table(crate::report::Table),
    Svg(String, String),
}

struct Run {
    command: String,
    config: serde_json::Value,
    artifacts: Vec<Artifact>,
}

fn tables(result: ExperimentResult) -> Vec<Artifact> {
    result.tables.into_iter().map(Artifact::Table).collect()
}

fn config_json<T: Serialize>(cfg: &T) -> Result<serde_json::Value> {
    Ok(serde_json::to_value(cfg)?)
}

fn run_retrieval_cmd(a: &RetrievalArgs) -> Result<Run> {
    let cfg = RetrievalConfig {
        pool_size: a.pool_size,
        dims: a.dims.clone(),
        rhos: a.rho.clone(),
        trials: a.trials,
        models: a.model.clone(),
        metric: a.metric,
        mu: a.mu,
        seed: a.output.seed,
    };
    let outcome = run_retrieval(&cfg)?;
    Ok(Run {
        command: "bench retrieval".into(),
        config: config_json(&cfg)?,
        artifacts: tables(outcome.to_result()),
    })
}

fn run_sequential_cmd(a: &SequentialArgs) -> Result<Run> {
    let cfg = SequentialConfig {
        modes: a.mode.clone(),
        depth: a.depth,
        d: a.d,
        trials: a.trials,
        models: a.model.clone(),
        mu: a.mu,
        seed: a.output.seed,
    };
    let outcome = run_sequential(&cfg)?;
    Ok(Run {
        command: "bench sequential".into(),
        config: config_json(&cfg)?,
        artifacts: tables(outcome.to_result()),
    })
}

fn heatmap_config(
    a: &HeatmapArgs,
    default_rho: std::ops::RangeInclusive<usize>,
) -> Result<HeatmapConfig> {
    let ns = a
        .n
        .iter()
        .map(|&n| u32::try_from(n).map_err(|_| VsaError::invalid(format!("n = {n} is too large"))))
        .collect::<Result<_>>()?;
    Ok(HeatmapConfig {
        ns,
        rhos: a.rho.clone().unwrap_or_else(|| default_rho.collect()),
        trials: a.trials,
        mu: a.mu,
        seed: a.output.seed,
        negative: if a.all_negatives {
            NegativeCase::AllOthers
        } else {
            NegativeCase::RandomOther
        },
    })
}

fn svg(name: &str, grid: &GridResult) -> Artifact {
    Artifact::Svg(format!("{name}.svg"), render_heatmap(grid))
}

fn run_correction_cmd(a: &HeatmapArgs) -> Result<Run> {
    let cfg = heatmap_config(a, 1..=50)?;
    let (pos, neg) = run_correction_heatmap(&cfg)?;
    let mut artifacts = tables(correction_to_result(&pos, &neg));
    if a.output.svg {
        artifacts.push(svg("heatmap_correction_positive", &pos));
        artifacts.push(svg("heatmap_correction_negative", &neg));
    }
    Ok(Run {
        command: "heatmap correction".into(),
        config: config_json(&cfg)?,
        artifacts,
    })
}

fn run_noise_cmd(a: &HeatmapArgs) -> Result<Run> {
    let cfg = heatmap_config(a, 2..=50)?;
    let mut out = run_noise_heatmap(&cfg)?;
    let mut artifacts = tables(out.to_result());
    if a.output.svg {
        // One shared color range so the two grids compare directly.
        let finite = out
            .circ
            .iter_cells()
            .chain(out.proj.iter_cells())
            .map(|c| c.2)
            .filter(|v| v.is_finite());
        let (lo, hi) = finite.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
        if lo <= hi {
            out.circ.value_range = Some((lo, hi));
            out.proj.value_range = Some((lo, hi));
        }
        artifacts.push(svg("heatmap_noise_circ", &out.circ));
        artifacts.push(svg("heatmap_noise_proj", &out.proj));
    }
    Ok(Run {
        command: "heatmap noise".into(),
        config: config_json(&cfg)?,
        artifacts,
    })
}

fn run_relation_cmd(a: &RelationArgs, norm: bool) -> Result<Run> {
    let mut cfg = RelationConfig {
        trials: a.trials,
        seed: a.output.seed,
        ..RelationConfig::default()
    };
    let (name, points, title, y_label): (&str, Vec<CurvePoint>, &str, &str) = if norm {
        cfg.norm_d = a.d.unwrap_or(cfg.norm_d);
        cfg.norm_rho_max = a.rho_max.unwrap_or(cfg.norm_rho_max);
        cfg.norm_mu = a.mu.unwrap_or(cfg.norm_mu);
        (
            "relation_norm",
            run_norm_curve(&cfg)?,
            "Composite norm",
            "norm",
        )
    } else {
        cfg.cos_d = a.d.unwrap_or(cfg.cos_d);
        cfg.cos_rho_max = a.rho_max.unwrap_or(cfg.cos_rho_max);
        cfg.cos_mu = a.mu.unwrap_or(cfg.cos_mu);
        (
            "relation_cosine",
            run_cosine_curve(&cfg)?,
            "Retrieval cosine",
            "cosine",
        )
    };
    let mut artifacts = vec![Artifact::Table(curve_table(name, &points))];
    if a.output.svg {
        artifacts.push(Artifact::Svg(
            format!("{name}.svg"),
            render_curves(&curve_series(title, y_label, &points)),
        ));
    }
    Ok(Run {
        command: format!("relation {}", if norm { "norm" } else { "cosine" }),
        config: config_json(&cfg)?,
        artifacts,
    })
}

fn run_xml_cmd(a: &XmlArgs) -> Result<Run> {
    let cfg = XmlConfig {
        models: a.model.clone(),
        d: a.d,
        labels: a.labels,
        ks: a.k.clone(),
        trials: a.trials,
        mu: a.mu,
        seed: a.output.seed,
    };
    Ok(Run {
        command: "xml demo".into(),
        config: config_json(&cfg)?,
        artifacts: tables(run_xml_demo(&cfg)?),
    })
}

fn run_csps_cmd(a: &CspsArgs) -> Result<Run> {
    let cfg = CspsConfig {
        models: a.model.clone(),
        d: a.d,
        trials: a.trials,
        mu: a.mu,
        seed: a.output.seed,
    };
    Ok(Run {
        command: "csps demo".into(),
        config: config_json(&cfg)?,
        artifacts: tables(run_csps_demo(&cfg)?),
    })
}

fn write_run(run: Run, output: &OutputArgs, argv: Vec<String>, started: f64) -> Result<()> {
    std::fs::create_dir_all(&output.out)?;
    let mut outputs = Vec::new();
    for artifact in run.artifacts {
        let file = match artifact {
            Artifact::Table(t) => match output.format {
                Format::Csv => {
                    let f = format!("{}.csv", t.name);
                    t.write_csv(output.out.join(&f))?;
                    f
                }
                Format::Json => {
                    let f = format!("{}.json", t.name);
                    t.write_json(output.out.join(&f))?;
                    f
                }
            },
            Artifact::Svg(f, text) => {
                std::fs::write(output.out.join(&f), text)?;
                f
            }
        };
        outputs.push(file);
    }
    let manifest = RunManifest {
        command: run.command,
        argv,
        config: run.config,
        seed: output.seed,
        tool_version: env!("CARGO_PKG_VERSION").into(),
        started_unix: started,
        finished_unix: unix_now(),
        outputs,
    };
    manifest.save(output.out.join("manifest.json"))
}

/// The invocation with `--out`, `--seed` and `--from-manifest` removed and
/// the resolved seed appended, so a replay picks its own output directory.
fn replayable_argv(args: &[String], seed: u64) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip_next = false;
    for a in args {
        if skip_next {
            skip_next = false;
            continue;
        }
        if ["--out", "--seed", "--from-manifest"].contains(&a.as_str()) {
            skip_next = true;
            continue;
        }
        if ["--out=", "--seed=", "--from-manifest="]
            .iter()
            .any(|p| a.starts_with(p))
        {
            continue;
        }
        out.push(a.clone());
    }
    out.push("--seed".into());
    out.push(seed.to_string());
    out
}

fn with_pool<T>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T>
where
    T: Send,
{
    match jobs {
        None => Ok(f()),
        Some(0) => Err(VsaError::invalid("--jobs must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| VsaError::invalid(e.to_string()))
            .map(|pool| pool.install(f)),
    }
}

fn experiment(
    args: &[String],
    output: &OutputArgs,
    f: impl FnOnce() -> Result<Run> + Send,
) -> Result<()> {
    let started = unix_now();
    let run = with_pool(output.jobs, f)??;
    write_run(run, output, replayable_argv(args, output.seed), started)
}

fn codebook_cmd(cmd: &CodebookCmd) -> Result<()> {
    match cmd {
        CodebookCmd::New(a) => {
            let model = BindingModel::with_mu(a.model, a.d, a.mu)?;
            let mut rng = SeedSpec::new(a.seed, "codebook").stream();
            let book = Codebook::random(model, a.names.iter().map(String::as_str), &mut rng)?;
            book.save(&a.path)?;
            println!(
                "wrote {} symbols ({}, d={}) to {}",
                book.len(),
                a.model,
                a.d,
                a.path.display()
            );
        }
        CodebookCmd::Show { path } => {
            let book = Codebook::load(path)?;
            println!(
                "model {} d {} symbols {}",
                book.model().kind(),
                book.dim(),
                book.len()
            );
            for (name, v) in book.iter() {
                println!("{name}\tnorm {:.6}", v.norm());
            }
        }
        CodebookCmd::Query(a) => {
            let book = Codebook::load(&a.path)?;
            let model = *book.model();
            let mut terms = Vec::new();
            for pair in &a.bundle {
                let (k, v) = pair.split_once(':').ok_or_else(|| {
                    VsaError::Parse(format!("bundle entry `{pair}` is not key:value"))
                })?;
                terms.push(model.bind(book.require(v.trim())?, book.require(k.trim())?)?);
            }
            let composite = HyperVector::sum(&terms)?;
            let retrieved = model.unbind(&composite, book.require(&a.key)?)?;
            let (name, score) = book.nearest(&retrieved, a.metric)?;
            println!("{name}\t{score:.6}");
        }
    }
    Ok(())
}

fn dispatch(cli: Cli, args: &[String]) -> Result<()> {
    let Some(command) = cli.command else {
        let Some(path) = cli.from_manifest else {
            return Err(VsaError::invalid(
                "a subcommand or --from-manifest is required",
            ));
        };
        let manifest = RunManifest::load(&path)?;
        let out = cli
            .out
            .unwrap_or_else(|| path.parent().unwrap_or(Path::new(".")).join("replay"));
        let mut argv = vec!["hlb".to_string()];
        argv.extend(manifest.argv);
        argv.push("--out".into());
        argv.push(out.to_string_lossy().into_owned());
        let replay = Cli::try_parse_from(&argv).map_err(|e| VsaError::Parse(e.to_string()))?;
        if replay.command.is_none() {
            return Err(VsaError::Parse(
                "manifest does not record a subcommand".into(),
            ));
        }
        return dispatch(replay, &argv[1..]);
    };
    if cli.from_manifest.is_some() {
        return Err(VsaError::invalid(
            "--from-manifest cannot be combined with a subcommand",
        ));
    }
    match &command {
        Command::Bench(BenchCmd::Retrieval(a)) => {
            experiment(args, &a.output, || run_retrieval_cmd(a))
        }
        Command::Bench(BenchCmd::Sequential(a)) => {
            experiment(args, &a.output, || run_sequential_cmd(a))
        }
        Command::Heatmap(HeatmapCmd::Correction(a)) => {
            experiment(args, &a.output, || run_correction_cmd(a))
        }
        Command::Heatmap(HeatmapCmd::Noise(a)) => experiment(args, &a.output, || run_noise_cmd(a)),
        Command::Relation(RelationCmd::Norm(a)) => {
            experiment(args, &a.output, || run_relation_cmd(a, true))
        }
        Command::Relation(RelationCmd::Cosine(a)) => {
            experiment(args, &a.output, || run_relation_cmd(a, false))
        }
        Command::Xml(DemoCmd::Demo(a)) => experiment(args, &a.output, || run_xml_cmd(a)),
        Command::Csps(DemoCmd::Demo(a)) => experiment(args, &a.output, || run_csps_cmd(a)),
        Command::Codebook(c) => codebook_cmd(c),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<String> = args
        .into_iter()
        .map(|a| a.into().to_string_lossy().into_owned())
        .collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    match dispatch(cli, args.get(1..).unwrap_or_default()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_config_error() {
                2
            } else {
                1
            }
        }
    }
}
