//! Command-line front end: nearest-neighbor classification, bound-tightness
//! measurement, band-count sweeps, and bound comparisons, all emitting CSV.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgAction, Args, Parser, Subcommand};
use rayon::prelude::*;

use warpbound::{
    build_model, classify, compare_bounds, generate, load_ucr, measure_tightness, sweep_v,
    write_pair_ratios, write_predictions, write_results, BenchRecord, BoundKind, BoundSpec,
    CandidateOrder, Dataset, PairRatioRecord, PredictionRecord, SyntheticSpec, WindowSpec,
};

#[derive(Parser)]
#[command(
    name = "warpbound",
    version,
    about = "Windowed DTW similarity search with pruning lower bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Label test queries by their nearest training series under DTW.
    Classify(ClassifyArgs),
    /// Measure how close lower bounds get to the full distance on pairs.
    Tightness(TightnessArgs),
    /// Sweep band counts against the envelope-only pruning baseline.
    SweepV(SweepArgs),
    /// Run several bounds over one split and rank their pruning power.
    Compare(CompareArgs),
}

/// Where a train/test split comes from: two files, or one generated
/// dataset split two-to-one.
#[derive(Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["train", "synthetic"])))]
struct SplitSource {
    /// Training set: label-first CSV/TSV, one series per line.
    #[arg(long, requires = "test")]
    train: Option<PathBuf>,
    /// Test set in the same format as --train.
    #[arg(long, requires = "train", conflicts_with = "synthetic")]
    test: Option<PathBuf>,
    /// Generated dataset, e.g. random_walk:n=60,len=128,k=3,seed=7
    /// (also noisy_sine); split 2:1 into train/test.
    #[arg(long, value_parser = parse_synthetic)]
    synthetic: Option<SyntheticSpec>,
    /// Z-normalize every series after loading.
    #[arg(long)]
    znorm: bool,
}

impl SplitSource {
    fn load(&self) -> Result<(Dataset, Dataset), CliError> {
        let (mut train, mut test) = if let Some(spec) = &self.synthetic {
            let d = generate(spec)?;
            let n = d.series.len();
            d.split(n * 2 / 3)
        } else {
            (
                load_ucr(self.train.as_ref().unwrap())?,
                load_ucr(self.test.as_ref().unwrap())?,
            )
        };
        if self.znorm {
            train.znormalize();
            test.znormalize();
        }
        Ok((train, test))
    }
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    source: SplitSource,
    /// Warping window: absolute width like 5, or length fraction like 0.1.
    #[arg(long, default_value = "0.1", value_parser = parse_window)]
    window: WindowSpec,
    /// Pruning bound: kim|yi|keogh|improved|new|enhanced[:V]|cascade:a,b,...
    #[arg(long, default_value = "enhanced:5", value_parser = parse_bound)]
    bound: BoundSpec,
    /// Band count override for enhanced bounds.
    #[arg(long)]
    v: Option<usize>,
    /// Candidate visit order: euclidean or random:SEED.
    #[arg(long, default_value = "euclidean", value_parser = parse_order)]
    order: CandidateOrder,
    /// Abandon full distance computations at the best-so-far cutoff.
    #[arg(long, default_value_t = true, action = ArgAction::Set, value_name = "BOOL")]
    dtw_abandon: bool,
    /// Worker threads for classifying queries.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Predictions CSV path.
    #[arg(long, default_value = "predictions.csv")]
    output: PathBuf,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["pairs", "synthetic"])))]
struct TightnessArgs {
    /// Pairs file: label-first CSV/TSV; consecutive rows are paired.
    #[arg(long)]
    pairs: Option<PathBuf>,
    /// Generated dataset; consecutive series are paired.
    #[arg(long, value_parser = parse_synthetic)]
    synthetic: Option<SyntheticSpec>,
    /// Z-normalize every series after loading.
    #[arg(long)]
    znorm: bool,
    /// Warping window: absolute width like 5, or length fraction like 0.1.
    #[arg(long, default_value = "0.1", value_parser = parse_window)]
    window: WindowSpec,
    /// Bound to measure; repeat for one CSV row per bound.
    #[arg(long = "bound", default_value = "enhanced:5", value_parser = parse_bound)]
    bounds: Vec<BoundSpec>,
    /// Summary CSV path.
    #[arg(long, default_value = "tightness.csv")]
    output: PathBuf,
    /// Also write every pair's lb/dtw ratio to this CSV.
    #[arg(long)]
    dump_ratios: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    source: SplitSource,
    /// Warping window: absolute width like 5, or length fraction like 0.1.
    #[arg(long, default_value = "0.1", value_parser = parse_window)]
    window: WindowSpec,
    /// Band counts: inclusive range like 1..20, or a list like 1,2,5,10.
    #[arg(long, default_value = "1..20", value_parser = parse_v_list)]
    v: VList,
    /// Timing repetitions per configuration (median reported).
    #[arg(long, default_value_t = 3)]
    repetitions: usize,
    /// Candidate visit order: euclidean or random:SEED.
    #[arg(long, default_value = "euclidean", value_parser = parse_order)]
    order: CandidateOrder,
    /// Abandon full distance computations at the best-so-far cutoff.
    #[arg(long, default_value_t = true, action = ArgAction::Set, value_name = "BOOL")]
    dtw_abandon: bool,
    /// Sweep CSV path.
    #[arg(long, default_value = "sweep.csv")]
    output: PathBuf,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    source: SplitSource,
    /// Warping window: absolute width like 5, or length fraction like 0.1.
    #[arg(long, default_value = "0.1", value_parser = parse_window)]
    window: WindowSpec,
    /// Bound to include; repeat to change the field.
    #[arg(
        long = "bound",
        value_parser = parse_bound,
        default_values = ["kim", "yi", "keogh", "improved", "new", "enhanced:5"]
    )]
    bounds: Vec<BoundSpec>,
    /// Timing repetitions per bound (median reported).
    #[arg(long, default_value_t = 3)]
    repetitions: usize,
    /// Candidate visit order: euclidean or random:SEED.
    #[arg(long, default_value = "euclidean", value_parser = parse_order)]
    order: CandidateOrder,
    /// Abandon full distance computations at the best-so-far cutoff.
    #[arg(long, default_value_t = true, action = ArgAction::Set, value_name = "BOOL")]
    dtw_abandon: bool,
    /// Comparison CSV path.
    #[arg(long, default_value = "compare.csv")]
    output: PathBuf,
}

/// Band counts parsed from one flag value.
#[derive(Debug, Clone)]
struct VList(Vec<usize>);

enum CliError {
    /// Flag combinations clap cannot see; exits 2 like other usage errors.
    Usage(String),
    /// Anything that went wrong touching data; exits 1.
    Data(warpbound::Error),
}

impl From<warpbound::Error> for CliError {
    fn from(e: warpbound::Error) -> Self {
        CliError::Data(e)
    }
}

fn parse_window(s: &str) -> Result<WindowSpec, String> {
    s.parse().map_err(|e: warpbound::Error| e.to_string())
}

fn parse_bound(s: &str) -> Result<BoundSpec, String> {
    s.parse().map_err(|e: warpbound::Error| e.to_string())
}

fn parse_synthetic(s: &str) -> Result<SyntheticSpec, String> {
    s.parse().map_err(|e: warpbound::Error| e.to_string())
}

fn parse_order(s: &str) -> Result<CandidateOrder, String> {
    if s == "euclidean" {
        return Ok(CandidateOrder::Euclidean);
    }
    if let Some(seed) = s.strip_prefix("random:") {
        return seed
            .parse()
            .map(CandidateOrder::Random)
            .map_err(|_| format!("bad seed in {s:?}"));
    }
    Err(format!("expected euclidean or random:SEED, got {s:?}"))
}

fn parse_v_list(s: &str) -> Result<VList, String> {
    let values: Vec<usize> = if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| format!("bad range start in {s:?}"))?;
        let hi: usize = hi.trim().parse().map_err(|_| format!("bad range end in {s:?}"))?;
        if hi < lo {
            return Err(format!("empty range {s:?}"));
        }
        (lo..=hi).collect()
    } else {
        s.split(',')
            .map(|t| t.trim().parse().map_err(|_| format!("bad band count {t:?}")))
            .collect::<Result<_, String>>()?
    };
    if values.is_empty() || values.contains(&0) {
        return Err("band counts must be positive".into());
    }
    Ok(VList(values))
}

/// Replaces the band count of every enhanced member when --v is given.
fn apply_v(bound: BoundSpec, v: Option<usize>) -> Result<BoundSpec, CliError> {
    let Some(v) = v else { return Ok(bound) };
    if v == 0 {
        return Err(CliError::Usage("--v must be positive".into()));
    }
    let retag = |k: BoundKind| match k {
        BoundKind::Enhanced { .. } => BoundKind::Enhanced { v },
        other => other,
    };
    match bound {
        BoundSpec::Single(BoundKind::Enhanced { .. }) => {
            Ok(BoundSpec::Single(BoundKind::Enhanced { v }))
        }
        BoundSpec::Cascade(kinds)
            if kinds
                .iter()
                .any(|k| matches!(k, BoundKind::Enhanced { .. })) =>
        {
            Ok(BoundSpec::Cascade(kinds.into_iter().map(retag).collect()))
        }
        _ => Err(CliError::Usage(
            "--v only applies when the bound includes an enhanced member".into(),
        )),
    }
}

fn run_classify(args: ClassifyArgs) -> Result<(), CliError> {
    if args.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let (train, test) = args.source.load()?;
    let bound = apply_v(args.bound, args.v)?;
    let mut model = build_model(train.series.clone(), args.window, bound)?;
    model.set_order(args.order);
    model.set_dtw_abandon(args.dtw_abandon);

    let to_record = |(i, q): (usize, &warpbound::TimeSeries)| -> warpbound::Result<PredictionRecord> {
        let p = classify(&model, q)?;
        Ok(PredictionRecord {
            query_id: i,
            predicted_label: p.label,
            true_label: q.label().unwrap_or("").to_string(),
            nn_index: p.nn_index,
            nn_distance: p.nn_distance,
            dtw_calls: p.stats.dtw_calls,
            pruned: p.stats.pruned,
            elapsed_ns: p.stats.elapsed.as_nanos() as u64,
        })
    };
    let records: Vec<PredictionRecord> = if args.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(args.jobs)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        pool.install(|| {
            test.series
                .par_iter()
                .enumerate()
                .map(to_record)
                .collect::<warpbound::Result<Vec<_>>>()
        })?
    } else {
        test.series
            .iter()
            .enumerate()
            .map(to_record)
            .collect::<warpbound::Result<Vec<_>>>()?
    };

    write_predictions(&args.output, &records)?;
    let correct = records
        .iter()
        .filter(|r| r.predicted_label == r.true_label)
        .count();
    let dtw_calls: u64 = records.iter().map(|r| r.dtw_calls).sum();
    let pruned: u64 = records.iter().map(|r| r.pruned).sum();
    let candidates = (train.series.len() * records.len()) as u64;
    println!(
        "classified {} queries against {} candidates (bound {}, window {}, w_eff {})",
        records.len(),
        train.series.len(),
        model.bound(),
        args.window,
        model.w_eff()
    );
    println!(
        "accuracy {:.4} ({correct}/{})",
        correct as f64 / records.len().max(1) as f64,
        records.len()
    );
    println!(
        "dtw_calls {dtw_calls}, pruned {pruned} ({:.1}% of candidate visits)",
        100.0 * pruned as f64 / candidates.max(1) as f64
    );
    println!("wrote {}", args.output.display());
    Ok(())
}

fn run_tightness(args: TightnessArgs) -> Result<(), CliError> {
    let mut data = if let Some(spec) = &args.synthetic {
        generate(spec)?
    } else {
        load_ucr(args.pairs.as_ref().unwrap())?
    };
    if args.znorm {
        data.znormalize();
    }
    let pairs = data.pairs();

    let mut records = Vec::with_capacity(args.bounds.len());
    let mut dump = Vec::new();
    for bound in &args.bounds {
        let t0 = Instant::now();
        let s = measure_tightness(bound, &pairs, args.window)?;
        let elapsed_ns = t0.elapsed().as_nanos() as u64;
        println!(
            "{}: mean {:.4}, geometric mean {:.4} over {} pairs ({} degenerate skipped)",
            s.bound,
            s.mean,
            s.geomean,
            s.used,
            pairs.len() - s.used
        );
        if args.dump_ratios.is_some() {
            dump.extend(s.pairs.iter().map(|p| PairRatioRecord {
                pair_id: p.pair_id,
                bound: s.bound.clone(),
                w_eff: s.w_eff,
                lb: p.lb,
                dtw: p.dtw,
                ratio: p.ratio,
            }));
        }
        records.push(BenchRecord {
            dataset: data.name.clone(),
            bound: s.bound.clone(),
            v: bound.enhanced_v(),
            window_spec: args.window.to_string(),
            w_eff: s.w_eff,
            queries: pairs.len(),
            dtw_calls: pairs.len() as u64,
            lb_calls: pairs.len() as u64,
            pruned: 0,
            elapsed_ns,
            tightness_mean: Some(s.mean),
            tightness_geomean: Some(s.geomean),
        });
    }
    write_results(&args.output, &records)?;
    println!("wrote {}", args.output.display());
    if let Some(path) = &args.dump_ratios {
        write_pair_ratios(path, &dump)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn run_sweep(args: SweepArgs) -> Result<(), CliError> {
    let (train, test) = args.source.load()?;
    let out = sweep_v(
        &train,
        &test,
        args.window,
        &args.v.0,
        args.order,
        args.repetitions,
        args.dtw_abandon,
    )?;
    let baseline = &out.records[0];
    println!(
        "baseline {}: {} dtw_calls over {} queries (w_eff {})",
        baseline.bound, baseline.dtw_calls, baseline.queries, baseline.w_eff
    );
    for r in &out.ratios {
        println!(
            "v={}: {} dtw_calls, time ×{:.2} vs baseline",
            r.v,
            r.dtw_calls,
            1.0 / r.speedup_vs_keogh.max(f64::MIN_POSITIVE)
        );
    }
    write_results(&args.output, &out.records)?;
    println!("wrote {}", args.output.display());
    Ok(())
}

fn run_compare(args: CompareArgs) -> Result<(), CliError> {
    let (train, test) = args.source.load()?;
    let out = compare_bounds(
        &train,
        &test,
        args.window,
        &args.bounds,
        args.order,
        args.repetitions,
        args.dtw_abandon,
    )?;
    let mut by_rank: Vec<_> = out.entries.iter().collect();
    by_rank.sort_by_key(|e| e.rank);
    for e in by_rank {
        let time = e
            .time_vs_reference
            .map(|t| format!(", time ×{t:.2} vs enhanced:5"))
            .unwrap_or_default();
        println!(
            "#{} {} — {} dtw_calls, {} pruned{time}",
            e.rank, e.record.bound, e.record.dtw_calls, e.record.pruned
        );
    }
    let records: Vec<BenchRecord> = out.entries.into_iter().map(|e| e.record).collect();
    write_results(&args.output, &records)?;
    println!("wrote {}", args.output.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify(args) => run_classify(args),
        Command::Tightness(args) => run_tightness(args),
        Command::SweepV(args) => run_sweep(args),
        Command::Compare(args) => run_compare(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Data(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
