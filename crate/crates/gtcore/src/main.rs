//! Command-line interface for two-mode core analysis.

use std::fs::File;
use std::io::{self, BufReader, Read, Write};
use std::num::NonZeroUsize;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use gtcore::plot::{render_svg, PlotOptions, Series};
use gtcore::{
    boundary_q, compute_core, core_levels, core_levels_mirrored, default_candidates, generate,
    size_curve_csv, staircase_with_threads, CoreQuery, GenModel, GenSpec, LevelVector, Mode,
    Network, PropertyFunction, WeightDist,
};

#[derive(Parser)]
#[command(
    name = "gtcore",
    version,
    about = "Generalized two-mode cores of bipartite networks",
    after_help = "Exit codes: 0 success, 1 input or data error, 2 usage error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract the core at fixed thresholds p and q
    Core(CoreArgs),
    /// Sweep drop-out levels with one threshold held fixed
    Levels(LevelsArgs),
    /// Trace the staircase boundary of nonempty cores
    Boundary(BoundaryArgs),
    /// Generate a seeded random two-mode network
    Gen(GenArgs),
    /// Summarize a network file
    Stats(StatsArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InputFormat {
    /// Pajek two-mode format (*vertices n n1)
    Pajek,
    /// Label pairs, one link per line, optional weight column
    Edgelist,
    /// JSON document with labels and links
    Json,
}

#[derive(Args)]
struct InputArgs {
    /// Input network file, `-` for stdin
    #[arg(short, long)]
    input: String,
    /// Input format, inferred from the file extension when omitted
    #[arg(long, value_enum)]
    input_format: Option<InputFormat>,
    /// Declared mode-1 node count for edge lists (pads isolated nodes)
    #[arg(long)]
    declare_n1: Option<usize>,
    /// Declared mode-2 node count for edge lists (pads isolated nodes)
    #[arg(long)]
    declare_n2: Option<usize>,
}

#[derive(Args)]
struct FunctionArgs {
    /// Mode-1 property function
    #[arg(short, long, default_value = "deg")]
    f: String,
    /// Mode-2 property function
    #[arg(short, long, default_value = "deg")]
    g: String,
    /// Reject direction-based functions on networks without arcs
    #[arg(long)]
    strict_directed: bool,
}

#[derive(Args)]
struct CoreArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    functions: FunctionArgs,
    /// Mode-1 threshold
    #[arg(short, long, allow_negative_numbers = true)]
    p: f64,
    /// Mode-2 threshold
    #[arg(short, long, allow_negative_numbers = true)]
    q: f64,
    /// Output file for the JSON result, `-` for stdout
    #[arg(short, long, default_value = "-")]
    output: String,
    /// Also write core membership as a Pajek partition file
    #[arg(long)]
    clu: Option<String>,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("fixed").required(true).multiple(false))]
struct LevelsArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    functions: FunctionArgs,
    /// Fix the mode-1 threshold and sweep mode-2 levels
    #[arg(short, long, group = "fixed", allow_negative_numbers = true)]
    p: Option<f64>,
    /// Fix the mode-2 threshold and sweep mode-1 levels
    #[arg(short, long, group = "fixed", allow_negative_numbers = true)]
    q: Option<f64>,
    /// Output file, `-` for stdout; `.vec` writes a Pajek vector, anything
    /// else a label,mode,level CSV
    #[arg(short, long, default_value = "-")]
    output: String,
    /// Also write the per-level core sizes as a q,size1,size2 CSV
    #[arg(long)]
    sizes: Option<String>,
    /// Also draw core sizes against the swept threshold as SVG
    #[arg(long)]
    svg: Option<String>,
    /// Use log10 axes in the SVG size chart
    #[arg(long, requires = "svg")]
    log_log: bool,
}

#[derive(Args)]
struct BoundaryArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    functions: FunctionArgs,
    /// Comma-separated mode-1 thresholds to probe (default: all attained
    /// values of f plus 0)
    #[arg(long, value_delimiter = ',')]
    candidates: Option<Vec<f64>>,
    /// Output file for the p,q,size1,size2 CSV, `-` for stdout
    #[arg(short, long, default_value = "-")]
    output: String,
    /// Also draw the staircase as SVG
    #[arg(long)]
    svg: Option<String>,
}

#[derive(Args)]
struct GenArgs {
    /// Mode-1 node count
    #[arg(long)]
    n1: usize,
    /// Mode-2 node count
    #[arg(long)]
    n2: usize,
    /// Link count (exact for uniform, expected for chung-lu)
    #[arg(short, long)]
    m: usize,
    /// Placement model
    #[arg(long, value_enum, default_value = "uniform")]
    model: ModelArg,
    /// Power-law exponent for chung-lu
    #[arg(long, default_value_t = 2.5)]
    gamma: f64,
    /// Weight distribution: unit, uniform:lo,hi or int:lo,hi
    #[arg(long, default_value = "unit")]
    weights: String,
    /// Random seed
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output Pajek file, `-` for stdout
    #[arg(short, long, default_value = "-")]
    output: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelArg {
    /// Exactly m links, uniform over distinct pairs
    Uniform,
    /// Expected m links with power-law expected degrees
    ChungLu,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    input: InputArgs,
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Core(args) => run_core(args),
        Command::Levels(args) => run_levels(args),
        Command::Boundary(args) => run_boundary(args),
        Command::Gen(args) => run_gen(args),
        Command::Stats(args) => run_stats(args),
    };
    if let Err(e) = result {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn infer_format(path: &str) -> InputFormat {
    match Path::new(path)
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase)
        .as_deref()
    {
        Some("json") => InputFormat::Json,
        Some("csv" | "tsv" | "txt" | "edges" | "edgelist") => InputFormat::Edgelist,
        _ => InputFormat::Pajek,
    }
}

fn read_network(args: &InputArgs) -> Result<Network> {
    let format = args.input_format.unwrap_or_else(|| infer_format(&args.input));
    let reader: Box<dyn Read> = if args.input == "-" {
        Box::new(io::stdin())
    } else {
        Box::new(File::open(&args.input).with_context(|| format!("opening {}", args.input))?)
    };
    let reader = BufReader::new(reader);
    let net = match format {
        InputFormat::Pajek => Network::load_pajek(reader)?,
        InputFormat::Edgelist => Network::load_edgelist(reader, args.declare_n1, args.declare_n2)?,
        InputFormat::Json => {
            let mut text = String::new();
            BufReader::new(reader).read_to_string(&mut text)?;
            Network::from_json_str(&text)?
        }
    };
    Ok(net)
}

fn parse_functions(args: &FunctionArgs, net: &Network) -> Result<(PropertyFunction<f64>, PropertyFunction<f64>)> {
    let f: PropertyFunction<f64> = args.f.parse()?;
    let g: PropertyFunction<f64> = args.g.parse()?;
    f.validate_for(net, args.strict_directed)?;
    g.validate_for(net, args.strict_directed)?;
    Ok((f, g))
}

fn write_output(path: &str, content: &str) -> Result<()> {
    if path == "-" {
        io::stdout().write_all(content.as_bytes())?;
    } else {
        std::fs::write(path, content).with_context(|| format!("writing {path}"))?;
    }
    Ok(())
}

fn check_threshold(name: &str, value: f64) -> Result<()> {
    if !value.is_finite() || value < 0.0 {
        bail!("threshold {name} must be finite and nonnegative, got {value}");
    }
    Ok(())
}

fn run_core(args: CoreArgs) -> Result<()> {
    check_threshold("p", args.p)?;
    check_threshold("q", args.q)?;
    let net = read_network(&args.input)?;
    let (f, g) = parse_functions(&args.functions, &net)?;
    let result = compute_core(&net, &CoreQuery::new(args.p, args.q, f, g));
    if let Some(clu) = &args.clu {
        write_output(clu, &result.to_clu(&net))?;
    }
    let mut json = result.to_json_string(&net);
    json.push('\n');
    write_output(&args.output, &json)
}

fn run_levels(args: LevelsArgs) -> Result<()> {
    let net = read_network(&args.input)?;
    let (f, g) = parse_functions(&args.functions, &net)?;
    let levels: LevelVector<f64> = match (args.p, args.q) {
        (Some(p), None) => {
            check_threshold("p", p)?;
            core_levels(&net, p, &f, &g)
        }
        (None, Some(q)) => {
            check_threshold("q", q)?;
            core_levels_mirrored(&net, q, &f, &g)
        }
        _ => unreachable!("clap enforces exactly one fixed threshold"),
    };
    let text = if args.output.ends_with(".vec") {
        levels.to_vec_format()
    } else {
        levels.to_csv(&net)
    };
    write_output(&args.output, &text)?;
    let curve = levels.size_curve(&net);
    if let Some(sizes) = &args.sizes {
        write_output(sizes, &size_curve_csv(&curve))?;
    }
    if let Some(svg) = &args.svg {
        let swept = match levels.fixed_mode {
            Mode::One => "q",
            Mode::Two => "p",
        };
        let series = vec![
            Series {
                label: "mode-1 size".to_string(),
                points: curve.iter().map(|pt| (pt.q, pt.size1 as f64)).collect(),
            },
            Series {
                label: "mode-2 size".to_string(),
                points: curve.iter().map(|pt| (pt.q, pt.size2 as f64)).collect(),
            },
        ];
        let mut opts = PlotOptions::new(
            &format!("core sizes, fixed threshold {}", levels.threshold),
            swept,
            "core size",
        );
        opts.log_x = args.log_log;
        opts.log_y = args.log_log;
        write_output(svg, &render_svg(&series, &opts))?;
    }
    Ok(())
}

fn worker_threads(candidates: usize) -> NonZeroUsize {
    let available = std::thread::available_parallelism().map_or(1, NonZeroUsize::get);
    let cap = match std::env::var("GTCORE_THREADS") {
        Ok(raw) => raw.parse().unwrap_or(available),
        Err(_) => available,
    };
    NonZeroUsize::new(cap.clamp(1, candidates.max(1))).expect("clamped to at least 1")
}

fn run_boundary(args: BoundaryArgs) -> Result<()> {
    let net = read_network(&args.input)?;
    let (f, g) = parse_functions(&args.functions, &net)?;
    let candidates = match args.candidates {
        Some(list) => {
            for &p in &list {
                check_threshold("candidate", p)?;
            }
            list
        }
        None => default_candidates(&net, &f),
    };
    let stairs = staircase_with_threads(&net, &f, &g, &candidates, worker_threads(candidates.len()));
    write_output(&args.output, &stairs.to_csv())?;
    if let Some(svg) = &args.svg {
        let series = vec![Series {
            label: "boundary".to_string(),
            points: stairs.corners.iter().map(|c| (c.p, c.q)).collect(),
        }];
        let mut opts = PlotOptions::new("nonempty-core boundary", "p", "q");
        opts.step = true;
        write_output(svg, &render_svg(&series, &opts))?;
    }
    Ok(())
}

fn parse_weights(text: &str) -> Result<WeightDist> {
    if text == "unit" {
        return Ok(WeightDist::Unit);
    }
    let parse_pair = |body: &str| -> Result<(f64, f64)> {
        let (lo, hi) = body
            .split_once(',')
            .with_context(|| format!("expected lo,hi in weight spec `{text}`"))?;
        Ok((lo.trim().parse()?, hi.trim().parse()?))
    };
    if let Some(body) = text.strip_prefix("uniform:") {
        let (lo, hi) = parse_pair(body)?;
        return Ok(WeightDist::Uniform { lo, hi });
    }
    if let Some(body) = text.strip_prefix("int:") {
        let (lo, hi) = parse_pair(body)?;
        if lo.fract() != 0.0 || hi.fract() != 0.0 || lo < 0.0 || hi < 0.0 {
            bail!("int weight bounds must be nonnegative integers");
        }
        return Ok(WeightDist::Integer { lo: lo as u64, hi: hi as u64 });
    }
    bail!("unknown weight spec `{text}`, expected unit, uniform:lo,hi or int:lo,hi");
}

fn run_gen(args: GenArgs) -> Result<()> {
    let spec = GenSpec {
        n1: args.n1,
        n2: args.n2,
        m: args.m,
        model: match args.model {
            ModelArg::Uniform => GenModel::UniformPairs,
            ModelArg::ChungLu => GenModel::ChungLu { gamma: args.gamma },
        },
        weights: parse_weights(&args.weights)?,
        seed: args.seed,
    };
    let net: Network = generate(&spec)?;
    let mut out = Vec::new();
    net.save_pajek(&mut out)?;
    write_output(&args.output, std::str::from_utf8(&out).expect("pajek output is utf-8"))
}

fn run_stats(args: StatsArgs) -> Result<()> {
    let net = read_network(&args.input)?;
    let deg_summary = |mode: Mode| -> (usize, usize, f64) {
        let degs: Vec<usize> = net.mode_nodes(mode).map(|v| net.deg(v)).collect();
        if degs.is_empty() {
            return (0, 0, 0.0);
        }
        let min = *degs.iter().min().expect("nonempty");
        let max = *degs.iter().max().expect("nonempty");
        let mean = degs.iter().sum::<usize>() as f64 / degs.len() as f64;
        (min, max, mean)
    };
    let (min1, max1, mean1) = deg_summary(Mode::One);
    let (min2, max2, mean2) = deg_summary(Mode::Two);
    let weights: Vec<f64> = net.links().iter().map(|l| l.weight).collect();
    let total: f64 = weights.iter().sum();
    println!("nodes: {} ({} + {})", net.n(), net.n1(), net.n2());
    println!("links: {}{}", net.m(), if net.has_directed_info() { " (directed)" } else { "" });
    println!("mode-1 degree: min {min1} max {max1} mean {mean1:.3}");
    println!("mode-2 degree: min {min2} max {max2} mean {mean2:.3}");
    if let (Some(lo), Some(hi)) = (
        weights.iter().copied().reduce(f64::min),
        weights.iter().copied().reduce(f64::max),
    ) {
        println!("weights: min {lo} max {hi} total {total}");
    } else {
        println!("weights: none");
    }
    let deg_levels = core_levels(&net, 1.0, &PropertyFunction::new(gtcore::PropertyKind::Degree), &PropertyFunction::new(gtcore::PropertyKind::Degree));
    if let Some(top) = boundary_q(&deg_levels) {
        println!("max degree level at p=1: {top}");
    }
    Ok(())
}
