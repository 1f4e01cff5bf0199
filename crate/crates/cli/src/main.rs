use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use tanglegram::dual::{build_cut_graph, decode_cut, exact_cut, local_search_restarts};
use tanglegram::generators::{
    expand_meta_mapped, gen_minuncut, gen_random, gen_tight, minuncut_partition_layout,
    tight_optimal_layout, GenShape, MinUncutGraph,
};
use tanglegram::record::{
    instance_from_json, layout_from_json, GeneratedInstance, MetaFile, ResultRecord,
};
use tanglegram::render::{render_svg, StyleOptions};
use tanglegram::{
    approx_general, count_crossings, min_crossings_fpt, rec_split, solve_exact_with_cap, solve_fpt,
    total_pairs, Layout, TanglegramInstance, DEFAULT_EXACT_CAP,
};

const DEFAULT_MAX_N: usize = 8192;

#[derive(Parser)]
#[command(
    name = "tangle",
    version,
    about = "Tanglegram layout and crossing minimization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Io {
    /// Instance file: {"left": "<newick>", "right": "<newick>"}
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    /// Write the result record to this file instead of standard output
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
    /// Also draw the resulting layout as SVG
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Print the result record as JSON
    #[arg(long)]
    json: bool,
    /// Include elapsed_ms in the result record
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Count the crossings of a layout (the stored order if none given)
    Count {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        layout: Option<PathBuf>,
    },
    /// Recursive 2-approximation; falls back to the heuristic on non-complete trees
    Approx {
        #[command(flatten)]
        io: Io,
        /// Use the heuristic for arbitrary binary trees even on complete ones
        #[arg(long)]
        general: bool,
    },
    /// Decide whether a layout with at most K crossings exists (exit 1 if not)
    Fpt {
        #[command(flatten)]
        io: Io,
        #[arg(short = 'k')]
        k: u64,
    },
    /// Brute-force optimum
    Exact {
        #[command(flatten)]
        io: Io,
        /// Limit on the total number of inner nodes
        #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
        cap: usize,
    },
    /// Optimal layout
    Opt {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value_t = OptMethod::Fpt)]
        method: OptMethod,
    },
    /// Maximize non-crossing pairs through the constrained max-cut reduction
    Dual {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value_t = DualMethod::Local)]
        method: DualMethod,
        /// Random restarts for local search, in addition to the all-unswapped start
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Initial layout the cut graph is built against
        #[arg(long)]
        layout: Option<PathBuf>,
    },
    /// Generate instances
    Gen {
        #[command(subcommand)]
        family: Family,
        #[arg(short = 'o', long, global = true)]
        output: Option<PathBuf>,
    },
    /// Draw a layout as SVG
    Render {
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        #[arg(long)]
        layout: Option<PathBuf>,
        /// Output file; standard output if omitted
        #[arg(long, short = 'o')]
        svg: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OptMethod {
    Fpt,
    Exact,
}

#[derive(Clone, Copy, ValueEnum)]
enum DualMethod {
    Exact,
    Local,
}

#[derive(Clone, Copy, ValueEnum)]
enum Shape {
    Complete,
    Random,
}

#[derive(Subcommand)]
enum Family {
    /// Family on which the approximation's factor 2 is tight
    Tight {
        #[arg(long)]
        m: usize,
    },
    /// MinUncut reduction of a graph file with one "i j" edge per line
    Minuncut {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        wa: u64,
        #[arg(long)]
        wb: u64,
        /// Comma-separated 1-indexed vertices of the second part; the canonical layout draws this partition
        #[arg(long, value_delimiter = ',')]
        second: Vec<usize>,
        /// Replace weighted edges by unit edges
        #[arg(long)]
        expand: bool,
    },
    /// Seeded random instance
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Shape::Random)]
        shape: Shape,
    },
}

fn max_n() -> Result<usize> {
    match std::env::var("TANGLE_MAX_N") {
        Ok(v) => v
            .parse()
            .with_context(|| format!("TANGLE_MAX_N={v:?} is not a leaf count")),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_instance(path: &Path) -> Result<TanglegramInstance> {
    let inst = instance_from_json(&read(path)?)
        .with_context(|| format!("invalid instance {}", path.display()))?;
    let cap = max_n()?;
    if inst.n() > cap {
        bail!(
            "instance has {} leaves, limit is {cap} (set TANGLE_MAX_N)",
            inst.n()
        );
    }
    Ok(inst)
}

fn load_layout(path: Option<&Path>, inst: &TanglegramInstance) -> Result<Layout> {
    let Some(path) = path else {
        return Ok(Layout::identity(inst));
    };
    let layout = layout_from_json(&read(path)?)
        .with_context(|| format!("invalid layout {}", path.display()))?;
    layout.check(inst)?;
    Ok(layout)
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit(io: &Io, inst: &TanglegramInstance, mut rec: ResultRecord, start: Instant) -> Result<()> {
    if io.timing {
        rec.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    if let Some(svg) = &io.svg {
        let doc = render_svg(inst, &rec.layout(), &StyleOptions::default())?;
        fs::write(svg, doc).with_context(|| format!("cannot write {}", svg.display()))?;
    }
    let text = if io.json || io.output.is_some() {
        rec.to_json() + "\n"
    } else {
        summary(&rec)
    };
    write_out(io.output.as_deref(), &text)
}

fn summary(rec: &ResultRecord) -> String {
    let bits = |b: &[bool]| {
        b.iter()
            .map(|&x| if x { '1' } else { '0' })
            .collect::<String>()
    };
    let mut s = format!("method: {}\ncrossings: {}\n", rec.method, rec.crossings);
    if let Some(c) = rec.counted {
        s += &format!("counted: {c}\n");
    }
    if let Some(w) = rec.cut_weight {
        s += &format!(
            "cut weight: {w}\ntotal pairs: {}\nidentity holds: {}\n",
            rec.total_pairs.unwrap_or(0),
            rec.identity_holds.unwrap_or(false)
        );
    }
    s += &format!(
        "left order: {}\nright order: {}\nleft swaps: {}\nright swaps: {}\n",
        rec.left_order.join(" "),
        rec.right_order.join(" "),
        bits(&rec.left_swaps),
        bits(&rec.right_swaps)
    );
    if let Some(ms) = rec.elapsed_ms {
        s += &format!("elapsed: {ms} ms\n");
    }
    s
}

fn run(cli: Cli) -> Result<ExitCode> {
    let start = Instant::now();
    match cli.command {
        Command::Count { io, layout } => {
            let inst = load_instance(&io.input)?;
            let layout = load_layout(layout.as_deref(), &inst)?;
            let rec = ResultRecord::new(&inst, &layout, "count")?;
            if io.json || io.output.is_some() || io.svg.is_some() || io.timing {
                emit(&io, &inst, rec, start)?;
            } else {
                println!("{}", rec.crossings);
            }
        }
        Command::Approx { io, general } => {
            let inst = load_instance(&io.input)?;
            let (r, method) = if general || !inst.is_complete() {
                (approx_general(&inst)?, "approx-general")
            } else {
                (rec_split(&inst)?, "approx")
            };
            let mut rec = ResultRecord::new(&inst, &r.layout, method)?;
            rec.counted = Some(r.counted);
            emit(&io, &inst, rec, start)?;
        }
        Command::Fpt { io, k } => {
            let inst = load_instance(&io.input)?;
            match solve_fpt(&inst, k)? {
                Some(layout) => {
                    let mut rec = ResultRecord::new(&inst, &layout, "fpt")?;
                    rec.k = Some(k);
                    emit(&io, &inst, rec, start)?;
                }
                None => {
                    println!("no layout with at most {k} crossings");
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::Exact { io, cap } => {
            let inst = load_instance(&io.input)?;
            let (layout, _) = solve_exact_with_cap(&inst, cap)?;
            emit(
                &io,
                &inst,
                ResultRecord::new(&inst, &layout, "exact")?,
                start,
            )?;
        }
        Command::Opt { io, method } => {
            let inst = load_instance(&io.input)?;
            let (layout, name) = match method {
                OptMethod::Fpt => (min_crossings_fpt(&inst)?.0, "opt-fpt"),
                OptMethod::Exact => (
                    solve_exact_with_cap(&inst, DEFAULT_EXACT_CAP)?.0,
                    "opt-exact",
                ),
            };
            emit(&io, &inst, ResultRecord::new(&inst, &layout, name)?, start)?;
        }
        Command::Dual {
            io,
            method,
            restarts,
            seed,
            layout,
        } => {
            let inst = load_instance(&io.input)?;
            let initial = load_layout(layout.as_deref(), &inst)?;
            let graph = build_cut_graph(&inst, &initial)?;
            let (cut, name) = match method {
                DualMethod::Exact => (exact_cut(&graph)?, "dual-exact"),
                DualMethod::Local => (local_search_restarts(&graph, restarts, seed), "dual-local"),
            };
            let decoded = decode_cut(&graph, &cut, &initial)?;
            let mut rec = ResultRecord::new(&inst, &decoded, name)?;
            let weight = graph.weight(&cut);
            let total = total_pairs(inst.n());
            rec.cut_weight = Some(weight);
            rec.total_pairs = Some(total);
            rec.identity_holds = Some(weight + count_crossings(&inst, &decoded)? == total);
            emit(&io, &inst, rec, start)?;
        }
        Command::Gen { family, output } => {
            let text = generate(family)?;
            write_out(output.as_deref(), &(text + "\n"))?;
        }
        Command::Render { input, layout, svg } => {
            let inst = load_instance(&input)?;
            let layout = load_layout(layout.as_deref(), &inst)?;
            let doc = render_svg(&inst, &layout, &StyleOptions::default())?;
            write_out(svg.as_deref(), &doc)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn generate(family: Family) -> Result<String> {
    Ok(match family {
        Family::Tight { m } => {
            let inst = gen_tight(m)?;
            serde_json::to_string_pretty(&GeneratedInstance::new(&inst, tight_optimal_layout(m)?))?
        }
        Family::Random { n, seed, shape } => {
            let shape = match shape {
                Shape::Complete => GenShape::Complete,
                Shape::Random => GenShape::RandomBinary,
            };
            let inst = gen_random(n, shape, seed)?;
            serde_json::to_string_pretty(&GeneratedInstance::new(&inst, Layout::identity(&inst)))?
        }
        Family::Minuncut {
            graph,
            wa,
            wb,
            second,
            expand,
        } => {
            let g = MinUncutGraph::parse(&read(&graph)?)
                .with_context(|| format!("invalid graph {}", graph.display()))?;
            let mut in_first = vec![true; g.vertices()];
            for v in second {
                if v == 0 || v > g.vertices() {
                    bail!("vertex {v} out of range 1..={}", g.vertices());
                }
                in_first[v - 1] = false;
            }
            let meta = gen_minuncut(&g, wa, wb)?;
            let layout = minuncut_partition_layout(&g, &in_first)?;
            if expand {
                let exp = expand_meta_mapped(&meta)?;
                let carried = exp.carry_layout(&layout);
                serde_json::to_string_pretty(&GeneratedInstance::new(&exp.instance, carried))?
            } else {
                serde_json::to_string_pretty(&MetaFile::new(&meta, layout)?)?
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
