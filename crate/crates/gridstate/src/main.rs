use clap::{Parser, Subcommand};
use gridstate::catalog;
use gridstate::census::census;
use gridstate::classify::classify;
use gridstate::criteria::{ccnr_entangled, degree_criterion};
use gridstate::dot::export_dot;
use gridstate::graph::{Bipartition, GraphError, GridGraph};
use gridstate::io::{parse_graph, report_to_json, serialize_graph, IoError};
use gridstate::surgery::{surgery_terminals, ExploreOptions, StitchPolicy};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "gridstate", version, about = "Entanglement analysis of grid states via grid-labelled graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full classification report for a graph file
    Classify {
        file: PathBuf,
        /// Emit the report as a single JSON line
        #[arg(long)]
        json: bool,
    },
    /// Degree-criterion PPT report (all cuts, or one via --cut)
    Ppt {
        file: PathBuf,
        /// Bipartition, left block before the bar: e.g. 0|1,2
        #[arg(long)]
        cut: Option<String>,
    },
    /// Surgery exploration: terminal graphs and span bound
    Surgery {
        file: PathBuf,
        #[arg(long)]
        cut: Option<String>,
        /// Print every explored surgery step
        #[arg(long)]
        trace: bool,
        /// Branch at every viable vertex, not only the smallest
        #[arg(long)]
        exhaustive: bool,
    },
    /// Grid rank and component count
    Rank { file: PathBuf },
    /// Realignment trace norm per cut
    Ccnr {
        file: PathBuf,
        #[arg(long)]
        cut: Option<String>,
    },
    /// Emit a catalog graph (bell-mixture, npt-example, cross-hatch M N,
    /// square-loop, x-graph, cross-hatch-3d L)
    Gen {
        name: String,
        params: Vec<usize>,
        /// Write to a file instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Classify every small graph on a grid and tabulate the labels
    Census {
        /// Grid size, e.g. 3x3
        #[arg(long)]
        dims: String,
        #[arg(long = "max-edges")]
        max_edges: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Graphviz DOT with fixed grid positions
    ExportDot { file: PathBuf },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Failure {
        let code = if matches!(e, GraphError::EmptyGraph) { 3 } else { 2 };
        Failure { code, message: e.to_string() }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Failure {
        Failure { code: 2, message: e.to_string() }
    }
}

fn load(path: &Path) -> Result<GridGraph, Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure { code: 2, message: format!("{}: {}", path.display(), e) })?;
    Ok(parse_graph(&bytes)?)
}

fn parse_cut(spec: &str, n_parties: usize) -> Result<Bipartition, Failure> {
    let (left_s, _right_s) = spec.split_once('|').ok_or_else(|| Failure {
        code: 2,
        message: format!("cut '{}' must look like 0|1,2", spec),
    })?;
    let left: Vec<usize> = left_s
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure { code: 2, message: format!("cut '{}': {}", spec, e) })?;
    Ok(Bipartition::new(&left, n_parties)?)
}

fn cuts_for(g: &GridGraph, cut: &Option<String>) -> Result<Vec<Bipartition>, Failure> {
    match cut {
        Some(s) => Ok(vec![parse_cut(s, g.n_parties())?]),
        None => Ok(g.all_cuts()),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Classify { file, json } => {
            let g = load(&file)?;
            let report = classify(&g)?;
            if json {
                println!("{}", report_to_json(&report));
            } else {
                println!("label: {}", report.label.as_str());
                for c in &report.cuts {
                    print!(
                        "cut {}: ppt={} ccnr={:.6} span_bound={}/{}",
                        c.ppt.cut.label(),
                        c.ppt.ppt,
                        c.ccnr_value,
                        c.range.span_bound,
                        c.range.root_rank
                    );
                    if let Some(w) = &c.ppt.witness_vertex {
                        print!(" witness={:?}", w);
                    }
                    println!();
                }
                if let Some(gme) = report.gme {
                    println!("gme: {}", gme);
                }
                for cert in &report.certificates {
                    println!("certificate: {}", cert);
                }
            }
        }
        Cmd::Ppt { file, cut } => {
            let g = load(&file)?;
            for c in cuts_for(&g, &cut)? {
                let rep = degree_criterion(&g, &c)?;
                match &rep.witness_vertex {
                    Some(w) => println!("cut {}: NPT, witness {:?}", c.label(), w),
                    None => println!("cut {}: PPT", c.label()),
                }
            }
        }
        Cmd::Surgery { file, cut, trace, exhaustive } => {
            let g = load(&file)?;
            let opts = ExploreOptions { policy: StitchPolicy::default(), exhaustive };
            for c in cuts_for(&g, &cut)? {
                let flat = g.flatten(&c)?;
                let (terms, tr) = surgery_terminals(&flat, &opts)?;
                println!(
                    "cut {}: root rank {}, {} terminal(s), span bound {}",
                    c.label(),
                    flat.grid_rank(),
                    terms.len(),
                    terms.span_bound()
                );
                for t in terms.terminals() {
                    println!("  terminal: {} edge(s), rank {}", t.edge_count(), t.grid_rank());
                }
                if trace {
                    for (i, node) in tr.nodes.iter().enumerate() {
                        println!("  node {}: {} edge(s)", i, node.graph.edge_count());
                        for b in &node.branches {
                            println!(
                                "    {} surgery at {:?}: removed {}, stitched {} -> node {}",
                                b.step.axis.name(),
                                b.step.vertex,
                                b.step.removed_edges.len(),
                                b.step.stitched_edges.len(),
                                b.child
                            );
                        }
                    }
                }
            }
        }
        Cmd::Rank { file } => {
            let g = load(&file)?;
            println!(
                "rank {} ({} vertices, {} components)",
                g.grid_rank(),
                g.vertex_count(),
                g.connected_components().len()
            );
        }
        Cmd::Ccnr { file, cut } => {
            let g = load(&file)?;
            for c in cuts_for(&g, &cut)? {
                let (value, fires) = ccnr_entangled(&g, &c)?;
                println!(
                    "cut {}: trace norm {:.9}{}",
                    c.label(),
                    value,
                    if fires { " (entangled)" } else { "" }
                );
            }
        }
        Cmd::Gen { name, params, output } => {
            let entry = match (name.as_str(), params.as_slice()) {
                ("bell-mixture", []) => catalog::gen_bell_mixture(),
                ("npt-example", []) => catalog::gen_npt_example(),
                ("cross-hatch", []) => catalog::gen_cross_hatch(3, 3)?,
                ("cross-hatch", [m, n]) => catalog::gen_cross_hatch(*m, *n)?,
                ("square-loop", []) => catalog::gen_square_loop(),
                ("x-graph", []) => catalog::gen_x_graph(),
                ("cross-hatch-3d", []) => catalog::gen_cross_hatch_3d(3)?,
                ("cross-hatch-3d", [l]) => catalog::gen_cross_hatch_3d(*l)?,
                _ => {
                    return Err(Failure {
                        code: 2,
                        message: format!("unknown generator '{}' or wrong parameter count", name),
                    })
                }
            };
            let doc = serialize_graph(&entry.graph);
            match output {
                Some(path) => std::fs::write(&path, doc + "\n").map_err(|e| Failure {
                    code: 2,
                    message: format!("{}: {}", path.display(), e),
                })?,
                None => println!("{}", doc),
            }
        }
        Cmd::Census { dims, max_edges, jobs } => {
            let parsed: Vec<usize> = dims
                .split('x')
                .map(|t| t.parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|e| Failure { code: 2, message: format!("dims '{}': {}", dims, e) })?;
            let rows = census(parsed, max_edges, jobs)?;
            println!("edge_count total separable npt bound undecided");
            for r in &rows {
                println!(
                    "{} {} {} {} {} {}",
                    r.edge_count, r.total, r.separable, r.npt, r.bound, r.undecided
                );
            }
            let total: u64 = rows.iter().map(|r| r.total).sum();
            println!("total {}", total);
        }
        Cmd::ExportDot { file } => {
            let g = load(&file)?;
            print!("{}", export_dot(&g));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
