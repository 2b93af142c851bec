//! Command-line front end: color graphs, verify colorings, recognize class
//! membership at desk scale, inspect decompositions, generate instances, and
//! emit JSON reports.
//!
//! Exit codes: 0 success, 1 negative verification/recognition verdict,
//! 2 usage error, 3 input parse error.

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use capcolor::coloring::{self, Mode, DEFAULT_ORACLE_BUDGET};
use capcolor::decomposition::{clique_cutset_decompose, twin_partition, DecompositionTree};
use capcolor::generators;
use capcolor::graph::{Graph, GraphError};
use capcolor::oracles::{check_coloring, classify_membership};
use capcolor::{min_degree_last_ordering, ColoringError};

const EXIT_OK: i32 = 0;
const EXIT_NEGATIVE: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_PARSE: i32 = 3;

#[derive(Parser)]
#[command(name = "capcolor", version, about = "Color (even-hole, cap)-free graphs within 3/2 of the clique number")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    Permissive,
}

#[derive(Subcommand)]
enum Command {
    /// Color a DIMACS graph and report colors used against the 3/2·ω bound
    Color {
        /// Input .col file (also accepted as a positional path); stdin if absent
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(value_name = "FILE")]
        input_pos: Option<PathBuf>,
        /// Write the coloring as JSON {"colors": [...], "k": K}
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Print the full report as JSON instead of a text summary
        #[arg(long)]
        json: bool,
        #[arg(long, value_enum, default_value = "permissive")]
        mode: ModeArg,
        /// Node-expansion budget for the strict-mode membership oracle
        #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
        budget: u64,
    },
    /// Check a coloring file against a graph; exit 1 if improper
    Verify {
        graph: PathBuf,
        coloring: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide (even-hole, cap)-free membership; exit 1 with a witness if not
    Recognize {
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(value_name = "FILE")]
        input_pos: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
        budget: u64,
        /// Treat a not-in-class verdict as a failure (exit 1); this is also
        /// the default behavior, the flag only documents intent
        #[arg(long)]
        expect_in_class: bool,
    },
    /// Print the clique-cutset decomposition tree
    Decompose {
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(value_name = "FILE")]
        input_pos: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Generate an instance family as canonical DIMACS
    Gen {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        max_tries: usize,
        /// Comma-separated per-vertex clique sizes (blowup only)
        #[arg(long)]
        sizes: Option<String>,
        /// Base graph for blowup
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Summary statistics: n, m, twin classes, atoms, beta, omega estimate
    Stats {
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(value_name = "FILE")]
        input_pos: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Cycle,
    Complete,
    Hajos,
    Gk,
    Blowup,
    RandomChordal,
    RandomInClass,
}

#[derive(Serialize, Deserialize)]
struct ColoringFile {
    colors: Vec<usize>,
    k: usize,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure::new(EXIT_PARSE, e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(f) => {
            eprintln!("capcolor: {}", f.message);
            std::process::exit(f.code);
        }
    }
}

fn read_graph(flag: &Option<PathBuf>, positional: &Option<PathBuf>) -> Result<Graph, Failure> {
    let text = match flag.as_ref().or(positional.as_ref()) {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure::new(EXIT_PARSE, format!("stdin: {e}")))?;
            buf
        }
    };
    Ok(Graph::parse_dimacs(&text)?)
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Color { input, input_pos, output, json, mode, budget } => {
            let g = read_graph(&input, &input_pos)?;
            let mode = match mode {
                ModeArg::Strict => Mode::Strict,
                ModeArg::Permissive => Mode::Permissive,
            };
            let report = match coloring::color_with_budget(&g, mode, budget) {
                Ok(r) => r,
                Err(ColoringError::NotInClass(msg)) => {
                    return Err(Failure::new(EXIT_NEGATIVE, format!("not in class: {msg}")))
                }
                Err(ColoringError::TooLargeForStrict(msg)) => {
                    return Err(Failure::new(EXIT_USAGE, msg))
                }
                Err(e) => return Err(Failure::new(EXIT_USAGE, e.to_string())),
            };
            if let Some(path) = &output {
                let file = ColoringFile {
                    colors: report.coloring.color_of.clone(),
                    k: report.coloring.palette_size,
                };
                emit(&Some(path.clone()), &format!("{}\n", serde_json::to_string(&file).unwrap()))?;
            }
            if json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                println!(
                    "colors_used={} omega={}{} bound={} atoms={}{}",
                    report.colors_used,
                    report.omega,
                    if report.omega_exact { "" } else { " (inexact)" },
                    report.bound,
                    report.atoms,
                    match &report.class_violation {
                        Some(v) => format!(" class_violation={v}"),
                        None => String::new(),
                    }
                );
            }
            Ok(EXIT_OK)
        }
        Command::Verify { graph, coloring, json } => {
            let g = read_graph(&Some(graph), &None)?;
            let text = fs::read_to_string(&coloring)
                .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", coloring.display())))?;
            let file: ColoringFile = serde_json::from_str(&text)
                .map_err(|e| Failure::new(EXIT_PARSE, format!("coloring file: {e}")))?;
            let c = capcolor::Coloring { color_of: file.colors, palette_size: file.k };
            let proper = check_coloring(&g, &c)
                .map_err(|e| Failure::new(EXIT_NEGATIVE, e.to_string()))?;
            if json {
                println!("{}", json!({ "proper": proper, "k": c.palette_size }));
            } else {
                println!("{}", if proper { "proper" } else { "improper" });
            }
            Ok(if proper { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Recognize { input, input_pos, json, budget, expect_in_class: _ } => {
            let g = read_graph(&input, &input_pos)?;
            let report = classify_membership(&g, budget);
            if json {
                println!(
                    "{}",
                    json!({
                        "in_class": report.in_class,
                        "search_exhausted": report.search_exhausted,
                        "even_hole": report.even_hole.as_ref().map(|h| &h.cycle),
                        "cap": report.cap.as_ref().map(|c| json!({
                            "hole": c.hole.cycle,
                            "apex": c.apex,
                        })),
                    })
                );
            } else if report.in_class {
                println!("in class ((even-hole, cap)-free, search exhausted)");
            } else if let Some(h) = &report.even_hole {
                println!("not in class: even hole {:?}", h.cycle);
            } else if let Some(c) = &report.cap {
                println!("not in class: cap with apex {} on hole {:?}", c.apex, c.hole.cycle);
            } else {
                println!("inconclusive: oracle budget exhausted");
            }
            Ok(if report.in_class { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Decompose { input, input_pos, json } => {
            let g = read_graph(&input, &input_pos)?;
            let tree = clique_cutset_decompose(&g);
            if json {
                println!("{}", serde_json::to_string_pretty(&tree_json(&tree)).unwrap());
            } else {
                let mut out = String::new();
                tree_text(&tree, 0, &mut out);
                print!("{out}");
            }
            Ok(EXIT_OK)
        }
        Command::Gen { family, n, k, p, seed, max_tries, sizes, input, output } => {
            let g = build_family(family, n, k, p, seed, max_tries, sizes, input)?;
            emit(&output, &g.write_dimacs())?;
            Ok(EXIT_OK)
        }
        Command::Stats { input, input_pos, json } => {
            let g = read_graph(&input, &input_pos)?;
            let tp = twin_partition(&g);
            let atoms = clique_cutset_decompose(&g).leaves().len();
            let beta = min_degree_last_ordering(&g).beta_value;
            let (omega, omega_exact) = coloring::clique_number_c4free(&g);
            if json {
                println!(
                    "{}",
                    json!({
                        "n": g.n(),
                        "m": g.m(),
                        "twin_classes": tp.classes.len(),
                        "atoms": atoms,
                        "beta": beta,
                        "omega": omega,
                        "omega_exact": omega_exact,
                    })
                );
            } else {
                println!(
                    "n={} m={} twin_classes={} atoms={} beta={} omega={}{}",
                    g.n(),
                    g.m(),
                    tp.classes.len(),
                    atoms,
                    beta,
                    omega,
                    if omega_exact { "" } else { " (inexact)" }
                );
            }
            Ok(EXIT_OK)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn build_family(
    family: Family,
    n: Option<usize>,
    k: Option<usize>,
    p: Option<f64>,
    seed: u64,
    max_tries: usize,
    sizes: Option<String>,
    input: Option<PathBuf>,
) -> Result<Graph, Failure> {
    let need_n = |n: Option<usize>| {
        n.ok_or_else(|| Failure::new(EXIT_USAGE, "this family requires --n"))
    };
    let gen_err = |e: generators::GenError| Failure::new(EXIT_USAGE, e.to_string());
    match family {
        Family::Cycle => generators::cycle(need_n(n)?).map_err(gen_err),
        Family::Complete => Ok(generators::complete(need_n(n)?)),
        Family::Hajos => Ok(generators::hajos()),
        Family::Gk => {
            let k = k.ok_or_else(|| Failure::new(EXIT_USAGE, "gk requires --k"))?;
            generators::c5_clique_blowup(k).map_err(gen_err)
        }
        Family::Blowup => {
            let base = read_graph(&input, &None)?;
            let sizes = sizes
                .ok_or_else(|| Failure::new(EXIT_USAGE, "blowup requires --sizes"))?
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::new(EXIT_USAGE, format!("bad --sizes: {e}")))?;
            generators::blowup(&base, &sizes).map_err(gen_err)
        }
        Family::RandomChordal => Ok(generators::random_chordal(need_n(n)?, seed)),
        Family::RandomInClass => {
            let n = need_n(n)?;
            if n > 14 {
                return Err(Failure::new(EXIT_USAGE, "random-in-class requires --n <= 14"));
            }
            let p = p.ok_or_else(|| Failure::new(EXIT_USAGE, "random-in-class requires --p"))?;
            generators::random_in_class(n, p, seed, max_tries).ok_or_else(|| {
                Failure::new(
                    EXIT_NEGATIVE,
                    format!("no in-class graph found within {max_tries} tries"),
                )
            })
        }
    }
}

fn tree_json(tree: &DecompositionTree) -> serde_json::Value {
    match tree {
        DecompositionTree::Leaf { atom } => json!({
            "type": "atom",
            "vertices": atom.as_slice(),
        }),
        DecompositionTree::Node { separator, left, right } => json!({
            "type": "node",
            "separator": separator.as_slice(),
            "left": tree_json(left),
            "right": tree_json(right),
        }),
    }
}

fn tree_text(tree: &DecompositionTree, depth: usize, out: &mut String) {
    let indent = "  ".repeat(depth);
    match tree {
        DecompositionTree::Leaf { atom } => {
            out.push_str(&format!("{indent}atom {atom}\n"));
        }
        DecompositionTree::Node { separator, left, right } => {
            out.push_str(&format!("{indent}node separator={separator}\n"));
            tree_text(left, depth + 1, out);
            tree_text(right, depth + 1, out);
        }
    }
}
