//! Command-line front end for the below-guarantee coloring solvers.
//!
//! Exit codes: 0 = yes decision (or plain success), 1 = no decision,
//! 2 = usage or parse error, 3 = size-guard violation.

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use belowcolor::below_guarantee::{
    solve_below_structural_guarantee, solve_dual_coloring, solve_dual_coloring_baseline,
};
use belowcolor::bench::{bench_scaling, to_csv};
use belowcolor::generators::{gen_gnp, gen_planted_comodulator};
use belowcolor::graph::{parse_dimacs, Graph};
use belowcolor::oracle::{
    chromatic_number_exact, clique_cover_number_exact, max_independent_set_exact,
    maximum_matching_exact,
};
use belowcolor::reduction::{
    build_reduction, canonical_perfect_matching, ColoredCliqueInstance, ReducedInstance,
};
use belowcolor::solver::{
    solve_clique_cover_with_modulator, solve_coloring_with_modulator, Branch, ModulatorInstance,
    SolveReport, Witness,
};
use belowcolor::{Error, Result};

#[derive(Parser)]
#[command(name = "belowcolor", version, about = "Graph coloring below trivial guarantees")]
struct Cli {
    /// DIMACS .col input file; "-" reads standard input
    #[arg(long, global = true, default_value = "-")]
    input: String,
    /// Root seed for all randomized work
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Independent repeats per cover type in the algebraic solver
    #[arg(long, global = true, default_value_t = 3)]
    repeats: u32,
    /// Emit a machine-readable JSON report
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the input is (n - k)-colorable
    Dual {
        #[arg(long)]
        k: u32,
        /// Use the matching-based O*(4^k) pipeline instead of the packing one
        #[arg(long)]
        baseline: bool,
    },
    /// Decide whether the input is (omega + mu_bar - k)-colorable
    Guarantee {
        #[arg(long)]
        k: u32,
    },
    /// Run the modulator-parameterized solver directly
    Modulator {
        /// Number of colors (or cover cliques) allowed
        #[arg(long)]
        target: i64,
        /// Comma-separated 1-based modulator vertices (empty for none)
        #[arg(long, default_value = "")]
        modulator: String,
        /// Interpret the instance as coloring or clique cover
        #[arg(long, value_enum, default_value_t = Side::Color)]
        side: Side,
    },
    /// Exact brute-force oracles
    Oracle {
        #[arg(value_enum)]
        what: OracleKind,
    },
    /// Generate a colored-clique hardness reduction instance
    Reduce(ReduceArgs),
    /// Generate random instances
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Time the modulator solver across modulator sizes; emits CSV
    Bench {
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        p_min: usize,
        #[arg(long, default_value_t = 10)]
        p_max: usize,
        #[arg(long, default_value_t = 3)]
        trials: u32,
        /// Write the CSV here instead of standard output
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Color,
    Cover,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Chromatic,
    Cover,
    Mis,
    Matching,
}

#[derive(Args)]
struct ReduceArgs {
    /// Number of parts
    #[arg(long)]
    k: usize,
    /// Vertices per part
    #[arg(long)]
    n: usize,
    /// Cross-edge list file: lines "u v" with 1-based part-major vertex ids
    #[arg(long, conflicts_with = "random")]
    edges: Option<String>,
    /// Draw each admissible cross edge with this probability
    #[arg(long)]
    random: Option<f64>,
    /// Emit the complement (coloring-side) graph
    #[arg(long)]
    complement: bool,
    /// Write PREFIX.col and PREFIX.json instead of printing
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum GenKind {
    /// Erdos-Renyi G(n, p)
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        prob: f64,
    },
    /// Instance with a planted co-triangle modulator (listed in a comment)
    Planted {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Guard(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Dual { k, baseline } => {
            let g = read_graph(&cli.input)?;
            let report = if *baseline {
                solve_dual_coloring_baseline(&g, *k, cli.seed, cli.repeats)?
            } else {
                solve_dual_coloring(&g, *k, cli.seed, cli.repeats)?
            };
            let problem = if *baseline { "dual-baseline" } else { "dual" };
            emit_report(&cli, problem, g.vertex_count(), *k as i64, &report);
            Ok(decision_code(&report))
        }
        Command::Guarantee { k } => {
            let g = read_graph(&cli.input)?;
            let report = solve_below_structural_guarantee(&g, *k, cli.seed, cli.repeats)?;
            emit_report(&cli, "guarantee", g.vertex_count(), *k as i64, &report);
            Ok(decision_code(&report))
        }
        Command::Modulator {
            target,
            modulator,
            side,
        } => {
            let g = read_graph(&cli.input)?;
            let s = parse_vertex_list(modulator, g.vertex_count())?;
            let (problem, report) = match side {
                Side::Color => (
                    "modulator-coloring",
                    solve_coloring_with_modulator(&g, &s, *target, cli.seed, cli.repeats)?,
                ),
                Side::Cover => {
                    let inst = ModulatorInstance {
                        graph: g.clone(),
                        modulator: s,
                        target: *target,
                    };
                    (
                        "modulator-cover",
                        solve_clique_cover_with_modulator(&inst, cli.seed, cli.repeats)?,
                    )
                }
            };
            emit_report(&cli, problem, g.vertex_count(), *target, &report);
            Ok(decision_code(&report))
        }
        Command::Oracle { what } => {
            let g = read_graph(&cli.input)?;
            let (name, value) = match what {
                OracleKind::Chromatic => ("oracle-chromatic", chromatic_number_exact(&g)?),
                OracleKind::Cover => ("oracle-cover", clique_cover_number_exact(&g)?),
                OracleKind::Mis => ("oracle-mis", max_independent_set_exact(&g)?),
                OracleKind::Matching => ("oracle-matching", maximum_matching_exact(&g)?),
            };
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({"problem": name, "n": g.vertex_count(), "value": value})
                );
            } else {
                println!("{name}: {value}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce(args) => run_reduce(&cli, args),
        Command::Gen { kind } => run_gen(&cli, kind),
        Command::Bench {
            n,
            p_min,
            p_max,
            trials,
            out,
        } => {
            if p_min > p_max {
                return Err(Error::Invalid("p-min exceeds p-max".into()));
            }
            let ps: Vec<usize> = (*p_min..=*p_max).collect();
            let records = bench_scaling(*n, &ps, *trials, cli.repeats, cli.seed)?;
            let csv = to_csv(&records);
            match out {
                Some(path) => fs::write(path, csv)
                    .map_err(|e| Error::Invalid(format!("cannot write {path}: {e}")))?,
                None => print!("{csv}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_reduce(cli: &Cli, args: &ReduceArgs) -> Result<ExitCode> {
    let mut inst = ColoredCliqueInstance::new(args.k, args.n);
    if let Some(prob) = args.random {
        inst = ColoredCliqueInstance::random(args.k, args.n, prob, cli.seed);
    } else if let Some(path) = &args.edges {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let parse = |tok: Option<&str>| -> Result<usize> {
                tok.and_then(|t| t.parse::<usize>().ok())
                    .filter(|&v| v >= 1)
                    .ok_or_else(|| {
                        Error::Parse(format!("line {}: expected 1-based vertex pair", lineno + 1))
                    })
            };
            let u = parse(it.next())?;
            let v = parse(it.next())?;
            inst.add_cross_edge(u - 1, v - 1)?;
        }
    }
    let reduced = build_reduction(&inst)?;
    let matching = canonical_perfect_matching(&reduced);
    debug_assert!(matching.is_perfect(&reduced.graph));
    let graph = if args.complement {
        reduced.graph.complement()
    } else {
        reduced.graph.clone()
    };
    let dimacs = format!(
        "c reduced colored-clique instance (k={}, n={}, target={}{})\n{}",
        args.k,
        args.n,
        reduced.target,
        if args.complement { ", complemented" } else { "" },
        graph.to_dimacs()
    );
    let sidecar = sidecar_json(&reduced, args.complement);
    match &args.out {
        Some(prefix) => {
            fs::write(format!("{prefix}.col"), &dimacs)
                .map_err(|e| Error::Invalid(format!("cannot write {prefix}.col: {e}")))?;
            fs::write(format!("{prefix}.json"), sidecar.to_string())
                .map_err(|e| Error::Invalid(format!("cannot write {prefix}.json: {e}")))?;
        }
        None => {
            if cli.json {
                let mut obj = sidecar;
                obj["dimacs"] = serde_json::Value::String(dimacs);
                println!("{obj}");
            } else {
                print!("{dimacs}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn sidecar_json(reduced: &ReducedInstance, complemented: bool) -> serde_json::Value {
    serde_json::json!({
        "n": reduced.graph.vertex_count(),
        "target": reduced.target,
        "complement": complemented,
        "labels": reduced.labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
    })
}

fn run_gen(cli: &Cli, kind: &GenKind) -> Result<ExitCode> {
    match kind {
        GenKind::Gnp { n, prob } => {
            if !(0.0..=1.0).contains(prob) {
                return Err(Error::Invalid("edge probability outside [0, 1]".into()));
            }
            let g = gen_gnp(*n, *prob, cli.seed);
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({"n": n, "prob": prob, "seed": cli.seed, "dimacs": g.to_dimacs()})
                );
            } else {
                print!("{}", g.to_dimacs());
            }
        }
        GenKind::Planted { n, p } => {
            let (g, modulator) = gen_planted_comodulator(*n, *p, cli.seed)?;
            let one_based: Vec<usize> = modulator.iter().map(|v| v + 1).collect();
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "n": n, "p": p, "seed": cli.seed,
                        "modulator": one_based,
                        "dimacs": g.to_dimacs(),
                    })
                );
            } else {
                let list = one_based
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                print!("c planted modulator {list}\n{}", g.to_dimacs());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// JSON schema shared by all solve subcommands.
#[derive(Serialize)]
struct CliReport<'a> {
    problem: &'a str,
    n: usize,
    k_or_target: i64,
    decision: &'a str,
    branch: &'a str,
    packing_size: Option<usize>,
    modulator_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a Witness>,
    seed: u64,
    repeats: u32,
    elapsed_ms: f64,
}

fn emit_report(cli: &Cli, problem: &str, n: usize, k_or_target: i64, report: &SolveReport) {
    let decision = if report.decision { "yes" } else { "no" };
    let branch = match report.branch {
        Branch::Packing => "packing",
        Branch::Algebraic => "algebraic",
        Branch::Trivial => "trivial",
    };
    if cli.json {
        let wrapped = CliReport {
            problem,
            n,
            k_or_target,
            decision,
            branch,
            packing_size: report.packing_size,
            modulator_size: report.modulator_size,
            witness: report.witness.as_ref(),
            seed: report.seed,
            repeats: report.repeats,
            elapsed_ms: report.elapsed_ms,
        };
        println!("{}", serde_json::to_string(&wrapped).expect("report serializes"));
    } else {
        print!("{problem}: {decision} (branch: {branch}");
        if let Some(t) = report.packing_size {
            print!(", packing {t}");
        }
        if let Some(p) = report.modulator_size {
            print!(", modulator {p}");
        }
        println!(
            ", {} type evaluations, seed {}, {:.2} ms)",
            report.types_tried, report.seed, report.elapsed_ms
        );
    }
}

fn decision_code(report: &SolveReport) -> ExitCode {
    if report.decision {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn read_graph(input: &str) -> Result<Graph> {
    let text = if input == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Parse(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(input).map_err(|e| Error::Parse(format!("cannot read {input}: {e}")))?
    };
    parse_dimacs(&text)
}

fn parse_vertex_list(list: &str, n: usize) -> Result<Vec<usize>> {
    let trimmed = list.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|tok| {
            let v: usize = tok
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad vertex id '{tok}'")))?;
            if v == 0 || v > n {
                return Err(Error::Parse(format!(
                    "vertex {v} outside the 1-based range 1..={n}"
                )));
            }
            Ok(v - 1)
        })
        .collect()
}
