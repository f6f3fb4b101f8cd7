//! Command-line front end.
//!
//! Exit status: 0 when every check holds, 1 when one is refuted, 2 for
//! usage, input or parse errors.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use gste::agraph::{enumerate_assertions, AssertionGraph};
use gste::exec::{with_threads, Exec};
use gste::gste::{check_gste, defining_seq_graph, gfp_delta, GsteOptions, GsteSemantics, Verdict};
use gste::ste::{check_ste, AssertionFile, SteSemantics, SteVerdict, WitnessKind};
use gste::{oracle, Netlist, ParseError, Valuation};

#[derive(Parser)]
#[command(
    name = "gste",
    version,
    about = "Model checker for symbolic trajectory evaluation over closure functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a circuit against an assertion graph for every valuation.
    CheckGste {
        netlist: PathBuf,
        agraph: PathBuf,
        #[arg(long, value_enum, default_value = "simple")]
        semantics: GsteSemantics,
        /// Write the defining trajectory graph of each valuation (JSON and DOT).
        #[arg(long, value_name = "DIR")]
        dump_trajectory: Option<PathBuf>,
        /// Stop at the first refuted valuation.
        #[arg(long)]
        fail_fast: bool,
        /// Refuse graphs with more symbolic constants than this.
        #[arg(long, default_value_t = 20)]
        max_consts: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Check a circuit against the STE assertions in a file.
    CheckSte {
        netlist: PathBuf,
        assertions: PathBuf,
        #[arg(long, value_enum, default_value = "simple")]
        semantics: SteSemantics,
        #[command(flatten)]
        output: Output,
    },
    /// List the STE assertions of all initial paths up to a depth.
    Enumerate {
        agraph: PathBuf,
        #[arg(long)]
        bound: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Brute-force reference checks for small instances.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Check every path assertion up to a depth by trajectory enumeration.
    Forall {
        netlist: PathBuf,
        agraph: PathBuf,
        #[arg(long)]
        bound: usize,
        #[arg(long, default_value_t = oracle::DEFAULT_SLOT_CAP)]
        cap: usize,
    },
    /// Check STE assertions by trajectory enumeration.
    Ste {
        netlist: PathBuf,
        assertions: PathBuf,
        #[arg(long, value_enum, default_value = "simple")]
        semantics: SteSemantics,
        #[arg(long, default_value_t = oracle::DEFAULT_SLOT_CAP)]
        cap: usize,
    },
    /// List every fixpoint of the sequence-graph operator for the
    /// antecedents, per valuation.
    Fixpoints {
        netlist: PathBuf,
        agraph: PathBuf,
        #[arg(long, default_value_t = oracle::DEFAULT_SLOT_CAP)]
        cap: usize,
    },
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Worker threads for per-valuation checks; 1 runs sequentially.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

struct Failure(String);

impl Failure {
    fn parse(path: &FsPath, e: ParseError) -> Failure {
        Failure(format!("{}:{e}", path.display()))
    }
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(format!("error: {e}"))
    }
}

fn read(path: &FsPath) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("error: cannot read {}: {e}", path.display())))
}

fn load_netlist(path: &FsPath) -> Result<Netlist, Failure> {
    Netlist::parse(&read(path)?).map_err(|e| Failure::parse(path, e))
}

fn load_agraph(path: &FsPath) -> Result<AssertionGraph, Failure> {
    AssertionGraph::parse(&read(path)?).map_err(|e| Failure::parse(path, e))
}

fn load_assertions(path: &FsPath) -> Result<AssertionFile, Failure> {
    AssertionFile::parse(&read(path)?).map_err(|e| Failure::parse(path, e))
}

fn exec_for(jobs: Option<usize>) -> Exec {
    match jobs {
        Some(1) => Exec::Sequential,
        _ => Exec::default(),
    }
}

fn run_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match jobs {
        Some(n) if n > 1 => with_threads(n, f),
        _ => f(),
    }
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("{n} {word}")
    } else {
        format!("{n} {word}s")
    }
}

fn file_stem(phi: &Valuation) -> String {
    let mut stem = String::from("trajectory");
    for (k, b) in phi.iter() {
        let _ = write!(stem, "_{k}{}", b as u8);
    }
    stem.replace('\'', "p")
}

fn dump_trajectories(dir: &FsPath, net: &Netlist, g: &AssertionGraph, verdict: &Verdict) -> Result<(), Failure> {
    fs::create_dir_all(dir)?;
    for outcome in &verdict.valuations {
        let stem = file_stem(&outcome.valuation);
        let doc = json!({
            "valuation": outcome.valuation,
            "iterations": outcome.iterations,
            "edges": outcome.trajectory.to_json(&g.shape, net),
        });
        fs::write(
            dir.join(format!("{stem}.json")),
            serde_json::to_string_pretty(&doc)? + "\n",
        )?;
        let title = format!("{}", outcome.valuation);
        fs::write(
            dir.join(format!("{stem}.dot")),
            outcome.trajectory.to_dot(&g.shape, net, &title),
        )?;
    }
    Ok(())
}

fn render_gste(v: &Verdict) -> String {
    let mut out = format!(
        "{}, {}, {} ({} semantics)\n",
        if v.satisfied { "satisfied" } else { "refuted" },
        plural(v.valuations.len(), "valuation"),
        plural(v.total_iterations(), "iteration"),
        match v.semantics {
            GsteSemantics::Simple => "simple",
            GsteSemantics::Cautious => "cautious",
        }
    );
    for w in &v.witnesses {
        let _ = write!(
            out,
            "  {}: edge {} ({}->{}), node {}: ",
            w.valuation, w.edge, w.from, w.to, w.node
        );
        let _ = match w.kind {
            WitnessKind::Consequent => writeln!(out, "required {}, got {}", w.required, w.actual),
            WitnessKind::Overconstrained => writeln!(out, "over-constrained to {}", w.actual),
        };
    }
    out
}

fn render_ste(verdicts: &[SteVerdict], satisfied: bool) -> String {
    let mut out = String::new();
    for (i, v) in verdicts.iter().enumerate() {
        let _ = writeln!(
            out,
            "assertion {}: {}: {}",
            i + 1,
            v.assertion,
            if v.satisfied { "holds" } else { "refuted" }
        );
        for r in v.valuations.iter().filter(|r| !r.holds) {
            let w = r.witness.as_ref().expect("refuted valuations carry a witness");
            let _ = match w.kind {
                WitnessKind::Consequent => writeln!(
                    out,
                    "  {}: time {}, node {}: required {}, got {}",
                    r.valuation, w.time, w.node, w.required, w.actual
                ),
                WitnessKind::Overconstrained => writeln!(
                    out,
                    "  {}: time {}, node {}: over-constrained to {}",
                    r.valuation, w.time, w.node, w.actual
                ),
            };
        }
    }
    out += if satisfied { "satisfied\n" } else { "refuted\n" };
    out
}

#[derive(Serialize)]
struct GsteReport<'a> {
    command: &'static str,
    #[serde(flatten)]
    verdict: &'a Verdict,
    total_iterations: usize,
}

#[derive(Serialize)]
struct SteReport<'a> {
    command: &'static str,
    semantics: SteSemantics,
    satisfied: bool,
    assertions: &'a [SteVerdict],
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::CheckGste {
            netlist,
            agraph,
            semantics,
            dump_trajectory,
            fail_fast,
            max_consts,
            output,
        } => {
            let net = load_netlist(&netlist)?;
            let g = load_agraph(&agraph)?;
            let opts = GsteOptions {
                semantics,
                fail_fast,
                max_consts,
                exec: exec_for(output.jobs),
            };
            let verdict = run_jobs(output.jobs, || check_gste(&net, &g, &opts))?;
            if let Some(dir) = dump_trajectory {
                dump_trajectories(&dir, &net, &g, &verdict)?;
            }
            match output.format {
                Format::Text => print!("{}", render_gste(&verdict)),
                Format::Json => {
                    let report = GsteReport {
                        command: "check-gste",
                        verdict: &verdict,
                        total_iterations: verdict.total_iterations(),
                    };
                    println!("{}", serde_json::to_string_pretty(&report)?);
                }
            }
            Ok(status(verdict.satisfied))
        }
        Command::CheckSte {
            netlist,
            assertions,
            semantics,
            output,
        } => {
            let net = load_netlist(&netlist)?;
            let file = load_assertions(&assertions)?;
            let exec = exec_for(output.jobs);
            let verdicts = run_jobs(output.jobs, || {
                file.assertions
                    .iter()
                    .map(|a| check_ste(&net, a, &file.consts, semantics, exec))
                    .collect::<Result<Vec<_>, _>>()
            })?;
            let satisfied = verdicts.iter().all(|v| v.satisfied);
            match output.format {
                Format::Text => print!("{}", render_ste(&verdicts, satisfied)),
                Format::Json => {
                    let report = SteReport {
                        command: "check-ste",
                        semantics,
                        satisfied,
                        assertions: &verdicts,
                    };
                    println!("{}", serde_json::to_string_pretty(&report)?);
                }
            }
            Ok(status(satisfied))
        }
        Command::Enumerate { agraph, bound, format } => {
            let g = load_agraph(&agraph)?;
            let listed = enumerate_assertions(&g, bound);
            match format {
                Format::Text => {
                    for (path, a) in &listed {
                        println!("{}   # {}", a.simplified(), path.render(&g.shape));
                    }
                }
                Format::Json => {
                    let rows: Vec<_> = listed
                        .iter()
                        .map(|(path, a)| {
                            json!({
                                "path": path.edges().iter().map(|e| &g.shape.edge(*e).name).collect::<Vec<_>>(),
                                "depth": path.depth(),
                                "assertion": a.simplified().to_string(),
                            })
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&rows)?);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle(cmd) => run_oracle(cmd),
    }
}

fn run_oracle(cmd: OracleCommand) -> Result<ExitCode, Failure> {
    match cmd {
        OracleCommand::Forall {
            netlist,
            agraph,
            bound,
            cap,
        } => {
            let net = load_netlist(&netlist)?;
            let g = load_agraph(&agraph)?;
            g.check_nodes(&net)?;
            let holds = oracle::forall_semantics_check(&net, &g, bound, cap)?;
            println!(
                "every path assertion up to depth {bound}: {}",
                if holds { "holds" } else { "refuted" }
            );
            Ok(status(holds))
        }
        OracleCommand::Ste {
            netlist,
            assertions,
            semantics,
            cap,
        } => {
            let net = load_netlist(&netlist)?;
            let file = load_assertions(&assertions)?;
            let mut trajs = oracle::Trajectories::new(&net, cap);
            let valuations = Valuation::enumerate(&file.consts);
            let mut all = true;
            for (i, a) in file.assertions.iter().enumerate() {
                a.check_nodes(&net)?;
                let mut failed = Vec::new();
                for phi in &valuations {
                    if !oracle::check_ste(&mut trajs, &a.ant, &a.cons, phi, semantics)? {
                        failed.push(phi.to_string());
                    }
                }
                all &= failed.is_empty();
                let verdict = if failed.is_empty() {
                    "holds".to_string()
                } else {
                    format!("refuted for {}", failed.join("; "))
                };
                println!("assertion {}: {}: {verdict}", i + 1, a.simplified());
            }
            println!("{}", if all { "satisfied" } else { "refuted" });
            Ok(status(all))
        }
        OracleCommand::Fixpoints { netlist, agraph, cap } => {
            let net = load_netlist(&netlist)?;
            let g = load_agraph(&agraph)?;
            g.check_nodes(&net)?;
            for phi in Valuation::enumerate(&g.consts) {
                let sigma = defining_seq_graph(&net, &phi, &g);
                let fixpoints = oracle::enum_fixpoints(&net, &g.shape, &sigma, cap)?;
                let greatest = oracle::greatest(&fixpoints);
                println!("{}: {}", phi, plural(fixpoints.len(), "fixpoint"));
                for f in &fixpoints {
                    let edges: Vec<String> = g
                        .shape
                        .edge_ids()
                        .map(|e| format!("{}={}", g.shape.edge(e).name, f[e]))
                        .collect();
                    let mark = if Some(f) == greatest { "  (greatest)" } else { "" };
                    println!("  {}{mark}", edges.join(" "));
                }
                let engine = gfp_delta(&net, &g.shape, &sigma).graph;
                if Some(&engine) != greatest {
                    println!("  engine greatest fixpoint differs: {engine}");
                    return Ok(ExitCode::from(1));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}
