//! `gapforge` command line.
//!
//! Exit codes: 0 OK / YES, 1 NO, 2 VIOLATION, 3 error.

use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use gapforge::codes::{
    col_bounds, collision_number, find_phf, phf_to_code, random_code, reed_solomon,
    relative_distance, Code,
};
use gapforge::format::{
    code_from_json, code_to_json, maxcover_from_json, maxcover_to_json, setcover_from_json,
    setcover_to_json,
};
use gapforge::frontends::{
    clique_to_maxcover, colorful_lift, parse_dimacs_cnf, parse_edge_list, sat_to_maxcover,
    FrontEnd, PartitionedGraph,
};
use gapforge::maxcover::{
    certify_composition, compose_gap, compose_gap_k2_bounded, materialize, maxcover_value,
    GapVerdict, Matching, DEFAULT_LABELING_CAP, DEFAULT_PAIR_CAP,
};
use gapforge::pipeline::{eth_pipeline, wone_pipeline, PipelineOptions, PipelineReport};
use gapforge::setcover::{
    compose_setcover, min_cover_size, setcover_certificate, SetCoverVerdict, DEFAULT_UNIVERSE_CAP,
};
use gapforge::threshold::{verify_threshold, ThresholdGraph};

type Res<T> = Result<T, Box<dyn Error>>;

// Ignores write failures such as a closed pipe.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(
    name = "gapforge",
    version,
    about = "Threshold graphs and gap-creating reductions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build or measure codes.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Verify the threshold graph of a code, or export its edges.
    Threshold {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        t: usize,
        /// Print the edge list instead of the verification report.
        #[arg(long)]
        export: bool,
        /// Largest edge count `--export` will write.
        #[arg(long, default_value_t = 10_000_000)]
        cap: u128,
    },
    /// Solve, compose and certify MaxCover instances.
    #[command(subcommand)]
    Maxcover(MaxCoverCmd),
    /// Solve, compose and certify SetCover instances.
    #[command(subcommand)]
    Setcover(SetCoverCmd),
    /// Reduce a DIMACS CNF file to MaxCover.
    FromCnf {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Reduce an edge-list graph to MaxCover.
    FromGraph {
        file: PathBuf,
        #[arg(long)]
        t: usize,
        /// Use `t` colored copies of the graph instead of its `part` lines.
        #[arg(long)]
        lift: bool,
    },
    /// Front-end, composition with a Reed–Solomon code, and exact solve.
    ///
    /// Exits 0 on YES, 1 on NO, 2 on VIOLATION.
    #[command(subcommand)]
    Pipeline(PipelineCmd),
}

#[derive(Subcommand)]
enum CodeCmd {
    /// Reed–Solomon code over the prime field of size `q`.
    Rs {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        r: usize,
    },
    /// Uniformly random code from a seeded stream.
    Random {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Search for a perfect hash family and print it as a code.
    Phf {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 32)]
        ell_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact distance, collision number and bounds.
    Measure {
        file: PathBuf,
        /// Largest subset size tried for the collision number.
        #[arg(long)]
        col_cap: Option<usize>,
    },
}

#[derive(Args)]
struct ComposeArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    code: PathBuf,
    /// Degree bound for the two-part composition.
    #[arg(long)]
    d: Option<usize>,
}

#[derive(Subcommand)]
enum MaxCoverCmd {
    /// Exact value by labeling enumeration.
    Solve {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_LABELING_CAP)]
        cap: u128,
    },
    /// Compose with a code and print the explicit instance.
    Compose {
        #[command(flatten)]
        args: ComposeArgs,
        #[arg(long, default_value_t = DEFAULT_PAIR_CAP)]
        cap: u128,
    },
    /// Compose, solve both sides, and print the gap certificate.
    Certify {
        #[command(flatten)]
        args: ComposeArgs,
        #[arg(long, default_value_t = DEFAULT_LABELING_CAP)]
        cap: u128,
    },
}

#[derive(Args)]
struct SetComposeArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    code: PathBuf,
    #[arg(long, default_value_t = DEFAULT_UNIVERSE_CAP)]
    universe_cap: u128,
}

#[derive(Subcommand)]
enum SetCoverCmd {
    /// Smallest cover with at most `cap` sets.
    Solve {
        file: PathBuf,
        #[arg(long)]
        cap: usize,
    },
    /// Compose with a code and print the explicit instance.
    Compose {
        #[command(flatten)]
        args: SetComposeArgs,
    },
    /// Check completeness and soundness of the composition.
    Certify {
        #[command(flatten)]
        args: SetComposeArgs,
        /// Largest composed cover searched.
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
    /// Whether element `(i, f)` lies in a composed set.
    Member {
        #[command(flatten)]
        args: SetComposeArgs,
        #[arg(long)]
        i: usize,
        /// Values of `f` on `A_i`, comma separated.
        #[arg(long, value_delimiter = ',')]
        f: Vec<usize>,
        /// Set as `collection,index`.
        #[arg(long)]
        set: String,
    },
}

#[derive(Subcommand)]
enum PipelineCmd {
    /// Clique front-end, composition, exact solve.
    Wone {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        t: usize,
        /// Field size; default is the smallest prime that fits.
        #[arg(long)]
        q: Option<u32>,
        /// Use `t` colored copies of the graph instead of its `part` lines.
        #[arg(long)]
        lift: bool,
        #[arg(long)]
        json: bool,
    },
    /// SAT front-end, composition, exact solve.
    Eth {
        #[arg(long)]
        cnf: PathBuf,
        /// Number of clause groups.
        #[arg(long)]
        k: usize,
        /// Field size; default is the smallest prime that fits.
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        json: bool,
    },
}

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn load_code(path: &Path) -> Res<Arc<Code>> {
    Ok(Arc::new(code_from_json(&read(path)?)?))
}

fn print_json<T: serde::Serialize>(value: &T) -> Res<()> {
    out!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn load_graph(path: &Path, t: usize, lift: bool) -> Res<PartitionedGraph> {
    let parsed = parse_edge_list(&read(path)?)?;
    Ok(if lift {
        colorful_lift(&parsed.graph, t)
    } else {
        parsed.partitioned(t)?
    })
}

fn code_cmd(cmd: CodeCmd) -> Res<u8> {
    match cmd {
        CodeCmd::Rs { q, r } => out!("{}", code_to_json(&reed_solomon(q, r)?)?),
        CodeCmd::Random { q, r, ell, seed } => {
            out!("{}", code_to_json(&random_code(q, r, ell, seed)?)?)
        }
        CodeCmd::Phf {
            n,
            q,
            ell_max,
            seed,
        } => out!(
            "{}",
            code_to_json(&phf_to_code(&find_phf(n, q, ell_max, seed)?)?)?
        ),
        CodeCmd::Measure { file, col_cap } => {
            let code = load_code(&file)?;
            let distance = relative_distance(&code)?;
            let bounds = col_bounds(&code, &distance);
            let col = collision_number(&code, col_cap.unwrap_or(code.len()))?;
            print_json(&json!({
                "q": code.q(),
                "r": code.r(),
                "ell": code.ell(),
                "size": code.len(),
                "relative_distance": distance.relative_distance,
                "distance_witness": distance.witness,
                "collision_number": col.collision_number,
                "collision_witness": col.witness,
                "bounds": bounds,
            }))?;
        }
    }
    Ok(0)
}

fn maxcover_cmd(cmd: MaxCoverCmd) -> Res<u8> {
    match cmd {
        MaxCoverCmd::Solve { file, cap } => {
            let g = maxcover_from_json(&read(&file)?)?;
            print_json(&maxcover_value(&g, cap)?)?;
            Ok(0)
        }
        MaxCoverCmd::Compose { args, cap } => {
            let g = maxcover_from_json(&read(&args.instance)?)?;
            let code = load_code(&args.code)?;
            let composed = match args.d {
                None => compose_gap(&g, code, &Matching::LexRank)?,
                Some(d) => compose_gap_k2_bounded(&g, code, d, &Matching::LexRank)?,
            };
            out!("{}", maxcover_to_json(&materialize(&composed, cap)?));
            Ok(0)
        }
        MaxCoverCmd::Certify { args, cap } => {
            let g = maxcover_from_json(&read(&args.instance)?)?;
            let (_, cert) = certify_composition(&g, load_code(&args.code)?, args.d, cap)?;
            print_json(&cert)?;
            Ok(if cert.verdict == GapVerdict::Violation {
                2
            } else {
                0
            })
        }
    }
}

fn setcover_cmd(cmd: SetCoverCmd) -> Res<u8> {
    let compose = |a: &SetComposeArgs| -> Res<_> {
        let base = setcover_from_json(&read(&a.instance)?)?;
        Ok(compose_setcover(
            &base,
            load_code(&a.code)?,
            &Matching::LexRank,
            a.universe_cap,
        )?)
    };
    match cmd {
        SetCoverCmd::Solve { file, cap } => {
            let s = setcover_from_json(&read(&file)?)?;
            print_json(&min_cover_size(&s, cap)?)?;
        }
        SetCoverCmd::Compose { args } => {
            let composed = compose(&args)?;
            out!(
                "{}",
                setcover_to_json(&composed.materialize(args.universe_cap)?)
            );
        }
        SetCoverCmd::Certify { args, cap } => {
            let cert = setcover_certificate(&compose(&args)?, cap)?;
            print_json(&cert)?;
            if cert.verdict == SetCoverVerdict::Violation {
                return Ok(2);
            }
        }
        SetCoverCmd::Member { args, i, f, set } => {
            let composed = compose(&args)?;
            let (j, idx) = set
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .ok_or("--set expects `collection,index`")?;
            let member = composed.contains((j, idx), i, &f)?;
            print_json(&json!({ "i": i, "f": f, "set": [j, idx], "member": member }))?;
        }
    }
    Ok(0)
}

fn print_report(report: &PipelineReport, as_json: bool) -> Res<u8> {
    if as_json {
        print_json(report)?;
    } else {
        out!("pipeline: {}", report.pipeline);
        for s in &report.stages {
            out!(
                "  {:<20} left {:?} right {:?} {:.1} ms{}",
                s.name,
                s.left_parts,
                s.right_parts,
                s.millis,
                s.value.map(|v| format!(" value {v}")).unwrap_or_default()
            );
        }
        if let Some(c) = &report.code {
            out!(
                "code: RS(q={}, r={}), ell {}, delta {} (designed {})",
                c.q,
                c.r,
                c.ell,
                c.measured_delta,
                c.designed_delta
            );
        }
        if let Some(reason) = &report.decided_early {
            out!("decided by front-end: {reason}");
        }
        if let (Some(b), Some(a)) = (report.value_before, report.value_after) {
            out!("value before {b}, after {a}");
        }
        if let Some(g) = report.gap {
            out!(
                "gap {g}{}",
                if report.vacuous_gap {
                    " (vacuous: delta = 0)"
                } else {
                    ""
                }
            );
        }
        out!("verdict: {:?}", report.verdict);
    }
    Ok(report.verdict.exit_code() as u8)
}

fn run(cli: Cli) -> Res<u8> {
    match cli.command {
        Command::Code(cmd) => code_cmd(cmd),
        Command::Threshold {
            code,
            t,
            export,
            cap,
        } => {
            let g = ThresholdGraph::new(load_code(&code)?, t)?;
            if export {
                print_json(&g.export_edges(cap)?)?;
                return Ok(0);
            }
            let verdict = verify_threshold(&g, g.code().len())?;
            print_json(&verdict)?;
            Ok(if verdict.ok() { 0 } else { 2 })
        }
        Command::Maxcover(cmd) => maxcover_cmd(cmd),
        Command::Setcover(cmd) => setcover_cmd(cmd),
        Command::FromCnf { file, k } => {
            match sat_to_maxcover(&parse_dimacs_cnf(&read(&file)?)?, k)? {
                FrontEnd::Instance(s) => {
                    out!("{}", maxcover_to_json(&s.instance));
                    Ok(0)
                }
                FrontEnd::DecidedNo(reason) => {
                    eprintln!("unsatisfiable: {reason}");
                    Ok(1)
                }
            }
        }
        Command::FromGraph { file, t, lift } => {
            match clique_to_maxcover(&load_graph(&file, t, lift)?)? {
                FrontEnd::Instance(c) => {
                    out!("{}", maxcover_to_json(&c.instance));
                    Ok(0)
                }
                FrontEnd::DecidedNo(reason) => {
                    eprintln!("no clique: {reason}");
                    Ok(1)
                }
            }
        }
        Command::Pipeline(PipelineCmd::Wone {
            graph,
            t,
            q,
            lift,
            json,
        }) => {
            let h = load_graph(&graph, t, lift)?;
            print_report(
                &wone_pipeline(
                    &h,
                    PipelineOptions {
                        q,
                        ..Default::default()
                    },
                )?,
                json,
            )
        }
        Command::Pipeline(PipelineCmd::Eth { cnf, k, q, json }) => {
            let phi = parse_dimacs_cnf(&read(&cnf)?)?;
            print_report(
                &eth_pipeline(
                    &phi,
                    k,
                    PipelineOptions {
                        q,
                        ..Default::default()
                    },
                )?,
                json,
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
