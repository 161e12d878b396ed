//! `kneser`: command-line front end for the verification library.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigInt;
use serde::Serialize;
use serde_json::json;

use kneser_core::chromatic::{solve, SolverOptions, DEFAULT_BUDGET};
use kneser_core::defect::{cd_le_tcd_check, colorability_defect, tcd_certificate};
use kneser_core::geometry::{enumerate_tverberg_partitions, is_colorful, stretched_config, validated_stretched_config};
use kneser_core::grid::{run_cell, run_grid, Cell, GridSpec, Status, Variant, VerificationRecord};
use kneser_core::kneser::{build_kneser, greedy_coloring, is_proper};
use kneser_core::topology::{betti_numbers, box_complex, equivariant_chi_bound, BoxQuantifier, Field};
use kneser_core::{Error, Hypergraph, PointConfig, SetSystem, SimplicialComplex};

const DEFAULT_SEED: u64 = 0x6b6e_6573_6572;

#[derive(Parser)]
#[command(name = "kneser", version, about = "Exact chromatic numbers and certificates for Kneser hypergraphs")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Node budget for the exact coloring search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Exact chromatic number of a hypergraph, or of a Kneser family compared with the closed formula.
    Chi(ChiArgs),
    /// Run `chi` over a parameter grid.
    GridVerify(GridArgs),
    /// Colorability defect of a set system.
    Defect(DefectArgs),
    /// Affine certificate for the topological defect.
    TcdCert(TcdArgs),
    /// Tverberg partitions of a point configuration, flagged colorful or not.
    Tverberg(TverbergArgs),
    /// Box complex of a hypergraph.
    Box(BoxArgs),
    /// Reduced Betti numbers of a simplicial complex.
    Homology(HomologyArgs),
    /// Block coloring of KG^r(k,n), or an optimal coloring of an input hypergraph.
    Coloring(ColoringArgs),
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    s: usize,
    #[arg(long, default_value = "plain", value_parser = parse_variant)]
    variant: Variant,
}

#[derive(Args)]
struct ChiArgs {
    /// Hypergraph JSON file (`-` for stdin); omit to use --r/--k/--n.
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    family: FamilyArgs,
}

#[derive(Args)]
struct GridArgs {
    /// Ranges like `2,3`, `5..8` (inclusive) or `2,4..6`.
    #[arg(long, value_parser = parse_range, required = true)]
    r: Vec<Vec<usize>>,
    #[arg(long, value_parser = parse_range, required = true)]
    k: Vec<Vec<usize>>,
    #[arg(long, value_parser = parse_range, required = true)]
    n: Vec<Vec<usize>>,
    #[arg(long, value_parser = parse_range, default_value = "2")]
    s: Vec<Vec<usize>>,
    #[arg(long, default_value = "plain", value_parser = parse_variant)]
    variant: Variant,
}

#[derive(Args)]
struct DefectArgs {
    /// Set system JSON (`-` for stdin).
    #[arg(long, default_value = "-")]
    input: PathBuf,
    #[arg(long)]
    r: usize,
}

#[derive(Args)]
struct TcdArgs {
    /// Set system JSON (`-` for stdin).
    #[arg(long, default_value = "-")]
    input: PathBuf,
    #[arg(long)]
    r: usize,
    /// Point configuration JSON; without it random points are drawn from --seed.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Vertices joined as a simplex beyond the ground set (with --config).
    #[arg(long, default_value_t = 0)]
    extra: usize,
    /// Random draws before giving up (without --config).
    #[arg(long, default_value_t = 20)]
    trials: usize,
}

#[derive(Args)]
struct TverbergArgs {
    /// Point configuration JSON; omit to use a stretched moment-curve configuration.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long, default_value_t = 2)]
    base: u64,
    /// Square the base until the colorful law holds.
    #[arg(long)]
    validate: bool,
}

#[derive(Args)]
struct BoxArgs {
    /// Hypergraph JSON (`-` for stdin).
    #[arg(long, default_value = "-")]
    input: PathBuf,
    /// Require transversal sets to meet every nonempty part exactly once.
    #[arg(long)]
    exactly_once: bool,
    /// Report the homological chromatic bound instead of the complex.
    #[arg(long)]
    bound: bool,
}

#[derive(Args)]
struct HomologyArgs {
    /// Complex JSON (`-` for stdin).
    #[arg(long, default_value = "-")]
    input: PathBuf,
    /// `Q` or `GF(p)`.
    #[arg(long, default_value = "Q", value_parser = parse_field)]
    field: Field,
}

#[derive(Args)]
struct ColoringArgs {
    /// Hypergraph JSON; omit to use --r/--k/--n.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_range(s: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let num = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("bad number {x:?} in {s:?}"));
        if let Some((a, b)) = part.split_once("..") {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            out.extend(a..=b);
        } else {
            out.push(num(part)?);
        }
    }
    Ok(out)
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Mismatch(String),
    Budget(String),
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(Error::BudgetExceeded { .. }) => Failure::Budget(e.to_string()),
            Some(Error::VerificationFailure { .. }) => Failure::Mismatch(e.to_string()),
            _ => Failure::Usage(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::from(anyhow::Error::new(e))
    }
}

type Run = Result<(), Failure>;

struct Output {
    path: Option<PathBuf>,
    buf: Vec<u8>,
}

impl Output {
    fn json<T: Serialize>(&mut self, value: &T) -> anyhow::Result<()> {
        serde_json::to_writer(&mut self.buf, value)?;
        self.buf.push(b'\n');
        Ok(())
    }

    fn line(&mut self, text: &str) {
        self.buf.extend_from_slice(text.as_bytes());
        self.buf.push(b'\n');
    }

    fn flush(self) -> anyhow::Result<()> {
        match self.path {
            Some(p) => fs::write(&p, &self.buf).with_context(|| format!("writing {}", p.display())),
            None => {
                let mut out = io::stdout().lock();
                out.write_all(&self.buf)?;
                Ok(out.flush()?)
            }
        }
    }
}

fn read_input(path: &PathBuf) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> anyhow::Result<T> {
    let text = read_input(path)?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn need(v: Option<usize>, name: &str) -> anyhow::Result<usize> {
    v.ok_or_else(|| anyhow!("--{name} is required without --input"))
}

fn emit_records(out: &mut Output, format: Format, records: &[VerificationRecord]) -> anyhow::Result<()> {
    match format {
        Format::Json => out.json(&records),
        Format::Csv => {
            out.line(&VerificationRecord::csv_header());
            for rec in records {
                out.line(&rec.csv_row());
            }
            Ok(())
        }
    }
}

fn records_outcome(records: &[VerificationRecord]) -> Run {
    let mismatches = records.iter().filter(|r| r.status == Status::Mismatch).count();
    if mismatches > 0 {
        return Err(Failure::Mismatch(format!("{mismatches} cell(s) disagree with the formula")));
    }
    Ok(())
}

fn cmd_chi(cli: &Cli, args: &ChiArgs, out: &mut Output) -> Run {
    if let Some(path) = &args.input {
        let h: Hypergraph = read_json(path)?;
        let res = solve(&h, &SolverOptions { budget: cli.budget, lower_bound: None })?;
        out.json(&json!({ "chi": res.chi, "nodes": res.nodes, "coloring": res.coloring }))?;
        return Ok(());
    }
    let f = &args.family;
    let cell = Cell {
        r: need(f.r, "r")?,
        k: need(f.k, "k")?,
        n: need(f.n, "n")?,
        s: f.s,
    };
    let rec = run_cell(cell, f.variant, cli.budget)?;
    emit_records(out, cli.format, std::slice::from_ref(&rec))?;
    if rec.status == Status::SkippedBudget {
        return Err(Failure::Budget(format!("node budget {} exhausted", cli.budget)));
    }
    records_outcome(&[rec])
}

fn cmd_grid(cli: &Cli, args: &GridArgs, out: &mut Output) -> Run {
    let spec = GridSpec {
        r: args.r.iter().flatten().copied().collect(),
        k: args.k.iter().flatten().copied().collect(),
        n: args.n.iter().flatten().copied().collect(),
        s: args.s.iter().flatten().copied().collect(),
        variant: args.variant,
    };
    let records = run_grid(&spec, cli.budget)?;
    emit_records(out, cli.format, &records)?;
    records_outcome(&records)
}

fn cmd_defect(args: &DefectArgs, out: &mut Output) -> Run {
    let f: SetSystem = read_json(&args.input)?;
    let w = colorability_defect(&f, args.r)?;
    out.json(&json!({ "cd": w.value, "witness": w.part_lists() }))?;
    Ok(())
}

fn cmd_tcd(cli: &Cli, args: &TcdArgs, out: &mut Output) -> Run {
    let f: SetSystem = read_json(&args.input)?;
    match &args.config {
        Some(path) => {
            let config: PointConfig = read_json(path)?;
            match tcd_certificate(&f, args.extra, &config, args.r) {
                Ok(b) => out.json(&json!({
                    "value": b.value,
                    "d": config.d(),
                    "vertices": config.len(),
                    "checked_tuples": b.checked_tuples,
                }))?,
                Err(Error::VerificationFailure { faces, point }) => {
                    out.json(&json!({ "verified": false, "faces": faces, "point": point }))?;
                    return Err(Failure::Mismatch("an r-fold intersection of disjoint faces exists".into()));
                }
                Err(e) => return Err(e.into()),
            }
        }
        None => {
            let report = cd_le_tcd_check(&f, args.r, args.trials, cli.seed)?;
            out.json(&report)?;
            if !report.passed {
                return Err(Failure::Mismatch(format!("no certificate after {} trials", report.trials_used)));
            }
        }
    }
    Ok(())
}

fn cmd_tverberg(args: &TverbergArgs, out: &mut Output) -> Run {
    let config: PointConfig = match &args.input {
        Some(path) => read_json(path)?,
        None => {
            let d = args.d.ok_or_else(|| anyhow!("--d is required without --input"))?;
            let count = args.count.unwrap_or((args.r - 1) * (d + 1) + 2);
            let base = BigInt::from(args.base);
            if args.validate {
                validated_stretched_config(d, count, args.r, &base)?.0
            } else {
                stretched_config(d, count, &base)?
            }
        }
    };
    let found = enumerate_tverberg_partitions(&config, args.r)?;
    for bp in &found {
        let blocks: Vec<Vec<usize>> = bp
            .point_blocks()
            .into_iter()
            .map(|b| b.into_iter().map(|i| i + 1).collect())
            .collect();
        let support: Vec<usize> = bp.support.iter().map(|i| i + 1).collect();
        let colorful = is_colorful(bp, args.r, config.d())?;
        out.json(&json!({ "support": support, "blocks": blocks, "colorful": colorful }))?;
    }
    Ok(())
}

fn cmd_box(args: &BoxArgs, out: &mut Output) -> Run {
    let h: Hypergraph = read_json(&args.input)?;
    if args.bound {
        let b = equivariant_chi_bound(&h, false)?;
        out.json(&json!({
            "bound": b.value,
            "connectivity": b.connectivity,
            "prime": b.prime,
            "acyclic": b.acyclic,
            "note": "heuristic proxy: homological connectivity without a simple-connectivity check",
        }))?;
        return Ok(());
    }
    let quantifier = if args.exactly_once {
        BoxQuantifier::ExactlyOnce
    } else {
        BoxQuantifier::AtMostOnce
    };
    out.json(&box_complex(&h, quantifier)?)?;
    Ok(())
}

fn cmd_homology(args: &HomologyArgs, out: &mut Output) -> Run {
    let k: SimplicialComplex = read_json(&args.input)?;
    out.json(&betti_numbers(&k, args.field))?;
    Ok(())
}

fn cmd_coloring(cli: &Cli, args: &ColoringArgs, out: &mut Output) -> Run {
    if let Some(path) = &args.input {
        let h: Hypergraph = read_json(path)?;
        let res = solve(&h, &SolverOptions { budget: cli.budget, lower_bound: None })?;
        out.json(&res.coloring)?;
        return Ok(());
    }
    let (r, k, n) = (need(args.r, "r")?, need(args.k, "k")?, need(args.n, "n")?);
    let coloring = greedy_coloring(r, k, n)?;
    let h = build_kneser(&kneser_core::setsystem::k_subsets(n, k)?, r)?;
    out.json(&coloring)?;
    if !is_proper(&h, &coloring)? {
        return Err(Failure::Mismatch("block coloring is not proper".into()));
    }
    Ok(())
}

fn run(cli: &Cli) -> Run {
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .map_err(|e| Failure::Usage(e.into()))?;
    }
    let mut out = Output {
        path: cli.out.clone(),
        buf: Vec::new(),
    };
    let result = match &cli.command {
        Command::Chi(a) => cmd_chi(cli, a, &mut out),
        Command::GridVerify(a) => cmd_grid(cli, a, &mut out),
        Command::Defect(a) => cmd_defect(a, &mut out),
        Command::TcdCert(a) => cmd_tcd(cli, a, &mut out),
        Command::Tverberg(a) => cmd_tverberg(a, &mut out),
        Command::Box(a) => cmd_box(a, &mut out),
        Command::Homology(a) => cmd_homology(a, &mut out),
        Command::Coloring(a) => cmd_coloring(cli, a, &mut out),
    };
    out.flush()?;
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(msg)) => {
            eprintln!("kneser: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("kneser: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("kneser: {msg}");
            ExitCode::from(3)
        }
    }
}
