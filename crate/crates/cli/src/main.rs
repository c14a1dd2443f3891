use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use handlecalc::handle::hex;
use handlecalc::knot::continued_fraction;
use handlecalc::schedule::{replay_document, schedule_piece};
use handlecalc::{
    build_pieces, full_report, run_schedule, Error, FiberSurface, FiberedKnot, KnotFraction, KnotSpec, LFPiece, Piece,
    TraceDocument, VerificationReport,
};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "handlecalc", version, about = "Handle calculus for knot surgery on elliptic surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fraction, fiberedness, genus and monodromy of a knot.
    Knot {
        spec: String,
        #[arg(long)]
        json: bool,
    },
    /// Vanishing cycles of both Lefschetz fibration pieces.
    Factorize {
        spec: String,
        #[command(flatten)]
        opts: RunOpts,
        /// Show the pieces as the schedule sees them (two-bridge pieces
        /// conjugated by the inverse monodromy).
        #[arg(long)]
        conjugated: bool,
    },
    /// Run the cancellation schedule on one piece.
    Cancel {
        spec: Option<String>,
        #[command(flatten)]
        opts: RunOpts,
        #[arg(long, value_enum, default_value = "x1")]
        piece: PieceArg,
        /// Write the move trace as JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[command(flatten)]
        batch: Batch,
    },
    /// Run both pieces, assemble and cross-check every count.
    Verify {
        spec: Option<String>,
        #[command(flatten)]
        opts: RunOpts,
        #[command(flatten)]
        batch: Batch,
    },
    /// Replay a trace file and compare with its recorded final complex.
    Replay {
        trace: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct RunOpts {
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Batch {
    /// Run every fibered two-bridge knot up to genus `--max-k`.
    #[arg(long)]
    all_fibered: bool,
    #[arg(long, default_value_t = 2)]
    max_k: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum PieceArg {
    X1,
    X2,
}

impl From<PieceArg> for Piece {
    fn from(p: PieceArg) -> Piece {
        match p {
            PieceArg::X1 => Piece::X1,
            PieceArg::X2 => Piece::X2,
        }
    }
}

const EXIT_PARSE: u8 = 1;
const EXIT_SCHEDULE: u8 = 2;
const EXIT_VERIFY: u8 = 3;

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::WordParse { .. }
            | Error::KnotParse(_)
            | Error::Surface { .. }
            | Error::DivisionByZero
            | Error::NotAKnot { .. }
            | Error::NotFibered(_)
            | Error::OddLength
            | Error::EmptySequence => EXIT_PARSE,
            Error::Replay { .. } | Error::LiveOneHandles(_) => EXIT_VERIFY,
            _ => EXIT_SCHEDULE,
        };
        Failure::new(code, e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable output"));
}

fn fibered(spec: &str) -> Result<FiberedKnot, Failure> {
    Ok(spec.parse::<KnotSpec>()?.fibered()?)
}

fn batch_knots(spec: Option<&str>, batch: &Batch) -> Result<Vec<FiberedKnot>, Failure> {
    if batch.all_fibered {
        return Ok((1..=batch.max_k).flat_map(FiberedKnot::all_two_bridge).collect());
    }
    match spec {
        Some(s) => Ok(vec![fibered(s)?]),
        None => Err(Failure::new(EXIT_PARSE, "a knot spec or --all-fibered is required")),
    }
}

#[derive(Serialize)]
struct KnotSummary {
    spec: String,
    conway: Option<String>,
    fraction: Option<KnotFraction>,
    fibered: bool,
    reason: Option<String>,
    genus: Option<u32>,
    monodromy: Option<String>,
}

fn cmd_knot(spec: &str, json: bool) -> Outcome {
    let parsed: KnotSpec = spec.parse()?;
    let conway = parsed.conway();
    let fraction = match &conway {
        Some(c) => Some(continued_fraction(c)?),
        None => None,
    };
    let (knot, reason) = match parsed.fibered() {
        Ok(k) => (Some(k), None),
        Err(Error::NotFibered(r)) => (None, Some(r)),
        Err(e) => (None, Some(e.to_string())),
    };
    let summary = KnotSummary {
        spec: spec.to_string(),
        conway: conway.map(|c| c.to_string()),
        fraction,
        fibered: knot.is_some(),
        reason,
        genus: knot.as_ref().map(FiberedKnot::genus),
        monodromy: knot.as_ref().map(|k| k.monodromy().composition_string()),
    };
    if json {
        print_json(&summary);
        return Ok(());
    }
    println!("knot: {}", summary.spec);
    if let Some(c) = &summary.conway {
        println!("conway: {c}");
    }
    if let Some(f) = &summary.fraction {
        println!("p/q = {}/{}", f.p, f.q);
    }
    match &summary.reason {
        None => println!("fibered"),
        Some(r) => println!("not fibered ({r})"),
    }
    if let (Some(g), Some(m)) = (summary.genus, &summary.monodromy) {
        println!("g={g}");
        println!("φ = {m}");
    }
    Ok(())
}

fn print_piece(p: &LFPiece) {
    let name = match p.which {
        Piece::X1 => "X1",
        Piece::X2 => "X2",
    };
    println!("{name}: {} vanishing cycles", p.factorization.len());
    for c in &p.factorization.cycles {
        match &c.word {
            Some(w) => println!("  {}: {w}", c.curve),
            None => println!("  {}: <opaque>", c.curve),
        }
    }
}

fn cmd_factorize(spec: &str, opts: &RunOpts, conjugated: bool) -> Outcome {
    let knot = fibered(spec)?;
    let pieces = if conjugated {
        vec![schedule_piece(&knot, opts.n, Piece::X1)?, schedule_piece(&knot, opts.n, Piece::X2)?]
    } else {
        let s = FiberSurface::new(knot.genus(), opts.n)?;
        let (x1, x2) = build_pieces(&knot.monodromy(), &s)?;
        vec![x1, x2]
    };
    if opts.json {
        print_json(&pieces);
    } else {
        println!("knot: {knot}  n={}", opts.n);
        for p in &pieces {
            print_piece(p);
        }
    }
    Ok(())
}

fn write_trace(path: &Path, doc: &TraceDocument) -> Outcome {
    let text = serde_json::to_string_pretty(doc).expect("serializable trace");
    fs::write(path, text + "\n").map_err(|e| Failure::new(EXIT_PARSE, format!("cannot write {}: {e}", path.display())))
}

fn cancel_one(knot: &FiberedKnot, n: u32, piece: Piece) -> Result<TraceDocument, Failure> {
    let run = run_schedule(knot, n, piece).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("schedule failure: {}", f.message);
        f
    })?;
    Ok(run.document())
}

fn count_line(doc: &TraceDocument) -> String {
    format!("1-handles: {}, 2-handles: {}", doc.certificate.one_handles, doc.certificate.two_handles)
}

fn cmd_cancel(knots: &[FiberedKnot], opts: &RunOpts, piece: Piece, trace: Option<&Path>) -> Outcome {
    if let [knot] = knots {
        let doc = cancel_one(knot, opts.n, piece)?;
        if let Some(path) = trace {
            write_trace(path, &doc)?;
        }
        if opts.json {
            print_json(&doc);
        } else {
            for w in &doc.warnings {
                eprintln!("warning: {w}");
            }
            println!("{}", count_line(&doc));
        }
        return if doc.certificate.one_handles == 0 { Ok(()) } else { Err(Failure::new(EXIT_SCHEDULE, "1-handles remain")) };
    }
    let results: Vec<Result<TraceDocument, Failure>> = knots.par_iter().map(|k| cancel_one(k, opts.n, piece)).collect();
    let mut code = 0;
    for (k, r) in knots.iter().zip(&results) {
        match r {
            Ok(doc) => println!("{k} n={}: {}", opts.n, count_line(doc)),
            Err(f) => {
                code = code.max(f.code);
                println!("{k} n={}: {}", opts.n, f.message);
            }
        }
    }
    if code == 0 {
        Ok(())
    } else {
        Err(Failure::new(code, "some schedules failed"))
    }
}

fn chi_of(r: &VerificationReport) -> &str {
    r.checks.iter().find(|c| c.name == "chi").map_or("?", |c| c.actual.as_str())
}

fn cmd_verify(knots: &[FiberedKnot], opts: &RunOpts) -> Outcome {
    let reports: Vec<Result<VerificationReport, Failure>> =
        knots.par_iter().map(|k| full_report(k, opts.n).map_err(Failure::from)).collect();
    if let ([_], [single]) = (knots, reports.as_slice()) {
        let r = match single {
            Ok(r) => r,
            Err(f) => return Err(Failure::new(f.code, f.message.clone())),
        };
        if opts.json {
            print_json(r);
        } else {
            println!("knot: {}  n={}", r.knot, r.n);
            for c in &r.checks {
                let tag = if c.pass { "ok" } else { "FAIL" };
                println!("  [{tag}] {}: expected {}, got {}", c.name, c.expected, c.actual);
            }
            println!("{}, χ={}", if r.pass { "pass" } else { "FAIL" }, chi_of(r));
        }
        return if r.pass { Ok(()) } else { Err(Failure::new(EXIT_VERIFY, "verification failed")) };
    }
    let mut code = 0;
    for (k, r) in knots.iter().zip(&reports) {
        match r {
            Ok(r) => {
                if !r.pass {
                    code = code.max(EXIT_VERIFY);
                }
                println!("{k} n={}: {}, χ={}", opts.n, if r.pass { "pass" } else { "FAIL" }, chi_of(r));
            }
            Err(f) => {
                code = code.max(f.code);
                println!("{k} n={}: {}", opts.n, f.message);
            }
        }
    }
    if code == 0 {
        Ok(())
    } else {
        Err(Failure::new(code, "some verifications failed"))
    }
}

fn cmd_replay(path: &Path, json: bool) -> Outcome {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot read {}: {e}", path.display())))?;
    let doc: TraceDocument =
        serde_json::from_str(&text).map_err(|e| Failure::new(EXIT_PARSE, format!("bad trace: {e}")))?;
    let end = replay_document(&doc)?;
    let digest = hex(end.digest());
    if json {
        print_json(&serde_json::json!({ "replayed": doc.moves.len(), "final_digest": digest }));
    } else {
        println!("replayed {} moves, final digest {digest}", doc.moves.len());
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Knot { spec, json } => cmd_knot(spec, *json),
        Command::Factorize { spec, opts, conjugated } => cmd_factorize(spec, opts, *conjugated),
        Command::Cancel { spec, opts, piece, trace, batch } => {
            let knots = batch_knots(spec.as_deref(), batch)?;
            cmd_cancel(&knots, opts, (*piece).into(), trace.as_deref())
        }
        Command::Verify { spec, opts, batch } => {
            let knots = batch_knots(spec.as_deref(), batch)?;
            cmd_verify(&knots, opts)
        }
        Command::Replay { trace, json } => cmd_replay(trace, *json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
