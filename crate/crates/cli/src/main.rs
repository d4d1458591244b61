use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use billiard_core::classify::answer;
use billiard_core::graphs::{emit_graph6, EnumerateOptions, GraphEnumerator};
use billiard_core::orbits::{orbit_states, MAX_ORBIT_N};
use billiard_core::verify::{
    run_check, run_conjecture, ConjectureStatus, Params, CHECK_IDS, DEFAULT_SAMPLES, DEFAULT_SEED,
};
use billiard_core::{
    all_orbits, classify_many, classify_with, parse_spec, print_spec, trace, BilliardState, ClassifyOptions, Kind,
    MaterializedGraph, Outcome, Question,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "billiard", version)]
#[command(about = "Refractive toric promotion on graphs: orbits, winding vectors and classification")]
struct Cli {
    /// Worker threads (defaults to the number of CPUs)
    #[arg(long, global = true, env = "BILLIARD_WORKERS")]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one graph as ensnaring, expelling or mixed
    Classify {
        #[arg(long)]
        graph: String,
        /// Only answer one yes/no question, stopping at the first deciding orbit
        #[arg(long, value_enum)]
        early_exit: Option<EarlyExit>,
    },
    /// Print every orbit summary as JSON lines
    Orbits {
        #[arg(long)]
        graph: String,
        /// Include the member states of each orbit
        #[arg(long)]
        full: bool,
    },
    /// Follow one state for a number of steps
    Trace {
        #[arg(long)]
        graph: String,
        /// State as `perm=1,2,3;i=1;eps=+1`
        #[arg(long)]
        start: String,
        #[arg(long)]
        steps: u64,
    },
    /// Run a theorem check (or `all`) over a finite range
    Verify {
        #[arg(long)]
        check: String,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Search a conjecture for counterexamples
    Conjecture {
        #[arg(long)]
        id: String,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Classify every graph on n vertices
    Scan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        iso_dedup: bool,
        /// Per-graph output file (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "jsonl")]
        format: Format,
        #[arg(long, value_enum)]
        early_exit: Option<EarlyExit>,
    },
}

#[derive(Args)]
struct RangeArgs {
    #[arg(long)]
    min_n: Option<usize>,
    #[arg(long)]
    max_n: Option<usize>,
    /// Size bound for building blocks such as wedge parts and trees
    #[arg(long)]
    max_part: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    /// Write the full JSON report here
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RangeArgs {
    fn params(&self) -> Params {
        Params {
            min_n: self.min_n,
            max_n: self.max_n,
            max_part: self.max_part,
            m: None,
            n: None,
            seed: self.seed,
            samples: self.samples,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EarlyExit {
    Ensnaring,
    Expelling,
}

impl From<EarlyExit> for Question {
    fn from(e: EarlyExit) -> Self {
        match e {
            EarlyExit::Ensnaring => Question::Ensnaring,
            EarlyExit::Expelling => Question::Expelling,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
}

enum Failure {
    Engine(billiard_core::Error),
    Io(io::Error),
}

impl From<billiard_core::Error> for Failure {
    fn from(e: billiard_core::Error) -> Self {
        Failure::Engine(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

/// Process exit status for a run that completed: 0, or 3 when a check failed
/// or a conjecture was refuted.
type Status = u8;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let workers = match cli.workers {
        Some(0) => {
            eprintln!("error: --workers must be at least 1");
            return ExitCode::from(1);
        }
        Some(w) => w,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(workers).build_global() {
        eprintln!("warning: {e}");
    }
    match run(cli.command, workers) {
        Ok(status) => ExitCode::from(status),
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_range_error() { 2 } else { 1 })
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command, workers: usize) -> Result<Status, Failure> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let status = match command {
        Command::Classify { graph, early_exit } => {
            let m = parse_spec(&graph)?;
            let mut v = match early_exit {
                None => classify_with(&m, workers)?.to_json(),
                Some(q) => answer(&m, q.into())?.to_json(),
            };
            v["graph"] = Value::String(print_spec(&m));
            writeln!(out, "{v}")?;
            0
        }
        Command::Orbits { graph, full } => {
            let m = parse_spec(&graph)?;
            for o in all_orbits(&m, workers)? {
                let mut v = o.to_json();
                if full {
                    let states: Vec<String> = orbit_states(&m, &o.representative)?
                        .iter()
                        .map(ToString::to_string)
                        .collect();
                    v["states"] = json!(states);
                }
                writeln!(out, "{v}")?;
            }
            0
        }
        Command::Trace { graph, start, steps } => {
            let m = parse_spec(&graph)?;
            let s: BilliardState = start.parse()?;
            for r in trace(&m, &s, steps)? {
                writeln!(out, "{}", r.to_json())?;
            }
            0
        }
        Command::Verify { check, range } => verify(&check, &range, &mut out)?,
        Command::Conjecture { id, m, n, range } => {
            let params = Params { m, n, ..range.params() };
            let report = run_conjecture(&id, &params)?;
            if let Some(path) = &range.out {
                write_json(path, &serde_json::to_value(&report).expect("report serializes"))?;
            }
            writeln!(out, "{}", report.summary_line())?;
            match report.status {
                ConjectureStatus::Consistent => 0,
                ConjectureStatus::Refuted => 3,
            }
        }
        Command::Scan {
            n,
            connected,
            iso_dedup,
            out: path,
            format,
            early_exit,
        } => {
            let options = EnumerateOptions { connected, iso_dedup };
            let question = early_exit.map(Question::from);
            let summary = match path {
                Some(p) => {
                    let mut file = BufWriter::new(File::create(&p)?);
                    let s = scan(n, options, question, format, &mut file)?;
                    file.flush()?;
                    s
                }
                None => scan(n, options, question, format, &mut out)?,
            };
            writeln!(out, "{summary}")?;
            0
        }
    };
    out.flush()?;
    Ok(status)
}

fn verify(check: &str, range: &RangeArgs, out: &mut impl Write) -> Result<Status, Failure> {
    let ids: Vec<&str> = if check == "all" {
        CHECK_IDS.to_vec()
    } else {
        vec![check]
    };
    let params = range.params();
    let mut reports = Vec::new();
    for id in ids {
        let report = run_check(id, &params)?;
        writeln!(out, "{}", report.summary_line())?;
        out.flush()?;
        reports.push(report);
    }
    if let Some(path) = &range.out {
        let v = if reports.len() == 1 {
            serde_json::to_value(&reports[0])
        } else {
            serde_json::to_value(&reports)
        };
        write_json(path, &v.expect("report serializes"))?;
    }
    Ok(if reports.iter().all(|r| r.passed) { 0 } else { 3 })
}

fn write_json(path: &PathBuf, v: &Value) -> Result<(), Failure> {
    let mut f = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut f, v).map_err(io::Error::from)?;
    writeln!(f)?;
    f.flush()?;
    Ok(())
}

#[derive(Default)]
struct ScanCounts {
    graphs: u64,
    ensnaring: u64,
    expelling: u64,
    mixed: u64,
    revolutionary: u64,
    yes: u64,
    errors: u64,
}

enum Rows<'a> {
    Json(&'a mut dyn Write),
    Csv(Box<csv::Writer<&'a mut dyn Write>>),
}

/// Graphs are classified in chunks so output streams while order is kept.
const SCAN_CHUNK: usize = 1024;

fn scan(
    n: usize,
    options: EnumerateOptions,
    question: Option<Question>,
    format: Format,
    sink: &mut dyn Write,
) -> Result<String, Failure> {
    if n > MAX_ORBIT_N {
        return Err(billiard_core::Error::OutOfRange(format!("scan supports n <= {MAX_ORBIT_N} (got {n})")).into());
    }
    let mut graphs = GraphEnumerator::new(n, options)?;
    let mut counts = ScanCounts::default();
    let mut rows = match format {
        Format::Jsonl => Rows::Json(sink),
        Format::Csv => Rows::Csv(Box::new(csv::Writer::from_writer(sink))),
    };
    if let Rows::Csv(w) = &mut rows {
        w.write_record([
            "graph6",
            "graph",
            "kind",
            "alsoExpelling",
            "revolutionary",
            "orbits",
            "noncontractible",
            "holds",
        ])?;
    }
    loop {
        let chunk: Vec<MaterializedGraph> = graphs.by_ref().take(SCAN_CHUNK).map(Into::into).collect();
        if chunk.is_empty() {
            break;
        }
        for (m, result) in classify_many(chunk, ClassifyOptions { question }) {
            counts.graphs += 1;
            let g6 = emit_graph6(m.graph())?;
            let spec = print_spec(&m);
            let outcome = match result {
                Ok(o) => o,
                Err(e) => {
                    counts.errors += 1;
                    eprintln!("error: {spec}: {e}");
                    continue;
                }
            };
            let mut row: [String; 8] = Default::default();
            row[0] = g6.clone();
            row[1] = spec.clone();
            match &outcome {
                Outcome::Full(c) => {
                    match c.kind {
                        Kind::Ensnaring => counts.ensnaring += 1,
                        Kind::Expelling => counts.expelling += 1,
                        Kind::Mixed => counts.mixed += 1,
                    }
                    counts.revolutionary += u64::from(c.revolutionary);
                    row[2] = c.to_json()["kind"].as_str().unwrap_or_default().to_string();
                    row[3] = c.also_expelling.to_string();
                    row[4] = c.revolutionary.to_string();
                    row[5] = c.orbit_count.to_string();
                    row[6] = c.noncontractible_count.to_string();
                }
                Outcome::Answer { holds, .. } => {
                    counts.yes += u64::from(*holds);
                    row[7] = holds.to_string();
                }
            }
            match &mut rows {
                Rows::Csv(w) => w.write_record(&row)?,
                Rows::Json(w) => {
                    let mut v = outcome.to_json();
                    v["graph"] = Value::String(spec);
                    v["graph6"] = Value::String(g6);
                    writeln!(w, "{v}")?;
                }
            }
        }
        match &mut rows {
            Rows::Csv(w) => w.flush()?,
            Rows::Json(w) => w.flush()?,
        }
    }
    let mut line = format!("n={n} graphs={}", counts.graphs);
    match question {
        None => line.push_str(&format!(
            " ensnaring={} expelling={} mixed={} revolutionary={}",
            counts.ensnaring, counts.expelling, counts.mixed, counts.revolutionary
        )),
        Some(q) => {
            let name = match q {
                Question::Ensnaring => "ensnaring",
                Question::Expelling => "expelling",
            };
            line.push_str(&format!(" {name}={}", counts.yes));
        }
    }
    if counts.errors > 0 {
        line.push_str(&format!(" errors={}", counts.errors));
    }
    Ok(line)
}
