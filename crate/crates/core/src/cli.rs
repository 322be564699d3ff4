//! Command-line surface.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 resource exhaustion.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use crate::counting::{count_f_closed, count_fgh, count_t, CountTable};
use crate::model::TreeLayout;
use crate::oracle::{shortest, shortest_restricted, OracleError, SearchOptions, TaskSpec};
use crate::solvers::{solve_f, solve_mary, solve_t, standard_roles};
use crate::trace::Trace;
use crate::verifier::{check_ancestor, check_trace, replay, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCES: i32 = 3;

/// Environment fallback for `--memory-mb`.
pub const MEMORY_ENV: &str = "HANOI_MEMORY_MB";
const DEFAULT_MEMORY_MB: usize = 2048;
/// Refuse to materialize traces longer than this.
const MAX_TRACE_MOVES: u64 = 200_000_000;

#[derive(Parser, Debug)]
#[command(
    name = "hanoi-trees",
    version,
    about = "Trees of Hanoi solvers, counts, verifier and oracle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a solution trace.
    Solve {
        #[arg(long, value_enum)]
        algo: Algo,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        from: usize,
        #[arg(long, default_value_t = 2)]
        to: usize,
        /// Trace output file, `-` for standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the move-count table.
    Count {
        #[arg(long)]
        n_max: u32,
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Add a column evaluated from the floor closed form.
        #[arg(long)]
        closed_form: bool,
    },
    /// Replay and check a trace file.
    Verify {
        #[arg(long)]
        trace: PathBuf,
        /// Also require every node to land on an original ancestor or a place.
        #[arg(long)]
        ancestor_check: bool,
    },
    /// Find the minimal move count by breadth-first search.
    Oracle {
        #[arg(long, value_enum)]
        task: TaskKind,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long)]
        restricted: bool,
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long)]
        memory_mb: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Algo {
    T,
    F,
    Mary,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TaskKind {
    F,
    G,
    H,
}

/// A failure that ends the command with a specific exit code.
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn io_failure(e: io::Error) -> Failure {
    usage(format!("i/o error: {e}"))
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match cli.command {
        Command::Solve {
            algo,
            n,
            m,
            from,
            to,
            out: path,
        } => cmd_solve(algo, n, m, from, to, path, &mut out),
        Command::Count {
            n_max,
            m,
            closed_form,
        } => cmd_count(n_max, m, closed_form, &mut out),
        Command::Verify {
            trace,
            ancestor_check,
        } => cmd_verify(&trace, ancestor_check, &mut out),
        Command::Oracle {
            task,
            n,
            m,
            restricted,
            witness,
            memory_mb,
        } => cmd_oracle(task, n, m, restricted, witness, memory_mb, &mut out),
    };
    let _ = out.flush();
    match result {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

fn write_trace(trace: &Trace, path: &PathBuf) -> Result<(), Failure> {
    if path.as_os_str() == "-" {
        let stdout = io::stdout();
        let mut w = BufWriter::new(stdout.lock());
        trace
            .write_jsonl(&mut w)
            .and_then(|_| w.flush())
            .map_err(io_failure)
    } else {
        let file = File::create(path).map_err(io_failure)?;
        let mut w = BufWriter::new(file);
        trace
            .write_jsonl(&mut w)
            .and_then(|_| w.flush())
            .map_err(io_failure)
    }
}

fn cmd_solve(
    algo: Algo,
    n: u32,
    m: usize,
    from: usize,
    to: usize,
    path: Option<PathBuf>,
    out: &mut impl Write,
) -> Result<i32, Failure> {
    if m == 0 {
        return Err(usage("--m must be at least 1"));
    }
    if matches!(algo, Algo::T | Algo::F) && m != 2 {
        return Err(usage(
            "--algo t and --algo f are binary; use --algo mary for other arities",
        ));
    }
    let expected: BigUint = match algo {
        Algo::T => count_t(n),
        Algo::F | Algo::Mary => count_fgh(n, m).f,
    };
    if expected > BigUint::from(MAX_TRACE_MOVES) {
        return Err(usage(format!(
            "a trace of {expected} moves is too large to write"
        )));
    }
    let roles = standard_roles(m, from, to).map_err(|e| usage(e.to_string()))?;
    let solved = match algo {
        Algo::T | Algo::F => {
            let [c, d] = [&roles.via[0], &roles.via[1]];
            let solve = if matches!(algo, Algo::T) {
                solve_t
            } else {
                solve_f
            };
            solve(n, &roles.source, &roles.target, c, d)
        }
        Algo::Mary => solve_mary(n, m, &roles),
    };
    let trace = solved.map_err(|e| usage(e.to_string()))?;
    let final_layout = if n == 0 {
        Vec::new()
    } else {
        vec![TreeLayout::new(to, n)]
    };
    let trace = trace.with_final(final_layout);
    let to_stdout = path.as_ref().is_some_and(|p| p.as_os_str() == "-");
    if let Some(path) = &path {
        write_trace(&trace, path)?;
    }
    let summary = format!("{} moves", trace.len());
    if to_stdout {
        eprintln!("{summary}");
    } else {
        writeln!(out, "{summary}").map_err(io_failure)?;
    }
    Ok(EXIT_OK)
}

fn cmd_count(
    n_max: u32,
    m: usize,
    closed_form: bool,
    out: &mut impl Write,
) -> Result<i32, Failure> {
    if m == 0 {
        return Err(usage("--m must be at least 1"));
    }
    if closed_form && m < 2 {
        return Err(usage(format!(
            "--closed-form is unsupported for arity {m}: the floor formula needs m >= 2"
        )));
    }
    let table = CountTable::new(n_max, m);
    let mut header = vec!["n"];
    if m == 2 {
        header.push("t");
    }
    header.extend(["f", "g", "h"]);
    if closed_form {
        header.push("f_closed");
    }
    writeln!(out, "{}", header.join("\t")).map_err(io_failure)?;
    for row in &table.rows {
        let mut cells = vec![row.n.to_string()];
        if let Some(t) = &row.t {
            cells.push(t.to_string());
        }
        cells.extend([row.f.to_string(), row.g.to_string(), row.h.to_string()]);
        if closed_form {
            let closed = count_f_closed(row.n, m).map_err(|e| usage(e.to_string()))?;
            if closed != row.f {
                return Err(Failure {
                    code: EXIT_REJECT,
                    message: format!("closed form {closed} differs from f_{} = {}", row.n, row.f),
                });
            }
            cells.push(closed.to_string());
        }
        writeln!(out, "{}", cells.join("\t")).map_err(io_failure)?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(path: &PathBuf, ancestor: bool, out: &mut impl Write) -> Result<i32, Failure> {
    let file =
        File::open(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let trace = Trace::read_jsonl(BufReader::new(file)).map_err(|e| usage(e.to_string()))?;
    let initial = trace
        .initial_configuration()
        .map_err(|e| usage(format!("bad header: {e}")))?;
    let mut verdict = match trace.final_configuration() {
        Some(expected) => {
            let expected = expected.map_err(|e| usage(format!("bad final line: {e}")))?;
            check_trace(&initial, &trace, &expected).map_err(|e| usage(e.to_string()))?
        }
        None => match replay(&initial, &trace.moves) {
            Ok(_) => Verdict::Accept,
            Err(rejection) => Verdict::Reject(rejection),
        },
    };
    if ancestor && verdict.is_accept() {
        verdict = check_ancestor(&initial, &trace).map_err(|e| usage(e.to_string()))?;
    }
    match verdict {
        Verdict::Accept => {
            writeln!(out, "Accept").map_err(io_failure)?;
            Ok(EXIT_OK)
        }
        Verdict::Reject(rejection) => {
            writeln!(out, "Reject {rejection}").map_err(io_failure)?;
            Ok(EXIT_REJECT)
        }
    }
}

fn memory_budget(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(mb) = flag {
        return Ok(mb);
    }
    match std::env::var(MEMORY_ENV) {
        Ok(value) => value.trim().parse().map_err(|_| {
            usage(format!(
                "{MEMORY_ENV} must be a whole number of MiB, got {value:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_MEMORY_MB),
    }
}

fn cmd_oracle(
    kind: TaskKind,
    n: u32,
    m: usize,
    restricted: bool,
    witness: Option<PathBuf>,
    memory_mb: Option<usize>,
    out: &mut impl Write,
) -> Result<i32, Failure> {
    if m == 0 {
        return Err(usage("--m must be at least 1"));
    }
    if n > 255 {
        return Err(usage(
            "--n is far beyond what breadth-first search can handle",
        ));
    }
    let task = match kind {
        TaskKind::F => TaskSpec::f_task(m, n),
        TaskKind::G => TaskSpec::g_task(m, n),
        TaskKind::H => TaskSpec::h_task(m, n),
    }
    .map_err(|e| usage(e.to_string()))?;
    let options = SearchOptions::with_budget_mb(memory_budget(memory_mb)?);
    let result = if restricted {
        shortest_restricted(&task, &options)
    } else {
        shortest(&task, &options)
    };
    let result = result.map_err(|e| match e {
        OracleError::MemoryBudgetExceeded { .. } => Failure {
            code: EXIT_RESOURCES,
            message: e.to_string(),
        },
        OracleError::GoalUnreachable { .. } => Failure {
            code: EXIT_REJECT,
            message: e.to_string(),
        },
    })?;
    if let Some(path) = &witness {
        write_trace(&result.witness, path)?;
    }
    if !witness.as_ref().is_some_and(|p| p.as_os_str() == "-") {
        writeln!(out, "{}", result.count).map_err(io_failure)?;
    } else {
        eprintln!("{}", result.count);
    }
    Ok(EXIT_OK)
}
