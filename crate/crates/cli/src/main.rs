use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use symsim_cli::cache::TensorCache;
use symsim_cli::{run, CliError, Command, Method, RunOptions, What};

/// Ground states, dynamics and losses of permutation-invariant qubit systems.
#[derive(Debug, Parser)]
#[command(name = "symsim", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,

    /// Problem file (JSON).
    #[arg(long)]
    input: Option<PathBuf>,

    /// Where to write the result; `tensors` writes the tensor dump here.
    #[arg(long)]
    output: Option<PathBuf>,

    /// System size for `dims` without an input file.
    #[arg(long)]
    n: Option<usize>,

    #[arg(long, value_enum, default_value = "blocks")]
    method: Method,

    /// Evolution time(s) for exp(-iHt); comma separated for a grid.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    time: Vec<f64>,

    /// Observable file `{"n", "terms"}`.
    #[arg(long)]
    observable: Option<PathBuf>,

    /// Block state file.
    #[arg(long)]
    state: Option<PathBuf>,

    /// Labelled dataset file.
    #[arg(long)]
    dataset: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "structure")]
    what: What,

    /// Largest n in the verification ladder.
    #[arg(long, default_value_t = 5)]
    max_n: usize,

    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    threads: Option<usize>,

    /// Degeneracy tolerance, or the comparison tolerance for `verify`.
    #[arg(long)]
    tolerance: Option<f64>,

    /// Seed for the random cases in `verify`.
    #[arg(long, default_value_t = symsim_cli::sampling::DEFAULT_SEED)]
    seed: u64,
}

fn write_output(path: &PathBuf, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })
}

/// Prints to stdout, treating a closed pipe (`symsim ... | head`) as success.
fn print_stdout(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}").and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io {
            path: PathBuf::from("<stdout>"),
            source: e,
        }),
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(threads) = args.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(1);
        }
    }
    let opts = RunOptions {
        input: args.input,
        n: args.n,
        method: args.method,
        times: args.time,
        observable: args.observable,
        state: args.state,
        dataset: args.dataset,
        what: args.what,
        max_n: args.max_n,
        tolerance: args.tolerance,
        seed: args.seed,
        cache: TensorCache::from_env(),
    };
    let result = run(args.command, &opts).and_then(|outcome| {
        for line in &outcome.report {
            eprintln!("{line}");
        }
        let document = outcome.document.to_json();
        match (&outcome.artifact, &args.output) {
            (Some(dump), Some(path)) => {
                write_output(path, dump)?;
                print_stdout(&document)?;
            }
            (Some(dump), None) => print_stdout(dump)?,
            (None, Some(path)) => write_output(path, &document)?,
            (None, None) => print_stdout(&document)?,
        }
        Ok(outcome.exit_code)
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
