use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use lcachar::runner::{self, parse_complex, parse_range, parse_scan_dims, GridRect};
use lcachar::CliError;

/// Characters, convolution transforms, escape certificates, and strip
/// sweeps on groups of the form R^m x Z^n x K.
#[derive(Parser)]
#[command(name = "lcachar", version, disable_help_subcommand = true)]
struct Cli {
    /// Seed for randomized sweeps (reserved; current subcommands are
    /// deterministic)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for data-parallel sweeps
    #[arg(long, global = true, default_value_t = 1)]
    parallel: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the power-escape bound N for (m, eps), optionally checking
    /// it against the brute-force annulus oracle
    #[command(name = "lemma-n")]
    LemmaN {
        m: u32,
        eps: f64,
        /// Scan the annulus and fail (exit 2) if any point needs more
        /// than N powers
        #[arg(long)]
        verify: bool,
        /// Oracle grid as AxR (angles x radii)
        #[arg(long, default_value = "360x50")]
        grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the Gel'fand transform of a function file over an exponent
    /// rectangle, emitting CSV
    Transform {
        #[arg(long)]
        input: PathBuf,
        /// Rectangle as re0:re1:nre:im0:im1:nim
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convolve two function files into a new function file
    Convolve {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate all characters of the finite group with the given cyclic
    /// orders, emitting CSV with generator values
    Chars {
        #[arg(required = true)]
        orders: Vec<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover character samples from a functional over a grid of points
    Recover {
        #[arg(long)]
        input: PathBuf,
        /// Functional description, e.g. {"kind":"gelfand","char":{...}}
        #[arg(long)]
        functional: Option<String>,
        /// Shorthand: hidden character JSON for a gelfand functional
        #[arg(long)]
        hidden: Option<String>,
        /// Inclusive index range lo:hi applied per linear axis
        #[arg(long, allow_hyphen_values = true)]
        range: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the weighted-norm bound over an exponent rectangle, or emit
    /// a divergence witness outside the strip (--witness)
    Strip {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Weight rate r (strip halfwidth)
        #[arg(long)]
        r: f64,
        /// Rectangle as re0:re1:nre:im0:im1:nim
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        /// Emit translated-bump divergence ratios instead of a sweep
        #[arg(long)]
        witness: bool,
        /// Exponent re,im for the witness
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
        #[arg(long, default_value_t = 5)]
        bumps: usize,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(long, default_value_t = 5.0)]
        shift: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Word length of a group element relative to a generating box
    Wordlen {
        /// Group JSON, e.g. {"real_rank":1,"int_rank":0,"cyclic_orders":[]}
        #[arg(long)]
        group: String,
        /// Element JSON, e.g. {"real_coords":[2.5]}
        #[arg(long)]
        element: String,
        /// Comma-separated real halfwidths of the box
        #[arg(long)]
        halfwidths: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    let parallel = cli.parallel.max(1);
    match cli.command {
        Command::LemmaN {
            m,
            eps,
            verify,
            grid,
            out,
        } => {
            let dims = parse_scan_dims(&grid)?;
            runner::run_lemma_n(m, eps, verify, dims, out.as_deref())
        }
        Command::Transform { input, grid, out } => {
            let rect = GridRect::parse(&grid)?;
            runner::run_transform(&input, rect, parallel, out.as_deref())
        }
        Command::Convolve { a, b, out } => runner::run_convolve(&a, &b, out.as_deref()),
        Command::Chars { orders, out } => runner::run_chars(&orders, out.as_deref()),
        Command::Recover {
            input,
            functional,
            hidden,
            range,
            out,
        } => {
            let range = parse_range(&range)?;
            runner::run_recover(
                &input,
                functional.as_deref(),
                hidden.as_deref(),
                range,
                out.as_deref(),
            )
        }
        Command::Strip {
            input,
            r,
            grid,
            witness,
            z,
            bumps,
            step,
            shift,
            out,
        } => {
            if witness {
                let z = parse_complex(z.as_deref().ok_or_else(|| {
                    CliError::Usage("--witness needs --z re,im".into())
                })?)?;
                runner::run_strip_witness(z, r, bumps, step, shift, out.as_deref())
            } else {
                let input = input
                    .ok_or_else(|| CliError::Usage("strip sweeps need --input".into()))?;
                let rect = GridRect::parse(grid.as_deref().ok_or_else(|| {
                    CliError::Usage("strip sweeps need --grid".into())
                })?)?;
                runner::run_strip_sweep(&input, r, rect, parallel, out.as_deref())
            }
        }
        Command::Wordlen {
            group,
            element,
            halfwidths,
            out,
        } => runner::run_wordlen(&group, &element, halfwidths.as_deref(), out.as_deref()),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("LCACHAR_LOG"))
        .format_timestamp(None)
        .init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(1);
        }
    };

    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Verification(json)) => {
            print!("{json}");
            eprintln!("error: certificate failed grid verification");
            ExitCode::from(2)
        }
    }
}
