use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use samuel_cli::{parse_input, parse_rational_list, run, CliError, Command, RunConfig};

/// Exact asymptotic containment of powers of monomial ideals.
#[derive(Parser)]
#[command(name = "samuel", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Problem description (JSON); standard input when omitted.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Log progress; repeat for simplex tableau dumps.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Subcommand)]
enum Cmd {
    /// L_J(I), l_I(J), a witness pair and the active regions.
    Limits,
    /// Rees valuations of I.
    Valuations,
    /// Hyperplanes of the cone closure and the relevant valuations.
    Cone,
    /// Place a point (m_1, .., m_k, n) relative to the cone closure.
    Classify {
        #[arg(long)]
        point: String,
    },
    /// v(1..M) with period detection.
    Sequence(SequenceArgs),
    /// Triangle mesh of the cone boundary for two ideals.
    Mesh {
        #[arg(long, default_value_t = 10)]
        bound: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide J^m ⊆ I^n.
    Check {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
    /// Test whether l_I(J_1^{a_1}...J_k^{a_k}) behaves linearly in a.
    LimitExists {
        #[arg(long)]
        a: String,
    },
}

#[derive(Args)]
struct SequenceArgs {
    #[arg(long, default_value_t = 30)]
    max_m: u64,
    #[arg(long)]
    window: Option<usize>,
    /// CSV export of m, v, diff, deviation.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::new(Command::Limits);
    cfg.verbosity = cli.verbose;
    cfg.command = match &cli.command {
        Cmd::Limits => Command::Limits,
        Cmd::Valuations => Command::Valuations,
        Cmd::Cone => Command::Cone,
        Cmd::Classify { point } => Command::Classify {
            point: parse_rational_list(point)?,
        },
        Cmd::Sequence(args) => {
            cfg.max_m = args.max_m;
            cfg.window = args.window;
            cfg.output_path = args.out.clone();
            Command::Sequence
        }
        Cmd::Mesh { bound, out } => {
            cfg.mesh_bound = *bound;
            cfg.output_path = out.clone();
            Command::Mesh
        }
        Cmd::Check { m, n } => Command::Check { m: *m, n: *n },
        Cmd::LimitExists { a } => Command::LimitExists {
            a: parse_rational_list(a)?,
        },
    };
    Ok(cfg)
}

fn read_document(path: Option<&PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) => {
            std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))
        }
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Debug,
        _ => log::LevelFilter::Trace,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .parse_default_env()
        .init();

    let result = config(&cli).and_then(|cfg| {
        let input = parse_input(&read_document(cli.input.as_ref())?)?;
        run(&cfg, &input)
    });
    match result {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
