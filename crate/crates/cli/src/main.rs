//! `sdree`: derive, encrypt, decrypt and analyze from the command line.
//!
//! Exit codes: 0 success, 2 usage or validation error, 3 I/O error.

mod codec;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sdree::analysis::{AnalysisReport, ByteHistogram, RunTracker};
use sdree::{derive_key, render_report, CipherParams, Key, ReportFormat, StreamCipher};

use crate::codec::{Encoder, Format};

const KEY_ENV: &str = "SDREE_KEY";
const CHUNK: usize = 64 * 1024;

#[derive(Parser)]
#[command(
    name = "sdree",
    version,
    about = "SD-REE position-dependent Caesar cipher"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every intermediate of the key derivation
    Derive {
        #[command(flatten)]
        key: KeyArgs,
    },
    /// Encrypt bytes; --format selects the ciphertext encoding written
    Encrypt(CipherArgs),
    /// Decrypt bytes; --format selects the ciphertext encoding read
    Decrypt(CipherArgs),
    /// Byte-frequency report of the input
    Analyze {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, value_enum, default_value_t = Report::Csv)]
        report: Report,
    },
}

#[derive(Args)]
struct KeyArgs {
    /// Pass-key (visible in shell history; prefer --key-env)
    #[arg(long)]
    key: Option<OsString>,
    /// Read the pass-key from the SDREE_KEY environment variable
    #[arg(long)]
    key_env: bool,
}

#[derive(Args)]
struct IoArgs {
    /// Input file (default: standard input)
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    /// Output file (default: standard output)
    #[arg(long = "out", value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CipherArgs {
    #[command(flatten)]
    key: KeyArgs,
    #[command(flatten)]
    io: IoArgs,
    #[arg(long, value_enum, default_value_t = Format::Raw)]
    format: Format,
    /// Use this code instead of deriving one (requires --power-ex)
    #[arg(long, requires = "power_ex", conflicts_with_all = ["key", "key_env"],
          value_parser = clap::value_parser!(u64).range(1..))]
    code: Option<u64>,
    /// Use this power_ex instead of deriving one (requires --code)
    #[arg(long, requires = "code", value_parser = clap::value_parser!(u64).range(1..))]
    power_ex: Option<u64>,
    /// Do not warn about keys whose shift stream is constant
    #[arg(long)]
    no_weak_key_warning: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Report {
    Csv,
    Chart,
}

enum CliError {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        if codec::is_malformed(&e) {
            CliError::Usage(format!("malformed input: {e}"))
        } else {
            CliError::Io(e)
        }
    }
}

impl From<sdree::Error> for CliError {
    fn from(e: sdree::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Derive { key } => cmd_derive(&key),
        Command::Encrypt(args) => cmd_cipher(&args, Direction::Encrypt),
        Command::Decrypt(args) => cmd_cipher(&args, Direction::Decrypt),
        Command::Analyze { io, report } => cmd_analyze(&io, report),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("sdree: {msg}");
            ExitCode::from(2)
        }
        // A closed downstream pipe is not worth reporting.
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(CliError::Io(e)) => {
            eprintln!("sdree: i/o error: {e}");
            ExitCode::from(3)
        }
    }
}

fn resolve_key(args: &KeyArgs) -> CliResult<Key> {
    let raw = match (&args.key, args.key_env) {
        (Some(k), _) => k.clone(),
        (None, true) => std::env::var_os(KEY_ENV)
            .ok_or_else(|| CliError::Usage(format!("--key-env given but {KEY_ENV} is not set")))?,
        (None, false) => {
            return Err(CliError::Usage(format!(
                "no key: pass --key, --key-env with {KEY_ENV} set, or --code and --power-ex"
            )))
        }
    };
    Ok(Key::new(raw.into_encoded_bytes())?)
}

fn warn_if_weak(params: &CipherParams) {
    if params.is_weak() {
        eprintln!(
            "sdree: warning: weak key (power_ex = 1); every byte after the first gets the same shift"
        );
    }
}

fn with_path(e: io::Error, path: &std::path::Path) -> io::Error {
    io::Error::new(e.kind(), format!("{}: {e}", path.display()))
}

fn open_input(io: &IoArgs) -> CliResult<Box<dyn Read>> {
    Ok(match &io.input {
        Some(path) => Box::new(BufReader::with_capacity(
            CHUNK,
            File::open(path).map_err(|e| with_path(e, path))?,
        )),
        None => Box::new(io::stdin().lock()),
    })
}

fn open_output(io: &IoArgs) -> CliResult<Box<dyn Write>> {
    Ok(match &io.output {
        Some(path) => Box::new(BufWriter::with_capacity(
            CHUNK,
            File::create(path).map_err(|e| with_path(e, path))?,
        )),
        None => Box::new(BufWriter::with_capacity(CHUNK, io::stdout().lock())),
    })
}

/// Reads until `buf` is full or the input ends.
fn read_chunk(r: &mut dyn Read, buf: &mut [u8]) -> io::Result<usize> {
    let mut filled = 0;
    while filled < buf.len() {
        match r.read(&mut buf[filled..]) {
            Ok(0) => break,
            Ok(n) => filled += n,
            Err(e) if e.kind() == io::ErrorKind::Interrupted => {}
            Err(e) => return Err(e),
        }
    }
    Ok(filled)
}

fn cmd_derive(args: &KeyArgs) -> CliResult<()> {
    let key = resolve_key(args)?;
    let trace = derive_key(&key)?;
    let params = CipherParams::new(trace.code, trace.power_ex)?;
    warn_if_weak(&params);
    let mut out = io::stdout().lock();
    writeln!(out, "csum={}", trace.csum)?;
    writeln!(out, "pseudo_code={}", trace.pseudo_code)?;
    writeln!(out, "temporary_power_ex={}", trace.temporary_power_ex)?;
    writeln!(out, "code={}", trace.code)?;
    writeln!(out, "power_ex={}", trace.power_ex)?;
    writeln!(out, "prime_index={}", params.prime_index())?;
    writeln!(out, "modulus={}", params.modulus())?;
    Ok(())
}

#[derive(Clone, Copy)]
enum Direction {
    Encrypt,
    Decrypt,
}

fn cmd_cipher(args: &CipherArgs, direction: Direction) -> CliResult<()> {
    let params = match (args.code, args.power_ex) {
        (Some(code), Some(power_ex)) => CipherParams::new(code, power_ex)?,
        _ => sdree::params_for_key(&resolve_key(&args.key)?)?,
    };
    if !args.no_weak_key_warning {
        warn_if_weak(&params);
    }

    let mut cipher = StreamCipher::new(&params);
    let mut buf = vec![0u8; CHUNK];
    let input = open_input(&args.io)?;
    let output = open_output(&args.io)?;
    match direction {
        Direction::Encrypt => {
            let mut input = input;
            let mut out = Encoder::new(args.format, output);
            loop {
                let n = read_chunk(&mut input, &mut buf)?;
                if n == 0 {
                    break;
                }
                cipher.encrypt_in_place(&mut buf[..n]);
                out.write_all(&buf[..n])?;
            }
            out.finish()?;
        }
        Direction::Decrypt => {
            let mut input = codec::decoder(args.format, input);
            let mut out = output;
            loop {
                let n = read_chunk(&mut input, &mut buf)?;
                if n == 0 {
                    break;
                }
                cipher.decrypt_in_place(&mut buf[..n]);
                out.write_all(&buf[..n])?;
            }
            out.flush()?;
        }
    }
    Ok(())
}

fn cmd_analyze(io_args: &IoArgs, report: Report) -> CliResult<()> {
    let mut input = open_input(io_args)?;
    let mut histogram = ByteHistogram::new();
    let mut runs = RunTracker::default();
    let mut buf = vec![0u8; CHUNK];
    loop {
        let n = read_chunk(&mut input, &mut buf)?;
        if n == 0 {
            break;
        }
        histogram.update(&buf[..n]);
        runs.update(&buf[..n]);
    }
    let report_data = AnalysisReport::from_parts(histogram, runs.max_run());
    let format = match report {
        Report::Csv => ReportFormat::Csv,
        Report::Chart => ReportFormat::AsciiChart,
    };
    let mut out = open_output(io_args)?;
    out.write_all(render_report(&report_data, format).as_bytes())?;
    out.flush()?;
    Ok(())
}
