use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use magcodec::codec::{
    decode_characteristic, decode_edge_set_string_with_cap, decode_tau_bytes, encode_characteristic,
    encode_edge_set_string, encode_tau, parse_magtxt_with_cap, read_charbits, write_charbits, write_magtxt,
    EdgeSetString,
};
use magcodec::experiments::{
    run_distortion_sweep, run_uniform_control, write_reports, ExperimentConfig, SweepRun, Topology, DEFAULT_ONES_CAP,
};
use magcodec::{recover_signature, CompanionTuple, MagError, SizeCap};

/// Encode, decode and measure simple multiaspect graphs.
#[derive(Parser)]
#[command(name = "magcodec", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distortion sweep over worst-case MAGs.
    Sweep(SweepArgs),
    /// Uniform-space control paired with the sweep of the same config.
    ControlUniform(SweepArgs),
    /// Recover the binary signature and aspect sizes from a `.mages` file.
    Recover { file: PathBuf },
    /// Encode a `.magtxt` file.
    Encode(CodecArgs),
    /// Decode back to `.magtxt` (or to the tuple, for `tau`).
    Decode(CodecArgs),
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated, strictly increasing orders.
    #[arg(long = "p", value_delimiter = ',', default_values_t = [8, 12, 16, 20, 24])]
    p: Vec<usize>,
    #[arg(long, default_value = "lz")]
    compressor: String,
    /// `trivial` or `random:<density>`.
    #[arg(long, default_value = "trivial")]
    topology: String,
    #[arg(long, default_value_t = DEFAULT_ONES_CAP)]
    ones_cap: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// `.charbits`: characteristic string.
    Char,
    /// `.mages`: composite edge set string.
    Edgeset,
    /// `.taubits`: encoded companion tuple.
    Tau,
}

#[derive(Args)]
struct CodecArgs {
    #[arg(long, value_enum)]
    format: Format,
    input: PathBuf,
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Aspect sizes, needed to decode a characteristic string, e.g. "2,1,2".
    #[arg(long, value_delimiter = ',')]
    tau: Vec<u64>,
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path)
        .map_err(MagError::from)
        .with_context(|| format!("reading {}", path.display()))
}

fn emit(output: &Option<PathBuf>, bytes: &[u8]) -> Result<()> {
    match output {
        Some(path) => fs::write(path, bytes)
            .map_err(MagError::from)
            .with_context(|| format!("writing {}", path.display())),
        None => io::stdout().write_all(bytes).map_err(|e| MagError::from(e).into()),
    }
}

fn magtxt(path: &Path) -> Result<magcodec::SimpleMag> {
    let text = String::from_utf8(read(path)?).map_err(|_| MagError::Parse {
        line: 0,
        msg: "input is not UTF-8".into(),
    })?;
    Ok(parse_magtxt_with_cap(&text, SizeCap::from_env()?)?)
}

fn sweep(args: SweepArgs, uniform: bool) -> Result<()> {
    let cfg = ExperimentConfig {
        seed: args.seed,
        p_values: args.p,
        topology: args.topology.parse::<Topology>()?,
        compressor: args.compressor,
        ones_cap: args.ones_cap,
        size_cap_bits: SizeCap::from_env()?.0,
    };
    let SweepRun { report, error } = if uniform {
        run_uniform_control(&cfg)
    } else {
        run_distortion_sweep(&cfg)
    };
    write_reports(&report, &args.out)?;
    let p_col = report.sweep_p();
    println!("p\tones\t|E_c|\tC(x)\tC(E)\tC(tau)\tC(E|x)\tC(E(G))");
    for (p, r) in p_col.iter().zip(&report.rows) {
        println!(
            "{p}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.ones, r.n_possible_edges, r.c_x, r.c_edgeset, r.c_tau, r.c_edgeset_given_x, r.c_graph_edgeset
        );
    }
    match error {
        Some(e) => Err(e).context("sweep aborted; partial results written"),
        None => Ok(()),
    }
}

fn encode(args: CodecArgs) -> Result<()> {
    let mag = magtxt(&args.input)?;
    let bytes = match args.format {
        Format::Char => {
            let mut out = Vec::new();
            write_charbits(&encode_characteristic(&mag), &mut out)?;
            out
        }
        Format::Edgeset => encode_edge_set_string(&mag).into_bytes(),
        Format::Tau => encode_tau(mag.tau()).as_bytes().to_vec(),
    };
    emit(&args.output, &bytes)
}

fn decode(args: CodecArgs) -> Result<()> {
    let bytes = read(&args.input)?;
    let cap = SizeCap::from_env()?;
    let text = match args.format {
        Format::Char => {
            if args.tau.is_empty() {
                return Err(
                    MagError::InvalidConstruction("a characteristic string needs --tau to decode".into()).into(),
                );
            }
            let tau = CompanionTuple::new(args.tau)?;
            cap.check(&tau)?;
            write_magtxt(&decode_characteristic(&tau, &read_charbits(bytes.as_slice())?)?)
        }
        Format::Edgeset => write_magtxt(&decode_edge_set_string_with_cap(
            &EdgeSetString::from_bytes(bytes),
            cap,
        )?),
        Format::Tau => {
            let tau = decode_tau_bytes(&bytes)?;
            let sizes: Vec<String> = tau.sizes().iter().map(u64::to_string).collect();
            format!("tau: {}\n", sizes.join(" "))
        }
    };
    emit(&args.output, text.as_bytes())
}

fn recover(file: &Path) -> Result<()> {
    let r = recover_signature(&EdgeSetString::from_bytes(read(file)?))?;
    let sizes: Vec<String> = r.sizes.iter().map(u64::to_string).collect();
    println!("p: {}", r.sizes.len());
    println!("sizes: {}", sizes.join(" "));
    println!("signature: {}", r.signature);
    if r.degenerate {
        println!("degenerate: no records, sizes default to 1");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep(a) => sweep(a, false),
        Command::ControlUniform(a) => sweep(a, true),
        Command::Recover { file } => recover(&file),
        Command::Encode(a) => encode(a),
        Command::Decode(a) => decode(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e.downcast_ref::<MagError>().map_or(2, MagError::exit_code);
            ExitCode::from(code as u8)
        }
    }
}
