//! Command-line front end: seed generation, construction, verification,
//! secret splitting and combining, and the growth tables.
//!
//! Exit codes: `0` success, `1` domain failure (bad seed, failed check,
//! out-of-range secret, inconsistent shares, I/O), `2` usage error.
//! Machine-readable output goes to stdout, diagnostics to stderr. Secrets
//! never appear in diagnostics.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use mignotte::analysis::{gap_table, p_growth_table, write_gap_csv, write_growth_csv};
use mignotte::{
    check_mignotte, construct, pairwise_coprime, reconstruct, reconstruct_standalone, split,
    Natural, Rational, SchemeParams, SeedSequence, Share,
};
use num_traits::Zero;

pub mod moduli_file;

use moduli_file::ModuliFile;

/// Default ceiling on `--t` for `construct`.
pub const DEFAULT_T_LIMIT: u64 = 1_000_000;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

impl From<mignotte::Error> for CliError {
    fn from(e: mignotte::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::Domain(format!("{}: {e}", path.display()))
}

#[derive(Debug, Parser)]
#[command(
    name = "mignotte",
    version,
    about = "Build Mignotte sequences and share secrets over them"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a pairwise coprime seed with q_{i+1} = 1 + q_1···q_i
    Seed {
        #[arg(long, value_parser = parse_natural_arg)]
        q1: Natural,
        #[arg(long)]
        n: usize,
        /// Write the seed here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shift a seed by t times the product of its pairwise differences
    Construct {
        /// Comma-separated list, or a file holding one
        #[arg(long)]
        seed: String,
        #[arg(long, default_value = "1", value_parser = parse_natural_arg)]
        t: Natural,
        /// Refuse t above this
        #[arg(long, default_value_t = DEFAULT_T_LIMIT)]
        t_limit: u64,
        /// Threshold to record in the moduli file
        #[arg(long)]
        k_hint: Option<usize>,
        /// Write the moduli file here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check coprimality and the Mignotte condition
    Verify {
        /// Moduli file, or a comma-separated list
        #[arg(long)]
        moduli: String,
        /// A threshold, or `all` for every 1 < k < n
        #[arg(long, default_value = "all")]
        k: String,
        /// Warn when the gap ratio (M-N)/N is below this (`a` or `a/b`)
        #[arg(long, default_value = "1")]
        warn_below: String,
    },
    /// Split a secret into one share file per modulus
    Split {
        /// Decimal secret, or @path to read raw bytes (big-endian)
        #[arg(long)]
        secret: String,
        /// Moduli file, or a comma-separated list
        #[arg(long)]
        moduli: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Reconstruct a secret from share files
    Combine {
        #[arg(long, num_args = 1.., required = true)]
        shares: Vec<PathBuf>,
        /// Full moduli list for the strict (N, M) range check
        #[arg(long)]
        moduli: Option<String>,
        /// Also write the secret as raw big-endian bytes after the decimal line
        #[arg(long)]
        bytes: bool,
    },
    /// Emit growth tables as CSV
    Analyze {
        #[arg(long, value_enum)]
        mode: Mode,
        /// p-growth: first seed term
        #[arg(long, value_parser = parse_natural_arg)]
        q1: Option<Natural>,
        /// p-growth: `a..b` or a single n
        #[arg(long)]
        n: Option<String>,
        /// gap: comma-separated list, or a file holding one
        #[arg(long)]
        seed: Option<String>,
        /// gap: threshold
        #[arg(long)]
        k: Option<usize>,
        /// gap: comma-separated t values
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    PGrowth,
    Gap,
}

fn parse_natural_arg(s: &str) -> Result<Natural, String> {
    parse_natural(s).ok_or_else(|| format!("not a non-negative decimal integer: {s:?}"))
}

fn parse_natural(s: &str) -> Option<Natural> {
    let s = s.trim();
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Whitespace- or comma-separated decimals.
fn parse_list(text: &str) -> Result<Vec<Natural>, CliError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            parse_natural(t).ok_or_else(|| CliError::Usage(format!("not a decimal integer: {t:?}")))
        })
        .collect()
}

/// An existing file is read; anything else is parsed as an inline list.
fn list_or_file(arg: &str) -> Result<Vec<Natural>, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        parse_list(&fs::read_to_string(path).map_err(|e| io_error(path, e))?)
    } else {
        parse_list(arg)
    }
}

enum ModuliSource {
    Constructed(mignotte::MignotteModuli),
    Raw(Vec<Natural>),
}

impl ModuliSource {
    fn load(arg: &str) -> Result<Self, CliError> {
        let path = Path::new(arg);
        if path.is_file() {
            let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
            Ok(ModuliSource::Constructed(ModuliFile::parse(&text)?.load()?))
        } else {
            Ok(ModuliSource::Raw(parse_list(arg)?))
        }
    }

    fn moduli(&self) -> &[Natural] {
        match self {
            ModuliSource::Constructed(m) => m.moduli(),
            ModuliSource::Raw(v) => v,
        }
    }
}

fn join(xs: &[Natural], sep: &str) -> String {
    xs.iter()
        .map(Natural::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn write_output(out: &mut dyn Write, path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| io_error(p, e)),
        None => out
            .write_all(bytes)
            .map_err(|e| CliError::Domain(format!("stdout: {e}"))),
    }
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(|e| CliError::Domain(format!("write failed: {e}")))
    };
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Seed { q1, n, out: path } => cmd_seed(q1, n, path.as_deref(), out),
        Command::Construct {
            seed,
            t,
            t_limit,
            k_hint,
            out: path,
        } => cmd_construct(&seed, t, t_limit, k_hint, path.as_deref(), out),
        Command::Verify {
            moduli,
            k,
            warn_below,
        } => cmd_verify(&moduli, &k, &warn_below, out, err),
        Command::Split {
            secret,
            moduli,
            k,
            out_dir,
        } => cmd_split(&secret, &moduli, k, &out_dir, out),
        Command::Combine {
            shares,
            moduli,
            bytes,
        } => cmd_combine(&shares, moduli.as_deref(), bytes, out),
        Command::Analyze {
            mode,
            q1,
            n,
            seed,
            k,
            t,
            out: path,
        } => match mode {
            Mode::PGrowth => {
                let q1 = q1.ok_or_else(|| CliError::Usage("p-growth needs --q1".into()))?;
                let n = n.ok_or_else(|| CliError::Usage("p-growth needs --n".into()))?;
                cmd_analyze_growth(q1, &n, path.as_deref(), out)
            }
            Mode::Gap => {
                let seed = seed.ok_or_else(|| CliError::Usage("gap needs --seed".into()))?;
                let k = k.ok_or_else(|| CliError::Usage("gap needs --k".into()))?;
                let t = t.ok_or_else(|| CliError::Usage("gap needs --t".into()))?;
                cmd_analyze_gap(&seed, k, &t, path.as_deref(), out)
            }
        },
    }
}

fn cmd_seed(
    q1: Natural,
    n: usize,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let seed = SeedSequence::sylvester(q1, n)?;
    let line = format!("{}\n", join(seed.terms(), " "));
    write_output(out, path, line.as_bytes())
}

fn cmd_construct(
    seed: &str,
    t: Natural,
    t_limit: u64,
    k_hint: Option<usize>,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if t > Natural::from(t_limit) {
        return Err(CliError::Domain(format!(
            "t exceeds the limit {t_limit} (raise it with --t-limit)"
        )));
    }
    let seed = SeedSequence::new(list_or_file(seed)?)?;
    let moduli = construct(&seed, t)?;
    if let Some(k) = k_hint {
        check_mignotte(moduli.moduli(), k)?;
    }
    say!(out, "P={}", moduli.difference_product())?;
    say!(out, "t={}", moduli.iterations())?;
    say!(out, "moduli={}", join(moduli.moduli(), ","))?;
    if let Some(p) = path {
        let file = ModuliFile::from_moduli(&moduli, k_hint).to_canonical_string();
        fs::write(p, file).map_err(|e| io_error(p, e))?;
    }
    Ok(())
}

fn parse_ratio(s: &str) -> Result<Rational, CliError> {
    let bad = || CliError::Usage(format!("not a ratio: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (
            parse_natural(a).ok_or_else(bad)?,
            parse_natural(b).ok_or_else(bad)?,
        ),
        None => (parse_natural(s).ok_or_else(bad)?, Natural::from(1u32)),
    };
    Rational::new(num, den).map_err(|_| bad())
}

fn cmd_verify(
    moduli: &str,
    k: &str,
    warn_below: &str,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let warn_below = parse_ratio(warn_below)?;
    let source = ModuliSource::load(moduli)?;
    let ms = source.moduli();
    if ms.is_empty() {
        return Err(mignotte::Error::EmptySequence.into());
    }
    let ks: Vec<usize> = if k == "all" {
        if ms.len() < 3 {
            return Err(mignotte::Error::ThresholdOutOfRange { k: 2, n: ms.len() }.into());
        }
        (2..ms.len()).collect()
    } else {
        vec![k
            .parse()
            .map_err(|_| CliError::Usage(format!("--k must be a count or `all`, got {k:?}")))?]
    };

    say!(out, "moduli={}", join(ms, ","))?;
    if let ModuliSource::Constructed(m) = &source {
        say!(
            out,
            "provenance: seed={} t={} P={}",
            join(m.seed().terms(), ","),
            m.iterations(),
            m.difference_product()
        )?;
    }
    if !pairwise_coprime(ms)? {
        // check_mignotte names the offending pair.
        check_mignotte(ms, ks[0])?;
    }
    say!(out, "pairwise coprime: yes")?;
    for &k in &ks {
        let b = check_mignotte(ms, k)?;
        say!(
            out,
            "k={k}: M={} N={} ratio={} pass",
            b.upper,
            b.lower,
            b.gap_ratio
        )?;
        if b.gap_ratio < warn_below {
            let _ = writeln!(
                err,
                "warning: k={k}: gap ratio {} is below {warn_below}",
                b.gap_ratio
            );
        }
    }
    Ok(())
}

fn read_secret(arg: &str) -> Result<Natural, CliError> {
    match arg.strip_prefix('@') {
        Some(path) => {
            let path = Path::new(path);
            let bytes = fs::read(path).map_err(|e| io_error(path, e))?;
            Ok(Natural::from_bytes_be(&bytes))
        }
        None => parse_natural(arg)
            .ok_or_else(|| CliError::Usage("--secret must be a decimal integer or @path".into())),
    }
}

fn cmd_split(
    secret: &str,
    moduli: &str,
    k: usize,
    out_dir: &Path,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let secret = read_secret(secret)?;
    let params = match ModuliSource::load(moduli)? {
        ModuliSource::Constructed(m) => SchemeParams::new(&m, k)?,
        ModuliSource::Raw(v) => SchemeParams::from_moduli(v, k)?,
    };
    let shares = split(&secret, &params)?;
    fs::create_dir_all(out_dir).map_err(|e| io_error(out_dir, e))?;
    for s in &shares {
        let path = out_dir.join(format!("share_{}.json", s.index()));
        fs::write(&path, s.to_canonical_string()).map_err(|e| io_error(&path, e))?;
    }
    say!(out, "{}", params.scheme_id())
}

fn cmd_combine(
    paths: &[PathBuf],
    moduli: Option<&str>,
    as_bytes: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let shares = paths
        .iter()
        .map(|p| {
            let text = fs::read_to_string(p).map_err(|e| io_error(p, e))?;
            Share::parse(&text).map_err(|e| CliError::Domain(format!("{}: {e}", p.display())))
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let secret = match moduli {
        Some(arg) => {
            let first = shares.first().expect("clap requires at least one share");
            let params = match ModuliSource::load(arg)? {
                ModuliSource::Constructed(m) => SchemeParams::new(&m, first.k())?,
                ModuliSource::Raw(v) => SchemeParams::from_moduli(v, first.k())?,
            };
            reconstruct(&shares, &params)?
        }
        None => reconstruct_standalone(&shares)?,
    };
    say!(out, "{secret}")?;
    if as_bytes {
        let bytes = if secret.is_zero() {
            Vec::new()
        } else {
            secret.to_bytes_be()
        };
        out.write_all(&bytes)
            .map_err(|e| CliError::Domain(format!("write failed: {e}")))?;
    }
    Ok(())
}

fn parse_n_range(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("--n must be `a..b` or a single count, got {s:?}"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    match s.split_once("..") {
        Some((a, b)) => Ok((num(a)?, num(b.trim_start_matches('='))?)),
        None => {
            let n = num(s)?;
            Ok((n, n))
        }
    }
}

fn cmd_analyze_growth(
    q1: Natural,
    n: &str,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let (lo, hi) = parse_n_range(n)?;
    let rows = p_growth_table(q1, lo, hi)?;
    let mut buf = Vec::new();
    write_growth_csv(&rows, &mut buf)?;
    write_output(out, path, &buf)
}

fn cmd_analyze_gap(
    seed: &str,
    k: usize,
    t: &str,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let seed = SeedSequence::new(list_or_file(seed)?)?;
    let ts = parse_list(t)?;
    let rows = gap_table(&seed, k, &ts)?;
    let mut buf = Vec::new();
    write_gap_csv(&rows, &mut buf)?;
    write_output(out, path, &buf)
}
