use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use assoc_spectra::counting::{catalan, count_m};
use assoc_spectra::gallery::{gallery_spec, CATALOG};
use assoc_spectra::spectrum::{
    depth_pair_partition, egg_switch_spectrum, left_factor_partition, parse_bits,
    tail_tuple_partition, three_egg_partition,
};
use assoc_spectra::{
    enumerate_bracketings, verify_closed, BigCount, Error, Evaluator, Groupoid, Level, Limits,
    Partition, Specimen, SpectrumPrefix, TextFormat,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(version, about = "Associative spectra of finite p-ary groupoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List all bracketings with n operation symbols in canonical order
    Enum {
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "prefix")]
        format: Format,
        #[arg(long, default_value_t = Limits::DEFAULT_MAX_BRACKETINGS)]
        max_bracketings: u64,
    },
    /// Exact counts of bracketings or of the tuple sets M(n, k, p)
    Count {
        #[arg(value_enum)]
        kind: CountKind,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long)]
        n: u64,
        /// Required for `m`
        #[arg(long)]
        k: Option<u64>,
    },
    /// Associative spectrum of a groupoid table document
    Spectrum {
        file: PathBuf,
        #[arg(long)]
        max_n: usize,
        /// Append the partition of every level
        #[arg(long)]
        fine: bool,
        #[command(flatten)]
        caps: Caps,
    },
    /// Check that a spectrum prefix is closed under the implication operator
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        max_n: usize,
        /// Arity for `tail:k`
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[command(flatten)]
        caps: Caps,
    },
    /// Named example groupoids
    Gallery {
        #[command(subcommand)]
        action: GalleryAction,
    },
}

#[derive(Args)]
struct Caps {
    #[arg(long, default_value_t = Limits::DEFAULT_MAX_CELLS)]
    max_cells: u64,
    #[arg(long, default_value_t = Limits::DEFAULT_MAX_BRACKETINGS)]
    max_bracketings: u64,
}

impl Caps {
    fn limits(&self) -> Limits {
        Limits {
            max_bracketings: self.max_bracketings,
            max_cells: self.max_cells,
        }
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// left_factor:K, tail:K, dldr, tau or sigma_a:BITS
    #[arg(long)]
    builtin: Option<String>,
    /// A spectrum prefix in partition text format
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GalleryAction {
    /// Print the available groupoids and their carrier sizes
    List,
    /// Write the table document of NAME[:PARAM] to OUT, or stdout
    Emit { name: String, out: Option<PathBuf> },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Prefix,
    Infix,
    Tuple,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountKind {
    Catalan,
    M,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => 3,
            Error::EvaluationOnly(_) => 4,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(code), Ok(())) => ExitCode::from(code),
        (Err(f), _) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
        (Ok(_), Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Result<u8, Failure> {
    match command {
        Command::Enum {
            p,
            n,
            format,
            max_bracketings,
        } => {
            let limits = Limits {
                max_bracketings,
                ..Limits::default()
            };
            cmd_enum(p, n, format, &limits, out)
        }
        Command::Count { kind, p, n, k } => cmd_count(kind, p, n, k, out),
        Command::Spectrum {
            file,
            max_n,
            fine,
            caps,
        } => cmd_spectrum(&file, max_n, fine, &caps.limits(), out),
        Command::Verify {
            source,
            max_n,
            p,
            caps,
        } => cmd_verify(&source, max_n, p, &caps.limits(), out),
        Command::Gallery { action } => match action {
            GalleryAction::List => cmd_gallery_list(out),
            GalleryAction::Emit { name, out: path } => {
                cmd_gallery_emit(&name, path.as_deref(), out)
            }
        },
    }
}

fn cmd_enum(
    p: usize,
    n: usize,
    format: Format,
    limits: &Limits,
    out: &mut impl Write,
) -> Result<u8, Failure> {
    let text_format = match format {
        Format::Prefix => Some(TextFormat::Prefix),
        Format::Infix => Some(TextFormat::Infix),
        Format::Tuple => None,
    };
    for t in enumerate_bracketings(n, p, limits)? {
        match text_format {
            Some(f) => writeln!(out, "{}", t.render(f)?)?,
            None => writeln!(out, "{}", t.insertion_tuple())?,
        }
    }
    Ok(0)
}

fn cmd_count(
    kind: CountKind,
    p: u64,
    n: u64,
    k: Option<u64>,
    out: &mut impl Write,
) -> Result<u8, Failure> {
    if p < 2 {
        return Err(Error::InvalidArity(p as usize).into());
    }
    let value: BigCount = match (kind, k) {
        (CountKind::Catalan, None) => catalan(n, p),
        (CountKind::Catalan, Some(_)) => return Err(usage("--k only applies to `count m`")),
        (CountKind::M, Some(0)) => return Err(usage("--k must be positive")),
        (CountKind::M, Some(k)) => count_m(n, k, p),
        (CountKind::M, None) => return Err(usage("`count m` requires --k")),
    };
    writeln!(out, "{value}")?;
    Ok(0)
}

fn load_groupoid(path: &Path) -> Result<Groupoid, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(Groupoid::from_json(&text)?)
}

fn cmd_spectrum(
    path: &Path,
    max_n: usize,
    fine: bool,
    limits: &Limits,
    out: &mut impl Write,
) -> Result<u8, Failure> {
    let g = load_groupoid(path)?;
    let mut eval = Evaluator::new(&g, *limits);
    let (levels, failure) = eval.fine_levels(max_n);
    for part in &levels {
        writeln!(out, "n={} classes={}", part.level(), part.class_count())?;
    }
    if fine {
        for part in &levels {
            let level = Level::new(part.level(), g.arity(), limits)?;
            writeln!(out)?;
            write!(out, "{}", part.render(&level))?;
        }
    }
    match failure {
        None => Ok(0),
        Some(e) => {
            writeln!(out, "# truncated at n={}", levels.len())?;
            Err(e.into())
        }
    }
}

fn builtin_prefix(
    spec: &str,
    max_n: usize,
    p: usize,
    limits: &Limits,
) -> Result<SpectrumPrefix, Failure> {
    let (name, param) = match spec.split_once(':') {
        Some((name, param)) => (name, Some(param)),
        None => (spec, None),
    };
    let number = |what: &str| -> Result<usize, Failure> {
        let text = param.ok_or_else(|| usage(format!("{name} needs a parameter {what}")))?;
        text.parse()
            .map_err(|_| usage(format!("{name}: {text:?} is not a non-negative integer")))
    };
    let binary_only = |name: &str| -> Result<(), Failure> {
        if p == 2 {
            Ok(())
        } else {
            Err(usage(format!(
                "{name} is defined for p = 2 only, got p = {p}"
            )))
        }
    };
    let no_param = |name: &str| -> Result<(), Failure> {
        match param {
            None => Ok(()),
            Some(_) => Err(usage(format!("{name} takes no parameter"))),
        }
    };
    let build = |arity: usize, f: &dyn Fn(usize) -> assoc_spectra::Result<Partition>| {
        let levels = (0..=max_n)
            .map(f)
            .collect::<assoc_spectra::Result<Vec<_>>>()?;
        Ok::<_, Failure>(SpectrumPrefix::new(arity, levels)?)
    };
    match name {
        "left_factor" => {
            binary_only(name)?;
            let k = number("k")?;
            build(2, &|n| left_factor_partition(n, k, limits))
        }
        "tail" => {
            let k = number("k")?;
            build(p, &|n| tail_tuple_partition(n, k, p, limits))
        }
        "dldr" => {
            binary_only(name)?;
            no_param(name)?;
            build(2, &|n| depth_pair_partition(n, limits))
        }
        "tau" => {
            binary_only(name)?;
            no_param(name)?;
            build(2, &|n| three_egg_partition(n, limits))
        }
        "sigma_a" => {
            binary_only(name)?;
            let text = param.ok_or_else(|| usage("sigma_a needs a bit string"))?;
            let mut bits = parse_bits(text)?;
            // Missing bits continue the sequence with zeros.
            bits.resize(max_n + 1, false);
            Ok(egg_switch_spectrum(&bits, limits)?)
        }
        other => Err(usage(format!(
            "unknown builtin {other:?}; expected left_factor:K, tail:K, dldr, tau or sigma_a:BITS"
        ))),
    }
}

fn cmd_verify(
    source: &Source,
    max_n: usize,
    p: usize,
    limits: &Limits,
    out: &mut impl Write,
) -> Result<u8, Failure> {
    let sigma = match (&source.builtin, &source.file) {
        (Some(spec), _) => builtin_prefix(spec, max_n, p, limits)?,
        (None, Some(path)) => {
            let text =
                fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let mut sigma = SpectrumPrefix::parse(&text, limits)?;
            if sigma.horizon() > max_n {
                sigma.truncate(max_n);
            }
            sigma
        }
        (None, None) => return Err(usage("one of --builtin or --file is required")),
    };
    match verify_closed(&sigma, limits)?.violation {
        None => {
            writeln!(out, "CLOSED")?;
            Ok(0)
        }
        Some(v) => {
            writeln!(out, "{v}")?;
            Ok(1)
        }
    }
}

fn cmd_gallery_list(out: &mut impl Write) -> Result<u8, Failure> {
    for entry in CATALOG {
        let name = match entry.param {
            Some(param) => format!("{}:{param}", entry.name),
            None => entry.name.to_string(),
        };
        writeln!(out, "{name:<18}size {:<24}{}", entry.carrier, entry.summary)?;
    }
    Ok(0)
}

fn cmd_gallery_emit(spec: &str, path: Option<&Path>, out: &mut impl Write) -> Result<u8, Failure> {
    let g = match gallery_spec(spec)? {
        Specimen::Table(g) => g,
        ring @ Specimen::Ring(_) => return Err(ring.table().unwrap_err().into()),
    };
    let doc = g.to_json();
    match path {
        Some(path) => fs::write(path, format!("{doc}\n"))
            .map_err(|e| usage(format!("{}: {e}", path.display())))?,
        None => writeln!(out, "{doc}")?,
    }
    Ok(0)
}
