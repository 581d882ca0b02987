//! The `bsa` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use antipodal_core::certify::{certify_set, check_certificate, Certification, PointSet};
use antipodal_core::construct::{
    auerbach_ascent, lp_basis_family, normalize_biorthogonal, plus_minus_family, renorm_equilateral_family,
    strict_convex_family, summing_family, AuerbachSystem, NamedFamily,
};
use antipodal_core::search::{
    brute_force_margin, greedy_separated, ka_lower_bound, max_antipodal_search, SearchConfig,
};
use antipodal_core::{Exponent, NormSpec};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::json::{
    parse_set_input, CertificateJson, CertifyOutput, ConfigJson, CountJson, FamilyJson, OracleOutput, ReportJson,
    SearchOutput, SetInput, SpaceJson, SystemJson, VerdictJson,
};
use crate::{CliError, Exit, Result};

#[derive(Debug, Parser)]
#[command(name = "bsa", version, about = "Certify, construct and search for bounded separated antipodal sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimal pair margins and a (c1, 1, d) certificate for a point set.
    Certify(CertifyArgs),
    /// Build a named family with its separating functionals.
    Construct(ConstructArgs),
    /// Annealing and greedy searches over unit-sphere configurations.
    Search(SearchArgs),
    /// Grid lower bound for one pair margin (dimension 3 at most).
    Oracle(OracleArgs),
    /// Check and canonicalize a space description.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the result here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Indented JSON, plus a readable table on stderr where one applies.
    #[arg(long)]
    pub pretty: bool,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// Set, certificate or family JSON; `-` reads stdin.
    #[arg(long)]
    pub set: String,
    /// Antipodality threshold, and tolerance for checking a supplied certificate.
    #[arg(long, default_value_t = 1e-7)]
    pub tol: f64,
    /// CSV of pair margins (upper,lower,margin,distance); `-` for stdout.
    #[arg(long, value_name = "PATH")]
    pub emit_table: Option<String>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    LpBasis,
    Summing,
    Auerbach,
    StrictConvex,
    PlusMinus,
    RenormEquilateral,
    Biorthogonal,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Space JSON; `-` reads stdin. Without it, `--p` and `--n` give l_p^n.
    #[arg(long)]
    pub space: Option<String>,
    /// Exponent, a number or `inf`.
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Seed of the Auerbach ascent fallback.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Vectors and functionals JSON for `biorthogonal`.
    #[arg(long)]
    pub system: Option<String>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Ka,
    Antipodal,
    Separated,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub space: String,
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// Search configuration JSON; defaults apply when omitted.
    #[arg(long)]
    pub config: Option<String>,
    /// Overrides the configured cardinality.
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Include the wall time in the result.
    #[arg(long)]
    pub timing: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub set: String,
    /// Upper and lower point indices.
    #[arg(long, num_args = 2, value_names = ["UPPER", "LOWER"])]
    pub pair: Vec<usize>,
    #[arg(long, default_value_t = 720)]
    pub grid: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub space: String,
    #[command(flatten)]
    pub output: Output,
}

/// Standard streams of one invocation.
pub struct Io<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
    /// Value of `BSA_SEED`, if set.
    pub env_seed: Option<String>,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, io: &mut Io<'_>) -> Exit
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(io.stdout, "{e}");
            return Exit::Ok;
        }
        Err(e) => {
            report_error(io.stderr, "Usage", &e.to_string());
            return Exit::InvalidInput;
        }
    };
    match dispatch(cli.command, io) {
        Ok(exit) => exit,
        Err(e) => {
            report_error(io.stderr, &e.name(), &e.to_string());
            e.exit()
        }
    }
}

fn report_error(stderr: &mut dyn Write, name: &str, message: &str) {
    let body = serde_json::json!({ "error": name, "message": message.trim_end() });
    let _ = writeln!(stderr, "{body}");
}

fn dispatch(command: Command, io: &mut Io<'_>) -> Result<Exit> {
    match command {
        Command::Certify(a) => certify(a, io),
        Command::Construct(a) => construct(a, io),
        Command::Search(a) => search(a, io),
        Command::Oracle(a) => oracle(a, io),
        Command::Validate(a) => validate(a, io),
    }
}

fn read_source(path: &str, io: &mut Io<'_>) -> Result<String> {
    if path == "-" {
        let mut text = String::new();
        io.stdin.read_to_string(&mut text)?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))
    }
}

fn read_space(path: &str, io: &mut Io<'_>) -> Result<NormSpec> {
    let doc: SpaceJson = serde_json::from_str(&read_source(path, io)?)?;
    doc.to_space()
}

fn emit<T: Serialize>(value: &T, output: &Output, io: &mut Io<'_>) -> Result<()> {
    let mut text = if output.pretty { serde_json::to_string_pretty(value)? } else { serde_json::to_string(value)? };
    text.push('\n');
    match &output.out {
        Some(path) => std::fs::write(path, text)?,
        None => io.stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn seed(flag: Option<u64>, configured: Option<u64>, io: &Io<'_>) -> Result<u64> {
    if let Some(s) = flag.or(configured) {
        return Ok(s);
    }
    match io.env_seed.as_deref() {
        None => Ok(0),
        Some(text) => text.trim().parse().map_err(|_| CliError::Input(format!("BSA_SEED is not an integer: {text:?}"))),
    }
}

fn margin_table(certification: &Certification) -> Result<String> {
    let set = &certification.certificate.set;
    let mut table = format!(
        "d = {}  separation = {}  c1 = {}  ka_lower = {}  k_lower = {}\n{:>6} {:>6} {:>22} {:>22}\n",
        certification.report.d,
        certification.report.separation,
        certification.report.c1,
        certification.report.ka_lower,
        certification.report.k_lower,
        "upper",
        "lower",
        "margin",
        "distance"
    );
    for pair in certification.certificate.pairs.values() {
        let distance = set.space().norm(&(&set.points()[pair.upper] - &set.points()[pair.lower]))?;
        let _ = writeln!(table, "{:>6} {:>6} {:>22} {:>22}", pair.upper, pair.lower, pair.margin, distance);
    }
    Ok(table)
}

fn write_csv(certification: &Certification, target: &mut dyn Write) -> Result<()> {
    let set = &certification.certificate.set;
    let mut csv = csv::Writer::from_writer(target);
    csv.write_record(["upper", "lower", "margin", "distance"])?;
    for pair in certification.certificate.pairs.values() {
        let distance = set.space().norm(&(&set.points()[pair.upper] - &set.points()[pair.lower]))?;
        csv.serialize((pair.upper, pair.lower, pair.margin, distance))?;
    }
    csv.flush()?;
    Ok(())
}

fn certify(args: CertifyArgs, io: &mut Io<'_>) -> Result<Exit> {
    if !(args.tol >= 0.0) {
        return Err(CliError::Input("--tol must be non-negative".into()));
    }
    let input = parse_set_input(&read_source(&args.set, io)?)?;
    let input_verdict = match &input {
        SetInput::Certificate(cert) => Some(check_certificate(cert, args.tol)?),
        SetInput::Set(_) => None,
    };
    let certification = certify_set(input.set())?;
    let out = CertifyOutput {
        report: (&certification.report).into(),
        certificate: (&certification.certificate).into(),
        input_verdict: input_verdict.as_ref().map(VerdictJson::from),
    };
    match args.emit_table.as_deref() {
        Some("-") => {
            write_csv(&certification, io.stdout)?;
            if args.output.out.is_some() {
                emit(&out, &args.output, io)?;
            }
        }
        Some(path) => {
            write_csv(&certification, &mut std::fs::File::create(path)?)?;
            emit(&out, &args.output, io)?;
        }
        None => emit(&out, &args.output, io)?,
    }
    if args.output.pretty {
        io.stderr.write_all(margin_table(&certification)?.as_bytes())?;
    }
    let certified = certification.report.d > args.tol && input_verdict.is_none_or(|v| v.valid);
    Ok(if certified { Exit::Ok } else { Exit::NotCertified })
}

fn parse_exponent(text: &str) -> Result<f64> {
    match text.to_ascii_lowercase().as_str() {
        "inf" | "infinity" => Ok(f64::INFINITY),
        t => t.parse().map_err(|_| CliError::Input(format!("--p must be a number or inf, got {text:?}"))),
    }
}

/// The space named by `--space`, else `l_p^n` from `--p` and `--n`.
fn construct_space(args: &ConstructArgs, io: &mut Io<'_>) -> Result<NormSpec> {
    match (&args.space, &args.p, args.n) {
        (Some(path), _, _) => read_space(path, io),
        (None, Some(p), Some(n)) => Ok(NormSpec::lp(parse_exponent(p)?, n)?),
        _ => Err(CliError::Input("give --space, or both --p and --n".into())),
    }
}

/// The canonical basis when it is an Auerbach system, else an ascent.
fn system_for(space: &NormSpec, seed: u64) -> Result<AuerbachSystem> {
    match AuerbachSystem::canonical(space.clone()) {
        Ok(system) => Ok(system),
        Err(_) => Ok(auerbach_ascent(space, seed)?),
    }
}

fn construct(args: ConstructArgs, io: &mut Io<'_>) -> Result<Exit> {
    let seed = seed(args.seed, None, io)?;
    let family: NamedFamily = match args.family {
        Family::LpBasis | Family::Summing => {
            let (p, n) = match construct_space(&args, io)? {
                NormSpec::Lp { p, dim } => (p, dim),
                NormSpec::Polytope { .. } => return Err(CliError::Input("this family needs an l_p space".into())),
            };
            match (args.family, p) {
                (Family::Summing, Exponent::Infinity) => summing_family(n)?,
                (Family::Summing, _) => return Err(CliError::Input("the summing family lives in l_inf".into())),
                (_, Exponent::Infinity) => lp_basis_family(f64::INFINITY, n)?,
                (_, Exponent::Finite(p)) => lp_basis_family(p, n)?,
            }
        }
        Family::Auerbach => {
            let space = construct_space(&args, io)?;
            let system = auerbach_ascent(&space, seed)?;
            let mut family = normalize_biorthogonal(system.vectors(), system.functionals(), &space)?;
            family.provenance = format!("auerbach(seed={seed})");
            family
        }
        Family::StrictConvex => strict_convex_family(&system_for(&construct_space(&args, io)?, seed)?)?,
        Family::PlusMinus => plus_minus_family(&system_for(&construct_space(&args, io)?, seed)?)?,
        Family::RenormEquilateral => {
            let base = construct_space(&args, io)?;
            let base = match base.explicit_vertices() {
                Some(vertices) if !base.is_polytope() => NormSpec::polytope(vertices)?,
                _ => base,
            };
            renorm_equilateral_family(&base, &system_for(&base, seed)?)?.1
        }
        Family::Biorthogonal => {
            let space = construct_space(&args, io)?;
            let path = args.system.as_deref().ok_or_else(|| CliError::Input("biorthogonal needs --system".into()))?;
            let system: SystemJson = serde_json::from_str(&read_source(path, io)?)?;
            let (vectors, functionals) = system.parts()?;
            normalize_biorthogonal(&vectors, &functionals, &space)?
        }
    };
    emit(&FamilyJson::from(&family), &args.output, io)?;
    Ok(Exit::Ok)
}

fn search(args: SearchArgs, io: &mut Io<'_>) -> Result<Exit> {
    let space = read_space(&args.space, io)?;
    let mut config: ConfigJson = match &args.config {
        Some(path) => serde_json::from_str(&read_source(path, io)?)?,
        None => ConfigJson::default(),
    };
    if let Some(count) = args.count {
        config.count = count;
    }
    let seed = seed(args.seed, config.seed, io)?;
    config.seed = Some(seed);
    let core: SearchConfig = config.to_config(seed);
    core.validate()?;
    let start = Instant::now();
    let (found, report, witness, per_count) = match args.mode {
        Mode::Ka => {
            let bound = ka_lower_bound(&space, config.count, &core)?;
            let report = certify_set(&bound.witness.set)?.report;
            let per_count = bound.per_count.iter().map(|&(count, d)| CountJson { count, d }).collect();
            (bound.best_d > core.tolerance, report, bound.witness, per_count)
        }
        Mode::Antipodal => {
            let result = max_antipodal_search(&space, config.count, &core)?;
            (result.found, result.best.report, result.best.certificate, Vec::new())
        }
        Mode::Separated => {
            let set: PointSet = greedy_separated(&space, config.count, config.pool, seed)?;
            let c = certify_set(&set)?;
            (c.report.separation > core.tolerance, c.report, c.certificate, Vec::new())
        }
    };
    let wall_time = args.timing.then(|| start.elapsed().as_secs_f64());
    let mode = match args.mode {
        Mode::Ka => "ka",
        Mode::Antipodal => "antipodal",
        Mode::Separated => "separated",
    };
    let out = SearchOutput {
        mode: mode.into(),
        config,
        found,
        report: ReportJson::from(&report),
        witness: CertificateJson::from(&witness),
        per_count,
        wall_time,
    };
    emit(&out, &args.output, io)?;
    Ok(if found { Exit::Ok } else { Exit::NotCertified })
}

fn oracle(args: OracleArgs, io: &mut Io<'_>) -> Result<Exit> {
    let input = parse_set_input(&read_source(&args.set, io)?)?;
    let [upper, lower] = args.pair[..] else {
        return Err(CliError::Input("--pair takes two indices".into()));
    };
    let margin = brute_force_margin(input.set(), upper, lower, args.grid)?;
    emit(&OracleOutput { upper, lower, grid: args.grid, margin }, &args.output, io)?;
    Ok(Exit::Ok)
}

fn validate(args: ValidateArgs, io: &mut Io<'_>) -> Result<Exit> {
    let space = read_space(&args.space, io)?;
    emit(&SpaceJson::from(&space), &args.output, io)?;
    Ok(Exit::Ok)
}
