//! Command-line front end for the premonoid library.
//!
//! Exit codes: 0 on success, 1 when a verification or `--check` fails, 2 on
//! malformed input (with a one-line diagnostic naming the field).

mod carrier;
mod certificate;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use premonoid::caps::MAX_DEGREE_ENV;
use premonoid::oracle::{
    run_default, sweep_cd, sweep_characterizations, sweep_fix_lemma, sweep_heights, sweep_howie,
    sweep_power_monoids, sweep_predicates, sweep_quark_engine, sweep_transpositions, CayleyBfs,
    Suite, SweepReport, DEFAULT_BASES, DEFAULT_SEED,
};
use premonoid::{ElementClass, SizeCaps};

use carrier::{parse_images, read_matrix, Carrier, CarrierSpec, ElementRepr, MonoidKind, PreorderKind};
use certificate::{Certificate, Engine};

/// Malformed input: which flag was wrong and why.
#[derive(Debug)]
pub struct UsageError {
    field: String,
    message: String,
}

impl UsageError {
    pub fn new(field: impl Into<String>, message: impl fmt::Display) -> Self {
        UsageError {
            field: field.into(),
            message: message.to_string(),
        }
    }
}

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(UsageError),
    /// A verification ran and failed.
    Failed(String),
}

impl From<UsageError> for CliError {
    fn from(e: UsageError) -> Self {
        CliError::Usage(e)
    }
}

#[derive(Parser)]
#[command(name = "premonoid", version, about = "Factorization in premonoids")]
#[command(after_help = format!(
    "Set {MAX_DEGREE_ENV} to change the largest degree searched by the oracle (default 6)."
))]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor one element and print a certificate.
    Factor(FactorArgs),
    /// List the units, quarks, irreducibles or atoms of a finite premonoid.
    Enumerate(EnumerateArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Shortest factorization over a generating set, by breadth-first search.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct CarrierArgs {
    #[arg(long, value_enum)]
    monoid: MonoidKind,
    /// Degree of T_n / S_n (inferred from --images when omitted).
    #[arg(long)]
    n: Option<usize>,
    /// Base of a reduced power monoid: z<k>, z2xz2 or s3.
    #[arg(long)]
    base: Option<String>,
    /// Cayley table file: size on the first line, then rows of 0-based indices.
    #[arg(long)]
    table: Option<PathBuf>,
}

#[derive(Args)]
struct ElementArgs {
    /// 1-based images, e.g. 2,3,2.
    #[arg(long)]
    images: Option<String>,
    /// 0-based carrier index (power and table-file monoids).
    #[arg(long)]
    element: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct FactorArgs {
    #[command(flatten)]
    carrier: CarrierArgs,
    #[command(flatten)]
    element: ElementArgs,
    /// Matrix JSON file (orthogonal monoid).
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long, value_enum)]
    engine: Option<Engine>,
    #[arg(long, value_enum)]
    preorder: Option<PreorderKind>,
    /// Degree for the generic engines (2 or 3).
    #[arg(long)]
    s: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Re-parse the emitted certificate and verify it independently.
    #[arg(long)]
    check: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Units,
    Quarks,
    Irreducibles,
    Atoms,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    carrier: CarrierArgs,
    #[arg(long, value_enum)]
    preorder: Option<PreorderKind>,
    #[arg(long, value_enum)]
    class: ClassArg,
    #[arg(long, default_value_t = 2)]
    s: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// howie, transpositions, cd, characterizations, fix-lemma, heights,
    /// power-monoids, quark-engine, predicates or all.
    #[arg(long)]
    suite: String,
    #[arg(long)]
    min_n: Option<usize>,
    #[arg(long)]
    max_n: Option<usize>,
    /// Comma-separated dimensions for the cd suite.
    #[arg(long)]
    dims: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated base monoids for the power-monoids suite.
    #[arg(long)]
    bases: Option<String>,
    /// Degree for the quark-engine suite.
    #[arg(long)]
    s: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    carrier: CarrierArgs,
    #[command(flatten)]
    element: ElementArgs,
    /// quasi-identities, transpositions, or comma-separated 0-based indices.
    #[arg(long)]
    generators: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = SizeCaps::from_env()
        .map_err(|e| CliError::Usage(UsageError::new(MAX_DEGREE_ENV, e)))
        .and_then(|caps| run(cli.command, &caps, &mut out));
    print!("{out}");
    let _ = std::io::stdout().flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, caps: &SizeCaps, out: &mut String) -> Result<(), CliError> {
    match command {
        Command::Factor(args) => factor(args, caps, out),
        Command::Enumerate(args) => enumerate(args, caps, out),
        Command::Verify(args) => verify(args, caps, out),
        Command::Oracle(args) => oracle(args, caps, out),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

fn is_transformation_kind(m: MonoidKind) -> bool {
    matches!(m, MonoidKind::Tn | MonoidKind::Sn | MonoidKind::SingularTn)
}

/// Rejects flags that do not apply to the chosen monoid and fills in `n`
/// from `--images`.
fn carrier_spec(c: &CarrierArgs, e: &ElementArgs, matrix: Option<&PathBuf>) -> Result<CarrierSpec, UsageError> {
    let m = c.monoid;
    let reject = |set: bool, field: &str, what: &str| {
        if set {
            Err(UsageError::new(field, format!("not valid with --monoid {what}")))
        } else {
            Ok(())
        }
    };
    let name = m.to_possible_value().expect("named").get_name().to_string();
    reject(c.base.is_some() && m != MonoidKind::Power, "--base", &name)?;
    reject(c.table.is_some() && m != MonoidKind::TableFile, "--table", &name)?;
    reject(matrix.is_some() && m != MonoidKind::Orthogonal, "--matrix", &name)?;
    reject(e.images.is_some() && !is_transformation_kind(m), "--images", &name)?;
    reject(
        e.element.is_some() && !matches!(m, MonoidKind::Power | MonoidKind::TableFile),
        "--element",
        &name,
    )?;
    reject(c.n.is_some() && !is_transformation_kind(m), "--n", &name)?;
    let mut n = c.n;
    if let (None, Some(images)) = (n, &e.images) {
        n = Some(parse_images(images, None)?.degree());
    }
    Ok(CarrierSpec {
        monoid: m,
        n,
        base: c.base.clone(),
        table: c.table.clone(),
    })
}

/// The element named by `--images` or `--element` in a finite carrier.
fn select_element(carrier: &Carrier, spec: &CarrierSpec, e: &ElementArgs) -> Result<usize, UsageError> {
    match carrier {
        Carrier::Transformations(m) => {
            let text = e
                .images
                .as_deref()
                .ok_or_else(|| UsageError::new("--images", "required for this monoid"))?;
            let t = parse_images(text, spec.n)?;
            m.index_of(&t)
                .ok_or_else(|| UsageError::new("--images", format!("{t} is not in the carrier")))
        }
        _ => {
            let x = e
                .element
                .ok_or_else(|| UsageError::new("--element", "required for this monoid"))?;
            let size = carrier.monoid().size();
            if x >= size {
                return Err(UsageError::new("--element", format!("index {x} out of range 0..{size}")));
            }
            Ok(x)
        }
    }
}

fn factor(args: FactorArgs, caps: &SizeCaps, out: &mut String) -> Result<(), CliError> {
    let spec = carrier_spec(&args.carrier, &args.element, args.matrix.as_ref())?;
    let engine = args.engine.unwrap_or_else(|| Engine::default_for(spec.monoid));
    let generic = matches!(engine, Engine::Irreducibles | Engine::Quarks);
    if !generic && (args.preorder.is_some() || args.s.is_some()) {
        let field = if args.preorder.is_some() { "--preorder" } else { "--s" };
        return Err(UsageError::new(field, "only used by the irreducibles and quarks engines").into());
    }
    if args.format == Format::Csv {
        return Err(UsageError::new("--format", "factor supports json and text").into());
    }

    let certificate = match (engine, spec.monoid) {
        (Engine::Howie, MonoidKind::Tn | MonoidKind::SingularTn) => {
            let t = parse_images(required(&args.element.images, "--images")?, spec.n)?;
            certificate::howie(spec, &t)?
        }
        (Engine::Transpositions, MonoidKind::Sn | MonoidKind::Tn) => {
            let t = parse_images(required(&args.element.images, "--images")?, spec.n)?;
            certificate::transpositions(spec, t)?
        }
        (Engine::Reflections, MonoidKind::Orthogonal) => {
            let path = args
                .matrix
                .as_ref()
                .ok_or_else(|| UsageError::new("--matrix", "required for --monoid orthogonal"))?;
            let m = read_matrix(path)?;
            let spec = CarrierSpec {
                n: Some(m.dim()),
                ..spec
            };
            certificate::reflections(spec, &m)?
        }
        (Engine::Irreducibles | Engine::Quarks, m) if m != MonoidKind::Orthogonal => {
            let carrier = spec.build(caps)?;
            let x = select_element(&carrier, &spec, &args.element)?;
            let preorder = args.preorder.unwrap_or(default_preorder(m));
            let s = args.s.unwrap_or(2);
            let pm = carrier.premonoid(preorder, caps)?;
            let result = if engine == Engine::Irreducibles {
                pm.factor_into_irreducibles(x, s)
            } else {
                pm.factor_into_quarks_bounded(x, s)
            };
            let f = result.map_err(|e| match e {
                premonoid::Error::DegreeOutOfRange(_) => CliError::Usage(UsageError::new("--s", e)),
                premonoid::Error::NotANonUnit(_) => {
                    let field = if is_transformation_kind(m) { "--images" } else { "--element" };
                    CliError::Usage(UsageError::new(field, format!("{} is a unit", carrier.repr(x))))
                }
                other => CliError::Failed(other.to_string()),
            })?;
            let mut c = Certificate::new(spec, engine, f, |&y| carrier.repr(y));
            c.preorder = Some(preorder);
            c.s = Some(s);
            c
        }
        (engine, m) => {
            let e = engine.to_possible_value().expect("named").get_name().to_string();
            let m = m.to_possible_value().expect("named").get_name().to_string();
            return Err(UsageError::new("--engine", format!("{e} does not apply to --monoid {m}")).into());
        }
    };

    let json = to_json(&certificate);
    if args.check {
        certificate::check(&json, caps)?;
        eprintln!("check: certificate re-verified");
    }
    out.push_str(&match args.format {
        Format::Text => certificate.to_text(),
        _ => json,
    });
    Ok(())
}

fn required<'a>(value: &'a Option<String>, field: &str) -> Result<&'a str, UsageError> {
    value
        .as_deref()
        .ok_or_else(|| UsageError::new(field, "required for this engine"))
}

fn default_preorder(m: MonoidKind) -> PreorderKind {
    if is_transformation_kind(m) {
        PreorderKind::Rfix
    } else {
        PreorderKind::Div
    }
}

#[derive(Serialize)]
struct EnumerateOutput {
    #[serde(flatten)]
    carrier: CarrierSpec,
    preorder: PreorderKind,
    class: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    s: Option<usize>,
    count: usize,
    elements: Vec<ElementRepr>,
}

fn enumerate(args: EnumerateArgs, caps: &SizeCaps, out: &mut String) -> Result<(), CliError> {
    let none = ElementArgs {
        images: None,
        element: None,
    };
    let spec = carrier_spec(&args.carrier, &none, None)?;
    if spec.monoid == MonoidKind::Orthogonal {
        return Err(UsageError::new("--monoid", "enumerate needs a finite carrier").into());
    }
    let carrier = spec.build(caps)?;
    let preorder = args.preorder.unwrap_or(default_preorder(spec.monoid));
    let pm = carrier.premonoid(preorder, caps)?;
    let (class, name) = match args.class {
        ClassArg::Units => (ElementClass::Units, "units"),
        ClassArg::Quarks => (ElementClass::Quarks, "quarks"),
        ClassArg::Irreducibles => (ElementClass::Irreducibles, "irreducibles"),
        ClassArg::Atoms => (ElementClass::Atoms, "atoms"),
    };
    let found = pm
        .enumerate(class, args.s)
        .map_err(|e| UsageError::new("--s", e))?;
    let elements: Vec<ElementRepr> = found.iter().map(|&x| carrier.repr(x)).collect();
    match args.format {
        Format::Json => out.push_str(&to_json(&EnumerateOutput {
            carrier: spec,
            preorder,
            class: name,
            s: matches!(args.class, ClassArg::Irreducibles).then_some(args.s),
            count: elements.len(),
            elements,
        })),
        Format::Text => {
            out.push_str(&format!("{} {name}\n", elements.len()));
            for e in &elements {
                out.push_str(&format!("{e}\n"));
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["class", "element"]).expect("in-memory write");
            for e in &elements {
                w.write_record([name, &e.to_string()]).expect("in-memory write");
            }
            out.push_str(&String::from_utf8(w.into_inner().expect("flush")).expect("utf-8"));
        }
    }
    Ok(())
}

fn parse_list<T: std::str::FromStr>(text: &str, field: &str) -> Result<Vec<T>, UsageError> {
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse()
                .map_err(|_| UsageError::new(field, format!("bad list entry {tok:?}")))
        })
        .collect()
}

fn run_suite(suite: Suite, args: &VerifyArgs, caps: &SizeCaps) -> Result<SweepReport, UsageError> {
    let range = |lo: usize, hi: usize| args.min_n.unwrap_or(lo)..=args.max_n.unwrap_or(hi);
    let field = if args.max_n.is_some() { "--max-n" } else { "--min-n" };
    let result = match suite {
        Suite::Howie => sweep_howie(range(2, 6), caps),
        Suite::Transpositions => sweep_transpositions(range(2, 7), caps),
        Suite::Characterizations => sweep_characterizations(range(2, 5), caps),
        Suite::FixLemma => sweep_fix_lemma(range(2, 4), caps),
        Suite::Heights => sweep_heights(range(2, 5), caps),
        Suite::QuarkEngine => {
            let s = args.s.unwrap_or(3);
            if !(premonoid::premonoid::MIN_DEGREE..=premonoid::premonoid::MAX_DEGREE).contains(&s) {
                return Err(UsageError::new("--s", premonoid::Error::DegreeOutOfRange(s)));
            }
            sweep_quark_engine(range(3, 4), s, caps)
        }
        Suite::Predicates => sweep_predicates(caps),
        Suite::Cd => {
            let dims = match &args.dims {
                Some(d) => parse_list(d, "--dims")?,
                None => vec![2, 3, 4, 5],
            };
            return sweep_cd(&dims, args.trials.unwrap_or(100), args.seed.unwrap_or(DEFAULT_SEED))
                .map_err(|e| UsageError::new("--dims", e));
        }
        Suite::PowerMonoids => {
            let bases: Vec<String> = match &args.bases {
                Some(b) => parse_list(b, "--bases")?,
                None => DEFAULT_BASES.iter().map(|s| s.to_string()).collect(),
            };
            let refs: Vec<&str> = bases.iter().map(String::as_str).collect();
            return sweep_power_monoids(&refs, caps).map_err(|e| UsageError::new("--bases", e));
        }
    };
    result.map_err(|e| UsageError::new(field, e))
}

fn verify(args: VerifyArgs, caps: &SizeCaps, out: &mut String) -> Result<(), CliError> {
    let suites: Vec<Suite> = if args.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![args.suite.parse().map_err(|e| UsageError::new("--suite", e))?]
    };
    let defaults = args.min_n.is_none()
        && args.max_n.is_none()
        && args.dims.is_none()
        && args.trials.is_none()
        && args.seed.is_none()
        && args.bases.is_none()
        && args.s.is_none();
    let mut reports = Vec::new();
    for suite in suites {
        let report = if defaults {
            run_default(suite, caps).map_err(|e| UsageError::new("--suite", e))?
        } else {
            run_suite(suite, &args, caps)?
        };
        eprintln!(
            "{}: {} checked, {} failures, {:.2?}",
            report.suite,
            report.checked,
            report.failures.len(),
            report.wall_time
        );
        reports.push(report);
    }

    match args.format {
        Format::Json if reports.len() == 1 => out.push_str(&to_json(&reports[0])),
        Format::Json => out.push_str(&to_json(&reports)),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &reports {
                for row in &r.rows {
                    w.serialize(row).expect("in-memory write");
                }
            }
            out.push_str(&String::from_utf8(w.into_inner().expect("flush")).expect("utf-8"));
        }
        Format::Text => {
            for r in &reports {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                out.push_str(&format!("{status} {} ({} checked, {} failures)\n", r.suite, r.checked, r.failures.len()));
                if let Some(gap) = r.max_gap {
                    out.push_str(&format!("  max bound - oracle gap: {gap}\n"));
                }
                for note in &r.notes {
                    out.push_str(&format!("  {note}\n"));
                }
                for f in &r.failures {
                    out.push_str(&format!("  {}: expected {}, got {}\n", f.element, f.expected, f.got));
                }
            }
        }
    }

    let failed: Vec<String> = reports.iter().filter(|r| !r.passed()).map(|r| r.suite.to_string()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("suites with failures: {}", failed.join(", "))))
    }
}

#[derive(Serialize)]
struct OracleOutput {
    #[serde(flatten)]
    carrier: CarrierSpec,
    generators: Vec<ElementRepr>,
    target: ElementRepr,
    min_length: Option<usize>,
    witness: Option<Vec<ElementRepr>>,
}

fn oracle(args: OracleArgs, caps: &SizeCaps, out: &mut String) -> Result<(), CliError> {
    let spec = carrier_spec(&args.carrier, &args.element, None)?;
    if spec.monoid == MonoidKind::Orthogonal {
        return Err(UsageError::new("--monoid", "the oracle needs a finite carrier").into());
    }
    if is_transformation_kind(spec.monoid) {
        let n = spec.n.ok_or_else(|| UsageError::new("--n", "required for this monoid"))?;
        if n > caps.oracle_degree {
            return Err(UsageError::new(
                "--n",
                format!("degree {n} exceeds the oracle cap {} (set {MAX_DEGREE_ENV})", caps.oracle_degree),
            )
            .into());
        }
    }
    let carrier = spec.build(caps)?;
    let target = select_element(&carrier, &spec, &args.element)?;
    let m = carrier.monoid();

    let named = args.generators.as_deref().or(match spec.monoid {
        MonoidKind::Tn | MonoidKind::SingularTn => Some("quasi-identities"),
        MonoidKind::Sn => Some("transpositions"),
        _ => None,
    });
    let generators: Vec<usize> = match (named, &carrier) {
        (None, _) => return Err(UsageError::new("--generators", "required for this monoid").into()),
        (Some("quasi-identities"), Carrier::Transformations(t)) => {
            (0..m.size()).filter(|&i| t.element(i).is_quasi_identity()).collect()
        }
        (Some("transpositions"), Carrier::Transformations(t)) => (0..m.size())
            .filter(|&i| t.permutation(i).is_some_and(|p| p.is_transposition()))
            .collect(),
        (Some(list), _) => {
            let gens: Vec<usize> = parse_list(list, "--generators")?;
            if let Some(&g) = gens.iter().find(|&&g| g >= m.size()) {
                return Err(UsageError::new("--generators", format!("index {g} out of range")).into());
            }
            gens
        }
    };

    let bfs = CayleyBfs::run(m, &generators);
    let result = bfs.result(target);
    let output = OracleOutput {
        carrier: spec,
        generators: generators.iter().map(|&g| carrier.repr(g)).collect(),
        target: carrier.repr(target),
        min_length: result.min_length,
        witness: result
            .witness
            .as_ref()
            .map(|w| w.iter().map(|&g| carrier.repr(g)).collect()),
    };
    match args.format {
        Format::Text => {
            let length = output.min_length.map_or("unreachable".to_string(), |l| l.to_string());
            out.push_str(&format!("target     {}\nmin_length {length}\n", output.target));
            if let Some(w) = &output.witness {
                let parts: Vec<String> = w.iter().map(|e| e.to_string()).collect();
                out.push_str(&format!("witness    {}\n", parts.join(" ")));
            }
        }
        Format::Json => out.push_str(&to_json(&output)),
        Format::Csv => return Err(UsageError::new("--format", "oracle supports json and text").into()),
    }
    Ok(())
}
