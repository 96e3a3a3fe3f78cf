use std::io::{self, Read, Write};
use std::process::ExitCode;

use catfield::info::Analyzer;
use catfield::io::{field_to_json, read_field, to_canonical_string, Format};
use catfield::miner::{check_theorems, mine, EnumerationBounds, MineConfig, PropertyId, SweepConfig};
use catfield::rational::{to_json_string, to_text};
use catfield::report::{analyze, reports_to_json, reports_to_text};
use catfield::{builtin, BuildOptions, Error, FixtureId, JointField, LatticeLimits};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

mod syntax;

#[derive(Parser, Debug)]
#[command(name = "catfield", version, propagate_version = true)]
/// Exact conditional structure of finite categorical random fields
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Per-site report: positivity, reduction sets, SI, MI, ES and neighbor
    Analyze(AnalyzeArgs),
    /// Run every must-hold property over one field
    Check(CheckArgs),
    /// Search enumerated fields for witnesses of a property
    Mine(MineArgs),
    /// One conditional distribution of a target site
    Query(QueryArgs),
    /// Print a built-in fixture as field JSON
    Fixtures(FixturesArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Field file (CSV or JSON); `-` reads standard input
    #[arg(long)]
    input: Option<String>,

    /// Use a built-in fixture instead of a file
    #[arg(long)]
    fixture: Option<String>,
}

#[derive(Args, Debug)]
struct InputArgs {
    #[command(flatten)]
    source: Source,

    /// Input format; guessed from the extension or contents when omitted
    #[arg(long, value_enum)]
    format: Option<FormatArg>,

    /// Drop labels with zero marginal instead of rejecting the field
    #[arg(long, default_value_t = false)]
    prune: bool,

    /// Largest site count the subset lattice may cover
    #[arg(long, default_value_t = LatticeLimits::default().max_sites)]
    max_lattice_sites: usize,
}

impl InputArgs {
    fn load(&self) -> Result<JointField, Failure> {
        if let Some(name) = &self.source.fixture {
            return Ok(builtin(name.parse::<FixtureId>()?).field);
        }
        let path = self.source.input.as_deref().unwrap_or("-");
        let text = if path == "-" {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Input(format!("cannot read standard input: {e}")))?;
            s
        } else {
            std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read `{path}`: {e}")))?
        };
        let format = match self.format {
            Some(FormatArg::Csv) => Format::Csv,
            Some(FormatArg::Json) => Format::Json,
            None => Format::from_path(path).unwrap_or_else(|| Format::sniff(&text)),
        };
        let options = BuildOptions {
            prune_unreachable: self.prune,
        };
        Ok(read_field(&text, format, options)?)
    }

    fn limits(&self) -> LatticeLimits {
        LatticeLimits {
            max_sites: self.max_lattice_sites,
            ..LatticeLimits::default()
        }
    }
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Restrict the report to these sites (repeatable)
    #[arg(long = "site", num_args = 1..)]
    sites: Vec<String>,

    /// JSON output (the default)
    #[arg(long, conflicts_with = "text")]
    json: bool,

    /// Plain-text output
    #[arg(long)]
    text: bool,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Plain-text output instead of JSON
    #[arg(long)]
    text: bool,

    /// Site-set chains examined per property
    #[arg(long, default_value_t = SweepConfig::default().chain_cap)]
    chain_cap: usize,

    /// Largest field accepted
    #[arg(long, default_value_t = SweepConfig::default().max_sites)]
    max_sites: usize,
}

#[derive(Args, Debug)]
struct MineArgs {
    /// Property name, e.g. UN_INTERSECTION_CLOSURE
    #[arg(long)]
    property: String,

    /// Largest number of sites; defaults to the property's own bounds
    #[arg(long)]
    max_sites: Option<usize>,

    /// Largest alphabet size
    #[arg(long)]
    max_alphabet: Option<usize>,

    /// Comma-separated weight grid, e.g. 0,1,2
    #[arg(long, value_delimiter = ',')]
    grid: Vec<u32>,

    /// Random fields appended after the exhaustive part
    #[arg(long, default_value_t = 0)]
    random: usize,

    /// Seed for the random part
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Skip the exhaustive part
    #[arg(long, default_value_t = false)]
    random_only: bool,

    /// Stop after this many witnesses
    #[arg(long, default_value_t = MineConfig::default().witness_cap)]
    cap: usize,
}

#[derive(Args, Debug)]
struct QueryArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Target site name
    #[arg(long)]
    target: String,

    /// Exact conditioning, e.g. "Y=1,Z=0"
    #[arg(long, default_value = "")]
    given: String,

    /// Set-valued conditioning, e.g. "Y∈{0,1}" or "Y in {0,1}"
    #[arg(long, default_value = "")]
    given_coarse: String,

    /// JSON output
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct FixturesArgs {
    /// Fixture name: TABLE1, TABLE2, UNIFORM8, COPY, CHAIN, COINS or COINS:k
    #[arg(long, required_unless_present = "list")]
    name: Option<String>,

    /// List fixture names
    #[arg(long, conflicts_with = "name")]
    list: bool,
}

enum Failure {
    Input(String),
    Library(Error),
    /// A must-hold property failed; the report was already printed.
    Violation,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

fn emit(out: &str) -> Result<(), Failure> {
    let mut stdout = io::stdout().lock();
    stdout
        .write_all(out.as_bytes())
        .and_then(|_| stdout.flush())
        .map_err(|e| Failure::Input(format!("cannot write output: {e}")))
}

fn run_analyze(args: &AnalyzeArgs) -> Result<(), Failure> {
    let field = args.input.load()?;
    let analyzer = Analyzer::with_limits(&field, args.input.limits())?;
    let sites = args
        .sites
        .iter()
        .flat_map(|s| s.split(','))
        .map(|s| field.site_index(s.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    let reports = analyze(&analyzer, &sites)?;
    if args.text {
        emit(&reports_to_text(&reports))
    } else {
        emit(&to_canonical_string(&reports_to_json(&reports)))
    }
}

fn run_check(args: &CheckArgs) -> Result<(), Failure> {
    let field = args.input.load()?;
    args.input.limits().check(&field)?;
    let config = SweepConfig {
        chain_cap: args.chain_cap,
        max_sites: args.max_sites,
        ..SweepConfig::default()
    };
    let report = check_theorems(&field, &config)?;
    if args.text {
        emit(&report.to_text(&field))?;
    } else {
        emit(&to_canonical_string(&report.to_json(&field)))?;
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn run_mine(args: &MineArgs) -> Result<(), Failure> {
    let property: PropertyId = args.property.parse()?;
    let defaults = property.default_bounds();
    let bounds = EnumerationBounds {
        max_sites: args.max_sites.unwrap_or(defaults.max_sites),
        max_alphabet: args.max_alphabet.unwrap_or(defaults.max_alphabet),
        weight_grid: if args.grid.is_empty() {
            defaults.weight_grid
        } else {
            args.grid.clone()
        },
        random_count: args.random,
        seed: args.seed,
        exhaustive: !args.random_only,
    };
    let config = MineConfig {
        witness_cap: args.cap,
        ..MineConfig::default()
    };
    let result = mine(property, &bounds, &config)?;
    let mut out = String::new();
    for w in &result.witnesses {
        out.push_str(&w.to_json().to_string());
        out.push('\n');
    }
    out.push_str(&result.summary_json().to_string());
    out.push('\n');
    emit(&out)
}

fn run_query(args: &QueryArgs) -> Result<(), Failure> {
    let field = args.input.load()?;
    let target = field.site_index(args.target.trim())?;
    let given = syntax::parse_assignment(&field, &args.given)?;
    let constraints = syntax::parse_constraints(&field, &args.given_coarse)?;
    let row = catfield::info::coarse_conditional(&field, target, &given, &constraints)?;
    let name = field.site_name(target);
    if args.json {
        let distribution = row.map(|r| {
            r.iter()
                .enumerate()
                .map(|(l, p)| json!({ "label": field.label(target, l), "p": to_json_string(p) }))
                .collect::<Vec<_>>()
        });
        emit(&to_canonical_string(&json!({ "target": name, "distribution": distribution })))
    } else {
        let line = match row {
            None => "undefined".to_string(),
            Some(r) => r
                .iter()
                .enumerate()
                .map(|(l, p)| format!("P({name}={})={}", field.label(target, l), to_text(p)))
                .collect::<Vec<_>>()
                .join(", "),
        };
        emit(&format!("{line}\n"))
    }
}

fn run_fixtures(args: &FixturesArgs) -> Result<(), Failure> {
    match &args.name {
        Some(name) => {
            let fixture = builtin(name.parse::<FixtureId>()?);
            emit(&to_canonical_string(&field_to_json(&fixture.field)))
        }
        None => {
            let names: Vec<String> = FixtureId::ALL.iter().map(|id| format!("{id}\n")).collect();
            emit(&names.concat())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let rendered = e.render().to_string();
            let line = rendered.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            eprintln!("{line}");
            return ExitCode::from(1);
        }
    };
    let result = match &cli.command {
        Command::Analyze(a) => run_analyze(a),
        Command::Check(a) => run_check(a),
        Command::Mine(a) => run_mine(a),
        Command::Query(a) => run_query(a),
        Command::Fixtures(a) => run_fixtures(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(2),
        Err(Failure::Library(e @ Error::InstanceTooLarge { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Library(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
