//! Command-line driver: family generation, exact/greedy dimension runs,
//! user-set checks, certified paper verification, code tables, and the
//! dimension chain report.
//!
//! Exit codes: 0 success; 1 violated expectation (theorem or census check
//! failed, strict chain broken); 2 usage or parse errors; 3 search budget
//! exceeded.

mod report;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::{json, Value};

use resolve_kit::{
    chain_check, exact_dimension, greedy_upper_bound, io, is_generator, is_independent_set,
    mixed_code, validate_tables, verify_family_theorem, Family, Graph, LandmarkSet, PaperFamily,
    ResolutionMode, ResolveError, SearchOptions, TableError, VertexId, DEFAULT_BUDGET,
};

#[derive(Parser)]
#[command(
    name = "resolve-kit",
    version,
    about = "Metric, edge metric, and mixed metric dimension solvers with certified bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a family graph as an edge list (plus a label sidecar)
    Gen(GenArgs),
    /// Compute a metric/edge/mixed dimension exactly or greedily
    Dim(DimArgs),
    /// Check whether a user-supplied vertex set generates and is independent
    CheckSet(CheckSetArgs),
    /// Certify mdim = n + 1 for a paper family over a range of n
    VerifyPaper(VerifyArgs),
    /// Emit closed-form vs oracle mixed codes for every element
    Codes(CodesArgs),
    /// Cross-validate the closed-form tables and the collision census
    ValidateTables(ValidateArgs),
    /// Compute the beta < beta_E < beta_M chain for one instance
    Chain(ChainArgs),
}

#[derive(Args)]
#[command(group = ArgGroup::new("source").required(true).args(["family", "input"]))]
struct GraphSource {
    /// Family name: prism_allied, web, prism, cycle, path, star
    #[arg(long, requires = "n")]
    family: Option<Family>,
    /// Family size parameter
    #[arg(long)]
    n: Option<usize>,
    /// Edge-list file (a .labels.json sidecar next to it is picked up)
    #[arg(long)]
    input: Option<PathBuf>,
}

impl GraphSource {
    fn load(&self) -> Result<(Graph, Value), CliError> {
        match (&self.family, &self.input) {
            (Some(family), None) => {
                let n = self.n.expect("clap enforces --n with --family");
                let g = resolve_kit::families::generate(*family, n).map_err(usage)?;
                Ok((g, json!({"family": family.to_string(), "n": n})))
            }
            (None, Some(path)) => {
                let g = io::parse_graph_file(path).map_err(usage)?;
                Ok((g, json!({"path": path.display().to_string()})))
            }
            _ => unreachable!("clap enforces exactly one source"),
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    n: usize,
    /// Write here instead of stdout (enables the label sidecar)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DimArgs {
    #[command(flatten)]
    source: GraphSource,
    #[arg(long)]
    mode: ResolutionMode,
    /// Exact search (the default)
    #[arg(long, conflicts_with = "greedy")]
    exact: bool,
    /// Greedy upper bound instead of exact search
    #[arg(long)]
    greedy: bool,
    /// Enumerate every minimal basis
    #[arg(long)]
    all_bases: bool,
    /// Candidate-subset budget
    #[arg(long, env = "RESOLVE_KIT_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Disable forced-leaf pruning in mixed mode
    #[arg(long)]
    no_pruning: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct CheckSetArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Comma-separated vertices: class labels (p1,s3) or raw ids
    #[arg(long)]
    set: String,
    #[arg(long)]
    mode: ResolutionMode,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    family: PaperFamily,
    /// Single size ("7") or inclusive range ("4..12")
    #[arg(long)]
    n: NRange,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct CodesArgs {
    #[arg(long)]
    family: PaperFamily,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    family: PaperFamily,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ChainArgs {
    #[arg(long)]
    family: PaperFamily,
    #[arg(long)]
    n: usize,
    #[arg(long, env = "RESOLVE_KIT_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Report format
    #[arg(long, default_value = "text")]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format {other:?} (expected text, json, or csv)")),
        }
    }
}

#[derive(Clone, Copy)]
struct NRange {
    lo: usize,
    hi: usize,
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.parse::<usize>().map_err(|_| format!("invalid n {t:?}"));
        match s.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (parse(lo)?, parse(hi)?);
                if lo > hi {
                    return Err(format!("empty range {s:?}"));
                }
                Ok(NRange { lo, hi })
            }
            None => {
                let n = parse(s)?;
                Ok(NRange { lo: n, hi: n })
            }
        }
    }
}

/// Error with its process exit code.
struct CliError {
    message: String,
    code: u8,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

fn usage(err: impl fmt::Display) -> CliError {
    CliError { message: err.to_string(), code: 2 }
}

fn violated(err: impl fmt::Display) -> CliError {
    CliError { message: err.to_string(), code: 1 }
}

fn from_resolve(err: ResolveError) -> CliError {
    let code = match &err {
        ResolveError::BudgetExceeded { .. } => 3,
        ResolveError::TheoremViolation { .. } | ResolveError::EvidenceFailure { .. } => 1,
        _ => 2,
    };
    CliError { message: err.to_string(), code }
}

fn from_table(err: TableError) -> CliError {
    match &err {
        TableError::CensusMismatch(_) => violated(err),
        TableError::Resolve(_) => {
            let TableError::Resolve(inner) = err else { unreachable!() };
            from_resolve(inner)
        }
        _ => usage(err),
    }
}

fn emit(out: &OutputArgs, contents: &str) -> Result<(), CliError> {
    match &out.output {
        Some(path) => std::fs::write(path, contents)
            .map_err(|e| usage(format!("failed to write {}: {e}", path.display()))),
        None => {
            print!("{contents}");
            if !contents.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn envelope_or_text(
    out: &OutputArgs,
    command: &str,
    input: Value,
    result: Value,
    text: String,
    started: Instant,
) -> Result<(), CliError> {
    match out.format {
        Format::Json => {
            let envelope = report::Envelope::new(
                command,
                input,
                result,
                started.elapsed().as_millis() as u64,
            );
            emit(out, &envelope.to_json())
        }
        Format::Text | Format::Csv => emit(out, &text),
    }
}

fn parse_vertex_set(g: &Graph, spec: &str) -> Result<LandmarkSet, CliError> {
    let mut ids = Vec::new();
    for token in spec.split(',') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        let id: VertexId = match token.parse::<VertexId>() {
            Ok(id) => id,
            Err(_) => {
                let class = token
                    .parse()
                    .map_err(|_| usage(format!("invalid vertex {token:?}")))?;
                g.id_of(class).map_err(usage)?
            }
        };
        ids.push(id);
    }
    LandmarkSet::new(ids, g).map_err(from_resolve)
}

fn run_gen(args: GenArgs) -> Result<(), CliError> {
    let g = resolve_kit::families::generate(args.family, args.n).map_err(usage)?;
    match &args.output {
        Some(path) => {
            io::write_graph_file(path, &g).map_err(usage)?;
            eprintln!(
                "wrote {} ({} vertices, {} edges)",
                path.display(),
                g.vertex_count(),
                g.edge_count()
            );
        }
        None => print!("{}", io::render_edge_list(&g)),
    }
    Ok(())
}

fn run_dim(args: DimArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let (g, input) = args.source.load()?;
    let d = g.distances().map_err(usage)?;
    if args.greedy {
        let basis = greedy_upper_bound(&g, &d, args.mode).map_err(from_resolve)?;
        let result = json!({
            "mode": args.mode,
            "upper_bound": basis.len(),
            "basis": basis.ids(),
            "basis_labels": report::basis_labels(&g, &basis),
        });
        let text = format!(
            "mode: {}\ngreedy upper bound: {}\nbasis: {}\n",
            args.mode,
            basis.len(),
            basis.ids().iter().map(|&v| g.vertex_name(v)).collect::<Vec<_>>().join(" ")
        );
        return envelope_or_text(&args.out, "dim", input, result, text, started);
    }
    let opts = SearchOptions {
        use_forced_pruning: !args.no_pruning,
        enumerate_all: args.all_bases,
        budget: args.budget,
    };
    let r = exact_dimension(&g, &d, args.mode, &opts).map_err(from_resolve)?;
    envelope_or_text(
        &args.out,
        "dim",
        input,
        report::dimension_json(&g, &r),
        report::dimension_text(&g, &r),
        started,
    )
}

fn run_check_set(args: CheckSetArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let (g, input) = args.source.load()?;
    let d = g.distances().map_err(usage)?;
    let set = parse_vertex_set(&g, &args.set)?;
    let check = is_generator(&g, &d, &set, args.mode).map_err(from_resolve)?;
    let independent = is_independent_set(&g, &set);
    let result = json!({
        "set": set.ids(),
        "set_labels": report::basis_labels(&g, &set),
        "mode": args.mode,
        "generator": check.is_generator,
        "witness": check.witness.map(|(a, b)| json!([
            {"label": g.element_name(a)},
            {"label": g.element_name(b)},
        ])),
        "independent": independent,
    });
    let mut text = format!(
        "set: {}\nmode: {}\ngenerator: {}\nindependent: {}\n",
        set.ids().iter().map(|&v| g.vertex_name(v)).collect::<Vec<_>>().join(" "),
        args.mode,
        check.is_generator,
        independent
    );
    if let Some((a, b)) = check.witness {
        text.push_str(&format!(
            "collision: {} vs {} (codes {} = {})\n",
            g.element_name(a),
            g.element_name(b),
            mixed_code(&d, a, &set),
            mixed_code(&d, b, &set),
        ));
    }
    envelope_or_text(&args.out, "check-set", input, result, text, started)
}

fn run_verify(args: VerifyArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let mut results = Vec::new();
    let mut text = String::new();
    for n in args.n.lo..=args.n.hi {
        let r = verify_family_theorem(args.family, n).map_err(from_resolve)?;
        let g = args.family.generate(n).map_err(usage)?;
        results.push(report::theorem_json(&g, &r));
        text.push_str(&report::theorem_text(&r));
    }
    let input = json!({
        "family": args.family,
        "n_lo": args.n.lo,
        "n_hi": args.n.hi,
    });
    envelope_or_text(&args.out, "verify-paper", input, json!(results), text, started)
}

fn run_codes(args: CodesArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let family = args.family;
    let n = args.n;
    let reference = resolve_kit::reference_set(family, n).map_err(from_table)?;
    let g = family.generate(n).map_err(usage)?;
    let d = g.distances().map_err(usage)?;

    let mut rows = Vec::new();
    for &class in resolve_kit::ElementClass::all_for(family) {
        for l in 1..=n as u32 {
            let fe = resolve_kit::FamilyElement::new(class, l);
            let ge = fe.to_graph_element(family, n);
            let oracle = mixed_code(&d, ge, &reference.landmarks);
            let closed = resolve_kit::closed_form_code(family, n, fe).ok();
            rows.push((fe, ge, closed, oracle));
        }
    }

    let kind = |fe: &resolve_kit::FamilyElement| {
        if fe.class.is_vertex() {
            "vertex"
        } else {
            "edge"
        }
    };
    let mut csv = String::from(
        "kind,label,cf1,cf2,cf3,cf4,cf5,oracle1,oracle2,oracle3,oracle4,oracle5,match\n",
    );
    for (fe, _, closed, oracle) in &rows {
        let cf: Vec<String> = match closed {
            Some(c) => c.entries().iter().map(|e| e.to_string()).collect(),
            None => vec![String::new(); 5],
        };
        let matched = match closed {
            Some(c) => (c == oracle).to_string(),
            None => "missing".into(),
        };
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            kind(fe),
            fe,
            cf.join(","),
            oracle.entries().iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","),
            matched
        ));
    }

    match args.out.format {
        Format::Json => {
            let result: Vec<Value> = rows
                .iter()
                .map(|(fe, _, closed, oracle)| {
                    json!({
                        "kind": kind(fe),
                        "label": fe.to_string(),
                        "closed_form": closed.as_ref().map(|c| c.entries().to_vec()),
                        "oracle": oracle.entries().to_vec(),
                        "match": closed.as_ref().map(|c| c == oracle),
                    })
                })
                .collect();
            let input = json!({"family": family, "n": n});
            envelope_or_text(&args.out, "codes", input, json!(result), csv, started)
        }
        _ => emit(&args.out, &csv),
    }
}

fn run_validate(args: ValidateArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let report = validate_tables(args.family, args.n).map_err(from_table)?;
    let input = json!({"family": args.family, "n": args.n});
    let text = report::validation_text(&report);
    envelope_or_text(
        &args.out,
        "validate-tables",
        input,
        report::validation_json(&report),
        text,
        started,
    )?;
    if !(report.census.matches && report.census.separation_ok) {
        return Err(violated(format!(
            "census check failed for {} n={}",
            args.family, args.n
        )));
    }
    Ok(())
}

fn run_chain(args: ChainArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let report = chain_check(args.family, args.n, args.budget).map_err(from_resolve)?;
    let input = json!({"family": args.family, "n": args.n});
    envelope_or_text(
        &args.out,
        "chain",
        input,
        report::chain_json(&report),
        report::chain_text(&report),
        started,
    )?;
    if !report.strict_chain_holds {
        return Err(violated(format!(
            "strict chain beta < beta_E < beta_M does not hold for {} n={} \
             (observed {} {} {})",
            report.family,
            report.n,
            report.vertex_dimension,
            report.edge_dimension,
            report.mixed_dimension
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gen(args) => run_gen(args),
        Command::Dim(args) => run_dim(args),
        Command::CheckSet(args) => run_check_set(args),
        Command::VerifyPaper(args) => run_verify(args),
        Command::Codes(args) => run_codes(args),
        Command::ValidateTables(args) => run_validate(args),
        Command::Chain(args) => run_chain(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.code)
        }
    }
}
