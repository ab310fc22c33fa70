//! Command-line surface over the verification library: catalog queries,
//! divisor enumeration with reference diffing, prime graphs, refutation
//! runs, and claim-ledger replay.
//!
//! Exit codes separate the failure modes so a reproduction pipeline can
//! gate on each stage: 0 success, 2 usage or malformed input, 3 reference
//! diff found discrepancies, 4 refutation left survivors or unresolved
//! candidates, 5 claim replay failed.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gkcheck::catalog::{load_sporadic_data, SporadicData};
use gkcheck::enumerate::{
    diff_against_reference, parse_reference_table, render_table, simple_divisors, DiffReport,
    TableFormat,
};
use gkcheck::filters::{
    parse_claims, refute_frobenius, replay_claims, shipped_claims_text, verify_characterization,
    ClaimOutcome, FrobeniusShape,
};
use gkcheck::graph::{build_graph, order_components, PrimeGraph};
use gkcheck::tables::{reference_table_text, TABLE_COUNT};
use gkcheck::{FactoredInteger, GroupId};

const EXIT_USAGE: u8 = 2;
const EXIT_DIFF: u8 = 3;
const EXIT_REFUTE: u8 = 4;
const EXIT_CLAIMS: u8 = 5;

#[derive(Parser)]
#[command(name = "gkcheck", version, about = "Exact arithmetic checks on finite simple groups")]
struct Cli {
    /// Directory with sporadic.tsv, tables/, and claims.jsonl; replaces the
    /// embedded data set.
    #[arg(long, global = true, env = "GK_DATA_DIR", value_name = "DIR")]
    data_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the factored order of a group.
    Order(OrderArgs),
    /// List the non-abelian simple groups whose orders divide a target.
    Divisors(DivisorsArgs),
    /// Print the prime graph of a group or of an explicit element-order
    /// spectrum.
    Graph(GraphArgs),
    /// Run the elimination filters against a group's order.
    Refute(RefuteArgs),
    /// Recompute every record of a claim ledger.
    Replay(ReplayArgs),
}

#[derive(Args)]
struct OrderArgs {
    /// Group name, e.g. M11, A7, L2(1024), Sz(8), 2F4(2)'.
    group: String,
    #[arg(long, value_enum, default_value_t = PlainFormat::Text)]
    format: PlainFormat,
}

#[derive(Args)]
struct DivisorsArgs {
    /// Target as a decimal or factored integer, e.g. 60 or 2^4*3^2*5*11.
    #[arg(value_name = "N", required_unless_present = "group", conflicts_with = "group")]
    target: Option<String>,
    /// Use the named group's order as the target.
    #[arg(long)]
    group: Option<String>,
    #[arg(long, value_enum, default_value_t = TableFormatArg::Md)]
    format: TableFormatArg,
    /// Keep only hits outside the order-bounded reference list.
    #[arg(long)]
    exceptions_only: bool,
    /// Order cap for --exceptions-only, written like 1e54 or 10^54.
    #[arg(long, default_value = "1e54")]
    bound: String,
    /// Diff against a reference table: a file path or a built-in table
    /// number (1-26). Exit code 3 when the diff is not clean.
    #[arg(long, value_name = "REF")]
    diff: Option<String>,
}

#[derive(Args)]
struct GraphArgs {
    /// Sporadic group whose shipped spectrum is used.
    #[arg(long, required_unless_present = "spectrum_file", conflicts_with = "spectrum_file")]
    group: Option<String>,
    /// File of whitespace-separated element orders; # starts a comment.
    #[arg(long, value_name = "FILE")]
    spectrum_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = GraphFormat::Text)]
    format: GraphFormat,
}

#[derive(Args)]
struct RefuteArgs {
    /// Group whose order is attacked.
    #[arg(long)]
    group: String,
    #[arg(long, value_enum, default_value_t = RefuteMode::All)]
    mode: RefuteMode,
    #[arg(long, value_enum, default_value_t = PlainFormat::Text)]
    format: PlainFormat,
}

#[derive(Args)]
struct ReplayArgs {
    /// Ledger file; defaults to claims.jsonl in the data directory, or the
    /// embedded ledger.
    #[arg(value_name = "LEDGER")]
    path: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = PlainFormat::Text)]
    format: PlainFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PlainFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormatArg {
    Md,
    Tsv,
    Json,
}

impl From<TableFormatArg> for TableFormat {
    fn from(f: TableFormatArg) -> TableFormat {
        match f {
            TableFormatArg::Md => TableFormat::Markdown,
            TableFormatArg::Tsv => TableFormat::Tsv,
            TableFormatArg::Json => TableFormat::Json,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Text,
    Dot,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RefuteMode {
    Frobenius,
    Candidates,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let data = DataSource {
        dir: cli.data_dir.clone(),
    };
    let result = match cli.command {
        Command::Order(args) => cmd_order(&args),
        Command::Divisors(args) => cmd_divisors(&args, &data),
        Command::Graph(args) => cmd_graph(&args, &data),
        Command::Refute(args) => cmd_refute(&args),
        Command::Replay(args) => cmd_replay(&args, &data),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

/// Where data files come from: an explicit directory, or the copies
/// embedded in the library.
struct DataSource {
    dir: Option<PathBuf>,
}

impl DataSource {
    fn sporadic_data(&self) -> Result<SporadicDataRef, String> {
        match &self.dir {
            None => Ok(SporadicDataRef::Builtin),
            Some(dir) => {
                let path = dir.join("sporadic.tsv");
                let data = load_sporadic_data(&path)
                    .map_err(|e| format!("{}: {e}", path.display()))?;
                Ok(SporadicDataRef::Loaded(data))
            }
        }
    }

    fn reference_table(&self, n: usize) -> Result<String, String> {
        match &self.dir {
            None => Ok(reference_table_text(n).to_string()),
            Some(dir) => {
                let path = dir.join("tables").join(format!("table{n:02}.tsv"));
                std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))
            }
        }
    }

    fn default_ledger(&self) -> Result<String, String> {
        match &self.dir {
            None => Ok(shipped_claims_text().to_string()),
            Some(dir) => {
                let path = dir.join("claims.jsonl");
                std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))
            }
        }
    }
}

enum SporadicDataRef {
    Builtin,
    Loaded(SporadicData),
}

impl SporadicDataRef {
    fn get(&self) -> &SporadicData {
        match self {
            SporadicDataRef::Builtin => SporadicData::builtin(),
            SporadicDataRef::Loaded(data) => data,
        }
    }
}

fn parse_group(name: &str) -> Result<GroupId, String> {
    name.parse::<GroupId>()
        .map_err(|e| format!("unknown group {name:?}: {e}"))
}

/// Decimal or factored integer strictly greater than 1.
fn parse_target(text: &str) -> Result<FactoredInteger, String> {
    let parsed = if text.chars().all(|c| c.is_ascii_digit()) {
        let v: u128 = text
            .parse()
            .map_err(|_| format!("target {text:?} does not fit in 128 bits"))?;
        if v < 2 {
            return Err(format!("target must exceed 1, got {v}"));
        }
        FactoredInteger::factor(v)
    } else {
        text.parse::<FactoredInteger>()
            .map_err(|e| format!("target {text:?}: {e}"))?
    };
    Ok(parsed)
}

fn cmd_order(args: &OrderArgs) -> Result<u8, String> {
    let group = parse_group(&args.group)?;
    let order = group.order();
    match args.format {
        PlainFormat::Text => println!("{order}"),
        PlainFormat::Json => println!(
            "{}",
            serde_json::json!({
                "group": group.to_string(),
                "order": order.to_string(),
                "out": group.out_order().to_string(),
            })
        ),
    }
    Ok(0)
}

/// Exponent of a bound written `1e54`, `10^54`, or plain `54`.
fn parse_bound(text: &str) -> Result<u64, String> {
    let tail = text
        .strip_prefix("1e")
        .or_else(|| text.strip_prefix("1E"))
        .or_else(|| text.strip_prefix("10^"))
        .unwrap_or(text);
    tail.parse()
        .map_err(|_| format!("bound {text:?} is not of the form 1e<exp>"))
}

fn cmd_divisors(args: &DivisorsArgs, data: &DataSource) -> Result<u8, String> {
    let target = match (&args.target, &args.group) {
        (Some(text), None) => parse_target(text)?,
        (None, Some(name)) => parse_group(name)?.order(),
        _ => unreachable!("clap enforces exactly one target"),
    };
    let mut hits = simple_divisors(&target);

    if let Some(reference) = &args.diff {
        let text = resolve_reference(reference, data)?;
        let rows = parse_reference_table(&text).map_err(|e| e.to_string())?;
        let report = diff_against_reference(&hits, &rows);
        print_diff(&report, args.format);
        return Ok(if report.is_clean() { 0 } else { EXIT_DIFF });
    }

    if args.exceptions_only {
        let exp = parse_bound(&args.bound)?;
        hits.retain(|hit| {
            !hit.covered_by_atlas_list
                && hit.order.compare_to_power_of_ten(exp) == std::cmp::Ordering::Less
        });
    }
    print!("{}", render_table(&hits, args.format.into()));
    Ok(0)
}

/// A reference is a file path or the number of a built-in table.
fn resolve_reference(reference: &str, data: &DataSource) -> Result<String, String> {
    if let Ok(n) = reference.parse::<usize>() {
        if (1..=TABLE_COUNT).contains(&n) {
            return data.reference_table(n);
        }
        return Err(format!(
            "table number {n} out of range 1..={TABLE_COUNT}"
        ));
    }
    std::fs::read_to_string(Path::new(reference)).map_err(|e| format!("{reference}: {e}"))
}

fn print_diff(report: &DiffReport, format: TableFormatArg) {
    match format {
        TableFormatArg::Json => {
            let missing: Vec<_> = report
                .missing_from_reference
                .iter()
                .map(|hit| {
                    serde_json::json!({
                        "group": hit.group.to_string(),
                        "order": hit.order.to_string(),
                    })
                })
                .collect();
            let extra: Vec<_> = report
                .extra_in_reference
                .iter()
                .map(|row| {
                    serde_json::json!({
                        "name": row.name,
                        "order": row.order.to_string(),
                    })
                })
                .collect();
            let mismatches: Vec<_> = report
                .value_mismatches
                .iter()
                .map(|m| {
                    serde_json::json!({
                        "group": m.group.to_string(),
                        "field": m.field,
                        "computed": m.computed.to_string(),
                        "reference": m.reference.to_string(),
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::json!({
                    "clean": report.is_clean(),
                    "missing_from_reference": missing,
                    "extra_in_reference": extra,
                    "value_mismatches": mismatches,
                })
            );
        }
        _ => {
            for hit in &report.missing_from_reference {
                println!("missing from reference: {} ({})", hit.group, hit.order);
            }
            for row in &report.extra_in_reference {
                println!("extra in reference: {} ({})", row.name, row.order);
            }
            for m in &report.value_mismatches {
                println!(
                    "value mismatch: {} {}: computed {}, reference {}",
                    m.group, m.field, m.computed, m.reference
                );
            }
            if report.is_clean() {
                println!("reference matches recomputation");
            } else {
                println!(
                    "diff: {} missing, {} extra, {} value mismatches",
                    report.missing_from_reference.len(),
                    report.extra_in_reference.len(),
                    report.value_mismatches.len()
                );
            }
        }
    }
}

fn cmd_graph(args: &GraphArgs, data: &DataSource) -> Result<u8, String> {
    let (title, order, spectrum): (String, FactoredInteger, Vec<u64>) = match &args.group {
        Some(name) => {
            let group = parse_group(name)?;
            let GroupId::Sporadic(s) = group.canonical() else {
                return Err(format!(
                    "no spectrum shipped for {group}; use --spectrum-file"
                ));
            };
            let sporadic_data = data.sporadic_data()?;
            let record = sporadic_data.get().record(s);
            (group.to_string(), record.order.clone(), record.spectrum.clone())
        }
        None => {
            let path = args.spectrum_file.as_ref().expect("clap enforces source");
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("{}: {e}", path.display()))?;
            let mut spectrum = Vec::new();
            for line in text.lines() {
                let line = line.split('#').next().unwrap_or("");
                for token in line.split_whitespace() {
                    let m: u64 = token
                        .parse()
                        .map_err(|_| format!("bad element order {token:?}"))?;
                    spectrum.push(m);
                }
            }
            let order = spectrum_lcm(&spectrum)?;
            let title = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "spectrum".to_string());
            (title, order, spectrum)
        }
    };

    let graph = build_graph(&order, &spectrum).map_err(|e| e.to_string())?;
    let parts = order_components(&order, &graph).expect("graph was built from this order");
    match args.format {
        GraphFormat::Text => {
            println!("t={}; {}", graph.component_count(), components_brackets(&graph));
            let rendered: Vec<String> = parts.iter().map(|f| f.to_string()).collect();
            println!("order components: {}", rendered.join(", "));
        }
        GraphFormat::Dot => print!("{}", graph.dot(&title)),
        GraphFormat::Json => {
            let components: Vec<Vec<u64>> = graph
                .components()
                .iter()
                .map(|c| c.iter().copied().collect())
                .collect();
            let rendered: Vec<String> = parts.iter().map(|f| f.to_string()).collect();
            println!(
                "{}",
                serde_json::json!({
                    "t": graph.component_count(),
                    "components": components,
                    "order_components": rendered,
                    "edges": graph.edges().collect::<Vec<_>>(),
                })
            );
        }
    }
    Ok(0)
}

/// Least common multiple of the spectrum entries, factored. This is the
/// smallest order consistent with the element orders.
fn spectrum_lcm(spectrum: &[u64]) -> Result<FactoredInteger, String> {
    if spectrum.is_empty() {
        return Err("spectrum file contains no element orders".to_string());
    }
    let mut exps: BTreeMap<u128, u64> = BTreeMap::new();
    for &m in spectrum {
        if m == 0 {
            return Err("element orders must be positive".to_string());
        }
        if m == 1 {
            continue;
        }
        for (p, e) in FactoredInteger::factor(m as u128).prime_powers() {
            let slot = exps.entry(p).or_insert(0);
            *slot = (*slot).max(e);
        }
    }
    if exps.is_empty() {
        return Err("spectrum must contain an order greater than 1".to_string());
    }
    Ok(FactoredInteger::from_prime_powers(exps).expect("factor output is valid"))
}

fn components_brackets(graph: &PrimeGraph) -> String {
    let mut out = String::new();
    for comp in graph.components() {
        let primes: Vec<String> = comp.iter().map(|p| p.to_string()).collect();
        out.push_str(&format!("[{}]", primes.join(",")));
    }
    out
}

fn cmd_refute(args: &RefuteArgs) -> Result<u8, String> {
    let group = parse_group(&args.group)?;
    let order = group.order();
    let mut ok = true;
    let mut json = serde_json::Map::new();

    if matches!(args.mode, RefuteMode::Frobenius | RefuteMode::All) {
        let report = refute_frobenius(&order).map_err(|e| e.to_string())?;
        ok &= report.all_refuted();
        match args.format {
            PlainFormat::Text => {
                println!(
                    "frobenius: {} shapes eliminated, {} survivors",
                    report.eliminations.len(),
                    report.survivors.len()
                );
                for shape in &report.survivors {
                    match shape {
                        FrobeniusShape::Frobenius { kernel, complement } => {
                            println!("  survivor: frobenius K={kernel} H={complement}");
                        }
                        FrobeniusShape::TwoFrobenius { d, e, f } => {
                            println!("  survivor: 2-frobenius D={d} E={e} F={f}");
                        }
                    }
                }
            }
            PlainFormat::Json => {
                let survivors: Vec<_> = report
                    .survivors
                    .iter()
                    .map(|shape| match shape {
                        FrobeniusShape::Frobenius { kernel, complement } => serde_json::json!({
                            "shape": "frobenius",
                            "kernel": kernel.to_string(),
                            "complement": complement.to_string(),
                        }),
                        FrobeniusShape::TwoFrobenius { d, e, f } => serde_json::json!({
                            "shape": "2-frobenius",
                            "d": d.to_string(),
                            "e": e.to_string(),
                            "f": f.to_string(),
                        }),
                    })
                    .collect();
                json.insert(
                    "frobenius".to_string(),
                    serde_json::json!({
                        "eliminated": report.eliminations.len(),
                        "survivors": survivors,
                    }),
                );
            }
        }
    }

    if matches!(args.mode, RefuteMode::Candidates | RefuteMode::All) {
        let report = verify_characterization(&group);
        ok &= report.is_exact();
        match args.format {
            PlainFormat::Text => {
                println!(
                    "candidates: {} confirmed, {} refuted, {} unresolved",
                    report.confirmed.len(),
                    report.refuted.len(),
                    report.unresolved.len()
                );
                for g in &report.confirmed {
                    println!("  confirmed: {g}");
                }
                for (g, cases) in &report.refuted {
                    println!("  refuted: {g} ({} cases)", cases.len());
                }
                for (g, stuck) in &report.unresolved {
                    let ds: Vec<String> = stuck.iter().map(|d| d.to_string()).collect();
                    println!("  unresolved: {g} (stuck at d={})", ds.join(","));
                }
            }
            PlainFormat::Json => {
                let refuted: Vec<_> = report
                    .refuted
                    .iter()
                    .map(|(g, cases)| {
                        serde_json::json!({
                            "group": g.to_string(),
                            "cases": cases.len(),
                        })
                    })
                    .collect();
                let unresolved: Vec<_> = report
                    .unresolved
                    .iter()
                    .map(|(g, stuck)| {
                        serde_json::json!({
                            "group": g.to_string(),
                            "stuck_divisors": stuck,
                        })
                    })
                    .collect();
                json.insert(
                    "candidates".to_string(),
                    serde_json::json!({
                        "confirmed": report
                            .confirmed
                            .iter()
                            .map(|g| g.to_string())
                            .collect::<Vec<_>>(),
                        "refuted": refuted,
                        "unresolved": unresolved,
                    }),
                );
            }
        }
    }

    if args.format == PlainFormat::Json {
        json.insert("complete".to_string(), serde_json::json!(ok));
        println!("{}", serde_json::Value::Object(json));
    } else if ok {
        println!("refutation complete");
    } else {
        println!("refutation incomplete");
    }
    Ok(if ok { 0 } else { EXIT_REFUTE })
}

fn cmd_replay(args: &ReplayArgs, data: &DataSource) -> Result<u8, String> {
    let text = match &args.path {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| format!("{}: {e}", path.display()))?,
        None => data.default_ledger()?,
    };
    let claims = parse_claims(&text).map_err(|e| e.to_string())?;
    let report = replay_claims(&claims);

    match args.format {
        PlainFormat::Text => {
            for (claim, outcome) in &report.results {
                match outcome {
                    ClaimOutcome::Pass => println!("pass {}", claim.id),
                    ClaimOutcome::Fail(detail) => println!("fail {}: {detail}", claim.id),
                    ClaimOutcome::ConfirmedErrata(detail) => {
                        println!("errata {}: {detail}", claim.id);
                    }
                    ClaimOutcome::ErrataUnconfirmed => {
                        println!("fail {}: flagged errata but recomputation agrees", claim.id);
                    }
                }
            }
            println!(
                "passed {}, confirmed errata {}, failed {}",
                report.passed(),
                report.confirmed_errata(),
                report.failures().count()
            );
        }
        PlainFormat::Json => {
            let results: Vec<_> = report
                .results
                .iter()
                .map(|(claim, outcome)| {
                    let mut entry = serde_json::Map::new();
                    entry.insert("id".to_string(), serde_json::json!(claim.id));
                    entry.insert("lemma".to_string(), serde_json::json!(claim.lemma));
                    let (tag, detail) = match outcome {
                        ClaimOutcome::Pass => ("pass", None),
                        ClaimOutcome::Fail(d) => ("fail", Some(d.clone())),
                        ClaimOutcome::ConfirmedErrata(d) => ("confirmed_errata", Some(d.clone())),
                        ClaimOutcome::ErrataUnconfirmed => ("errata_unconfirmed", None),
                    };
                    entry.insert("outcome".to_string(), serde_json::json!(tag));
                    if let Some(d) = detail {
                        entry.insert("detail".to_string(), serde_json::json!(d));
                    }
                    serde_json::Value::Object(entry)
                })
                .collect();
            println!(
                "{}",
                serde_json::json!({
                    "results": results,
                    "passed": report.passed(),
                    "confirmed_errata": report.confirmed_errata(),
                    "failed": report.failures().count(),
                    "clean": report.is_clean(),
                })
            );
        }
    }
    Ok(if report.is_clean() { 0 } else { EXIT_CLAIMS })
}
