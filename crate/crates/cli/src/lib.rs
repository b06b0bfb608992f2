//! Command-line front end: ring tables, theorem verification, proof-chain
//! replay, zero-divisor searches, bounds and sweeps.
//!
//! Exit codes: 0 success, 1 failed verification, 2 usage or parse error.

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use rpcoh_core::ring::format_poincare;
use rpcoh_core::zcl::{Certificate, Conclusion, FactorList, Pool, SearchConfig, Strategy};
use rpcoh_core::{
    family_power, parse_presentation, ring_from_table, tc_bounds, to_presentation, verify_steps_s3, verify_theorem,
    witness_factors, zcl_search, Error, ProductRing, RingTable,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Record,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PoolArg {
    Std1,
    Kernel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Greedy,
    Dfs,
    Exhaustive,
}

#[derive(Debug, Parser)]
#[command(name = "rpcoh", version, about = "Mod-2 cohomology of connected sums of RP^m and higher TC bounds")]
pub struct Cli {
    /// Output format; diagnostics always go to stderr.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct SearchArgs {
    #[arg(long, value_enum, default_value = "std1")]
    pool: PoolArg,
    #[arg(long, value_enum, default_value = "exhaustive")]
    strategy: StrategyArg,
    #[arg(long)]
    max_len: Option<usize>,
    /// Largest number of kernel combinations per degree.
    #[arg(long, default_value_t = SearchConfig::DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = SearchConfig::DEFAULT_NODE_LIMIT)]
    node_limit: u64,
    /// Start from the explicit witness product (family rings, s >= 3).
    #[arg(long)]
    seed_witness: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Basis, degrees and Poincaré polynomial of g#RP^m or of a presentation file.
    Ring {
        /// g m
        params: Vec<usize>,
        #[arg(long)]
        presentation: Option<PathBuf>,
        /// Print the ring in presentation format instead.
        #[arg(long)]
        emit_presentation: bool,
    },
    /// Check TC_s(g#RP^m) = sm with the explicit witness.
    Verify { g: usize, m: usize, s: usize },
    /// Replay the s = 3 equality chain.
    Steps { g: usize, m: usize },
    /// Search for long nonzero products of zero divisors.
    Zcl {
        /// g m s, or just s with --presentation
        params: Vec<usize>,
        #[arg(long)]
        presentation: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Lower and upper bounds for TC_s(g#RP^m).
    Bounds { g: usize, m: usize, s: usize },
    /// Verify a grid of parameters, e.g. `sweep 2..4 2..6 3..5`.
    Sweep { g: String, m: String, s: String },
    /// Expand a product of classes (defaults to the witness).
    Expand {
        /// g m s, or just s with --presentation
        params: Vec<usize>,
        #[arg(long)]
        presentation: Option<PathBuf>,
        /// `<class>[:<multiplicity>]`, e.g. `x1@1 + x1@2:3` or `x1|1|t`.
        #[arg(long = "factor")]
        factors: Vec<String>,
    },
}

/// Failure with the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded(_) => EXIT_FAILED,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

type CmdResult = Result<i32, Failure>;

/// Parses `a..b` (inclusive) or a single number.
pub fn parse_range(text: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("invalid range '{text}' (expected N or A..B)");
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let n = text.trim().parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

fn read_ring(path: &PathBuf) -> Result<RingTable, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let spec = parse_presentation(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(ring_from_table(&spec)?)
}

fn product_ring(params: &[usize], presentation: &Option<PathBuf>) -> Result<Arc<ProductRing>, Failure> {
    match (presentation, params) {
        (Some(path), [s]) => Ok(Arc::new(ProductRing::power(read_ring(path)?, *s)?)),
        (Some(_), _) => Err(usage("with --presentation give exactly one parameter: s")),
        (None, [g, m, s]) => Ok(family_power(*g, *m, *s)?),
        (None, _) => Err(usage("expected parameters: g m s")),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure { code: EXIT_FAILED, message: e.to_string() })
}

fn emit_line(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    emit(out, text)?;
    emit(out, "\n")
}

fn print_certificate(out: &mut dyn Write, format: Format, cert: &Certificate) -> Result<bool, Failure> {
    let ok = cert.recheck()?;
    match format {
        Format::Record => emit_line(out, &cert.to_record_string())?,
        Format::Text => {
            emit(out, &cert.to_string())?;
            emit_line(out, &format!("self-check {}", if ok { "ok" } else { "FAILED" }))?;
        }
    }
    Ok(ok)
}

fn cmd_ring(
    out: &mut dyn Write,
    format: Format,
    params: &[usize],
    presentation: &Option<PathBuf>,
    emit_pres: bool,
) -> CmdResult {
    let ring = match (presentation, params) {
        (Some(path), []) => read_ring(path)?,
        (Some(_), _) => return Err(usage("with --presentation give no positional parameters")),
        (None, [g, m]) => RingTable::connected_sum_family(*g, *m)?,
        (None, _) => return Err(usage("expected parameters: g m")),
    };
    if emit_pres {
        emit(out, &to_presentation(&ring))?;
        return Ok(EXIT_OK);
    }
    match format {
        Format::Record => {
            let basis: Vec<Value> = ring
                .basis()
                .iter()
                .map(|e| json!({ "index": e.index, "label": e.label, "degree": e.degree }))
                .collect();
            let family = ring.family().map_or(Value::Null, |f| json!({ "g": f.g, "m": f.m }));
            let record = json!({
                "basis": basis,
                "family": family,
                "poincare": ring.poincare(),
                "top_degree": ring.top_degree(),
                "poincare_duality": ring.duality_top().is_ok(),
            });
            emit_line(out, &record.to_string())?;
        }
        Format::Text => {
            let mut text = String::new();
            if let Some(f) = ring.family() {
                text.push_str(&format!("H*({}#RP^{}; Z/2)\n", f.g, f.m));
            }
            text.push_str(&format!("basis ({} elements)\n", ring.len()));
            for e in ring.basis() {
                text.push_str(&format!("  [{}] {}  degree {}\n", e.index, e.label, e.degree));
            }
            text.push_str(&format!("top degree {}\n", ring.top_degree()));
            text.push_str(&format!("poincare   {}\n", format_poincare(&ring.poincare())));
            text.push_str(&format!(
                "duality    {}\n",
                match ring.duality_top() {
                    Ok(_) => "yes".to_string(),
                    Err(e) => format!("no ({e})"),
                }
            ));
            emit(out, &text)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(out: &mut dyn Write, format: Format, g: usize, m: usize, s: usize) -> CmdResult {
    let cert = verify_theorem(g, m, s)?;
    let ok = print_certificate(out, format, &cert)?;
    Ok(if ok && cert.conclusion == Conclusion::Exact { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_steps(out: &mut dyn Write, format: Format, g: usize, m: usize) -> CmdResult {
    let chain = verify_steps_s3(g, m)?;
    let pr = chain.ring.as_ref();
    match format {
        Format::Record => {
            let steps: Vec<Value> = chain
                .steps
                .iter()
                .map(|st| {
                    json!({
                        "step": st.step,
                        "relation": st.relation,
                        "holds": st.holds,
                        "lhs": pr.term_labels(&st.lhs),
                        "rhs": pr.term_labels(&st.rhs),
                    })
                })
                .collect();
            let record = json!({ "g": g, "m": m, "steps": steps, "first_failure": chain.first_failure() });
            emit_line(out, &record.to_string())?;
        }
        Format::Text => {
            let mut text = format!("s = 3 chain for g={g} m={m}\n");
            for st in &chain.steps {
                text.push_str(&format!(
                    "  {:<5} {:<50} {}  [{}]\n",
                    st.step,
                    st.relation,
                    if st.holds { "holds" } else { "FAILS" },
                    pr.display_class(&st.rhs)
                ));
            }
            match chain.first_failure() {
                None => text.push_str("all steps hold\n"),
                Some(i) => text.push_str(&format!("first failing step: {}\n", chain.steps[i].step)),
            }
            emit(out, &text)?;
        }
    }
    Ok(if chain.first_failure().is_none() { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_zcl(
    out: &mut dyn Write,
    format: Format,
    params: &[usize],
    presentation: &Option<PathBuf>,
    args: &SearchArgs,
) -> CmdResult {
    let pr = product_ring(params, presentation)?;
    let pool = match args.pool {
        PoolArg::Std1 => Pool::StandardDegreeOne,
        PoolArg::Kernel => Pool::FullKernel,
    };
    let strategy = match args.strategy {
        StrategyArg::Greedy => Strategy::Greedy,
        StrategyArg::Dfs => Strategy::Dfs,
        StrategyArg::Exhaustive => Strategy::Exhaustive,
    };
    let mut config = SearchConfig::new(pool, strategy);
    config.max_len = args.max_len;
    config.budget = args.budget;
    config.node_limit = args.node_limit;
    if args.seed_witness {
        config.seed = Some(witness_factors(&pr)?);
    }
    let cert = zcl_search(&pr, &config)?;
    let ok = print_certificate(out, format, &cert)?;
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_bounds(out: &mut dyn Write, format: Format, g: usize, m: usize, s: usize) -> CmdResult {
    let b = tc_bounds(g, m, s)?;
    let ok = b.certificate.recheck()?;
    match format {
        Format::Record => {
            let record = json!({
                "g": g, "m": m, "s": s,
                "lower": b.lower,
                "upper": b.upper,
                "conclusion": b.certificate.conclusion.as_str(),
                "certificate": b.certificate.to_record(),
            });
            emit_line(out, &record.to_string())?;
        }
        Format::Text => {
            emit_line(out, &format!("{} <= TC_{s}({g}#RP^{m}) <= {}", b.lower, b.upper))?;
            emit(out, &b.certificate.to_string())?;
            emit_line(out, &format!("self-check {}", if ok { "ok" } else { "FAILED" }))?;
        }
    }
    Ok(if ok && b.certificate.conclusion != Conclusion::Failed { EXIT_OK } else { EXIT_FAILED })
}

struct SweepRow {
    g: usize,
    m: usize,
    s: usize,
    zcl_lower: usize,
    dim_upper: usize,
    conclusion: Conclusion,
    self_check: bool,
}

fn sweep_cell(g: usize, m: usize, s: usize) -> Result<SweepRow, Error> {
    let cert = tc_bounds(g, m, s)?.certificate;
    Ok(SweepRow {
        g,
        m,
        s,
        zcl_lower: cert.zcl_lower,
        dim_upper: cert.dim_upper,
        conclusion: cert.conclusion,
        self_check: cert.recheck()?,
    })
}

fn cmd_sweep(out: &mut dyn Write, format: Format, g: &str, m: &str, s: &str) -> CmdResult {
    let (gr, mr, sr) = (parse_range(g).map_err(usage)?, parse_range(m).map_err(usage)?, parse_range(s).map_err(usage)?);
    if *gr.start() < 1 || *mr.start() < 2 || *sr.start() < 2 {
        return Err(usage("sweep ranges need g >= 1, m >= 2, s >= 2"));
    }
    let mut cells = Vec::new();
    for g in gr {
        for m in mr.clone() {
            for s in sr.clone() {
                cells.push((g, m, s));
            }
        }
    }
    // computed in parallel, printed in parameter order
    let rows = cells.par_iter().map(|&(g, m, s)| sweep_cell(g, m, s)).collect::<Result<Vec<_>, _>>()?;

    let mut text = String::new();
    if format == Format::Text {
        text.push_str(&format!(
            "{:>3} {:>3} {:>3} {:>9} {:>9}  {:<11} {}\n",
            "g", "m", "s", "zcl_lower", "dim_upper", "conclusion", "self_check"
        ));
    }
    for r in &rows {
        match format {
            Format::Text => text.push_str(&format!(
                "{:>3} {:>3} {:>3} {:>9} {:>9}  {:<11} {}\n",
                r.g,
                r.m,
                r.s,
                r.zcl_lower,
                r.dim_upper,
                r.conclusion.as_str(),
                if r.self_check { "ok" } else { "FAILED" }
            )),
            Format::Record => {
                let record = json!({
                    "g": r.g, "m": r.m, "s": r.s,
                    "zcl_lower": r.zcl_lower,
                    "dim_upper": r.dim_upper,
                    "conclusion": r.conclusion.as_str(),
                    "self_check": r.self_check,
                });
                text.push_str(&record.to_string());
                text.push('\n');
            }
        }
    }
    emit(out, &text)?;
    let failed = rows.iter().any(|r| !r.self_check || r.conclusion == Conclusion::Failed);
    Ok(if failed { EXIT_FAILED } else { EXIT_OK })
}

/// Parses `<class>[:<multiplicity>]`.
fn parse_factor(pr: &ProductRing, text: &str) -> Result<(rpcoh_core::ClassVector, usize), Failure> {
    let (class, mult) = match text.rsplit_once(':') {
        Some((c, k)) => (c, k.trim().parse().map_err(|_| usage(format!("invalid multiplicity in '{text}'")))?),
        None => (text, 1),
    };
    Ok((pr.parse_class(class)?, mult))
}

fn cmd_expand(
    out: &mut dyn Write,
    format: Format,
    params: &[usize],
    presentation: &Option<PathBuf>,
    factors: &[String],
) -> CmdResult {
    let pr = product_ring(params, presentation)?;
    let list = if factors.is_empty() {
        witness_factors(&pr)?
    } else {
        let mut list = FactorList::new();
        for f in factors {
            let (class, mult) = parse_factor(&pr, f)?;
            list.push(class, mult)?;
        }
        list
    };
    let cert = Certificate::from_factors(&pr, list)?;
    let ok = print_certificate(out, format, &cert)?;
    Ok(if ok && cert.conclusion != Conclusion::Failed { EXIT_OK } else { EXIT_FAILED })
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let format = cli.format;
    match &cli.command {
        Command::Ring { params, presentation, emit_presentation } => {
            cmd_ring(out, format, params, presentation, *emit_presentation)
        }
        Command::Verify { g, m, s } => cmd_verify(out, format, *g, *m, *s),
        Command::Steps { g, m } => cmd_steps(out, format, *g, *m),
        Command::Zcl { params, presentation, search } => cmd_zcl(out, format, params, presentation, search),
        Command::Bounds { g, m, s } => cmd_bounds(out, format, *g, *m, *s),
        Command::Sweep { g, m, s } => cmd_sweep(out, format, g, m, s),
        Command::Expand { params, presentation, factors } => cmd_expand(out, format, params, presentation, factors),
    }
}

/// Runs one invocation (`args[0]` is the program name) and returns its exit code.
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
                let _ = err.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
