//! Command-line driver: `bound`, `table11`, `build`, `check`, `rankdist`, `audit`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::{Pow, Zero};

use crate::cdc::{ferrers_of, multilevel, Cdc, IdVec};
use crate::error::{Error, Result};
use crate::ferrers::{optimal_fdrmc, th43_optimal_fdrmc, FdrmCode, FerrersDiagram};
use crate::rankmetric::{gabidulin, rank_distribution, ENUMERATION_LIMIT};
use crate::theorems::{self, bound_by_source, table11_check, Registry};
use crate::verify::{self, Mode};

/// Largest code `build` materializes.
pub const BUILD_LIMIT: usize = 1_000_000;

#[derive(Parser, Debug)]
#[command(
    name = "cdc",
    version,
    about = "Constant-dimension subspace codes: bounds, builds and checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lower bound on A_q(n, d, k).
    Bound(BoundArgs),
    /// Evaluate every registry row against its transcription.
    Table11(TableArgs),
    /// Materialize a code and write it in the cdc text format.
    Build(BuildArgs),
    /// Read a code and verify its minimum distance.
    Check(CheckArgs),
    /// Rank distribution of an MRD code.
    Rankdist(RankArgs),
    /// Audit a Ferrers diagram rank-metric code.
    Audit(AuditArgs),
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[arg(short)]
    pub q: u32,
    #[arg(short)]
    pub n: usize,
    #[arg(short)]
    pub d: usize,
    #[arg(short)]
    pub k: usize,
    /// auto, th41, th44, table11 or example:<3..8>
    #[arg(long, default_value = "auto")]
    pub source: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Text,
    Csv,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long, value_enum, default_value = "text")]
    pub format: TableFormat,
    /// Registry file instead of the embedded one.
    #[arg(long)]
    pub registry: Option<PathBuf>,
    /// Also compare each row with the closed forms and recipes.
    #[arg(long)]
    pub consistency: bool,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    /// Comma-separated identifying vectors.
    #[arg(long, conflicts_with_all = ["family", "recipe"])]
    pub multilevel: Option<String>,
    /// `n,k,delta` of the new identifying-vector family.
    #[arg(long, conflicts_with = "recipe")]
    pub family: Option<String>,
    /// Add the composite-diagram vector to the family.
    #[arg(long, requires = "family")]
    pub extended: bool,
    /// Preset: `parallel-tiny`.
    #[arg(long)]
    pub recipe: Option<String>,
    #[arg(short, default_value_t = 2)]
    pub q: u32,
    #[arg(long)]
    pub delta: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print the predicted size instead of failing when the code is too large.
    #[arg(long)]
    pub force_count_only: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckMode {
    Auto,
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Kv,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    pub mode: CheckMode,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = verify::SAMPLE_PAIRS)]
    pub pairs: u64,
    #[arg(long, default_value_t = verify::EXHAUSTIVE_PAIR_LIMIT)]
    pub max_pairs: u64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: ReportFormat,
}

#[derive(Args, Debug)]
pub struct RankArgs {
    #[arg(short)]
    pub q: u32,
    #[arg(short)]
    pub m: usize,
    #[arg(short)]
    pub n: usize,
    #[arg(long)]
    pub delta: usize,
    /// Also count ranks over the enumerated Gabidulin code.
    #[arg(long)]
    pub census: bool,
}

#[derive(Args, Debug)]
pub struct AuditArgs {
    /// An fdrmc text file.
    #[arg(long = "in", conflicts_with_all = ["diagram", "composite"])]
    pub input: Option<PathBuf>,
    /// Build an optimal code on this diagram, e.g. `F=[1,2,4]`.
    #[arg(long)]
    pub diagram: Option<String>,
    /// `n,k` of the composite distance-3 diagram.
    #[arg(long, conflicts_with = "diagram")]
    pub composite: Option<String>,
    #[arg(long)]
    pub delta: Option<usize>,
    #[arg(short, default_value_t = 2)]
    pub q: u32,
    /// Write the audited code in the fdrmc text format.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{}", text)
            } else {
                write!(err, "{}", text)
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Verify) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {}", msg);
            2
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Bound(a) => cmd_bound(&a, out),
        Command::Table11(a) => cmd_table11(&a, out),
        Command::Build(a) => cmd_build(&a, out),
        Command::Check(a) => cmd_check(&a, out),
        Command::Rankdist(a) => cmd_rankdist(&a, out),
        Command::Audit(a) => cmd_audit(&a, out),
    }
}

fn cmd_bound(a: &BoundArgs, out: &mut dyn Write) -> Outcome {
    let r = bound_by_source(&a.source, a.q, a.n, a.d, a.k)?;
    write!(out, "{}", r)?;
    if r.source != "table11" {
        if let Some(row) = Registry::embedded().get(a.q, a.n, a.d, a.k) {
            if row.new != r.value {
                writeln!(out, "registry: {}", row.new)?;
                writeln!(out, "mismatch: {} differs from the registry value", r.source)?;
            }
        }
    }
    Ok(())
}

fn opt(x: &Option<BigUint>) -> String {
    x.as_ref().map_or(String::new(), |v| v.to_string())
}

fn cmd_table11(a: &TableArgs, out: &mut dyn Write) -> Outcome {
    let reg = match &a.registry {
        Some(p) => Registry::load(p)?,
        None => Registry::embedded(),
    };
    let lines = table11_check(&reg);
    let mut bad = 0;
    match a.format {
        TableFormat::Csv => writeln!(out, "q,n,d,k,new,old,diff")?,
        TableFormat::Text => writeln!(out, "q n d k new old diff status")?,
    }
    for l in &lines {
        let r = &l.row;
        let diff = match &l.result {
            Ok(b) => b.diff().map_or(String::new(), |d| d.to_string()),
            Err(_) => String::new(),
        };
        let status = match (&l.result, l.matches(), l.improves()) {
            (Err(e), _, _) => format!("error: {}", e),
            (Ok(_), false, _) => "MISMATCH".to_string(),
            (Ok(_), true, false) => "NOT-IMPROVED".to_string(),
            _ => "ok".to_string(),
        };
        if status != "ok" {
            bad += 1;
        }
        let value = l.result.as_ref().map_or(String::new(), |b| b.value.to_string());
        match a.format {
            TableFormat::Csv => writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.q,
                r.n,
                r.d,
                r.k,
                value,
                opt(&r.old),
                diff
            )?,
            TableFormat::Text => writeln!(
                out,
                "{} {} {} {} {} {} {} {}",
                r.q,
                r.n,
                r.d,
                r.k,
                value,
                opt(&r.old),
                diff,
                status
            )?,
        }
    }
    if a.format == TableFormat::Text {
        writeln!(out, "rows: {}, mismatches: {}", lines.len(), bad)?;
    }
    if a.consistency {
        writeln!(out, "consistency:")?;
        for c in theorems::consistency_report(&reg) {
            let other = match &c.other {
                Ok(v) => v.to_string(),
                Err(e) => format!("error: {}", e),
            };
            let tag = if c.agrees() { "agrees" } else { "DIFFERS" };
            writeln!(out, "{} {} {} {} {}: {} {}", c.q, c.n, c.d, c.k, c.check, other, tag)?;
        }
    }
    if bad > 0 {
        return Err(Failure::Verify);
    }
    Ok(())
}

fn parse_list(s: &str, len: usize, what: &str) -> Result<Vec<usize>> {
    let v: std::result::Result<Vec<usize>, _> = s.split(',').map(|x| x.trim().parse()).collect();
    match v {
        Ok(v) if v.len() == len => Ok(v),
        _ => Err(Error::BadArguments(format!(
            "{} expects {} comma-separated integers, got {:?}",
            what, len, s
        ))),
    }
}

fn predicted(entries: &[(IdVec, FdrmCode)]) -> BigUint {
    entries.iter().map(|(_, c)| c.size()).sum()
}

fn cmd_build(a: &BuildArgs, out: &mut dyn Write) -> Outcome {
    let limit = BigUint::from(BUILD_LIMIT);
    let code: Cdc = if let Some(vs) = &a.multilevel {
        let delta = a
            .delta
            .ok_or_else(|| Error::BadArguments("--multilevel needs --delta".into()))?;
        let entries = vs
            .split(',')
            .map(|s| {
                let v = IdVec::forward(s.trim())?;
                let f = ferrers_of(&v)?.diagram;
                Ok((v, optimal_fdrmc(&f, delta, a.q)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let size = predicted(&entries);
        if size > limit {
            return too_large(size, a.force_count_only, out);
        }
        multilevel(&entries, delta)?
    } else if let Some(p) = &a.family {
        let p = parse_list(p, 3, "--family")?;
        let (n, k, delta) = (p[0], p[1], p[2]);
        let entries = if a.extended {
            theorems::th44_entries(a.q, n, delta, k)?
        } else {
            theorems::th41_entries(a.q, n, delta, k)?
        };
        let size = predicted(&entries);
        if size > limit {
            return too_large(size, a.force_count_only, out);
        }
        multilevel(&entries, delta)?
    } else if let Some(r) = &a.recipe {
        match r.as_str() {
            "parallel-tiny" => {
                let input = parallel_tiny(a.q);
                let size = theorems::thm32_count(&input, &theorems::LiftedMrdBounds)?.value;
                if size > limit {
                    return too_large(size, a.force_count_only, out);
                }
                theorems::thm32_build(&input)?
            }
            other => return Err(Error::BadArguments(format!("unknown recipe {:?}", other)).into()),
        }
    } else {
        return Err(Failure::Usage("build needs --multilevel, --family or --recipe".into()));
    };
    let text = code.to_text();
    match &a.out {
        Some(p) => {
            std::fs::write(p, &text)?;
            writeln!(out, "wrote {} codewords to {}", code.len(), p.display())?;
        }
        None => write!(out, "{}", text)?,
    }
    Ok(())
}

fn too_large(size: BigUint, count_only: bool, out: &mut dyn Write) -> Outcome {
    if count_only {
        writeln!(out, "count: {}", size)?;
        return Ok(());
    }
    Err(Error::TooLarge(format!(
        "{} codewords exceed the build limit {}; use --force-count-only",
        size, BUILD_LIMIT
    ))
    .into())
}

/// The shrunk parallel construction: n = 8, d = 4, k = 4, n1 = n2 = 4.
pub fn parallel_tiny(q: u32) -> theorems::Thm32Input {
    use crate::cdc::{CwcSet, IdKind};
    use theorems::ListSpec;
    let cwc = |vs: &[&str], kind| {
        CwcSet::new(vs.iter().map(|s| IdVec::parse(s, kind).expect("literal")).collect(), 4).expect("literal")
    };
    theorems::Thm32Input {
        q,
        n1: 4,
        n2: 4,
        k: 4,
        d: 4,
        a: ListSpec::forward(vec![cwc(&["1100"], IdKind::Forward)], 2, 1),
        b: ListSpec::forward(vec![cwc(&["1100", "0011"], IdKind::Forward)], 2, 1),
        ahat: ListSpec::inverse(vec![cwc(&["0011"], IdKind::Inverse)], 2, 1, Some(0)),
        bhat: ListSpec::inverse(vec![cwc(&["0011", "1100"], IdKind::Inverse)], 2, 1, None),
    }
}

fn cmd_check(a: &CheckArgs, out: &mut dyn Write) -> Outcome {
    let text = std::fs::read_to_string(&a.input)?;
    let code = Cdc::from_text(&text)?;
    let mode = match a.mode {
        CheckMode::Exhaustive => Mode::Exhaustive { max_pairs: a.max_pairs },
        CheckMode::Sampled => Mode::Sampled {
            seed: a.seed,
            pairs: a.pairs,
        },
        CheckMode::Auto => {
            let m = code.len() as u64;
            if m * m.saturating_sub(1) / 2 <= a.max_pairs {
                Mode::Exhaustive { max_pairs: a.max_pairs }
            } else {
                Mode::Sampled {
                    seed: a.seed,
                    pairs: a.pairs,
                }
            }
        }
    };
    let report = verify::check_cdc(&code, mode)?;
    match a.format {
        ReportFormat::Text => writeln!(out, "{}", report)?,
        ReportFormat::Kv => write!(out, "{}", report.key_values())?,
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

fn cmd_rankdist(a: &RankArgs, out: &mut dyn Write) -> Outcome {
    let lo = a.m.min(a.n);
    if a.delta == 0 || a.delta > lo {
        return Err(Error::BadArguments(format!("delta must be in 1..={}", lo)).into());
    }
    let mut total = BigUint::zero();
    let mut dist = Vec::new();
    for r in 0..=lo {
        let x = rank_distribution(a.q, a.m, a.n, a.delta, r)?;
        writeln!(out, "{} {}", r, x)?;
        total += &x;
        dist.push(x);
    }
    let e = a.m.max(a.n) * (lo - a.delta + 1);
    let size: BigUint = Pow::pow(BigUint::from(a.q), e as u32);
    let ok = total == size;
    writeln!(out, "sum {} = {}^{} {}", total, a.q, e, if ok { "ok" } else { "FAIL" })?;
    let mut pass = ok;
    if a.census {
        let g = gabidulin(a.q, a.m, a.n, a.delta)?;
        if g.size() > BigUint::from(ENUMERATION_LIMIT) {
            return Err(Error::TooLargeToEnumerate(format!("{} codewords", g.size())).into());
        }
        let mut census = vec![0u64; lo + 1];
        for c in g.codewords()? {
            census[c.rank()] += 1;
        }
        let agree = census.iter().zip(&dist).all(|(c, d)| BigUint::from(*c) == *d);
        let shown: Vec<String> = census.iter().map(u64::to_string).collect();
        writeln!(out, "census {} {}", shown.join(" "), if agree { "ok" } else { "FAIL" })?;
        pass &= agree;
    }
    if pass {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

fn cmd_audit(a: &AuditArgs, out: &mut dyn Write) -> Outcome {
    let code = if let Some(p) = &a.input {
        FdrmCode::from_text(&std::fs::read_to_string(p)?)?
    } else if let Some(d) = &a.diagram {
        let delta = a
            .delta
            .ok_or_else(|| Error::BadArguments("--diagram needs --delta".into()))?;
        optimal_fdrmc(&FerrersDiagram::parse(d)?, delta, a.q)?
    } else if let Some(c) = &a.composite {
        let p = parse_list(c, 2, "--composite")?;
        th43_optimal_fdrmc(p[0], p[1], a.q)?
    } else {
        return Err(Failure::Usage("audit needs --in, --diagram or --composite".into()));
    };
    let report = verify::audit_fdrmc(&code)?;
    writeln!(out, "{}", report)?;
    if let Some(p) = &a.out {
        std::fs::write(p, code.to_text())?;
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}
