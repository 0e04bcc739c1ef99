//! The `sunflower-lab` command line. [`run`] parses arguments, executes one
//! subcommand and returns the process exit code.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use sunflower_core::bounds::{
    ahs_lower_bound, binomial_step, binomial_step_threshold, binomial_step_threshold_failures,
    default_recursion_base, deza_bound, er_bound, kostochka_bound, f_lower_bound, main2_bound,
    main3_bound, main_bound, rw_bound, split_binomial_check, BoundConfig, BoundValue, LogBase, Param,
    RecursionVariant,
};
use sunflower_core::constructions::{fano_plane, product_compose, transversal_family};
use sunflower_core::detect::{max_petals, verify_sunflower, SunflowerCertificate, SunflowerSearch};
use sunflower_core::numeric::{to_f64, DEFAULT_PRECISION};
use sunflower_core::prover::{cover_ell_intersecting, decompose_l_intersecting, verify_decomposition};
use sunflower_core::search::tables::{certified_search, l_choices, ExtremalValue};
use sunflower_core::search::{
    verify_witness, Constraint, SearchConfig, SearchProblem, SearchResult, Symmetry, DEFAULT_BUDGET,
};
use sunflower_core::{Error as CoreError, SetFamily};

use crate::format::{parse_family, write_family};
use crate::json::{
    bound_json, checkpoint_json, cover_json, decomposition_json, extremal_json,
    family_json, parse_checkpoint, parse_decomposition, parse_sunflower_claim, search_outcome_json,
    search_result_json, SunflowerClaim,
};
use crate::parallel;
use crate::report::{self, ReportConfig, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Overrides the default node budget; an explicit `--budget` wins.
pub const BUDGET_ENV: &str = "SUNFLOWER_LAB_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "sunflower-lab", version, about = "Sunflower detection, bounds, searches and certificates")]
struct Cli {
    /// Emit results as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads for detection and search.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Uniformity, distinctness and intersection sizes of a family.
    Check(CheckArgs),
    /// Look for a sunflower with r petals.
    FindSunflower(FindArgs),
    /// Evaluate a bound formula over parameter ranges.
    Bounds(BoundsArgs),
    /// Generate a construction.
    Construct(ConstructArgs),
    /// Exhaustive extremal search.
    Search(SearchArgs),
    /// Build a decomposition certificate or a cover audit.
    Decompose(DecomposeArgs),
    /// Check a JSON certificate against a family.
    VerifyCert(VerifyArgs),
    /// Acceptance table or small extremal tables.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
struct CheckArgs {
    file: PathBuf,
    /// Required uniformity.
    #[arg(long)]
    k: Option<usize>,
    /// Allowed intersection sizes, comma separated.
    #[arg(long = "L", value_delimiter = ',', conflicts_with = "ell")]
    l: Option<Vec<usize>>,
    /// Minimum intersection size.
    #[arg(long)]
    ell: Option<usize>,
}

#[derive(Debug, Args)]
struct FindArgs {
    file: PathBuf,
    #[arg(long, required_unless_present = "max_petals")]
    r: Option<usize>,
    /// Treat a sunflower as the negative outcome.
    #[arg(long)]
    expect_free: bool,
    /// Report the largest petal count instead.
    #[arg(long)]
    max_petals: bool,
    /// Write the certificate here.
    #[arg(short = 'o', long = "cert-out")]
    cert_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LogBaseArg {
    #[value(name = "e")]
    E,
    #[value(name = "2")]
    Two,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    AsStated,
    AsProved,
    Both,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    /// er, kostochka, rw, deza, main, main2, main3, binomial-step,
    /// step-threshold, split-binomial, recursion, ahs, f-lower.
    #[arg(long)]
    thm: String,
    /// Integer parameters take `5`, `1,2,7` or the inclusive range `1..4`.
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    s: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    ell: Option<String>,
    /// Rational parameters take `3`, `3/2` or `1.5`.
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    d: Option<String>,
    #[arg(long)]
    c: Option<String>,
    #[arg(long, value_enum, default_value = "e")]
    log_base: LogBaseArg,
    /// Working precision in bits.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: u32,
    #[arg(long, value_enum, default_value = "both")]
    variant: VariantArg,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[command(subcommand)]
    kind: ConstructKind,
    /// Output file (family format); stdout when absent.
    #[arg(short = 'o', long = "out", global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum ConstructKind {
    /// (r-1)^k members, one element from each of k blocks of size r-1.
    Transversal {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
    },
    /// The seven lines of the Fano plane.
    Fano,
    /// Unions of one member of each family on disjoint copies of the grounds.
    Product { a: PathBuf, b: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum IsoArg {
    None,
    Transpositions,
    Full,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 3)]
    r: usize,
    /// Maximize over every L with |L| = s.
    #[arg(long, conflicts_with_all = ["l", "ell"])]
    s: Option<usize>,
    #[arg(long = "L", value_delimiter = ',', conflicts_with = "ell")]
    l: Option<Vec<usize>>,
    /// Minimum intersection size (0 means unconstrained).
    #[arg(long)]
    ell: Option<usize>,
    /// Ground-set size; with --certify, the largest one tried.
    #[arg(long)]
    nmax: Option<usize>,
    /// Node budget per run.
    #[arg(long)]
    budget: Option<u64>,
    /// Single-threaded, with the lexicographically least witness.
    #[arg(long)]
    deterministic: bool,
    #[arg(long, value_enum, default_value = "transpositions")]
    iso: IsoArg,
    /// Grow the ground set until the value holds for every size.
    #[arg(long)]
    certify: bool,
    /// Skip the Erdős–Rado cutoff.
    #[arg(long)]
    no_er_cap: bool,
    #[arg(long)]
    resume: Option<PathBuf>,
    #[arg(long)]
    checkpoint_out: Option<PathBuf>,
    #[arg(long)]
    witness_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DecomposeArgs {
    file: PathBuf,
    /// Intersection sizes; defaults to the realized ones.
    #[arg(long = "L", value_delimiter = ',', conflicts_with = "ell")]
    l: Option<Vec<usize>>,
    /// Cover audit of an ell-intersecting family instead.
    #[arg(long)]
    ell: Option<usize>,
    /// Index of the member whose ell-subsets form the cover.
    #[arg(long, default_value_t = 0, requires = "ell")]
    f0: usize,
    /// Write the certificate here.
    #[arg(short = 'o', long = "cert-out")]
    cert_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    family: PathBuf,
    cert: PathBuf,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Print the acceptance-criteria table.
    #[arg(long)]
    reproduce_table: bool,
    /// Only this criterion.
    #[arg(long)]
    criterion: Option<u8>,
    /// Random families in the cover audit.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    budget: Option<u64>,
}

/// Runs the tool on `args` (including the program name).
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: &Cli) -> anyhow::Result<i32> {
    match &cli.command {
        Command::Check(a) => check(cli, a),
        Command::FindSunflower(a) => find(cli, a),
        Command::Bounds(a) => bounds(cli, a),
        Command::Construct(a) => construct(cli, a),
        Command::Search(a) => search(cli, a),
        Command::Decompose(a) => decompose(cli, a),
        Command::VerifyCert(a) => verify_cert(cli, a),
        Command::Report(a) => report_cmd(cli, a),
    }
}

fn read_family(path: &Path) -> anyhow::Result<SetFamily> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_family(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| {
        anyhow!("{}: line {}, column {}: {e}", path.display(), e.line(), e.column())
    })
}

fn write_json(path: &Path, v: &Value) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(v).expect("plain data serializes");
    fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("plain data serializes"));
}

/// Budget precedence: `--budget`, then the environment, then the default.
pub fn resolve_budget(flag: Option<u64>) -> anyhow::Result<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| anyhow!("{BUDGET_ENV}={v:?} is not a node count")),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_BUDGET),
        Err(e) => bail!("{BUDGET_ENV}: {e}"),
    }
}

fn sorted_l(l: &[usize]) -> Vec<usize> {
    let mut l = l.to_vec();
    l.sort_unstable();
    l.dedup();
    l
}

fn check(cli: &Cli, a: &CheckArgs) -> anyhow::Result<i32> {
    let fam = read_family(&a.file)?;
    let mut problems: Vec<String> = Vec::new();
    let uniform = fam.uniform_size();
    if let Some(k) = a.k {
        if let Err(e) = fam.require_uniform(k) {
            problems.push(e.to_string());
        }
    }
    if let Err(e) = fam.require_distinct() {
        problems.push(e.to_string());
    }
    let sizes = fam.intersection_profile().ok().map(|p| p.sizes);
    if fam.is_distinct() {
        if let Some(l) = &a.l {
            if let Err(e) = fam.require_l_intersecting(&sorted_l(l)) {
                problems.push(e.to_string());
            }
        }
        if let Some(ell) = a.ell {
            if let Some((i, j)) = fam.check_ell_intersecting(ell) {
                let size = fam.members()[i].intersection_len(&fam.members()[j]);
                problems.push(format!("members {i} and {j} meet in {size} elements, fewer than {ell}"));
            }
        }
    }
    if cli.json {
        print_json(&json!({
            "n": fam.ground().size(),
            "members": fam.len(),
            "uniform": uniform,
            "distinct": fam.is_distinct(),
            "intersection_sizes": sizes,
            "ok": problems.is_empty(),
            "problems": problems,
        }));
    } else {
        println!("members: {} on [{}]", fam.len(), fam.ground().size());
        match uniform {
            Some(k) => println!("uniform: {k}"),
            None => println!("uniform: no"),
        }
        if let Some(s) = &sizes {
            println!("intersection sizes: {s:?}");
        }
        for p in &problems {
            println!("violation: {p}");
        }
        if problems.is_empty() {
            println!("ok");
        }
    }
    Ok(if problems.is_empty() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn find(cli: &Cli, a: &FindArgs) -> anyhow::Result<i32> {
    let fam = read_family(&a.file)?;
    if a.max_petals {
        let (r, cert) = max_petals(&fam)?;
        let v = json!({"max_petals": r, "certificate": crate::json::sunflower_json(&fam, &cert)});
        if let Some(p) = &a.cert_out {
            write_json(p, &v["certificate"])?;
        }
        if cli.json {
            print_json(&v);
        } else {
            println!("largest sunflower: {r} petals");
            print_certificate(&fam, &cert);
        }
        return Ok(EXIT_OK);
    }
    let r = a.r.expect("clap requires --r here");
    let res = parallel::find_sunflower_parallel(&fam, r, cli.threads)?;
    let v = search_outcome_json(&fam, &res);
    if let Some(p) = &a.cert_out {
        write_json(p, &v)?;
    }
    if cli.json {
        print_json(&v);
    } else {
        match &res {
            SunflowerSearch::Found(c) => {
                println!("sunflower with {r} petals");
                print_certificate(&fam, c);
            }
            SunflowerSearch::Free(c) => println!(
                "no sunflower with {r} petals ({} candidate kernels examined)",
                c.kernels_examined
            ),
        }
    }
    let found = res.found().is_some();
    Ok(if found != a.expect_free { EXIT_OK } else { EXIT_NEGATIVE })
}

fn print_certificate(fam: &SetFamily, c: &SunflowerCertificate) {
    println!("kernel: {:?}", c.kernel.to_vec());
    for &i in &c.petals {
        println!("petal {i}: {:?}", fam.members()[i].to_vec());
    }
}

/// `5`, `1,2,7`, `1..4` or `1..=4` (both ranges inclusive).
fn parse_ints(s: &str) -> anyhow::Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if let Some((lo, hi)) = part.split_once("..") {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let (lo, hi): (usize, usize) = (
                lo.parse().with_context(|| format!("bad range start in {part:?}"))?,
                hi.parse().with_context(|| format!("bad range end in {part:?}"))?,
            );
            if lo > hi {
                bail!("empty range {part:?}");
            }
            out.extend(lo..=hi);
        } else {
            out.push(part.parse().with_context(|| format!("bad integer {part:?}"))?);
        }
    }
    Ok(out)
}

/// `3`, `3/2` or a decimal such as `1.5`, exactly.
fn parse_rational(s: &str) -> anyhow::Result<BigRational> {
    let s = s.trim();
    if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        let num = BigInt::from_str(&digits).with_context(|| format!("bad number {s:?}"))?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(BigRational::new(num, den));
    }
    BigRational::from_str(s).map_err(|_| anyhow!("bad rational {s:?}"))
}

struct BoundRow {
    key: (usize, usize, usize, usize),
    json: Value,
    text: String,
    /// What a single-row query prints.
    short: String,
}

fn bound_row(b: &BoundValue, key: (usize, usize, usize, usize)) -> BoundRow {
    let params: Vec<String> = b
        .params
        .iter()
        .map(|(name, p)| match p {
            Param::Int(v) => format!("{name}={v}"),
            Param::Rational(q) => format!("{name}={q}"),
        })
        .collect();
    let shown = b.display(12);
    BoundRow {
        key,
        json: bound_json(b),
        text: format!(
            "{} {} {} {}{}",
            b.theorem.as_str(),
            params.join(" "),
            shown,
            b.rounding.as_str(),
            b.log_base.map(|l| format!(" log_base={}", l.as_str())).unwrap_or_default()
        ),
        short: shown,
    }
}

fn bounds(cli: &Cli, a: &BoundsArgs) -> anyhow::Result<i32> {
    let cfg = BoundConfig {
        log_base: match a.log_base {
            LogBaseArg::E => LogBase::Natural,
            LogBaseArg::Two => LogBase::Two,
        },
        precision: a.precision,
    };
    let thm = a.thm.as_str();
    let ints = |name: &str, v: &Option<String>| -> anyhow::Result<Vec<usize>> {
        match v {
            Some(s) => parse_ints(s),
            None => bail!("--thm {thm} needs --{name}"),
        }
    };
    let rat = |name: &str, v: &Option<String>| -> anyhow::Result<BigRational> {
        match v {
            Some(s) => parse_rational(s),
            None => bail!("--thm {thm} needs --{name} (no default is assumed)"),
        }
    };
    let mut rows: Vec<BoundRow> = Vec::new();
    match thm {
        "er" => {
            for k in ints("k", &a.k)? {
                for r in ints("r", &a.r)? {
                    rows.push(bound_row(&er_bound(k, r)?, (k, r, 0, 0)));
                }
            }
        }
        "kostochka" => {
            let (alpha, d) = (rat("alpha", &a.alpha)?, rat("d", &a.d)?);
            for k in ints("k", &a.k)? {
                for r in ints("r", &a.r)? {
                    rows.push(bound_row(&kostochka_bound(k, r, &alpha, &d, &cfg)?, (k, r, 0, 0)));
                }
            }
        }
        "rw" => {
            for n in ints("n", &a.n)? {
                for s in ints("s", &a.s)? {
                    rows.push(bound_row(&rw_bound(n, s)?, (0, 0, s, n)));
                }
            }
        }
        "deza" => {
            for k in ints("k", &a.k)? {
                rows.push(bound_row(&deza_bound(k)?, (k, 0, 0, 0)));
            }
        }
        "main" => {
            for k in ints("k", &a.k)? {
                for s in ints("s", &a.s)? {
                    rows.push(bound_row(&main_bound(k, s, &cfg)?, (k, 3, s, 0)));
                }
            }
        }
        "main2" => {
            let (alpha, d) = (rat("alpha", &a.alpha)?, rat("d", &a.d)?);
            for k in ints("k", &a.k)? {
                for ell in ints("ell", &a.ell)? {
                    rows.push(bound_row(&main2_bound(k, ell, &alpha, &d, &cfg)?, (k, 0, ell, 0)));
                }
            }
        }
        "main3" => {
            let d = rat("d", &a.d)?;
            for k in ints("k", &a.k)? {
                let m = main3_bound(k, &d, &cfg)?;
                let mut row = bound_row(&m.bound, (k, 0, m.ell, 0));
                row.json["lhs"] = json!(m.lhs.to_string());
                row.json["audit_holds"] = json!(m.audit_holds);
                row.text += &format!(" C(k,ell)(k-ell)!={} <= 4^k: {}", m.lhs, m.audit_holds);
                rows.push(row);
            }
        }
        "binomial-step" => {
            for n in ints("n", &a.n)? {
                let rs = match &a.r {
                    Some(s) => parse_ints(s)?,
                    None => (0..=n).collect(),
                };
                for r in rs {
                    let (lhs, quad) = binomial_step(n, r)?;
                    rows.push(BoundRow {
                        key: (0, r, 0, n),
                        json: json!({"n": n, "r": r, "binomial_holds": lhs, "quadratic_holds": quad, "agree": lhs == quad}),
                        text: format!("n={n} r={r} C(n,r)<=C(n-1,r+1): {lhs} quadratic>=0: {quad}"),
                        short: format!("{lhs} {quad}"),
                    });
                }
            }
        }
        "step-threshold" => {
            for n in ints("n", &a.n)? {
                let t = binomial_step_threshold(n, &cfg);
                let failures = binomial_step_threshold_failures(n, &cfg);
                rows.push(BoundRow {
                    key: (0, 0, 0, n),
                    json: json!({"n": n, "threshold": t.to_string(), "threshold_approx": to_f64(&t), "rounding_mode": "ROUNDED_DOWN", "failures": failures}),
                    text: format!("n={n} threshold>={:.6} failures {failures:?}", to_f64(&t)),
                    short: format!("{:.6}", to_f64(&t)),
                });
            }
        }
        "split-binomial" => {
            for k in ints("k", &a.k)? {
                let audit = split_binomial_check(k, &cfg)?;
                let worst = audit.rows.iter().map(|r| r.1.clone()).max().unwrap_or_default();
                rows.push(BoundRow {
                    key: (k, 0, 0, 0),
                    json: json!({
                        "k": k,
                        "holds": audit.holds,
                        "rhs_lower": audit.rhs_lower.to_string(),
                        "rhs_lower_approx": to_f64(&audit.rhs_lower),
                        "rows": audit.rows.iter().map(|(l, b, ok)| json!({"ell": l, "binomial": b.to_string(), "holds": ok})).collect::<Vec<_>>(),
                    }),
                    text: format!("k={k} max C(2k-ell,ell+1)={worst} rhs>={:.6e} holds: {}", to_f64(&audit.rhs_lower), audit.holds),
                    short: audit.holds.to_string(),
                });
            }
        }
        "recursion" => {
            let variants = match a.variant {
                VariantArg::AsStated => vec![RecursionVariant::AsStated],
                VariantArg::AsProved => vec![RecursionVariant::AsProved],
                VariantArg::Both => vec![RecursionVariant::AsStated, RecursionVariant::AsProved],
            };
            let base = |k: usize| default_recursion_base(k);
            for k in ints("k", &a.k)? {
                for s in ints("s", &a.s)? {
                    for &v in &variants {
                        rows.push(bound_row(&sunflower_core::bounds::recursion_f_bound(k, s, v, &base)?, (k, 3, s, 0)));
                    }
                }
            }
        }
        "ahs" => {
            let c = rat("c", &a.c)?;
            for k in ints("k", &a.k)? {
                rows.push(bound_row(&ahs_lower_bound(k, &c, &cfg)?, (k, 3, 0, 0)));
            }
        }
        "f-lower" => {
            let c = rat("c", &a.c)?;
            for s in ints("s", &a.s)? {
                rows.push(bound_row(&f_lower_bound(s, &c, &cfg)?, (0, 3, s, 0)));
            }
        }
        other => bail!(
            "unknown --thm {other:?}; expected er, kostochka, rw, deza, main, main2, main3, \
             binomial-step, step-threshold, split-binomial, recursion, ahs or f-lower"
        ),
    }
    rows.sort_by_key(|r| r.key);
    if cli.json {
        print_json(&Value::Array(rows.into_iter().map(|r| r.json).collect()));
    } else if rows.len() == 1 {
        println!("{}", rows[0].short);
    } else {
        for r in rows {
            println!("{}", r.text);
        }
    }
    Ok(EXIT_OK)
}

fn construct(cli: &Cli, a: &ConstructArgs) -> anyhow::Result<i32> {
    let fam = match &a.kind {
        ConstructKind::Transversal { k, r } => transversal_family(*k, *r)?,
        ConstructKind::Fano => fano_plane(),
        ConstructKind::Product { a, b } => product_compose(&read_family(a)?, &read_family(b)?)?,
    };
    let text = write_family(&fam);
    match &a.out {
        Some(p) => fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?,
        None if !cli.json => print!("{text}"),
        None => {}
    }
    if cli.json {
        print_json(&family_json(&fam));
    }
    Ok(EXIT_OK)
}

fn search(cli: &Cli, a: &SearchArgs) -> anyhow::Result<i32> {
    let budget = resolve_budget(a.budget)?;
    let threads = if a.deterministic { 1 } else { cli.threads };
    let constraints: Vec<Constraint> = match (a.s, &a.l, a.ell) {
        (Some(s), _, _) => {
            if s == 0 || s > a.k {
                bail!("--s must lie in 1..={}", a.k);
            }
            l_choices(a.k, s).into_iter().map(Constraint::Sizes).collect()
        }
        (_, Some(l), _) => vec![Constraint::Sizes(sorted_l(l))],
        (_, _, Some(0)) | (None, None, None) => vec![Constraint::Unconstrained],
        (_, _, Some(ell)) => vec![Constraint::AtLeast(ell)],
    };
    let resume = match &a.resume {
        Some(p) => {
            if constraints.len() != 1 || a.certify || matches!(a.iso, IsoArg::Full) {
                bail!("--resume needs a single L, no --certify and --iso other than full");
            }
            Some(parse_checkpoint(&read_json(p)?)?)
        }
        None => None,
    };
    let cfg = SearchConfig {
        budget,
        symmetry: match a.iso {
            IsoArg::None => Symmetry::None,
            IsoArg::Transpositions => Symmetry::Transpositions,
            IsoArg::Full => Symmetry::Full,
        },
        use_er_cap: !a.no_er_cap,
        resume,
        ..SearchConfig::default()
    };

    let mut exhausted = false;
    let mut outputs: Vec<Value> = Vec::new();
    let mut best: Option<(usize, SetFamily)> = None;
    let mut lines: Vec<String> = Vec::new();
    if a.certify {
        let n_limit = a.nmax.unwrap_or(sunflower_core::search::MAX_SEARCH_GROUND);
        for c in &constraints {
            let v: ExtremalValue = certified_search(a.k, a.r, c.clone(), n_limit, &cfg)?;
            exhausted |= !v.exhaustive;
            lines.push(format!(
                "{} optimum {} at n_max={} ({}{}, {} nodes)",
                describe(c),
                v.value,
                v.n_max,
                if v.certified { "certified for every n" } else { "lower confidence" },
                if v.exhaustive { "" } else { ", budget exhausted" },
                v.nodes
            ));
            outputs.push(extremal_json(&v));
            if best.as_ref().map_or(true, |b| v.value > b.0) {
                best = Some((v.value, v.witness.clone()));
            }
        }
    } else {
        let n_max = a.nmax.context("--nmax is required without --certify")?;
        for c in &constraints {
            let problem = SearchProblem::new(a.k, a.r, c.clone(), n_max)?;
            let res: SearchResult = parallel::search(&problem, &cfg, threads)?;
            exhausted |= !res.exhaustive;
            if let (Some(p), Some(cp)) = (&a.checkpoint_out, &res.checkpoint) {
                write_json(p, &checkpoint_json(cp))?;
            }
            lines.push(format!(
                "{} optimum {} on [{n_max}] ({}, {} nodes)",
                describe(c),
                res.optimum,
                if res.exhaustive { "exhaustive" } else { "budget exhausted, lower bound" },
                res.nodes_explored
            ));
            outputs.push(search_result_json(a.k, a.r, c, n_max, &res));
            if best.as_ref().map_or(true, |b| res.optimum > b.0) {
                best = Some((res.optimum, res.witness.clone()));
            }
        }
    }
    let (optimum, witness) = best.expect("at least one constraint");
    if let Some(p) = &a.witness_out {
        fs::write(p, write_family(&witness)).with_context(|| format!("writing {}", p.display()))?;
    }
    if cli.json {
        if outputs.len() == 1 {
            print_json(&outputs[0]);
        } else {
            print_json(&json!({
                "k": a.k,
                "r": a.r,
                "s": a.s,
                "optimum": optimum,
                "exhaustive": !exhausted,
                "per_L": outputs,
            }));
        }
    } else {
        for l in &lines {
            println!("{l}");
        }
        if constraints.len() > 1 {
            println!("maximum over L: {optimum}");
        }
        println!("witness:");
        print!("{}", write_family(&witness));
    }
    Ok(if exhausted { EXIT_BUDGET } else { EXIT_OK })
}

fn describe(c: &Constraint) -> String {
    match c {
        Constraint::Unconstrained => "unconstrained".into(),
        Constraint::Sizes(l) => format!("L={l:?}"),
        Constraint::AtLeast(ell) => format!("ell={ell}"),
    }
}

/// Errors that describe the family rather than the invocation.
fn is_finding(e: &CoreError) -> bool {
    matches!(
        e,
        CoreError::NotUniform { .. }
            | CoreError::IntersectionViolation { .. }
            | CoreError::ContainsSunflower { .. }
            | CoreError::DuplicateMember { .. }
            | CoreError::TooFewMembers { .. }
    )
}

fn decompose(cli: &Cli, a: &DecomposeArgs) -> anyhow::Result<i32> {
    let fam = read_family(&a.file)?;
    if let Some(ell) = a.ell {
        let audit = match cover_ell_intersecting(&fam, ell, a.f0) {
            Ok(audit) => audit,
            Err(e) if is_finding(&e) => {
                eprintln!("precondition violated: {e}");
                return Ok(EXIT_NEGATIVE);
            }
            Err(e) => return Err(e.into()),
        };
        let v = cover_json(&audit, fam.len());
        if let Some(p) = &a.cert_out {
            write_json(p, &v)?;
        }
        if cli.json {
            print_json(&v);
        } else {
            println!(
                "{} parts over the {ell}-subsets of member {}; largest part {}; |F| = {} <= {}: {}",
                audit.parts.len(),
                audit.f0,
                audit.max_part,
                fam.len(),
                audit.count_bound,
                audit.holds(fam.len())
            );
            if let Some(u) = audit.uncovered {
                println!("member {u} is not covered");
            }
        }
        return Ok(if audit.holds(fam.len()) { EXIT_OK } else { EXIT_NEGATIVE });
    }

    let l = match &a.l {
        Some(l) => sorted_l(l),
        None => fam.intersection_profile()?.sizes,
    };
    let node = match decompose_l_intersecting(&fam, &l) {
        Ok(node) => node,
        Err(e) if is_finding(&e) => {
            eprintln!("precondition violated: {e}");
            return Ok(EXIT_NEGATIVE);
        }
        Err(e) => return Err(e.into()),
    };
    let problems = verify_decomposition(&fam, &l, &node);
    let v = decomposition_json(&node);
    if let Some(p) = &a.cert_out {
        write_json(p, &v)?;
    }
    if cli.json {
        print_json(&v);
    } else {
        node.walk(&mut |depth, n| {
            println!(
                "{}{} |F|={} k={} L={:?} bound={}",
                "  ".repeat(depth),
                n.case.as_str(),
                n.family_size,
                n.k,
                n.l,
                n.certified_bound
            );
        });
        println!("certified bound {} for {} members", node.certified_bound, fam.len());
    }
    for p in &problems {
        eprintln!("certificate problem: {p}");
    }
    Ok(if problems.is_empty() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn verify_cert(cli: &Cli, a: &VerifyArgs) -> anyhow::Result<i32> {
    let fam = read_family(&a.family)?;
    let v = read_json(&a.cert)?;
    let (kind, problems) = if v.get("case").is_some() {
        ("decomposition", verify_decomposition_cert(&fam, &v)?)
    } else if v.get("petals").is_some() || v.get("sunflower_free").is_some() {
        ("sunflower", verify_sunflower_cert(&fam, &v)?)
    } else if v.get("parts").is_some() {
        ("cover", verify_cover_cert(&fam, &v)?)
    } else if v.get("optimum").is_some() {
        ("search", verify_search_cert(&fam, &v)?)
    } else {
        bail!("{}: not a recognized certificate", a.cert.display());
    };
    if cli.json {
        print_json(&json!({"kind": kind, "valid": problems.is_empty(), "problems": problems}));
    } else if problems.is_empty() {
        println!("valid {kind} certificate");
    } else {
        println!("invalid {kind} certificate");
        for p in &problems {
            println!("  {p}");
        }
    }
    Ok(if problems.is_empty() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn verify_decomposition_cert(fam: &SetFamily, v: &Value) -> anyhow::Result<Vec<String>> {
    let node = parse_decomposition(v)?;
    let l = node.l.clone();
    Ok(verify_decomposition(fam, &l, &node))
}

fn verify_sunflower_cert(fam: &SetFamily, v: &Value) -> anyhow::Result<Vec<String>> {
    let mut problems = Vec::new();
    match parse_sunflower_claim(v)? {
        SunflowerClaim::Found { r, kernel, petals } => {
            let mut idx = Vec::new();
            for p in &petals {
                match fam.members().iter().position(|m| m == p) {
                    Some(i) => idx.push(i),
                    None => problems.push(format!("petal {:?} is not a member", p.to_vec())),
                }
            }
            if petals.len() != r {
                problems.push(format!("{} petals listed for r = {r}", petals.len()));
            }
            if problems.is_empty() {
                idx.sort_unstable();
                let cert = SunflowerCertificate { r, petals: idx, kernel };
                if !verify_sunflower(fam, &cert)? {
                    problems.push("petals do not form a sunflower with the given kernel".into());
                }
            }
        }
        SunflowerClaim::Free { r, kernels_examined } => {
            match sunflower_core::detect::find_sunflower(fam, r)? {
                SunflowerSearch::Found(c) => problems.push(format!(
                    "members {:?} form a sunflower with {r} petals",
                    c.petals
                )),
                SunflowerSearch::Free(c) if c.kernels_examined != kernels_examined => problems.push(format!(
                    "{} candidate kernels, certificate claims {kernels_examined}",
                    c.kernels_examined
                )),
                SunflowerSearch::Free(_) => {}
            }
        }
    }
    Ok(problems)
}

fn verify_cover_cert(fam: &SetFamily, v: &Value) -> anyhow::Result<Vec<String>> {
    let ell = v["ell"].as_u64().context("cover certificate needs \"ell\"")? as usize;
    let f0 = v["F0"].as_u64().context("cover certificate needs \"F0\"")? as usize;
    let audit = cover_ell_intersecting(fam, ell, f0)?;
    let expected = cover_json(&audit, fam.len());
    let mut problems = Vec::new();
    if expected != *v {
        problems.push("cover differs from the recomputed one".to_string());
    }
    if !audit.holds(fam.len()) {
        problems.push("the cover does not bound the family".to_string());
    }
    Ok(problems)
}

fn verify_search_cert(fam: &SetFamily, v: &Value) -> anyhow::Result<Vec<String>> {
    let get = |key: &str| -> anyhow::Result<usize> {
        Ok(v[key].as_u64().with_context(|| format!("search certificate needs {key:?}"))? as usize)
    };
    let (k, r, n_max, optimum) = (get("k")?, get("r")?, get("n_max")?, get("optimum")?);
    let c = &v["constraint"];
    let constraint = match c["kind"].as_str() {
        Some("none") => Constraint::Unconstrained,
        Some("L") => Constraint::Sizes(
            serde_json::from_value(c["L"].clone()).context("constraint \"L\" must be a list")?,
        ),
        Some("ell") => Constraint::AtLeast(c["ell"].as_u64().context("constraint needs \"ell\"")? as usize),
        _ => bail!("unknown constraint {c}"),
    };
    let mut problems = Vec::new();
    let witness: Vec<Vec<usize>> =
        serde_json::from_value(v["witness"].clone()).context("\"witness\" must be a list of sets")?;
    let members: Vec<Vec<usize>> = fam.members().iter().map(|m| m.to_vec()).collect();
    if witness != members {
        problems.push("the family file is not the certificate's witness".to_string());
    }
    if optimum != fam.len() {
        problems.push(format!("optimum {optimum} but the witness has {} members", fam.len()));
    }
    let ground = fam.ground().size();
    if ground > n_max {
        problems.push(format!("witness lives on [{ground}], beyond n_max = {n_max}"));
    }
    let problem = SearchProblem::new(k, r, constraint, n_max)?;
    if let Err(e) = verify_witness(&problem, fam) {
        problems.push(e.to_string());
    }
    Ok(problems)
}

fn report_cmd(cli: &Cli, a: &ReportArgs) -> anyhow::Result<i32> {
    let mut cfg = ReportConfig {
        seed: cli.seed,
        threads: cli.threads,
        budget: resolve_budget(a.budget)?,
        ..ReportConfig::default()
    };
    if let Some(t) = a.trials {
        cfg.trials = t;
    }
    if !a.reproduce_table {
        let rows = report::extremal_tables(&cfg)?;
        if cli.json {
            print_json(&Value::Array(
                rows.iter()
                    .map(|r| {
                        let mut v = extremal_json(&r.value);
                        v["table"] = json!(r.kind);
                        v["exact"] = json!(r.exact);
                        v["within_bounds"] = json!(r.within_bounds);
                        v["bounds"] = json!(r.bounds);
                        v
                    })
                    .collect(),
            ));
        } else {
            for r in &rows {
                println!("{r}");
            }
        }
        let ok = rows.iter().all(|r| r.within_bounds);
        return Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE });
    }
    let ids: Vec<u8> = match a.criterion {
        Some(id) => vec![id],
        None => report::CRITERIA.iter().map(|c| c.0).collect(),
    };
    let mut all = true;
    let mut out = Vec::new();
    for id in ids {
        let c = report::run_one(id, &cfg);
        all &= c.passed;
        if cli.json {
            out.push(json!({"id": c.id, "title": c.title, "passed": c.passed, "detail": c.detail, "seconds": c.seconds}));
        } else {
            println!("{c}");
        }
    }
    if cli.json {
        print_json(&json!({"seed": cfg.seed, "trials": cfg.trials, "criteria": out}));
    }
    Ok(if all { EXIT_OK } else { EXIT_NEGATIVE })
}
