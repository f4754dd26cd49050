//! `intcx`: build, query and analyse integer complexity tables.
//!
//! Exit codes: 0 on success with every checked hypothesis holding, 1 when a
//! verification found counterexamples, 2 on usage, configuration or data
//! errors.

pub mod emit;
pub mod rows;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use intcomplexity::analysis::{
    chain_scan, check_defect_rank, check_e_closed, check_e_primes, check_log_bound,
    check_pow2_plus1, check_prime_step, check_products, collapse_scan, derive_sequences,
    fit_e_asymptote, first_operation_scan, has_ties, mersenne_table, reconstruct,
    top_log_complexity, Policy, ProductKind, SeqEntry,
};
use intcomplexity::{
    build_dp, build_sieve, load, oracle_complexity, oracle_default, resume_dp, save,
    ComplexityTable, DpOptions, Error, Report,
};

use emit::{Format, Meta};
use rows::*;

/// Largest `n` answered without `--table` (a sieve with ranks is built).
const QUERY_SIEVE_MAX: u64 = 10_000_000;

#[derive(Parser, Debug)]
#[command(name = "intcx", version, about = "Integer complexity tables and analyses")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Sieve,
    Dp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Pow2,
    Pow3,
    Pow235,
    Pow2Plus1,
    Mersenne,
    DefectRank,
    EClosed,
    EPrimes,
    PrimeStep,
    LogBound,
    /// Every check the table supports.
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    Any,
    MinHeight,
}

#[derive(clap::Args, Debug)]
pub struct TableArgs {
    #[arg(long)]
    pub table: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a table and write it to `--out`.
    Build {
        #[arg(long)]
        limit: u64,
        #[arg(long, value_enum, default_value = "sieve")]
        algo: Algo,
        /// Also record ranks (sieve only).
        #[arg(long)]
        ranks: bool,
        #[arg(long)]
        out: PathBuf,
        /// Write a checkpoint to `--out` every K entries (dp only).
        #[arg(long, value_name = "K")]
        checkpoint_every: Option<u64>,
        /// Continue from a checkpoint or a smaller table (dp only).
        #[arg(long, value_name = "FILE")]
        resume: Option<PathBuf>,
    },
    /// ‖n‖ and rank for each n.
    Query {
        #[arg(required = true)]
        n: Vec<u64>,
        /// Without a table, a sieve up to max(n) is built on the fly.
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Every shortest expression of n by exhaustive enumeration.
    Oracle {
        n: u64,
        #[arg(long, value_name = "K")]
        max_ones: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Derived sequences e, E, E2 and r.
    Seq {
        #[command(flatten)]
        t: TableArgs,
    },
    /// Check hypotheses over the table range.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[command(flatten)]
        t: TableArgs,
    },
    /// Smallest collapsing power of each prime.
    Collapse {
        #[arg(long, value_name = "P", default_value_t = 1000)]
        primes_below: u64,
        #[command(flatten)]
        t: TableArgs,
    },
    /// Backward Cunningham chains ending at reliable e(n).
    Chains {
        #[command(flatten)]
        t: TableArgs,
    },
    /// Numbers whose shortest expressions must start with a sum other than +1.
    Firstop {
        #[command(flatten)]
        t: TableArgs,
    },
    /// Least-squares fit of log₃ e(n) against n.
    FitE {
        #[arg(long)]
        from: Option<u32>,
        #[arg(long)]
        to: Option<u32>,
        #[command(flatten)]
        t: TableArgs,
    },
    /// Largest values of ‖n‖ / log₃ n.
    TopLog {
        #[arg(long, value_name = "C", default_value_t = 16)]
        count: usize,
        #[command(flatten)]
        t: TableArgs,
    },
    /// A shortest expression for n rebuilt from the table.
    Expr {
        n: u64,
        #[arg(long, value_enum, default_value = "any")]
        policy: PolicyArg,
        #[command(flatten)]
        t: TableArgs,
    },
}

/// A command's stdout text and whether a verification failed.
pub struct Output {
    pub text: String,
    pub counterexamples: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, counterexamples: false }
    }
}

#[derive(Debug)]
pub struct Failure(pub String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<String> for Failure {
    fn from(s: String) -> Self {
        Failure(s)
    }
}

type Res<T> = Result<T, Failure>;

/// Parse `args` and run; returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            if out.counterexamples {
                1
            } else {
                0
            }
        }
        Err(Failure(msg)) => {
            eprintln!("intcx: {msg}");
            2
        }
    }
}

fn open(path: &Path) -> Res<ComplexityTable> {
    Ok(load(path)?)
}

fn table_meta(t: &ComplexityTable) -> Meta {
    Meta::new().with("limit", t.limit()).with("algorithm", t.algorithm().as_str())
}

pub fn run(cmd: Command) -> Res<Output> {
    match cmd {
        Command::Build { limit, algo, ranks, out, checkpoint_every, resume } => {
            build(limit, algo, ranks, &out, checkpoint_every, resume.as_deref())
        }
        Command::Query { n, table, format } => query(&n, table.as_deref(), format),
        Command::Oracle { n, max_ones, format } => oracle(n, max_ones, format),
        Command::Seq { t } => seq(&open(&t.table)?, t.format),
        Command::Verify { check, t } => verify(&open(&t.table)?, check, t.format),
        Command::Collapse { primes_below, t } => {
            let table = open(&t.table)?;
            let recs: Vec<CollapseRow> =
                collapse_scan(&table, primes_below.saturating_sub(1)).iter().map(Into::into).collect();
            let meta = table_meta(&table).with("primes_below", primes_below);
            Ok(Output::ok(emit::rows(t.format, &meta, &recs)?))
        }
        Command::Chains { t } => {
            let table = open(&t.table)?;
            let s = derive_sequences(&table);
            let recs: Vec<ChainRow> = chain_scan(&s).iter().map(Into::into).collect();
            let meta = table_meta(&table).with("e_reliable_up_to", s.e_reliable_up_to());
            Ok(Output::ok(emit::rows(t.format, &meta, &recs)?))
        }
        Command::Firstop { t } => {
            let table = open(&t.table)?;
            let recs: Vec<FirstOpRow> = first_operation_scan(&table)
                .into_iter()
                .map(|r| FirstOpRow {
                    n: r.n,
                    has_product_decomposition: r.has_product_decomposition,
                    minimal_addend: r.minimal_addend,
                    classification: r.classification.to_string(),
                })
                .collect();
            let meta = table_meta(&table).with("found", recs.len());
            Ok(Output::ok(emit::rows(t.format, &meta, &recs)?))
        }
        Command::FitE { from, to, t } => {
            let table = open(&t.table)?;
            let s = derive_sequences(&table);
            let range = (from.is_some() || to.is_some())
                .then(|| (from.unwrap_or(1), to.unwrap_or(u32::MAX)));
            let fit = fit_e_asymptote(&s, range)?;
            let recs: Vec<ResidualRow> = fit.residuals.iter().map(Into::into).collect();
            let meta = table_meta(&table)
                .with("slope", r6(fit.slope))
                .with("intercept", r6(fit.intercept))
                .with("from", fit.range.0)
                .with("to", fit.range.1);
            Ok(Output::ok(emit::rows(t.format, &meta, &recs)?))
        }
        Command::TopLog { count, t } => {
            let table = open(&t.table)?;
            let top = top_log_complexity(&table, count);
            let recs: Vec<TopLogOut> = top.iter().map(Into::into).collect();
            let meta = table_meta(&table).with("ties", has_ties(&top));
            Ok(Output::ok(emit::rows(t.format, &meta, &recs)?))
        }
        Command::Expr { n, policy, t } => {
            let table = open(&t.table)?;
            let policy = match policy {
                PolicyArg::Any => Policy::AnyShortest,
                PolicyArg::MinHeight => Policy::MinHeight,
            };
            let e = reconstruct(&table, n, policy)?;
            let row =
                ExprRow { n, ones: e.ones(), height: e.height(), postfix: e.to_postfix(), infix: e.to_string() };
            if t.format == Format::Text {
                return Ok(Output::ok(format!(
                    "{n} = {}\npostfix {}\nones {}, height {}\n",
                    row.infix, row.postfix, row.ones, row.height
                )));
            }
            Ok(Output::ok(emit::rows(t.format, &table_meta(&table), &[row])?))
        }
    }
}

fn build(
    limit: u64,
    algo: Algo,
    ranks: bool,
    out: &Path,
    checkpoint_every: Option<u64>,
    resume: Option<&Path>,
) -> Res<Output> {
    let t0 = Instant::now();
    let table = match algo {
        Algo::Sieve => {
            if checkpoint_every.is_some() || resume.is_some() {
                return Err(Failure("--checkpoint-every and --resume need --algo dp".into()));
            }
            let t = build_sieve(limit, ranks)?;
            save(&t, out)?;
            t
        }
        Algo::Dp => {
            if ranks {
                return Err(Failure("ranks are only produced by the sieve builder".into()));
            }
            let opts = DpOptions { checkpoint_every, out: Some(out.to_path_buf()), ..Default::default() };
            match resume {
                Some(ckpt) => {
                    let t = resume_dp(ckpt, limit, &opts)?;
                    save(&t, out)?;
                    t
                }
                None => build_dp(limit, &opts)?,
            }
        }
    };
    Ok(Output::ok(format!(
        "built {} entries with {}{} in {:.2}s -> {}\n",
        table.limit(),
        table.algorithm().as_str(),
        if table.has_ranks() { " (with ranks)" } else { "" },
        t0.elapsed().as_secs_f64(),
        out.display()
    )))
}

fn query(ns: &[u64], table: Option<&Path>, format: Format) -> Res<Output> {
    let t = match table {
        Some(p) => open(p)?,
        None => {
            let hi = *ns.iter().max().expect("at least one n");
            if ns.contains(&0) {
                return Err(Failure("n must be at least 1".into()));
            }
            if hi > QUERY_SIEVE_MAX {
                return Err(Failure(format!(
                    "n > {QUERY_SIEVE_MAX} needs a prebuilt --table"
                )));
            }
            build_sieve(hi.max(2), true)?
        }
    };
    let recs: Vec<QueryRow> = ns
        .iter()
        .map(|&n| Ok(QueryRow { n, complexity: t.complexity(n)?, rank: t.rank(n) }))
        .collect::<Res<_>>()?;
    if format == Format::Text {
        let line = |r: &QueryRow| match r.rank {
            Some(k) => format!("complexity {}, rank {k}", r.complexity),
            None => format!("complexity {}", r.complexity),
        };
        let text: String = if recs.len() == 1 {
            line(&recs[0]) + "\n"
        } else {
            recs.iter().map(|r| format!("{}: {}\n", r.n, line(r))).collect()
        };
        return Ok(Output::ok(text));
    }
    Ok(Output::ok(emit::rows(format, &table_meta(&t), &recs)?))
}

fn oracle(n: u64, max_ones: Option<u32>, format: Format) -> Res<Output> {
    if n == 0 {
        return Err(Failure("n must be at least 1".into()));
    }
    let r = match max_ones {
        Some(k) => oracle_complexity(n, k)?,
        None => oracle_default(n)?,
    };
    let recs: Vec<OracleRow> = r
        .shortest
        .iter()
        .map(|e| OracleRow {
            n,
            complexity: r.complexity,
            min_height: r.min_height,
            height: e.height(),
            postfix: e.to_postfix(),
            infix: e.to_string(),
        })
        .collect();
    let meta = Meta::new()
        .with("n", n)
        .with("complexity", r.complexity)
        .with("min_height", r.min_height)
        .with("shortest", recs.len());
    Ok(Output::ok(emit::rows(format, &meta, &recs)?))
}

fn seq(t: &ComplexityTable, format: Format) -> Res<Output> {
    let s = derive_sequences(t);
    let mut recs = Vec::new();
    let mut push = |name: &str, xs: &[SeqEntry]| {
        recs.extend(xs.iter().map(|x| SeqRow {
            sequence: name.into(),
            index: x.index,
            value: x.value,
            reliable: x.reliable,
        }))
    };
    push("e", &s.e);
    push("E", &s.e_max);
    push("E2", &s.e2_max);
    let r_hi = match &s.r {
        Some(r) => {
            push("r", r);
            r.iter().filter(|x| x.reliable).map(|x| x.index).max()
        }
        None => None,
    };
    let meta = table_meta(t)
        .with("e_reliable_up_to", s.e_reliable_up_to())
        .with("E_reliable_up_to", s.e_max_reliable_up_to())
        .with("r_reliable_up_to", r_hi);
    Ok(Output::ok(emit::rows(format, &meta, &recs)?))
}

fn verify(t: &ComplexityTable, check: Check, format: Format) -> Res<Output> {
    let s = derive_sequences(t);
    let one = |c: Check| -> Res<Report> {
        Ok(match c {
            Check::Pow2 => check_products(t, ProductKind::Pow2),
            Check::Pow3 => check_products(t, ProductKind::Pow3),
            Check::Pow235 => check_products(t, ProductKind::Pow235),
            Check::Pow2Plus1 => check_pow2_plus1(t),
            Check::Mersenne => mersenne_table(t).report,
            Check::DefectRank => check_defect_rank(t)?,
            Check::EClosed => check_e_closed(t, &s),
            Check::EPrimes => check_e_primes(t, &s),
            Check::PrimeStep => check_prime_step(t),
            Check::LogBound => check_log_bound(t, &s),
            Check::All => unreachable!(),
        })
    };
    let reports: Vec<Report> = if check == Check::All {
        let mut all = vec![
            Check::Pow2,
            Check::Pow3,
            Check::Pow235,
            Check::Pow2Plus1,
            Check::Mersenne,
            Check::EClosed,
            Check::EPrimes,
            Check::PrimeStep,
            Check::LogBound,
        ];
        if t.has_ranks() {
            all.insert(5, Check::DefectRank);
        }
        all.into_iter().map(one).collect::<Res<_>>()?
    } else {
        vec![one(check)?]
    };
    let failed = reports.iter().any(|r| !r.holds());
    let text = match format {
        Format::Json => emit::rows(format, &table_meta(t), &reports)?,
        Format::Csv => {
            let recs: Vec<VerifyRow> = reports.iter().flat_map(VerifyRow::from_report).collect();
            emit::rows(format, &table_meta(t), &recs)?
        }
        Format::Text => {
            let mut out = format!("# limit: {}\n# algorithm: {}\n", t.limit(), t.algorithm().as_str());
            for r in &reports {
                if r.holds() {
                    out += &format!("{}: holds ({} checked)\n", r.check, r.checked);
                } else {
                    out += &format!(
                        "{}: {} counterexamples ({} checked)\n",
                        r.check,
                        r.counterexamples.len(),
                        r.checked
                    );
                    for c in &r.counterexamples {
                        out += &format!("  {}: {}\n", c.n, c.detail);
                    }
                }
                for (k, v) in &r.stats {
                    out += &format!("  {k} = {v}\n");
                }
            }
            out
        }
    };
    Ok(Output { text, counterexamples: failed })
}
