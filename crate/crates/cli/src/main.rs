//! `ctidlab`: verify constant-term identities, run parameter sweeps, and
//! experiment with restricted sumsets. Every command prints JSON Lines with
//! sorted keys.
//!
//! Exit codes: 0 success (all equal), 1 an identity came out unequal,
//! 2 usage or parameter error, 3 a size limit or timeout was hit.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use ctidlab::identities::{
    cyclic_permutation, invariance_check, kadell_hypothesis_probe, plain_matrix_ct, q_matrix_ct, rationality_probe,
    run_cases, verify, Family, IdentityCase, Method, ParamMatrix, Params, Span, Status, SweepConfig, SweepSummary,
    VerifyReport,
};
use ctidlab::sumsets::{bound_check, restricted_sumset, SumsetInstance};
use ctidlab::{Budget, Error};
use serde_json::{json, Value as Json};

#[derive(Parser)]
#[command(name = "ctidlab", version, about = "Exact constant-term identity laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a single identity case.
    Verify(VerifyArgs),
    /// Constant term of the Laurent product of a parameter matrix.
    Ct(CtArgs),
    /// Verify every case of a parameter grid.
    Sweep(SweepArgs),
    /// Enumerate a restricted sumset.
    Sumset(SumsetArgs),
    /// Experiments around the identities.
    #[command(subcommand)]
    Probe(Probe),
}

#[derive(Args)]
struct BudgetArgs {
    /// Largest intermediate term count (overrides CTIDLAB_MAX_TERMS).
    #[arg(long)]
    max_terms: Option<usize>,
    /// Largest number of grid points or enumerated tuples.
    #[arg(long)]
    max_points: Option<u64>,
    /// Wall-clock limit in milliseconds (per case for sweeps).
    #[arg(long)]
    timeout_ms: Option<u64>,
}

impl BudgetArgs {
    fn timeout(&self) -> Option<Duration> {
        self.timeout_ms.map(Duration::from_millis)
    }

    /// Budget without a deadline.
    fn base(&self) -> Budget {
        let mut b = Budget::from_env();
        if let Some(t) = self.max_terms {
            b = b.with_max_terms(t);
        }
        if let Some(p) = self.max_points {
            b = b.with_max_points(p);
        }
        b
    }

    fn start(&self) -> Budget {
        match self.timeout() {
            Some(t) => self.base().with_timeout(t),
            None => self.base(),
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Case as JSON (`{"family", "params", "method"}`), `@FILE`, or `-` for stdin.
    #[arg(long, conflicts_with = "family")]
    json: Option<String>,
    #[arg(long)]
    family: Option<String>,
    /// Scalar `a`, or the exponent vector for Dyson-type families.
    #[arg(long, value_delimiter = ',')]
    a: Option<Vec<u32>>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    n0: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    b: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    /// Index set M (1-based) of the Kadell corollary.
    #[arg(long, value_delimiter = ',')]
    mset: Option<Vec<usize>>,
    /// brute, interp, both or rhs_only.
    #[arg(long, default_value = "both")]
    method: String,
    /// Leave `elapsed_ms` out of the report.
    #[arg(long)]
    no_timing: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct CtArgs {
    /// Matrix as a JSON list of rows, `@FILE`, or `-` for stdin.
    matrix: String,
    /// Use the q-analogue of the product.
    #[arg(long)]
    q: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    family: String,
    /// Ranges are `N`, `LO..HI` or `LO..=HI`, all inclusive.
    #[arg(long, value_parser = span)]
    n: Span,
    #[arg(long, value_parser = span)]
    n0: Option<Span>,
    #[arg(long, value_parser = span)]
    m: Option<Span>,
    /// Range of `a`, or of every entry of a vector `a`.
    #[arg(long, value_parser = span)]
    a: Span,
    #[arg(long, value_parser = span)]
    b: Option<Span>,
    #[arg(long, value_parser = span)]
    k: Option<Span>,
    #[arg(long, value_parser = span)]
    r: Option<Span>,
    #[arg(long, value_parser = span)]
    s: Option<Span>,
    #[arg(long, default_value = "both")]
    method: String,
    /// Include cases outside the proven range; they are counted separately.
    #[arg(long)]
    conjecture: bool,
    /// Worker threads (defaults to the available parallelism).
    #[arg(long)]
    threads: Option<usize>,
    /// Write reports here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    no_timing: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct SumsetArgs {
    /// Instance `{"p", "A", "S"}` as JSON, `@FILE`, or `-` for stdin.
    instance: String,
    /// Compare the size with the lower bound for equal-size sets.
    #[arg(long)]
    bound: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Subcommand)]
enum Probe {
    /// Fit a rational function of q^k to a normalized monomial-times-Dyson constant term.
    Rationality {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        r: Vec<i32>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        s: Vec<i32>,
        #[arg(long, value_parser = span, default_value = "1..5")]
        ks: Span,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check every index set M of size m and every assignment r_s against the q-hypothesis.
    Kadell {
        #[arg(long, value_delimiter = ',')]
        a: Vec<u32>,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Compare constant terms before and after a simultaneous permutation.
    Invariance {
        /// Matrix as a JSON list of rows, `@FILE`, or `-`.
        matrix: String,
        /// Permutation of 0..=n; defaults to the cycle n -> n-1 -> ... -> 0 -> n.
        #[arg(long, value_delimiter = ',')]
        perm: Option<Vec<usize>>,
        #[arg(long)]
        q: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check the two-sided Xin identity with exponent r against the Dyson value.
    XinHr {
        #[arg(long)]
        r: u32,
        #[arg(long, value_delimiter = ',')]
        a: Vec<u32>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

fn span(s: &str) -> Result<Span, String> {
    Span::parse(s).map_err(|e| e.to_string())
}

/// Failure that ends a command with a specific exit code.
struct Fail {
    code: u8,
    message: String,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            _ if e.is_resource() => 3,
            Error::ReconstructionFailed(_) => 1,
            _ => 2,
        };
        Fail {
            code,
            message: json!({"error": {"kind": e.kind(), "message": e.to_string()}}).to_string(),
        }
    }
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Self {
        Fail {
            code: 2,
            message: json!({"error": {"kind": "io", "message": e.to_string()}}).to_string(),
        }
    }
}

type CmdResult = Result<u8, Fail>;

fn read_json(arg: &str) -> Result<Json, Fail> {
    let text = if arg == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path)?
    } else {
        arg.to_string()
    };
    serde_json::from_str(&text).map_err(|e| Error::bad(format!("invalid JSON: {e}")).into())
}

fn read_matrix(arg: &str) -> Result<ParamMatrix, Fail> {
    let v = read_json(arg)?;
    let rows = v.get("beta").cloned().unwrap_or(v);
    let beta: Vec<Vec<u32>> =
        serde_json::from_value(rows).map_err(|e| Error::bad(format!("matrix must be a list of rows: {e}")))?;
    Ok(ParamMatrix::new(beta)?)
}

fn emit(v: &Json) {
    println!("{v}");
}

fn report_code(r: &VerifyReport) -> u8 {
    match r.status {
        Status::Equal | Status::RhsOnly => 0,
        Status::Unequal => 1,
        Status::Error => 2,
        Status::Skipped => 3,
    }
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let case = match &args.json {
        Some(text) => IdentityCase::from_json(&read_json(text)?)?,
        None => {
            let family: Family = args
                .family
                .as_deref()
                .ok_or_else(|| Error::bad("give --family or --json"))?
                .parse()?;
            let params = Params {
                n: args.n,
                n0: args.n0,
                m: args.m,
                a: args.a.clone(),
                b: args.b,
                k: args.k,
                r: args.r,
                s: args.s,
                set: args.mset.clone(),
            };
            IdentityCase::new(family, params, args.method.parse::<Method>()?)
        }
    };
    let report = verify(&case, &args.budget.start());
    emit(&report.to_json(!args.no_timing));
    Ok(report_code(&report))
}

fn cmd_ct(args: CtArgs) -> CmdResult {
    let matrix = read_matrix(&args.matrix)?;
    let budget = args.budget.start();
    let (value, stats) = if args.q {
        q_matrix_ct(&matrix, &budget)?
    } else {
        plain_matrix_ct(&matrix, &budget)?
    };
    emit(&json!({"ct": value.to_json(), "q": args.q, "terms": stats.peak_terms}));
    Ok(0)
}

fn cmd_sweep(args: SweepArgs) -> CmdResult {
    let config = SweepConfig {
        family: Some(args.family.parse()?),
        n: Some(args.n),
        n0: args.n0,
        m: args.m,
        a: Some(args.a),
        b: args.b,
        k: args.k,
        r: args.r,
        s: args.s,
        method: args.method.parse()?,
        conjecture: args.conjecture,
    };
    let cases = config.cases()?;
    let threads = args
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let mut out: Box<dyn Write> = match &args.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let mut summary = SweepSummary::default();
    let mut write_error = None;
    run_cases(&cases, &args.budget.base(), args.budget.timeout(), threads, |_, report| {
        summary.add(&report);
        if write_error.is_none() {
            if let Err(e) = writeln!(out, "{}", report.to_json(!args.no_timing)) {
                write_error = Some(e);
            }
        }
    });
    if let Some(e) = write_error {
        return Err(e.into());
    }
    writeln!(out, "{}", summary.to_json())?;
    out.flush()?;
    Ok(if summary.any_unequal() {
        1
    } else if summary.count(Status::Error) > 0 {
        2
    } else if summary.count(Status::Skipped) > 0 {
        3
    } else {
        0
    })
}

fn cmd_sumset(args: SumsetArgs) -> CmdResult {
    let instance = SumsetInstance::from_json(&read_json(&args.instance)?)?;
    let budget = args.budget.start();
    let mut out = json!({"instance": instance.to_json()});
    if args.bound {
        let (sumset, report) = bound_check(&instance, &budget)?;
        out["sumset"] = json!(sumset);
        out["size"] = json!(sumset.len());
        out["bound"] = report.to_json();
    } else {
        let sumset = restricted_sumset(&instance, &budget)?;
        out["size"] = json!(sumset.len());
        out["sumset"] = json!(sumset);
    }
    emit(&out);
    Ok(0)
}

fn cmd_probe(probe: Probe) -> CmdResult {
    match probe {
        Probe::Rationality { r, s, ks, budget } => {
            let ks: Vec<u32> = ks.iter().collect();
            let report = rationality_probe(&r, &s, &ks, &budget.start())?;
            emit(&report.to_json());
            Ok(if report.confirmed { 0 } else { 1 })
        }
        Probe::Kadell { a, m, budget } => {
            let records = kadell_hypothesis_probe(&a, m, &budget.start())?;
            let failing = records.iter().filter(|r| !r.holds()).count();
            for r in &records {
                emit(&r.to_json());
            }
            emit(&json!({"summary": {"total": records.len(), "holding": records.len() - failing, "failing": failing}}));
            Ok(0)
        }
        Probe::Invariance { matrix, perm, q, budget } => {
            let matrix = read_matrix(&matrix)?;
            let perm = perm.unwrap_or_else(|| cyclic_permutation(matrix.n(), 1));
            let invariant = invariance_check(&matrix, &perm, q, &budget.start())?;
            emit(&json!({"invariant": invariant, "perm": perm, "q": q}));
            Ok(if invariant { 0 } else { 1 })
        }
        Probe::XinHr { r, a, budget } => {
            let holds = ctidlab::identities::xin_hr_check(r, &a, &budget.start())?;
            emit(&json!({"a": a, "r": r, "equal": holds}));
            Ok(if holds { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Ct(args) => cmd_ct(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Sumset(args) => cmd_sumset(args),
        Command::Probe(p) => cmd_probe(p),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(fail) => {
            eprintln!("{}", fail.message);
            ExitCode::from(fail.code)
        }
    }
}
