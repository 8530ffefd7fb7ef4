//! The `circnil` command-line front end.
//!
//! Exit codes: 0 success/agreement, 1 a mathematical disagreement was found,
//! 2 usage error, 3 invalid mathematical input (non-prime `p`, overflow,
//! violated hypotheses, not-applicable identities).

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::circring::{geom_sum, shift_power, CirculantElem};
use crate::congruence::{self, Lemma1Report, ENUMERATION_BUDGET};
use crate::error::Error;
use crate::nilpotence::{
    annihilation_check, decide_zm, decide_zm_via_primes, decide_zp, index_expansion,
    necessity_checks, witness_nonvanishing, ZmClause,
};
use crate::numutil::ensure_prime;
use crate::oracle::{
    decide_zm_with_index, frobenius_check, geometric_identity_check, verify_theorem1,
    zm_exact_index,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "circnil", version, about = "Nilpotence of I + S + ... + S^(m-1) over Z_p and Z_m")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide nilpotence of T_{n,m} at one point.
    Decide(DecideArgs),
    /// Decide nilpotence over a grid of (n, m), optionally checked by the oracle.
    Scan(ScanArgs),
    /// Count solutions of x_0 + d x_1 + ... + d^(q-1) x_(q-1) = c (mod n).
    Lemma1(Lemma1Args),
    /// Run the executable ring identities behind the index formula.
    Identities(IdentitiesArgs),
}

#[derive(Debug, clap::Args)]
#[command(group(ArgGroup::new("ring").required(true).args(["p", "zm"])))]
pub struct DecideArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub m: u64,
    /// Work over Z_p.
    #[arg(long)]
    pub p: Option<u64>,
    /// Work over Z_m.
    #[arg(long)]
    pub zm: bool,
    /// Over Z_m, also compute the exact index by brute force.
    #[arg(long, requires = "zm")]
    pub exact_index: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, clap::Args)]
#[command(group(ArgGroup::new("ring").required(true).args(["p", "zm"])))]
pub struct ScanArgs {
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub zm: bool,
    #[arg(long, default_value_t = 32, value_parser = clap::value_parser!(u64).range(1..))]
    pub n_max: u64,
    #[arg(long, default_value_t = 32, value_parser = clap::value_parser!(u64).range(1..))]
    pub m_max: u64,
    /// Check every cell against the brute-force oracle.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct Lemma1Args {
    #[arg(long)]
    pub d: u64,
    #[arg(long)]
    pub m_star: u64,
    #[arg(long)]
    pub n_star: u64,
    /// Number of variables.
    #[arg(long)]
    pub q: u32,
    /// Single target; all c in [0, n) when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<i64>,
    /// Also count by exhaustive enumeration (fails if over budget).
    #[arg(long)]
    pub enumerate: bool,
    #[arg(long, default_value_t = ENUMERATION_BUDGET)]
    pub budget: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, clap::Args)]
pub struct IdentitiesArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: Option<u64>,
    #[arg(long, requires = "n", value_parser = clap::value_parser!(u64).range(1..))]
    pub m: Option<u64>,
    #[arg(long)]
    pub p: u64,
    /// Random Frobenius and geometric-series trials.
    #[arg(long)]
    pub random_trials: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(cli, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Decide(a) => cmd_decide(&a, out),
        Command::Scan(a) => cmd_scan(&a, out),
        Command::Lemma1(a) => cmd_lemma1(&a, out),
        Command::Identities(a) => cmd_identities(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Math(e)) => {
            let _ = writeln!(err, "error: {}: {e}", e.kind());
            EXIT_INVALID
        }
        Err(CliError::NotApplicable(msg)) => {
            let _ = writeln!(err, "not applicable: {msg}");
            EXIT_INVALID
        }
        // the reader went away (`| head`); nothing left to report
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: io: {e}");
            EXIT_USAGE
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Math(Error),
    NotApplicable(String),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Math(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

type CliResult = std::result::Result<i32, CliError>;

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn cmd_decide(args: &DecideArgs, out: &mut dyn Write) -> CliResult {
    let (n, m) = (args.n, args.m);
    if let Some(p) = args.p {
        let v = decide_zp(n, m, p)?;
        if args.json {
            writeln!(out, "{}", serde_json::to_string(&v)?)?;
        } else {
            match v.index {
                Some(k) => writeln!(out, "T_{{{n},{m}}} is nilpotent over Z_{p} with index {k}")?,
                None => writeln!(out, "T_{{{n},{m}}} is not nilpotent over Z_{p}")?,
            }
            writeln!(
                out,
                "  a = {}, b = {}, n* = {}, m* = {}",
                v.a, v.b, v.n_star, v.m_star
            )?;
        }
        return Ok(EXIT_OK);
    }

    let v = if args.exact_index {
        decide_zm_with_index(n, m)?
    } else {
        decide_zm(n, m)?
    };
    if args.json {
        writeln!(out, "{}", serde_json::to_string(&v)?)?;
        return Ok(EXIT_OK);
    }
    if v.nilpotent {
        writeln!(out, "T_{{{n},{m}}} is nilpotent over Z_{m} ({})", v.clause.as_str())?;
    } else {
        writeln!(out, "T_{{{n},{m}}} is not nilpotent over Z_{m}")?;
    }
    for z in &v.per_prime {
        let tail = match z.index {
            Some(k) => format!("nilpotent, index {k}"),
            None => "not nilpotent".to_string(),
        };
        writeln!(
            out,
            "  over Z_{}: {tail} (a = {}, b = {}, n* = {}, m* = {})",
            z.p, z.a, z.b, z.n_star, z.m_star
        )?;
    }
    if let Some(k) = v.exact_index {
        writeln!(out, "  exact index over Z_{m}: {k}")?;
    }
    Ok(EXIT_OK)
}

/// Parameters a scan was run with.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanParameters {
    pub mode: &'static str,
    pub p: Option<u64>,
    pub n_max: u64,
    pub m_max: u64,
    pub verify: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZpCell {
    pub n: u64,
    pub m: u64,
    pub nilpotent: bool,
    pub index: Option<u64>,
    pub oracle_index: Option<u64>,
    pub agree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZmCell {
    pub n: u64,
    pub m: u64,
    pub nilpotent: bool,
    pub clause: ZmClause,
    pub oracle_index: Option<u64>,
    pub agree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ScanCell {
    Zp(ZpCell),
    Zm(ZmCell),
}

impl ScanCell {
    pub fn n(&self) -> u64 {
        match self {
            ScanCell::Zp(c) => c.n,
            ScanCell::Zm(c) => c.n,
        }
    }
    pub fn m(&self) -> u64 {
        match self {
            ScanCell::Zp(c) => c.m,
            ScanCell::Zm(c) => c.m,
        }
    }
    pub fn nilpotent(&self) -> bool {
        match self {
            ScanCell::Zp(c) => c.nilpotent,
            ScanCell::Zm(c) => c.nilpotent,
        }
    }
    pub fn agree(&self) -> Option<bool> {
        match self {
            ScanCell::Zp(c) => c.agree,
            ScanCell::Zm(c) => c.agree,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub cells: usize,
    pub nilpotent: usize,
    pub verified: usize,
    pub agreements: usize,
    /// `(n, m)` of every cell the oracle disagreed with.
    pub disagreements: Vec<(u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub parameters: ScanParameters,
    pub cells: Vec<ScanCell>,
    pub summary: ScanSummary,
}

impl ScanSummary {
    pub fn exit_code(&self) -> i32 {
        if self.disagreements.is_empty() {
            EXIT_OK
        } else {
            EXIT_DISAGREE
        }
    }

    pub fn tally(cells: &[ScanCell]) -> Self {
        Self {
            cells: cells.len(),
            nilpotent: cells.iter().filter(|c| c.nilpotent()).count(),
            verified: cells.iter().filter(|c| c.agree().is_some()).count(),
            agreements: cells.iter().filter(|c| c.agree() == Some(true)).count(),
            disagreements: cells
                .iter()
                .filter(|c| c.agree() == Some(false))
                .map(|c| (c.n(), c.m()))
                .collect(),
        }
    }
}

fn zp_cell(n: u64, m: u64, p: u64, verify: bool) -> crate::Result<ScanCell> {
    let cell = if verify {
        let r = verify_theorem1(n, m, p)?;
        ZpCell {
            n,
            m,
            nilpotent: r.predicted_nilpotent,
            index: r.predicted_index,
            oracle_index: r.oracle_index,
            agree: Some(r.agree),
        }
    } else {
        let v = decide_zp(n, m, p)?;
        ZpCell {
            n,
            m,
            nilpotent: v.nilpotent,
            index: v.index,
            oracle_index: None,
            agree: None,
        }
    };
    Ok(ScanCell::Zp(cell))
}

fn zm_cell(n: u64, m: u64, verify: bool) -> crate::Result<ScanCell> {
    let v = decide_zm(n, m)?;
    let (oracle_index, agree) = if verify {
        let via = decide_zm_via_primes(n, m)?;
        let k = zm_exact_index(n, m)?;
        let agree =
            via.nilpotent == v.nilpotent && k.is_some() == v.nilpotent && k.is_none_or(|k| k <= n);
        (k, Some(agree))
    } else {
        (None, None)
    };
    Ok(ScanCell::Zm(ZmCell {
        n,
        m,
        nilpotent: v.nilpotent,
        clause: v.clause,
        oracle_index,
        agree,
    }))
}

/// Evaluates the grid in parallel; cells come back sorted by `n`, then `m`.
pub fn build_scan(
    p: Option<u64>,
    n_max: u64,
    m_max: u64,
    verify: bool,
    jobs: Option<usize>,
) -> crate::Result<ScanReport> {
    if let Some(p) = p {
        ensure_prime(p)?;
    }
    let m_min = if p.is_some() { 1 } else { 2 };
    let grid: Vec<(u64, u64)> = (1..=n_max)
        .flat_map(|n| (m_min..=m_max).map(move |m| (n, m)))
        .collect();
    let eval = || -> crate::Result<Vec<ScanCell>> {
        grid.par_iter()
            .map(|&(n, m)| match p {
                Some(p) => zp_cell(n, m, p, verify),
                None => zm_cell(n, m, verify),
            })
            .collect()
    };
    let cells = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Error::invalid(format!("thread pool: {e}")))?
            .install(eval)?,
        None => eval()?,
    };
    let summary = ScanSummary::tally(&cells);
    Ok(ScanReport {
        parameters: ScanParameters {
            mode: if p.is_some() { "zp" } else { "zm" },
            p,
            n_max,
            m_max,
            verify,
        },
        cells,
        summary,
    })
}

pub const ZP_CSV_HEADER: [&str; 5] = ["n", "m", "nilpotent", "index", "agree"];
pub const ZM_CSV_HEADER: [&str; 6] = ["n", "m", "nilpotent", "clause", "oracle_index", "agree"];

pub fn write_scan_csv(report: &ScanReport, out: &mut dyn Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if report.parameters.p.is_some() {
        w.write_record(ZP_CSV_HEADER)?;
    } else {
        w.write_record(ZM_CSV_HEADER)?;
    }
    for cell in &report.cells {
        match cell {
            ScanCell::Zp(c) => w.write_record([
                c.n.to_string(),
                c.m.to_string(),
                c.nilpotent.to_string(),
                opt(c.index),
                opt(c.agree),
            ])?,
            ScanCell::Zm(c) => w.write_record([
                c.n.to_string(),
                c.m.to_string(),
                c.nilpotent.to_string(),
                c.clause.as_str().to_string(),
                opt(c.oracle_index),
                opt(c.agree),
            ])?,
        }
    }
    w.flush()?;
    Ok(())
}

fn write_scan_text(report: &ScanReport, out: &mut dyn Write) -> io::Result<()> {
    let ring = match report.parameters.p {
        Some(p) => format!("Z_{p}"),
        None => "Z_m".to_string(),
    };
    writeln!(
        out,
        "scan over {ring}: n in [1, {}], m up to {}",
        report.parameters.n_max, report.parameters.m_max
    )?;
    for cell in report.cells.iter().filter(|c| c.nilpotent()) {
        match cell {
            ScanCell::Zp(c) => writeln!(
                out,
                "  n={:<4} m={:<4} index {}{}",
                c.n,
                c.m,
                opt(c.index),
                oracle_note(c.oracle_index, c.agree)
            )?,
            ScanCell::Zm(c) => writeln!(
                out,
                "  n={:<4} m={:<4} {}{}",
                c.n,
                c.m,
                c.clause.as_str(),
                oracle_note(c.oracle_index, c.agree)
            )?,
        }
    }
    let s = &report.summary;
    writeln!(out, "{} cells, {} nilpotent", s.cells, s.nilpotent)?;
    if report.parameters.verify {
        writeln!(out, "{} of {} agree with the oracle", s.agreements, s.verified)?;
        for (n, m) in &s.disagreements {
            writeln!(out, "  DISAGREE at n={n} m={m}")?;
        }
    }
    Ok(())
}

fn oracle_note(k: Option<u64>, agree: Option<bool>) -> String {
    match agree {
        None => String::new(),
        Some(a) => format!(
            " (oracle {}, {})",
            k.map_or("none".to_string(), |k| k.to_string()),
            if a { "agree" } else { "DISAGREE" }
        ),
    }
}

fn cmd_scan(args: &ScanArgs, out: &mut dyn Write) -> CliResult {
    if args.zm && args.m_max < 2 {
        return Err(CliError::Usage("--zm needs --m-max >= 2".into()));
    }
    let report = build_scan(
        args.p,
        args.n_max,
        args.m_max,
        args.verify,
        args.jobs.map(|j| j as usize),
    )?;

    let mut file;
    let sink: &mut dyn Write = match &args.out {
        Some(path) => {
            file = BufWriter::new(File::create(path)?);
            &mut file
        }
        None => out,
    };
    match args.format {
        Format::Json => writeln!(sink, "{}", serde_json::to_string_pretty(&report)?)?,
        Format::Csv => write_scan_csv(&report, sink)?,
        Format::Text => write_scan_text(&report, sink)?,
    }
    sink.flush()?;

    Ok(report.summary.exit_code())
}

fn cmd_lemma1(args: &Lemma1Args, out: &mut dyn Write) -> CliResult {
    let inst = congruence::validate(args.d, args.m_star, args.n_star, args.q)?;
    let reports: Vec<Lemma1Report> =
        congruence::lemma1_reports(&inst, args.c, args.enumerate, args.budget)?;
    if args.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?;
    } else {
        writeln!(
            out,
            "{} = c (mod {}), 0 <= x_i < {}",
            congruence_lhs(inst.d(), inst.qvars()),
            inst.n(),
            inst.m(),
        )?;
        for r in &reports {
            let enumerated = r
                .enumerated
                .map_or(String::new(), |e| format!(", enumerated {e}"));
            writeln!(
                out,
                "  c={:<5} closed form {}, recursive {}{enumerated} [{}]",
                r.instance.c(),
                r.closed_form,
                r.recursive,
                if r.agree { "agree" } else { "DISAGREE" }
            )?;
        }
    }
    Ok(if reports.iter().all(|r| r.agree) {
        EXIT_OK
    } else {
        EXIT_DISAGREE
    })
}

fn congruence_lhs(d: u64, qvars: u32) -> String {
    let term = |i: u32| match i {
        0 => "x_0".to_string(),
        1 => format!("{d}*x_1"),
        _ => format!("{d}^{i}*x_{i}"),
    };
    if qvars <= 4 {
        (0..qvars).map(term).collect::<Vec<_>>().join(" + ")
    } else {
        format!("{} + {} + ... + {}", term(0), term(1), term(qvars - 1))
    }
}

/// One named identity and whether it held.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityOutcome {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn outcome(name: &str, pass: bool, detail: impl Into<String>) -> IdentityOutcome {
    IdentityOutcome {
        name: name.to_string(),
        pass,
        detail: detail.into(),
    }
}

/// Identities at a nilpotent point with `a >= b`.
pub fn point_identities(n: u64, m: u64, p: u64) -> crate::Result<Vec<IdentityOutcome>> {
    let v = decide_zp(n, m, p)?;
    let index = v.index.ok_or_else(|| {
        Error::invalid(format!("T_{{{n},{m}}} is not nilpotent over Z_{p}"))
    })?;
    let expansion = index_expansion(v.a, v.b, p)?;
    let witness = witness_nonvanishing(n, m, p)?;
    let annihilated = annihilation_check(n, m, p)?;
    let order = n as usize;
    let t = geom_sum(order, m, p)?;
    let last_zero = witness.power.mul(&t)?.is_zero();
    let s = shift_power(order, p, 1)?;
    let necessity = necessity_checks(n, m, p)?;
    Ok(vec![
        outcome(
            "index_expansion",
            expansion.value == index,
            format!(
                "a = {}*{} + {}: expansion {} vs ceil(p^a/(p^b-1)) = {index}",
                expansion.qdiv, v.b, expansion.rdiv, expansion.value
            ),
        ),
        outcome(
            "witness_nonvanishing",
            witness.matches && !witness.power.is_zero(),
            format!("T^{} = {}", index - 1, witness.power),
        ),
        outcome(
            "annihilation",
            annihilated,
            format!("E_{} * T = 0", expansion.rdiv),
        ),
        outcome(
            "last_power_vanishes",
            last_zero,
            format!("T^{} * T = 0", index - 1),
        ),
        outcome(
            "frobenius",
            frobenius_check(&t, &s, 1)?,
            "x -> x^p on (T, S)",
        ),
        outcome(
            "geometric_identity",
            geometric_identity_check(n, m, p)?,
            "T (I - S) = I - S^m",
        ),
        outcome(
            "necessity",
            necessity.consistent,
            format!("row sums over {} powers", necessity.powers_checked),
        ),
    ])
}

/// Randomized Frobenius and geometric-series checks; reproducible from `seed`.
pub fn random_identities(
    trials: u64,
    p: u64,
    n: Option<u64>,
    seed: u64,
) -> crate::Result<Vec<IdentityOutcome>> {
    ensure_prime(p)?;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut frob_pass = 0u64;
    let mut geo_pass = 0u64;
    for _ in 0..trials {
        let order = n.unwrap_or_else(|| rng.gen_range(1..=16)) as usize;
        let elem = |rng: &mut StdRng| {
            CirculantElem::from_coeffs(p, (0..order).map(|_| rng.gen_range(0..p)).collect())
        };
        let a = elem(&mut rng)?;
        let b = elem(&mut rng)?;
        let k = rng.gen_range(1..=2);
        frob_pass += u64::from(frobenius_check(&a, &b, k)?);

        let gn = n.unwrap_or_else(|| rng.gen_range(1..=24));
        let gm = rng.gen_range(1..=24);
        let gq = rng.gen_range(2..=12);
        geo_pass += u64::from(geometric_identity_check(gn, gm, gq)?);
    }
    Ok(vec![
        outcome(
            "frobenius",
            frob_pass == trials,
            format!("{frob_pass}/{trials} trials"),
        ),
        outcome(
            "geometric_identity",
            geo_pass == trials,
            format!("{geo_pass}/{trials} trials"),
        ),
    ])
}

fn cmd_identities(args: &IdentitiesArgs, out: &mut dyn Write) -> CliResult {
    if args.m.is_none() && args.random_trials.is_none() {
        return Err(CliError::Usage(
            "identities needs --n/--m or --random-trials".into(),
        ));
    }
    ensure_prime(args.p)?;
    let mut outcomes = Vec::new();
    if let (Some(n), Some(m)) = (args.n, args.m) {
        let v = decide_zp(n, m, args.p)?;
        if !v.nilpotent {
            return Err(CliError::NotApplicable(format!(
                "T_{{{n},{m}}} is not nilpotent over Z_{}",
                args.p
            )));
        }
        if v.a < v.b {
            return Err(CliError::NotApplicable(format!(
                "a = {} < b = {}, T_{{{n},{m}}} is already zero over Z_{}",
                v.a, v.b, args.p
            )));
        }
        outcomes.extend(point_identities(n, m, args.p)?);
    }
    if let Some(trials) = args.random_trials {
        outcomes.extend(random_identities(trials, args.p, args.n, args.seed)?);
    }
    if args.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&outcomes)?)?;
    } else {
        for o in &outcomes {
            let tag = if o.pass { "PASS" } else { "FAIL" };
            writeln!(out, "{tag} {:<22} {}", o.name, o.detail)?;
        }
    }
    Ok(if outcomes.iter().all(|o| o.pass) {
        EXIT_OK
    } else {
        EXIT_DISAGREE
    })
}
