//! Batch interface: read JSON descriptions of semigroups, ring models, and
//! curves; run computations and verification suites; print canonical text.
//!
//! Exit status: 0 when all requested checks pass (a SKIP counts as a pass),
//! 1 on a failed verification, 2 on invalid input, 3 on work-limit
//! exhaustion.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use singzeta::oracle::{self, OracleError};
use singzeta::semigroup::{GoodSemigroup, ValueVec};
use singzeta::universal::{
    assemble_universal, counting_ca, generalized_poincare, ideal_class_poly,
    specialize_counting, specialize_monodromy,
};
use singzeta::{
    assemble_global, divisor_series_oracle, load_path, Input, IoError, RingModel,
    SingularCurveModel,
};

#[derive(Parser)]
#[command(name = "singzeta", version, about = "Zeta functions of curve singularities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a semigroup input and print its invariants.
    Semigroup(InputArg),
    /// Print the universal zeta function of a semigroup.
    Universal {
        #[command(flatten)]
        input: InputArg,
        /// Print the generalized Poincare series instead.
        #[arg(long)]
        poincare: bool,
    },
    /// Specialize the universal zeta function of a semigroup.
    Specialize {
        #[command(flatten)]
        input: InputArg,
        /// Monodromy specialization (U -> 1 after collapsing T).
        #[arg(long)]
        monodromy: bool,
        /// Counting specialization at the given prime q.
        #[arg(long, value_name = "Q")]
        count: Option<u64>,
        /// Motivic specialization: collapse T, keep U symbolic.
        #[arg(long)]
        motivic: bool,
        /// Also print series coefficients up to this order (at most 64).
        #[arg(long, value_name = "N")]
        expand: Option<usize>,
    },
    /// Compare the zeta formulas against the finite-field oracle.
    Oracle {
        #[command(flatten)]
        input: InputArg,
        /// Check ideal counts for all semigroup members up to this norm.
        #[arg(long, default_value_t = 6, value_name = "M")]
        max_norm: u64,
        /// Semigroup input the extraction is expected to produce.
        #[arg(long, value_name = "FILE")]
        expect: Option<PathBuf>,
        /// Enumeration work limit (overrides SINGZETA_WORK_LIMIT).
        #[arg(long, value_name = "W")]
        work_limit: Option<u64>,
    },
    /// Assemble a global zeta function and check divisor counts.
    Global {
        #[command(flatten)]
        input: InputArg,
        /// Compare series coefficients up to this degree (at most 10).
        #[arg(long, default_value_t = 8, value_name = "N")]
        expand: usize,
    },
}

#[derive(Args)]
struct InputArg {
    /// Path to a JSON input file.
    #[arg(short, long)]
    input: PathBuf,
}

enum CliError {
    Input(String),
    WorkLimit(String),
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Oracle(OracleError::WorkLimitExceeded { .. }) => {
                CliError::WorkLimit(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::WorkLimitExceeded { .. } => CliError::WorkLimit(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn input_err<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Semigroup(input) => cmd_semigroup(&input.input),
        Command::Universal { input, poincare } => cmd_universal(&input.input, poincare),
        Command::Specialize { input, monodromy, count, motivic, expand } => {
            cmd_specialize(&input.input, monodromy, count, motivic, expand)
        }
        Command::Oracle { input, max_norm, expect, work_limit } => {
            cmd_oracle(&input.input, max_norm, expect.as_deref(), work_limit)
        }
        Command::Global { input, expand } => cmd_global(&input.input, expand),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::WorkLimit(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn load_semigroup(path: &Path) -> Result<GoodSemigroup, CliError> {
    match load_path(path)? {
        Input::Semigroup(s) => Ok(s.build()?),
        _ => Err(CliError::Input(format!("{}: expected a semigroup input", path.display()))),
    }
}

fn load_model(path: &Path) -> Result<RingModel, CliError> {
    match load_path(path)? {
        Input::Model(m) => Ok(m.build()?),
        _ => Err(CliError::Input(format!("{}: expected a ring_model input", path.display()))),
    }
}

fn load_curve(path: &Path) -> Result<SingularCurveModel, CliError> {
    match load_path(path)? {
        Input::Curve(c) => Ok(c.build()?),
        _ => Err(CliError::Input(format!("{}: expected a curve input", path.display()))),
    }
}

fn cmd_semigroup(path: &Path) -> Result<bool, CliError> {
    let s = load_semigroup(path)?;
    println!("d = {}", s.d());
    println!("conductor = {}", s.conductor());
    println!("delta = {}", s.delta());
    let elems: Vec<String> = s.small().iter().map(|e| e.to_string()).collect();
    println!("small = {{{}}}", elems.join(", "));
    match s.is_symmetric() {
        Ok(true) => println!("symmetric = yes"),
        Ok(false) => println!("symmetric = no"),
        Err(_) => println!("symmetric = n/a (d > 1)"),
    }
    println!("valid good semigroup");
    Ok(true)
}

fn cmd_universal(path: &Path, poincare: bool) -> Result<bool, CliError> {
    let s = load_semigroup(path)?;
    println!("S: {s}");
    let z = assemble_universal(&s).map_err(input_err)?;
    if poincare {
        let p = generalized_poincare(&s).map_err(input_err)?;
        println!("P = {p}");
    } else {
        println!("Z = {}", z.value());
    }
    Ok(true)
}

fn cmd_specialize(
    path: &Path,
    monodromy: bool,
    count: Option<u64>,
    motivic: bool,
    expand: Option<usize>,
) -> Result<bool, CliError> {
    let modes = usize::from(monodromy) + usize::from(count.is_some()) + usize::from(motivic);
    if modes != 1 {
        return Err(CliError::Input(
            "choose exactly one of --monodromy, --count, --motivic".to_string(),
        ));
    }
    if let Some(n) = expand {
        if n > 64 {
            return Err(CliError::Input(format!("--expand {n} exceeds the bound 64")));
        }
    }
    let s = load_semigroup(path)?;
    let z = assemble_universal(&s).map_err(input_err)?;
    if monodromy {
        let m = specialize_monodromy(&z).map_err(input_err)?;
        println!("monodromy zeta = {m}");
        if let Some(n) = expand {
            println!("series = {}", series_string(&m.series_expand(n).map_err(input_err)?));
        }
    } else if let Some(q) = count {
        if !is_small_prime(q) {
            return Err(CliError::Input(format!("q = {q} is not a prime at most 13")));
        }
        let c = specialize_counting(&z, q).map_err(input_err)?;
        println!("counting zeta at q = {q}: {c}");
        let ca = counting_ca(&z, q).map_err(input_err)?;
        println!("ideal-count zeta (T -> q*T): {ca}");
        if let Some(n) = expand {
            println!("ideal counts by codimension = {}", series_string(&ca.series_expand(n).map_err(input_err)?));
        }
    } else {
        if expand.is_some() {
            return Err(CliError::Input(
                "series expansion needs --monodromy or --count".to_string(),
            ));
        }
        let m = z.value().collapse_t();
        println!("motivic zeta (T1 = ... = Td = T) = {m}");
    }
    Ok(true)
}

fn is_small_prime(q: u64) -> bool {
    [2, 3, 5, 7, 11, 13].contains(&q)
}

fn series_string(coeffs: &[BigRational]) -> String {
    let parts: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
    parts.join(", ")
}

fn env_work_limit() -> Result<Option<u64>, CliError> {
    match std::env::var("SINGZETA_WORK_LIMIT") {
        Ok(text) => text
            .parse::<u64>()
            .map(Some)
            .map_err(|_| CliError::Input(format!("SINGZETA_WORK_LIMIT = {text:?} is not a number"))),
        Err(_) => Ok(None),
    }
}

/// Semigroup members with norm at most max_norm, ordered by (norm, lex).
fn members_up_to(s: &GoodSemigroup, max_norm: u64) -> Vec<ValueVec> {
    let d = s.d();
    let mut out = Vec::new();
    let mut n = vec![0u64; d];
    'sweep: loop {
        let v = ValueVec::new(n.clone());
        if v.norm() <= max_norm && s.contains(&v).unwrap_or(false) {
            out.push(v);
        }
        let mut pos = d;
        loop {
            if pos == 0 {
                break 'sweep;
            }
            pos -= 1;
            n[pos] += 1;
            if n[pos] <= max_norm {
                break;
            }
            n[pos] = 0;
        }
    }
    out.sort_by_key(|v| (v.norm(), v.clone()));
    out
}

fn cmd_oracle(
    path: &Path,
    max_norm: u64,
    expect: Option<&Path>,
    work_limit: Option<u64>,
) -> Result<bool, CliError> {
    let mut model = load_model(path)?;
    if let Some(limit) = work_limit.or(env_work_limit()?) {
        model = model.with_work_limit(limit);
    }
    let truncation: Vec<String> = model.truncation().iter().map(|b| b.to_string()).collect();
    println!(
        "model: p = {}, d = {}, truncation = ({}), conductor = {}",
        model.field().p(),
        model.d(),
        truncation.join(", "),
        model.conductor()
    );

    let raw = oracle::collect_small_values(&model)?;
    let s = match expect {
        Some(expect_path) => {
            let expected = load_semigroup(expect_path)?;
            if expected.d() != model.d() || expected.conductor() != model.conductor() {
                return Err(CliError::Input(format!(
                    "expected semigroup has d = {}, conductor = {}, model declares d = {}, conductor = {}",
                    expected.d(),
                    expected.conductor(),
                    model.d(),
                    model.conductor()
                )));
            }
            if raw != *expected.small() {
                report_set_difference(&raw, expected.small());
                println!("verdict: SKIP (the field is too small to realize the semigroup)");
                return Ok(true);
            }
            expected
        }
        None => match GoodSemigroup::from_small_elements(
            model.d(),
            model.conductor().clone(),
            raw.iter().cloned(),
        ) {
            Ok(s) => s,
            Err(e) => {
                println!("extracted value set is not a good semigroup: {e}");
                println!("verdict: SKIP (the field is too small to realize the semigroup)");
                return Ok(true);
            }
        },
    };
    println!("semigroup: {s}");

    let mut failures = 0usize;

    let mut rank_checks = 0usize;
    for n in members_box(s.conductor()) {
        let got = oracle::h_dim_oracle(&model, &n)?;
        let want = s.h_dim(&n);
        rank_checks += 1;
        if got != want {
            println!("h{n} = {got}, path algorithm gives {want}  FAIL");
            failures += 1;
        }
    }
    if failures == 0 {
        println!("h ranks on [0, c+1]: PASS ({rank_checks} vectors)");
    }

    let members = members_up_to(&s, max_norm);
    println!("ideal counts up to norm {max_norm}:");
    println!("  n  formula  oracle  verdict");
    let q = BigRational::from_integer(model.field().p().into());
    for n in &members {
        let formula = ideal_class_poly(&s, n).map_err(input_err)?.eval_q(&q);
        let counted = oracle::count_principal_ideals(&model, n)?;
        let ok = formula == BigRational::from_integer(counted.into());
        if !ok {
            failures += 1;
        }
        println!(
            "  {n}  {formula}  {counted}  {}",
            if ok { "PASS" } else { "FAIL" }
        );
    }

    let z = assemble_universal(&s).map_err(input_err)?;
    let series = counting_ca(&z, u64::from(model.field().p()))
        .map_err(input_err)?
        .series_expand(max_norm as usize)
        .map_err(input_err)?;
    let mut totals_ok = true;
    for m in 0..=max_norm {
        let mut total = BigRational::from_integer(0.into());
        for n in members.iter().filter(|n| n.norm() == m) {
            let counted = oracle::count_principal_ideals(&model, n)?;
            total += BigRational::from_integer(counted.into());
        }
        if total != series[m as usize] {
            println!(
                "degree {m} total {total} differs from series coefficient {}  FAIL",
                series[m as usize]
            );
            totals_ok = false;
            failures += 1;
        }
    }
    if totals_ok {
        println!("degree totals 0..{max_norm} match the counting series: PASS");
    }

    if failures == 0 {
        println!("result: PASS ({} ideal counts, {rank_checks} ranks)", members.len());
        Ok(true)
    } else {
        println!("result: FAIL ({failures} mismatches)");
        Ok(false)
    }
}

/// All vectors n with n <= c + 1 componentwise, in lex order.
fn members_box(c: &ValueVec) -> Vec<ValueVec> {
    let d = c.dim();
    let mut out = Vec::new();
    let mut n = vec![0u64; d];
    'sweep: loop {
        out.push(ValueVec::new(n.clone()));
        let mut pos = d;
        loop {
            if pos == 0 {
                break 'sweep;
            }
            pos -= 1;
            n[pos] += 1;
            if n[pos] <= c.get(pos) + 1 {
                break;
            }
            n[pos] = 0;
        }
    }
    out
}

fn report_set_difference(got: &BTreeSet<ValueVec>, expected: &BTreeSet<ValueVec>) {
    for missing in expected.difference(got) {
        println!("extraction misses {missing}");
    }
    for extra in got.difference(expected) {
        println!("extraction has extra {extra}");
    }
}

fn cmd_global(path: &Path, expand: usize) -> Result<bool, CliError> {
    if expand > 10 {
        return Err(CliError::Input(format!("--expand {expand} exceeds the bound 10")));
    }
    let model = load_curve(path)?;
    println!(
        "curve: q = {}, singular points = {}",
        model.smooth().q(),
        model.points().len()
    );
    if model.points().len() > 1 {
        println!("note: multiple singular points are assembled by the Euler product");
    }
    let z = assemble_global(&model).map_err(input_err)?;
    println!("zeta = {z}");
    if !model.modulus_flag() {
        println!("divisor oracle: unavailable (not a modulus curve); nothing to check");
        return Ok(true);
    }
    let series = z.series_expand(expand).map_err(input_err)?;
    let counts = divisor_series_oracle(&model, expand).map_err(input_err)?;
    println!("series expansion = {}", series_string(&series));
    let counts_str: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
    println!("divisor counts   = {}", counts_str.join(", "));
    let mut ok = true;
    for (k, (a, &b)) in series.iter().zip(&counts).enumerate() {
        if *a != BigRational::from_integer(b.into()) {
            println!("degree {k}: expansion {a} differs from divisor count {b}  FAIL");
            ok = false;
        }
    }
    if ok {
        println!("comparison: PASS ({} coefficients)", expand + 1);
        Ok(true)
    } else {
        println!("comparison: FAIL");
        Ok(false)
    }
}
