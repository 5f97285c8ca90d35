//! The `scf` command line: brackets, realizations, singular vectors, loci,
//! ranks, classification tables, axiom suites and the identity catalog.
//!
//! Exit codes: 0 on success, 1 when a check fails or a computation errors,
//! 2 on usage errors.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use scf_core::algebra::{bracket, realize, AlgebraId, GenMode};
use scf_core::classify::{classification_row, cutoff_from_env, rows_markdown, ClassRow};
use scf_core::grassmann::{convert, BasisKind};
use scf_core::lambda_calc as lc;
use scf_core::singular::{delta_sym, find_singular, names_in, singular_locus};
use scf_core::suite::{jacobi_fuzz, suite, Check, SUITES};
use scf_core::verma::{build_module, HighestWeight, VermaModule};
use scf_core::{Scalar, ScfError};

pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "scf", version, about = "Exact computations for the N=2, N=3 and N=4 superconformal algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Basis {
    Standard,
    Split,
}

#[derive(Args, Debug)]
struct Point {
    /// n2, n3, sn4, sn4m or bn4
    #[arg(long)]
    alg: String,
    /// Exact rational `p/q`
    #[arg(long, allow_hyphen_values = true)]
    delta: String,
    #[arg(long, allow_negative_numbers = true)]
    lambda: i64,
    /// Big N=4 only
    #[arg(long = "lambda-bar")]
    lambda_bar: Option<i64>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Bracket of two generator modes, e.g. `J:1 Gp:-1/2`
    Bracket {
        #[arg(long)]
        alg: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(long)]
        json: bool,
    },
    /// Grassmann realization of a generator mode
    Realize {
        #[arg(long)]
        alg: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(long, value_enum, default_value = "standard")]
        basis: Basis,
        #[arg(long)]
        json: bool,
    },
    /// Proper singular vectors up to a d-power; `--delta sym` gives the locus
    Singular {
        #[command(flatten)]
        point: Point,
        #[arg(long, default_value_t = 3)]
        dpow: u32,
    },
    /// Values of Delta with singular vectors, per weight space
    Locus {
        #[arg(long)]
        alg: String,
        #[arg(long, allow_negative_numbers = true)]
        lambda: i64,
        #[arg(long = "lambda-bar")]
        lambda_bar: Option<i64>,
        #[arg(long, default_value_t = 2)]
        dpow: u32,
        #[arg(long)]
        json: bool,
    },
    /// Rank over C[d] of the irreducible quotient
    Rank {
        #[command(flatten)]
        point: Point,
    },
    /// Full classification row
    Row {
        #[command(flatten)]
        point: Point,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Classification grid and lambda-bracket tables
    Tables {
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
        /// Write every artifact into this directory
        #[arg(long)]
        out: Option<PathBuf>,
        /// Compare every artifact with the files in this directory
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Bracket tables, Jacobi fuzzing and the lambda-bracket axioms
    Axioms {
        #[arg(long, default_value_t = 500)]
        triples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Re-derive the catalogued identities, singular lists and ranks
    VerifyPaper {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        json: bool,
    },
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 2, message: msg.into() }
}

impl From<ScfError> for Failure {
    fn from(e: ScfError) -> Self {
        let code = match e {
            ScfError::Parse(_) | ScfError::InvalidGenerator(_) | ScfError::InvalidArgument(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

type Out<'a> = &'a mut dyn Write;

fn emit(out: Out, s: &str) -> Result<(), Failure> {
    writeln!(out, "{s}").map_err(io_error)
}

// A reader that hangs up early (`scf ... | head`) is not an error.
fn io_error(e: std::io::Error) -> Failure {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        Failure { code: 0, message: String::new() }
    } else {
        Failure { code: 1, message: e.to_string() }
    }
}

fn emit_json(out: Out, v: &Value) -> Result<(), Failure> {
    emit(out, &serde_json::to_string(v).expect("serializable"))
}

fn parse_alg(s: &str) -> Result<AlgebraId, Failure> {
    AlgebraId::from_token(s).map_err(|e| usage(e.to_string()))
}

fn parse_mode(s: &str) -> Result<GenMode, Failure> {
    s.parse::<GenMode>().map_err(|e| usage(e.to_string()))
}

/// `Some(delta)` for a rational, `None` for `sym`.
fn parse_delta(s: &str) -> Result<Option<Scalar>, Failure> {
    if s == "sym" {
        return Ok(None);
    }
    let d: Scalar = s.parse().map_err(|e: ScfError| usage(format!("--delta: {e}")))?;
    if d.to_rational().is_none() {
        return Err(usage(format!("--delta must be a rational p/q or `sym`, got `{s}`")));
    }
    Ok(Some(d))
}

fn check_lambdas(alg: AlgebraId, lam: i64, lam_bar: Option<i64>) -> Result<(), Failure> {
    if alg != AlgebraId::N2 && lam < 0 {
        return Err(usage("--lambda must be nonnegative"));
    }
    match (alg, lam_bar) {
        (AlgebraId::BigN4, None) => Err(usage("big N=4 needs --lambda-bar")),
        (AlgebraId::BigN4, Some(b)) if b < 0 => Err(usage("--lambda-bar must be nonnegative")),
        (AlgebraId::BigN4, _) | (_, None) => Ok(()),
        _ => Err(usage("--lambda-bar applies to big N=4 only")),
    }
}

fn hw(alg: AlgebraId, delta: Scalar, lam: i64, lam_bar: Option<i64>) -> HighestWeight {
    match lam_bar {
        Some(b) if alg == AlgebraId::BigN4 => HighestWeight::big(delta, lam as u32, b as u32),
        _ => HighestWeight::new(delta, lam),
    }
}

fn module_at(alg: AlgebraId, delta: Scalar, lam: i64, lam_bar: Option<i64>) -> Result<VermaModule, Failure> {
    Ok(build_module(alg, hw(alg, delta, lam, lam_bar))?)
}

fn point(p: &Point) -> Result<(AlgebraId, Option<Scalar>, i64, Option<i64>), Failure> {
    let alg = parse_alg(&p.alg)?;
    let d = parse_delta(&p.delta)?;
    check_lambdas(alg, p.lambda, p.lambda_bar)?;
    Ok((alg, d, p.lambda, p.lambda_bar))
}

fn rational_point(p: &Point) -> Result<(AlgebraId, Scalar, i64, Option<i64>), Failure> {
    let (alg, d, l, lb) = point(p)?;
    let d = d.ok_or_else(|| usage("this command needs a rational --delta"))?;
    Ok((alg, d, l, lb))
}

fn cmd_bracket(out: Out, alg: &str, x: &str, y: &str, as_json: bool) -> Result<(), Failure> {
    let alg = parse_alg(alg)?;
    let (x, y) = (parse_mode(x)?, parse_mode(y)?);
    x.validate(alg).and(y.validate(alg)).map_err(|e| usage(e.to_string()))?;
    let r = bracket(alg, x, y)?;
    if as_json {
        let terms: Vec<Value> =
            r.iter().map(|(g, c)| json!({"gen": g.gen.token(), "mode": g.mode_string(), "coeff": c.render()})).collect();
        emit_json(out, &json!({"schema": SCHEMA, "alg": alg.token(), "x": x.to_string(), "y": y.to_string(), "result": r.render(), "terms": terms}))
    } else {
        emit(out, &r.render())
    }
}

fn cmd_realize(out: Out, alg: &str, x: &str, basis: Basis, as_json: bool) -> Result<(), Failure> {
    let alg = parse_alg(alg)?;
    let x = parse_mode(x)?;
    x.validate(alg).map_err(|e| usage(e.to_string()))?;
    let mut e = realize(alg, x)?;
    let kind = match basis {
        Basis::Standard => BasisKind::Standard,
        Basis::Split => BasisKind::Split,
    };
    if e.kind != kind {
        e = convert(&e, kind)?;
    }
    if as_json {
        emit_json(out, &json!({"schema": SCHEMA, "alg": alg.token(), "x": x.to_string(), "basis": format!("{kind:?}"), "element": e.render()}))
    } else {
        emit(out, &e.render())
    }
}

fn locus_json(m: &VermaModule, dpow: u32) -> Result<Vec<Value>, Failure> {
    let entries = singular_locus(m, dpow)?;
    Ok(entries
        .iter()
        .map(|e| {
            json!({"level": e.level2, "weight": [e.weight.1, e.weight.2], "condition": e.condition.render(), "root": e.root, "dim": e.family.len()})
        })
        .collect())
}

fn print_locus(out: Out, entries: &[Value]) -> Result<(), Failure> {
    if entries.is_empty() {
        return emit(out, "no singular vectors for any Delta in range");
    }
    for e in entries {
        let root = e["root"].as_str().map_or(String::new(), |r| format!("  Delta = {r}"));
        emit(
            out,
            &format!("level {}/2 weight {}: {} = 0{root}", e["level"], e["weight"], e["condition"].as_str().unwrap_or("?")),
        )?;
    }
    Ok(())
}

fn cmd_singular(out: Out, p: &Point, dpow: u32) -> Result<(), Failure> {
    let (alg, d, l, lb) = point(p)?;
    let Some(d) = d else {
        let m = module_at(alg, delta_sym(), l, lb)?;
        let entries = locus_json(&m, dpow)?;
        return if p.json {
            emit_json(out, &json!({"schema": SCHEMA, "alg": alg.token(), "lambda": l, "lambda_bar": lb, "locus": entries}))
        } else {
            print_locus(out, &entries)
        };
    };
    let m = module_at(alg, d.clone(), l, lb)?;
    let reps = find_singular(&m, dpow)?;
    let mut items = Vec::new();
    for r in &reps {
        let names = names_in(&m, &r.basis)?;
        let vectors: Vec<String> = r.basis.iter().map(|v| m.render(v)).collect();
        items.push(json!({
            "level": r.level2,
            "weight": [r.weight.1, r.weight.2],
            "names": names,
            "vectors": vectors,
            "certificate": r.certificate.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        }));
    }
    if p.json {
        return emit_json(
            out,
            &json!({"schema": SCHEMA, "alg": alg.token(), "delta": d.render(), "lambda": l, "lambda_bar": lb, "singular": items}),
        );
    }
    if items.is_empty() {
        return emit(out, "no proper singular vectors");
    }
    for it in items {
        let names: Vec<&str> = it["names"].as_array().unwrap().iter().filter_map(|x| x.as_str()).collect();
        emit(out, &format!("level {}/2 weight {}: {}", it["level"], it["weight"], names.join(", ")))?;
        for v in it["vectors"].as_array().unwrap() {
            emit(out, &format!("  {}", v.as_str().unwrap_or("")))?;
        }
    }
    Ok(())
}

fn cmd_locus(out: Out, alg: &str, l: i64, lb: Option<i64>, dpow: u32, as_json: bool) -> Result<(), Failure> {
    let alg = parse_alg(alg)?;
    check_lambdas(alg, l, lb)?;
    let m = module_at(alg, delta_sym(), l, lb)?;
    let entries = locus_json(&m, dpow)?;
    if as_json {
        emit_json(out, &json!({"schema": SCHEMA, "alg": alg.token(), "lambda": l, "lambda_bar": lb, "locus": entries}))
    } else {
        print_locus(out, &entries)
    }
}

fn row_at(alg: AlgebraId, d: Scalar, l: i64, lb: Option<i64>) -> Result<ClassRow, Failure> {
    Ok(classification_row(alg, d, l, lb, cutoff_from_env())?)
}

fn cmd_rank(out: Out, p: &Point) -> Result<(), Failure> {
    let (alg, d, l, lb) = rational_point(p)?;
    let row = row_at(alg, d, l, lb)?;
    if p.json {
        emit_json(
            out,
            &json!({
                "schema": SCHEMA, "alg": row.algebra, "delta": row.delta, "lambda": row.lambda,
                "lambda_bar": row.lambda_bar, "rank": row.rank, "case": row.case,
                "rank_even": row.rank_even, "rank_odd": row.rank_odd,
            }),
        )
    } else {
        // Key order is fixed by hand: rank first, then case.
        emit(out, &format!("{{\"rank\":{},\"case\":{}}}", row.rank, json!(row.case)))
    }
}

fn row_json(row: &ClassRow) -> Value {
    let mut v = serde_json::to_value(row).expect("serializable");
    v.as_object_mut().unwrap().insert("schema".into(), json!(SCHEMA));
    v
}

fn cmd_row(out: Out, p: &Point, format: Option<Format>) -> Result<(), Failure> {
    let (alg, d, l, lb) = rational_point(p)?;
    let row = row_at(alg, d, l, lb)?;
    if p.json || format == Some(Format::Json) {
        emit_json(out, &row_json(&row))
    } else {
        emit(out, rows_markdown(&[row]).trim_end())
    }
}

/// The parameter grid of `scf tables`.
pub fn grid() -> Vec<(AlgebraId, Scalar, i64, Option<i64>)> {
    let f = Scalar::ratio;
    let mut pts = Vec::new();
    let mut push = |alg, ds: Vec<Scalar>, l, lb| {
        let mut seen = Vec::new();
        for d in ds {
            if !seen.contains(&d) {
                seen.push(d.clone());
                pts.push((alg, d, l, lb));
            }
        }
    };
    for l in 0..=3 {
        push(AlgebraId::N2, vec![f(l, 2), f(-l, 2), f(-1, 2), f(1, 3)], l, None);
    }
    push(AlgebraId::N2, vec![f(-1, 2)], -1, None);
    for l in 0..=3 {
        push(AlgebraId::N3, vec![f(l, 4), f(-(l + 2), 4), f(1, 3)], l, None);
    }
    for l in 0..=3 {
        push(AlgebraId::small(1), vec![f(l, 2), f(-(l + 2), 2), f(1, 3)], l, None);
    }
    for l in 0..=2 {
        for lb in 0..=2 {
            push(AlgebraId::BigN4, vec![f(l, 2), f(-(l + 2), 2), f(1, 3)], l, Some(lb));
        }
    }
    pts
}

fn classification(cutoff2: i32) -> Result<Vec<ClassRow>, Failure> {
    let rows: Vec<Result<ClassRow, ScfError>> =
        grid().into_par_iter().map(|(alg, d, l, lb)| classification_row(alg, d, l, lb, cutoff2)).collect();
    Ok(rows.into_iter().collect::<Result<Vec<_>, _>>()?)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Every artifact of `scf tables`, keyed by relative path.
pub fn artifacts(cutoff2: i32) -> Result<BTreeMap<String, String>, Failure> {
    let rows = classification(cutoff2)?;
    let mut files = BTreeMap::new();
    files.insert("classification.md".to_string(), rows_markdown(&rows));
    let rows_json: Vec<Value> = rows.iter().map(|r| serde_json::to_value(r).expect("serializable")).collect();
    files.insert(
        "classification.json".to_string(),
        pretty(&json!({"schema": SCHEMA, "cutoff2": cutoff2, "rows": rows_json})),
    );
    let algs = json!({
        "schema": SCHEMA,
        "printed": [lc::virasoro().to_json(), lc::current_sl2().to_json(), lc::semidirect(&lc::current_sl2()).to_json(), lc::n2().to_json()],
        "generated": [
            lc::conformal_algebra_from_modes(AlgebraId::N2)?.completed()?.to_json(),
            lc::conformal_algebra_from_modes(AlgebraId::N3)?.completed()?.to_json(),
            lc::conformal_algebra_from_modes(AlgebraId::small(1))?.completed()?.to_json(),
        ],
    });
    files.insert("lambda/algebras.json".to_string(), pretty(&algs));
    let printed: Vec<Value> = [lc::virasoro_module(), lc::n2_module_rank4(), lc::n2_module_2d_plus_l(), lc::n2_module_2d_minus_l()]
        .iter()
        .map(|m| m.to_json())
        .collect();
    files.insert("lambda/n2_modules.json".to_string(), pretty(&json!({"schema": SCHEMA, "modules": printed})));
    let gen_pts: &[(AlgebraId, &str, Scalar, i64)] = &[
        (AlgebraId::N3, "lambda/n3_modules.json", Scalar::ratio(1, 2), 2),
        (AlgebraId::N3, "lambda/n3_modules.json", Scalar::ratio(-3, 4), 1),
        (AlgebraId::N3, "lambda/n3_modules.json", Scalar::ratio(1, 3), 1),
        (AlgebraId::small(1), "lambda/sn4_modules.json", Scalar::one(), 2),
        (AlgebraId::small(1), "lambda/sn4_modules.json", Scalar::ratio(-3, 2), 1),
        (AlgebraId::small(1), "lambda/sn4_modules.json", Scalar::ratio(1, 3), 1),
    ];
    let mut mods: BTreeMap<&str, Vec<Value>> = BTreeMap::new();
    for (alg, file, d, l) in gen_pts {
        let m = lc::generated_module(*alg, HighestWeight::new(d.clone(), *l), cutoff2)?;
        mods.entry(file).or_default().push(m.to_json());
    }
    for (file, ms) in mods {
        files.insert(file.to_string(), pretty(&json!({"schema": SCHEMA, "modules": ms})));
    }
    Ok(files)
}

fn io_fail(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: 1, message: format!("{}: {e}", path.display()) }
}

fn cmd_tables(out: Out, format: Format, dir: Option<&Path>, check: Option<&Path>) -> Result<(), Failure> {
    let cutoff2 = cutoff_from_env();
    if dir.is_none() && check.is_none() {
        let rows = classification(cutoff2)?;
        return match format {
            Format::Md => write!(out, "{}", rows_markdown(&rows)).map_err(io_error),
            Format::Json => {
                let rows: Vec<Value> = rows.iter().map(|r| serde_json::to_value(r).expect("serializable")).collect();
                emit_json(out, &json!({"schema": SCHEMA, "cutoff2": cutoff2, "rows": rows}))
            }
        };
    }
    let files = artifacts(cutoff2)?;
    if let Some(dir) = dir {
        for (name, body) in &files {
            let p = dir.join(name);
            if let Some(parent) = p.parent() {
                fs::create_dir_all(parent).map_err(|e| io_fail(parent, e))?;
            }
            fs::write(&p, body).map_err(|e| io_fail(&p, e))?;
            emit(out, &format!("wrote {}", p.display()))?;
        }
    }
    if let Some(dir) = check {
        let mut bad = Vec::new();
        for (name, body) in &files {
            let p = dir.join(name);
            match fs::read_to_string(&p) {
                Ok(s) if s == *body => emit(out, &format!("same {name}"))?,
                Ok(_) => bad.push(format!("differs: {name}")),
                Err(_) => bad.push(format!("missing: {name}")),
            }
        }
        if !bad.is_empty() {
            return Err(Failure { code: 1, message: bad.join("\n") });
        }
    }
    Ok(())
}

fn report(out: Out, title: &str, checks: &[Check], as_json: bool) -> Result<(), Failure> {
    let ok = checks.iter().all(|c| c.passed());
    if as_json {
        emit_json(out, &json!({"schema": SCHEMA, "suite": title, "passed": ok, "checks": checks}))?;
    } else {
        for c in checks {
            emit(out, &format!("{} {} ({} checks)", if c.passed() { "PASS" } else { "FAIL" }, c.name, c.checked))?;
            for f in &c.failures {
                emit(out, &format!("    {f}"))?;
            }
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure { code: 1, message: format!("{title}: some checks failed") })
    }
}

fn cmd_axioms(out: Out, triples: usize, seed: u64, as_json: bool) -> Result<(), Failure> {
    let mut checks = suite("algebra").expect("known suite");
    checks.retain(|c| c.name != "Jacobi fuzz");
    checks.push(jacobi_fuzz(triples, seed));
    checks.extend(suite("lambda").expect("known suite"));
    report(out, "axioms", &checks, as_json)
}

fn cmd_verify(out: Out, name: &str, as_json: bool) -> Result<(), Failure> {
    let checks =
        suite(name).ok_or_else(|| usage(format!("unknown suite `{name}`; expected one of {}", SUITES.join(", "))))?;
    report(out, name, &checks, as_json)
}

/// Runs the command line on `args` (including the program name), writing
/// results to `out` and diagnostics to `err`; returns the exit code.
pub fn run<I, T>(args: I, out: Out, err: Out) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let r = match &cli.cmd {
        Cmd::Bracket { alg, x, y, json } => cmd_bracket(out, alg, x, y, *json),
        Cmd::Realize { alg, x, basis, json } => cmd_realize(out, alg, x, *basis, *json),
        Cmd::Singular { point, dpow } => cmd_singular(out, point, *dpow),
        Cmd::Locus { alg, lambda, lambda_bar, dpow, json } => cmd_locus(out, alg, *lambda, *lambda_bar, *dpow, *json),
        Cmd::Rank { point } => cmd_rank(out, point),
        Cmd::Row { point, format } => cmd_row(out, point, *format),
        Cmd::Tables { format, out: dir, check } => cmd_tables(out, *format, dir.as_deref(), check.as_deref()),
        Cmd::Axioms { triples, seed, json } => cmd_axioms(out, *triples, *seed, *json),
        Cmd::VerifyPaper { suite, json } => cmd_verify(out, suite, *json),
    };
    match r {
        Ok(()) => 0,
        Err(f) => {
            if !f.message.is_empty() {
                let _ = writeln!(err, "error: {}", f.message);
            }
            f.code
        }
    }
}
