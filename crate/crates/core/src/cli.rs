//! Command-line front end: argument parsing, dispatch, and report serialization.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::characters::{
    branching_and_induction_checks, char_table, dim_rational, dim_sk, dim_un, koike_dimension, koike_expand,
};
use crate::error::{Error, Result};
use crate::exact::{factorial, from_bigint, int, rat, ExactValue, Rational};
use crate::expansion::expansion_pipeline;
use crate::oracle::{mc_integral, Group};
use crate::partitions::{count_ssyt, enumerate_partitions, partitions_in_box, CutoffSpec, SkewShape, YoungDiagram};
use crate::surface::{
    expected_trace, fourier_coefficient, fourier_coefficient_poly, glm_lower_bound, single_lambda_majorant,
    tail_majorant, witten_zeta_partial, Cutoff, Rep, Route, Word,
};
use crate::weingarten::{ContractionDiagram, WordMomentEngine, DEFAULT_BUDGET};

const WORD_GRAMMAR: &str = "\
Words: lowercase letters are generators a1,b1,a2,b2,... written a,b,c,d,...; uppercase letters are
their inverses; the empty string is the identity. Example: --word abAB is [a1,b1] = a1 b1 a1^-1 b1^-1.
Shapes: comma-separated rows, e.g. --lambda 2,1; an empty string or () is the empty diagram.
Exit status: 0 on success, 1 on a domain or input error, 2 when the Weingarten budget refuses a term.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Parser)]
#[command(name = "wilson-loops", version, about = "Exact Wilson-loop expectations for surface groups", after_help = WORD_GRAMMAR)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Maximum number of permutation pairs per Weingarten integral.
    #[arg(long, global = true, env = "WILSON_LOOPS_BUDGET")]
    pub budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
pub struct WordArgs {
    /// Word in the free group, e.g. abAB.
    #[arg(long, default_value = "")]
    pub word: String,
    #[arg(long, default_value_t = 2)]
    pub genus: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
pub struct RepArgs {
    /// Polynomial representation.
    #[arg(long, conflicts_with_all = ["mu", "nu"])]
    pub lambda: Option<String>,
    /// Positive part of a rational representation.
    #[arg(long)]
    pub mu: Option<String>,
    /// Negative part of a rational representation.
    #[arg(long)]
    pub nu: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
pub struct CutoffArgs {
    /// Box-family cutoff parameter.
    #[arg(long = "B", conflicts_with = "max_dim")]
    pub b: Option<usize>,
    /// Keep every irreducible of dimension at most this.
    #[arg(long)]
    pub max_dim: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Subcommand)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum Command {
    /// Partial Witten zeta sum with a tail certificate.
    Zeta {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        cutoff: CutoffArgs,
    },
    /// Fourier coefficient I(w, rho).
    Coeff {
        #[command(flatten)]
        word: WordArgs,
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Route::Auto)]
        route: Route,
    },
    /// Expected trace over a finite family of representations.
    Expect {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        cutoff: CutoffArgs,
        #[arg(long, value_enum, default_value_t = Route::Auto)]
        route: Route,
    },
    /// Single-representation majorant and, with --B, the shape-level tail majorant.
    Bound {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        n: usize,
        #[arg(long = "B")]
        b: Option<usize>,
    },
    /// Monte Carlo estimate of I(w, rho).
    Mc {
        #[command(flatten)]
        word: WordArgs,
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 200_000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Group::U)]
        group: Group,
    },
    /// Rational fit over a range of n and its Laurent expansion.
    Expand {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long = "B", default_value_t = 1)]
        b: usize,
        #[arg(long)]
        n_from: usize,
        #[arg(long, default_value_t = 8)]
        n_count: usize,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Run the invariant suite.
    Check,
    /// Integrate a product of traces given as a JSON contraction diagram.
    Integrate {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Character table of S_k.
    Chars {
        #[arg(long)]
        k: usize,
    },
    /// Koike expansion of the rational character [mu, nu].
    Koike {
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
    },
    /// Re-run the configuration echoed in a previous JSON report.
    Replay {
        #[arg(long)]
        report: PathBuf,
    },
}

/// Parses `2,1`, `(2,1)`, `()` or the empty string.
pub fn parse_shape(text: &str) -> Result<YoungDiagram> {
    let trimmed = text.trim();
    let offset = text.find(trimmed).unwrap_or(0);
    let inner = trimmed
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(trimmed);
    let base = offset + usize::from(inner.len() != trimmed.len());
    if inner.trim().is_empty() {
        return Ok(YoungDiagram::empty());
    }
    let mut rows = Vec::new();
    let mut col = base;
    for part in inner.split(',') {
        let value = part.trim().parse::<usize>().map_err(|_| Error::Parse {
            line: 1,
            column: col + 1,
            message: format!("expected a row length, found '{part}'"),
        })?;
        rows.push(value);
        col += part.len() + 1;
    }
    YoungDiagram::new(rows).map_err(|e| Error::Parse {
        line: 1,
        column: base + 1,
        message: e.to_string(),
    })
}

fn parse_word(args: &WordArgs) -> Result<Word> {
    Word::parse(&args.word, args.genus)
}

fn parse_rep(args: &RepArgs) -> Result<Rep> {
    match (&args.lambda, &args.mu, &args.nu) {
        (Some(l), None, None) => Ok(Rep::poly(parse_shape(l)?)),
        (None, mu, nu) => {
            let mu = mu.as_deref().map(parse_shape).transpose()?.unwrap_or_else(YoungDiagram::empty);
            let nu = nu.as_deref().map(parse_shape).transpose()?.unwrap_or_else(YoungDiagram::empty);
            Ok(if nu.is_empty() { Rep::poly(mu) } else { Rep::rational(mu, nu) })
        }
        _ => Err(Error::Precondition("give either --lambda or --mu/--nu".into())),
    }
}

fn parse_cutoff(args: &CutoffArgs) -> Result<Cutoff> {
    match (args.b, args.max_dim) {
        (Some(b), None) => Ok(Cutoff::Omega { b: CutoffSpec::new(b)?.b }),
        (None, Some(d)) => Ok(Cutoff::MaxDim { d }),
        _ => Err(Error::Precondition("give exactly one of --B or --max-dim".into())),
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn exact_fields(obj: &mut Value, v: &Rational) {
    if let Value::Object(map) = obj {
        map.insert("value_num".into(), Value::String(v.numer().to_string()));
        map.insert("value_den".into(), Value::String(v.denom().to_string()));
    }
}

/// One entry of the invariant suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check<F: FnOnce() -> Result<(bool, String)>>(name: &str, f: F) -> CheckResult {
    match f() {
        Ok((passed, detail)) => CheckResult {
            name: name.into(),
            passed,
            detail,
        },
        Err(e) => CheckResult {
            name: name.into(),
            passed: false,
            detail: e.to_string(),
        },
    }
}

const PARTITION_NUMBERS: [u64; 21] = [
    1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231, 297, 385, 490, 627,
];

/// Quick exact checks over every module; the CI entry point.
pub fn invariant_suite(engine: &WordMomentEngine) -> Vec<CheckResult> {
    let mut out = Vec::new();
    out.push(check("partition counts k <= 20", || {
        let bad: Vec<usize> = (0..=20)
            .filter(|&k| enumerate_partitions(k).len() as u64 != PARTITION_NUMBERS[k])
            .collect();
        Ok((bad.is_empty(), format!("mismatches at {bad:?}")))
    }));
    out.push(check("sum of d_lambda^2 = k! for k <= 8", || {
        let ok = (0..=8).all(|k| {
            let s: num_bigint::BigUint = enumerate_partitions(k).iter().map(|l| dim_sk(l).pow(2)).sum();
            s == factorial(k)
        });
        Ok((ok, String::new()))
    }));
    out.push(check("character column orthogonality k <= 6", || {
        for k in 1..=6 {
            let t = char_table(k)?;
            for (a, ca) in t.classes.iter().enumerate() {
                for b in 0..t.classes.len() {
                    let s: i64 = t.values.iter().map(|row| row[a] * row[b]).sum();
                    let z = crate::characters::centralizer_order(&ca.partition);
                    let expected = if a == b { i64::try_from(z).unwrap_or(-1) } else { 0 };
                    if s != expected {
                        return Ok((false, format!("k={k}, classes {a},{b}")));
                    }
                }
            }
        }
        Ok((true, String::new()))
    }));
    out.push(check("SSYT count = D_lambda(n) for |lambda| <= 4, n <= 4", || {
        for k in 0..=4 {
            for l in enumerate_partitions(k) {
                for n in 1..=4usize {
                    let c = count_ssyt(&SkewShape::straight(l.clone()), 1, n as i64);
                    if int(c as i64) != dim_un(&l, n) {
                        return Ok((false, format!("{l} n={n}")));
                    }
                }
            }
        }
        Ok((true, String::new()))
    }));
    out.push(check("branching and induction identities", || {
        for k in 0..=4 {
            for l in enumerate_partitions(k) {
                for n in 1..=4 {
                    branching_and_induction_checks(&l, &l, n, 2)?;
                }
            }
        }
        Ok((true, String::new()))
    }));
    out.push(check("Frobenius identity for the empty word", || {
        let e = Word::identity(2);
        for n in 2..=3usize {
            for rows in [&[1][..], &[2], &[1, 1]] {
                let l = YoungDiagram::new(rows.to_vec())?;
                let got = fourier_coefficient_poly(&e, &l, n)?.value;
                let d = dim_un(&l, n);
                if got != int(n as i64) / (&d * &d * &d) {
                    return Ok((false, format!("{l} n={n}")));
                }
            }
        }
        Ok((true, String::new()))
    }));
    out.push(check("SU(2) zeta partial sum equals the Basel partial sum", || {
        let z = witten_zeta_partial(2, 2, Cutoff::MaxDim { d: 100 })?;
        let expected: Rational = (1..=100i64).map(|k| rat(1, k * k)).sum();
        Ok((z.partial_sum == expected, String::new()))
    }));
    out.push(check("identity word has expectation n", || {
        for n in 4..=5 {
            let e = expected_trace(&Word::identity(2), n, Cutoff::Omega { b: 1 }, Route::Auto, engine)?;
            if e.value != int(n as i64) {
                return Ok((false, format!("n={n}: {}", e.value)));
            }
        }
        Ok((true, String::new()))
    }));
    out.push(check("unbalanced words vanish", || {
        for text in ["a", "ab", "aaB"] {
            let w = Word::parse(text, 2)?;
            let e = expected_trace(&w, 4, Cutoff::Omega { b: 1 }, Route::Auto, engine)?;
            let c = fourier_coefficient(&w, &Rep::poly(YoungDiagram::new(vec![1])?), 4, Route::Auto, engine)?;
            if !e.value.is_zero() || !c.value.is_zero() {
                return Ok((false, text.into()));
            }
        }
        Ok((true, String::new()))
    }));
    out.push(check("Koike dimensions match the Weyl formula", || {
        let small = partitions_in_box(2, 2).into_iter().filter(|d| d.size() <= 2).collect::<Vec<_>>();
        for mu in &small {
            for nu in &small {
                let e = koike_expand(mu, nu)?;
                let start = (mu.length() + nu.length()).max(1);
                for n in start..start + 5 {
                    if koike_dimension(&e.terms, n) != from_bigint(dim_rational(mu, nu, n)?) {
                        return Ok((false, format!("{mu} {nu} n={n}")));
                    }
                }
            }
        }
        Ok((true, String::new()))
    }));
    out.push(check("dimension lower bound for |lambda| <= 4, n <= 6", || {
        for k in 0..=4 {
            for l in enumerate_partitions(k) {
                for n in (l.length() + 1).max(2)..=6 {
                    let d = crate::exact::to_f64(&dim_un(&l, n));
                    if glm_lower_bound(&l, n)? > d * (1.0 + 1e-12) {
                        return Ok((false, format!("{l} n={n}")));
                    }
                }
            }
        }
        Ok((true, String::new()))
    }));
    out.push(check("Weingarten and character routes agree on [a,b]", || {
        let w = Word::parse("abAB", 2)?;
        for rows in [&[][..], &[1], &[2]] {
            let rep = Rep::poly(YoungDiagram::new(rows.to_vec())?);
            let a = fourier_coefficient(&w, &rep, 3, Route::Weingarten, engine)?.value;
            let b = fourier_coefficient(&w, &rep, 3, Route::Character, engine)?.value;
            if a != b {
                return Ok((false, format!("{rep}: {a} vs {b}")));
            }
        }
        Ok((true, String::new()))
    }));
    out
}

fn execute(cli: &Cli, engine: &WordMomentEngine) -> Result<Value> {
    Ok(match &cli.command {
        Command::Zeta { s, n, cutoff } => to_json(&witten_zeta_partial(*s, *n, parse_cutoff(cutoff)?)?),
        Command::Coeff { word, rep, n, route } => {
            let c = fourier_coefficient(&parse_word(word)?, &parse_rep(rep)?, *n, *route, engine)?;
            let mut v = to_json(&c);
            exact_fields(&mut v, &c.value);
            v
        }
        Command::Expect { word, n, cutoff, route } => {
            let e = expected_trace(&parse_word(word)?, *n, parse_cutoff(cutoff)?, *route, engine)?;
            let mut v = to_json(&e);
            exact_fields(&mut v, &e.value);
            v
        }
        Command::Bound { word, lambda, n, b } => {
            let w = parse_word(word)?;
            let report = single_lambda_majorant(&w, &parse_shape(lambda)?, *n)?;
            let tail = b
                .map(|b| CutoffSpec::new(b).map(|spec| tail_majorant(&w, spec, *n)))
                .transpose()?;
            json!({ "single": report, "tail": tail })
        }
        Command::Mc {
            word,
            rep,
            n,
            samples,
            seed,
            group,
        } => to_json(&mc_integral(&parse_word(word)?, &parse_rep(rep)?, *n, *group, *samples, *seed)?),
        Command::Expand {
            word,
            b,
            n_from,
            n_count,
            order,
        } => {
            let ns: Vec<usize> = (*n_from..n_from + n_count).collect();
            to_json(&expansion_pipeline(&parse_word(word)?, CutoffSpec::new(*b)?, &ns, *order, engine)?)
        }
        Command::Check => {
            let results = invariant_suite(engine);
            let failed: Vec<String> = results.iter().filter(|r| !r.passed).map(|r| r.name.clone()).collect();
            if !failed.is_empty() {
                return Err(Error::IdentityViolation(format!("failed checks: {}", failed.join("; "))));
            }
            json!({ "checks": results, "passed": results.len() })
        }
        Command::Integrate { diagram, n } => {
            let text = std::fs::read_to_string(diagram)
                .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", diagram.display())))?;
            let d: ContractionDiagram = serde_json::from_str(&text).map_err(|e| Error::Parse {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
            let value = engine.integrate(&d, *n)?;
            let mut v = json!({ "diagram": d, "text": d.to_string(), "n": n, "value": ExactValue::from(&value) });
            exact_fields(&mut v, &value);
            v
        }
        Command::Chars { k } => {
            let t = char_table(*k)?;
            json!({
                "k": t.k,
                "shapes": t.shapes,
                "classes": t.classes,
                "values": t.values,
                "csv": t.to_csv(),
            })
        }
        Command::Koike { mu, nu } => to_json(&koike_expand(&parse_shape(mu)?, &parse_shape(nu)?)?),
        Command::Replay { .. } => unreachable!("replay is resolved before dispatch"),
    })
}

/// Scalars verbatim, exact values as `num/den`, everything else as embedded JSON.
fn csv_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        Value::Object(m) if m.len() == 2 && m.contains_key("num") && m.contains_key("den") => {
            format!("{}/{}", m["num"].as_str().unwrap_or(""), m["den"].as_str().unwrap_or(""))
        }
        other => other.to_string(),
    }
}

fn render_csv(cli: &Cli, result: &Value) -> String {
    if let (Command::Chars { .. }, Some(csv)) = (&cli.command, result.get("csv").and_then(Value::as_str)) {
        return csv.to_string();
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    if let (Command::Check, Some(Value::Array(rows))) = (&cli.command, result.get("checks")) {
        w.write_record(["name", "passed", "detail"]).expect("in-memory write");
        for r in rows {
            w.write_record([csv_cell(&r["name"]), csv_cell(&r["passed"]), csv_cell(&r["detail"])])
                .expect("in-memory write");
        }
    } else if let Value::Object(map) = result {
        w.write_record(map.keys()).expect("in-memory write");
        w.write_record(map.values().map(csv_cell)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

/// Exit status and the text written to stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn resolve_replay(cli: Cli) -> Result<Cli> {
    let Command::Replay { report } = &cli.command else {
        return Ok(cli);
    };
    let text = std::fs::read_to_string(report)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", report.display())))?;
    let parsed: Value = serde_json::from_str(&text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let config = parsed
        .get("config")
        .cloned()
        .ok_or_else(|| Error::Precondition("report has no config".into()))?;
    let replayed: Cli = serde_json::from_value(config)
        .map_err(|e| Error::Precondition(format!("report config is not a valid run: {e}")))?;
    resolve_replay(replayed)
}

/// Runs a parsed configuration and renders its report.
pub fn run(cli: Cli) -> Outcome {
    let fail = |e: Error| Outcome {
        code: e.exit_code(),
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    };
    let cli = match resolve_replay(cli) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let engine = WordMomentEngine::with_budget(cli.budget.map_or(DEFAULT_BUDGET, u128::from));
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.workers.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => return fail(Error::Precondition(format!("cannot start workers: {e}"))),
    };
    let result = match pool.install(|| execute(&cli, &engine)) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let stdout = match cli.output {
        OutputFormat::Json => {
            let mut report = Map::new();
            report.insert("version".into(), Value::String(env!("CARGO_PKG_VERSION").into()));
            report.insert("config".into(), to_json(&cli));
            report.insert("result".into(), result);
            serde_json::to_string_pretty(&Value::Object(report)).expect("serializes") + "\n"
        }
        OutputFormat::Csv => render_csv(&cli, &result),
    };
    Outcome {
        code: 0,
        stdout,
        stderr: String::new(),
    }
}

/// Parses `args` (including the program name) and runs them. Usage errors exit with status 1.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_parse() {
        assert_eq!(parse_shape("").unwrap(), YoungDiagram::empty());
        assert_eq!(parse_shape("()").unwrap(), YoungDiagram::empty());
        assert_eq!(parse_shape("2,1").unwrap().rows(), &[2, 1]);
        assert_eq!(parse_shape("(3, 1)").unwrap().rows(), &[3, 1]);
        match parse_shape("2,x") {
            Err(Error::Parse { column: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_shape("1,2"), Err(Error::Parse { .. })));
    }

    fn result(args: &[&str]) -> Value {
        let out = run_args(std::iter::once("wilson-loops").chain(args.iter().copied()));
        assert_eq!(out.code, 0, "{}", out.stderr);
        serde_json::from_str::<Value>(&out.stdout).unwrap()["result"].clone()
    }

    #[test]
    fn documented_examples() {
        let r = result(&["expect", "--word", "", "--n", "5", "--B", "1", "--genus", "2"]);
        assert_eq!((r["value_num"].as_str(), r["value_den"].as_str()), (Some("5"), Some("1")));
        let r = result(&["coeff", "--word", "abAB", "--lambda", "", "--n", "4", "--genus", "2"]);
        assert_eq!((r["value_num"].as_str(), r["value_den"].as_str()), (Some("1"), Some("4")));
        let r = result(&["zeta", "--s", "2", "--n", "2", "--B", "3"]);
        let terms = r["terms"].as_u64().unwrap() as i64;
        let expected: Rational = (1..=terms).map(|k| rat(1, k * k)).sum();
        assert_eq!(r["partial_sum"]["num"].as_str().unwrap(), expected.numer().to_string());
    }

    #[test]
    fn exit_statuses() {
        let run = |args: &[&str]| run_args(std::iter::once("wilson-loops").chain(args.iter().copied()));
        let out = run(&["coeff", "--word", "aXb", "--lambda", "1", "--n", "3", "--genus", "2"]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("column 2"), "{}", out.stderr);
        let out = run(&["coeff", "--word", "abAB", "--lambda", "2,1", "--n", "3", "--route", "weingarten", "--budget", "100"]);
        assert_eq!(out.code, 2);
        assert_eq!(run(&["zeta", "--s", "1", "--n", "2", "--max-dim", "5"]).code, 1);
        assert_eq!(run(&["frobnicate"]).code, 1);
        assert_eq!(run(&["--help"]).code, 0);
    }

    #[test]
    fn config_echo_replays() {
        let out = run_args(["wilson-loops", "coeff", "--word", "abAB", "--mu", "1", "--nu", "1", "--n", "3"]);
        let report: Value = serde_json::from_str(&out.stdout).unwrap();
        let cli: Cli = serde_json::from_value(report["config"].clone()).unwrap();
        assert_eq!(run(cli).stdout, out.stdout);
    }

    #[test]
    fn suite_passes() {
        let results = invariant_suite(&WordMomentEngine::default());
        for r in &results {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }
}
