use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use lampsolve::divauto::{DivAutomaton, DEFAULT_PERIOD_LIMIT};
use lampsolve::solver::{theoretical_delta_bound, SolverError, DEFAULT_BUDGET, MAX_BUDGET};
use lampsolve::stats::sigma_zero_fraction_with_threads;
use lampsolve::tracer::trace_with_path;
use lampsolve::{LaurentPoly, SolveOutcome, Solver, Word};

const EXIT_NO: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_CAPACITY: u8 = 4;

/// Solve one-variable equations over the lamplighter group Z2 wr Z.
#[derive(Parser)]
#[command(name = "lampsolve", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide w(a,t,x) = 1 and print a verified solution if there is one.
    Solve(SolveArgs),
    /// Trace a word on the (x,t) grid and print num(w), den(w).
    Trace(TraceArgs),
    /// Inspect the division-by-f automaton of a polynomial.
    Automaton(AutomatonArgs),
    /// Estimate how often random reduced words have zero x-exponent sum.
    Stats(StatsArgs),
    /// One-shot polynomial arithmetic.
    #[command(subcommand)]
    Poly(PolyCommand),
}

#[derive(Args)]
struct SolveArgs {
    /// The word, e.g. "a x t^-1".
    word: String,
    #[arg(long)]
    json: bool,
    /// Largest |delta| the witness scan visits.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    max_delta: u64,
    /// Print the witness bounds without scanning.
    #[arg(long)]
    bound_only: bool,
    /// Scan threads (default: available parallelism).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct TraceArgs {
    word: String,
    /// Figure data: kind, x, t rows for the path and the N and D points.
    #[arg(long, conflicts_with = "json")]
    tsv: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AutomatonArgs {
    /// A polynomial with nonnegative exponents, e.g. "z^3 + z + 1".
    poly: String,
    /// Print the automaton in GraphViz format instead of the summary.
    #[arg(long, conflicts_with = "json")]
    dot: bool,
    #[arg(long)]
    json: bool,
    /// Largest degree for which the period is computed.
    #[arg(long, default_value_t = DEFAULT_PERIOD_LIMIT)]
    period_limit: u32,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    length: u32,
    #[arg(long)]
    trials: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum PolyCommand {
    /// f + g
    Add(PolyPair),
    /// f · g
    Mul(PolyPair),
    /// q, r with f = g·q + r
    Divmod(PolyPair),
    /// Whether f divides g.
    Divides(PolyPair),
}

#[derive(Args)]
struct PolyPair {
    f: String,
    g: String,
    #[arg(long)]
    json: bool,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn capacity(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_CAPACITY,
            message: message.into(),
        }
    }
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::Precondition(_) => Failure::input(e.to_string()),
            SolverError::Capacity(_) => Failure::capacity(e.to_string()),
        }
    }
}

fn parse_word(s: &str) -> Result<Word, Failure> {
    s.parse()
        .map_err(|e| Failure::input(format!("invalid word {s:?}: {e}")))
}

fn parse_poly(s: &str) -> Result<LaurentPoly, Failure> {
    s.parse()
        .map_err(|e| Failure::input(format!("invalid polynomial {s:?}: {e}")))
}

fn threads(t: Option<usize>) -> Result<usize, Failure> {
    match t {
        Some(0) => Err(Failure::input("--threads must be at least 1")),
        Some(n) => Ok(n),
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn print_json<T: serde::Serialize + ?Sized>(v: &T) {
    println!("{}", serde_json::to_string(v).unwrap());
}

fn solve(a: SolveArgs) -> Result<u8, Failure> {
    let threads = threads(a.threads)?;
    if a.max_delta > MAX_BUDGET {
        return Err(Failure::capacity(format!(
            "--max-delta {} exceeds the maximum {MAX_BUDGET}",
            a.max_delta
        )));
    }
    let w = parse_word(&a.word)?;
    let solver = Solver::default()
        .with_budget(a.max_delta)
        .with_threads(threads);
    if a.bound_only {
        return bound_only(&solver, &w, a.json);
    }
    let outcome = solver.decide(&w)?;
    if a.json {
        print_json(&outcome);
    } else {
        println!("{outcome}");
    }
    Ok(match outcome {
        SolveOutcome::Yes { .. } => 0,
        SolveOutcome::No { .. } => EXIT_NO,
        SolveOutcome::Unknown { .. } => EXIT_UNKNOWN,
    })
}

fn big<T: ToString>(b: &Option<T>) -> Value {
    b.as_ref().map_or(Value::Null, |b| json!(b.to_string()))
}

fn bound_only(solver: &Solver, w: &Word, as_json: bool) -> Result<u8, Failure> {
    let s = w.exponent_sums();
    let v = if s.x != 0 {
        json!({"case": "sigma_x_nonzero"})
    } else if s.t != 0 {
        json!({"case": "shift_mismatch"})
    } else {
        let theoretical = json!(theoretical_delta_bound(w).to_string());
        match solver.witness_bounds(w)? {
            None => json!({"case": "trivial_den", "theoretical_bound": theoretical}),
            Some(b) => json!({
                "case": "divisibility",
                "theoretical_bound": theoretical,
                "witness_bound_positive": big(&b.positive),
                "witness_bound_negative": big(&b.negative),
                "period_fallback": b.fallback,
            }),
        }
    };
    if as_json {
        print_json(&v);
    } else {
        for (k, val) in v.as_object().unwrap() {
            let text = match val {
                Value::String(s) => s.clone(),
                Value::Null => "too large to represent".to_string(),
                other => other.to_string(),
            };
            println!("{}: {text}", k.replace('_', " "));
        }
    }
    Ok(0)
}

fn trace_cmd(a: TraceArgs) -> Result<u8, Failure> {
    let w = parse_word(&a.word)?;
    let r = trace_with_path(&w);
    if a.tsv {
        print!("{}", r.to_tsv());
    } else if a.json {
        print_json(&r);
    } else {
        let pts = |s: &lampsolve::parametric::GridPointSet| {
            s.iter()
                .map(|(x, t)| format!("x^{x}t^{t}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        println!("x_w: {}", r.x_w);
        println!("t_w: {}", r.t_w);
        println!("num: {}", r.num);
        println!("den: {}", r.den);
        println!("N: {{{}}}", pts(&r.n));
        println!("D: {{{}}}", pts(&r.d));
    }
    Ok(0)
}

fn automaton_cmd(a: AutomatonArgs) -> Result<u8, Failure> {
    let f = parse_poly(&a.poly)?;
    let auto = DivAutomaton::new(&f)
        .map_err(|e| Failure::input(e.to_string()))?
        .with_period_limit(a.period_limit);
    if a.dot {
        let dot = auto
            .to_dot()
            .map_err(|e| Failure::capacity(e.to_string()))?;
        print!("{dot}");
        return Ok(0);
    }
    if !f.coeff(0) {
        return Err(Failure::input("the polynomial must have constant term 1"));
    }
    let report = auto
        .structural_checks()
        .map_err(|e| Failure::capacity(e.to_string()))?;
    let period = auto
        .period()
        .map_err(|e| Failure::capacity(e.to_string()))?;
    if a.json {
        print_json(&json!({
            "f": f,
            "degree": auto.degree(),
            "states": report.states,
            "period": period,
            "strongly_connected": report.strongly_connected,
            "unique_in": report.unique_in,
        }));
    } else {
        let yn = |b: bool| if b { "yes" } else { "no" };
        println!("polynomial: {f}");
        println!("degree: {}", auto.degree());
        println!("states: {}", report.states);
        println!("period: {period}");
        println!("strongly connected: {}", yn(report.strongly_connected));
        println!("unique in-edges: {}", yn(report.unique_in));
    }
    Ok(0)
}

fn stats_cmd(a: StatsArgs) -> Result<u8, Failure> {
    if a.length == 0 {
        return Err(Failure::input("--length must be at least 1"));
    }
    if a.trials == 0 {
        return Err(Failure::input("--trials must be at least 1"));
    }
    let threads = threads(a.threads)?;
    let e = sigma_zero_fraction_with_threads(a.length, a.trials, a.seed, threads);
    if a.json {
        print_json(&json!({
            "m": e.m,
            "trials": e.total,
            "hits": e.hits,
            "exact": e.exact,
            "fraction": e.fraction(),
            "scaled": e.scaled(),
        }));
    } else {
        println!("m\ttrials\tfraction\tfraction_sqrt_m");
        println!(
            "{}\t{}\t{:.6}\t{:.6}",
            e.m,
            e.total,
            e.fraction(),
            e.scaled()
        );
    }
    Ok(0)
}

fn poly_cmd(c: PolyCommand) -> Result<u8, Failure> {
    let (op, pair) = match c {
        PolyCommand::Add(p) => ("add", p),
        PolyCommand::Mul(p) => ("mul", p),
        PolyCommand::Divmod(p) => ("divmod", p),
        PolyCommand::Divides(p) => ("divides", p),
    };
    let f = parse_poly(&pair.f)?;
    let g = parse_poly(&pair.g)?;
    let capacity = |e: lampsolve::gf2poly::PolyError| Failure::capacity(e.to_string());
    let (text, v) = match op {
        "add" => {
            let r = &f + &g;
            (r.to_string(), json!({"result": r}))
        }
        "mul" => {
            let r = f.checked_mul(&g).map_err(capacity)?;
            (r.to_string(), json!({"result": r}))
        }
        "divmod" => {
            let (q, r) = f.divmod(&g).map_err(|e| match e {
                lampsolve::gf2poly::PolyError::DivisionByZero => Failure::input(e.to_string()),
                e => capacity(e),
            })?;
            (format!("q: {q}\nr: {r}"), json!({"q": q, "r": r}))
        }
        _ => {
            let d = f.divides(&g);
            (d.to_string(), json!({"divides": d}))
        }
    };
    if pair.json {
        print_json(&v);
    } else {
        println!("{text}");
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Trace(a) => trace_cmd(a),
        Command::Automaton(a) => automaton_cmd(a),
        Command::Stats(a) => stats_cmd(a),
        Command::Poly(c) => poly_cmd(c),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
