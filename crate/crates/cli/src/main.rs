//! `knot`: invariants, scrambles and table regressions from the command line.
//!
//! Exit codes: 0 success, 1 parse or input error, 2 validation error or
//! cap exceeded, 3 expectation mismatch or failed verification.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use knotcore::diagram::Diagram;
use knotcore::invariants::{
    bracket_skein, chirality_certificate, compute_report, conway, f_poly, jones, jones_text, kauffman_f,
    kauffman_l, poly_json, state_table, state_table_tsv, sum_state_rows, InvariantError, DEFAULT_STATE_CAP,
};
use knotcore::moves::{format_log, parse_log, replay, scramble, Policy};
use knotcore::notation::{emit_pd, load_table, parse_diagram, NotationError};
use knotcore::poly::LaurentPoly;

#[derive(Parser)]
#[command(name = "knot", version, about = "Knot and link invariants from PD codes and braid words")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Every invariant of one diagram.
    Compute {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compare f with f of the mirror image.
    MirrorTest {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Scramble and print the resulting diagram and move log.
    Scramble {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        run: ScrambleArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Scramble and check that the policy's invariants are unchanged.
    ScrambleVerify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        run: ScrambleArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Apply a move log to a diagram.
    Replay {
        #[command(flatten)]
        input: Input,
        /// Move log, one `kind direction location variant` per line.
        #[arg(long)]
        log: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check every entry of a knot table against its expectations.
    TableRun {
        #[arg(long)]
        table: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// All 2^N states with weights and loop counts.
    StateDump {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
}

#[derive(Args)]
struct Input {
    /// Diagram text: `PD[...]` or `Bn: e1 e2 ...`.
    #[arg(conflicts_with = "file", required_unless_present = "file")]
    diagram: Option<String>,
    /// Read the diagram text from a file instead.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct ScrambleArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    steps: usize,
    #[arg(long, default_value = "ambient", value_parser = parse_policy)]
    policy: Policy,
}

fn parse_policy(s: &str) -> Result<Policy, String> {
    s.parse()
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Tsv,
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn parse(msg: impl ToString) -> Self {
        Failure { code: 1, msg: msg.to_string() }
    }

    fn invalid(msg: impl ToString) -> Self {
        Failure { code: 2, msg: msg.to_string() }
    }
}

impl From<NotationError> for Failure {
    fn from(e: NotationError) -> Self {
        Failure { code: if e.is_validation() { 2 } else { 1 }, msg: e.to_string() }
    }
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Self {
        Failure::invalid(e)
    }
}

/// Standard output plus the exit code to finish with.
struct Outcome {
    stdout: String,
    code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

fn read_diagram(input: &Input) -> Result<Diagram, Failure> {
    let text = match (&input.diagram, &input.file) {
        (Some(t), _) => t.clone(),
        (None, Some(p)) => std::fs::read_to_string(p).map_err(|e| Failure::parse(format!("{}: {e}", p.display())))?,
        (None, None) => return Err(Failure::parse("no diagram given")),
    };
    let d = parse_diagram(text.trim())?;
    if d.is_empty() {
        return Err(Failure::invalid(InvariantError::EmptyDiagram));
    }
    Ok(d)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    match cli.command {
        Command::Compute { input, format } => {
            let r = compute_report(&read_diagram(&input)?)?;
            Ok(Outcome::ok(if format == Format::Json { pretty(&r.to_json()) } else { r.to_text() }))
        }
        Command::MirrorTest { input, format } => {
            let c = chirality_certificate(&read_diagram(&input)?)?;
            Ok(Outcome::ok(if format == Format::Json {
                pretty(&json!({ "verdict": c.verdict.to_string(), "f": poly_json(&c.f), "f_mirror": poly_json(&c.f_mirror) }))
            } else {
                format!("{}\nf: {}\nf(mirror): {}\n", c.verdict, c.f, c.f_mirror)
            }))
        }
        Command::Scramble { input, run, format } => {
            let d = read_diagram(&input)?;
            let s = scramble(&d, run.seed, run.steps, run.policy);
            Ok(Outcome::ok(if format == Format::Json {
                pretty(&json!({
                    "pd": emit_pd(&s.diagram),
                    "diagram": s.diagram.to_json(),
                    "log": format_log(&s.log).lines().collect::<Vec<_>>(),
                }))
            } else {
                format!("{}\n{}", emit_pd(&s.diagram), format_log(&s.log))
            }))
        }
        Command::ScrambleVerify { input, run, format } => scramble_verify(&read_diagram(&input)?, &run, format),
        Command::Replay { input, log, format } => {
            let d = read_diagram(&input)?;
            let text = std::fs::read_to_string(&log).map_err(|e| Failure::parse(format!("{}: {e}", log.display())))?;
            let entries = parse_log(&text).map_err(Failure::parse)?;
            let r = replay(&d, &entries).map_err(Failure::invalid)?;
            Ok(Outcome::ok(if format == Format::Json {
                pretty(&json!({ "pd": emit_pd(&r), "diagram": r.to_json() }))
            } else {
                emit_pd(&r) + "\n"
            }))
        }
        Command::TableRun { table, format } => table_run(&table, format),
        Command::StateDump { input, cap, format } => {
            let d = read_diagram(&input)?;
            let rows = state_table(&d, cap)?;
            Ok(Outcome::ok(if format == Format::Json {
                let rs: Vec<Value> = rows
                    .iter()
                    .map(|r| json!({ "state": r.state.to_string(), "weight": poly_json(&r.weight), "loops": r.loops }))
                    .collect();
                pretty(&json!({ "rows": rs, "bracket": poly_json(&sum_state_rows(&rows)) }))
            } else {
                state_table_tsv(&rows)
            }))
        }
    }
}

/// Named invariants preserved by each policy.
fn policy_invariants(d: &Diagram, p: Policy) -> Result<Vec<(&'static str, String)>, Failure> {
    let s = |p: LaurentPoly| p.to_string();
    Ok(match p {
        Policy::Ambient => vec![
            ("f", s(f_poly(d)?)),
            ("jones", jones_text(&jones(d)?)),
            ("conway", s(conway(d)?)),
            ("F", s(kauffman_f(d)?)),
        ],
        Policy::Regular => vec![("bracket", s(bracket_skein(d)?)), ("L", s(kauffman_l(d)?))],
        Policy::Framed => vec![
            ("bracket", s(bracket_skein(d)?)),
            ("writhe", d.writhe().map_err(Failure::invalid)?.to_string()),
        ],
    })
}

fn policy_name(p: Policy) -> &'static str {
    match p {
        Policy::Ambient => "ambient",
        Policy::Regular => "regular",
        Policy::Framed => "framed",
    }
}

fn scramble_verify(d: &Diagram, run: &ScrambleArgs, format: Format) -> Result<Outcome, Failure> {
    let before = policy_invariants(d, run.policy)?;
    let s = scramble(d, run.seed, run.steps, run.policy);
    let after = policy_invariants(&s.diagram, run.policy)?;
    let rows: Vec<(&str, &String, &String, bool)> =
        before.iter().zip(&after).map(|((k, a), (_, b))| (*k, a, b, a == b)).collect();
    let pass = rows.iter().all(|r| r.3);
    let mut out = String::new();
    if format == Format::Json {
        let checks: Vec<Value> =
            rows.iter().map(|(k, a, b, ok)| json!({ "invariant": k, "before": a, "after": b, "equal": ok })).collect();
        let mut v = json!({
            "result": if pass { "PASS" } else { "FAIL" },
            "policy": policy_name(run.policy),
            "seed": run.seed,
            "steps": run.steps,
            "crossings_before": d.crossing_count(),
            "crossings_after": s.diagram.crossing_count(),
            "checks": checks,
        });
        if !pass {
            v["log"] = json!(format_log(&s.log).lines().collect::<Vec<_>>());
        }
        out = pretty(&v);
    } else {
        let _ = writeln!(
            out,
            "{} policy={} seed={} steps={} crossings {} -> {}",
            if pass { "PASS" } else { "FAIL" },
            policy_name(run.policy),
            run.seed,
            run.steps,
            d.crossing_count(),
            s.diagram.crossing_count()
        );
        for (k, a, b, ok) in &rows {
            if *ok {
                let _ = writeln!(out, "  {k}: {a}");
            } else {
                let _ = writeln!(out, "  {k}: {a} != {b}");
            }
        }
        if !pass {
            out.push_str("move log:\n");
            out.push_str(&format_log(&s.log));
        }
    }
    Ok(Outcome { stdout: out, code: if pass { 0 } else { 3 } })
}

fn table_run(path: &PathBuf, format: Format) -> Result<Outcome, Failure> {
    let entries = load_table(path)?;
    let mut failed = 0;
    let mut out = String::new();
    let mut json_rows = Vec::new();
    for e in &entries {
        let t = Instant::now();
        let report = compute_report(&e.diagram)?;
        let bad = report.check(&e.expected).map_err(|err| Failure::parse(format!("{}: {err}", e.name)))?;
        // Timing goes to stderr so that standard output stays reproducible.
        eprintln!("{}: {:.3} ms", e.name, t.elapsed().as_secs_f64() * 1e3);
        if !bad.is_empty() {
            failed += 1;
        }
        let checked: BTreeMap<&str, bool> =
            e.expected.keys().map(|k| (k.as_str(), !bad.iter().any(|m| &m.key == k))).collect();
        if format == Format::Json {
            let mismatches: Vec<Value> =
                bad.iter().map(|m| json!({ "key": m.key, "expected": m.expected, "got": m.got })).collect();
            json_rows.push(json!({ "name": e.name, "pass": bad.is_empty(), "checked": checked, "mismatches": mismatches }));
        } else {
            let _ = writeln!(out, "{} {} ({} checked)", if bad.is_empty() { "PASS" } else { "FAIL" }, e.name, checked.len());
            for m in &bad {
                let _ = writeln!(out, "  {}: expected {}, got {}", m.key, m.expected, m.got);
            }
        }
    }
    if format == Format::Json {
        out = pretty(&json!({ "entries": json_rows, "total": entries.len(), "failed": failed }));
    } else {
        let _ = writeln!(out, "{} entries, {} failed", entries.len(), failed);
    }
    Ok(Outcome { stdout: out, code: if failed == 0 { 0 } else { 3 } })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(o) => {
            print!("{}", o.stdout);
            ExitCode::from(o.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
