mod output;
mod parse;

use std::io::{self, BufRead, Read, Write};
use std::process::ExitCode;

use affine_orbit::oracle::{bfs_orbit, c_by_definition, n1_classify, verify_witness, SearchBudget};
use affine_orbit::orbit::{count_orbits, invariant_of, minimal_space, witness, GroupInvariant};
use affine_orbit::space::{canonical_space, SpaceInvariants};
use affine_orbit::{AffineWitness, Int, RatAffineSpace, Rational, SymBasis, SymPoint};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use output::{
    difference, invariant_json, point_json, space_json, witness_json, witness_parts,
};
use parse::{parse_basis, parse_equation, parse_point, parse_rational, ParseError};

const EXIT_NOT_EQUIVALENT: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_SEMANTIC: u8 = 3;

/// Classify points of R^n under integer affine maps x -> Ux + t.
#[derive(Parser, Debug)]
#[command(name = "affine-orbit", version)]
struct Cli {
    /// Print a human-readable summary on stderr.
    #[arg(short, long, global = true)]
    verbose: bool,

    /// Accepted for scripts; output is always JSON.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Ambient {
    /// Ambient dimension.
    #[arg(short = 'n', long = "n")]
    n: usize,

    /// Declare a symbol, optionally with a numeric value for a sanity check
    /// (repeatable, e.g. --sym r2=1.41421356).
    #[arg(long = "sym", value_name = "NAME[=VALUE]")]
    sym: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print (G_x, c) and the minimal rational space of a point.
    Invariants {
        #[command(flatten)]
        ambient: Ambient,
        #[arg(allow_hyphen_values = true)]
        point: String,
    },
    /// Decide whether two points share an orbit and print a witness.
    Equiv {
        #[command(flatten)]
        ambient: Ambient,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Check a witness {"U": [[...]], "t": [...]} against two points.
    Verify {
        #[command(flatten)]
        ambient: Ambient,
        /// Path to a witness JSON file, `-` for stdin, or inline JSON.
        #[arg(long)]
        witness: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// The canonical space with invariants (e, d, c) and a point realising it.
    Canon {
        #[arg(long)]
        e: usize,
        #[arg(long)]
        d: u64,
        #[arg(long, default_value_t = 1)]
        c: u64,
        #[arg(short = 'n', long = "n")]
        n: usize,
    },
    /// Count the orbits of points whose group has rational part (1/d)Z and
    /// the given rank (default n).
    Count {
        #[arg(long)]
        d: u64,
        #[arg(short = 'n', long = "n")]
        n: usize,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Invariants (e, d, c) of the space cut out by equations in y1..yn.
    Space {
        #[arg(short = 'n', long = "n")]
        n: usize,
        #[arg(required = true, allow_hyphen_values = true)]
        equations: Vec<String>,
    },
    /// Brute-force checks used for debugging.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Read one command per line from stdin and print one JSON result per line.
    Batch,
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Bounded breadth-first search of the orbit of a rational point.
    Bfs {
        #[arg(short = 'n', long = "n")]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 6)]
        budget_depth: usize,
        #[arg(long, default_value = "3")]
        budget_bound: String,
        #[arg(long, default_value_t = 200_000)]
        node_cap: usize,
        /// Report whether this point was reached.
        #[arg(long, allow_hyphen_values = true)]
        target: Option<String>,
    },
    /// c_F of a hyperplane by direct search over small denominators.
    CDef {
        #[arg(short = 'n', long = "n")]
        n: usize,
        #[arg(long, default_value_t = 64)]
        cap: u64,
        #[arg(required = true, allow_hyphen_values = true)]
        equations: Vec<String>,
    },
    /// Closed-form (d, c) of a rational number.
    N1 {
        #[arg(allow_hyphen_values = true)]
        value: String,
    },
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: e.0,
        }
    }
}

impl From<affine_orbit::Error> for Failure {
    fn from(e: affine_orbit::Error) -> Self {
        Failure {
            code: EXIT_SEMANTIC,
            message: e.to_string(),
        }
    }
}

struct Report {
    doc: Value,
    code: u8,
    summary: String,
}

impl Report {
    fn ok(doc: Value, summary: String) -> Self {
        Report {
            doc,
            code: 0,
            summary,
        }
    }
}

type Outcome = Result<Report, Failure>;

fn point(ambient: &Ambient, text: &str) -> Result<SymPoint, Failure> {
    let basis = parse_basis(&ambient.sym)?;
    Ok(parse_point(text, ambient.n, &basis)?)
}

fn rational_point(n: usize, text: &str) -> Result<affine_orbit::RatPoint, Failure> {
    parse_point(text, n, &SymBasis::rational())?
        .to_rational()
        .ok_or_else(|| Failure::from(ParseError("expected a rational point".into())))
}

fn space_from(n: usize, equations: &[String]) -> Result<RatAffineSpace, Failure> {
    let eqs = equations
        .iter()
        .map(|e| parse_equation(e, n))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RatAffineSpace::from_equations(n, &eqs)?)
}

/// Basis `a1, …, ak` used for representatives of higher-rank groups.
fn generic_basis(k: usize) -> Result<SymBasis, Failure> {
    Ok(SymBasis::new((1..=k).map(|i| format!("a{i}")))?)
}

fn cmd_invariants(ambient: &Ambient, text: &str) -> Outcome {
    let x = point(ambient, text)?;
    let inv = invariant_of(&x)?;
    let fx = minimal_space(&x);
    let summary = format!(
        "x = {x}: rank(G_x) = {}, dim(F_x) = {}, d = {}, c = {}, F_x = {fx}",
        inv.rank(),
        fx.dim(),
        inv.d(),
        inv.c
    );
    Ok(Report::ok(invariant_json(&x, &inv, &fx), summary))
}

fn cmd_equiv(ambient: &Ambient, xs: &str, ys: &str) -> Outcome {
    let x = point(ambient, xs)?;
    let y = point(ambient, ys)?;
    let ix = invariant_of(&x)?;
    let iy = invariant_of(&y)?;
    if ix != iy {
        let reason = difference(&ix, &iy);
        return Ok(Report {
            doc: json!({ "equivalent": false, "reason": reason }),
            code: EXIT_NOT_EQUIVALENT,
            summary: format!("{x} and {y} are in different orbits ({reason})"),
        });
    }
    let g = witness(&x, &y)?.ok_or_else(|| Failure {
        code: EXIT_SEMANTIC,
        message: "equal invariants but no witness was constructed".into(),
    })?;
    Ok(Report::ok(
        json!({ "equivalent": true, "witness": witness_json(&g) }),
        format!("{x} and {y} are in the same orbit: {g}"),
    ))
}

fn read_witness(source: &str) -> Result<Value, Failure> {
    let text = if source.trim_start().starts_with('{') {
        source.to_string()
    } else if source == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| ParseError(format!("reading stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(source).map_err(|e| ParseError(format!("{source}: {e}")))?
    };
    Ok(serde_json::from_str(&text).map_err(|e| ParseError(format!("witness JSON: {e}")))?)
}

fn cmd_verify(ambient: &Ambient, source: &str, xs: &str, ys: &str) -> Outcome {
    let (u, t) = witness_parts(&read_witness(source)?)?;
    let x = point(ambient, xs)?;
    let y = point(ambient, ys)?;
    if t.len() != ambient.n {
        return Err(affine_orbit::Error::DimensionMismatch {
            expected: ambient.n,
            found: t.len(),
        }
        .into());
    }
    let valid = match AffineWitness::new(u, t) {
        Ok(g) => verify_witness(&g, &x, &y),
        Err(affine_orbit::Error::NotUnimodular) => false,
        Err(e) => return Err(e.into()),
    };
    Ok(Report {
        doc: json!({ "valid": valid }),
        code: if valid { 0 } else { EXIT_NOT_EQUIVALENT },
        summary: format!(
            "witness {} {x} to {y}",
            if valid { "maps" } else { "does not map" }
        ),
    })
}

fn cmd_canon(e: usize, d: u64, c: u64, n: usize) -> Outcome {
    let inv = SpaceInvariants::new(e, d, c);
    let (f, p) = canonical_space(&inv, n)?;
    let basis = generic_basis(e)?;
    let width = e + 1;
    let mut coords: Vec<Vec<Rational>> = (0..e)
        .map(|i| {
            let mut v = vec![Rational::from_integer(Int::from(0)); width];
            v[i + 1] = Rational::from_integer(Int::from(1));
            v
        })
        .collect();
    let mut tail = vec![Rational::from_integer(Int::from(0)); width];
    tail[0] = Rational::new(p.clone(), Int::from(d));
    coords.resize(n, tail);
    let rep = SymPoint::new(basis, coords)?;
    let got = invariant_of(&rep)?;
    let fx = minimal_space(&rep);
    if fx != f || got.c != inv.c {
        return Err(affine_orbit::Error::InternalVerificationFailure(
            "representative does not realise the canonical space".into(),
        )
        .into());
    }
    let mut doc = space_json(&f);
    doc["p"] = Value::from(p.to_string());
    doc["representative"] = json!({
        "basis": output::basis_json(&rep),
        "point": point_json(&rep),
    });
    Ok(Report::ok(doc, format!("{inv} in R^{n}: {f}, p = {p}, x = {rep}")))
}

fn cmd_count(d: u64, n: usize, rank: Option<usize>) -> Outcome {
    let rank = rank.unwrap_or(n);
    if rank == 0 || d == 0 {
        return Err(ParseError("rank and d must be positive".into()).into());
    }
    let basis = generic_basis(rank - 1)?;
    let width = rank;
    let mut gens = Vec::with_capacity(rank);
    let mut first = vec![Rational::from_integer(Int::from(0)); width];
    first[0] = Rational::new(Int::from(1), Int::from(d));
    gens.push(first);
    for i in 1..rank {
        let mut v = vec![Rational::from_integer(Int::from(0)); width];
        v[i] = Rational::from_integer(Int::from(1));
        gens.push(v);
    }
    let g = GroupInvariant::generated_by(basis, &gens)?;
    let (count, reps) = count_orbits(&g, n)?;
    let points: Vec<Value> = reps.iter().map(point_json).collect();
    let basis_names = reps.first().map(output::basis_json);
    let doc = json!({
        "count": count,
        "d": d.to_string(),
        "n": n,
        "rank": rank,
        "basis": basis_names,
        "representatives": points,
    });
    let shown: Vec<String> = reps.iter().map(ToString::to_string).collect();
    Ok(Report::ok(
        doc,
        format!("{count} orbit(s) for rank {rank}, d = {d} in R^{n}: {}", shown.join(" ")),
    ))
}

fn cmd_space(n: usize, equations: &[String]) -> Outcome {
    let f = space_from(n, equations)?;
    let inv = f.invariants();
    Ok(Report::ok(space_json(&f), format!("{f}: {inv}")))
}

fn cmd_oracle(cmd: &OracleCommand) -> Outcome {
    match cmd {
        OracleCommand::Bfs {
            n,
            point,
            budget_depth,
            budget_bound,
            node_cap,
            target,
        } => {
            let x = rational_point(*n, point)?;
            let budget = SearchBudget::new(*budget_depth, parse_rational(budget_bound)?, *node_cap)?;
            let sample = bfs_orbit(&x, &budget)?;
            let mut doc = json!({
                "complete": sample.complete,
                "count": sample.points.len(),
                "points": sample.points.iter().map(ToString::to_string).collect::<Vec<_>>(),
            });
            let mut summary = format!(
                "{} points reached from {x}{}",
                sample.points.len(),
                if sample.complete { "" } else { " (node cap hit)" }
            );
            if let Some(t) = target {
                let y = rational_point(*n, t)?;
                let reached = sample.points.contains(&y);
                doc["reached"] = Value::from(reached);
                summary.push_str(&format!("; {y} {}", if reached { "reached" } else { "not reached" }));
            }
            Ok(Report::ok(doc, summary))
        }
        OracleCommand::CDef { n, cap, equations } => {
            let f = space_from(*n, equations)?;
            let c = c_by_definition(&f, *cap)?;
            let doc = json!({
                "c": c.as_ref().map(ToString::to_string),
                "c_of": f.c().to_string(),
            });
            let summary = match &c {
                Some(c) => format!("{f}: c by definition = {c}, coset method = {}", f.c()),
                None => format!("{f}: no completion with denominator <= {cap}"),
            };
            Ok(Report::ok(doc, summary))
        }
        OracleCommand::N1 { value } => {
            let x = parse_rational(value)?;
            let (d, c) = n1_classify(&x);
            Ok(Report::ok(
                json!({ "d": d.to_string(), "c": c.to_string() }),
                format!("{}: d = {d}, c = {c}", affine_orbit::arith::fmt_rational(&x)),
            ))
        }
    }
}

fn run(cmd: &Command) -> Outcome {
    match cmd {
        Command::Invariants { ambient, point } => cmd_invariants(ambient, point),
        Command::Equiv { ambient, x, y } => cmd_equiv(ambient, x, y),
        Command::Verify {
            ambient,
            witness,
            x,
            y,
        } => cmd_verify(ambient, witness, x, y),
        Command::Canon { e, d, c, n } => cmd_canon(*e, *d, *c, *n),
        Command::Count { d, n, rank } => cmd_count(*d, *n, *rank),
        Command::Space { n, equations } => cmd_space(*n, equations),
        Command::Oracle(o) => cmd_oracle(o),
        Command::Batch => Err(ParseError("batch mode cannot be nested".into()).into()),
    }
}

fn error_doc(f: &Failure) -> Value {
    json!({ "error": f.message, "exit": f.code })
}

/// One query per line; blank lines and lines starting with `#` are skipped.
fn batch(verbose: bool) -> ExitCode {
    let stdin = io::stdin();
    let mut worst = 0;
    for line in stdin.lock().lines() {
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                eprintln!("error: reading stdin: {e}");
                return ExitCode::from(EXIT_PARSE);
            }
        };
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let result = match shlex::split(trimmed) {
            None => Err(Failure::from(ParseError(format!("unbalanced quotes in {trimmed:?}")))),
            Some(words) => {
                let argv = std::iter::once("affine-orbit".to_string()).chain(words);
                match Cli::try_parse_from(argv) {
                    Ok(cli) => run(&cli.command),
                    Err(e) => Err(Failure::from(ParseError(
                        e.to_string().lines().next().unwrap_or_default().to_string(),
                    ))),
                }
            }
        };
        let doc = match result {
            Ok(report) => {
                if verbose {
                    eprintln!("{}", report.summary);
                }
                report.doc
            }
            Err(f) => {
                worst = worst.max(f.code);
                error_doc(&f)
            }
        };
        emit(&doc.to_string());
    }
    ExitCode::from(worst)
}

/// Writes one line to stdout. A closed pipe (e.g. `| head`) is not an error.
fn emit(line: &str) {
    let mut out = io::stdout().lock();
    let _ = writeln!(out, "{line}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.verbose { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();

    if let Command::Batch = cli.command {
        return batch(cli.verbose);
    }
    match run(&cli.command) {
        Ok(report) => {
            emit(&serde_json::to_string_pretty(&report.doc).expect("JSON values serialize"));
            if cli.verbose {
                eprintln!("{}", report.summary);
            }
            ExitCode::from(report.code)
        }
        Err(f) => {
            emit(&serde_json::to_string_pretty(&error_doc(&f)).expect("JSON values serialize"));
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
