//! The `ordcalc` command-line front end.
//!
//! [`run`] takes the full argument vector and returns the exit code together
//! with the text destined for stdout and stderr, so the binary is a thin
//! wrapper and tests can drive commands in-process.

use std::fmt::Write as _;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use ordtype::canon::{canonicalize, cf_equal, CanonError, CanonicalForm, CfEquality};
use ordtype::classify::{
    absorbs, classify_absorption, is_self_similar, is_square, spectrum_description, square_two_endpoints,
    AbsorptionClass, ClassifyError, Decomposition, SelfSimilarity, SquareVerdict,
};
use ordtype::oracle::{back_and_forth, back_and_forth_colored, cross_check, enumerate, Matching, OracleError};
use ordtype::term::{Ast, OrderTerm};
use ordtype::textio::{parse, print, to_dot, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "ordcalc", version, about = "Normalize, classify and sample countable order types")]
struct Cli {
    /// Print a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and echo the syntax tree.
    Parse { expr: String },
    /// Canonical form, printed as an expression.
    Norm { expr: String },
    /// Absorption case with the witnessing decomposition.
    Classify { expr: String },
    /// Whether A*X is isomorphic to X.
    Absorbs { a: String, x: String },
    /// Which orders A satisfy A*X ≅ X.
    Spectrum { expr: String },
    /// Whether X*X is isomorphic to X.
    Square { expr: String },
    /// Square test for orders with both endpoints, from the decomposition alone.
    Square2 { expr: String },
    /// Whether X is self-similar.
    Selfsim { expr: String },
    /// The first N points in enumeration order.
    Enum {
        expr: String,
        #[arg(short = 'n', default_value_t = 20)]
        n: usize,
    },
    /// Cross-check the symbolic profile against N sampled points.
    Check {
        expr: String,
        #[arg(short = 'n', default_value_t = 200)]
        n: usize,
    },
    /// Back-and-forth matching between X and Y.
    Bnf {
        x: String,
        y: String,
        #[arg(short = 'r', default_value_t = 8)]
        rounds: usize,
    },
    /// Graphviz rendering of the canonical form.
    Dot { expr: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Parse { .. } => "parse",
            Command::Norm { .. } => "norm",
            Command::Classify { .. } => "classify",
            Command::Absorbs { .. } => "absorbs",
            Command::Spectrum { .. } => "spectrum",
            Command::Square { .. } => "square",
            Command::Square2 { .. } => "square2",
            Command::Selfsim { .. } => "selfsim",
            Command::Enum { .. } => "enum",
            Command::Check { .. } => "check",
            Command::Bnf { .. } => "bnf",
            Command::Dot { .. } => "dot",
        }
    }

    fn inputs(&self) -> Vec<&str> {
        match self {
            Command::Absorbs { a, x } => vec![a, x],
            Command::Bnf { x, y, .. } => vec![x, y],
            Command::Parse { expr }
            | Command::Norm { expr }
            | Command::Classify { expr }
            | Command::Spectrum { expr }
            | Command::Square { expr }
            | Command::Square2 { expr }
            | Command::Selfsim { expr }
            | Command::Enum { expr, .. }
            | Command::Check { expr, .. }
            | Command::Dot { expr } => vec![expr],
        }
    }
}

/// A failed command: exit code, machine-readable kind and message.
#[derive(Debug)]
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
    span: Option<(usize, usize)>,
}

impl Failure {
    fn new(code: i32, kind: &'static str, message: impl Into<String>) -> Self {
        Failure { code, kind, message: message.into(), span: None }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        let kind = match e {
            ParseError::Syntax { .. } => "parse",
            ParseError::Invalid(_) => "validation",
        };
        Failure { code: EXIT_INPUT, kind, message: e.to_string(), span: e.span().map(|s| (s.start, s.end)) }
    }
}

impl From<CanonError> for Failure {
    fn from(e: CanonError) -> Self {
        let kind = match e {
            CanonError::Stuck(_) => "stuck",
            CanonError::LimitExceeded(_) => "limit_exceeded",
            CanonError::NotScattered | CanonError::Unsupported(_) => "unsupported",
            CanonError::InternalInvariantViolation(_) => "internal",
        };
        let code = if kind == "internal" { EXIT_INTERNAL } else { EXIT_UNSUPPORTED };
        Failure::new(code, kind, e.to_string())
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Internal(_) => Failure::new(EXIT_INTERNAL, "internal", e.to_string()),
            _ => Failure::new(EXIT_UNSUPPORTED, "unsupported", e.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Overflow => Failure::new(EXIT_UNSUPPORTED, "unsupported", e.to_string()),
            _ => Failure::new(EXIT_INTERNAL, "internal", e.to_string()),
        }
    }
}

/// A computed answer: its text rendering and its JSON `result` value.
struct Answer {
    text: String,
    json: Value,
    code: i32,
}

impl Answer {
    fn verdict(s: impl Into<String>) -> Self {
        let s = s.into();
        Answer { text: s.clone(), json: Value::String(s), code: EXIT_OK }
    }
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, S>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                (EXIT_INPUT, String::new(), rendered)
            } else {
                (EXIT_OK, rendered, String::new())
            };
        }
    };
    let command = cli.command.name();
    let input: Vec<Value> = cli.command.inputs().into_iter().map(|s| Value::String(s.to_string())).collect();
    match execute(&cli.command) {
        Ok(answer) => {
            let stdout = if cli.json {
                document(json!({ "command": command, "input": input, "result": answer.json }))
            } else {
                with_newline(answer.text)
            };
            (answer.code, stdout, String::new())
        }
        Err(f) => {
            let stderr = format!("error: {}\n", f.message);
            let stdout = if cli.json {
                let mut error = json!({ "kind": f.kind, "message": f.message });
                if let Some((start, end)) = f.span {
                    error["span"] = json!({ "start": start, "end": end });
                }
                document(json!({ "command": command, "input": input, "error": error }))
            } else {
                String::new()
            };
            (f.code, stdout, stderr)
        }
    }
}

fn document(v: Value) -> String {
    with_newline(serde_json::to_string_pretty(&v).expect("JSON values serialize"))
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn execute(command: &Command) -> Result<Answer, Failure> {
    match command {
        Command::Parse { expr } => {
            let t = parse(expr)?;
            let ast = Ast(&t).to_string();
            Ok(Answer { text: ast.clone(), json: json!({ "ast": ast, "expr": print(&t) }), code: EXIT_OK })
        }
        Command::Norm { expr } => {
            let cf = canonicalize(&parse(expr)?)?;
            Ok(Answer::verdict(cf.to_string()))
        }
        Command::Classify { expr } => classify(&parse(expr)?),
        Command::Absorbs { a, x } => {
            let (a, x) = (parse(a)?, parse(x)?);
            Ok(Answer::verdict(absorbs(&a, &x)?.to_string()))
        }
        Command::Spectrum { expr } => Ok(Answer::verdict(spectrum_description(&parse(expr)?)?.describe())),
        Command::Square { expr } => Ok(Answer::verdict(is_square(&parse(expr)?)?.to_string())),
        Command::Square2 { expr } => Ok(Answer::verdict(match square_two_endpoints(&parse(expr)?)? {
            SquareVerdict::Square(b) => b.to_string(),
            SquareVerdict::NotApplicable => "not applicable".to_string(),
        })),
        Command::Selfsim { expr } => selfsim(&parse(expr)?),
        Command::Enum { expr, n } => {
            let codes: Vec<String> = enumerate(&parse(expr)?, *n).iter().map(ToString::to_string).collect();
            Ok(Answer { text: codes.join("\n"), json: json!(codes), code: EXIT_OK })
        }
        Command::Check { expr, n } => {
            let report = cross_check(&parse(expr)?, *n);
            let code = if report.failed { EXIT_INTERNAL } else { EXIT_OK };
            Ok(Answer { text: report.to_string(), json: report.to_json(), code })
        }
        Command::Bnf { x, y, rounds } => bnf(&parse(x)?, &parse(y)?, *rounds),
        Command::Dot { expr } => {
            let cf = canonicalize(&parse(expr)?)?;
            Ok(Answer { text: to_dot(&cf), json: Value::String(to_dot(&cf)), code: EXIT_OK })
        }
    }
}

fn decomposition_json(d: &Decomposition) -> Value {
    json!({
        "L": d.left.to_string(),
        "blocks": d.blocks.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "R": d.right.to_string(),
    })
}

fn decomposition_text(d: &Decomposition) -> String {
    let blocks: Vec<String> = d.blocks.iter().map(ToString::to_string).collect();
    format!("L = {}\nblocks = {{{}}}\nR = {}", d.left, blocks.join(", "), d.right)
}

fn classify(t: &OrderTerm) -> Result<Answer, Failure> {
    Ok(match classify_absorption(t)? {
        AbsorptionClass::Case(n, d) => {
            let mut result = decomposition_json(&d);
            result["verdict"] = json!("case");
            result["case"] = json!(n);
            Answer { text: format!("case {n}\n{}", decomposition_text(&d)), json: result, code: EXIT_OK }
        }
        AbsorptionClass::SelfSimilarNotAbsorbing(reason) => Answer {
            text: format!("self-similar, not absorbing\n{reason}"),
            json: json!({ "verdict": "self_similar_not_absorbing", "reason": reason }),
            code: EXIT_OK,
        },
        AbsorptionClass::NotSelfSimilar(reason) => Answer {
            text: format!("not self-similar\n{reason}"),
            json: json!({ "verdict": "not_self_similar", "reason": reason }),
            code: EXIT_OK,
        },
    })
}

fn selfsim(t: &OrderTerm) -> Result<Answer, Failure> {
    Ok(match is_self_similar(t)? {
        SelfSimilarity::SelfSimilar(d) => {
            let mut result = decomposition_json(&d);
            result["verdict"] = json!("true");
            Answer { text: format!("true\n{}", decomposition_text(&d)), json: result, code: EXIT_OK }
        }
        SelfSimilarity::NotSelfSimilar(reason) => Answer {
            text: format!("false\n{reason}"),
            json: json!({ "verdict": "false", "reason": reason }),
            code: EXIT_OK,
        },
    })
}

/// A block correspondence between two shuffles when their block lists agree
/// up to order, matching blocks by canonical form.
fn block_bijection(x: &OrderTerm, y: &OrderTerm) -> Result<Option<Vec<usize>>, Failure> {
    let (OrderTerm::Shuffle(xb), OrderTerm::Shuffle(yb)) = (x, y) else {
        return Ok(None);
    };
    if xb.len() != yb.len() {
        return Ok(None);
    }
    let forms = |bs: &[OrderTerm]| bs.iter().map(canonicalize).collect::<Result<Vec<CanonicalForm>, _>>();
    let (xf, yf) = (forms(xb)?, forms(yb)?);
    let mut used = vec![false; yf.len()];
    let mut sigma = Vec::with_capacity(xf.len());
    for a in &xf {
        let Some(j) = (0..yf.len()).find(|&j| !used[j] && cf_equal(a, &yf[j]) == CfEquality::Equal) else {
            return Ok(None);
        };
        used[j] = true;
        sigma.push(j);
    }
    Ok(Some(sigma))
}

fn bnf(x: &OrderTerm, y: &OrderTerm, rounds: usize) -> Result<Answer, Failure> {
    let (xd, yd) = (x.desugar(), y.desugar());
    let sigma = block_bijection(&xd, &yd)?;
    let (mode, matching) = match &sigma {
        Some(s) => ("colored", back_and_forth_colored(&xd, &yd, s, rounds)?),
        None => ("plain", back_and_forth(&xd, &yd, rounds)?),
    };
    let mut text = format!("mode: {mode}\n");
    let mut result = json!({ "mode": mode, "rounds": rounds });
    if let Some(s) = &sigma {
        result["bijection"] = json!(s);
    }
    let code = match &matching {
        Matching::PartialIso(pairs) => {
            for (i, (a, b)) in pairs.iter().enumerate() {
                let _ = writeln!(text, "round {}: {a} <-> {b}", i + 1);
            }
            text.push_str("result: partial isomorphism");
            result["pairs"] = json!(pairs.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect::<Vec<_>>());
            result["verdict"] = json!("partial_isomorphism");
            EXIT_OK
        }
        Matching::Failure { round } => {
            let _ = write!(text, "result: no extension at round {round}");
            result["verdict"] = json!("failure");
            result["failure_round"] = json!(round);
            // Equal canonical forms denote isomorphic orders, so a failed
            // matching between them is a defect.
            let equal = match (canonicalize(x), canonicalize(y)) {
                (Ok(a), Ok(b)) => cf_equal(&a, &b) == CfEquality::Equal,
                _ => false,
            };
            if equal {
                EXIT_INTERNAL
            } else {
                EXIT_OK
            }
        }
    };
    Ok(Answer { text, json: result, code })
}
