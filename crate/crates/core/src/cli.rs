//! The `pel` command line: JSON in, JSON out.
//!
//! Exit codes: 0 on success, 1 on a negative mathematical verdict, 2 on unreadable or
//! ill-formed input.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::admit::{decide, MorphismSpec};
use crate::fixtures::run_fixtures;
use crate::hodge::{hodge_type, HodgeCochar};
use crate::isofun::run_law_suite;
use crate::pelcheck::{factorize, shimura_report, validate, GroupFactorization, PelDatum, PelError};
use crate::repcalc::{decompose, irr_char, parse_tensor, pel_standard, RootDatum, Weight};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug, Clone)]
#[command(name = "pel", version, about = "Exact checks for PEL-data and their Shimura groups")]
pub struct CommandConfig {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Check the axioms of a PEL-datum.
    Validate { datum: PathBuf },
    /// Factor the real group of a PEL-datum.
    Classify { datum: PathBuf },
    /// Hodge type of a representation of the group of a datum.
    Hodge {
        #[arg(long)]
        datum: PathBuf,
        /// `std`, `dual`, or `{"highest":[...]}`.
        #[arg(long, default_value = "std")]
        rep: String,
    },
    /// Character calculus.
    Rep {
        #[command(subcommand)]
        op: RepCommand,
    },
    /// Decide admissibility of a morphism.
    Admissible {
        #[arg(long)]
        morphism: PathBuf,
    },
    /// Lattice/isogeny law suite.
    Isofun {
        #[command(subcommand)]
        op: IsofunCommand,
    },
    /// Run the built-in worked examples.
    Fixtures {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct RootDatumArgs {
    /// Simple factors, e.g. `C2` or `C2xA1`.
    #[arg(long = "type")]
    pub ty: String,
    #[arg(long, default_value_t = 0)]
    pub central: usize,
}

#[derive(Subcommand, Debug, Clone)]
pub enum RepCommand {
    /// Decompose a tensor product of characters into irreducibles.
    Decompose {
        #[command(flatten)]
        root: RootDatumArgs,
        /// Comma-separated tokens: `std`, `dual`, `triv`, `[highest weight]`.
        #[arg(long)]
        tensor: String,
    },
    /// Weight multiplicities of one irreducible.
    Char {
        #[command(flatten)]
        root: RootDatumArgs,
        /// Highest weight as a JSON array.
        #[arg(long)]
        highest: String,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum IsofunCommand {
    Check {
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// What a command produced: the exit code, the report, and any diagnostic for stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
    pub diagnostic: Option<String>,
}

impl Outcome {
    fn json(code: i32, v: &impl Serialize) -> Self {
        let report = pretty_json(v);
        Outcome { code, report, diagnostic: None }
    }

    fn input_error(v: Value) -> Self {
        Outcome { code: EXIT_INPUT, report: String::new(), diagnostic: Some(v.to_string()) }
    }
}

/// Indented JSON, except that arrays of scalars stay on one line.
pub fn pretty_json(v: &impl Serialize) -> String {
    fn scalar(v: &Value) -> bool {
        !matches!(v, Value::Array(_) | Value::Object(_))
    }
    fn go(v: &Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent + 1);
        match v {
            Value::Array(xs) if xs.is_empty() || xs.iter().all(scalar) => {
                let items: Vec<String> = xs.iter().map(|x| serde_json::to_string(x).expect("value")).collect();
                out.push_str(&format!("[{}]", items.join(", ")));
            }
            Value::Array(xs) => {
                out.push_str("[\n");
                for (i, x) in xs.iter().enumerate() {
                    out.push_str(&pad);
                    go(x, indent + 1, out);
                    out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
                }
                out.push_str(&"  ".repeat(indent));
                out.push(']');
            }
            Value::Object(m) if !m.is_empty() => {
                out.push_str("{\n");
                for (i, (k, x)) in m.iter().enumerate() {
                    out.push_str(&pad);
                    out.push_str(&serde_json::to_string(k).expect("key"));
                    out.push_str(": ");
                    go(x, indent + 1, out);
                    out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
                }
                out.push_str(&"  ".repeat(indent));
                out.push('}');
            }
            _ => out.push_str(&serde_json::to_string(v).expect("value")),
        }
    }
    let mut out = String::new();
    go(&serde_json::to_value(v).expect("reports serialize"), 0, &mut out);
    out + "\n"
}

fn load<T: DeserializeOwned>(path: &Path) -> Result<T, Outcome> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Outcome::input_error(json!({"error": "io", "file": path.display().to_string(), "message": e.to_string()}))
    })?;
    parse_json(&text, &path.display().to_string())
}

fn parse_json<T: DeserializeOwned>(text: &str, source: &str) -> Result<T, Outcome> {
    serde_json::from_str(text).map_err(|e| {
        Outcome::input_error(json!({
            "error": "parse",
            "file": source,
            "line": e.line(),
            "column": e.column(),
            "message": e.to_string(),
        }))
    })
}

fn usage(message: impl std::fmt::Display) -> Outcome {
    Outcome::input_error(json!({"error": "input", "message": message.to_string()}))
}

fn pel_failure(e: PelError) -> Outcome {
    match e {
        PelError::Invalid(d) => Outcome::json(EXIT_NEGATIVE, &json!({"valid": false, "diagnostic": d})),
        e => usage(e),
    }
}

/// The JSON body of `pel classify`.
pub fn classify_report(f: &GroupFactorization) -> Value {
    json!({
        "factors": f.factors,
        "labels": f.labels(),
        "symplectic": f.symplectic,
        "unitary": f.unitary,
        "orthogonal": f.orthogonal,
        "shimura": shimura_report(f),
    })
}

#[derive(Deserialize)]
struct RepArg {
    highest: Weight,
}

fn run_inner(cmd: &Command) -> Result<Outcome, Outcome> {
    match cmd {
        Command::Validate { datum } => {
            let d: PelDatum = load(datum)?;
            let r = validate(&d);
            Ok(Outcome::json(if r.valid { EXIT_OK } else { EXIT_NEGATIVE }, &r))
        }
        Command::Classify { datum } => {
            let d: PelDatum = load(datum)?;
            let f = factorize(&d).map_err(pel_failure)?;
            Ok(Outcome::json(EXIT_OK, &classify_report(&f)))
        }
        Command::Hodge { datum, rep } => {
            let d: PelDatum = load(datum)?;
            let f = factorize(&d).map_err(pel_failure)?;
            let (rd, std) = pel_standard(&f).map_err(usage)?;
            let hc = HodgeCochar::for_factorization(&rd, &f).map_err(usage)?;
            let x = match rep.trim() {
                "std" => std,
                "dual" => std.dual(),
                t => {
                    let arg: RepArg = parse_json(t, "--rep")?;
                    irr_char(&rd, &arg.highest).map_err(usage)?
                }
            };
            let bidegrees: Vec<[i64; 2]> = hodge_type(&x, &hc).map_err(usage)?.into_iter().map(|(p, q)| [p, q]).collect();
            Ok(Outcome::json(EXIT_OK, &bidegrees))
        }
        Command::Rep { op: RepCommand::Decompose { root, tensor } } => {
            let rd = RootDatum::parse(&root.ty, root.central).map_err(usage)?;
            let x = parse_tensor(&rd, tensor).map_err(usage)?;
            let parts = decompose(&rd, &x, false).map_err(usage)?;
            let mut constituents = vec![];
            for c in &parts {
                let dim = irr_char(&rd, &c.highest).map_err(usage)?.dim();
                constituents.push(json!({"highest": c.highest, "mult": c.mult, "dim": dim}));
            }
            let report = json!({"root_datum": rd.to_string(), "dim": x.dim(), "constituents": constituents});
            Ok(Outcome::json(EXIT_OK, &report))
        }
        Command::Rep { op: RepCommand::Char { root, highest } } => {
            let rd = RootDatum::parse(&root.ty, root.central).map_err(usage)?;
            let w: Weight = parse_json(highest, "--highest")?;
            let x = irr_char(&rd, &w).map_err(usage)?;
            Ok(Outcome::json(EXIT_OK, &json!({"root_datum": rd.to_string(), "dim": x.dim(), "character": x})))
        }
        Command::Admissible { morphism } => {
            let spec: MorphismSpec = load(morphism)?;
            let m = spec.resolve().map_err(usage)?;
            let v = decide(&m).map_err(usage)?;
            Ok(Outcome::json(if v.admissible { EXIT_OK } else { EXIT_NEGATIVE }, &v))
        }
        Command::Isofun { op: IsofunCommand::Check { trials, seed } } => {
            let r = run_law_suite(*trials, *seed);
            Ok(Outcome::json(if r.passed { EXIT_OK } else { EXIT_NEGATIVE }, &r))
        }
        Command::Fixtures { seed, json } => {
            let r = run_fixtures(*seed);
            let code = if r.passed { EXIT_OK } else { EXIT_NEGATIVE };
            if *json {
                Ok(Outcome::json(code, &r))
            } else {
                Ok(Outcome { code, report: r.render_table(), diagnostic: None })
            }
        }
    }
}

/// Runs one command without touching stdout or the filesystem (apart from reading inputs).
pub fn run(cfg: &CommandConfig) -> Outcome {
    run_inner(&cfg.command).unwrap_or_else(|o| o)
}

/// Parses `args`, runs the command, writes the report, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match CommandConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let out = run(&cfg);
    if let Some(d) = &out.diagnostic {
        eprintln!("{d}");
    }
    match &cfg.output {
        Some(path) if !out.report.is_empty() => {
            if let Err(e) = std::fs::write(path, &out.report) {
                eprintln!("{}", json!({"error": "io", "file": path.display().to_string(), "message": e.to_string()}));
                return EXIT_INPUT;
            }
        }
        _ => print!("{}", out.report),
    }
    out.code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> CommandConfig {
        CommandConfig::try_parse_from(std::iter::once("pel").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn parse_error_has_position() {
        let out = run(&cfg(&["validate", "/dev/null"]));
        assert_eq!(out.code, EXIT_INPUT);
        let d: Value = serde_json::from_str(out.diagnostic.as_deref().unwrap()).unwrap();
        assert_eq!(d["error"], "parse");
        assert!(d["line"].is_u64() && d["column"].is_u64());
    }

    #[test]
    fn rep_decompose() {
        let out = run(&cfg(&["rep", "decompose", "--type", "C2", "--tensor", "std,std"]));
        assert_eq!(out.code, EXIT_OK);
        let v: Value = serde_json::from_str(&out.report).unwrap();
        let dims: Vec<i64> = v["constituents"].as_array().unwrap().iter().map(|c| c["dim"].as_i64().unwrap()).collect();
        assert_eq!(dims, vec![10, 5, 1]);
    }

    #[test]
    fn bad_flags_are_input_errors() {
        assert_eq!(main_with_args(["pel", "rep", "decompose", "--type", "C2"]), EXIT_INPUT);
        let out = run(&cfg(&["rep", "decompose", "--type", "E8", "--tensor", "std"]));
        assert_eq!(out.code, EXIT_INPUT);
        let out = run(&cfg(&["rep", "char", "--type", "C2", "--highest", "[1,"]));
        assert_eq!(out.code, EXIT_INPUT);
    }
}
