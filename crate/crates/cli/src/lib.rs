//! Command-line front end for `gausscomp-core`.
//!
//! Exit codes: 0 success, 1 verification or property failure, 2 usage or
//! parse error, 3 discriminants whose ratio is not a rational square.

use std::io::{self, Read, Write};
use std::str::FromStr;

use clap::{Parser, Subcommand};
use gausscomp_core::bilinear::{invariant_clauses, verify_structure};
use gausscomp_core::forms::{represent_search, trigroup_check};
use gausscomp_core::{compose, Error, Form, Int};

pub mod demo;
pub mod identities;
pub mod lawfile;

use lawfile::LawFile;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NON_SQUARE: i32 = 3;

#[derive(Parser, Debug, Clone, PartialEq, Eq)]
#[command(
    name = "gausscomp",
    version,
    about = "Composition of binary quadratic forms"
)]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 1000,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Search radius for `represent` and `trigroup`.
    #[arg(long, global = true, default_value_t = 100,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub bound: u64,
    /// Largest value of the form used by `trigroup`.
    #[arg(long, global = true, default_value_t = 30)]
    pub value_bound: u64,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Print delta, delta', sigma, discriminant and theta.
    Invariants {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// Check a law file (`-` reads standard input).
    Verify { path: String },
    /// Construct a direct composition law.
    Compose {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        fp: String,
    },
    /// Seeded fuzzing of the determinant, Lagrange and mixing identities.
    Identities,
    /// Find (x,y) with f(x,y) = m.
    Represent {
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[arg(allow_hyphen_values = true)]
        m: String,
    },
    /// Check that products of three values are values (definite forms).
    Trigroup {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// Run the worked examples.
    Demo,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_)
        | Error::Parse { .. }
        | Error::ZeroForm
        | Error::ZeroDiscriminant
        | Error::NotPositiveDefinite => EXIT_USAGE,
        Error::NonSquareRatio { .. } => EXIT_NON_SQUARE,
        _ => EXIT_FAIL,
    }
}

fn parse_form(text: &str) -> Result<Form, Error> {
    Form::from_str(text)
}

fn parse_int(text: &str) -> Result<Int, Error> {
    let t = text.trim();
    let digits = t.strip_prefix('-').unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse {
            token: t.to_string(),
            reason: "not a decimal integer",
        });
    }
    Int::from_str(t).map_err(|_| Error::Parse {
        token: t.to_string(),
        reason: "not a decimal integer",
    })
}

/// Dispatches one command. Diagnostics go to `err`, and only when the exit
/// code is nonzero.
pub fn run(
    config: &CliConfig,
    input: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    match dispatch(config, input, out) {
        Ok(code) => code,
        Err(Failure::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(Failure::Schema(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

enum Failure {
    Core(Error),
    Schema(lawfile::SchemaError),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn dispatch(config: &CliConfig, input: &mut dyn Read, out: &mut dyn Write) -> Result<i32, Failure> {
    match &config.command {
        Command::Invariants { form } => {
            let inv = parse_form(form)?.invariants();
            writeln!(out, "delta={}", inv.delta)?;
            writeln!(out, "delta_prime={}", inv.delta_prime)?;
            writeln!(out, "sigma={}", inv.sigma)?;
            writeln!(out, "disc={}", inv.disc)?;
            writeln!(out, "theta={}", inv.theta)?;
            Ok(EXIT_OK)
        }
        Command::Verify { path } => {
            let text = if path == "-" {
                let mut s = String::new();
                input.read_to_string(&mut s)?;
                s
            } else {
                std::fs::read_to_string(path)
                    .map_err(|e| io::Error::new(e.kind(), format!("{path}: {e}")))?
            };
            let file = LawFile::from_json(&text).map_err(Failure::Schema)?;
            verify_command(&file, out)
        }
        Command::Compose { f, fp } => {
            let (f, fp) = (parse_form(f)?, parse_form(fp)?);
            let report = compose(&f, &fp)?;
            let v = report.result;
            let file = LawFile {
                f: v.f,
                fp: v.fprime,
                big_f: v.big_f,
                law: v.law,
            };
            writeln!(out, "{}", file.to_json())?;
            Ok(EXIT_OK)
        }
        Command::Identities => {
            let report = identities::run_identities(config.seed, config.trials);
            write!(out, "{report}")?;
            Ok(if report.failed() == 0 {
                EXIT_OK
            } else {
                EXIT_FAIL
            })
        }
        Command::Represent { form, m } => {
            let (f, m) = (parse_form(form)?, parse_int(m)?);
            match represent_search(&f, &m, config.bound) {
                Some(v) => writeln!(out, "{v}")?,
                None => writeln!(out, "none")?,
            }
            Ok(EXIT_OK)
        }
        Command::Trigroup { form } => {
            let f = parse_form(form)?;
            let failures = trigroup_check(&f, config.value_bound, config.bound)?;
            if failures.is_empty() {
                writeln!(out, "ok")?;
                return Ok(EXIT_OK);
            }
            for [a, b, c] in &failures {
                writeln!(out, "{a} {b} {c}")?;
            }
            Ok(EXIT_FAIL)
        }
        Command::Demo => {
            let mut text = String::new();
            let failed = demo::run_demo(&mut text);
            write!(out, "{text}")?;
            Ok(if failed == 0 { EXIT_OK } else { EXIT_FAIL })
        }
    }
}

fn verify_command(file: &LawFile, out: &mut dyn Write) -> Result<i32, Failure> {
    let v = verify_structure(&file.f, &file.fp, &file.big_f, &file.law)?;
    writeln!(out, "nu={}", v.nu)?;
    writeln!(out, "nu_prime={}", v.nuprime)?;
    writeln!(out, "Delta={}", v.delta_cap)?;
    writeln!(out, "direct={}", v.direct)?;
    let clauses = invariant_clauses(&v.f, &v.fprime, &v.big_f, &v.nu, &v.nuprime, &v.delta_cap);
    let mut all = true;
    for c in &clauses {
        writeln!(out, "{}: {}", if c.holds { "pass" } else { "fail" }, c.name)?;
        all &= c.holds;
    }
    Ok(if all { EXIT_OK } else { EXIT_FAIL })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut argv = vec!["gausscomp"];
        argv.extend_from_slice(args);
        let config = CliConfig::try_parse_from(argv).unwrap();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(&config, &mut stdin.as_bytes(), &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn defaults() {
        let c = CliConfig::try_parse_from(["gausscomp", "demo"]).unwrap();
        assert_eq!(
            (c.seed, c.trials, c.bound, c.value_bound),
            (0, 1000, 100, 30)
        );
        assert!(CliConfig::try_parse_from(["gausscomp", "identities", "--trials", "0"]).is_err());
    }

    #[test]
    fn invariants_output() {
        let (code, out, err) = run_args(&["invariants", "(2,2,3)"], "");
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "delta=1\ndelta_prime=2\nsigma=2\ndisc=-20\ntheta=-20\n"
        );
        assert!(err.is_empty());
    }

    #[test]
    fn hyphenated_literals() {
        let (code, out, _) = run_args(&["invariants", " -1 , 0 , 5 "], "");
        assert_eq!(code, 0);
        assert!(out.contains("disc=20"));
        let (code, out, _) = run_args(&["represent", "(1,0,-2)", "-1"], "");
        assert_eq!((code, out.as_str()), (0, "(1,1)\n"));
    }

    #[test]
    fn parse_errors_exit_2() {
        let (code, _, err) = run_args(&["invariants", "(0,0,0)"], "");
        assert_eq!(code, 2);
        assert!(err.contains("zero form"));
        let (code, _, err) = run_args(&["invariants", "(1,x,3)"], "");
        assert_eq!(code, 2);
        assert!(err.contains("`x`") || err.contains("x"));
        assert_eq!(run_args(&["represent", "(1,0,1)", "2.5"], "").0, 2);
    }

    #[test]
    fn verify_reads_stdin() {
        let law = r#"{"f":[2,2,3],"fp":[2,2,3],"F":[1,0,5],"e":[[2,0],[1,1],[1,1],[-2,1]]}"#;
        let (code, out, err) = run_args(&["verify", "-"], law);
        assert_eq!(code, 0, "{err}");
        assert!(out.starts_with("nu=1\nnu_prime=1\nDelta=-5\ndirect=true\n"));
        assert_eq!(out.lines().filter(|l| l.starts_with("pass: ")).count(), 10);
        let (code, _, err) = run_args(&["verify", "-"], &law.replace("[1,0,5]", "[1,0,6]"));
        assert_eq!(code, 1);
        assert!(!err.is_empty());
    }

    #[test]
    fn compose_output_and_codes() {
        let (code, out, _) = run_args(&["compose", "(2,2,3)", "(2,2,3)"], "");
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "{\"f\":[2,2,3],\"fp\":[2,2,3],\"F\":[1,0,5],\"e\":[[2,0],[1,1],[1,1],[-2,1]]}\n"
        );
        assert_eq!(run_args(&["compose", "(1,0,1)", "(1,0,5)"], "").0, 3);
        assert_eq!(run_args(&["compose", "(1,2,1)", "(1,0,1)"], "").0, 2);
    }

    #[test]
    fn trigroup_and_represent() {
        assert_eq!(
            run_args(&["trigroup", "(1,0,1)", "--value-bound", "10"], ""),
            (0, "ok\n".into(), String::new())
        );
        assert_eq!(run_args(&["trigroup", "(1,0,-1)"], "").0, 2);
        assert_eq!(run_args(&["represent", "(1,0,1)", "3"], "").1, "none\n");
    }
}
