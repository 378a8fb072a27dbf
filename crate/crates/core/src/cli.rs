//! Command-line front end.
//!
//! Exit codes: 0 success (irreducible verdict, or a completed query), 1 input
//! or usage error, 2 inconclusive verdict, 3 oracle budget exhausted, 4 the
//! Newton polytope of a product differs from the Minkowski sum of its
//! factors' polytopes.

use std::io::{Read, Write};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::criteria::{decide, Verdict};
use crate::decomp::{brute_force_decomposable, DecompError, OracleBudget};
use crate::geometry::{minkowski_sum, newton_polytope, IntegralPolytope};
use crate::poly::{find_splits, parse, Polynomial};
use crate::random::{random_polynomial, seeded, PolyShape};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "polyirr",
    version,
    about = "Irreducibility certificates from Newton polytopes"
)]
struct Cli {
    /// Variable order, comma separated (default: order of first appearance)
    #[arg(long, global = true, value_delimiter = ',')]
    vars: Option<Vec<String>>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Oracle limit on the number of varying coordinates
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    oracle_max_dim: u32,
    /// Oracle limit on lattice points
    #[arg(long, global = true, default_value_t = 14, value_parser = clap::value_parser!(u32).range(1..))]
    oracle_max_points: u32,
    /// Oracle wall-clock limit in milliseconds
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    time_budget_ms: Option<u64>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Read the input from a file instead of the command line
    #[arg(long, global = true)]
    file: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run all criteria and print a certificate
    Verdict { expr: Option<String> },
    /// Print the Newton polytope
    Polytope { expr: Option<String> },
    /// Search for a Minkowski decomposition of a polytope given as JSON
    Oracle,
    /// Compare N(p*q) with N(p) + N(q)
    CheckOstrowski {
        exprs: Vec<String>,
        /// Check this many seeded random pairs instead
        #[arg(long)]
        random: Option<usize>,
    },
    /// List the splits into parts in disjoint variables
    Splits { expr: Option<String> },
}

struct Ctx<'a> {
    cli: &'a Cli,
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

type CmdResult = Result<i32, String>;

impl Ctx<'_> {
    fn budget(&self) -> OracleBudget {
        OracleBudget {
            max_dim: self.cli.oracle_max_dim as usize,
            max_points: self.cli.oracle_max_points as usize,
            time_budget: self.cli.time_budget_ms.map(Duration::from_millis),
            ..OracleBudget::default()
        }
    }

    fn expression(&self, inline: &Option<String>) -> Result<String, String> {
        match (inline, &self.cli.file) {
            (Some(e), None) => Ok(e.clone()),
            (None, Some(path)) => std::fs::read_to_string(path)
                .map(|s| s.trim().to_string())
                .map_err(|e| format!("cannot read {}: {e}", path.display())),
            (Some(_), Some(_)) => {
                Err("give the expression either inline or with --file, not both".into())
            }
            (None, None) => Err("missing expression".into()),
        }
    }

    fn polynomial(&self, inline: &Option<String>) -> Result<Polynomial, String> {
        let text = self.expression(inline)?;
        parse(&text, self.cli.vars.as_deref()).map_err(|e| format!("parse error: {e}"))
    }

    fn emit(&mut self, text: impl std::fmt::Display) -> Result<(), String> {
        writeln!(self.out, "{text}").map_err(|e| e.to_string())
    }

    fn verdict(&mut self, expr: &Option<String>) -> CmdResult {
        let p = self.polynomial(expr)?;
        let cert = decide(&p, &self.budget()).map_err(|e| e.to_string())?;
        match self.cli.format {
            Format::Json => self.emit(cert.to_json())?,
            Format::Text => write!(self.out, "{cert}").map_err(|e| e.to_string())?,
        }
        Ok(match cert.verdict {
            Verdict::Irreducible => EXIT_OK,
            Verdict::Inconclusive => EXIT_INCONCLUSIVE,
        })
    }

    fn polytope(&mut self, expr: &Option<String>) -> CmdResult {
        let p = self.polynomial(expr)?;
        let pt = newton_polytope(&p).map_err(|e| e.to_string())?;
        match self.cli.format {
            Format::Json => self.emit(serde_json::to_string(&pt).expect("serializes"))?,
            Format::Text => self.emit(&pt)?,
        }
        Ok(EXIT_OK)
    }

    fn oracle(&mut self) -> CmdResult {
        let mut text = String::new();
        match &self.cli.file {
            Some(path) => {
                text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read {}: {e}", path.display()))?
            }
            None => {
                self.stdin
                    .read_to_string(&mut text)
                    .map_err(|e| format!("cannot read stdin: {e}"))?;
            }
        }
        let pt: IntegralPolytope =
            serde_json::from_str(&text).map_err(|e| format!("invalid polytope JSON: {e}"))?;
        let json = self.cli.format == Format::Json;
        match brute_force_decomposable(&pt, &self.budget()) {
            Ok(r) => {
                if json {
                    let status = if r.decomposable {
                        "decomposable"
                    } else {
                        "indecomposable"
                    };
                    let summands = r.summands.as_ref().map(|(a, b)| json!([a, b]));
                    self.emit(json!({"status": status, "decomposable": r.decomposable, "summands": summands}))?;
                } else if let Some((a, b)) = &r.summands {
                    self.emit(format!("decomposable: {a} + {b}"))?;
                } else {
                    self.emit("indecomposable")?;
                }
                Ok(EXIT_OK)
            }
            Err(DecompError::BudgetExceeded(msg)) => {
                if json {
                    self.emit(json!({"status": "unknown", "reason": format!("budget: {msg}")}))?;
                } else {
                    self.emit(format!("unknown: budget ({msg})"))?;
                }
                Ok(EXIT_UNKNOWN)
            }
            Err(e) => Err(e.to_string()),
        }
    }

    fn ostrowski_pair(&self, a: &str, b: &str) -> Result<(Polynomial, Polynomial), String> {
        let vars = match &self.cli.vars {
            Some(v) => v.clone(),
            None => {
                let mut vars = parse(a, None)
                    .map_err(|e| format!("first factor: {e}"))?
                    .vars()
                    .to_vec();
                for v in parse(b, None)
                    .map_err(|e| format!("second factor: {e}"))?
                    .vars()
                {
                    if !vars.contains(v) {
                        vars.push(v.clone());
                    }
                }
                vars
            }
        };
        let p = parse(a, Some(&vars)).map_err(|e| format!("first factor: {e}"))?;
        let q = parse(b, Some(&vars)).map_err(|e| format!("second factor: {e}"))?;
        Ok((p, q))
    }

    fn check_ostrowski(&mut self, exprs: &[String], random: Option<usize>) -> CmdResult {
        let pairs: Vec<(Polynomial, Polynomial)> = match random {
            Some(count) => {
                if !exprs.is_empty() {
                    return Err("--random takes no expressions".into());
                }
                let mut rng = seeded(self.cli.seed);
                (0..count)
                    .map(|_| {
                        let n = rand::Rng::random_range(&mut rng, 1..=3);
                        let shape = PolyShape::full(n, 4, 6);
                        (
                            random_polynomial(&mut rng, &shape),
                            random_polynomial(&mut rng, &shape),
                        )
                    })
                    .collect()
            }
            None => match exprs {
                [a, b] => vec![self.ostrowski_pair(a, b)?],
                [] if self.cli.file.is_some() => {
                    let text = self.expression(&None)?;
                    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
                    match lines.as_slice() {
                        [a, b] => vec![self.ostrowski_pair(a, b)?],
                        _ => {
                            return Err(
                                "the file must hold exactly two expressions, one per line".into()
                            )
                        }
                    }
                }
                _ => return Err("expected exactly two expressions".into()),
            },
        };
        let mut mismatches = 0usize;
        let mut rows = Vec::new();
        for (p, q) in &pairs {
            if p.is_zero() || q.is_zero() {
                return Err("factors must be nonzero".into());
            }
            let product = newton_polytope(&(p * q)).map_err(|e| e.to_string())?;
            let sum = minkowski_sum(
                &newton_polytope(p).map_err(|e| e.to_string())?,
                &newton_polytope(q).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
            let equal = product == sum;
            if !equal {
                mismatches += 1;
            }
            rows.push((p, q, product, sum, equal));
        }
        match self.cli.format {
            Format::Json => {
                let checks: Vec<_> = rows
                    .iter()
                    .map(|(p, q, product, sum, equal)| {
                        json!({"p": p.to_string(), "q": q.to_string(), "product": product, "minkowski_sum": sum, "equal": equal})
                    })
                    .collect();
                self.emit(
                    json!({"pairs": pairs.len(), "mismatches": mismatches, "checks": checks}),
                )?;
            }
            Format::Text => {
                if random.is_none() {
                    let (_, _, product, sum, equal) = &rows[0];
                    self.emit(format!("N(p*q) = {product}"))?;
                    self.emit(format!("N(p) + N(q) = {sum}"))?;
                    self.emit(if *equal { "equal" } else { "unequal" })?;
                } else {
                    for (p, q, product, sum, _) in rows.iter().filter(|r| !r.4) {
                        self.emit(format!("unequal: p = {p}, q = {q}: {product} vs {sum}"))?;
                    }
                    self.emit(format!(
                        "{} of {} pairs equal (seed {})",
                        pairs.len() - mismatches,
                        pairs.len(),
                        self.cli.seed
                    ))?;
                }
            }
        }
        Ok(if mismatches == 0 {
            EXIT_OK
        } else {
            EXIT_MISMATCH
        })
    }

    fn splits(&mut self, expr: &Option<String>) -> CmdResult {
        let p = self.polynomial(expr)?;
        if p.is_constant() {
            return Err("input is constant".into());
        }
        let splits = find_splits(&p);
        let one_based = |v: &[usize]| v.iter().map(|x| x + 1).collect::<Vec<_>>();
        match self.cli.format {
            Format::Json => {
                let list: Vec<_> = splits
                    .iter()
                    .map(|s| {
                        json!({
                            "I": one_based(&s.index_set_i),
                            "J": one_based(&s.index_set_j),
                            "part_I": s.part_i.to_string(),
                            "part_J": s.part_j.to_string(),
                            "degrees": [s.degree_i, s.degree_j],
                            "gcd": num_integer::gcd(s.degree_i, s.degree_j),
                        })
                    })
                    .collect();
                self.emit(serde_json::Value::Array(list))?;
            }
            Format::Text => {
                if splits.is_empty() {
                    self.emit("no splits")?;
                }
                for s in &splits {
                    self.emit(format!(
                        "I = {:?}, J = {:?}: ({}) + ({}), degrees ({}, {}), gcd {}",
                        one_based(&s.index_set_i),
                        one_based(&s.index_set_j),
                        s.part_i,
                        s.part_j,
                        s.degree_i,
                        s.degree_j,
                        num_integer::gcd(s.degree_i, s.degree_j)
                    ))?;
                }
            }
        }
        Ok(EXIT_OK)
    }

    fn dispatch(&mut self) -> CmdResult {
        match &self.cli.command {
            Command::Verdict { expr } => self.verdict(expr),
            Command::Polytope { expr } => self.polytope(expr),
            Command::Oracle => self.oracle(),
            Command::CheckOstrowski { exprs, random } => self.check_ostrowski(exprs, *random),
            Command::Splits { expr } => self.splits(expr),
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let mut ctx = Ctx {
        cli: &cli,
        stdin,
        out,
        err,
    };
    match ctx.dispatch() {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(ctx.err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["polyirr"];
        full.extend_from_slice(args);
        let code = run(full, &mut input, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn verdict_exit_codes() {
        let (code, out, _) = call(&["verdict", "z1^2*z2 + z1 + z3^2"], "");
        assert_eq!(code, 0);
        assert!(out.contains("criterion: DegreeGcd"));
        assert!(out.contains("degrees: (3, 2)"));
        assert_eq!(call(&["verdict", "z1^2 + z2^2"], "").0, 2);
        let (code, out, _) = call(&["verdict", "z1*z2"], "");
        assert_eq!(code, 2);
        assert!(out.contains("divisible by z1, z2; Gao criterion inapplicable"));
        let (code, _, err) = call(&["verdict", "z1 +"], "");
        assert_eq!(code, 1);
        assert!(err.contains("position 4"));
        assert_eq!(call(&["verdict"], "").0, 1);
    }

    #[test]
    fn polytope_json() {
        let (code, out, _) = call(&["polytope", "--format", "json", "z1+z2+1"], "");
        assert_eq!(code, 0);
        assert_eq!(out.trim(), r#"{"dim":2,"vertices":[[0,0],[0,1],[1,0]]}"#);
        let (_, out, _) = call(&["polytope", "--format", "json", "z1^4"], "");
        assert_eq!(out.trim(), r#"{"dim":1,"vertices":[[4]]}"#);
    }

    #[test]
    fn oracle_statuses() {
        let square = r#"{"dim":2,"vertices":[[0,0],[1,0],[0,1],[1,1]]}"#;
        let (code, out, _) = call(&["oracle", "--format", "json"], square);
        assert_eq!(code, 0);
        assert!(out.contains("\"decomposable\":true"));
        let tri = r#"{"dim":2,"vertices":[[2,0],[0,1],[0,3]]}"#;
        let (code, out, _) = call(&["oracle"], tri);
        assert_eq!((code, out.trim()), (0, "indecomposable"));
        let big = r#"{"dim":2,"vertices":[[0,0],[9,0],[0,9]]}"#;
        let (code, out, _) = call(&["oracle"], big);
        assert_eq!(code, EXIT_UNKNOWN);
        assert!(out.starts_with("unknown: budget"));
        assert_eq!(call(&["oracle"], "{").0, 1);
    }

    #[test]
    fn ostrowski() {
        let (code, out, _) = call(&["check-ostrowski", "z1+1", "z2+1"], "");
        assert_eq!(code, 0);
        assert!(out.contains("equal"));
        assert_eq!(call(&["check-ostrowski", "z1", "z1"], "").0, 0);
        let (code, out, _) = call(&["check-ostrowski", "--random", "50", "--seed", "0"], "");
        assert_eq!(code, 0);
        assert!(out.contains("50 of 50 pairs equal"));
    }

    #[test]
    fn splits_listing() {
        let (code, out, _) = call(&["splits", "z1 + z2 + z3"], "");
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 3);
        let (_, out, _) = call(&["splits", "--format", "json", "z1*z2 + z3 + z1"], "");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v[0]["I"], json!([1, 2]));
    }

    #[test]
    fn explicit_variable_order() {
        let (code, out, _) = call(
            &["polytope", "--vars", "b,a", "--format", "json", "a^2 + b"],
            "",
        );
        assert_eq!(code, 0);
        assert_eq!(out.trim(), r#"{"dim":2,"vertices":[[0,2],[1,0]]}"#);
        assert_eq!(call(&["polytope", "--vars", "a", "a + b"], "").0, 1);
    }
}
