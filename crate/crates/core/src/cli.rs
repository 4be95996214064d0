//! Command-line front end. [`run`] is pure apart from reading input files
//! and returns the exit code with the full report.
//!
//! Exit codes: 0 success or "holds", 1 refuted or violated, 2 usage or
//! input error.

use std::fs;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use crate::cone::{conditional_implied_by, is_shannon_type, ConeDescription, Implication, ShannonResult};
use crate::conditional::{
    check, curve_to_tsv, lookup, pairings, refutation_curve_with, refute_with, registry, registry_to_text,
    PrecisionMode, RefuteOptions,
};
use crate::constructions::{aep_margin, aep_point, double_markov_witness, verify_ingleton_via_w, AepTarget};
use crate::distribution::{parse_rational, JointDistribution};
use crate::entropy::{entropy_profile, EntropyVector};
use crate::error::{Error, Result};
use crate::expr::{inferred_arity, InfoExpression};
use crate::families::{asymptotic_report, geometric_closed_profile, geometric_closed_value, Family};
use crate::format::real;
use crate::subset::{default_names, SubsetMask};

#[derive(Parser, Debug)]
#[command(name = "infoineq", version, about = "Linear and conditional information inequality toolkit")]
struct Cli {
    /// Output format for tables.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Tsv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Dist,
    Profile,
    Closed,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print all 2^n - 1 joint entropies of a distribution file.
    Profile { dist: String },
    /// Evaluate an expression on a distribution file.
    Eval {
        #[arg(long)]
        expr: String,
        dist: String,
    },
    /// Decide whether `expr >= 0` follows from Shannon inequalities.
    ShannonType {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Decide whether `constraints = 0` imply `target >= 0` over a cone.
    ImpliedBy {
        #[arg(long)]
        target: String,
        #[arg(long = "constraint")]
        constraints: Vec<String>,
        #[arg(long, default_value = "shannon")]
        cone: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Generate a family member.
    Family {
        #[arg(long)]
        name: String,
        #[arg(long)]
        param: String,
        #[arg(long, value_enum, default_value = "dist")]
        emit: Emit,
    },
    /// Check a registry inequality on a distribution file.
    Check {
        #[arg(long)]
        ineq: String,
        dist: String,
    },
    /// Find a witness that the inequality stays false for all multipliers
    /// with total magnitude at most lambda.
    Refute {
        #[arg(long)]
        ineq: String,
        #[arg(long)]
        lambda: String,
        /// Paired family; defaults to the first pairing.
        #[arg(long)]
        family: Option<String>,
        /// auto, double, or a number of decimal digits.
        #[arg(long, default_value = "auto")]
        precision: String,
        /// Comma-separated bounds; prints a curve instead of one witness.
        #[arg(long, value_delimiter = ',')]
        curve: Vec<String>,
    },
    /// Build the common-information variable W for (X,Y,Z).
    DoubleMarkov {
        dist: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: String,
        /// Also check the Ingleton consequence with this V.
        #[arg(long)]
        v: Option<String>,
    },
    /// Almost-entropic violation certificate for I1 or I3.
    Aep {
        #[arg(long)]
        target: String,
        #[arg(long)]
        q: u64,
        /// Also print the limit point bounds.
        #[arg(long)]
        point: bool,
    },
    /// Scaling table of an expression along a binary family.
    Asymptotics {
        #[arg(long)]
        family: String,
        #[arg(long)]
        expr: String,
        #[arg(long, value_delimiter = ',', required = true)]
        eps: Vec<String>,
    },
    /// Print the registry of conditional inequalities.
    Registry,
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Precondition(format!("cannot read {path}: {e}")))
}

fn load(path: &str) -> Result<JointDistribution> {
    JointDistribution::parse(&read(path)?)
}

fn rational(s: &str) -> Result<BigRational> {
    parse_rational(s).map_err(|m| Error::Parse {
        position: 0,
        message: m,
    })
}

fn arity_for(texts: &[&str], n: Option<usize>) -> usize {
    n.unwrap_or_else(|| inferred_arity(texts))
}

fn profile_text(v: &EntropyVector, names: &[String], format: OutputFormat) -> String {
    let mut out = String::new();
    if format == OutputFormat::Tsv {
        out += "subset\tentropy\n";
    }
    for (s, h) in v.lexicographic() {
        let label = s.display_with(names);
        match format {
            OutputFormat::Text => out += &format!("H({label}) = {}\n", real(h)),
            OutputFormat::Tsv => out += &format!("{label}\t{}\n", real(h)),
        }
    }
    out
}

/// Names of comma-separated variables in `d`, as a mask.
fn mask(d: &JointDistribution, spec: &str) -> Result<SubsetMask> {
    let names: Vec<&str> = spec.split(',').map(str::trim).collect();
    d.mask_of(&names)
}

fn closed_quantities(q: u64) -> Result<String> {
    let v = geometric_closed_profile(q)?;
    let mut out = profile_text(&v, &default_names(4), OutputFormat::Text);
    for t in ["I(A;B)", "I(C;D)", "H(C|A,B)", "I(A;B|C)", "I(A;B|D)", "I(C;D|A)", "I(C;D|B)"] {
        let e = InfoExpression::parse_default(t, 4)?;
        out += &format!("{t} = {}\n", real(geometric_closed_value(q, &e)?));
    }
    Ok(out)
}

fn precision_mode(s: &str) -> Result<PrecisionMode> {
    match s {
        "auto" => Ok(PrecisionMode::Auto),
        "double" => Ok(PrecisionMode::Double),
        d => d
            .parse::<u32>()
            .map(PrecisionMode::Digits)
            .map_err(|_| Error::Precondition(format!("precision must be auto, double or a digit count, got `{d}`"))),
    }
}

fn execute(cli: Cli) -> Result<(i32, String)> {
    let format = cli.format;
    match cli.command {
        Command::Profile { dist } => {
            let d = load(&dist)?;
            Ok((0, profile_text(&entropy_profile(&d), d.var_names(), format)))
        }
        Command::Eval { expr, dist } => {
            let d = load(&dist)?;
            let e = InfoExpression::parse(&expr, d.var_names())?;
            Ok((0, format!("{}\n", real(e.evaluate(&entropy_profile(&d))?))))
        }
        Command::ShannonType { expr, n } => {
            let n = arity_for(&[&expr], n);
            let names = default_names(n);
            let e = InfoExpression::parse(&expr, &names)?;
            match is_shannon_type(&e)? {
                ShannonResult::Certificate(c) => Ok((0, format!("shannon-type\n{}", c.to_text_with(&names)))),
                ShannonResult::SeparatingPoint(p) => Ok((1, format!("not shannon-type\n{}", p.to_text_with(&names)))),
            }
        }
        Command::ImpliedBy {
            target,
            constraints,
            cone,
            n,
        } => {
            if cone != "shannon" {
                return Err(Error::Precondition(format!("unknown cone `{cone}`; only `shannon` is available")));
            }
            let mut texts: Vec<&str> = constraints.iter().map(String::as_str).collect();
            texts.push(&target);
            let n = arity_for(&texts, n);
            let names = default_names(n);
            let t = InfoExpression::parse(&target, &names)?;
            let cs = constraints
                .iter()
                .map(|c| InfoExpression::parse(c, &names))
                .collect::<Result<Vec<_>>>()?;
            match conditional_implied_by(&ConeDescription::shannon(n)?, &cs, &t)? {
                Implication::Implied(c) => Ok((0, format!("implied\n{}", c.to_text_with(&names)))),
                Implication::NotImplied(p) => Ok((1, format!("not implied\n{}", p.to_text_with(&names)))),
            }
        }
        Command::Family { name, param, emit } => {
            let family: Family = name.parse()?;
            let p = rational(&param)?;
            match emit {
                Emit::Dist => Ok((0, family.generate(&p)?.to_text())),
                Emit::Profile => {
                    let d = family.generate(&p)?;
                    Ok((0, profile_text(&entropy_profile(&d), d.var_names(), format)))
                }
                Emit::Closed => {
                    if family != Family::Geometric || !p.is_integer() {
                        return Err(Error::Precondition("--emit closed needs the geometric family and an integer q".into()));
                    }
                    let q = u64::try_from(p.to_integer()).map_err(|_| Error::OutOfDomain {
                        family: "geometric".into(),
                        param,
                    })?;
                    Ok((0, closed_quantities(q)?))
                }
            }
        }
        Command::Check { ineq, dist } => {
            let ci = lookup(&ineq)?;
            let report = check(&ci, &load(&dist)?)?;
            let code = if report.violated(1e-9) { 1 } else { 0 };
            Ok((code, format!("{report}\n")))
        }
        Command::Refute {
            ineq,
            lambda,
            family,
            precision,
            curve,
        } => {
            let ci = lookup(&ineq)?;
            let family = match family {
                Some(f) => f.parse::<Family>()?,
                None => pairings(&ci.name)
                    .first()
                    .map(|p| p.family)
                    .ok_or_else(|| Error::Unpaired {
                        inequality: ci.name.clone(),
                        family: "any".into(),
                    })?,
            };
            let opts = RefuteOptions {
                precision: precision_mode(&precision)?,
                ..Default::default()
            };
            if curve.is_empty() {
                let w = refute_with(&ci, family, &rational(&lambda)?, &opts)?;
                Ok((1, w.to_text()))
            } else {
                let mut lambdas = vec![rational(&lambda)?];
                for c in &curve {
                    lambdas.push(rational(c)?);
                }
                let rows = refutation_curve_with(&ci, family, &lambdas, &opts)?;
                let text = match format {
                    OutputFormat::Tsv => curve_to_tsv(&rows),
                    OutputFormat::Text => rows.iter().map(|w| w.to_text()).collect::<Vec<_>>().join("\n"),
                };
                Ok((1, text))
            }
        }
        Command::DoubleMarkov { dist, x, y, z, v } => {
            let d = load(&dist)?;
            let (xm, ym, zm) = (mask(&d, &x)?, mask(&d, &y)?, mask(&d, &z)?);
            let result = match &v {
                None => double_markov_witness(&d, xm, ym, zm).map(|r| {
                    format!("{r}\nextended distribution:\n{}", r.extended.to_text())
                }),
                Some(v) => verify_ingleton_via_w(&d, mask(&d, v)?, zm, xm, ym).map(|r| format!("{r}\n")),
            };
            match result {
                Ok(text) => Ok((0, text)),
                Err(Error::Precondition(m)) => Ok((1, format!("precondition failed: {m}\n"))),
                Err(e) => Err(e),
            }
        }
        Command::Aep { target, q, point } => {
            let t: AepTarget = target.parse()?;
            let cert = aep_margin(t, q)?;
            let mut out = String::new();
            if point {
                out += &aep_point(t, q)?.to_text();
            }
            out += &cert.to_text();
            Ok((if cert.violated() { 1 } else { 0 }, out))
        }
        Command::Asymptotics { family, expr, eps } => {
            let family: Family = family.parse()?;
            let e = InfoExpression::parse_default(&expr, 4)?;
            let eps = eps.iter().map(|s| rational(s)).collect::<Result<Vec<_>>>()?;
            let rows = asymptotic_report(family, &e, &eps)?;
            let mut out = String::new();
            let sep = if format == OutputFormat::Tsv { "\t" } else { "  " };
            out += &["eps", "value", "value/eps", "value/eps^2", "value/(eps*log2(1/eps))"].join(sep);
            out.push('\n');
            for r in rows {
                let cells = [
                    crate::distribution::format_rational(&r.eps),
                    real(r.value),
                    real(r.over_eps),
                    real(r.over_eps2),
                    real(r.over_eps_log),
                ];
                out += &cells.join(sep);
                out.push('\n');
            }
            Ok((0, out))
        }
        Command::Registry => Ok((0, registry_to_text(&registry()))),
    }
}

/// Runs the command line `argv` (including the program name).
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => match execute(cli) {
            Ok(r) => r,
            Err(e) => (2, format!("error: {e}\n")),
        },
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            (code, e.render().to_string())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> (i32, String) {
        run(std::iter::once("infoineq").chain(args.iter().copied()))
    }

    #[test]
    fn closed_form_line() {
        let (code, out) = go(&["family", "--name", "geometric", "--param", "5", "--emit", "closed"]);
        assert_eq!(code, 0);
        assert!(out.lines().any(|l| l == "I(C;D) = 0.8"), "{out}");
    }

    #[test]
    fn refute_exits_one() {
        let (code, out) = go(&["refute", "--ineq", "I1", "--lambda", "100"]);
        assert_eq!(code, 1);
        assert!(out.starts_with("RefutationWitness\n"));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(go(&["refute", "--ineq", "I9", "--lambda", "1"]).0, 2);
        assert_eq!(go(&["nonsense"]).0, 2);
        assert_eq!(go(&["shannon-type", "--expr", "H(A"]).0, 2);
        assert_eq!(go(&["refute", "--ineq", "I2", "--lambda", "1", "--family", "claim1"]).0, 2);
    }

    #[test]
    fn shannon_type_codes() {
        assert_eq!(go(&["shannon-type", "--expr", "I(A;B|C)"]).0, 0);
        assert_eq!(go(&["shannon-type", "--expr", "I(C;D|A) + I(C;D|B) + I(A;B) - I(C;D)"]).0, 1);
    }
}
