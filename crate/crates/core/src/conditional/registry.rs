//! The conditional inequalities and their text format.
//!
//! ```text
//! I1; constraints: I(A;B|C); I(A;B); target: I(C;D|A) + I(C;D|B) + I(A;B) - I(C;D); aep: invalid
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::expr::{inferred_arity, parse_expression, Atom, InfoExpression};
use crate::subset::{default_names, SubsetMask};

/// Whether a conditional inequality holds for almost entropic points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AepStatus {
    Valid,
    Invalid,
    Open,
}

impl fmt::Display for AepStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AepStatus::Valid => "valid",
            AepStatus::Invalid => "invalid",
            AepStatus::Open => "open",
        })
    }
}

impl FromStr for AepStatus {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "valid" => Ok(AepStatus::Valid),
            "invalid" => Ok(AepStatus::Invalid),
            "open" => Ok(AepStatus::Open),
            other => Err(Error::Registry(format!("unknown aep status `{other}`"))),
        }
    }
}

/// A single conditional-independence or functional-dependence form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasicForm {
    /// `I(a;b|c)`
    CondIndependence(SubsetMask, SubsetMask, SubsetMask),
    /// `H(target|given)`
    Functional(SubsetMask, SubsetMask),
}

/// `(constraints = 0 for all) ⇒ target ≥ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionalInequality {
    pub name: String,
    pub arity: usize,
    pub constraints: Vec<InfoExpression>,
    /// DSL text of each constraint, as stated.
    pub constraint_text: Vec<String>,
    pub target: InfoExpression,
    pub target_text: String,
    pub aep: AepStatus,
}

impl ConditionalInequality {
    /// Builds an entry from DSL texts over the default names `A, B, ...`.
    pub fn from_text(name: &str, arity: usize, constraints: &[&str], target: &str, aep: AepStatus) -> Result<Self> {
        let names = default_names(arity);
        let parsed = constraints
            .iter()
            .map(|c| InfoExpression::parse(c, &names))
            .collect::<Result<Vec<_>>>()?;
        Ok(ConditionalInequality {
            name: name.to_string(),
            arity,
            constraints: parsed,
            constraint_text: constraints.iter().map(|s| s.trim().to_string()).collect(),
            target: InfoExpression::parse(target, &names)?,
            target_text: target.trim().to_string(),
            aep,
        })
    }

    /// The structural form of constraint `i`, if it is a single
    /// conditional independence or functional dependence.
    pub fn basic_form(&self, i: usize) -> Option<BasicForm> {
        let names = default_names(self.arity);
        basic_form_of_text(&self.constraint_text[i], &names).or_else(|| recognize_basic(&self.constraints[i]))
    }

    /// One registry line.
    pub fn to_line(&self) -> String {
        format!(
            "{}; constraints: {}; target: {}; aep: {}",
            self.name,
            self.constraint_text.join("; "),
            self.target_text,
            self.aep
        )
    }
}

/// Recognizes a DSL text consisting of a single unit-coefficient atom.
fn basic_form_of_text(text: &str, names: &[String]) -> Option<BasicForm> {
    let ast = parse_expression(text, names).ok()?;
    if ast.terms.len() != 1 || !num_traits::One::is_one(&ast.terms[0].coeff) {
        return None;
    }
    match ast.terms[0].atom {
        Atom::Mutual { left, right, given } => {
            crate::subset::require_disjoint(&[left, right, given]).ok()?;
            Some(BasicForm::CondIndependence(left, right, given))
        }
        Atom::Entropy { of, given } => {
            crate::subset::require_disjoint(&[of, given]).ok()?;
            Some(BasicForm::Functional(of, given))
        }
    }
}

/// Recognizes a positive multiple of `I(a;b|c)` or `H(t|g)` by brute force
/// over variable assignments. Only tried for arity ≤ 8.
pub fn recognize_basic(e: &InfoExpression) -> Option<BasicForm> {
    let n = e.arity();
    if n > 8 || e.is_zero() {
        return None;
    }
    let scale = e.terms().map(|(_, c)| c.clone()).max()?;
    if scale <= num_rational::BigRational::from_integer(0.into()) {
        return None;
    }
    let unit = e.scale(&(num_rational::BigRational::from_integer(1.into()) / scale));
    // Each variable goes to one of: unused, a, b, c.
    let total = 4usize.pow(n as u32);
    for code in 0..total {
        let mut parts = [SubsetMask::EMPTY; 4];
        let mut c = code;
        for i in 0..n {
            parts[c % 4] = parts[c % 4] | SubsetMask::singleton(i);
            c /= 4;
        }
        let (a, b, cond) = (parts[1], parts[2], parts[3]);
        if a.is_empty() {
            continue;
        }
        if b.is_empty() {
            if let Ok(h) = InfoExpression::entropy(n, a, cond) {
                if h == unit {
                    return Some(BasicForm::Functional(a, cond));
                }
            }
        } else if a < b {
            if let Ok(m) = InfoExpression::mutual(n, a, b, cond) {
                if m == unit {
                    return Some(BasicForm::CondIndependence(a, b, cond));
                }
            }
        }
    }
    None
}

const BOX: &str = "I(C;D|A) + I(C;D|B) + I(A;B) - I(C;D)";

/// All registry entries: I1-I6, I4p, I5p and the weak form.
pub fn registry() -> Vec<ConditionalInequality> {
    let plus = |extra: &str| format!("{BOX} + {extra}");
    let entries: Vec<(&str, usize, Vec<&str>, String, AepStatus)> = vec![
        ("I1", 4, vec!["I(A;B|C)", "I(A;B)"], BOX.into(), AepStatus::Invalid),
        ("I2", 4, vec!["I(A;B|C)", "I(B;D|C)"], BOX.into(), AepStatus::Open),
        ("I3", 4, vec!["I(A;B|C)", "H(C|A,B)"], BOX.into(), AepStatus::Invalid),
        ("I4", 5, vec!["I(A;D|C)", "I(A;C|D)"], plus("I(A;C|E) + I(A;E|C)"), AepStatus::Valid),
        ("I5", 5, vec!["I(B;C|D)", "I(C;D|B)"], plus("I(B;C|E) + I(C;E|B)"), AepStatus::Valid),
        ("I6", 5, vec!["I(B;C|D)", "I(C;D|B)"], plus("I(C;D|E) + I(C;E|D)"), AepStatus::Valid),
        ("I4p", 4, vec!["I(A;D|C)", "I(A;C|D)"], BOX.into(), AepStatus::Valid),
        ("I5p", 4, vec!["I(B;C|D)", "I(C;D|B)"], BOX.into(), AepStatus::Valid),
        (
            "weak",
            4,
            vec!["I(A;B|C)", "I(A;B|D)", "H(C|A,B)", "I(C;D|A)", "I(C;D|B)", "I(A;B)"],
            "-I(C;D)".into(),
            AepStatus::Open,
        ),
    ];
    entries
        .into_iter()
        .map(|(name, n, cons, target, aep)| {
            ConditionalInequality::from_text(name, n, &cons, &target, aep).expect("registry entries parse")
        })
        .collect()
}

/// Looks up an entry by name. Accepts `I4'` for `I4p` and is
/// case-insensitive.
pub fn lookup(name: &str) -> Result<ConditionalInequality> {
    let norm = name.trim().replace('\'', "p").to_ascii_lowercase();
    registry()
        .into_iter()
        .find(|ci| ci.name.to_ascii_lowercase() == norm)
        .ok_or_else(|| Error::UnknownInequality(name.to_string()))
}

/// Splits on `;` outside parentheses.
fn split_top(line: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in line.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ';' if depth == 0 => {
                out.push(&line[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&line[start..]);
    out
}

/// Parses one registry line.
pub fn parse_registry_line(line: &str) -> Result<ConditionalInequality> {
    let parts = split_top(line);
    let bad = |m: &str| Error::Registry(format!("{m}: `{}`", line.trim()));
    let name = parts.first().map(|s| s.trim()).filter(|s| !s.is_empty()).ok_or_else(|| bad("missing name"))?;
    let mut constraints: Vec<&str> = Vec::new();
    let mut target = None;
    let mut aep = None;
    let mut in_constraints = false;
    for p in &parts[1..] {
        let p = p.trim();
        if let Some(rest) = p.strip_prefix("constraints:") {
            in_constraints = true;
            if !rest.trim().is_empty() {
                constraints.push(rest.trim());
            }
        } else if let Some(rest) = p.strip_prefix("target:") {
            in_constraints = false;
            target = Some(rest.trim());
        } else if let Some(rest) = p.strip_prefix("aep:") {
            in_constraints = false;
            aep = Some(rest.parse::<AepStatus>()?);
        } else if in_constraints {
            constraints.push(p);
        } else {
            return Err(bad("unexpected field"));
        }
    }
    let target = target.ok_or_else(|| bad("missing target"))?;
    let aep = aep.ok_or_else(|| bad("missing aep status"))?;
    let mut all = constraints.clone();
    all.push(target);
    let arity = inferred_arity(&all);
    ConditionalInequality::from_text(name, arity, &constraints, target, aep)
}

/// Parses a registry file; blank lines and `#` comments are skipped.
pub fn parse_registry(text: &str) -> Result<Vec<ConditionalInequality>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_registry_line)
        .collect()
}

/// Serializes a registry, one entry per line.
pub fn registry_to_text(entries: &[ConditionalInequality]) -> String {
    entries.iter().map(|e| e.to_line() + "\n").collect()
}
