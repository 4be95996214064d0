//! Text proof format for certificates.
//!
//! ```text
//! kappa 1 * H(C|A,B)
//! kappa 1 * I(A;B|C)
//! ==> H(A,C) + H(B,C) - H(A) - H(B) - H(C) + ...
//! ```

use num_rational::BigRational;

use super::Certificate;
use crate::distribution::{format_rational, parse_rational};
use crate::error::{Error, Result};
use crate::expr::InfoExpression;

pub(super) fn to_text(c: &Certificate, names: &[String]) -> String {
    let mut out = String::new();
    for (label, g, k) in &c.kappa {
        let shown = match InfoExpression::parse(label, names) {
            Ok(e) if &e == g => label.clone(),
            _ => g.format_with(names),
        };
        out.push_str(&format!("kappa {} * {}\n", format_rational(k), shown));
    }
    for (f, l) in &c.lambda {
        out.push_str(&format!("lambda {} * {}\n", format_rational(l), f.format_with(names)));
    }
    out.push_str(&format!("==> {}\n", c.target.format_with(names)));
    out
}

/// Parses the certificate text format. The result is not verified; call
/// [`Certificate::verify`].
pub fn parse_certificate(text: &str, names: &[String]) -> Result<Certificate> {
    let n = names.len();
    let mut kappa = Vec::new();
    let mut lambda = Vec::new();
    let mut target = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |m: &str| Error::Parse {
            position: i + 1,
            message: format!("certificate line {}: {m}", i + 1),
        };
        if let Some(rest) = line.strip_prefix("==>") {
            target = Some(InfoExpression::parse(rest.trim(), names)?);
            continue;
        }
        let (kind, rest) = line.split_once(' ').ok_or_else(|| bad("expected `kappa` or `lambda`"))?;
        let (coef, expr) = rest.split_once('*').ok_or_else(|| bad("expected `<rational> * <expr>`"))?;
        let coef: BigRational = parse_rational(coef).map_err(|m| bad(&m))?;
        let expr_text = expr.trim();
        let e = InfoExpression::parse(expr_text, names)?;
        match kind {
            "kappa" => kappa.push((expr_text.to_string(), e, coef)),
            "lambda" => lambda.push((e, coef)),
            _ => return Err(bad("expected `kappa` or `lambda`")),
        }
    }
    let target = target.ok_or(Error::Parse {
        position: 0,
        message: "certificate lacks a `==>` line".into(),
    })?;
    Ok(Certificate {
        n,
        kappa,
        lambda,
        target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::is_shannon_type;
    use crate::subset::default_names;

    #[test]
    fn roundtrip_example_two() {
        let names = default_names(3);
        let t = InfoExpression::parse("H(A,C) + H(B,C) + I(A;B) - H(A) - H(B) - H(C)", &names).unwrap();
        let cert = is_shannon_type(&t).unwrap().certificate().unwrap().clone();
        let text = cert.to_text();
        assert!(text.contains("kappa 1 * I(A;B|C)"), "{text}");
        let back = parse_certificate(&text, &names).unwrap();
        assert!(back.verify());
        assert_eq!(back.target, t);
    }

    #[test]
    fn tampered_certificate_fails() {
        let names = default_names(2);
        let text = "kappa 2 * H(A|B)\n==> H(A,B) - H(B)\n";
        let c = parse_certificate(text, &names).unwrap();
        assert!(!c.verify());
        assert!(parse_certificate("kappa 1 * H(A)\n", &names).is_err());
    }
}
