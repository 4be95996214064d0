//! Exact LP over the Shannon cone: certificates, separating points and
//! conditional implication.

use infoineq::cone::{conditional_implied_by, elemental_inequalities, is_shannon_type, ConeDescription, Implication};
use infoineq::expr::standard_box;
use infoineq::subset::default_names;
use infoineq::InfoExpression;

fn main() -> infoineq::Result<()> {
    for n in 2..=5 {
        println!("n={n}: {} elemental inequalities", elemental_inequalities(n)?.len());
    }
    let names = default_names(4);

    let target = InfoExpression::parse_default("H(A,C) + H(B,C) - H(A,B) - H(C)", 3)?;
    let cert = is_shannon_type(&target)?;
    let cert = cert.certificate().expect("shannon-type");
    println!("\n{}verified: {}", cert.to_text(), cert.verify());

    let ingleton = standard_box(4)?;
    let point = is_shannon_type(&ingleton)?;
    let point = point.separating_point().expect("not shannon-type");
    println!("\nbox is not shannon-type:\n{}", point.to_text_with(&names));

    let constraints = [
        InfoExpression::parse_default("I(A;B)", 4)?,
        InfoExpression::parse_default("I(A;B|C)", 4)?,
    ];
    let cone = ConeDescription::shannon(4)?;
    match conditional_implied_by(&cone, &constraints, &ingleton)? {
        Implication::Implied(c) => println!("implied:\n{}", c.to_text_with(&names)),
        Implication::NotImplied(p) => println!(
            "I(A;B) = I(A;B|C) = 0 does not imply box >= 0 via Shannon inequalities (point verifies: {})",
            p.verify(&cone, &constraints, &ingleton)
        ),
    }
    Ok(())
}
