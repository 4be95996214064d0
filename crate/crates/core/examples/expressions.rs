//! The expression language: parsing, canonical form, arithmetic and
//! evaluation.

use infoineq::expr::standard_box;
use infoineq::families::claim;
use infoineq::{entropy_profile, InfoExpression};
use num_rational::BigRational;

fn main() -> infoineq::Result<()> {
    for text in ["H(A|B)", "I(A;B)", "I(A;B|C)", "2 I(A;B|C) - 1/2 H(C) >= 0"] {
        let e = InfoExpression::parse_default(text, 3)?;
        println!("{text:28} => {e}");
    }

    let ingleton = standard_box(4)?;
    println!("\nbox: {ingleton}");
    let doubled = ingleton.checked_add(&ingleton)?;
    println!("twice: {doubled}");
    let half = doubled.scale(&BigRational::new(1.into(), 2.into()));
    assert_eq!(half, ingleton);

    let d = claim(1, &BigRational::new(1.into(), 8.into()))?;
    println!("box on claim1 at eps=1/8: {}", infoineq::format::real(ingleton.evaluate(&entropy_profile(&d))?));

    match InfoExpression::parse_default("I(A;B|", 3) {
        Err(e) => println!("parse error: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
