//! The registry of conditional inequalities and checking them on
//! distributions.

use infoineq::conditional::{check, lookup, registry, registry_to_text};
use infoineq::families::{claim, geometric};
use num_rational::BigRational;

fn main() -> infoineq::Result<()> {
    print!("{}", registry_to_text(&registry()));

    let eighth = BigRational::new(1.into(), 8.into());
    let runs = [
        ("I1", claim(1, &eighth)?),
        ("I3", claim(3, &eighth)?),
        ("I5p", claim(5, &eighth)?),
        ("weak", geometric(5)?),
    ];
    for (name, d) in runs {
        println!("\n{}", check(&lookup(name)?, &d)?);
    }
    Ok(())
}
