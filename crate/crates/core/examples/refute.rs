//! Refutes every paired conditional inequality for a range of multiplier
//! bounds and prints one row per witness.

use std::time::Instant;

use infoineq::conditional::{lookup, pairings, refute};
use num_rational::BigRational;

fn main() -> infoineq::Result<()> {
    let lambdas = [1i64, 10, 100, 1000];
    for name in ["I1", "I2", "I3", "I4p", "I5p", "weak", "I4", "I5", "I6"] {
        let ci = lookup(name)?;
        for pairing in pairings(name) {
            for l in lambdas {
                let start = Instant::now();
                let w = refute(&ci, pairing.family, &BigRational::from_integer(l.into()))?;
                println!(
                    "{name:5} {:18} lambda={l:<5} {:14} margin={:<20} [{}, {:.2?}, verified={}]",
                    w.family(),
                    w.parameter.to_string(),
                    w.margin.to_string(),
                    w.precision,
                    start.elapsed(),
                    w.verify()?
                );
            }
        }
    }
    Ok(())
}
