//! Bounded limit points showing that I1 and I3 fail for almost entropic
//! points once q is large enough.

use infoineq::constructions::{aep_margin, aep_point, AepTarget};
use infoineq::families::primes_between;
use infoineq::format::real;

fn main() -> infoineq::Result<()> {
    print!("{}", aep_point(AepTarget::I1, 13)?.to_text());
    println!();
    print!("{}", aep_margin(AepTarget::I1, 31)?.to_text());

    for target in [AepTarget::I1, AepTarget::I3] {
        let first = primes_between(3, 1000)
            .find(|&q| aep_margin(target, q).map(|c| c.violated()).unwrap_or(false))
            .expect("some prime below 1000 certifies");
        println!("\n{target}: first certified prime q={first}");
        for q in [first, 101, 1009, 10007] {
            let c = aep_margin(target, q)?;
            println!("  q={q:6} margin={:>16} ratio={}", real(c.margin), real(c.ratio()));
        }
    }
    Ok(())
}
