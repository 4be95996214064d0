//! Parses a distribution from text, prints its entropy profile, a marginal
//! and a high-precision coordinate.

use infoineq::entropy::entropy_profile_fixed;
use infoineq::{entropy_profile, JointDistribution, SubsetMask};

const TEXT: &str = "\
# two correlated bits and their xor
vars: X Y Z
0 0 0 : 3/8
0 1 1 : 1/8
1 0 1 : 1/8
1 1 0 : 3/8
";

fn main() -> infoineq::Result<()> {
    let d = JointDistribution::parse(TEXT)?;
    println!("{} atoms over {:?}", d.num_atoms(), d.var_names());
    for (s, h) in entropy_profile(&d).lexicographic() {
        println!("H({}) = {}", s.display_with(d.var_names()), infoineq::format::real(h));
    }

    let xz = d.mask_of(&["X", "Z"])?;
    println!("\nmarginal on X,Z:\n{}", d.marginal(xz)?.to_text());

    let precise = entropy_profile_fixed(&d, 256);
    println!("H(X,Y) to 40 digits: {}", precise.get(SubsetMask::new(0b011)).to_sci(40));
    Ok(())
}
