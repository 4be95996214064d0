//! The common-information variable behind the double Markov property and
//! the Ingleton inequality it implies.

use infoineq::constructions::{double_markov_witness, verify_ingleton_via_w};
use infoineq::subset::default_names;
use infoineq::{JointDistribution, SubsetMask};

fn main() -> infoineq::Result<()> {
    // U, V1, V2, N independent bits; X = (U,V1), Y = (U,V2), Z = (U,N),
    // V = V1 and V2.
    let atoms = (0..16u32)
        .map(|s| {
            let (u, v1, v2, noise) = (s & 1, (s >> 1) & 1, (s >> 2) & 1, (s >> 3) & 1);
            vec![v1 & v2, 2 * u + noise, 2 * u + v1, 2 * u + v2]
        })
        .collect();
    let d = JointDistribution::uniform(default_names(4), None, atoms)?;
    let m = SubsetMask::singleton;

    let w = double_markov_witness(&d, m(2), m(3), m(1))?;
    println!("{w}");
    println!("extended with W:\n{}", w.extended.to_text());

    let report = verify_ingleton_via_w(&d, m(0), m(1), m(2), m(3))?;
    println!("{report}");
    Ok(())
}
