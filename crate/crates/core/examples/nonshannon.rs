//! Known non-Shannon inequalities: the LP cannot derive them, yet they hold
//! on every distribution tried.

use infoineq::cone::{is_shannon_type, known_nonshannon_registry};
use infoineq::{entropy_profile, JointDistribution};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_distribution(rng: &mut ChaCha8Rng) -> infoineq::Result<JointDistribution> {
    let names = infoineq::subset::default_names(4);
    let atoms = (0..8)
        .map(|_| {
            let v = (0..4).map(|_| rng.random_range(0..2u32)).collect();
            (v, BigUint::from(rng.random_range(1..10u32)))
        })
        .collect();
    JointDistribution::from_weighted_atoms(names, None, atoms)
}

fn main() -> infoineq::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let samples: Vec<_> = (0..200).map(|_| random_distribution(&mut rng).map(|d| entropy_profile(&d))).collect::<Result<_, _>>()?;
    for k in 1..=2 {
        for (name, e) in known_nonshannon_registry(4, k)? {
            let shannon = is_shannon_type(&e)?.certificate().is_some();
            let worst = samples
                .iter()
                .map(|p| e.evaluate(p))
                .collect::<infoineq::Result<Vec<f64>>>()?
                .into_iter()
                .fold(f64::INFINITY, f64::min);
            println!("{name:20} shannon-type: {shannon:5}  min over 200 samples: {}", infoineq::format::real(worst));
        }
    }
    Ok(())
}
