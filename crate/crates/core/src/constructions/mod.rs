//! Constructions from the proofs: the common-information variable of the
//! double Markov property and bounded limit points that violate I1 and I3.

mod aep;
mod double_markov;

pub use aep::{aep_margin, aep_point, AccountedTerm, AePoint, AePointCertificate, AepTarget};
pub use double_markov::{double_markov_witness, verify_ingleton_via_w, DoubleMarkovResult, IngletonReport, INGLETON_TOL};
