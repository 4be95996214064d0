//! Lines and parabolas over F_q: enumeration against closed forms.

use infoineq::families::{geometric, geometric_closed_profile, geometric_closed_value};
use infoineq::format::real;
use infoineq::{entropy_profile, InfoExpression};

fn main() -> infoineq::Result<()> {
    for q in [3u64, 5, 7, 11] {
        let d = geometric(q)?;
        let enumerated = entropy_profile(&d);
        let closed = geometric_closed_profile(q)?;
        let worst = enumerated
            .coords()
            .iter()
            .zip(closed.coords())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        println!("q={q:2}: {} atoms, max |enumerated - closed| = {}", d.num_atoms(), real(worst));
        for t in ["I(C;D)", "I(A;B)", "H(C|A,B)", "I(A;B|C)", "I(C;D|A)"] {
            let e = InfoExpression::parse_default(t, 4)?;
            println!("    {t:10} = {}", real(geometric_closed_value(q, &e)?));
        }
        let masks = |names: &[&str]| d.mask_of(names);
        println!(
            "    structural: I(A;B|C)=0 {}, I(C;D|A)=0 {}, H(C|A,B)=0 {}",
            d.is_cond_independent(masks(&["A"])?, masks(&["B"])?, masks(&["C"])?)?,
            d.is_cond_independent(masks(&["C"])?, masks(&["D"])?, masks(&["A"])?)?,
            d.is_functional(masks(&["C"])?, masks(&["A", "B"])?)?,
        );
    }
    Ok(())
}
