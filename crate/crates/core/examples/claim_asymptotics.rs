//! How the key quantities of the binary families scale as ε → 0.

use infoineq::expr::standard_box;
use infoineq::families::{asymptotic_report, dyadic_eps, Family};
use infoineq::format::real;
use infoineq::InfoExpression;

fn main() -> infoineq::Result<()> {
    let eps = dyadic_eps(4..=10);
    let cases = [
        (Family::Claim(1), InfoExpression::parse_default("I(C;D)", 4)?),
        (Family::Claim(1), InfoExpression::parse_default("I(A;B)", 4)?),
        (Family::Claim(2), standard_box(4)?),
        (Family::Claim(4), standard_box(4)?),
        (Family::Claim(5), InfoExpression::parse_default("I(C;D)", 4)?),
    ];
    for (family, expr) in cases {
        println!("{family}: {expr}");
        println!("  {:>8} {:>20} {:>20} {:>20} {:>20}", "eps", "value", "/eps", "/eps^2", "/(eps log 1/eps)");
        for row in asymptotic_report(family, &expr, &eps)? {
            println!(
                "  {:>8} {:>20} {:>20} {:>20} {:>20}",
                infoineq::distribution::format_rational(&row.eps),
                real(row.value),
                real(row.over_eps),
                real(row.over_eps2),
                real(row.over_eps_log)
            );
        }
    }
    println!("-2/ln 2 = {}", real(-2.0 / std::f64::consts::LN_2));
    Ok(())
}
