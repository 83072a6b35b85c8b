// ζ₃ and ζ₄ between discrete laws and the standard normal.

use zeta_forge::laws::{binomial_half_standardized, two_point_law};
use zeta_forge::zeta::{zeta_vs_normal_estimate, zeta_discrete};
use zeta_forge::DiscreteLaw;

pub fn run_example() -> zeta_forge::Result<()> {
    let q = DiscreteLaw::rademacher();
    let z3 = zeta_vs_normal_estimate(&q, 3, 1e-11)?;
    let z4 = zeta_vs_normal_estimate(&q, 4, 1e-11)?;
    println!("zeta_3(Q, N) = {:.12} (+/- {:.1e})", z3.value, z3.error);
    println!("zeta_4(Q, N) = {:.12}, 1/12 = {:.12}", z4.value, 1.0 / 12.0);

    for rho in [1.2, 1.5, 2.0] {
        let p = two_point_law(rho)?;
        let z = zeta_vs_normal_estimate(&p, 3, 1e-10)?;
        println!("rho={rho}: zeta_3(P_rho, N) = {:.9}, zeta_3(P_rho, Q) = {:.9}", z.value, zeta_discrete(&p, &q, 3)?);
    }

    for n in [2, 8, 32] {
        let b = binomial_half_standardized(n)?;
        println!("n={n}: zeta_3(B_n, N) = {:.9}", zeta_vs_normal_estimate(&b, 3, 1e-10)?.value);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("zeta vs normal");
}
