// Cut functions, sign changes, s-convex order and the smoothing constants.

use std::f64::consts::{E, PI};

use zeta_forge::laws::two_point_law;
use zeta_forge::zeta::{hbar, s_convex_le, sign_changes, smoothing_constant, zeta_smoothed, LawArg};
use zeta_forge::DiscreteLaw;

pub fn run_example() -> zeta_forge::Result<()> {
    let q = DiscreteLaw::rademacher();
    let p = two_point_law(1.5)?;
    for k in 1..=3 {
        let h = hbar(LawArg::Discrete(&p), LawArg::Discrete(&q), k)?;
        let sc = sign_changes(&h, h.default_window())?;
        println!("H_{k}: {} sign changes at {:?}", sc.count, sc.points);
    }
    println!("Q <=_3 P: {}", s_convex_le(&q, &p, 3)?);

    let z = zeta_smoothed(&p, &q, 3, 0.5, 1e-10)?;
    println!("zeta_3 after N(0, 0.25) smoothing: {:.9}", z.value);

    println!("C(3,1) = {:.12}, 2/sqrt(2pi) = {:.12}", smoothing_constant(3.0, 1.0)?, 2.0 / (2.0 * PI).sqrt());
    println!("C(3,2) = {:.12}, 4/sqrt(2pi e) = {:.12}", smoothing_constant(3.0, 2.0)?, 4.0 / (2.0 * PI * E).sqrt());
    println!("C(3,1.5) = {:.12}", smoothing_constant(3.0, 1.5)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("convex order");
}
