// The main inequality ζ₃(S̃, T̃) ≤ Σσ_i³B(ρ_i)/(6σ³) against a Rademacher
// average, on the equality case and on random laws.

use zeta_forge::bounds::{compare_tyurin, verify_main, BoundReport};
use zeta_forge::laws::two_point_law;
use zeta_forge::random::{random_law, rng};

pub fn run_example() -> zeta_forge::Result<()> {
    let tight = verify_main(&[two_point_law(1.5)?, two_point_law(2.0)?, two_point_law(1.2)?], 1e-9)?;
    println!("{}", BoundReport::CSV_HEADER);
    println!("{}", tight.csv_row());

    let mut r = rng(2024);
    for _ in 0..5 {
        let laws: Vec<_> = (0..3).map(|_| random_law(&mut r, 3, 6)).collect::<Result<_, _>>()?;
        println!("{}", verify_main(&laws, 1e-9)?.csv_row());
        println!("{}", compare_tyurin(&laws, 1e-9)?.csv_row());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("main bound");
}
