// ε_n between its exact lower line and the explicit upper line, with the
// n·ε_n trend. The limit itself is not asserted.

use std::f64::consts::PI;

use zeta_forge::zeta::epsilon_n;

pub fn run_example() -> zeta_forge::Result<()> {
    println!("{:>4} {:>14} {:>14} {:>14} {:>10}", "n", "lower", "eps_n", "upper", "n*eps_n");
    for n in [1u64, 2, 3, 4, 5, 10, 20, 50, 100] {
        let e = epsilon_n(n, 1e-11)?;
        println!(
            "{n:>4} {:>14.10} {:>14.10} {:>14.10} {:>10.6}",
            e.lower_line,
            e.value,
            e.upper_line,
            n as f64 * e.value
        );
    }
    println!("1/(6 sqrt(2 pi)) = {:.6}", 1.0 / (6.0 * (2.0 * PI).sqrt()));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("epsilon sandwich");
}
