// Krawtchouk partial sums and the closed form for E|B_n − n/2|³.

use zeta_forge::krawtchouk::{binom_abs3, binom_abs3_enumerate, kraw_eval, kraw_partial_sum_exact};

pub fn run_example() -> zeta_forge::Result<()> {
    for x in 0..=6 {
        print!("{} ", kraw_eval(6, 3, x as f64));
    }
    println!("<- P^6_3 on 0..6");

    let (closed, direct) = kraw_partial_sum_exact(9, 4, 5)?;
    println!("sum_(x<=5) P^9_4(x) b(x): closed {closed}, direct {direct}");

    for n in [1, 2, 7, 20, 60] {
        println!("n={n:>3}: nu_3(B~_n) = {:.12} (enumerated {:.12})", binom_abs3(n, true)?, binom_abs3_enumerate(n, true)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("krawtchouk");
}
