// Where the sharpened bound beats the classical one: the ρ/B(ρ)/n grid and
// the worked examples.

use zeta_forge::bounds::{improvement_table, normal_rhs, tyurin_rhs, EpsMode};

pub fn run_example() -> zeta_forge::Result<()> {
    println!("{:<12} {:<14} {:>8} {:>8} {:>6} {:>6}", "section", "label", "rho", "B", "n", "ref");
    for row in improvement_table()? {
        let flag = if row.matches_expected() { "" } else { "  <- differs" };
        println!(
            "{:<12} {:<14} {:>8.4} {:>8.4} {:>6} {:>6}{flag}",
            row.section, row.label, row.rho, row.b, row.n_min, row.expected_n
        );
    }

    // Uniform summands: the crossover happens between n = 4 and n = 5.
    let rho = 3.0 * 3f64.sqrt() / 4.0;
    for n in 3..=6u64 {
        let ours = normal_rhs(rho, n, EpsMode::Upper)?;
        let theirs = tyurin_rhs(&vec![1.0; n as usize], &vec![rho; n as usize])?;
        println!("uniform n={n}: {ours:.6} vs {theirs:.6}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("improvement table");
}
