// Splitting a law into few-point laws with the same moments, and the search
// over standardized three-point laws.

use zeta_forge::reduction::{extremal_three_point_search, extreme_point_decompose, richter_reduce, Constraint};
use zeta_forge::random::{random_standardized, rng};

fn x(v: f64) -> f64 {
    v
}

fn x2(v: f64) -> f64 {
    v * v
}

fn x3abs(v: f64) -> f64 {
    v.abs().powi(3)
}

pub fn run_example() -> zeta_forge::Result<()> {
    let law = random_standardized(&mut rng(5), 7, 7)?;
    let cons: [Constraint; 2] = [&x, &x2];
    let d = extreme_point_decompose(&law, &cons)?;
    println!("{} atoms -> {} parts", law.len(), d.parts.len());
    for (w, p) in d.weights.iter().zip(&d.parts) {
        println!("  w={w:.4} atoms={:?}", p.atoms());
    }
    println!("reconstruction error {:.2e}", d.reconstruction_error(&law));

    let cons3: [Constraint; 3] = [&x, &x2, &x3abs];
    let q = richter_reduce(&law, &cons3)?;
    println!("richter: {} atoms, nu_3 {:.9} vs {:.9}", q.len(), q.abs_moment(3.0), law.abs_moment(3.0));

    for rho in [1.5, 3.0] {
        let s = extremal_three_point_search(rho, 80)?;
        println!(
            "rho={rho}: sup {:.9}, B/6 {:.9}, {} laws scanned, certified {}",
            s.sup_value,
            s.bound,
            s.evaluated,
            s.certified()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("reduction");
}
