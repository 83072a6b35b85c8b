// Building, combining and serializing finite-support laws.

use zeta_forge::laws::{binomial_half, catalog_rho, convolve, two_point_law, Catalog, MAX_ATOMS};
use zeta_forge::DiscreteLaw;

pub fn run_example() -> zeta_forge::Result<()> {
    let law = DiscreteLaw::from_parts(&[-1.0, 0.5, 2.0], &[0.3, 0.5, 0.2])?;
    let m = law.moments();
    println!("mean {:.4}, variance {:.4}, rho {:?}", m.mean, m.variance, m.rho);
    println!("cumulants {:?}", (1..=4).map(|l| law.cumulant(l)).collect::<Result<Vec<_>, _>>()?);

    let sum = convolve(&[law.clone(), law.clone(), DiscreteLaw::rademacher()], MAX_ATOMS)?;
    println!("convolution: {} atoms, variance {:.4}", sum.len(), sum.variance());

    let json = two_point_law(2.0)?.to_json();
    println!("P_2 as json: {json}");
    println!("roundtrip equal: {}", DiscreteLaw::from_json(&json)? == two_point_law(2.0)?);

    println!("B(6,1/2) masses {:?}", binomial_half(6)?.masses());
    println!("rho(exponential) = {:.6}", catalog_rho(Catalog::Exponential)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("laws");
}
