// The majorant |x − r|³ ≤ a + bx + cx² + d|x|³ touching at two points.

use zeta_forge::osculation::{
    default_window, dominance_report, hermite_two_point, oscul_coeffs, recentered_abs3_bound, DOMINANCE_GRID,
};
use zeta_forge::DiscreteLaw;

pub fn run_example() -> zeta_forge::Result<()> {
    let c = oscul_coeffs(-1.0, 1.5, 2.0 / 3.0)?;
    println!("a={:.6} b={:.6} c={:.6} d={:.6} ({:?})", c.a, c.b, c.c, c.d, c.branch);
    let (lo, hi) = default_window(&c);
    let rep = dominance_report(&c, lo, hi, DOMINANCE_GRID);
    println!("touching at {:?}, min g-f = {:.3e}", c.nodes(), rep.min_margin);
    for x in [-3.0, -1.0, -2.0 / 3.0, 0.0, 1.5, 3.0] {
        println!("  x={x:>7.3}  g-f={:.6}", c.g(x) - c.f(x));
    }

    let b = recentered_abs3_bound(&DiscreteLaw::rademacher(), -1.0, 1.5, 2.0 / 3.0)?;
    println!("E|X+1|^3 = {:.6} <= {:.6}", b.lhs, b.rhs);

    // Value and slope prescribed at both ends.
    let p = hermite_two_point(0.0, 2.0, &[1.0, 0.0], &[0.0, -1.0])?;
    println!("hermite coefficients {:?}", p.coeffs());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("osculation");
}
