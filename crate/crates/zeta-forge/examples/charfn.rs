// Characteristic-function inequalities.

use zeta_forge::bounds::{charfn_bound, prod_cos_margin, taylor_charfn_bound};
use zeta_forge::laws::two_point_law;
use zeta_forge::DiscreteLaw;

pub fn run_example() -> zeta_forge::Result<()> {
    let b = DiscreteLaw::bernoulli(0.3)?;
    for t in [0.1, 0.5, 1.0, 1.7, 3.0] {
        let c = charfn_bound(t, &[b.clone(), b.clone(), b.clone()])?;
        println!("t={t}: |phi - prod cos| = {:.3e} <= {:.3e}", c.lhs_abs, c.rhs);
    }

    let p = two_point_law(1.3)?;
    for t in [1e-2, 0.1, 1.0] {
        let tb = taylor_charfn_bound(1.3, t, Some(&p))?;
        println!("taylor t={t}: {:.3e} <= {:.3e}", tb.lhs_abs.unwrap_or(f64::NAN), tb.rhs);
    }

    let m = prod_cos_margin(&[0.3, -1.2, 0.8]);
    println!("prod cos: {} <= {:.6} <= {:.6}", m.lower, m.value, m.upper);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("charfn");
}
