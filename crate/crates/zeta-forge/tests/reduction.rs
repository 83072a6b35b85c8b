use zeta_forge::extremal::b_of_rho;
use zeta_forge::random::{random_law, random_standardized, stream};
use zeta_forge::reduction::*;
use zeta_forge::zeta::zeta_discrete;
use zeta_forge::DiscreteLaw;

const SEED: u64 = 99;

fn id(x: f64) -> f64 {
    x
}
fn sq(x: f64) -> f64 {
    x * x
}
fn cube_abs(x: f64) -> f64 {
    x.abs().powi(3)
}

const ALL: [Constraint<'static>; 3] = [&id, &sq, &cube_abs];

#[test]
fn decomposition_reconstructs_and_preserves_constraints() {
    for i in 0..100u64 {
        let k = 1 + (i % 3) as usize;
        let law = random_law(&mut stream(SEED, i), 4, 9).unwrap();
        let cons = &ALL[..k];
        let dec = extreme_point_decompose(&law, cons).unwrap();
        assert!((dec.weights.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        assert!(dec.weights.iter().all(|&w| w > 0.0));
        assert!(dec.reconstruction_error(&law) <= 1e-10, "instance {i}");
        assert!(dec.constraint_error(&law, cons) <= 1e-9, "instance {i}");
        assert!(dec.parts.iter().all(|p| p.len() <= k + 1));
        let rebuilt = dec.reconstruct().unwrap();
        assert!(rebuilt.atoms().iter().all(|x| law.atoms().contains(x)));

        let one = richter_reduce(&law, cons).unwrap();
        assert!(one.len() <= k + 1);
        for f in cons {
            assert!((one.expect(f) - law.expect(f)).abs() <= 1e-9);
        }
    }
}

#[test]
fn objective_is_quasi_convex_over_parts() {
    let q = DiscreteLaw::rademacher();
    let objective = |p: &DiscreteLaw| zeta_discrete(p, &q, 3).unwrap() - b_of_rho(p.rho().unwrap()).unwrap() / 6.0;
    for i in 0..100u64 {
        let law = random_standardized(&mut stream(SEED + 1, i), 4, 9).unwrap();
        let dec = extreme_point_decompose(&law, &ALL).unwrap();
        let best = dec.parts.iter().map(&objective).fold(f64::NEG_INFINITY, f64::max);
        assert!(best >= objective(&law) - 1e-9, "instance {i}");
        assert!(objective(&law) <= 1e-9);
    }
}

#[test]
fn three_point_masses_standardize() {
    let m = three_point_masses(-1.0, 0.5, 2.0).unwrap();
    let law = DiscreteLaw::from_parts(&[-1.0, 0.5, 2.0], &m).unwrap();
    assert!(law.is_standardized(1e-12));
    assert!(three_point_masses(0.5, 1.0, 2.0).is_none());
}

#[test]
fn search_certifies_small_grid() {
    for rho in [1.0, 1.5, 3.0] {
        let s = extremal_three_point_search(rho, 40).unwrap();
        assert!(s.certified(), "rho {rho}: {} vs {}", s.sup_value, s.bound);
    }
    assert!(extremal_three_point_search(0.9, 40).is_err());
}
