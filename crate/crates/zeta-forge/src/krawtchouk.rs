//! Krawtchouk polynomials for the symmetric binomial law.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::laws::{binom_half_mass, binomial_half_exact};

/// P^n_k(x) by the three-term recursion.
pub fn kraw_eval(n: u64, k: u64, x: f64) -> f64 {
    let nf = n as f64;
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = nf - 2.0 * x;
    for j in 1..k {
        let jf = j as f64;
        let next = ((nf - 2.0 * x) * cur - (nf - jf + 1.0) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// P^n_k(x) by the recursion in exact rational arithmetic.
pub fn kraw_eval_exact(n: u64, k: u64, x: &BigRational) -> BigRational {
    let nr = rat(n as i64);
    let lin = &nr - x * rat(2);
    let mut prev = BigRational::one();
    if k == 0 {
        return prev;
    }
    let mut cur = lin.clone();
    for j in 1..k {
        let next = (&lin * &cur - (&nr - rat(j as i64) + rat(1)) * &prev) / rat(j as i64 + 1);
        prev = cur;
        cur = next;
    }
    cur
}

fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut c = BigUint::one();
    for i in 0..k {
        c = c * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    c.into()
}

/// P^n_k(x) = Σ_j (−1)^j C(x,j) C(n−x,k−j) for integer 0 ≤ x ≤ n.
pub fn kraw_sum_definition(n: u64, k: u64, x: u64) -> BigInt {
    assert!(x <= n);
    let mut acc = BigInt::zero();
    for j in 0..=k {
        let term = binom(x, j) * binom(n - x, k - j);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn check_partial(n: u64, k: u64, a: u64) -> Result<()> {
    if n < 1 || k < 1 || a > n {
        return Err(Error::BadIndex(format!("n={n}, k={k}, a={a}")));
    }
    Ok(())
}

/// Σ_{x=0}^a P^n_k(x) b_{n,1/2}(x) via ((n−a)/k)·P^{n−1}_{k−1}(a)·b_{n,1/2}(a).
pub fn kraw_partial_sum(n: u64, k: u64, a: u64) -> Result<f64> {
    check_partial(n, k, a)?;
    let closed = ((n - a) as f64 / k as f64) * kraw_eval(n - 1, k - 1, a as f64) * binom_half_mass(n, a);
    let (direct, scale) = (0..=a).fold((0.0, 0.0), |(s, m), x| {
        let t = kraw_eval(n, k, x as f64) * binom_half_mass(n, x);
        (s + t, m + t.abs())
    });
    assert!(
        (closed - direct).abs() <= 1e-10 * scale.max(1.0),
        "closed summation failed at n={n}, k={k}, a={a}: {closed} vs {direct}"
    );
    Ok(closed)
}

/// Exact `(closed form, direct sum)` pair for the partial sum.
pub fn kraw_partial_sum_exact(n: u64, k: u64, a: u64) -> Result<(BigRational, BigRational)> {
    check_partial(n, k, a)?;
    let b = binomial_half_exact(n as i64)?;
    let ar = rat(a as i64);
    let closed = rat((n - a) as i64) / rat(k as i64) * kraw_eval_exact(n - 1, k - 1, &ar) * &b[a as usize];
    let mut direct = BigRational::zero();
    for x in 0..=a {
        direct += kraw_eval_exact(n, k, &rat(x as i64)) * &b[x as usize];
    }
    Ok((closed, direct))
}

/// Third absolute central moment of B_{n,1/2}, raw or standardized, by closed form.
pub fn binom_abs3(n: i64, standardized: bool) -> Result<f64> {
    if n < 1 {
        return Err(Error::BadN(n));
    }
    let nu = n as u64;
    let nf = n as f64;
    let b = binom_half_mass(nu, nu / 2);
    Ok(match (nu.is_multiple_of(2), standardized) {
        (true, false) => 0.25 * nf * nf * b,
        (false, false) => (0.25 * nf * nf + 0.125 * nf - 0.125) * b,
        (true, true) => 2.0 * nf.sqrt() * b,
        (false, true) => (2.0 * nf.sqrt() + 1.0 / nf.sqrt() - nf.powf(-1.5)) * b,
    })
}

/// Raw Σ|x−n/2|³ b(x) by the closed form, exactly.
pub fn binom_abs3_raw_exact(n: i64) -> Result<BigRational> {
    if n < 1 {
        return Err(Error::BadN(n));
    }
    let b = binomial_half_exact(n)?;
    let mid = &b[(n / 2) as usize];
    let nr = rat(n);
    let factor = if n % 2 == 0 {
        &nr * &nr / rat(4)
    } else {
        &nr * &nr / rat(4) + &nr / rat(8) - BigRational::new(1.into(), 8.into())
    };
    Ok(factor * mid)
}

/// Raw Σ|x−n/2|³ b(x) by enumeration, exactly.
pub fn binom_abs3_raw_enumerate_exact(n: i64) -> Result<BigRational> {
    let b = binomial_half_exact(n)?;
    let half = BigRational::new(BigInt::from(n), BigInt::from(2));
    let mut acc = BigRational::zero();
    for (x, m) in b.iter().enumerate() {
        let d = (rat(x as i64) - &half).abs();
        acc += &d * &d * &d * m;
    }
    Ok(acc)
}

/// Third absolute central moment by enumeration in floating point.
pub fn binom_abs3_enumerate(n: i64, standardized: bool) -> Result<f64> {
    if n < 1 {
        return Err(Error::BadN(n));
    }
    let nu = n as u64;
    let half = n as f64 / 2.0;
    let raw: f64 = (0..=nu).map(|x| (x as f64 - half).abs().powi(3) * binom_half_mass(nu, x)).sum();
    Ok(if standardized { raw * 8.0 / (n as f64).powf(1.5) } else { raw })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws::rational_to_f64;
    use approx::assert_abs_diff_eq;

    #[test]
    fn low_order_closed_forms() {
        assert_eq!(kraw_eval(5, 1, 2.0), 1.0);
        assert_eq!(kraw_eval(4, 2, 2.0), -2.0);
        for n in 0..10u64 {
            for i in 0..=20 {
                let x = i as f64 * 0.37 - 1.0;
                let y = x - n as f64 / 2.0;
                assert_eq!(kraw_eval(n, 0, x), 1.0);
                assert_abs_diff_eq!(kraw_eval(n, 1, x), -2.0 * y, epsilon = 1e-12);
                assert_abs_diff_eq!(kraw_eval(n, 2, x), 2.0 * (y * y - n as f64 / 4.0), epsilon = 1e-11);
                let p3 = -(4.0 / 3.0) * y.powi(3) + (n as f64 - 2.0 / 3.0) * y;
                assert_abs_diff_eq!(kraw_eval(n, 3, x), p3, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn recursion_matches_sum_definition() {
        for x in 0..=6u64 {
            let def = kraw_sum_definition(6, 3, x);
            assert_eq!(kraw_eval_exact(6, 3, &rat(x as i64)), BigRational::from_integer(def.clone()));
            assert_eq!(kraw_eval(6, 3, x as f64), rational_to_f64(&BigRational::from_integer(def)));
        }
    }

    #[test]
    fn partial_sum_examples() {
        assert_abs_diff_eq!(kraw_partial_sum(4, 1, 2).unwrap(), 0.75, epsilon = 1e-15);
        assert_eq!(kraw_partial_sum(1, 1, 1).unwrap(), 0.0);
        let (c, d) = kraw_partial_sum_exact(7, 3, 3).unwrap();
        assert_eq!(c, d);
        assert!(matches!(kraw_partial_sum(4, 0, 2), Err(Error::BadIndex(_))));
        assert!(matches!(kraw_partial_sum(4, 1, 5), Err(Error::BadIndex(_))));
    }

    #[test]
    fn abs3_examples() {
        assert_abs_diff_eq!(binom_abs3(2, true).unwrap(), 2f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(binom_abs3(1, true).unwrap(), 1.0, epsilon = 1e-15);
        let enumerated = binom_abs3_enumerate(9, true).unwrap();
        assert_abs_diff_eq!(binom_abs3(9, true).unwrap(), enumerated, epsilon = 1e-12);
        assert!(matches!(binom_abs3(0, true), Err(Error::BadN(0))));
    }

    #[test]
    fn odd_third_moment_vanishes() {
        for n in 1..=30i64 {
            let b = binomial_half_exact(n).unwrap();
            let half = BigRational::new(BigInt::from(n), BigInt::from(2));
            let mut acc = BigRational::zero();
            for (x, m) in b.iter().enumerate() {
                let d = rat(x as i64) - &half;
                acc += &d * &d * &d * m;
            }
            assert!(acc.is_zero());
        }
    }
}
