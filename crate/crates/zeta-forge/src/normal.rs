//! Tails of the standard normal law.
//!
//! T_k(t) = E(Z−t)_+^{k−1}/(k−1)! = J_{k−1}(t)/(k−1)!, with J_0 = Q, J_1 = φ − tQ
//! and J_m = (m−1)J_{m−2} − tJ_{m−1}.

use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 6;

pub fn pdf(t: f64) -> f64 {
    (-0.5 * t * t).exp() / (2.0 * PI).sqrt()
}

/// Q(t) = 1 − Φ(t).
pub fn upper_tail(t: f64) -> f64 {
    0.5 * libm::erfc(t / std::f64::consts::SQRT_2)
}

/// J_0..J_{MAX_ORDER−1} at t. The upward recurrence cancels badly for large
/// t, so there the minimal solution is taken by Miller's backward recurrence.
fn partial_moments(t: f64) -> [f64; MAX_ORDER] {
    let mut j = [0.0; MAX_ORDER];
    if t <= 1.5 {
        j[0] = upper_tail(t);
        j[1] = pdf(t) - t * j[0];
        for m in 2..MAX_ORDER {
            j[m] = (m as f64 - 1.0) * j[m - 2] - t * j[m - 1];
        }
        return j;
    }
    let top = 160usize;
    let mut hi = 0.0;
    let mut lo = 1.0;
    let mut keep = [0.0; MAX_ORDER];
    // (hi, lo) = (J_{m+1}, J_m) up to a common scale.
    for m in (1..=top).rev() {
        // J_{m−1} = (J_{m+1} + t J_m)/m
        let prev = (hi + t * lo) / m as f64;
        hi = lo;
        lo = prev;
        if m - 1 < MAX_ORDER {
            keep[m - 1] = lo;
        }
        if m == 1 {
            keep[1] = hi;
        }
        let mag = lo.abs();
        if !(1e-150..=1e150).contains(&mag) {
            let r = 1.0 / mag;
            hi *= r;
            lo *= r;
            for v in keep.iter_mut() {
                *v *= r;
            }
        }
    }
    let scale = upper_tail(t) / keep[0];
    for m in 0..MAX_ORDER {
        j[m] = keep[m] * scale;
    }
    j
}

const FACT: [f64; MAX_ORDER] = [1.0, 1.0, 2.0, 6.0, 24.0, 120.0];

/// T_k(t) for k in 1..=MAX_ORDER.
pub fn normal_tail(k: usize, t: f64) -> Result<f64> {
    if !(1..=MAX_ORDER).contains(&k) {
        return Err(Error::BadOrder(k));
    }
    Ok(partial_moments(t)[k - 1] / FACT[k - 1])
}

/// All of T_1..T_MAX_ORDER at t.
pub fn normal_tails(t: f64) -> [f64; MAX_ORDER] {
    let j = partial_moments(t);
    let mut out = [0.0; MAX_ORDER];
    for m in 0..MAX_ORDER {
        out[m] = j[m] / FACT[m];
    }
    out
}

/// E|Z|³.
pub fn abs_third_moment() -> f64 {
    4.0 / (2.0 * PI).sqrt()
}
