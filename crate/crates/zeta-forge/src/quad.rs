//! Adaptive quadrature on finite intervals.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quad {
    pub value: f64,
    pub error: f64,
}

const MAX_DEPTH: u32 = 40;

/// ∫_a^b f to absolute error `tol`, bisecting when the double-exponential
/// rule reports a larger error.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<Quad> {
    if a == b {
        return Ok(Quad { value: 0.0, error: 0.0 });
    }
    let first = quadrature::double_exponential::integrate(f, a, b, tol);
    // Below this the rule only reports its own rounding noise.
    let floor = 5e-14 * first.integral.abs() / (b - a).abs();
    if first.error_estimate <= tol.max(floor * (b - a).abs()) {
        return Ok(Quad { value: first.integral, error: first.error_estimate });
    }
    step(f, a, b, tol, floor, 0)
}

fn step<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, floor: f64, depth: u32) -> Result<Quad> {
    let out = quadrature::double_exponential::integrate(f, a, b, tol);
    if out.error_estimate <= tol.max(floor * (b - a).abs()) {
        return Ok(Quad { value: out.integral, error: out.error_estimate });
    }
    if depth >= MAX_DEPTH {
        return Err(Error::QuadratureFailed(a, b));
    }
    let m = 0.5 * (a + b);
    let l = step(f, a, m, 0.5 * tol, floor, depth + 1)?;
    let r = step(f, m, b, 0.5 * tol, floor, depth + 1)?;
    Ok(Quad { value: l.value + r.value, error: l.error + r.error })
}

/// Composite trapezoid rule, used as an independent oracle in tests.
pub fn trapezoid<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, steps: usize) -> f64 {
    let h = (b - a) / steps as f64;
    let inner: f64 = (1..steps).map(|i| f(a + h * i as f64)).sum();
    h * (0.5 * (f(a) + f(b)) + inner)
}
