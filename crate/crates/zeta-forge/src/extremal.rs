//! The extremal functions B, A, h, p of ρ and the classical constants.

use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtremalParams {
    pub rho: f64,
    /// Mass at the positive atom of P_ρ.
    pub p: f64,
    /// Lattice span 1/√(pq).
    pub h: f64,
    pub b: f64,
    pub a: f64,
}

/// B(ρ)² = 8(ρ²−1)/(ρ√(ρ²+8) + 4 − ρ²); the denominator exceeds 4, so this
/// form stays accurate as ρ → 1.
fn b_squared(rho: f64) -> f64 {
    let s = (rho * rho + 8.0).sqrt();
    8.0 * (rho - 1.0) * (rho + 1.0) / (rho * s + 4.0 - rho * rho)
}

fn check_rho(rho: f64) -> Result<()> {
    if rho >= 1.0 && rho.is_finite() {
        Ok(())
    } else {
        Err(Error::BadRho(rho))
    }
}

pub fn b_of_rho(rho: f64) -> Result<f64> {
    check_rho(rho)?;
    Ok(b_squared(rho).sqrt())
}

pub fn extremal_params(rho: f64) -> Result<ExtremalParams> {
    check_rho(rho)?;
    let b = b_squared(rho).sqrt();
    // pq = 1/(B²+4) and q−p = B/√(B²+4).
    let h = (b * b + 4.0).sqrt();
    let p = 2.0 / (h * (h + b));
    Ok(ExtremalParams { rho, p, h, b, a: b / rho })
}

/// The textbook expressions, used to cross-check the stable forms.
pub fn extremal_params_naive(rho: f64) -> ExtremalParams {
    let s = (rho * rho + 8.0).sqrt();
    let b = (rho * rho / 2.0 + rho * s / 2.0 - 2.0).max(0.0).sqrt();
    let p = 0.5 - 0.5 * ((rho / 2.0) * s - rho * rho / 2.0 - 1.0).max(0.0).sqrt();
    let h = 2.0 * 2f64.sqrt() / (rho * rho - rho * s + 4.0).sqrt();
    let a = (0.5 * (1.0 + 8.0 / (rho * rho)).sqrt() + 0.5 - 2.0 / (rho * rho)).max(0.0).sqrt();
    ExtremalParams { rho, p, h, b, a }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassicalConstants {
    pub c_e: f64,
    pub rho_e: f64,
    pub rho_0: f64,
    pub p_e: f64,
}

pub fn classical_constants() -> ClassicalConstants {
    let s10 = 10f64.sqrt();
    ClassicalConstants {
        c_e: (s10 + 3.0) / (6.0 * (2.0 * PI).sqrt()),
        rho_e: (20.0 * (s10 - 3.0) / 3.0).sqrt(),
        rho_0: 3f64.powf(0.25) * (4.0 - 3f64.sqrt()) / 6f64.sqrt(),
        p_e: (4.0 - s10) / 2.0,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GFunction {
    G0,
    G1,
    G2,
}

pub fn g_function(which: GFunction, rho: f64) -> Result<f64> {
    check_rho(rho)?;
    let root2pi = (2.0 * PI).sqrt();
    Ok(match which {
        GFunction::G0 => {
            let s = (rho * rho + 8.0).sqrt();
            let inner = (rho * s - rho * rho - 2.0).max(0.0).sqrt();
            (2.0 * inner + 6.0 * 2f64.sqrt()) / (6.0 * root2pi * (rho * rho - rho * s + 4.0).sqrt())
        }
        GFunction::G1 => classical_constants().c_e * rho,
        GFunction::G2 => 2.0 * rho / (3.0 * root2pi) + ((2.0 * 3f64.sqrt() - 3.0) / (6.0 * PI)).sqrt(),
    })
}
