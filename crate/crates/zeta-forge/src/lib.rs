//! Zolotarev ζ_s distances for finite-support laws, the extremal function
//! B(ρ), and numerical certificates for sharpened Berry-Esseen-type bounds.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod extremal;
pub mod fmt;
pub mod krawtchouk;
pub mod laws;
pub mod normal;
pub mod osculation;
pub mod piecewise;
pub mod quad;
pub mod random;
pub mod reduction;
pub mod zeta;

pub use error::{Error, Result};
pub use laws::DiscreteLaw;
