//! Finite-support probability laws.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal;

/// Default atom budget for convolution chains.
pub const MAX_ATOMS: usize = 2_000_000;

const RHO_SNAP: f64 = 8.0 * f64::EPSILON;

const MASS_TOL: f64 = 1e-9;

pub(crate) fn dedupe_tol(x: f64) -> f64 {
    1e-12 * x.abs().max(1.0)
}

/// A probability law with finitely many atoms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscreteLaw {
    atoms: Vec<f64>,
    masses: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentSummary {
    pub mean: f64,
    pub variance: f64,
    pub third_central_abs: f64,
    /// `None` for a degenerate law.
    pub rho: Option<f64>,
}

/// Builds a law from `(point, mass)` pairs, merging near-coincident atoms.
pub fn make_discrete(pairs: &[(f64, f64)]) -> Result<DiscreteLaw> {
    if pairs.is_empty() {
        return Err(Error::EmptySupport);
    }
    for &(x, m) in pairs {
        if !x.is_finite() {
            return Err(Error::BadInput(format!("non-finite atom {x}")));
        }
        if !(m >= 0.0) || !m.is_finite() {
            return Err(Error::BadMass(format!("mass {m} at {x}")));
        }
    }
    let total: f64 = pairs.iter().map(|p| p.1).sum();
    if total == 0.0 {
        return Err(Error::EmptySupport);
    }
    if (total - 1.0).abs() >= MASS_TOL {
        return Err(Error::BadMass(format!("total mass {total}")));
    }
    let mut sorted: Vec<(f64, f64)> = pairs.iter().copied().filter(|p| p.1 > 0.0).collect();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(merge_sorted(sorted, total))
}

fn merge_sorted(sorted: Vec<(f64, f64)>, total: f64) -> DiscreteLaw {
    let mut atoms: Vec<f64> = Vec::with_capacity(sorted.len());
    let mut masses: Vec<f64> = Vec::with_capacity(sorted.len());
    for (x, m) in sorted {
        match atoms.last() {
            Some(&last) if x - last <= dedupe_tol(last) => *masses.last_mut().unwrap() += m,
            _ => {
                atoms.push(x);
                masses.push(m);
            }
        }
    }
    // Leave exact inputs bit-for-bit unchanged.
    if (total - 1.0).abs() > 4.0 * f64::EPSILON {
        for m in &mut masses {
            *m /= total;
        }
    }
    DiscreteLaw { atoms, masses }
}

#[derive(Deserialize)]
struct LawFile {
    atoms: Vec<f64>,
    masses: Vec<f64>,
}

impl DiscreteLaw {
    pub fn point(x: f64) -> DiscreteLaw {
        DiscreteLaw { atoms: vec![x], masses: vec![1.0] }
    }

    pub fn from_parts(atoms: &[f64], masses: &[f64]) -> Result<DiscreteLaw> {
        if atoms.len() != masses.len() {
            return Err(Error::BadInput(format!(
                "{} atoms but {} masses",
                atoms.len(),
                masses.len()
            )));
        }
        let pairs: Vec<(f64, f64)> = atoms.iter().copied().zip(masses.iter().copied()).collect();
        make_discrete(&pairs)
    }

    /// Parses `{"atoms":[...], "masses":[...]}`.
    pub fn from_json(text: &str) -> Result<DiscreteLaw> {
        let f: LawFile = serde_json::from_str(text).map_err(|e| Error::BadInput(e.to_string()))?;
        DiscreteLaw::from_parts(&f.atoms, &f.masses)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("law serializes")
    }

    /// ½(δ₋₁ + δ₁).
    pub fn rademacher() -> DiscreteLaw {
        DiscreteLaw { atoms: vec![-1.0, 1.0], masses: vec![0.5, 0.5] }
    }

    /// Bernoulli law on {0, 1} with success probability `p`.
    pub fn bernoulli(p: f64) -> Result<DiscreteLaw> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::BadParam(format!("bernoulli p={p}")));
        }
        make_discrete(&[(0.0, 1.0 - p), (1.0, p)])
    }

    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.atoms.iter().copied().zip(self.masses.iter().copied())
    }

    pub fn min_atom(&self) -> f64 {
        self.atoms[0]
    }

    pub fn max_atom(&self) -> f64 {
        *self.atoms.last().unwrap()
    }

    pub fn expect<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.iter().map(|(x, m)| m * f(x)).sum()
    }

    /// Raw moment E X^k.
    pub fn moment(&self, k: u32) -> f64 {
        self.expect(|x| x.powi(k as i32))
    }

    /// Absolute moment E|X|^s.
    pub fn abs_moment(&self, s: f64) -> f64 {
        self.expect(|x| x.abs().powf(s))
    }

    pub fn mean(&self) -> f64 {
        self.expect(|x| x)
    }

    pub fn central_moment(&self, k: u32) -> f64 {
        let mu = self.mean();
        self.expect(|x| (x - mu).powi(k as i32))
    }

    pub fn variance(&self) -> f64 {
        self.central_moment(2)
    }

    pub fn sd(&self) -> f64 {
        self.variance().sqrt()
    }

    pub fn moments(&self) -> MomentSummary {
        let mean = self.mean();
        let variance = self.expect(|x| (x - mean).powi(2));
        let third_central_abs = self.expect(|x| (x - mean).abs().powi(3));
        // ν₃ ≥ σ³ always, and B has infinite slope at 1, so a few ulps of
        // roundoff around 1 are snapped to exactly 1.
        let rho = (variance > 0.0).then(|| {
            let r = third_central_abs / variance.powf(1.5);
            if r < 1.0 + RHO_SNAP {
                1.0
            } else {
                r
            }
        });
        MomentSummary { mean, variance, third_central_abs, rho }
    }

    /// ρ(P) = ν₃ of the standardized law.
    pub fn rho(&self) -> Result<f64> {
        self.moments().rho.ok_or(Error::DegenerateLaw)
    }

    pub fn standardize(&self) -> Result<DiscreteLaw> {
        let mean = self.mean();
        let variance = self.expect(|x| (x - mean).powi(2));
        if !(variance > 0.0) {
            return Err(Error::DegenerateLaw);
        }
        let sd = variance.sqrt();
        Ok(self.map_atoms(|x| (x - mean) / sd))
    }

    pub fn is_standardized(&self, tol: f64) -> bool {
        self.mean().abs() <= tol && (self.moment(2) - 1.0).abs() <= tol
    }

    /// Pushforward under `f`.
    pub fn map_atoms<F: Fn(f64) -> f64>(&self, f: F) -> DiscreteLaw {
        let pairs: Vec<(f64, f64)> = self.iter().map(|(x, m)| (f(x), m)).collect();
        let mut sorted = pairs;
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        merge_sorted(sorted, 1.0)
    }

    pub fn scale(&self, a: f64) -> DiscreteLaw {
        self.map_atoms(|x| a * x)
    }

    pub fn reflect(&self) -> DiscreteLaw {
        self.map_atoms(|x| -x)
    }

    pub fn cumulant(&self, ell: usize) -> Result<f64> {
        match ell {
            1 => Ok(self.mean()),
            2 => Ok(self.variance()),
            3 => Ok(self.central_moment(3)),
            4 => {
                let v = self.variance();
                Ok(self.central_moment(4) - 3.0 * v * v)
            }
            _ => Err(Error::BadOrder(ell)),
        }
    }

    /// Mixture Σ w_i P_i.
    pub fn mixture(parts: &[(f64, &DiscreteLaw)]) -> Result<DiscreteLaw> {
        let pairs: Vec<(f64, f64)> =
            parts.iter().flat_map(|(w, law)| law.iter().map(move |(x, m)| (x, w * m))).collect();
        make_discrete(&pairs)
    }

    /// n-fold convolution power.
    pub fn convolve_power(&self, n: usize) -> Result<DiscreteLaw> {
        if n == 0 {
            return Ok(DiscreteLaw::point(0.0));
        }
        let copies = vec![self.clone(); n];
        convolve(&copies, MAX_ATOMS)
    }
}

/// Exact convolution of a non-empty sequence of laws.
pub fn convolve(laws: &[DiscreteLaw], max_atoms: usize) -> Result<DiscreteLaw> {
    let (first, rest) = laws.split_first().ok_or(Error::BadInput("no laws to convolve".into()))?;
    let mut acc = first.clone();
    for law in rest {
        let count = acc.len().saturating_mul(law.len());
        if count > max_atoms {
            return Err(Error::SupportBlowup(max_atoms));
        }
        let mut pairs = Vec::with_capacity(count);
        for (x, m) in acc.iter() {
            for (y, w) in law.iter() {
                pairs.push((x + y, m * w));
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let total: f64 = pairs.iter().map(|p| p.1).sum();
        acc = merge_sorted(pairs, total);
    }
    Ok(acc)
}

/// Stirling remainder δ(x) = ln Γ(x+1) − [(x+½)ln x − x + ½ln 2π].
fn stirling_err(x: f64) -> f64 {
    if x < 15.0 {
        libm::lgamma(x + 1.0)
            - ((x + 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln())
    } else {
        let r = 1.0 / x;
        let r2 = r * r;
        r * (1.0 / 12.0
            - r2 * (1.0 / 360.0
                - r2 * (1.0 / 1260.0
                    - r2 * (1.0 / 1680.0
                        - r2 * (1.0 / 1188.0 - r2 * (691.0 / 360360.0 - r2 / 156.0))))))
    }
}

/// ln(C(n,k)/2^n), accurate to a few ulps even for large n.
pub fn ln_binom_half(n: u64, k: u64) -> f64 {
    assert!(k <= n);
    if k == 0 || k == n {
        return -(n as f64) * std::f64::consts::LN_2;
    }
    let (nf, kf, mf) = (n as f64, k as f64, (n - k) as f64);
    kf * ((nf - 2.0 * kf) / (2.0 * kf)).ln_1p()
        + mf * ((nf - 2.0 * mf) / (2.0 * mf)).ln_1p()
        + 0.5 * (nf / (2.0 * std::f64::consts::PI * kf * mf)).ln()
        + stirling_err(nf)
        - stirling_err(kf)
        - stirling_err(mf)
}

/// C(n,k)/2^n in floating point; exact while C(n,k) < 2^53.
pub fn binom_half_mass(n: u64, k: u64) -> f64 {
    assert!(k <= n);
    if n > 1000 {
        return ln_binom_half(n, k).exp();
    }
    let k = k.min(n - k);
    let mut c = 1.0f64;
    for i in 0..k {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c * 0.5f64.powi(n as i32)
}

/// B_{n,1/2} on atoms 0..n.
pub fn binomial_half(n: i64) -> Result<DiscreteLaw> {
    if n < 1 {
        return Err(Error::BadN(n));
    }
    let n = n as u64;
    let pairs: Vec<(f64, f64)> = (0..=n).map(|k| (k as f64, binom_half_mass(n, k))).collect();
    let total: f64 = pairs.iter().map(|p| p.1).sum();
    let pairs: Vec<(f64, f64)> = pairs.into_iter().map(|(x, m)| (x, m / total)).collect();
    Ok(DiscreteLaw { atoms: pairs.iter().map(|p| p.0).collect(), masses: pairs.iter().map(|p| p.1).collect() })
}

/// Exact masses C(n,k)/2^n, k = 0..n.
pub fn binomial_half_exact(n: i64) -> Result<Vec<BigRational>> {
    if n < 1 {
        return Err(Error::BadN(n));
    }
    let n = n as u64;
    let denom = BigUint::one() << n;
    let mut c = BigUint::one();
    let mut out = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        out.push(BigRational::new(c.clone().into(), denom.clone().into()));
        c = c * BigUint::from(n - k) / BigUint::from(k + 1);
    }
    Ok(out)
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Standardized B_{n,1/2}.
pub fn binomial_half_standardized(n: i64) -> Result<DiscreteLaw> {
    if n < 1 {
        return Err(Error::BadN(n));
    }
    let law = binomial_half(n)?;
    let half = n as f64 / 2.0;
    let scale = 2.0 / (n as f64).sqrt();
    Ok(law.map_atoms(|x| (x - half) * scale))
}

/// The standardized two-point law P_ρ with ν₃ = ρ and μ₃ ≥ 0.
pub fn two_point_law(rho: f64) -> Result<DiscreteLaw> {
    let ep = extremal::extremal_params(rho)?;
    let (p, q) = (ep.p, 1.0 - ep.p);
    if p == 0.5 {
        return Ok(DiscreteLaw::rademacher());
    }
    Ok(DiscreteLaw { atoms: vec![-(p / q).sqrt(), (q / p).sqrt()], masses: vec![q, p] })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Catalog {
    Exponential,
    Uniform,
    Bernoulli(f64),
    Poisson(f64),
    Geometric(f64),
}

/// ρ of a named law.
pub fn catalog_rho(name: Catalog) -> Result<f64> {
    match name {
        Catalog::Exponential => Ok(12.0 / std::f64::consts::E - 2.0),
        Catalog::Uniform => Ok(3.0 * 3f64.sqrt() / 4.0),
        Catalog::Bernoulli(p) => {
            if !(p > 0.0 && p <= 0.5) {
                return Err(Error::BadParam(format!("bernoulli p={p}")));
            }
            let q = 1.0 - p;
            Ok((p * p + q * q) / (p * q).sqrt())
        }
        Catalog::Poisson(lambda) => {
            if !(lambda > 0.0 && lambda.is_finite()) {
                return Err(Error::BadParam(format!("poisson lambda={lambda}")));
            }
            let ln_l = lambda.ln();
            let ln_pmf = |k: f64| -lambda + k * ln_l - libm::lgamma(k + 1.0);
            Ok(series_rho(ln_pmf, lambda, lambda))
        }
        Catalog::Geometric(p) => {
            if !(p > 0.0 && p < 1.0) {
                return Err(Error::BadParam(format!("geometric p={p}")));
            }
            let q = 1.0 - p;
            let ln_p = p.ln();
            let ln_q = q.ln();
            Ok(series_rho(|k| ln_p + k * ln_q, q / p, q / (p * p)))
        }
    }
}

/// ν₃/σ³ for a law on 0,1,2,… with log-pmf `ln_pmf`, summing until both the
/// remaining mass and the remaining cubic weight fall below 1e-15.
fn series_rho<F: Fn(f64) -> f64>(ln_pmf: F, mean: f64, variance: f64) -> f64 {
    let mut abs3 = 0.0;
    let mut k = 0u64;
    loop {
        let kf = k as f64;
        let pk = ln_pmf(kf).exp();
        let next = ln_pmf(kf + 1.0).exp();
        abs3 += pk * (kf - mean).abs().powi(3);
        if kf > mean + 1.0 && next < pk {
            let ratio = next / pk;
            let cube_ratio = ratio * ((kf + 2.0 - mean) / (kf + 1.0 - mean)).powi(3);
            let mass_tail = next / (1.0 - ratio);
            let cube_tail = next * (kf + 1.0 - mean).powi(3) / (1.0 - cube_ratio).max(1e-300);
            if cube_ratio < 1.0 && mass_tail < 1e-15 && cube_tail < 1e-15 * abs3.max(1e-300) {
                break;
            }
        }
        k += 1;
    }
    abs3 / variance.powf(1.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn make_discrete_examples() {
        let q = make_discrete(&[(-1.0, 0.5), (1.0, 0.5)]).unwrap();
        assert_eq!(q, DiscreteLaw::rademacher());
        let d = make_discrete(&[(0.0, 0.3), (1e-15, 0.2), (1.0, 0.5)]).unwrap();
        assert_eq!(d.atoms(), &[0.0, 1.0]);
        assert_abs_diff_eq!(d.masses()[0], 0.5, epsilon = 1e-15);
        assert!(matches!(make_discrete(&[(0.0, 0.5), (1.0, 0.6)]), Err(Error::BadMass(_))));
        assert!(matches!(make_discrete(&[(0.0, 0.0)]), Err(Error::EmptySupport)));
        assert!(matches!(make_discrete(&[(0.0, -0.1), (1.0, 1.1)]), Err(Error::BadMass(_))));
    }

    #[test]
    fn moment_examples() {
        let m = DiscreteLaw::rademacher().moments();
        assert_eq!((m.mean, m.variance, m.rho), (0.0, 1.0, Some(1.0)));
        let b = DiscreteLaw::bernoulli(0.1).unwrap();
        assert_abs_diff_eq!(b.rho().unwrap(), 0.82 / 0.09f64.sqrt(), epsilon = 1e-12);
        assert_eq!(DiscreteLaw::point(0.0).moments().rho, None);
        assert!(matches!(DiscreteLaw::point(0.0).standardize(), Err(Error::DegenerateLaw)));
    }

    #[test]
    fn standardize_examples() {
        let s = make_discrete(&[(0.0, 0.5), (2.0, 0.5)]).unwrap().standardize().unwrap();
        assert_eq!(s, DiscreteLaw::rademacher());
        let b2 = binomial_half(2).unwrap().standardize().unwrap();
        let r2 = 2f64.sqrt();
        for (got, want) in b2.atoms().iter().zip([-r2, 0.0, r2]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-15);
        }
        assert_eq!(b2.masses(), &[0.25, 0.5, 0.25]);
    }

    #[test]
    fn cumulant_examples() {
        assert_eq!(DiscreteLaw::rademacher().cumulant(4).unwrap(), -2.0);
        assert!(matches!(DiscreteLaw::rademacher().cumulant(5), Err(Error::BadOrder(5))));
    }

    #[test]
    fn convolution_examples() {
        let q = DiscreteLaw::rademacher();
        let qq = convolve(&[q.clone(), q], MAX_ATOMS).unwrap();
        assert_eq!(qq.atoms(), &[-2.0, 0.0, 2.0]);
        assert_eq!(qq.masses(), &[0.25, 0.5, 0.25]);
        let coin = make_discrete(&[(0.0, 0.5), (1.0, 0.5)]).unwrap();
        let b5 = coin.convolve_power(5).unwrap();
        let exact = binomial_half(5).unwrap();
        for (a, b) in b5.masses().iter().zip(exact.masses()) {
            assert_abs_diff_eq!(*a, *b, epsilon = 1e-15);
        }
        let big = binomial_half(100).unwrap();
        assert!(matches!(convolve(&[big.clone(), big], 1000), Err(Error::SupportBlowup(1000))));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial_half(1).unwrap().masses(), &[0.5, 0.5]);
        assert_eq!(binomial_half(2).unwrap().masses(), &[0.25, 0.5, 0.25]);
        let b20 = binomial_half(20).unwrap();
        assert_abs_diff_eq!(b20.masses()[10], 184756.0 / 1048576.0, epsilon = 1e-16);
        let exact = binomial_half_exact(20).unwrap();
        assert_eq!(exact[10], BigRational::new(184756.into(), 1048576.into()));
        assert!(matches!(binomial_half(0), Err(Error::BadN(0))));
    }

    #[test]
    fn binomial_float_matches_exact() {
        for n in [1i64, 7, 33, 64, 150, 200] {
            let f = binomial_half(n).unwrap();
            let e = binomial_half_exact(n).unwrap();
            let sum: f64 = f.masses().iter().sum();
            assert!((sum - 1.0).abs() < 1e-14);
            for (a, b) in f.masses().iter().zip(&e) {
                let b = rational_to_f64(b);
                assert!((a - b).abs() <= 1e-13 * b, "n={n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn central_mass_large_n() {
        // b(5000) for n = 10^4 from the exact rational.
        let mut c = BigUint::one();
        for i in 0..5000u32 {
            c = c * BigUint::from(10_000 - i) / BigUint::from(i + 1);
        }
        let want = rational_to_f64(&BigRational::new(c.into(), (BigUint::one() << 10_000u32).into()));
        let got = binom_half_mass(10_000, 5000);
        assert!((got - want).abs() <= 1e-12 * want);
    }

    #[test]
    fn two_point_examples() {
        assert_eq!(two_point_law(1.0).unwrap(), DiscreteLaw::rademacher());
        let c = extremal::classical_constants();
        let p = two_point_law(c.rho_e).unwrap();
        assert_abs_diff_eq!(p.masses()[1], (4.0 - 10f64.sqrt()) / 2.0, epsilon = 1e-12);
        let l = two_point_law(1.5).unwrap();
        assert_abs_diff_eq!(l.rho().unwrap(), 1.5, epsilon = 1e-9);
        assert!(matches!(two_point_law(0.9), Err(Error::BadRho(_))));
    }

    #[test]
    fn catalog_examples() {
        assert_abs_diff_eq!(catalog_rho(Catalog::Exponential).unwrap(), 2.4145, epsilon = 1e-4);
        assert_abs_diff_eq!(catalog_rho(Catalog::Uniform).unwrap(), 1.2990, epsilon = 1e-4);
        assert_abs_diff_eq!(catalog_rho(Catalog::Poisson(1.0)).unwrap(), 1.7357, epsilon = 1e-4);
        assert_abs_diff_eq!(catalog_rho(Catalog::Geometric(0.1)).unwrap(), 2.4158, epsilon = 1e-4);
        assert!(catalog_rho(Catalog::Bernoulli(0.7)).is_err());
        assert!(catalog_rho(Catalog::Poisson(-1.0)).is_err());
    }

    #[test]
    fn poisson_series_matches_brute_force() {
        for lambda in [0.3f64, 1.0, 4.0, 30.0] {
            let mut p = (-lambda).exp();
            let mut acc = 0.0;
            for k in 0..2000 {
                acc += p * (k as f64 - lambda).abs().powi(3);
                p *= lambda / (k as f64 + 1.0);
            }
            let want = acc / lambda.powf(1.5);
            let got = catalog_rho(Catalog::Poisson(lambda)).unwrap();
            assert!((got - want).abs() < 1e-12, "{lambda}: {got} vs {want}");
        }
    }

    #[test]
    fn json_roundtrip() {
        let law = DiscreteLaw::from_json(r#"{"atoms":[1, -1], "masses":[0.5, 0.5]}"#).unwrap();
        assert_eq!(law, DiscreteLaw::rademacher());
        assert_eq!(DiscreteLaw::from_json(&law.to_json()).unwrap(), law);
        assert!(DiscreteLaw::from_json(r#"{"atoms":[1], "masses":[0.5, 0.5]}"#).is_err());
    }
}
