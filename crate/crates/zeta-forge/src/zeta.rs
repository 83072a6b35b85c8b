//! Zolotarev ζ_s distances through the tail functions H̄_k = Ḡ_k − F̄_k.
//!
//! For laws P, Q whose moments of order 1..s−1 agree, ζ_s(P,Q) = ∫|H̄_s|,
//! where F̄_k(t) = ∫(x−t)_+^{k−1}/(k−1)! dP(x) and Ḡ_k is the same for Q.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::krawtchouk::binom_abs3;
use crate::laws::{binomial_half_standardized, dedupe_tol, DiscreteLaw};
use crate::normal::{self, normal_tail};
use crate::piecewise::{real_roots_in, PiecewisePoly, SignChangeReport, Side};
use crate::quad;

/// ζ(½).
pub const ZETA_HALF: f64 = -1.460_354_508_809_586_8;

/// Grid size used to bracket sign changes against the normal law.
pub const BRACKET_GRID: usize = 4096;

/// Half-width added around the support when integrating against the normal law.
pub const NORMAL_PAD: f64 = 10.0;

const MOMENT_TOL: f64 = 1e-9;

/// Either side of a ζ computation.
#[derive(Clone, Copy, Debug)]
pub enum LawArg<'a> {
    Discrete(&'a DiscreteLaw),
    Normal,
}

/// sign·(T_k − F̄_k^P), evaluated through the mirrored left tails for t < 0.
#[derive(Clone, Debug)]
pub struct NormalDiff {
    k: usize,
    sign: f64,
    law: DiscreteLaw,
    right: PiecewisePoly,
    left: PiecewisePoly,
}

impl NormalDiff {
    fn new(law: &DiscreteLaw, k: usize, sign: f64) -> NormalDiff {
        let ones = law.masses();
        NormalDiff {
            k,
            sign,
            law: law.clone(),
            right: PiecewisePoly::tail_sum(law.atoms(), ones, k, Side::Right),
            left: PiecewisePoly::tail_sum(law.atoms(), ones, k, Side::Left),
        }
    }

    pub fn law(&self) -> &DiscreteLaw {
        &self.law
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn eval(&self, t: f64) -> f64 {
        let v = if t > self.law.max_atom() {
            normal_tail(self.k, t).unwrap()
        } else if t >= 0.0 {
            normal_tail(self.k, t).unwrap() - self.right.eval(t)
        } else {
            let mirror = if self.k.is_multiple_of(2) { 1.0 } else { -1.0 };
            let left = if t <= self.law.min_atom() { 0.0 } else { self.left.eval(t) };
            mirror * (normal_tail(self.k, -t).unwrap() - left)
        };
        self.sign * v
    }
}

/// Evaluator for H̄_k.
#[derive(Clone, Debug)]
pub enum TailFunction {
    Piecewise(PiecewisePoly),
    Normal { k: usize },
    NormalDiff(NormalDiff),
}

impl TailFunction {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            TailFunction::Piecewise(p) => p.eval(t),
            TailFunction::Normal { k } => normal_tail(*k, t).unwrap(),
            TailFunction::NormalDiff(d) => d.eval(t),
        }
    }

    pub fn as_piecewise(&self) -> Option<&PiecewisePoly> {
        match self {
            TailFunction::Piecewise(p) => Some(p),
            _ => None,
        }
    }

    /// A window outside which the function is zero or of known sign.
    pub fn default_window(&self) -> (f64, f64) {
        match self {
            TailFunction::Piecewise(p) => {
                let b = p.breakpoints();
                let pad = (b[b.len() - 1] - b[0]).max(1.0);
                (b[0] - pad, b[b.len() - 1] + pad)
            }
            TailFunction::Normal { .. } => (-NORMAL_PAD, NORMAL_PAD),
            TailFunction::NormalDiff(d) => (d.law.min_atom() - NORMAL_PAD, d.law.max_atom() + NORMAL_PAD),
        }
    }
}

/// F̄_k of a single law as an exact piecewise polynomial.
pub fn tail_function(law: &DiscreteLaw, k: usize) -> Result<PiecewisePoly> {
    check_order(k, 4)?;
    Ok(PiecewisePoly::tail_sum(law.atoms(), law.masses(), k, Side::Right))
}

fn check_order(k: usize, max: usize) -> Result<()> {
    if (1..=max).contains(&k) {
        Ok(())
    } else {
        Err(Error::BadOrder(k))
    }
}

fn law_moment(law: LawArg, j: u32) -> f64 {
    match law {
        LawArg::Discrete(p) => p.moment(j),
        LawArg::Normal => match j {
            2 => 1.0,
            4 => 3.0,
            _ => 0.0,
        },
    }
}

/// Checks that moments 1..=upto agree; ζ_{upto+1} is infinite otherwise.
pub fn check_moments(p: LawArg, q: LawArg, upto: usize) -> Result<()> {
    for j in 1..=upto as u32 {
        let (a, b) = (law_moment(p, j), law_moment(q, j));
        if (a - b).abs() > MOMENT_TOL * a.abs().max(b.abs()).max(1.0) {
            return Err(Error::MomentMismatch { index: j as usize, lhs: a, rhs: b });
        }
    }
    Ok(())
}

/// Atoms of Q − P on the merged support.
pub fn signed_difference(p: &DiscreteLaw, q: &DiscreteLaw) -> (Vec<f64>, Vec<f64>) {
    let mut pairs: Vec<(f64, f64)> = q.iter().chain(p.iter().map(|(x, m)| (x, -m))).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut atoms: Vec<f64> = Vec::with_capacity(pairs.len());
    let mut weights: Vec<f64> = Vec::with_capacity(pairs.len());
    for (x, w) in pairs {
        match atoms.last() {
            Some(&last) if x - last <= dedupe_tol(last) => *weights.last_mut().unwrap() += w,
            _ => {
                atoms.push(x);
                weights.push(w);
            }
        }
    }
    (atoms, weights)
}

/// H̄_k = Ḡ_k − F̄_k for P (first argument, F) and Q (second, G).
pub fn hbar(p: LawArg, q: LawArg, k: usize) -> Result<TailFunction> {
    check_order(k, 4)?;
    check_moments(p, q, k - 1)?;
    Ok(match (p, q) {
        (LawArg::Discrete(p), LawArg::Discrete(q)) => TailFunction::Piecewise(discrete_hbar(p, q, k)),
        (LawArg::Discrete(p), LawArg::Normal) => TailFunction::NormalDiff(NormalDiff::new(p, k, 1.0)),
        (LawArg::Normal, LawArg::Discrete(q)) => TailFunction::NormalDiff(NormalDiff::new(q, k, -1.0)),
        (LawArg::Normal, LawArg::Normal) => TailFunction::Piecewise(PiecewisePoly::zero()),
    })
}

fn discrete_hbar(p: &DiscreteLaw, q: &DiscreteLaw, k: usize) -> PiecewisePoly {
    let (atoms, weights) = signed_difference(p, q);
    PiecewisePoly::balanced_difference(&atoms, &weights, k)
}

/// ζ_s between two finite-support laws, by exact integration of |H̄_s|.
pub fn zeta_discrete(p: &DiscreteLaw, q: &DiscreteLaw, s: usize) -> Result<f64> {
    check_order(s, 4)?;
    check_moments(LawArg::Discrete(p), LawArg::Discrete(q), s - 1)?;
    Ok(discrete_hbar(p, q, s).integrate_abs())
}

/// A numerical value with an absolute error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// Sign-constant cuts of `f` on [lo, hi]: grid bracketing plus a midpoint
/// probe per cell, then bisection.
pub fn bracket_roots<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, extra: &[f64], grid: usize) -> Result<Vec<f64>> {
    let mut pts: Vec<f64> = (0..=grid).map(|i| lo + (hi - lo) * i as f64 / grid as f64).collect();
    pts.extend(extra.iter().copied().filter(|&x| x > lo && x < hi));
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let sgn = |v: f64| -> i8 {
        if v > 0.0 {
            1
        } else if v < 0.0 {
            -1
        } else {
            0
        }
    };
    let mut roots = Vec::new();
    let mut fa = f(pts[0]);
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let m = 0.5 * (a + b);
        let (fm, fb) = (f(m), f(b));
        let (sa, sm, sb) = (sgn(fa), sgn(fm), sgn(fb));
        if sa * sm < 0 {
            roots.push(bisect_fn(f, a, m, fa));
        }
        if sm * sb < 0 {
            roots.push(bisect_fn(f, m, b, fm));
        }
        if sm == 0 && sa * sb < 0 {
            roots.push(m);
        }
        if sb == 0 && b < hi {
            roots.push(b);
        }
        fa = fb;
    }
    roots.sort_by(f64::total_cmp);
    let resolution = 1e-13 * (hi - lo);
    for w in roots.windows(2) {
        if w[1] - w[0] < resolution && w[1] != w[0] {
            return Err(Error::UnresolvedSign(w[0]));
        }
    }
    roots.dedup();
    Ok(roots)
}

fn bisect_fn<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// ∫_lo^hi |f| for f smooth between `kinks`: bracket sign changes, then
/// integrate each sign-constant segment to `tol / segments`.
pub fn integrate_abs_numeric<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    kinks: &[f64],
    grid: usize,
    tol: f64,
) -> Result<Estimate> {
    let roots = bracket_roots(f, lo, hi, kinks, grid)?;
    let mut cuts = vec![lo, hi];
    cuts.extend(roots);
    cuts.extend(kinks.iter().copied().filter(|&x| x > lo && x < hi));
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let per = tol / (cuts.len() - 1) as f64;
    let mut value = 0.0;
    let mut error = 0.0;
    for w in cuts.windows(2) {
        let q = quad::integrate(f, w[0], w[1], per)?;
        value += q.value.abs();
        error += q.error;
    }
    Ok(Estimate { value, error })
}

fn check_standardized(p: &DiscreteLaw) -> Result<()> {
    let (m1, m2) = (p.moment(1), p.moment(2));
    if m1.abs() > MOMENT_TOL || (m2 - 1.0).abs() > MOMENT_TOL {
        return Err(Error::NotStandardized(format!("mean {m1}, second moment {m2}")));
    }
    Ok(())
}

/// ζ_s(P, N) for standardized P and s ∈ {3, 4}, with error estimate.
pub fn zeta_vs_normal_estimate(p: &DiscreteLaw, s: usize, tol: f64) -> Result<Estimate> {
    if s != 3 && s != 4 {
        return Err(Error::BadOrder(s));
    }
    check_standardized(p)?;
    check_moments(LawArg::Discrete(p), LawArg::Normal, s - 1)?;
    let h = NormalDiff::new(p, s, 1.0);
    let lo = p.min_atom() - NORMAL_PAD;
    let hi = p.max_atom() + NORMAL_PAD;
    let body = integrate_abs_numeric(&|t| h.eval(t), lo, hi, p.atoms(), BRACKET_GRID, 0.5 * tol)?;
    // Outside the window H̄_s is ±T_s(±t); its integral is T_{s+1}.
    let tails = normal_tail(s + 1, hi)? + normal_tail(s + 1, -lo)?;
    Ok(Estimate { value: body.value + tails, error: body.error })
}

pub fn zeta_vs_normal(p: &DiscreteLaw, s: usize, tol: f64) -> Result<f64> {
    Ok(zeta_vs_normal_estimate(p, s, tol)?.value)
}

/// Sign changes of `f` over `window`: exact for piecewise polynomials,
/// grid plus bisection otherwise.
pub fn sign_changes(f: &TailFunction, window: (f64, f64)) -> Result<SignChangeReport> {
    let (lo, hi) = window;
    match f {
        TailFunction::Piecewise(p) => Ok(p.sign_changes(lo, hi)),
        _ => {
            let kinks: Vec<f64> = match f {
                TailFunction::NormalDiff(d) => d.law.atoms().to_vec(),
                _ => Vec::new(),
            };
            let eval = |t: f64| f.eval(t);
            let roots = bracket_roots(&eval, lo, hi, &kinks, BRACKET_GRID)?;
            let mut cuts = vec![lo];
            cuts.extend(roots);
            cuts.push(hi);
            let zero_tol = 1e-14;
            let runs: Vec<(f64, i8)> = cuts
                .windows(2)
                .map(|w| {
                    let v = eval(0.5 * (w[0] + w[1]));
                    let s = if v > zero_tol {
                        1
                    } else if v < -zero_tol {
                        -1
                    } else {
                        0
                    };
                    (w[0], s)
                })
                .collect();
            Ok(SignChangeReport::from_runs(&runs))
        }
    }
}

/// P ≤ Q in s-convex order, i.e. H̄_s ≥ 0 everywhere.
pub fn s_convex_le(p: &DiscreteLaw, q: &DiscreteLaw, s: usize) -> Result<bool> {
    check_order(s, 4)?;
    check_moments(LawArg::Discrete(p), LawArg::Discrete(q), s - 1)?;
    let h = discrete_hbar(p, q, s);
    Ok(h.hull_min() >= -1e-12 * h.magnitude().max(1.0))
}

/// ∫|x|^s d|Q − P|.
pub fn weighted_variation(p: &DiscreteLaw, q: &DiscreteLaw, s: f64) -> f64 {
    let (atoms, weights) = signed_difference(p, q);
    atoms.iter().zip(&weights).map(|(x, w)| w.abs() * x.abs().powf(s)).sum()
}

/// ζ_s(P∗N_σ, Q∗N_σ) for discrete P, Q with moments 1..s−1 matched.
pub fn zeta_smoothed(p: &DiscreteLaw, q: &DiscreteLaw, s: usize, sigma: f64, tol: f64) -> Result<Estimate> {
    check_order(s, 4)?;
    if !(sigma > 0.0) {
        return Err(Error::BadParam(format!("sigma={sigma}")));
    }
    check_moments(LawArg::Discrete(p), LawArg::Discrete(q), s - 1)?;
    let (atoms, weights) = signed_difference(p, q);
    let scale = sigma.powi(s as i32 - 1);
    let mirror = if s.is_multiple_of(2) { 1.0 } else { -1.0 };
    let center = 0.5 * (atoms[0] + atoms[atoms.len() - 1]);
    let h = |t: f64| -> f64 {
        let mut acc = 0.0;
        for (x, w) in atoms.iter().zip(&weights) {
            acc += if t >= center {
                w * normal_tail(s, (t - x) / sigma).unwrap()
            } else {
                mirror * w * normal_tail(s, (x - t) / sigma).unwrap()
            };
        }
        scale * acc
    };
    let pad = 12.0 * sigma + 2.0;
    let (lo, hi) = (atoms[0] - pad, atoms[atoms.len() - 1] + pad);
    let body = integrate_abs_numeric(&h, lo, hi, &[], BRACKET_GRID, tol)?;
    let total: f64 = weights.iter().map(|w| w.abs()).sum();
    let tail_bound = 2.0 * total * scale * sigma * normal_tail(s + 1, pad / sigma)?;
    Ok(Estimate { value: body.value, error: body.error + tail_bound })
}

fn hermite_he(k: usize) -> Vec<f64> {
    let mut prev = vec![1.0];
    if k == 0 {
        return prev;
    }
    let mut cur = vec![0.0, 1.0];
    for n in 1..k {
        let mut next = vec![0.0; n + 2];
        for (j, c) in cur.iter().enumerate() {
            next[j + 1] += c;
        }
        for (j, c) in prev.iter().enumerate() {
            next[j] -= n as f64 * c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// φ^{(k)}(x) = (−1)^k He_k(x) φ(x).
pub fn normal_pdf_derivative(k: usize, x: f64) -> f64 {
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * crate::piecewise::horner(&hermite_he(k), x) * normal::pdf(x)
}

fn hermite_roots(k: usize) -> Vec<f64> {
    let r = (4.0 * k as f64 + 4.0).sqrt() + 1.0;
    real_roots_in(&hermite_he(k), -r, r, 0.0)
}

/// D_k = ∫|φ^{(k)}|, summing the humps between the roots of He_k.
pub fn d_const(k: usize) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let mut knots = vec![f64::NEG_INFINITY];
    knots.extend(hermite_roots(k));
    knots.push(f64::INFINITY);
    let prim = |x: f64| if x.is_finite() { normal_pdf_derivative(k - 1, x) } else { 0.0 };
    knots.windows(2).map(|w| (prim(w[1]) - prim(w[0])).abs()).sum()
}

/// D_{k,α} = ∫|x|^α |φ^{(k)}(x)| dx by quadrature between the roots of |x|^α He_k.
pub fn d_const_alpha(k: usize, alpha: f64) -> Result<f64> {
    let f = |x: f64| x.abs().powf(alpha) * normal_pdf_derivative(k, x).abs();
    let mut knots = vec![-40.0, 0.0, 40.0];
    knots.extend(hermite_roots(k));
    knots.sort_by(f64::total_cmp);
    knots.dedup();
    let mut total = 0.0;
    for w in knots.windows(2) {
        total += quad::integrate(&f, w[0], w[1], 1e-15)?.value;
    }
    Ok(total)
}

/// D_k by direct quadrature, as an oracle for the closed form.
pub fn d_const_quadrature(k: usize) -> Result<f64> {
    d_const_alpha(k, 0.0)
}

/// Splits x > 0 as n + γ with n ∈ ℕ₀ and γ ∈ (0, 1].
fn split_order(x: f64) -> (usize, f64) {
    let n = x.ceil() - 1.0;
    (n as usize, x - n)
}

/// The smoothing constant C_{s,t} in ζ_s(P∗N_σ, Q∗N_σ) ≤ C_{s,t} ζ_{s+t}(P,Q)/σ^t.
pub fn smoothing_constant(s: f64, t: f64) -> Result<f64> {
    if !(s > 0.0 && t > 0.0 && s.is_finite() && t.is_finite()) {
        return Err(Error::BadParam(format!("s={s}, t={t}")));
    }
    let (_, alpha) = split_order(s);
    let (m, beta) = split_order(t);
    if alpha + beta <= 1.0 {
        let e1 = (1.0 - alpha - beta) / (1.0 - alpha);
        let e2 = beta / (1.0 - alpha);
        Ok(d_const(m).powf(e1) * d_const_alpha(m + 1, alpha)?.powf(e2))
    } else {
        let e1 = (alpha + beta - 1.0) / alpha;
        let e2 = (1.0 - beta) / alpha;
        let second = if e2 == 0.0 { 1.0 } else { (2.0 * d_const_alpha(m + 1, alpha)?).powf(e2) };
        Ok(d_const(m + 1).powf(e1) * second)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EpsilonN {
    pub n: u64,
    pub value: f64,
    pub error: f64,
    pub lower_line: f64,
    pub upper_line: f64,
}

/// |ν₃(B̃_n) − E|Z|³|/6.
pub fn epsilon_lower_line(n: u64) -> Result<f64> {
    Ok((binom_abs3(n as i64, true)? - normal::abs_third_moment()).abs() / 6.0)
}

/// 1/(3√(2π)n) + ((4+ζ(½))/√(2π) − 1)/(6n^{3/2}).
pub fn epsilon_upper_line(n: u64) -> f64 {
    let r = (2.0 * PI).sqrt();
    let nf = n as f64;
    1.0 / (3.0 * r * nf) + ((4.0 + ZETA_HALF) / r - 1.0) / (6.0 * nf.powf(1.5))
}

/// ε_n = ζ_3(B̃_{n,1/2}, N) together with its two bounding lines. The lower
/// line is attained for odd n, so it is compared with slack `tol`.
pub fn epsilon_n(n: u64, tol: f64) -> Result<EpsilonN> {
    if n < 1 {
        return Err(Error::BadN(n as i64));
    }
    let law = binomial_half_standardized(n as i64)?;
    let est = zeta_vs_normal_estimate(&law, 3, tol)?;
    let out = EpsilonN {
        n,
        value: est.value,
        error: est.error,
        lower_line: epsilon_lower_line(n)?,
        upper_line: epsilon_upper_line(n),
    };
    if !(out.lower_line <= out.value + tol && out.value < out.upper_line) {
        return Err(Error::SandwichViolation { n, lower: out.lower_line, value: out.value, upper: out.upper_line });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws::{make_discrete, two_point_law};
    use approx::assert_abs_diff_eq;

    fn rad() -> DiscreteLaw {
        DiscreteLaw::rademacher()
    }

    #[test]
    fn tail_function_examples() {
        let f1 = tail_function(&rad(), 1).unwrap();
        assert_eq!(f1.eval(0.0), 0.5);
        let f3 = tail_function(&rad(), 3).unwrap();
        assert_eq!(f3.eval(0.0), 0.25);
        let law = make_discrete(&[(-0.5, 0.2), (1.0, 0.5), (3.0, 0.3)]).unwrap();
        let f2 = tail_function(&law, 2).unwrap();
        assert_abs_diff_eq!(f2.eval(-2.0), law.mean() + 2.0, epsilon = 1e-14);
        assert_eq!(f2.eval(3.5), 0.0);
        assert!(tail_function(&law, 5).is_err());
    }

    #[test]
    fn hbar_examples() {
        let q = rad();
        let same = hbar(LawArg::Discrete(&q), LawArg::Discrete(&q), 3).unwrap();
        assert_eq!(same.as_piecewise().unwrap().integrate_abs(), 0.0);
        let h = hbar(LawArg::Discrete(&q), LawArg::Normal, 3).unwrap();
        assert_abs_diff_eq!(h.eval(0.0), 0.0, epsilon = 1e-16);
        let p = make_discrete(&[(-2.0, 0.125), (0.0, 0.75), (2.0, 0.125)]).unwrap();
        let h1 = hbar(LawArg::Discrete(&p), LawArg::Discrete(&q), 1).unwrap();
        let rep = sign_changes(&h1, h1.default_window()).unwrap();
        assert_eq!(rep.count, 3);
        assert!(!rep.lastly_positive);
        let shifted = q.map_atoms(|x| x + 0.5);
        match hbar(LawArg::Discrete(&q), LawArg::Discrete(&shifted), 2) {
            Err(Error::MomentMismatch { index: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zeta_discrete_examples() {
        let p = two_point_law(1.5).unwrap();
        assert_eq!(zeta_discrete(&p, &p, 3).unwrap(), 0.0);
        let b = crate::extremal::b_of_rho(1.5).unwrap();
        assert_abs_diff_eq!(zeta_discrete(&p, &rad(), 3).unwrap(), b / 6.0, epsilon = 1e-12);
        let b2 = binomial_half_standardized(2).unwrap();
        assert_abs_diff_eq!(zeta_discrete(&rad(), &b2, 4).unwrap(), 1.0 / 24.0, epsilon = 1e-14);
    }

    #[test]
    fn zeta_against_normal() {
        let z3 = zeta_vs_normal(&rad(), 3, 1e-10).unwrap();
        assert_abs_diff_eq!(z3, (4.0 / (2.0 * PI).sqrt() - 1.0) / 6.0, epsilon = 1e-10);
        let z4 = zeta_vs_normal(&rad(), 4, 1e-10).unwrap();
        assert_abs_diff_eq!(z4, 1.0 / 12.0, epsilon = 1e-10);
        let b4 = binomial_half_standardized(4).unwrap();
        let e4 = zeta_vs_normal(&b4, 3, 1e-10).unwrap();
        assert!(epsilon_lower_line(4).unwrap() <= e4 && e4 < 0.1352 / 4.0);
        let off = rad().map_atoms(|x| 2.0 * x);
        assert!(matches!(zeta_vs_normal(&off, 3, 1e-10), Err(Error::NotStandardized(_))));
        let skew = two_point_law(1.5).unwrap();
        assert!(matches!(zeta_vs_normal(&skew, 4, 1e-10), Err(Error::MomentMismatch { index: 3, .. })));
    }

    #[test]
    fn sign_change_examples() {
        let h1 = hbar(LawArg::Discrete(&rad()), LawArg::Normal, 1).unwrap();
        let rep = sign_changes(&h1, h1.default_window()).unwrap();
        assert_eq!(rep.count, 3);
        for (got, want) in rep.points.iter().zip([-1.0, 0.0, 1.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
        assert!(rep.lastly_positive);
        let zero = TailFunction::Piecewise(PiecewisePoly::zero());
        assert_eq!(sign_changes(&zero, (-1.0, 1.0)).unwrap().count, 0);
        let p = two_point_law(1.5).unwrap();
        let h3 = hbar(LawArg::Discrete(&p), LawArg::Discrete(&rad()), 3).unwrap();
        assert!(sign_changes(&h3, h3.default_window()).unwrap().count <= 1);
    }

    #[test]
    fn convex_order_examples() {
        assert!(s_convex_le(&rad(), &rad(), 3).unwrap());
        let b2 = binomial_half_standardized(2).unwrap();
        assert!(s_convex_le(&rad(), &b2, 4).unwrap());
        assert!(!s_convex_le(&b2, &rad(), 4).unwrap());
    }

    #[test]
    fn smoothing_constants() {
        for s in [0.5, 1.0, 2.5, 3.0] {
            assert_abs_diff_eq!(smoothing_constant(s, 1.0).unwrap(), 2.0 / (2.0 * PI).sqrt(), epsilon = 1e-12);
            assert_abs_diff_eq!(
                smoothing_constant(s, 2.0).unwrap(),
                4.0 / (2.0 * PI * std::f64::consts::E).sqrt(),
                epsilon = 1e-12
            );
        }
        // s = 2.5, t = 0.5 takes the first branch and reduces to D_{1,1/2}.
        let c = smoothing_constant(2.5, 0.5).unwrap();
        let direct = quad::integrate(&|x: f64| x.abs().sqrt() * x.abs() * normal::pdf(x), -40.0, 0.0, 1e-15)
            .unwrap()
            .value
            * 2.0;
        assert_abs_diff_eq!(c, direct, epsilon = 1e-12);
        assert!(smoothing_constant(0.0, 1.0).is_err());
    }

    #[test]
    fn d_constants_closed_vs_quadrature() {
        for k in 0..=6 {
            assert_abs_diff_eq!(d_const(k), d_const_quadrature(k).unwrap(), epsilon = 1e-12);
        }
    }

    #[test]
    fn epsilon_examples() {
        let e1 = epsilon_n(1, 1e-11).unwrap();
        assert_abs_diff_eq!(e1.value, e1.lower_line, epsilon = 1e-9);
        assert_abs_diff_eq!(e1.value, (4.0 / (2.0 * PI).sqrt() - 1.0) / 6.0, epsilon = 1e-10);
        let e10 = epsilon_n(10, 1e-10).unwrap();
        assert!(e10.value < 0.1352 / 10.0);
        assert!(epsilon_upper_line(1) < 0.1352);
    }
}
