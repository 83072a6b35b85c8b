//! Piecewise polynomials on a breakpoint grid, with exact root isolation and
//! integration of |p|.

use serde::Serialize;

/// Σ c_j (t − anchor)^j.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Piece {
    pub anchor: f64,
    pub coeffs: Vec<f64>,
}

impl Piece {
    pub fn zero(anchor: f64) -> Piece {
        Piece { anchor, coeffs: Vec::new() }
    }

    pub fn eval(&self, t: f64) -> f64 {
        horner(&self.coeffs, t - self.anchor)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }
}

pub fn horner(c: &[f64], u: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &cj| acc * u + cj)
}

fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(j, &cj)| j as f64 * cj).collect()
}

fn antiderivative(c: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(c.len() + 1);
    out.push(0.0);
    out.extend(c.iter().enumerate().map(|(j, &cj)| cj / (j as f64 + 1.0)));
    out
}

fn trimmed(c: &[f64]) -> &[f64] {
    let mut n = c.len();
    while n > 0 && c[n - 1] == 0.0 {
        n -= 1;
    }
    &c[..n]
}

/// Root of a polynomial with a sign change on [lo, hi], by bisection to
/// full double precision.
fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Real roots of Σ c_j u^j in [lo, hi]: sign-change roots on the monotone
/// pieces between critical points, plus critical points where |p| ≤ zero_tol
/// (touching roots).
pub fn real_roots_in(c: &[f64], lo: f64, hi: f64, zero_tol: f64) -> Vec<f64> {
    let c = trimmed(c);
    if c.len() <= 1 || lo >= hi {
        return Vec::new();
    }
    let p = |u: f64| horner(c, u);
    let mut knots = vec![lo];
    knots.extend(real_roots_in(&derivative(c), lo, hi, 0.0).into_iter().filter(|&r| r > lo && r < hi));
    knots.push(hi);
    let mut roots = Vec::new();
    for (i, w) in knots.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        let (fa, fb) = (p(a), p(b));
        if i > 0 && fa.abs() <= zero_tol {
            roots.push(a);
        }
        if (fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0) {
            roots.push(bisect(&p, a, b));
        }
    }
    roots.dedup_by(|x, y| (*x - *y).abs() <= 1e-13 * (hi - lo));
    roots
}

/// Sign-change summary of a real function.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignChangeReport {
    pub count: usize,
    pub points: Vec<f64>,
    pub lastly_positive: bool,
}

impl SignChangeReport {
    /// Builds the report from consecutive `(start, sign)` runs, where sign 0
    /// marks runs on which the function vanishes.
    pub fn from_runs(runs: &[(f64, i8)]) -> SignChangeReport {
        let mut points = Vec::new();
        let mut last = 0i8;
        for &(start, sign) in runs {
            if sign == 0 {
                continue;
            }
            if last != 0 && sign != last {
                points.push(start);
            }
            last = sign;
        }
        SignChangeReport { count: points.len(), points, lastly_positive: last >= 0 }
    }
}

/// Piecewise polynomial, left-continuous at breakpoints: `pieces[0]` lives on
/// (−∞, b₀], `pieces[j]` on (b_{j−1}, b_j], and the last piece on (b_{m−1}, ∞).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PiecewisePoly {
    breakpoints: Vec<f64>,
    pieces: Vec<Piece>,
    /// Typical size of the summands, for deciding what counts as zero.
    magnitude: f64,
}

/// Which atoms a tail sum runs over on the piece to the left of t.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Σ_{x_i ≥ t} w_i (x_i − t)^{k−1}/(k−1)!
    Right,
    /// Σ_{x_i < t} w_i (t − x_i)^{k−1}/(k−1)!
    Left,
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn binom(n: usize, r: usize) -> f64 {
    factorial(n) / (factorial(r) * factorial(n - r))
}

/// Local coefficients of Σ_{i ∈ idx} w_i (±(x_i − t))^{n}/n! around `anchor`.
fn tail_piece(atoms: &[f64], weights: &[f64], idx: std::ops::Range<usize>, n: usize, side: Side, anchor: f64) -> Piece {
    let mut coeffs = vec![0.0; n + 1];
    let nf = factorial(n);
    for i in idx {
        let w = weights[i];
        if w == 0.0 {
            continue;
        }
        match side {
            Side::Right => {
                let d = atoms[i] - anchor;
                for (r, c) in coeffs.iter_mut().enumerate() {
                    let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
                    *c += w * binom(n, r) * d.powi((n - r) as i32) * sign / nf;
                }
            }
            Side::Left => {
                let e = anchor - atoms[i];
                for (r, c) in coeffs.iter_mut().enumerate() {
                    *c += w * binom(n, r) * e.powi((n - r) as i32) / nf;
                }
            }
        }
    }
    Piece { anchor, coeffs }
}

impl PiecewisePoly {
    /// Tail sum of order k over signed atoms, using `side` on every piece.
    pub fn tail_sum(atoms: &[f64], weights: &[f64], k: usize, side: Side) -> PiecewisePoly {
        let m = atoms.len();
        let n = k - 1;
        let mut pieces = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let anchor = if j == 0 { atoms[0] } else { atoms[j - 1] };
            let idx = match side {
                Side::Right => j..m,
                Side::Left => 0..j,
            };
            pieces.push(tail_piece(atoms, weights, idx, n, side, anchor));
        }
        PiecewisePoly::assemble(atoms, weights, k, pieces)
    }

    /// H̄_k for a signed measure of total mass zero whose moments 1..k−1
    /// vanish: zero outside the hull, and on each piece the shorter of the
    /// right sum and the mirrored left sum (−1)^k Σ_{x_i<t} w_i (t−x_i)^{k−1}/(k−1)!.
    pub fn balanced_difference(atoms: &[f64], weights: &[f64], k: usize) -> PiecewisePoly {
        let m = atoms.len();
        let n = k - 1;
        let mirror = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        let mut pieces = Vec::with_capacity(m + 1);
        pieces.push(Piece::zero(atoms[0]));
        for j in 1..m {
            let anchor = atoms[j - 1];
            if 2 * j <= m {
                let mut p = tail_piece(atoms, weights, 0..j, n, Side::Left, anchor);
                p.coeffs.iter_mut().for_each(|c| *c *= mirror);
                pieces.push(p);
            } else {
                pieces.push(tail_piece(atoms, weights, j..m, n, Side::Right, anchor));
            }
        }
        pieces.push(Piece::zero(atoms[m - 1]));
        PiecewisePoly::assemble(atoms, weights, k, pieces)
    }

    fn assemble(atoms: &[f64], weights: &[f64], k: usize, pieces: Vec<Piece>) -> PiecewisePoly {
        let span = (atoms[atoms.len() - 1] - atoms[0]).max(1.0);
        let total: f64 = weights.iter().map(|w| w.abs()).sum();
        let magnitude = total * span.powi(k as i32 - 1) / factorial(k - 1);
        PiecewisePoly { breakpoints: atoms.to_vec(), pieces, magnitude }
    }

    pub fn zero() -> PiecewisePoly {
        PiecewisePoly { breakpoints: vec![0.0], pieces: vec![Piece::zero(0.0), Piece::zero(0.0)], magnitude: 0.0 }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    /// Values with |v| at or below this are treated as zero.
    pub fn zero_tol(&self) -> f64 {
        1e-12 * self.magnitude
    }

    fn piece_index(&self, t: f64) -> usize {
        self.breakpoints.partition_point(|&b| b < t)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.pieces[self.piece_index(t)].eval(t)
    }

    /// Right limit f(t+).
    pub fn eval_right(&self, t: f64) -> f64 {
        let j = self.breakpoints.partition_point(|&b| b <= t);
        self.pieces[j].eval(t)
    }

    pub fn vanishes_outside_hull(&self) -> bool {
        self.pieces[0].is_zero() && self.pieces[self.pieces.len() - 1].is_zero()
    }

    /// Interior segments (a, b, piece) between consecutive breakpoints.
    fn segments(&self) -> impl Iterator<Item = (f64, f64, &Piece)> {
        self.breakpoints.windows(2).zip(&self.pieces[1..]).map(|(w, p)| (w[0], w[1], p))
    }

    /// Roots of one segment in absolute coordinates, sorted.
    fn segment_roots(&self, a: f64, b: f64, piece: &Piece) -> Vec<f64> {
        real_roots_in(&piece.coeffs, 0.0, b - a, self.zero_tol())
            .into_iter()
            .map(|u| a + u)
            .filter(|&x| x > a && x < b)
            .collect()
    }

    /// ∫|f| over the real line, exactly up to rounding; infinite when an
    /// unbounded piece does not vanish.
    pub fn integrate_abs(&self) -> f64 {
        if !self.vanishes_outside_hull() {
            return f64::INFINITY;
        }
        let mut total = 0.0;
        for (a, b, piece) in self.segments() {
            if piece.is_zero() {
                continue;
            }
            let anti = antiderivative(&piece.coeffs);
            let mut knots = vec![0.0];
            knots.extend(self.segment_roots(a, b, piece).into_iter().map(|x| x - a));
            knots.push(b - a);
            for w in knots.windows(2) {
                total += (horner(&anti, w[1]) - horner(&anti, w[0])).abs();
            }
        }
        total
    }

    /// Minimum over the hull, from endpoints and critical points of each segment.
    pub fn hull_min(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (a, b, piece) in self.segments() {
            let len = b - a;
            let mut cands = vec![0.0, len];
            cands.extend(real_roots_in(&derivative(&piece.coeffs), 0.0, len, 0.0));
            for u in cands {
                best = best.min(horner(&piece.coeffs, u));
            }
        }
        best
    }

    /// Sign runs over `[lo, hi]`, split at breakpoints and at roots.
    pub fn sign_runs(&self, lo: f64, hi: f64) -> Vec<(f64, i8)> {
        let tol = self.zero_tol();
        let sign_of = |v: f64| -> i8 {
            if v > tol {
                1
            } else if v < -tol {
                -1
            } else {
                0
            }
        };
        let mut cuts: Vec<f64> = vec![lo];
        cuts.extend(self.breakpoints.iter().copied().filter(|&b| b > lo && b < hi));
        for (a, b, piece) in self.segments() {
            cuts.extend(self.segment_roots(a, b, piece).into_iter().filter(|&x| x > lo && x < hi));
        }
        // Roots of the unbounded pieces that fall inside the window.
        let first = &self.pieces[0];
        let b0 = self.breakpoints[0];
        if lo < b0 {
            cuts.extend(real_roots_in(&first.coeffs, lo - b0, 0.0, tol).into_iter().map(|u| b0 + u).filter(|&x| x > lo));
        }
        let last = &self.pieces[self.pieces.len() - 1];
        let bl = self.breakpoints[self.breakpoints.len() - 1];
        if hi > bl {
            cuts.extend(real_roots_in(&last.coeffs, 0.0, hi - bl, tol).into_iter().map(|u| bl + u).filter(|&x| x < hi));
        }
        cuts.push(hi);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut runs = Vec::with_capacity(cuts.len());
        for w in cuts.windows(2) {
            let mid = 0.5 * (w[0] + w[1]);
            let s = sign_of(self.eval(mid));
            // Jumps at a breakpoint b: the run starts right after b.
            match runs.last() {
                Some(&(_, prev)) if prev == s => {}
                _ => runs.push((w[0], s)),
            }
        }
        runs
    }

    /// Sign changes over `[lo, hi]`.
    pub fn sign_changes(&self, lo: f64, hi: f64) -> SignChangeReport {
        SignChangeReport::from_runs(&self.sign_runs(lo, hi))
    }

    /// Sign changes over a window slightly wider than the hull.
    pub fn sign_changes_all(&self) -> SignChangeReport {
        let (a, b) = (self.breakpoints[0], self.breakpoints[self.breakpoints.len() - 1]);
        let pad = (b - a).max(1.0);
        self.sign_changes(a - pad, b + pad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn roots_of_cubics() {
        // (u−0.2)(u−0.5)(u−0.9)
        let c = [-0.09, 0.73, -1.6, 1.0];
        let r = real_roots_in(&c, 0.0, 1.0, 1e-15);
        assert_eq!(r.len(), 3);
        for (got, want) in r.iter().zip([0.2, 0.5, 0.9]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-14);
        }
        // Double root at 0.5 touching zero.
        let d = [0.25, -1.0, 1.0];
        let r = real_roots_in(&d, 0.0, 1.0, 1e-14);
        assert_eq!(r.len(), 1);
        assert_abs_diff_eq!(r[0], 0.5, epsilon = 1e-12);
        assert!(real_roots_in(&[1.0, 0.0, 1.0], -3.0, 3.0, 1e-14).is_empty());
    }

    #[test]
    fn tail_sum_of_rademacher() {
        let f1 = PiecewisePoly::tail_sum(&[-1.0, 1.0], &[0.5, 0.5], 1, Side::Right);
        assert_eq!(f1.eval(0.0), 0.5);
        assert_eq!(f1.eval(-1.0), 1.0);
        assert_eq!(f1.eval(1.0), 0.5);
        assert_eq!(f1.eval_right(1.0), 0.0);
        let f3 = PiecewisePoly::tail_sum(&[-1.0, 1.0], &[0.5, 0.5], 3, Side::Right);
        assert_eq!(f3.eval(0.0), 0.25);
        let f2 = PiecewisePoly::tail_sum(&[-1.0, 1.0], &[0.5, 0.5], 2, Side::Right);
        assert_abs_diff_eq!(f2.eval(-3.0), 3.0, epsilon = 1e-15);
    }

    #[test]
    fn integrate_abs_of_a_sign_changing_piece() {
        // δ₋₁ − 2δ₀ + δ₁ at k=2 gives the tent 1 − |t| on [−1, 1].
        let p = PiecewisePoly::balanced_difference(&[-1.0, 0.0, 1.0], &[1.0, -2.0, 1.0], 2);
        let oracle = crate::quad::trapezoid(&|t| p.eval(t).abs(), -1.0, 1.0, 200_000);
        assert_abs_diff_eq!(p.integrate_abs(), oracle, epsilon = 1e-9);
        assert_abs_diff_eq!(p.integrate_abs(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn runs_report_changes() {
        let runs = [(0.0, 1), (1.0, 0), (2.0, -1), (3.0, -1), (4.0, 1)];
        let r = SignChangeReport::from_runs(&runs);
        assert_eq!(r.count, 2);
        assert_eq!(r.points, vec![2.0, 4.0]);
        assert!(r.lastly_positive);
        let zero = SignChangeReport::from_runs(&[(0.0, 0)]);
        assert_eq!(zero.count, 0);
    }
}
