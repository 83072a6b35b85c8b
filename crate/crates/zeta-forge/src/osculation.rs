//! Two-point Hermite interpolation and the osculatory majorant
//! |x − r|³ ≤ a + bx + cx² + d|x|³.

use nalgebra::{DMatrix, DVector, Matrix4, Vector4};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laws::DiscreteLaw;
use crate::piecewise::{horner, real_roots_in};

/// Grid size for dominance checks.
pub const DOMINANCE_GRID: usize = 10_001;

fn falling(n: usize, j: usize) -> f64 {
    (0..j).map(|i| (n - i) as f64).product()
}

/// Hermite interpolant stored in the scaled variable z = (x − x0)/(x1 − x0).
#[derive(Clone, Debug, PartialEq)]
pub struct HermitePoly {
    pub x0: f64,
    pub x1: f64,
    pub y0: Vec<f64>,
    pub y1: Vec<f64>,
    scaled: Vec<f64>,
}

impl HermitePoly {
    pub fn degree_bound(&self) -> usize {
        self.y0.len() + self.y1.len() - 1
    }

    /// Coefficients in z, lowest degree first.
    pub fn scaled_coeffs(&self) -> &[f64] {
        &self.scaled
    }

    /// Monomial coefficients in x, lowest degree first.
    pub fn coeffs(&self) -> Vec<f64> {
        let h = self.x1 - self.x0;
        let n = self.scaled.len();
        let mut out = vec![0.0; n];
        // q((x − x0)/h) expanded by the binomial theorem.
        for (k, &c) in self.scaled.iter().enumerate() {
            let ck = c / h.powi(k as i32);
            let mut binom = 1.0;
            for j in 0..=k {
                out[j] += ck * binom * (-self.x0).powi((k - j) as i32);
                binom = binom * (k - j) as f64 / (j + 1) as f64;
            }
        }
        out
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.derivative(0, x)
    }

    /// p^{(k)}(x).
    pub fn derivative(&self, k: usize, x: f64) -> f64 {
        let h = self.x1 - self.x0;
        let z = (x - self.x0) / h;
        let d: Vec<f64> = self.scaled.iter().enumerate().skip(k).map(|(i, c)| c * falling(i, k)).collect();
        horner(&d, z) / h.powi(k as i32)
    }
}

fn confluent_system(m0: usize, m1: usize) -> DMatrix<f64> {
    let n = m0 + m1 + 2;
    let mut a = DMatrix::zeros(n, n);
    for j in 0..=m0 {
        // j-th derivative at z = 0 picks out j!·c_j.
        a[(j, j)] = falling(j, j);
    }
    for j in 0..=m1 {
        for i in j..n {
            a[(m0 + 1 + j, i)] = falling(i, j);
        }
    }
    a
}

/// The polynomial of degree ≤ m0+m1+1 with p^{(j)}(x_i) = y_{i,j}.
pub fn hermite_two_point(x0: f64, x1: f64, y0: &[f64], y1: &[f64]) -> Result<HermitePoly> {
    if y0.is_empty() || y1.is_empty() {
        return Err(Error::BadInput("each node needs at least a value".into()));
    }
    if x0 == x1 {
        return Err(Error::CoincidentNodes);
    }
    if (x1 - x0).abs() < 1e-10 * 1f64.max(x0.abs()).max(x1.abs()) {
        return Err(Error::IllConditioned(x0, x1));
    }
    let h = x1 - x0;
    let (m0, m1) = (y0.len() - 1, y1.len() - 1);
    let rhs: Vec<f64> = y0
        .iter()
        .enumerate()
        .chain(y1.iter().enumerate())
        .map(|(j, y)| y * h.powi(j as i32))
        .collect();
    let sol = confluent_system(m0, m1)
        .lu()
        .solve(&DVector::from_vec(rhs))
        .ok_or(Error::IllConditioned(x0, x1))?;
    Ok(HermitePoly { x0, x1, y0: y0.to_vec(), y1: y1.to_vec(), scaled: sol.iter().copied().collect() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Branch {
    VLeAbsR,
    VGtAbsR,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OsculCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub r: f64,
    pub u: f64,
    pub v: f64,
    pub branch: Branch,
}

impl OsculCoeffs {
    /// a + bx + cx² + d|x|³.
    pub fn g(&self, x: f64) -> f64 {
        self.a + x * (self.b + x * self.c) + self.d * x.abs().powi(3)
    }

    pub fn g_prime(&self, x: f64) -> f64 {
        self.b + 2.0 * self.c * x + 3.0 * self.d * x * x.abs()
    }

    pub fn f(&self, x: f64) -> f64 {
        (x - self.r).abs().powi(3)
    }

    pub fn f_prime(&self, x: f64) -> f64 {
        3.0 * (x - self.r) * (x - self.r).abs()
    }

    /// The touching points (s, t) = (v·sgn r, −u·sgn r).
    pub fn nodes(&self) -> (f64, f64) {
        let sg = self.r.signum();
        (self.v * sg, -self.u * sg)
    }

    /// Worst of the four interpolation residuals at the nodes.
    pub fn interpolation_residual(&self) -> f64 {
        let (s, t) = self.nodes();
        [
            self.g(s) - self.f(s),
            self.g_prime(s) - self.f_prime(s),
            self.g(t) - self.f(t),
            self.g_prime(t) - self.f_prime(t),
        ]
        .iter()
        .fold(0.0, |m, e| m.max(e.abs()))
    }
}

fn check_ruv(r: f64, u: f64, v: f64) -> Result<()> {
    if !(r != 0.0 && r.is_finite()) || !(u > v && v >= 0.0 && u.is_finite()) {
        return Err(Error::BadRange(format!("r={r}, u={u}, v={v}")));
    }
    Ok(())
}

/// Coefficients of the majorant touching |x − r|³ at v·sgn r and −u·sgn r.
pub fn oscul_coeffs(r: f64, u: f64, v: f64) -> Result<OsculCoeffs> {
    check_ruv(r, u, v)?;
    let branch = if v <= r.abs() { Branch::VLeAbsR } else { Branch::VGtAbsR };
    oscul_coeffs_branch(r, u, v, branch)
}

/// Evaluates one formula block regardless of which one applies.
pub fn oscul_coeffs_branch(r: f64, u: f64, v: f64, branch: Branch) -> Result<OsculCoeffs> {
    check_ruv(r, u, v)?;
    let ar = r.abs();
    let sg = r.signum();
    let q = u * u + 4.0 * u * v + v * v;
    let w = (u - v) * q;
    let (a, b, c, d) = match branch {
        Branch::VLeAbsR => (
            ar.powi(3) + 4.0 * (u * v).powi(3) / w,
            -sg * (3.0 * r * r + 6.0 * (u * v).powi(2) / q),
            3.0 * ar - 12.0 * (u * v).powi(2) / w,
            (u + v).powi(3) / w,
        ),
        Branch::VGtAbsR => {
            let (u2, v2, r2) = (u * u, v * v, r * r);
            let (u3, v3) = (u2 * u, v2 * v);
            let den = (u - v) * (u + v) * q;
            let a = ar
                * (6.0 * u2 * u2 * v2 + 6.0 * u2 * v2 * v2 + 12.0 * u3 * v2 * ar
                    - 12.0 * u2 * v3 * ar
                    - 4.0 * u3 * v * r2
                    - 4.0 * u * v3 * r2
                    - u2 * u2 * r2
                    - v2 * v2 * r2
                    + 6.0 * u2 * v2 * r2)
                / den;
            let b = 3.0
                * r
                * (-4.0 * u2 * v2 - 4.0 * u3 * v - 4.0 * u * v3 - 3.0 * u2 * v * ar + 3.0 * u * v2 * ar + u3 * ar
                    - v3 * ar
                    - 4.0 * u * v * r2)
                / ((u + v) * q);
            let c = 3.0
                * ar
                * (u2 * u2 + v2 * v2 - 6.0 * u2 * v2 - 4.0 * u3 * v - 4.0 * u * v3 + 4.0 * u3 * ar - 4.0 * v3 * ar
                    + 2.0 * u2 * r2
                    + 2.0 * v2 * r2)
                / den;
            let d = (u - v + 2.0 * ar) * (u2 + v2 + 4.0 * u * v - 2.0 * u * ar + 2.0 * v * ar - 2.0 * r2) / w;
            (a, b, c, d)
        }
    };
    Ok(OsculCoeffs { a, b, c, d, r, u, v, branch })
}

/// The unique (a, b, c, d) with g = a + bx + cx² + d|x|³ matching f and f′ at s and t.
pub fn osculate<F, G>(f: F, fp: G, s: f64, t: f64) -> Result<[f64; 4]>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    if s.abs() == t.abs() {
        return Err(Error::CoincidentNodes);
    }
    let m = Matrix4::new(
        1.0, s, s * s, s.abs().powi(3),
        0.0, 1.0, 2.0 * s, 3.0 * s * s.abs(),
        1.0, t, t * t, t.abs().powi(3),
        0.0, 1.0, 2.0 * t, 3.0 * t * t.abs(),
    );
    let sol = m
        .lu()
        .solve(&Vector4::new(f(s), fp(s), f(t), fp(t)))
        .ok_or(Error::IllConditioned(s, t))?;
    Ok([sol[0], sol[1], sol[2], sol[3]])
}

/// Solves the four interpolation conditions directly.
pub fn oscul_coeffs_solve(r: f64, u: f64, v: f64) -> Result<OsculCoeffs> {
    check_ruv(r, u, v)?;
    let sg = r.signum();
    let [a, b, c, d] = osculate(|x| (x - r).abs().powi(3), |x| 3.0 * (x - r) * (x - r).abs(), v * sg, -u * sg)?;
    let branch = if v <= r.abs() { Branch::VLeAbsR } else { Branch::VGtAbsR };
    Ok(OsculCoeffs { a, b, c, d, r, u, v, branch })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DominanceReport {
    /// g − f ≥ −1e-10 on the grid and in both tails.
    pub dominates: bool,
    pub min_margin: f64,
    /// Grid points with g − f ≤ 1e-8 away from both nodes.
    pub stray_touches: Vec<f64>,
}

impl DominanceReport {
    pub fn strict_off_nodes(&self) -> bool {
        self.stray_touches.is_empty()
    }
}

// g − f on [x ≥ max(r, 0)] or [x ≤ min(r, 0)], both cubic there.
fn tail_cubic(c: &OsculCoeffs, right: bool) -> [f64; 4] {
    let r = c.r;
    // |x − r|³ = ±(x − r)³ and |x|³ = ±x³ with the same sign on each tail.
    let sg = if right { 1.0 } else { -1.0 };
    [
        c.a + sg * r.powi(3),
        c.b - sg * 3.0 * r * r,
        c.c + sg * 3.0 * r,
        sg * c.d - sg,
    ]
}

fn tail_min(poly: &[f64; 4], from: f64, right: bool) -> f64 {
    if poly[3] * if right { 1.0 } else { -1.0 } < 0.0 {
        return f64::NEG_INFINITY;
    }
    let dp = [poly[1], 2.0 * poly[2], 3.0 * poly[3]];
    let far = 1e6 * (1.0 + from.abs());
    let (lo, hi) = if right { (from, far) } else { (-far, from) };
    let scale = poly.iter().fold(1.0f64, |m, c| m.max(c.abs()));
    real_roots_in(&dp, lo, hi, 1e-12 * scale)
        .into_iter()
        .chain([from])
        .map(|x| horner(poly, x))
        .fold(f64::INFINITY, f64::min)
}

/// Grid plus tail verification that g ≥ f, listing near-equalities away from the nodes.
pub fn dominance_report(c: &OsculCoeffs, lo: f64, hi: f64, count: usize) -> DominanceReport {
    let (s, t) = c.nodes();
    let count = count.max(3);
    let step = (hi - lo) / (count - 1) as f64;
    let margin = |x: f64| c.g(x) - c.f(x);
    let grid: Vec<f64> = (0..count).map(|i| margin(lo + step * i as f64)).collect();
    let near = 3.0 * step.abs().max(1e-3 * (1.0 + c.u));
    let mut stray = Vec::new();
    // Only local minima count as touches; next to a node g − f is a flat
    // parabola and would otherwise be flagged.
    for i in 0..count {
        let m = grid[i];
        let left = if i == 0 { f64::INFINITY } else { grid[i - 1] };
        let right = if i + 1 == count { f64::INFINITY } else { grid[i + 1] };
        let x = lo + step * i as f64;
        if m <= 1e-8 && m <= left && m <= right && (x - s).abs() > near && (x - t).abs() > near {
            stray.push(x);
        }
    }
    let mut min_margin = grid.iter().copied().fold(f64::INFINITY, f64::min);
    for x in [s, t, c.r, 0.0] {
        min_margin = min_margin.min(margin(x));
    }
    let right_from = hi.max(c.r).max(0.0);
    let left_from = lo.min(c.r).min(0.0);
    min_margin = min_margin
        .min(tail_min(&tail_cubic(c, true), right_from, true))
        .min(tail_min(&tail_cubic(c, false), left_from, false));
    DominanceReport { dominates: min_margin >= -1e-10, min_margin, stray_touches: stray }
}

/// Default window [−L, L] with L = u + v + 3|r| + 3, which contains both nodes.
pub fn default_window(c: &OsculCoeffs) -> (f64, f64) {
    let l = c.u + c.v + 3.0 * c.r.abs() + 3.0;
    (-l, l)
}

/// True iff g ≥ f everywhere and, unless v = 0, equality only at the nodes.
pub fn dominance_check(c: &OsculCoeffs, lo: f64, hi: f64, count: usize) -> bool {
    let rep = dominance_report(c, lo, hi, count);
    rep.dominates && (c.v == 0.0 || rep.strict_off_nodes())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RecenteredBound {
    pub lhs: f64,
    pub rhs: f64,
    pub tight: bool,
}

/// E|X − r|³ against a + bEX + cEX² + dE|X|³.
pub fn recentered_abs3_bound(law: &DiscreteLaw, r: f64, u: f64, v: f64) -> Result<RecenteredBound> {
    let c = oscul_coeffs(r, u, v)?;
    let lhs = law.expect(|x| (x - r).abs().powi(3));
    let rhs = c.a + c.b * law.moment(1) + c.c * law.moment(2) + c.d * law.abs_moment(3.0);
    let (s, t) = c.nodes();
    let tol = |y: f64| 1e-12 * 1f64.max(y.abs());
    let tight = law.atoms().iter().all(|&x| (x - s).abs() <= tol(s) || (x - t).abs() <= tol(t));
    Ok(RecenteredBound { lhs, rhs, tight })
}
