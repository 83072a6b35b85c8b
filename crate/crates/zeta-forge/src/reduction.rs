//! Few-point reduction under moment constraints, and the numerical search
//! over standardized three-point laws.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::extremal::b_of_rho;
use crate::laws::{two_point_law, DiscreteLaw};
use crate::zeta::zeta_discrete;

/// A constraint functional x ↦ f(x).
pub type Constraint<'a> = &'a (dyn Fn(f64) -> f64 + Sync);

const RANK_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct ConvexDecomposition {
    pub weights: Vec<f64>,
    pub parts: Vec<DiscreteLaw>,
}

impl ConvexDecomposition {
    pub fn reconstruct(&self) -> Result<DiscreteLaw> {
        let pairs: Vec<(f64, &DiscreteLaw)> = self.weights.iter().copied().zip(&self.parts).collect();
        DiscreteLaw::mixture(&pairs)
    }

    /// Largest atomwise mass error of the reconstruction against `law`.
    pub fn reconstruction_error(&self, law: &DiscreteLaw) -> f64 {
        law.iter()
            .map(|(x, m)| {
                let rebuilt: f64 = self
                    .weights
                    .iter()
                    .zip(&self.parts)
                    .map(|(w, p)| w * p.iter().filter(|(y, _)| *y == x).map(|(_, q)| q).sum::<f64>())
                    .sum();
                (rebuilt - m).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Largest |Pf − part·f| over parts and constraints.
    pub fn constraint_error(&self, law: &DiscreteLaw, constraints: &[Constraint]) -> f64 {
        let mut worst: f64 = 0.0;
        for f in constraints {
            let target = law.expect(f);
            for p in &self.parts {
                worst = worst.max((p.expect(f) - target).abs());
            }
        }
        worst
    }
}

struct Component {
    atoms: Vec<f64>,
    masses: Vec<f64>,
}

impl Component {
    fn to_law(&self) -> Result<DiscreteLaw> {
        DiscreteLaw::from_parts(&self.atoms, &self.masses)
    }
}

// A direction r ≠ 0 with Σr_j = 0 and Σ r_j f_i(x_j) = 0.
fn null_direction(atoms: &[f64], constraints: &[Constraint]) -> Result<Vec<f64>> {
    let m = atoms.len();
    let mut mat = DMatrix::zeros(m, m);
    for j in 0..m {
        mat[(0, j)] = 1.0;
    }
    for (i, f) in constraints.iter().enumerate() {
        let row: Vec<f64> = atoms.iter().map(|&x| f(x)).collect();
        let scale = row.iter().fold(0.0f64, |s, v| s.max(v.abs())).max(f64::MIN_POSITIVE);
        for (j, v) in row.iter().enumerate() {
            mat[(i + 1, j)] = v / scale;
        }
    }
    let svd = mat.clone().svd(false, true);
    let vt = svd.v_t.ok_or(Error::NumericalRankFailure(f64::NAN))?;
    let (idx, smin) = svd
        .singular_values
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |(bi, bv), (i, &v)| if v < bv { (i, v) } else { (bi, bv) });
    if smin > RANK_TOL * m as f64 {
        return Err(Error::NumericalRankFailure(smin));
    }
    let r: Vec<f64> = vt.row(idx).iter().copied().collect();
    let resid = (&mat * nalgebra::DVector::from_vec(r.clone())).amax();
    if resid > RANK_TOL * m as f64 {
        return Err(Error::NumericalRankFailure(resid));
    }
    Ok(r)
}

// Moves mass along ±r to the boundary. Returns (λ, plus, minus).
fn split(c: &Component, r: &[f64]) -> (f64, Component, Component) {
    let mut eps_plus = f64::INFINITY;
    let mut eps_minus = f64::INFINITY;
    let (mut hit_plus, mut hit_minus) = (0, 0);
    for (j, (&p, &rj)) in c.masses.iter().zip(r).enumerate() {
        if rj < 0.0 && p / -rj < eps_plus {
            eps_plus = p / -rj;
            hit_plus = j;
        }
        if rj > 0.0 && p / rj < eps_minus {
            eps_minus = p / rj;
            hit_minus = j;
        }
    }
    let side = |eps: f64, sign: f64, hit: usize| {
        let mut atoms = Vec::new();
        let mut masses = Vec::new();
        for (j, (&x, (&p, &rj))) in c.atoms.iter().zip(c.masses.iter().zip(r)).enumerate() {
            let q = p + sign * eps * rj;
            if j != hit && q > 1e-15 {
                atoms.push(x);
                masses.push(q);
            }
        }
        let total: f64 = masses.iter().sum();
        masses.iter_mut().for_each(|q| *q /= total);
        Component { atoms, masses }
    };
    let lambda = eps_minus / (eps_plus + eps_minus);
    (lambda, side(eps_plus, 1.0, hit_plus), side(eps_minus, -1.0, hit_minus))
}

fn check_constraints(law: &DiscreteLaw, constraints: &[Constraint]) -> Result<()> {
    if constraints.is_empty() {
        return Err(Error::BadInput("need at least one constraint".into()));
    }
    if law.is_empty() {
        return Err(Error::EmptySupport);
    }
    Ok(())
}

/// Splits `law` into parts on at most k+1 atoms, each preserving every Pf_i.
pub fn extreme_point_decompose(law: &DiscreteLaw, constraints: &[Constraint]) -> Result<ConvexDecomposition> {
    check_constraints(law, constraints)?;
    let limit = constraints.len() + 1;
    let mut stack = vec![(1.0, Component { atoms: law.atoms().to_vec(), masses: law.masses().to_vec() })];
    let mut weights = Vec::new();
    let mut parts = Vec::new();
    while let Some((w, c)) = stack.pop() {
        if c.atoms.len() <= limit {
            weights.push(w);
            parts.push(c.to_law()?);
            continue;
        }
        let r = null_direction(&c.atoms, constraints)?;
        let (lambda, plus, minus) = split(&c, &r);
        stack.push((w * (1.0 - lambda), minus));
        stack.push((w * lambda, plus));
    }
    Ok(ConvexDecomposition { weights, parts })
}

/// One law on at most k+1 atoms of the support with the same Pf_i.
pub fn richter_reduce(law: &DiscreteLaw, constraints: &[Constraint]) -> Result<DiscreteLaw> {
    check_constraints(law, constraints)?;
    let limit = constraints.len() + 1;
    let mut c = Component { atoms: law.atoms().to_vec(), masses: law.masses().to_vec() };
    while c.atoms.len() > limit {
        let r = null_direction(&c.atoms, constraints)?;
        c = split(&c, &r).1;
    }
    c.to_law()
}

/// Masses of the standardized law on a < b < c, if it is a probability law.
pub fn three_point_masses(a: f64, b: f64, c: f64) -> Option<[f64; 3]> {
    let pa = (1.0 + b * c) / ((a - b) * (a - c));
    let pb = (1.0 + a * c) / ((b - a) * (b - c));
    let pc = (1.0 + a * b) / ((c - a) * (c - b));
    let ok = [pa, pb, pc].iter().all(|p| p.is_finite() && *p >= 0.0);
    ok.then_some([pa, pb, pc])
}

fn nu3(a: f64, b: f64, c: f64) -> Option<f64> {
    three_point_masses(a, b, c).map(|p| p[0] * a.abs().powi(3) + p[1] * b.abs().powi(3) + p[2] * c.abs().powi(3))
}

/// All c in (b, hi] with ν₃ = ρ for the standardized law on {a, b, c}.
fn solve_third_atom(a: f64, b: f64, rho: f64, hi: f64) -> Vec<f64> {
    const SCAN: usize = 64;
    let lo = b + 1e-9 * (1.0 + b.abs());
    let g = |c: f64| nu3(a, b, c).map(|v| v - rho);
    let mut out = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=SCAN {
        let c = lo + (hi - lo) * i as f64 / SCAN as f64;
        let cur = g(c).map(|v| (c, v));
        if let (Some((c0, v0)), Some((c1, v1))) = (prev, cur) {
            if v0 == 0.0 {
                out.push(c0);
            } else if v0 * v1 < 0.0 {
                let (mut l, mut h, mut vl) = (c0, c1, v0);
                for _ in 0..100 {
                    let mid = 0.5 * (l + h);
                    match g(mid) {
                        Some(vm) if vm * vl > 0.0 => {
                            l = mid;
                            vl = vm;
                        }
                        Some(_) => h = mid,
                        None => break,
                    }
                }
                out.push(0.5 * (l + h));
            }
        }
        prev = cur;
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThreePointSearch {
    pub rho: f64,
    pub sup_value: f64,
    pub witness: DiscreteLaw,
    /// ζ₃ at the two-point corner P_ρ.
    pub corner_value: f64,
    /// B(ρ)/6.
    pub bound: f64,
    pub evaluated: usize,
    pub skipped: usize,
}

impl ThreePointSearch {
    pub fn certified(&self) -> bool {
        self.sup_value <= self.bound + 1e-6 && (self.corner_value - self.bound).abs() <= 1e-6
    }
}

fn candidate(a: f64, b: f64, c: f64) -> Option<DiscreteLaw> {
    let p = three_point_masses(a, b, c)?;
    DiscreteLaw::from_parts(&[a, b, c], &p).ok().filter(|l| l.is_standardized(1e-9))
}

/// ζ₃(P, ½(δ₋₁+δ₁)) maximized over standardized three-point laws with ν₃ = ρ.
pub fn extremal_three_point_search(rho: f64, grid_density: usize) -> Result<ThreePointSearch> {
    if !(rho >= 1.0 && rho.is_finite()) {
        return Err(Error::BadRho(rho));
    }
    let q = DiscreteLaw::rademacher();
    let bound = b_of_rho(rho)? / 6.0;
    let corner = two_point_law(rho)?;
    let corner_value = zeta_discrete(&corner, &q, 3)?.max(zeta_discrete(&corner.reflect(), &q, 3)?);
    let mut best = (corner_value, corner.clone());
    if rho - 1.0 < 1e-12 {
        return Ok(ThreePointSearch { rho, sup_value: best.0, witness: best.1, corner_value, bound, evaluated: 0, skipped: 0 });
    }
    let n = grid_density.max(2);
    let reach = rho + 2.0;
    let score = |l: &DiscreteLaw| zeta_discrete(l, &q, 3).ok();
    let rows: Vec<(f64, Option<(f64, DiscreteLaw)>, usize, usize)> = (1..=n)
        .into_par_iter()
        .map(|i| {
            // a < 0 always, since the mean vanishes.
            let a = -reach * i as f64 / n as f64;
            let mut local: Option<(f64, DiscreteLaw)> = None;
            let (mut done, mut skip) = (0, 0);
            for j in 1..n {
                let b = a + (reach - a) * j as f64 / n as f64;
                let cs = solve_third_atom(a, b, rho, reach.max(b + 1e-6) * 1.5);
                if cs.is_empty() {
                    skip += 1;
                }
                for c in cs {
                    if let Some(v) = candidate(a, b, c).and_then(|l| score(&l).map(|v| (v, l))) {
                        done += 1;
                        if local.as_ref().is_none_or(|(bv, _)| v.0 > *bv) {
                            local = Some(v);
                        }
                    } else {
                        skip += 1;
                    }
                }
            }
            (a, local, done, skip)
        })
        .collect();
    let mut evaluated = 0;
    let mut skipped = 0;
    for (_, local, done, skip) in rows {
        evaluated += done;
        skipped += skip;
        if let Some((v, l)) = local {
            if v > best.0 {
                best = (v, l);
            }
        }
    }
    // Coordinate refinement around the best interior node.
    if best.1.len() == 3 {
        let (mut a, mut b) = (best.1.atoms()[0], best.1.atoms()[1]);
        let mut step = reach / n as f64;
        while step > 1e-10 {
            let mut moved = false;
            for (da, db) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
                let (na, nb) = (a + da, b + db);
                if !(na < 0.0 && nb > na) {
                    continue;
                }
                for c in solve_third_atom(na, nb, rho, reach.max(nb + 1e-6) * 1.5) {
                    if let Some((v, l)) = candidate(na, nb, c).and_then(|l| score(&l).map(|v| (v, l))) {
                        evaluated += 1;
                        if v > best.0 {
                            best = (v, l);
                            a = na;
                            b = nb;
                            moved = true;
                        }
                    }
                }
            }
            if !moved {
                step /= 2.0;
            }
        }
    }
    Ok(ThreePointSearch { rho, sup_value: best.0, witness: best.1, corner_value, bound, evaluated, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{rng, random_standardized};

    fn x(v: f64) -> f64 {
        v
    }
    fn x2(v: f64) -> f64 {
        v * v
    }
    fn x3abs(v: f64) -> f64 {
        v.abs().powi(3)
    }

    #[test]
    fn five_atoms_two_constraints() {
        let law = DiscreteLaw::from_parts(&[-2.0, -0.5, 0.1, 1.0, 2.5], &[0.1, 0.3, 0.2, 0.3, 0.1])
            .unwrap()
            .standardize()
            .unwrap();
        let cons: [Constraint; 2] = [&x, &x2];
        let d = extreme_point_decompose(&law, &cons).unwrap();
        assert!(d.parts.iter().all(|p| p.len() <= 3 && p.is_standardized(1e-9)));
        assert!((d.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(d.reconstruction_error(&law) < 1e-10);
    }

    #[test]
    fn small_supports_are_kept() {
        let law = DiscreteLaw::from_parts(&[-1.0, 0.0, 2.0], &[0.3, 0.3, 0.4]).unwrap();
        let cons: [Constraint; 2] = [&x, &x2];
        let d = extreme_point_decompose(&law, &cons).unwrap();
        assert_eq!(d.weights, vec![1.0]);
        assert_eq!(d.parts[0], law);
        let two = DiscreteLaw::bernoulli(0.3).unwrap();
        assert_eq!(richter_reduce(&two, &cons).unwrap(), two);
    }

    #[test]
    fn richter_keeps_three_functionals() {
        let law = random_standardized(&mut rng(11), 6, 6).unwrap();
        let cons: [Constraint; 3] = [&x, &x2, &x3abs];
        let q = richter_reduce(&law, &cons).unwrap();
        assert!(q.len() <= 4);
        for f in cons {
            assert!((q.expect(f) - law.expect(f)).abs() < 1e-9);
        }
        let cons2: [Constraint; 2] = [&x, &x2];
        let q = richter_reduce(&law, &cons2).unwrap();
        assert!(q.len() <= 3 && q.is_standardized(1e-9));
    }

    #[test]
    fn three_point_search_small_rho() {
        let s = extremal_three_point_search(1.0, 20).unwrap();
        assert_eq!(s.sup_value, 0.0);
        let s = extremal_three_point_search(1.5, 60).unwrap();
        assert!((s.corner_value - 0.205898).abs() < 1e-6, "{}", s.corner_value);
        assert!(s.certified(), "{s:?}");
    }
}
