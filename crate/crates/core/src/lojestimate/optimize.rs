//! Float evaluation of polynomial maps and local least-squares descent on
//! spheres and sphere-like constraint sets.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::linalg::solve_dense;
use crate::polycore::{Poly, PolyMap};

#[derive(Clone, Debug)]
struct FloatPoly {
    terms: Vec<(f64, Vec<i32>)>,
}

impl FloatPoly {
    fn new(p: &Poly) -> Self {
        let terms = p
            .terms()
            .map(|(m, c)| {
                let c = c.to_f64().expect("finite coefficient");
                (c, m.0.iter().map(|&e| e as i32).collect())
            })
            .collect();
        FloatPoly { terms }
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, e)| {
                e.iter().zip(x).fold(
                    *c,
                    |acc, (&k, &xi)| if k == 0 { acc } else { acc * xi.powi(k) },
                )
            })
            .sum()
    }
}

/// A polynomial map and its Jacobian, compiled to floats.
#[derive(Clone, Debug)]
pub struct FloatMap {
    comps: Vec<FloatPoly>,
    jac: Vec<Vec<FloatPoly>>,
}

impl FloatMap {
    pub fn new(g: &PolyMap) -> Self {
        let comps = g.components().iter().map(FloatPoly::new).collect();
        let jac = g
            .jacobian()
            .iter()
            .map(|row| row.iter().map(FloatPoly::new).collect())
            .collect();
        FloatMap { comps, jac }
    }

    pub fn dim_in(&self) -> usize {
        self.jac.first().map_or(0, Vec::len)
    }

    pub fn dim_out(&self) -> usize {
        self.comps.len()
    }

    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        self.comps.iter().map(|c| c.eval(x)).collect()
    }

    pub fn jacobian(&self, x: &[f64]) -> Vec<Vec<f64>> {
        self.jac
            .iter()
            .map(|row| row.iter().map(|p| p.eval(x)).collect())
            .collect()
    }
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn normalize(v: &mut [f64]) {
    let n = norm(v);
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
}

/// Orthonormal basis of the complement of the unit vector `w`.
fn complement_basis(w: &[f64]) -> Vec<Vec<f64>> {
    let m = w.len();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m.saturating_sub(1));
    let mut axes: Vec<usize> = (0..m).collect();
    axes.sort_by(|&a, &b| w[a].abs().total_cmp(&w[b].abs()));
    for &i in &axes {
        if basis.len() + 1 == m {
            break;
        }
        let mut v = vec![0.0; m];
        v[i] = 1.0;
        for b in std::iter::once(w).chain(basis.iter().map(Vec::as_slice)) {
            let d: f64 = v.iter().zip(b).map(|(a, b)| a * b).sum();
            v.iter_mut().zip(b).for_each(|(a, b)| *a -= d * b);
        }
        let n = norm(&v);
        if n > 1e-8 {
            v.iter_mut().for_each(|a| *a /= n);
            basis.push(v);
        }
    }
    basis
}

/// Least-squares problem ‖R(z)‖² on a constraint set given by a
/// retraction and tangent bases.
pub trait Problem: Sync {
    fn dim(&self) -> usize;
    fn retract(&self, z: &mut [f64]);
    fn tangent_basis(&self, z: &[f64]) -> Vec<Vec<f64>>;
    fn residual(&self, z: &[f64]) -> Vec<f64>;
    /// Jacobian of the residual with respect to the ambient coordinates.
    fn jacobian(&self, z: &[f64]) -> Vec<Vec<f64>>;

    /// The point of the original space that `z` represents.
    fn ambient_point(&self, z: &[f64]) -> Vec<f64>;

    fn value(&self, z: &[f64]) -> f64 {
        self.residual(z).iter().map(|x| x * x).sum()
    }
}

/// ‖g(r·w)‖² for w on the unit sphere.
pub struct SphereProblem<'a> {
    pub map: &'a FloatMap,
    pub radius: f64,
}

impl Problem for SphereProblem<'_> {
    fn dim(&self) -> usize {
        self.map.dim_in()
    }

    fn retract(&self, z: &mut [f64]) {
        normalize(z);
    }

    fn tangent_basis(&self, z: &[f64]) -> Vec<Vec<f64>> {
        complement_basis(z)
    }

    fn residual(&self, z: &[f64]) -> Vec<f64> {
        self.map.eval(&self.ambient_point(z))
    }

    fn ambient_point(&self, z: &[f64]) -> Vec<f64> {
        z.iter().map(|w| w * self.radius).collect()
    }

    fn jacobian(&self, z: &[f64]) -> Vec<Vec<f64>> {
        let x: Vec<f64> = z.iter().map(|w| w * self.radius).collect();
        let mut j = self.map.jacobian(&x);
        j.iter_mut()
            .for_each(|row| row.iter_mut().for_each(|v| *v *= self.radius));
        j
    }
}

/// ‖f(x) - f(x')‖² with x, x' = ρ(c ± v/2), ‖c‖ ≤ 1 and ‖v‖ = 1.
pub struct PairProblem<'a> {
    pub map: &'a FloatMap,
    pub separation: f64,
}

impl PairProblem<'_> {
    fn points(&self, z: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let n = self.map.dim_in();
        let rho = self.separation;
        let x = (0..n).map(|i| rho * (z[i] + z[n + i] / 2.0)).collect();
        let xp = (0..n).map(|i| rho * (z[i] - z[n + i] / 2.0)).collect();
        (x, xp)
    }
}

impl Problem for PairProblem<'_> {
    fn dim(&self) -> usize {
        2 * self.map.dim_in()
    }

    fn retract(&self, z: &mut [f64]) {
        let n = self.map.dim_in();
        let (c, v) = z.split_at_mut(n);
        let nc = norm(c);
        if nc > 1.0 {
            c.iter_mut().for_each(|x| *x /= nc);
        }
        normalize(v);
    }

    fn tangent_basis(&self, z: &[f64]) -> Vec<Vec<f64>> {
        let n = self.map.dim_in();
        let mut basis: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let mut e = vec![0.0; 2 * n];
                e[i] = 1.0;
                e
            })
            .collect();
        for b in complement_basis(&z[n..]) {
            let mut e = vec![0.0; n];
            e.extend(b);
            basis.push(e);
        }
        basis
    }

    fn ambient_point(&self, z: &[f64]) -> Vec<f64> {
        let (mut x, xp) = self.points(z);
        x.extend(xp);
        x
    }

    fn residual(&self, z: &[f64]) -> Vec<f64> {
        let (x, xp) = self.points(z);
        self.map
            .eval(&x)
            .into_iter()
            .zip(self.map.eval(&xp))
            .map(|(a, b)| a - b)
            .collect()
    }

    fn jacobian(&self, z: &[f64]) -> Vec<Vec<f64>> {
        let n = self.map.dim_in();
        let rho = self.separation;
        let (x, xp) = self.points(z);
        let (ja, jb) = (self.map.jacobian(&x), self.map.jacobian(&xp));
        ja.iter()
            .zip(&jb)
            .map(|(ra, rb)| {
                let mut row: Vec<f64> = (0..n).map(|i| rho * (ra[i] - rb[i])).collect();
                row.extend((0..n).map(|i| rho * (ra[i] + rb[i]) / 2.0));
                row
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct LocalResult {
    pub point: Vec<f64>,
    pub value: f64,
    pub converged: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchControl {
    pub max_iters: usize,
    pub tol: f64,
}

fn axpy_retract<P: Problem + ?Sized>(p: &P, z: &[f64], t: f64, dir: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = z.iter().zip(dir).map(|(a, b)| a + t * b).collect();
    p.retract(&mut out);
    out
}

/// Compass search followed by a Levenberg-Marquardt polish in tangent
/// coordinates.
pub fn local_search<P: Problem + ?Sized>(p: &P, start: &[f64], ctl: SearchControl) -> LocalResult {
    let mut z = start.to_vec();
    p.retract(&mut z);
    let mut val = p.value(&z);
    let mut h = 0.25;
    let mut iters = 0;
    while h > 1e-4 && iters < ctl.max_iters {
        iters += 1;
        let mut improved = false;
        'dirs: for b in p.tangent_basis(&z) {
            for sign in [1.0, -1.0] {
                let cand = axpy_retract(p, &z, sign * h, &b);
                let v = p.value(&cand);
                if v < val {
                    z = cand;
                    val = v;
                    improved = true;
                    break 'dirs;
                }
            }
        }
        if !improved {
            h *= 0.5;
        }
    }

    let mut lambda = 1e-3;
    let mut converged = false;
    for _ in 0..ctl.max_iters {
        if val == 0.0 {
            converged = true;
            break;
        }
        let basis = p.tangent_basis(&z);
        let r = p.residual(&z);
        let j = p.jacobian(&z);
        let jt: Vec<Vec<f64>> = j
            .iter()
            .map(|row| {
                basis
                    .iter()
                    .map(|b| row.iter().zip(b).map(|(a, c)| a * c).sum())
                    .collect()
            })
            .collect();
        let k = basis.len();
        let mut jtj = vec![vec![0.0; k]; k];
        let mut jtr = vec![0.0; k];
        for (row, ri) in jt.iter().zip(&r) {
            for a in 0..k {
                jtr[a] -= row[a] * ri;
                for b in 0..k {
                    jtj[a][b] += row[a] * row[b];
                }
            }
        }
        let scale = (0..k).map(|a| jtj[a][a]).fold(0.0f64, f64::max).max(1e-300);
        let mut stepped = false;
        while lambda < 1e12 {
            let mut a = jtj.clone();
            for (i, row) in a.iter_mut().enumerate() {
                row[i] += lambda * (row[i] + 1e-12 * scale);
            }
            let Some(delta) = solve_dense(a, jtr.clone()) else {
                lambda *= 4.0;
                continue;
            };
            let dir: Vec<f64> = (0..p.dim())
                .map(|i| basis.iter().zip(&delta).map(|(b, d)| b[i] * d).sum())
                .collect();
            let step = norm(&dir);
            let cand = axpy_retract(p, &z, 1.0, &dir);
            let v = p.value(&cand);
            if v < val {
                let rel = (val - v) / val;
                z = cand;
                val = v;
                lambda = (lambda / 3.0).max(1e-12);
                stepped = true;
                if step < ctl.tol || rel < ctl.tol {
                    converged = true;
                }
                break;
            }
            if step < ctl.tol {
                converged = true;
                break;
            }
            lambda *= 4.0;
        }
        if converged || !stepped {
            // no descent direction left at any damping: a local minimum
            converged = true;
            break;
        }
    }
    LocalResult {
        point: z,
        value: val,
        converged,
    }
}

/// Point `index` of the Halton sequence in `dim` dimensions.
fn halton(index: u64, dim: usize) -> Vec<f64> {
    const PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    (0..dim)
        .map(|d| {
            let base = PRIMES[d % PRIMES.len()];
            let (mut f, mut r, mut i) = (1.0, 0.0, index + 1);
            while i > 0 {
                f /= base as f64;
                r += f * (i % base) as f64;
                i /= base;
            }
            r
        })
        .collect()
}

/// Randomly shifted Halton points in the unit cube.
pub fn shifted_halton(count: usize, dim: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>()).collect();
    (0..count as u64)
        .map(|i| {
            halton(i, dim)
                .iter()
                .zip(&shift)
                .map(|(h, s)| (h + s).fract())
                .collect()
        })
        .collect()
}

/// Maps cube points to (nearly) uniformly distributed unit vectors.
pub fn cube_to_sphere(u: &[f64]) -> Vec<f64> {
    let normal = Normal::standard();
    let mut v: Vec<f64> = u
        .iter()
        .map(|&x| normal.inverse_cdf(x.clamp(1e-12, 1.0 - 1e-12)))
        .collect();
    if norm(&v) == 0.0 {
        v[0] = 1.0;
    }
    normalize(&mut v);
    v
}

/// Best local minimum over all starts; ties go to the lowest start index.
pub fn multistart<P: Problem>(p: &P, starts: &[Vec<f64>], ctl: SearchControl) -> LocalResult {
    let results: Vec<LocalResult> = starts.par_iter().map(|s| local_search(p, s, ctl)).collect();
    results
        .into_iter()
        .reduce(|best, r| if r.value < best.value { r } else { best })
        .expect("at least one start")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::testutil::poly;
    use crate::polycore::var_names;

    fn ctl() -> SearchControl {
        SearchControl {
            max_iters: 500,
            tol: 1e-12,
        }
    }

    #[test]
    fn complement_basis_is_orthonormal() {
        let mut w = vec![0.3, -0.4, 0.5, 0.1];
        normalize(&mut w);
        let b = complement_basis(&w);
        assert_eq!(b.len(), 3);
        for (i, u) in b.iter().enumerate() {
            let dw: f64 = u.iter().zip(&w).map(|(a, c)| a * c).sum();
            assert!(dw.abs() < 1e-12);
            for v in &b[i + 1..] {
                let d: f64 = u.iter().zip(v).map(|(a, c)| a * c).sum();
                assert!(d.abs() < 1e-12);
            }
            assert!((norm(u) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn halton_points_are_in_cube_and_deterministic() {
        let a = shifted_halton(16, 3, 5);
        assert_eq!(a, shifted_halton(16, 3, 5));
        assert_ne!(a, shifted_halton(16, 3, 6));
        assert!(a.iter().flatten().all(|&x| (0.0..1.0).contains(&x)));
        assert_eq!(halton(0, 2), vec![0.5, 1.0 / 3.0]);
    }

    #[test]
    fn float_map_matches_exact() {
        let xy = &["x", "y"];
        let g = PolyMap::new(
            var_names(xy),
            vec![
                poly(xy, &[(1, &[3, 1]), (-2, &[0, 2])]),
                poly(xy, &[(1, &[1, 0])]),
            ],
        )
        .unwrap();
        let fm = FloatMap::new(&g);
        let pt = [0.7, -1.3];
        let exact = g.evaluate(&pt).unwrap();
        let got = fm.eval(&pt);
        assert!((exact[0] - got[0]).abs() < 1e-12 && (exact[1] - got[1]).abs() < 1e-12);
        let j = fm.jacobian(&pt);
        assert!((j[0][0] - 3.0 * 0.49 * -1.3).abs() < 1e-12);
        assert!((j[0][1] - (0.343 + 5.2)).abs() < 1e-12);
    }

    #[test]
    fn sphere_minimum_of_narrow_valley() {
        // g = (x + y^2 / 4, 1e-3 (x - y)) has a narrow valley on the circle
        let xy = &["x", "y"];
        let g = PolyMap::new(var_names(xy), vec![poly(xy, &[(4, &[1, 0]), (1, &[0, 2])])]).unwrap();
        let fm = FloatMap::new(&g);
        let p = SphereProblem {
            map: &fm,
            radius: 0.1,
        };
        let starts: Vec<Vec<f64>> = shifted_halton(8, 2, 1)
            .iter()
            .map(|u| cube_to_sphere(u))
            .collect();
        let best = multistart(&p, &starts, ctl());
        // zero set 4x = -y^2 meets the circle of radius 0.1
        assert!(best.value < 1e-24, "{}", best.value);
        assert!(best.converged);
    }

    #[test]
    fn pair_problem_for_isometry() {
        let xy = &["x", "y"];
        let g = PolyMap::new(
            var_names(xy),
            vec![poly(xy, &[(1, &[1, 0])]), poly(xy, &[(1, &[0, 1])])],
        )
        .unwrap();
        let fm = FloatMap::new(&g);
        let p = PairProblem {
            map: &fm,
            separation: 0.01,
        };
        let r = local_search(&p, &[0.2, 0.1, 1.0, 1.0], ctl());
        assert!((r.value.sqrt() - 0.01).abs() < 1e-12);
    }
}
