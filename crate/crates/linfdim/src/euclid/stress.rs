use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::grid::tri_grid_embedding;
use crate::error::{invalid, Result};
use crate::graph_core::MetricGraph;

/// Outcome of [`rigidity_probe`]. Numerical evidence only: a residual that
/// stays away from zero suggests, but does not prove, that no embedding
/// exists in the target dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct RigidityProbe {
    pub r: usize,
    pub target_dim: usize,
    pub best_residual: f64,
    pub residuals: Vec<f64>,
}

const DESCENT_ITERS: usize = 5_000;
const POLISH_ITERS: usize = 200;

/// `Σ (|x_u - x_v|² - d²)²` and its gradient.
fn stress(mg: &MetricGraph<f64>, dim: usize, x: &[f64], grad: &mut [f64]) -> f64 {
    grad.iter_mut().for_each(|g| *g = 0.0);
    let mut total = 0.0;
    for (e, &(u, v)) in mg.graph().edges().iter().enumerate() {
        let (pu, pv) = (&x[u * dim..(u + 1) * dim], &x[v * dim..(v + 1) * dim]);
        let sq: f64 = pu.iter().zip(pv).map(|(a, b)| (a - b) * (a - b)).sum();
        let d = mg.d(e);
        let res = sq - d * d;
        total += res * res;
        for t in 0..dim {
            let g = 4.0 * res * (x[u * dim + t] - x[v * dim + t]);
            grad[u * dim + t] += g;
            grad[v * dim + t] -= g;
        }
    }
    total
}

/// Gradient descent with Barzilai-Borwein steps and a backtracking
/// fallback. Returns the final stress.
fn minimize(mg: &MetricGraph<f64>, dim: usize, x: &mut [f64]) -> f64 {
    let len = x.len();
    let mut grad = vec![0.0; len];
    let mut trial = vec![0.0; len];
    let mut trial_grad = vec![0.0; len];
    let mut f = stress(mg, dim, x, &mut grad);
    let mut step = 1e-2;
    for _ in 0..DESCENT_ITERS {
        let gg: f64 = grad.iter().map(|g| g * g).sum();
        if f < 1e-30 || gg < 1e-32 {
            break;
        }
        let mut accepted = false;
        for _ in 0..60 {
            for i in 0..len {
                trial[i] = x[i] - step * grad[i];
            }
            let ft = stress(mg, dim, &trial, &mut trial_grad);
            if ft <= f - 1e-4 * step * gg || (ft < f && step < 1e-12) {
                let (mut ss, mut sy) = (0.0, 0.0);
                for i in 0..len {
                    let s = trial[i] - x[i];
                    ss += s * s;
                    sy += s * (trial_grad[i] - grad[i]);
                }
                x.copy_from_slice(&trial);
                grad.copy_from_slice(&trial_grad);
                f = ft;
                step = if sy > 0.0 { (ss / sy).min(1e3) } else { step * 2.0 };
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    f
}

/// Damped Newton on the stress, with the residuals `|x_u - x_v|² - d²`.
/// Plain descent stalls near tight triangles, where the stress is quartic;
/// Newton still shrinks the error by a constant factor there.
fn polish(mg: &MetricGraph<f64>, dim: usize, x: &mut [f64], mut f: f64) -> f64 {
    let len = x.len();
    let edges = mg.graph().edges();
    let residuals = |x: &[f64]| -> Vec<f64> {
        edges
            .iter()
            .enumerate()
            .map(|(e, &(u, v))| {
                let sq: f64 = (0..dim).map(|t| (x[u * dim + t] - x[v * dim + t]).powi(2)).sum();
                sq - mg.d(e) * mg.d(e)
            })
            .collect()
    };
    let mut mu = 1e-3;
    let mut res = residuals(x);
    for _ in 0..POLISH_ITERS {
        if f < 1e-30 {
            break;
        }
        let mut jac = DMatrix::<f64>::zeros(edges.len(), len);
        for (e, &(u, v)) in edges.iter().enumerate() {
            for t in 0..dim {
                let g = 2.0 * (x[u * dim + t] - x[v * dim + t]);
                jac[(e, u * dim + t)] = g;
                jac[(e, v * dim + t)] = -g;
            }
        }
        let jt = jac.transpose();
        let rhs = -(&jt * DVector::from_vec(res.clone()));
        let mut normal = &jt * &jac;
        for (e, &(u, v)) in edges.iter().enumerate() {
            let w = 2.0 * res[e];
            for t in 0..dim {
                let (a, b) = (u * dim + t, v * dim + t);
                normal[(a, a)] += w;
                normal[(b, b)] += w;
                normal[(a, b)] -= w;
                normal[(b, a)] -= w;
            }
        }
        let mut improved = false;
        while mu < 1e12 {
            let damped = &normal + DMatrix::<f64>::identity(len, len) * mu;
            let Some(chol) = damped.cholesky() else {
                mu *= 10.0;
                continue;
            };
            let step = chol.solve(&rhs);
            let trial: Vec<f64> = x.iter().zip(step.iter()).map(|(a, s)| a + s).collect();
            let tres = residuals(&trial);
            let ft: f64 = tres.iter().map(|r| r * r).sum();
            if ft < f {
                x.copy_from_slice(&trial);
                res = tres;
                f = ft;
                mu = (mu / 3.0).max(1e-15);
                improved = true;
                break;
            }
            mu *= 4.0;
        }
        if !improved {
            break;
        }
    }
    f
}

/// Coordinates of the points along their `dim` main principal axes.
fn principal_projection(x: &[f64], n: usize, from: usize, dim: usize) -> Vec<f64> {
    let pts = DMatrix::from_row_slice(n, from, x);
    let mean = pts.row_mean();
    let centered = DMatrix::from_fn(n, from, |i, j| pts[(i, j)] - mean[j]);
    let eig = (centered.transpose() * &centered).symmetric_eigen();
    let mut order: Vec<usize> = (0..from).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let mut out = Vec::with_capacity(n * dim);
    for i in 0..n {
        for &k in &order[..dim] {
            out.push(centered.row(i).dot(&eig.eigenvectors.column(k).transpose()));
        }
    }
    out
}

/// Minimizes the stress of the triangular-grid distances in `target_dim`
/// dimensions from `attempts` random starts; the residual of an attempt is
/// the square root of its final stress. Each attempt also starts once in
/// dimension `max(target_dim, r)` and projects the result down.
pub fn rigidity_probe(r: usize, target_dim: usize, attempts: usize, seed: u64) -> Result<RigidityProbe> {
    if target_dim == 0 || attempts == 0 {
        return invalid("target dimension and attempts must be positive");
    }
    let t = tri_grid_embedding(r)?;
    let n = t.graph().n();
    let metric = &t.metric;
    let lift = target_dim.max(r);
    let residuals: Vec<f64> = (0..attempts)
        .map(|a| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(a as u64));
            let mut direct: Vec<f64> = (0..n * target_dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let f = minimize(metric, target_dim, &mut direct);
            let f_direct = polish(metric, target_dim, &mut direct, f);
            let mut lifted: Vec<f64> = (0..n * lift).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let f = minimize(metric, lift, &mut lifted);
            polish(metric, lift, &mut lifted, f);
            let mut x = principal_projection(&lifted, n, lift, target_dim);
            let f = minimize(metric, target_dim, &mut x);
            let f_lifted = polish(metric, target_dim, &mut x, f);
            f_direct.min(f_lifted).sqrt()
        })
        .collect();
    let best_residual = residuals.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(RigidityProbe {
        r,
        target_dim,
        best_residual,
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_probes() {
        let p = rigidity_probe(3, 1, 50, 7).unwrap();
        assert!(p.best_residual > 0.1, "{}", p.best_residual);
        let p = rigidity_probe(3, 2, 10, 7).unwrap();
        assert!(p.best_residual < 1e-8, "{}", p.best_residual);
        // The best stress found here sits near 0.008, not zero.
        let p = rigidity_probe(4, 2, 50, 7).unwrap();
        assert!(p.best_residual > 1e-3, "{}", p.best_residual);
        let p = rigidity_probe(5, 4, 10, 7).unwrap();
        assert!(p.best_residual < 1e-8, "{}", p.best_residual);
    }
}
