use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::L2_TOLERANCE;
use crate::error::{invalid, Result};
use crate::graph_core::generators::{grid_name, tri_grid};
use crate::graph_core::{EdgeId, Graph, MetricGraph};
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct L2Embedding {
    pub phi: Vec<Vec<f64>>,
    pub tolerance: f64,
}

impl L2Embedding {
    pub fn dim(&self) -> usize {
        self.phi.first().map_or(0, Vec::len)
    }

    pub fn gap(&self, u: usize, v: usize) -> f64 {
        self.phi[u]
            .iter()
            .zip(&self.phi[v])
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct L2Verdict {
    pub valid: bool,
    /// Edge with the largest `| ||φ(u) - φ(v)|| - d |`, if any edge exists.
    pub worst_edge: Option<EdgeId>,
    pub worst_error: f64,
}

pub fn verify_l2(mg: &MetricGraph<f64>, emb: &L2Embedding, tol: f64) -> L2Verdict {
    let g = mg.graph();
    let mut worst: Option<(EdgeId, f64)> = None;
    if emb.phi.len() != g.n() {
        return L2Verdict {
            valid: false,
            worst_edge: None,
            worst_error: f64::INFINITY,
        };
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let err = (emb.gap(u, v) - mg.d(e)).abs();
        // NaN counts as the worst possible error.
        if worst.is_none_or(|(_, w)| !(err <= w)) {
            worst = Some((e, err));
        }
    }
    let worst_error = worst.map_or(0.0, |(_, w)| if w.is_nan() { f64::INFINITY } else { w });
    L2Verdict {
        valid: worst_error <= tol,
        worst_edge: worst.map(|(e, _)| e),
        worst_error,
    }
}

/// The triangular grid with its midpoint embedding and the distances it
/// induces, both as floats and as exact squares.
#[derive(Clone, Debug)]
pub struct TriGridL2 {
    pub r: usize,
    pub metric: MetricGraph<f64>,
    pub embedding: L2Embedding,
    /// Exact coordinates; all dyadic.
    pub exact_phi: Vec<Vec<Rational>>,
    pub squared: Vec<Rational>,
}

impl TriGridL2 {
    pub fn graph(&self) -> &Graph {
        self.metric.graph()
    }

    /// Each distance rounded up to a multiple of `1/denominator`, computed
    /// exactly from the squares. Rounding up keeps every triangle
    /// inequality of the true distances.
    pub fn rationalized(&self, denominator: u64) -> MetricGraph<Rational> {
        let den = BigUint::from(denominator);
        let d = self
            .squared
            .iter()
            .map(|q| {
                let num = q.numer().magnitude() * &den * &den;
                let t = num.div_ceil(q.denom().magnitude());
                let mut s = t.sqrt();
                if &s * &s < t {
                    s += 1u32;
                }
                BigRational::new(BigInt::from(s), BigInt::from(den.clone()))
            })
            .collect();
        MetricGraph::new_unchecked(self.graph().clone(), d)
    }

    /// `2^r * 10^9`.
    pub fn default_denominator(&self) -> u64 {
        (1u64 << self.r) * 1_000_000_000
    }
}

/// `φ(v_{1,j}) = e_j` and `φ(v_{i,j})` the midpoint of `φ(v_{i-1,j-1})` and
/// `φ(v_{i-1,j})`.
pub fn tri_grid_embedding(r: usize) -> Result<TriGridL2> {
    if r < 2 {
        return invalid("the triangular grid needs r >= 2");
    }
    let g = tri_grid(r)?;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut exact: Vec<Vec<Rational>> = vec![Vec::new(); g.n()];
    for i in 1..=r {
        for j in i..=r {
            let v = g.vertex(&grid_name(i, j)).expect("grid vertex");
            exact[v] = if i == 1 {
                (1..=r)
                    .map(|t| if t == j { Rational::one() } else { Rational::zero() })
                    .collect()
            } else {
                let a = &exact[g.vertex(&grid_name(i - 1, j - 1)).unwrap()];
                let b = &exact[g.vertex(&grid_name(i - 1, j)).unwrap()];
                a.iter().zip(b).map(|(x, y)| (x + y) * &half).collect()
            };
        }
    }
    let squared: Vec<Rational> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            exact[u]
                .iter()
                .zip(&exact[v])
                .map(|(a, b)| (a - b) * (a - b))
                .fold(Rational::zero(), |s, x| s + x)
        })
        .collect();
    let d = squared.iter().map(|q| q.to_f64().unwrap().sqrt()).collect();
    let phi = exact
        .iter()
        .map(|p| p.iter().map(|x| x.to_f64().unwrap()).collect())
        .collect();
    Ok(TriGridL2 {
        r,
        metric: MetricGraph::new_unchecked(g, d),
        embedding: L2Embedding {
            phi,
            tolerance: L2_TOLERANCE,
        },
        exact_phi: exact,
        squared,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimplexReport {
    /// `q_j = φ(v_{1,j})`.
    pub points: Vec<Vec<f64>>,
    pub distances: Vec<Vec<f64>>,
    pub max_deviation: f64,
}

pub fn simplex_check(r: usize) -> Result<SimplexReport> {
    let t = tri_grid_embedding(r)?;
    let g = t.graph();
    let ids: Vec<usize> = (1..=r).map(|j| g.vertex(&grid_name(1, j)).unwrap()).collect();
    let points: Vec<Vec<f64>> = ids.iter().map(|&v| t.embedding.phi[v].clone()).collect();
    let distances: Vec<Vec<f64>> = ids
        .iter()
        .map(|&a| ids.iter().map(|&b| t.embedding.gap(a, b)).collect())
        .collect();
    let mut max_deviation: f64 = 0.0;
    for i in 0..r {
        for j in 0..r {
            if i != j {
                max_deviation = max_deviation.max((distances[i][j] - std::f64::consts::SQRT_2).abs());
            }
        }
    }
    Ok(SimplexReport {
        points,
        distances,
        max_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::validate_metric;
    use std::f64::consts::SQRT_2;

    #[test]
    fn triangle() {
        let t = tri_grid_embedding(2).unwrap();
        assert_eq!((t.graph().n(), t.graph().m()), (3, 3));
        let v22 = t.graph().vertex("v2,2").unwrap();
        assert_eq!(t.embedding.phi[v22], vec![0.5, 0.5]);
        let mut d: Vec<f64> = t.metric.distances().to_vec();
        d.sort_by(f64::total_cmp);
        for (x, y) in d.iter().zip([SQRT_2 / 2.0, SQRT_2 / 2.0, SQRT_2]) {
            assert!((x - y).abs() < 1e-15);
        }
        assert!(tri_grid_embedding(1).is_err());
    }

    #[test]
    fn verify_and_perturb() {
        for r in 2..=8 {
            let t = tri_grid_embedding(r).unwrap();
            assert!(verify_l2(&t.metric, &t.embedding, 1e-9).valid);
            let q = t.rationalized(t.default_denominator());
            assert!(validate_metric(q.graph(), q.distances()).unwrap().is_valid(), "r = {r}");
        }
        let t = tri_grid_embedding(6).unwrap();
        let mut emb = t.embedding.clone();
        emb.phi[3][0] += 1e-3;
        let v = verify_l2(&t.metric, &emb, 1e-9);
        assert!(!v.valid);
        let (a, b) = t.graph().edge(v.worst_edge.unwrap());
        assert!(a == 3 || b == 3);
    }

    #[test]
    fn unit_square() {
        let g = crate::graph_core::generators::cycle(4).unwrap();
        let mg = MetricGraph::uniform(g, 1.0);
        let emb = L2Embedding {
            phi: vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]],
            tolerance: 1e-9,
        };
        assert!(verify_l2(&mg, &emb, 1e-9).valid);
    }

    #[test]
    fn simplex() {
        let s = simplex_check(2).unwrap();
        assert_eq!(s.distances.len(), 2);
        assert!((s.distances[0][1] - SQRT_2).abs() < 1e-12);
        for r in [4, 7, 8] {
            let s = simplex_check(r).unwrap();
            assert!(s.max_deviation <= 1e-10);
            for i in 0..r {
                assert_eq!(s.distances[i][i], 0.0);
                for j in 0..r {
                    assert_eq!(s.distances[i][j], s.distances[j][i]);
                }
            }
        }
    }
}
