//! The explicit bound functions, evaluated exactly while they stay small
//! and as base-2 logarithms once they do not.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{invalid, Result};

/// Exact values above this many bits are kept as logarithms.
const EXACT_BITS: f64 = 4096.0;

#[derive(Clone, Debug, PartialEq)]
pub enum Magnitude {
    Exact(BigUint),
    /// `log2` of the value.
    Log2(f64),
    /// Too large even for a double-precision logarithm.
    Beyond,
}

impl Magnitude {
    pub fn int(v: u64) -> Self {
        Magnitude::Exact(BigUint::from(v))
    }

    pub fn log2(&self) -> Option<f64> {
        match self {
            Magnitude::Exact(x) => Some(big_log2(x)),
            Magnitude::Log2(l) => Some(*l),
            Magnitude::Beyond => None,
        }
    }

    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            Magnitude::Exact(x) => Some(x),
            _ => None,
        }
    }

    fn from_log2(l: f64) -> Self {
        if l.is_finite() {
            Magnitude::Log2(l)
        } else {
            Magnitude::Beyond
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        match (self, o) {
            (Magnitude::Exact(a), Magnitude::Exact(b)) => Magnitude::Exact(a + b),
            _ => match (self.log2(), o.log2()) {
                (Some(a), Some(b)) => {
                    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
                    Magnitude::from_log2(hi + (1.0 + (lo - hi).exp2()).log2())
                }
                _ => Magnitude::Beyond,
            },
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (Magnitude::Exact(a), Magnitude::Exact(b)) if big_log2(a) + big_log2(b) <= EXACT_BITS => {
                Magnitude::Exact(a * b)
            }
            _ => match (self.log2(), o.log2()) {
                (Some(a), Some(b)) => Magnitude::from_log2(a + b),
                _ => Magnitude::Beyond,
            },
        }
    }

    pub fn pow(&self, e: &Self) -> Self {
        if let Magnitude::Exact(b) = self {
            if b.is_zero() || b.is_one() {
                return self.clone();
            }
        }
        let lb = match self.log2() {
            Some(l) => l,
            None => return Magnitude::Beyond,
        };
        if let (Magnitude::Exact(b), Magnitude::Exact(x)) = (self, e) {
            if let Some(x) = x.to_u32() {
                if lb * f64::from(x) <= EXACT_BITS {
                    return Magnitude::Exact(b.pow(x));
                }
            }
        }
        match e {
            Magnitude::Exact(x) => Magnitude::from_log2(lb * x.to_f64().unwrap_or(f64::INFINITY)),
            Magnitude::Log2(le) => Magnitude::from_log2(lb * le.exp2()),
            Magnitude::Beyond => Magnitude::Beyond,
        }
    }

    pub fn max(&self, o: &Self) -> Self {
        match (self, o) {
            (Magnitude::Exact(a), Magnitude::Exact(b)) => Magnitude::Exact(a.max(b).clone()),
            _ => match (self.log2(), o.log2()) {
                (Some(a), Some(b)) => {
                    if a >= b {
                        self.clone()
                    } else {
                        o.clone()
                    }
                }
                _ => Magnitude::Beyond,
            },
        }
    }

    /// `self <= o`, as far as the representation can tell.
    pub fn le(&self, o: &Self) -> bool {
        match (self, o) {
            (Magnitude::Exact(a), Magnitude::Exact(b)) => a <= b,
            (_, Magnitude::Beyond) => true,
            (Magnitude::Beyond, _) => false,
            _ => self.log2().unwrap() <= o.log2().unwrap() + 1e-9,
        }
    }
}

fn big_log2(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap().log2();
    }
    let top = (x >> (bits - 64)).to_f64().unwrap();
    top.log2() + (bits - 64) as f64
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Magnitude::Exact(x) if x.bits() <= 256 => write!(f, "{x}"),
            Magnitude::Exact(x) => write!(f, "2^{:.3}", big_log2(x)),
            Magnitude::Log2(l) => write!(f, "2^{l:.3}"),
            Magnitude::Beyond => write!(f, "beyond 2^(2^1024)"),
        }
    }
}

fn m(v: u64) -> Magnitude {
    Magnitude::int(v)
}

pub fn ladder(k: &Magnitude) -> Magnitude {
    m(12).mul(&k.pow(&m(2))).add(&m(7).mul(k))
}

pub fn fan_path_claim(k: &Magnitude, q: &Magnitude) -> Magnitude {
    m(3).mul(&m(8).mul(&k.pow(&m(3))).pow(q))
}

pub fn degree_bound(k: &Magnitude) -> Magnitude {
    fan_path_claim(k, k)
}

pub fn subdivided_fan(k: &Magnitude) -> Magnitude {
    m(8).mul(&k.pow(&m(4)))
        .add(&m(4).mul(&k.pow(&m(3))))
        .add(&m(10).mul(k))
}

pub fn non_subdivided_fan(k: &Magnitude) -> Magnitude {
    m(20).mul(&k.pow(&m(5)))
        .add(&m(14).mul(&k.pow(&m(4))))
        .add(&m(2).mul(&k.pow(&m(3))))
        .add(&m(5).mul(k))
}

pub fn no_big_fan(k: &Magnitude) -> Magnitude {
    let s = subdivided_fan(k);
    non_subdivided_fan(k).mul(&s.add(&m(1))).add(&s)
}

pub fn fans_vs_ladders(k: &Magnitude) -> Magnitude {
    k.pow(&k.pow(&m(2)).add(&m(2)))
}

pub fn short_path(k: &Magnitude) -> Magnitude {
    degree_bound(&fans_vs_ladders(&no_big_fan(&ladder(k))))
}

pub fn two_reduction(k: &Magnitude, p: &Magnitude) -> Magnitude {
    let inner = p.add(&m(1)).mul(&m(2).pow(p)).add(&k.mul(&p.pow(&m(3))));
    inner.pow(&p.add(&m(1)))
}

pub fn bounded_tau(k: &Magnitude) -> Magnitude {
    two_reduction(k, &short_path(k))
}

pub fn three_connected(k: &Magnitude) -> Magnitude {
    m(5).mul(&bounded_tau(k))
}

pub fn final_gluing(k: &Magnitude, big_m: &Magnitude) -> Magnitude {
    m(2).mul(k).add(&m(11)).mul(big_m).mul(&bounded_tau(k))
}

pub fn outerplanar_gluing(k: &Magnitude, big_m: &Magnitude) -> Magnitude {
    m(3).pow(k).mul(big_m)
}

pub fn treewidth2_gluing(k: &Magnitude, big_m: &Magnitude) -> Magnitude {
    m(3).pow(&k.pow(&m(2))).mul(big_m)
}

/// `γ_{6k}(k)` with `γ_0 = three_connected(k)` and
/// `γ_i = max(treewidth2_gluing(k, γ_{i-1}), final_gluing(k, γ_{i-1}))`.
pub fn main_bound(k: u64) -> Magnitude {
    let km = m(k);
    let mut gamma = three_connected(&km);
    for _ in 0..6 * k {
        if gamma == Magnitude::Beyond {
            break;
        }
        gamma = treewidth2_gluing(&km, &gamma).max(&final_gluing(&km, &gamma));
    }
    gamma
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundTable {
    pub k: u64,
    pub p: u64,
    pub q: u64,
    pub big_m: u64,
    pub entries: Vec<(&'static str, Magnitude)>,
}

impl BoundTable {
    pub fn get(&self, name: &str) -> Option<&Magnitude> {
        self.entries.iter().find(|(n, _)| *n == name).map(|(_, v)| v)
    }

    /// Every entry of `self` is at most the same entry of `o`.
    pub fn dominated_by(&self, o: &BoundTable) -> bool {
        self.entries
            .iter()
            .zip(&o.entries)
            .all(|((_, a), (_, b))| a.le(b))
    }
}

/// All bound functions at `k` (and `p`, `q`, `M` where they take them;
/// each defaults to `k`).
pub fn bound_functions(k: u64, p: Option<u64>, q: Option<u64>, big_m: Option<u64>) -> Result<BoundTable> {
    let (p, q, big_m) = (p.unwrap_or(k), q.unwrap_or(k), big_m.unwrap_or(k));
    if k == 0 || p == 0 || q == 0 || big_m == 0 {
        return invalid("bound arguments must be positive");
    }
    let (km, pm, qm, mm) = (m(k), m(p), m(q), m(big_m));
    let entries = vec![
        ("ladder", ladder(&km)),
        ("fan_path_claim", fan_path_claim(&km, &qm)),
        ("degree_bound", degree_bound(&km)),
        ("subdivided_fan", subdivided_fan(&km)),
        ("non_subdivided_fan", non_subdivided_fan(&km)),
        ("no_big_fan", no_big_fan(&km)),
        ("fans_vs_ladders", fans_vs_ladders(&km)),
        ("short_path", short_path(&km)),
        ("two_reduction", two_reduction(&km, &pm)),
        ("bounded_tau", bounded_tau(&km)),
        ("three_connected", three_connected(&km)),
        ("outerplanar_gluing", outerplanar_gluing(&km, &mm)),
        ("treewidth2_gluing", treewidth2_gluing(&km, &mm)),
        ("final_gluing", final_gluing(&km, &mm)),
        ("main", main_bound(k)),
    ];
    Ok(BoundTable {
        k,
        p,
        q,
        big_m,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(t: &BoundTable, name: &str) -> u64 {
        t.get(name).unwrap().exact().unwrap().to_u64().unwrap()
    }

    #[test]
    fn spot_values() {
        let t1 = bound_functions(1, Some(1), Some(1), Some(1)).unwrap();
        assert_eq!(exact(&t1, "ladder"), 19);
        assert_eq!(exact(&t1, "degree_bound"), 24);
        assert_eq!(exact(&t1, "fan_path_claim"), 24);
        assert_eq!(exact(&t1, "subdivided_fan"), 22);
        assert_eq!(exact(&t1, "non_subdivided_fan"), 41);
        assert_eq!(exact(&t1, "no_big_fan"), 965);
        assert_eq!(exact(&t1, "two_reduction"), 25);
        assert_eq!(exact(&t1, "outerplanar_gluing"), 3);
        let t2 = bound_functions(2, None, None, None).unwrap();
        assert_eq!(exact(&t2, "fans_vs_ladders"), 64);
        assert_eq!(exact(&t2, "treewidth2_gluing"), 162);
        assert_eq!(t1.get("main"), Some(&Magnitude::Beyond));
    }

    #[test]
    fn monotone_in_k() {
        let tables: Vec<_> = (1..=4).map(|k| bound_functions(k, Some(1), Some(1), Some(1)).unwrap()).collect();
        for w in tables.windows(2) {
            assert!(w[0].dominated_by(&w[1]));
        }
    }

    #[test]
    fn magnitude_arithmetic() {
        let big = Magnitude::int(2).pow(&Magnitude::int(5000));
        assert!(matches!(big, Magnitude::Log2(l) if (l - 5000.0).abs() < 1e-9));
        let sum = big.add(&big);
        assert!((sum.log2().unwrap() - 5001.0).abs() < 1e-9);
        assert_eq!(Magnitude::Log2(2000.0).pow(&Magnitude::Log2(20.0)), Magnitude::Log2(2000.0 * 1048576.0));
        assert_eq!(Magnitude::Log2(2.0).pow(&Magnitude::Log2(2000.0)), Magnitude::Beyond);
        assert!(bound_functions(0, None, None, None).is_err());
    }
}
