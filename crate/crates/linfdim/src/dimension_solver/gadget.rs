use crate::error::{Error, Result};
use crate::graph_core::{Graph, MetricGraph};
use crate::scalar::{rat, Rational};

/// Each vertex `v` of `h` becomes an edge `v_1 v_2` of length 2, and each
/// edge `vw` becomes the four unit edges `v_i w_j`.
pub fn coloring_gadget(h: &Graph) -> Result<MetricGraph<Rational>> {
    let mut g = Graph::new();
    let mut d = Vec::new();
    for v in 0..h.n() {
        let a = g.add_vertex(format!("{}_1", h.name(v)))?;
        let b = g.add_vertex(format!("{}_2", h.name(v)))?;
        g.add_edge(a, b)?;
        d.push(rat(2));
    }
    for &(v, w) in h.edges() {
        for i in 0..2 {
            for j in 0..2 {
                g.add_edge(2 * v + i, 2 * w + j)?;
                d.push(rat(1));
            }
        }
    }
    MetricGraph::new(g, d)
}

/// Chromatic number by trying `k = 0, 1, ...` colourings.
pub fn chromatic_oracle(h: &Graph) -> Result<usize> {
    if h.n() > 12 {
        return Err(Error::CapExceeded {
            what: "vertex count",
            limit: 12,
            actual: h.n(),
        });
    }
    let mut colors = vec![usize::MAX; h.n()];
    Ok((0..=h.n())
        .find(|&k| colorable(h, k, 0, &mut colors))
        .unwrap())
}

fn colorable(h: &Graph, k: usize, v: usize, colors: &mut [usize]) -> bool {
    if v == h.n() {
        return true;
    }
    // A new colour only ever needs to be the next unused one.
    let used = colors[..v].iter().copied().max().map_or(0, |c| c + 1);
    for c in 0..k.min(used + 1) {
        if h.neighbors(v).iter().any(|&w| w < v && colors[w] == c) {
            continue;
        }
        colors[v] = c;
        if colorable(h, k, v + 1, colors) {
            return true;
        }
    }
    colors[v] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::generators::{complete, cycle, petersen};

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_oracle(&cycle(5).unwrap()).unwrap(), 3);
        assert_eq!(chromatic_oracle(&complete(4).unwrap()).unwrap(), 4);
        assert_eq!(chromatic_oracle(&petersen()).unwrap(), 3);
        assert_eq!(chromatic_oracle(&Graph::new()).unwrap(), 0);
        assert!(chromatic_oracle(&cycle(13).unwrap()).is_err());
    }

    #[test]
    fn gadget_shape() {
        let k1 = complete(1).unwrap();
        let g = coloring_gadget(&k1).unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
        assert_eq!(g.d(0), &rat(2));
        let k2 = coloring_gadget(&complete(2).unwrap()).unwrap();
        assert_eq!((k2.n(), k2.m()), (4, 6));
        assert_eq!(k2.d_by_names("v1_1", "v2_2"), Some(&rat(1)));
    }
}
