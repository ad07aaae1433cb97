use std::collections::BTreeMap;

use crate::error::{invalid, Error, Result};
use crate::graph_core::generators::{grid_name, square_grid, tri_grid};
use crate::graph_core::{verify_model, MinorModel};

type Point = (usize, usize);

/// The branch-set layout of a triangular grid `△_{k+2}` inside the square
/// grid `□_{2k+2}`, in 0-based grid coordinates. Each piece is a pair of
/// adjacent grid points (or one point twice).
fn red_pieces(k: usize) -> Vec<(Point, Point)> {
    let n_max = 2 * k + 2;
    let mut out = Vec::new();
    for n in 1..=k {
        out.push(((2 * n - 1, 0), (2 * n, 0)));
        out.push(((0, 2 * n - 1), (0, 2 * n)));
        for m in 1..=n {
            out.push(((2 * m - 1, n_max - 2 * n), (2 * m, n_max - 2 * n)));
            out.push(((2 * m, n_max - 1 - 2 * n), (2 * m, n_max - 2 * n)));
        }
    }
    for n in 0..=k {
        for m in 0..=n {
            out.push(((2 * m + 1, n_max - 2 - 2 * n), (2 * m + 1, n_max - 1 - 2 * n)));
        }
    }
    out.push(((0, 0), (0, 0)));
    out.push(((0, n_max - 1), (0, n_max - 1)));
    out
}

fn find(parent: &mut BTreeMap<Point, Point>, p: Point) -> Point {
    let q = *parent.entry(p).or_insert(p);
    if q == p {
        return p;
    }
    let root = find(parent, q);
    parent.insert(p, root);
    root
}

/// A `△_{k+2}`-model in `□_{2k+2}`. The branch set whose smallest point is
/// `(a, b)` becomes `v_{i,j}` with `i = 1 + ⌈a/2⌉` and `j = i + ⌈b/2⌉`.
pub fn tri_in_square_model(k: usize) -> Result<MinorModel> {
    if k == 0 {
        return invalid("k must be at least 1");
    }
    let host = square_grid(2 * k + 2)?;
    let pattern = tri_grid(k + 2)?;
    let mut parent = BTreeMap::new();
    for (a, b) in red_pieces(k) {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent.insert(ra, rb);
    }
    let points: Vec<Point> = parent.keys().copied().collect();
    let mut sets: BTreeMap<Point, Vec<Point>> = BTreeMap::new();
    for p in points {
        let root = find(&mut parent, p);
        sets.entry(root).or_default().push(p);
    }
    let mut images = vec![Vec::new(); pattern.n()];
    for mut set in sets.into_values() {
        set.sort_unstable();
        let (a, b) = set[0];
        let i = 1 + a.div_ceil(2);
        let j = i + b.div_ceil(2);
        let v = pattern
            .vertex(&grid_name(i, j))
            .ok_or_else(|| Error::Verification(format!("branch set at {a},{b} has no target")))?;
        images[v] = set
            .iter()
            .map(|&(x, y)| host.vertex(&grid_name(x + 1, y + 1)).unwrap())
            .collect();
        images[v].sort_unstable();
    }
    let model = MinorModel {
        host,
        pattern,
        images,
    };
    if !verify_model(&model) {
        return Err(Error::Verification(format!("triangular grid model for k = {k}")));
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn models() {
        for k in 1..=6 {
            let m = tri_in_square_model(k).unwrap();
            assert_eq!(m.host.n(), (2 * k + 2) * (2 * k + 2));
            assert_eq!(m.pattern.n(), (k + 2) * (k + 3) / 2);
        }
        let m = tri_in_square_model(1).unwrap();
        let v22 = m.pattern.vertex("v2,2").unwrap();
        assert_eq!(m.image_names(v22), vec!["v2,1", "v2,2", "v3,1"]);
        assert!(tri_in_square_model(0).is_err());
    }
}
