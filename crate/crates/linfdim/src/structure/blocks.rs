use std::collections::BTreeSet;

use crate::graph_core::{EdgeId, Graph, VertexId};

/// Block-cut decomposition. Each block is a sorted list of edge ids;
/// isolated vertices belong to no block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Vec<EdgeId>>,
    pub cut_vertices: Vec<VertexId>,
    pub isolated: Vec<VertexId>,
}

impl BlockDecomposition {
    pub fn block_vertices(&self, g: &Graph, i: usize) -> Vec<VertexId> {
        let set: BTreeSet<VertexId> = self.blocks[i]
            .iter()
            .flat_map(|&e| {
                let (u, v) = g.edge(e);
                [u, v]
            })
            .collect();
        set.into_iter().collect()
    }
}

struct Dfs<'a> {
    g: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<EdgeId>,
    blocks: Vec<Vec<EdgeId>>,
    cut: Vec<bool>,
}

impl Dfs<'_> {
    fn visit(&mut self, v: VertexId, parent_edge: Option<EdgeId>) {
        self.time += 1;
        self.disc[v] = self.time;
        self.low[v] = self.time;
        let mut children = 0;
        for &w in self.g.neighbors(v) {
            let e = self.g.edge_id(v, w).unwrap();
            if Some(e) == parent_edge {
                continue;
            }
            if self.disc[w] == 0 {
                children += 1;
                self.stack.push(e);
                self.visit(w, Some(e));
                self.low[v] = self.low[v].min(self.low[w]);
                if self.low[w] >= self.disc[v] {
                    if parent_edge.is_some() || children > 1 {
                        self.cut[v] = true;
                    }
                    let mut block = Vec::new();
                    while let Some(f) = self.stack.pop() {
                        block.push(f);
                        if f == e {
                            break;
                        }
                    }
                    block.sort_unstable();
                    self.blocks.push(block);
                }
            } else if self.disc[w] < self.disc[v] {
                self.stack.push(e);
                self.low[v] = self.low[v].min(self.disc[w]);
            }
        }
        if parent_edge.is_none() && children < 2 {
            self.cut[v] = false;
        }
    }
}

pub fn blocks(g: &Graph) -> BlockDecomposition {
    let n = g.n();
    let mut dfs = Dfs {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
        cut: vec![false; n],
    };
    let mut isolated = Vec::new();
    for v in 0..n {
        if g.degree(v) == 0 {
            isolated.push(v);
        } else if dfs.disc[v] == 0 {
            dfs.visit(v, None);
        }
    }
    let mut blocks = dfs.blocks;
    blocks.sort();
    BlockDecomposition {
        blocks,
        cut_vertices: (0..n).filter(|&v| dfs.cut[v]).collect(),
        isolated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::generators;

    #[test]
    fn bowtie() {
        let g = Graph::from_names(
            &["a", "b", "c", "d", "e"],
            &[("a", "b"), ("b", "c"), ("a", "c"), ("c", "d"), ("d", "e"), ("c", "e")],
        )
        .unwrap();
        let bd = blocks(&g);
        assert_eq!(bd.blocks.len(), 2);
        assert!(bd.blocks.iter().all(|b| b.len() == 3));
        assert_eq!(bd.cut_vertices, vec![g.vertex("c").unwrap()]);
    }

    #[test]
    fn tree_and_complete() {
        let t = generators::star(4).unwrap();
        let bd = blocks(&t);
        assert_eq!(bd.blocks.len(), 4);
        assert_eq!(bd.cut_vertices, vec![0]);
        let k5 = generators::complete(5).unwrap();
        let bd = blocks(&k5);
        assert_eq!(bd.blocks, vec![(0..10).collect::<Vec<_>>()]);
        assert!(bd.cut_vertices.is_empty());
    }

    #[test]
    fn path_and_isolated() {
        let mut g = generators::path(4).unwrap();
        g.add_vertex("z").unwrap();
        let bd = blocks(&g);
        assert_eq!(bd.blocks.len(), 3);
        assert_eq!(bd.cut_vertices.len(), 2);
        assert_eq!(bd.isolated, vec![4]);
        assert_eq!(bd.block_vertices(&g, 0).len(), 2);
    }
}
