use super::{Graph, SubGraph};

/// A block is an induced subgraph; `to_parent` is sorted.
pub type Block = SubGraph;

/// Block decomposition: maximal 2-connected pieces, bridges, and isolated
/// vertices. Every edge lies in exactly one block. Blocks are returned in
/// the order the DFS closes them.
pub fn blocks(g: &Graph) -> Vec<Block> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        if g.degree(root) == 0 {
            disc[root] = timer;
            timer += 1;
            out.push(g.induced(&[root]));
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // (vertex, parent, next neighbor index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(top) = stack.last_mut() {
            let (u, parent) = (top.0, top.1);
            if top.2 < g.degree(u) {
                let w = g.neighbors(u)[top.2];
                top.2 += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    edge_stack.push((u, w));
                    stack.push((w, u, 0));
                } else if disc[w] < disc[u] {
                    low[u] = low[u].min(disc[w]);
                    edge_stack.push((u, w));
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[u]);
                    if low[u] >= disc[parent] {
                        let mut verts = Vec::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            verts.push(a);
                            verts.push(b);
                            if (a, b) == (parent, u) {
                                break;
                            }
                        }
                        verts.sort_unstable();
                        verts.dedup();
                        out.push(g.induced(&verts));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge_count(bs: &[Block]) -> usize {
        bs.iter().map(|b| b.graph.m()).sum()
    }

    #[test]
    fn bowtie_has_two_triangles() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
        let bs = blocks(&g);
        assert_eq!(bs.len(), 2);
        for b in &bs {
            assert_eq!(b.graph.n(), 3);
            assert_eq!(b.graph.m(), 3);
        }
    }

    #[test]
    fn tree_blocks_are_edges() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let bs = blocks(&g);
        assert_eq!(bs.len(), 3);
        assert!(bs.iter().all(|b| b.graph.m() == 1));
    }

    #[test]
    fn complete_graph_is_one_block() {
        let bs = blocks(&Graph::complete(4));
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].to_parent, vec![0, 1, 2, 3]);
    }

    #[test]
    fn isolated_vertices_are_blocks() {
        let g = Graph::from_edges(4, &[(1, 2)]).unwrap();
        let bs = blocks(&g);
        assert_eq!(bs.len(), 3);
        assert_eq!(edge_count(&bs), 1);
    }
}
