use crate::budget::{Budget, Meter};
use crate::error::Result;
use crate::graph::{min_vertex_separator, vertex_connectivity, Graph, SubGraph};

/// `h` is `2k`-connected and has at least `5k|V(h)|` edges.
pub fn is_dense_enough(h: &Graph, k: usize) -> bool {
    h.n() > 2 * k && h.m() >= 5 * k * h.n() && vertex_connectivity(h) >= 2 * k
}

/// An induced subgraph that is `2k`-connected with at least `5k|V(H)|`
/// edges, or `None`.
///
/// Works on `2k`-cores: a core piece that is not `2k`-connected is split
/// along a minimum separator (the separator joins every side), and a
/// connected enough but sparse piece loses its minimum-degree vertex.
pub fn dense_subgraph(g: &Graph, k: usize, budget: &Budget) -> Result<Option<SubGraph>> {
    let mut meter = budget.meter();
    let all: Vec<usize> = (0..g.n()).collect();
    Ok(search(g, all, k.max(1), &mut meter)?.map(|vs| g.induced(&vs)))
}

fn search(
    g: &Graph,
    vertices: Vec<usize>,
    k: usize,
    meter: &mut Meter,
) -> Result<Option<Vec<usize>>> {
    meter.tick()?;
    let core = core(g, vertices, 2 * k);
    if core.len() <= 2 * k {
        return Ok(None);
    }
    let sub = g.induced(&core);
    for comp in sub.graph.components() {
        if comp.len() <= 2 * k {
            continue;
        }
        let piece = sub.lift_all(&comp);
        let h = g.induced(&piece);
        let kappa = vertex_connectivity(&h.graph);
        if kappa < 2 * k {
            let Some(sep) = min_vertex_separator(&h.graph) else {
                continue;
            };
            let rest = h.graph.induced(
                &(0..h.graph.n())
                    .filter(|&v| !sep.contains(v))
                    .collect::<Vec<_>>(),
            );
            for side in rest.graph.components() {
                let mut next: Vec<usize> = rest
                    .lift_all(&side)
                    .into_iter()
                    .chain(sep.iter())
                    .map(|v| h.lift(v))
                    .collect();
                next.sort_unstable();
                if let Some(found) = search(g, next, k, meter)? {
                    return Ok(Some(found));
                }
            }
        } else if h.graph.m() >= 5 * k * h.graph.n() {
            return Ok(Some(piece));
        } else {
            let n = h.graph.n();
            let drop = (0..n).min_by_key(|&v| (h.graph.degree(v), v)).unwrap();
            let next = piece
                .iter()
                .copied()
                .filter(|&v| v != h.lift(drop))
                .collect();
            if let Some(found) = search(g, next, k, meter)? {
                return Ok(Some(found));
            }
        }
    }
    Ok(None)
}

/// Repeatedly deletes vertices of degree below `d` inside `vertices`.
fn core(g: &Graph, mut vertices: Vec<usize>, d: usize) -> Vec<usize> {
    let mut inside = vec![false; g.n()];
    for &v in &vertices {
        inside[v] = true;
    }
    loop {
        let before = vertices.len();
        vertices.retain(|&v| {
            let deg = g.neighbors(v).iter().filter(|&&w| inside[w]).count();
            deg >= d
        });
        for v in 0..g.n() {
            inside[v] = false;
        }
        for &v in &vertices {
            inside[v] = true;
        }
        if vertices.len() == before {
            return vertices;
        }
    }
}
