//! Hamming adjacency restricted to a cell set.

use std::collections::VecDeque;

use crate::cube::{CellSet, Point};

/// The graph induced on the members of a cell set: vertices are member ranks
/// in ascending order, edges join members at Hamming distance 1.
#[derive(Debug, Clone)]
pub struct InducedGraph {
    vertices: Vec<usize>,
    adjacency: Vec<Vec<u32>>,
}

impl InducedGraph {
    /// Build by probing, for every member, its `n * (k-1)` Hamming neighbours.
    pub fn build(s: &CellSet) -> Self {
        let params = *s.params();
        let vertices: Vec<usize> = s.iter_ranks().collect();
        let index_of = |rank: usize| vertices.binary_search(&rank).ok();
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for (vi, &rank) in vertices.iter().enumerate() {
            let p = params.unrank(rank).expect("member rank in range");
            for d in 0..params.n() {
                let step = params.weight(d);
                let own = p.coords()[d] as usize;
                for v in 0..params.k() {
                    if v == own {
                        continue;
                    }
                    let neighbour = rank + v * step - own * step;
                    if s.contains_rank(neighbour) {
                        let ni = index_of(neighbour).expect("neighbour is a member");
                        adjacency[vi].push(ni as u32);
                    }
                }
            }
            adjacency[vi].sort_unstable();
        }
        InducedGraph { vertices, adjacency }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Rank of vertex `i`.
    pub fn vertex_rank(&self, i: usize) -> usize {
        self.vertices[i]
    }

    pub fn neighbours(&self, i: usize) -> &[u32] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }
}

/// A proper 2-colouring of an induced graph, per connected component.
///
/// Components are listed by their least vertex; within each component the
/// least-rank vertex gets colour 0. Vertex lists are ascending.
#[derive(Debug, Clone)]
pub struct Coloring {
    pub color: Vec<bool>,
    pub components: Vec<Vec<u32>>,
}

/// An odd closed walk witnessing that no 2-colouring exists. Consecutive
/// points (and last-to-first) are Hamming adjacent; the length is odd.
#[derive(Debug, Clone)]
pub struct OddCycle {
    pub cycle: Vec<Point>,
}

/// BFS 2-colouring. Returns the colouring, or the first odd cycle found
/// (scanning components and edges in canonical order).
pub fn color_components(s: &CellSet, g: &InducedGraph) -> Result<Coloring, OddCycle> {
    let n = g.vertex_count();
    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut parent: Vec<u32> = vec![u32::MAX; n];
    let mut depth: Vec<u32> = vec![0; n];
    let mut components = Vec::new();

    for root in 0..n {
        if color[root].is_some() {
            continue;
        }
        let mut component = vec![root as u32];
        color[root] = Some(false);
        let mut queue = VecDeque::from([root as u32]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u as usize].expect("queued vertices are coloured");
            for &w in g.neighbours(u as usize) {
                match color[w as usize] {
                    None => {
                        color[w as usize] = Some(!cu);
                        parent[w as usize] = u;
                        depth[w as usize] = depth[u as usize] + 1;
                        component.push(w);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => {
                        return Err(odd_cycle(s, g, &parent, &depth, u, w));
                    }
                    Some(_) => {}
                }
            }
        }
        component.sort_unstable();
        components.push(component);
    }

    Ok(Coloring {
        color: color.into_iter().map(|c| c.expect("all coloured")).collect(),
        components,
    })
}

/// Close the two BFS-tree paths from `u` and `w` at their lowest common
/// ancestor. Equal colours at equal parity depths make the length odd.
fn odd_cycle(
    s: &CellSet,
    g: &InducedGraph,
    parent: &[u32],
    depth: &[u32],
    u: u32,
    w: u32,
) -> OddCycle {
    let mut up = u;
    let mut wp = w;
    let mut u_path = vec![up];
    let mut w_path = vec![wp];
    while depth[up as usize] > depth[wp as usize] {
        up = parent[up as usize];
        u_path.push(up);
    }
    while depth[wp as usize] > depth[up as usize] {
        wp = parent[wp as usize];
        w_path.push(wp);
    }
    while up != wp {
        up = parent[up as usize];
        wp = parent[wp as usize];
        u_path.push(up);
        w_path.push(wp);
    }
    // u_path ends at the common ancestor; w_path's copy of it is dropped.
    // Cycle: ancestor .. u, then the conflict edge to w, then back up.
    w_path.pop();
    u_path.reverse();
    u_path.extend(w_path);
    let params = s.params();
    OddCycle {
        cycle: u_path
            .into_iter()
            .map(|v| {
                params
                    .unrank(g.vertex_rank(v as usize))
                    .expect("vertex rank in range")
            })
            .collect(),
    }
}
