//! Undirected vertex-edge graphs of polytopes.

use serde::{Deserialize, Serialize};

/// Undirected simple graph with vertices `0..vertex_count()`.
///
/// Neighbor lists are kept sorted, so derived equality and hashing are
/// structural. Polytope graphs are connected and d-regular, but the type
/// itself does not enforce that; construction sites do.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolytopeGraph {
    adjacency: Vec<Vec<u32>>,
}

impl PolytopeGraph {
    /// Builds a graph on `n` vertices from an edge list. Duplicate edges and
    /// self-loops are rejected by debug assertions; callers pass clean lists.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            debug_assert_ne!(u, v, "self-loop {u}");
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            debug_assert!(list.windows(2).all(|w| w[0] != w[1]), "duplicate edge");
        }
        Self { adjacency }
    }

    /// Builds a graph directly from sorted adjacency lists.
    pub fn from_adjacency(adjacency: Vec<Vec<u32>>) -> Self {
        debug_assert!(adjacency.iter().all(|l| l.windows(2).all(|w| w[0] < w[1])));
        Self { adjacency }
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let adjacency = (0..n as u32)
            .map(|v| (0..n as u32).filter(|&u| u != v).collect())
            .collect();
        Self { adjacency }
    }

    /// Hypercube graph on `2^d` vertices (bit strings adjacent at Hamming
    /// distance one).
    pub fn hypercube(d: usize) -> Self {
        let n = 1usize << d;
        let adjacency = (0..n)
            .map(|v| {
                let mut list: Vec<u32> = (0..d).map(|b| (v ^ (1 << b)) as u32).collect();
                list.sort_unstable();
                list
            })
            .collect();
        Self { adjacency }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    pub fn adjacency(&self) -> &[Vec<u32>] {
        &self.adjacency
    }

    /// Edges as (u, v) pairs with u < v, in sorted order.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adjacency.iter().enumerate() {
            for &v in list {
                if (u as u32) < v {
                    out.push((u as u32, v));
                }
            }
        }
        out
    }

    /// The image of the graph under a relabeling: vertex v becomes perm[v].
    pub fn relabeled(&self, perm: &[u32]) -> Self {
        let n = self.vertex_count();
        debug_assert_eq!(perm.len(), n);
        let mut adjacency = vec![Vec::new(); n];
        for (u, list) in self.adjacency.iter().enumerate() {
            let pu = perm[u] as usize;
            adjacency[pu] = list.iter().map(|&v| perm[v as usize]).collect();
            adjacency[pu].sort_unstable();
        }
        Self { adjacency }
    }

    pub fn is_regular(&self, degree: usize) -> bool {
        self.adjacency.iter().all(|l| l.len() == degree)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        self.reachable_from(0, &vec![false; n]) == n
    }

    /// Whether the subgraph induced by the non-excluded vertices is connected.
    /// An empty induced subgraph counts as connected.
    pub fn connected_excluding(&self, excluded: &[bool]) -> bool {
        debug_assert_eq!(excluded.len(), self.vertex_count());
        let Some(start) = (0..self.vertex_count()).find(|&v| !excluded[v]) else {
            return true;
        };
        let live = excluded.iter().filter(|&&x| !x).count();
        self.reachable_from(start, excluded) == live
    }

    /// Whether the subgraph induced by `vertices` is connected (empty and
    /// singleton sets count as connected).
    pub fn induced_connected(&self, vertices: &[u32]) -> bool {
        if vertices.len() <= 1 {
            return true;
        }
        let mut excluded = vec![true; self.vertex_count()];
        for &v in vertices {
            excluded[v as usize] = false;
        }
        self.connected_excluding(&excluded)
    }

    /// Number of vertices reachable from `start` through non-excluded
    /// vertices, `start` included.
    fn reachable_from(&self, start: usize, excluded: &[bool]) -> usize {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![start];
        seen[start] = true;
        let mut count = 0;
        while let Some(v) = stack.pop() {
            count += 1;
            for &u in &self.adjacency[v] {
                let u = u as usize;
                if !seen[u] && !excluded[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        count
    }

    /// Breadth-first distances from `start`; unreachable vertices get `None`.
    pub fn bfs_distances(&self, start: u32) -> Vec<Option<u32>> {
        let n = self.vertex_count();
        let mut dist = vec![None; n];
        dist[start as usize] = Some(0);
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let dv = dist[v as usize].unwrap();
            for &u in &self.adjacency[v as usize] {
                if dist[u as usize].is_none() {
                    dist[u as usize] = Some(dv + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Graphviz rendering with vertices labeled by index and no layout hints.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph g {\n");
        for v in 0..self.vertex_count() {
            out.push_str(&format!("  {v};\n"));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        out.push_str("}\n");
        out
    }
}
