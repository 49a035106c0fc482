//! Canonical labeling, isomorphism testing, and vertex orbits.
//!
//! Labeling uses individualization-refinement: iterated neighbor-count
//! refinement of an ordered partition, then backtracking over the first
//! non-singleton cell. Every leaf of the search is a discrete partition, i.e.
//! a relabeling; the canonical form is the relabeling whose adjacency bit
//! string (upper triangle, column by column, the graph6 bit order) is
//! lexicographically smallest. Pairs of leaves with equal bit strings differ
//! by an automorphism; the discovered automorphisms prune branches that fix
//! the individualized prefix and generate the orbit partition.

use crate::graph::PolytopeGraph;
use crate::graph6;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Canonical key of a graph: the graph6 string of its canonical form.
/// Two graphs are isomorphic exactly when their keys are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalKey(pub String);

impl std::fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// A canonically relabeled graph together with its key and the relabeling
/// that produced it (`relabeling[v]` is v's position in the canonical form).
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub key: CanonicalKey,
    pub graph: PolytopeGraph,
    pub relabeling: Vec<u32>,
}

/// Partition of the vertices into automorphism orbits, classes sorted by
/// their minimum vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    pub classes: Vec<Vec<u32>>,
}

impl OrbitPartition {
    /// Minimum vertex of each class, in class order.
    pub fn representatives(&self) -> Vec<u32> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    /// The class containing `v`.
    pub fn class_of(&self, v: u32) -> &[u32] {
        self.classes
            .iter()
            .find(|c| c.binary_search(&v).is_ok())
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Whether `u` and `v` share a class.
    pub fn same_orbit(&self, u: u32, v: u32) -> bool {
        self.class_of(u).binary_search(&v).is_ok()
    }
}

/// Computes the canonical form of a graph.
pub fn canonical_form(g: &PolytopeGraph) -> CanonicalForm {
    let n = g.vertex_count();
    let init = if n == 0 {
        Vec::new()
    } else {
        vec![(0..n as u32).collect::<Vec<u32>>()]
    };
    let mut search = Search::new(g);
    search.run(init);
    let (_, order) = search.best.expect("search always reaches a leaf");
    let mut relabeling = vec![0u32; n];
    for (pos, &v) in order.iter().enumerate() {
        relabeling[v as usize] = pos as u32;
    }
    let graph = g.relabeled(&relabeling);
    let key = CanonicalKey(graph6::encode(&graph).expect("desk-scale graphs fit graph6"));
    CanonicalForm {
        key,
        graph,
        relabeling,
    }
}

/// Canonical key of a graph (graph6 of the canonical form).
pub fn canonical_key(g: &PolytopeGraph) -> CanonicalKey {
    canonical_form(g).key
}

/// Isomorphism test via canonical keys.
pub fn are_isomorphic(a: &PolytopeGraph, b: &PolytopeGraph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    canonical_key(a) == canonical_key(b)
}

/// Orbits of the automorphisms that fix every vertex of `fixed` pointwise.
///
/// Fixed vertices are given unique colors (singleton initial cells, ascending
/// id), all others share one color; the orbits are the connected components
/// under the automorphisms discovered during the labeling search.
pub fn vertex_orbits(g: &PolytopeGraph, fixed: &[u32]) -> OrbitPartition {
    let n = g.vertex_count();
    let mut fixed: Vec<u32> = fixed.to_vec();
    fixed.sort_unstable();
    fixed.dedup();
    debug_assert!(fixed.iter().all(|&v| (v as usize) < n));
    let mut init: Vec<Vec<u32>> = fixed.iter().map(|&v| vec![v]).collect();
    let rest: Vec<u32> = (0..n as u32)
        .filter(|v| fixed.binary_search(v).is_err())
        .collect();
    if !rest.is_empty() {
        init.push(rest);
    }
    let mut search = Search::new(g);
    search.run(init);
    orbit_partition(n, &search.autos)
}

/// Canonical byte string of the pair (graph, distinguished vertex class):
/// the class is one initial cell, the remaining vertices another. Two pairs
/// get equal bytes exactly when an isomorphism maps class to class. Used to
/// deduplicate cutsets up to automorphism.
pub(crate) fn classed_canonical_bytes(g: &PolytopeGraph, class: &[u32]) -> Vec<u8> {
    let n = g.vertex_count();
    let mut class: Vec<u32> = class.to_vec();
    class.sort_unstable();
    class.dedup();
    let rest: Vec<u32> = (0..n as u32)
        .filter(|v| class.binary_search(v).is_err())
        .collect();
    let mut init = Vec::new();
    if !class.is_empty() {
        init.push(class.clone());
    }
    if !rest.is_empty() {
        init.push(rest);
    }
    let mut search = Search::new(g);
    search.run(init);
    let (enc, _) = search.best.expect("search always reaches a leaf");
    let mut out = Vec::with_capacity(enc.len() + 8);
    out.extend_from_slice(&(n as u32).to_be_bytes());
    out.extend_from_slice(&(class.len() as u32).to_be_bytes());
    out.extend_from_slice(&enc);
    out
}

fn orbit_partition(n: usize, autos: &[Vec<u32>]) -> OrbitPartition {
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], v: u32) -> u32 {
        let mut root = v;
        while parent[root as usize] != root {
            root = parent[root as usize];
        }
        let mut cur = v;
        while parent[cur as usize] != root {
            let next = parent[cur as usize];
            parent[cur as usize] = root;
            cur = next;
        }
        root
    }
    for sigma in autos {
        for v in 0..n as u32 {
            let (a, b) = (find(&mut parent, v), find(&mut parent, sigma[v as usize]));
            if a != b {
                parent[a as usize] = b;
            }
        }
    }
    let mut classes: HashMap<u32, Vec<u32>> = HashMap::new();
    for v in 0..n as u32 {
        classes.entry(find(&mut parent, v)).or_default().push(v);
    }
    let mut classes: Vec<Vec<u32>> = classes.into_values().collect();
    for class in &mut classes {
        class.sort_unstable();
    }
    classes.sort_unstable();
    OrbitPartition { classes }
}

type Row = Vec<u64>;

struct Search {
    adj: Vec<Row>,
    n: usize,
    words: usize,
    /// Lexicographically smallest encoding seen, with its position order.
    best: Option<(Vec<u8>, Vec<u32>)>,
    /// First position order reaching each distinct encoding.
    leaves: HashMap<Vec<u8>, Vec<u32>>,
    /// Discovered automorphisms (as vertex maps).
    autos: Vec<Vec<u32>>,
    /// Vertices individualized along the current search path.
    prefix: Vec<u32>,
}

impl Search {
    fn new(g: &PolytopeGraph) -> Self {
        let n = g.vertex_count();
        let words = n.div_ceil(64).max(1);
        let mut adj = vec![vec![0u64; words]; n];
        for (u, v) in g.edges() {
            adj[u as usize][v as usize / 64] |= 1 << (v % 64);
            adj[v as usize][u as usize / 64] |= 1 << (u % 64);
        }
        Self {
            adj,
            n,
            words,
            best: None,
            leaves: HashMap::new(),
            autos: Vec::new(),
            prefix: Vec::new(),
        }
    }

    fn run(&mut self, mut cells: Vec<Vec<u32>>) {
        self.refine(&mut cells);
        self.descend(cells);
    }

    fn descend(&mut self, cells: Vec<Vec<u32>>) {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.record_leaf(&cells);
            return;
        };
        let mut tried: Vec<u32> = Vec::new();
        let candidates = cells[target].clone();
        for v in candidates {
            if self.equivalent_to_tried(v, &tried) {
                continue;
            }
            tried.push(v);
            let mut next = Vec::with_capacity(cells.len() + 1);
            for (i, cell) in cells.iter().enumerate() {
                if i == target {
                    next.push(vec![v]);
                    next.push(cell.iter().copied().filter(|&u| u != v).collect());
                } else {
                    next.push(cell.clone());
                }
            }
            self.prefix.push(v);
            self.refine(&mut next);
            self.descend(next);
            self.prefix.pop();
        }
    }

    /// Whether a discovered automorphism fixing the current prefix pointwise
    /// maps an already-tried branch vertex to `v`; such a branch would retrace
    /// an explored subtree up to relabeling.
    fn equivalent_to_tried(&self, v: u32, tried: &[u32]) -> bool {
        self.autos.iter().any(|sigma| {
            self.prefix.iter().all(|&p| sigma[p as usize] == p)
                && tried.iter().any(|&u| sigma[u as usize] == v)
        })
    }

    fn record_leaf(&mut self, cells: &[Vec<u32>]) {
        let order: Vec<u32> = cells.iter().map(|c| c[0]).collect();
        let enc = self.encode(&order);
        if let Some(first) = self.leaves.get(&enc) {
            let mut sigma = vec![0u32; self.n];
            for (pos, &v) in first.iter().enumerate() {
                sigma[v as usize] = order[pos];
            }
            self.autos.push(sigma);
        } else {
            self.leaves.insert(enc.clone(), order.clone());
        }
        if self.best.as_ref().is_none_or(|(b, _)| enc < *b) {
            self.best = Some((enc, order));
        }
    }

    /// Adjacency bits of the relabeled graph in graph6 order, packed eight
    /// per byte; byte-wise comparison is bit-string comparison.
    fn encode(&self, order: &[u32]) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.n * (self.n - 1) / 16 + 1);
        let mut acc = 0u8;
        let mut filled = 0;
        for j in 1..self.n {
            let row = &self.adj[order[j] as usize];
            for &oi in &order[..j] {
                let bit = row[oi as usize / 64] >> (oi % 64) & 1;
                acc = acc << 1 | bit as u8;
                filled += 1;
                if filled == 8 {
                    out.push(acc);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push(acc << (8 - filled));
        }
        out
    }

    /// Splits cells by neighbor counts against every cell until equitable.
    /// Sub-cells are ordered by ascending count vector, which is invariant
    /// under color-preserving isomorphism.
    fn refine(&self, cells: &mut Vec<Vec<u32>>) {
        loop {
            let masks: Vec<Row> = cells
                .iter()
                .map(|cell| {
                    let mut mask = vec![0u64; self.words];
                    for &v in cell {
                        mask[v as usize / 64] |= 1 << (v % 64);
                    }
                    mask
                })
                .collect();
            let mut next: Vec<Vec<u32>> = Vec::with_capacity(cells.len());
            let mut changed = false;
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u32>, u32)> = cell
                    .iter()
                    .map(|&v| {
                        let row = &self.adj[v as usize];
                        let counts = masks
                            .iter()
                            .map(|m| {
                                m.iter()
                                    .zip(row)
                                    .map(|(a, b)| (a & b).count_ones())
                                    .sum::<u32>()
                            })
                            .collect();
                        (counts, v)
                    })
                    .collect();
                keyed.sort_unstable();
                let mut group = vec![keyed[0].1];
                for pair in keyed.windows(2) {
                    if pair[0].0 == pair[1].0 {
                        group.push(pair[1].1);
                    } else {
                        changed = true;
                        next.push(std::mem::replace(&mut group, vec![pair[1].1]));
                    }
                }
                next.push(group);
            }
            *cells = next;
            if !changed {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prism_graph() -> PolytopeGraph {
        // Two triangles 012 and 345 joined by the matching i -- i+3.
        PolytopeGraph::from_edges(
            6,
            &[
                (0, 1),
                (1, 2),
                (0, 2),
                (3, 4),
                (4, 5),
                (3, 5),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
        )
    }

    fn k33_graph() -> PolytopeGraph {
        PolytopeGraph::from_edges(
            6,
            &[
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 3),
                (2, 4),
                (2, 5),
            ],
        )
    }

    #[test]
    fn complete_graph_key_is_relabeling_invariant() {
        let g = PolytopeGraph::complete(4);
        let key = canonical_key(&g);
        for perm in [[1u32, 0, 2, 3], [3, 2, 1, 0], [2, 3, 0, 1]] {
            assert_eq!(canonical_key(&g.relabeled(&perm)), key);
        }
    }

    #[test]
    fn prism_and_k33_get_distinct_keys() {
        // Both are cubic on six vertices; only neighborhood structure
        // separates them.
        assert_ne!(canonical_key(&prism_graph()), canonical_key(&k33_graph()));
        assert!(!are_isomorphic(&prism_graph(), &k33_graph()));
    }

    #[test]
    fn keys_decode_to_isomorphic_graphs() {
        for g in [prism_graph(), k33_graph(), PolytopeGraph::hypercube(3)] {
            let form = canonical_form(&g);
            let decoded = graph6::decode(&form.key.0).unwrap();
            assert_eq!(decoded, form.graph);
            assert!(are_isomorphic(&decoded, &g));
        }
    }

    #[test]
    fn complete_vs_prism_not_isomorphic() {
        assert!(!are_isomorphic(&PolytopeGraph::complete(4), &prism_graph()));
    }

    #[test]
    fn orbits_of_complete_graph() {
        let g = PolytopeGraph::complete(4);
        let orbits = vertex_orbits(&g, &[]);
        assert_eq!(orbits.classes, vec![vec![0, 1, 2, 3]]);
        let fixed = vertex_orbits(&g, &[0]);
        assert_eq!(fixed.classes, vec![vec![0], vec![1, 2, 3]]);
    }

    #[test]
    fn prism_is_vertex_transitive() {
        let orbits = vertex_orbits(&prism_graph(), &[]);
        assert_eq!(orbits.classes, vec![vec![0, 1, 2, 3, 4, 5]]);
    }

    #[test]
    fn hypercube_orbit_sizes() {
        let orbits = vertex_orbits(&PolytopeGraph::hypercube(4), &[]);
        assert_eq!(orbits.classes, vec![(0..16).collect::<Vec<u32>>()]);
        // Fixing one corner splits the rest by Hamming distance.
        let fixed = vertex_orbits(&PolytopeGraph::hypercube(3), &[0]);
        let sizes: Vec<usize> = fixed.classes.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 3, 3, 1]);
    }

    #[test]
    fn classed_bytes_identify_equivalent_vertex_sets() {
        let g = prism_graph();
        // All triangle edges are equivalent; a triangle edge and a matching
        // edge are not.
        let triangle = classed_canonical_bytes(&g, &[0, 1]);
        let triangle2 = classed_canonical_bytes(&g, &[3, 5]);
        let matching = classed_canonical_bytes(&g, &[0, 3]);
        assert_eq!(triangle, triangle2);
        assert_ne!(triangle, matching);
    }
}
