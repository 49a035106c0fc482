//! Independent generator for the graphs of simple 3-polytopes: 3-connected
//! planar cubic graphs, built directly rather than by truncation.
//!
//! Every bridgeless cubic graph is the edge-disjoint union of a perfect
//! matching and a 2-factor (Petersen's theorem), and 3-connected graphs are
//! bridgeless. So laying out each cycle type of the 2-factor once, in a
//! fixed block layout, and unioning it with every perfect matching that
//! avoids cycle edges reaches every 3-connected cubic graph on m vertices.
//! Filtering to 3-connected planar graphs and deduplicating by canonical
//! key then yields one representative per combinatorial polytope type.

use polycut::{canonical_key, CanonicalKey, PolytopeGraph};
use std::collections::HashMap;

/// Distinct 3-connected planar cubic graphs on `m` vertices, sorted by key.
#[derive(Clone, Debug)]
pub struct CubicCatalog {
    pub keys: Vec<CanonicalKey>,
    pub graphs: Vec<PolytopeGraph>,
}

/// Integer partitions of `m` into parts of size at least 3, parts
/// descending, partitions in lexicographically descending order.
pub fn partitions_min3(m: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        let mut part = max_part.min(remaining);
        while part >= 3 {
            if remaining - part != 0 && remaining - part < 3 {
                part -= 1;
                continue;
            }
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
            part -= 1;
        }
    }
    let mut out = Vec::new();
    if m >= 3 {
        rec(m, m, &mut Vec::new(), &mut out);
    }
    out
}

/// Edges of the block-layout 2-factor for one cycle type: each part becomes
/// a cycle on a consecutive vertex range.
fn cycle_edges(partition: &[usize]) -> Vec<(u32, u32)> {
    let mut edges = Vec::new();
    let mut start = 0u32;
    for &len in partition {
        for i in 0..len as u32 {
            let a = start + i;
            let b = start + (i + 1) % len as u32;
            edges.push((a.min(b), a.max(b)));
        }
        start += len as u32;
    }
    edges.sort_unstable();
    edges.dedup();
    edges
}

/// Calls `f` with every perfect matching of 0..m avoiding forbidden pairs.
fn perfect_matchings_avoiding(
    m: usize,
    forbidden: &[Vec<bool>],
    matched: &mut Vec<bool>,
    current: &mut Vec<(u32, u32)>,
    f: &mut impl FnMut(&[(u32, u32)]),
) {
    let Some(i) = matched.iter().position(|&b| !b) else {
        f(current);
        return;
    };
    matched[i] = true;
    for j in i + 1..m {
        if matched[j] || forbidden[i][j] {
            continue;
        }
        matched[j] = true;
        current.push((i as u32, j as u32));
        perfect_matchings_avoiding(m, forbidden, matched, current, f);
        current.pop();
        matched[j] = false;
    }
    matched[i] = false;
}

/// Whether removing any two vertices leaves the graph connected. Combined
/// with plain connectivity this is exactly 3-connectedness for graphs on
/// more than 3 vertices.
pub fn is_three_connected(g: &PolytopeGraph) -> bool {
    let n = g.vertex_count();
    if n < 4 || !g.is_connected() {
        return false;
    }
    let mut excluded = vec![false; n];
    for u in 0..n {
        for v in u + 1..n {
            excluded[u] = true;
            excluded[v] = true;
            if !g.connected_excluding(&excluded) {
                return false;
            }
            excluded[u] = false;
            excluded[v] = false;
        }
    }
    true
}

/// Planarity for graphs of maximum degree 3. A subdivision of K5 needs five
/// degree-4 branch vertices, impossible here, so by Kuratowski's theorem
/// the only obstruction left is a K3,3 subdivision.
pub fn is_planar_cubic(g: &PolytopeGraph) -> bool {
    debug_assert!((0..g.vertex_count() as u32).all(|v| g.degree(v) <= 3));
    !has_k33_subdivision(g)
}

fn has_k33_subdivision(g: &PolytopeGraph) -> bool {
    let n = g.vertex_count();
    if n < 6 {
        return false;
    }
    let mut branch: Vec<u32> = (0..6).collect();
    loop {
        // Branch vertices need 3 disjoint paths each, so degree 3 exactly.
        if branch.iter().all(|&v| g.degree(v) == 3) && routes_k33(g, &branch) {
            return true;
        }
        if !next_subset(&mut branch, n as u32) {
            return false;
        }
    }
}

/// Tries every split of the six branch vertices into two triples and routes
/// nine internally disjoint paths between the sides.
fn routes_k33(g: &PolytopeGraph, branch: &[u32]) -> bool {
    // branch[0] can sit on the left side without loss of generality.
    let mut pick = [1usize, 2];
    loop {
        let left = [branch[0], branch[pick[0]], branch[pick[1]]];
        let right: Vec<u32> = (1..6)
            .filter(|i| !pick.contains(i))
            .map(|i| branch[i])
            .collect();
        let mut pairs = Vec::with_capacity(9);
        for &a in &left {
            for &b in &right {
                pairs.push((a, b));
            }
        }
        let mut used = vec![false; g.vertex_count()];
        for &v in branch {
            used[v as usize] = true;
        }
        if route_disjoint_paths(g, &pairs, &mut used) {
            return true;
        }
        if pick[1] < 5 {
            pick[1] += 1;
        } else if pick[0] < 4 {
            pick[0] += 1;
            pick[1] = pick[0] + 1;
        } else {
            return false;
        }
    }
}

/// Routes each pair through unused non-branch interior vertices, claiming
/// interiors as it goes, backtracking across pairs.
fn route_disjoint_paths(g: &PolytopeGraph, pairs: &[(u32, u32)], used: &mut [bool]) -> bool {
    let Some(&(a, b)) = pairs.first() else {
        return true;
    };
    let rest = &pairs[1..];
    fn dfs(
        g: &PolytopeGraph,
        at: u32,
        b: u32,
        used: &mut [bool],
        interior: &mut Vec<u32>,
        rest: &[(u32, u32)],
    ) -> bool {
        for &w in g.neighbors(at) {
            if w == b {
                if route_disjoint_paths(g, rest, used) {
                    return true;
                }
            } else if !used[w as usize] {
                used[w as usize] = true;
                interior.push(w);
                if dfs(g, w, b, used, interior, rest) {
                    return true;
                }
                interior.pop();
                used[w as usize] = false;
            }
        }
        false
    }
    dfs(g, a, b, used, &mut Vec::new(), rest)
}

fn next_subset(subset: &mut [u32], n: u32) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - (k - i) as u32 {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All distinct 3-connected planar cubic graphs on `m` vertices.
pub fn three_connected_planar_cubic(m: usize) -> CubicCatalog {
    let mut distinct: HashMap<CanonicalKey, PolytopeGraph> = HashMap::new();
    if m >= 4 && m.is_multiple_of(2) {
        for partition in partitions_min3(m) {
            let cycles = cycle_edges(&partition);
            let mut forbidden = vec![vec![false; m]; m];
            for &(a, b) in &cycles {
                forbidden[a as usize][b as usize] = true;
                forbidden[b as usize][a as usize] = true;
            }
            let mut matched = vec![false; m];
            perfect_matchings_avoiding(
                m,
                &forbidden,
                &mut matched,
                &mut Vec::new(),
                &mut |matching| {
                    let mut edges = cycles.clone();
                    edges.extend_from_slice(matching);
                    let g = PolytopeGraph::from_edges(m, &edges);
                    if g.is_connected() {
                        let key = canonical_key(&g);
                        distinct.entry(key).or_insert(g);
                    }
                },
            );
        }
    }
    let mut pairs: Vec<(CanonicalKey, PolytopeGraph)> = distinct
        .into_iter()
        .filter(|(_, g)| is_three_connected(g) && is_planar_cubic(g))
        .collect();
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    let (keys, graphs) = pairs.into_iter().unzip();
    CubicCatalog { keys, graphs }
}

/// Keys for the polytope level with `n` facets: a simple 3-polytope with n
/// facets has 2n-4 vertices.
pub fn keys_for_facet_count(n: usize) -> Vec<CanonicalKey> {
    if n < 4 {
        return Vec::new();
    }
    three_connected_planar_cubic(2 * n - 4).keys
}
