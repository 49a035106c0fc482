//! Combinatorial analysis of enumerated polytopes: graph diameters and the
//! Hirsch margin, complementary vertex pairs and their step distances, exact
//! rational edge/vertex expansion, and balanced-separator scans.
//!
//! Everything here is exact: distances are integers from breadth-first
//! search, expansion ratios are reduced fractions compared by cross
//! multiplication, and no floating point is used anywhere.

use crate::canon::canonical_form;
use crate::graph::PolytopeGraph;
use crate::lattice::FaceLattice;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// Largest breadth-first distance over all source vertices. Assumes a
/// connected graph.
pub fn diameter(g: &PolytopeGraph) -> u32 {
    let mut best = 0;
    for v in 0..g.vertex_count() as u32 {
        for d in g.bfs_distances(v) {
            best = best.max(d.expect("graph is connected"));
        }
    }
    best
}

/// Slack in the bound diameter <= n - d. Negative means a violation.
pub fn hirsch_margin(n_facets: usize, d: usize, diameter: u32) -> i64 {
    n_facets as i64 - d as i64 - diameter as i64
}

/// Vertex pairs with disjoint facet sets, in lattice graph indices. `None`
/// when the polytope does not have exactly 2d facets, where the notion is
/// defined: each vertex of a simple d-polytope lies on d facets, so disjoint
/// sets must exhaust all 2d of them.
pub fn dantzig_pairs(lattice: &FaceLattice) -> Option<Vec<(u32, u32)>> {
    let d = lattice.dim();
    if lattice.n_facets() != 2 * d {
        return None;
    }
    let incidence = lattice.vertex_facet_incidence();
    let mut pairs = Vec::new();
    for i in 0..incidence.len() {
        for j in i + 1..incidence.len() {
            let disjoint = incidence[i]
                .iter()
                .all(|f| incidence[j].binary_search(f).is_err());
            if disjoint {
                pairs.push((i as u32, j as u32));
            }
        }
    }
    Some(pairs)
}

/// A complementary pair together with its breadth-first step distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DStepPair {
    pub pair: (u32, u32),
    pub distance: u32,
}

/// Exact expansion minimum with the subset achieving it; the witness is the
/// lexicographically smallest minimizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionResult {
    pub value: Ratio<u64>,
    pub witness: Vec<u32>,
}

impl ExpansionResult {
    /// Always renders as `p/q`, including a denominator of one, so exact
    /// values survive a round trip through text.
    pub fn value_string(&self) -> String {
        format!("{}/{}", self.value.numer(), self.value.denom())
    }
}

/// min over nonempty S with |S| <= n/2 of |edges(S, complement)| / |S|,
/// exact. Walks subsets in Gray-code order, maintaining the cut size
/// incrementally. `None` when the graph has more than `cap` vertices.
pub fn edge_expansion(g: &PolytopeGraph, cap: usize) -> Option<ExpansionResult> {
    let n = g.vertex_count();
    if n > cap || n < 2 {
        return None;
    }
    let half = n / 2;
    let mut in_set = vec![false; n];
    let mut size = 0usize;
    let mut cut = 0u64;
    let mut best: Option<(u64, u64, Vec<u32>)> = None;
    for i in 1u64..1 << n {
        let v = i.trailing_zeros() as usize;
        if in_set[v] {
            in_set[v] = false;
            size -= 1;
            for &w in g.neighbors(v as u32) {
                if in_set[w as usize] {
                    cut += 1;
                } else {
                    cut -= 1;
                }
            }
        } else {
            in_set[v] = true;
            size += 1;
            for &w in g.neighbors(v as u32) {
                if in_set[w as usize] {
                    cut -= 1;
                } else {
                    cut += 1;
                }
            }
        }
        if size >= 1 && size <= half {
            consider(&mut best, cut, size as u64, &in_set);
        }
    }
    finish(best)
}

/// min over nonempty A with |A| <= n/2 of |outside neighbors of A| / |A|,
/// exact, same traversal as [`edge_expansion`].
pub fn vertex_expansion(g: &PolytopeGraph, cap: usize) -> Option<ExpansionResult> {
    let n = g.vertex_count();
    if n > cap || n < 2 {
        return None;
    }
    let half = n / 2;
    let mut in_set = vec![false; n];
    let mut inside_neighbors = vec![0u32; n];
    let mut boundary = 0u64;
    let mut size = 0usize;
    let mut best: Option<(u64, u64, Vec<u32>)> = None;
    for i in 1u64..1 << n {
        let v = i.trailing_zeros() as usize;
        if in_set[v] {
            in_set[v] = false;
            size -= 1;
            for &w in g.neighbors(v as u32) {
                inside_neighbors[w as usize] -= 1;
                if inside_neighbors[w as usize] == 0 && !in_set[w as usize] {
                    boundary -= 1;
                }
            }
            if inside_neighbors[v] > 0 {
                boundary += 1;
            }
        } else {
            if inside_neighbors[v] > 0 {
                boundary -= 1;
            }
            in_set[v] = true;
            size += 1;
            for &w in g.neighbors(v as u32) {
                inside_neighbors[w as usize] += 1;
                if inside_neighbors[w as usize] == 1 && !in_set[w as usize] {
                    boundary += 1;
                }
            }
        }
        if size >= 1 && size <= half {
            consider(&mut best, boundary, size as u64, &in_set);
        }
    }
    finish(best)
}

/// Keeps the smaller ratio, breaking ties toward the lexicographically
/// smaller witness. Ratios compare by cross multiplication, widened so the
/// products cannot overflow.
fn consider(best: &mut Option<(u64, u64, Vec<u32>)>, num: u64, den: u64, in_set: &[bool]) {
    let collect = || {
        in_set
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i as u32)
            .collect::<Vec<u32>>()
    };
    match best {
        None => *best = Some((num, den, collect())),
        Some((bn, bd, witness)) => {
            let lhs = num as u128 * *bd as u128;
            let rhs = *bn as u128 * den as u128;
            if lhs < rhs {
                *best = Some((num, den, collect()));
            } else if lhs == rhs {
                let candidate = collect();
                if candidate < *witness {
                    *best = Some((num, den, candidate));
                }
            }
        }
    }
}

fn finish(best: Option<(u64, u64, Vec<u32>)>) -> Option<ExpansionResult> {
    best.map(|(num, den, witness)| ExpansionResult {
        value: Ratio::new(num, den),
        witness,
    })
}

/// A separating vertex set all of whose residual components are large.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KalaiSeparator {
    pub removed: Vec<u32>,
    /// Component sizes of the residual graph, ascending.
    pub component_sizes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KalaiScan {
    /// Graph exceeds the subset-search cap.
    CapExceeded,
    /// No removal up to n-2 vertices disconnects into large components.
    NoSeparator,
    Found(KalaiSeparator),
}

/// Smallest vertex set whose removal disconnects the graph into components
/// that each hold at least a third (rounded up) of the remaining vertices.
/// Scans sizes ascending and subsets of one size lexicographically, so the
/// result is the lexicographically first witness of minimum size.
pub fn kalai_separator_scan(g: &PolytopeGraph, cap: usize) -> KalaiScan {
    let n = g.vertex_count();
    if n > cap {
        return KalaiScan::CapExceeded;
    }
    for size in 1..=n.saturating_sub(2) {
        let threshold = (n - size).div_ceil(3);
        let mut subset: Vec<u32> = (0..size as u32).collect();
        loop {
            if let Some(sizes) = large_component_split(g, &subset, threshold) {
                return KalaiScan::Found(KalaiSeparator {
                    removed: subset,
                    component_sizes: sizes,
                });
            }
            if !next_subset(&mut subset, n as u32) {
                break;
            }
        }
    }
    KalaiScan::NoSeparator
}

/// Component sizes after removing `removed`, ascending, if the residual is
/// disconnected and every component reaches the threshold.
fn large_component_split(
    g: &PolytopeGraph,
    removed: &[u32],
    threshold: usize,
) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut excluded = vec![false; n];
    for &v in removed {
        excluded[v as usize] = true;
    }
    let mut seen = excluded.clone();
    let mut sizes = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut queue = vec![start as u32];
        seen[start] = true;
        let mut count = 0usize;
        while let Some(v) = queue.pop() {
            count += 1;
            for &w in g.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    queue.push(w);
                }
            }
        }
        if count < threshold {
            return None;
        }
        sizes.push(count);
    }
    if sizes.len() < 2 {
        return None;
    }
    sizes.sort_unstable();
    Some(sizes)
}

/// Advances a sorted index subset to its lexicographic successor of the same
/// size below `n`; false when exhausted.
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

/// floor(x^(1/k)) without floating point.
pub fn integer_root(x: u128, k: u32) -> u128 {
    if k == 0 || x <= 1 {
        return x;
    }
    let mut lo = 0u128;
    let mut hi = x.min(u64::MAX as u128) + 1;
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        match mid.checked_pow(k) {
            Some(p) if p <= x => lo = mid,
            _ => hi = mid,
        }
    }
    lo
}

/// Conjectured growth scale for balanced separators of a simple d-polytope
/// graph on f0 vertices: f0 raised to (d-2)/(d-1), rounded down.
pub fn conjectured_separator_scale(f0: u64, d: usize) -> u64 {
    if d < 2 {
        return 0;
    }
    integer_root((f0 as u128).pow(d as u32 - 2), d as u32 - 1) as u64
}

/// Per-entry record written to the analysis JSONL output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisRecord {
    pub key: String,
    pub diameter: u32,
    pub hirsch_margin: i64,
    pub is_dantzig: bool,
    pub dantzig_pair: Option<(u32, u32)>,
    pub edge_expansion: Option<String>,
    pub vertex_expansion: Option<String>,
}

/// Full analysis of one lattice; the serialized record plus the details the
/// summary needs. All vertex indices refer to the canonical labeling, the
/// one the catalog's adjacency lists use.
#[derive(Clone, Debug)]
pub struct EntryAnalysis {
    pub record: AnalysisRecord,
    /// Whether the complementary-pair notion applies (n = 2d).
    pub dantzig_applicable: bool,
    pub dantzig: Vec<DStepPair>,
    pub edge: Option<ExpansionResult>,
    pub vertex: Option<ExpansionResult>,
    pub kalai: KalaiScan,
}

pub fn analyze_lattice(lattice: &FaceLattice, expansion_cap: usize) -> EntryAnalysis {
    let graph = lattice.graph_of();
    let form = canonical_form(&graph);
    let cgraph = form.graph;
    let d = lattice.dim();
    let n = lattice.n_facets();
    let diam = diameter(&cgraph);
    let pairs = dantzig_pairs(lattice);
    let dantzig_applicable = pairs.is_some();
    let mut dantzig: Vec<DStepPair> = pairs
        .unwrap_or_default()
        .into_iter()
        .map(|(i, j)| {
            let a = form.relabeling[i as usize];
            let b = form.relabeling[j as usize];
            let pair = (a.min(b), a.max(b));
            let distance =
                cgraph.bfs_distances(pair.0)[pair.1 as usize].expect("graph is connected");
            DStepPair { pair, distance }
        })
        .collect();
    dantzig.sort_unstable_by_key(|p| p.pair);
    let edge = edge_expansion(&cgraph, expansion_cap);
    let vertex = vertex_expansion(&cgraph, expansion_cap);
    let kalai = kalai_separator_scan(&cgraph, expansion_cap);
    let record = AnalysisRecord {
        key: form.key.0,
        diameter: diam,
        hirsch_margin: hirsch_margin(n, d, diam),
        is_dantzig: dantzig_applicable && !dantzig.is_empty(),
        dantzig_pair: dantzig.first().map(|p| p.pair),
        edge_expansion: edge.as_ref().map(ExpansionResult::value_string),
        vertex_expansion: vertex.as_ref().map(ExpansionResult::value_string),
    };
    EntryAnalysis {
        record,
        dantzig_applicable,
        dantzig,
        edge,
        vertex,
        kalai,
    }
}
