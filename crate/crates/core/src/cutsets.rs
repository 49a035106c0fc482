//! Cutset validity tests and enumeration of candidate cutsets up to symmetry.
//!
//! A cutset is a set of vertices removed in one cut. Enumeration grows
//! candidate sets one neighbor at a time, pruning branches only when they can
//! never recover (a contained facet stays contained under supersets), and
//! quotients the output by graph automorphisms: two cutsets related by an
//! automorphism produce isomorphic children, so one representative suffices.

use crate::canon::{classed_canonical_bytes, vertex_orbits};
use crate::graph::PolytopeGraph;
use crate::lattice::{FaceId, FaceLattice};
use std::collections::{BTreeSet, HashSet};

/// Vertex ids to cut off in one operation, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cutset {
    vertices: Vec<FaceId>,
}

impl Cutset {
    pub fn new(mut vertices: Vec<FaceId>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Self { vertices }
    }

    pub fn vertices(&self) -> &[FaceId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, id: FaceId) -> bool {
        self.vertices.binary_search(&id).is_ok()
    }
}

impl std::fmt::Display for Cutset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Which validity conditions to enforce when accepting cutsets.
///
/// The residual-face connectivity condition is what makes every accepted cut
/// of a 3-polytope produce a 3-polytope; disabling it widens the search and
/// cuts that would produce malformed lattices are rejected at cut time
/// instead. At d = 3 the other conditions already imply it, so disabling
/// changes nothing there.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CutPolicy {
    pub enforce_face_connectivity: bool,
}

impl Default for CutPolicy {
    fn default() -> Self {
        Self {
            enforce_face_connectivity: true,
        }
    }
}

impl CutPolicy {
    pub fn without_face_connectivity() -> Self {
        Self {
            enforce_face_connectivity: false,
        }
    }
}

/// Outcome of the four validity conditions on a candidate cutset.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CutsetValidity {
    /// The cutset induces a connected subgraph.
    pub connected: bool,
    /// The remaining vertices induce a nonempty connected subgraph.
    pub complement_connected: bool,
    /// No facet's vertex set is contained in the cutset.
    pub facet_free: bool,
    /// Every face of dimension at least 2 keeps a connected (or empty)
    /// vertex residual after the cutset is removed.
    pub face_connected: bool,
}

impl CutsetValidity {
    pub fn valid(&self) -> bool {
        self.connected && self.complement_connected && self.facet_free && self.face_connected
    }

    pub fn valid_under(&self, policy: CutPolicy) -> bool {
        self.connected
            && self.complement_connected
            && self.facet_free
            && (self.face_connected || !policy.enforce_face_connectivity)
    }
}

impl std::fmt::Display for CutsetValidity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "connected={} complement_connected={} facet_free={} face_connected={}",
            self.connected, self.complement_connected, self.facet_free, self.face_connected
        )
    }
}

/// Evaluates all four conditions for a cutset given by vertex ids. Unknown
/// ids make every condition false.
pub fn is_valid_cutset(lattice: &FaceLattice, cutset: &Cutset) -> CutsetValidity {
    let ids: BTreeSet<FaceId> = cutset.vertices().iter().copied().collect();
    compute_validity(lattice, &ids, None)
}

/// Shared validity computation. `exempt_facet` skips one facet in the
/// containment test; a push deliberately swallows the pushed facet.
pub(crate) fn compute_validity(
    lattice: &FaceLattice,
    ids: &BTreeSet<FaceId>,
    exempt_facet: Option<FaceId>,
) -> CutsetValidity {
    let mut validity = CutsetValidity::default();
    if ids.is_empty() {
        return validity;
    }
    let graph = lattice.graph_of();
    let mut indices = Vec::with_capacity(ids.len());
    for &id in ids {
        match lattice.vertex_index(id) {
            Some(i) => indices.push(i),
            None => return validity,
        }
    }
    validity.connected = graph.induced_connected(&indices);
    let mut removed = vec![false; graph.vertex_count()];
    for &i in &indices {
        removed[i as usize] = true;
    }
    validity.complement_connected =
        indices.len() < graph.vertex_count() && graph.connected_excluding(&removed);
    let d = lattice.dim();
    validity.facet_free = lattice
        .faces(d - 1)
        .iter()
        .filter(|f| Some(f.id) != exempt_facet)
        .all(|f| !f.vertex_set.iter().all(|v| ids.contains(v)));
    validity.face_connected = (2..d).all(|k| {
        lattice.faces(k).iter().all(|face| {
            // A face disjoint from the cutset keeps its own connected graph.
            if face.vertex_set.iter().all(|v| !ids.contains(v)) {
                return true;
            }
            let residual: Vec<u32> = face
                .vertex_set
                .iter()
                .filter(|v| !ids.contains(v))
                .filter_map(|&v| lattice.vertex_index(v))
                .collect();
            residual.is_empty() || graph.induced_connected(&residual)
        })
    });
    validity
}

/// Enumerates valid cutsets up to graph automorphism, one representative per
/// orbit, sorted by size then lexicographically by vertex ids.
///
/// `max_size` bounds the sets returned and explored; the default bound is one
/// less than the vertex count, past which the complement is empty. Candidate
/// growth extends a connected set by neighbors only (a valid cutset is
/// connected, and every connected set has a fully-connected build order), and
/// recursion continues through invalid intermediates because validity is not
/// monotone: only facet containment persists under supersets and is pruned.
pub fn enumerate_cutsets(
    lattice: &FaceLattice,
    policy: CutPolicy,
    max_size: Option<usize>,
) -> Vec<Cutset> {
    let graph = lattice.graph_of();
    let n = graph.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    let vertex_ids = lattice.vertex_ids();
    let limit = max_size.unwrap_or(n - 1).min(n - 1);
    if limit == 0 {
        return Vec::new();
    }
    let facet_index_sets: Vec<Vec<u32>> = lattice
        .faces(lattice.dim() - 1)
        .iter()
        .map(|f| {
            let mut set: Vec<u32> = f
                .vertex_set
                .iter()
                .filter_map(|&v| lattice.vertex_index(v))
                .collect();
            set.sort_unstable();
            set
        })
        .collect();
    let mut state = GrowthState {
        lattice,
        graph: &graph,
        vertex_ids: &vertex_ids,
        facet_index_sets: &facet_index_sets,
        policy,
        limit,
        seen_sets: HashSet::new(),
        seen_classes: HashSet::new(),
        found: Vec::new(),
    };
    for &root in vertex_orbits(&graph, &[]).representatives().iter() {
        state.visit(vec![root]);
    }
    let mut found = state.found;
    found.sort_unstable_by(|a, b| (a.len(), a.vertices()).cmp(&(b.len(), b.vertices())));
    found
}

struct GrowthState<'a> {
    lattice: &'a FaceLattice,
    graph: &'a PolytopeGraph,
    vertex_ids: &'a [FaceId],
    facet_index_sets: &'a [Vec<u32>],
    policy: CutPolicy,
    limit: usize,
    /// Exact vertex sets already visited, so reorderings stop cheaply.
    seen_sets: HashSet<Vec<u32>>,
    /// Canonical forms of (graph, set) already visited, so automorphic
    /// images stop before exploring their whole subtree.
    seen_classes: HashSet<Vec<u8>>,
    found: Vec<Cutset>,
}

impl GrowthState<'_> {
    fn visit(&mut self, set: Vec<u32>) {
        debug_assert!(set.windows(2).all(|w| w[0] < w[1]));
        if !self.seen_sets.insert(set.clone()) {
            return;
        }
        if !self
            .seen_classes
            .insert(classed_canonical_bytes(self.graph, &set))
        {
            return;
        }
        if self
            .facet_index_sets
            .iter()
            .any(|facet| facet.iter().all(|v| set.binary_search(v).is_ok()))
        {
            return;
        }
        let ids: BTreeSet<FaceId> = set.iter().map(|&i| self.vertex_ids[i as usize]).collect();
        let validity = compute_validity(self.lattice, &ids, None);
        if validity.valid_under(self.policy) {
            self.found.push(Cutset::new(ids.into_iter().collect()));
        }
        if set.len() == self.limit {
            return;
        }
        // Extend by one representative per orbit of the vertex stabilizer of
        // the current set; a stabilizer element maps extensions to
        // equivalent extensions, and it preserves the neighborhood of the
        // set, so each orbit lies entirely inside or outside it.
        let in_set = |v: u32| set.binary_search(&v).is_ok();
        let orbits = vertex_orbits(self.graph, &set);
        for class in &orbits.classes {
            let rep = class[0];
            if in_set(rep) {
                continue;
            }
            let touches = class
                .iter()
                .any(|&v| self.graph.neighbors(v).iter().any(|&w| in_set(w)));
            if !touches {
                continue;
            }
            debug_assert!(self.graph.neighbors(rep).iter().any(|&w| in_set(w)));
            let mut next = set.clone();
            let pos = next.binary_search(&rep).unwrap_err();
            next.insert(pos, rep);
            self.visit(next);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::make_simplex;

    #[test]
    fn singleton_is_valid_on_simplex() {
        let simplex = make_simplex(3).unwrap();
        let v = simplex.vertex_ids()[0];
        let validity = is_valid_cutset(&simplex, &Cutset::new(vec![v]));
        assert!(validity.valid(), "{validity}");
    }

    #[test]
    fn facet_containment_detected() {
        let simplex = make_simplex(3).unwrap();
        // Any three vertices of the tetrahedron span a facet.
        let ids = simplex.vertex_ids()[..3].to_vec();
        let validity = is_valid_cutset(&simplex, &Cutset::new(ids));
        assert!(!validity.facet_free);
        assert!(!validity.valid());
    }

    #[test]
    fn full_vertex_set_rejected() {
        let simplex = make_simplex(2).unwrap();
        let validity = is_valid_cutset(&simplex, &Cutset::new(simplex.vertex_ids()));
        assert!(!validity.complement_connected);
    }

    #[test]
    fn unknown_vertex_rejected() {
        let simplex = make_simplex(3).unwrap();
        let validity = is_valid_cutset(&simplex, &Cutset::new(vec![999]));
        assert_eq!(validity, CutsetValidity::default());
    }

    #[test]
    fn tetrahedron_cutsets_up_to_symmetry() {
        // Vertices and edges are valid; triangles span facets; everything
        // bigger contains a facet too.
        let simplex = make_simplex(3).unwrap();
        let found = enumerate_cutsets(&simplex, CutPolicy::default(), None);
        assert_eq!(found.len(), 2);
        assert_eq!(found[0].len(), 1);
        assert_eq!(found[1].len(), 2);
    }

    #[test]
    fn polygon_cutsets_are_singletons() {
        // In a polygon every edge is a facet, so any adjacent pair contains
        // one, and non-adjacent sets are disconnected.
        let triangle = make_simplex(2).unwrap();
        let found = enumerate_cutsets(&triangle, CutPolicy::default(), None);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].len(), 1);
    }

    #[test]
    fn size_cap_respected() {
        let simplex = make_simplex(4).unwrap();
        let capped = enumerate_cutsets(&simplex, CutPolicy::default(), Some(1));
        assert!(capped.iter().all(|c| c.len() <= 1));
        let full = enumerate_cutsets(&simplex, CutPolicy::default(), None);
        assert!(full.iter().any(|c| c.len() > 1));
    }

    #[test]
    fn simplex_cutsets_are_proper_subsets_by_size() {
        // On the complete graph, orbits are determined by size alone, and
        // sizes d and above contain a facet.
        for d in [3, 4, 5] {
            let simplex = make_simplex(d).unwrap();
            let found = enumerate_cutsets(&simplex, CutPolicy::default(), None);
            let sizes: Vec<usize> = found.iter().map(Cutset::len).collect();
            let expected: Vec<usize> = (1..d).collect();
            assert_eq!(sizes, expected, "d={d}");
        }
    }
}
