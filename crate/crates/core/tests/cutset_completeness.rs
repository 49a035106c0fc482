//! The orbit-pruned cutset search must return exactly one representative
//! per automorphism class of valid cutsets. Brute force over all vertex
//! subsets, reduced by the exhaustively computed automorphism group, is the
//! reference.

use polycut::cutter::CutError;
use polycut::{
    cut_polytope, enumerate_cutsets, is_valid_cutset, make_simplex, CutPolicy, Cutset, FaceLattice,
    PolytopeGraph,
};
use std::collections::BTreeSet;

fn permutations(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut items: Vec<u32> = (0..n as u32).collect();
    fn heap(k: usize, items: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out
}

fn automorphisms(g: &PolytopeGraph) -> Vec<Vec<u32>> {
    permutations(g.vertex_count())
        .into_iter()
        .filter(|p| g.relabeled(p) == *g)
        .collect()
}

/// Lexicographically smallest image of an index set under the group.
fn min_rep(indices: &[u32], autos: &[Vec<u32>]) -> Vec<u32> {
    let mut best: Option<Vec<u32>> = None;
    for p in autos {
        let mut image: Vec<u32> = indices.iter().map(|&v| p[v as usize]).collect();
        image.sort_unstable();
        if best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image);
        }
    }
    best.unwrap()
}

fn to_indices(lattice: &FaceLattice, cutset: &Cutset) -> Vec<u32> {
    cutset
        .vertices()
        .iter()
        .map(|&id| lattice.vertex_index(id).unwrap())
        .collect()
}

/// All valid cutsets by brute force, as min-rep index sets.
fn brute_classes(
    lattice: &FaceLattice,
    policy: CutPolicy,
    autos: &[Vec<u32>],
) -> BTreeSet<Vec<u32>> {
    let ids = lattice.vertex_ids();
    let n = ids.len();
    let mut classes = BTreeSet::new();
    for mask in 1u64..1 << n {
        let subset: Vec<u32> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| ids[i])
            .collect();
        let cutset = Cutset::new(subset);
        if is_valid_cutset(lattice, &cutset).valid_under(policy) {
            classes.insert(min_rep(&to_indices(lattice, &cutset), autos));
        }
    }
    classes
}

fn search_classes(
    lattice: &FaceLattice,
    policy: CutPolicy,
    autos: &[Vec<u32>],
) -> (BTreeSet<Vec<u32>>, usize) {
    let found = enumerate_cutsets(lattice, policy, None);
    let classes: BTreeSet<Vec<u32>> = found
        .iter()
        .map(|c| min_rep(&to_indices(lattice, c), autos))
        .collect();
    (classes, found.len())
}

fn assert_search_complete(lattice: &FaceLattice, policy: CutPolicy) {
    let autos = automorphisms(&lattice.graph_of());
    let expected = brute_classes(lattice, policy, &autos);
    let (actual, raw_count) = search_classes(lattice, policy, &autos);
    assert_eq!(actual, expected);
    assert_eq!(
        raw_count,
        actual.len(),
        "search returned automorphic duplicates"
    );
}

fn prism_lattice() -> FaceLattice {
    let tetra = make_simplex(3).unwrap();
    cut_polytope(&tetra, &Cutset::new(vec![0]), CutPolicy::default())
        .unwrap()
        .child
}

fn cube_lattice() -> FaceLattice {
    let tetra = make_simplex(3).unwrap();
    let prism = cut_polytope(&tetra, &Cutset::new(vec![0]), CutPolicy::default()).unwrap();
    let edge01 = tetra
        .faces(1)
        .iter()
        .find(|f| f.vertex_set == vec![0, 1])
        .unwrap()
        .id;
    let new_on_edge01 = *prism
        .parent_edge_of
        .iter()
        .find(|(_, &edge)| edge == edge01)
        .unwrap()
        .0;
    let matching_edge = vec![1, new_on_edge01];
    cut_polytope(
        &prism.child,
        &Cutset::new(matching_edge),
        CutPolicy::default(),
    )
    .unwrap()
    .child
}

fn simplex_prism_4d() -> FaceLattice {
    let simplex = make_simplex(4).unwrap();
    cut_polytope(&simplex, &Cutset::new(vec![0]), CutPolicy::default())
        .unwrap()
        .child
}

#[test]
fn complete_on_polygons() {
    {
        let d2 = make_simplex(2).unwrap();
        assert_search_complete(&d2, CutPolicy::default());
    }
}

#[test]
fn complete_on_simplices() {
    for d in 3..=5 {
        assert_search_complete(&make_simplex(d).unwrap(), CutPolicy::default());
    }
}

#[test]
fn complete_on_prism_and_cube() {
    assert_search_complete(&prism_lattice(), CutPolicy::default());
    assert_search_complete(&cube_lattice(), CutPolicy::default());
}

#[test]
fn complete_on_the_4d_simplex_prism() {
    assert_search_complete(&simplex_prism_4d(), CutPolicy::default());
    assert_search_complete(&simplex_prism_4d(), CutPolicy::without_face_connectivity());
}

#[test]
fn face_connectivity_is_implied_at_dimension_three() {
    // In dimension 3 the first two conditions force connected residual
    // faces, so dropping the extra check must not change the answer.
    for lattice in [make_simplex(3).unwrap(), prism_lattice(), cube_lattice()] {
        let with = enumerate_cutsets(&lattice, CutPolicy::default(), None);
        let without = enumerate_cutsets(&lattice, CutPolicy::without_face_connectivity(), None);
        assert_eq!(with, without);
    }
}

#[test]
fn face_connectivity_matters_at_dimension_four() {
    // On the prism over the 3-simplex there are connected, facet-free,
    // complement-connected sets that still slice a quadrilateral 2-face in
    // two. They must show up once the extra condition is dropped, and the
    // cut engine must then refuse to build the degenerate child.
    let lattice = simplex_prism_4d();
    let with: BTreeSet<Cutset> = enumerate_cutsets(&lattice, CutPolicy::default(), None)
        .into_iter()
        .collect();
    let without: BTreeSet<Cutset> =
        enumerate_cutsets(&lattice, CutPolicy::without_face_connectivity(), None)
            .into_iter()
            .collect();
    assert!(with.is_subset(&without));
    let extra: Vec<&Cutset> = without.difference(&with).collect();
    assert!(!extra.is_empty());
    let mut degenerate_seen = false;
    for cutset in extra {
        match cut_polytope(&lattice, cutset, CutPolicy::without_face_connectivity()) {
            Err(CutError::DegenerateCut(_)) => degenerate_seen = true,
            Err(other) => panic!("unexpected error {other:?}"),
            Ok(result) => {
                // A cut that slips through must still be a clean lattice.
                assert!(result.child.validate().violations.is_empty());
            }
        }
    }
    assert!(degenerate_seen, "no degenerate cut among the extra cutsets");
}
