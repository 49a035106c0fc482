//! The cut engine: removing a vertex set from a simple polytope and deriving
//! the child's face lattice, plus the facet-push variant and a graph-only
//! shortcut.
//!
//! Cutting replaces the removed vertices with one new vertex per boundary
//! edge, one new facet spanning the new vertices, and a derived face one
//! dimension down for every face the cutset grazes. Ids carry over for
//! surviving faces and continue past the parent's id range for created ones.

use crate::cutsets::{compute_validity, CutPolicy, Cutset, CutsetValidity};
use crate::graph::PolytopeGraph;
use crate::lattice::{FVector, Face, FaceId, FaceLattice};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CutError {
    #[error("cutset is empty")]
    EmptyCutset,
    #[error("vertex {0} is not in the lattice")]
    UnknownVertex(FaceId),
    #[error("cutset is invalid: {0}")]
    InvalidCutset(CutsetValidity),
    #[error("face {0} is not a facet")]
    NotAFacet(FaceId),
    #[error("push vertex {vertex} lies on facet {facet}")]
    PushVertexOnFacet { facet: FaceId, vertex: FaceId },
    #[error("push vertex {vertex} has no edge to facet {facet}")]
    PushVertexNotAdjacent { facet: FaceId, vertex: FaceId },
    #[error("push set is invalid: {0}")]
    InvalidPush(CutsetValidity),
    #[error("cut produced a malformed lattice: {}", .0.join("; "))]
    DegenerateCut(Vec<String>),
    #[error("graph-only cut needs the 2-face vertex sets")]
    MissingTwoFaceData,
}

/// Outcome of one cut or push.
///
/// A cut adds exactly one facet: `child.n_facets() == parent.n_facets() + 1`.
/// A push removes the pushed facet and adds the new one, so the count is
/// preserved.
#[derive(Clone, Debug)]
pub struct CutResult {
    pub child: FaceLattice,
    pub new_facet_id: FaceId,
    /// Ids of the vertices created on boundary edges, ascending.
    pub new_vertex_ids: Vec<FaceId>,
    /// Ids of the vertices cut away, ascending.
    pub removed_vertex_ids: Vec<FaceId>,
    /// New vertex id -> id of the parent edge it subdivides.
    pub parent_edge_of: BTreeMap<FaceId, FaceId>,
    /// Subface-processing events spent deriving the child; see [`visit_bound`].
    pub face_visits: u64,
    /// Value of [`visit_bound`] on the parent's f-vector.
    pub visit_bound: u64,
}

impl CutResult {
    /// Graph induced on the new facet's vertices, indexed in `new_vertex_ids`
    /// order.
    pub fn new_facet_graph(&self) -> PolytopeGraph {
        let indices: Vec<u32> = self
            .new_vertex_ids
            .iter()
            .map(|&id| self.child.vertex_index(id).expect("new vertex in child"))
            .collect();
        let mut edges = Vec::new();
        let g = self.child.graph_of();
        for (a, &ia) in indices.iter().enumerate() {
            for (b, &ib) in indices.iter().enumerate().skip(a + 1) {
                if g.has_edge(ia, ib) {
                    edges.push((a as u32, b as u32));
                }
            }
        }
        PolytopeGraph::from_edges(indices.len(), &edges)
    }
}

/// Work budget for one cut: sum over k >= 2 of f_k * f_{k-2} of the parent.
/// Each face-derivation step touches only subfaces that the cutset grazes, so
/// the events counted in `face_visits` stay under this bound.
pub fn visit_bound(f: &FVector) -> u64 {
    (2..f.0.len()).map(|k| f.0[k] * f.0[k - 2]).sum()
}

/// Cuts a validated vertex set off the polytope, producing the child lattice.
pub fn cut_polytope(
    parent: &FaceLattice,
    cutset: &Cutset,
    policy: CutPolicy,
) -> Result<CutResult, CutError> {
    if cutset.is_empty() {
        return Err(CutError::EmptyCutset);
    }
    for &id in cutset.vertices() {
        if parent.vertex_index(id).is_none() {
            return Err(CutError::UnknownVertex(id));
        }
    }
    let ids: BTreeSet<FaceId> = cutset.vertices().iter().copied().collect();
    let validity = compute_validity(parent, &ids, None);
    if !validity.valid_under(policy) {
        return Err(CutError::InvalidCutset(validity));
    }
    derive(parent, &ids, parent.n_facets() + 1)
}

/// Replaces `facet` by the facet of the cut that removes the facet's vertices
/// together with `vertex`. The facet count is preserved; the cut must satisfy
/// the usual conditions with the pushed facet exempt from the containment
/// test.
pub fn push_facet(
    parent: &FaceLattice,
    facet: FaceId,
    vertex: FaceId,
    policy: CutPolicy,
) -> Result<CutResult, CutError> {
    let d = parent.dim();
    let face = match parent.face(facet) {
        Some(f) if f.dim == d - 1 => f,
        _ => return Err(CutError::NotAFacet(facet)),
    };
    let v_index = parent
        .vertex_index(vertex)
        .ok_or(CutError::UnknownVertex(vertex))?;
    if face.vertex_set.binary_search(&vertex).is_ok() {
        return Err(CutError::PushVertexOnFacet { facet, vertex });
    }
    let graph = parent.graph_of();
    let touches_facet = face
        .vertex_set
        .iter()
        .filter_map(|&u| parent.vertex_index(u))
        .any(|u| graph.has_edge(u, v_index));
    if !touches_facet {
        return Err(CutError::PushVertexNotAdjacent { facet, vertex });
    }
    let mut ids: BTreeSet<FaceId> = face.vertex_set.iter().copied().collect();
    ids.insert(vertex);
    let validity = compute_validity(parent, &ids, Some(facet));
    if !validity.valid_under(policy) {
        return Err(CutError::InvalidPush(validity));
    }
    derive(parent, &ids, parent.n_facets())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Class {
    Removed,
    Cut,
    Untouched,
}

/// Core derivation. `ids` has already passed validity; `expected_facets`
/// asserts the facet-count invariant of the operation.
fn derive(
    parent: &FaceLattice,
    ids: &BTreeSet<FaceId>,
    expected_facets: usize,
) -> Result<CutResult, CutError> {
    let d = parent.dim();
    let mut class: HashMap<FaceId, Class> = HashMap::new();
    for dim in 0..d {
        for face in parent.faces(dim) {
            let inside = face.vertex_set.iter().filter(|v| ids.contains(v)).count();
            let c = if inside == face.vertex_set.len() {
                Class::Removed
            } else if inside > 0 {
                Class::Cut
            } else {
                Class::Untouched
            };
            class.insert(face.id, c);
        }
    }

    let mut next = parent.next_id();
    let mut faces_by_dim: Vec<Vec<Face>> = vec![Vec::new(); d];
    // Child vertex sets by face id, for bottom-up unions.
    let mut set_of: HashMap<FaceId, Vec<FaceId>> = HashMap::new();
    // Derived face id for each cut face.
    let mut derived: HashMap<FaceId, FaceId> = HashMap::new();
    let mut parent_edge_of = BTreeMap::new();
    let mut new_vertex_ids = Vec::new();
    let mut removed_vertex_ids = Vec::new();
    let mut visits: u64 = 0;

    for face in parent.faces(0) {
        match class[&face.id] {
            Class::Untouched => {
                set_of.insert(face.id, face.vertex_set.clone());
                faces_by_dim[0].push(face.clone());
            }
            _ => removed_vertex_ids.push(face.id),
        }
    }
    // One new vertex per boundary edge, in edge id order.
    for edge in parent.faces(1) {
        if class[&edge.id] == Class::Cut {
            let nv = next;
            next += 1;
            parent_edge_of.insert(nv, edge.id);
            derived.insert(edge.id, nv);
            new_vertex_ids.push(nv);
            set_of.insert(nv, vec![nv]);
            faces_by_dim[0].push(Face::new(nv, 0, Vec::new(), vec![nv]));
        }
    }

    for k in 1..d {
        for face in parent.faces(k) {
            match class[&face.id] {
                Class::Untouched => {
                    set_of.insert(face.id, face.vertex_set.clone());
                    faces_by_dim[k].push(face.clone());
                }
                Class::Removed => {}
                Class::Cut => {
                    let mut derived_subs = Vec::new();
                    for sub in &face.subfaces {
                        match class[sub] {
                            Class::Cut => {
                                visits += 1;
                                derived_subs.push(derived[sub]);
                            }
                            Class::Removed => visits += 1,
                            Class::Untouched => {}
                        }
                    }
                    let derived_id = if k == 1 {
                        derived[&face.id]
                    } else {
                        let id = next;
                        next += 1;
                        derived.insert(face.id, id);
                        let vs = union_sets(&derived_subs, &set_of);
                        set_of.insert(id, vs.clone());
                        faces_by_dim[k - 1].push(Face::new(id, k - 1, derived_subs, vs));
                        id
                    };
                    let mut subs: Vec<FaceId> = face
                        .subfaces
                        .iter()
                        .filter(|s| class[s] != Class::Removed)
                        .copied()
                        .collect();
                    subs.push(derived_id);
                    let vs = union_sets(&subs, &set_of);
                    set_of.insert(face.id, vs.clone());
                    faces_by_dim[k].push(Face::new(face.id, k, subs, vs));
                }
            }
        }
    }

    let facet_subs: Vec<FaceId> = parent
        .faces(d - 1)
        .iter()
        .filter(|f| class[&f.id] == Class::Cut)
        .map(|f| derived[&f.id])
        .collect();
    let new_facet_id = next;
    debug_assert_eq!(union_sets(&facet_subs, &set_of), new_vertex_ids);
    faces_by_dim[d - 1].push(Face::new(
        new_facet_id,
        d - 1,
        facet_subs,
        new_vertex_ids.clone(),
    ));

    let child = FaceLattice::from_parts(d, faces_by_dim);
    if child.faces(0).len() < d + 1 {
        return Err(CutError::DegenerateCut(vec![format!(
            "child has {} vertices, fewer than {}",
            child.faces(0).len(),
            d + 1
        )]));
    }
    let report = child.validate();
    if !report.is_empty() {
        return Err(CutError::DegenerateCut(report.violations));
    }
    assert_eq!(
        child.n_facets(),
        expected_facets,
        "facet count invariant broken"
    );
    Ok(CutResult {
        child,
        new_facet_id,
        new_vertex_ids,
        removed_vertex_ids,
        parent_edge_of,
        face_visits: visits,
        visit_bound: visit_bound(&parent.f_vector()),
    })
}

fn union_sets(ids: &[FaceId], set_of: &HashMap<FaceId, Vec<FaceId>>) -> Vec<FaceId> {
    let mut union = BTreeSet::new();
    for id in ids {
        union.extend(set_of[id].iter().copied());
    }
    union.into_iter().collect()
}

/// Output of [`cut_graph_only`]. Child vertices are the surviving parent
/// vertices in ascending parent order, then one vertex per boundary edge in
/// ascending (endpoint pair) order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphCutResult {
    pub graph: PolytopeGraph,
    /// Parent endpoints (sorted) of the boundary edge behind each new
    /// vertex; new vertex i sits at child index `survivor_map.len() + i`.
    pub new_vertex_edges: Vec<(u32, u32)>,
    /// Parent index of each surviving child vertex.
    pub survivor_map: Vec<u32>,
}

/// Performs the cut on the graph alone, given the vertex sets of the 2-faces.
///
/// Surviving vertices keep their mutual edges; each boundary edge becomes a
/// new vertex joined to its surviving endpoint; two new vertices are joined
/// exactly when their boundary edges lie in a common 2-face (two distinct
/// edges share at most one). Assumes a valid cutset; face data beyond the
/// 2-faces is not available to check here.
pub fn cut_graph_only(
    graph: &PolytopeGraph,
    two_faces: &[Vec<u32>],
    cutset: &[u32],
) -> Result<GraphCutResult, CutError> {
    if cutset.is_empty() {
        return Err(CutError::EmptyCutset);
    }
    if two_faces.is_empty() {
        return Err(CutError::MissingTwoFaceData);
    }
    let n = graph.vertex_count() as u32;
    let mut in_cut = vec![false; n as usize];
    for &v in cutset {
        if v >= n {
            return Err(CutError::UnknownVertex(v));
        }
        in_cut[v as usize] = true;
    }
    let survivor_map: Vec<u32> = (0..n).filter(|&v| !in_cut[v as usize]).collect();
    let mut child_index = vec![u32::MAX; n as usize];
    for (i, &v) in survivor_map.iter().enumerate() {
        child_index[v as usize] = i as u32;
    }
    let new_vertex_edges: Vec<(u32, u32)> = graph
        .edges()
        .into_iter()
        .filter(|&(u, v)| in_cut[u as usize] != in_cut[v as usize])
        .collect();
    let base = survivor_map.len() as u32;
    let mut edges = Vec::new();
    for (u, v) in graph.edges() {
        if !in_cut[u as usize] && !in_cut[v as usize] {
            edges.push((child_index[u as usize], child_index[v as usize]));
        }
    }
    for (i, &(u, v)) in new_vertex_edges.iter().enumerate() {
        let survivor = if in_cut[u as usize] { v } else { u };
        edges.push((child_index[survivor as usize], base + i as u32));
    }
    let contains_edge = |face: &Vec<u32>, e: (u32, u32)| {
        face.binary_search(&e.0).is_ok() && face.binary_search(&e.1).is_ok()
    };
    for i in 0..new_vertex_edges.len() {
        for j in i + 1..new_vertex_edges.len() {
            let shared = two_faces.iter().any(|t| {
                contains_edge(t, new_vertex_edges[i]) && contains_edge(t, new_vertex_edges[j])
            });
            if shared {
                edges.push((base + i as u32, base + j as u32));
            }
        }
    }
    let total = survivor_map.len() + new_vertex_edges.len();
    Ok(GraphCutResult {
        graph: PolytopeGraph::from_edges(total, &edges),
        new_vertex_edges,
        survivor_map,
    })
}

/// Cuts the vertices one at a time, each step a singleton [`cut_graph_only`].
///
/// Only works when facet vertex sets can be tracked across steps from the
/// graph alone, which pins this to 3-polytopes where facets are the 2-faces:
/// `facets` doubles as the 2-face data. For a single vertex this agrees with
/// the one-shot cut; for larger sets it is a genuinely different operation
/// (later steps see earlier replacement vertices), kept for comparison runs.
pub fn cut_graph_only_iterated(
    graph: &PolytopeGraph,
    facets: &[Vec<u32>],
    cutset: &[u32],
) -> Result<PolytopeGraph, CutError> {
    if cutset.is_empty() {
        return Err(CutError::EmptyCutset);
    }
    let mut remaining: Vec<u32> = cutset.to_vec();
    remaining.sort_unstable();
    remaining.dedup();
    let mut g = graph.clone();
    let mut facet_sets: Vec<Vec<u32>> = facets.to_vec();
    while !remaining.is_empty() {
        let v = remaining.remove(0);
        let step = cut_graph_only(&g, &facet_sets, &[v])?;
        let n_old = g.vertex_count();
        let mut child_index = vec![u32::MAX; n_old];
        for (i, &u) in step.survivor_map.iter().enumerate() {
            child_index[u as usize] = i as u32;
        }
        let base = step.survivor_map.len() as u32;
        let new_count = step.new_vertex_edges.len() as u32;
        let mut next_sets = Vec::with_capacity(facet_sets.len() + 1);
        for t in &facet_sets {
            if t.binary_search(&v).is_ok() {
                let mut s: Vec<u32> = t
                    .iter()
                    .filter(|&&u| u != v)
                    .map(|&u| child_index[u as usize])
                    .collect();
                for (i, &(a, b)) in step.new_vertex_edges.iter().enumerate() {
                    if t.binary_search(&a).is_ok() && t.binary_search(&b).is_ok() {
                        s.push(base + i as u32);
                    }
                }
                s.sort_unstable();
                next_sets.push(s);
            } else {
                next_sets.push(t.iter().map(|&u| child_index[u as usize]).collect());
            }
        }
        next_sets.push((base..base + new_count).collect());
        for u in &mut remaining {
            *u = child_index[*u as usize];
        }
        remaining.sort_unstable();
        g = step.graph;
        facet_sets = next_sets;
    }
    Ok(g)
}
