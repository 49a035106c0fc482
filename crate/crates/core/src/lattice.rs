//! Face lattices of simple polytopes.
//!
//! A lattice stores the proper faces only (no empty face, no whole polytope),
//! stratified by dimension 0..d-1 with downward links only: each k-face lists
//! its (k-1)-subfaces. Up-links are computed on demand. Face ids are unique
//! within a lattice's lifetime and are never reused across cuts, so lineage
//! stays unambiguous.

use crate::graph::PolytopeGraph;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

pub type FaceId = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("malformed lattice document: {0}")]
    Malformed(String),
    #[error("JSON syntax error: {0}")]
    Json(String),
}

/// One proper face. `vertex_set` lists the ids of the 0-faces under it; for a
/// 0-face that is its own id. `mark` is a scratch flag used during cut
/// propagation and is false outside a cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    pub dim: usize,
    pub subfaces: Vec<FaceId>,
    pub vertex_set: Vec<FaceId>,
    pub mark: bool,
}

impl Face {
    pub fn new(
        id: FaceId,
        dim: usize,
        mut subfaces: Vec<FaceId>,
        mut vertex_set: Vec<FaceId>,
    ) -> Self {
        subfaces.sort_unstable();
        vertex_set.sort_unstable();
        Self {
            id,
            dim,
            subfaces,
            vertex_set,
            mark: false,
        }
    }
}

/// f-vector (f_0, ..., f_{d-1}) of proper face counts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    /// Alternating sum f_0 - f_1 + f_2 - ...
    pub fn euler_alternating_sum(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }
}

impl std::fmt::Display for FVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Face lattice of a simple d-polytope.
///
/// Faces of each dimension are kept sorted by id. The lattice is immutable
/// once built; operations that change it return a new lattice.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    d: usize,
    faces_by_dim: Vec<Vec<Face>>,
    index: HashMap<FaceId, (usize, usize)>,
}

impl PartialEq for FaceLattice {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.faces_by_dim == other.faces_by_dim
    }
}
impl Eq for FaceLattice {}

impl FaceLattice {
    /// Assembles a lattice from stratified faces. Faces are sorted by id
    /// within each dimension; ids must be unique.
    pub fn from_parts(d: usize, mut faces_by_dim: Vec<Vec<Face>>) -> Self {
        faces_by_dim.resize_with(d, Vec::new);
        for faces in &mut faces_by_dim {
            faces.sort_unstable_by_key(|f| f.id);
        }
        let mut index = HashMap::new();
        for (dim, faces) in faces_by_dim.iter().enumerate() {
            for (pos, face) in faces.iter().enumerate() {
                debug_assert_eq!(face.dim, dim);
                let prev = index.insert(face.id, (dim, pos));
                debug_assert!(prev.is_none(), "duplicate face id {}", face.id);
            }
        }
        Self {
            d,
            faces_by_dim,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn n_facets(&self) -> usize {
        self.faces_by_dim[self.d - 1].len()
    }

    /// Faces of one dimension, sorted by id.
    pub fn faces(&self, dim: usize) -> &[Face] {
        &self.faces_by_dim[dim]
    }

    pub fn face(&self, id: FaceId) -> Option<&Face> {
        let &(dim, pos) = self.index.get(&id)?;
        Some(&self.faces_by_dim[dim][pos])
    }

    pub fn face_count(&self) -> usize {
        self.faces_by_dim.iter().map(Vec::len).sum()
    }

    /// Smallest id larger than every id ever allocated in this lineage.
    /// The newest face always survives a cut, so max + 1 is exact.
    pub fn next_id(&self) -> FaceId {
        self.faces_by_dim
            .iter()
            .flatten()
            .map(|f| f.id)
            .max()
            .map_or(0, |m| m + 1)
    }

    /// Ids of the 0-faces, ascending. Graph vertex i is `vertex_ids()[i]`.
    pub fn vertex_ids(&self) -> Vec<FaceId> {
        self.faces_by_dim[0].iter().map(|f| f.id).collect()
    }

    /// Graph index of a vertex id.
    pub fn vertex_index(&self, id: FaceId) -> Option<u32> {
        self.faces_by_dim[0]
            .binary_search_by_key(&id, |f| f.id)
            .ok()
            .map(|i| i as u32)
    }

    /// f-vector of the lattice.
    pub fn f_vector(&self) -> FVector {
        FVector(self.faces_by_dim.iter().map(|v| v.len() as u64).collect())
    }

    /// The vertex-edge graph, with vertices renumbered 0.. in id order.
    /// Tolerates malformed lattices (validation reports those separately).
    pub fn graph_of(&self) -> PolytopeGraph {
        let n = self.faces_by_dim[0].len();
        let mut edges = BTreeSet::new();
        for face in &self.faces_by_dim[1] {
            if face.vertex_set.len() == 2 {
                if let (Some(a), Some(b)) = (
                    self.vertex_index(face.vertex_set[0]),
                    self.vertex_index(face.vertex_set[1]),
                ) {
                    edges.insert((a.min(b), a.max(b)));
                }
            }
        }
        let edges: Vec<(u32, u32)> = edges.into_iter().collect();
        PolytopeGraph::from_edges(n, &edges)
    }

    /// Vertex sets of the 2-faces translated to graph indices, sorted.
    /// Input for the graph-only cut path.
    pub fn two_face_vertex_sets(&self) -> Vec<Vec<u32>> {
        if self.d < 3 {
            return Vec::new();
        }
        self.faces_by_dim[2]
            .iter()
            .map(|f| {
                let mut set: Vec<u32> = f
                    .vertex_set
                    .iter()
                    .filter_map(|&v| self.vertex_index(v))
                    .collect();
                set.sort_unstable();
                set
            })
            .collect()
    }

    /// Up-links: face id -> ids of the faces one dimension higher that
    /// contain it. Computed on demand.
    pub fn parent_links(&self) -> HashMap<FaceId, Vec<FaceId>> {
        let mut parents: HashMap<FaceId, Vec<FaceId>> = HashMap::new();
        for faces in &self.faces_by_dim[1..] {
            for face in faces {
                for &sub in &face.subfaces {
                    parents.entry(sub).or_default().push(face.id);
                }
            }
        }
        for list in parents.values_mut() {
            list.sort_unstable();
        }
        parents
    }

    /// Facet ids incident to each vertex, aligned with `vertex_ids()`.
    pub fn vertex_facet_incidence(&self) -> Vec<Vec<FaceId>> {
        let n = self.faces_by_dim[0].len();
        let mut incidence = vec![Vec::new(); n];
        for facet in &self.faces_by_dim[self.d - 1] {
            for &v in &facet.vertex_set {
                if let Some(i) = self.vertex_index(v) {
                    incidence[i as usize].push(facet.id);
                }
            }
        }
        incidence
    }

    /// Structural checks; an empty report means the lattice is a plausible
    /// simple-polytope lattice.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let d = self.d;
        if self.faces_by_dim.len() != d {
            violations.push(format!(
                "expected {} dimension strata, found {}",
                d,
                self.faces_by_dim.len()
            ));
            return ValidationReport { violations };
        }
        let f0 = self.faces_by_dim[0].len();
        if f0 < d + 1 {
            violations.push(format!(
                "only {f0} vertices; a {d}-polytope needs at least {}",
                d + 1
            ));
        }
        for faces in &self.faces_by_dim {
            for face in faces {
                self.validate_face(face, &mut violations);
            }
        }
        // Every vertex lies in exactly d facets.
        let mut facet_count: HashMap<FaceId, usize> = HashMap::new();
        for facet in &self.faces_by_dim[d - 1] {
            for &v in &facet.vertex_set {
                *facet_count.entry(v).or_default() += 1;
            }
        }
        for vertex in &self.faces_by_dim[0] {
            let count = facet_count.get(&vertex.id).copied().unwrap_or(0);
            if count != d {
                violations.push(format!(
                    "vertex {} lies in {count} facets, expected {d}",
                    vertex.id
                ));
            }
        }
        let graph = self.graph_of();
        if !graph.is_regular(d) {
            violations.push(format!("graph is not {d}-regular"));
        }
        if !graph.is_connected() {
            violations.push("graph is disconnected".into());
        }
        let expected_euler = 1 - if d.is_multiple_of(2) { 1 } else { -1 };
        let euler = self.f_vector().euler_alternating_sum();
        if euler != expected_euler {
            violations.push(format!(
                "Euler alternating sum is {euler}, expected {expected_euler}"
            ));
        }
        ValidationReport { violations }
    }

    fn validate_face(&self, face: &Face, violations: &mut Vec<String>) {
        if face.dim == 0 {
            if face.vertex_set != [face.id] {
                violations.push(format!(
                    "vertex {} has vertex set {:?}",
                    face.id, face.vertex_set
                ));
            }
            if !face.subfaces.is_empty() {
                violations.push(format!("vertex {} has subfaces", face.id));
            }
            return;
        }
        let mut union = BTreeSet::new();
        for &sub in &face.subfaces {
            match self.face(sub) {
                Some(s) if s.dim + 1 == face.dim => union.extend(s.vertex_set.iter().copied()),
                Some(s) => violations.push(format!(
                    "face {} (dim {}) links subface {} of dim {}",
                    face.id, face.dim, sub, s.dim
                )),
                None => violations.push(format!("face {} links missing subface {}", face.id, sub)),
            }
        }
        let union: Vec<FaceId> = union.into_iter().collect();
        if union != face.vertex_set {
            violations.push(format!(
                "face {} vertex set {:?} differs from subface union {:?}",
                face.id, face.vertex_set, union
            ));
        }
        if face.vertex_set.len() < face.dim + 1 {
            violations.push(format!(
                "face {} of dim {} has only {} vertices",
                face.id,
                face.dim,
                face.vertex_set.len()
            ));
        }
        if face.dim == 1 && face.vertex_set.len() != 2 {
            violations.push(format!(
                "edge {} has {} vertices",
                face.id,
                face.vertex_set.len()
            ));
        }
    }

    /// Canonical JSON document: `{"d": .., "faces": [[dim, id, [subface
    /// ids]], ..]}` with faces ordered by dimension then id. The writer is
    /// deterministic, so write(parse(s)) == s for any canonical document.
    pub fn to_json_string(&self) -> String {
        let doc = LatticeDoc {
            d: self.d,
            faces: self
                .faces_by_dim
                .iter()
                .flatten()
                .map(|f| (f.dim, f.id, f.subfaces.clone()))
                .collect(),
        };
        serde_json::to_string(&doc).expect("lattice document serializes")
    }

    /// Parses the JSON document form. Vertex sets are rebuilt from the
    /// downward links.
    pub fn from_json_str(s: &str) -> Result<Self, LatticeError> {
        let doc: LatticeDoc =
            serde_json::from_str(s).map_err(|e| LatticeError::Json(e.to_string()))?;
        if doc.d < 2 {
            return Err(LatticeError::DimensionTooSmall(doc.d));
        }
        let mut faces_by_dim: Vec<Vec<Face>> = vec![Vec::new(); doc.d];
        let mut vertex_sets: HashMap<FaceId, Vec<FaceId>> = HashMap::new();
        for (dim, id, subfaces) in doc.faces {
            if dim >= doc.d {
                return Err(LatticeError::Malformed(format!(
                    "face {id} has dim {dim} in a {}-lattice",
                    doc.d
                )));
            }
            if vertex_sets.contains_key(&id) {
                return Err(LatticeError::Malformed(format!("duplicate face id {id}")));
            }
            let vertex_set: Vec<FaceId> = if dim == 0 {
                if !subfaces.is_empty() {
                    return Err(LatticeError::Malformed(format!("vertex {id} has subfaces")));
                }
                vec![id]
            } else {
                let mut union = BTreeSet::new();
                for sub in &subfaces {
                    let set = vertex_sets.get(sub).ok_or_else(|| {
                        LatticeError::Malformed(format!(
                            "face {id} references subface {sub} not defined earlier"
                        ))
                    })?;
                    union.extend(set.iter().copied());
                }
                union.into_iter().collect()
            };
            vertex_sets.insert(id, vertex_set.clone());
            faces_by_dim[dim].push(Face::new(id, dim, subfaces, vertex_set));
        }
        Ok(Self::from_parts(doc.d, faces_by_dim))
    }
}

#[derive(Serialize, Deserialize)]
struct LatticeDoc {
    d: usize,
    faces: Vec<(usize, FaceId, Vec<FaceId>)>,
}

/// Violations found by [`FaceLattice::validate`]; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Face lattice of the d-simplex: faces are the proper subsets of the d+1
/// vertices, a k-face per subset of size k+1. Ids are assigned by dimension,
/// then lexicographically by vertex subset.
pub fn make_simplex(d: usize) -> Result<FaceLattice, LatticeError> {
    if d < 2 {
        return Err(LatticeError::DimensionTooSmall(d));
    }
    let mut faces_by_dim: Vec<Vec<Face>> = Vec::with_capacity(d);
    let mut next_id: FaceId = 0;
    // Id of the face spanned by each vertex subset, per dimension.
    let mut prev_ids: HashMap<Vec<u32>, FaceId> = HashMap::new();
    for k in 0..d {
        let mut level_ids = HashMap::new();
        let mut faces = Vec::new();
        for subset in subsets_of_size(d as u32 + 1, k + 1) {
            let id = next_id;
            next_id += 1;
            let subfaces: Vec<FaceId> = if k == 0 {
                Vec::new()
            } else {
                (0..subset.len())
                    .map(|drop| {
                        let mut sub: Vec<u32> = subset.clone();
                        sub.remove(drop);
                        prev_ids[&sub]
                    })
                    .collect()
            };
            let vertex_set: Vec<FaceId> = subset.clone();
            level_ids.insert(subset, id);
            faces.push(Face::new(id, k, subfaces, vertex_set));
        }
        faces_by_dim.push(faces);
        prev_ids = level_ids;
    }
    Ok(FaceLattice::from_parts(d, faces_by_dim))
}

/// All size-k subsets of 0..n in lexicographic order.
fn subsets_of_size(n: u32, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(n: u32, k: usize, start: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for v in start..n {
            current.push(v);
            rec(n, k, v + 1, current, out);
            current.pop();
        }
    }
    rec(n, k, 0, &mut current, &mut out);
    out
}
