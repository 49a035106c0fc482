//! Level-by-level enumeration: all combinatorially distinct children
//! reachable by cutting, starting from the simplex.
//!
//! Levels are indexed by facet count. Each level's parents are processed in
//! canonical-key order and their children merged first-come-first-kept, so
//! the catalog is identical no matter how many workers ran the level.

use crate::canon::{canonical_form, canonical_key, CanonicalKey};
use crate::cutsets::{enumerate_cutsets, CutPolicy, Cutset};
use crate::cutter::{cut_polytope, CutError};
use crate::graph::PolytopeGraph;
use crate::lattice::{make_simplex, FVector, FaceLattice};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerateConfig {
    pub d: usize,
    /// Enumerate levels d+1 ..= max_facets.
    pub max_facets: usize,
    pub policy: CutPolicy,
    /// Abort rather than drop cutsets once a valid cutset exceeds this.
    pub max_cutset_size: Option<usize>,
    pub workers: usize,
}

impl EnumerateConfig {
    pub fn new(d: usize, max_facets: usize) -> Self {
        Self {
            d,
            max_facets,
            policy: CutPolicy::default(),
            max_cutset_size: None,
            workers: 1,
        }
    }
}

/// Accounting for the cut that produced an entry.
#[derive(Clone, Debug)]
pub struct CutStats {
    pub cutset_size: usize,
    pub boundary_edges: usize,
    pub face_visits: u64,
    pub visit_bound: u64,
    pub new_facet_graph: PolytopeGraph,
}

/// One catalog row. The serialized form carries the first eight fields; the
/// lattice, cutset, and stats stay in memory for analysis and checks.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub d: usize,
    pub n: usize,
    pub key: CanonicalKey,
    /// Adjacency lists of the canonically labeled graph.
    pub adjacency: Vec<Vec<u32>>,
    pub f_vector: FVector,
    pub parent_key: Option<CanonicalKey>,
    pub cutset_size: Option<usize>,
    pub flags: Vec<String>,
    pub lattice: Option<FaceLattice>,
    pub cutset: Option<Cutset>,
    pub stats: Option<CutStats>,
}

impl CatalogEntry {
    fn record(&self) -> CatalogRecord {
        CatalogRecord {
            d: self.d,
            n: self.n,
            key: self.key.0.clone(),
            adjacency: self.adjacency.clone(),
            f_vector: self.f_vector.0.clone(),
            parent_key: self.parent_key.as_ref().map(|k| k.0.clone()),
            cutset_size: self.cutset_size,
            flags: self.flags.clone(),
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(&self.record()).expect("catalog record serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct CatalogRecord {
    d: usize,
    n: usize,
    key: String,
    adjacency: Vec<Vec<u32>>,
    f_vector: Vec<u64>,
    parent_key: Option<String>,
    cutset_size: Option<usize>,
    flags: Vec<String>,
}

/// Enumeration output: entries sorted by facet count, then canonical key.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub d: usize,
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn level(&self, n: usize) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(move |e| e.n == n)
    }

    /// (facet count, entry count) pairs, ascending.
    pub fn counts(&self) -> Vec<(usize, usize)> {
        let mut counts: Vec<(usize, usize)> = Vec::new();
        for entry in &self.entries {
            match counts.last_mut() {
                Some((n, c)) if *n == entry.n => *c += 1,
                _ => counts.push((entry.n, 1)),
            }
        }
        counts
    }

    /// Summary like `n=4: 1, n=5: 1, n=6: 2`.
    pub fn counts_line(&self) -> String {
        let parts: Vec<String> = self
            .counts()
            .into_iter()
            .map(|(n, c)| format!("n={n}: {c}"))
            .collect();
        parts.join(", ")
    }

    pub fn to_jsonl_string(&self) -> String {
        let mut out = String::new();
        for entry in &self.entries {
            out.push_str(&entry.to_json_line());
            out.push('\n');
        }
        out
    }

    pub fn write_jsonl<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        w.write_all(self.to_jsonl_string().as_bytes())
    }

    /// One canonical key per line; keys already use the graph6 format.
    pub fn write_graph6<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        for entry in &self.entries {
            writeln!(w, "{}", entry.key.0)?;
        }
        Ok(())
    }

    /// One DOT file per entry. Keys contain characters hostile to file
    /// systems, so files are named d{d}_n{n}_{index}.dot with the index
    /// counting within the level.
    pub fn write_dot_files(&self, dir: &Path) -> std::io::Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let mut paths = Vec::new();
        let mut level = usize::MAX;
        let mut index = 0;
        for entry in &self.entries {
            if entry.n != level {
                level = entry.n;
                index = 0;
            }
            let path = dir.join(format!("d{}_n{}_{}.dot", entry.d, entry.n, index));
            index += 1;
            let graph = PolytopeGraph::from_adjacency(entry.adjacency.clone());
            std::fs::write(&path, graph.to_dot())?;
            paths.push(path);
        }
        Ok(paths)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(
        "valid cutset of size {size} on a {n_facets}-facet polytope (key {parent_key}) exceeds \
         the cutset cap {cap}; aborting instead of silently truncating the search"
    )]
    CutsetCapExceeded {
        cap: usize,
        size: usize,
        n_facets: usize,
        parent_key: String,
    },
    #[error(transparent)]
    Cut(#[from] CutError),
}

fn level_flags(d: usize) -> Vec<String> {
    if d == 3 {
        vec!["d3-exact".to_string()]
    } else {
        vec!["superset-member".to_string()]
    }
}

struct ChildCandidate {
    key: CanonicalKey,
    adjacency: Vec<Vec<u32>>,
    f_vector: FVector,
    lattice: FaceLattice,
    cutset: Cutset,
    stats: CutStats,
}

/// All children of one parent, in cutset order. Cutsets are probed one past
/// the cap so a truncated search aborts instead of passing silently.
fn children_of(
    parent: &FaceLattice,
    parent_key: &CanonicalKey,
    config: &EnumerateConfig,
) -> Result<Vec<ChildCandidate>, EnumerateError> {
    let f0 = parent.faces(0).len();
    let natural_limit = f0.saturating_sub(1);
    let probe = config
        .max_cutset_size
        .map(|cap| (cap + 1).min(natural_limit));
    let cutsets = enumerate_cutsets(parent, config.policy, probe);
    if let Some(cap) = config.max_cutset_size {
        if let Some(big) = cutsets.iter().find(|c| c.len() > cap) {
            return Err(EnumerateError::CutsetCapExceeded {
                cap,
                size: big.len(),
                n_facets: parent.n_facets(),
                parent_key: parent_key.0.clone(),
            });
        }
    }
    let mut out = Vec::new();
    for cutset in cutsets {
        match cut_polytope(parent, &cutset, config.policy) {
            Ok(result) => {
                let graph = result.child.graph_of();
                let form = canonical_form(&graph);
                out.push(ChildCandidate {
                    key: form.key,
                    adjacency: form.graph.adjacency().to_vec(),
                    f_vector: result.child.f_vector(),
                    stats: CutStats {
                        cutset_size: cutset.len(),
                        boundary_edges: result.new_vertex_ids.len(),
                        face_visits: result.face_visits,
                        visit_bound: result.visit_bound,
                        new_facet_graph: result.new_facet_graph(),
                    },
                    lattice: result.child,
                    cutset,
                });
            }
            // The candidate filters are necessary, not sufficient: from
            // dimension 4 on, a cutset can pass every check and still have
            // no polytopal child. The surgery of a realizable cut always
            // reproduces the child's lattice, so an output that fails
            // validation proves the cutset realizes nothing and is dropped.
            Err(CutError::DegenerateCut(_)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

fn run_level(
    parents: &[(CanonicalKey, FaceLattice)],
    config: &EnumerateConfig,
) -> Result<Vec<Vec<ChildCandidate>>, EnumerateError> {
    let workers = config.workers.min(parents.len()).max(1);
    if workers == 1 {
        return parents
            .iter()
            .map(|(key, lattice)| children_of(lattice, key, config))
            .collect();
    }
    type ChildSlot = Mutex<Option<Result<Vec<ChildCandidate>, EnumerateError>>>;
    let slots: Vec<ChildSlot> = (0..parents.len()).map(|_| Mutex::new(None)).collect();
    let cursor = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = cursor.fetch_add(1, Ordering::Relaxed);
                if i >= parents.len() {
                    break;
                }
                let (key, lattice) = &parents[i];
                let result = children_of(lattice, key, config);
                *slots[i].lock().unwrap() = Some(result);
            });
        }
    });
    // Collect in parent order so the first error is deterministic too.
    slots
        .into_iter()
        .map(|slot| slot.into_inner().unwrap().expect("worker filled slot"))
        .collect()
}

/// Enumerates every level from the simplex up to `max_facets` facets.
pub fn enumerate_all(config: &EnumerateConfig) -> Result<Catalog, EnumerateError> {
    if config.d < 2 {
        return Err(EnumerateError::InvalidConfig(format!(
            "dimension must be at least 2, got {}",
            config.d
        )));
    }
    if config.max_facets < config.d + 1 {
        return Err(EnumerateError::InvalidConfig(format!(
            "max facets must be at least d+1 = {}, got {}",
            config.d + 1,
            config.max_facets
        )));
    }
    if config.workers == 0 {
        return Err(EnumerateError::InvalidConfig(
            "worker count must be at least 1".to_string(),
        ));
    }
    let d = config.d;
    let root = make_simplex(d).expect("d >= 2");
    let root_form = canonical_form(&root.graph_of());
    let mut entries = vec![CatalogEntry {
        d,
        n: d + 1,
        key: root_form.key.clone(),
        adjacency: root_form.graph.adjacency().to_vec(),
        f_vector: root.f_vector(),
        parent_key: None,
        cutset_size: None,
        flags: level_flags(d),
        lattice: Some(root.clone()),
        cutset: None,
        stats: None,
    }];
    let mut current: Vec<(CanonicalKey, FaceLattice)> = vec![(root_form.key, root)];

    for n in (d + 2)..=config.max_facets {
        let per_parent = run_level(&current, config)?;
        let mut seen: HashSet<String> = HashSet::new();
        let mut level: Vec<CatalogEntry> = Vec::new();
        for ((parent_key, _), children) in current.iter().zip(per_parent) {
            for child in children {
                if !seen.insert(child.key.0.clone()) {
                    continue;
                }
                level.push(CatalogEntry {
                    d,
                    n,
                    key: child.key,
                    adjacency: child.adjacency,
                    f_vector: child.f_vector,
                    parent_key: Some(parent_key.clone()),
                    cutset_size: Some(child.cutset.len()),
                    flags: level_flags(d),
                    lattice: Some(child.lattice),
                    cutset: Some(child.cutset),
                    stats: Some(child.stats),
                });
            }
        }
        level.sort_by(|a, b| a.key.0.cmp(&b.key.0));
        current = level
            .iter()
            .map(|e| (e.key.clone(), e.lattice.clone().expect("fresh entry")))
            .collect();
        entries.extend(level);
    }
    Ok(Catalog { d, entries })
}

#[derive(Debug, Error)]
pub enum ResumeError {
    #[error("cannot read catalog: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse failure at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("checksum failure at line {line}: {message}")]
    Checksum { line: usize, message: String },
    #[error("configuration mismatch: {0}")]
    ConfigMismatch(String),
    #[error("line {line} is inconsistent with deterministic re-enumeration: {message}")]
    Inconsistent { line: usize, message: String },
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
}

/// Resumes from a partial catalog file: validates every line, then re-runs
/// the deterministic enumeration and checks the file is a prefix of it. The
/// returned catalog is identical to an uninterrupted run.
pub fn resume(path: &Path, config: &EnumerateConfig) -> Result<Catalog, ResumeError> {
    let file = std::fs::File::open(path)?;
    let reader = std::io::BufReader::new(file);
    let mut lines: Vec<String> = Vec::new();
    for line in reader.lines() {
        lines.push(line?);
    }
    while lines.last().is_some_and(|l| l.trim().is_empty()) {
        lines.pop();
    }
    for (i, line) in lines.iter().enumerate() {
        let lineno = i + 1;
        let record: CatalogRecord = serde_json::from_str(line).map_err(|e| ResumeError::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        if record.d != config.d {
            return Err(ResumeError::ConfigMismatch(format!(
                "line {lineno} has d={}, expected d={}",
                record.d, config.d
            )));
        }
        if record.n > config.max_facets {
            return Err(ResumeError::ConfigMismatch(format!(
                "line {lineno} has n={} beyond max facets {}",
                record.n, config.max_facets
            )));
        }
        if record.f_vector.len() != record.d {
            return Err(ResumeError::Checksum {
                line: lineno,
                message: format!(
                    "f-vector has {} entries, expected {}",
                    record.f_vector.len(),
                    record.d
                ),
            });
        }
        if record.f_vector[record.d - 1] != record.n as u64 {
            return Err(ResumeError::Checksum {
                line: lineno,
                message: format!(
                    "facet count {} disagrees with f-vector entry {}",
                    record.n,
                    record.f_vector[record.d - 1]
                ),
            });
        }
        let graph = check_adjacency(&record.adjacency).ok_or_else(|| ResumeError::Checksum {
            line: lineno,
            message: "malformed adjacency lists".to_string(),
        })?;
        let key = canonical_key(&graph);
        if key.0 != record.key {
            return Err(ResumeError::Checksum {
                line: lineno,
                message: format!(
                    "key {} does not match adjacency (expected {})",
                    record.key, key
                ),
            });
        }
    }
    let catalog = enumerate_all(config)?;
    for (i, (line, entry)) in lines.iter().zip(catalog.entries.iter()).enumerate() {
        let expected = entry.to_json_line();
        if *line != expected {
            return Err(ResumeError::Inconsistent {
                line: i + 1,
                message: format!("expected record for key {}", entry.key),
            });
        }
    }
    if lines.len() > catalog.entries.len() {
        return Err(ResumeError::Inconsistent {
            line: catalog.entries.len() + 1,
            message: "file has more records than the full enumeration".to_string(),
        });
    }
    Ok(catalog)
}

fn check_adjacency(adjacency: &[Vec<u32>]) -> Option<PolytopeGraph> {
    let n = adjacency.len() as u32;
    for (v, list) in adjacency.iter().enumerate() {
        for &w in list {
            if w >= n || w == v as u32 {
                return None;
            }
            if !adjacency[w as usize].contains(&(v as u32)) {
                return None;
            }
        }
        if list.windows(2).any(|p| p[0] >= p[1]) {
            return None;
        }
    }
    Some(PolytopeGraph::from_adjacency(adjacency.to_vec()))
}
