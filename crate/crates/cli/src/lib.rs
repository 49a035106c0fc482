//! Command surface for the enumeration pipeline: `enumerate` writes
//! catalogs, `analyze` turns a catalog into per-type analysis records plus
//! a summary, and `verify` cross-checks dimension-3 runs against the
//! independent cubic-graph generator.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 invalid configuration
//! or unusable input, 3 cutset-size cap exceeded.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use polycut::analyze::{analyze_lattice, conjectured_separator_scale, EntryAnalysis, KalaiScan};
use polycut::enumerate::EnumerateError;
use polycut::{enumerate_all, resume, Catalog, CutPolicy, EnumerateConfig};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser)]
#[command(
    name = "polycut",
    version,
    about = "Enumerates and analyzes simple polytopes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Enumerate combinatorial types level by level, starting from the simplex.
    Enumerate(EnumerateArgs),
    /// Compute diameters, expansion, and separator data for a catalog file.
    Analyze(AnalyzeArgs),
    /// Cross-check a dimension-3 enumeration against the direct generator.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Graph6,
    Dot,
}

#[derive(Args)]
pub struct EnumerateArgs {
    /// Polytope dimension d (at least 2).
    #[arg(long = "dim")]
    pub dim: usize,
    /// Largest facet count to enumerate (more than d).
    #[arg(long = "max-facets")]
    pub max_facets: usize,
    /// Catalog destination; stdout when omitted.
    #[arg(long = "output")]
    pub output: Option<PathBuf>,
    /// Output formats; may be given more than once.
    #[arg(long = "format", value_enum, default_values_t = [Format::Jsonl])]
    pub format: Vec<Format>,
    #[arg(long = "workers", env = "POLYCUT_WORKERS", default_value_t = 1)]
    pub workers: usize,
    /// Drop the residual-face connectivity requirement on cutsets.
    #[arg(long = "no-footnote-condition")]
    pub no_footnote_condition: bool,
    /// Abort (exit 3) if any valid cutset exceeds this size.
    #[arg(long = "max-cutset-size")]
    pub max_cutset_size: Option<usize>,
}

#[derive(Args)]
pub struct AnalyzeArgs {
    /// Catalog file produced by `enumerate`.
    pub catalog: PathBuf,
    /// Analysis records destination; stdout when omitted.
    #[arg(long = "output")]
    pub output: Option<PathBuf>,
    /// Skip expansion and separator scans on graphs above this many vertices.
    #[arg(long = "expansion-cap", default_value_t = 20)]
    pub expansion_cap: usize,
    /// Match a catalog that was enumerated with the condition dropped.
    #[arg(long = "no-footnote-condition")]
    pub no_footnote_condition: bool,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Must be 3: the generator covers planar cubic graphs only.
    #[arg(long = "dim")]
    pub dim: usize,
    /// Largest facet count to check (at most 9).
    #[arg(long = "max-facets")]
    pub max_facets: usize,
    /// Check this catalog file instead of enumerating afresh.
    pub catalog: Option<PathBuf>,
    #[arg(long = "workers", env = "POLYCUT_WORKERS", default_value_t = 1)]
    pub workers: usize,
}

pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Enumerate(args) => cmd_enumerate(&args),
        Command::Analyze(args) => cmd_analyze(&args),
        Command::Verify(args) => cmd_verify(&args),
    }
}

fn policy(no_footnote_condition: bool) -> CutPolicy {
    if no_footnote_condition {
        CutPolicy::without_face_connectivity()
    } else {
        CutPolicy::default()
    }
}

fn enumerate_exit_code(err: &EnumerateError) -> i32 {
    match err {
        EnumerateError::CutsetCapExceeded { .. } => EXIT_CAP,
        _ => EXIT_USAGE,
    }
}

pub fn cmd_enumerate(args: &EnumerateArgs) -> i32 {
    let mut formats = args.format.clone();
    formats.dedup();
    let streamable = formats.len() == 1 && formats[0] != Format::Dot;
    if args.output.is_none() && !streamable {
        eprintln!("error: --output is required for dot output or several formats");
        return EXIT_USAGE;
    }

    let config = EnumerateConfig {
        d: args.dim,
        max_facets: args.max_facets,
        policy: policy(args.no_footnote_condition),
        max_cutset_size: args.max_cutset_size,
        workers: args.workers,
    };
    let started = Instant::now();
    let catalog = match enumerate_all(&config) {
        Ok(catalog) => catalog,
        Err(err) => {
            eprintln!("error: {err}");
            return enumerate_exit_code(&err);
        }
    };
    eprintln!("timing: enumerate {} ms", started.elapsed().as_millis());

    if let Err(err) = write_catalog(&catalog, &formats, args.output.as_deref()) {
        eprintln!("error: {err}");
        return EXIT_USAGE;
    }
    // Keep stdout machine-readable when the records themselves go there.
    if args.output.is_some() {
        println!("{}", catalog.counts_line());
    } else {
        eprintln!("{}", catalog.counts_line());
    }
    EXIT_OK
}

/// Single format: the path is used as-is (a directory for dot). Several
/// formats: the path carries jsonl, with ".g6" and "_dot" siblings.
fn write_catalog(
    catalog: &Catalog,
    formats: &[Format],
    output: Option<&Path>,
) -> std::io::Result<()> {
    let lone = formats.len() == 1;
    for format in formats {
        match (format, output) {
            (Format::Jsonl, None) => print!("{}", catalog.to_jsonl_string()),
            (Format::Jsonl, Some(path)) => {
                let mut file = std::fs::File::create(path)?;
                catalog.write_jsonl(&mut file)?;
            }
            (Format::Graph6, None) => {
                let mut out = std::io::stdout();
                catalog.write_graph6(&mut out)?;
            }
            (Format::Graph6, Some(path)) => {
                let target = if lone {
                    path.to_path_buf()
                } else {
                    PathBuf::from(format!("{}.g6", path.display()))
                };
                let mut file = std::fs::File::create(target)?;
                catalog.write_graph6(&mut file)?;
            }
            (Format::Dot, Some(path)) => {
                let dir = if lone {
                    path.to_path_buf()
                } else {
                    PathBuf::from(format!("{}_dot", path.display()))
                };
                catalog.write_dot_files(&dir)?;
            }
            (Format::Dot, None) => unreachable!("rejected before enumeration"),
        }
    }
    Ok(())
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> i32 {
    let text = match std::fs::read_to_string(&args.catalog) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("error: cannot read {}: {err}", args.catalog.display());
            return EXIT_USAGE;
        }
    };
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    if lines.is_empty() {
        if let Some(path) = &args.output {
            if let Err(err) = std::fs::write(path, "") {
                eprintln!("error: cannot write {}: {err}", path.display());
                return EXIT_USAGE;
            }
        }
        println!("analyze: empty catalog, nothing to report");
        return EXIT_OK;
    }

    // The catalog stores graphs only; the deterministic re-run brings the
    // lattices back, and validates every line of the file on the way.
    let mut d = 0usize;
    let mut max_facets = 0usize;
    for (i, line) in lines.iter().enumerate() {
        let value: serde_json::Value = match serde_json::from_str(line) {
            Ok(value) => value,
            Err(err) => {
                eprintln!("error: line {}: {err}", i + 1);
                return EXIT_USAGE;
            }
        };
        match (value["d"].as_u64(), value["n"].as_u64()) {
            (Some(vd), Some(vn)) => {
                d = vd as usize;
                max_facets = max_facets.max(vn as usize);
            }
            _ => {
                eprintln!("error: line {}: missing d or n", i + 1);
                return EXIT_USAGE;
            }
        }
    }
    let mut config = EnumerateConfig::new(d, max_facets);
    config.policy = policy(args.no_footnote_condition);
    let started = Instant::now();
    let catalog = match resume(&args.catalog, &config) {
        Ok(catalog) => catalog,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_USAGE;
        }
    };
    let entries = &catalog.entries[..lines.len()];

    let mut analyses = Vec::with_capacity(entries.len());
    let mut report = String::new();
    for entry in entries {
        let lattice = entry
            .lattice
            .as_ref()
            .expect("resumed entries keep lattices");
        let analysis = analyze_lattice(lattice, args.expansion_cap);
        report.push_str(&serde_json::to_string(&analysis.record).unwrap());
        report.push('\n');
        analyses.push((entry.n, analysis));
    }
    eprintln!("timing: analyze {} ms", started.elapsed().as_millis());

    let to_file = args.output.is_some();
    if let Some(path) = &args.output {
        if let Err(err) = std::fs::write(path, &report) {
            eprintln!("error: cannot write {}: {err}", path.display());
            return EXIT_USAGE;
        }
    } else {
        print!("{report}");
    }
    let summary = render_summary(d, &analyses);
    if to_file {
        print!("{summary}");
    } else {
        eprint!("{summary}");
    }
    EXIT_OK
}

struct LevelSummary {
    types: usize,
    max_diameter: u32,
    min_margin: i64,
    dantzig_count: usize,
    min_edge: Option<Ratio<u64>>,
    min_vertex: Option<Ratio<u64>>,
    max_separator: Option<usize>,
    any_cap_hit: bool,
    max_scale: u64,
}

fn render_summary(d: usize, analyses: &[(usize, EntryAnalysis)]) -> String {
    let mut levels: BTreeMap<usize, LevelSummary> = BTreeMap::new();
    let mut findings = Vec::new();
    for (n, analysis) in analyses {
        let level = levels.entry(*n).or_insert(LevelSummary {
            types: 0,
            max_diameter: 0,
            min_margin: i64::MAX,
            dantzig_count: 0,
            min_edge: None,
            min_vertex: None,
            max_separator: None,
            any_cap_hit: false,
            max_scale: 0,
        });
        level.types += 1;
        level.max_diameter = level.max_diameter.max(analysis.record.diameter);
        level.min_margin = level.min_margin.min(analysis.record.hirsch_margin);
        level.dantzig_count += usize::from(analysis.record.is_dantzig);
        if let Some(edge) = &analysis.edge {
            let v = Some(level.min_edge.map_or(edge.value, |m| m.min(edge.value)));
            level.min_edge = v;
        }
        if let Some(vertex) = &analysis.vertex {
            let v = Some(
                level
                    .min_vertex
                    .map_or(vertex.value, |m| m.min(vertex.value)),
            );
            level.min_vertex = v;
        }
        match &analysis.kalai {
            KalaiScan::Found(sep) => {
                level.max_separator = Some(
                    level
                        .max_separator
                        .map_or(sep.removed.len(), |m| m.max(sep.removed.len())),
                );
                let f0 = sep.removed.len() + sep.component_sizes.iter().sum::<usize>();
                level.max_scale = level
                    .max_scale
                    .max(conjectured_separator_scale(f0 as u64, d));
            }
            KalaiScan::CapExceeded => level.any_cap_hit = true,
            KalaiScan::NoSeparator => {}
        }

        if analysis.record.hirsch_margin < 0 {
            findings.push(format!(
                "FINDING: Hirsch violation at n={n}, key {}: diameter {} exceeds n-d={}",
                analysis.record.key,
                analysis.record.diameter,
                *n as i64 - d as i64,
            ));
        }
        for pair in &analysis.dantzig {
            if pair.distance as usize > d {
                findings.push(format!(
                    "FINDING: d-step exceedance at n={n}, key {}: pair {:?} at distance {}",
                    analysis.record.key, pair.pair, pair.distance,
                ));
            }
        }
    }

    let mut out = String::new();
    out.push_str("level  types  diam  margin  dantzig  edge-exp  vertex-exp  separator  scale\n");
    for (n, level) in &levels {
        let show_ratio = |r: &Option<Ratio<u64>>| {
            r.map_or("-".to_string(), |v| format!("{}/{}", v.numer(), v.denom()))
        };
        let separator = match (level.max_separator, level.any_cap_hit) {
            (Some(s), _) => s.to_string(),
            (None, true) => "?".to_string(),
            (None, false) => "-".to_string(),
        };
        out.push_str(&format!(
            "n={n:<4} {:<6} {:<5} {:<7} {:<8} {:<9} {:<11} {:<10} {}\n",
            level.types,
            level.max_diameter,
            if level.min_margin == i64::MAX {
                0
            } else {
                level.min_margin
            },
            level.dantzig_count,
            show_ratio(&level.min_edge),
            show_ratio(&level.min_vertex),
            separator,
            level.max_scale,
        ));
    }
    for finding in findings {
        out.push_str(&finding);
        out.push('\n');
    }
    out
}

pub fn cmd_verify(args: &VerifyArgs) -> i32 {
    if args.dim != 3 {
        eprintln!("error: oracle unavailable for dimension {}", args.dim);
        return EXIT_USAGE;
    }
    if args.max_facets > 9 {
        eprintln!("error: oracle limited to 9 facets, got {}", args.max_facets);
        return EXIT_USAGE;
    }

    let started = Instant::now();
    let observed: BTreeMap<usize, Vec<String>> = match &args.catalog {
        Some(path) => match catalog_file_keys(path) {
            Ok(keys) => keys,
            Err(message) => {
                eprintln!("error: {message}");
                return EXIT_USAGE;
            }
        },
        None => {
            let mut config = EnumerateConfig::new(3, args.max_facets);
            config.workers = args.workers;
            match enumerate_all(&config) {
                Ok(catalog) => {
                    let mut keys: BTreeMap<usize, Vec<String>> = BTreeMap::new();
                    for entry in &catalog.entries {
                        keys.entry(entry.n).or_default().push(entry.key.0.clone());
                    }
                    keys
                }
                Err(err) => {
                    eprintln!("error: {err}");
                    return enumerate_exit_code(&err);
                }
            }
        }
    };

    let mut mismatched = false;
    for n in 4..=args.max_facets {
        let mut have: Vec<String> = observed.get(&n).cloned().unwrap_or_default();
        have.sort();
        let want: Vec<String> = polycut_oracle::keys_for_facet_count(n)
            .into_iter()
            .map(|k| k.0)
            .collect();
        let missing: Vec<&String> = want.iter().filter(|k| !have.contains(k)).collect();
        let extra: Vec<&String> = have.iter().filter(|k| !want.contains(k)).collect();
        if missing.is_empty() && extra.is_empty() {
            println!("verify: n={n} OK ({} types)", want.len());
        } else {
            mismatched = true;
            println!(
                "verify: n={n} MISMATCH ({} enumerated, {} expected)",
                have.len(),
                want.len()
            );
            for key in missing {
                println!("verify:   missing {key}");
            }
            for key in extra {
                println!("verify:   extra {key}");
            }
        }
    }
    for (&n, keys) in observed
        .iter()
        .filter(|(&n, _)| n > args.max_facets || n < 4)
    {
        mismatched = true;
        println!(
            "verify: n={n} MISMATCH ({} keys outside checked range)",
            keys.len()
        );
    }
    eprintln!("timing: verify {} ms", started.elapsed().as_millis());
    if mismatched {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    }
}

fn catalog_file_keys(path: &Path) -> Result<BTreeMap<usize, Vec<String>>, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| format!("cannot read {}: {err}", path.display()))?;
    let mut keys: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let value: serde_json::Value =
            serde_json::from_str(line).map_err(|err| format!("line {}: {err}", i + 1))?;
        let (Some(d), Some(n), Some(key)) = (
            value["d"].as_u64(),
            value["n"].as_u64(),
            value["key"].as_str(),
        ) else {
            return Err(format!("line {}: missing d, n, or key", i + 1));
        };
        if d != 3 {
            return Err(format!("line {}: dimension {d} catalog, need 3", i + 1));
        }
        keys.entry(n as usize).or_default().push(key.to_string());
    }
    Ok(keys)
}

/// Writes `content` to `path`, creating parents. Used by integration tests.
pub fn write_file(path: &Path, content: &str) -> std::io::Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    let mut file = std::fs::File::create(path)?;
    file.write_all(content.as_bytes())
}
