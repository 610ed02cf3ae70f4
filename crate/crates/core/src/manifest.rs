//! Corpus files and their manifests.
//!
//! A corpus is one graph6 line per graph, sorted by canonical key. Its
//! manifest is a sidecar text file of `key=value` lines:
//!
//! ```text
//! k=5
//! family=p5,dart
//! total=184
//! truncated=false
//! max_order=64
//! order.5=1
//! order.7=1
//! nodes=1554
//! cache_hits=2071
//! corpus=k5.g6
//! ```
//!
//! `corpus` is resolved relative to the manifest's directory.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::canon::CanonicalForm;
use crate::certify::CriticalDatabase;
use crate::enumerate::GenResult;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    pub k: usize,
    pub family: String,
    pub total: usize,
    pub truncated: bool,
    pub max_order: usize,
    pub counts_by_order: BTreeMap<usize, usize>,
    pub nodes: u64,
    pub cache_hits: u64,
    pub corpus: String,
}

impl Manifest {
    pub fn from_result(result: &GenResult, family: &str, max_order: usize, corpus: &str) -> Manifest {
        Manifest {
            k: result.k,
            family: family.to_string(),
            total: result.total(),
            truncated: result.truncated,
            max_order,
            counts_by_order: result.counts_by_order.clone(),
            nodes: result.stats.nodes,
            cache_hits: result.stats.cache_hits,
            corpus: corpus.to_string(),
        }
    }

    pub fn read(path: &Path) -> Result<Manifest> {
        let text = fs::read_to_string(path).map_err(|e| Error::Manifest(format!("{}: {e}", path.display())))?;
        text.parse()
    }

    /// Path of the corpus file, given where the manifest lives.
    pub fn corpus_path(&self, manifest_path: &Path) -> PathBuf {
        manifest_path.parent().unwrap_or(Path::new("")).join(&self.corpus)
    }
}

impl fmt::Display for Manifest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k={}", self.k)?;
        writeln!(f, "family={}", self.family)?;
        writeln!(f, "total={}", self.total)?;
        writeln!(f, "truncated={}", self.truncated)?;
        writeln!(f, "max_order={}", self.max_order)?;
        for (n, c) in &self.counts_by_order {
            writeln!(f, "order.{n}={c}")?;
        }
        writeln!(f, "nodes={}", self.nodes)?;
        writeln!(f, "cache_hits={}", self.cache_hits)?;
        writeln!(f, "corpus={}", self.corpus)
    }
}

impl FromStr for Manifest {
    type Err = Error;

    fn from_str(text: &str) -> Result<Manifest> {
        let mut fields: BTreeMap<&str, &str> = BTreeMap::new();
        let mut counts = BTreeMap::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Manifest(format!("line {}: expected key=value", no + 1)))?;
            if let Some(order) = key.strip_prefix("order.") {
                counts.insert(parse_field(order, key)?, parse_field(value, key)?);
            } else if fields.insert(key, value).is_some() {
                return Err(Error::Manifest(format!("duplicate key {key}")));
            }
        }
        let get = |key: &str| fields.get(key).copied().ok_or_else(|| Error::Manifest(format!("missing key {key}")));
        let m = Manifest {
            k: parse_field(get("k")?, "k")?,
            family: get("family")?.to_string(),
            total: parse_field(get("total")?, "total")?,
            truncated: parse_field(get("truncated")?, "truncated")?,
            max_order: parse_field(get("max_order")?, "max_order")?,
            counts_by_order: counts,
            nodes: parse_field(get("nodes")?, "nodes")?,
            cache_hits: parse_field(get("cache_hits")?, "cache_hits")?,
            corpus: get("corpus")?.to_string(),
        };
        if m.counts_by_order.values().sum::<usize>() != m.total {
            return Err(Error::Manifest("per-order counts do not sum to total".into()));
        }
        Ok(m)
    }
}

fn parse_field<T: FromStr>(value: &str, key: &str) -> Result<T> {
    value.trim().parse().map_err(|_| Error::Manifest(format!("bad value {value:?} for {key}")))
}

/// Writes one graph6 line per graph, in canonical key order.
pub fn write_corpus<W: Write>(result: &GenResult, mut w: W) -> std::io::Result<()> {
    for key in &result.graphs {
        w.write_all(key.as_bytes())?;
        w.write_all(b"\n")?;
    }
    w.flush()
}

/// Writes `out` (the corpus) and `out.manifest`.
pub fn save_run(out: &Path, result: &GenResult, family: &str, max_order: usize) -> Result<Manifest> {
    let io = |e: std::io::Error| Error::Manifest(format!("{}: {e}", out.display()));
    let name = out
        .file_name()
        .and_then(|n| n.to_str())
        .ok_or_else(|| Error::Manifest(format!("{}: not a file path", out.display())))?;
    let file = fs::File::create(out).map_err(io)?;
    write_corpus(result, std::io::BufWriter::new(file)).map_err(io)?;
    let manifest = Manifest::from_result(result, family, max_order, name);
    fs::write(manifest_path_for(out), manifest.to_string()).map_err(io)?;
    Ok(manifest)
}

pub fn manifest_path_for(corpus: &Path) -> PathBuf {
    let mut s = corpus.as_os_str().to_owned();
    s.push(".manifest");
    PathBuf::from(s)
}

/// Reads graph6 lines, skipping blank lines. Errors carry the 1-based line number.
pub fn read_graph6<R: BufRead>(reader: R) -> impl Iterator<Item = (usize, Result<Graph>)> {
    reader.lines().enumerate().filter_map(|(i, line)| match line {
        Err(e) => Some((i + 1, Err(Error::Input(e.to_string())))),
        Ok(l) if l.trim().is_empty() => None,
        Ok(l) => Some((i + 1, graph6::decode_str(&l).map_err(Error::from))),
    })
}

/// Loads a corpus as a certification database. Refuses truncated runs and
/// checks that keys are canonical and match the recorded counts. Entry
/// criticality is trusted from the generating run.
pub fn load_database(manifest_path: &Path) -> Result<CriticalDatabase> {
    let m = Manifest::read(manifest_path)?;
    if m.truncated {
        return Err(Error::UncertifiedDatabase(format!("{} records a truncated run", manifest_path.display())));
    }
    let forms = load_corpus(&m, &m.corpus_path(manifest_path))?;
    Ok(CriticalDatabase::from_canonical(m.k, forms, true))
}

/// Reads the corpus a manifest points to and checks it against the manifest.
pub fn load_corpus(m: &Manifest, corpus_path: &Path) -> Result<Vec<CanonicalForm>> {
    let text = fs::read_to_string(corpus_path).map_err(|e| Error::Manifest(format!("{}: {e}", corpus_path.display())))?;
    let mut forms = Vec::new();
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let f = CanonicalForm::from_canonical_bytes(line.as_bytes())
            .ok_or_else(|| Error::Manifest(format!("line {}: not a canonical graph6 key", no + 1)))?;
        *counts.entry(f.to_graph().order()).or_default() += 1;
        forms.push(f);
    }
    if forms.len() != m.total || counts != m.counts_by_order {
        return Err(Error::Manifest(format!(
            "corpus holds {} graphs, manifest records {}",
            forms.len(),
            m.total
        )));
    }
    Ok(forms)
}
