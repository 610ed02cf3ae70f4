//! Certifying k-colorability for (P5, dart)-free graphs.
//!
//! A YES answer carries a proper k-coloring. A NO answer carries an induced
//! embedding of a (k+1)-vertex-critical graph from a complete database; any
//! graph with `χ > k` contains one, since deleting vertices one at a time
//! while `χ > k` holds ends at a vertex-critical induced subgraph.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::canon::{canonical_form, CanonicalForm};
use crate::coloring::{is_k_colorable, verify_coloring, Coloring};
use crate::criticality::is_k_vertex_critical;
use crate::detect::{find_induced, is_family_free, Embedding};
use crate::enumerate::GenResult;
use crate::error::{Error, Result};
use crate::graph::{p5_dart, Graph};

/// All (k+1)-vertex-critical (P5, dart)-free graphs, ascending by order then key.
#[derive(Clone, Debug)]
pub struct CriticalDatabase {
    k_plus_1: usize,
    entries: Vec<(CanonicalForm, Graph)>,
    index: HashMap<CanonicalForm, usize>,
    complete: bool,
}

impl CriticalDatabase {
    /// Builds a database after checking every entry is `k_plus_1`-vertex-critical
    /// and (P5, dart)-free. `complete` asserts the list is exhaustive. Entries
    /// are stored canonically labeled, so embeddings refer to the key's labeling.
    pub fn from_graphs(k_plus_1: usize, graphs: impl IntoIterator<Item = Graph>, complete: bool) -> Result<Self> {
        let family = p5_dart();
        let mut entries = Vec::new();
        for g in graphs {
            if !is_family_free(&g, &family) {
                return Err(Error::Manifest(format!("database entry {g} is not (P5, dart)-free")));
            }
            if !is_k_vertex_critical(&g, k_plus_1).vertex_critical {
                return Err(Error::Manifest(format!("database entry {g} is not {k_plus_1}-vertex-critical")));
            }
            let key = canonical_form(&g);
            let canon = key.to_graph();
            entries.push((key, canon));
        }
        Ok(Self::assemble(k_plus_1, entries, complete))
    }

    /// Takes the output of a generation run for `k = k_plus_1`; complete iff
    /// the run was not truncated.
    pub fn from_result(result: &GenResult) -> Self {
        let entries = result.graphs.iter().map(|f| (f.clone(), f.to_graph())).collect();
        Self::assemble(result.k, entries, !result.truncated)
    }

    /// Wraps canonical keys whose criticality is already established.
    pub fn from_canonical(k_plus_1: usize, forms: impl IntoIterator<Item = CanonicalForm>, complete: bool) -> Self {
        let entries = forms.into_iter().map(|f| {
            let g = f.to_graph();
            (f, g)
        });
        Self::assemble(k_plus_1, entries.collect(), complete)
    }

    fn assemble(k_plus_1: usize, mut entries: Vec<(CanonicalForm, Graph)>, complete: bool) -> Self {
        entries.sort_by(|a, b| (a.1.order(), &a.0).cmp(&(b.1.order(), &b.0)));
        entries.dedup_by(|a, b| a.0 == b.0);
        let index = entries.iter().enumerate().map(|(i, (k, _))| (k.clone(), i)).collect();
        CriticalDatabase { k_plus_1, entries, index, complete }
    }

    pub fn k_plus_1(&self) -> usize {
        self.k_plus_1
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(CanonicalForm, Graph)] {
        &self.entries
    }

    pub fn get(&self, key: &CanonicalForm) -> Option<&Graph> {
        self.index.get(key).map(|&i| &self.entries[i].1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Yes(Coloring),
    /// `embedding.map[v]` is the host vertex playing database vertex `v`.
    No { key: CanonicalForm, embedding: Embedding },
}

impl Certificate {
    pub fn decision(&self) -> bool {
        matches!(self, Certificate::Yes(_))
    }
}

/// `YES c0 c1 ...` or `NO <key> h0 h1 ...`.
impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Yes(c) => {
                f.write_str("YES")?;
                for x in &c.colors {
                    write!(f, " {x}")?;
                }
            }
            Certificate::No { key, embedding } => {
                write!(f, "NO {key}")?;
                for x in &embedding.map {
                    write!(f, " {x}")?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for Certificate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split_whitespace();
        let bad = || Error::Input(format!("malformed certificate: {s:?}"));
        let numbers = |it: std::str::SplitWhitespace<'_>| -> Result<Vec<usize>> {
            it.map(|x| x.parse::<usize>().map_err(|_| bad())).collect()
        };
        match parts.next() {
            Some("YES") => Ok(Certificate::Yes(Coloring { colors: numbers(parts)? })),
            Some("NO") => {
                let key = parts.next().ok_or_else(bad)?;
                let key = CanonicalForm::from_canonical_bytes(key.as_bytes()).ok_or_else(bad)?;
                Ok(Certificate::No { key, embedding: Embedding { map: numbers(parts)? } })
            }
            _ => Err(bad()),
        }
    }
}

/// Decides `χ(g) <= k` and returns the matching certificate.
pub fn certify_k_colorability(g: &Graph, k: usize, db: &CriticalDatabase) -> Result<(bool, Certificate)> {
    if db.k_plus_1 != k + 1 {
        return Err(Error::Config(format!(
            "database holds {}-vertex-critical graphs, certifying k = {k} needs {}",
            db.k_plus_1,
            k + 1
        )));
    }
    if !db.complete {
        return Err(Error::UncertifiedDatabase("database comes from a truncated run".into()));
    }
    if !is_family_free(g, &p5_dart()) {
        return Err(Error::NotFamilyFree);
    }
    if let Some(c) = is_k_colorable(g, k) {
        return Ok((true, Certificate::Yes(c)));
    }
    for (key, h) in &db.entries {
        if h.order() > g.order() {
            break;
        }
        if let Some(embedding) = find_induced(g, h) {
            return Ok((false, Certificate::No { key: key.clone(), embedding }));
        }
    }
    Err(Error::UncertifiedDatabase(format!(
        "graph {g} is not {k}-colorable but contains no database entry"
    )))
}

/// Independent check of a certificate. A NO certificate is checked against
/// the referenced database entry, whose criticality is the database's invariant.
pub fn verify_certificate(g: &Graph, k: usize, cert: &Certificate, db: &CriticalDatabase) -> bool {
    match cert {
        Certificate::Yes(c) => verify_coloring(g, c, k).unwrap_or(false),
        Certificate::No { key, embedding } => {
            db.k_plus_1 == k + 1 && db.get(key).is_some_and(|h| embedding.is_valid(g, h))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle};

    fn db3() -> CriticalDatabase {
        CriticalDatabase::from_graphs(3, [complete(3), cycle(5)], true).unwrap()
    }

    #[test]
    fn c5_is_not_2_colorable() {
        let db = db3();
        let (yes, cert) = certify_k_colorability(&cycle(5), 2, &db).unwrap();
        assert!(!yes);
        let Certificate::No { key, embedding } = &cert else { panic!() };
        assert_eq!(*key, canonical_form(&cycle(5)));
        assert!(embedding.is_valid(&cycle(5), db.get(key).unwrap()));
        assert!(verify_certificate(&cycle(5), 2, &cert, &db3()));
    }

    #[test]
    fn yes_certificate() {
        let db4 = CriticalDatabase::from_graphs(4, [complete(4)], true).unwrap();
        let (yes, cert) = certify_k_colorability(&cycle(5), 3, &db4).unwrap();
        assert!(yes);
        assert!(verify_certificate(&cycle(5), 3, &cert, &db4));
        let Certificate::Yes(mut c) = cert else { panic!() };
        c.colors[0] = c.colors[1];
        assert!(!verify_certificate(&cycle(5), 3, &Certificate::Yes(c), &db4));
    }

    #[test]
    fn k6_in_db() {
        let db = CriticalDatabase::from_graphs(6, [complete(6)], true).unwrap();
        let (yes, cert) = certify_k_colorability(&complete(6), 5, &db).unwrap();
        assert!(!yes);
        assert!(verify_certificate(&complete(6), 5, &cert, &db));
        let Certificate::No { key, mut embedding } = cert else { panic!() };
        // Mapping two database vertices to one host vertex is not an embedding.
        embedding.map[1] = embedding.map[0];
        assert!(!verify_certificate(&complete(6), 5, &Certificate::No { key, embedding }, &db));
    }

    #[test]
    fn tampered_embedding_on_c5() {
        let g = cycle(5);
        let (_, cert) = certify_k_colorability(&g, 2, &db3()).unwrap();
        let Certificate::No { key, mut embedding } = cert else { panic!() };
        embedding.map.swap(0, 1);
        assert!(!verify_certificate(&g, 2, &Certificate::No { key, embedding }, &db3()));
    }

    #[test]
    fn refuses_incomplete_db() {
        let db = CriticalDatabase::from_graphs(3, [cycle(5)], false).unwrap();
        assert!(matches!(certify_k_colorability(&cycle(5), 2, &db), Err(Error::UncertifiedDatabase(_))));
    }

    #[test]
    fn rejects_bad_entries_and_inputs() {
        assert!(CriticalDatabase::from_graphs(3, [complete(4)], true).is_err());
        let p5 = crate::graph::path(5);
        assert!(matches!(certify_k_colorability(&p5, 2, &db3()), Err(Error::NotFamilyFree)));
        assert!(matches!(certify_k_colorability(&cycle(5), 3, &db3()), Err(Error::Config(_))));
    }

    #[test]
    fn text_round_trip() {
        let (_, no) = certify_k_colorability(&cycle(5), 2, &db3()).unwrap();
        assert_eq!(no.to_string().parse::<Certificate>().unwrap(), no);
        let yes = Certificate::Yes(Coloring { colors: vec![0, 1, 0, 1, 2] });
        assert_eq!(yes.to_string(), "YES 0 1 0 1 2");
        assert_eq!(yes.to_string().parse::<Certificate>().unwrap(), yes);
        assert!("MAYBE".parse::<Certificate>().is_err());
    }
}
