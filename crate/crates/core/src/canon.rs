//! Canonical labeling by partition refinement and exhaustive branching.
//!
//! The ordered partition is refined to an equitable one (cells split by the
//! number of neighbors in a splitter cell). Non-discrete partitions branch by
//! individualizing each vertex of the first smallest non-singleton cell. Every
//! leaf yields an ordering of the vertices; the canonical representative is the
//! leaf whose upper-triangle bit string, in graph6 column order, is
//! lexicographically smallest. Leaves that reproduce an earlier bit string
//! reveal automorphisms, which prune sibling branches lying in the same orbit
//! of the pointwise stabilizer of the current individualized prefix.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use crate::graph::{Graph, VertexSet};
use crate::graph6;

/// Isomorphism-class key: the graph6 encoding of the canonically relabeled graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    key: Vec<u8>,
}

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.key
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.key).expect("graph6 is ASCII")
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.key
    }

    /// The canonical representative itself.
    pub fn to_graph(&self) -> Graph {
        graph6::decode(&self.key).expect("canonical keys are valid graph6")
    }

    pub(crate) fn from_key_unchecked(key: Vec<u8>) -> CanonicalForm {
        CanonicalForm { key }
    }

    /// Wraps bytes that are already a canonical key (e.g. read back from a corpus).
    /// Returns `None` unless the bytes decode and are canonical.
    pub fn from_canonical_bytes(bytes: &[u8]) -> Option<CanonicalForm> {
        let g = graph6::decode(bytes).ok()?;
        let cf = canonical_form(&g);
        (cf.key == bytes.trim_ascii()).then_some(cf)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.as_str())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Result of canonical labeling.
#[derive(Clone, Debug)]
pub struct Labeling {
    /// The canonically relabeled graph.
    pub graph: Graph,
    /// `order[p]` is the original vertex placed at canonical position `p`.
    pub order: Vec<usize>,
}

impl Labeling {
    pub fn form(&self) -> CanonicalForm {
        CanonicalForm { key: graph6::encode_bytes(&self.graph) }
    }

    /// `perm[v]` is the canonical position of original vertex `v`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut perm = vec![0; self.order.len()];
        for (p, &v) in self.order.iter().enumerate() {
            perm[v] = p;
        }
        perm
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).form()
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<_> = (0..a.order()).map(|v| a.degree(v)).collect();
    let mut db: Vec<_> = (0..b.order()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    da == db && canonical_form(a) == canonical_form(b)
}

pub fn canonical_labeling(g: &Graph) -> Labeling {
    let n = g.order();
    if n <= 1 {
        return Labeling { graph: g.clone(), order: (0..n).collect() };
    }
    let mut search = Search::new(g.rows());
    let mut cells = vec![VertexSet::full(n).mask()];
    search.refine(&mut cells, VecDeque::from([VertexSet::full(n).mask()]));
    let mut prefix = Vec::with_capacity(n);
    search.descend(cells, &mut prefix);
    let order = search.best.expect("search visits at least one leaf").order;
    let mut perm = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        perm[v] = p;
    }
    Labeling { graph: g.permute(&perm), order }
}

struct Leaf {
    code: Vec<u64>,
    order: Vec<usize>,
}

struct Search<'a> {
    rows: &'a [u64],
    first: Option<Leaf>,
    best: Option<Leaf>,
    /// Automorphisms found so far, as vertex maps.
    generators: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(rows: &'a [u64]) -> Self {
        Search { rows, first: None, best: None, generators: Vec::new() }
    }

    /// Refines `cells` until equitable. Split fragments are ordered by
    /// ascending neighbor count, which keeps the result labeling-invariant.
    fn refine(&self, cells: &mut Vec<u64>, mut queue: VecDeque<u64>) {
        let mut scratch: Vec<(u32, usize)> = Vec::with_capacity(self.rows.len());
        while let Some(splitter) = queue.pop_front() {
            let mut i = 0;
            while i < cells.len() {
                let cell = cells[i];
                if cell & (cell - 1) == 0 {
                    i += 1;
                    continue;
                }
                scratch.clear();
                scratch.extend(
                    VertexSet::from_mask(cell)
                        .iter()
                        .map(|v| ((self.rows[v] & splitter).count_ones(), v)),
                );
                let c0 = scratch[0].0;
                if scratch.iter().all(|&(c, _)| c == c0) {
                    i += 1;
                    continue;
                }
                scratch.sort_unstable();
                let mut fragments: Vec<u64> = Vec::new();
                let mut current = scratch[0].0;
                let mut acc = 0u64;
                for &(c, v) in scratch.iter() {
                    if c != current {
                        fragments.push(acc);
                        acc = 0;
                        current = c;
                    }
                    acc |= 1 << v;
                }
                fragments.push(acc);
                let added = fragments.len();
                queue.extend(fragments.iter().copied());
                cells.splice(i..=i, fragments);
                i += added;
            }
        }
    }

    fn descend(&mut self, cells: Vec<u64>, prefix: &mut Vec<usize>) {
        let n = self.rows.len();
        if cells.len() == n {
            self.leaf(&cells);
            return;
        }
        let (idx, target) = cells
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, c)| c.count_ones() > 1)
            .min_by_key(|&(i, c)| (c.count_ones(), i))
            .expect("non-discrete partition has a non-singleton cell");
        let mut tried = 0u64;
        for v in VertexSet::from_mask(target) {
            if tried != 0 && self.equivalent_to_tried(v, tried, prefix) {
                continue;
            }
            tried |= 1 << v;
            let mut next = cells.clone();
            next[idx] = target & !(1 << v);
            next.insert(idx, 1 << v);
            self.refine(&mut next, VecDeque::from([1u64 << v]));
            prefix.push(v);
            self.descend(next, prefix);
            prefix.pop();
        }
    }

    /// True if `v` shares an orbit with an already-tried vertex under the
    /// group generated by known automorphisms fixing `prefix` pointwise.
    fn equivalent_to_tried(&self, v: usize, tried: u64, prefix: &[usize]) -> bool {
        let n = self.rows.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.generators {
            if prefix.iter().all(|&p| gamma[p] == p) {
                any = true;
                for (x, &y) in gamma.iter().enumerate() {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        VertexSet::from_mask(tried)
            .iter()
            .any(|u| find(&mut parent, u) == root)
    }

    fn leaf(&mut self, cells: &[u64]) {
        let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let code = self.encode(&order);
        if let Some(first) = &self.first {
            if first.code == code {
                let gamma = automorphism(&order, &first.order);
                self.record(gamma);
            }
        } else {
            self.first = Some(Leaf { code: code.clone(), order: order.clone() });
        }
        match &self.best {
            None => self.best = Some(Leaf { code, order }),
            Some(best) => match code.cmp(&best.code) {
                Ordering::Less => self.best = Some(Leaf { code, order }),
                Ordering::Equal => {
                    let gamma = automorphism(&order, &best.order);
                    self.record(gamma);
                }
                Ordering::Greater => {}
            },
        }
    }

    fn record(&mut self, gamma: Vec<usize>) {
        if gamma.iter().enumerate().any(|(x, &y)| x != y) && !self.generators.contains(&gamma) {
            self.generators.push(gamma);
        }
    }

    /// Upper-triangle bits of the relabeled graph in graph6 column order,
    /// packed most-significant-bit first.
    fn encode(&self, order: &[usize]) -> Vec<u64> {
        let n = order.len();
        let bits = n * (n - 1) / 2;
        let mut out = Vec::with_capacity(bits.div_ceil(64));
        let mut acc = 0u64;
        let mut filled = 0;
        for j in 1..n {
            let col = self.rows[order[j]];
            for &u in &order[..j] {
                acc = (acc << 1) | ((col >> u) & 1);
                filled += 1;
                if filled == 64 {
                    out.push(acc);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push(acc << (64 - filled));
        }
        out
    }
}

/// The map sending `from[p]` to `to[p]` for every position `p`.
fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut gamma = vec![0; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        gamma[a] = b;
    }
    gamma
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{antihole, complete, cycle, dart, path};

    #[test]
    fn relabeled_c5_has_same_form() {
        let a = cycle(5);
        let b = Graph::from_edge_list(5, &[(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert_eq!(canonical_form(&a), canonical_form(&antihole(5)));
        assert!(are_isomorphic(&a, &antihole(5)));
    }

    #[test]
    fn distinct_classes_differ() {
        assert_ne!(canonical_form(&path(5)), canonical_form(&cycle(5)));
        let p4_k1 = path(4).disjoint_union(&complete(1)).unwrap();
        assert!(!are_isomorphic(&path(5), &p4_k1));
        assert_ne!(canonical_form(&path(5)), canonical_form(&p4_k1));
    }

    #[test]
    fn labeling_is_consistent() {
        let g = dart();
        let lab = canonical_labeling(&g);
        assert_eq!(g.permute(&lab.permutation()), lab.graph);
        assert_eq!(lab.form(), canonical_form(&lab.graph));
        assert!(CanonicalForm::from_canonical_bytes(lab.form().as_bytes()).is_some());
        assert!(are_isomorphic(&g, &lab.graph));
    }

    #[test]
    fn symmetric_graphs_finish() {
        for n in [1, 2, 10, 19, 40] {
            let k = complete(n);
            assert_eq!(canonical_form(&k).to_graph(), k);
        }
        let e = Graph::empty(30).unwrap();
        assert_eq!(canonical_form(&e).to_graph(), e);
        let many_c5 = (0..6).fold(Graph::empty(0).unwrap(), |acc, _| acc.disjoint_union(&cycle(5)).unwrap());
        let lab = canonical_labeling(&many_c5);
        assert!(are_isomorphic(&lab.graph, &many_c5));
    }

    #[test]
    fn small_orders() {
        let g0 = Graph::empty(0).unwrap();
        assert_eq!(canonical_form(&g0).as_str(), "?");
        assert_eq!(canonical_form(&complete(1)).as_str(), "@");
    }
}
