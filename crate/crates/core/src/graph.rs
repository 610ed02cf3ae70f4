//! Compact immutable simple graphs on at most 64 vertices.
//!
//! Adjacency is stored as one `u64` row per vertex. All operations that look
//! like mutation return a fresh [`Graph`].

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not, Sub};
use std::str::FromStr;

use crate::error::GraphError;

/// Largest supported vertex count (one machine word per adjacency row).
pub const MAX_VERTICES: usize = 64;

#[inline]
pub(crate) const fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A set of vertices stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_mask(mask: u64) -> Self {
        VertexSet(mask)
    }

    /// The set `{0, .., n-1}`.
    #[inline]
    pub const fn full(n: usize) -> Self {
        VertexSet(low_mask(n))
    }

    #[inline]
    pub const fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    #[inline]
    pub const fn mask(self) -> u64 {
        self.0
    }

    #[inline]
    pub const fn contains(self, v: usize) -> bool {
        v < 64 && (self.0 >> v) & 1 == 1
    }

    #[inline]
    pub const fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1u64 << v))
    }

    #[inline]
    pub const fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn intersects(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    /// Smallest member, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Largest member, if any.
    #[inline]
    pub fn last(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(63 - self.0.leading_zeros() as usize)
        }
    }

    #[inline]
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut mask = 0u64;
        for v in iter {
            debug_assert!(v < MAX_VERTICES);
            mask |= 1u64 << v;
        }
        VertexSet(mask)
    }
}

impl<'a> FromIterator<&'a usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: Self) -> Self {
        VertexSet(self.0 & rhs.0)
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: Self) -> Self {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitXor for VertexSet {
    type Output = VertexSet;
    fn bitxor(self, rhs: Self) -> Self {
        VertexSet(self.0 ^ rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: Self) -> Self {
        VertexSet(self.0 & !rhs.0)
    }
}

impl Not for VertexSet {
    type Output = VertexSet;
    fn not(self) -> Self {
        VertexSet(!self.0)
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for VertexIter {}

/// An immutable labeled simple graph with vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
}

impl Graph {
    /// The graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::Capacity { requested: n });
        }
        Ok(Graph { adj: vec![0; n] })
    }

    /// Builds a graph from an edge list. Duplicate edges are collapsed.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = Self::empty(n)?.adj;
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u });
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Graph { adj })
    }

    /// Builds a graph from adjacency rows, validating every invariant.
    pub fn from_adjacency(rows: Vec<u64>) -> Result<Graph, GraphError> {
        let n = rows.len();
        if n > MAX_VERTICES {
            return Err(GraphError::Capacity { requested: n });
        }
        let outside = !low_mask(n);
        for (v, &row) in rows.iter().enumerate() {
            if row & outside != 0 {
                let w = (row & outside).trailing_zeros() as usize;
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
            if (row >> v) & 1 == 1 {
                return Err(GraphError::SelfLoop { vertex: v });
            }
            for w in VertexSet(row) {
                if (rows[w] >> v) & 1 == 0 {
                    return Err(GraphError::Asymmetric { u: v, v: w });
                }
            }
        }
        Ok(Graph { adj: rows })
    }

    /// Internal constructor for rows already known to be valid.
    #[inline]
    pub(crate) fn from_rows_unchecked(adj: Vec<u64>) -> Graph {
        debug_assert!(Graph::from_adjacency(adj.clone()).is_ok());
        Graph { adj }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub(crate) fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.adj[u] >> v) & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.order()).map(|v| self.degree(v)).min()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `v` then `u`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |v| {
            VertexSet(self.adj[v] & low_mask(v)).iter().map(move |u| (u, v))
        })
    }

    /// Union of the neighborhoods of `s`, minus `s` itself.
    pub fn neighborhood_of_set(&self, s: VertexSet) -> VertexSet {
        let mut out = 0u64;
        for v in s {
            out |= self.adj[v];
        }
        VertexSet(out & !s.0)
    }

    /// Vertices adjacent to every member of `s`.
    pub fn common_neighbors(&self, s: VertexSet) -> VertexSet {
        let mut out = low_mask(self.order());
        for v in s {
            out &= self.adj[v];
        }
        VertexSet(out)
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| (s - VertexSet::singleton(v)).is_subset(self.neighbors(v)))
    }

    pub fn is_stable(&self, s: VertexSet) -> bool {
        s.iter().all(|v| !self.neighbors(v).intersects(s))
    }

    /// True iff every vertex of `a` is adjacent to every vertex of `b`.
    pub fn is_complete_to(&self, a: VertexSet, b: VertexSet) -> bool {
        a.iter().all(|v| b.is_subset(self.neighbors(v)))
    }

    /// True iff no vertex of `a` is adjacent to a vertex of `b`.
    pub fn is_anticomplete_to(&self, a: VertexSet, b: VertexSet) -> bool {
        a.iter().all(|v| !self.neighbors(v).intersects(b))
    }

    /// True iff `v` has both a neighbor and a non-neighbor in `s`.
    pub fn is_mixed_on(&self, v: usize, s: VertexSet) -> bool {
        let nb = self.neighbors(v) & s;
        !nb.is_empty() && nb != s
    }

    pub fn complement(&self) -> Graph {
        let full = low_mask(self.order());
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(v, &r)| !r & full & !(1u64 << v))
            .collect();
        Graph { adj }
    }

    /// The subgraph induced by `s`, relabeled `0..|s|` in ascending original order.
    pub fn induced_subgraph(&self, s: VertexSet) -> Graph {
        let s = s & self.vertices();
        let members: Vec<usize> = s.to_vec();
        let adj = members
            .iter()
            .map(|&v| {
                let row = self.adj[v];
                members
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (i, &w)| acc | (((row >> w) & 1) << i))
            })
            .collect();
        Graph { adj }
    }

    /// `G - v`, with vertices above `v` shifted down by one.
    pub fn remove_vertex(&self, v: usize) -> Graph {
        self.induced_subgraph(self.vertices().without(v))
    }

    /// Appends vertex `n` adjacent exactly to `neighbors`.
    pub fn add_vertex(&self, neighbors: VertexSet) -> Result<Graph, GraphError> {
        let n = self.order();
        if n >= MAX_VERTICES {
            return Err(GraphError::Capacity { requested: n + 1 });
        }
        if let Some(w) = (neighbors - self.vertices()).first() {
            return Err(GraphError::VertexOutOfRange { vertex: w, n });
        }
        let mut adj = Vec::with_capacity(n + 1);
        adj.extend(
            self.adj
                .iter()
                .enumerate()
                .map(|(v, &r)| r | (((neighbors.0 >> v) & 1) << n)),
        );
        adj.push(neighbors.0);
        Ok(Graph { adj })
    }

    /// Deletes the given edges; absent pairs are ignored.
    pub fn remove_edges(&self, edges: &[(usize, usize)]) -> Graph {
        let mut adj = self.adj.clone();
        for &(u, v) in edges {
            adj[u] &= !(1u64 << v);
            adj[v] &= !(1u64 << u);
        }
        Graph { adj }
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    ///
    /// # Panics
    /// Panics if `perm` is not a permutation of `0..n`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        let n = self.order();
        assert_eq!(perm.len(), n, "permutation length mismatch");
        assert_eq!(
            perm.iter().collect::<VertexSet>(),
            VertexSet::full(n),
            "not a permutation"
        );
        let mut adj = vec![0u64; n];
        for v in 0..n {
            adj[perm[v]] = VertexSet(self.adj[v]).iter().fold(0u64, |acc, w| acc | (1u64 << perm[w]));
        }
        Graph { adj }
    }

    /// Disjoint union; vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.order();
        if n + other.order() > MAX_VERTICES {
            return Err(GraphError::Capacity { requested: n + other.order() });
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&r| r << n));
        Ok(Graph { adj })
    }

    /// Disjoint union plus every edge between the two parts.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.order();
        let m = other.order();
        let mut g = self.disjoint_union(other)?;
        let left = low_mask(n);
        let right = low_mask(n + m) & !left;
        for (v, row) in g.adj.iter_mut().enumerate() {
            *row |= if v < n { right } else { left };
        }
        Ok(g)
    }

    /// Connected components of `G[s]`, ordered by smallest member.
    pub fn components_within(&self, s: VertexSet) -> Vec<VertexSet> {
        let mut remaining = s;
        let mut out = Vec::new();
        while let Some(start) = remaining.first() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let grown = self.neighborhood_of_set(frontier) & s & !comp;
                comp = comp | grown;
                frontier = grown;
            }
            remaining = remaining - comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components_within(self.vertices()).len() <= 1
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", crate::graph6::encode(self))
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::graph6::encode(self))
    }
}

/// The named graphs used throughout: paths, cycles, cliques, antiholes, dart, diamond.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedGraph {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Antihole(usize),
    Dart,
    Diamond,
}

impl NamedGraph {
    pub fn build(self) -> Result<Graph, GraphError> {
        named_graph(self)
    }
}

impl FromStr for NamedGraph {
    type Err = GraphError;

    /// Accepts `p5`, `c5`, `k4`, `antihole7` (or `co-c7`), `dart`, `diamond`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        let bad = || GraphError::UnknownName(s.to_string());
        let num = |rest: &str| rest.parse::<usize>().map_err(|_| bad());
        match lower.as_str() {
            "dart" => Ok(NamedGraph::Dart),
            "diamond" => Ok(NamedGraph::Diamond),
            _ => {
                if let Some(rest) = lower.strip_prefix("antihole") {
                    Ok(NamedGraph::Antihole(num(rest)?))
                } else if let Some(rest) = lower.strip_prefix("co-c") {
                    Ok(NamedGraph::Antihole(num(rest)?))
                } else if let Some(rest) = lower.strip_prefix('p') {
                    Ok(NamedGraph::Path(num(rest)?))
                } else if let Some(rest) = lower.strip_prefix('c') {
                    Ok(NamedGraph::Cycle(num(rest)?))
                } else if let Some(rest) = lower.strip_prefix('k') {
                    Ok(NamedGraph::Complete(num(rest)?))
                } else {
                    Err(bad())
                }
            }
        }
    }
}

/// Builds a named graph in its natural labeling.
///
/// Paths and cycles use consecutive vertices; the antihole on `m` vertices is
/// the complement of the natural `m`-cycle. The dart is the diamond on
/// `{0, 1, 2, 3}` (chord `0-2`) with vertex 4 pendant at vertex 2.
pub fn named_graph(name: NamedGraph) -> Result<Graph, GraphError> {
    match name {
        NamedGraph::Path(t) => {
            if t == 0 {
                return Err(GraphError::InvalidParameter(format!("path on {t} vertices")));
            }
            let edges: Vec<_> = (1..t).map(|i| (i - 1, i)).collect();
            Graph::from_edge_list(t, &edges)
        }
        NamedGraph::Cycle(t) => {
            if t < 3 {
                return Err(GraphError::InvalidParameter(format!("cycle on {t} vertices")));
            }
            let edges: Vec<_> = (0..t).map(|i| (i, (i + 1) % t)).collect();
            Graph::from_edge_list(t, &edges)
        }
        NamedGraph::Complete(n) => {
            if n == 0 {
                return Err(GraphError::InvalidParameter("complete graph on 0 vertices".into()));
            }
            Ok(Graph::empty(n)?.complement())
        }
        NamedGraph::Antihole(m) => {
            if m < 5 {
                return Err(GraphError::InvalidParameter(format!(
                    "antihole needs at least 5 vertices, got {m}"
                )));
            }
            Ok(named_graph(NamedGraph::Cycle(m))?.complement())
        }
        NamedGraph::Diamond => Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]),
        NamedGraph::Dart => {
            Graph::from_edge_list(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (2, 4)])
        }
    }
}

pub fn path(t: usize) -> Graph {
    named_graph(NamedGraph::Path(t)).expect("path order must be positive")
}

pub fn cycle(t: usize) -> Graph {
    named_graph(NamedGraph::Cycle(t)).expect("cycle order must be at least 3")
}

pub fn complete(n: usize) -> Graph {
    named_graph(NamedGraph::Complete(n)).expect("complete graph order must be positive")
}

pub fn antihole(m: usize) -> Graph {
    named_graph(NamedGraph::Antihole(m)).expect("antihole order must be at least 5")
}

pub fn dart() -> Graph {
    named_graph(NamedGraph::Dart).unwrap()
}

pub fn diamond() -> Graph {
    named_graph(NamedGraph::Diamond).unwrap()
}

/// The default forbidden family `{P5, dart}`.
pub fn p5_dart() -> Vec<Graph> {
    vec![path(5), dart()]
}
