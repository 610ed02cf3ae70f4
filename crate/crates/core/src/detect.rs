//! Induced-subgraph containment and the special configurations: holes,
//! antiholes, comparable pairs and homogeneous sets.

use std::collections::HashSet;

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{antihole, cycle, low_mask, Graph, VertexSet};

/// An induced copy of a pattern: `map[i]` is the host vertex playing pattern vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Re-checks injectivity and the induced condition from scratch.
    pub fn is_valid(&self, host: &Graph, pattern: &Graph) -> bool {
        let m = &self.map;
        if m.len() != pattern.order() || m.iter().any(|&v| v >= host.order()) {
            return false;
        }
        if m.iter().collect::<VertexSet>().len() != m.len() {
            return false;
        }
        (0..m.len()).all(|i| (0..i).all(|j| pattern.has_edge(i, j) == host.has_edge(m[i], m[j])))
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.map.iter().collect()
    }
}

/// Pattern vertices ordered by degree (descending), each later vertex
/// preferring the most links back to those already placed.
fn search_order(pattern: &Graph) -> Vec<usize> {
    let p = pattern.order();
    let mut order = Vec::with_capacity(p);
    let mut placed = VertexSet::EMPTY;
    while order.len() < p {
        let next = (pattern.vertices() - placed)
            .iter()
            .max_by_key(|&v| ((pattern.neighbors(v) & placed).len(), pattern.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        order.push(next);
        placed = placed.with(next);
    }
    order
}

struct Matcher<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    order: Vec<usize>,
    map: Vec<usize>,
}

impl Matcher<'_> {
    fn extend(&mut self, depth: usize, used: VertexSet, allowed: &[VertexSet]) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let pv = self.order[depth];
        let mut cand = allowed[pv] - used;
        for &qv in &self.order[..depth] {
            let hv = self.map[qv];
            cand = if self.pattern.has_edge(pv, qv) {
                cand & self.host.neighbors(hv)
            } else {
                cand - self.host.neighbors(hv)
            };
        }
        for hv in cand {
            self.map[pv] = hv;
            if self.extend(depth + 1, used.with(hv), allowed) {
                return true;
            }
        }
        false
    }
}

fn find_induced_with(host: &Graph, pattern: &Graph, allowed: &[VertexSet]) -> Option<Embedding> {
    let p = pattern.order();
    if p > host.order() {
        return None;
    }
    let mut m = Matcher { host, pattern, order: search_order(pattern), map: vec![0; p] };
    m.extend(0, VertexSet::EMPTY, allowed).then_some(Embedding { map: m.map })
}

fn degree_filter(host: &Graph, pattern: &Graph) -> Vec<VertexSet> {
    (0..pattern.order())
        .map(|pv| {
            let d = pattern.degree(pv);
            let co = pattern.order() - 1 - d;
            host.vertices()
                .iter()
                .filter(|&hv| host.degree(hv) >= d && host.order() - 1 - host.degree(hv) >= co)
                .collect()
        })
        .collect()
}

/// Some induced copy of `pattern` in `host`, if any.
///
/// # Panics
/// Panics on an empty pattern.
pub fn find_induced(host: &Graph, pattern: &Graph) -> Option<Embedding> {
    assert!(pattern.order() >= 1, "pattern must have at least one vertex");
    let allowed = degree_filter(host, pattern);
    find_induced_with(host, pattern, &allowed)
}

/// Some induced copy of `pattern` that uses host vertex `through`.
pub fn find_induced_through(host: &Graph, pattern: &Graph, through: usize) -> Option<Embedding> {
    assert!(pattern.order() >= 1, "pattern must have at least one vertex");
    let allowed = degree_filter(host, pattern);
    for pv in 0..pattern.order() {
        if !allowed[pv].contains(through) {
            continue;
        }
        let mut pinned = allowed.clone();
        pinned[pv] = VertexSet::singleton(through);
        for (q, set) in pinned.iter_mut().enumerate() {
            if q != pv {
                *set = set.without(through);
            }
        }
        if let Some(e) = find_induced_with(host, pattern, &pinned) {
            return Some(e);
        }
    }
    None
}

/// Every induced copy of `pattern`, as injective maps (automorphic images included).
pub fn all_induced(host: &Graph, pattern: &Graph) -> Vec<Embedding> {
    fn rec(m: &Matcher<'_>, depth: usize, map: &mut Vec<usize>, used: VertexSet, allowed: &[VertexSet], out: &mut Vec<Embedding>) {
        if depth == m.order.len() {
            out.push(Embedding { map: map.clone() });
            return;
        }
        let pv = m.order[depth];
        let mut cand = allowed[pv] - used;
        for &qv in &m.order[..depth] {
            let hv = map[qv];
            cand = if m.pattern.has_edge(pv, qv) { cand & m.host.neighbors(hv) } else { cand - m.host.neighbors(hv) };
        }
        for hv in cand {
            map[pv] = hv;
            rec(m, depth + 1, map, used.with(hv), allowed, out);
        }
    }
    let mut out = Vec::new();
    if pattern.order() > host.order() || pattern.order() == 0 {
        return out;
    }
    let allowed = degree_filter(host, pattern);
    let m = Matcher { host, pattern, order: search_order(pattern), map: Vec::new() };
    let mut map = vec![0; pattern.order()];
    rec(&m, 0, &mut map, VertexSet::EMPTY, &allowed, &mut out);
    out
}

pub fn is_family_free(g: &Graph, family: &[Graph]) -> bool {
    family.iter().all(|h| find_induced(g, h).is_none())
}

/// First family member (index and embedding) found in `g`.
pub fn find_family_member(g: &Graph, family: &[Graph]) -> Option<(usize, Embedding)> {
    family.iter().enumerate().find_map(|(i, h)| find_induced(g, h).map(|e| (i, e)))
}

/// The vertex set of some induced C5.
pub fn find_induced_c5(g: &Graph) -> Option<VertexSet> {
    find_induced_c5_ordered(g).map(|c| c.iter().collect())
}

/// Some induced C5 as a cyclic vertex order.
pub fn find_induced_c5_ordered(g: &Graph) -> Option<[usize; 5]> {
    find_induced(g, &cycle(5)).map(|e| [e.map[0], e.map[1], e.map[2], e.map[3], e.map[4]])
}

/// Every induced C5 once (per vertex set), in cyclic order starting from its
/// smallest vertex and proceeding toward its smaller neighbor on the cycle.
pub fn all_induced_c5(g: &Graph) -> Vec<[usize; 5]> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for e in all_induced(g, &cycle(5)) {
        let set = e.vertex_set();
        if !seen.insert(set) {
            continue;
        }
        out.push(normalize_cyclic(&e.map).try_into().unwrap());
    }
    out.sort_unstable();
    out
}

fn normalize_cyclic(c: &[usize]) -> Vec<usize> {
    let m = c.len();
    let start = (0..m).min_by_key(|&i| c[i]).unwrap();
    let fwd = c[(start + 1) % m];
    let back = c[(start + m - 1) % m];
    if fwd < back {
        (0..m).map(|i| c[(start + i) % m]).collect()
    } else {
        (0..m).map(|i| c[(start + m - i) % m]).collect()
    }
}

fn check_antihole_size(m: usize) -> Result<()> {
    if m < 7 || m.is_multiple_of(2) {
        return Err(Error::Input(format!("antihole size must be odd and at least 7, got {m}")));
    }
    Ok(())
}

/// An ordering `v1..vm` of an induced antihole: `vi vj` is an edge iff the
/// indices differ by more than one, cyclically.
pub fn find_induced_antihole(g: &Graph, m: usize) -> Result<Option<Vec<usize>>> {
    check_antihole_size(m)?;
    Ok(find_induced(g, &antihole(m)).map(|e| e.map))
}

/// Every induced antihole of size `m` once (per vertex set).
pub fn all_induced_antiholes(g: &Graph, m: usize) -> Result<Vec<Vec<usize>>> {
    check_antihole_size(m)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for e in all_induced(g, &antihole(m)) {
        if seen.insert(e.vertex_set()) {
            out.push(normalize_cyclic(&e.map));
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// True iff `order` realizes the antihole adjacency rule in `g`.
pub fn is_antihole_ordering(g: &Graph, order: &[usize]) -> bool {
    let m = order.len();
    m >= 5
        && order.iter().all(|&v| v < g.order())
        && order.iter().collect::<VertexSet>().len() == m
        && (0..m).all(|i| {
            (0..i).all(|j| {
                let d = i - j;
                let cyc = d.min(m - d);
                g.has_edge(order[i], order[j]) == (cyc > 1)
            })
        })
}

/// True iff `order` is an induced cycle of `g` in the given cyclic order.
pub fn is_hole_ordering(g: &Graph, order: &[usize]) -> bool {
    let m = order.len();
    m >= 3
        && order.iter().all(|&v| v < g.order())
        && order.iter().collect::<VertexSet>().len() == m
        && (0..m).all(|i| {
            (0..i).all(|j| {
                let d = i - j;
                g.has_edge(order[i], order[j]) == (d == 1 || d == m - 1)
            })
        })
}

/// A nonadjacent pair `(u, v)` with `N(u) ⊆ N(v)`, if any.
pub fn comparable_pair(g: &Graph) -> Option<(usize, usize)> {
    let n = g.order();
    for u in 0..n {
        for v in (u + 1)..n {
            if g.has_edge(u, v) {
                continue;
            }
            let (nu, nv) = (g.neighbors(u), g.neighbors(v));
            if nu.is_subset(nv) {
                return Some((u, v));
            }
            if nv.is_subset(nu) {
                return Some((v, u));
            }
        }
    }
    None
}

/// Outcome of a homogeneity test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Homogeneous,
    /// Some outside vertex is mixed on the set.
    Mixed(usize),
}

impl Homogeneity {
    pub fn holds(self) -> bool {
        self == Homogeneity::Homogeneous
    }
}

/// Checks that no vertex outside `s` is mixed on `s`.
pub fn is_homogeneous(g: &Graph, s: VertexSet) -> Result<Homogeneity> {
    if s.is_empty() || !s.is_subset(g.vertices()) || s == g.vertices() {
        return Err(Error::Input("homogeneous set must be a nonempty proper vertex subset".into()));
    }
    Ok(mixed_vertex(g, s).map_or(Homogeneity::Homogeneous, Homogeneity::Mixed))
}

/// Smallest vertex outside `s` that is mixed on `s`.
pub fn mixed_vertex(g: &Graph, s: VertexSet) -> Option<usize> {
    (g.vertices() - s).iter().find(|&v| g.is_mixed_on(v, s))
}

/// Forbidden-pattern index for one-vertex extensions of a family-free graph.
///
/// For each pattern order `p` (3 to 6) a table maps the edge pattern of a
/// `(p-1)`-vertex window to the set of neighbor patterns a new vertex must not
/// have on that window. Larger or smaller patterns fall back to a direct
/// search through the new vertex.
#[derive(Clone, Debug)]
pub struct ExtensionFilter {
    tables: Vec<WindowTable>,
    fallback: Vec<Graph>,
}

#[derive(Clone, Debug)]
struct WindowTable {
    /// Window size `p - 1`.
    width: usize,
    /// Indexed by the window's edge pattern; bit `r` set iff a new vertex
    /// with neighbor pattern `r` completes a family member.
    forbidden: Vec<u64>,
}

/// One window of a parent graph together with its forbidden neighbor patterns.
#[derive(Clone, Copy, Debug)]
pub struct Window {
    pub vertices: VertexSet,
    pub forbidden: u64,
}

impl Window {
    /// True iff a new vertex adjacent to exactly `s` (restricted to this window) completes a pattern.
    #[inline]
    pub fn fires(&self, s: VertexSet) -> bool {
        let r = pext(s.mask(), self.vertices.mask());
        (self.forbidden >> r) & 1 == 1
    }
}

#[inline]
fn pext(x: u64, mask: u64) -> u64 {
    let mut out = 0u64;
    let mut bit = 0;
    let mut m = mask;
    while m != 0 {
        let low = m.trailing_zeros();
        out |= ((x >> low) & 1) << bit;
        bit += 1;
        m &= m - 1;
    }
    out
}

/// Position of the pair `(i, j)`, `i < j`, in column order.
#[inline]
const fn pair_index(i: usize, j: usize) -> usize {
    j * (j - 1) / 2 + i
}

impl ExtensionFilter {
    pub fn new(family: &[Graph]) -> ExtensionFilter {
        let mut tables = Vec::new();
        let mut fallback = Vec::new();
        let mut sizes: Vec<usize> = family.iter().map(Graph::order).collect();
        sizes.sort_unstable();
        sizes.dedup();
        for p in sizes {
            let members: Vec<&Graph> = family.iter().filter(|h| h.order() == p).collect();
            if (3..=6).contains(&p) {
                tables.push(WindowTable::build(p, &members));
            } else {
                fallback.extend(members.into_iter().cloned());
            }
        }
        ExtensionFilter { tables, fallback }
    }

    /// All windows of `parent` on which some neighbor pattern is forbidden.
    pub fn windows(&self, parent: &Graph) -> Vec<Window> {
        let mut out = Vec::new();
        for t in &self.tables {
            for_each_subset(parent.order(), t.width, |w| {
                let mut pattern = 0usize;
                let verts: Vec<usize> = VertexSet::from_mask(w).to_vec();
                for j in 1..verts.len() {
                    for i in 0..j {
                        if parent.has_edge(verts[i], verts[j]) {
                            pattern |= 1 << pair_index(i, j);
                        }
                    }
                }
                let forbidden = t.forbidden[pattern];
                if forbidden != 0 {
                    out.push(Window { vertices: VertexSet::from_mask(w), forbidden });
                }
            });
        }
        out
    }

    /// Patterns that need a direct search through the new vertex.
    pub fn has_fallback(&self) -> bool {
        !self.fallback.is_empty()
    }

    /// Direct check for the fallback patterns: does `child` contain one through `new_vertex`?
    pub fn fallback_fires(&self, child: &Graph, new_vertex: usize) -> bool {
        self.fallback.iter().any(|h| find_induced_through(child, h, new_vertex).is_some())
    }

    /// Full incremental decision for a single candidate extension.
    pub fn creates_pattern(&self, parent: &Graph, s: VertexSet) -> bool {
        if self.windows(parent).iter().any(|w| w.fires(s)) {
            return true;
        }
        if self.has_fallback() {
            let child = parent.add_vertex(s).expect("capacity checked by caller");
            return self.fallback_fires(&child, parent.order());
        }
        false
    }
}

impl WindowTable {
    fn build(p: usize, members: &[&Graph]) -> WindowTable {
        let keys: HashSet<CanonicalForm> = members.iter().map(|h| canonical_form(h)).collect();
        let width = p - 1;
        let window_pairs = width * width.saturating_sub(1) / 2;
        let mut forbidden = vec![0u64; 1 << window_pairs];
        for (pattern, slot) in forbidden.iter_mut().enumerate() {
            for r in 0..(1u64 << width) {
                let mut edges = Vec::new();
                for j in 1..width {
                    for i in 0..j {
                        if (pattern >> pair_index(i, j)) & 1 == 1 {
                            edges.push((i, j));
                        }
                    }
                }
                for i in 0..width {
                    if (r >> i) & 1 == 1 {
                        edges.push((i, width));
                    }
                }
                let g = Graph::from_edge_list(p, &edges).unwrap();
                if keys.contains(&canonical_form(&g)) {
                    *slot |= 1 << r;
                }
            }
        }
        WindowTable { width, forbidden }
    }
}

/// Calls `f` with every `k`-subset of `0..n` as a mask.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(u64)) {
    if k > n {
        return;
    }
    if k == 0 {
        f(0);
        return;
    }
    // Gosper's hack.
    let mut s: u64 = low_mask(k);
    let limit = if n >= 64 { u64::MAX } else { 1u64 << n };
    loop {
        f(s);
        let c = s & s.wrapping_neg();
        let r = s.wrapping_add(c);
        if r >= limit || r == 0 {
            break;
        }
        s = (((r ^ s) >> 2) / c) | r;
        if s >= limit {
            break;
        }
    }
}
