//! Partitions of a (P5, dart)-free graph around an induced C5 or an odd
//! antihole, and exhaustive checks of the structural properties those
//! partitions satisfy.
//!
//! Hole positions are zero-based internally and reported one-based.

use std::collections::BTreeMap;
use std::fmt;

use crate::detect::{is_antihole_ordering, is_hole_ordering, mixed_vertex};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Partition of `V(G) \ C` by neighborhood on an induced `C = v1..v5`.
/// Arrays are indexed by the hole position `i`, zero-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionC5 {
    pub c: [usize; 5],
    pub s0: VertexSet,
    /// `N_C = {v(i-1), v(i+1)}`.
    pub s2: [VertexSet; 5],
    /// `N_C = {v(i-1), v(i), v(i+1)}`.
    pub s31: [VertexSet; 5],
    /// `N_C = {v(i-2), v(i), v(i+2)}`.
    pub s32: [VertexSet; 5],
    /// `N_C = C \ {v(i)}`.
    pub s4: [VertexSet; 5],
    pub s5: VertexSet,
}

fn union(sets: &[VertexSet; 5]) -> VertexSet {
    sets.iter().fold(VertexSet::EMPTY, |a, &b| a | b)
}

impl PartitionC5 {
    pub fn hole(&self) -> VertexSet {
        self.c.iter().collect()
    }
    pub fn s2_all(&self) -> VertexSet {
        union(&self.s2)
    }
    pub fn s31_all(&self) -> VertexSet {
        union(&self.s31)
    }
    pub fn s32_all(&self) -> VertexSet {
        union(&self.s32)
    }
    pub fn s4_all(&self) -> VertexSet {
        union(&self.s4)
    }
}

/// Position pattern (bit `j` = adjacent to `v(j)`) for each class.
const fn ring(bits: &[isize], i: usize) -> u8 {
    let mut mask = 0u8;
    let mut k = 0;
    while k < bits.len() {
        let p = (i as isize + bits[k]).rem_euclid(5) as u32;
        mask |= 1 << p;
        k += 1;
    }
    mask
}

pub fn partition_around_c5(g: &Graph, c: &[usize; 5]) -> Result<PartitionC5> {
    if !is_hole_ordering(g, c) {
        return Err(Error::Input(format!("{c:?} is not an induced C5 in cyclic order")));
    }
    let mut p = PartitionC5 {
        c: *c,
        s0: VertexSet::EMPTY,
        s2: [VertexSet::EMPTY; 5],
        s31: [VertexSet::EMPTY; 5],
        s32: [VertexSet::EMPTY; 5],
        s4: [VertexSet::EMPTY; 5],
        s5: VertexSet::EMPTY,
    };
    let hole = p.hole();
    for v in g.vertices() - hole {
        let nb = g.neighbors(v);
        let pattern = (0..5).fold(0u8, |m, j| m | ((nb.contains(c[j]) as u8) << j));
        match pattern {
            0 => p.s0 = p.s0.with(v),
            0b11111 => p.s5 = p.s5.with(v),
            _ => {
                let slot = (0..5).find_map(|i| {
                    [ring(&[-1, 1], i), ring(&[-1, 0, 1], i), ring(&[-2, 0, 2], i), ring(&[-2, -1, 1, 2], i)]
                        .iter()
                        .position(|&m| m == pattern)
                        .map(|kind| (kind, i))
                });
                let Some((kind, i)) = slot else {
                    return Err(Error::ClassViolation { vertex: v, neighborhood: (nb & hole).to_vec() });
                };
                let class = match kind {
                    0 => &mut p.s2[i],
                    1 => &mut p.s31[i],
                    2 => &mut p.s32[i],
                    _ => &mut p.s4[i],
                };
                *class = class.with(v);
            }
        }
    }
    Ok(p)
}

/// Identifies a checked statement: a C5 property (1..=18) or an antihole claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckId {
    Property(u8),
    Claim(u8),
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckId::Property(n) => write!(f, "P{n}"),
            CheckId::Claim(n) => write!(f, "A{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    /// Does not apply to this input (e.g. the connectivity-dependent claim on a disconnected graph).
    Skipped,
    /// Vertices re-checkable against the statement; `index` is the hole
    /// position (one-based) the violated instance refers to, if any.
    Violated { index: Option<usize>, witness: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyEntry {
    pub id: CheckId,
    pub outcome: Outcome,
}

impl PropertyEntry {
    pub fn holds(&self) -> bool {
        !matches!(self.outcome, Outcome::Violated { .. })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropertyReport {
    pub entries: Vec<PropertyEntry>,
}

impl PropertyReport {
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(PropertyEntry::holds)
    }

    pub fn violations(&self) -> impl Iterator<Item = &PropertyEntry> {
        self.entries.iter().filter(|e| !e.holds())
    }

    pub fn get(&self, id: CheckId) -> Option<&PropertyEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    fn push(&mut self, id: CheckId, found: Option<(Option<usize>, Vec<usize>)>) {
        let outcome = match found {
            None => Outcome::Holds,
            Some((i, witness)) => Outcome::Violated { index: i.map(|i| i + 1), witness },
        };
        self.entries.push(PropertyEntry { id, outcome });
    }
}

/// One line per entry: `P7 OK`, `A2 SKIP`, `P14 FAIL witness=3,8` or
/// `P6 FAIL i=2 witness=4,9`.
impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            match &e.outcome {
                Outcome::Holds => writeln!(f, "{} OK", e.id)?,
                Outcome::Skipped => writeln!(f, "{} SKIP", e.id)?,
                Outcome::Violated { index, witness } => {
                    let w: Vec<String> = witness.iter().map(usize::to_string).collect();
                    match index {
                        Some(i) => writeln!(f, "{} FAIL i={} witness={}", e.id, i, w.join(","))?,
                        None => writeln!(f, "{} FAIL witness={}", e.id, w.join(","))?,
                    }
                }
            }
        }
        Ok(())
    }
}

type Found = Option<(Option<usize>, Vec<usize>)>;

/// A vertex pair `(a, b)` with `a ∈ xs`, `b ∈ ys`, `a != b` and adjacency equal to `adjacent`.
fn pair_with(g: &Graph, xs: VertexSet, ys: VertexSet, adjacent: bool) -> Option<Vec<usize>> {
    for a in xs {
        let hits = if adjacent { g.neighbors(a) & ys } else { ys - g.neighbors(a) - VertexSet::singleton(a) };
        if let Some(b) = hits.first() {
            return Some(vec![a, b]);
        }
    }
    None
}

/// `(u, u', v)` with `uu'` an edge inside `edges_in` and `v ∈ vs` mixed on it.
fn mixed_on_edge(g: &Graph, edges_in: VertexSet, vs: VertexSet) -> Option<Vec<usize>> {
    for u in edges_in {
        for w in g.neighbors(u) & edges_in {
            if let Some(v) = ((g.neighbors(u) - g.neighbors(w)) & vs).first() {
                return Some(vec![u, w, v]);
            }
        }
    }
    None
}

/// Nonadjacent pair inside `s`.
fn non_edge(g: &Graph, s: VertexSet) -> Option<Vec<usize>> {
    for u in s {
        if let Some(v) = (s - g.neighbors(u)).iter().find(|&v| v > u) {
            return Some(vec![u, v]);
        }
    }
    None
}

/// Induced `P3` (`u - v - w`, `uw` absent) inside `s`.
fn induced_p3(g: &Graph, s: VertexSet) -> Option<Vec<usize>> {
    for v in s {
        let nb = g.neighbors(v) & s;
        for u in nb {
            if let Some(w) = (nb - g.neighbors(u)).iter().find(|&w| w > u) {
                return Some(vec![u, v, w]);
            }
        }
    }
    None
}

/// For each component of `g[s]`: a mixed outside vertex with a neighbor and
/// a non-neighbor in the component, or an induced `P3` inside it.
fn components_homogeneous_p3_free(g: &Graph, s: VertexSet) -> Option<Vec<usize>> {
    for a in g.components_within(s) {
        if let Some(x) = mixed_vertex(g, a) {
            let inside = (g.neighbors(x) & a).first().unwrap();
            let outside = (a - g.neighbors(x)).first().unwrap();
            return Some(vec![x, inside, outside]);
        }
        if let Some(p) = induced_p3(g, a) {
            return Some(p);
        }
    }
    None
}

/// Runs `f` for each hole index and reports the first violation with its index.
fn per_index(mut f: impl FnMut(usize) -> Option<Vec<usize>>) -> Found {
    (0..5).find_map(|i| f(i).map(|w| (Some(i), w)))
}

fn whole(w: Option<Vec<usize>>) -> Found {
    w.map(|w| (None, w))
}

/// Checks the eighteen C5 partition properties by enumeration.
pub fn verify_c5_properties(g: &Graph, p: &PartitionC5) -> PropertyReport {
    let at = |i: usize, d: isize| (i as isize + d).rem_euclid(5) as usize;
    let s2 = p.s2_all();
    let s31 = p.s31_all();
    let s32 = p.s32_all();
    let s4 = p.s4_all();
    let mut r = PropertyReport::default();
    let mut put = |n: u8, found: Found| r.push(CheckId::Property(n), found);

    put(1, whole(pair_with(g, p.s0, s2 | s31, true)));
    put(2, per_index(|i| mixed_on_edge(g, p.s0, p.s32[i])));
    put(3, whole(pair_with(g, p.s0, s4 | p.s5, true)));
    put(4, whole(components_homogeneous_p3_free(g, p.s0)));
    put(5, per_index(|i| mixed_on_edge(g, p.s2[i], p.s31[i])));
    put(6, per_index(|i| pair_with(g, p.s2[i], p.s31[at(i, 1)] | p.s31[at(i, -1)], false)));
    put(7, per_index(|i| pair_with(g, p.s2[i], p.s31[at(i, 2)] | p.s31[at(i, -2)], true)));
    put(8, per_index(|i| pair_with(g, p.s2[i], p.s32[i], false)));
    put(9, per_index(|i| pair_with(g, p.s2[i], s32 - p.s32[i], true)));
    put(10, per_index(|i| pair_with(g, p.s2[i], p.s4[i], true)));
    put(11, per_index(|i| pair_with(g, p.s2[i], s4 - p.s4[i], false)));
    put(12, per_index(|i| pair_with(g, p.s2[i], p.s2[at(i, 1)] | p.s2[at(i, -1)], false)));
    put(13, per_index(|i| mixed_on_edge(g, p.s2[i], p.s2[at(i, 2)] | p.s2[at(i, -2)])));
    put(14, whole(match (s2.first(), p.s5.first()) {
        (Some(x), Some(y)) => Some(vec![x, y]),
        _ => None,
    }));
    put(15, per_index(|i| components_homogeneous_p3_free(g, p.s2[i])));
    put(16, whole(pair_with(g, p.s5, s32, false)));
    put(17, whole(undominated(g, p.s5, s31 | s4)));
    put(18, per_index(|i| non_edge(g, p.s31[i]).or_else(|| non_edge(g, p.s32[i])).or_else(|| non_edge(g, p.s4[i]))));
    r
}

/// `(u, u', v)` with `u, u' ∈ pairs` nonadjacent and `v ∈ targets` adjacent to neither.
fn undominated(g: &Graph, pairs: VertexSet, targets: VertexSet) -> Option<Vec<usize>> {
    for u in pairs {
        for w in (pairs - g.neighbors(u)).iter().filter(|&w| w > u) {
            if let Some(v) = (targets - g.neighbors(u) - g.neighbors(w)).first() {
                return Some(vec![u, w, v]);
            }
        }
    }
    None
}

/// Partition of `V(G) \ C` by exact neighborhood on an odd antihole `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionAntihole {
    /// `v1..v(2t+1)`, with `v(i) v(j)` adjacent iff `|i - j| > 1` cyclically.
    pub c: Vec<usize>,
    /// `X ⊆ C` to `S(X)`; only nonempty classes are stored.
    pub classes: BTreeMap<VertexSet, VertexSet>,
    /// `m` to `S_m`; only nonempty classes are stored.
    pub by_size: BTreeMap<usize, VertexSet>,
}

impl PartitionAntihole {
    /// `t` for an antihole on `2t + 1` vertices.
    pub fn t(&self) -> usize {
        (self.c.len() - 1) / 2
    }

    pub fn s_m(&self, m: usize) -> VertexSet {
        self.by_size.get(&m).copied().unwrap_or(VertexSet::EMPTY)
    }

    pub fn s_of(&self, x: VertexSet) -> VertexSet {
        self.classes.get(&x).copied().unwrap_or(VertexSet::EMPTY)
    }
}

pub fn partition_around_antihole(g: &Graph, c: &[usize]) -> Result<PartitionAntihole> {
    if c.len() < 5 || c.len().is_multiple_of(2) || !is_antihole_ordering(g, c) {
        return Err(Error::Input(format!("{c:?} is not an odd antihole ordering")));
    }
    let hole: VertexSet = c.iter().collect();
    let mut classes: BTreeMap<VertexSet, VertexSet> = BTreeMap::new();
    let mut by_size: BTreeMap<usize, VertexSet> = BTreeMap::new();
    for v in g.vertices() - hole {
        let x = g.neighbors(v) & hole;
        let e = classes.entry(x).or_insert(VertexSet::EMPTY);
        *e = e.with(v);
        let e = by_size.entry(x.len()).or_insert(VertexSet::EMPTY);
        *e = e.with(v);
    }
    Ok(PartitionAntihole { c: c.to_vec(), classes, by_size })
}

/// Checks the antihole claims:
/// A1 `S_m` is empty for `1 <= m <= t`;
/// A2 `S_0` is empty (only when `connected`);
/// A3 `S(X)` is a clique whenever `t + 1 <= |X| <= 2t`;
/// A4 for nonadjacent `u, u' ∈ S_(2t+1)`, every vertex of `S_(t+1) ∪ .. ∪ S_(2t)` is adjacent to one of them.
pub fn verify_antihole_claims(g: &Graph, p: &PartitionAntihole, connected: bool) -> PropertyReport {
    let t = p.t();
    let mut r = PropertyReport::default();
    let low = (1..=t).fold(VertexSet::EMPTY, |a, m| a | p.s_m(m));
    r.push(CheckId::Claim(1), whole(low.first().map(|v| vec![v])));
    if connected {
        r.push(CheckId::Claim(2), whole(p.s_m(0).first().map(|v| vec![v])));
    } else {
        r.entries.push(PropertyEntry { id: CheckId::Claim(2), outcome: Outcome::Skipped });
    }
    let clique_fail = p
        .classes
        .iter()
        .filter(|(x, _)| (t + 1..=2 * t).contains(&x.len()))
        .find_map(|(_, &s)| non_edge(g, s));
    r.push(CheckId::Claim(3), whole(clique_fail));
    let middle = (t + 1..=2 * t).fold(VertexSet::EMPTY, |a, m| a | p.s_m(m));
    r.push(CheckId::Claim(4), whole(undominated(g, p.s_m(2 * t + 1), middle)));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::is_family_free;
    use crate::graph::{antihole, cycle, p5_dart};

    fn wheel() -> Graph {
        cycle(5).add_vertex(VertexSet::full(5)).unwrap()
    }

    const NATURAL: [usize; 5] = [0, 1, 2, 3, 4];

    #[test]
    fn bare_c5() {
        let p = partition_around_c5(&cycle(5), &NATURAL).unwrap();
        assert!(p.s0.is_empty() && p.s5.is_empty() && p.s2_all().is_empty());
        assert!(verify_c5_properties(&cycle(5), &p).all_hold());
    }

    #[test]
    fn wheel_hub_in_s5() {
        let g = wheel();
        let p = partition_around_c5(&g, &NATURAL).unwrap();
        assert_eq!(p.s5, VertexSet::singleton(5));
        let r = verify_c5_properties(&g, &p);
        assert_eq!(r.entries.len(), 18);
        assert!(r.all_hold());
    }

    #[test]
    fn s2_index() {
        // Adjacent to v5 and v2 (positions 4 and 1): class S2 at v1 (position 0).
        let g = cycle(5).add_vertex([4usize, 1].iter().collect()).unwrap();
        let p = partition_around_c5(&g, &NATURAL).unwrap();
        assert_eq!(p.s2[0], VertexSet::singleton(5));
    }

    #[test]
    fn other_classes() {
        let g = cycle(5)
            .add_vertex([4usize, 0, 1].iter().collect())
            .unwrap()
            .add_vertex([3usize, 0, 2].iter().collect())
            .unwrap();
        let p = partition_around_c5(&g, &NATURAL).unwrap();
        assert_eq!(p.s31[0], VertexSet::singleton(5));
        assert_eq!(p.s32[0], VertexSet::singleton(6));
    }

    #[test]
    fn broken_fixture_violates_14() {
        // x ∈ S2(1), y ∈ S5, x ~ y.
        let g = cycle(5)
            .add_vertex([4usize, 1].iter().collect())
            .unwrap()
            .add_vertex([0usize, 1, 2, 3, 4, 5].iter().collect())
            .unwrap();
        assert!(!is_family_free(&g, &p5_dart()));
        let p = partition_around_c5(&g, &NATURAL).unwrap();
        let r = verify_c5_properties(&g, &p);
        let e = r.get(CheckId::Property(14)).unwrap();
        assert_eq!(e.outcome, Outcome::Violated { index: None, witness: vec![5, 6] });
        assert!(r.to_string().contains("P14 FAIL witness=5,6\n"));
    }

    #[test]
    fn class_violation_on_one_neighbor() {
        let g = cycle(5).add_vertex(VertexSet::singleton(2)).unwrap();
        match partition_around_c5(&g, &NATURAL) {
            Err(Error::ClassViolation { vertex, neighborhood }) => {
                assert_eq!(vertex, 5);
                assert_eq!(neighborhood, vec![2]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(!is_family_free(&g, &p5_dart()));
    }

    #[test]
    fn not_a_hole() {
        assert!(matches!(partition_around_c5(&cycle(5), &[0, 2, 1, 3, 4]), Err(Error::Input(_))));
    }

    #[test]
    fn report_format() {
        let mut r = PropertyReport::default();
        r.push(CheckId::Property(6), Some((Some(1), vec![4, 9])));
        r.push(CheckId::Property(7), None);
        r.entries.push(PropertyEntry { id: CheckId::Claim(2), outcome: Outcome::Skipped });
        assert_eq!(r.to_string(), "P6 FAIL i=2 witness=4,9\nP7 OK\nA2 SKIP\n");
    }

    #[test]
    fn antihole_seven() {
        let g = antihole(7);
        let c: Vec<usize> = (0..7).collect();
        let p = partition_around_antihole(&g, &c).unwrap();
        assert!(p.classes.is_empty());
        assert!(verify_antihole_claims(&g, &p, true).all_hold());
    }

    #[test]
    fn antihole_join_hub() {
        let g = antihole(7).add_vertex(VertexSet::full(7)).unwrap();
        let c: Vec<usize> = (0..7).collect();
        let p = partition_around_antihole(&g, &c).unwrap();
        assert_eq!(p.s_m(7), VertexSet::singleton(7));
        assert_eq!(p.s_of(VertexSet::full(7)), VertexSet::singleton(7));
    }

    #[test]
    fn antihole_plus_isolated() {
        let g = antihole(7).add_vertex(VertexSet::EMPTY).unwrap();
        let c: Vec<usize> = (0..7).collect();
        let p = partition_around_antihole(&g, &c).unwrap();
        let r = verify_antihole_claims(&g, &p, false);
        assert!(r.all_hold());
        assert_eq!(r.get(CheckId::Claim(2)).unwrap().outcome, Outcome::Skipped);
        let r = verify_antihole_claims(&g, &p, true);
        assert!(!r.all_hold());
    }

    #[test]
    fn antihole_nine_with_s6_vertex() {
        // Positions {0, 1, 2, 3, 5, 7}; found by scanning all 6-subsets for (P5, dart)-freeness.
        let g = antihole(9).add_vertex([0usize, 1, 2, 3, 5, 7].iter().collect()).unwrap();
        assert!(is_family_free(&g, &p5_dart()));
        let c: Vec<usize> = (0..9).collect();
        let p = partition_around_antihole(&g, &c).unwrap();
        assert_eq!(p.s_m(6), VertexSet::singleton(9));
        assert!(verify_antihole_claims(&g, &p, true).all_hold());
    }

    #[test]
    fn antihole_ordering_rejected() {
        assert!(partition_around_antihole(&cycle(7), &(0..7).collect::<Vec<_>>()).is_err());
    }
}
