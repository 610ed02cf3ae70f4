//! Vertex-criticality, family-relative criticality and the structural
//! obstructions that critical graphs cannot contain.

use std::collections::HashSet;

use crate::coloring::{chromatic_number, is_k_colorable};
use crate::detect::{is_family_free, is_homogeneous, Homogeneity};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Why a graph failed a criticality test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CriticalityWitness {
    /// `χ(g)` differs from the target.
    ChiMismatch { chi: usize },
    /// Deleting this vertex leaves the chromatic number at the target.
    Vertex(usize),
    /// Deleting these edges leaves a family-free spanning subgraph that is
    /// still not `(k-1)`-colorable.
    Edges(Vec<(usize, usize)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalityReport {
    pub chi: usize,
    pub vertex_critical: bool,
    /// `None` when only vertex-criticality was evaluated.
    pub family_critical: Option<bool>,
    pub witness: Option<CriticalityWitness>,
}

impl CriticalityReport {
    pub fn holds(&self) -> bool {
        self.vertex_critical && self.family_critical.unwrap_or(true)
    }
}

/// `χ(g) = k` and `χ(g - v) < k` for every vertex `v`.
pub fn is_k_vertex_critical(g: &Graph, k: usize) -> CriticalityReport {
    let chi = chromatic_number(g);
    if chi != k {
        return CriticalityReport {
            chi,
            vertex_critical: false,
            family_critical: None,
            witness: Some(CriticalityWitness::ChiMismatch { chi }),
        };
    }
    let witness = first_noncritical_vertex(g, k).map(CriticalityWitness::Vertex);
    CriticalityReport { chi, vertex_critical: witness.is_none(), family_critical: None, witness }
}

/// Fast path for callers that already know `χ(g) >= k`: checks `χ(g) <= k`
/// and that every single-vertex deletion is `(k-1)`-colorable.
pub(crate) fn vertex_critical_given_lower_bound(g: &Graph, k: usize) -> bool {
    is_k_colorable(g, k).is_some() && first_noncritical_vertex(g, k).is_none()
}

fn first_noncritical_vertex(g: &Graph, k: usize) -> Option<usize> {
    (0..g.order()).find(|&v| is_k_colorable(&g.remove_vertex(v), k.saturating_sub(1)).is_none())
}

/// `g` is `k`-chromatic and no proper subgraph of `g` (vertex or edge
/// deletions) is both family-free and not `(k-1)`-colorable.
///
/// Subgraphs missing a vertex are covered by vertex-criticality. Spanning
/// subgraphs are searched by deleting edges depth-first: a node that is
/// `(k-1)`-colorable closes its whole down-set, a family-free node that is
/// not is a counterexample, and a node containing a forbidden pattern is
/// descended through.
pub fn is_k_critical_family(g: &Graph, k: usize, family: &[Graph]) -> Result<CriticalityReport> {
    if !is_family_free(g, family) {
        return Err(Error::NotFamilyFree);
    }
    let mut report = is_k_vertex_critical(g, k);
    if !report.vertex_critical {
        report.family_critical = Some(false);
        return Ok(report);
    }
    let witness = spanning_counterexample(g, k, family);
    report.family_critical = Some(witness.is_none());
    report.witness = witness.map(CriticalityWitness::Edges);
    Ok(report)
}

fn spanning_counterexample(g: &Graph, k: usize, family: &[Graph]) -> Option<Vec<(usize, usize)>> {
    let mut visited: HashSet<Graph> = HashSet::new();
    let mut stack: Vec<Graph> = vec![g.clone()];
    visited.insert(g.clone());
    while let Some(h) = stack.pop() {
        for (u, v) in h.edges().collect::<Vec<_>>() {
            let sub = h.remove_edges(&[(u, v)]);
            if visited.contains(&sub) {
                continue;
            }
            visited.insert(sub.clone());
            if is_k_colorable(&sub, k - 1).is_some() {
                continue;
            }
            if is_family_free(&sub, family) {
                let removed = g.edges().filter(|&(a, b)| !sub.has_edge(a, b)).collect();
                return Some(removed);
            }
            stack.push(sub);
        }
    }
    None
}

fn check_disjoint_nonempty(g: &Graph, x: VertexSet, y: VertexSet) -> Result<()> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::Input("obstruction sets must be nonempty".into()));
    }
    if x.intersects(y) {
        return Err(Error::Input("obstruction sets must be disjoint".into()));
    }
    if !(x | y).is_subset(g.vertices()) {
        return Err(Error::Input("obstruction sets exceed the vertex range".into()));
    }
    Ok(())
}

/// True iff `x` and `y` form an obstruction: anticomplete to each other,
/// `χ(g[x]) <= χ(g[y])`, and `y` complete to `N(x)`.
/// No vertex-critical graph admits such a pair.
pub fn check_xy_obstruction(g: &Graph, x: VertexSet, y: VertexSet) -> Result<bool> {
    check_disjoint_nonempty(g, x, y)?;
    Ok(g.is_anticomplete_to(x, y)
        && g.is_complete_to(y, g.neighborhood_of_set(x))
        && chromatic_number(&g.induced_subgraph(x)) <= chromatic_number(&g.induced_subgraph(y)))
}

/// Vertices outside `x ∪ N(x)` that are complete to `N(x)`; any obstruction
/// partner of `x` lies inside this set.
pub fn obstruction_candidates(g: &Graph, x: VertexSet) -> VertexSet {
    let nx = g.neighborhood_of_set(x);
    g.common_neighbors(nx) - x - nx
}

/// Searches obstruction pairs with `|x|, |y| <= size_cap`, smallest sizes
/// first, then by mask.
pub fn scan_xy_obstruction(g: &Graph, size_cap: usize) -> Option<(VertexSet, VertexSet)> {
    let n = g.order();
    let cap = size_cap.min(n);
    for xs in 1..=cap {
        let mut found = None;
        subsets_of(g.vertices(), xs, &mut |x| {
            if found.is_some() {
                return;
            }
            let zone = obstruction_candidates(g, x);
            if zone.is_empty() {
                return;
            }
            let chi_x = chromatic_number(&g.induced_subgraph(x));
            for ys in 1..=cap.min(zone.len()) {
                subsets_of(zone, ys, &mut |y| {
                    if found.is_none() && chromatic_number(&g.induced_subgraph(y)) >= chi_x {
                        found = Some((x, y));
                    }
                });
                if found.is_some() {
                    return;
                }
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Calls `f` with every `k`-subset of `within`, in increasing mask order.
fn subsets_of(within: VertexSet, k: usize, f: &mut impl FnMut(VertexSet)) {
    fn rec(members: &[usize], start: usize, k: usize, acc: VertexSet, f: &mut impl FnMut(VertexSet)) {
        if k == 0 {
            f(acc);
            return;
        }
        for i in start..members.len() {
            if members.len() - i < k {
                break;
            }
            rec(members, i + 1, k - 1, acc.with(members[i]), f);
        }
    }
    let members = within.to_vec();
    rec(&members, 0, k, VertexSet::EMPTY, f);
}

/// A component of a homogeneous set and whether it is vertex-critical for its own chromatic number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentVerdict {
    pub component: VertexSet,
    pub chi: usize,
    /// `Some(is m-vertex-critical)` when `chi < k`, otherwise `None`.
    pub critical: Option<bool>,
}

/// For each component `A` of `g[s]` with `χ(A) = m < k`, reports whether `A`
/// is `m`-vertex-critical. In a `k`-vertex-critical graph every such verdict is true.
pub fn check_homogeneous_components(g: &Graph, k: usize, s: VertexSet) -> Result<Vec<ComponentVerdict>> {
    if let Homogeneity::Mixed(w) = is_homogeneous(g, s)? {
        return Err(Error::NotHomogeneous { witness: w });
    }
    Ok(g.components_within(s)
        .into_iter()
        .map(|component| {
            let a = g.induced_subgraph(component);
            let chi = chromatic_number(&a);
            let critical = (chi < k).then(|| is_k_vertex_critical(&a, chi).vertex_critical);
            ComponentVerdict { component, chi, critical }
        })
        .collect())
}
