//! Exact k-colorability, chromatic number and maximum cliques.
//!
//! The colorability search is DSATUR-ordered backtracking: a maximum clique is
//! colored first (it also bounds `k` from below), then the uncolored vertex
//! with the most distinct neighbor colors is branched on. A vertex may only
//! open color class `j` if class `j - 1` is already in use.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// A vertex coloring; `colors[v]` is the class index of vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    pub colors: Vec<usize>,
}

impl Coloring {
    /// Number of classes used (largest index plus one).
    pub fn num_classes(&self) -> usize {
        self.colors.iter().map(|&c| c + 1).max().unwrap_or(0)
    }

    pub fn classes(&self) -> Vec<VertexSet> {
        let mut out = vec![VertexSet::EMPTY; self.num_classes()];
        for (v, &c) in self.colors.iter().enumerate() {
            out[c] = out[c].with(v);
        }
        out
    }
}

/// True iff `c` is a proper coloring of `g` using only classes `0..k`.
pub fn verify_coloring(g: &Graph, c: &Coloring, k: usize) -> Result<bool> {
    if c.colors.len() != g.order() {
        return Err(Error::Input(format!(
            "coloring covers {} vertices, graph has {}",
            c.colors.len(),
            g.order()
        )));
    }
    Ok(c.colors.iter().all(|&x| x < k) && g.edges().all(|(u, v)| c.colors[u] != c.colors[v]))
}

/// A maximum clique of `g`.
pub fn max_clique(g: &Graph) -> VertexSet {
    let mut best = VertexSet::EMPTY;
    expand_clique(g, VertexSet::EMPTY, g.vertices(), &mut best);
    best
}

pub fn clique_number(g: &Graph) -> usize {
    max_clique(g).len()
}

fn expand_clique(g: &Graph, current: VertexSet, mut cand: VertexSet, best: &mut VertexSet) {
    if cand.is_empty() {
        if current.len() > best.len() {
            *best = current;
        }
        return;
    }
    if current.len() + cand.len() <= best.len() {
        return;
    }
    // Greedy coloring of the candidates gives a tighter bound.
    if current.len() + greedy_color_bound(g, cand) <= best.len() {
        return;
    }
    while let Some(v) = cand.first() {
        if current.len() + cand.len() <= best.len() {
            return;
        }
        expand_clique(g, current.with(v), cand & g.neighbors(v), best);
        cand = cand.without(v);
    }
}

fn greedy_color_bound(g: &Graph, set: VertexSet) -> usize {
    let mut uncolored = set;
    let mut colors = 0;
    while !uncolored.is_empty() {
        colors += 1;
        let mut avail = uncolored;
        while let Some(v) = avail.first() {
            uncolored = uncolored.without(v);
            avail = avail.without(v) - g.neighbors(v);
        }
    }
    colors
}

/// A coloring with at most `k` classes, or `None` if `χ(g) > k`.
pub fn is_k_colorable(g: &Graph, k: usize) -> Option<Coloring> {
    let n = g.order();
    if n == 0 {
        return Some(Coloring { colors: Vec::new() });
    }
    if k == 0 {
        return None;
    }
    let clique = max_clique(g);
    if clique.len() > k {
        return None;
    }
    color_with_clique(g, k, clique)
}

fn color_with_clique(g: &Graph, k: usize, clique: VertexSet) -> Option<Coloring> {
    let n = g.order();
    let mut s = Dsatur { g, k, classes: vec![VertexSet::EMPTY; k], color: vec![usize::MAX; n] };
    for (c, v) in clique.iter().enumerate() {
        s.classes[c] = s.classes[c].with(v);
        s.color[v] = c;
    }
    let used = clique.len();
    s.solve(g.vertices() - clique, used).then_some(Coloring { colors: s.color })
}

struct Dsatur<'a> {
    g: &'a Graph,
    k: usize,
    classes: Vec<VertexSet>,
    color: Vec<usize>,
}

impl Dsatur<'_> {
    fn forbidden(&self, v: usize, used: usize) -> u64 {
        let nb = self.g.neighbors(v);
        (0..used).fold(0u64, |acc, c| acc | ((self.classes[c].intersects(nb) as u64) << c))
    }

    fn solve(&mut self, uncolored: VertexSet, used: usize) -> bool {
        if uncolored.is_empty() {
            return true;
        }
        // Most saturated vertex; ties broken by uncolored degree, then index.
        let mut pick = usize::MAX;
        let mut pick_forb = 0u64;
        let mut key = (0u32, 0usize);
        for v in uncolored {
            let forb = self.forbidden(v, used);
            let sat = forb.count_ones();
            if sat as usize >= self.k {
                return false;
            }
            let deg = (self.g.neighbors(v) & uncolored).len();
            if pick == usize::MAX || (sat, deg) > key {
                pick = v;
                pick_forb = forb;
                key = (sat, deg);
            }
        }
        let v = pick;
        let rest = uncolored.without(v);
        let limit = (used + 1).min(self.k);
        for c in 0..limit {
            if (pick_forb >> c) & 1 == 1 {
                continue;
            }
            self.classes[c] = self.classes[c].with(v);
            self.color[v] = c;
            if self.solve(rest, used.max(c + 1)) {
                return true;
            }
            self.classes[c] = self.classes[c].without(v);
        }
        self.color[v] = usize::MAX;
        false
    }
}

/// `χ(g)`; zero for the empty graph.
pub fn chromatic_number(g: &Graph) -> usize {
    optimal_coloring(g).num_classes()
}

/// A coloring with exactly `χ(g)` classes.
pub fn optimal_coloring(g: &Graph) -> Coloring {
    if g.order() == 0 {
        return Coloring { colors: Vec::new() };
    }
    let clique = max_clique(g);
    (clique.len()..=g.order())
        .find_map(|k| color_with_clique(g, k, clique))
        .expect("every graph is n-colorable")
}
