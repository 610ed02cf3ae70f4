//! Exhaustive generation of k-vertex-critical graphs in a hereditary class.
//!
//! [`Generator::extend`] grows a graph one vertex at a time. A graph that is
//! not `(k-1)`-colorable is never extended: it is emitted if it is
//! k-vertex-critical and dropped otherwise. Every other graph is extended by
//! a new vertex in every way that keeps it family-free and satisfies the
//! pruning constraint chosen for it. Graphs are identified up to isomorphism
//! through their canonical form; each isomorphism class is entered once and
//! is always extended from its canonical labeling, so the explored set does
//! not depend on visiting order or on the number of worker threads.
//!
//! Any induced subgraph of a target can be grown toward the target by adding
//! its remaining vertices in any order, so a pruning constraint is sound as
//! long as every target containing the current graph `I` has *some* vertex
//! outside `I` that satisfies it. The constraints used here:
//!
//! - **connectivity**: k-vertex-critical graphs are connected, so some outside
//!   vertex has a neighbor in `I`.
//! - **obstructions**: if nonempty disjoint `X, Y` in `I` are anticomplete,
//!   `χ(I[X]) <= χ(I[Y])` and `Y` is complete to `N_I(X)`, then in a
//!   k-vertex-critical target some outside vertex is adjacent to `X` and
//!   misses a vertex of `Y` (otherwise `X, Y` would obstruct the target
//!   itself). With `|X| = |Y| = 1` this is the comparable-vertex rule.
//! - **minimum degree**: every vertex of a k-vertex-critical graph has degree
//!   at least `k - 1`, so a vertex of smaller degree in `I` gains a neighbor.
//!
//! Among the constraints that apply, the one admitting the fewest neighbor
//! sets is used.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use dashmap::DashSet;
use rayon::prelude::*;

use crate::canon::{canonical_labeling, CanonicalForm};
use crate::coloring::{is_k_colorable, Coloring};
use crate::criticality::{is_k_vertex_critical, vertex_critical_given_lower_bound};
use crate::detect::{is_family_free, ExtensionFilter, Window};
use crate::error::{Error, Result};
use crate::graph::{antihole, complete, cycle, p5_dart, Graph, VertexSet, MAX_VERTICES};

/// Which optional pruning rules are active. The family check and the
/// colorability gate are always on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PruningRules {
    pub connected: bool,
    pub obstructions: bool,
    /// Largest clique `X` tried for obstructions (1 = comparable vertices only).
    pub obstruction_size: usize,
    pub min_degree: bool,
}

impl Default for PruningRules {
    fn default() -> Self {
        PruningRules { connected: true, obstructions: true, obstruction_size: usize::MAX, min_degree: true }
    }
}

impl PruningRules {
    /// Only the two mandatory rules. Generation from a seed then terminates
    /// only when the search space is finite without further pruning.
    pub fn minimal() -> Self {
        PruningRules { connected: false, obstructions: false, obstruction_size: 0, min_degree: false }
    }
}

#[derive(Clone, Debug)]
pub struct GenConfig {
    pub k: usize,
    pub family: Vec<Graph>,
    /// Graphs at this order are not extended further; hitting it marks the run truncated.
    pub max_order: usize,
    pub seeds: Vec<Graph>,
    pub rules: PruningRules,
    /// Approximate byte budget for the visited cache; `None` is unbounded.
    pub cache_budget: Option<usize>,
    /// Run sibling branches on the current rayon pool.
    pub parallel: bool,
}

impl GenConfig {
    /// `{P5, dart}`, no order cap, default seeds for `k`.
    pub fn new(k: usize) -> Result<GenConfig> {
        Ok(GenConfig {
            k,
            family: p5_dart(),
            max_order: MAX_VERTICES,
            seeds: default_seeds(k)?,
            rules: PruningRules::default(),
            cache_budget: None,
            parallel: false,
        })
    }

    pub fn with_seeds(k: usize, seeds: Vec<Graph>) -> GenConfig {
        GenConfig {
            k,
            family: p5_dart(),
            max_order: MAX_VERTICES,
            seeds,
            rules: PruningRules::default(),
            cache_budget: None,
            parallel: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::Config("k must be at least 1".into()));
        }
        if self.max_order == 0 || self.max_order > MAX_VERTICES {
            return Err(Error::Config(format!("max order must be in 1..=64, got {}", self.max_order)));
        }
        if let Some(i) = self.seeds.iter().position(|s| !is_family_free(s, &self.family)) {
            return Err(Error::Config(format!("seed {i} ({}) is not family-free", self.seeds[i])));
        }
        if self.family.iter().any(|h| h.order() == 0) {
            return Err(Error::Config("forbidden graphs must be nonempty".into()));
        }
        Ok(())
    }
}

/// `C5` and the antiholes `C̄_{2t+1}` for `3 <= t <= k-2`.
///
/// Every k-vertex-critical (P5, dart)-free graph other than `K_k` and
/// `C̄_{2k-1}` contains one of these as an induced subgraph.
pub fn default_seeds(k: usize) -> Result<Vec<Graph>> {
    if k < 4 {
        return Err(Error::Config(format!("default seeds need k >= 4, got {k}")));
    }
    let mut seeds = vec![cycle(5)];
    seeds.extend((3..=k - 2).map(|t| antihole(2 * t + 1)));
    Ok(seeds)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GenStats {
    /// Distinct isomorphism classes entered.
    pub nodes: u64,
    /// Arrivals at a class that had already been entered.
    pub cache_hits: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenResult {
    pub k: usize,
    pub graphs: BTreeSet<CanonicalForm>,
    pub counts_by_order: BTreeMap<usize, usize>,
    pub truncated: bool,
    pub stats: GenStats,
}

impl GenResult {
    pub fn total(&self) -> usize {
        self.graphs.len()
    }

    pub fn max_order(&self) -> Option<usize> {
        self.counts_by_order.keys().next_back().copied()
    }

    pub fn graphs(&self) -> impl Iterator<Item = Graph> + '_ {
        self.graphs.iter().map(CanonicalForm::to_graph)
    }
}

/// Extension constraint on the neighbor set `S` of the new vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    Any,
    /// `S ∩ hit` nonempty and, if `miss` is nonempty, `miss ⊄ S`.
    HitMiss { hit: VertexSet, miss: VertexSet },
}

impl Constraint {
    pub fn permits(&self, s: VertexSet) -> bool {
        match *self {
            Constraint::Any => true,
            Constraint::HitMiss { hit, miss } => s.intersects(hit) && (miss.is_empty() || !miss.is_subset(s)),
        }
    }

    /// Number of subsets of an `n`-set that satisfy the constraint.
    fn admitted(&self, n: usize) -> u128 {
        match *self {
            Constraint::Any => 1u128 << n,
            Constraint::HitMiss { hit, miss } => {
                let free = n - (hit | miss).len();
                let h = (1u128 << hit.len()) - 1;
                let m = if miss.is_empty() { 1 } else { (1u128 << miss.len()) - 1 };
                (1u128 << free) * h * m
            }
        }
    }
}

/// Picks the pruning constraint for extending `g`.
pub fn choose_constraint(g: &Graph, k: usize, rules: &PruningRules) -> Constraint {
    let n = g.order();
    let mut best = Constraint::Any;
    let mut best_count = best.admitted(n);
    let mut offer = |c: Constraint| {
        let count = c.admitted(n);
        if count < best_count {
            best = c;
            best_count = count;
        }
    };
    if rules.connected {
        offer(Constraint::HitMiss { hit: g.vertices(), miss: VertexSet::EMPTY });
    }
    if rules.min_degree {
        if let Some(u) = (0..n).find(|&u| g.degree(u) + 1 < k) {
            offer(Constraint::HitMiss { hit: VertexSet::singleton(u), miss: VertexSet::EMPTY });
        }
    }
    if rules.obstructions {
        for (x, y) in obstruction_pairs(g, rules.obstruction_size) {
            offer(Constraint::HitMiss { hit: x, miss: y });
        }
    }
    best
}

/// Obstruction pairs `(X, Y)` with `X` a clique of at most `max_size`
/// vertices and `Y` the first clique of the same size in the candidate zone
/// of `X`. Cliques are the cheapest partners: `χ(X) = |X|` and any clique of
/// that size qualifies as `Y`.
fn obstruction_pairs(g: &Graph, max_size: usize) -> Vec<(VertexSet, VertexSet)> {
    let mut out = Vec::new();
    for_each_clique(g, g.vertices(), max_size, &mut |x| {
        let zone = crate::criticality::obstruction_candidates(g, x);
        if let Some(y) = first_clique(g, zone, x.len()) {
            out.push((x, y));
        }
    });
    out
}

/// Calls `f` on every nonempty clique inside `within` with at most `max_size` vertices.
fn for_each_clique(g: &Graph, within: VertexSet, max_size: usize, f: &mut impl FnMut(VertexSet)) {
    fn rec(g: &Graph, cur: VertexSet, cand: VertexSet, left: usize, f: &mut impl FnMut(VertexSet)) {
        for v in cand {
            let next = cur.with(v);
            f(next);
            if left > 1 {
                let higher = VertexSet::from_mask(cand.mask() & !crate::graph::low_mask(v + 1));
                rec(g, next, higher & g.neighbors(v), left - 1, f);
            }
        }
    }
    if max_size > 0 {
        rec(g, VertexSet::EMPTY, within, max_size, f);
    }
}

/// The lexicographically first clique of exactly `size` vertices inside `within`.
fn first_clique(g: &Graph, within: VertexSet, size: usize) -> Option<VertexSet> {
    fn rec(g: &Graph, cur: VertexSet, cand: VertexSet, left: usize) -> Option<VertexSet> {
        if left == 0 {
            return Some(cur);
        }
        let mut cand = cand;
        while let Some(v) = cand.first() {
            if cand.len() < left {
                return None;
            }
            cand = cand.without(v);
            if let Some(c) = rec(g, cur.with(v), cand & g.neighbors(v), left - 1) {
                return Some(c);
            }
        }
        None
    }
    rec(g, VertexSet::EMPTY, within, size)
}

/// Runs the extension search from the configured seeds.
pub struct Generator {
    k: usize,
    family: Vec<Graph>,
    max_order: usize,
    rules: PruningRules,
    parallel: bool,
    filter: ExtensionFilter,
    visited: DashSet<Box<[u8]>>,
    sink: DashSet<CanonicalForm>,
    truncated: AtomicBool,
    nodes: AtomicU64,
    hits: AtomicU64,
    budget: Option<usize>,
    used: AtomicUsize,
}

/// Per-key bookkeeping overhead charged against the cache budget.
const ENTRY_OVERHEAD: usize = 48;

impl Generator {
    pub fn new(cfg: &GenConfig) -> Result<Generator> {
        cfg.validate()?;
        Ok(Generator {
            k: cfg.k,
            family: cfg.family.clone(),
            max_order: cfg.max_order,
            rules: cfg.rules,
            parallel: cfg.parallel,
            filter: ExtensionFilter::new(&cfg.family),
            visited: DashSet::new(),
            sink: DashSet::new(),
            truncated: AtomicBool::new(false),
            nodes: AtomicU64::new(0),
            hits: AtomicU64::new(0),
            budget: cfg.cache_budget,
            used: AtomicUsize::new(0),
        })
    }

    /// Emits every k-vertex-critical family-free graph containing `i` as an
    /// induced subgraph (up to the order cap). Does nothing if `i` is not family-free.
    pub fn extend(&self, i: &Graph) {
        if !is_family_free(i, &self.family) {
            return;
        }
        let coloring = is_k_colorable(i, self.k.saturating_sub(1));
        self.enter(i, coloring);
    }

    /// Adds an already-verified graph to the output directly.
    pub fn inject(&self, g: &Graph) -> bool {
        if g.order() > self.max_order {
            self.truncated.store(true, Ordering::Relaxed);
            return false;
        }
        if !is_family_free(g, &self.family) || !is_k_vertex_critical(g, self.k).vertex_critical {
            return false;
        }
        let lab = canonical_labeling(g);
        self.sink.insert(lab.form());
        true
    }

    pub fn finish(self) -> GenResult {
        let graphs: BTreeSet<CanonicalForm> = self.sink.into_iter().collect();
        let mut counts_by_order = BTreeMap::new();
        for g in &graphs {
            *counts_by_order.entry(g.to_graph().order()).or_insert(0) += 1;
        }
        GenResult {
            k: self.k,
            graphs,
            counts_by_order,
            truncated: self.truncated.load(Ordering::Relaxed),
            stats: GenStats { nodes: self.nodes.load(Ordering::Relaxed), cache_hits: self.hits.load(Ordering::Relaxed) },
        }
    }

    /// `coloring` is a `(k-1)`-coloring of `g` if one exists.
    fn enter(&self, g: &Graph, coloring: Option<Coloring>) {
        if self.truncated.load(Ordering::Relaxed) && self.budget_exhausted() {
            return;
        }
        let lab = canonical_labeling(g);
        let key = crate::graph6::encode_bytes(&lab.graph);
        let cost = key.len() + ENTRY_OVERHEAD;
        if !self.visited.insert(key.clone().into_boxed_slice()) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return;
        }
        self.nodes.fetch_add(1, Ordering::Relaxed);
        if let Some(limit) = self.budget {
            if self.used.fetch_add(cost, Ordering::Relaxed) + cost > limit {
                self.truncated.store(true, Ordering::Relaxed);
                return;
            }
        }
        let j = lab.graph;
        debug_assert!(is_family_free(&j, &self.family), "entered a graph with a forbidden pattern");

        let Some(coloring) = coloring else {
            if vertex_critical_given_lower_bound(&j, self.k) {
                self.sink.insert(CanonicalForm::from_key_unchecked(key));
            }
            return;
        };
        if j.order() >= self.max_order {
            self.truncated.store(true, Ordering::Relaxed);
            return;
        }
        let colors: Vec<usize> = lab.order.iter().map(|&v| coloring.colors[v]).collect();
        let constraint = choose_constraint(&j, self.k, &self.rules);
        let children = self.neighbor_sets(&j, &constraint);
        let visit = |s: &VertexSet| {
            let child = j.add_vertex(*s).expect("order below capacity");
            let child_coloring = self.extend_coloring(&child, &colors, *s);
            self.enter(&child, child_coloring);
        };
        if self.parallel {
            children.par_iter().for_each(visit);
        } else {
            children.iter().for_each(visit);
        }
    }

    fn budget_exhausted(&self) -> bool {
        self.budget.is_some_and(|limit| self.used.load(Ordering::Relaxed) > limit)
    }

    fn extend_coloring(&self, child: &Graph, parent_colors: &[usize], s: VertexSet) -> Option<Coloring> {
        let colors_k = self.k.saturating_sub(1);
        let used = s.iter().fold(0u64, |acc, v| acc | (1u64 << parent_colors[v]));
        if let Some(c) = (0..colors_k).find(|&c| (used >> c) & 1 == 0) {
            let mut colors = parent_colors.to_vec();
            colors.push(c);
            return Some(Coloring { colors });
        }
        is_k_colorable(child, colors_k)
    }

    /// Every neighbor set permitted for a new vertex, in ascending
    /// `(popcount, mask)` order.
    pub fn neighbor_sets(&self, g: &Graph, constraint: &Constraint) -> Vec<VertexSet> {
        let n = g.order();
        let windows = self.filter.windows(g);
        let mut by_last: Vec<Vec<Window>> = vec![Vec::new(); n];
        for w in windows {
            by_last[w.vertices.last().unwrap()].push(w);
        }
        let (hit_last, miss_last) = match *constraint {
            Constraint::Any => (None, None),
            Constraint::HitMiss { hit, miss } => (hit.last(), miss.last()),
        };
        let mut out = Vec::new();
        let mut dfs = SetSearch { by_last: &by_last, constraint, hit_last, miss_last, n, out: &mut out };
        dfs.run(0, VertexSet::EMPTY);
        if self.filter.has_fallback() {
            out.retain(|&s| {
                let child = g.add_vertex(s).expect("order below capacity");
                !self.filter.fallback_fires(&child, n)
            });
        }
        out.sort_unstable_by_key(|s| (s.len(), s.mask()));
        out
    }
}

struct SetSearch<'a> {
    by_last: &'a [Vec<Window>],
    constraint: &'a Constraint,
    hit_last: Option<usize>,
    miss_last: Option<usize>,
    n: usize,
    out: &'a mut Vec<VertexSet>,
}

impl SetSearch<'_> {
    fn run(&mut self, v: usize, s: VertexSet) {
        if v == self.n {
            if self.constraint.permits(s) {
                self.out.push(s);
            }
            return;
        }
        for include in [false, true] {
            let s = if include { s.with(v) } else { s };
            if self.by_last[v].iter().any(|w| w.fires(s)) {
                continue;
            }
            if let Constraint::HitMiss { hit, miss } = *self.constraint {
                if self.hit_last == Some(v) && !s.intersects(hit) {
                    continue;
                }
                if self.miss_last == Some(v) && miss.is_subset(s) {
                    continue;
                }
            }
            self.run(v + 1, s);
        }
    }
}

/// Runs one extension search from `i` alone.
pub fn extend(cfg: &GenConfig, i: &Graph) -> Result<GenResult> {
    let gen = Generator::new(cfg)?;
    gen.extend(i);
    Ok(gen.finish())
}

/// Extends every configured seed into one shared cache and output.
pub fn generate_from_seeds(cfg: &GenConfig) -> Result<GenResult> {
    let gen = Generator::new(cfg)?;
    for seed in &cfg.seeds {
        gen.extend(seed);
    }
    Ok(gen.finish())
}

/// Extends every seed into one shared cache and output, then adds `K_k` and
/// `C̄_{2k-1}` directly.
pub fn generate_all(cfg: &GenConfig) -> Result<GenResult> {
    let gen = Generator::new(cfg)?;
    for seed in &cfg.seeds {
        gen.extend(seed);
    }
    gen.inject(&complete(cfg.k));
    if cfg.k >= 3 {
        gen.inject(&antihole(2 * cfg.k - 1));
    }
    Ok(gen.finish())
}
