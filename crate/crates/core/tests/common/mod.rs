//! Brute-force oracles and shared corpora for the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;
use std::sync::OnceLock;

use critgen::enumerate::{generate_all, GenConfig, GenResult};
use critgen::{canonical_form, Graph, VertexSet};
use rand::Rng;

/// Chromatic number by enumerating set partitions (restricted growth strings):
/// the fewest blocks over partitions into stable sets.
pub fn brute_chromatic(g: &Graph) -> usize {
    let n = g.order();
    if n == 0 {
        return 0;
    }
    let mut best = n;
    let mut blocks: Vec<VertexSet> = Vec::new();
    fn rec(g: &Graph, v: usize, blocks: &mut Vec<VertexSet>, best: &mut usize) {
        if blocks.len() >= *best {
            return;
        }
        if v == g.order() {
            *best = blocks.len();
            return;
        }
        for i in 0..blocks.len() {
            if !blocks[i].intersects(g.neighbors(v)) {
                blocks[i] = blocks[i].with(v);
                rec(g, v + 1, blocks, best);
                blocks[i] = blocks[i].without(v);
            }
        }
        blocks.push(VertexSet::singleton(v));
        rec(g, v + 1, blocks, best);
        blocks.pop();
    }
    rec(g, 0, &mut blocks, &mut best);
    best
}

/// Every proper coloring with at most `k` colors, checked by plain enumeration of all `k^n` labelings.
pub fn brute_k_colorable(g: &Graph, k: usize) -> bool {
    let n = g.order();
    if n == 0 {
        return true;
    }
    if k == 0 {
        return false;
    }
    let total = (k as u64).pow(n as u32);
    let edges: Vec<(usize, usize)> = g.edges().collect();
    (0..total).any(|mut code| {
        let mut colors = vec![0; n];
        for c in colors.iter_mut() {
            *c = (code % k as u64) as usize;
            code /= k as u64;
        }
        edges.iter().all(|&(u, v)| colors[u] != colors[v])
    })
}

/// Whether some injective map from `pattern` into `host` preserves adjacency and non-adjacency.
pub fn brute_has_induced(host: &Graph, pattern: &Graph) -> bool {
    let p = pattern.order();
    let mut map = Vec::with_capacity(p);
    fn rec(host: &Graph, pattern: &Graph, map: &mut Vec<usize>) -> bool {
        let i = map.len();
        if i == pattern.order() {
            return true;
        }
        for h in 0..host.order() {
            if map.contains(&h) {
                continue;
            }
            if (0..i).all(|j| pattern.has_edge(i, j) == host.has_edge(h, map[j])) {
                map.push(h);
                if rec(host, pattern, map) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    rec(host, pattern, &mut map)
}

/// `χ(g) = k` and every single-vertex deletion has `χ < k`, all by brute force.
pub fn brute_vertex_critical(g: &Graph, k: usize) -> bool {
    brute_chromatic(g) == k && (0..g.order()).all(|v| brute_chromatic(&g.remove_vertex(v)) < k)
}

pub fn brute_family_free(g: &Graph, family: &[Graph]) -> bool {
    family.iter().all(|h| !brute_has_induced(g, h))
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 0..n {
        for u in 0..v {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, &edges).unwrap()
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    perm
}

/// Isomorphism classes of induced subgraphs with at most `max_n` vertices,
/// found by deleting vertices one at a time, largest order first, so each
/// class is expanded once.
pub fn induced_subgraph_classes(graphs: &[Graph], max_n: usize) -> Vec<Graph> {
    let top = graphs.iter().map(Graph::order).max().unwrap_or(0);
    let mut buckets: Vec<HashSet<critgen::CanonicalForm>> = vec![HashSet::new(); top + 1];
    for g in graphs {
        buckets[g.order()].insert(canonical_form(g));
    }
    let mut out = Vec::new();
    for n in (1..=top).rev() {
        let level = std::mem::take(&mut buckets[n]);
        for f in &level {
            let g = f.to_graph();
            for v in 0..n {
                buckets[n - 1].insert(canonical_form(&g.remove_vertex(v)));
            }
        }
        if n <= max_n {
            out.extend(level);
        }
    }
    out.sort();
    out.iter().map(|f| f.to_graph()).collect()
}

/// Full generation run for `k`, computed once per test binary.
pub fn corpus(k: usize) -> &'static GenResult {
    static K4: OnceLock<GenResult> = OnceLock::new();
    static K5: OnceLock<GenResult> = OnceLock::new();
    static K6: OnceLock<GenResult> = OnceLock::new();
    let cell = match k {
        4 => &K4,
        5 => &K5,
        6 => &K6,
        _ => panic!("no cached corpus for k = {k}"),
    };
    cell.get_or_init(|| generate_all(&GenConfig::new(k).unwrap()).unwrap())
}
