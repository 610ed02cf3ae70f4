//! End-to-end acceptance checks. Runs every criterion, prints one PASS/FAIL
//! line each and exits non-zero if any failed.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use critgen::certify::{certify_k_colorability, verify_certificate, CriticalDatabase};
use critgen::coloring::{chromatic_number, is_k_colorable};
use critgen::criticality::{is_k_critical_family, is_k_vertex_critical};
use critgen::detect::{all_induced_antiholes, all_induced_c5, comparable_pair, find_induced, is_family_free};
use critgen::enumerate::{generate_all, GenConfig, GenResult};
use critgen::graph::{complete, cycle, dart, diamond, p5_dart, path};
use critgen::structure::{partition_around_antihole, partition_around_c5, verify_antihole_claims, verify_c5_properties};
use critgen::{canonical_form, graph6, Graph, VertexSet};

use common::{
    brute_chromatic, brute_has_induced, brute_k_colorable, brute_vertex_critical, corpus, induced_subgraph_classes,
    random_graph, random_permutation,
};

type Check = fn() -> Result<String, String>;

fn histogram(graphs: impl Iterator<Item = usize>) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for n in graphs {
        *h.entry(n).or_insert(0) += 1;
    }
    h
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn within(what: &str, elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed <= limit {
        Ok(())
    } else {
        Err(format!("{what} took {elapsed:.1?}, limit {limit:?}"))
    }
}

fn timed_corpus(k: usize) -> (&'static GenResult, Duration) {
    let t = Instant::now();
    let r = corpus(k);
    (r, t.elapsed())
}

fn k5_exhaustive() -> Result<String, String> {
    let (r, elapsed) = timed_corpus(5);
    expect_eq("total", r.total(), 184)?;
    expect_eq("orders", r.counts_by_order.clone(), BTreeMap::from([(5, 1), (7, 1), (8, 6), (9, 172), (10, 1), (13, 3)]))?;
    expect_eq("truncated", r.truncated, false)?;
    within("k=5 generation", elapsed, Duration::from_secs(300))?;
    Ok(format!("184 graphs, untruncated, {elapsed:.2?} single-threaded"))
}

fn k6_exhaustive() -> Result<String, String> {
    let (r, elapsed) = timed_corpus(6);
    expect_eq("total", r.total(), 18_029)?;
    expect_eq(
        "orders",
        r.counts_by_order.clone(),
        BTreeMap::from([(6, 1), (8, 1), (9, 6), (10, 171), (11, 17_834), (12, 2), (13, 1), (16, 13)]),
    )?;
    expect_eq("max order", r.max_order(), Some(16))?;
    expect_eq("truncated", r.truncated, false)?;
    within("k=6 generation", elapsed, Duration::from_secs(7200))?;
    Ok(format!("18029 graphs, max order 16, untruncated, {elapsed:.2?}"))
}

fn critical_filter() -> Result<String, String> {
    let family = p5_dart();
    let filter = |k: usize| -> BTreeMap<usize, usize> {
        let graphs: Vec<Graph> = corpus(k).graphs().collect();
        let kept: Vec<usize> = graphs
            .par_iter()
            .filter(|g| is_k_critical_family(g, k, &family).unwrap().holds())
            .map(Graph::order)
            .collect();
        histogram(kept.into_iter())
    };
    let h5 = filter(5);
    expect_eq("k=5 critical", h5.clone(), BTreeMap::from([(5, 1), (7, 1), (8, 1), (9, 7), (10, 1), (13, 3)]))?;
    let h6 = filter(6);
    expect_eq(
        "k=6 critical",
        h6.clone(),
        BTreeMap::from([(6, 1), (8, 1), (9, 1), (10, 6), (11, 33), (12, 2), (13, 1), (16, 13)]),
    )?;
    Ok(format!("{} and {} critical graphs", h5.values().sum::<usize>(), h6.values().sum::<usize>()))
}

fn k7_prefix() -> Result<String, String> {
    let mut cfg = GenConfig::new(7).unwrap();
    cfg.max_order = 12;
    let t = Instant::now();
    let r = generate_all(&cfg).unwrap();
    let elapsed = t.elapsed();
    let family = p5_dart();
    let graphs: Vec<Graph> = r.graphs().collect();
    let bad = graphs
        .par_iter()
        .filter(|g| !is_k_vertex_critical(g, 7).vertex_critical || !is_family_free(g, &family))
        .count();
    expect_eq("graphs failing the verifier", bad, 0)?;
    let prefix: BTreeMap<usize, usize> = r.counts_by_order.range(..=11).map(|(&n, &c)| (n, c)).collect();
    expect_eq("orders up to 11", prefix, BTreeMap::from([(7, 1), (9, 1), (10, 6), (11, 171)]))?;
    Ok(format!("{} graphs up to order 12 all verified, prefix matches, {elapsed:.1?}", r.total()))
}

fn self_consistency() -> Result<String, String> {
    let family = p5_dart();
    let mut checked = 0;
    for k in [5, 6] {
        let graphs: Vec<Graph> = corpus(k).graphs().collect();
        let failures: Vec<String> = graphs
            .par_iter()
            .filter_map(|g| {
                let mut why = Vec::new();
                if !is_k_vertex_critical(g, k).vertex_critical {
                    why.push("not vertex-critical");
                }
                if !is_family_free(g, &family) {
                    why.push("not family-free");
                }
                if g.min_degree().unwrap_or(0) + 1 < k {
                    why.push("minimum degree below k-1");
                }
                if comparable_pair(g).is_some() {
                    why.push("comparable pair");
                }
                (!why.is_empty()).then(|| format!("{g}: {}", why.join(", ")))
            })
            .collect();
        if let Some(f) = failures.first() {
            return Err(format!("k={k}: {} failures, first {f}", failures.len()));
        }
        checked += graphs.len();
    }
    Ok(format!("{checked} graphs, zero exceptions"))
}

fn structural_lemmas() -> Result<String, String> {
    let mut c5_holes = 0usize;
    let mut antiholes = 0usize;
    for k in [5, 6] {
        let graphs: Vec<Graph> = corpus(k).graphs().collect();
        let results: Vec<Result<(usize, usize), String>> = graphs
            .par_iter()
            .map(|g| {
                let mut holes = 0;
                for c in all_induced_c5(g) {
                    let p = partition_around_c5(g, &c).map_err(|e| format!("{g} hole {c:?}: {e}"))?;
                    let r = verify_c5_properties(g, &p);
                    if !r.all_hold() {
                        return Err(format!("{g} hole {c:?}:\n{r}"));
                    }
                    holes += 1;
                }
                let mut anti = 0;
                let connected = g.is_connected();
                for m in (7..=g.order()).step_by(2) {
                    for c in all_induced_antiholes(g, m).unwrap() {
                        let p = partition_around_antihole(g, &c).map_err(|e| format!("{g} antihole {c:?}: {e}"))?;
                        let r = verify_antihole_claims(g, &p, connected);
                        if !r.all_hold() {
                            return Err(format!("{g} antihole {c:?}:\n{r}"));
                        }
                        anti += 1;
                    }
                }
                Ok((holes, anti))
            })
            .collect();
        for r in results {
            let (h, a) = r?;
            c5_holes += h;
            antiholes += a;
        }
    }
    Ok(format!("{c5_holes} induced C5s and {antiholes} odd antiholes checked exhaustively, zero violations"))
}

fn oracle_agreement(g: &Graph, patterns: &[Graph]) -> Result<(), String> {
    let chi = chromatic_number(g);
    let brute = (0..=g.order()).find(|&k| brute_k_colorable(g, k)).unwrap();
    if chi != brute {
        return Err(format!("{g}: chromatic number {chi}, labelings give {brute}"));
    }
    for h in patterns {
        let found = find_induced(g, h);
        if found.is_some() != brute_has_induced(g, h) {
            return Err(format!("{g}: find_induced({h}) disagrees with injective-map search"));
        }
        if let Some(e) = found {
            if !e.is_valid(g, h) {
                return Err(format!("{g}: find_induced({h}) returned an invalid embedding"));
            }
        }
    }
    let critical = is_k_vertex_critical(g, chi).vertex_critical;
    if critical != brute_vertex_critical(g, chi) {
        return Err(format!("{g}: vertex-criticality disagrees with per-vertex recomputation"));
    }
    Ok(())
}

fn oracle_equivalence() -> Result<String, String> {
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    let patterns = vec![path(5), dart(), cycle(5), diamond(), complete(3), path(3), complete(4)];
    let mut random = Vec::with_capacity(10_000);
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=7);
        let p = rng.gen_range(0.1..0.9);
        random.push(random_graph(&mut rng, n, p));
    }
    random.par_iter().try_for_each(|g| oracle_agreement(g, &patterns))?;
    let mut corpus_graphs: Vec<Graph> = corpus(5).graphs().collect();
    corpus_graphs.extend(corpus(6).graphs());
    let small = induced_subgraph_classes(&corpus_graphs, 7);
    small.par_iter().try_for_each(|g| oracle_agreement(g, &patterns))?;
    Ok(format!("10000 random graphs and {} corpus subgraph classes agree", small.len()))
}

fn certify_round_trip() -> Result<String, String> {
    let db = CriticalDatabase::from_result(corpus(5));
    let graphs: Vec<Graph> = corpus(5).graphs().collect();
    let mut rng = StdRng::seed_from_u64(0xce27);
    let t = Instant::now();
    let (mut yes, mut no) = (0, 0);
    for _ in 0..200 {
        let host = &graphs[rng.gen_range(0..graphs.len())];
        let keep = if rng.gen_bool(0.2) {
            host.vertices()
        } else {
            host.vertices().iter().filter(|_| rng.gen_bool(0.8)).collect::<VertexSet>()
        };
        let g = host.induced_subgraph(keep);
        let (decision, cert) = certify_k_colorability(&g, 4, &db).map_err(|e| format!("{g}: {e}"))?;
        if !verify_certificate(&g, 4, &cert, &db) {
            return Err(format!("{g}: certificate {cert} rejected"));
        }
        if decision != is_k_colorable(&g, 4).is_some() || decision != (brute_chromatic(&g) <= 4) {
            return Err(format!("{g}: decision {decision} disagrees with the exact solver"));
        }
        if decision {
            yes += 1;
        } else {
            no += 1;
        }
    }
    within("certification", t.elapsed(), Duration::from_secs(300))?;
    Ok(format!("200 certificates verified ({yes} colorings, {no} critical embeddings)"))
}

fn codec_and_canon() -> Result<String, String> {
    let mut total = 0;
    for k in [5, 6] {
        for key in &corpus(k).graphs {
            let g = graph6::decode(key.as_bytes()).map_err(|e| e.to_string())?;
            if graph6::encode_bytes(&g) != key.as_bytes() {
                return Err(format!("{key}: re-encoding differs"));
            }
            if graph6::decode(&graph6::encode_bytes(&g)).unwrap() != g {
                return Err(format!("{key}: decode(encode(g)) differs"));
            }
            total += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(0xca70);
    let k5: Vec<Graph> = corpus(5).graphs().collect();
    let k6: Vec<Graph> = corpus(6).graphs().collect();
    let mut sample: Vec<&Graph> = (0..25).map(|_| &k5[rng.gen_range(0..k5.len())]).collect();
    sample.extend((0..25).map(|_| &k6[rng.gen_range(0..k6.len())]));
    for g in sample {
        let base = canonical_form(g);
        for _ in 0..100 {
            let perm = random_permutation(&mut rng, g.order());
            if canonical_form(&g.permute(&perm)) != base {
                return Err(format!("{g}: canonical form changed under relabeling {perm:?}"));
            }
        }
    }
    Ok(format!("{total} graph6 round trips bit-exact, 50 graphs x 100 relabelings invariant"))
}

fn k4_bound() -> Result<String, String> {
    let r = corpus(4);
    expect_eq("truncated", r.truncated, false)?;
    let max = r.max_order().unwrap_or(0);
    if max > 13 {
        return Err(format!("a 4-vertex-critical graph of order {max}"));
    }
    Ok(format!("{} graphs, largest order {max}, orders {:?}", r.total(), r.counts_by_order))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 10] = [
        ("k=5 exhaustive generation", k5_exhaustive),
        ("k=6 exhaustive generation", k6_exhaustive),
        ("critical filtering for k=5 and k=6", critical_filter),
        ("k=7 run capped at order 12", k7_prefix),
        ("self-consistency of the k=5 and k=6 corpora", self_consistency),
        ("structural properties around every hole and antihole", structural_lemmas),
        ("oracle equivalence on small graphs", oracle_equivalence),
        ("certify round trip at k=4", certify_round_trip),
        ("graph6 codec and canonical form", codec_and_canon),
        ("k=4 order bound", k4_bound),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = t.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{elapsed:.1?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{elapsed:.1?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
