//! Intersecting-edge-pair census and the pigeonhole finders for 5-vertex
//! and <=6-vertex cores, plus the auxiliary-graph 4-cycle route.

use std::collections::HashMap;

use crate::core_search::is_core;
use crate::hypergraph::{ConfigWitness, EdgeId, Hypergraph3};

/// Two edges sharing exactly the `base` pair; `thirds` are their single
/// vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntersectingPair {
    pub base: (usize, usize),
    pub thirds: (usize, usize),
    pub edges: (EdgeId, EdgeId),
}

/// All intersecting edge pairs, grouped per base pair, in sorted order.
pub fn intersecting_pairs(h: &Hypergraph3) -> Vec<IntersectingPair> {
    let mut out = Vec::new();
    for ((u, v), d) in h.covered_pairs() {
        if d < 2 {
            continue;
        }
        // Edge ids containing both u and v, ascending.
        let ids: Vec<EdgeId> = h
            .incident_edges(u)
            .iter()
            .copied()
            .filter(|&e| h.edge(e).contains(&v))
            .collect();
        for i in 0..ids.len() {
            for j in (i + 1)..ids.len() {
                let a = third_vertex(h.edge(ids[i]), u, v);
                let b = third_vertex(h.edge(ids[j]), u, v);
                out.push(IntersectingPair {
                    base: (u, v),
                    thirds: (a.min(b), a.max(b)),
                    edges: (ids[i], ids[j]),
                });
            }
        }
    }
    out
}

fn third_vertex(e: [usize; 3], u: usize, v: usize) -> usize {
    e.into_iter().find(|&x| x != u && x != v).unwrap()
}

/// Sum over unordered vertex pairs of C(pair_degree, 2): the number of
/// intersecting edge pairs counted with base-pair multiplicity.
pub fn pair_census(h: &Hypergraph3) -> u64 {
    h.covered_pairs()
        .iter()
        .map(|&(_, d)| (d as u64) * (d as u64 - 1) / 2)
        .sum()
}

/// Searches for a 5-vertex 4-edge core shaped like the complete
/// tripartite graph with class sizes 2,2,1: edges {x,y,a}, {x,y,b},
/// {x',y,a}, {x',y,b}.
///
/// Each intersecting pair is keyed under both of its base vertices
/// together with its thirds set; the first collision of distinct
/// partners wins. A collision is guaranteed whenever
/// `pair_census > 2 * C(n,3)`: the pairs contribute `2 * census` keyed
/// entries into a space of `3 * C(n,3)` keys.
pub fn find_k221(h: &Hypergraph3) -> Option<ConfigWitness> {
    let mut seen: HashMap<(usize, (usize, usize)), IntersectingPair> = HashMap::new();
    for p in intersecting_pairs(h) {
        for &anchor in &[p.base.0, p.base.1] {
            if let Some(q) = seen.get(&(anchor, p.thirds)) {
                if q.base != p.base {
                    let ids = [p.edges.0, p.edges.1, q.edges.0, q.edges.1];
                    let vertices = vec![
                        p.base.0, p.base.1, q.base.0, q.base.1, p.thirds.0, p.thirds.1,
                    ];
                    debug_assert!(is_core(h, &ids));
                    return ConfigWitness::new(h, vertices, &ids, 5, 4).ok();
                }
            } else {
                seen.insert((anchor, p.thirds), p);
            }
        }
    }
    None
}

/// Searches for 4 edges {x,y,a}, {x,y,b}, {u,w,a}, {u,w,b} with distinct
/// base pairs, covering at most 6 vertices. Keys each intersecting pair
/// by its thirds set; a collision of distinct bases wins. Guaranteed
/// whenever `pair_census > C(n,2)` (one key per pair, C(n,2) keys).
pub fn find_6core(h: &Hypergraph3) -> Option<ConfigWitness> {
    collide_on_thirds(h)
        .map(|(p, q)| six_core_witness(h, p, q))
}

fn collide_on_thirds(h: &Hypergraph3) -> Option<(IntersectingPair, IntersectingPair)> {
    let mut seen: HashMap<(usize, usize), IntersectingPair> = HashMap::new();
    for p in intersecting_pairs(h) {
        if let Some(q) = seen.get(&p.thirds) {
            if q.base != p.base {
                return Some((*q, p));
            }
        } else {
            seen.insert(p.thirds, p);
        }
    }
    None
}

fn six_core_witness(h: &Hypergraph3, p: IntersectingPair, q: IntersectingPair) -> ConfigWitness {
    let ids = [p.edges.0, p.edges.1, q.edges.0, q.edges.1];
    let mut vertices = vec![
        p.base.0, p.base.1, q.base.0, q.base.1, p.thirds.0, p.thirds.1,
    ];
    vertices.sort_unstable();
    vertices.dedup();
    debug_assert!(is_core(h, &ids));
    ConfigWitness::new(h, vertices, &ids, 6, 4).expect("base collision forms a core")
}

/// Builds the auxiliary simple graph joining the two `thirds` vertices of
/// every intersecting pair and looks for a 4-cycle.
///
/// A doubled thirds pair already yields the <=6-vertex core and is
/// returned directly. Otherwise every 4-cycle decodes to 8 host edges on
/// at most 12 vertices; candidates failing the core or edge-count audit
/// (possible when two cycle edges grew from one base pair) are skipped.
pub fn intersection_graph_c4(h: &Hypergraph3) -> Option<ConfigWitness> {
    let mut by_thirds: HashMap<(usize, usize), IntersectingPair> = HashMap::new();
    for p in intersecting_pairs(h) {
        if let Some(q) = by_thirds.get(&p.thirds) {
            if q.base != p.base {
                return Some(six_core_witness(h, *q, p));
            }
            continue;
        }
        by_thirds.insert(p.thirds, p);
    }
    // Simple graph on the thirds pairs.
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(a, b) in by_thirds.keys() {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let mut sources: Vec<usize> = adj.keys().copied().collect();
    sources.sort_unstable();
    for list in adj.values_mut() {
        list.sort_unstable();
    }

    // Depth-2 scan: two distinct length-2 paths v-x-u and v-y-u close a
    // 4-cycle (v, x, u, y).
    for &v in &sources {
        let mut middle: HashMap<usize, usize> = HashMap::new();
        for &x in &adj[&v] {
            for &u in &adj[&x] {
                if u == v {
                    continue;
                }
                match middle.get(&u) {
                    Some(&y) if y != x => {
                        if let Some(w) = decode_c4(h, &by_thirds, [v, y, u, x]) {
                            return Some(w);
                        }
                    }
                    Some(_) => {}
                    None => {
                        middle.insert(u, x);
                    }
                }
            }
        }
    }
    None
}

fn decode_c4(
    h: &Hypergraph3,
    by_thirds: &HashMap<(usize, usize), IntersectingPair>,
    cycle: [usize; 4],
) -> Option<ConfigWitness> {
    let mut ids: Vec<EdgeId> = Vec::new();
    let mut vertices: Vec<usize> = Vec::new();
    for i in 0..4 {
        let (a, b) = (cycle[i], cycle[(i + 1) % 4]);
        let p = by_thirds[&(a.min(b), a.max(b))];
        ids.extend([p.edges.0, p.edges.1]);
        vertices.extend([p.base.0, p.base.1, p.thirds.0, p.thirds.1]);
    }
    ids.sort_unstable();
    ids.dedup();
    vertices.sort_unstable();
    vertices.dedup();
    if ids.len() < 8 || !is_core(h, &ids) {
        return None;
    }
    ConfigWitness::new(h, vertices, &ids, 12, 8).ok()
}
