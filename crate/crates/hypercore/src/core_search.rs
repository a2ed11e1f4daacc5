//! Core predicates and core-finding algorithms: degree-1 stripping,
//! randomized subsample stripping, exact minimum-core branch-and-bound,
//! and cycle extraction from the auxiliary pair graph.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::hypergraph::{CoreCertificate, EdgeId, Hypergraph3};

/// True iff the nonempty edge subset covers every one of its vertices at
/// least twice. Panics on an edge id outside the host.
pub fn is_core(h: &Hypergraph3, edge_ids: &[EdgeId]) -> bool {
    if edge_ids.is_empty() {
        return false;
    }
    let mut deg: HashMap<usize, usize> = HashMap::new();
    let mut ids = edge_ids.to_vec();
    ids.sort_unstable();
    ids.dedup();
    for &id in &ids {
        assert!(id < h.m(), "edge id {id} not in host");
        for &v in &h.edge(id) {
            *deg.entry(v).or_insert(0) += 1;
        }
    }
    deg.values().all(|&d| d >= 2)
}

/// The 2-core of an edge subset: repeatedly drops vertices of degree <= 1
/// (degree counted within the subset) together with their incident
/// edges. Returns the surviving edge ids, possibly empty.
pub fn strip_edges(h: &Hypergraph3, edge_ids: &[EdgeId]) -> Vec<EdgeId> {
    let mut verts: Vec<usize> = edge_ids
        .iter()
        .flat_map(|&id| h.edge(id).into_iter())
        .collect();
    verts.sort_unstable();
    verts.dedup();
    let local = |v: usize| verts.binary_search(&v).unwrap();

    let mut deg = vec![0usize; verts.len()];
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); verts.len()];
    for (pos, &id) in edge_ids.iter().enumerate() {
        for &v in &h.edge(id) {
            let lv = local(v);
            deg[lv] += 1;
            inc[lv].push(pos);
        }
    }
    let mut alive_e = vec![true; edge_ids.len()];
    let mut alive_v = vec![true; verts.len()];
    let mut stack: Vec<usize> = (0..verts.len()).filter(|&v| deg[v] <= 1).collect();
    while let Some(v) = stack.pop() {
        if !alive_v[v] {
            continue;
        }
        alive_v[v] = false;
        for &pos in &inc[v] {
            if !alive_e[pos] {
                continue;
            }
            alive_e[pos] = false;
            for &w in &h.edge(edge_ids[pos]) {
                let lw = local(w);
                if lw != v && alive_v[lw] {
                    deg[lw] -= 1;
                    if deg[lw] <= 1 {
                        stack.push(lw);
                    }
                }
            }
        }
    }
    edge_ids
        .iter()
        .enumerate()
        .filter(|&(pos, _)| alive_e[pos])
        .map(|(_, &id)| id)
        .collect()
}

/// The unique maximal core of the whole hypergraph, if nonempty.
pub fn two_core(h: &Hypergraph3) -> Option<CoreCertificate> {
    let ids: Vec<EdgeId> = (0..h.m()).collect();
    let alive = strip_edges(h, &ids);
    if alive.is_empty() {
        None
    } else {
        Some(CoreCertificate::new(h, &alive).expect("stripping leaves min degree 2"))
    }
}

/// Number of vertices drawn by [`subsample_strip`]: the least `s` with
/// `s^2 * m >= n^3`, i.e. the ceiling of `n^{3/2} / sqrt(m)`.
pub fn subsample_size(n: usize, m: usize) -> usize {
    let target = (n as u128).pow(3);
    let m = m as u128;
    let mut s = (((n as f64).powf(1.5) / (m as f64).sqrt()).floor() as usize).saturating_sub(2);
    while (s as u128) * (s as u128) * m < target {
        s += 1;
    }
    s
}

/// Samples `subsample_size` vertices uniformly and strips the induced
/// subgraph, retrying up to `retries` times. When the sample size
/// reaches `n`, falls back to stripping the whole graph.
pub fn subsample_strip(h: &Hypergraph3, seed: u64, retries: usize) -> Option<CoreCertificate> {
    if h.m() == 0 {
        return None;
    }
    let size = subsample_size(h.n(), h.m());
    if size >= h.n() {
        return two_core(h);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut in_sample = vec![false; h.n()];
    for _ in 0..retries {
        let picks = rand::seq::index::sample(&mut rng, h.n(), size);
        in_sample.iter_mut().for_each(|b| *b = false);
        for v in picks {
            in_sample[v] = true;
        }
        let inside: Vec<EdgeId> = (0..h.m())
            .filter(|&id| h.edge(id).iter().all(|&v| in_sample[v]))
            .collect();
        let alive = strip_edges(h, &inside);
        if !alive.is_empty() {
            return Some(CoreCertificate::new(h, &alive).expect("stripped subset is a core"));
        }
    }
    None
}

/// Outcome of the exhaustive minimum-core search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinCoreOutcome {
    /// A core with the smallest possible vertex count within `k_max`.
    Smallest(CoreCertificate),
    /// Exhaustive proof that no core on at most `k_max` vertices exists.
    CertifiedNone,
    /// Node budget ran out; carries the best core found so far, which is
    /// not certified minimal.
    BudgetExhausted(Option<CoreCertificate>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinCoreResult {
    pub outcome: MinCoreOutcome,
    pub nodes_expanded: u64,
}

struct SubsetSearch<'a> {
    h: &'a Hypergraph3,
    /// Candidate vertices, highest host degree first.
    order: Vec<usize>,
    /// Position of each vertex in `order`; usize::MAX when ineligible.
    pos: Vec<usize>,
    in_s: Vec<bool>,
    stack: Vec<usize>,
    inside: Vec<EdgeId>,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl<'a> SubsetSearch<'a> {
    fn new(h: &'a Hypergraph3, budget: u64) -> Self {
        // Only vertices of host degree >= 2 can appear in a core.
        let mut order: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) >= 2).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
        let mut pos = vec![usize::MAX; h.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        SubsetSearch {
            h,
            order,
            pos,
            in_s: vec![false; h.n()],
            stack: Vec::new(),
            inside: Vec::new(),
            nodes: 0,
            budget,
            aborted: false,
        }
    }

    /// True when `v` is in the current set or still selectable after
    /// position `threshold`.
    fn allowed(&self, v: usize, threshold: usize) -> bool {
        self.in_s[v] || (self.pos[v] != usize::MAX && self.pos[v] > threshold)
    }

    /// Every chosen vertex must still be able to reach degree 2 using
    /// edges inside the chosen-or-selectable region; otherwise no
    /// extension of this node can cover it twice.
    fn extension_feasible(&self, threshold: usize) -> bool {
        self.stack.iter().all(|&u| {
            let mut live = 0;
            for &id in self.h.incident_edges(u) {
                if self
                    .h
                    .edge(id)
                    .iter()
                    .all(|&w| w == u || self.allowed(w, threshold))
                {
                    live += 1;
                    if live == 2 {
                        return true;
                    }
                }
            }
            false
        })
    }

    fn push_vertex(&mut self, v: usize) -> usize {
        let mut added = 0;
        for &id in self.h.incident_edges(v) {
            if self
                .h
                .edge(id)
                .iter()
                .all(|&w| w == v || self.in_s[w])
            {
                self.inside.push(id);
                added += 1;
            }
        }
        self.in_s[v] = true;
        self.stack.push(v);
        added
    }

    fn pop_vertex(&mut self, added: usize) {
        let v = self.stack.pop().expect("push/pop balance");
        self.in_s[v] = false;
        self.inside.truncate(self.inside.len() - added);
    }
}

/// Exhaustive branch-and-bound for the smallest core on at most `k_max`
/// vertices. `CertifiedNone` is reported only when the full search space
/// was exhausted within `budget` nodes.
pub fn min_core(h: &Hypergraph3, k_max: usize, budget: u64) -> MinCoreResult {
    assert!(k_max >= 4, "cores need at least 4 vertices");
    let mut search = SubsetSearch::new(h, budget);
    let mut best: Option<CoreCertificate> = None;
    let mut limit = k_max;
    descend_min(&mut search, 0, &mut limit, &mut best);
    let nodes = search.nodes;
    let outcome = if search.aborted {
        MinCoreOutcome::BudgetExhausted(best)
    } else {
        match best {
            Some(cert) => MinCoreOutcome::Smallest(cert),
            None => MinCoreOutcome::CertifiedNone,
        }
    };
    MinCoreResult {
        outcome,
        nodes_expanded: nodes,
    }
}

fn descend_min(
    search: &mut SubsetSearch,
    from: usize,
    limit: &mut usize,
    best: &mut Option<CoreCertificate>,
) {
    for j in from..search.order.len() {
        if search.aborted {
            return;
        }
        search.nodes += 1;
        if search.nodes > search.budget {
            search.aborted = true;
            return;
        }
        let v = search.order[j];
        let added = search.push_vertex(v);
        // Any core needs >= 3 edges, so smaller insides cannot certify.
        if search.stack.len() >= 4 && search.inside.len() >= 3 {
            let alive = strip_edges(search.h, &search.inside);
            if !alive.is_empty() {
                let cert = CoreCertificate::new(search.h, &alive)
                    .expect("stripped subset is a core");
                if cert.order() <= *limit {
                    *limit = cert.order().saturating_sub(1);
                    *best = Some(cert);
                }
            }
        }
        if search.stack.len() < *limit && search.extension_feasible(j) {
            descend_min(search, j + 1, limit, best);
        }
        search.pop_vertex(added);
    }
}

/// Searches for a core covering exactly `k` vertices (the maximal core
/// of some induced `k`-set covering all of it). Used by the threshold
/// harness; exhaustive within the node budget.
pub fn exists_core_exact(h: &Hypergraph3, k: usize, budget: u64) -> MinCoreResult {
    assert!(k >= 4, "cores need at least 4 vertices");
    let mut search = SubsetSearch::new(h, budget);
    let mut found: Option<CoreCertificate> = None;
    descend_exact(&mut search, 0, k, &mut found);
    let nodes = search.nodes;
    let outcome = if let Some(cert) = found {
        MinCoreOutcome::Smallest(cert)
    } else if search.aborted {
        MinCoreOutcome::BudgetExhausted(None)
    } else {
        MinCoreOutcome::CertifiedNone
    };
    MinCoreResult {
        outcome,
        nodes_expanded: nodes,
    }
}

fn descend_exact(
    search: &mut SubsetSearch,
    from: usize,
    k: usize,
    found: &mut Option<CoreCertificate>,
) {
    for j in from..search.order.len() {
        if search.aborted || found.is_some() {
            return;
        }
        search.nodes += 1;
        if search.nodes > search.budget {
            search.aborted = true;
            return;
        }
        let v = search.order[j];
        let added = search.push_vertex(v);
        if search.stack.len() == k {
            if search.inside.len() * 3 >= 2 * k {
                let alive = strip_edges(search.h, &search.inside);
                if !alive.is_empty() {
                    let cert = CoreCertificate::new(search.h, &alive)
                        .expect("stripped subset is a core");
                    if cert.order() == k {
                        *found = Some(cert);
                    }
                }
            }
        } else if search.extension_feasible(j) {
            descend_exact(search, j + 1, k, found);
        }
        search.pop_vertex(added);
    }
}

/// A vertex of the auxiliary pair graph: an ordered pair of host
/// vertices.
pub type PairVertex = (usize, usize);

/// One witness that two pair-vertices are adjacent: distinct host edges
/// {p.0, middle, q.0} and {p.1, middle, q.1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PairAnnotation {
    pub middle: usize,
    pub edges: (EdgeId, EdgeId),
}

#[derive(Debug, Clone)]
pub struct PairGraphEdge {
    pub endpoints: (PairVertex, PairVertex),
    pub annotations: Vec<PairAnnotation>,
}

/// The auxiliary graph on ordered vertex pairs. Parallel annotations on
/// one endpoint pair are kept; cycle extraction reads them as a
/// 2-cycle.
#[derive(Debug, Clone)]
pub struct PairGraph {
    pub n: usize,
    pub edges: Vec<PairGraphEdge>,
}

impl PairGraph {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Checks that every annotation decodes back to its endpoints.
    pub fn decodes_consistently(&self, h: &Hypergraph3) -> bool {
        self.edges.iter().all(|e| {
            e.annotations.iter().all(|a| {
                let (p, q) = e.endpoints;
                let (e1, e2) = (h.edge(a.edges.0), h.edge(a.edges.1));
                a.edges.0 != a.edges.1
                    && sorted3(p.0, a.middle, q.0) == e1
                    && sorted3(p.1, a.middle, q.1) == e2
            })
        })
    }
}

fn sorted3(a: usize, b: usize, c: usize) -> [usize; 3] {
    let mut t = [a, b, c];
    t.sort_unstable();
    t
}

/// Builds the full pair graph: (v_i, v_j) and (v_s, v_t) are adjacent
/// when some middle vertex v_r yields two distinct host edges
/// {v_i, v_r, v_s} and {v_j, v_r, v_t}.
pub fn build_pair_graph(h: &Hypergraph3) -> PairGraph {
    let n = h.n();
    let key = |p: PairVertex| p.0 * n + p.1;
    let mut map: HashMap<(PairVertex, PairVertex), Vec<PairAnnotation>> = HashMap::new();
    for r in 0..n {
        let inc = h.incident_edges(r);
        for &ei in inc {
            for &ej in inc {
                if ei == ej {
                    continue;
                }
                let [x, y] = others(h.edge(ei), r);
                let [z, w] = others(h.edge(ej), r);
                for (p, q) in [((x, z), (y, w)), ((x, w), (y, z))] {
                    let (p, q) = if key(p) <= key(q) { (p, q) } else { (q, p) };
                    map.entry((p, q)).or_default().push(PairAnnotation {
                        middle: r,
                        edges: (ei, ej),
                    });
                }
            }
        }
    }
    let mut edges: Vec<PairGraphEdge> = map
        .into_iter()
        .map(|((p, q), mut annotations)| {
            annotations.sort_unstable();
            annotations.dedup();
            PairGraphEdge {
                endpoints: (p, q),
                annotations,
            }
        })
        .collect();
    edges.sort_by_key(|e| (key(e.endpoints.0), key(e.endpoints.1)));
    PairGraph { n, edges }
}

fn others(e: [usize; 3], r: usize) -> [usize; 2] {
    let mut it = e.into_iter().filter(|&v| v != r);
    [it.next().unwrap(), it.next().unwrap()]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCoreResult {
    pub certificate: CoreCertificate,
    pub cycle_len: usize,
}

/// Extracts a core from a shortest cycle of the pair graph.
///
/// Parallel annotations with distinct edge sets act as a 2-cycle; on a
/// simple cycle the annotated host edges are unioned. Every candidate is
/// validated with [`is_core`] before being returned, shortest first.
pub fn cycle_core(h: &Hypergraph3) -> Option<CycleCoreResult> {
    let pg = build_pair_graph(h);
    // Phase 1: 2-cycles from parallel annotations.
    for e in &pg.edges {
        if e.annotations.len() < 2 {
            continue;
        }
        let mut sets: Vec<(EdgeId, EdgeId)> = e
            .annotations
            .iter()
            .map(|a| {
                let (x, y) = a.edges;
                (x.min(y), x.max(y))
            })
            .collect();
        sets.sort_unstable();
        sets.dedup();
        for i in 0..sets.len() {
            for j in (i + 1)..sets.len() {
                let mut ids = vec![sets[i].0, sets[i].1, sets[j].0, sets[j].1];
                ids.sort_unstable();
                ids.dedup();
                if is_core(h, &ids) {
                    let certificate =
                        CoreCertificate::new(h, &ids).expect("validated core subset");
                    return Some(CycleCoreResult {
                        certificate,
                        cycle_len: 2,
                    });
                }
            }
        }
    }
    // Phase 2: BFS girth scan over the deduplicated simple graph.
    let key = |p: PairVertex| p.0 * pg.n + p.1;
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut lookup: HashMap<(usize, usize), &PairGraphEdge> = HashMap::new();
    for e in &pg.edges {
        let (a, b) = (key(e.endpoints.0), key(e.endpoints.1));
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
        lookup.insert((a.min(b), a.max(b)), e);
    }
    let mut sources: Vec<usize> = adj.keys().copied().collect();
    sources.sort_unstable();
    for list in adj.values_mut() {
        list.sort_unstable();
    }

    let mut best: Option<CycleCoreResult> = None;
    let mut dist: HashMap<usize, usize> = HashMap::new();
    let mut parent: HashMap<usize, usize> = HashMap::new();
    for &src in &sources {
        // Expanding a vertex at distance d can only reveal cycles of
        // length >= 2d, so d may be capped at (best - 1) / 2.
        let cutoff = best.as_ref().map_or(usize::MAX, |b| (b.cycle_len - 1) / 2);
        dist.clear();
        parent.clear();
        dist.insert(src, 0);
        let mut frontier = std::collections::VecDeque::from([src]);
        while let Some(x) = frontier.pop_front() {
            let dx = dist[&x];
            if dx > cutoff {
                continue;
            }
            for &y in &adj[&x] {
                if let Some(&dy) = dist.get(&y) {
                    if parent.get(&x) == Some(&y) || parent.get(&y) == Some(&x) {
                        continue;
                    }
                    let raw = dx + dy + 1;
                    if best.as_ref().map_or(true, |b| raw < b.cycle_len) {
                        let cycle = extract_cycle(&parent, x, y);
                        if let Some(cand) = decode_cycle(h, &lookup, &cycle) {
                            if best.as_ref().map_or(true, |b| cand.cycle_len < b.cycle_len) {
                                best = Some(cand);
                            }
                        }
                    }
                } else {
                    dist.insert(y, dx + 1);
                    parent.insert(y, x);
                    frontier.push_back(y);
                }
            }
        }
        if best.as_ref().map_or(false, |b| b.cycle_len <= 3) {
            break;
        }
    }
    best
}

/// Walks parent chains from both endpoints of a closing edge and joins
/// them at their lowest common ancestor, yielding a simple cycle.
fn extract_cycle(parent: &HashMap<usize, usize>, x: usize, y: usize) -> Vec<usize> {
    let chain = |mut v: usize| {
        let mut path = vec![v];
        while let Some(&p) = parent.get(&v) {
            path.push(p);
            v = p;
        }
        path
    };
    let px = chain(x);
    let py = chain(y);
    let in_py: HashMap<usize, usize> = py.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let (mut cut_x, mut cut_y) = (px.len() - 1, py.len() - 1);
    for (i, &v) in px.iter().enumerate() {
        if let Some(&j) = in_py.get(&v) {
            cut_x = i;
            cut_y = j;
            break;
        }
    }
    let mut cycle: Vec<usize> = px[..=cut_x].to_vec();
    cycle.extend(py[..cut_y].iter().rev());
    cycle
}

fn decode_cycle(
    h: &Hypergraph3,
    lookup: &HashMap<(usize, usize), &PairGraphEdge>,
    cycle: &[usize],
) -> Option<CycleCoreResult> {
    if cycle.len() < 3 {
        return None;
    }
    let mut ids: Vec<EdgeId> = Vec::new();
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        let e = lookup.get(&(a.min(b), a.max(b)))?;
        let ann = e.annotations[0];
        ids.extend([ann.edges.0, ann.edges.1]);
    }
    ids.sort_unstable();
    ids.dedup();
    if !is_core(h, &ids) {
        return None;
    }
    let certificate = CoreCertificate::new(h, &ids).expect("validated core subset");
    debug_assert!(certificate.order() <= 3 * cycle.len());
    Some(CycleCoreResult {
        certificate,
        cycle_len: cycle.len(),
    })
}
