//! Configuration machinery: greedy linearization, enumeration and
//! classification of 3-edge/6-vertex configurations, generic (k, l)
//! witness search, the auxiliary 4-partite clique hypergraph, and the
//! assemblies producing (14, 10) witnesses and cores on 15 vertices.

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::core_search::is_core;
use crate::error::{Error, Result};
use crate::hypergraph::{ConfigWitness, CoreCertificate, EdgeId, Hypergraph3};

/// Greedy linearization in stored edge order: keep an edge, drop every
/// later edge sharing two vertices with a kept one. Returns the linear
/// subgraph and the retained edge fraction.
pub fn linearize(h: &Hypergraph3) -> (Hypergraph3, f64) {
    let mut kept_pairs: std::collections::HashSet<(usize, usize)> = Default::default();
    let mut kept: Vec<[usize; 3]> = Vec::new();
    for &e in h.edges() {
        let pairs = [(e[0], e[1]), (e[0], e[2]), (e[1], e[2])];
        if pairs.iter().any(|p| kept_pairs.contains(p)) {
            continue;
        }
        kept_pairs.extend(pairs);
        kept.push(e);
    }
    let fraction = if h.m() == 0 {
        1.0
    } else {
        kept.len() as f64 / h.m() as f64
    };
    let out = Hypergraph3::build(h.n(), &kept).expect("subset of valid edges");
    let out = match h.partition() {
        Some(p) => out
            .with_partition(p.to_vec())
            .expect("partition stays consistent on an edge subset"),
        None => out,
    };
    (out, fraction)
}

/// Three edges pairwise sharing exactly one vertex, with three distinct
/// shared vertices: three degree-2 and three degree-1 vertices on six
/// vertices in total.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SixThreeConfig {
    pub edges: [EdgeId; 3],
    pub deg2: [usize; 3],
    pub deg1: [usize; 3],
}

impl SixThreeConfig {
    pub fn vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.deg2.iter().chain(self.deg1.iter()).copied().collect();
        v.sort_unstable();
        v
    }
}

fn shared_vertex(a: [usize; 3], b: [usize; 3]) -> Option<usize> {
    let mut found = None;
    for &v in &a {
        if b.contains(&v) {
            if found.is_some() {
                return None; // shares two vertices; host not linear
            }
            found = Some(v);
        }
    }
    found
}

/// Enumerates all 3-edge/6-vertex configurations, up to `limit`.
/// Requires a linear host (in linear hosts every such span has this
/// shape).
pub fn enumerate_63(h: &Hypergraph3, limit: Option<usize>) -> Result<Vec<SixThreeConfig>> {
    if let Some((pair, degree)) = h.nonlinear_pair() {
        return Err(Error::NotLinear { pair, degree });
    }
    let cap = limit.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    let neighbors = |i: EdgeId| -> Vec<EdgeId> {
        let mut ns: Vec<EdgeId> = h
            .edge(i)
            .iter()
            .flat_map(|&v| h.incident_edges(v).iter().copied())
            .filter(|&j| j != i)
            .collect();
        ns.sort_unstable();
        ns.dedup();
        ns
    };
    for i in 0..h.m() {
        if out.len() >= cap {
            break;
        }
        let ni = neighbors(i);
        for &j in ni.iter().filter(|&&j| j > i) {
            if out.len() >= cap {
                break;
            }
            for &k in ni.iter().filter(|&&k| k > j) {
                if out.len() >= cap {
                    break;
                }
                let (ei, ej, ek) = (h.edge(i), h.edge(j), h.edge(k));
                let (Some(sij), Some(sik), Some(sjk)) = (
                    shared_vertex(ei, ej),
                    shared_vertex(ei, ek),
                    shared_vertex(ej, ek),
                ) else {
                    continue;
                };
                if sij == sik || sij == sjk || sik == sjk {
                    continue;
                }
                let mut deg2 = [sij, sik, sjk];
                deg2.sort_unstable();
                let mut deg1: Vec<usize> = [ei, ej, ek]
                    .iter()
                    .flatten()
                    .copied()
                    .filter(|v| !deg2.contains(v))
                    .collect();
                deg1.sort_unstable();
                debug_assert_eq!(deg1.len(), 3);
                out.push(SixThreeConfig {
                    edges: [i, j, k],
                    deg2,
                    deg1: [deg1[0], deg1[1], deg1[2]],
                });
            }
        }
    }
    Ok(out)
}

/// Outcome of a (k, l) witness search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FindOutcome {
    Witness(ConfigWitness),
    /// The full search space was exhausted: no k vertices span l edges.
    CertifiedNone,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FindConfigResult {
    pub outcome: FindOutcome,
    pub nodes_expanded: u64,
}

struct ConfigSearch<'a> {
    h: &'a Hypergraph3,
    k: usize,
    l: usize,
    /// Endpoints of each edge still outside the growing vertex set.
    miss: Vec<u8>,
    inside: usize,
    in_u: Vec<bool>,
    u: Vec<usize>,
    nodes: u64,
    budget: u64,
    aborted: bool,
    witness: Option<ConfigWitness>,
}

impl<'a> ConfigSearch<'a> {
    fn new(h: &'a Hypergraph3, k: usize, l: usize, budget: u64) -> Self {
        ConfigSearch {
            h,
            k,
            l,
            miss: vec![3; h.m()],
            inside: 0,
            in_u: vec![false; h.n()],
            u: Vec::new(),
            nodes: 0,
            budget,
            aborted: false,
            witness: None,
        }
    }

    fn push_edge(&mut self, id: EdgeId) -> Vec<usize> {
        let mut added = Vec::new();
        for &v in &self.h.edge(id) {
            if !self.in_u[v] {
                self.in_u[v] = true;
                self.u.push(v);
                added.push(v);
                for &f in self.h.incident_edges(v) {
                    self.miss[f] -= 1;
                    if self.miss[f] == 0 {
                        self.inside += 1;
                    }
                }
            }
        }
        added
    }

    fn pop_edge(&mut self, added: &[usize]) {
        for &v in added.iter().rev() {
            for &f in self.h.incident_edges(v) {
                if self.miss[f] == 0 {
                    self.inside -= 1;
                }
                self.miss[f] += 1;
            }
            self.in_u[v] = false;
            self.u.pop();
        }
    }

    fn record_witness(&mut self) {
        let ids: Vec<EdgeId> = (0..self.h.m()).filter(|&e| self.miss[e] == 0).collect();
        self.witness = Some(
            ConfigWitness::new(self.h, self.u.clone(), &ids, self.k, self.l)
                .expect("vertex set spans the counted edges"),
        );
    }

    /// Upper bound on the spanned-edge count any extension can reach:
    /// edges missing at most the remaining vertex budget.
    fn reachable_edges(&self, room: usize) -> usize {
        self.miss.iter().filter(|&&m| (m as usize) <= room).count()
    }

    fn descend(&mut self, start: EdgeId, skip: EdgeId) {
        if self.aborted || self.witness.is_some() {
            return;
        }
        let room = self.k - self.u.len();
        if self.reachable_edges(room) < self.l {
            return;
        }
        for id in start..self.h.m() {
            if id == skip || self.miss[id] == 0 {
                continue;
            }
            if (self.miss[id] as usize) > room {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.aborted = true;
                return;
            }
            let added = self.push_edge(id);
            if self.inside >= self.l {
                self.record_witness();
            } else {
                self.descend(id + 1, skip);
            }
            self.pop_edge(&added);
            if self.aborted || self.witness.is_some() {
                return;
            }
        }
    }

    fn result(self) -> FindConfigResult {
        let outcome = match (self.witness, self.aborted) {
            (Some(w), _) => FindOutcome::Witness(w),
            (None, true) => FindOutcome::BudgetExhausted,
            (None, false) => FindOutcome::CertifiedNone,
        };
        FindConfigResult {
            outcome,
            nodes_expanded: self.nodes,
        }
    }
}

/// Branch-and-bound search for `k` vertices spanning at least `l`
/// edges. A witness is the union of its spanned edges, so the search
/// grows edge sets under a vertex budget; roots are tried densest
/// neighborhood first (sum of pair degrees over the root edge).
/// `CertifiedNone` only on exhaustion.
pub fn find_config(h: &Hypergraph3, k: usize, l: usize, budget: u64) -> FindConfigResult {
    assert!(k >= 4 && l >= 2, "witness shapes start at (4, 2)");
    let mut search = ConfigSearch::new(h, k, l, budget);
    let mut roots: Vec<EdgeId> = (0..h.m()).collect();
    let density = |id: EdgeId| {
        let e = h.edge(id);
        h.pair_degree(e[0], e[1]) + h.pair_degree(e[0], e[2]) + h.pair_degree(e[1], e[2])
    };
    roots.sort_by_key(|&id| (std::cmp::Reverse(density(id)), id));
    for root in roots {
        if search.aborted || search.witness.is_some() {
            break;
        }
        search.nodes += 1;
        if search.nodes > search.budget {
            search.aborted = true;
            break;
        }
        let added = search.push_edge(root);
        if search.inside >= search.l {
            search.record_witness();
        } else {
            // Every subset is rooted at its smallest edge id, so
            // extensions only look at larger ids.
            search.descend(root + 1, usize::MAX);
        }
        search.pop_edge(&added);
    }
    search.result()
}

/// Like [`find_config`], restricted to witnesses spanning the given
/// edge. Used for incremental re-checks after an edge insertion: a
/// witness that was not present before must span the new edge.
pub fn find_config_containing(
    h: &Hypergraph3,
    root: EdgeId,
    k: usize,
    l: usize,
    budget: u64,
) -> FindConfigResult {
    assert!(k >= 4 && l >= 2, "witness shapes start at (4, 2)");
    let mut search = ConfigSearch::new(h, k, l, budget);
    search.nodes += 1;
    let added = search.push_edge(root);
    if search.inside >= search.l {
        search.record_witness();
    } else {
        search.descend(0, root);
    }
    search.pop_edge(&added);
    search.result()
}

/// Which determining triple of a kept configuration an auxiliary face
/// is: 1 = {v2,v3,v1}, 2 = {v2,v3,v5}, 3 = {v3,v1,v5},
/// 4 = {v2,v1,v5} (the three degree-1 vertices).
pub type FaceCase = u8;

#[derive(Debug, Clone)]
pub struct FaceEntry {
    pub case: FaceCase,
    pub configs: Vec<usize>,
}

/// The auxiliary 4-partite 3-uniform hypergraph built from kept
/// configurations after the 6-class split. Aux vertices are host
/// vertices in the subclasses V2, V3, V1, V5; each kept configuration
/// registers the 4 faces of a clique on its subclass representatives.
#[derive(Debug, Clone)]
pub struct AuxCliqueHypergraph {
    /// Host vertex -> 6-class id (2 * class + split bit).
    pub subclass: Vec<u8>,
    pub kept: Vec<SixThreeConfig>,
    /// Per kept configuration: its aux clique (v2, v3, v1, v5).
    pub cliques: Vec<[usize; 4]>,
    /// Back-map from sorted aux faces to contributing configurations.
    pub faces: HashMap<[usize; 3], FaceEntry>,
    /// Set when a degree-1 triple reached multiplicity 3 but the
    /// witness audit could not complete.
    pub case4_overflow: bool,
}

#[derive(Debug)]
pub enum AuxOutcome {
    Aux(AuxCliqueHypergraph),
    /// A degree-1 triple of multiplicity 3 plus one incident edge
    /// already yields a (14, 10) witness.
    Witness1410(ConfigWitness),
}

fn sorted3(mut t: [usize; 3]) -> [usize; 3] {
    t.sort_unstable();
    t
}

/// Splits each vertex class in two from the seed and builds the
/// auxiliary clique hypergraph; see [`build_aux_with_split`].
pub fn build_aux(h: &Hypergraph3, seed: u64) -> Result<AuxOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bits: Vec<u8> = (0..h.n()).map(|_| rng.gen_range(0..2u8)).collect();
    build_aux_with_split(h, &bits)
}

/// Builds the auxiliary clique hypergraph from an explicit split
/// (`bits[v]` picks the subclass of `v` within its class).
///
/// A configuration is kept when its degree-2 vertices land in V0, V3,
/// V4 and its degree-1 vertices in V1, V2, V5; each vertex follows the
/// split independently, so a fraction of about (1/2)^6 of all
/// configurations is kept. Three kept configurations sharing their
/// degree-1 triple short-circuit into a (14, 10) witness.
pub fn build_aux_with_split(h: &Hypergraph3, bits: &[u8]) -> Result<AuxOutcome> {
    let Some(part) = h.partition() else {
        return Err(Error::NotTripartite);
    };
    if part.iter().max().map_or(0, |&c| c + 1) != 3 {
        return Err(Error::NotTripartite);
    }
    if let Some((pair, degree)) = h.nonlinear_pair() {
        return Err(Error::NotLinear { pair, degree });
    }
    assert_eq!(bits.len(), h.n(), "one split bit per vertex");
    let subclass: Vec<u8> = (0..h.n())
        .map(|v| 2 * part[v] as u8 + (bits[v] & 1))
        .collect();

    let configs = enumerate_63(h, None)?;
    let mut kept: Vec<SixThreeConfig> = Vec::new();
    let mut cliques: Vec<[usize; 4]> = Vec::new();
    let mut faces: HashMap<[usize; 3], FaceEntry> = HashMap::new();
    let mut case4_overflow = false;

    for cfg in configs {
        // Role of each class: (degree-2 vertex, degree-1 vertex).
        let mut d2 = [usize::MAX; 3];
        let mut d1 = [usize::MAX; 3];
        for &v in &cfg.deg2 {
            d2[part[v]] = v;
        }
        for &v in &cfg.deg1 {
            d1[part[v]] = v;
        }
        debug_assert!(d2.iter().all(|&v| v != usize::MAX));
        debug_assert!(d1.iter().all(|&v| v != usize::MAX));
        let wanted = subclass[d2[0]] == 0
            && subclass[d1[0]] == 1
            && subclass[d1[1]] == 2
            && subclass[d2[1]] == 3
            && subclass[d2[2]] == 4
            && subclass[d1[2]] == 5;
        if !wanted {
            continue;
        }
        let (v1, v2, v3, v5) = (d1[0], d1[1], d2[1], d1[2]);
        let idx = kept.len();
        kept.push(cfg);
        cliques.push([v2, v3, v1, v5]);
        for (case, triple) in [
            (1u8, sorted3([v2, v3, v1])),
            (2, sorted3([v2, v3, v5])),
            (3, sorted3([v3, v1, v5])),
            (4, sorted3([v2, v1, v5])),
        ] {
            let entry = faces.entry(triple).or_insert(FaceEntry {
                case,
                configs: Vec::new(),
            });
            debug_assert_eq!(entry.case, case, "subclass pattern fixes the case");
            entry.configs.push(idx);
            if case == 4 && entry.configs.len() == 3 {
                let member_ids = entry.configs.clone();
                match escape_1410(h, &kept, &member_ids) {
                    Some(w) => return Ok(AuxOutcome::Witness1410(w)),
                    None => case4_overflow = true,
                }
            }
        }
    }

    // In a linear host the recovery walk from a case 1-3 triple is
    // forced, so those faces identify their configuration uniquely.
    for entry in faces.values() {
        if entry.case != 4 {
            assert!(
                entry.configs.len() <= 1,
                "case {} face with multiplicity {}",
                entry.case,
                entry.configs.len()
            );
        }
    }

    Ok(AuxOutcome::Aux(AuxCliqueHypergraph {
        subclass,
        kept,
        cliques,
        faces,
        case4_overflow,
    }))
}

/// Three configurations sharing their degree-1 triple span at most 12
/// vertices and 9 edges; one more incident edge lifts that to a
/// (14, 10) witness. The edge-distinctness audit runs computationally.
fn escape_1410(
    h: &Hypergraph3,
    kept: &[SixThreeConfig],
    members: &[usize],
) -> Option<ConfigWitness> {
    let mut ids: Vec<EdgeId> = members
        .iter()
        .flat_map(|&i| kept[i].edges.into_iter())
        .collect();
    ids.sort_unstable();
    ids.dedup();
    let mut verts: Vec<usize> = members
        .iter()
        .flat_map(|&i| kept[i].vertices().into_iter())
        .collect();
    verts.sort_unstable();
    verts.dedup();
    if ids.len() < 9 || verts.len() > 12 {
        return None;
    }
    let extra = (0..h.m()).find(|&id| {
        !ids.contains(&id) && h.edge(id).iter().any(|v| verts.binary_search(v).is_ok())
    })?;
    let mut all_ids = ids;
    all_ids.push(extra);
    let mut all_verts = verts;
    all_verts.extend(h.edge(extra));
    all_verts.sort_unstable();
    all_verts.dedup();
    ConfigWitness::new(h, all_verts, &all_ids, 14, 10).ok()
}

/// Enumerates the cliques of the aux hypergraph in lexicographic order:
/// quadruples (v2, v3, v1, v5) whose 4 faces are all registered.
fn aux_cliques(aux: &AuxCliqueHypergraph) -> Vec<[usize; 4]> {
    let mut by_v2v3: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (triple, entry) in &aux.faces {
        if entry.case == 2 {
            let mut v2 = usize::MAX;
            let mut v3 = usize::MAX;
            let mut v5 = usize::MAX;
            for &v in triple {
                match aux.subclass[v] {
                    2 => v2 = v,
                    3 => v3 = v,
                    5 => v5 = v,
                    _ => unreachable!("case-2 faces hit V2, V3, V5"),
                }
            }
            by_v2v3.entry((v2, v3)).or_default().push(v5);
        }
    }
    for list in by_v2v3.values_mut() {
        list.sort_unstable();
    }
    let mut case1: Vec<([usize; 3], (usize, usize, usize))> = aux
        .faces
        .iter()
        .filter(|(_, e)| e.case == 1)
        .map(|(&triple, _)| {
            let mut v2 = usize::MAX;
            let mut v3 = usize::MAX;
            let mut v1 = usize::MAX;
            for &v in &triple {
                match aux.subclass[v] {
                    2 => v2 = v,
                    3 => v3 = v,
                    1 => v1 = v,
                    _ => unreachable!("case-1 faces hit V2, V3, V1"),
                }
            }
            (triple, (v2, v3, v1))
        })
        .collect();
    case1.sort_unstable();
    let mut out = Vec::new();
    for (_, (v2, v3, v1)) in case1 {
        let Some(v5s) = by_v2v3.get(&(v2, v3)) else {
            continue;
        };
        for &v5 in v5s {
            if aux.faces.contains_key(&sorted3([v3, v1, v5]))
                && aux.faces.contains_key(&sorted3([v2, v1, v5]))
            {
                out.push([v2, v3, v1, v5]);
            }
        }
    }
    out
}

/// Counts all cliques of the aux hypergraph and the size of a greedy
/// maximal edge-disjoint clique packing.
pub fn count_k43(aux: &AuxCliqueHypergraph) -> (u64, u64) {
    let cliques = aux_cliques(aux);
    let mut used: std::collections::HashSet<[usize; 3]> = Default::default();
    let mut packed = 0u64;
    for &[v2, v3, v1, v5] in &cliques {
        let fs = [
            sorted3([v2, v3, v1]),
            sorted3([v2, v3, v5]),
            sorted3([v3, v1, v5]),
            sorted3([v2, v1, v5]),
        ];
        if fs.iter().all(|f| !used.contains(f)) {
            used.extend(fs);
            packed += 1;
        }
    }
    (cliques.len() as u64, packed)
}

/// Scans aux cliques whose four faces decode to four distinct
/// configurations, one per case, and returns their union once it
/// passes the audit: at most 14 distinct vertices, at least 10
/// distinct edges.
pub fn assemble_1410(h: &Hypergraph3, aux: &AuxCliqueHypergraph) -> Option<ConfigWitness> {
    for &[v2, v3, v1, v5] in &aux_cliques(aux) {
        let lookup = |t: [usize; 3]| aux.faces.get(&sorted3(t)).map(|e| &e.configs);
        let (Some(c1), Some(c2), Some(c3), Some(c4)) = (
            lookup([v2, v3, v1]),
            lookup([v2, v3, v5]),
            lookup([v3, v1, v5]),
            lookup([v2, v1, v5]),
        ) else {
            continue;
        };
        for &f1 in c1 {
            for &f2 in c2 {
                for &f3 in c3 {
                    for &f4 in c4 {
                        let members = [f1, f2, f3, f4];
                        let mut uniq = members.to_vec();
                        uniq.sort_unstable();
                        uniq.dedup();
                        if uniq.len() != 4 {
                            continue;
                        }
                        let mut ids: Vec<EdgeId> = members
                            .iter()
                            .flat_map(|&i| aux.kept[i].edges.into_iter())
                            .collect();
                        ids.sort_unstable();
                        ids.dedup();
                        let mut verts: Vec<usize> = members
                            .iter()
                            .flat_map(|&i| aux.kept[i].vertices().into_iter())
                            .collect();
                        verts.sort_unstable();
                        verts.dedup();
                        if ids.len() < 10 || verts.len() > 14 {
                            continue;
                        }
                        if let Ok(w) = ConfigWitness::new(h, verts, &ids, 14, 10) {
                            return Some(w);
                        }
                    }
                }
            }
        }
    }
    None
}

/// A 9-vertex/5-edge gadget: two configurations overlapping on two
/// degree-1 vertices, minus one of the two private degree-1 edges.
#[derive(Debug, Clone)]
struct Gadget {
    edge_ids: Vec<EdgeId>,
    triple: [usize; 3],
}

/// Pairs configurations overlapping on two degree-1 vertices, removes a
/// private degree-1 edge to get 9-vertex/5-edge gadgets with three
/// degree-1 vertices, and hashes gadgets by that triple. Two
/// edge-disjoint gadgets on the same triple union into a core on at
/// most 15 vertices. A `None` is a search failure within the budget,
/// not a certificate of absence.
pub fn find_core15(h: &Hypergraph3, budget: u64) -> Result<Option<CoreCertificate>> {
    let configs = enumerate_63(h, None)?;
    // Bucket configurations by each pair of degree-1 vertices.
    let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, cfg) in configs.iter().enumerate() {
        let [a, b, c] = cfg.deg1;
        for (x, y) in [(a, b), (a, c), (b, c)] {
            by_pair.entry((x, y)).or_default().push(i);
        }
    }
    let mut keys: Vec<(usize, usize)> = by_pair.keys().copied().collect();
    keys.sort_unstable();

    let mut gadgets: HashMap<[usize; 3], Vec<Gadget>> = HashMap::new();
    let mut steps = 0u64;
    for key in keys {
        let bucket = &by_pair[&key];
        for ai in 0..bucket.len() {
            for bi in (ai + 1)..bucket.len() {
                steps += 1;
                if steps > budget {
                    return Ok(None);
                }
                let (f, g) = (&configs[bucket[ai]], &configs[bucket[bi]]);
                let shared = [key.0, key.1];
                let fv = f.vertices();
                let gv = g.vertices();
                let overlap = fv.iter().filter(|v| gv.binary_search(v).is_ok()).count();
                if overlap != 2 {
                    continue;
                }
                // Drop the edge holding one side's private degree-1
                // vertex; both choices yield a gadget.
                for (own, other) in [(f, g), (g, f)] {
                    let Some(gadget) = make_gadget(h, own, other, &shared) else {
                        continue;
                    };
                    let entry = gadgets.entry(gadget.triple).or_default();
                    for old in entry.iter() {
                        if old.edge_ids.iter().all(|id| !gadget.edge_ids.contains(id)) {
                            let mut ids = old.edge_ids.clone();
                            ids.extend(&gadget.edge_ids);
                            ids.sort_unstable();
                            debug_assert!(is_core(h, &ids));
                            if let Ok(cert) = CoreCertificate::new(h, &ids) {
                                if cert.order() <= 15 {
                                    return Ok(Some(cert));
                                }
                            }
                        }
                    }
                    entry.push(gadget);
                }
            }
        }
    }
    Ok(None)
}

fn make_gadget(
    h: &Hypergraph3,
    own: &SixThreeConfig,
    other: &SixThreeConfig,
    shared: &[usize; 2],
) -> Option<Gadget> {
    let private = own.deg1.iter().copied().find(|v| !shared.contains(v))?;
    let removed = own
        .edges
        .iter()
        .copied()
        .find(|&id| h.edge(id).contains(&private))?;
    let mut edge_ids: Vec<EdgeId> = own
        .edges
        .iter()
        .chain(other.edges.iter())
        .copied()
        .filter(|&id| id != removed)
        .collect();
    edge_ids.sort_unstable();
    edge_ids.dedup();
    if edge_ids.len() != 5 {
        return None;
    }
    // Degree-1 triple: the removed edge's degree-2 endpoints plus the
    // other side's private degree-1 vertex.
    let mut triple: Vec<usize> = h
        .edge(removed)
        .into_iter()
        .filter(|&v| v != private)
        .collect();
    let other_private = other.deg1.iter().copied().find(|v| !shared.contains(v))?;
    triple.push(other_private);
    triple.sort_unstable();
    Some(Gadget {
        edge_ids,
        triple: [triple[0], triple[1], triple[2]],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core_search::{min_core, MinCoreOutcome};

    fn k43_minus_e() -> Hypergraph3 {
        Hypergraph3::build(4, &[[0, 1, 2], [0, 1, 3], [0, 2, 3]]).unwrap()
    }

    #[test]
    fn linearize_k43_minus_e_keeps_one_edge() {
        let (lin, fraction) = linearize(&k43_minus_e());
        assert_eq!(lin.m(), 1);
        assert_eq!(lin.edges(), &[[0, 1, 2]]);
        assert!((fraction - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn linearize_is_identity_on_linear_input() {
        let h = Hypergraph3::build(9, &[[0, 1, 2], [0, 3, 4], [1, 3, 5]]).unwrap();
        let (lin, fraction) = linearize(&h);
        assert_eq!(&lin, &h);
        assert_eq!(fraction, 1.0);
        assert!(lin.is_linear());
    }

    #[test]
    fn linearize_is_idempotent() {
        let h = Hypergraph3::build(
            8,
            &[[0, 1, 2], [0, 1, 3], [0, 2, 3], [4, 5, 6], [4, 5, 7], [2, 4, 6]],
        )
        .unwrap();
        let (once, _) = linearize(&h);
        let (twice, f) = linearize(&once);
        assert_eq!(&once, &twice);
        assert_eq!(f, 1.0);
        assert!(once.is_linear());
    }

    #[test]
    fn enumerate_63_basic() {
        let h = Hypergraph3::build(6, &[[0, 1, 2], [0, 3, 4], [1, 3, 5]]).unwrap();
        let cfgs = enumerate_63(&h, None).unwrap();
        assert_eq!(cfgs.len(), 1);
        assert_eq!(cfgs[0].deg2, [0, 1, 3]);
        assert_eq!(cfgs[0].deg1, [2, 4, 5]);
    }

    #[test]
    fn enumerate_63_on_matching_is_empty() {
        let h = Hypergraph3::build(9, &[[0, 1, 2], [3, 4, 5], [6, 7, 8]]).unwrap();
        assert!(enumerate_63(&h, None).unwrap().is_empty());
    }

    #[test]
    fn enumerate_63_rejects_nonlinear() {
        let err = enumerate_63(&k43_minus_e(), None).unwrap_err();
        assert!(matches!(err, Error::NotLinear { .. }));
    }

    #[test]
    fn find_config_on_k43_minus_e() {
        let res = find_config(&k43_minus_e(), 4, 3, 10_000);
        match res.outcome {
            FindOutcome::Witness(w) => {
                assert_eq!(w.vertices, vec![0, 1, 2, 3]);
                assert_eq!(w.edges.len(), 3);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn find_config_certifies_absence() {
        let h = Hypergraph3::build(9, &[[0, 1, 2], [3, 4, 5], [6, 7, 8]]).unwrap();
        let res = find_config(&h, 6, 3, 10_000);
        assert_eq!(res.outcome, FindOutcome::CertifiedNone);
    }

    #[test]
    fn find_config_budget() {
        let mut triples = Vec::new();
        for a in 0..5 {
            for b in 5..10 {
                for c in 10..15 {
                    triples.push([a, b, c]);
                }
            }
        }
        let h = Hypergraph3::build(15, &triples).unwrap();
        let res = find_config(&h, 14, 120, 5);
        assert_eq!(res.outcome, FindOutcome::BudgetExhausted);
        assert!(res.nodes_expanded >= 5);
    }

    /// Ten edges on 14 vertices: four configurations through one
    /// clique, with the two forced shared edges.
    pub(crate) fn fig4_instance() -> (Hypergraph3, Vec<u8>) {
        // a1=0 a2=1 a3=2 a5=3 | w0=4 w4=5 c2=6 | p0=7 p5=8 | q1=9 q4=10
        // | r0=11 r3=12 r4=13
        let edges = [
            [0, 2, 5],   // {a1,a3,w4} shared by F1 and F3
            [4, 6, 5],   // {w0,c2,w4} F3
            [4, 2, 3],   // {w0,a3,a5} shared by F2 and F3
            [7, 1, 5],   // {p0,a2,w4} F1
            [7, 2, 8],   // {p0,a3,p5} F1
            [9, 2, 10],  // {q1,a3,q4} F2
            [4, 1, 10],  // {w0,a2,q4} F2
            [0, 12, 13], // {a1,r3,r4} F4
            [11, 1, 13], // {r0,a2,r4} F4
            [11, 12, 3], // {r0,r3,a5} F4
        ];
        // class 0: a1,w0,p0,q1,r0 | class 1: a2,a3,c2,r3 | class 2: a5,w4,p5,q4,r4
        let part = vec![0, 1, 1, 2, 0, 2, 1, 0, 2, 0, 2, 0, 1, 2];
        let h = Hypergraph3::build(14, &edges)
            .unwrap()
            .with_partition(part.clone())
            .unwrap();
        // Degree-2 vertices sit in V0/V3/V4 (bit 0 in classes 0 and 2,
        // bit 1 in class 1); degree-1 vertices in V1/V2/V5.
        let deg2 = [2usize, 4, 5, 7, 10, 11, 12, 13];
        let bits: Vec<u8> = (0..14)
            .map(|v| {
                let two = deg2.contains(&v);
                match part[v] {
                    1 => u8::from(two),
                    _ => u8::from(!two),
                }
            })
            .collect();
        (h, bits)
    }

    #[test]
    fn fig4_instance_is_linear_and_has_four_kept_configs() {
        let (h, bits) = fig4_instance();
        assert!(h.is_linear());
        match build_aux_with_split(&h, &bits).unwrap() {
            AuxOutcome::Aux(aux) => {
                assert_eq!(aux.kept.len(), 4);
                assert!(!aux.case4_overflow);
                let (total, packed) = count_k43(&aux);
                assert_eq!(total, 5, "4 registered cliques plus 1 rainbow");
                // The rainbow clique is enumerated first and its faces
                // block each registered clique.
                assert_eq!(packed, 1);
            }
            AuxOutcome::Witness1410(_) => panic!("no degree-1 triple reaches multiplicity 3"),
        }
    }

    #[test]
    fn assemble_1410_on_fig4() {
        let (h, bits) = fig4_instance();
        let AuxOutcome::Aux(aux) = build_aux_with_split(&h, &bits).unwrap() else {
            panic!("aux build short-circuited");
        };
        let w = assemble_1410(&h, &aux).unwrap();
        assert_eq!(w.vertices.len(), 14);
        assert_eq!(w.edges.len(), 10);
    }

    #[test]
    fn assemble_1410_none_without_rainbow() {
        // One kept configuration: a clique exists but all faces decode
        // to the same configuration.
        let h = Hypergraph3::build(6, &[[0, 2, 4], [0, 3, 5], [1, 2, 5]])
            .unwrap()
            .with_partition(vec![0, 0, 1, 1, 2, 2])
            .unwrap();
        // deg2 = {0,2,5}: bits put 0 -> V0, 2 -> V3, 5 -> V4.
        let bits = vec![0, 1, 1, 0, 1, 0];
        let AuxOutcome::Aux(aux) = build_aux_with_split(&h, &bits).unwrap() else {
            panic!("short-circuit impossible with one configuration");
        };
        assert_eq!(aux.kept.len(), 1);
        assert_eq!(aux.faces.len(), 4);
        let (total, packed) = count_k43(&aux);
        assert_eq!((total, packed), (1, 1));
        assert!(assemble_1410(&h, &aux).is_none());
    }

    #[test]
    fn build_aux_keeps_nothing_on_all_zero_split_without_matching_configs() {
        let h = Hypergraph3::build(6, &[[0, 2, 4], [0, 3, 5], [1, 2, 5]])
            .unwrap()
            .with_partition(vec![0, 0, 1, 1, 2, 2])
            .unwrap();
        let AuxOutcome::Aux(aux) = build_aux_with_split(&h, &[0; 6]).unwrap() else {
            panic!("nothing kept, nothing to short-circuit");
        };
        assert!(aux.kept.is_empty());
        assert!(aux.faces.is_empty());
    }

    #[test]
    fn build_aux_rejects_untripartite_or_nonlinear() {
        let plain = Hypergraph3::build(6, &[[0, 2, 4]]).unwrap();
        assert!(matches!(
            build_aux(&plain, 0).unwrap_err(),
            Error::NotTripartite
        ));
        let nonlinear = Hypergraph3::build(6, &[[0, 2, 4], [0, 2, 5]])
            .unwrap()
            .with_partition(vec![0, 0, 1, 1, 2, 2])
            .unwrap();
        assert!(matches!(
            build_aux(&nonlinear, 0).unwrap_err(),
            Error::NotLinear { .. }
        ));
    }

    /// Two 9-vertex/5-edge gadgets sharing their degree-1 triple
    /// {0, 1, 9}, embedded as four full configurations.
    pub(crate) fn fig5_instance() -> Hypergraph3 {
        Hypergraph3::build(
            17,
            &[
                [0, 1, 2],    // A (removed edge of gadget 1)
                [0, 3, 4],    // A
                [1, 3, 5],    // A
                [4, 6, 7],    // B
                [5, 6, 8],    // B
                [7, 8, 9],    // B
                [0, 9, 16],   // C (removed edge of gadget 2)
                [0, 10, 11],  // C
                [9, 10, 12],  // C
                [11, 13, 14], // D
                [12, 13, 15], // D
                [1, 14, 15],  // D
            ],
        )
        .unwrap()
    }

    #[test]
    fn find_core15_on_fig5() {
        let h = fig5_instance();
        assert!(h.is_linear());
        let cert = find_core15(&h, 1_000_000).unwrap().unwrap();
        assert!(cert.order() <= 15);
        assert_eq!(cert.size(), 10);
        // Vertex 16 only supports the removed edge and stays outside.
        assert!(!cert.vertices.contains(&16));
        let ids: Vec<EdgeId> = cert.edges.iter().map(|&e| h.edge_id(e).unwrap()).collect();
        assert!(is_core(&h, &ids));
        // Cross-check against the exhaustive search.
        let res = min_core(&h, 15, 10_000_000);
        assert!(matches!(res.outcome, MinCoreOutcome::Smallest(_)));
    }

    #[test]
    fn find_core15_none_on_matching() {
        let h = Hypergraph3::build(9, &[[0, 1, 2], [3, 4, 5], [6, 7, 8]]).unwrap();
        assert!(find_core15(&h, 1_000).unwrap().is_none());
    }
}
