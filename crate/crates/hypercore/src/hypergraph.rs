//! Core data model: 3-uniform hypergraphs with degree and pair-degree
//! queries, induced subgraphs, and tripartition handling.

use std::collections::HashMap;
use std::sync::OnceLock;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of an edge in the host's normalized edge list.
pub type EdgeId = usize;

/// A 3-uniform hypergraph on dense vertex indices `0..n`.
///
/// Edges are unordered vertex triples, stored sorted and deduplicated.
/// An optional partition assigns each vertex a class label; when the
/// partition has exactly 3 classes every edge is transversal (one vertex
/// per class). The structure is immutable after construction and safe to
/// share across threads.
#[derive(Debug)]
pub struct Hypergraph3 {
    n: usize,
    edges: Vec<[usize; 3]>,
    partition: Option<Vec<usize>>,
    /// Edge ids incident to each vertex.
    incidence: Vec<Vec<EdgeId>>,
    /// Built lazily on first pair-degree query.
    pair_degrees: OnceLock<HashMap<(usize, usize), usize>>,
}

impl Clone for Hypergraph3 {
    fn clone(&self) -> Self {
        Hypergraph3 {
            n: self.n,
            edges: self.edges.clone(),
            partition: self.partition.clone(),
            incidence: self.incidence.clone(),
            pair_degrees: OnceLock::new(),
        }
    }
}

impl PartialEq for Hypergraph3 {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges && self.partition == other.partition
    }
}
impl Eq for Hypergraph3 {}

fn normalize_triple(t: [usize; 3]) -> [usize; 3] {
    let mut t = t;
    t.sort_unstable();
    t
}

impl Hypergraph3 {
    /// Builds a normalized hypergraph from raw triples.
    ///
    /// Triples are sorted internally and the edge list is sorted
    /// lexicographically. Out-of-range vertices, repeated vertices within
    /// a triple, and duplicate edges are rejected.
    pub fn build(n: usize, triples: &[[usize; 3]]) -> Result<Self> {
        let mut edges = Vec::with_capacity(triples.len());
        for &t in triples {
            for &v in &t {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            let t = normalize_triple(t);
            if t[0] == t[1] || t[1] == t[2] {
                return Err(Error::RepeatedVertex { edge: t });
            }
            edges.push(t);
        }
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateEdge { edge: w[0] });
            }
        }
        let mut incidence = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                incidence[v].push(i);
            }
        }
        Ok(Hypergraph3 {
            n,
            edges,
            partition: None,
            incidence,
            pair_degrees: OnceLock::new(),
        })
    }

    /// Attaches a class label per vertex. With exactly 3 classes, every
    /// edge must be transversal.
    pub fn with_partition(mut self, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::PartitionLength {
                got: labels.len(),
                n: self.n,
            });
        }
        let classes = labels.iter().max().map_or(0, |&m| m + 1);
        if classes == 3 {
            for &e in &self.edges {
                let mut seen = [false; 3];
                for &v in &e {
                    seen[labels[v]] = true;
                }
                if seen != [true; 3] {
                    return Err(Error::NonTransversalEdge { edge: e });
                }
            }
        }
        self.partition = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[[usize; 3]] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> [usize; 3] {
        self.edges[id]
    }

    pub fn partition(&self) -> Option<&[usize]> {
        self.partition.as_deref()
    }

    /// Class label of `v`, when a partition is present.
    pub fn class_of(&self, v: usize) -> Option<usize> {
        self.partition.as_ref().map(|p| p[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    /// Edge ids incident to `v`.
    pub fn incident_edges(&self, v: usize) -> &[EdgeId] {
        &self.incidence[v]
    }

    pub fn has_edge(&self, t: [usize; 3]) -> bool {
        self.edges.binary_search(&normalize_triple(t)).is_ok()
    }

    pub fn edge_id(&self, t: [usize; 3]) -> Option<EdgeId> {
        self.edges.binary_search(&normalize_triple(t)).ok()
    }

    fn pair_degree_map(&self) -> &HashMap<(usize, usize), usize> {
        self.pair_degrees.get_or_init(|| {
            let mut map = HashMap::new();
            for e in &self.edges {
                for &(a, b) in &[(e[0], e[1]), (e[0], e[2]), (e[1], e[2])] {
                    *map.entry((a, b)).or_insert(0) += 1;
                }
            }
            map
        })
    }

    /// Number of edges containing both `u` and `v`.
    ///
    /// Panics if `u == v`.
    pub fn pair_degree(&self, u: usize, v: usize) -> usize {
        assert_ne!(u, v, "pair_degree requires two distinct vertices");
        let key = (u.min(v), u.max(v));
        self.pair_degree_map().get(&key).copied().unwrap_or(0)
    }

    /// All unordered pairs with positive pair degree, in sorted order.
    pub fn covered_pairs(&self) -> Vec<((usize, usize), usize)> {
        let mut v: Vec<_> = self
            .pair_degree_map()
            .iter()
            .map(|(&k, &d)| (k, d))
            .collect();
        v.sort_unstable();
        v
    }

    /// True when no two edges share two vertices (all pair degrees <= 1).
    pub fn is_linear(&self) -> bool {
        self.pair_degree_map().values().all(|&d| d <= 1)
    }

    /// First pair of degree >= 2, if any.
    pub fn nonlinear_pair(&self) -> Option<((usize, usize), usize)> {
        self.covered_pairs().into_iter().find(|&(_, d)| d >= 2)
    }

    /// Assigns each vertex one of 3 classes and drops non-transversal
    /// edges. An existing 3-class partition is honored as the assignment,
    /// so an already-tripartite input is returned unchanged; otherwise
    /// classes are drawn uniformly and independently from the seed, and
    /// each edge survives with probability 2/9.
    pub fn random_tripartition(&self, seed: u64) -> Hypergraph3 {
        let labels: Vec<usize> = match &self.partition {
            Some(p) if p.iter().max().map_or(0, |&m| m + 1) == 3 => p.clone(),
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..self.n).map(|_| rng.gen_range(0..3)).collect()
            }
        };
        let kept: Vec<[usize; 3]> = self
            .edges
            .iter()
            .copied()
            .filter(|e| {
                let mut seen = [false; 3];
                for &v in e {
                    seen[labels[v]] = true;
                }
                seen == [true; 3]
            })
            .collect();
        Hypergraph3::build(self.n, &kept)
            .expect("edges of a valid hypergraph stay valid")
            .with_partition(labels)
            .expect("only transversal edges kept")
    }

    /// Induced subgraph on `s`, with vertices relabeled `0..s.len()`.
    ///
    /// Returns the subgraph and the retained-index map (new index ->
    /// original vertex). Partition labels carry over. Panics if `s`
    /// contains an out-of-range or repeated vertex.
    pub fn induced(&self, s: &[usize]) -> (Hypergraph3, Vec<usize>) {
        let mut sorted: Vec<usize> = s.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), s.len(), "induced set has repeated vertices");
        let mut new_index = vec![usize::MAX; self.n];
        for (i, &v) in sorted.iter().enumerate() {
            assert!(v < self.n, "induced set vertex {v} out of range");
            new_index[v] = i;
        }
        let mut kept = Vec::new();
        for e in &self.edges {
            if e.iter().all(|&v| new_index[v] != usize::MAX) {
                kept.push([new_index[e[0]], new_index[e[1]], new_index[e[2]]]);
            }
        }
        let sub = Hypergraph3::build(sorted.len(), &kept).expect("induced edges stay valid");
        let sub = match &self.partition {
            Some(p) => sub
                .with_partition(sorted.iter().map(|&v| p[v]).collect())
                .unwrap_or_else(|_| {
                    // An induced subgraph of a tripartite host keeps only
                    // transversal edges, so this branch is unreachable.
                    unreachable!("induced partition stays consistent")
                }),
            None => sub,
        };
        (sub, sorted)
    }
}

/// An edge subset of a host hypergraph in which every covered vertex has
/// degree at least 2. `vertices` is exactly the set covered by `edges`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreCertificate {
    pub vertices: Vec<usize>,
    pub edges: Vec<[usize; 3]>,
}

impl CoreCertificate {
    /// Validates the defining invariants and derives the covered vertex
    /// set. Fails on an empty subset, an edge missing from the host, or a
    /// covered vertex of degree < 2.
    pub fn new(host: &Hypergraph3, edge_ids: &[EdgeId]) -> std::result::Result<Self, String> {
        if edge_ids.is_empty() {
            return Err("a core certificate needs at least one edge".into());
        }
        let mut ids: Vec<EdgeId> = edge_ids.to_vec();
        ids.sort_unstable();
        ids.dedup();
        let mut deg: HashMap<usize, usize> = HashMap::new();
        let mut edges = Vec::with_capacity(ids.len());
        for &id in &ids {
            if id >= host.m() {
                return Err(format!("edge id {id} not in host"));
            }
            let e = host.edge(id);
            for &v in &e {
                *deg.entry(v).or_insert(0) += 1;
            }
            edges.push(e);
        }
        let mut vertices: Vec<usize> = deg.keys().copied().collect();
        vertices.sort_unstable();
        for &v in &vertices {
            if deg[&v] < 2 {
                return Err(format!("vertex {v} has degree {} < 2", deg[&v]));
            }
        }
        let cert = CoreCertificate { vertices, edges };
        debug_assert!(cert.edges.len() * 3 >= cert.vertices.len() * 2);
        Ok(cert)
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }
}

/// `k` vertices spanning at least `l` edges of the host, with the
/// spanning edge list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigWitness {
    pub vertices: Vec<usize>,
    pub edges: Vec<[usize; 3]>,
    pub k: usize,
    pub l: usize,
}

impl ConfigWitness {
    /// Validates shape: every edge inside the vertex set, at most `k`
    /// vertices, at least `l` edges, all edges present in the host.
    pub fn new(
        host: &Hypergraph3,
        vertices: Vec<usize>,
        edge_ids: &[EdgeId],
        k: usize,
        l: usize,
    ) -> std::result::Result<Self, String> {
        let mut vs = vertices;
        vs.sort_unstable();
        vs.dedup();
        if vs.len() > k {
            return Err(format!("{} vertices exceed the declared k={k}", vs.len()));
        }
        let mut ids: Vec<EdgeId> = edge_ids.to_vec();
        ids.sort_unstable();
        ids.dedup();
        if ids.len() < l {
            return Err(format!("{} edges fall short of the declared l={l}", ids.len()));
        }
        let mut edges = Vec::with_capacity(ids.len());
        for &id in &ids {
            if id >= host.m() {
                return Err(format!("edge id {id} not in host"));
            }
            let e = host.edge(id);
            if !e.iter().all(|v| vs.binary_search(v).is_ok()) {
                return Err(format!("edge {e:?} leaves the vertex set"));
            }
            edges.push(e);
        }
        Ok(ConfigWitness {
            vertices: vs,
            edges,
            k,
            l,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn k43_minus_e() -> Hypergraph3 {
        Hypergraph3::build(4, &[[0, 1, 2], [0, 1, 3], [0, 2, 3]]).unwrap()
    }

    #[test]
    fn build_k43_minus_e() {
        let h = k43_minus_e();
        assert_eq!(h.n(), 4);
        assert_eq!(h.m(), 3);
    }

    #[test]
    fn build_empty() {
        let h = Hypergraph3::build(3, &[]).unwrap();
        assert_eq!(h.m(), 0);
    }

    #[test]
    fn build_rejects_duplicate_edge() {
        let err = Hypergraph3::build(5, &[[0, 1, 2], [2, 1, 0]]).unwrap_err();
        assert!(matches!(err, Error::DuplicateEdge { .. }));
    }

    #[test]
    fn build_rejects_repeated_vertex() {
        let err = Hypergraph3::build(5, &[[0, 1, 1]]).unwrap_err();
        assert!(matches!(err, Error::RepeatedVertex { .. }));
    }

    #[test]
    fn build_rejects_out_of_range() {
        let err = Hypergraph3::build(3, &[[0, 1, 3]]).unwrap_err();
        assert!(matches!(err, Error::VertexOutOfRange { .. }));
    }

    #[test]
    fn pair_degrees_on_k43_minus_e() {
        let h = k43_minus_e();
        assert_eq!(h.pair_degree(0, 1), 2);
        assert_eq!(h.pair_degree(2, 3), 1);
        assert_eq!(h.pair_degree(1, 2), 1);
    }

    #[test]
    #[should_panic(expected = "distinct")]
    fn pair_degree_rejects_equal_vertices() {
        k43_minus_e().pair_degree(2, 2);
    }

    #[test]
    fn partition_rejects_non_transversal() {
        let h = Hypergraph3::build(3, &[[0, 1, 2]]).unwrap();
        let err = h.with_partition(vec![0, 0, 2]).unwrap_err();
        assert!(matches!(err, Error::NonTransversalEdge { .. }));
        // Partitions with a class count other than 3 are free-form
        // metadata.
        let h = Hypergraph3::build(3, &[[0, 1, 2]]).unwrap();
        assert!(h.with_partition(vec![0, 0, 1]).is_ok());
    }

    #[test]
    fn random_tripartition_is_seed_deterministic() {
        let h = Hypergraph3::build(9, &[[0, 1, 2], [3, 4, 5], [6, 7, 8], [0, 4, 8]]).unwrap();
        let a = h.random_tripartition(7);
        let b = h.random_tripartition(7);
        assert_eq!(a, b);
        let c = h.random_tripartition(8);
        // Different seeds are allowed to coincide, but labels come from
        // the stream, so at least the label vectors should differ here.
        assert!(a.partition() != c.partition() || a == c);
    }

    #[test]
    fn random_tripartition_honors_existing_partition() {
        let h = Hypergraph3::build(3, &[[0, 1, 2]])
            .unwrap()
            .with_partition(vec![0, 1, 2])
            .unwrap();
        let t = h.random_tripartition(999);
        assert_eq!(t.m(), 1);
        assert_eq!(t.partition(), Some(&[0, 1, 2][..]));
    }

    #[test]
    fn random_tripartition_single_edge_survival_rate() {
        let h = Hypergraph3::build(3, &[[0, 1, 2]]).unwrap();
        let kept = (0..100_000u64)
            .filter(|&s| h.random_tripartition(s).m() == 1)
            .count();
        let freq = kept as f64 / 100_000.0;
        assert!((freq - 2.0 / 9.0).abs() <= 0.01, "freq = {freq}");
    }

    #[test]
    fn induced_k43_examples() {
        let h = k43_minus_e();
        let (sub, map) = h.induced(&[0, 1, 2]);
        assert_eq!(sub.m(), 1);
        assert_eq!(map, vec![0, 1, 2]);
        let (all, _) = h.induced(&[0, 1, 2, 3]);
        assert_eq!(all, h);
    }

    #[test]
    fn induced_relabels() {
        let h = Hypergraph3::build(6, &[[1, 3, 5]]).unwrap();
        let (sub, map) = h.induced(&[1, 3, 5]);
        assert_eq!(sub.edges(), &[[0, 1, 2]]);
        assert_eq!(map, vec![1, 3, 5]);
    }

    #[test]
    fn certificate_rejects_low_degree() {
        let h = k43_minus_e();
        assert!(CoreCertificate::new(&h, &[0]).is_err());
        let cert = CoreCertificate::new(&h, &[0, 1, 2]).unwrap();
        assert_eq!(cert.order(), 4);
        assert_eq!(cert.size(), 3);
    }

    #[test]
    fn witness_shape_checks() {
        let h = k43_minus_e();
        let w = ConfigWitness::new(&h, vec![0, 1, 2, 3], &[0, 1, 2], 4, 3).unwrap();
        assert_eq!(w.vertices, vec![0, 1, 2, 3]);
        assert!(ConfigWitness::new(&h, vec![0, 1, 2], &[0, 1, 2], 4, 3).is_err());
        assert!(ConfigWitness::new(&h, vec![0, 1, 2, 3], &[0], 4, 3).is_err());
    }

    prop_compose! {
        fn arb_hypergraph()(n in 3usize..12)
            (n in Just(n),
             picks in proptest::collection::vec((0usize..12, 0usize..12, 0usize..12), 0..40))
            -> Hypergraph3
        {
            let mut triples = Vec::new();
            let mut seen = std::collections::HashSet::new();
            for (a, b, c) in picks {
                let (a, b, c) = (a % n, b % n, c % n);
                if a == b || b == c || a == c { continue; }
                let mut t = [a, b, c];
                t.sort_unstable();
                if seen.insert(t) { triples.push(t); }
            }
            Hypergraph3::build(n, &triples).unwrap()
        }
    }

    proptest! {
        #[test]
        fn pair_degree_sum_is_three_m(h in arb_hypergraph()) {
            let total: usize = h.covered_pairs().iter().map(|&(_, d)| d).sum();
            prop_assert_eq!(total, 3 * h.m());
        }

        #[test]
        fn tripartition_keeps_only_transversal(h in arb_hypergraph(), seed in 0u64..1000) {
            let t = h.random_tripartition(seed);
            let labels = t.partition().unwrap();
            for e in t.edges() {
                let mut seen = [false; 3];
                for &v in e { seen[labels[v]] = true; }
                prop_assert_eq!(seen, [true; 3]);
            }
            prop_assert!(t.m() <= h.m());
        }
    }
}
