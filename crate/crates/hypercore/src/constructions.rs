//! Extremal and random instance generators: the modular sum
//! construction, triple systems over arbitrary finite groups with
//! quadruple counting, random tripartite instances, and an
//! add-and-delete generator for configuration-free hypergraphs.

use std::collections::{HashMap, HashSet};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::configs::{find_config, find_config_containing, FindOutcome};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph3;

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    mul: Vec<Vec<usize>>,
    identity: usize,
}

impl CayleyTable {
    /// The cyclic group Z/m under addition.
    pub fn cyclic(m: usize) -> Self {
        assert!(m >= 1);
        let mul = (0..m)
            .map(|a| (0..m).map(|b| (a + b) % m).collect())
            .collect();
        CayleyTable {
            order: m,
            mul,
            identity: 0,
        }
    }

    /// Validates a raw table: closure, identity, inverses, and
    /// associativity (checked fully for orders up to 64, on a seeded
    /// sample of triples above that).
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for row in &rows {
            if row.len() != m {
                return Err(Error::InvalidGroup(format!(
                    "row length {} in a table of order {m}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= m) {
                return Err(Error::InvalidGroup(format!("entry {bad} out of range")));
            }
        }
        let identity = (0..m)
            .find(|&e| (0..m).all(|a| rows[e][a] == a && rows[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        for a in 0..m {
            if !(0..m).any(|b| rows[a][b] == identity && rows[b][a] == identity) {
                return Err(Error::InvalidGroup(format!("element {a} has no inverse")));
            }
        }
        let check = |a: usize, b: usize, c: usize| rows[rows[a][b]][c] == rows[a][rows[b][c]];
        if m <= 64 {
            for a in 0..m {
                for b in 0..m {
                    for c in 0..m {
                        if !check(a, b, c) {
                            return Err(Error::InvalidGroup(format!(
                                "associativity fails at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x6772_7075);
            for _ in 0..8192 {
                let (a, b, c) = (
                    rng.gen_range(0..m),
                    rng.gen_range(0..m),
                    rng.gen_range(0..m),
                );
                if !check(a, b, c) {
                    return Err(Error::InvalidGroup(format!(
                        "associativity fails at ({a}, {b}, {c})"
                    )));
                }
            }
        }
        Ok(CayleyTable {
            order: m,
            mul: rows,
            identity,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.mul
    }
}

/// A triple system over a group: for each selected pair (a, b) the host
/// carries the edge {a, b, a*b} across three disjoint vertex classes of
/// size `order`.
#[derive(Debug, Clone)]
pub struct GroupTripleSystem {
    pub table: CayleyTable,
    pub pairs: Vec<(usize, usize)>,
    pub host: Hypergraph3,
}

/// Builds the triple system host on 3m vertices (classes A, B, C).
/// Two coordinates of (a, b, a*b) determine the third by cancellation,
/// so the host is always linear.
pub fn group_system(table: CayleyTable, pairs: &[(usize, usize)]) -> Result<GroupTripleSystem> {
    let m = table.order();
    let mut sorted = pairs.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut triples = Vec::with_capacity(sorted.len());
    for &(a, b) in &sorted {
        if a >= m || b >= m {
            return Err(Error::PairOutOfRange { a, b, order: m });
        }
        triples.push([a, m + b, 2 * m + table.mul(a, b)]);
    }
    let host = Hypergraph3::build(3 * m, &triples)?.with_partition(
        (0..3 * m).map(|v| v / m).collect(),
    )?;
    debug_assert!(host.is_linear());
    Ok(GroupTripleSystem {
        table,
        pairs: sorted,
        host,
    })
}

fn is_prime(p: usize) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The modular sum construction: a tripartite hypergraph on 3p vertices
/// with the p^2 edges {a, b, a+b mod p}. Linear, and for prime p >= 5
/// it has no core on 8 or fewer vertices.
pub fn modular_construction(p: usize) -> Result<Hypergraph3> {
    if p < 5 || !is_prime(p) {
        return Err(Error::BadModulus(p));
    }
    let all: Vec<(usize, usize)> = (0..p)
        .flat_map(|a| (0..p).map(move |b| (a, b)))
        .collect();
    Ok(group_system(CayleyTable::cyclic(p), &all)?.host)
}

/// Counts ordered quadruples (α,β), (α,γ), (δ,γ), (δ,β) of selected
/// pairs with α*β = δ*γ, α ≠ δ, β ≠ γ. Pairs are bucketed by product
/// value and paired within buckets; both orderings of a geometric
/// configuration are counted.
pub fn count_74_quadruples(sys: &GroupTripleSystem) -> u64 {
    let selected: HashSet<(usize, usize)> = sys.pairs.iter().copied().collect();
    let mut buckets: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for &(a, b) in &sys.pairs {
        buckets.entry(sys.table.mul(a, b)).or_default().push((a, b));
    }
    let mut count = 0u64;
    for bucket in buckets.values() {
        for &(alpha, beta) in bucket {
            for &(delta, gamma) in bucket {
                if alpha != delta
                    && beta != gamma
                    && selected.contains(&(alpha, gamma))
                    && selected.contains(&(delta, beta))
                {
                    count += 1;
                }
            }
        }
    }
    count
}

/// `m` distinct uniform transversal triples over three classes of size
/// `n_per_class`.
pub fn random_tripartite(n_per_class: usize, m: usize, seed: u64) -> Result<Hypergraph3> {
    let total = n_per_class * n_per_class * n_per_class;
    if m > total {
        return Err(Error::TooManyEdges {
            requested: m,
            available: total,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks = rand::seq::index::sample(&mut rng, total, m);
    let triples: Vec<[usize; 3]> = picks
        .iter()
        .map(|idx| {
            let a = idx / (n_per_class * n_per_class);
            let b = (idx / n_per_class) % n_per_class;
            let c = idx % n_per_class;
            [a, n_per_class + b, 2 * n_per_class + c]
        })
        .collect();
    Hypergraph3::build(3 * n_per_class, &triples)?
        .with_partition((0..3 * n_per_class).map(|v| v / n_per_class).collect())
}

/// Node budget for each incremental witness re-check inside
/// [`avoid_config_generator`].
const AVOID_CHECK_BUDGET: u64 = 50_000_000;

/// Random generation followed by deletion: repeatedly add a random
/// edge; whenever the new edge completes k vertices spanning l edges,
/// delete it again. Stops at `target_m` or gives up, returning the
/// partial graph inside the error. The accepted output is certified
/// (k, l)-free by a final full search.
pub fn avoid_config_generator(
    n: usize,
    k: usize,
    l: usize,
    target_m: usize,
    seed: u64,
) -> Result<Hypergraph3> {
    assert!(n >= 3, "need at least one possible triple");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut present: HashSet<[usize; 3]> = HashSet::new();
    let mut triples: Vec<[usize; 3]> = Vec::new();
    let max_attempts = 20_000 + 400 * target_m as u64;
    let mut attempts = 0u64;
    while triples.len() < target_m {
        attempts += 1;
        if attempts > max_attempts {
            let partial = Hypergraph3::build(n, &triples).expect("accepted edges stay valid");
            debug_assert!(matches!(
                find_config(&partial, k, l, AVOID_CHECK_BUDGET).outcome,
                FindOutcome::CertifiedNone
            ));
            return Err(Error::GeneratorGaveUp {
                reached: triples.len(),
                target: target_m,
                partial: Box::new(partial),
            });
        }
        let mut t = [0usize; 3];
        t[0] = rng.gen_range(0..n);
        t[1] = rng.gen_range(0..n);
        t[2] = rng.gen_range(0..n);
        t.sort_unstable();
        if t[0] == t[1] || t[1] == t[2] || present.contains(&t) {
            continue;
        }
        triples.push(t);
        let candidate = Hypergraph3::build(n, &triples).expect("distinct valid triples");
        let id = candidate.edge_id(t).expect("just inserted");
        let res = find_config_containing(&candidate, id, k, l, AVOID_CHECK_BUDGET);
        match res.outcome {
            FindOutcome::CertifiedNone => {
                present.insert(t);
            }
            // A witness appeared (or the check could not finish):
            // withdraw the edge.
            FindOutcome::Witness(_) | FindOutcome::BudgetExhausted => {
                triples.pop();
            }
        }
    }
    let out = Hypergraph3::build(n, &triples).expect("accepted edges stay valid");
    // The add-and-delete loop maintains freedom de novo; certify the
    // final graph independently of the incremental path.
    let full = find_config(&out, k, l, AVOID_CHECK_BUDGET);
    assert!(
        matches!(full.outcome, FindOutcome::CertifiedNone),
        "incremental checks must leave a certified (k, l)-free graph"
    );
    Ok(out)
}
