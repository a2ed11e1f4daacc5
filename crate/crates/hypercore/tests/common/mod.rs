//! Shared instance builders for the integration suites.

use std::collections::HashSet;

use hypercore::hypergraph::Hypergraph3;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Uniform random 3-uniform hypergraph with `m` distinct edges.
pub fn random_general(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Hypergraph3 {
    let mut seen: HashSet<[usize; 3]> = HashSet::new();
    while seen.len() < m {
        let mut t = [
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(0..n),
        ];
        t.sort_unstable();
        if t[0] != t[1] && t[1] != t[2] {
            seen.insert(t);
        }
    }
    let mut v: Vec<[usize; 3]> = seen.into_iter().collect();
    v.sort_unstable();
    Hypergraph3::build(n, &v).unwrap()
}

/// Ten edges on 14 vertices: four 3-edge configurations meeting in one
/// clique of the auxiliary hypergraph, with the two forced shared
/// edges. Returns the host and the subclass split bits realizing the
/// intended 6-class layout.
pub fn fig4_instance() -> (Hypergraph3, Vec<u8>) {
    let edges = [
        [0, 2, 5],
        [4, 6, 5],
        [4, 2, 3],
        [7, 1, 5],
        [7, 2, 8],
        [9, 2, 10],
        [4, 1, 10],
        [0, 12, 13],
        [11, 1, 13],
        [11, 12, 3],
    ];
    let part = vec![0, 1, 1, 2, 0, 2, 1, 0, 2, 0, 2, 0, 1, 2];
    let h = Hypergraph3::build(14, &edges)
        .unwrap()
        .with_partition(part.clone())
        .unwrap();
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

/// Twelve edges on 17 vertices: two 9-vertex/5-edge gadgets sharing
/// their degree-1 triple {0, 1, 9}, embedded as four full 3-edge
/// configurations.
pub fn fig5_instance() -> Hypergraph3 {
    Hypergraph3::build(
        17,
        &[
            [0, 1, 2],
            [0, 3, 4],
            [1, 3, 5],
            [4, 6, 7],
            [5, 6, 8],
            [7, 8, 9],
            [0, 9, 16],
            [0, 10, 11],
            [9, 10, 12],
            [11, 13, 14],
            [12, 13, 15],
            [1, 14, 15],
        ],
    )
    .unwrap()
}
