//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use magcodec::bits::BitString;
use magcodec::{BinarySignature, CompanionTuple, SimpleMag};
use rand::Rng;

/// Every bit string of length 1..=max_len.
pub fn all_signatures(max_len: usize) -> Vec<BinarySignature> {
    (1..=max_len)
        .flat_map(|len| {
            (0u32..1 << len).map(move |v| {
                BinarySignature::new(BitString::from_bools((0..len).map(|i| v >> (len - 1 - i) & 1 == 1)))
            })
        })
        .collect()
}

/// Coordinate tuples in index order, built by nested loops with the last
/// aspect outermost.
pub fn enumerate_vertices(sizes: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &s in sizes {
        let mut next = Vec::with_capacity(out.len() * s as usize);
        for c in 1..=s {
            for prefix in &out {
                let mut v = prefix.clone();
                v.push(c);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Vertex-index pairs `(a, b)`, `a < b`, in edge-index order.
pub fn enumerate_pairs(n: u64) -> impl Iterator<Item = (u64, u64)> {
    (1..n).flat_map(|b| (0..b).map(move |a| (a, b)))
}

/// A random space with at most `max_edges` possible edges and a random
/// density pattern on it.
pub fn random_mag<R: Rng>(rng: &mut R, max_edges: u64) -> SimpleMag {
    loop {
        let order = rng.gen_range(1..=5);
        let sizes: Vec<u64> = (0..order).map(|_| rng.gen_range(1..=6)).collect();
        let Ok(tau) = CompanionTuple::new(sizes) else { continue };
        if tau.num_possible_edges() > max_edges {
            continue;
        }
        let rho: f64 = rng.gen();
        let bits = BitString::from_bools((0..tau.num_possible_edges()).map(|_| rng.gen_bool(rho)));
        return SimpleMag::from_edge_bits(tau, bits).unwrap();
    }
}
