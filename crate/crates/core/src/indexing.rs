//! Fixed linear orderings of composite vertices and composite edges.
//!
//! Vertices use mixed radix with the first aspect varying fastest:
//! `index = Σ (coords[i] - 1) · Π_{j<i} sizes[j]`.
//!
//! Edges `{a, b}` with vertex indices `a < b` use strict-lower-triangular
//! order: `index = b(b-1)/2 + a`. Every encoding in this crate enumerates
//! possible edges in exactly this order.

use crate::error::{MagError, Result};
use crate::mag::{CompanionTuple, CompositeEdge, CompositeVertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexIndex(pub u64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeIndex(pub u64);

pub fn vertex_to_index(tau: &CompanionTuple, v: &CompositeVertex) -> Result<VertexIndex> {
    coords_to_index(tau, v.coords())
}

/// [`vertex_to_index`] on a borrowed coordinate slice.
pub fn coords_to_index(tau: &CompanionTuple, coords: &[u64]) -> Result<VertexIndex> {
    if coords.len() != tau.order() {
        return Err(MagError::ArityMismatch {
            expected: tau.order(),
            got: coords.len(),
        });
    }
    let mut index = 0u64;
    let mut stride = 1u64;
    for (i, (&c, &s)) in coords.iter().zip(tau.sizes()).enumerate() {
        if c == 0 || c > s {
            return Err(MagError::InvalidCoordinate {
                aspect: i + 1,
                value: c,
                size: s,
            });
        }
        index += (c - 1) * stride;
        // cannot overflow: the product of all sizes fits in u64
        stride = stride.wrapping_mul(s);
    }
    Ok(VertexIndex(index))
}

pub fn index_to_vertex(tau: &CompanionTuple, i: VertexIndex) -> Result<CompositeVertex> {
    let limit = tau.num_composite_vertices();
    if i.0 >= limit {
        return Err(MagError::IndexOutOfRange { index: i.0, limit });
    }
    let mut rest = i.0;
    let coords = tau
        .sizes()
        .iter()
        .map(|&s| {
            let c = rest % s + 1;
            rest /= s;
            c
        })
        .collect();
    Ok(CompositeVertex::new(coords))
}

pub fn edge_to_index(tau: &CompanionTuple, e: &CompositeEdge) -> Result<EdgeIndex> {
    let a = vertex_to_index(tau, e.origin())?;
    let b = vertex_to_index(tau, e.destination())?;
    pair_to_edge_index(a.0, b.0)
}

pub fn index_to_edge(tau: &CompanionTuple, j: EdgeIndex) -> Result<CompositeEdge> {
    let limit = tau.num_possible_edges();
    if j.0 >= limit {
        return Err(MagError::IndexOutOfRange { index: j.0, limit });
    }
    let (a, b) = edge_index_to_pair(j);
    Ok(CompositeEdge::from_canonical(
        index_to_vertex(tau, VertexIndex(a))?,
        index_to_vertex(tau, VertexIndex(b))?,
    ))
}

/// Triangular index of the unordered vertex-index pair `{x, y}`.
pub fn pair_to_edge_index(x: u64, y: u64) -> Result<EdgeIndex> {
    let (a, b) = match x.cmp(&y) {
        std::cmp::Ordering::Less => (x, y),
        std::cmp::Ordering::Greater => (y, x),
        std::cmp::Ordering::Equal => return Err(MagError::SelfLoop),
    };
    let b = b as u128;
    u64::try_from(b * (b - 1) / 2 + a as u128)
        .map(EdgeIndex)
        .map_err(|_| MagError::Overflow(format!("edge index of ({x}, {y})")))
}

/// Inverse of [`pair_to_edge_index`]: returns `(a, b)` with `a < b`.
pub fn edge_index_to_pair(j: EdgeIndex) -> (u64, u64) {
    let j = j.0 as u128;
    // b = floor((1 + sqrt(1 + 8j)) / 2), then corrected so that b(b-1)/2 <= j < b(b+1)/2
    let mut b = isqrt(1 + 8 * j).div_ceil(2);
    while b * (b - 1) / 2 > j {
        b -= 1;
    }
    while (b + 1) * b / 2 <= j {
        b += 1;
    }
    let a = j - b * (b - 1) / 2;
    (a as u64, b as u64)
}

/// Floor square root by Newton's method, integers only.
pub(crate) fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let bits = 128 - n.leading_zeros();
    let mut x = 1u128 << bits.div_ceil(2);
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            break;
        }
        x = y;
    }
    while x * x > n {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

/// Walks composite vertices in index order without dividing.
#[derive(Debug, Clone)]
pub struct VertexOdometer<'a> {
    sizes: &'a [u64],
    coords: Vec<u64>,
    remaining: u64,
    started: bool,
}

impl<'a> VertexOdometer<'a> {
    pub fn new(tau: &'a CompanionTuple) -> Self {
        VertexOdometer {
            sizes: tau.sizes(),
            coords: vec![1; tau.order()],
            remaining: tau.num_composite_vertices(),
            started: false,
        }
    }

    /// Coordinates of the next vertex, or `None` once all are visited.
    pub fn next_coords(&mut self) -> Option<&[u64]> {
        if self.remaining == 0 {
            return None;
        }
        if self.started {
            for (c, &s) in self.coords.iter_mut().zip(self.sizes) {
                if *c < s {
                    *c += 1;
                    break;
                }
                *c = 1;
            }
        }
        self.started = true;
        self.remaining -= 1;
        Some(&self.coords)
    }
}
