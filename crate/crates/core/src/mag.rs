//! Simple multiaspect graphs: companion tuples, composite vertices and edges,
//! and the bitstring-driven companion-tuple constructions.

use std::fmt;
use std::str::FromStr;

use crate::bits::BitString;
use crate::error::{MagError, Result};
use crate::indexing::{self, EdgeIndex};

/// Default limit on `num_possible_edges`, i.e. the bitset size of a MAG (1 GiB).
pub const DEFAULT_SIZE_CAP_BITS: u64 = 1 << 33;

/// Environment variable that overrides [`DEFAULT_SIZE_CAP_BITS`].
pub const SIZE_CAP_ENV: &str = "MAGCODEC_SIZE_CAP_BITS";

/// Upper bound on the number of possible composite edges a MAG may span.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeCap(pub u64);

impl Default for SizeCap {
    fn default() -> Self {
        SizeCap(DEFAULT_SIZE_CAP_BITS)
    }
}

impl SizeCap {
    /// Reads `MAGCODEC_SIZE_CAP_BITS`, falling back to the default when unset.
    pub fn from_env() -> Result<Self> {
        match std::env::var(SIZE_CAP_ENV) {
            Ok(v) => v.trim().parse().map(SizeCap).map_err(|_| MagError::Parse {
                line: 0,
                msg: format!("{SIZE_CAP_ENV}=`{v}` is not an unsigned integer"),
            }),
            Err(_) => Ok(SizeCap::default()),
        }
    }

    pub fn check(&self, tau: &CompanionTuple) -> Result<()> {
        let bits = tau.num_possible_edges();
        if bits > self.0 {
            return Err(MagError::SizeCap { bits, cap: self.0 });
        }
        Ok(())
    }
}

/// Aspect sizes `(|A[1]|, …, |A[p]|)`. Aspect `i` is always the label set `{1, …, sizes[i]}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CompanionTuple {
    sizes: Vec<u64>,
    n_vertices: u64,
    n_edges: u64,
}

impl CompanionTuple {
    pub fn new(sizes: Vec<u64>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(MagError::EmptyTuple);
        }
        let mut n_vertices: u64 = 1;
        for (i, &s) in sizes.iter().enumerate() {
            if s == 0 {
                return Err(MagError::ZeroAspect { aspect: i + 1 });
            }
            n_vertices = n_vertices
                .checked_mul(s)
                .ok_or_else(|| MagError::Overflow(format!("vertex count of {sizes:?}")))?;
        }
        let n = n_vertices as u128;
        let n_edges =
            u64::try_from(n * (n - 1) / 2).map_err(|_| MagError::Overflow(format!("edge count of {sizes:?}")))?;
        Ok(CompanionTuple {
            sizes,
            n_vertices,
            n_edges,
        })
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    /// The order `p`.
    pub fn order(&self) -> usize {
        self.sizes.len()
    }

    pub fn num_composite_vertices(&self) -> u64 {
        self.n_vertices
    }

    /// `|E_c| = n(n-1)/2` with `n` composite vertices.
    pub fn num_possible_edges(&self) -> u64 {
        self.n_edges
    }

    /// True when every aspect has the same size.
    pub fn is_uniform(&self) -> bool {
        self.sizes.windows(2).all(|w| w[0] == w[1])
    }
}

impl fmt::Debug for CompanionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CompanionTuple{:?}", self.sizes)
    }
}

impl fmt::Display for CompanionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sizes.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A p-tuple of 1-based coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompositeVertex {
    coords: Vec<u64>,
}

impl CompositeVertex {
    /// Builds a vertex without validating it against any companion tuple.
    pub fn new(coords: Vec<u64>) -> Self {
        CompositeVertex { coords }
    }

    /// Builds a vertex and checks `1 <= coords[i] <= sizes[i]`.
    pub fn checked(tau: &CompanionTuple, coords: Vec<u64>) -> Result<Self> {
        let v = CompositeVertex { coords };
        v.validate(tau)?;
        Ok(v)
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn validate(&self, tau: &CompanionTuple) -> Result<()> {
        if self.coords.len() != tau.order() {
            return Err(MagError::ArityMismatch {
                expected: tau.order(),
                got: self.coords.len(),
            });
        }
        for (i, (&c, &s)) in self.coords.iter().zip(tau.sizes()).enumerate() {
            if c == 0 || c > s {
                return Err(MagError::InvalidCoordinate {
                    aspect: i + 1,
                    value: c,
                    size: s,
                });
            }
        }
        Ok(())
    }
}

/// An unordered pair of distinct composite vertices. The endpoint with the
/// smaller linear index is stored first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompositeEdge {
    u: CompositeVertex,
    v: CompositeVertex,
}

impl CompositeEdge {
    pub fn new(tau: &CompanionTuple, a: CompositeVertex, b: CompositeVertex) -> Result<Self> {
        let ia = indexing::vertex_to_index(tau, &a)?;
        let ib = indexing::vertex_to_index(tau, &b)?;
        if ia == ib {
            return Err(MagError::SelfLoop);
        }
        Ok(if ia < ib {
            CompositeEdge { u: a, v: b }
        } else {
            CompositeEdge { u: b, v: a }
        })
    }

    /// Endpoints already in canonical order; used by the index decoder.
    pub(crate) fn from_canonical(u: CompositeVertex, v: CompositeVertex) -> Self {
        CompositeEdge { u, v }
    }

    /// Origin endpoint (smaller linear index).
    pub fn origin(&self) -> &CompositeVertex {
        &self.u
    }

    /// Destination endpoint (larger linear index).
    pub fn destination(&self) -> &CompositeVertex {
        &self.v
    }
}

/// An undirected MAG without self-loops: a companion tuple plus one presence
/// bit per possible composite edge, addressed by [`EdgeIndex`].
#[derive(Clone, PartialEq, Eq)]
pub struct SimpleMag {
    tau: CompanionTuple,
    edges: BitString,
}

impl SimpleMag {
    pub fn empty(tau: CompanionTuple) -> Result<Self> {
        Self::empty_with_cap(tau, SizeCap::default())
    }

    pub fn empty_with_cap(tau: CompanionTuple, cap: SizeCap) -> Result<Self> {
        cap.check(&tau)?;
        let edges = BitString::zeros(tau.num_possible_edges());
        Ok(SimpleMag { tau, edges })
    }

    /// Wraps an existing presence bitset; its length must be exactly `|E_c|`.
    pub fn from_edge_bits(tau: CompanionTuple, edges: BitString) -> Result<Self> {
        if edges.len() != tau.num_possible_edges() {
            return Err(MagError::LengthMismatch {
                expected: tau.num_possible_edges(),
                got: edges.len(),
            });
        }
        Ok(SimpleMag { tau, edges })
    }

    pub fn tau(&self) -> &CompanionTuple {
        &self.tau
    }

    pub fn edge_bits(&self) -> &BitString {
        &self.edges
    }

    pub fn contains(&self, e: EdgeIndex) -> bool {
        e.0 < self.edges.len() && self.edges.get(e.0)
    }

    pub fn edge_count(&self) -> u64 {
        self.edges.count_ones()
    }

    /// Present edges in ascending index order.
    pub fn edge_indices(&self) -> impl Iterator<Item = EdgeIndex> + '_ {
        self.edges.iter_ones().map(EdgeIndex)
    }

    pub(crate) fn insert(&mut self, e: EdgeIndex) -> Result<()> {
        let limit = self.tau.num_possible_edges();
        if e.0 >= limit {
            return Err(MagError::IndexOutOfRange { index: e.0, limit });
        }
        self.edges.set(e.0, true);
        Ok(())
    }
}

impl fmt::Debug for SimpleMag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimpleMag")
            .field("tau", &self.tau)
            .field("edges", &self.edges)
            .finish()
    }
}

/// Builds a MAG with exactly the given edge indices present; duplicates collapse.
pub fn make_mag(tau: CompanionTuple, edge_indices: &[u64]) -> Result<SimpleMag> {
    make_mag_with_cap(tau, edge_indices, SizeCap::default())
}

pub fn make_mag_with_cap(tau: CompanionTuple, edge_indices: &[u64], cap: SizeCap) -> Result<SimpleMag> {
    let mut mag = SimpleMag::empty_with_cap(tau, cap)?;
    for &j in edge_indices {
        mag.insert(EdgeIndex(j))?;
    }
    Ok(mag)
}

/// One bit per aspect: 1 iff the aspect has at least two elements.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinarySignature(BitString);

impl BinarySignature {
    pub fn new(bits: BitString) -> Self {
        BinarySignature(bits)
    }

    pub fn bits(&self) -> &BitString {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ones(&self) -> u64 {
        self.0.count_ones()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0.get(i as u64)
    }
}

impl fmt::Display for BinarySignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for BinarySignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinarySignature(\"{}\")", self.0)
    }
}

impl FromStr for BinarySignature {
    type Err = MagError;

    fn from_str(s: &str) -> Result<Self> {
        s.parse().map(BinarySignature)
    }
}

/// Aspect `i` is `{1,2}` when `w[i] = 1` and `{1}` when `w[i] = 0`.
pub fn tau_from_bitstring(w: &BinarySignature) -> Result<CompanionTuple> {
    if w.is_empty() {
        return Err(MagError::EmptyBitString);
    }
    CompanionTuple::new(w.bits().iter().map(|b| if b { 2 } else { 1 }).collect())
}

/// Generalized construction: aspect `i` has `f1(p) + f2(p)` elements when
/// `w[i] = 1` and `f1(p)` elements otherwise, with `p = len(w)`.
///
/// `f2(p)` may be negative. A negative offset flips which positions end up
/// with a single element, so [`signature_of`] then returns the complement of
/// `w` whenever `f1(p) >= 2` and `f1(p) + f2(p) = 1`.
pub fn tau_from_bitstring_general<F1, F2>(w: &BinarySignature, f1: F1, f2: F2) -> Result<CompanionTuple>
where
    F1: Fn(usize) -> u64,
    F2: Fn(usize) -> i64,
{
    if w.is_empty() {
        return Err(MagError::EmptyBitString);
    }
    let p = w.len();
    let base = f1(p);
    let delta = f2(p);
    if base == 0 {
        return Err(MagError::InvalidConstruction(format!("f1({p}) must be at least 1")));
    }
    if delta == 0 {
        return Err(MagError::InvalidConstruction(format!(
            "f2({p}) = 0 makes both aspect sizes equal"
        )));
    }
    let raised = (base as i128) + (delta as i128);
    if raised < 1 {
        return Err(MagError::InvalidConstruction(format!(
            "f1({p}) + f2({p}) = {raised} is not a valid aspect size"
        )));
    }
    let raised = u64::try_from(raised).map_err(|_| MagError::Overflow(format!("aspect size {raised}")))?;
    CompanionTuple::new(w.bits().iter().map(|b| if b { raised } else { base }).collect())
}

/// Bit `i` is 1 iff `sizes[i] >= 2`.
pub fn signature_of(tau: &CompanionTuple) -> BinarySignature {
    BinarySignature(BitString::from_bools(tau.sizes().iter().map(|&s| s >= 2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> BinarySignature {
        s.parse().unwrap()
    }

    #[test]
    fn make_mag_small_spaces() {
        let m = make_mag(CompanionTuple::new(vec![2, 1]).unwrap(), &[0]).unwrap();
        assert_eq!(m.tau().num_composite_vertices(), 2);
        assert_eq!(m.tau().num_possible_edges(), 1);
        assert_eq!(m.edge_bits().to_string(), "1");

        let m = make_mag(CompanionTuple::new(vec![2, 1, 2]).unwrap(), &[]).unwrap();
        assert_eq!(m.tau().num_composite_vertices(), 4);
        assert_eq!(m.tau().num_possible_edges(), 6);
        assert_eq!(m.edge_count(), 0);
    }

    #[test]
    fn make_mag_sets_positions_and_collapses_duplicates() {
        let m = make_mag(CompanionTuple::new(vec![3, 2]).unwrap(), &[7, 0, 7]).unwrap();
        assert_eq!(m.edge_bits().len(), 15);
        assert_eq!(m.edge_bits().to_string(), "100000010000000");
        assert_eq!(m.edge_indices().map(|e| e.0).collect::<Vec<_>>(), vec![0, 7]);
    }

    #[test]
    fn make_mag_rejects_out_of_range_and_cap() {
        let tau = CompanionTuple::new(vec![2, 2]).unwrap();
        assert!(matches!(
            make_mag(tau.clone(), &[6]),
            Err(MagError::IndexOutOfRange { index: 6, limit: 6 })
        ));
        assert!(matches!(
            make_mag_with_cap(tau, &[], SizeCap(5)),
            Err(MagError::SizeCap { bits: 6, cap: 5 })
        ));
    }

    #[test]
    fn tuple_validation() {
        assert!(matches!(CompanionTuple::new(vec![]), Err(MagError::EmptyTuple)));
        assert!(matches!(
            CompanionTuple::new(vec![2, 0]),
            Err(MagError::ZeroAspect { aspect: 2 })
        ));
        assert!(matches!(
            CompanionTuple::new(vec![u64::MAX, 2]),
            Err(MagError::Overflow(_))
        ));
        // 2^33 vertices fit, but n(n-1)/2 does not fit in u64.
        assert!(matches!(CompanionTuple::new(vec![1 << 33]), Err(MagError::Overflow(_))));
    }

    #[test]
    fn vertex_validation() {
        let tau = CompanionTuple::new(vec![2, 3]).unwrap();
        assert!(CompositeVertex::checked(&tau, vec![2, 3]).is_ok());
        assert!(matches!(
            CompositeVertex::checked(&tau, vec![0, 1]),
            Err(MagError::InvalidCoordinate {
                aspect: 1,
                value: 0,
                ..
            })
        ));
        assert!(matches!(
            CompositeVertex::checked(&tau, vec![1, 4]),
            Err(MagError::InvalidCoordinate {
                aspect: 2,
                value: 4,
                size: 3
            })
        ));
        assert!(matches!(
            CompositeVertex::checked(&tau, vec![1]),
            Err(MagError::ArityMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn edge_canonical_order_and_self_loop() {
        let tau = CompanionTuple::new(vec![2, 3]).unwrap();
        let a = CompositeVertex::new(vec![1, 3]);
        let b = CompositeVertex::new(vec![2, 1]);
        let e = CompositeEdge::new(&tau, a.clone(), b.clone()).unwrap();
        assert_eq!(e.origin(), &b);
        assert_eq!(e.destination(), &a);
        assert!(matches!(
            CompositeEdge::new(&tau, a.clone(), a),
            Err(MagError::SelfLoop)
        ));
    }

    #[test]
    fn base_construction() {
        assert_eq!(tau_from_bitstring(&sig("101")).unwrap().sizes(), &[2, 1, 2]);
        let t = tau_from_bitstring(&sig("0000000")).unwrap();
        assert_eq!(t.num_composite_vertices(), 1);
        assert_eq!(t.num_possible_edges(), 0);
        let t = tau_from_bitstring(&sig("1111")).unwrap();
        assert_eq!(t.sizes(), &[2, 2, 2, 2]);
        assert_eq!(t.num_composite_vertices(), 16);
        assert_eq!(t.num_possible_edges(), 120);
        assert!(matches!(
            tau_from_bitstring(&BinarySignature::new(BitString::new())),
            Err(MagError::EmptyBitString)
        ));
    }

    #[test]
    fn general_construction() {
        let t = tau_from_bitstring_general(&sig("10"), |_| 3, |_| 2).unwrap();
        assert_eq!(t.sizes(), &[5, 3]);
        let t = tau_from_bitstring_general(&sig("1"), |_| 1, |_| 1).unwrap();
        assert_eq!(t.sizes(), &[2]);
        let t = tau_from_bitstring_general(&sig("011"), |_| 2, |_| -1).unwrap();
        assert_eq!(t.sizes(), &[2, 1, 1]);
        // the functions are evaluated at p = len(w)
        let t = tau_from_bitstring_general(&sig("110"), |p| p as u64, |p| p as i64).unwrap();
        assert_eq!(t.sizes(), &[6, 6, 3]);
    }

    #[test]
    fn general_construction_errors() {
        assert!(tau_from_bitstring_general(&sig("10"), |_| 2, |_| 0).is_err());
        assert!(tau_from_bitstring_general(&sig("10"), |_| 0, |_| 2).is_err());
        assert!(tau_from_bitstring_general(&sig("10"), |_| 2, |_| -2).is_err());
    }

    #[test]
    fn signatures() {
        let t = |s: Vec<u64>| CompanionTuple::new(s).unwrap();
        assert_eq!(signature_of(&t(vec![2, 1, 2])).to_string(), "101");
        assert_eq!(signature_of(&t(vec![1, 1, 1])).to_string(), "000");
        assert_eq!(signature_of(&t(vec![5, 3])).to_string(), "11");
    }

    #[test]
    fn uniformity() {
        assert!(CompanionTuple::new(vec![2, 2, 2]).unwrap().is_uniform());
        assert!(!CompanionTuple::new(vec![2, 1, 2]).unwrap().is_uniform());
    }
}
