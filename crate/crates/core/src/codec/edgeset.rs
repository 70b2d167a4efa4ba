//! Composite edge set strings.
//!
//! Stream layout, every integer Elias-gamma coded, MSB-first:
//!
//! ```text
//! γ(p)  γ(|E_c| + 1)  record_0 … record_{|E_c|-1}  zero padding to a byte
//! record_j = γ(u_1) … γ(u_p)  γ(v_1) … γ(v_p)  γ(z_j + 1)
//! ```
//!
//! Records enumerate every possible composite edge in edge-index order; `u`
//! and `v` are the canonical endpoints (smaller vertex index first) and `z_j`
//! is the presence flag. The stream carries its own order and record count,
//! so it decodes with no companion tuple at hand.

use std::io::Write;

use crate::bits::BitString;
use crate::codec::bitio::{BitReader, BitWriter};
use crate::codec::tau::check_padding;
use crate::error::{MagError, Result};
use crate::indexing::{coords_to_index, pair_to_edge_index, VertexOdometer};
use crate::mag::{CompanionTuple, SimpleMag, SizeCap};
use crate::recovery;

/// An encoded composite edge set string, byte-padded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSetString {
    bytes: Vec<u8>,
}

impl EdgeSetString {
    /// Wraps the raw contents of a `.mages` file.
    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        EdgeSetString { bytes }
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }

    pub fn reader(&self) -> Result<EdgeSetReader<'_>> {
        EdgeSetReader::new(&self.bytes)
    }
}

/// Pre-rendered gamma codes of every vertex's coordinate tuple, packed into
/// chunks of at most 64 bits.
struct VertexCodes {
    chunks: Vec<(u64, u32)>,
    starts: Vec<usize>,
}

impl VertexCodes {
    fn new(tau: &CompanionTuple) -> Self {
        let n = tau.num_composite_vertices() as usize;
        let mut chunks = Vec::new();
        let mut starts = Vec::with_capacity(n + 1);
        let mut odo = VertexOdometer::new(tau);
        while let Some(coords) = odo.next_coords() {
            starts.push(chunks.len());
            let mut packer = ChunkPacker::default();
            for &c in coords {
                let width = 64 - c.leading_zeros();
                packer.push(&mut chunks, 0, width - 1);
                packer.push(&mut chunks, c, width);
            }
            packer.flush(&mut chunks);
        }
        starts.push(chunks.len());
        VertexCodes { chunks, starts }
    }

    #[inline]
    fn get(&self, v: usize) -> &[(u64, u32)] {
        &self.chunks[self.starts[v]..self.starts[v + 1]]
    }
}

#[derive(Default)]
struct ChunkPacker {
    value: u64,
    len: u32,
}

impl ChunkPacker {
    fn push(&mut self, out: &mut Vec<(u64, u32)>, value: u64, n: u32) {
        if n == 0 {
            return;
        }
        let free = 64 - self.len;
        if n <= free {
            self.value = if n == 64 { value } else { (self.value << n) | value };
            self.len += n;
        } else {
            let rest = n - free;
            self.value = (self.value << free) | (value >> rest);
            out.push((self.value, 64));
            self.value = value & ((1u64 << rest) - 1);
            self.len = rest;
        }
        if self.len == 64 {
            out.push((self.value, 64));
            self.value = 0;
            self.len = 0;
        }
    }

    fn flush(&mut self, out: &mut Vec<(u64, u32)>) {
        if self.len > 0 {
            out.push((self.value, self.len));
        }
        self.value = 0;
        self.len = 0;
    }
}

/// Streams the edge set string of the space `tau` with presence bits `flags`
/// into `out`. Returns the writer and the number of meaningful bits.
pub fn write_edge_set<W: Write>(tau: &CompanionTuple, flags: &BitString, out: W) -> Result<(W, u64)> {
    let total = tau.num_possible_edges();
    if flags.len() != total {
        return Err(MagError::LengthMismatch {
            expected: total,
            got: flags.len(),
        });
    }
    let mut w = BitWriter::new(out);
    w.write_gamma(tau.order() as u64)?;
    w.write_gamma(total + 1)?;
    if total > 0 {
        let codes = VertexCodes::new(tau);
        let flag_bytes = flags.as_bytes();
        let n = tau.num_composite_vertices() as usize;
        let mut j = 0usize;
        for b in 1..n {
            let dest = codes.get(b);
            for a in 0..b {
                for &(v, len) in codes.get(a) {
                    w.write_bits(v, len)?;
                }
                for &(v, len) in dest {
                    w.write_bits(v, len)?;
                }
                if flag_bytes[j >> 3] & (0x80 >> (j & 7)) != 0 {
                    w.write_bits(0b010, 3)?;
                } else {
                    w.write_bits(1, 1)?;
                }
                j += 1;
            }
        }
    }
    Ok(w.finish()?)
}

pub fn encode_edge_set_string(mag: &SimpleMag) -> EdgeSetString {
    let (bytes, _) = write_edge_set(mag.tau(), mag.edge_bits(), Vec::new())
        .expect("flags match the space and Vec writes cannot fail");
    EdgeSetString { bytes }
}

/// One decoded `⟨e_j, z_j⟩` record.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeRecord<'a> {
    pub origin: &'a [u64],
    pub destination: &'a [u64],
    pub present: bool,
}

/// Incremental record decoder holding O(p) state.
pub struct EdgeSetReader<'a> {
    bits: BitReader<'a>,
    order: usize,
    total: u64,
    read: u64,
    origin: Vec<u64>,
    destination: Vec<u64>,
}

impl<'a> EdgeSetReader<'a> {
    pub fn new(bytes: &'a [u8]) -> Result<Self> {
        let mut bits = BitReader::new(bytes);
        let order = bits.read_gamma()?;
        let total = bits.read_gamma()? - 1;
        // a record needs at least 2p + 1 bits
        let min_bits = (total as u128) * (2 * order as u128 + 1);
        if min_bits > bits.remaining() as u128 {
            return Err(MagError::Truncated);
        }
        let order = usize::try_from(order).map_err(|_| MagError::Malformed(format!("order {order} is too large")))?;
        Ok(EdgeSetReader {
            bits,
            order,
            total,
            read: 0,
            origin: vec![0; order],
            destination: vec![0; order],
        })
    }

    /// Coordinate arity `p` announced by the stream header.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn record_count(&self) -> u64 {
        self.total
    }

    pub fn next_record(&mut self) -> Result<Option<EdgeRecord<'_>>> {
        if self.read == self.total {
            return Ok(None);
        }
        for c in self.origin.iter_mut() {
            *c = self.bits.read_gamma()?;
        }
        for c in self.destination.iter_mut() {
            *c = self.bits.read_gamma()?;
        }
        let present = match self.bits.read_gamma()? {
            1 => false,
            2 => true,
            z => {
                return Err(MagError::Malformed(format!(
                    "record {} has flag code {z}, expected 1 or 2",
                    self.read
                )))
            }
        };
        self.read += 1;
        Ok(Some(EdgeRecord {
            origin: &self.origin,
            destination: &self.destination,
            present,
        }))
    }

    /// Checks that only zero padding follows the last record.
    pub fn finish(mut self) -> Result<()> {
        if self.read != self.total {
            return Err(MagError::Malformed(format!(
                "{} of {} records left unread",
                self.total - self.read,
                self.total
            )));
        }
        check_padding(&mut self.bits)
    }
}

/// Rebuilds a MAG from its edge set string alone. The companion tuple is
/// recovered from the coordinates that occur in the records; the records are
/// then checked to enumerate that space in canonical order.
pub fn decode_edge_set_string(s: &EdgeSetString) -> Result<SimpleMag> {
    decode_edge_set_string_with_cap(s, SizeCap::default())
}

pub fn decode_edge_set_string_with_cap(s: &EdgeSetString, cap: SizeCap) -> Result<SimpleMag> {
    let recovered = recovery::recover_signature(s)?;
    let tau = CompanionTuple::new(recovered.sizes)?;
    let mut reader = s.reader()?;
    if reader.record_count() != tau.num_possible_edges() {
        return Err(MagError::Malformed(format!(
            "{} records, but the recovered space {tau} has {} possible edges",
            reader.record_count(),
            tau.num_possible_edges()
        )));
    }
    cap.check(&tau)?;
    let mut flags = BitString::zeros(tau.num_possible_edges());
    let mut j = 0u64;
    while let Some(rec) = reader.next_record()? {
        let a = coords_to_index(&tau, rec.origin).map_err(|e| malformed_record(j, e))?;
        let b = coords_to_index(&tau, rec.destination).map_err(|e| malformed_record(j, e))?;
        if a >= b || pair_to_edge_index(a.0, b.0)?.0 != j {
            return Err(MagError::Malformed(format!(
                "record {j} holds vertex pair ({}, {}) out of canonical order",
                a.0, b.0
            )));
        }
        if rec.present {
            flags.set(j, true);
        }
        j += 1;
    }
    reader.finish()?;
    SimpleMag::from_edge_bits(tau, flags)
}

fn malformed_record(j: u64, e: MagError) -> MagError {
    MagError::Malformed(format!("record {j}: {e}"))
}

/// The flag sequence `z_1 … z_n` of an edge set string.
pub fn flag_projection(s: &EdgeSetString) -> Result<BitString> {
    let mut reader = s.reader()?;
    let mut out = BitString::new();
    while let Some(rec) = reader.next_record()? {
        out.push(rec.present);
    }
    reader.finish()?;
    Ok(out)
}

/// Builds the edge set string of a classical graph from its characteristic
/// string and vertex count only.
pub fn edge_set_from_characteristic(n_vertices: u64, x: &BitString) -> Result<EdgeSetString> {
    let tau = CompanionTuple::new(vec![n_vertices])?;
    let (bytes, _) = write_edge_set(&tau, x, Vec::new())?;
    Ok(EdgeSetString { bytes })
}
