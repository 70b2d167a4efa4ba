//! Streaming LZ77 with hash-chain match finding and range-coded tokens.
//!
//! Token grammar, each token preceded by an `is_match` flag:
//!
//! * literal: one byte through a bit tree keyed by the top three bits of the
//!   previous byte;
//! * match: `is_rep = 0`, then `distance + 1` and `length - 2` as integers;
//!   a distance value of 1 is the end marker;
//! * repeat: `is_rep = 1`, a flag choosing the last or second-to-last
//!   distance, then `length - 2`.
//!
//! Match lengths run up to [`MAX_MATCH`], so long runs cost a handful of
//! tokens per quarter megabyte.

use std::io::{self, Write};

use super::rangecoder::{BitTree, Decoder, Encoder, UIntModel, PROB_INIT};
use super::{CompressWriter, Compressor};
use crate::error::{MagError, Result};

const MIN_MATCH: usize = 3;
pub const MAX_MATCH: usize = 1 << 18;
const WINDOW: usize = 1 << 21;
const HASH_BITS: u32 = 18;
const CHAIN: usize = 16;
const NICE: usize = 128;
/// Largest slice accepted per `write` call, bounding the buffer.
const CHUNK: usize = 1 << 20;

const LITERAL: usize = 0;
const MATCH: usize = 1;
const REP: usize = 2;

struct Model {
    is_match: [u16; 3],
    is_rep: [u16; 3],
    is_rep1: [u16; 3],
    literal: Vec<BitTree>,
    dist: UIntModel,
    len: UIntModel,
    rep_len: UIntModel,
    state: usize,
    reps: [usize; 2],
}

impl Model {
    fn new() -> Self {
        Model {
            is_match: [PROB_INIT; 3],
            is_rep: [PROB_INIT; 3],
            is_rep1: [PROB_INIT; 3],
            literal: (0..8).map(|_| BitTree::new(8)).collect(),
            dist: UIntModel::new(),
            len: UIntModel::new(),
            rep_len: UIntModel::new(),
            state: LITERAL,
            reps: [0; 2],
        }
    }

    fn use_rep(&mut self, slot: usize) -> usize {
        if slot == 1 {
            self.reps.swap(0, 1);
        }
        self.reps[0]
    }

    fn push_dist(&mut self, dist: usize) {
        self.reps = [dist, self.reps[0]];
    }
}

/// The built-in LZ77-family compressor, registered as `"lz"`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Lz;

impl Compressor for Lz {
    fn name(&self) -> &str {
        "lz"
    }

    fn encoder<'a>(&self, sink: Box<dyn Write + 'a>) -> Box<dyn CompressWriter + 'a> {
        Box::new(LzWriter::new(sink))
    }

    fn decompress(&self, data: &[u8]) -> Result<Vec<u8>> {
        decompress(data)
    }
}

struct LzWriter<'a> {
    sink: Box<dyn Write + 'a>,
    rc: Encoder,
    model: Model,
    buf: Vec<u8>,
    /// Absolute stream position of `buf[0]`.
    base: usize,
    pos: usize,
    head: Vec<usize>,
    prev: Vec<usize>,
}

impl<'a> LzWriter<'a> {
    fn new(sink: Box<dyn Write + 'a>) -> Self {
        LzWriter {
            sink,
            rc: Encoder::new(),
            model: Model::new(),
            buf: Vec::new(),
            base: 0,
            pos: 0,
            head: vec![0; 1 << HASH_BITS],
            prev: vec![0; WINDOW],
        }
    }

    #[inline]
    fn hash(&self, i: usize) -> usize {
        let b = &self.buf[i..i + 3];
        let v = u32::from_le_bytes([b[0], b[1], b[2], 0]);
        (v.wrapping_mul(0x9E37_79B1) >> (32 - HASH_BITS)) as usize
    }

    /// Records buffer position `i` in the hash chains (stored as absolute + 1).
    #[inline]
    fn insert(&mut self, i: usize) {
        if i + 3 > self.buf.len() {
            return;
        }
        let h = self.hash(i);
        let abs = self.base + i;
        self.prev[abs & (WINDOW - 1)] = self.head[h];
        self.head[h] = abs + 1;
    }

    fn match_len(&self, dist: usize, limit: usize) -> usize {
        common_prefix(&self.buf[self.pos - dist..], &self.buf[self.pos..self.pos + limit])
    }

    fn longest_match(&self, limit: usize) -> (usize, usize) {
        let abs = self.base + self.pos;
        let mut cand = self.head[self.hash(self.pos)];
        let (mut best_len, mut best_dist) = (0, 0);
        for _ in 0..CHAIN {
            if cand == 0 {
                break;
            }
            let c = cand - 1;
            let dist = abs - c;
            if dist >= WINDOW {
                break;
            }
            let len = self.match_len(dist, limit);
            if len > best_len {
                best_len = len;
                best_dist = dist;
                if len >= NICE || len == limit {
                    break;
                }
            }
            let next = self.prev[c & (WINDOW - 1)];
            if next >= cand {
                break;
            }
            cand = next;
        }
        (best_len, best_dist)
    }

    /// Codes one token at `pos`.
    fn step(&mut self) {
        let limit = (self.buf.len() - self.pos).min(MAX_MATCH);
        let (mut rep_len, mut rep_slot) = (0, 0);
        if limit >= MIN_MATCH {
            for slot in 0..2 {
                let d = self.model.reps[slot];
                if d != 0 && d <= self.pos {
                    let len = self.match_len(d, limit);
                    if len > rep_len {
                        rep_len = len;
                        rep_slot = slot;
                    }
                }
            }
        }
        let (best_len, best_dist) = if limit >= MIN_MATCH && rep_len < NICE {
            self.longest_match(limit)
        } else {
            (0, 0)
        };

        let m = &mut self.model;
        let state = m.state;
        let advance = if rep_len >= MIN_MATCH && rep_len + 1 >= best_len {
            self.rc.encode_bit(&mut m.is_match[state], 1);
            self.rc.encode_bit(&mut m.is_rep[state], 1);
            self.rc.encode_bit(&mut m.is_rep1[state], rep_slot as u32);
            m.rep_len.encode(&mut self.rc, (rep_len - 2) as u64);
            m.use_rep(rep_slot);
            m.state = REP;
            rep_len
        } else if best_len >= MIN_MATCH {
            self.rc.encode_bit(&mut m.is_match[state], 1);
            self.rc.encode_bit(&mut m.is_rep[state], 0);
            m.dist.encode(&mut self.rc, best_dist as u64 + 1);
            m.len.encode(&mut self.rc, (best_len - 2) as u64);
            m.push_dist(best_dist);
            m.state = MATCH;
            best_len
        } else {
            let prev = if self.base + self.pos == 0 {
                0
            } else {
                self.buf[self.pos - 1]
            };
            self.rc.encode_bit(&mut m.is_match[state], 0);
            m.literal[usize::from(prev >> 5)].encode(&mut self.rc, u32::from(self.buf[self.pos]));
            m.state = LITERAL;
            1
        };
        for i in self.pos..self.pos + advance {
            self.insert(i);
        }
        self.pos += advance;
    }

    /// Codes while a full lookahead is buffered, then drops bytes that fell
    /// out of the window.
    fn pump(&mut self) {
        while self.buf.len() - self.pos >= MAX_MATCH {
            self.step();
        }
        if self.pos >= 2 * WINDOW {
            let drop = self.pos - WINDOW;
            self.buf.drain(..drop);
            self.base += drop;
            self.pos -= drop;
        }
    }

    fn drain_output(&mut self) -> io::Result<()> {
        if !self.rc.out.is_empty() {
            self.sink.write_all(&self.rc.out)?;
            self.rc.out.clear();
        }
        Ok(())
    }
}

impl Write for LzWriter<'_> {
    fn write(&mut self, data: &[u8]) -> io::Result<usize> {
        let n = data.len().min(CHUNK);
        self.buf.extend_from_slice(&data[..n]);
        self.pump();
        self.drain_output()?;
        Ok(n)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.drain_output()?;
        self.sink.flush()
    }
}

impl CompressWriter for LzWriter<'_> {
    fn finish(mut self: Box<Self>) -> io::Result<()> {
        while self.pos < self.buf.len() {
            self.step();
        }
        let m = &mut self.model;
        self.rc.encode_bit(&mut m.is_match[m.state], 1);
        self.rc.encode_bit(&mut m.is_rep[m.state], 0);
        m.dist.encode(&mut self.rc, 1);
        self.rc.finish();
        self.drain_output()?;
        self.sink.flush()
    }
}

fn decompress(data: &[u8]) -> Result<Vec<u8>> {
    let mut dec = Decoder::new(data)?;
    let mut m = Model::new();
    let mut out: Vec<u8> = Vec::new();
    loop {
        dec.check_overrun()?;
        let state = m.state;
        if dec.decode_bit(&mut m.is_match[state]) == 0 {
            let prev = out.last().copied().unwrap_or(0);
            out.push(m.literal[usize::from(prev >> 5)].decode(&mut dec) as u8);
            m.state = LITERAL;
            continue;
        }
        let (dist, len) = if dec.decode_bit(&mut m.is_rep[state]) == 1 {
            let slot = dec.decode_bit(&mut m.is_rep1[state]) as usize;
            let len = m.rep_len.decode(&mut dec);
            m.state = REP;
            (m.use_rep(slot), len)
        } else {
            let d = m.dist.decode(&mut dec);
            if d == 1 {
                break;
            }
            let len = m.len.decode(&mut dec);
            let dist = usize::try_from(d - 1).map_err(|_| MagError::Malformed("distance overflows".into()))?;
            m.push_dist(dist);
            m.state = MATCH;
            (dist, len)
        };
        let len = usize::try_from(len + 2).unwrap_or(usize::MAX);
        if dist == 0 || dist > out.len() {
            return Err(MagError::Malformed(format!(
                "distance {dist} reaches before the start of the output"
            )));
        }
        if len > MAX_MATCH {
            return Err(MagError::Malformed(format!("match length {len} exceeds {MAX_MATCH}")));
        }
        copy_match(&mut out, dist, len);
    }
    dec.finish()?;
    Ok(out)
}

/// Appends `len` bytes copied from `dist` back, overlap allowed.
fn copy_match(out: &mut Vec<u8>, dist: usize, len: usize) {
    let start = out.len() - dist;
    let mut left = len;
    while left > 0 {
        let n = left.min(out.len() - start);
        out.extend_from_within(start..start + n);
        left -= n;
    }
}

/// Length of the common prefix of `a` and `b`, capped at `b.len()`.
fn common_prefix(a: &[u8], b: &[u8]) -> usize {
    let limit = a.len().min(b.len());
    let mut i = 0;
    while i + 8 <= limit {
        let x = u64::from_le_bytes(a[i..i + 8].try_into().unwrap());
        let y = u64::from_le_bytes(b[i..i + 8].try_into().unwrap());
        let diff = x ^ y;
        if diff != 0 {
            return i + (diff.trailing_zeros() / 8) as usize;
        }
        i += 8;
    }
    while i < limit && a[i] == b[i] {
        i += 1;
    }
    i
}
