//! Adaptive binary range coder with 11-bit probabilities, plus the bit-tree
//! and integer models built on top of it.

use crate::error::{MagError, Result};

const PROB_BITS: u32 = 11;
const PROB_ONE: u16 = 1 << PROB_BITS;
pub(crate) const PROB_INIT: u16 = PROB_ONE / 2;
const MOVE_BITS: u32 = 5;
const TOP: u32 = 1 << 24;

/// Overrun slack tolerated mid-stream before a decoder gives up.
const MAX_OVERRUN: usize = 16;

pub(crate) struct Encoder {
    low: u64,
    range: u32,
    cache: u8,
    cache_size: u64,
    pub(crate) out: Vec<u8>,
}

impl Encoder {
    pub(crate) fn new() -> Self {
        Encoder {
            low: 0,
            range: u32::MAX,
            cache: 0,
            cache_size: 1,
            out: Vec::new(),
        }
    }

    #[inline]
    pub(crate) fn encode_bit(&mut self, prob: &mut u16, bit: u32) {
        let bound = (self.range >> PROB_BITS) * u32::from(*prob);
        if bit == 0 {
            self.range = bound;
            *prob += (PROB_ONE - *prob) >> MOVE_BITS;
        } else {
            self.low += u64::from(bound);
            self.range -= bound;
            *prob -= *prob >> MOVE_BITS;
        }
        while self.range < TOP {
            self.range <<= 8;
            self.shift_low();
        }
    }

    fn shift_low(&mut self) {
        if self.low < 0xFF00_0000 || self.low >= 1 << 32 {
            let carry = (self.low >> 32) as u8;
            let mut byte = self.cache;
            loop {
                self.out.push(byte.wrapping_add(carry));
                byte = 0xFF;
                self.cache_size -= 1;
                if self.cache_size == 0 {
                    break;
                }
            }
            self.cache = (self.low >> 24) as u8;
        }
        self.cache_size += 1;
        self.low = (self.low & 0x00FF_FFFF) << 8;
    }

    /// Flushes the pending state; no further bits may be coded afterwards.
    pub(crate) fn finish(&mut self) {
        for _ in 0..5 {
            self.shift_low();
        }
    }
}

pub(crate) struct Decoder<'a> {
    data: &'a [u8],
    pos: usize,
    range: u32,
    code: u32,
    overrun: usize,
}

impl<'a> Decoder<'a> {
    pub(crate) fn new(data: &'a [u8]) -> Result<Self> {
        if data.len() < 5 {
            return Err(MagError::Truncated);
        }
        if data[0] != 0 {
            return Err(MagError::Malformed("range coder stream must start with 0".into()));
        }
        let code = u32::from_be_bytes([data[1], data[2], data[3], data[4]]);
        Ok(Decoder {
            data,
            pos: 5,
            range: u32::MAX,
            code,
            overrun: 0,
        })
    }

    #[inline]
    fn next_byte(&mut self) -> u8 {
        match self.data.get(self.pos) {
            Some(&b) => {
                self.pos += 1;
                b
            }
            None => {
                self.overrun += 1;
                0
            }
        }
    }

    #[inline]
    pub(crate) fn decode_bit(&mut self, prob: &mut u16) -> u32 {
        let bound = (self.range >> PROB_BITS) * u32::from(*prob);
        let bit = if self.code < bound {
            self.range = bound;
            *prob += (PROB_ONE - *prob) >> MOVE_BITS;
            0
        } else {
            self.code -= bound;
            self.range -= bound;
            *prob -= *prob >> MOVE_BITS;
            1
        };
        while self.range < TOP {
            self.range <<= 8;
            self.code = (self.code << 8) | u32::from(self.next_byte());
        }
        bit
    }

    /// Fails once the decoder has read well past the end of its input.
    pub(crate) fn check_overrun(&self) -> Result<()> {
        if self.overrun > MAX_OVERRUN {
            return Err(MagError::Truncated);
        }
        Ok(())
    }

    /// Call after the end marker: the input must be consumed exactly.
    pub(crate) fn finish(self) -> Result<()> {
        if self.overrun > 0 {
            return Err(MagError::Truncated);
        }
        if self.pos != self.data.len() {
            return Err(MagError::Malformed(format!(
                "{} trailing bytes after end marker",
                self.data.len() - self.pos
            )));
        }
        Ok(())
    }
}

/// Codes `bits`-bit values MSB first through a binary tree of probabilities.
pub(crate) struct BitTree {
    probs: Vec<u16>,
    bits: u32,
}

impl BitTree {
    pub(crate) fn new(bits: u32) -> Self {
        BitTree {
            probs: vec![PROB_INIT; 1 << bits],
            bits,
        }
    }

    #[inline]
    pub(crate) fn encode(&mut self, enc: &mut Encoder, value: u32) {
        let mut m = 1usize;
        for i in (0..self.bits).rev() {
            let bit = (value >> i) & 1;
            enc.encode_bit(&mut self.probs[m], bit);
            m = (m << 1) | bit as usize;
        }
    }

    #[inline]
    pub(crate) fn decode(&mut self, dec: &mut Decoder) -> u32 {
        let mut m = 1usize;
        for _ in 0..self.bits {
            m = (m << 1) | dec.decode_bit(&mut self.probs[m]) as usize;
        }
        (m - (1 << self.bits)) as u32
    }
}

/// Positive 64-bit integers: the bit length through a 6-bit tree, then the
/// bits below the leading one, each with its own probability per
/// (length, position).
pub(crate) struct UIntModel {
    length: BitTree,
    mantissa: Vec<u16>,
}

impl UIntModel {
    pub(crate) fn new() -> Self {
        UIntModel {
            length: BitTree::new(6),
            mantissa: vec![PROB_INIT; 64 * 64],
        }
    }

    pub(crate) fn encode(&mut self, enc: &mut Encoder, v: u64) {
        debug_assert!(v >= 1);
        let k = 64 - v.leading_zeros();
        self.length.encode(enc, k - 1);
        let row = (k as usize - 1) * 64;
        for i in (0..k - 1).rev() {
            enc.encode_bit(&mut self.mantissa[row + i as usize], ((v >> i) & 1) as u32);
        }
    }

    pub(crate) fn decode(&mut self, dec: &mut Decoder) -> u64 {
        let k = self.length.decode(dec) + 1;
        let row = (k as usize - 1) * 64;
        let mut v = 1u64;
        for i in (0..k - 1).rev() {
            v = (v << 1) | u64::from(dec.decode_bit(&mut self.mantissa[row + i as usize]));
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bits_round_trip_and_consume_input_exactly() {
        let pattern: Vec<u32> = (0..5000u32).map(|i| (i * 7 % 13 < 4) as u32).collect();
        let mut enc = Encoder::new();
        let mut p = PROB_INIT;
        for &b in &pattern {
            enc.encode_bit(&mut p, b);
        }
        enc.finish();
        let mut dec = Decoder::new(&enc.out).unwrap();
        let mut p = PROB_INIT;
        for &b in &pattern {
            assert_eq!(dec.decode_bit(&mut p), b);
        }
        dec.finish().unwrap();
    }

    #[test]
    fn integers_round_trip() {
        let values = [1u64, 2, 3, 255, 256, 1 << 40, u64::MAX, 17, 17, 17];
        let mut enc = Encoder::new();
        let mut m = UIntModel::new();
        for &v in &values {
            m.encode(&mut enc, v);
        }
        enc.finish();
        let mut dec = Decoder::new(&enc.out).unwrap();
        let mut m = UIntModel::new();
        for &v in &values {
            assert_eq!(m.decode(&mut dec), v);
        }
        dec.finish().unwrap();
    }

    #[test]
    fn skewed_bits_compress() {
        let mut enc = Encoder::new();
        let mut p = PROB_INIT;
        for _ in 0..100_000 {
            enc.encode_bit(&mut p, 0);
        }
        enc.finish();
        assert!(enc.out.len() < 400, "{}", enc.out.len());
    }

    #[test]
    fn short_input_is_rejected() {
        assert!(matches!(Decoder::new(&[0, 0, 0]), Err(MagError::Truncated)));
        assert!(Decoder::new(&[1, 0, 0, 0, 0]).is_err());
    }
}
