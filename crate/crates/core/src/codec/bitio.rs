//! MSB-first bit writer and reader with Elias-gamma integer codes.

use std::io::{self, Write};

use crate::bits::BitString;
use crate::error::{MagError, Result};

const FLUSH_AT: usize = 1 << 16;

/// Buffered MSB-first bit sink. Bits are packed into bytes and forwarded to
/// the inner writer in chunks; [`BitWriter::finish`] zero-pads the final byte.
pub struct BitWriter<W: Write> {
    out: W,
    buf: Vec<u8>,
    acc: u64,
    nacc: u32,
    bits_written: u64,
}

impl<W: Write> BitWriter<W> {
    pub fn new(out: W) -> Self {
        BitWriter {
            out,
            buf: Vec::with_capacity(FLUSH_AT + 8),
            acc: 0,
            nacc: 0,
            bits_written: 0,
        }
    }

    pub fn bits_written(&self) -> u64 {
        self.bits_written
    }

    /// Writes the low `n` bits of `value`, most significant first. `n <= 64`.
    pub fn write_bits(&mut self, value: u64, n: u32) -> io::Result<()> {
        debug_assert!(n <= 64);
        if n == 0 {
            return Ok(());
        }
        let value = if n == 64 { value } else { value & ((1u64 << n) - 1) };
        self.bits_written += n as u64;
        let free = 64 - self.nacc;
        if n < free {
            self.acc = (self.acc << n) | value;
            self.nacc += n;
            return Ok(());
        }
        let rest = n - free;
        let top = value >> rest;
        let word = if free == 64 { top } else { (self.acc << free) | top };
        self.buf.extend_from_slice(&word.to_be_bytes());
        self.acc = if rest == 0 { 0 } else { value & ((1u64 << rest) - 1) };
        self.nacc = rest;
        if self.buf.len() >= FLUSH_AT {
            self.out.write_all(&self.buf)?;
            self.buf.clear();
        }
        Ok(())
    }

    pub fn write_bit(&mut self, bit: bool) -> io::Result<()> {
        self.write_bits(bit as u64, 1)
    }

    /// Elias gamma: `floor(log2 n)` zeros followed by the binary expansion of `n`.
    pub fn write_gamma(&mut self, n: u64) -> io::Result<()> {
        assert!(n >= 1, "Elias gamma is undefined for 0");
        let width = 64 - n.leading_zeros();
        if 2 * width - 1 <= 64 {
            self.write_bits(n, 2 * width - 1)
        } else {
            self.write_bits(0, width - 1)?;
            self.write_bits(n, width)
        }
    }

    pub fn write_bitstring(&mut self, s: &BitString) -> io::Result<()> {
        let full = (s.len() / 8) as usize;
        for &b in &s.as_bytes()[..full] {
            self.write_bits(b as u64, 8)?;
        }
        let tail = (s.len() % 8) as u32;
        if tail > 0 {
            self.write_bits((s.as_bytes()[full] >> (8 - tail)) as u64, tail)?;
        }
        Ok(())
    }

    /// Pads with zero bits to a byte boundary, flushes, and returns the inner
    /// writer together with the number of meaningful bits written.
    pub fn finish(mut self) -> io::Result<(W, u64)> {
        if self.nacc > 0 {
            let aligned = self.acc << (64 - self.nacc);
            let nbytes = self.nacc.div_ceil(8) as usize;
            self.buf.extend_from_slice(&aligned.to_be_bytes()[..nbytes]);
        }
        self.out.write_all(&self.buf)?;
        self.out.flush()?;
        Ok((self.out, self.bits_written))
    }
}

/// Reads bits MSB-first from a byte slice holding `len` meaningful bits.
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    data: &'a [u8],
    pos: u64,
    len: u64,
}

impl<'a> BitReader<'a> {
    pub fn new(data: &'a [u8]) -> Self {
        Self::with_len(data, data.len() as u64 * 8)
    }

    pub fn with_len(data: &'a [u8], len: u64) -> Self {
        debug_assert!(len <= data.len() as u64 * 8);
        BitReader { data, pos: 0, len }
    }

    pub fn position(&self) -> u64 {
        self.pos
    }

    pub fn remaining(&self) -> u64 {
        self.len - self.pos
    }

    /// Next 64 bits left-aligned, zero-filled past the end.
    fn peek64(&self) -> u64 {
        let byte = (self.pos / 8) as usize;
        let shift = (self.pos % 8) as u32;
        let mut word = [0u8; 9];
        let avail = self.data.len().saturating_sub(byte).min(9);
        word[..avail].copy_from_slice(&self.data[byte..byte + avail]);
        let hi = u64::from_be_bytes(word[..8].try_into().unwrap());
        let v = if shift == 0 {
            hi
        } else {
            (hi << shift) | (word[8] as u64 >> (8 - shift))
        };
        let left = self.remaining();
        if left >= 64 {
            v
        } else if left == 0 {
            0
        } else {
            v & !(u64::MAX >> left)
        }
    }

    pub fn read_bits(&mut self, n: u32) -> Result<u64> {
        debug_assert!(n <= 64);
        if n == 0 {
            return Ok(0);
        }
        if self.remaining() < n as u64 {
            return Err(MagError::Truncated);
        }
        let v = self.peek64() >> (64 - n);
        self.pos += n as u64;
        Ok(v)
    }

    pub fn read_bit(&mut self) -> Result<bool> {
        Ok(self.read_bits(1)? == 1)
    }

    pub fn read_gamma(&mut self) -> Result<u64> {
        let mut zeros = 0u32;
        loop {
            if self.remaining() == 0 {
                return Err(MagError::Truncated);
            }
            let w = self.peek64();
            if w == 0 {
                let step = self.remaining().min(64);
                zeros += step as u32;
                self.pos += step;
                if zeros > 63 {
                    return Err(MagError::Malformed("Elias-gamma prefix longer than 63 zeros".into()));
                }
                continue;
            }
            let lz = w.leading_zeros();
            zeros += lz;
            self.pos += lz as u64;
            break;
        }
        if zeros > 63 {
            return Err(MagError::Malformed("Elias-gamma prefix longer than 63 zeros".into()));
        }
        self.read_bits(zeros + 1)
    }
}

pub fn encode_gamma(n: u64) -> Result<BitString> {
    if n == 0 {
        return Err(MagError::ZeroValue);
    }
    let mut w = BitWriter::new(Vec::new());
    w.write_gamma(n)?;
    let (bytes, len) = w.finish()?;
    BitString::from_bytes(bytes, len)
}
