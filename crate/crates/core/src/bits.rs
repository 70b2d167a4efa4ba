//! Packed bit strings, most significant bit first within each byte.

use std::fmt;
use std::str::FromStr;

use crate::error::{MagError, Result};

/// A finite bit sequence packed MSB-first. Padding bits in the last byte are
/// always zero, so two equal sequences have equal byte representations.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    bytes: Vec<u8>,
    len: u64,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn zeros(len: u64) -> Self {
        BitString {
            bytes: vec![0; bytes_for(len)],
            len,
        }
    }

    /// Wraps packed bytes. Fails if the byte count does not match `len` or the
    /// padding bits are not zero.
    pub fn from_bytes(bytes: Vec<u8>, len: u64) -> Result<Self> {
        if bytes.len() != bytes_for(len) {
            return Err(MagError::LengthMismatch {
                expected: bytes_for(len) as u64 * 8,
                got: bytes.len() as u64 * 8,
            });
        }
        let s = BitString { bytes, len };
        if let Some(&last) = s.bytes.last() {
            let used = (len % 8) as u32;
            if used != 0 && last & (0xFF >> used) != 0 {
                return Err(MagError::Malformed("non-zero padding bits".into()));
            }
        }
        Ok(s)
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut s = BitString::new();
        for b in bits {
            s.push(b);
        }
        s
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(8) {
            self.bytes.push(0);
        }
        if bit {
            let last = self.bytes.len() - 1;
            self.bytes[last] |= 0x80 >> (self.len % 8);
        }
        self.len += 1;
    }

    /// # Panics
    /// If `i >= len`.
    pub fn get(&self, i: u64) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.bytes[(i / 8) as usize] & (0x80 >> (i % 8)) != 0
    }

    /// # Panics
    /// If `i >= len`.
    pub fn set(&mut self, i: u64, bit: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 0x80 >> (i % 8);
        let byte = &mut self.bytes[(i / 8) as usize];
        if bit {
            *byte |= mask;
        } else {
            *byte &= !mask;
        }
    }

    pub fn count_ones(&self) -> u64 {
        self.bytes.iter().map(|b| b.count_ones() as u64).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Positions of set bits in ascending order, skipping zero bytes.
    pub fn iter_ones(&self) -> impl Iterator<Item = u64> + '_ {
        self.bytes
            .iter()
            .enumerate()
            .filter(|(_, &b)| b != 0)
            .flat_map(|(i, &b)| {
                (0..8u64)
                    .filter(move |k| b & (0x80 >> k) != 0)
                    .map(move |k| i as u64 * 8 + k)
            })
    }
}

pub(crate) fn bytes_for(len: u64) -> usize {
    len.div_ceil(8) as usize
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len <= 128 {
            write!(f, "BitString(\"{self}\")")
        } else {
            write!(f, "BitString(len={}, ones={})", self.len, self.count_ones())
        }
    }
}

impl FromStr for BitString {
    type Err = MagError;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = BitString::new();
        for (i, c) in s.trim().chars().enumerate() {
            match c {
                '0' => out.push(false),
                '1' => out.push(true),
                _ => {
                    return Err(MagError::Parse {
                        line: 1,
                        msg: format!("character {i} of bit string is `{c}`"),
                    })
                }
            }
        }
        Ok(out)
    }
}
