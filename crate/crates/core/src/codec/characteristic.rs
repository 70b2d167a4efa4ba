//! Characteristic strings: bit `j` is 1 iff possible edge `j` is present.

use std::io::{Read, Write};

use crate::bits::BitString;
use crate::error::{MagError, Result};
use crate::mag::{CompanionTuple, SimpleMag, SizeCap};

/// Presence bits over all possible composite edges, in edge-index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicString(BitString);

impl CharacteristicString {
    pub fn new(bits: BitString) -> Self {
        CharacteristicString(bits)
    }

    pub fn bits(&self) -> &BitString {
        &self.0
    }

    pub fn len(&self) -> u64 {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Packed MSB-first bytes, zero-padded.
    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }

    pub fn into_bits(self) -> BitString {
        self.0
    }
}

pub fn encode_characteristic(mag: &SimpleMag) -> CharacteristicString {
    CharacteristicString(mag.edge_bits().clone())
}

/// Rebuilds the MAG. The companion tuple is required: the string alone does
/// not determine the multidimensional space.
pub fn decode_characteristic(tau: &CompanionTuple, x: &CharacteristicString) -> Result<SimpleMag> {
    SizeCap::default().check(tau)?;
    SimpleMag::from_edge_bits(tau.clone(), x.0.clone())
}

/// `.charbits`: 8-byte big-endian bit length, then the packed bits.
pub fn write_charbits<W: Write>(x: &CharacteristicString, mut out: W) -> Result<()> {
    out.write_all(&x.len().to_be_bytes())?;
    out.write_all(x.as_bytes())?;
    out.flush()?;
    Ok(())
}

pub fn read_charbits<R: Read>(mut input: R) -> Result<CharacteristicString> {
    let mut header = [0u8; 8];
    input.read_exact(&mut header).map_err(|e| match e.kind() {
        std::io::ErrorKind::UnexpectedEof => MagError::Truncated,
        _ => MagError::Io(e),
    })?;
    let len = u64::from_be_bytes(header);
    let mut bytes = Vec::new();
    input.read_to_end(&mut bytes)?;
    let expected = crate::bits::bytes_for(len);
    if bytes.len() < expected {
        return Err(MagError::Truncated);
    }
    if bytes.len() > expected {
        return Err(MagError::Malformed(format!(
            "{} trailing bytes after a {len}-bit characteristic string",
            bytes.len() - expected
        )));
    }
    Ok(CharacteristicString(BitString::from_bytes(bytes, len)?))
}
