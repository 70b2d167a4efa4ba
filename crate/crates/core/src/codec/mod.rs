//! Bit-exact encoders and decoders for the three string forms of a MAG:
//! characteristic strings, composite edge set strings and encoded companion
//! tuples, plus the integer codes and the text format they build on.

pub mod bitio;
pub mod characteristic;
pub mod edgeset;
pub mod pairing;
pub mod tau;
pub mod text;

pub use bitio::{BitReader, BitWriter};
pub use characteristic::{
    decode_characteristic, encode_characteristic, read_charbits, write_charbits, CharacteristicString,
};
pub use edgeset::{
    decode_edge_set_string, decode_edge_set_string_with_cap, edge_set_from_characteristic, encode_edge_set_string,
    flag_projection, write_edge_set, EdgeRecord, EdgeSetReader, EdgeSetString,
};
pub use pairing::{pair, pair_tuple, unpair, unpair_tuple};
pub use tau::{decode_tau, decode_tau_bytes, encode_tau, EncodedTau};
pub use text::{parse_magtxt, parse_magtxt_with_cap, write_magtxt};

use crate::bits::BitString;
use crate::error::{MagError, Result};

/// Elias-gamma code of `n >= 1`.
pub fn encode_int_prefix_free(n: u64) -> Result<BitString> {
    bitio::encode_gamma(n)
}

/// Decodes a single Elias-gamma code word spanning the whole string.
pub fn decode_int_prefix_free(bits: &BitString) -> Result<u64> {
    let mut r = BitReader::with_len(bits.as_bytes(), bits.len());
    let v = r.read_gamma()?;
    if r.remaining() != 0 {
        return Err(MagError::Malformed("bits left after the code word".into()));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefix_free_examples() {
        assert_eq!(encode_int_prefix_free(1).unwrap().to_string(), "1");
        assert_eq!(encode_int_prefix_free(2).unwrap().to_string(), "010");
        assert_eq!(encode_int_prefix_free(4).unwrap().to_string(), "00100");
        assert!(matches!(encode_int_prefix_free(0), Err(MagError::ZeroValue)));
        for n in 1..2000 {
            assert_eq!(decode_int_prefix_free(&encode_int_prefix_free(n).unwrap()).unwrap(), n);
        }
        assert!(decode_int_prefix_free(&"0101".parse().unwrap()).is_err());
    }
}
