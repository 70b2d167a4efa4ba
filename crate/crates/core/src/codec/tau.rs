//! Self-delimiting encoding of a companion tuple: `γ(p) γ(|A[1]|) … γ(|A[p]|)`.

use crate::bits::BitString;
use crate::codec::bitio::{BitReader, BitWriter};
use crate::error::{MagError, Result};
use crate::mag::CompanionTuple;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedTau(BitString);

impl EncodedTau {
    pub fn bits(&self) -> &BitString {
        &self.0
    }

    /// Packed bytes as stored in a `.taubits` file.
    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }
}

pub fn encode_tau(tau: &CompanionTuple) -> EncodedTau {
    let mut w = BitWriter::new(Vec::new());
    // writing into a Vec cannot fail
    w.write_gamma(tau.order() as u64).unwrap();
    for &s in tau.sizes() {
        w.write_gamma(s).unwrap();
    }
    let (bytes, len) = w.finish().unwrap();
    EncodedTau(BitString::from_bytes(bytes, len).expect("writer pads with zeros"))
}

/// Reads one encoded tuple from the current reader position.
pub fn read_tau(r: &mut BitReader<'_>) -> Result<CompanionTuple> {
    let p = r.read_gamma()?;
    if p > r.remaining() {
        // every size takes at least one bit
        return Err(MagError::Truncated);
    }
    let sizes = (0..p).map(|_| r.read_gamma()).collect::<Result<Vec<_>>>()?;
    CompanionTuple::new(sizes)
}

/// Decodes a tuple that must occupy the whole bit string.
pub fn decode_tau(bits: &BitString) -> Result<CompanionTuple> {
    let mut r = BitReader::with_len(bits.as_bytes(), bits.len());
    let tau = read_tau(&mut r)?;
    if r.remaining() != 0 {
        return Err(MagError::Malformed(format!("{} bits after the tuple", r.remaining())));
    }
    Ok(tau)
}

/// Decodes a `.taubits` byte payload: the tuple followed by zero padding.
pub fn decode_tau_bytes(bytes: &[u8]) -> Result<CompanionTuple> {
    let mut r = BitReader::new(bytes);
    let tau = read_tau(&mut r)?;
    check_padding(&mut r)?;
    Ok(tau)
}

pub(crate) fn check_padding(r: &mut BitReader<'_>) -> Result<()> {
    let rest = r.remaining();
    if rest >= 8 || r.read_bits(rest as u32)? != 0 {
        return Err(MagError::Malformed("trailing data after the stream".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_tuples() {
        let t = CompanionTuple::new(vec![2, 1, 2]).unwrap();
        let e = encode_tau(&t);
        assert_eq!(e.bits().to_string(), "011".to_owned() + "010" + "1" + "010");
        assert_eq!(decode_tau(e.bits()).unwrap(), t);
        assert_eq!(decode_tau_bytes(e.as_bytes()).unwrap(), t);

        let one = CompanionTuple::new(vec![1]).unwrap();
        let e = encode_tau(&one);
        assert_eq!(e.bits().to_string(), "11");
        assert_eq!(decode_tau(e.bits()).unwrap(), one);
    }

    #[test]
    fn malformed_streams() {
        assert!(decode_tau(&"01".parse().unwrap()).is_err());
        // p = 3 but only two sizes
        assert!(matches!(
            decode_tau(&"01111".parse().unwrap()),
            Err(MagError::Truncated)
        ));
        // a trailing bit
        assert!(decode_tau(&"111".parse().unwrap()).is_err());
        // non-zero padding in the byte form
        assert!(decode_tau_bytes(&[0b1110_0000]).is_err());
        assert!(decode_tau_bytes(&[0b1100_0000, 0]).is_err());
    }

    proptest! {
        #[test]
        fn random_tuples_round_trip(sizes in proptest::collection::vec(1u64..16, 1..9)) {
            let t = CompanionTuple::new(sizes).unwrap();
            prop_assert_eq!(decode_tau(encode_tau(&t).bits()).unwrap(), t.clone());
            prop_assert_eq!(decode_tau_bytes(encode_tau(&t).as_bytes()).unwrap(), t);
        }
    }
}
