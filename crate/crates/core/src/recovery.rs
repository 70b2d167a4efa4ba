//! Recovers the companion tuple, and hence its binary signature, from a
//! composite edge set string alone.
//!
//! The procedure folds over the records: every endpoint goes into `V′`, the
//! i-th coordinates of `V′` form `A_i`, `z_i = |A_i|`, and signature bit `i`
//! is 1 iff `z_i >= 2`. Only the enumeration of all possible edges matters,
//! never the presence flags.

use std::collections::HashSet;

use crate::bits::BitString;
use crate::codec::edgeset::{EdgeSetReader, EdgeSetString};
use crate::error::Result;
use crate::mag::BinarySignature;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveryResult {
    /// `z_i = |A_i|`.
    pub sizes: Vec<u64>,
    pub signature: BinarySignature,
    /// Set when the stream has no records. The space then has a single
    /// composite vertex, the sizes are all 1 by convention and only `p` is
    /// read from the stream header.
    pub degenerate: bool,
}

/// Values seen in one coordinate position. Small labels use a bitmap.
#[derive(Default)]
struct LabelSet {
    dense: Vec<u64>,
    sparse: HashSet<u64>,
    count: u64,
}

const DENSE_LIMIT: u64 = 1 << 24;

impl LabelSet {
    #[inline]
    fn insert(&mut self, v: u64) {
        if v < DENSE_LIMIT {
            let word = (v / 64) as usize;
            if word >= self.dense.len() {
                self.dense.resize(word + 1, 0);
            }
            let mask = 1u64 << (v % 64);
            if self.dense[word] & mask == 0 {
                self.dense[word] |= mask;
                self.count += 1;
            }
        } else if self.sparse.insert(v) {
            self.count += 1;
        }
    }
}

pub fn recover_signature(s: &EdgeSetString) -> Result<RecoveryResult> {
    recover_from_reader(s.reader()?)
}

pub fn recover_from_reader(mut reader: EdgeSetReader<'_>) -> Result<RecoveryResult> {
    let p = reader.order();
    let mut aspects: Vec<LabelSet> = (0..p).map(|_| LabelSet::default()).collect();
    let mut records = 0u64;
    while let Some(rec) = reader.next_record()? {
        for endpoint in [rec.origin, rec.destination] {
            for (set, &c) in aspects.iter_mut().zip(endpoint) {
                set.insert(c);
            }
        }
        records += 1;
    }
    reader.finish()?;

    let degenerate = records == 0;
    let sizes: Vec<u64> = if degenerate {
        vec![1; p]
    } else {
        aspects.iter().map(|a| a.count).collect()
    };
    let signature = BinarySignature::new(BitString::from_bools(sizes.iter().map(|&z| z >= 2)));
    Ok(RecoveryResult {
        sizes,
        signature,
        degenerate,
    })
}
