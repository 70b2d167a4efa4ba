//! Compressed size as a computable, compressor-relative stand-in for
//! prefix algorithmic complexity.
//!
//! Estimates are always tagged with the compressor that produced them and
//! are only comparable with estimates from the same compressor.

mod lz;
mod rangecoder;
mod rle;

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::sync::Arc;

use crate::error::{MagError, Result};

pub use lz::{Lz, MAX_MATCH};
pub use rle::Rle;

/// A lossless, deterministic byte compressor with a streaming encoder.
///
/// Implementations hold no state between calls, so one instance may serve
/// concurrent estimates.
pub trait Compressor: Send + Sync {
    fn name(&self) -> &str;

    /// Starts a compressed stream into `sink`. Bytes written to the returned
    /// writer are compressed; [`CompressWriter::finish`] terminates the
    /// stream.
    fn encoder<'a>(&self, sink: Box<dyn Write + 'a>) -> Box<dyn CompressWriter + 'a>;

    fn decompress(&self, data: &[u8]) -> Result<Vec<u8>>;

    fn compress(&self, data: &[u8]) -> Result<Vec<u8>> {
        let mut out = Vec::new();
        let mut enc = self.encoder(Box::new(&mut out));
        enc.write_all(data)?;
        enc.finish()?;
        Ok(out)
    }
}

pub trait CompressWriter: Write {
    fn finish(self: Box<Self>) -> io::Result<()>;
}

/// One compressed-size measurement, in bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityEstimate {
    pub raw_len: u64,
    pub compressed_len: u64,
    pub compressor: String,
}

/// Byte counter used as the sink when only the compressed size matters.
#[derive(Debug, Default)]
pub struct CountingWriter {
    pub bytes: u64,
}

impl Write for CountingWriter {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        self.bytes += buf.len() as u64;
        Ok(buf.len())
    }

    fn flush(&mut self) -> io::Result<()> {
        Ok(())
    }
}

/// Counts bytes on their way into an inner writer.
struct Tee<'a> {
    inner: &'a mut dyn Write,
    bytes: u64,
}

impl Write for Tee<'_> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.bytes += n as u64;
        Ok(n)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

pub fn estimate(c: &dyn Compressor, data: &[u8]) -> Result<ComplexityEstimate> {
    estimate_with(c, |w| Ok(w.write_all(data)?))
}

/// [`estimate`] on bytes produced incrementally by `produce`, so that large
/// inputs never need to exist in memory at once.
pub fn estimate_with<F>(c: &dyn Compressor, produce: F) -> Result<ComplexityEstimate>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    let mut counter = CountingWriter::default();
    let raw = {
        let mut enc = c.encoder(Box::new(&mut counter));
        let mut tee = Tee {
            inner: &mut enc,
            bytes: 0,
        };
        produce(&mut tee)?;
        let raw = tee.bytes;
        enc.finish()?;
        raw
    };
    Ok(ComplexityEstimate {
        raw_len: raw * 8,
        compressed_len: counter.bytes * 8,
        compressor: c.name().to_string(),
    })
}

/// `max(0, C(given ‖ target) − C(given))` in bits.
pub fn estimate_conditional(c: &dyn Compressor, target: &[u8], given: &[u8]) -> Result<u64> {
    estimate_conditional_with(c, |w| Ok(w.write_all(target)?), |w| Ok(w.write_all(given)?))
}

/// [`estimate_conditional`] with streamed producers. `given` runs twice.
pub fn estimate_conditional_with<T, G>(c: &dyn Compressor, target: T, given: G) -> Result<u64>
where
    T: FnOnce(&mut dyn Write) -> Result<()>,
    G: Fn(&mut dyn Write) -> Result<()>,
{
    let alone = estimate_with(c, &given)?;
    let joint = estimate_with(c, |w| {
        given(w)?;
        target(w)
    })?;
    Ok(joint.compressed_len.saturating_sub(alone.compressed_len))
}

/// Compressors addressable by name.
#[derive(Clone)]
pub struct Registry {
    entries: BTreeMap<String, Arc<dyn Compressor>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry {
            entries: BTreeMap::new(),
        }
    }

    /// The built-in `lz` and `rle` compressors.
    pub fn builtin() -> Self {
        let mut r = Registry::empty();
        r.register(Arc::new(Lz));
        r.register(Arc::new(Rle));
        r
    }

    /// Adds `c` under its own name, returning any compressor it replaces.
    pub fn register(&mut self, c: Arc<dyn Compressor>) -> Option<Arc<dyn Compressor>> {
        self.entries.insert(c.name().to_string(), c)
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn Compressor>> {
        self.entries
            .get(name)
            .cloned()
            .ok_or_else(|| MagError::UnknownCompressor(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}

impl Default for Registry {
    fn default() -> Self {
        Registry::builtin()
    }
}

impl std::fmt::Debug for Registry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}
