//! Run-length coding with an order-0 adaptive byte model.
//!
//! Each run is `run_length + 1` as an integer followed by its byte; an
//! integer value of 1 ends the stream.

use std::io::{self, Write};

use super::rangecoder::{BitTree, Decoder, Encoder, UIntModel};
use super::{CompressWriter, Compressor};
use crate::error::{MagError, Result};

/// Runs longer than this are rejected when decoding.
const MAX_RUN: u64 = 1 << 40;

/// The built-in run-length baseline, registered as `"rle"`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rle;

impl Compressor for Rle {
    fn name(&self) -> &str {
        "rle"
    }

    fn encoder<'a>(&self, sink: Box<dyn Write + 'a>) -> Box<dyn CompressWriter + 'a> {
        Box::new(RleWriter {
            sink,
            rc: Encoder::new(),
            runs: UIntModel::new(),
            bytes: BitTree::new(8),
            current: 0,
            run: 0,
        })
    }

    fn decompress(&self, data: &[u8]) -> Result<Vec<u8>> {
        let mut dec = Decoder::new(data)?;
        let mut runs = UIntModel::new();
        let mut bytes = BitTree::new(8);
        let mut out = Vec::new();
        loop {
            dec.check_overrun()?;
            let v = runs.decode(&mut dec);
            if v == 1 {
                break;
            }
            let run = v - 1;
            if run > MAX_RUN {
                return Err(MagError::Malformed(format!("run of {run} bytes")));
            }
            let byte = bytes.decode(&mut dec) as u8;
            out.resize(out.len() + run as usize, byte);
        }
        dec.finish()?;
        Ok(out)
    }
}

struct RleWriter<'a> {
    sink: Box<dyn Write + 'a>,
    rc: Encoder,
    runs: UIntModel,
    bytes: BitTree,
    current: u8,
    run: u64,
}

impl RleWriter<'_> {
    fn emit_run(&mut self) {
        if self.run > 0 {
            self.runs.encode(&mut self.rc, self.run + 1);
            self.bytes.encode(&mut self.rc, u32::from(self.current));
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

impl Write for RleWriter<'_> {
    fn write(&mut self, data: &[u8]) -> io::Result<usize> {
        let mut rest = data;
        while let Some(&b) = rest.first() {
            if self.run == 0 || b != self.current {
                self.emit_run();
                self.current = b;
                self.run = 0;
            }
            let same = rest.iter().take_while(|&&x| x == b).count();
            self.run += same as u64;
            rest = &rest[same..];
        }
        self.drain_output()?;
        Ok(data.len())
    }

    fn flush(&mut self) -> io::Result<()> {
        self.drain_output()?;
        self.sink.flush()
    }
}

impl CompressWriter for RleWriter<'_> {
    fn finish(mut self: Box<Self>) -> io::Result<()> {
        self.emit_run();
        self.runs.encode(&mut self.rc, 1);
        self.rc.finish();
        self.drain_output()?;
        self.sink.flush()
    }
}
