//! Compression-based complexity estimates with the built-in compressors.

use magcodec::complexity::{estimate, estimate_conditional, Registry};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

fn main() -> anyhow::Result<()> {
    let zeros = vec![0u8; 1 << 20];
    let text = "the quick brown fox jumps over the lazy dog. "
        .repeat(2000)
        .into_bytes();
    let mut noise = vec![0u8; 1 << 16];
    ChaCha20Rng::seed_from_u64(7).fill_bytes(&mut noise);

    let registry = Registry::builtin();
    for name in registry.names() {
        let c = registry.get(name)?;
        let c = c.as_ref();
        println!("compressor {name}");
        for (label, data) in [("zeros", &zeros), ("text", &text), ("noise", &noise)] {
            let e = estimate(c, data)?;
            println!(
                "  {label:>5}: {:>8} bits -> {:>8} bits ({:.4} of raw)",
                e.raw_len,
                e.compressed_len,
                e.compressed_len as f64 / e.raw_len as f64
            );
        }
        println!("  C(noise | noise) = {} bits", estimate_conditional(c, &noise, &noise)?);
        println!("  C(noise | text)  = {} bits", estimate_conditional(c, &noise, &text)?);
    }
    Ok(())
}
