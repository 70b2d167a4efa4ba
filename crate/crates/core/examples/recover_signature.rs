//! Recovers a binary signature from the edge set string of the MAG built
//! from it, for several topologies.

use magcodec::bits::BitString;
use magcodec::codec::{encode_characteristic, encode_edge_set_string};
use magcodec::{recover_signature, tau_from_bitstring, BinarySignature, SimpleMag};

fn main() -> anyhow::Result<()> {
    let w: BinarySignature = std::env::args().nth(1).as_deref().unwrap_or("1011001").parse()?;
    let tau = tau_from_bitstring(&w)?;
    let n = tau.num_possible_edges();
    println!("w = {w}, tau = {:?}, |E_c| = {n}", tau.sizes());

    let topologies = [
        ("empty", BitString::zeros(n)),
        ("complete", BitString::from_bools((0..n).map(|_| true))),
        ("alternating", BitString::from_bools((0..n).map(|j| j % 2 == 0))),
    ];
    for (name, bits) in topologies {
        let mag = SimpleMag::from_edge_bits(tau.clone(), bits)?;
        let r = recover_signature(&encode_edge_set_string(&mag))?;
        println!(
            "{name:>11}: recovered {} sizes {:?}; characteristic string has {} bits and no sizes",
            r.signature,
            r.sizes,
            encode_characteristic(&mag).len()
        );
        assert_eq!(r.signature, w);
    }
    Ok(())
}
