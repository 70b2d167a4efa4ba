//! Builds a small MAG and prints its three string encodings.

use magcodec::codec::{encode_characteristic, encode_edge_set_string, encode_tau, write_magtxt};
use magcodec::indexing::index_to_edge;
use magcodec::{make_mag, CompanionTuple, EdgeIndex};

fn main() -> anyhow::Result<()> {
    let tau = CompanionTuple::new(vec![2, 1, 2])?;
    let mag = make_mag(tau.clone(), &[0, 3, 5])?;

    print!("{}", write_magtxt(&mag));
    for j in mag.edge_indices() {
        let e = index_to_edge(&tau, j)?;
        println!(
            "edge {}: {:?} -- {:?}",
            j.0,
            e.origin().coords(),
            e.destination().coords()
        );
    }
    println!("characteristic string: {}", encode_characteristic(&mag).bits());
    println!("encoded tuple:         {}", encode_tau(&tau).bits());
    let s = encode_edge_set_string(&mag);
    let hex: Vec<String> = s.as_bytes().iter().map(|b| format!("{b:02x}")).collect();
    println!("edge set string:       {} ({} bytes)", hex.join(""), s.as_bytes().len());
    assert!(index_to_edge(&tau, EdgeIndex(tau.num_possible_edges())).is_err());
    Ok(())
}
