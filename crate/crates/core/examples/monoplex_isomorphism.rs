//! Flattens a MAG into a classical graph and checks the canonical
//! isomorphism between them.

use magcodec::isomorphism::canonical_bijection;
use magcodec::{check_mag_graph_isomorphism, graph_to_mag, mag_to_graph, make_mag, CompanionTuple};

fn main() -> anyhow::Result<()> {
    let tau = CompanionTuple::new(vec![3, 2])?;
    let mag = make_mag(tau.clone(), &[0, 4, 7, 14])?;
    let g = mag_to_graph(&mag);

    println!(
        "MAG: {} composite vertices, {} edges",
        tau.num_composite_vertices(),
        mag.edge_count()
    );
    print!("graph:\n{}", g.to_text());
    println!("degrees: {:?}", g.degrees());
    println!("same characteristic string: {}", g.edge_bits() == mag.edge_bits());
    println!(
        "canonical bijection is an isomorphism: {}",
        check_mag_graph_isomorphism(&mag, &g, &canonical_bijection(&tau))?
    );
    // the graph alone does not determine the tuple: any factorization of 6 works
    let other = graph_to_mag(&g, &CompanionTuple::new(vec![2, 3])?)?;
    println!(
        "same graph read as tau (2, 3): edges {:?}",
        other.edge_indices().map(|e| e.0).collect::<Vec<_>>()
    );
    Ok(())
}
