//! Runs the worst-case distortion sweep and writes the reports.
//!
//! `cargo run --release --example distortion_sweep -- [OUT_DIR]`

use magcodec::experiments::{run_distortion_sweep, write_reports, ExperimentConfig};

fn main() -> anyhow::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "sweep_out".into());
    let cfg = ExperimentConfig {
        p_values: vec![8, 12, 16],
        ..ExperimentConfig::default()
    };
    let report = run_distortion_sweep(&cfg).into_result()?;
    write_reports(&report, out.as_ref())?;
    println!("signature {}", report.signature.as_deref().unwrap_or("-"));
    println!("p\tones\t|E_c|\tC(x)\tC(E)\tC(E(G))\tC(E)-C(E(G))");
    for r in &report.rows {
        println!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.p,
            r.ones,
            r.n_possible_edges,
            r.c_x,
            r.c_edgeset,
            r.c_graph_edgeset,
            r.distortion()
        );
    }
    println!("reports in {out}/");
    Ok(())
}
