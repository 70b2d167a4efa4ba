//! Runs the uniform-space control next to the worst-case sweep and compares
//! the distortion trends.

use magcodec::experiments::stats::slope;
use magcodec::experiments::{run_distortion_sweep, run_uniform_control, ExperimentConfig, SweepReport};

fn trend(r: &SweepReport) -> Option<f64> {
    let p: Vec<f64> = r.sweep_p().iter().map(|&p| p as f64).collect();
    let d: Vec<f64> = r.rows.iter().map(|row| row.distortion() as f64).collect();
    slope(&p, &d)
}

fn main() -> anyhow::Result<()> {
    let compressor = std::env::args().nth(1).unwrap_or_else(|| "lz".into());
    let cfg = ExperimentConfig {
        p_values: vec![8, 12, 16],
        compressor,
        ..ExperimentConfig::default()
    };
    let worst = run_distortion_sweep(&cfg).into_result()?;
    let uniform = run_uniform_control(&cfg).into_result()?;
    for (p, (w, u)) in worst.sweep_p().iter().zip(worst.rows.iter().zip(&uniform.rows)) {
        println!(
            "p={p:>2}: worst-case {:>10}  uniform (order {:>2}) {:>10}",
            w.distortion(),
            u.p,
            u.distortion()
        );
    }
    println!("slopes: worst-case {:?}, uniform {:?}", trend(&worst), trend(&uniform));
    Ok(())
}
