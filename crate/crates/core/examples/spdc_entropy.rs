//! Entanglement entropy of a photon pair from a toy down-conversion model.
//! Pass a TOML file to override the defaults, e.g. `m = 128`.
//!
//!     cargo run --release --example spdc_entropy [config.toml]

use sparse_entropy::prelude::*;
use sparse_entropy::oracle::{check_psd, DEFAULT_MAX_DIM};

fn main() -> Result<()> {
    let params = match std::env::args().nth(1) {
        Some(path) => SpdcParams::from_config_file(path)?,
        None => SpdcParams::default(),
    };
    let spdc = spdc_density_matrix(&params)?;
    for w in &spdc.warnings {
        eprintln!("warning: {w}");
    }
    let a = &spdc.matrix;
    println!(
        "grid: {} points, step {:.3e} rad/s, pump FWHM {:.1} points, bandwidth {}",
        a.dim(),
        spdc.grid_step,
        spdc.fwhm_points,
        spdc.bandwidth
    );

    let est = EntropyEstimator::new(a, 20).normalize(true).seed(1).adaptive()?;
    println!(
        "estimate: {:.4} ± {:.4} nats ({} samples{})",
        est.value,
        est.tau,
        est.samples_used,
        if est.capped { ", hit the sample cap" } else { "" }
    );

    if a.dim() <= DEFAULT_MAX_DIM {
        let t = a.trace();
        let rho = SymmetricSparseMatrix::from_triplets(a.dim(), a.triplets().map(|(i, j, v)| (i, j, v / t)))?;
        let spec = dense_spectrum(&rho)?;
        check_psd(&spec)?;
        println!("exact:    {:.4} nats", exact_entropy(&spec)?);
    }
    Ok(())
}
