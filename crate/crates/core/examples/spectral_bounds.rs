//! Gershgorin and power-iteration upper bounds on the largest eigenvalue.

use sparse_entropy::generators::{fem_matrix, random_psd};
use sparse_entropy::oracle::dense_spectrum;
use sparse_entropy::sparse::{gershgorin_upper_bound, power_iteration_bound, PowerIteration};

fn main() -> sparse_entropy::Result<()> {
    let spectrum: Vec<f64> = (1..=60).map(|i| i as f64 / 10.0).collect();
    let cases = [("fem:60", fem_matrix(60)?), ("random:60", random_psd(60, 3, &spectrum)?)];
    for (name, a) in &cases {
        let exact = dense_spectrum(a)?.max();
        let g = gershgorin_upper_bound(a);
        let p = power_iteration_bound(a, &PowerIteration::default())?;
        println!(
            "{name:<10} lambda_max {exact:.6}  gershgorin {:.6}  power {:.6}",
            g.lambda_max_upper, p.lambda_max_upper
        );
    }
    Ok(())
}
