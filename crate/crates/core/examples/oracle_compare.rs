//! Stochastic estimate against the dense eigensolver on a random PSD matrix,
//! for increasing polynomial degree.

use sparse_entropy::prelude::*;

fn main() -> Result<()> {
    let m = 300;
    let spectrum: Vec<f64> = (0..m).map(|i| ((i * 37) % 101) as f64 / 50.0).collect();
    let a = random_psd(m, 11, &spectrum)?;
    let exact = exact_entropy(&dense_spectrum(&a)?)?;
    println!("exact {exact:.4}");
    for n in [2, 4, 8, 16, 32] {
        let est = EntropyEstimator::new(&a, n).seed(1).adaptive()?;
        println!(
            "n = {n:>2}: {:>10.4} ± {:<8.4} N = {:<5} error {:+.4}",
            est.value,
            est.tau,
            est.samples_used,
            est.value - exact
        );
    }
    Ok(())
}
