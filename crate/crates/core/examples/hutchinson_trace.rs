//! Rademacher trace estimation: the sample mean of `w^T A w` converges to
//! `tr(A)`.

use sparse_entropy::estimator::{hutchinson_trace, RademacherSampler};
use sparse_entropy::generators::random_psd;

fn main() -> sparse_entropy::Result<()> {
    let m = 200;
    let spectrum: Vec<f64> = (0..m).map(|i| (i % 7) as f64 * 0.5).collect();
    let a = random_psd(m, 42, &spectrum)?;
    let sampler = RademacherSampler::new(1);
    println!("tr(A) = {:.4}", a.trace());
    for n in [1, 10, 100, 1000, 10000] {
        let t = hutchinson_trace(&a, &sampler, n)?;
        println!("N = {n:>5}: {t:>10.4}  (error {:+.4})", t - a.trace());
    }
    Ok(())
}
