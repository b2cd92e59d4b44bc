//! Uniform error of the Chebyshev series of `x log x` against its a-priori
//! bound `x0 / (2n(n+1))`.

use sparse_entropy::chebyshev::{coefficients, entropy_function, truncation_error_bound};

fn main() -> sparse_entropy::Result<()> {
    let x0 = 1.0;
    println!("{:>4} {:>12} {:>12}", "n", "sup error", "bound");
    for n in [1, 2, 4, 8, 16, 32, 64] {
        let p = coefficients(n, x0)?;
        let mut sup: f64 = 0.0;
        for i in 0..=10_000 {
            let x = x0 * i as f64 / 10_000.0;
            sup = sup.max((p.evaluate(x)? - entropy_function(x)?).abs());
        }
        println!("{n:>4} {sup:>12.3e} {:>12.3e}", truncation_error_bound(n, x0)?);
    }
    Ok(())
}
