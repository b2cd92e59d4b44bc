//! Entropy of the 1-D stiffness matrix for several sizes, compared with the
//! closed-form spectrum.
//!
//!     cargo run --release --example fem_table1 [seed]

use sparse_entropy::cli::{table1_rows, TABLE1_DEGREES, TABLE1_SIZES};

fn main() -> sparse_entropy::Result<()> {
    let seed = std::env::args().nth(1).map_or(1, |s| s.parse().expect("seed must be an integer"));
    let rows = table1_rows(&TABLE1_SIZES, &TABLE1_DEGREES, 0.95, seed)?;
    println!("{:>6} {:>3} {:>5} {:>12} {:>12} {:>9} {:>9}", "m", "n", "N", "exact", "estimate", "rel.err", "tau");
    for r in rows {
        println!(
            "{:>6} {:>3} {:>5} {:>12.3} {:>12.3} {:>8.3}% {:>9.3}",
            r.m,
            r.degree,
            r.samples,
            r.exact_entropy,
            r.estimate,
            100.0 * r.rel_error,
            r.tau
        );
    }
    Ok(())
}
