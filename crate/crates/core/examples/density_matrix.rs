//! Entropy of `A / tr(A)` for the stiffness matrix, printed as the JSON
//! report the CLI emits, and of the maximally mixed state.

use sparse_entropy::generators::maximally_mixed;
use sparse_entropy::prelude::*;

fn main() -> Result<()> {
    let a = fem_matrix(1000)?;
    let est = EntropyEstimator::new(&a, 8).normalize(true).seed(1).adaptive()?;
    println!("{}", serde_json::to_string_pretty(&est).expect("serializable"));

    let rho = maximally_mixed(1000)?;
    let mixed = EntropyEstimator::new(&rho, 8).seed(1).adaptive()?;
    println!("maximally mixed: {:.5} (ln 1000 = {:.5})", mixed.value, 1000f64.ln());
    Ok(())
}
