//! Write a matrix in Matrix Market format and read it back.

use sparse_entropy::generators::fem_matrix;
use sparse_entropy::sparse::{read_matrix_market, write_matrix_market};

fn main() -> sparse_entropy::Result<()> {
    let a = fem_matrix(8)?;
    let path = std::env::temp_dir().join("sparse_entropy_fem8.mtx");
    write_matrix_market(&a, &path)?;
    print!("{}", std::fs::read_to_string(&path).expect("just written"));
    let b = read_matrix_market(&path)?;
    assert_eq!(a, b);
    println!("round trip ok: {} ({} stored entries)", path.display(), b.nnz());
    Ok(())
}
