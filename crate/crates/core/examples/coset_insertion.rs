//! A coset construction inserted into the new family at q = 2.

use subspace_codes::theorems::{cross_certificate, example5_insertion, insertion_build, th41_vectors, th42_insert};
use subspace_codes::verify::{check_cdc, Mode};

fn main() -> subspace_codes::Result<()> {
    let (q, n, delta, k) = (2, 17, 3, 8);
    let ins = example5_insertion();
    println!("{}", th42_insert(q, n, delta, k, &ins)?);

    let code = insertion_build(q, delta, &ins)?;
    println!("inserted code: {} codewords", code.len());
    let cert = cross_certificate(&th41_vectors(n, k, delta)?, &code)?;
    println!("family to inserted Hamming distance {} (need {})", cert, 2 * delta);
    println!("{}", check_cdc(&code, Mode::sampled(11))?);
    Ok(())
}
