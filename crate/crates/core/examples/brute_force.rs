//! Exact optima of tiny instances by maximum clique, next to the constructions.

use subspace_codes::ferrers::{gfrmc_lower_bound, FerrersDiagram};
use subspace_codes::theorems::th41_bound;
use subspace_codes::verify::{brute_force_gfrmc, brute_force_optimum};

fn main() -> subspace_codes::Result<()> {
    for (q, n, k, d) in [(2, 4, 2, 4), (2, 5, 2, 4), (3, 4, 2, 4)] {
        println!("A_{}({},{},{}) = {}", q, n, d, k, brute_force_optimum(q, n, k, d)?);
    }
    println!("construction for A_2(8,4,4): {}", th41_bound(2, 8, 2, 4)?.value);

    let f = FerrersDiagram::parse("F=[2,2,2]")?;
    for r in 2..=3 {
        let best = brute_force_gfrmc(&f, 2, r, 2)?;
        let lower = gfrmc_lower_bound(&f, 2, r, 2)?;
        println!(
            "{} delta 2, ranks <= {}: optimum {}, lower bound {}",
            f, r, best, lower.value
        );
    }
    Ok(())
}
