//! Gabidulin codes: enumerate one, count its ranks, compare with the closed form.

use subspace_codes::rankmetric::{gabidulin, grmc_lower_bound, rank_distribution};
use subspace_codes::theorems::rank_distribution_poly;

fn main() -> subspace_codes::Result<()> {
    let (q, m, n, delta) = (3, 4, 3, 2);
    let code = gabidulin(q, m, n, delta)?;
    println!(
        "Gabidulin {}x{} over GF({}), delta {}: {} codewords",
        m,
        n,
        q,
        delta,
        code.size()
    );

    let mut census = vec![0u64; n + 1];
    for c in code.codewords()? {
        census[c.rank()] += 1;
    }
    for (r, seen) in census.iter().enumerate() {
        let formula = rank_distribution(q, m, n, delta, r)?;
        println!(
            "  rank {}: {:>5} counted, {:>5} by formula = {}",
            r,
            seen,
            formula,
            rank_distribution_poly(m, n, delta, r)?
        );
    }

    // codewords of rank at most t2 in a distance-delta code
    for t2 in delta..=n {
        println!(
            "  ranks <= {}: at least {}",
            t2,
            grmc_lower_bound(q, m, n, delta, 0, t2)?
        );
    }
    Ok(())
}
