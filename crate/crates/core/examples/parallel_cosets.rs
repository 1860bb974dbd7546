//! Parallel coset construction at desk scale: count, build, verify every pair.

use subspace_codes::cli::parallel_tiny;
use subspace_codes::theorems::{thm32_build, thm32_count, LiftedMrdBounds};
use subspace_codes::verify::{check_cdc, Mode};

fn main() -> subspace_codes::Result<()> {
    let input = parallel_tiny(2);
    let count = thm32_count(&input, &LiftedMrdBounds)?;
    println!("{}", count);
    let code = thm32_build(&input)?;
    println!("built {} codewords", code.len());
    let report = check_cdc(&code, Mode::Exhaustive { max_pairs: 20_000_000 })?;
    println!("{}", report);
    Ok(())
}
