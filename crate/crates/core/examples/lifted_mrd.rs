//! Lifting an MRD code gives a constant-dimension code; check its distance.

use subspace_codes::rankmetric::{gabidulin, lift_code, LiftSide};
use subspace_codes::verify::{check_cdc, Mode};

fn main() -> subspace_codes::Result<()> {
    let mrd = gabidulin(2, 3, 4, 2)?;
    let code = lift_code(&mrd, LiftSide::Left)?;
    println!(
        "lifted {}x{} code: n={} k={} d={} size {}",
        3,
        4,
        code.n(),
        code.k(),
        code.d(),
        code.len()
    );
    let report = check_cdc(&code, Mode::exhaustive())?;
    println!("{}", report);

    let right = lift_code(&mrd.transpose(), LiftSide::Right)?;
    println!(
        "right lift of the transpose: n={} k={} size {}",
        right.n(),
        right.k(),
        right.len()
    );
    Ok(())
}
