//! Optimal Ferrers diagram rank-metric codes and their audits.

use subspace_codes::ferrers::{optimal_fdrmc, singleton_bound, th43_optimal_fdrmc, FerrersDiagram};
use subspace_codes::verify::audit_fdrmc;

fn main() -> subspace_codes::Result<()> {
    let shapes = [
        ("F=[1,2,4]", 2),
        ("F=[2,2,3,4]", 3),
        ("F=[2,4,4,5]", 3),
        ("F=[1,1,1,4,5]", 3),
        ("F^=[4,2,1]", 2),
    ];
    for (text, delta) in shapes {
        let f = FerrersDiagram::parse(text)?;
        let code = optimal_fdrmc(&f, delta, 2)?;
        println!(
            "{} delta {}: bound {}, built dim {}",
            f,
            delta,
            singleton_bound(&f, delta)?,
            code.dim()
        );
        println!("{}", f.render());
        println!("{}", audit_fdrmc(&code)?);
    }

    // the composite diagram of the extended family
    let code = th43_optimal_fdrmc(10, 4, 2)?;
    println!("{}", audit_fdrmc(&code)?);
    Ok(())
}
