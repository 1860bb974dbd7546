//! Lower bounds: the new families, the extended family and the registry.

use subspace_codes::theorems::{bound_by_source, table11_check, th41_bound, th41_poly, th44_bound, Registry};

fn main() -> subspace_codes::Result<()> {
    println!("{}", th41_bound(2, 15, 3, 6)?);
    println!("polynomial for (16, 7, 3): {}", th41_poly(16, 7, 3)?);
    println!("{}", th44_bound(3, 16, 3, 6)?);
    println!("{}", bound_by_source("example:3", 2, 18, 8, 9)?);

    let reg = Registry::embedded();
    let lines = table11_check(&reg);
    let ok = lines.iter().filter(|l| l.matches() && l.improves()).count();
    println!("registry: {} of {} rows reproduced and improving", ok, lines.len());
    for l in lines.iter().take(5) {
        if let Ok(b) = &l.result {
            println!(
                "  q={} n={} d={} k={}  +{}",
                b.q,
                b.n,
                b.d,
                b.k,
                b.diff().unwrap_or_default()
            );
        }
    }
    Ok(())
}
