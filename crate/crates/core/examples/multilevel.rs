//! Multilevel construction from a constant-weight code of identifying vectors.

use subspace_codes::cdc::{ferrers_of, multilevel, IdVec};
use subspace_codes::ferrers::optimal_fdrmc;
use subspace_codes::verify::{check_cdc, Mode};

fn main() -> subspace_codes::Result<()> {
    let (q, delta) = (2, 2);
    let mut entries = Vec::new();
    for s in ["111000", "100110", "010101", "001011"] {
        let v = IdVec::forward(s)?;
        let layout = ferrers_of(&v)?;
        let code = optimal_fdrmc(&layout.diagram, delta, q)?;
        println!("{} -> {} dim {}", v, layout.diagram, code.dim());
        entries.push((v, code));
    }
    let code = multilevel(&entries, delta)?;
    println!("{} codewords", code.len());
    println!("{}", check_cdc(&code, Mode::exhaustive())?);
    print!("{}", code.to_text().lines().take(4).collect::<Vec<_>>().join("\n"));
    println!("\n...");
    Ok(())
}
