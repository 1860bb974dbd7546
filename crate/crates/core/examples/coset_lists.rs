//! Coset lists: count mode against build mode, and the reordered pairing.

use subspace_codes::cdc::{build_coset_cdc_lists, coset_list_profile, paired_sum, CwcSet, IdKind};

fn main() -> subspace_codes::Result<()> {
    let q = 2;
    let a = CwcSet::parse("110000,001100,000011", IdKind::Forward, 4)?;
    let b = CwcSet::parse("1100,0011", IdKind::Forward, 4)?;
    let pa = coset_list_profile(&a, 2, 1, q, false, None)?;
    let pb = coset_list_profile(&b, 2, 1, q, false, None)?;
    let built = build_coset_cdc_lists(&a, 2, 1, q, false, None)?;
    println!("list A: {} codes, {} codewords", pa.len(), pa.codewords());
    println!(
        "built sizes {:?}",
        built.sizes().iter().map(|s| s.to_string()).collect::<Vec<_>>()
    );
    println!("profiles agree: {}", built.profile() == pa);
    println!("paired sum with B: {}", paired_sum(&pa, &pb));

    let inv = CwcSet::parse("0011,1100", IdKind::Inverse, 4)?;
    let zero_only = coset_list_profile(&inv, 2, 1, q, true, Some(0))?;
    println!("inverse list kept at rank 0: {} codes", zero_only.len());
    Ok(())
}
