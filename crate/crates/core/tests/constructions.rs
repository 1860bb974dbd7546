use subspace_codes::cdc::coset_construction;
use subspace_codes::rankmetric::gabidulin;
use subspace_codes::theorems::*;
use subspace_codes::verify::{check_cdc, check_cross, Mode};

#[test]
fn family_builds_at_desk_scale() {
    let code = th41_build(2, 8, 2, 4, 1_000_000).unwrap();
    assert_eq!(code.len(), 4432);
    assert_eq!(th41_bound(2, 8, 2, 4).unwrap().value, 4432u32.into());
    let r = check_cdc(&code, Mode::Exhaustive { max_pairs: 20_000_000 }).unwrap();
    assert!(r.passed, "{}", r);
}

#[test]
fn extended_family_adds_a_separated_vector() {
    let (n, k) = (15, 6);
    let vp = th44_vprime(n, k).unwrap();
    for u in th41_vectors(n, k, 3).unwrap() {
        assert!(
            subspace_codes::cdc::hamming_guard(&u, &vp).unwrap() >= 6,
            "{} vs {}",
            u,
            vp
        );
    }
    let entries = th44_entries(2, n, 3, k).unwrap();
    let (v, code) = entries.last().unwrap();
    assert_eq!(v, &vp);
    let lifted = subspace_codes::cdc::lift_on_vector(v, code, code.field()).unwrap();
    assert!(check_cdc(&lifted, Mode::exhaustive()).unwrap().passed);
    assert!(matches!(
        th44_build(2, n, 3, k, 1 << 20),
        Err(subspace_codes::Error::TooLarge(_))
    ));
}

#[test]
fn inserted_coset_code_is_far_from_the_family() {
    let ins = example5_insertion();
    let code = insertion_build(2, 3, &ins).unwrap();
    assert_eq!(num_bigint::BigUint::from(code.len()), ins.count(2, 3).unwrap());
    assert_eq!(cross_certificate(&th41_vectors(17, 8, 3).unwrap(), &code).unwrap(), 6);
    let r = check_cdc(&code, Mode::sampled(5)).unwrap();
    assert!(r.passed, "{}", r);
    let bound = th42_insert(2, 17, 3, 8, &ins).unwrap();
    assert_eq!(
        bound.value,
        th41_bound(2, 17, 3, 8).unwrap().value + ins.count(2, 3).unwrap()
    );
}

#[test]
fn extended_insertion_prefix_builds() {
    let ins = example8_insertion();
    let bound = th45_insert(3, 19, 3, 8, &ins).unwrap();
    assert_eq!(bound.value.to_string(), "30904731631209804712703574912729");
    let a = ins.a.build(2).unwrap().truncated(2);
    let b = ins.b.build(2).unwrap().truncated(2);
    let h = gabidulin(2, ins.k1(), ins.n2() - ins.k2(), 3).unwrap();
    let code = coset_construction(&a, &b, &h).unwrap();
    let mut family = th41_vectors(19, 8, 3).unwrap();
    family.push(th44_vprime(19, 8).unwrap());
    assert!(cross_certificate(&family, &code).unwrap() >= 6);
    let r = check_cdc(&code, Mode::sampled(9)).unwrap();
    assert!(r.passed, "{}", r);
}

#[test]
fn parallel_halves_are_apart() {
    let input = subspace_codes::cli::parallel_tiny(2);
    let lists = |s: &ListSpec| s.build(2).unwrap();
    let (c3, c4) = thm31_build(
        &lists(&input.a),
        &lists(&input.b),
        &lists(&input.ahat),
        &lists(&input.bhat),
    )
    .unwrap();
    let r = check_cross(&c3, &c4, 4, Mode::exhaustive()).unwrap();
    assert!(r.passed, "{}", r);
}

#[test]
fn consistency_report_flags_known_disagreements() {
    let report = consistency_report(&Registry::embedded());
    let differs: Vec<_> = report
        .iter()
        .filter(|c| !c.agrees())
        .map(|c| (c.q, c.n, c.d, c.k, c.check))
        .collect();
    assert!(differs.iter().any(|d| (d.1, d.2, d.3) == (15, 6, 6)));
    assert!(report.iter().any(|c| c.agrees()));
}
