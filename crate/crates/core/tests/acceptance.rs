//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::cell::Cell;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use subspace_codes::cdc::{ferrers_of, multilevel, phi_embed, IdVec};
use subspace_codes::cli::parallel_tiny;
use subspace_codes::ferrers::{optimal_fdrmc, th43_optimal_fdrmc, FerrersDiagram};
use subspace_codes::gf::FieldCtx;
use subspace_codes::linalg::MatGF;
use subspace_codes::rankmetric::{gabidulin, lift_code, rank_distribution, LiftSide};
use subspace_codes::theorems::{table11_check, thm32_build, thm32_count, LiftedMrdBounds, Registry};
use subspace_codes::verify::{audit_fdrmc, brute_force_optimum, check_cdc, Mode};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    ensure(
        t.elapsed() < limit,
        format!("took {:?}, limit {:?}", t.elapsed(), limit),
    )
}

fn e<E: std::fmt::Debug>(x: E) -> String {
    format!("{:?}", x)
}

const TABLE_VALUES: [(u32, usize, usize, usize, &str); 10] = [
    (2, 18, 8, 9, "18015215399116937"),
    (3, 19, 8, 9, "42391159260137223209995120164"),
    (3, 17, 6, 8, "58152704874502104749268072"),
    (3, 15, 6, 6, "150102606086671257"),
    (3, 16, 6, 6, "12158308561614895971"),
    (3, 16, 6, 7, "2954464039085249447217"),
    (3, 17, 6, 7, "717934761497715615667197"),
    (3, 18, 6, 7, "174458147043944894607122337"),
    (3, 19, 6, 7, "42393329731678609389530721357"),
    (3, 19, 6, 8, "30904731631209804712703574912729"),
];

fn table11() -> Outcome {
    let t = Instant::now();
    let lines = table11_check(&Registry::embedded());
    for (q, n, d, k, want) in TABLE_VALUES {
        let l = lines
            .iter()
            .find(|l| (l.row.q, l.row.n, l.row.d, l.row.k) == (q, n, d, k))
            .ok_or(format!("row {} {} {} {} missing", q, n, d, k))?;
        let got = l.result.as_ref().map_err(e)?;
        ensure(
            got.value.to_string() == want,
            format!("A_{}({},{},{}) = {}, want {}", q, n, d, k, got.value, want),
        )?;
    }
    for l in &lines {
        ensure(
            l.matches(),
            format!("row {:?} does not match", (l.row.q, l.row.n, l.row.d, l.row.k)),
        )?;
        ensure(
            l.improves(),
            format!("row {:?} does not improve", (l.row.q, l.row.n, l.row.d, l.row.k)),
        )?;
    }
    within(t, Duration::from_secs(5))?;
    Ok(format!("{} rows exact and improving in {:?}", lines.len(), t.elapsed()))
}

fn rank_census() -> Outcome {
    let t = Instant::now();
    let g = gabidulin(2, 3, 3, 2).map_err(e)?;
    let mut census = [0u64; 4];
    for c in g.codewords().map_err(e)? {
        census[c.rank()] += 1;
    }
    let formula: Vec<BigUint> = (0..=3)
        .map(|r| rank_distribution(2, 3, 3, 2, r))
        .collect::<Result<_, _>>()
        .map_err(e)?;
    ensure(
        formula[2] == BigUint::from(49u32) && formula[3] == BigUint::from(14u32),
        format!("formula {:?}", formula),
    )?;
    for r in 0..=3 {
        ensure(
            formula[r] == BigUint::from(census[r]),
            format!("rank {}: census {} formula {}", r, census[r], formula[r]),
        )?;
    }
    ensure(census.iter().sum::<u64>() == 64, "sum is not 64")?;
    within(t, Duration::from_secs(1))?;
    Ok(format!("census {:?} = formula, 1+49+14 = 64", census))
}

fn multilevel_tiny() -> Outcome {
    let entries = ["1100", "0011"]
        .iter()
        .map(|s| {
            let v = IdVec::forward(s)?;
            let f = ferrers_of(&v)?.diagram;
            Ok((v, optimal_fdrmc(&f, 2, 2)?))
        })
        .collect::<subspace_codes::Result<Vec<_>>>()
        .map_err(e)?;
    let code = multilevel(&entries, 2).map_err(e)?;
    ensure(code.len() == 5, format!("{} codewords", code.len()))?;
    let r = check_cdc(&code, Mode::exhaustive()).map_err(e)?;
    ensure(r.passed && r.min_distance_found == Some(4), format!("{}", r))?;
    let opt = brute_force_optimum(2, 4, 2, 4).map_err(e)?;
    ensure(opt == 5, format!("brute-force optimum {}", opt))?;
    Ok("5 codewords, minimum distance 4, optimum 5".into())
}

fn lifted_mrd() -> Outcome {
    let t = Instant::now();
    let code = lift_code(&gabidulin(2, 3, 3, 2).map_err(e)?, LiftSide::Left).map_err(e)?;
    ensure(
        (code.n(), code.len(), code.d(), code.k()) == (6, 64, 4, 3),
        format!("parameters {:?}", (code.n(), code.len(), code.d(), code.k())),
    )?;
    let r = check_cdc(&code, Mode::exhaustive()).map_err(e)?;
    ensure(
        r.pairs_checked == 2016 && r.min_distance_found == Some(4) && r.passed,
        format!("{}", r),
    )?;
    within(t, Duration::from_secs(1))?;
    Ok("(6,64,4,3)_2, 2016 pairs, minimum distance 4".into())
}

fn fdrmc_audits() -> Outcome {
    let a = optimal_fdrmc(&FerrersDiagram::new(vec![1, 2, 4]).map_err(e)?, 2, 2).map_err(e)?;
    ensure(a.code().codewords().map_err(e)?.len() == 8, "not 8 codewords")?;
    let ra = audit_fdrmc(&a).map_err(e)?;
    ensure(
        ra.passed && ra.dim == 3 && ra.bound == 3 && ra.min_rank == Some(2),
        format!("{}", ra),
    )?;
    let b = th43_optimal_fdrmc(15, 6, 3).map_err(e)?;
    ensure(b.code().codewords().map_err(e)?.len() == 9, "not 9 codewords")?;
    let rb = audit_fdrmc(&b).map_err(e)?;
    ensure(rb.passed && rb.dim == 2 && rb.min_rank == Some(3), format!("{}", rb))?;
    Ok(format!("[1,2,4]: dim 3 = bound, rank 2; {}: dim 2, rank 3", rb.diagram))
}

fn phi_example() -> Outcome {
    let f2 = FieldCtx::get(2).map_err(e)?;
    let b = MatGF::from_digits(f2, &["110010", "010111", "000011"]).map_err(e)?;
    let f = MatGF::from_digits(f2, &["110", "000", "101", "001"]).map_err(e)?;
    let want = MatGF::from_digits(f2, &["001100", "000000", "001001", "000001"]).map_err(e)?;
    let got = phi_embed(&b, &f).map_err(e)?;
    ensure(got == want, format!("got {:?}", got))?;
    Ok("4x6 output matches entrywise".into())
}

fn parallel_tiny_build() -> Outcome {
    let input = parallel_tiny(2);
    let predicted = thm32_count(&input, &LiftedMrdBounds).map_err(e)?.value;
    let code = thm32_build(&input).map_err(e)?;
    ensure(
        BigUint::from(code.len()) == predicted,
        format!("built {} predicted {}", code.len(), predicted),
    )?;
    ensure((code.n(), code.d(), code.k()) == (8, 4, 4), "wrong parameters")?;
    let r = check_cdc(&code, Mode::Exhaustive { max_pairs: 20_000_000 }).map_err(e)?;
    ensure(
        r.passed && r.min_distance_found.is_some_and(|d| d >= 4),
        format!("{}", r),
    )?;
    Ok(format!(
        "{} codewords = prediction, {} pairs checked",
        code.len(),
        r.pairs_checked
    ))
}

/// Runs a seeded suite and returns how many cases were generated.
fn suite<S: proptest::strategy::Strategy>(
    name: &str,
    cases: u32,
    strategy: S,
    check: fn(S::Value) -> Result<(), proptest::test_runner::TestCaseError>,
) -> Result<u32, String> {
    let seen = Cell::new(0);
    common::runner(cases)
        .run(&strategy, |x| {
            seen.set(seen.get() + 1);
            check(x)
        })
        .map_err(|m| format!("{}: {}", name, m))?;
    Ok(seen.get())
}

fn property_suites() -> Outcome {
    use common::*;
    let rref = suite("rref", 500, matrix_with_op(), rref_idempotent)?;
    let dist = suite("distance", 1000, generator_pair(), distance_dominates)?;
    let pair = suite("pairing", 100, sizes_and_perm(), pairing_dominates)?;
    let sym = gaussian_symmetry_failures();
    ensure(sym.is_empty(), format!("gaussian symmetry fails at {:?}", sym))?;
    let (checked, bad) = rank_sum_failures();
    ensure(bad.is_empty(), format!("rank sums fail at {:?}", bad))?;
    Ok(format!(
        "rref {} cases, distance {} generated (1000 kept), pairing {} cases, {} rank sums, gaussian grid",
        rref, dist, pair, checked
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("table 11 reproduction", table11),
        ("rank distribution census", rank_census),
        ("multilevel desk scale", multilevel_tiny),
        ("lifted MRD", lifted_mrd),
        ("FDRMC optimality audits", fdrmc_audits),
        ("phi_B example", phi_example),
        ("tiny parallel construction", parallel_tiny_build),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match f() {
            Ok(detail) => println!("criterion {} {}: PASS ({}; {:.2?})", i + 1, name, detail, t.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("criterion {} {}: FAIL ({})", i + 1, name, msg);
            }
        }
    }
    println!("acceptance: {} of {} passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
