//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use conductors::blocks::partition_blocks;
use conductors::gendec::{check_round_trip, check_second_main, gendec_all, gendec_reciprocity, gendec_solve};
use conductors::isometry::{
    check_conductor_preservation, check_isometry, check_l0_preservation, check_perfection,
    search_perfect_isometries, BlockSide, DEFAULT_BOUND,
};
use conductors::residue::{build_residue_map, ResidueMap};
use conductors::verify::{
    check_restriction_props_for, cor05_report, projective_invariance_report, theorem1_random_report,
    theorem1_report, VerificationReport,
};
use conductors::{conductor, parse_cyclo, CycloNum, GroupDataset};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn all() -> Vec<GroupDataset> {
    common::corpus().load_all().expect("corpus loads")
}

fn each_prime(f: impl Fn(&GroupDataset, u64) -> Result<usize, String>) -> Result<usize, String> {
    let mut n = 0;
    for ds in all() {
        for &p in ds.primes.keys() {
            n += f(&ds, p)?;
        }
    }
    Ok(n)
}

fn require(r: &VerificationReport) -> Result<usize, String> {
    match r.failures().next() {
        None => Ok(r.records.len()),
        Some(f) => Err(format!("{} p={} {}: {:?}", r.group, r.prime, r.check_name, f)),
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn theorem1() -> Outcome {
    let n = each_prime(|ds, p| {
        let gm = gendec_all(ds, p).map_err(err)?;
        Ok(require(&theorem1_report(ds, &gm).map_err(err)?)?
            + require(&theorem1_random_report(ds, &gm, 200, 0).map_err(err)?)?)
    })?;
    Ok(format!("{n} characters, irreducible and random"))
}

fn cor05() -> Outcome {
    let n = each_prime(|ds, p| {
        let gm = gendec_all(ds, p).map_err(err)?;
        let r = cor05_report(ds, &gm).map_err(err)?;
        if let Some(rec) = r.records.iter().find(|x| x.witness.is_none()) {
            return Err(format!("{} p={p}: {} has no witness", ds.name(), rec.character));
        }
        require(&r)
    })?;
    Ok(format!("{n} characters with witnesses"))
}

fn method_equivalence() -> Outcome {
    let n = each_prime(|ds, p| {
        let pd = ds.prime(p).map_err(err)?;
        let mut k = 0;
        for sec in &pd.sections {
            for chi in 0..ds.table.num_classes() {
                let a = gendec_reciprocity(&ds.table, chi, sec);
                let b = gendec_solve(&ds.table, chi, sec).map_err(err)?;
                if a != b {
                    return Err(format!("{} p={p} chi_{chi}: methods disagree", ds.name()));
                }
                if sec.u_class == 0 {
                    let d: Vec<CycloNum> = pd.brauer.decomposition[chi]
                        .iter()
                        .map(|&x| CycloNum::from_integer(x))
                        .collect();
                    if a != d {
                        return Err(format!("{} p={p} chi_{chi}: u=1 row differs from D", ds.name()));
                    }
                }
                k += a.len();
            }
        }
        Ok(k)
    })?;
    Ok(format!("{n} entries agree"))
}

fn round_trip() -> Outcome {
    let n = each_prime(|ds, p| {
        let gm = gendec_all(ds, p).map_err(err)?;
        check_round_trip(&gm, ds).map_err(err)
    })?;
    Ok(format!("{n} values reproduced"))
}

fn second_main() -> Outcome {
    let n = each_prime(|ds, p| {
        let gm = gendec_all(ds, p).map_err(err)?;
        let r = check_second_main(&gm, ds).map_err(err)?;
        match r.violations.first() {
            None => Ok(r.entries_checked),
            Some(v) => Err(format!("{} p={p}: {v:?}", ds.name())),
        }
    })?;
    Ok(format!("{n} entries, no violations"))
}

fn block_partition() -> Outcome {
    let n = each_prime(|ds, p| {
        let pd = ds.prime(p).map_err(err)?;
        let blocks = partition_blocks(&ds.table, &pd.brauer).map_err(err)?;
        if blocks != pd.blocks {
            return Err(format!("{} p={p}: partition differs from labels", ds.name()));
        }
        Ok(blocks.len())
    })?;
    let corpus = common::corpus();
    let s3 = corpus.load_group("S3").map_err(err)?;
    let counts = (
        s3.prime(3).map_err(err)?.blocks.len(),
        s3.prime(2).map_err(err)?.blocks.len(),
    );
    if counts != (1, 2) {
        return Err(format!("S3 block counts {counts:?}"));
    }
    let a5 = corpus.load_group("A5").map_err(err)?;
    let b = &a5.prime(5).map_err(err)?.blocks;
    let shape: Vec<(usize, u32)> = b.iter().map(|x| (x.irr.len(), x.defect)).collect();
    if shape != [(4, 1), (1, 0)] {
        return Err(format!("A5 p=5 blocks {shape:?}"));
    }
    Ok(format!("{n} blocks match labels"))
}

fn projective_invariance() -> Outcome {
    let n = each_prime(|ds, p| {
        let gm = gendec_all(ds, p).map_err(err)?;
        require(&projective_invariance_report(ds, &gm).map_err(err)?)
    })?;
    Ok(format!("{n} characters"))
}

fn perfect_isometry() -> Outcome {
    let corpus = common::corpus();
    let a5 = corpus.load_group("A5").map_err(err)?;
    let d10 = corpus.load_group("D10").map_err(err)?;
    let a = BlockSide::from_dataset(&a5, 5, 0).map_err(err)?;
    let b = BlockSide::from_dataset(&d10, 5, 0).map_err(err)?;
    let t = Instant::now();
    let found = search_perfect_isometries(&a, &b, DEFAULT_BOUND).map_err(err)?;
    let elapsed = t.elapsed();
    if found.is_empty() {
        return Err("no perfect isometry found".into());
    }
    for f in &found {
        let ok = check_isometry(f).map_err(err)?
            && check_perfection(&a, &b, f).map_err(err)?.perfect()
            && check_conductor_preservation(&a, &b, f).map_err(err)?.0
            && check_l0_preservation(&a, &b, f).map_err(err)?;
        if !ok {
            return Err(format!("candidate {:?} fails a check", f.matrix));
        }
    }
    if elapsed >= Duration::from_secs(5) {
        return Err(format!("search took {elapsed:?}"));
    }
    Ok(format!(
        "{} candidates in {} ms",
        found.len(),
        elapsed.as_millis()
    ))
}

fn restriction() -> Outcome {
    let a5 = common::corpus().load_group("A5").map_err(err)?;
    let gm = gendec_all(&a5, 5).map_err(err)?;
    let sub = a5.subgroup("D10").ok_or("A5 has no D10 data")?;
    let r = check_restriction_props_for(&a5, &gm, sub).map_err(err)?;
    require(&r)?;
    let b0 = &a5.prime(5).map_err(err)?.blocks[0];
    let mut by_degree: Vec<(u64, u64)> = b0
        .irr
        .iter()
        .map(|&i| (a5.table.degree(i), r.records[i].lhs))
        .collect();
    by_degree.sort();
    let vals: Vec<u64> = by_degree.iter().map(|x| x.1).collect();
    if vals != [1, 5, 5, 1] {
        return Err(format!("values {vals:?}"));
    }
    for &i in &b0.irr {
        let d = r.records[i].detail.as_deref().unwrap_or("");
        if r.records[i].lhs != r.records[i].rhs || !d.contains(&format!("truncated {}", r.records[i].lhs)) {
            return Err(format!("chi_{i}: {d}"));
        }
    }
    Ok("values 1,5,5,1".into())
}

fn random_element(rng: &mut ChaCha8Rng, orders: &[u64], max_den: i64) -> CycloNum {
    let n = orders[rng.gen_range(0..orders.len())];
    let v = (0..n)
        .map(|_| {
            BigRational::new(
                BigInt::from(rng.gen_range(-4i64..=4)),
                BigInt::from(rng.gen_range(1..=max_den)),
            )
        })
        .collect();
    CycloNum::from_dense(n, v)
}

fn arithmetic_core() -> Outcome {
    const ALL: [u64; 14] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 15, 16, 20, 24];
    const SMOOTH: [u64; 10] = [1, 3, 4, 5, 8, 12, 15, 16, 20, 24];
    let maps: Vec<ResidueMap> = [2, 3, 5, 7].iter().map(|&p| build_residue_map(240, p)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let checks = 10_000;
    for i in 0..checks {
        let a = random_element(&mut rng, &ALL, 3);
        let b = random_element(&mut rng, &ALL, 3);
        if parse_cyclo(&a.to_string()).map_err(err)? != a {
            return Err(format!("check {i}: {a} does not round-trip"));
        }
        let s = &a * &b;
        let c = conductor([&s]);
        if c % 4 == 2 || c != s.order() {
            return Err(format!("check {i}: conductor {c} of {s}"));
        }
        let k = [1i64, 7, 11, 13, 17, 19, 23, 29][i % 8];
        let g = |x: &CycloNum| x.galois(k);
        let n = num_integer::lcm(a.order(), b.order());
        if num_integer::gcd(k as u64, n) == 1
            && g(&s).map_err(err)? != &g(&a).map_err(err)? * &g(&b).map_err(err)?
        {
            return Err(format!("check {i}: galois {k} is not multiplicative"));
        }
        let m = &maps[i % maps.len()];
        let x = random_element(&mut rng, &SMOOTH, 1);
        let y = random_element(&mut rng, &SMOOTH, 1);
        let f = m.field();
        let (rx, ry) = (m.reduce(&x).map_err(err)?, m.reduce(&y).map_err(err)?);
        if m.reduce(&(&x + &y)).map_err(err)? != f.add(&rx, &ry)
            || m.reduce(&(&x * &y)).map_err(err)? != f.mul(&rx, &ry)
        {
            return Err(format!(
                "check {i}: reduction at p={} is not a homomorphism",
                m.prime()
            ));
        }
    }
    Ok(format!("{checks} seeded checks"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("conductor identity suite", theorem1),
        ("maximal gendec conductor suite", cor05),
        ("gendec method equivalence", method_equivalence),
        ("gendec round trip", round_trip),
        ("Brauer second main vanishing", second_main),
        ("block partition", block_partition),
        ("projective invariance", projective_invariance),
        ("perfect isometry A5/D10", perfect_isometry),
        ("restriction suite A5/D10", restriction),
        ("arithmetic core", arithmetic_core),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
