//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::Rng;

use modpk::factor::{count_factors_p3, enumerate_lifts, factor, FactorOutcome};
use modpk::hensel::{decompose, hensel_lift, BezoutPair};
use modpk::oracle::{brute_count_factors, brute_divisors, brute_roots, brute_roots_local, OracleBudget};
use modpk::reduction::{build_e, ReductionInstance};
use modpk::rep_roots::{rep_expand, root_find};
use modpk::ring::ChainRing;
use modpk::solver::{count_roots, reduce_to_char_p, roots_k};
use modpk::verify::{cell_instances, run_grid, GridConfig};
use modpk::{seeded_rng, DensePoly, PrimePower};

type Check = std::result::Result<String, String>;

fn poly(c: &[i128], m: u128) -> DensePoly {
    DensePoly::from_i128(c, m)
}

fn pp(p: u64, k: u32) -> PrimePower {
    PrimePower::new(p, k).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration, what: &str) -> std::result::Result<(), String> {
    let e = t.elapsed();
    ensure(e < limit, || format!("{what} took {e:?}, limit {limit:?}"))
}

/// The grid of criteria 4, 6 and 7.
fn grid() -> GridConfig {
    GridConfig { primes: vec![2, 3, 5], powers: vec![2, 3, 4], ..GridConfig::new(5, 4, 4) }
}

fn mod27_example() -> Check {
    let t = Instant::now();
    let pp = pp(3, 3);
    let f = poly(&[36, 3, 12, 1], 27);
    let mut rng = seeded_rng(0);
    let FactorOutcome::Factored { unit, g, h } = factor(&f, &pp, &mut rng).map_err(|e| e.to_string())? else {
        return Err("reported irreducible".into());
    };
    ensure(g.mul(&h).scale(unit) == f, || format!("({g})*({h}) != f"))?;
    let lifts = enumerate_lifts(&f, &poly(&[0, 1], 3), &pp, &mut rng).map_err(|e| e.to_string())?;
    let got = lifts.expand(usize::MAX).map_err(|e| e.to_string())?;
    let want = vec![poly(&[3, 1], 27), poly(&[12, 1], 27), poly(&[21, 1], 27)];
    ensure(got == want, || format!("linear lifts {got:?}"))?;
    within(t, Duration::from_secs(1), "mod-27 example")?;
    Ok(format!("factor ({g})*({h}); linear factors x+3, x+12, x+21 in {:?}", t.elapsed()))
}

fn irreducibility_examples() -> Check {
    let mut rng = seeded_rng(0);
    for p in [3u64, 5, 7] {
        let t = Instant::now();
        let pp = pp(p, 2);
        let f = DensePoly::new(vec![p as u128, 0, 1], pp.modulus());
        let out = factor(&f, &pp, &mut rng).map_err(|e| e.to_string())?;
        ensure(out.is_irreducible(), || format!("x^2+{p} mod {p}^2 reported {out:?}"))?;
        within(t, Duration::from_secs(1), "irreducibility check")?;
    }
    for k in 2..=4u32 {
        let t = Instant::now();
        let pp = pp(3, k);
        let m = pp.modulus();
        let f = DensePoly::new(vec![3u128.pow(k), 0, 1], m);
        let FactorOutcome::Factored { unit, g, h } = factor(&f, &pp, &mut rng).map_err(|e| e.to_string())? else {
            return Err(format!("x^2+3^{k} mod 3^{k} reported irreducible"));
        };
        ensure(g.mul(&h).scale(unit) == poly(&[0, 0, 1], m), || format!("({g})*({h}) != x^2"))?;
        ensure(g.degree() == Some(1), || format!("factor {g} is not linear"))?;
        within(t, Duration::from_secs(1), "reducibility check")?;
    }
    Ok("x^2+p irreducible mod p^2 for p = 3, 5, 7; x^2+3^k splits mod 3^k for k = 2, 3, 4".into())
}

fn lift_counts() -> Check {
    let mut rng = seeded_rng(0);
    for p in [2u64, 3, 5, 7] {
        let t = Instant::now();
        let pp = pp(p, 2);
        let m = pp.modulus();
        let f = DensePoly::new(vec![0, p as u128, 1], m);
        let d = enumerate_lifts(&f, &poly(&[0, 1], p as u128), &pp, &mut rng).map_err(|e| e.to_string())?;
        ensure(d.count == BigUint::from(p), || format!("p = {p}: count {}", d.count))?;
        let oracle = brute_divisors(&f, &pp, 1..=1, OracleBudget::default()).map_err(|e| e.to_string())?;
        let got = d.expand(usize::MAX).map_err(|e| e.to_string())?;
        ensure(got == oracle, || format!("p = {p}: lifts {got:?} vs oracle {oracle:?}"))?;
        within(t, Duration::from_secs(1), "lift count")?;
    }
    Ok("count p for p = 2, 3, 5, 7".into())
}

fn oracle_equivalence() -> Check {
    let t = Instant::now();
    let report = run_grid(&grid(), |_| {}).map_err(|e| e.to_string())?;
    if let Some(m) = report.minimal() {
        return Err(format!(
            "{} mismatches; smallest: f = {} mod {}^{}: {}; reproduce with {}",
            report.mismatches.len(),
            m.f,
            m.p,
            m.k,
            m.detail,
            m.reproducer
        ));
    }
    within(t, Duration::from_secs(600), "grid")?;
    let reducible: usize = report.cells.iter().map(|c| c.reducible).sum();
    Ok(format!(
        "{} cases over {} cells ({} reducible) in {:?}",
        report.cases(),
        report.cells.len(),
        reducible,
        t.elapsed()
    ))
}

fn root_find_equivalence() -> Check {
    let t = Instant::now();
    let mut rng = seeded_rng(5);
    let mut reps = 0;
    for case in 0..500 {
        let ring = common::random_phi_ring(100_000, &mut rng);
        let g = common::random_ring_poly(&ring, &mut rng);
        let set = root_find(&ring, &g, &mut rng).map_err(|e| e.to_string())?;
        let deg = modpk::rep_roots::ring_poly_trim(&ring, &g).len().saturating_sub(1);
        ensure(set.len() <= deg.max(1), || format!("case {case}: {} reps for degree {deg}", set.len()))?;
        reps += set.len();
        let mut union = BTreeSet::new();
        for r in &set {
            for y in rep_expand(&ring, r) {
                ensure(union.insert(y.clone()), || format!("case {case}: overlapping representatives at {y}"))?;
            }
        }
        let brute: BTreeSet<DensePoly> =
            brute_roots(&ring, &g, OracleBudget::default()).map_err(|e| e.to_string())?.into_iter().collect();
        ensure(union == brute, || {
            format!("case {case}: over F_{}[x]/({})^{}: roots differ", ring.residue_field().p(), ring.phi(), ring.precision())
        })?;
    }
    within(t, Duration::from_secs(120), "root finding")?;
    Ok(format!("500 cases, {reps} representatives, in {:?}", t.elapsed()))
}

fn k4_internals() -> Check {
    let t = Instant::now();
    let cfg = grid();
    let mut paths = 0;
    let mut exhaustive = 0;
    let mut seen = BTreeSet::new();
    for &p in &cfg.primes {
        let pp = pp(p, 4);
        for f in cell_instances(&cfg, &pp) {
            let mut rng = seeded_rng(cfg.seed);
            let parts = decompose(&f, &pp, &mut rng).map_err(|e| e.to_string())?;
            for form in &parts {
                for a in 1..=form.e / 2 {
                    if !seen.insert((form.to_poly(), a)) {
                        continue;
                    }
                    let inst = ReductionInstance::new(form, a, 4).map_err(|e| e.to_string())?;
                    let red = reduce_to_char_p(&inst, &mut rng).map_err(|e| format!("{}: {e}", form.to_poly()))?;
                    paths += 1;
                    ensure(red.s0.len() <= 2, || format!("|S0| = {} for {}", red.s0.len(), form.to_poly()))?;
                    for b in &red.branches {
                        ensure(b.e1.len() <= 4 && b.e2.len() <= 2, || {
                            format!("deg E1 = {}, deg E2 = {} for {}", b.e1.len() as i64 - 1, b.e2.len() as i64 - 1, form.to_poly())
                        })?;
                    }
                    let desc = roots_k(&inst, &mut rng).map_err(|e| e.to_string())?;
                    let n = count_roots(&desc, &inst).map_err(|e| e.to_string())?;
                    if inst.ctx.cardinality().is_some_and(|c| c <= 1_000_000) {
                        let roots = brute_roots_local(&inst.ctx, &build_e(&inst), OracleBudget::default())
                            .map_err(|e| e.to_string())?;
                        ensure(n == BigUint::from(roots.len()), || {
                            format!("count {n} vs {} by scan for {} (a = {a})", roots.len(), form.to_poly())
                        })?;
                        exhaustive += 1;
                    }
                }
            }
        }
    }
    within(t, Duration::from_secs(300), "k = 4 internals")?;
    ensure(exhaustive > 0, || "no instance was small enough to scan".into())?;
    Ok(format!("{paths} instances on the k = 4 path, {exhaustive} counted exhaustively, in {:?}", t.elapsed()))
}

fn p3_counts() -> Check {
    let t = Instant::now();
    let cfg = grid();
    let mut n = 0;
    for &p in &cfg.primes {
        let pp = pp(p, 3);
        for f in cell_instances(&cfg, &pp) {
            let mut rng = seeded_rng(cfg.seed);
            let c = count_factors_p3(&f, &pp, &mut rng).map_err(|e| e.to_string())?;
            let o = brute_count_factors(&f, &pp, OracleBudget::default()).map_err(|e| e.to_string())?;
            ensure(c.total == BigUint::from(o.total), || format!("{f} mod {p}^3: {} vs oracle {}", c.total, o.total))?;
            n += 1;
        }
    }
    within(t, Duration::from_secs(300), "mod p^3 counts")?;
    Ok(format!("{n} instances in {:?}", t.elapsed()))
}

fn hensel_cases() -> Check {
    let t = Instant::now();
    let mut rng = seeded_rng(8);
    for p in [2u64, 3, 5] {
        let pp = pp(p, 4);
        let m = pp.modulus();
        for case in 0..100 {
            let (g, h) = common::random_coprime_pair(p, &mut rng);
            // f = g*h mod p, with a random p-adic perturbation of the lower terms
            let n = g.degree().unwrap() + h.degree().unwrap();
            let noise: Vec<u128> = (0..n).map(|_| rng.gen_range(0..m / p as u128) * p as u128).collect();
            let f = g.lift_modulus(m).mul(&h.lift_modulus(m)).add(&DensePoly::new(noise, m));
            let bez = BezoutPair::new(&g, &h).map_err(|e| e.to_string())?;
            let (gs, hs, _) = hensel_lift(&f, &g, &h, &bez, &pp).map_err(|e| e.to_string())?;
            ensure(gs.mul(&hs) == f, || format!("p = {p}, case {case}: g*h* != f"))?;
            ensure(gs.reduce_modulus(p as u128) == g && hs.reduce_modulus(p as u128) == h, || {
                format!("p = {p}, case {case}: lifts do not reduce to g, h")
            })?;
        }
    }
    within(t, Duration::from_secs(30), "Hensel")?;
    Ok(format!("300 lifts in {:?}", t.elapsed()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("1 mod-27 example", mod27_example),
        ("2 irreducibility examples", irreducibility_examples),
        ("3 lift counts", lift_counts),
        ("4 oracle equivalence grid", oracle_equivalence),
        ("5 root finding vs scan", root_find_equivalence),
        ("6 k = 4 solver internals", k4_internals),
        ("7 mod p^3 factor counts", p3_counts),
        ("8 Hensel lifting", hensel_cases),
    ];
    let only: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, check) in criteria {
        if !only.is_empty() && !only.iter().any(|o| name.contains(o.as_str())) {
            continue;
        }
        let res = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match res {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
