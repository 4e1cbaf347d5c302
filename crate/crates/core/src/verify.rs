//! Pipeline-versus-oracle comparison over a grid of `(p, k)` cells.

use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use crate::arith::is_prime;
use crate::error::Result;
use crate::factor::{factor, FactorOutcome};
use crate::field::Fq;
use crate::oracle::{brute_has_nontrivial_divisor, OracleBudget};
use crate::parse::format_list;
use crate::poly::DensePoly;
use crate::ring::PrimePower;
use crate::rng::seeded_rng;

#[derive(Clone, Debug)]
pub struct GridConfig {
    pub primes: Vec<u64>,
    pub powers: Vec<u32>,
    pub max_degree: usize,
    /// Random polynomials per cell.
    pub samples: usize,
    /// Every monic `f` of degree `<= exhaustive_degree` for `p <= exhaustive_pmax`.
    pub exhaustive_degree: usize,
    pub exhaustive_pmax: u64,
    pub seed: u64,
    pub budget: OracleBudget,
    /// Flips the pipeline's verdict on the first case, to check the harness.
    pub inject_fault: bool,
}

impl GridConfig {
    pub fn new(pmax: u64, degmax: usize, kmax: u32) -> Self {
        GridConfig {
            primes: (2..=pmax).filter(|&p| is_prime(p)).collect(),
            powers: (2..=kmax).collect(),
            max_degree: degmax,
            samples: 200,
            exhaustive_degree: 2,
            exhaustive_pmax: 3,
            seed: 0,
            budget: OracleBudget::default(),
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub p: u64,
    pub k: u32,
    pub f: DensePoly,
    pub detail: String,
    pub reproducer: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CellReport {
    pub p: u64,
    pub k: u32,
    pub cases: usize,
    pub reducible: usize,
    pub mismatches: usize,
    pub millis: u128,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub cells: Vec<CellReport>,
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn cases(&self) -> usize {
        self.cells.iter().map(|c| c.cases).sum()
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// The mismatch with the smallest degree and modulus.
    pub fn minimal(&self) -> Option<&Mismatch> {
        self.mismatches
            .iter()
            .min_by_key(|m| (m.f.degree(), m.f.modulus(), m.f.coeffs().to_vec()))
    }
}

/// A random monic irreducible of degree `d` over `F_p`.
pub fn random_irreducible<R: Rng + ?Sized>(p: u64, d: usize, rng: &mut R) -> DensePoly {
    loop {
        let mut c: Vec<u128> = (0..d).map(|_| rng.gen_range(0..p as u128)).collect();
        c.push(1);
        let phi = DensePoly::new(c, p as u128);
        if Fq::new(p, &phi).is_ok() {
            return phi;
        }
    }
}

/// A random monic polynomial of degree `1..=max_degree` mod `p^k`. Half are
/// uniform; the other half are `phi^e + p*h`, which reduce to a prime power.
pub fn random_monic<R: Rng + ?Sized>(pp: &PrimePower, max_degree: usize, rng: &mut R) -> DensePoly {
    let m = pp.modulus();
    let n = rng.gen_range(1..=max_degree);
    if rng.gen_bool(0.5) {
        let mut c: Vec<u128> = (0..n).map(|_| rng.gen_range(0..m)).collect();
        c.push(1);
        return DensePoly::new(c, m);
    }
    let choices: Vec<usize> = (1..=n.min(2)).filter(|d| n % d == 0).collect();
    let d = choices[rng.gen_range(0..choices.len())];
    let phi = random_irreducible(pp.p(), d, rng);
    let p = pp.p() as u128;
    let e = n / d;
    let phi = phi.lift_modulus(m);
    // h = phi^b * r1 + p * r2 with random b, so that h often vanishes
    // modulo <p, phi^b>
    let b = rng.gen_range(0..=e);
    let mut rand_poly = |len: usize| DensePoly::new((0..len).map(|_| rng.gen_range(0..m)).collect(), m);
    let r1 = rand_poly(n - b * d);
    let r2 = rand_poly(n);
    let h = phi.pow(b as u64).mul(&r1).add(&r2.scale(p));
    phi.pow(e as u64).add(&h.scale(p))
}

/// Every monic polynomial of degree `1..=d` mod `p^k`.
pub fn all_monic(pp: &PrimePower, d: usize) -> Vec<DensePoly> {
    let m = pp.modulus();
    let mut out = Vec::new();
    for n in 1..=d {
        let total = m.pow(n as u32);
        for mut i in 0..total {
            let mut c = Vec::with_capacity(n + 1);
            for _ in 0..n {
                c.push(i % m);
                i /= m;
            }
            c.push(1);
            out.push(DensePoly::new(c, m));
        }
    }
    out
}

fn cell_seed(seed: u64, p: u64, k: u32) -> u64 {
    seed ^ (p << 8) ^ ((k as u64) << 40)
}

/// The polynomials checked in one cell: the exhaustive pass, then samples.
pub fn cell_instances(cfg: &GridConfig, pp: &PrimePower) -> Vec<DensePoly> {
    let mut out = Vec::new();
    if pp.p() <= cfg.exhaustive_pmax {
        out.extend(all_monic(pp, cfg.exhaustive_degree.min(cfg.max_degree)));
    }
    let mut rng = seeded_rng(cell_seed(cfg.seed, pp.p(), pp.k()));
    out.extend((0..cfg.samples).map(|_| random_monic(pp, cfg.max_degree, &mut rng)));
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    /// The oracle's verdict.
    pub reducible: bool,
    /// Why the pipeline disagrees, if it does.
    pub mismatch: Option<String>,
}

pub fn check_case(
    f: &DensePoly,
    pp: &PrimePower,
    seed: u64,
    budget: OracleBudget,
    flip: bool,
) -> Result<CaseResult> {
    let mut rng = seeded_rng(seed);
    let out = factor(f, pp, &mut rng)?;
    let mut found = !out.is_irreducible();
    if let FactorOutcome::Factored { unit, g, h } = &out {
        let deg_ok = g.degree().unwrap_or(0) > 0 && h.degree().unwrap_or(0) > 0;
        if !deg_ok || !g.is_monic() || !h.is_monic() || g.mul(h).scale(*unit) != f.reduce_modulus(pp.modulus()) {
            return Ok(CaseResult {
                reducible: true,
                mismatch: Some(format!("returned pair ({g}) * ({h}) does not multiply to f")),
            });
        }
    }
    if flip {
        found = !found;
    }
    let truth = brute_has_nontrivial_divisor(f, pp, budget)?;
    let verdict = |b: bool| if b { "reducible" } else { "irreducible" };
    Ok(CaseResult {
        reducible: truth,
        mismatch: (found != truth)
            .then(|| format!("pipeline says {}, oracle says {}", verdict(found), verdict(truth))),
    })
}

/// Runs every cell, calling `progress` after each.
pub fn run_grid(cfg: &GridConfig, mut progress: impl FnMut(&CellReport)) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let mut first = true;
    for &p in &cfg.primes {
        for &k in &cfg.powers {
            let pp = PrimePower::new(p, k)?;
            let start = Instant::now();
            let mut cell = CellReport { p, k, ..Default::default() };
            for f in cell_instances(cfg, &pp) {
                let flip = cfg.inject_fault && first;
                first = false;
                cell.cases += 1;
                let res = check_case(&f, &pp, cfg.seed, cfg.budget, flip)?;
                cell.reducible += res.reducible as usize;
                if let Some(detail) = res.mismatch {
                    cell.mismatches += 1;
                    report.mismatches.push(Mismatch {
                        p,
                        k,
                        reproducer: format!(
                            "modpk factor -p {p} -k {k} --seed {} '{}'",
                            cfg.seed,
                            format_list(&f)
                        ),
                        f,
                        detail,
                    });
                }
            }
            cell.millis = start.elapsed().as_millis();
            progress(&cell);
            report.cells.push(cell);
        }
    }
    Ok(report)
}
