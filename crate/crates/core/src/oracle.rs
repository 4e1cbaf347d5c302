//! Exhaustive search used as ground truth. Only plain ring arithmetic is
//! shared with the rest of the crate.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::poly::DensePoly;
use crate::ring::{ChainRing, LocalRingCtx, PrimePower};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_candidates: u128,
    pub timeout: Duration,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_candidates: 10_000_000, timeout: Duration::from_secs(120) }
    }
}

struct Clock {
    start: Instant,
    budget: OracleBudget,
    ticks: u64,
}

impl Clock {
    fn start(budget: OracleBudget, candidates: Option<u128>, what: &str) -> Result<Self> {
        match candidates {
            Some(n) if n <= budget.max_candidates => {}
            Some(n) => {
                return Err(Error::BudgetExceeded(format!(
                    "{what}: {n} candidates exceed the cap of {}",
                    budget.max_candidates
                )))
            }
            None => return Err(Error::BudgetExceeded(format!("{what}: candidate count overflows"))),
        }
        Ok(Clock { start: Instant::now(), budget, ticks: 0 })
    }

    fn tick(&mut self) -> Result<()> {
        self.ticks += 1;
        if self.ticks % 4096 == 0 && self.start.elapsed() > self.budget.timeout {
            return Err(Error::BudgetExceeded(format!(
                "timed out after {:?}",
                self.budget.timeout
            )));
        }
        Ok(())
    }
}

/// Monic polynomial of degree `d` whose lower coefficients are the base-`m`
/// digits of `i`, most significant digit first in the constant term.
fn monic_from_index(mut i: u128, d: usize, m: u128) -> DensePoly {
    let mut c = vec![0u128; d + 1];
    for slot in c[..d].iter_mut().rev() {
        *slot = i % m;
        i /= m;
    }
    c[d] = 1 % m;
    DensePoly::new(c, m)
}

fn divides(f: &DensePoly, g: &DensePoly) -> bool {
    f.div_rem(g).map(|(_, r)| r.is_zero()).unwrap_or(false)
}

/// Whether monic `g` divides `f` modulo `p^k`, by long division.
pub fn trial_divides(f: &DensePoly, g: &DensePoly, pp: &PrimePower) -> bool {
    let m = pp.modulus();
    divides(&f.reduce_modulus(m), &g.reduce_modulus(m))
}

fn count_for_degree(m: u128, d: usize) -> Option<u128> {
    m.checked_pow(d as u32)
}

/// All monic divisors of `f` mod `p^k` with degree in `degrees`, in
/// lexicographic order of coefficients within each degree.
pub fn brute_divisors(
    f: &DensePoly,
    pp: &PrimePower,
    degrees: std::ops::RangeInclusive<usize>,
    budget: OracleBudget,
) -> Result<Vec<DensePoly>> {
    let m = pp.modulus();
    let f = f.reduce_modulus(m);
    let total = degrees
        .clone()
        .try_fold(0u128, |acc, d| acc.checked_add(count_for_degree(m, d)?));
    let mut clock = Clock::start(budget, total, "divisor search")?;
    let mut out = Vec::new();
    for d in degrees {
        for i in 0..count_for_degree(m, d).unwrap() {
            clock.tick()?;
            let g = monic_from_index(i, d, m);
            if divides(&f, &g) {
                out.push(g);
            }
        }
    }
    Ok(out)
}

/// Whether `f` (monic) has a monic divisor of degree `1..deg f`.
pub fn brute_has_nontrivial_divisor(f: &DensePoly, pp: &PrimePower, budget: OracleBudget) -> Result<bool> {
    let m = pp.modulus();
    let f = f.reduce_modulus(m);
    let n = f.degree().unwrap_or(0);
    let half = n / 2;
    let total = (1..=half).try_fold(0u128, |acc, d| acc.checked_add(count_for_degree(m, d)?));
    let mut clock = Clock::start(budget, total, "divisor search")?;
    // a divisor of degree d > n/2 has a cofactor of degree n - d
    for d in 1..=half {
        for i in 0..count_for_degree(m, d).unwrap() {
            clock.tick()?;
            if divides(&f, &monic_from_index(i, d, m)) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorCount {
    /// Monic divisors counted by degree, `1` and `f` included.
    pub by_degree: Vec<u128>,
    pub total: u128,
    /// `total - 2`: excludes `1` and `f`.
    pub nontrivial: u128,
}

/// Counts all monic divisors of a monic `f` mod `p^k`.
pub fn brute_count_factors(f: &DensePoly, pp: &PrimePower, budget: OracleBudget) -> Result<DivisorCount> {
    let m = pp.modulus();
    let f = f.reduce_modulus(m);
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = f.degree().unwrap_or(0);
    let half = n / 2;
    let total = (0..=half).try_fold(0u128, |acc, d| acc.checked_add(count_for_degree(m, d)?));
    let mut clock = Clock::start(budget, total, "divisor count")?;
    let mut by_degree = vec![0u128; n + 1];
    for d in 0..=half {
        let mut c = 0;
        for i in 0..count_for_degree(m, d).unwrap() {
            clock.tick()?;
            if divides(&f, &monic_from_index(i, d, m)) {
                c += 1;
            }
        }
        // g <-> f/g pairs degree d with degree n - d
        by_degree[d] = c;
        by_degree[n - d] = c;
    }
    let total: u128 = by_degree.iter().sum();
    Ok(DivisorCount { by_degree, total, nontrivial: total.saturating_sub(if n == 0 { 1 } else { 2 }) })
}

/// Monic divisors `g` of `f` mod `p^k` with `g = phi^a mod p`, searched as
/// `phi^a + p*w` with `deg w < a*deg(phi)`.
pub fn brute_lifts(
    f: &DensePoly,
    phi: &DensePoly,
    a: usize,
    pp: &PrimePower,
    budget: OracleBudget,
) -> Result<Vec<DensePoly>> {
    let m = pp.modulus();
    let p = pp.p() as u128;
    let f = f.reduce_modulus(m);
    let base = phi.reduce_modulus(p).lift_modulus(m).pow(a as u64);
    let n = a * phi.degree().unwrap_or(0);
    let mw = pp.pow(pp.k() - 1);
    let total = mw.checked_pow(n as u32);
    let mut clock = Clock::start(budget, total, "lift search")?;
    let mut out = Vec::new();
    for i in 0..total.unwrap() {
        clock.tick()?;
        let mut j = i;
        let mut w = Vec::with_capacity(n);
        for _ in 0..n {
            w.push((j % mw) * p);
            j /= mw;
        }
        let g = base.add(&DensePoly::new(w, m));
        if divides(&f, &g) {
            out.push(g);
        }
    }
    out.sort();
    Ok(out)
}

fn eval_chain<C: ChainRing>(ring: &C, g: &[C::Elem], y: &C::Elem) -> C::Elem {
    let mut acc = ring.zero();
    for c in g.iter().rev() {
        acc = ring.add(&ring.mul(&acc, y), c);
    }
    ring.reduce(&acc)
}

/// All roots of `g` in a finite chain ring, by evaluation at every element.
pub fn brute_roots<C: ChainRing>(ring: &C, g: &[C::Elem], budget: OracleBudget) -> Result<Vec<C::Elem>> {
    let n = ring.cardinality();
    let mut clock = Clock::start(budget, n, "root scan")?;
    let zero = ring.zero();
    let mut out = Vec::new();
    for i in 0..n.unwrap() {
        clock.tick()?;
        let y = ring.element_from_index(i);
        if eval_chain(ring, g, &y) == zero {
            out.push(y);
        }
    }
    out.sort();
    Ok(out)
}

/// All roots of a polynomial with coefficients in `R = Z[x]/<p^k, phi^ell>`.
pub fn brute_roots_local(ctx: &LocalRingCtx, g: &[DensePoly], budget: OracleBudget) -> Result<Vec<DensePoly>> {
    let n = ctx.cardinality();
    let mut clock = Clock::start(budget, n, "local root scan")?;
    let mut out = Vec::new();
    for i in 0..n.unwrap() {
        clock.tick()?;
        let y = ctx.element_from_index(i);
        let mut acc = DensePoly::zero(ctx.modulus());
        for c in g.iter().rev() {
            acc = ctx.reduce(&ctx.mul(&acc, &y).add(c));
        }
        if acc.is_zero() {
            out.push(y);
        }
    }
    Ok(out)
}
