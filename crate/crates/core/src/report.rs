//! Self-contained results for the command line and the browser demo. Every
//! returned factor is checked by trial division before it is reported.

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{count_factors, count_factors_p3, enumerate_lifts, factor, verify_factor, FactorOutcome, PartCount};
use crate::field::Fq;
use crate::parse::{parse_poly, parse_poly_in_y};
use crate::poly::DensePoly;
use crate::rep_roots::{rep_count, root_find, RepRoot};
use crate::ring::{ChainRing, PAdicRing, PhiAdicRing, PrimePower};
use crate::rng::seeded_rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Modulus {
    pub p: u64,
    pub k: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorReport {
    /// `"factored"` or `"irreducible"`.
    pub status: &'static str,
    /// `[g, h]` with `f = unit * g * h`; empty when irreducible.
    pub factors: Vec<String>,
    pub coefficients: Vec<Vec<u128>>,
    pub unit: u128,
    pub modulus: Modulus,
    pub seed: u64,
}

impl FactorReport {
    pub fn is_irreducible(&self) -> bool {
        self.status == "irreducible"
    }
}

impl fmt::Display for FactorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_irreducible() {
            return write!(f, "IRREDUCIBLE mod {}^{}", self.modulus.p, self.modulus.k);
        }
        if self.unit != 1 {
            write!(f, "{} * ", self.unit)?;
        }
        write!(f, "({}) * ({})", self.factors[0], self.factors[1])
    }
}

fn check_monic_factor(f: &DensePoly, g: &DensePoly, pp: &PrimePower) -> Result<()> {
    if verify_factor(f, g, pp)? {
        Ok(())
    } else {
        Err(Error::Precondition(format!("computed factor {g} does not divide f")))
    }
}

pub fn factor_report(f: &DensePoly, pp: &PrimePower, seed: u64) -> Result<FactorReport> {
    let modulus = Modulus { p: pp.p(), k: pp.k() };
    let out = factor(f, pp, &mut seeded_rng(seed))?;
    Ok(match out {
        FactorOutcome::Irreducible { .. } => FactorReport {
            status: "irreducible",
            factors: Vec::new(),
            coefficients: Vec::new(),
            unit: 1,
            modulus,
            seed,
        },
        FactorOutcome::Factored { unit, g, h } => {
            let monic = g.mul(&h);
            check_monic_factor(&monic, &g, pp)?;
            check_monic_factor(&monic, &h, pp)?;
            if monic.scale(unit) != f.reduce_modulus(pp.modulus()) {
                return Err(Error::Precondition("factor product differs from f".into()));
            }
            FactorReport {
                status: "factored",
                factors: vec![g.to_string(), h.to_string()],
                coefficients: vec![g.coeffs().to_vec(), h.coeffs().to_vec()],
                unit,
                modulus,
                seed,
            }
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftsReport {
    pub status: &'static str,
    #[serde(serialize_with = "crate::factor::ser_big")]
    pub count: BigUint,
    pub phi: String,
    pub e: usize,
    pub a: usize,
    pub description: String,
    /// Up to the requested number of lifts, sorted.
    pub factors: Vec<String>,
    pub modulus: Modulus,
    pub seed: u64,
}

impl fmt::Display for LiftsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.description)?;
        write!(f, "count: {}", self.count)?;
        for g in &self.factors {
            write!(f, "\n  {g}")?;
        }
        Ok(())
    }
}

pub fn lifts_report(f: &DensePoly, gt: &DensePoly, pp: &PrimePower, expand: usize, seed: u64) -> Result<LiftsReport> {
    let desc = enumerate_lifts(f, gt, pp, &mut seeded_rng(seed))?;
    let gs = desc.expand(expand)?;
    for g in &gs {
        check_monic_factor(&desc.f, g, pp)?;
    }
    Ok(LiftsReport {
        status: "ok",
        count: desc.count.clone(),
        phi: desc.phi.to_string(),
        e: desc.e,
        a: desc.a,
        description: desc.to_string(),
        factors: gs.iter().map(ToString::to_string).collect(),
        modulus: Modulus { p: pp.p(), k: pp.k() },
        seed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub status: &'static str,
    /// Monic divisors including `1` and `f`.
    #[serde(serialize_with = "crate::factor::ser_big")]
    pub count: BigUint,
    #[serde(serialize_with = "crate::factor::ser_big")]
    pub nontrivial: BigUint,
    pub parts: Vec<PartReport>,
    pub modulus: Modulus,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartReport {
    pub phi: String,
    pub e: usize,
    #[serde(serialize_with = "crate::factor::ser_big_vec")]
    pub by_exponent: Vec<BigUint>,
}

impl From<&PartCount> for PartReport {
    fn from(c: &PartCount) -> Self {
        PartReport { phi: c.phi.to_string(), e: c.e, by_exponent: c.by_exponent.clone() }
    }
}

impl fmt::Display for CountReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "monic divisors: {} ({} nontrivial)", self.count, self.nontrivial)?;
        for part in &self.parts {
            let by: Vec<String> = part.by_exponent.iter().map(ToString::to_string).collect();
            write!(f, "\n  ({})^{}: [{}]", part.phi, part.e, by.join(", "))?;
        }
        Ok(())
    }
}

pub fn count_report(f: &DensePoly, pp: &PrimePower, seed: u64) -> Result<CountReport> {
    let mut rng = seeded_rng(seed);
    let c = if pp.k() == 3 { count_factors_p3(f, pp, &mut rng)? } else { count_factors(f, pp, &mut rng)? };
    Ok(CountReport {
        status: "ok",
        count: c.total,
        nontrivial: c.nontrivial,
        parts: c.parts.iter().map(PartReport::from).collect(),
        modulus: Modulus { p: pp.p(), k: pp.k() },
        seed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootSet {
    /// Base point, reduced modulo `pi^j`.
    pub v: String,
    /// The set is `v + pi^j * R`.
    pub j: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootsReport {
    pub status: &'static str,
    /// `Z/p^k` or `F_p[x]/(phi^k)`.
    pub ring: String,
    pub uniformizer: String,
    pub roots: Vec<RootSet>,
    #[serde(serialize_with = "crate::factor::ser_big")]
    pub count: BigUint,
    /// Up to the requested number of individual roots.
    pub elements: Vec<String>,
    pub modulus: Modulus,
    pub seed: u64,
}

impl fmt::Display for RootsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "roots in {}: {}", self.ring, self.count)?;
        for r in &self.roots {
            write!(f, "\n  {} + ({})^{} * R", r.v, self.uniformizer, r.j)?;
        }
        if !self.elements.is_empty() {
            write!(f, "\nelements: {}", self.elements.join(", "))?;
        }
        Ok(())
    }
}

fn roots_in<C: ChainRing>(
    ring: &C,
    g: &[C::Elem],
    expand: usize,
    seed: u64,
    show: impl Fn(&C::Elem) -> String,
) -> Result<(Vec<RootSet>, BigUint, Vec<String>)> {
    let reps = root_find(ring, g, &mut seeded_rng(seed))?;
    let count = rep_count(ring, &reps)?;
    let mut elements = Vec::new();
    'outer: for RepRoot { v, j } in &reps {
        let free = ring.with_precision(ring.precision() - j);
        let n = free.cardinality().unwrap_or(u128::MAX);
        for i in 0..n {
            if elements.len() >= expand {
                break 'outer;
            }
            let y = ring.reduce(&ring.add(v, &ring.mul_pi_pow(&free.element_from_index(i), *j)));
            elements.push(show(&y));
        }
    }
    let roots = reps.iter().map(|r| RootSet { v: show(&r.v), j: r.j }).collect();
    Ok((roots, count, elements))
}

/// Roots of `g` in `Z/p^k` when `phi` is `None`, otherwise roots of a
/// polynomial in `y` over `F_p[x]/(phi^k)`.
pub fn roots_report(g: &str, p: u64, k: u32, phi: Option<&str>, expand: usize, seed: u64) -> Result<RootsReport> {
    if k == 0 {
        return Err(Error::ZeroPrecision);
    }
    let modulus = Modulus { p, k };
    match phi {
        None => {
            let ring = PAdicRing::new(p, k as usize)?;
            let g = parse_poly(g, ring.modulus())?;
            let (roots, count, elements) = roots_in(&ring, g.coeffs(), expand, seed, |y| y.to_string())?;
            Ok(RootsReport {
                status: "ok",
                ring: format!("Z/{p}^{k}"),
                uniformizer: p.to_string(),
                roots,
                count,
                elements,
                modulus,
                seed,
            })
        }
        Some(phi) => {
            let phi = parse_poly(phi, p as u128)?;
            let ring = PhiAdicRing::new(Fq::new(p, &phi)?, k as usize);
            let g: Vec<DensePoly> = parse_poly_in_y(g, p as u128)?.iter().map(|c| ring.reduce(c)).collect();
            let (roots, count, elements) = roots_in(&ring, &g, expand, seed, |y| y.to_string())?;
            Ok(RootsReport {
                status: "ok",
                ring: format!("F_{p}[x]/(({phi})^{k})"),
                uniformizer: phi.to_string(),
                roots,
                count,
                elements,
                modulus,
                seed,
            })
        }
    }
}
