//! Factoring, lift enumeration and factor counting modulo `p^k`, `k <= 4`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;

use crate::arith::inv_mod;
use crate::error::{Error, Result};
use crate::hensel::{decompose, PowerForm};
use crate::poly::DensePoly;
use crate::reduction::{from_p_digits, ReductionInstance};
use crate::rep_roots::{rep_contains, rep_count, rep_scale_shift, root_find, RepRoot};
use crate::ring::{ChainRing, PrimePower};
use crate::solver::{count_roots, lift_quadratic, roots_k, y1_rule, RootDescription, RootShape};

pub const MAX_POWER: u32 = 4;

/// `f` reduced mod `p^k` and scaled to be monic, with the removed unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub unit: u128,
    pub monic: DensePoly,
}

pub fn normalize(f: &DensePoly, pp: &PrimePower) -> Result<Normalized> {
    if pp.k() > MAX_POWER {
        return Err(Error::UnsupportedPower(pp.k()));
    }
    let m = pp.modulus();
    let f = f.reduce_modulus(m);
    let Some(n) = f.degree() else { return Err(Error::ZeroPolynomial) };
    let lc = f.lc();
    if lc % pp.p() as u128 == 0 {
        return Err(Error::LeadingCoefficientNotUnit { lc, p: pp.p() });
    }
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let inv = inv_mod(lc, m).ok_or(Error::ZeroInverse)?;
    Ok(Normalized { unit: lc, monic: f.scale(inv) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FactorOutcome {
    /// `f = unit * g * h` with `g`, `h` monic of positive degree.
    Factored { unit: u128, g: DensePoly, h: DensePoly },
    /// No nontrivial factor; `checked` lists the exponents `a` searched, and
    /// is empty when irreducibility follows from the residue factorization.
    Irreducible { checked: Vec<usize> },
}

impl FactorOutcome {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, FactorOutcome::Irreducible { .. })
    }
}

/// Finds a nontrivial monic factor of `f` modulo `p^k`, or certifies that
/// none exists.
pub fn factor<R: Rng + ?Sized>(f: &DensePoly, pp: &PrimePower, rng: &mut R) -> Result<FactorOutcome> {
    let Normalized { unit, monic } = normalize(f, pp)?;
    if monic.degree() == Some(1) {
        return Ok(FactorOutcome::Irreducible { checked: Vec::new() });
    }
    let parts = decompose(&monic, pp, rng)?;
    if parts.len() > 1 {
        let g = parts[0].to_poly();
        let (h, r) = monic.div_rem(&g)?;
        debug_assert!(r.is_zero());
        return Ok(FactorOutcome::Factored { unit, g, h });
    }
    let form = &parts[0];
    if form.e == 1 {
        return Ok(FactorOutcome::Irreducible { checked: Vec::new() });
    }
    let mut checked = Vec::new();
    for a in 1..=form.e / 2 {
        checked.push(a);
        let inst = ReductionInstance::new(form, a, pp.k())?;
        let desc = roots_k(&inst, rng)?;
        if let Some(y) = lift_roots(&desc, &inst, 1)?.into_iter().next() {
            let g = inst.factor_for(&y);
            let (h, r) = monic.div_rem(&g)?;
            if !r.is_zero() {
                return Err(Error::Precondition(format!("lift {g} does not divide f")));
            }
            return Ok(FactorOutcome::Factored { unit, g, h });
        }
    }
    Ok(FactorOutcome::Irreducible { checked })
}

/// Whether the monic `g` divides `f` modulo `p^k`.
pub fn verify_factor(f: &DensePoly, g: &DensePoly, pp: &PrimePower) -> Result<bool> {
    let m = pp.modulus();
    let g = g.reduce_modulus(m);
    if g.is_zero() || !g.is_monic() {
        return Err(Error::NotMonic);
    }
    let (_, r) = f.reduce_modulus(m).div_rem(&g)?;
    Ok(r.is_zero())
}

/// Elements `base + phi^lo * w` with `deg w < (a - lo) * deg(phi)`.
#[derive(Clone, Debug)]
struct DigitBox {
    base: DensePoly,
    lo: usize,
}

/// The part of the class `v + phi^j R0` whose `phi`-adic digits vanish from
/// position `a` on.
fn d0_box(v: &DensePoly, j: usize, a: usize, d: usize) -> Option<DigitBox> {
    if j >= a {
        (v.degree().map_or(true, |n| n < a * d)).then(|| DigitBox { base: v.clone(), lo: a })
    } else {
        Some(DigitBox { base: v.clone(), lo: j })
    }
}

impl DigitBox {
    fn size(&self, p: u64, a: usize, d: usize) -> Option<u128> {
        (p as u128).checked_pow(((a - self.lo) * d) as u32)
    }

    fn nth(&self, i: u128, p: u64, a: usize, phi: &DensePoly) -> DensePoly {
        let d = phi.degree().unwrap_or(0);
        let n = (a - self.lo) * d;
        let p = p as u128;
        let mut i = i;
        let w: Vec<u128> = (0..n)
            .map(|_| {
                let c = i % p;
                i /= p;
                c
            })
            .collect();
        let w = DensePoly::new(w, p);
        self.base.add(&phi.pow(self.lo as u64).mul(&w))
    }

    fn for_each(
        &self,
        p: u64,
        a: usize,
        phi: &DensePoly,
        mut f: impl FnMut(DensePoly) -> bool,
    ) {
        let d = phi.degree().unwrap_or(0);
        let n = self.size(p, a, d).unwrap_or(u128::MAX);
        for i in 0..n {
            if !f(self.nth(i, p, a, phi)) {
                return;
            }
        }
    }
}

/// Up to `limit` roots `y` of `E` with `deg y < a*deg(phi)` and coefficients
/// below `p^(k-1)`, each giving the monic lift `phi^a - p*y`.
pub fn lift_roots(desc: &RootDescription, inst: &ReductionInstance, limit: usize) -> Result<Vec<DensePoly>> {
    let p = inst.p();
    let a = inst.a;
    let phi = inst.ctx.phi().clone();
    let d = phi.degree().unwrap_or(0);
    let m = inst.ctx.modulus();
    let k = inst.k;
    let full = DigitBox { base: DensePoly::zero(p as u128), lo: 0 };
    let mut out: Vec<DensePoly> = Vec::new();
    if limit == 0 {
        return Ok(out);
    }
    let assemble = |digits: &[DensePoly]| from_p_digits(digits, p, m);

    // y0 classes as (box, excluded class)
    let mut y0_boxes: Vec<(DigitBox, Option<RepRoot<DensePoly>>)> = Vec::new();
    let r0 = inst.ctx.residue_ring();
    match &desc.shape {
        RootShape::All => {
            out.push(DensePoly::zero(m));
            return Ok(out);
        }
        RootShape::Solvable(false) => return Ok(out),
        RootShape::Solvable(true) => y0_boxes.push((full.clone(), None)),
        RootShape::Quotient { roots, .. } => {
            for r in roots {
                if let Some(b) = d0_box(&r.v, r.j, a, d) {
                    y0_boxes.push((b, None));
                }
            }
        }
        RootShape::Strata(branches) => {
            for br in branches {
                let shift = r0.mul_pi_pow(&r0.one(), br.root.j);
                for s in &br.strata {
                    let z = rep_scale_shift(&r0, &br.root.v, &shift, std::slice::from_ref(&s.z));
                    let bad = s
                        .bad
                        .as_ref()
                        .and_then(|b| rep_scale_shift(&r0, &br.root.v, &shift, std::slice::from_ref(b)).pop());
                    for zr in z {
                        if let Some(b) = d0_box(&zr.v, zr.j, a, d) {
                            y0_boxes.push((b, bad.clone()));
                        }
                    }
                }
            }
        }
    }

    for (bx, bad) in &y0_boxes {
        let mut err = None;
        bx.for_each(p, a, &phi, |y0| {
            if bad.as_ref().is_some_and(|b| rep_contains(&r0, b, &y0)) {
                return true;
            }
            let y1_box = if k == 4 {
                match y1_rule(inst, &y0) {
                    Some(rule) => {
                        let j = inst.ell() - rule.r;
                        let s0 = r0.with_precision(j).reduce(&rule.s0);
                        match d0_box(&s0, j, a, d) {
                            Some(b) => b,
                            None => return true,
                        }
                    }
                    None => {
                        err = Some(Error::Precondition(format!("admissible y0 = {y0} has no y1")));
                        return false;
                    }
                }
            } else {
                full.clone()
            };
            // digits past y1 are free for k = 4; y1 is free for k = 3
            let mut keep = true;
            y1_box.for_each(p, a, &phi, |y1| {
                if k == 4 {
                    full.for_each(p, a, &phi, |y2| {
                        out.push(assemble(&[y0.clone(), y1.clone(), y2]));
                        keep = out.len() < limit;
                        keep
                    });
                } else if k == 3 {
                    out.push(assemble(&[y0.clone(), y1]));
                    keep = out.len() < limit;
                } else {
                    out.push(assemble(&[y0.clone()]));
                    keep = out.len() < limit;
                    return false;
                }
                keep
            });
            keep
        });
        if let Some(e) = err {
            return Err(e);
        }
        if out.len() >= limit {
            break;
        }
    }
    Ok(out)
}

/// Monic lifts of `phi^a` dividing `f` are in bijection with roots of `E`
/// modulo a fiber of size `q^(a(k^2-k+1))`.
pub fn lift_count(desc: &RootDescription, inst: &ReductionInstance) -> Result<BigUint> {
    let roots = count_roots(desc, inst)?;
    let q = inst.ctx.field().order();
    let k = inst.k as usize;
    let fiber = q.pow((inst.a * (k * k - k + 1)) as u32);
    if !(&roots % &fiber).is_zero() {
        return Err(Error::Precondition(format!("root count {roots} is not a multiple of {fiber}")));
    }
    Ok(roots / fiber)
}

/// All monic lifts of `phi^a` that divide `f`, described through the root
/// set of `E` for `min(a, e - a)`.
#[derive(Clone, Debug)]
pub struct LiftDescription {
    pub f: DensePoly,
    pub phi: DensePoly,
    pub e: usize,
    pub a: usize,
    /// Exponent actually solved for: `a` or `e - a`.
    pub solved: usize,
    pub roots: Option<RootDescription>,
    pub count: BigUint,
    inst: Option<ReductionInstance>,
}

impl LiftDescription {
    pub fn complement(&self) -> bool {
        self.solved != self.a
    }

    /// Up to `limit` lifts, sorted.
    pub fn expand(&self, limit: usize) -> Result<Vec<DensePoly>> {
        let m = self.f.modulus();
        let mut out = match (&self.roots, &self.inst) {
            (Some(desc), Some(inst)) => {
                let ys = lift_roots(desc, inst, limit)?;
                let mut gs = Vec::with_capacity(ys.len());
                for y in ys {
                    let g = inst.factor_for(&y);
                    if self.complement() {
                        let (h, r) = self.f.div_rem(&g)?;
                        if !r.is_zero() {
                            return Err(Error::Precondition(format!("{g} does not divide f")));
                        }
                        gs.push(h);
                    } else {
                        gs.push(g);
                    }
                }
                gs
            }
            _ if limit == 0 => Vec::new(),
            _ if self.a == 0 => vec![DensePoly::one(m)],
            _ => vec![self.f.clone()],
        };
        out.sort();
        Ok(out)
    }
}

impl fmt::Display for LiftDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lifts of ({})^{}: {}", self.phi, self.a, self.count)?;
        if let Some(d) = &self.roots {
            write!(f, "; {d}")?;
            if self.complement() {
                write!(f, " (cofactors of the lifts of exponent {})", self.solved)?;
            }
        }
        Ok(())
    }
}

/// Writes `gt mod p` as `phi^a` for the single residue factor `phi` of `f`.
fn exponent_of(form: &PowerForm, gt: &DensePoly, p: u64) -> Result<usize> {
    let p = p as u128;
    let g = gt.reduce_modulus(p);
    let g = g.make_monic().ok_or(Error::NotAFactorModP)?;
    let d = form.phi.degree().unwrap_or(0);
    let n = g.degree().unwrap_or(0);
    if n % d != 0 || n / d > form.e {
        return Err(Error::NotAFactorModP);
    }
    let a = n / d;
    if form.phi.pow(a as u64) != g {
        return Err(Error::NotAFactorModP);
    }
    Ok(a)
}

/// Describes all monic `g` with `g = gt mod p` dividing `f` modulo `p^k`.
/// `f mod p` must be a power of one irreducible.
pub fn enumerate_lifts<R: Rng + ?Sized>(
    f: &DensePoly,
    gt: &DensePoly,
    pp: &PrimePower,
    rng: &mut R,
) -> Result<LiftDescription> {
    let Normalized { monic, .. } = normalize(f, pp)?;
    let parts = decompose(&monic, pp, rng)?;
    if parts.len() != 1 {
        return Err(Error::NotPrimaryPower(parts.len()));
    }
    let form = &parts[0];
    let a = exponent_of(form, gt, pp.p())?;
    let base = LiftDescription {
        f: monic.clone(),
        phi: form.phi.clone(),
        e: form.e,
        a,
        solved: a,
        roots: None,
        count: BigUint::one(),
        inst: None,
    };
    if a == 0 || a == form.e {
        return Ok(base);
    }
    let solved = a.min(form.e - a);
    let inst = ReductionInstance::new(form, solved, pp.k())?;
    let desc = roots_k(&inst, rng)?;
    let count = lift_count(&desc, &inst)?;
    Ok(LiftDescription { solved, roots: Some(desc), count, inst: Some(inst), ..base })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartCount {
    pub phi: DensePoly,
    pub e: usize,
    /// Number of monic divisors of the part lifting `phi^a`, `a = 0..=e`.
    #[serde(serialize_with = "ser_big_vec")]
    pub by_exponent: Vec<BigUint>,
}

impl PartCount {
    pub fn total(&self) -> BigUint {
        self.by_exponent.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorCount {
    /// All monic divisors, `1` and `f` included.
    #[serde(serialize_with = "ser_big")]
    pub total: BigUint,
    /// Divisors other than `1` and `f`.
    #[serde(serialize_with = "ser_big")]
    pub nontrivial: BigUint,
    pub parts: Vec<PartCount>,
}

/// Counts as JSON numbers when they fit in 64 bits, otherwise as strings.
pub(crate) fn ser_big<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(n) => s.serialize_u64(n),
        None => s.serialize_str(&v.to_string()),
    }
}

pub(crate) fn ser_big_vec<S: serde::Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_u64() {
            Some(n) => seq.serialize_element(&n)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

fn assemble_count(parts: Vec<PartCount>) -> FactorCount {
    let total: BigUint = parts.iter().map(PartCount::total).product();
    let nontrivial = if total >= BigUint::from(2u8) { &total - 2u8 } else { BigUint::zero() };
    FactorCount { total, nontrivial, parts }
}

/// Counts `L(a)` for `a <= e/2` and mirrors the rest through `g <-> f/g`.
fn part_count(form: &PowerForm, mut lifts: impl FnMut(usize) -> Result<BigUint>) -> Result<PartCount> {
    let e = form.e;
    let mut by = vec![BigUint::zero(); e + 1];
    by[0] = BigUint::one();
    by[e] = BigUint::one();
    for a in 1..=e / 2 {
        let n = lifts(a)?;
        by[e - a] = n.clone();
        by[a] = n;
    }
    Ok(PartCount { phi: form.phi.clone(), e, by_exponent: by })
}

/// Number of monic factors of `f` modulo `p^3`, from the root counts of one
/// quadratic over `F_p[x]/(phi^a)` per residue factor and exponent.
pub fn count_factors_p3<R: Rng + ?Sized>(f: &DensePoly, pp: &PrimePower, rng: &mut R) -> Result<FactorCount> {
    if pp.k() != 3 {
        return Err(Error::Precondition(format!("count_factors_p3 needs k = 3, got {}", pp.k())));
    }
    let Normalized { monic, .. } = normalize(f, pp)?;
    let parts = decompose(&monic, pp, rng)?;
    let mut out = Vec::with_capacity(parts.len());
    for form in &parts {
        let q = BigUint::from(form.pp.p()).pow(form.phi.degree().unwrap_or(0) as u32);
        out.push(part_count(form, |a| {
            let inst = ReductionInstance::new(form, a, 3)?;
            Ok(match lift_quadratic(&inst)? {
                None => BigUint::zero(),
                Some((ring, quad)) => {
                    let roots = root_find(&ring, &quad, rng)?;
                    rep_count(&ring, &roots)? * q.pow(a as u32)
                }
            })
        })?);
    }
    Ok(assemble_count(out))
}

/// Number of monic factors of `f` modulo `p^k` for any `k <= 4`.
pub fn count_factors<R: Rng + ?Sized>(f: &DensePoly, pp: &PrimePower, rng: &mut R) -> Result<FactorCount> {
    let Normalized { monic, .. } = normalize(f, pp)?;
    let parts = decompose(&monic, pp, rng)?;
    let mut out = Vec::with_capacity(parts.len());
    for form in &parts {
        out.push(part_count(form, |a| {
            let inst = ReductionInstance::new(form, a, pp.k())?;
            let desc = roots_k(&inst, rng)?;
            lift_count(&desc, &inst)
        })?);
    }
    Ok(assemble_count(out))
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::rng::seeded_rng;
    use crate::verify::random_monic;
    use proptest::prelude::*;

    fn input() -> impl Strategy<Value = (PrimePower, DensePoly, u64)> {
        (prop_oneof![Just(2u64), Just(3), Just(5)], 1u32..=4, any::<u64>()).prop_map(|(p, k, seed)| {
            let pp = PrimePower::new(p, k).unwrap();
            let f = random_monic(&pp, 5, &mut seeded_rng(seed));
            (pp, f, seed)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn returned_factors_divide((pp, f, seed) in input()) {
            let mut rng = seeded_rng(seed);
            if let FactorOutcome::Factored { unit, g, h } = factor(&f, &pp, &mut rng).unwrap() {
                prop_assert!(verify_factor(&f, &g, &pp).unwrap());
                prop_assert!(verify_factor(&f, &h, &pp).unwrap());
                prop_assert_eq!(g.mul(&h).scale(unit), f);
            }
        }

        #[test]
        fn lifts_divide_and_mirror((pp, f, seed) in input()) {
            let mut rng = seeded_rng(seed);
            let parts = decompose(&f, &pp, &mut rng).unwrap();
            prop_assume!(parts.len() == 1);
            let form = &parts[0];
            for a in 0..=form.e {
                let d = enumerate_lifts(&f, &form.phi.pow(a as u64), &pp, &mut rng).unwrap();
                let mirror = enumerate_lifts(&f, &form.phi.pow((form.e - a) as u64), &pp, &mut rng).unwrap();
                prop_assert_eq!(&d.count, &mirror.count);
                let some = d.expand(16).unwrap();
                prop_assert!(!some.is_empty() || d.count.is_zero());
                for g in some {
                    prop_assert!(verify_factor(&f, &g, &pp).unwrap());
                    prop_assert_eq!(g.reduce_modulus(pp.p() as u128), form.phi.pow(a as u64));
                }
            }
        }
    }
}
