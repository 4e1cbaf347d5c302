//! Roots of `E(y)` in `R = Z[x]/<p^k, phi^(ak)>` for `k <= 4` and `a <= e/2`.
//!
//! A root is written `y = y0 + p*y1 + p^2*y2 + p^3*y3` with digits in
//! `R0 = F_p[x]/(phi^(ak))`. The top two digits are always free. For `k = 4`
//! the admissible `y0` are first cut down to the solutions of a quadratic
//! modulo `phi^a`; each such class `a0 + phi^i0 * t` turns `E/p^3` into
//! `E1(t) + E2(t)*y1` over `R0`, which is solved stratum by stratum in the
//! valuation `r` of `E2(t)`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{fp_inverse_mod, Fq};
use crate::poly::DensePoly;
use crate::reduction::{build_e, eval_e, p_digit, ReductionInstance};
use crate::rep_roots::{
    rep_contains, rep_count, rep_new, rep_scale_shift, ring_poly_compose_shift,
    ring_poly_trim, root_find, RepRoot, RepRootSet,
};
use crate::ring::{exact_div_p, val_phi, BivarPoly, ChainRing, Ideal, PhiAdicRing};

type Rep = RepRoot<DensePoly>;

/// `E` with `y = a0 + phi^i0 * t + p*y1` substituted and divided by `p^3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPBranch {
    /// `(a0, i0)` in `F_p[x]/(phi^a)`.
    pub root: Rep,
    /// Coefficients in `t`, over `R0`.
    pub e1: Vec<DensePoly>,
    pub e2: Vec<DensePoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPReduction {
    /// Whether `h = 0 mod <p, phi^a>`; without it there are no roots.
    pub necessary: bool,
    /// Coefficients of the quadratic in `y0` over `F_p[x]/(phi^a)`.
    pub quadratic: Vec<DensePoly>,
    pub s0: RepRootSet<DensePoly>,
    pub branches: Vec<CharPBranch>,
}

/// Elements `t` with `t in z`, `t not in bad`, and `val E2(t) = r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub r: usize,
    pub z: Rep,
    pub bad: Option<Rep>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchDescription {
    pub root: Rep,
    pub e1: Vec<DensePoly>,
    pub e2: Vec<DensePoly>,
    /// Strata in the `t` coordinate.
    pub strata: Vec<Stratum>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootShape {
    /// `k = 1`: every element is a root.
    All,
    /// `k = 2`: all or nothing.
    Solvable(bool),
    /// `k = 3`: roots of `E/p^2` over `R0` give the admissible `y0`.
    Quotient { g: Vec<DensePoly>, roots: RepRootSet<DensePoly> },
    /// `k = 4`.
    Strata(Vec<BranchDescription>),
}

/// How `y1` is determined by `y0`: `y1 = s0 mod phi^(4a - r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Y1Rule {
    pub r: usize,
    pub s0: DensePoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDescription {
    pub k: u32,
    pub a: usize,
    pub ell: usize,
    pub shape: RootShape,
}

fn r0_ring(inst: &ReductionInstance) -> PhiAdicRing {
    inst.ctx.residue_ring()
}

/// `h = p*h11 + phi^a*h12`, both over `F_p`, when `h = 0 mod <p, phi^a>`.
fn split_h(inst: &ReductionInstance) -> Option<(DensePoly, DensePoly)> {
    let p = inst.p() as u128;
    let phi_a = inst.ctx.phi().pow(inst.a as u64);
    let hbar = inst.form.h.reduce_modulus(p);
    let (h12, rem) = hbar.div_rem(&phi_a).expect("phi monic");
    if !rem.is_zero() {
        return None;
    }
    if inst.k < 3 {
        return Some((DensePoly::zero(p), h12));
    }
    let p2 = p * p;
    let diff = inst
        .form
        .h
        .reduce_modulus(p2)
        .sub(&inst.ctx.phi().lift_modulus(p2).pow(inst.a as u64).mul(&h12.lift_modulus(p2)));
    let h11 = diff.div_exact_scalar(p, inst.p()).expect("h - phi^a*h12 = 0 mod p");
    Some((h11, h12))
}

/// `phi^(e-2a) y^2 + h12 y + h11` over `F_p[x]/(phi^a)`.
fn quadratic(inst: &ReductionInstance, h11: &DensePoly, h12: &DensePoly) -> (PhiAdicRing, Vec<DensePoly>) {
    let ring = PhiAdicRing::new(inst.ctx.field().clone(), inst.a);
    let lead = inst.ctx.phi().pow((inst.form.e - 2 * inst.a) as u64);
    let q = vec![ring.reduce(h11), ring.reduce(h12), ring.reduce(&lead)];
    (ring, q)
}

/// The quadratic over `F_p[x]/(phi^a)` whose roots are the admissible `y0`
/// modulo `phi^a`, or `None` when `h` is not divisible by `<p, phi^a>`.
pub fn lift_quadratic(inst: &ReductionInstance) -> Result<Option<(PhiAdicRing, Vec<DensePoly>)>> {
    check_half(inst)?;
    if inst.k < 3 {
        return Err(Error::Precondition(format!("the quadratic needs k >= 3, got {}", inst.k)));
    }
    Ok(split_h(inst).map(|(h11, h12)| quadratic(inst, &h11, &h12)))
}

fn check_half(inst: &ReductionInstance) -> Result<()> {
    if 2 * inst.a > inst.form.e {
        return Err(Error::Precondition(format!(
            "exponent a = {} exceeds e/2 = {}/2; use the complementary exponent",
            inst.a, inst.form.e
        )));
    }
    Ok(())
}

/// Substitutes `y = a0 + phi^i0 * t + p*s` into `E` and divides by `p^3`.
fn char_p_branch(inst: &ReductionInstance, root: &Rep) -> Result<CharPBranch> {
    let ideal = inst.ctx.ideal();
    let m = inst.ctx.modulus();
    let p = inst.p() as u128;
    let a0 = root.v.lift_modulus(m);
    let phi_i0 = inst.ctx.phi().lift_modulus(m).pow(root.j as u64);
    let y = BivarPoly::from_terms([
        ((0, 0), a0),
        ((1, 0), ideal.reduce(&phi_i0)?),
        ((0, 1), DensePoly::constant(p, m)),
    ]);
    let mut acc = BivarPoly::zero();
    for c in build_e(inst).iter().rev() {
        acc = acc.mul(&y, ideal)?;
        acc.add_term((0, 0), c.clone());
        acc = acc.reduce(ideal)?;
    }
    let mut cur = acc;
    let mut cur_ideal: Ideal = ideal.clone();
    for _ in 0..3 {
        cur = cur.exact_div_p(&cur_ideal)?;
        cur_ideal = cur_ideal.with(cur_ideal.l() - 1, cur_ideal.m());
    }
    if cur.degree_y1().unwrap_or(0) > 1 {
        return Err(Error::Precondition("E/p^3 is not linear in y1".into()));
    }
    let r0 = r0_ring(inst);
    let e1 = ring_poly_trim(&r0, &cur.slice_y1(0));
    let e2 = ring_poly_trim(&r0, &cur.slice_y1(1));
    if e1.len() > 4 || e2.len() > 2 {
        return Err(Error::Precondition(format!(
            "unexpected degrees: E1 has {} and E2 has {} coefficients",
            e1.len(),
            e2.len()
        )));
    }
    Ok(CharPBranch { root: root.clone(), e1, e2 })
}

/// Reduction of the `k = 4` problem to characteristic `p`.
pub fn reduce_to_char_p<R: Rng + ?Sized>(inst: &ReductionInstance, rng: &mut R) -> Result<CharPReduction> {
    if inst.k != 4 {
        return Err(Error::Precondition(format!("char-p reduction needs k = 4, got {}", inst.k)));
    }
    check_half(inst)?;
    let Some((h11, h12)) = split_h(inst) else {
        return Ok(CharPReduction {
            necessary: false,
            quadratic: Vec::new(),
            s0: Vec::new(),
            branches: Vec::new(),
        });
    };
    let (ring, q) = quadratic(inst, &h11, &h12);
    let s0 = root_find(&ring, &q, rng)?;
    debug_assert!(s0.len() <= 2);
    let branches = s0
        .iter()
        .map(|r| char_p_branch(inst, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(CharPReduction { necessary: true, quadratic: q, s0, branches })
}

fn residue_linear(fq: &Fq, r: &PhiAdicRing, coeffs: &[DensePoly], shift: usize) -> (DensePoly, DensePoly) {
    let get = |i: usize| {
        coeffs
            .get(i)
            .map(|c| r.residue(&r.div_pi_pow(c, shift)))
            .unwrap_or_else(|| fq.zero())
    };
    (get(0), get(1))
}

/// Strata of `{t : exists s, E1(t) + E2(t)*s = 0 in R0}`.
fn solve_strata<R: Rng + ?Sized>(
    r0: &PhiAdicRing,
    e1: &[DensePoly],
    e2: &[DensePoly],
    rng: &mut R,
) -> Result<Vec<Stratum>> {
    let fq = r0.residue_field().clone();
    let top = r0.precision();
    let mut out = Vec::new();

    // r = 0: E2(t) a unit, excluding at most one residue class
    let (u, v) = residue_linear(&fq, r0, e2, 0);
    if !(u.is_zero() && v.is_zero()) {
        let bad = if v.is_zero() {
            None
        } else {
            let theta = fq.neg(&fq.mul(&u, &fq.inv(&v)?));
            Some(rep_new(r0, &r0.lift_residue(&theta), 1))
        };
        out.push(Stratum { r: 0, z: RepRoot { v: r0.zero(), j: 0 }, bad });
    }

    for r in 1..=top {
        let ring_r = r0.with_precision(r);
        let s1 = root_find(&ring_r, e1, rng)?;
        for rep1 in s1 {
            let e2p = ring_poly_compose_shift(&ring_r, e2, &rep1.v, rep1.j);
            let s2 = root_find(&ring_r, &e2p, rng)?;
            debug_assert!(s2.len() <= 1);
            for rep2 in s2 {
                let j = rep1.j + rep2.j;
                let zt = r0.add(&rep1.v, &r0.mul_pi_pow(&rep2.v, rep1.j));
                let z = rep_new(r0, &zt, j);
                if r == top {
                    out.push(Stratum { r, z, bad: None });
                    continue;
                }
                // keep only t with val E2(t) exactly r
                let ring_r1 = r0.with_precision(r + 1);
                let e2pp = ring_poly_compose_shift(&ring_r1, e2, &zt, j);
                if e2pp.is_empty() {
                    continue;
                }
                assert!(
                    e2pp.iter().all(|c| ring_r1.valuation(c) >= r),
                    "E2 does not vanish to order {r} on its stratum"
                );
                let (u, v) = residue_linear(&fq, &ring_r1, &e2pp, r);
                let bad = if v.is_zero() {
                    None
                } else {
                    let theta = fq.neg(&fq.mul(&u, &fq.inv(&v)?));
                    let b = r0.add(&zt, &r0.mul_pi_pow(&r0.lift_residue(&theta), j));
                    Some(rep_new(r0, &b, j + 1))
                };
                out.push(Stratum { r, z, bad });
            }
        }
    }
    Ok(out)
}

/// Describes the admissible `y0` of each branch by valuation strata.
pub fn solve_bivariate<R: Rng + ?Sized>(
    red: &CharPReduction,
    inst: &ReductionInstance,
    rng: &mut R,
) -> Result<RootDescription> {
    let r0 = r0_ring(inst);
    let mut branches = Vec::with_capacity(red.branches.len());
    for b in &red.branches {
        let strata = solve_strata(&r0, &b.e1, &b.e2, rng)?;
        branches.push(BranchDescription {
            root: b.root.clone(),
            e1: b.e1.clone(),
            e2: b.e2.clone(),
            strata,
        });
    }
    Ok(RootDescription { k: 4, a: inst.a, ell: inst.ell(), shape: RootShape::Strata(branches) })
}

/// Describes all roots of `E` for `k <= 4`.
pub fn roots_k<R: Rng + ?Sized>(inst: &ReductionInstance, rng: &mut R) -> Result<RootDescription> {
    check_half(inst)?;
    let (k, a, ell) = (inst.k, inst.a, inst.ell());
    let shape = match k {
        1 => RootShape::All,
        2 => {
            let ideal = inst.ctx.ideal();
            let mut ok = true;
            for c in build_e(inst) {
                match exact_div_p(&c, ideal).and_then(|c1| exact_div_p(&c1, &ideal.with(1, ideal.m()))) {
                    Ok(_) => {}
                    Err(Error::NotDivisibleByP { .. }) => ok = false,
                    Err(e) => return Err(e),
                }
            }
            RootShape::Solvable(ok)
        }
        3 => {
            let ideal = inst.ctx.ideal();
            let r0 = r0_ring(inst);
            let mut g = Vec::new();
            let mut ok = true;
            for c in build_e(inst) {
                match exact_div_p(&c, ideal).and_then(|c1| exact_div_p(&c1, &ideal.with(2, ideal.m()))) {
                    Ok(q) => g.push(q),
                    Err(Error::NotDivisibleByP { .. }) => {
                        ok = false;
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
            if ok {
                let g = ring_poly_trim(&r0, &g);
                let roots = root_find(&r0, &g, rng)?;
                RootShape::Quotient { g, roots }
            } else {
                RootShape::Quotient { g: Vec::new(), roots: Vec::new() }
            }
        }
        4 => {
            let red = reduce_to_char_p(inst, rng)?;
            return solve_bivariate(&red, inst, rng);
        }
        _ => return Err(Error::UnsupportedPower(k)),
    };
    Ok(RootDescription { k, a, ell, shape })
}

fn q_pow(q: &BigUint, e: usize) -> BigUint {
    q.pow(e as u32)
}

/// Number of `t` in one branch that admit some `y1`, weighted by the number
/// of such `y1`.
fn branch_weight(q: &BigUint, ell: usize, b: &BranchDescription) -> BigUint {
    let mut total = BigUint::zero();
    for s in &b.strata {
        let mut n = q_pow(q, ell - s.z.j);
        if let Some(bad) = &s.bad {
            n -= q_pow(q, ell - bad.j);
        }
        total += n * q_pow(q, s.r);
    }
    total
}

/// Exact number of roots of `E` in `R`.
pub fn count_roots(desc: &RootDescription, inst: &ReductionInstance) -> Result<BigUint> {
    let q = inst.ctx.field().order();
    let ell = desc.ell;
    Ok(match &desc.shape {
        RootShape::All => q_pow(&q, ell),
        RootShape::Solvable(true) => q_pow(&q, 2 * ell),
        RootShape::Solvable(false) => BigUint::zero(),
        RootShape::Quotient { roots, .. } => {
            let r0 = r0_ring(inst);
            rep_count(&r0, roots)? * q_pow(&q, 2 * ell)
        }
        RootShape::Strata(branches) => {
            let mut total = BigUint::zero();
            for b in branches {
                let w = branch_weight(&q, ell, b);
                let fiber = q_pow(&q, b.root.j);
                if !(&w % &fiber).is_zero() {
                    return Err(Error::Precondition("branch weight not a multiple of its fiber size".into()));
                }
                total += w / fiber;
            }
            total * q_pow(&q, 2 * ell)
        }
    })
}

/// The `t` with `y0 = a0 + phi^i0 * t`, if `y0` lies in the branch.
pub fn branch_coordinate(inst: &ReductionInstance, root: &Rep, y0: &DensePoly) -> Option<DensePoly> {
    let ring_a = PhiAdicRing::new(inst.ctx.field().clone(), inst.a);
    if !rep_contains(&ring_a, root, y0) {
        return None;
    }
    let r0 = r0_ring(inst);
    let d = r0.sub(&r0.reduce(y0), &root.v);
    Some(r0.div_pi_pow(&d, root.j))
}

fn stratum_of<'a>(r0: &PhiAdicRing, strata: &'a [Stratum], t: &DensePoly) -> Option<&'a Stratum> {
    strata.iter().find(|s| {
        rep_contains(r0, &s.z, t) && !s.bad.as_ref().is_some_and(|b| rep_contains(r0, b, t))
    })
}

/// Whether `y0 in R0` extends to a root.
pub fn y0_admissible(desc: &RootDescription, inst: &ReductionInstance, y0: &DensePoly) -> bool {
    let r0 = r0_ring(inst);
    let y0 = r0.reduce(y0);
    match &desc.shape {
        RootShape::All => true,
        RootShape::Solvable(ok) => *ok,
        RootShape::Quotient { roots, .. } => roots.iter().any(|r| rep_contains(&r0, r, &y0)),
        RootShape::Strata(branches) => branches.iter().any(|b| {
            branch_coordinate(inst, &b.root, &y0)
                .is_some_and(|t| stratum_of(&r0, &b.strata, &t).is_some())
        }),
    }
}

/// Whether `y` is a root according to the description.
pub fn contains(desc: &RootDescription, inst: &ReductionInstance, y: &DensePoly) -> bool {
    let p = inst.p();
    let r0 = r0_ring(inst);
    let y = inst.ctx.reduce(&y.lift_modulus(inst.ctx.modulus()));
    let y0 = r0.reduce(&p_digit(&y, p, 0));
    if !y0_admissible(desc, inst, &y0) {
        return false;
    }
    if !matches!(desc.shape, RootShape::Strata(_)) {
        return true;
    }
    // the branch coordinate s of y differs from the digit y1 by a carry, so
    // y1 is tested against the rule derived from the digits themselves
    let y1 = r0.reduce(&p_digit(&y, p, 1));
    match y1_rule(inst, &y0) {
        Some(rule) => {
            let r = r0.with_precision(inst.ell() - rule.r);
            r.is_zero(&r.reduce(&r0.sub(&y1, &rule.s0)))
        }
        None => false,
    }
}

/// For `k = 4`: the class of `y1` completing `y0`, computed from the
/// `p`-linear part of `E(y0 + p*y1)`.
pub fn y1_rule(inst: &ReductionInstance, y0: &DensePoly) -> Option<Y1Rule> {
    if inst.k != 4 {
        return None;
    }
    let ideal = inst.ctx.ideal();
    let m = inst.ctx.modulus();
    let p = inst.p() as u128;
    let r0 = r0_ring(inst);
    let y0 = r0.reduce(y0).lift_modulus(m);
    let div3 = |g: &DensePoly| -> Option<DensePoly> {
        let mut cur = g.clone();
        let mut id = ideal.clone();
        for _ in 0..3 {
            cur = exact_div_p(&cur, &id).ok()?;
            id = id.with(id.l() - 1, id.m());
        }
        Some(cur)
    };
    let c = div3(&eval_e(inst, &y0))?;
    let coeffs = build_e(inst);
    let deriv: Vec<DensePoly> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(i as u128))
        .collect();
    let dval = deriv
        .iter()
        .rev()
        .fold(DensePoly::zero(m), |acc, c| inst.ctx.reduce(&inst.ctx.mul(&acc, &y0).add(c)));
    let l = div3(&inst.ctx.reduce(&dval.scale(p)))?;
    let top = inst.ell();
    let phi = inst.ctx.phi();
    let r = val_phi(&l, phi, top);
    if val_phi(&c, phi, top) < r {
        return None;
    }
    if r == top {
        return Some(Y1Rule { r, s0: DensePoly::zero(p) });
    }
    let rest = top - r;
    let modp = phi.pow(rest as u64);
    let phi_r = phi.pow(r as u64);
    let cq = c.div_rem(&phi_r).ok()?.0;
    let lq = l.div_rem(&phi_r).ok()?.0;
    let inv = fp_inverse_mod(&lq, &modp)?;
    let s0 = cq.mul(&inv).neg().rem(&modp);
    Some(Y1Rule { r, s0 })
}

impl RootDescription {
    /// Candidate `y0` classes (shifted into `R0`) and excluded classes.
    pub fn z_sets(&self, inst: &ReductionInstance) -> (RepRootSet<DensePoly>, RepRootSet<DensePoly>) {
        let r0 = r0_ring(inst);
        match &self.shape {
            RootShape::All | RootShape::Solvable(true) => (vec![RepRoot { v: r0.zero(), j: 0 }], Vec::new()),
            RootShape::Solvable(false) => (Vec::new(), Vec::new()),
            RootShape::Quotient { roots, .. } => (roots.clone(), Vec::new()),
            RootShape::Strata(branches) => {
                let mut z = Vec::new();
                let mut bad = Vec::new();
                for b in branches {
                    let shift = r0.mul_pi_pow(&r0.one(), b.root.j);
                    for s in &b.strata {
                        z.extend(rep_scale_shift(&r0, &b.root.v, &shift, std::slice::from_ref(&s.z)));
                        if let Some(x) = &s.bad {
                            bad.extend(rep_scale_shift(&r0, &b.root.v, &shift, std::slice::from_ref(x)));
                        }
                    }
                }
                (z, bad)
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        match &self.shape {
            RootShape::All => false,
            RootShape::Solvable(ok) => !ok,
            RootShape::Quotient { roots, .. } => roots.is_empty(),
            RootShape::Strata(b) => b.iter().all(|b| b.strata.is_empty()),
        }
    }

    /// Total number of representatives across `Z` and `Z'`.
    pub fn representative_count(&self) -> usize {
        match &self.shape {
            RootShape::Strata(b) => b
                .iter()
                .flat_map(|b| &b.strata)
                .map(|s| 1 + s.bad.is_some() as usize)
                .sum(),
            RootShape::Quotient { roots, .. } => roots.len(),
            _ => 1,
        }
    }
}

impl fmt::Display for RootDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.shape {
            RootShape::All => write!(f, "every y is a root"),
            RootShape::Solvable(true) => write!(f, "every y is a root"),
            RootShape::Solvable(false) => write!(f, "no roots"),
            RootShape::Quotient { roots, .. } => {
                if roots.is_empty() {
                    return write!(f, "no roots");
                }
                write!(f, "y0 in")?;
                for r in roots {
                    write!(f, " {r}")?;
                }
                write!(f, "; y1, y2 free")
            }
            RootShape::Strata(branches) => {
                if self.is_empty() {
                    return write!(f, "no roots");
                }
                for (i, b) in branches.iter().enumerate() {
                    if i > 0 {
                        writeln!(f)?;
                    }
                    write!(f, "y0 = {} + phi^{} * t:", b.root.v, b.root.j)?;
                    for s in &b.strata {
                        write!(f, "\n  r={}: t in {}", s.r, s.z)?;
                        if let Some(bad) = &s.bad {
                            write!(f, " minus {bad}")?;
                        }
                    }
                }
                write!(f, "\ny2, y3 free")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hensel::PowerForm;
    use crate::reduction::divides_iff_root;
    use crate::ring::PrimePower;
    use crate::rng::seeded_rng;

    fn poly(c: &[i128], m: u128) -> DensePoly {
        DensePoly::from_i128(c, m)
    }

    fn inst(f: &[i128], p: u64, k: u32, phi: &[i128], e: usize, a: usize) -> ReductionInstance {
        let pp = PrimePower::new(p, k).unwrap();
        let form = PowerForm::from_part(&poly(f, pp.modulus()), &poly(phi, p as u128), e, pp).unwrap();
        ReductionInstance::new(&form, a, k).unwrap()
    }

    fn brute_count(i: &ReductionInstance) -> u128 {
        let n = i.ctx.cardinality().unwrap();
        (0..n).filter(|&t| divides_iff_root(i, &i.ctx.element_from_index(t))).count() as u128
    }

    #[test]
    fn x2_plus_3_has_no_char_p_branch() {
        let i = inst(&[3, 0, 1], 3, 4, &[0, 1], 2, 1);
        let red = reduce_to_char_p(&i, &mut seeded_rng(0)).unwrap();
        assert!(!red.necessary);
        assert!(red.s0.is_empty());
        let d = roots_k(&i, &mut seeded_rng(0)).unwrap();
        assert_eq!(count_roots(&d, &i).unwrap(), BigUint::zero());
    }

    #[test]
    fn pure_power_quadratic_is_monomial() {
        let i = inst(&[0, 0, 0, 1], 2, 4, &[0, 1], 3, 1);
        let red = reduce_to_char_p(&i, &mut seeded_rng(0)).unwrap();
        assert!(red.necessary);
        // phi^(e-2a) y^2 = x y^2 = 0 mod x: every y0 qualifies
        assert_eq!(red.s0, vec![RepRoot { v: DensePoly::zero(2), j: 0 }]);
        for b in &red.branches {
            assert!(b.e1.len() <= 4 && b.e2.len() <= 2);
        }
    }

    #[test]
    fn k2_examples() {
        let i = inst(&[0, 3, 1], 3, 2, &[0, 1], 2, 1);
        let d = roots_k(&i, &mut seeded_rng(0)).unwrap();
        assert_eq!(d.shape, RootShape::Solvable(true));
        assert_eq!(count_roots(&d, &i).unwrap(), BigUint::from(81u32));
        let i = inst(&[3, 0, 1], 3, 2, &[0, 1], 2, 1);
        let d = roots_k(&i, &mut seeded_rng(0)).unwrap();
        assert_eq!(d.shape, RootShape::Solvable(false));
        assert!(d.is_empty());
    }

    #[test]
    fn k3_mod27_roots() {
        let i = inst(&[36, 3, 12, 1], 3, 3, &[0, 1], 3, 1);
        let d = roots_k(&i, &mut seeded_rng(0)).unwrap();
        // y0 = -1 mod x is forced: lifts x+3, x+12, x+21
        let RootShape::Quotient { roots, .. } = &d.shape else { panic!() };
        assert_eq!(roots, &vec![RepRoot { v: poly(&[2], 3), j: 1 }]);
        assert_eq!(count_roots(&d, &i).unwrap(), BigUint::from(brute_count(&i)));
    }

    #[test]
    fn k4_counts_match_scan() {
        // |R| = 81^4 is too big here; use p = 2: |R| = 16^4 = 65536
        for f in [&[0, 2, 1][..], &[0, 0, 1], &[2, 0, 1], &[4, 2, 1], &[6, 4, 1], &[0, 0, 0, 0, 1]] {
            let e = f.len() - 1;
            let i = inst(f, 2, 4, &[0, 1], e, 1);
            let d = roots_k(&i, &mut seeded_rng(1)).unwrap();
            let n = count_roots(&d, &i).unwrap();
            assert_eq!(n, BigUint::from(brute_count(&i)), "f = {f:?}");
        }
    }

    #[test]
    fn k4_membership_matches_scan() {
        let i = inst(&[0, 2, 1], 2, 4, &[0, 1], 2, 1);
        let d = roots_k(&i, &mut seeded_rng(2)).unwrap();
        for t in 0..i.ctx.cardinality().unwrap() {
            let y = i.ctx.element_from_index(t);
            assert_eq!(contains(&d, &i, &y), divides_iff_root(&i, &y));
        }
    }

    #[test]
    fn y1_rule_agrees_with_membership() {
        let i = inst(&[0, 2, 1], 2, 4, &[0, 1], 2, 1);
        let d = roots_k(&i, &mut seeded_rng(2)).unwrap();
        let r0 = i.ctx.residue_ring();
        for t in 0..r0.cardinality().unwrap() {
            let y0 = r0.element_from_index(t);
            assert_eq!(y1_rule(&i, &y0).is_some(), y0_admissible(&d, &i, &y0));
        }
    }

    #[test]
    fn rejects_large_a() {
        let i = inst(&[0, 0, 0, 1], 3, 2, &[0, 1], 3, 2);
        assert!(matches!(roots_k(&i, &mut seeded_rng(0)), Err(Error::Precondition(_))));
    }
}
