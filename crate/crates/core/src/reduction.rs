//! The auxiliary polynomial `E(y) = f * sum_i phi^(a(k-1-i)) (p*y)^i` whose
//! roots in `R = Z[x]/<p^k, phi^(ak)>` are exactly the `y` for which
//! `phi^a - p*y` divides `f` modulo `p^k`.

use crate::error::{Error, Result};
use crate::hensel::PowerForm;
use crate::poly::DensePoly;
use crate::ring::{LocalRingCtx, PrimePower};

#[derive(Clone, Debug)]
pub struct ReductionInstance {
    pub form: PowerForm,
    pub a: usize,
    pub k: u32,
    pub ctx: LocalRingCtx,
}

impl ReductionInstance {
    /// `1 <= a <= e`; the form's modulus is reduced to `p^k`.
    pub fn new(form: &PowerForm, a: usize, k: u32) -> Result<Self> {
        if a == 0 || a > form.e {
            return Err(Error::Precondition(format!("exponent a = {a} outside 1..={}", form.e)));
        }
        if k > form.pp.k() {
            return Err(Error::Precondition(format!(
                "precision {k} exceeds the form's precision {}",
                form.pp.k()
            )));
        }
        let pp = PrimePower::new(form.pp.p(), k)?;
        let pk = pp.modulus();
        let pk1 = pp.pow(k - 1);
        let form = PowerForm {
            phi: form.phi.clone(),
            e: form.e,
            h: form.h.reduce_modulus(pk1),
            pp,
        };
        let ctx = LocalRingCtx::new(pp, &form.phi, a * k as usize)?;
        debug_assert_eq!(ctx.modulus(), pk);
        Ok(ReductionInstance { form, a, k, ctx })
    }

    pub fn p(&self) -> u64 {
        self.form.pp.p()
    }

    pub fn ell(&self) -> usize {
        self.ctx.ell()
    }

    /// `f` modulo `p^k`.
    pub fn f(&self) -> DensePoly {
        self.form.to_poly()
    }

    /// `phi^a` lifted to `Z/p^k`.
    pub fn phi_a(&self) -> DensePoly {
        self.ctx.phi().lift_modulus(self.ctx.modulus()).pow(self.a as u64)
    }

    /// The factor `phi^a - p*y` attached to `y`.
    pub fn factor_for(&self, y: &DensePoly) -> DensePoly {
        let m = self.ctx.modulus();
        let p = self.p() as u128;
        let py = DensePoly::new(y.coeffs().iter().map(|&c| crate::arith::mul_mod(c, p, m)).collect(), m);
        self.phi_a().sub(&py)
    }
}

/// Coefficients of `E` in `y`, ascending, reduced in `R`.
pub fn build_e(inst: &ReductionInstance) -> Vec<DensePoly> {
    build_e_raw(inst).iter().map(|c| inst.ctx.reduce(c)).collect()
}

/// The same coefficients over `Z/p^k` without reduction by `phi`.
fn build_e_raw(inst: &ReductionInstance) -> Vec<DensePoly> {
    let m = inst.ctx.modulus();
    let p = inst.p() as u128;
    let f = inst.f();
    let phi_a = inst.phi_a();
    let k = inst.k as usize;
    (0..k)
        .map(|i| {
            let pi = DensePoly::constant(p.pow(i as u32), m);
            f.mul(&phi_a.pow((k - 1 - i) as u64)).mul(&pi)
        })
        .collect()
}

/// `E(y)` in `R`.
pub fn eval_e(inst: &ReductionInstance, y: &DensePoly) -> DensePoly {
    let ctx = &inst.ctx;
    let y = ctx.reduce(&y.lift_modulus(ctx.modulus()));
    build_e(inst)
        .iter()
        .rev()
        .fold(DensePoly::zero(ctx.modulus()), |acc, c| ctx.reduce(&ctx.mul(&acc, &y).add(c)))
}

/// Whether `E(y) = 0` in `R`, i.e. whether `phi^a - p*y` divides `f`.
pub fn divides_iff_root(inst: &ReductionInstance, y: &DensePoly) -> bool {
    eval_e(inst, y).is_zero()
}

/// The cofactor `g = E(y) / phi^(ak)`, which satisfies
/// `(phi^a - p*y) * g = f` modulo `p^k`.
pub fn cofactor_from_root(inst: &ReductionInstance, y: &DensePoly) -> Result<DensePoly> {
    let m = inst.ctx.modulus();
    let y = y.lift_modulus(m);
    let ey = build_e_raw(inst)
        .iter()
        .rev()
        .fold(DensePoly::zero(m), |acc, c| acc.mul(&y).add(c));
    let (g, r) = ey.div_rem(inst.ctx.ideal().phi_power())?;
    if !r.is_zero() {
        return Err(Error::Precondition("y is not a root of E".into()));
    }
    Ok(g)
}

/// Which `p`-adic digits of a root are irrelevant to being a root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionClasses {
    pub k: u32,
    /// Digits `y_i` with `i >= free_from` are free.
    pub free_from: u32,
}

impl PrecisionClasses {
    pub fn is_free(&self, i: u32) -> bool {
        i >= self.free_from && i < self.k
    }
}

/// For `a <= e/2`, roots of `E` are unions of cosets of `p^(k-2) R`.
pub fn precision_classes(k: u32) -> Result<PrecisionClasses> {
    if k < 2 {
        return Err(Error::Precondition("precision classes need k >= 2".into()));
    }
    Ok(PrecisionClasses { k, free_from: k - 2 })
}

/// The `i`-th base-`p` digit of every coefficient, over `F_p`.
pub fn p_digit(y: &DensePoly, p: u64, i: u32) -> DensePoly {
    let p = p as u128;
    let d = p.pow(i);
    DensePoly::new(y.coeffs().iter().map(|&c| (c / d) % p).collect(), p)
}

/// `sum_i p^i * digits[i]` over `Z/m`.
pub fn from_p_digits(digits: &[DensePoly], p: u64, m: u128) -> DensePoly {
    let p = p as u128;
    let n = digits.iter().map(|d| d.len()).max().unwrap_or(0);
    let coeffs = (0..n)
        .map(|j| {
            digits
                .iter()
                .enumerate()
                .fold(0u128, |acc, (i, d)| (acc + d.coeff(j) * p.pow(i as u32)) % m)
        })
        .collect();
    DensePoly::new(coeffs, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i128], m: u128) -> DensePoly {
        DensePoly::from_i128(c, m)
    }

    fn inst(f: &[i128], p: u64, k: u32, phi: &[i128], e: usize, a: usize) -> ReductionInstance {
        let pp = PrimePower::new(p, k).unwrap();
        let form = PowerForm::from_part(&poly(f, pp.modulus()), &poly(phi, p as u128), e, pp).unwrap();
        ReductionInstance::new(&form, a, k).unwrap()
    }

    #[test]
    fn e_shapes() {
        // k = 2: E = f*(phi^a + p*y)
        let i = inst(&[0, 3, 1], 3, 2, &[0, 1], 2, 1);
        let e = build_e(&i);
        assert_eq!(e.len(), 2);
        let f = i.f();
        assert_eq!(e[0], i.ctx.reduce(&f.mul(&poly(&[0, 1], 9))));
        assert_eq!(e[1], i.ctx.reduce(&f.scale(3)));
        // k = 4 has four terms
        let i = inst(&[0, 3, 1], 3, 4, &[0, 1], 2, 1);
        assert_eq!(build_e(&i).len(), 4);
    }

    #[test]
    fn e_at_one_direct() {
        let i = inst(&[0, 3, 1], 3, 2, &[0, 1], 2, 1);
        let direct = i.ctx.reduce(&poly(&[0, 3, 1], 9).mul(&poly(&[3, 1], 9)));
        assert_eq!(eval_e(&i, &DensePoly::one(9)), direct);
    }

    #[test]
    fn root_iff_division() {
        let i = inst(&[0, 3, 1], 3, 2, &[0, 1], 2, 1);
        // y = -1 gives x + 3, y = 1 gives x - 3
        let ym1 = poly(&[-1], 9);
        assert!(divides_iff_root(&i, &ym1));
        assert!(divides_iff_root(&i, &DensePoly::one(9)));
        assert_eq!(i.factor_for(&ym1), poly(&[3, 1], 9));
        let g = cofactor_from_root(&i, &ym1).unwrap();
        assert_eq!(g, poly(&[0, 1], 9));
        assert_eq!(i.factor_for(&ym1).mul(&g), i.f());
    }

    #[test]
    fn x_plus_one_is_not_a_factor_mod_nine() {
        // x^2+3 has no linear factor mod 9
        let i = inst(&[3, 0, 1], 3, 2, &[0, 1], 2, 1);
        for c in 0..9 {
            for d in 0..9 {
                assert!(!divides_iff_root(&i, &poly(&[c, d], 9)));
            }
        }
    }

    #[test]
    fn pure_power_cofactor() {
        let i = inst(&[0, 0, 0, 1], 5, 3, &[0, 1], 3, 1);
        let g = cofactor_from_root(&i, &DensePoly::zero(125)).unwrap();
        assert_eq!(g, poly(&[0, 0, 1], 125));
    }

    #[test]
    fn mod27_cofactor() {
        // x + 3 = x - 3*(-1) divides x^3+12x^2+3x+36 mod 27
        let i = inst(&[36, 3, 12, 1], 3, 3, &[0, 1], 3, 1);
        let y = poly(&[-1], 27);
        assert!(divides_iff_root(&i, &y));
        assert_eq!(cofactor_from_root(&i, &y).unwrap(), poly(&[3, 9, 1], 27));
        assert!(cofactor_from_root(&i, &poly(&[1], 27)).is_err());
    }

    #[test]
    fn free_digits() {
        assert_eq!(precision_classes(4).unwrap().free_from, 2);
        assert_eq!(precision_classes(3).unwrap().free_from, 1);
        assert_eq!(precision_classes(2).unwrap().free_from, 0);
        assert!(precision_classes(1).is_err());
    }

    #[test]
    fn free_digits_exhaustive_p2_k3() {
        // f = x^2 + 2x over Z/8, phi = x, a = 1: R = Z/8[x]/(x^3)
        let i = inst(&[0, 2, 1], 2, 3, &[0, 1], 2, 1);
        let n = i.ctx.cardinality().unwrap();
        let roots: Vec<DensePoly> = (0..n)
            .map(|t| i.ctx.element_from_index(t))
            .filter(|y| divides_iff_root(&i, y))
            .collect();
        assert!(!roots.is_empty());
        for y in &roots {
            for t in 0..n {
                let z = i.ctx.element_from_index(t);
                let shifted = i.ctx.reduce(&y.add(&z.scale(2)));
                assert!(divides_iff_root(&i, &shifted));
            }
        }
    }

    #[test]
    fn digits_round_trip() {
        let y = poly(&[80, 7, 33], 81);
        let d: Vec<DensePoly> = (0..4).map(|i| p_digit(&y, 3, i)).collect();
        assert_eq!(from_p_digits(&d, 3, 81), y);
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::oracle::trial_divides;
    use proptest::prelude::*;

    fn instance() -> impl Strategy<Value = (ReductionInstance, Vec<u64>)> {
        (prop_oneof![Just(2u64), Just(3)], 2u32..=4, 0u128..3, 2usize..=4)
            .prop_flat_map(|(p, k, c, e)| {
                let h = proptest::collection::vec(any::<u64>(), e);
                (Just(p), Just(k), Just(c % p as u128), Just(e), 1..=e, h, proptest::collection::vec(any::<u64>(), 64))
            })
            .prop_map(|(p, k, c, e, a, h, ys)| {
                let pp = PrimePower::new(p, k).unwrap();
                let m = pp.modulus();
                let phi = DensePoly::new(vec![c, 1], p as u128);
                let h = DensePoly::new(h.iter().map(|&x| x as u128 % m).collect(), m);
                let f = phi.lift_modulus(m).pow(e as u64).add(&h.scale(p as u128));
                let form = PowerForm::from_part(&f, &phi, e, pp).unwrap();
                (ReductionInstance::new(&form, a, k).unwrap(), ys)
            })
    }

    /// `y` with `deg y < a` and coefficients below `p^(k-1)`, from an index.
    fn lift_coordinate(inst: &ReductionInstance, mut i: u128) -> DensePoly {
        let b = (inst.p() as u128).pow(inst.k - 1);
        let c = (0..inst.a)
            .map(|_| {
                let d = i % b;
                i /= b;
                d
            })
            .collect();
        DensePoly::new(c, inst.ctx.modulus())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn root_iff_trial_division((inst, ys) in instance()) {
            let f = inst.f();
            let pp = *inst.ctx.prime_power();
            let total = ((inst.p() as u128).pow(inst.k - 1)).pow(inst.a as u32);
            let ys: Vec<u128> = if total <= 2000 {
                (0..total).collect()
            } else {
                ys.iter().map(|&x| x as u128 % total).collect()
            };
            for i in ys {
                let y = lift_coordinate(&inst, i);
                let g = inst.factor_for(&y);
                let root = divides_iff_root(&inst, &y);
                prop_assert_eq!(root, trial_divides(&f, &g, &pp), "y = {}", y);
                if root {
                    let c = cofactor_from_root(&inst, &y).unwrap();
                    prop_assert_eq!(g.mul(&c), f.clone());
                }
            }
        }

        #[test]
        fn roots_are_closed_under_top_digits((inst, ys) in instance()) {
            prop_assume!(2 * inst.a <= inst.form.e);
            let n = inst.ctx.cardinality().unwrap_or(u128::MAX);
            let m = inst.ctx.modulus();
            let shift = (inst.p() as u128).pow(inst.k - 2);
            let total = ((inst.p() as u128).pow(inst.k - 1)).pow(inst.a as u32);
            let mut hits = 0;
            for i in 0..total.min(500) {
                let y = lift_coordinate(&inst, i);
                if !divides_iff_root(&inst, &y) {
                    continue;
                }
                hits += 1;
                let z = inst.ctx.element_from_index(ys[hits % ys.len()] as u128 % n);
                let y2 = inst.ctx.reduce(&y.add(&z.scale(shift % m)));
                prop_assert!(divides_iff_root(&inst, &y2));
            }
        }
    }
}
