//! The residue field `F_q = F_p[x]/(phi)` and polynomials over it.
//!
//! Field elements are `DensePoly`s over `F_p` of degree `< deg phi`; the
//! [`Fq`] context carries the modulus and performs all arithmetic.
//! Polynomials over `F_q` are `Vec<FieldElem>` in ascending order with no
//! trailing zeros.

use num_bigint::BigUint;
use rand::Rng;

use crate::arith::{inv_mod, is_prime};
use crate::error::{Error, Result};
use crate::poly::DensePoly;

pub type FieldElem = DensePoly;
pub type FqPoly = Vec<FieldElem>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fq {
    p: u64,
    phi: DensePoly,
    degree: usize,
}

impl Fq {
    /// The prime field `F_p` (presented with `phi = x`).
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Fq { p, phi: DensePoly::x(p as u128), degree: 1 })
    }

    /// `F_p[x]/(phi)`; fails unless `phi` is monic and irreducible mod p.
    pub fn new(p: u64, phi: &DensePoly) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let phi = phi.reduce_modulus(p as u128);
        if !phi.is_monic() || phi.degree().unwrap_or(0) == 0 || !is_irreducible_fp(&phi) {
            return Err(Error::BadPhi);
        }
        let degree = phi.degree().unwrap();
        Ok(Fq { p, phi, degree })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn phi(&self) -> &DensePoly {
        &self.phi
    }

    /// Extension degree over `F_p`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.degree as u32)
    }

    /// `q` as a machine word when it fits.
    pub fn order_u128(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.degree as u32)
    }

    fn m(&self) -> u128 {
        self.p as u128
    }

    pub fn zero(&self) -> FieldElem {
        DensePoly::zero(self.m())
    }

    pub fn one(&self) -> FieldElem {
        DensePoly::one(self.m())
    }

    pub fn from_int(&self, c: u128) -> FieldElem {
        DensePoly::constant(c, self.m())
    }

    pub fn reduce(&self, a: &DensePoly) -> FieldElem {
        a.reduce_modulus(self.m()).rem(&self.phi)
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        a.add(b)
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        a.sub(b)
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        a.neg()
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        if self.degree == 1 {
            return DensePoly::constant(
                crate::arith::mul_mod(a.coeff(0), b.coeff(0), self.m()),
                self.m(),
            );
        }
        a.mul(b).rem(&self.phi)
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        if self.degree == 1 {
            let i = inv_mod(a.coeff(0), self.m()).ok_or(Error::ZeroInverse)?;
            return Ok(self.from_int(i));
        }
        fp_inverse_mod(a, &self.phi).ok_or(Error::ZeroInverse)
    }

    pub fn pow(&self, a: &FieldElem, e: &BigUint) -> FieldElem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// The unique `p`-th root (inverse Frobenius).
    pub fn pth_root(&self, a: &FieldElem) -> FieldElem {
        // a^(q/p)
        let e = BigUint::from(self.p).pow(self.degree as u32 - 1);
        self.pow(a, &e)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        let c = (0..self.degree).map(|_| rng.gen_range(0..self.p) as u128).collect();
        DensePoly::new(c, self.m())
    }

    /// All field elements, in increasing base-p index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        let q = self.order_u128().expect("field too large to enumerate");
        (0..q).map(move |i| self.element_from_index(i))
    }

    pub fn element_from_index(&self, mut i: u128) -> FieldElem {
        let mut c = Vec::with_capacity(self.degree);
        for _ in 0..self.degree {
            c.push(i % self.m());
            i /= self.m();
        }
        DensePoly::new(c, self.m())
    }

    // ---- polynomials over F_q ----

    pub fn ptrim(&self, mut a: FqPoly) -> FqPoly {
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        a
    }

    pub fn padd(&self, a: &[FieldElem], b: &[FieldElem]) -> FqPoly {
        let n = a.len().max(b.len());
        let z = self.zero();
        let out = (0..n)
            .map(|i| self.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        self.ptrim(out)
    }

    pub fn psub(&self, a: &[FieldElem], b: &[FieldElem]) -> FqPoly {
        let n = a.len().max(b.len());
        let z = self.zero();
        let out = (0..n)
            .map(|i| self.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        self.ptrim(out)
    }

    pub fn pmul(&self, a: &[FieldElem], b: &[FieldElem]) -> FqPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = self.add(&out[i + j], &self.mul(x, y));
            }
        }
        self.ptrim(out)
    }

    pub fn pscale(&self, a: &[FieldElem], c: &FieldElem) -> FqPoly {
        self.ptrim(a.iter().map(|x| self.mul(x, c)).collect())
    }

    pub fn pdivrem(&self, a: &[FieldElem], d: &[FieldElem]) -> (FqPoly, FqPoly) {
        let dd = d.len().checked_sub(1).expect("division by zero polynomial");
        let inv = self.inv(&d[dd]).expect("nonzero leading coefficient");
        if a.len() <= dd {
            return (Vec::new(), a.to_vec());
        }
        let mut rem = a.to_vec();
        let mut quot = vec![self.zero(); a.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = self.mul(&rem[i + dd], &inv);
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.iter().enumerate() {
                rem[i + j] = self.sub(&rem[i + j], &self.mul(&c, b));
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (self.ptrim(quot), self.ptrim(rem))
    }

    pub fn prem(&self, a: &[FieldElem], d: &[FieldElem]) -> FqPoly {
        self.pdivrem(a, d).1
    }

    pub fn pmonic(&self, a: &[FieldElem]) -> FqPoly {
        match a.last() {
            None => Vec::new(),
            Some(lc) => self.pscale(a, &self.inv(lc).expect("nonzero")),
        }
    }

    /// Monic gcd.
    pub fn pgcd(&self, a: &[FieldElem], b: &[FieldElem]) -> FqPoly {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = self.prem(&a, &b);
            a = b;
            b = r;
        }
        self.pmonic(&a)
    }

    pub fn pderivative(&self, a: &[FieldElem]) -> FqPoly {
        let out = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.mul(c, &self.from_int(i as u128)))
            .collect();
        self.ptrim(out)
    }

    pub fn peval(&self, a: &[FieldElem], x: &FieldElem) -> FieldElem {
        a.iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }

    /// `base^e mod modulus`.
    pub fn ppowmod(&self, base: &[FieldElem], e: &BigUint, modulus: &[FieldElem]) -> FqPoly {
        let mut acc = vec![self.one()];
        let base = self.prem(base, modulus);
        for i in (0..e.bits()).rev() {
            acc = self.prem(&self.pmul(&acc, &acc), modulus);
            if e.bit(i) {
                acc = self.prem(&self.pmul(&acc, &base), modulus);
            }
        }
        self.prem(&acc, modulus)
    }

    pub fn prandom<R: Rng + ?Sized>(&self, deg_bound: usize, rng: &mut R) -> FqPoly {
        self.ptrim((0..deg_bound).map(|_| self.random(rng)).collect())
    }

    pub fn from_fp_poly(&self, f: &DensePoly) -> FqPoly {
        self.ptrim(f.coeffs().iter().map(|&c| self.from_int(c)).collect())
    }

    /// Inverse of [`Fq::from_fp_poly`]; panics if some coefficient lies
    /// outside `F_p`.
    pub fn to_fp_poly(&self, f: &[FieldElem]) -> DensePoly {
        let c = f
            .iter()
            .map(|e| {
                assert!(e.degree().unwrap_or(0) == 0, "coefficient not in F_p");
                e.coeff(0)
            })
            .collect();
        DensePoly::new(c, self.m())
    }
}

/// Extended Euclid over `F_p[x]`: returns `(g, s, t)` with `s*a + t*b = g`,
/// `g` monic (or zero when both inputs are zero).
pub fn fp_xgcd(a: &DensePoly, b: &DensePoly) -> (DensePoly, DensePoly, DensePoly) {
    let m = a.modulus();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (DensePoly::one(m), DensePoly::zero(m));
    let (mut t0, mut t1) = (DensePoly::zero(m), DensePoly::one(m));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1).expect("field coefficients");
        (r0, r1) = (r1, r);
        let s2 = s0.sub(&q.mul(&s1));
        (s0, s1) = (s1, s2);
        let t2 = t0.sub(&q.mul(&t1));
        (t0, t1) = (t1, t2);
    }
    if r0.is_zero() {
        return (r0, s0, t0);
    }
    let inv = inv_mod(r0.lc(), m).expect("field coefficients");
    (r0.scale(inv), s0.scale(inv), t0.scale(inv))
}

pub fn fp_gcd(a: &DensePoly, b: &DensePoly) -> DensePoly {
    fp_xgcd(a, b).0
}

/// Inverse of `a` modulo `m` in `F_p[x]`, when `gcd(a, m) = 1`.
pub fn fp_inverse_mod(a: &DensePoly, m: &DensePoly) -> Option<DensePoly> {
    let (g, s, _) = fp_xgcd(&a.rem(m), m);
    if g.is_one() {
        Some(s.rem(m))
    } else {
        None
    }
}

fn fp_powmod(base: &DensePoly, e: &BigUint, m: &DensePoly) -> DensePoly {
    let mut acc = DensePoly::one(base.modulus()).rem(m);
    let base = base.rem(m);
    for i in (0..e.bits()).rev() {
        acc = acc.mul(&acc).rem(m);
        if e.bit(i) {
            acc = acc.mul(&base).rem(m);
        }
    }
    acc
}

/// Rabin's irreducibility test over `F_p`.
pub fn is_irreducible_fp(f: &DensePoly) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    let f = f.make_monic().expect("prime modulus");
    let p = BigUint::from(f.modulus());
    let x = DensePoly::x(f.modulus());
    // x^(p^n) == x mod f
    let xq = fp_powmod(&x, &p.pow(n as u32), &f);
    if xq != x.rem(&f) {
        return false;
    }
    let mut n_rest = n;
    let mut prime_divisors = Vec::new();
    let mut d = 2;
    while d * d <= n_rest {
        if n_rest % d == 0 {
            prime_divisors.push(d);
            while n_rest % d == 0 {
                n_rest /= d;
            }
        }
        d += 1;
    }
    if n_rest > 1 {
        prime_divisors.push(n_rest);
    }
    prime_divisors.into_iter().all(|r| {
        let h = fp_powmod(&x, &p.pow((n / r) as u32), &f).sub(&x);
        fp_gcd(&h, &f).is_one()
    })
}
