//! Arithmetic modulo the ideals `<p^l, phi^m>` of `Z[x]`, and the chain
//! rings `F_p[x]/(phi^n)` and `Z/p^n` used by root finding.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, mul_mod, val_p, MAX_MODULUS_BITS};
use crate::error::{Error, Result};
use crate::field::{FieldElem, Fq};
use crate::poly::DensePoly;

/// A prime `p` together with an exponent `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    p: u64,
    k: u32,
}

impl PrimePower {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::PrimeOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::ZeroExponent);
        }
        match (p as u128).checked_pow(k) {
            Some(m) if m < 1 << MAX_MODULUS_BITS => Ok(PrimePower { p, k }),
            _ => Err(Error::PowerTooLarge { p, k }),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `p^k`.
    pub fn modulus(&self) -> u128 {
        self.pow(self.k)
    }

    pub fn pow(&self, i: u32) -> u128 {
        (self.p as u128).pow(i)
    }
}

/// True iff every coefficient of `f` is divisible by `p`, i.e. `f` is a
/// zero divisor in `(Z/p^k)[x]`.
pub fn is_zero_divisor(f: &DensePoly, pp: &PrimePower) -> bool {
    let p = pp.p() as u128;
    f.coeffs().iter().all(|&c| c % p == 0)
}

/// The ideal `<p^l, phi^m>` with `phi` monic over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    p: u64,
    l: u32,
    phi: DensePoly,
    m: usize,
    phi_m: DensePoly,
}

impl Ideal {
    /// `phi` is given over `F_p`; its coefficients in `[0, p)` are lifted.
    pub fn new(p: u64, l: u32, phi: &DensePoly, m: usize) -> Self {
        let phi = phi.reduce_modulus(p as u128);
        assert!(phi.is_monic(), "phi must be monic");
        let pl = (p as u128).pow(l);
        let phi_m = phi.lift_modulus(pl).pow(m as u64);
        Ideal { p, l, phi, m, phi_m }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn phi(&self) -> &DensePoly {
        &self.phi
    }

    pub fn p_power(&self) -> u128 {
        (self.p as u128).pow(self.l)
    }

    /// The monic lift of `phi^m` modulo `p^l`.
    pub fn phi_power(&self) -> &DensePoly {
        &self.phi_m
    }

    pub fn with(&self, l: u32, m: usize) -> Ideal {
        Ideal::new(self.p, l, &self.phi, m)
    }

    /// Coefficients mod `p^l`, then remainder by the lift of `phi^m`.
    pub fn reduce(&self, g: &DensePoly) -> Result<DensePoly> {
        let pl = self.p_power();
        if g.modulus() % pl != 0 {
            return Err(Error::ModulusMismatch(g.modulus(), pl));
        }
        if pl == 1 {
            return Ok(DensePoly::zero(1));
        }
        Ok(g.reduce_modulus(pl).rem(&self.phi_m))
    }

    pub fn contains(&self, g: &DensePoly) -> Result<bool> {
        Ok(self.reduce(g)?.is_zero())
    }

    pub fn mul(&self, a: &DensePoly, b: &DensePoly) -> Result<DensePoly> {
        let a = self.reduce(a)?;
        let b = self.reduce(b)?;
        Ok(a.mul(&b).rem(&self.phi_m))
    }
}

/// The ring `Z[x]/<p^k, phi^ell>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalRingCtx {
    pp: PrimePower,
    fq: Fq,
    ell: usize,
    ideal: Ideal,
}

impl LocalRingCtx {
    pub fn new(pp: PrimePower, phi: &DensePoly, ell: usize) -> Result<Self> {
        if ell == 0 {
            return Err(Error::ZeroPrecision);
        }
        let fq = Fq::new(pp.p(), phi)?;
        let ideal = Ideal::new(pp.p(), pp.k(), fq.phi(), ell);
        Ok(LocalRingCtx { pp, fq, ell, ideal })
    }

    pub fn prime_power(&self) -> &PrimePower {
        &self.pp
    }

    pub fn phi(&self) -> &DensePoly {
        self.fq.phi()
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn field(&self) -> &Fq {
        &self.fq
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn modulus(&self) -> u128 {
        self.pp.modulus()
    }

    pub fn reduce(&self, a: &DensePoly) -> DensePoly {
        self.ideal.reduce(a).expect("coefficient modulus must be a multiple of p^k")
    }

    pub fn mul(&self, a: &DensePoly, b: &DensePoly) -> DensePoly {
        a.mul(b).rem(self.ideal.phi_power())
    }

    /// The residue ring `F_p[x]/(phi^ell)`.
    pub fn residue_ring(&self) -> PhiAdicRing {
        PhiAdicRing::new(self.fq.clone(), self.ell)
    }

    /// `|R| = q^(k * ell)`, when it fits.
    pub fn cardinality(&self) -> Option<u128> {
        let q = self.fq.order_u128()?;
        q.checked_pow(self.pp.k() * self.ell as u32)
    }

    /// The element with the given index in a fixed enumeration of `R`:
    /// coefficients of the canonical representative in base `p^k`.
    pub fn element_from_index(&self, mut i: u128) -> DensePoly {
        let m = self.modulus();
        let n = self.ell * self.fq.degree();
        let mut c = Vec::with_capacity(n);
        for _ in 0..n {
            c.push(i % m);
            i /= m;
        }
        DensePoly::new(c, m)
    }
}

/// Product reduced modulo `<p^k, phi^ell>`.
pub fn poly_mul(a: &DensePoly, b: &DensePoly, ctx: &LocalRingCtx) -> Result<DensePoly> {
    let m = ctx.modulus();
    if a.modulus() != m {
        return Err(Error::ModulusMismatch(a.modulus(), m));
    }
    if b.modulus() != m {
        return Err(Error::ModulusMismatch(b.modulus(), m));
    }
    Ok(ctx.mul(&ctx.reduce(a), &ctx.reduce(b)))
}

/// `g / p` reduced modulo `I : <p> = <p^(l-1), phi^m>`.
pub fn exact_div_p(g: &DensePoly, ideal: &Ideal) -> Result<DensePoly> {
    if ideal.l() == 0 {
        return Err(Error::Precondition("cannot divide by p modulo <1>".into()));
    }
    let r = ideal.reduce(g)?;
    let q = r.div_exact_scalar(ideal.p() as u128, ideal.p())?;
    ideal.with(ideal.l() - 1, ideal.m()).reduce(&q)
}

/// Result of dividing by `phi^r`: the quotient lives modulo
/// `<p^l, phi^(m-r)>`; `full` marks the case `r = m`, where that ring is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiQuotient {
    pub poly: DensePoly,
    pub precision: usize,
    pub full: bool,
}

/// `g / phi^r` reduced modulo `I : <phi^r> = <p^l, phi^(m-r)>`.
pub fn exact_div_phi(g: &DensePoly, r: usize, ideal: &Ideal) -> Result<PhiQuotient> {
    if r > ideal.m() {
        return Err(Error::NotDivisibleByPhi { r });
    }
    let g = ideal.reduce(g)?;
    let pl = ideal.p_power();
    let phi_r = ideal.phi().lift_modulus(pl).pow(r as u64);
    let (q, rem) = g.div_rem(&phi_r)?;
    if !rem.is_zero() {
        return Err(Error::NotDivisibleByPhi { r });
    }
    let precision = ideal.m() - r;
    let q = q.rem(ideal.with(ideal.l(), precision).phi_power());
    Ok(PhiQuotient { poly: q, precision, full: precision == 0 })
}

/// Largest `r <= ell` with `phi^r | u` in `F_p[x]/(phi^ell)`; `ell` for zero.
pub fn val_phi(u: &DensePoly, phi: &DensePoly, ell: usize) -> usize {
    let p = phi.modulus();
    let phi_ell = phi.pow(ell as u64);
    let mut u = u.reduce_modulus(p).rem(&phi_ell);
    if u.is_zero() {
        return ell;
    }
    let mut r = 0;
    loop {
        let (q, rem) = u.div_rem(phi).expect("phi monic");
        if !rem.is_zero() {
            return r;
        }
        u = q;
        r += 1;
    }
}

/// Polynomial in two variables `(y0, y1)` with coefficients in `Z/p^l[x]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BivarPoly {
    terms: BTreeMap<(usize, usize), DensePoly>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((usize, usize), DensePoly)>) -> Self {
        let mut out = BivarPoly::zero();
        for (k, v) in terms {
            out.add_term(k, v);
        }
        out
    }

    pub fn coeff(&self, i: usize, j: usize) -> Option<&DensePoly> {
        self.terms.get(&(i, j))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &DensePoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: (usize, usize), c: DensePoly) {
        let sum = match self.terms.remove(&key) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn degree_y0(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn degree_y1(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn reduce(&self, ideal: &Ideal) -> Result<Self> {
        let mut out = BivarPoly::zero();
        for (&k, c) in &self.terms {
            out.add_term(k, ideal.reduce(c)?);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self, ideal: &Ideal) -> Result<Self> {
        let mut out = BivarPoly::zero();
        for (&(a0, a1), x) in &self.terms {
            for (&(b0, b1), y) in &other.terms {
                out.add_term((a0 + b0, a1 + b1), ideal.mul(x, y)?);
            }
        }
        Ok(out)
    }

    /// Coefficientwise [`exact_div_p`].
    pub fn exact_div_p(&self, ideal: &Ideal) -> Result<Self> {
        let mut out = BivarPoly::zero();
        for (&k, c) in &self.terms {
            out.add_term(k, exact_div_p(c, ideal)?);
        }
        Ok(out)
    }

    /// Collects the coefficients of `y1^j` as a polynomial in `y0`.
    pub fn slice_y1(&self, j: usize) -> Vec<DensePoly> {
        let n = self.terms.keys().filter(|k| k.1 == j).map(|k| k.0 + 1).max().unwrap_or(0);
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.terms.get(&(i, j)).cloned());
        }
        let m = self.terms.values().next().map(|c| c.modulus()).unwrap_or(1);
        out.into_iter().map(|c| c.unwrap_or_else(|| DensePoly::zero(m))).collect()
    }
}

/// A finite chain ring: every ideal is a power of the maximal ideal `(pi)`
/// and the quotient by `pi` is the field returned by `residue_field`.
pub trait ChainRing: Clone + Debug {
    type Elem: Clone + Debug + PartialEq + Eq + Ord;

    /// `n` with `pi^n = 0`.
    fn precision(&self) -> usize;
    /// The same ring with precision `n`.
    fn with_precision(&self, n: usize) -> Self;
    fn residue_field(&self) -> &Fq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Canonical representative at this precision.
    fn reduce(&self, a: &Self::Elem) -> Self::Elem;

    /// `pi`-adic valuation; `precision()` for zero.
    fn valuation(&self, a: &Self::Elem) -> usize;
    /// `a / pi^r`; `a` must be divisible by `pi^r` as a representative.
    fn div_pi_pow(&self, a: &Self::Elem, r: usize) -> Self::Elem;
    fn mul_pi_pow(&self, a: &Self::Elem, r: usize) -> Self::Elem;
    fn residue(&self, a: &Self::Elem) -> FieldElem;
    /// The digit-0 representative of a residue class.
    fn lift_residue(&self, c: &FieldElem) -> Self::Elem;
    /// The `precision()` digits of `a` in base `pi`.
    fn digits(&self, a: &Self::Elem) -> Vec<FieldElem>;
    fn from_digits(&self, d: &[FieldElem]) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.reduce(a) == self.zero()
    }

    /// `q^precision`, when it fits.
    fn cardinality(&self) -> Option<u128> {
        self.residue_field()
            .order_u128()?
            .checked_pow(self.precision() as u32)
    }

    fn cardinality_big(&self) -> BigUint {
        self.residue_field().order().pow(self.precision() as u32)
    }

    fn element_from_index(&self, mut i: u128) -> Self::Elem {
        let fq = self.residue_field();
        let q = fq.order_u128().expect("field too large to enumerate");
        let d: Vec<FieldElem> = (0..self.precision())
            .map(|_| {
                let c = fq.element_from_index(i % q);
                i /= q;
                c
            })
            .collect();
        self.from_digits(&d)
    }
}

/// `F_p[x]/(phi^n)` with uniformizer `phi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiAdicRing {
    fq: Fq,
    n: usize,
    phi_n: DensePoly,
}

impl PhiAdicRing {
    pub fn new(fq: Fq, n: usize) -> Self {
        let phi_n = fq.phi().pow(n as u64);
        PhiAdicRing { fq, n, phi_n }
    }

    pub fn phi(&self) -> &DensePoly {
        self.fq.phi()
    }

    pub fn modulus_poly(&self) -> &DensePoly {
        &self.phi_n
    }
}

impl ChainRing for PhiAdicRing {
    type Elem = DensePoly;

    fn precision(&self) -> usize {
        self.n
    }

    fn with_precision(&self, n: usize) -> Self {
        PhiAdicRing::new(self.fq.clone(), n)
    }

    fn residue_field(&self) -> &Fq {
        &self.fq
    }

    fn zero(&self) -> DensePoly {
        DensePoly::zero(self.fq.p() as u128)
    }

    fn one(&self) -> DensePoly {
        DensePoly::one(self.fq.p() as u128).rem(&self.phi_n)
    }

    fn add(&self, a: &DensePoly, b: &DensePoly) -> DensePoly {
        a.add(b)
    }

    fn sub(&self, a: &DensePoly, b: &DensePoly) -> DensePoly {
        a.sub(b)
    }

    fn neg(&self, a: &DensePoly) -> DensePoly {
        a.neg()
    }

    fn mul(&self, a: &DensePoly, b: &DensePoly) -> DensePoly {
        a.mul(b).rem(&self.phi_n)
    }

    fn reduce(&self, a: &DensePoly) -> DensePoly {
        a.reduce_modulus(self.fq.p() as u128).rem(&self.phi_n)
    }

    fn valuation(&self, a: &DensePoly) -> usize {
        val_phi(a, self.fq.phi(), self.n)
    }

    fn div_pi_pow(&self, a: &DensePoly, r: usize) -> DensePoly {
        let (q, rem) = a.div_rem(&self.fq.phi().pow(r as u64)).expect("phi monic");
        assert!(rem.is_zero(), "not divisible by phi^{r}");
        q
    }

    fn mul_pi_pow(&self, a: &DensePoly, r: usize) -> DensePoly {
        self.mul(a, &self.fq.phi().pow(r as u64))
    }

    fn residue(&self, a: &DensePoly) -> FieldElem {
        a.rem(self.fq.phi())
    }

    fn lift_residue(&self, c: &FieldElem) -> DensePoly {
        self.reduce(c)
    }

    fn digits(&self, a: &DensePoly) -> Vec<FieldElem> {
        let mut a = self.reduce(a);
        let mut out = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            let (q, r) = a.div_rem(self.fq.phi()).expect("phi monic");
            out.push(r);
            a = q;
        }
        out
    }

    fn from_digits(&self, d: &[FieldElem]) -> DensePoly {
        let phi = self.fq.phi();
        let acc = d
            .iter()
            .rev()
            .fold(self.zero(), |acc, c| acc.mul(phi).add(c));
        self.reduce(&acc)
    }
}

/// `Z/p^n` with uniformizer `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicRing {
    fq: Fq,
    n: usize,
    pn: u128,
}

impl PAdicRing {
    pub fn new(p: u64, n: usize) -> Result<Self> {
        let fq = Fq::prime(p)?;
        let pn = (p as u128)
            .checked_pow(n as u32)
            .filter(|&m| m < 1 << MAX_MODULUS_BITS)
            .ok_or(Error::PowerTooLarge { p, k: n as u32 })?;
        Ok(PAdicRing { fq, n, pn })
    }

    pub fn modulus(&self) -> u128 {
        self.pn
    }

    fn p(&self) -> u128 {
        self.fq.p() as u128
    }
}

impl ChainRing for PAdicRing {
    type Elem = u128;

    fn precision(&self) -> usize {
        self.n
    }

    fn with_precision(&self, n: usize) -> Self {
        PAdicRing::new(self.fq.p(), n).expect("smaller precision fits")
    }

    fn residue_field(&self) -> &Fq {
        &self.fq
    }

    fn zero(&self) -> u128 {
        0
    }

    fn one(&self) -> u128 {
        1 % self.pn
    }

    fn add(&self, a: &u128, b: &u128) -> u128 {
        crate::arith::add_mod(a % self.pn, b % self.pn, self.pn)
    }

    fn sub(&self, a: &u128, b: &u128) -> u128 {
        crate::arith::sub_mod(a % self.pn, b % self.pn, self.pn)
    }

    fn neg(&self, a: &u128) -> u128 {
        crate::arith::neg_mod(a % self.pn, self.pn)
    }

    fn mul(&self, a: &u128, b: &u128) -> u128 {
        mul_mod(*a, *b, self.pn)
    }

    fn reduce(&self, a: &u128) -> u128 {
        a % self.pn
    }

    fn valuation(&self, a: &u128) -> usize {
        val_p(a % self.pn, self.p(), self.n as u32) as usize
    }

    fn div_pi_pow(&self, a: &u128, r: usize) -> u128 {
        let d = self.p().pow(r as u32);
        assert_eq!(a % d, 0, "not divisible by p^{r}");
        a / d
    }

    fn mul_pi_pow(&self, a: &u128, r: usize) -> u128 {
        if r >= self.n {
            return 0;
        }
        mul_mod(*a, self.p().pow(r as u32), self.pn)
    }

    fn residue(&self, a: &u128) -> FieldElem {
        self.fq.from_int(a % self.p())
    }

    fn lift_residue(&self, c: &FieldElem) -> u128 {
        c.coeff(0) % self.pn
    }

    fn digits(&self, a: &u128) -> Vec<FieldElem> {
        let mut a = a % self.pn;
        (0..self.n)
            .map(|_| {
                let d = a % self.p();
                a /= self.p();
                self.fq.from_int(d)
            })
            .collect()
    }

    fn from_digits(&self, d: &[FieldElem]) -> u128 {
        d.iter()
            .rev()
            .fold(0u128, |acc, c| (acc * self.p() + c.coeff(0)) % self.pn)
    }
}
