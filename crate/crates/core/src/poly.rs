use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::arith::{add_mod, inv_mod, mul_mod, neg_mod, sub_mod};
use crate::error::{Error, Result};

/// Dense univariate polynomial over `Z/mZ`, coefficients ascending.
///
/// Coefficients are always reduced into `[0, m)` and the highest stored
/// coefficient is nonzero, so structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct DensePoly {
    coeffs: Vec<u128>,
    modulus: u128,
}

impl DensePoly {
    pub fn new(mut coeffs: Vec<u128>, modulus: u128) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        for c in coeffs.iter_mut() {
            *c %= modulus;
        }
        let mut p = DensePoly { coeffs, modulus };
        p.trim();
        p
    }

    /// Builds from signed integers, reducing each coefficient into `[0, m)`.
    pub fn from_i128(coeffs: &[i128], modulus: u128) -> Self {
        let m = modulus as i128;
        DensePoly::new(
            coeffs.iter().map(|&c| c.rem_euclid(m) as u128).collect(),
            modulus,
        )
    }

    pub fn zero(modulus: u128) -> Self {
        DensePoly { coeffs: Vec::new(), modulus }
    }

    pub fn one(modulus: u128) -> Self {
        DensePoly::constant(1, modulus)
    }

    pub fn constant(c: u128, modulus: u128) -> Self {
        DensePoly::new(vec![c], modulus)
    }

    pub fn x(modulus: u128) -> Self {
        DensePoly::monomial(1, 1, modulus)
    }

    pub fn monomial(c: u128, deg: usize, modulus: u128) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        DensePoly::new(coeffs, modulus)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u128] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u128> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u128 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1] || (self.modulus == 1 && self.is_zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of stored coefficients (`degree + 1`, or 0).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lc(&self) -> u128 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        let m = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| add_mod(self.coeff(i), other.coeff(i), m))
            .collect();
        DensePoly::new(coeffs, m)
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        let m = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| sub_mod(self.coeff(i), other.coeff(i), m))
            .collect();
        DensePoly::new(coeffs, m)
    }

    pub fn neg(&self) -> Self {
        let m = self.modulus;
        DensePoly {
            coeffs: self.coeffs.iter().map(|&c| neg_mod(c, m)).collect(),
            modulus: m,
        }
    }

    /// Schoolbook product over `Z/mZ` with no further reduction.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        if self.is_zero() || other.is_zero() {
            return DensePoly::zero(self.modulus);
        }
        let m = self.modulus;
        let mut out = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(a, b, m), m);
            }
        }
        DensePoly::new(out, m)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.mul(other))
    }

    pub fn scale(&self, c: u128) -> Self {
        let m = self.modulus;
        let c = c % m;
        DensePoly::new(self.coeffs.iter().map(|&a| mul_mod(a, c, m)).collect(), m)
    }

    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; n];
        coeffs.extend_from_slice(&self.coeffs);
        DensePoly { coeffs, modulus: self.modulus }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = DensePoly::one(self.modulus);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Quotient and remainder on division by a polynomial whose leading
    /// coefficient is a unit mod m. Panics if `d` is zero.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        self.check_same(d)?;
        let m = self.modulus;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = inv_mod(d.lc(), m).ok_or(Error::NotMonic)?;
        if self.coeffs.len() <= dd {
            return Ok((DensePoly::zero(m), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u128; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = mul_mod(rem[i + dd], inv, m);
            quot[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in d.coeffs.iter().enumerate() {
                rem[i + j] = sub_mod(rem[i + j], mul_mod(c, b, m), m);
            }
        }
        rem.truncate(dd);
        Ok((DensePoly::new(quot, m), DensePoly::new(rem, m)))
    }

    /// Remainder modulo a monic (or unit-led) divisor.
    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).expect("divisor must have unit leading coefficient").1
    }

    pub fn eval(&self, x: u128) -> u128 {
        let m = self.modulus;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, m), c, m))
    }

    pub fn derivative(&self) -> Self {
        let m = self.modulus;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, (i as u128) % m, m))
            .collect();
        DensePoly::new(coeffs, m)
    }

    /// Reinterprets the coefficients modulo a divisor of the current modulus.
    pub fn reduce_modulus(&self, m: u128) -> Self {
        debug_assert_eq!(self.modulus % m, 0);
        DensePoly::new(self.coeffs.clone(), m)
    }

    /// Same residues in `[0, m_old)`, viewed modulo a larger modulus.
    pub fn lift_modulus(&self, m: u128) -> Self {
        DensePoly::new(self.coeffs.clone(), m)
    }

    /// Divides every coefficient by `d` exactly; errors on the first
    /// coefficient that is not a multiple. The result keeps modulus `m / d`.
    pub fn div_exact_scalar(&self, d: u128, p: u64) -> Result<Self> {
        for (index, &value) in self.coeffs.iter().enumerate() {
            if value % d != 0 {
                return Err(Error::NotDivisibleByP { index, value, p });
            }
        }
        let m = self.modulus / d;
        Ok(DensePoly::new(self.coeffs.iter().map(|&c| c / d).collect(), m))
    }

    /// Scales by the inverse of the leading coefficient; `None` if that
    /// coefficient is not a unit (or the polynomial is zero).
    pub fn make_monic(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        inv_mod(self.lc(), self.modulus).map(|inv| self.scale(inv))
    }
}

impl PartialOrd for DensePoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree, then by coefficient tuple from the constant term up.
impl Ord for DensePoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
            .then_with(|| self.modulus.cmp(&other.modulus))
    }
}

pub(crate) fn fmt_poly(coeffs: &[u128], var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        match (i, c) {
            (0, _) => write!(f, "{c}")?,
            (1, 1) => write!(f, "{var}")?,
            (1, _) => write!(f, "{c}*{var}")?,
            (_, 1) => write!(f, "{var}^{i}")?,
            _ => write!(f, "{c}*{var}^{i}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(&self.coeffs, "x", f)
    }
}
