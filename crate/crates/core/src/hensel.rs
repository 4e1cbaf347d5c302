//! Hensel lifting of coprime factorizations and the splitting of `f` into
//! parts `phi_i^e_i + p*h_i` mod `p^k`.

use rand::Rng;
use serde::Serialize;

use crate::cz::cz_factor;
use crate::error::{Error, Result};
use crate::field::fp_xgcd;
use crate::poly::DensePoly;
use crate::ring::PrimePower;

/// `u, v` with `g*u + h*v = 1` at the current precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutPair {
    pub u: DensePoly,
    pub v: DensePoly,
}

impl BezoutPair {
    /// Bezout coefficients of coprime `g, h` over `F_p`, with
    /// `deg u < deg h` and `deg v < deg g`.
    pub fn new(g: &DensePoly, h: &DensePoly) -> Result<Self> {
        let (d, u, _) = fp_xgcd(g, h);
        if !d.is_one() {
            return Err(Error::NotCoprime);
        }
        let u = if h.degree().unwrap_or(0) == 0 {
            DensePoly::zero(g.modulus())
        } else {
            u.rem(h)
        };
        let one = DensePoly::one(g.modulus());
        let (v, r) = one.sub(&g.mul(&u)).div_rem(h)?;
        debug_assert!(r.is_zero());
        Ok(BezoutPair { u, v })
    }

    pub fn holds(&self, g: &DensePoly, h: &DensePoly) -> bool {
        g.mul(&self.u).add(&h.mul(&self.v)).is_one()
    }

    fn reduced(&self, m: u128) -> BezoutPair {
        BezoutPair { u: self.u.reduce_modulus(m), v: self.v.reduce_modulus(m) }
    }
}

/// `f = phi^e + p*h` with `phi` irreducible mod p; `h` is kept modulo
/// `p^(k-1)`, which is all that `p*h` depends on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerForm {
    pub phi: DensePoly,
    pub e: usize,
    pub h: DensePoly,
    pub pp: PrimePower,
}

impl PowerForm {
    /// Builds the form of a monic `f` with `f = phi^e mod p`.
    pub fn from_part(f: &DensePoly, phi: &DensePoly, e: usize, pp: PrimePower) -> Result<Self> {
        let m = pp.modulus();
        let p = pp.p() as u128;
        let phi = phi.reduce_modulus(p);
        let diff = f.reduce_modulus(m).sub(&phi.lift_modulus(m).pow(e as u64));
        let h = diff.div_exact_scalar(p, pp.p())?;
        Ok(PowerForm { phi, e, h, pp })
    }

    /// `phi^e + p*h` modulo `p^k`.
    pub fn to_poly(&self) -> DensePoly {
        let m = self.pp.modulus();
        let p = self.pp.p() as u128;
        let ph = DensePoly::new(self.h.coeffs().iter().map(|&c| c * p).collect(), m);
        self.phi.lift_modulus(m).pow(self.e as u64).add(&ph)
    }

    pub fn degree(&self) -> usize {
        self.e * self.phi.degree().unwrap_or(0)
    }
}

fn lift_res(a: &DensePoly, m: u128) -> DensePoly {
    a.lift_modulus(m)
}

/// Lifts `f = g*h mod p` to `f = g*·h* mod p^k` with `g*, h*` monic and
/// congruent to `g, h` mod p. `f` must be monic mod `p^k`.
pub fn hensel_lift(
    f: &DensePoly,
    g: &DensePoly,
    h: &DensePoly,
    bez: &BezoutPair,
    pp: &PrimePower,
) -> Result<(DensePoly, DensePoly, BezoutPair)> {
    let pk = pp.modulus();
    let p = pp.p() as u128;
    let f = f.reduce_modulus(pk);
    if !f.is_monic() {
        return Err(Error::LeadingCoefficientNotUnit { lc: f.lc(), p: pp.p() });
    }
    let (gr, hr) = (g.reduce_modulus(p), h.reduce_modulus(p));
    if gr.mul(&hr) != f.reduce_modulus(p) {
        return Err(Error::NotAFactorization);
    }
    if !bez.reduced(p).holds(&gr, &hr) {
        return Err(Error::NotCoprime);
    }
    let g0 = gr.make_monic().ok_or(Error::NotAFactorization)?;
    let h0 = hr.make_monic().ok_or(Error::NotAFactorization)?;
    let bez0 = BezoutPair::new(&g0, &h0)?;

    let (mut g, mut h) = (g0, h0);
    let (mut s, mut t) = (bez0.u, bez0.v);
    let mut j = 1u32;
    while j < pp.k() {
        let nj = (2 * j).min(pp.k());
        let m = pp.pow(nj);
        let (gl, hl, sl, tl) = (lift_res(&g, m), lift_res(&h, m), lift_res(&s, m), lift_res(&t, m));
        let fl = f.reduce_modulus(m);
        let e = fl.sub(&gl.mul(&hl));
        let (q, r) = sl.mul(&e).div_rem(&hl)?;
        let g2 = gl.add(&tl.mul(&e)).add(&q.mul(&gl));
        let h2 = hl.add(&r);
        let b = sl.mul(&g2).add(&tl.mul(&h2)).sub(&DensePoly::one(m));
        let (c, d) = sl.mul(&b).div_rem(&h2)?;
        s = sl.sub(&d);
        t = tl.sub(&tl.mul(&b)).sub(&c.mul(&g2));
        g = g2;
        h = h2;
        j = nj;
    }
    debug_assert_eq!(g.mul(&h), f);
    Ok((g, h, BezoutPair { u: s, v: t }))
}

/// Splits a monic `f` with `f != 0 mod p` into pairwise coprime parts
/// `phi_i^e_i + p*h_i`, ordered like the irreducible factors of `f mod p`.
pub fn decompose<R: Rng + ?Sized>(f: &DensePoly, pp: &PrimePower, rng: &mut R) -> Result<Vec<PowerForm>> {
    let pk = pp.modulus();
    let p = pp.p() as u128;
    let f = f.reduce_modulus(pk);
    if !f.is_monic() {
        return Err(Error::LeadingCoefficientNotUnit { lc: f.lc(), p: pp.p() });
    }
    let fbar = f.reduce_modulus(p);
    let parts = cz_factor(&fbar, rng)?;
    let mut out = Vec::with_capacity(parts.len());
    let mut rest = f.clone();
    for (i, (phi, e)) in parts.iter().enumerate() {
        if i + 1 == parts.len() {
            out.push(PowerForm::from_part(&rest, phi, *e, *pp)?);
            break;
        }
        let g0 = phi.pow(*e as u64);
        let h0 = parts[i + 1..]
            .iter()
            .fold(DensePoly::one(p), |acc, (q, m)| acc.mul(&q.pow(*m as u64)));
        let bez = BezoutPair::new(&g0, &h0)?;
        let (g, h, _) = hensel_lift(&rest, &g0, &h0, &bez, pp)?;
        out.push(PowerForm::from_part(&g, phi, *e, *pp)?);
        rest = h;
    }
    Ok(out)
}
