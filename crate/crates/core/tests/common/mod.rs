#![allow(dead_code)]

use modpk::field::Fq;
use modpk::poly::DensePoly;
use modpk::rep_roots::RingPoly;
use modpk::ring::{ChainRing, PhiAdicRing};
use modpk::verify::random_irreducible;
use rand::Rng;

/// A random monic `g` over `F_p` of degree `d`.
pub fn random_monic_fp<R: Rng>(p: u64, d: usize, rng: &mut R) -> DensePoly {
    let mut c: Vec<u128> = (0..d).map(|_| rng.gen_range(0..p as u128)).collect();
    c.push(1);
    DensePoly::new(c, p as u128)
}

/// Coprime monic `(g, h)` over `F_p` with degrees in `1..=3`.
pub fn random_coprime_pair<R: Rng>(p: u64, rng: &mut R) -> (DensePoly, DensePoly) {
    loop {
        let g = random_monic_fp(p, rng.gen_range(1..=3), rng);
        let h = random_monic_fp(p, rng.gen_range(1..=3), rng);
        if modpk::field::fp_gcd(&g, &h).degree() == Some(0) {
            return (g, h);
        }
    }
}

/// A random chain ring `F_p[x]/(phi^n)` with `q^n <= cap`.
pub fn random_phi_ring<R: Rng>(cap: u128, rng: &mut R) -> PhiAdicRing {
    let primes = [2u64, 3, 5, 7, 11, 13];
    loop {
        let p = primes[rng.gen_range(0..primes.len())];
        let d = rng.gen_range(1..=3);
        let q = (p as u128).pow(d as u32);
        if q > cap {
            continue;
        }
        let max_n = (1..).take_while(|&n| q.pow(n) <= cap).last().unwrap_or(1) as usize;
        let n = rng.gen_range(1..=max_n.min(6));
        let phi = random_irreducible(p, d, rng);
        return PhiAdicRing::new(Fq::new(p, &phi).unwrap(), n);
    }
}

pub fn random_elem<R: Rng>(ring: &PhiAdicRing, rng: &mut R) -> DensePoly {
    let n = ring.cardinality().unwrap();
    ring.element_from_index(rng.gen_range(0..n))
}

/// A random polynomial over the ring of degree `1..=4`. Some are built as
/// products of linear factors times a random unit, so that roots abound.
pub fn random_ring_poly<R: Rng>(ring: &PhiAdicRing, rng: &mut R) -> RingPoly<DensePoly> {
    let deg = rng.gen_range(1..=4);
    if rng.gen_bool(0.5) {
        let mut g = vec![ring.one()];
        for _ in 0..deg {
            let r = random_elem(ring, rng);
            // multiply by (y - r), sometimes scaled by a power of phi
            let s = ring.mul_pi_pow(&ring.one(), rng.gen_range(0..=1));
            let mut next = vec![ring.zero(); g.len() + 1];
            for (i, c) in g.iter().enumerate() {
                next[i + 1] = ring.add(&next[i + 1], &ring.mul(c, &s));
                next[i] = ring.sub(&next[i], &ring.mul(c, &r));
            }
            g = next;
        }
        let noise = ring.mul_pi_pow(&random_elem(ring, rng), ring.precision().saturating_sub(1));
        g[0] = ring.add(&g[0], &noise);
        g
    } else {
        let mut g: Vec<DensePoly> = (0..deg).map(|_| random_elem(ring, rng)).collect();
        let mut top = random_elem(ring, rng);
        if ring.is_zero(&top) {
            top = ring.one();
        }
        g.push(top);
        g
    }
}
