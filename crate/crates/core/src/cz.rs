//! Cantor-Zassenhaus factoring and root finding over `F_q`.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElem, Fq, FqPoly};
use crate::poly::DensePoly;

/// Random attempts allowed for a single equal-degree split.
pub const SPLIT_ATTEMPTS: usize = 64;

fn is_const(f: &[FieldElem]) -> bool {
    f.len() <= 1
}

fn x_poly(fq: &Fq) -> FqPoly {
    vec![fq.zero(), fq.one()]
}

fn pquo(fq: &Fq, a: &[FieldElem], b: &[FieldElem]) -> FqPoly {
    let (q, r) = fq.pdivrem(a, b);
    debug_assert!(r.is_empty());
    q
}

fn pth_root_poly(fq: &Fq, f: &[FieldElem]) -> FqPoly {
    let p = fq.p() as usize;
    fq.ptrim(f.iter().step_by(p).map(|c| fq.pth_root(c)).collect())
}

/// Square-free decomposition of a monic polynomial: pairs `(g, m)` with
/// `g` square-free, pairwise coprime and `f = prod g^m`.
pub fn square_free(fq: &Fq, f: &[FieldElem]) -> Vec<(FqPoly, usize)> {
    let mut out = Vec::new();
    if is_const(f) {
        return out;
    }
    let df = fq.pderivative(f);
    let mut c = fq.pgcd(f, &df);
    let mut w = pquo(fq, f, &c);
    let mut i = 1;
    while !is_const(&w) {
        let y = fq.pgcd(&w, &c);
        let z = pquo(fq, &w, &y);
        if !is_const(&z) {
            out.push((z, i));
        }
        i += 1;
        c = pquo(fq, &c, &y);
        w = y;
    }
    if !is_const(&c) {
        let root = pth_root_poly(fq, &c);
        let p = fq.p() as usize;
        for (g, m) in square_free(fq, &root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a square-free monic polynomial into products of irreducibles of
/// equal degree: pairs `(product, degree)`.
pub fn distinct_degree(fq: &Fq, f: &[FieldElem]) -> Vec<(FqPoly, usize)> {
    let mut out = Vec::new();
    let q = fq.order();
    let x = x_poly(fq);
    let mut f = f.to_vec();
    let mut h = fq.prem(&x, &f);
    let mut d = 1;
    while f.len() > 2 * d {
        h = fq.ppowmod(&h, &q, &f);
        let g = fq.pgcd(&fq.psub(&h, &x), &f);
        if !is_const(&g) {
            f = pquo(fq, &f, &g);
            h = fq.prem(&h, &f);
            out.push((g, d));
        }
        d += 1;
    }
    if !is_const(&f) {
        let deg = f.len() - 1;
        out.push((f, deg));
    }
    out
}

fn split_candidate<R: Rng + ?Sized>(fq: &Fq, f: &[FieldElem], d: usize, rng: &mut R) -> FqPoly {
    let a = fq.prandom(f.len() - 1, rng);
    if fq.p() == 2 {
        // absolute trace down to F_2
        let steps = fq.degree() * d;
        let mut acc = a.clone();
        let mut term = a;
        for _ in 1..steps {
            term = fq.prem(&fq.pmul(&term, &term), f);
            acc = fq.padd(&acc, &term);
        }
        acc
    } else {
        let e = (fq.order().pow(d as u32) - BigUint::one()) >> 1;
        fq.psub(&fq.ppowmod(&a, &e, f), &[fq.one()])
    }
}

/// Splits a monic product of distinct degree-`d` irreducibles.
pub fn equal_degree<R: Rng + ?Sized>(
    fq: &Fq,
    f: &[FieldElem],
    d: usize,
    rng: &mut R,
) -> Result<Vec<FqPoly>> {
    if f.len() - 1 == d {
        return Ok(vec![f.to_vec()]);
    }
    for _ in 0..SPLIT_ATTEMPTS {
        let b = split_candidate(fq, f, d, rng);
        let g = fq.pgcd(&b, f);
        if !is_const(&g) && g.len() < f.len() {
            let other = pquo(fq, f, &g);
            let mut out = equal_degree(fq, &g, d, rng)?;
            out.extend(equal_degree(fq, &other, d, rng)?);
            return Ok(out);
        }
    }
    Err(Error::SplittingFailed(SPLIT_ATTEMPTS))
}

fn cmp_fq_poly(a: &FqPoly, b: &FqPoly) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Monic irreducible factors with multiplicities over `F_q`.
pub fn factor_fq<R: Rng + ?Sized>(
    fq: &Fq,
    f: &[FieldElem],
    rng: &mut R,
) -> Result<Vec<(FqPoly, usize)>> {
    if f.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let f = fq.pmonic(f);
    let mut out = Vec::new();
    for (g, m) in square_free(fq, &f) {
        for (prod, d) in distinct_degree(fq, &g) {
            for irr in equal_degree(fq, &prod, d, rng)? {
                out.push((irr, m));
            }
        }
    }
    out.sort_by(|a, b| cmp_fq_poly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

/// Factors `f` over `F_p` into monic irreducibles with multiplicities, sorted
/// by degree and then coefficients.
pub fn cz_factor<R: Rng + ?Sized>(f: &DensePoly, rng: &mut R) -> Result<Vec<(DensePoly, usize)>> {
    let fq = Fq::prime(f.modulus() as u64)?;
    let parts = factor_fq(&fq, &fq.from_fp_poly(f), rng)?;
    Ok(parts.into_iter().map(|(g, m)| (fq.to_fp_poly(&g), m)).collect())
}

/// All roots of `g` in `F_q`, sorted.
pub fn cz_roots<R: Rng + ?Sized>(fq: &Fq, g: &[FieldElem], rng: &mut R) -> Result<Vec<FieldElem>> {
    let g = fq.ptrim(g.to_vec());
    if g.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    if g.len() == 1 {
        return Ok(Vec::new());
    }
    let g = fq.pmonic(&g);
    let x = x_poly(fq);
    let xq = fq.ppowmod(&x, &fq.order(), &g);
    let lin = fq.pgcd(&fq.psub(&xq, &x), &g);
    if is_const(&lin) {
        return Ok(Vec::new());
    }
    let mut roots: Vec<FieldElem> = equal_degree(fq, &lin, 1, rng)?
        .into_iter()
        .map(|l| fq.neg(&l[0]))
        .collect();
    roots.sort();
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded_rng;

    fn fp(c: &[i128], p: u128) -> DensePoly {
        DensePoly::from_i128(c, p)
    }

    #[test]
    fn factor_examples() {
        let mut rng = seeded_rng(1);
        assert_eq!(
            cz_factor(&fp(&[21, 10, 1], 3), &mut rng).unwrap(),
            vec![(fp(&[0, 1], 3), 1), (fp(&[1, 1], 3), 1)]
        );
        assert_eq!(
            cz_factor(&fp(&[36, 3, 12, 1], 3), &mut rng).unwrap(),
            vec![(fp(&[0, 1], 3), 3)]
        );
        assert_eq!(
            cz_factor(&fp(&[1, 0, 1], 2), &mut rng).unwrap(),
            vec![(fp(&[1, 1], 2), 2)]
        );
    }

    #[test]
    fn factor_mixed_multiplicities() {
        let mut rng = seeded_rng(7);
        // (x+1)^2 (x^2+x+1)^3 x^4 over F_2 and F_5
        for p in [2u128, 5] {
            let a = fp(&[1, 1], p);
            let b = fp(&[1, 1, 1], p);
            let f = a.pow(2).mul(&b.pow(3)).mul(&fp(&[0, 1], p).pow(4));
            let parts = cz_factor(&f, &mut rng).unwrap();
            let back = parts
                .iter()
                .fold(DensePoly::one(p), |acc, (g, m)| acc.mul(&g.pow(*m as u64)));
            assert_eq!(back, f);
            for (g, _) in &parts {
                assert!(crate::field::is_irreducible_fp(g));
            }
        }
    }

    #[test]
    fn roots_examples() {
        let mut rng = seeded_rng(3);
        let f3 = Fq::prime(3).unwrap();
        let g = f3.from_fp_poly(&fp(&[-1, 0, 1], 3));
        assert_eq!(cz_roots(&f3, &g, &mut rng).unwrap(), vec![f3.from_int(1), f3.from_int(2)]);
        let g = f3.from_fp_poly(&fp(&[1, 0, 1], 3));
        assert!(cz_roots(&f3, &g, &mut rng).unwrap().is_empty());
    }

    #[test]
    fn all_elements_root_y_q_minus_y() {
        let mut rng = seeded_rng(5);
        for (p, phi) in [(2u64, fp(&[1, 1, 1], 2)), (3, fp(&[1, 0, 1], 3)), (2, fp(&[1, 1, 0, 1], 2))] {
            let fq = Fq::new(p, &phi).unwrap();
            let q = fq.order_u128().unwrap() as usize;
            let mut g = vec![fq.zero(); q + 1];
            g[q] = fq.one();
            g[1] = fq.neg(&fq.one());
            let roots = cz_roots(&fq, &g, &mut rng).unwrap();
            let mut all: Vec<_> = fq.elements().collect();
            all.sort();
            assert_eq!(roots, all);
        }
    }

    #[test]
    fn seed_determinism() {
        let f = fp(&[6, 11, 6, 1, 0, 3, 1], 7);
        let a = cz_factor(&f, &mut seeded_rng(11)).unwrap();
        let b = cz_factor(&f, &mut seeded_rng(11)).unwrap();
        let c = cz_factor(&f, &mut seeded_rng(12)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }
}
