//! Representative roots `v + pi^j * R` and recursive root finding over chain
//! rings.

use std::fmt;

use num_bigint::BigUint;
use rand::Rng;

use crate::cz::cz_roots;
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::ring::ChainRing;

/// The set `{v + pi^j * t}`; `v` is reduced modulo `pi^j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RepRoot<E> {
    pub v: E,
    pub j: usize,
}

pub type RepRootSet<E> = Vec<RepRoot<E>>;

impl<E: fmt::Display> fmt::Display for RepRoot<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.v, self.j)
    }
}

/// Polynomial over a chain ring, ascending in `y`.
pub type RingPoly<E> = Vec<E>;

pub fn rep_new<C: ChainRing>(ring: &C, v: &C::Elem, j: usize) -> RepRoot<C::Elem> {
    let j = j.min(ring.precision());
    RepRoot { v: ring.with_precision(j).reduce(v), j }
}

pub fn rep_contains<C: ChainRing>(ring: &C, r: &RepRoot<C::Elem>, y: &C::Elem) -> bool {
    let sub = ring.with_precision(r.j);
    sub.reduce(y) == r.v
}

/// Whether `inner` is a subset of `outer`.
pub fn rep_subset<C: ChainRing>(ring: &C, inner: &RepRoot<C::Elem>, outer: &RepRoot<C::Elem>) -> bool {
    inner.j >= outer.j && rep_contains(ring, outer, &inner.v)
}

pub fn rep_overlap<C: ChainRing>(ring: &C, a: &RepRoot<C::Elem>, b: &RepRoot<C::Elem>) -> bool {
    rep_subset(ring, a, b) || rep_subset(ring, b, a)
}

/// Number of ring elements covered; errors if two members overlap.
pub fn rep_count<C: ChainRing>(ring: &C, set: &[RepRoot<C::Elem>]) -> Result<BigUint> {
    for (i, a) in set.iter().enumerate() {
        for b in &set[i + 1..] {
            if rep_overlap(ring, a, b) {
                return Err(Error::OverlappingRepresentatives(
                    format!("{:?}", a),
                    format!("{:?}", b),
                ));
            }
        }
    }
    let q = ring.residue_field().order();
    Ok(set
        .iter()
        .map(|r| q.pow((ring.precision() - r.j) as u32))
        .sum())
}

/// All elements of one representative set, for small rings.
pub fn rep_expand<C: ChainRing>(ring: &C, r: &RepRoot<C::Elem>) -> Vec<C::Elem> {
    let free = ring.with_precision(ring.precision() - r.j);
    let n = free.cardinality().expect("ring too large to expand");
    (0..n)
        .map(|i| {
            let t = free.element_from_index(i);
            ring.add(&r.v, &ring.mul_pi_pow(&t, r.j))
        })
        .map(|y| ring.reduce(&y))
        .collect()
}

/// Drops members contained in other members and sorts by `(j, digits)`.
pub fn rep_normalize<C: ChainRing>(ring: &C, set: RepRootSet<C::Elem>) -> RepRootSet<C::Elem> {
    let mut keep: RepRootSet<C::Elem> = Vec::new();
    let mut set = set;
    set.sort_by_key(|r| r.j);
    for r in set {
        if !keep.iter().any(|o| rep_subset(ring, &r, o)) {
            keep.push(r);
        }
    }
    sort_reps(ring, &mut keep);
    keep
}

pub fn sort_reps<C: ChainRing>(ring: &C, set: &mut RepRootSet<C::Elem>) {
    set.sort_by_cached_key(|r| (r.j, ring.digits(&r.v)));
}

/// The image `{a + s*y : y in S}`. Multiplying by `s` of valuation `w` sends
/// `v + pi^j R` onto `s*v + pi^(j+w) R`, so non-units are handled exactly.
pub fn rep_scale_shift<C: ChainRing>(
    ring: &C,
    a: &C::Elem,
    s: &C::Elem,
    set: &[RepRoot<C::Elem>],
) -> RepRootSet<C::Elem> {
    let w = ring.valuation(s);
    let out = set
        .iter()
        .map(|r| {
            let v = ring.add(a, &ring.mul(s, &r.v));
            rep_new(ring, &v, r.j + w)
        })
        .collect();
    rep_normalize(ring, out)
}

pub fn ring_poly_trim<C: ChainRing>(ring: &C, g: &[C::Elem]) -> RingPoly<C::Elem> {
    let mut g: Vec<C::Elem> = g.iter().map(|c| ring.reduce(c)).collect();
    while g.last().is_some_and(|c| ring.is_zero(c)) {
        g.pop();
    }
    g
}

pub fn ring_poly_eval<C: ChainRing>(ring: &C, g: &[C::Elem], y: &C::Elem) -> C::Elem {
    g.iter()
        .rev()
        .fold(ring.zero(), |acc, c| ring.add(&ring.mul(&acc, y), c))
}

/// `g(a + pi^i * y)` by Horner's rule.
pub fn ring_poly_compose_shift<C: ChainRing>(
    ring: &C,
    g: &[C::Elem],
    a: &C::Elem,
    i: usize,
) -> RingPoly<C::Elem> {
    let mut acc: Vec<C::Elem> = Vec::new();
    for c in g.iter().rev() {
        // acc * (a + pi^i y) + c
        let mut next = vec![ring.zero(); acc.len() + 1];
        for (k, t) in acc.iter().enumerate() {
            next[k] = ring.add(&next[k], &ring.mul(t, a));
            next[k + 1] = ring.add(&next[k + 1], &ring.mul_pi_pow(t, i));
        }
        next[0] = ring.add(&next[0], c);
        acc = next;
    }
    ring_poly_trim(ring, &acc)
}

/// All roots of `g` in the ring, as disjoint representative sets sorted by
/// `(j, digits)`.
pub fn root_find<C: ChainRing, R: Rng + ?Sized>(
    ring: &C,
    g: &[C::Elem],
    rng: &mut R,
) -> Result<RepRootSet<C::Elem>> {
    let g = ring_poly_trim(ring, g);
    let bound = g.len().saturating_sub(1).max(1);
    let mut out = root_find_rec(ring, &g, rng, 0, ring.precision())?;
    assert!(
        out.len() <= bound,
        "{} representatives for a polynomial of degree {}",
        out.len(),
        bound
    );
    sort_reps(ring, &mut out);
    Ok(out)
}

fn root_find_rec<C: ChainRing, R: Rng + ?Sized>(
    ring: &C,
    g: &[C::Elem],
    rng: &mut R,
    depth: usize,
    top: usize,
) -> Result<RepRootSet<C::Elem>> {
    let n = ring.precision();
    // each level loses at least one digit of precision
    debug_assert!(depth + n <= top);
    if g.is_empty() {
        return Ok(vec![RepRoot { v: ring.zero(), j: 0 }]);
    }
    if g.len() == 1 {
        // a nonzero constant
        return Ok(Vec::new());
    }
    let alpha = g.iter().map(|c| ring.valuation(c)).min().unwrap();
    let sub = ring.with_precision(n - alpha);
    let gt: Vec<C::Elem> = g.iter().map(|c| sub.reduce(&ring.div_pi_pow(c, alpha))).collect();
    let fq = ring.residue_field();
    let gbar = fq.ptrim(gt.iter().map(|c| sub.residue(c)).collect::<Vec<FieldElem>>());
    if gbar.len() <= 1 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for a in cz_roots(fq, &gbar, rng)? {
        let a_lift = sub.lift_residue(&a);
        // g~(a + pi*y) vanishes mod pi, so divide once and recurse one
        // level down
        let ga = ring_poly_compose_shift(&sub, &gt, &a_lift, 1);
        let next = sub.with_precision(sub.precision() - 1);
        let ga: Vec<C::Elem> = ga.iter().map(|c| next.reduce(&sub.div_pi_pow(c, 1))).collect();
        let ga = ring_poly_trim(&next, &ga);
        for r in root_find_rec(&next, &ga, rng, depth + 1, top)? {
            let v = sub.add(&a_lift, &sub.mul_pi_pow(&r.v, 1));
            out.push(rep_new(&sub, &v, r.j + 1));
        }
    }
    Ok(out)
}
