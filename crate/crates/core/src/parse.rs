//! Polynomial input: either an expression in `x` such as `x^3+12*x^2-3x+36`
//! or an ascending coefficient list such as `[36,3,12,1]`. Integer
//! coefficients of any size are reduced modulo the target modulus.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::poly::DensePoly;

fn reduce_int(v: &BigInt, m: u128) -> u128 {
    let mb = BigInt::from(m);
    let r = ((v % &mb) + &mb) % &mb;
    r.to_u128().expect("reduced below modulus")
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

/// Values the expression parser can build.
trait Algebra: Sized {
    fn constant(c: u128, m: u128) -> Self;
    fn var(name: u8, m: u128) -> Option<Self>;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn pow(&self, e: u64) -> Self;
}

impl Algebra for DensePoly {
    fn constant(c: u128, m: u128) -> Self {
        DensePoly::constant(c, m)
    }
    fn var(name: u8, m: u128) -> Option<Self> {
        (name == b'x').then(|| DensePoly::x(m))
    }
    fn add(&self, o: &Self) -> Self {
        DensePoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        DensePoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        DensePoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        DensePoly::neg(self)
    }
    fn pow(&self, e: u64) -> Self {
        DensePoly::pow(self, e)
    }
}

/// A polynomial in `y` with coefficients in `Z/m[x]`, ascending in `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct YPoly(Vec<DensePoly>, u128);

impl YPoly {
    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn zip(&self, o: &Self, f: impl Fn(&DensePoly, &DensePoly) -> DensePoly) -> Self {
        let z = DensePoly::zero(self.1);
        let n = self.0.len().max(o.0.len());
        let c = (0..n)
            .map(|i| f(self.0.get(i).unwrap_or(&z), o.0.get(i).unwrap_or(&z)))
            .collect();
        YPoly(c, self.1).trim()
    }
}

impl Algebra for YPoly {
    fn constant(c: u128, m: u128) -> Self {
        YPoly(vec![DensePoly::constant(c, m)], m).trim()
    }
    fn var(name: u8, m: u128) -> Option<Self> {
        match name {
            b'x' => Some(YPoly(vec![DensePoly::x(m)], m)),
            b'y' => Some(YPoly(vec![DensePoly::zero(m), DensePoly::one(m)], m)),
            _ => None,
        }
    }
    fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.add(b))
    }
    fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.sub(b))
    }
    fn mul(&self, o: &Self) -> Self {
        if self.0.is_empty() || o.0.is_empty() {
            return YPoly(Vec::new(), self.1);
        }
        let mut c = vec![DensePoly::zero(self.1); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        YPoly(c, self.1).trim()
    }
    fn neg(&self) -> Self {
        YPoly(self.0.iter().map(DensePoly::neg).collect(), self.1)
    }
    fn pow(&self, mut e: u64) -> Self {
        let mut acc = YPoly::constant(1 % self.1, self.1);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    m: u128,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigUint> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(start, "expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits"))
    }

    fn expr<A: Algebra>(&mut self) -> Result<A> {
        let mut acc: A = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<A: Algebra>(&mut self) -> Result<A> {
        let mut acc: A = self.power()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.power()?);
            } else if matches!(self.peek(), Some(b'a'..=b'z' | b'(' | b'0'..=b'9')) {
                // juxtaposition, as in 3x or 2(x+1)
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power<A: Algebra>(&mut self) -> Result<A> {
        if self.eat(b'-') {
            return Ok(self.power::<A>()?.neg());
        }
        if self.eat(b'+') {
            return self.power();
        }
        let base: A = self.atom()?;
        if self.eat(b'^') {
            let at = self.pos;
            let e = self.integer()?;
            let e = e.to_u64().filter(|&e| e <= 1 << 16).ok_or_else(|| err(at, "exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom<A: Algebra>(&mut self) -> Result<A> {
        match self.peek() {
            Some(c @ b'a'..=b'z') => {
                let at = self.pos;
                self.pos += 1;
                A::var(c, self.m).ok_or_else(|| err(at, format!("unknown variable '{}'", c as char)))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(err(self.pos, "expected ')'"));
                }
                Ok(e)
            }
            Some(b'0'..=b'9') => {
                let v = self.integer()?;
                Ok(A::constant(reduce_int(&v.into(), self.m), self.m))
            }
            Some(c) => Err(err(self.pos, format!("unexpected '{}'", c as char))),
            None => Err(err(self.pos, "unexpected end of input")),
        }
    }

    fn finish<A: Algebra>(&mut self) -> Result<A> {
        if self.peek().is_none() {
            return Err(err(0, "empty polynomial"));
        }
        let out = self.expr()?;
        if self.peek().is_some() {
            return Err(err(self.pos, format!("unexpected '{}'", self.src[self.pos] as char)));
        }
        Ok(out)
    }
}

fn parse_list(s: &str, m: u128) -> Result<DensePoly> {
    let inner = s.trim();
    let start = s.len() - s.trim_start().len();
    let body = inner
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| err(start, "coefficient list must be enclosed in [ ]"))?;
    if body.trim().is_empty() {
        return Ok(DensePoly::zero(m));
    }
    let mut coeffs = Vec::new();
    let mut offset = start + 1;
    for item in body.split(',') {
        let t = item.trim();
        let v: BigInt = t.parse().map_err(|_| err(offset, format!("bad coefficient '{t}'")))?;
        coeffs.push(reduce_int(&v, m));
        offset += item.len() + 1;
    }
    Ok(DensePoly::new(coeffs, m))
}

/// Parses a polynomial in either accepted form over `Z/m`.
pub fn parse_poly(s: &str, m: u128) -> Result<DensePoly> {
    if m == 0 {
        return Err(err(0, "modulus must be positive"));
    }
    if s.trim_start().starts_with('[') {
        return parse_list(s, m);
    }
    Parser { src: s.as_bytes(), pos: 0, m }.finish()
}

/// Parses a polynomial in `y` whose coefficients are polynomials in `x`,
/// such as `y^2 - x*y + x^3`. Returns the coefficients of `y^0, y^1, ...`.
pub fn parse_poly_in_y(s: &str, m: u128) -> Result<Vec<DensePoly>> {
    if m == 0 {
        return Err(err(0, "modulus must be positive"));
    }
    let y: YPoly = Parser { src: s.as_bytes(), pos: 0, m }.finish()?;
    Ok(y.0)
}

/// Ascending coefficients as a list, the inverse of the list form.
pub fn format_list(f: &DensePoly) -> String {
    if f.is_zero() {
        return "[]".into();
    }
    let items: Vec<String> = f.coeffs().iter().map(u128::to_string).collect();
    format!("[{}]", items.join(","))
}
