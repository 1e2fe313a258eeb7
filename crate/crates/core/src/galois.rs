//! Prime-field scalars and dense polynomials in F_q[X]/(X^n - 1).
//!
//! Coefficients are stored ascending: index i holds the coefficient of X^i.
//! Products wrap around (X^n = 1), which is what keeps the quotient ring a ring.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

pub fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_field(q: u32) -> Result<u8> {
    if q < 256 && is_prime(q) {
        Ok(q as u8)
    } else {
        Err(Error::NotPrime(q))
    }
}

#[inline]
pub fn add_mod(a: u8, b: u8, q: u8) -> u8 {
    ((a as u16 + b as u16) % q as u16) as u8
}

#[inline]
pub fn sub_mod(a: u8, b: u8, q: u8) -> u8 {
    ((a as u16 + q as u16 - b as u16) % q as u16) as u8
}

#[inline]
pub fn mul_mod(a: u8, b: u8, q: u8) -> u8 {
    ((a as u16 * b as u16) % q as u16) as u8
}

#[inline]
pub fn neg_mod(a: u8, q: u8) -> u8 {
    sub_mod(0, a, q)
}

/// Multiplicative inverse via Fermat; `None` for zero.
pub fn inv_mod(a: u8, q: u8) -> Option<u8> {
    if a.is_multiple_of(q) {
        return None;
    }
    let mut result = 1u8;
    let mut base = a % q;
    let mut e = q as u32 - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(result, base, q);
        }
        base = mul_mod(base, base, q);
        e >>= 1;
    }
    Some(result)
}

/// An element of the prime field F_q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    value: u8,
    q: u8,
}

// Field operations report a mismatched q, so they stay inherent methods.
#[allow(clippy::should_implement_trait)]
impl FieldScalar {
    pub fn new(value: u32, q: u32) -> Result<Self> {
        let q = check_field(q)?;
        Ok(FieldScalar { value: (value % q as u32) as u8, q })
    }

    pub fn value(self) -> u8 {
        self.value
    }

    pub fn q(self) -> u8 {
        self.q
    }

    pub fn add(self, o: Self) -> Result<Self> {
        self.same(o)?;
        Ok(FieldScalar { value: add_mod(self.value, o.value, self.q), q: self.q })
    }

    pub fn sub(self, o: Self) -> Result<Self> {
        self.same(o)?;
        Ok(FieldScalar { value: sub_mod(self.value, o.value, self.q), q: self.q })
    }

    pub fn mul(self, o: Self) -> Result<Self> {
        self.same(o)?;
        Ok(FieldScalar { value: mul_mod(self.value, o.value, self.q), q: self.q })
    }

    pub fn neg(self) -> Self {
        FieldScalar { value: neg_mod(self.value, self.q), q: self.q }
    }

    pub fn inv(self) -> Option<Self> {
        inv_mod(self.value, self.q).map(|value| FieldScalar { value, q: self.q })
    }

    fn same(self, o: Self) -> Result<()> {
        if self.q == o.q {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Ring context: length n, field size q, block length m (for the star product).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ctx {
    n: usize,
    q: u8,
    m: usize,
}

impl Ctx {
    pub fn new(n: usize, q: u32, m: usize) -> Result<Self> {
        let q = check_field(q)?;
        if m == 0 {
            return Err(Error::InvalidContext("block length m must be at least 1"));
        }
        if n < m || !n.is_multiple_of(m) {
            return Err(Error::InvalidContext("n must be a positive multiple of m"));
        }
        Ok(Ctx { n, q, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of blocks s = n / m.
    pub fn s(&self) -> usize {
        self.n / self.m
    }
}

/// Dense polynomial of F_q[X]/(X^n - 1), always exactly n coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldPoly {
    coeffs: Vec<u8>,
    ctx: Ctx,
}

impl FieldPoly {
    pub fn zero(ctx: Ctx) -> Self {
        FieldPoly { coeffs: vec![0; ctx.n], ctx }
    }

    pub fn one(ctx: Ctx) -> Self {
        let mut p = Self::zero(ctx);
        p.coeffs[0] = 1;
        p
    }

    pub fn monomial(i: usize, ctx: Ctx) -> Result<Self> {
        if i >= ctx.n {
            return Err(Error::ExponentOutOfRange { exponent: i, n: ctx.n });
        }
        let mut p = Self::zero(ctx);
        p.coeffs[i] = 1;
        Ok(p)
    }

    /// Builds a polynomial from ascending coefficients of any length.
    /// Coefficients are reduced mod q and exponents mod n.
    pub fn from_coeffs(ctx: Ctx, coeffs: &[u32]) -> Self {
        let mut p = Self::zero(ctx);
        let q = ctx.q as u32;
        for (i, &c) in coeffs.iter().enumerate() {
            let j = i % ctx.n;
            p.coeffs[j] = ((p.coeffs[j] as u32 + c % q) % q) as u8;
        }
        p
    }

    /// Takes ownership of an already reduced coefficient vector of length n.
    pub fn from_vec(ctx: Ctx, coeffs: Vec<u8>) -> Result<Self> {
        if coeffs.len() != ctx.n {
            return Err(Error::LengthMismatch { expected: ctx.n, got: coeffs.len() });
        }
        if coeffs.iter().any(|&c| c >= ctx.q) {
            return Err(Error::Parse(format!("coefficient not below q = {}", ctx.q)));
        }
        Ok(FieldPoly { coeffs, ctx })
    }

    /// Sum of X^e over the given exponents (taken mod n).
    pub fn from_exponents(ctx: Ctx, exps: &[usize]) -> Self {
        let mut p = Self::zero(ctx);
        for &e in exps {
            let j = e % ctx.n;
            p.coeffs[j] = add_mod(p.coeffs[j], 1, ctx.q);
        }
        p
    }

    pub fn ctx(&self) -> Ctx {
        self.ctx
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u8> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u8 {
        self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Classical degree as a polynomial of degree < n; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }

    pub fn leading_coeff(&self) -> u8 {
        self.degree().map_or(0, |d| self.coeffs[d])
    }

    /// Exponents with a nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ctx.n).filter(|&i| self.coeffs[i] != 0).collect()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let q = self.ctx.q;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| add_mod(a, b, q)).collect();
        Ok(FieldPoly { coeffs, ctx: self.ctx })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let q = self.ctx.q;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| sub_mod(a, b, q)).collect();
        Ok(FieldPoly { coeffs, ctx: self.ctx })
    }

    pub fn neg(&self) -> Self {
        let q = self.ctx.q;
        FieldPoly { coeffs: self.coeffs.iter().map(|&a| neg_mod(a, q)).collect(), ctx: self.ctx }
    }

    pub fn scale(&self, c: u8) -> Self {
        let q = self.ctx.q;
        let c = c % q;
        FieldPoly { coeffs: self.coeffs.iter().map(|&a| mul_mod(a, c, q)).collect(), ctx: self.ctx }
    }

    /// Cyclic convolution reduced by X^n - 1.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.ctx.n;
        let q = self.ctx.q as u64;
        let mut acc = vec![0u64; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    let k = if i + j >= n { i + j - n } else { i + j };
                    acc[k] += a as u64 * b as u64;
                }
            }
        }
        let coeffs = acc.into_iter().map(|v| (v % q) as u8).collect();
        Ok(FieldPoly { coeffs, ctx: self.ctx })
    }

    /// X^k * self, a cyclic rotation of the coefficients.
    pub fn mul_monomial(&self, k: usize) -> Self {
        let n = self.ctx.n;
        let k = k % n;
        let mut coeffs = vec![0; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(i + k) % n] = c;
        }
        FieldPoly { coeffs, ctx: self.ctx }
    }

    /// `q=<q>;n=<n>;coeffs=<ascending>`.
    pub fn to_text(&self) -> String {
        format!("q={};n={};coeffs={}", self.ctx.q, self.ctx.n, coeff_string(&self.coeffs, self.ctx.q))
    }

    /// Parses [`FieldPoly::to_text`] output; the block length is supplied by the caller
    /// unless the text carries an `m=` field.
    pub fn parse_text(text: &str, m: usize) -> Result<Self> {
        let (mut q, mut n, mut mm, mut coeffs) = (None, None, None, None);
        for part in text.trim().split(';') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
            let num = || value.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad number in {part:?}")));
            match key.trim() {
                "q" => q = Some(num()?),
                "n" => n = Some(num()?),
                "m" => mm = Some(num()?),
                "coeffs" => coeffs = Some(value.trim()),
                other => return Err(Error::Parse(format!("unknown key {other:?}"))),
            }
        }
        let q = q.ok_or_else(|| Error::Parse("missing q".into()))?;
        let n = n.ok_or_else(|| Error::Parse("missing n".into()))?;
        let coeffs = coeffs.ok_or_else(|| Error::Parse("missing coeffs".into()))?;
        let ctx = Ctx::new(n, q as u32, mm.unwrap_or(m))?;
        let v = parse_coeff_string(coeffs, ctx.q)?;
        Self::from_vec(ctx, v)
    }
}

impl fmt::Debug for FieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldPoly({}, m={})", self.to_text(), self.ctx.m)
    }
}

impl fmt::Display for FieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write_term(f, c, i)?;
        }
        Ok(())
    }
}

pub(crate) fn write_term(f: &mut impl fmt::Write, c: u8, i: usize) -> fmt::Result {
    match (c, i) {
        (_, 0) => write!(f, "{c}"),
        (1, 1) => write!(f, "X"),
        (1, _) => write!(f, "X^{i}"),
        (_, 1) => write!(f, "{c}*X"),
        _ => write!(f, "{c}*X^{i}"),
    }
}

/// Canonical coefficient string: one hex digit per symbol when q <= 16,
/// otherwise comma-separated decimals.
pub fn coeff_string(coeffs: &[u8], q: u8) -> String {
    if q <= 16 {
        coeffs.iter().map(|&c| char::from_digit(c as u32, 16).unwrap_or('?')).collect()
    } else {
        let parts: Vec<String> = coeffs.iter().map(|c| format!("{c}")).collect();
        parts.join(",")
    }
}

/// Inverse of [`coeff_string`]. `|` and whitespace are ignored as separators
/// when q <= 16.
pub fn parse_coeff_string(s: &str, q: u8) -> Result<Vec<u8>> {
    let out: Result<Vec<u8>> = if q <= 16 {
        s.chars()
            .filter(|c| *c != '|' && !c.is_whitespace())
            .map(|ch| {
                ch.to_digit(16)
                    .filter(|&d| d < q as u32)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::Parse(format!("bad symbol {ch:?} for q = {q}")))
            })
            .collect()
    } else {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<u8>()
                    .ok()
                    .filter(|&d| d < q)
                    .ok_or_else(|| Error::Parse(format!("bad symbol {t:?} for q = {q}")))
            })
            .collect()
    };
    out
}

pub fn poly_add(a: &FieldPoly, b: &FieldPoly) -> Result<FieldPoly> {
    a.add(b)
}

pub fn poly_mul(a: &FieldPoly, b: &FieldPoly) -> Result<FieldPoly> {
    a.mul(b)
}

pub fn monomial(i: usize, ctx: Ctx) -> Result<FieldPoly> {
    FieldPoly::monomial(i, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn ctx(n: usize, q: u32) -> Ctx {
        Ctx::new(n, q, 1).unwrap()
    }

    #[test]
    fn self_inverse_in_char_two() {
        let c = ctx(4, 2);
        let p = FieldPoly::from_coeffs(c, &[1, 1]);
        assert!(poly_add(&p, &p).unwrap().is_zero());
    }

    #[test]
    fn add_over_f3() {
        let c = ctx(4, 3);
        let a = FieldPoly::from_coeffs(c, &[1, 0, 1]);
        let b = FieldPoly::from_coeffs(c, &[0, 1, 1]);
        assert_eq!(poly_add(&a, &b).unwrap().coeffs(), &[1, 1, 2, 0]);
    }

    #[test]
    fn square_of_one_plus_x() {
        let c = ctx(3, 2);
        let a = FieldPoly::from_coeffs(c, &[1, 1]);
        assert_eq!(poly_mul(&a, &a).unwrap().coeffs(), &[1, 0, 1]);
    }

    #[test]
    fn wrap_around_and_identity() {
        let c = ctx(5, 5);
        let top = monomial(4, c).unwrap();
        let x = monomial(1, c).unwrap();
        assert_eq!(poly_mul(&top, &x).unwrap(), FieldPoly::one(c));
        let a = FieldPoly::from_coeffs(c, &[3, 1, 4, 1, 2]);
        assert_eq!(poly_mul(&a, &monomial(0, c).unwrap()).unwrap(), a);
        assert_eq!(poly_mul(&monomial(2, ctx(4, 2)).unwrap(), &monomial(3, ctx(4, 2)).unwrap()).unwrap(),
                   monomial(1, ctx(4, 2)).unwrap());
    }

    #[test]
    fn monomial_range() {
        let c = ctx(4, 2);
        assert_eq!(monomial(0, c).unwrap(), FieldPoly::one(c));
        assert_eq!(monomial(3, c).unwrap().degree(), Some(3));
        assert_eq!(monomial(4, c), Err(Error::ExponentOutOfRange { exponent: 4, n: 4 }));
    }

    #[test]
    fn context_mismatch() {
        let a = FieldPoly::one(ctx(4, 2));
        let b = FieldPoly::one(ctx(4, 3));
        assert_eq!(a.add(&b), Err(Error::ContextMismatch));
        let c = FieldPoly::one(Ctx::new(4, 2, 2).unwrap());
        assert_eq!(a.mul(&c), Err(Error::ContextMismatch));
    }

    #[test]
    fn scalars() {
        let a = FieldScalar::new(3, 5).unwrap();
        assert_eq!(a.inv().unwrap().value(), 2);
        assert_eq!(a.neg().value(), 2);
        assert!(FieldScalar::new(0, 7).unwrap().inv().is_none());
        assert_eq!(FieldScalar::new(1, 4), Err(Error::NotPrime(4)));
        for q in [2u8, 3, 5, 7, 251] {
            for a in 1..q {
                assert_eq!(mul_mod(a, inv_mod(a, q).unwrap(), q), 1);
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let c = Ctx::new(12, 2, 3).unwrap();
        let g = FieldPoly::from_exponents(c, &[5, 9, 11]);
        assert_eq!(g.to_text(), "q=2;n=12;coeffs=000001000101");
        assert_eq!(FieldPoly::parse_text(&g.to_text(), 3).unwrap(), g);
        let c = Ctx::new(4, 17, 2).unwrap();
        let p = FieldPoly::from_coeffs(c, &[16, 0, 3, 11]);
        assert_eq!(p.to_text(), "q=17;n=4;coeffs=16,0,3,11");
        assert_eq!(FieldPoly::parse_text(&p.to_text(), 2).unwrap(), p);
        assert!(FieldPoly::parse_text("q=2;n=3;coeffs=012", 1).is_err());
        assert!(FieldPoly::parse_text("q=2;n=3;coeffs=0101", 1).is_err());
    }

    #[test]
    fn display() {
        let c = ctx(12, 3);
        assert_eq!(FieldPoly::from_coeffs(c, &[2, 1, 0, 1]).to_string(), "2 + X + X^3");
        assert_eq!(FieldPoly::zero(c).to_string(), "0");
    }
}
