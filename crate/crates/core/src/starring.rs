//! The star product P * Q = X^(m-1) P Q on F_q[X]/(X^n - 1), star degrees,
//! Euclidean division and the remainder map R_g.
//!
//! Block i of a polynomial is the coefficient slice [i*m, (i+1)*m), because
//! X^{*i} * a = X^(i*m) a.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::galois::{inv_mod, mul_mod, sub_mod, write_term, Ctx, FieldPoly};

pub type StarRingCtx = Ctx;

/// The unity X^(n-m+1) of the star product.
pub fn star_unity(ctx: StarRingCtx) -> FieldPoly {
    FieldPoly::monomial((ctx.n() - ctx.m() + 1) % ctx.n(), ctx).expect("exponent reduced mod n")
}

pub fn star_mul(p: &FieldPoly, r: &FieldPoly) -> Result<FieldPoly> {
    Ok(p.mul(r)?.mul_monomial(p.ctx().m() - 1))
}

/// X^{*alpha}: the unity for alpha = 0, X^((alpha-1)m+1) otherwise.
pub fn star_pow(alpha: usize, ctx: StarRingCtx) -> FieldPoly {
    if alpha == 0 {
        return star_unity(ctx);
    }
    let n = ctx.n();
    let e = ((alpha - 1) % n * ctx.m() + 1) % n;
    FieldPoly::monomial(e, ctx).expect("exponent reduced mod n")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StarDegree {
    /// Degree of the zero polynomial, below every finite degree.
    NegInfinity,
    Finite { block_index: usize, inner_degree: usize },
}

pub fn star_deg(p: &FieldPoly) -> StarDegree {
    match p.degree() {
        None => StarDegree::NegInfinity,
        Some(d) => {
            let m = p.ctx().m();
            StarDegree::Finite { block_index: d / m, inner_degree: d % m }
        }
    }
}

/// Block i as an ascending coefficient slice of length m.
pub fn block(p: &FieldPoly, i: usize) -> &[u8] {
    let m = p.ctx().m();
    &p.coeffs()[i * m..(i + 1) * m]
}

/// Returns (f, r) with v = g * f + r and star_deg(r) < star_deg(g).
///
/// v is divided classically by g (both read as polynomials of degree < n), giving
/// v = g Q + r; then f = X^(n-m+1) Q, so that g * f = X^n g Q = g Q.
pub fn star_divmod(v: &FieldPoly, g: &FieldPoly) -> Result<(FieldPoly, FieldPoly)> {
    if v.ctx() != g.ctx() {
        return Err(Error::ContextMismatch);
    }
    let ctx = g.ctx();
    let dg = g.degree().ok_or(Error::DivisionByZeroPoly)?;
    let q = ctx.q();
    let lead_inv = inv_mod(g.coeff(dg), q).expect("nonzero leading coefficient");
    let mut rem = v.coeffs().to_vec();
    let mut quot = vec![0u8; ctx.n()];
    let gc = g.coeffs();
    for d in (dg..ctx.n()).rev() {
        let c = rem[d];
        if c == 0 {
            continue;
        }
        let f = mul_mod(c, lead_inv, q);
        let shift = d - dg;
        quot[shift] = f;
        for i in 0..=dg {
            if gc[i] != 0 {
                rem[i + shift] = sub_mod(rem[i + shift], mul_mod(f, gc[i], q), q);
            }
        }
    }
    let quot = FieldPoly::from_vec(ctx, quot)?;
    let f = quot.mul_monomial(ctx.n() - ctx.m() + 1);
    Ok((f, FieldPoly::from_vec(ctx, rem)?))
}

/// R_g(v), the remainder component of [`star_divmod`].
pub fn remainder_rg(v: &FieldPoly, g: &FieldPoly) -> Result<FieldPoly> {
    Ok(star_divmod(v, g)?.1)
}

/// S_pi(v) = R_g(v).
pub fn syndrome_poly(v: &FieldPoly, g: &FieldPoly) -> Result<FieldPoly> {
    remainder_rg(v, g)
}

/// Star notation: nonzero blocks as `(<inner>)*X**<k>` joined by ` + `,
/// where the term stands for a_k * X^{*k}.
pub fn to_star_notation(p: &FieldPoly) -> String {
    if p.is_zero() {
        return String::from("0");
    }
    let ctx = p.ctx();
    let mut terms = Vec::new();
    for k in 0..ctx.s() {
        let b = block(p, k);
        if b.iter().all(|&c| c == 0) {
            continue;
        }
        let mut inner = String::new();
        for (i, &c) in b.iter().enumerate().filter(|(_, &c)| c != 0) {
            if !inner.is_empty() {
                inner.push('+');
            }
            write_term(&mut inner, c, i).expect("string write");
        }
        terms.push(format!("({inner})*X**{k}"));
    }
    terms.join(" + ")
}

pub fn parse_star_notation(text: &str, ctx: StarRingCtx) -> Result<FieldPoly> {
    let text = text.trim();
    let mut coeffs = vec![0u32; ctx.n()];
    if text == "0" {
        return Ok(FieldPoly::zero(ctx));
    }
    let bad = |why: &str| Error::Parse(format!("star notation: {why} in {text:?}"));
    for term in text.split(" + ") {
        let term = term.trim();
        let rest = term.strip_prefix('(').ok_or_else(|| bad("missing '('"))?;
        let (inner, tail) = rest.split_once(")*X**").ok_or_else(|| bad("missing ')*X**'"))?;
        let k: usize = tail.parse().map_err(|_| bad("bad block index"))?;
        if k >= ctx.s() {
            return Err(bad("block index out of range"));
        }
        for mono in inner.split('+') {
            let (c, i) = parse_monomial(mono.trim()).ok_or_else(|| bad("bad monomial"))?;
            if i >= ctx.m() {
                return Err(bad("inner degree not below m"));
            }
            coeffs[k * ctx.m() + i] += c;
        }
    }
    Ok(FieldPoly::from_coeffs(ctx, &coeffs))
}

fn parse_monomial(s: &str) -> Option<(u32, usize)> {
    let (c, x) = match s.split_once('*') {
        Some((c, x)) => (c.parse().ok()?, x),
        None if s.starts_with('X') => (1, s),
        None => return Some((s.parse().ok()?, 0)),
    };
    let i = match x {
        "X" => 1,
        _ => x.strip_prefix("X^")?.parse().ok()?,
    };
    Some((c, i))
}

/// Pretty form used in diagnostics: `g = (X^2)*X**1 + (1+X^2)*X**3`.
pub fn describe(name: &str, p: &FieldPoly) -> String {
    let mut s = String::new();
    let _ = write!(s, "{name} = {}", to_star_notation(p));
    s
}
