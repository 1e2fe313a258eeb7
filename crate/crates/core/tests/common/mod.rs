#![allow(dead_code)]

use qcleb_core::galois::{Ctx, FieldPoly};
use qcleb_core::lebcode::Partition;
use qcleb_core::linalg::Matrix;
use qcleb_core::qcleb::QCLebCode;

/// H of the worked example, rows as printed (coefficient of X^11 first).
pub const EXAMPLE_H_DISPLAY: [&str; 8] = [
    "010000000000",
    "000010000000",
    "000000010000",
    "000000000010",
    "100000100000",
    "000100000100",
    "000001000101",
    "001000101000",
];

pub const EXAMPLE_G_DISPLAY: [&str; 2] = ["101|000|100|000", "100|000|101|000"];

pub fn example_partition() -> Partition {
    Partition::new(3, 4, 2).unwrap()
}

pub fn example_ctx() -> Ctx {
    example_partition().ctx(2).unwrap()
}

/// g = (X^2 * X^{*1}) * 1^* + ((X^2 + 1) * X^{*1}) * X^{*2}, expanded by hand with
/// P * Q = X^2 P Q and X^{*a} = X^(3(a-1)+1): X^5 + X^9 + X^11.
pub fn example_g() -> FieldPoly {
    FieldPoly::from_exponents(example_ctx(), &[5, 9, 11])
}

pub fn example_code() -> QCLebCode {
    QCLebCode::new(&example_g(), example_partition()).unwrap()
}

pub fn reversed_rows(rows: &[&str]) -> Matrix {
    let rev: Vec<String> = rows.iter().map(|r| r.chars().filter(|c| *c != '|').rev().collect()).collect();
    let refs: Vec<&str> = rev.iter().map(String::as_str).collect();
    Matrix::from_bit_rows(&refs).unwrap()
}

pub fn example_h() -> Matrix {
    reversed_rows(&EXAMPLE_H_DISPLAY)
}

/// Schoolbook product in Z[X] followed by reduction mod (q, X^n - 1), on plain vectors.
pub fn naive_mul(a: &[u8], b: &[u8], q: u8) -> Vec<u8> {
    let n = a.len();
    let mut full = vec![0i64; 2 * n];
    for i in 0..n {
        for j in 0..n {
            full[i + j] += a[i] as i64 * b[j] as i64;
        }
    }
    (0..n).map(|i| ((full[i] + full[i + n]) % q as i64) as u8).collect()
}

/// Plain long division over F_q of degree < n polynomials: returns (quotient, remainder).
pub fn naive_divmod(v: &[u8], g: &[u8], q: u8) -> (Vec<u8>, Vec<u8>) {
    let q = q as i64;
    let dg = g.iter().rposition(|&c| c != 0).unwrap();
    let inv = (1..q).find(|x| x * g[dg] as i64 % q == 1).unwrap();
    let mut r: Vec<i64> = v.iter().map(|&c| c as i64).collect();
    let mut quo = vec![0i64; v.len()];
    while let Some(d) = r.iter().rposition(|&c| c % q != 0) {
        if d < dg {
            break;
        }
        let f = r[d] % q * inv % q;
        quo[d - dg] = f;
        for i in 0..=dg {
            r[d - dg + i] = ((r[d - dg + i] - f * g[i] as i64) % q + q) % q;
        }
    }
    (quo.iter().map(|&c| c as u8).collect(), r.iter().map(|&c| (c % q) as u8).collect())
}

pub fn rotate(v: &[u8], k: usize) -> Vec<u8> {
    let n = v.len();
    (0..n).map(|i| v[(i + n - k % n) % n]).collect()
}
