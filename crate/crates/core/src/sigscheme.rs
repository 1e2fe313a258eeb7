//! Commitment / challenge / response signatures over a QC-LEB code.
//!
//! Faithful mode follows the listing: c = r (.) sk, e = SHA-256(c) mod 2,
//! z = r + e sk, and verification only recomputes e. Extended mode binds the
//! message and the response: the low challenge bit is SHA-256(c || M) mod 2 and
//! the remaining 127 bits come from SHA-256(c || z || M).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use rand_core::RngCore;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::qcleb::QCLebCode;

pub const SIGNATURE_TAG: &str = "QCLEBSIG1";
pub const SECRET_KEY_TAG: &str = "QCLEB-SK1";
pub const PUBLIC_KEY_TAG: &str = "QCLEB-PK1";
/// Challenge width of extended mode, in bytes.
pub const WIDE_CHALLENGE_BYTES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Faithful,
    Extended,
}

/// How r and sk are combined into the commitment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Commitment {
    /// c_i = r_i sk_i, an n-bit vector.
    #[default]
    Componentwise,
    /// c = <r, sk> mod 2, a single bit.
    InnerProduct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Challenge {
    Bit(u8),
    Wide([u8; WIDE_CHALLENGE_BYTES]),
}

impl Challenge {
    pub fn low_bit(&self) -> u8 {
        match self {
            Challenge::Bit(b) => b & 1,
            Challenge::Wide(w) => w[WIDE_CHALLENGE_BYTES - 1] & 1,
        }
    }
}

/// Code parameters recorded in key files: q, m, p, l.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KeyParams {
    pub q: u8,
    pub m: usize,
    pub p: usize,
    pub l: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyPair {
    pub sk: Vec<u8>,
    /// G^t, n x k.
    pub pk: Matrix,
    pub params: KeyParams,
    pub seed_tag: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureBundle {
    pub mode: Mode,
    pub c: Vec<u8>,
    pub e: Challenge,
    pub z: Vec<u8>,
}

pub fn random_bits<R: RngCore + ?Sized>(rng: &mut R, n: usize) -> Vec<u8> {
    let mut bytes = alloc::vec![0u8; n.div_ceil(8)];
    rng.fill_bytes(&mut bytes);
    (0..n).map(|i| (bytes[i / 8] >> (i % 8)) & 1).collect()
}

pub fn keygen<R: RngCore + ?Sized>(code: &QCLebCode, rng: &mut R) -> Result<KeyPair> {
    if code.q() != 2 {
        return Err(Error::NonBinaryField);
    }
    let p = code.partition();
    Ok(KeyPair {
        sk: random_bits(rng, code.n()),
        pk: code.generator().transpose(),
        params: KeyParams { q: 2, m: p.m(), p: p.p(), l: p.l() },
        seed_tag: None,
    })
}

pub fn bit_string(bits: &[u8]) -> String {
    bits.iter().map(|&b| if b & 1 == 1 { '1' } else { '0' }).collect()
}

fn parse_bits(s: &str) -> Option<Vec<u8>> {
    s.chars()
        .map(|c| match c {
            '0' => Some(0),
            '1' => Some(1),
            _ => None,
        })
        .collect()
}

fn low_bit_of(digest: &[u8]) -> u8 {
    digest[digest.len() - 1] & 1
}

fn faithful_challenge(c: &[u8]) -> u8 {
    low_bit_of(&Sha256::digest(bit_string(c).as_bytes()))
}

fn extended_low_bit(c: &[u8], msg: &[u8]) -> u8 {
    low_bit_of(&Sha256::new().chain_update(bit_string(c).as_bytes()).chain_update(msg).finalize())
}

fn extended_challenge(c: &[u8], z: &[u8], msg: &[u8], low: u8) -> [u8; WIDE_CHALLENGE_BYTES] {
    let d = Sha256::new()
        .chain_update(bit_string(c).as_bytes())
        .chain_update(bit_string(z).as_bytes())
        .chain_update(msg)
        .finalize();
    let mut e = [0u8; WIDE_CHALLENGE_BYTES];
    e.copy_from_slice(&d[32 - WIDE_CHALLENGE_BYTES..]);
    e[WIDE_CHALLENGE_BYTES - 1] = (e[WIDE_CHALLENGE_BYTES - 1] & !1) | low;
    e
}

/// Signs with a componentwise commitment.
pub fn sign<R: RngCore + ?Sized>(sk: &[u8], msg: &[u8], rng: &mut R, mode: Mode) -> SignatureBundle {
    sign_with(sk, msg, rng, mode, Commitment::Componentwise).0
}

/// Signs and also returns the random vector r.
pub fn sign_with<R: RngCore + ?Sized>(
    sk: &[u8],
    msg: &[u8],
    rng: &mut R,
    mode: Mode,
    commitment: Commitment,
) -> (SignatureBundle, Vec<u8>) {
    let r = random_bits(rng, sk.len());
    let c: Vec<u8> = match commitment {
        Commitment::Componentwise => r.iter().zip(sk).map(|(&a, &b)| a & b & 1).collect(),
        Commitment::InnerProduct => alloc::vec![r.iter().zip(sk).fold(0, |acc, (&a, &b)| acc ^ (a & b & 1))],
    };
    let bit = match mode {
        Mode::Faithful => faithful_challenge(&c),
        Mode::Extended => extended_low_bit(&c, msg),
    };
    let z: Vec<u8> = r.iter().zip(sk).map(|(&a, &b)| (a ^ (bit & b)) & 1).collect();
    let e = match mode {
        Mode::Faithful => Challenge::Bit(bit),
        Mode::Extended => Challenge::Wide(extended_challenge(&c, &z, msg, bit)),
    };
    (SignatureBundle { mode, c, e, z }, r)
}

/// Recomputes the challenge. The public key is not used by either check.
pub fn verify(_pk: &Matrix, msg: &[u8], sig: &SignatureBundle) -> bool {
    match (sig.mode, sig.e) {
        (Mode::Faithful, Challenge::Bit(b)) => faithful_challenge(&sig.c) == b,
        (Mode::Extended, Challenge::Wide(w)) => {
            let low = extended_low_bit(&sig.c, msg);
            extended_challenge(&sig.c, &sig.z, msg, low) == w
        }
        _ => false,
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn unhex(s: &str) -> Option<Vec<u8>> {
    if !s.len().is_multiple_of(2) || !s.is_ascii() {
        return None;
    }
    (0..s.len()).step_by(2).map(|i| u8::from_str_radix(&s[i..i + 2], 16).ok()).collect()
}

/// `QCLEBSIG1|mode=<F|X>|c=<bits>|e=<1 bit or 32 hex chars>|z=<bits>`.
pub fn serialize_signature(sig: &SignatureBundle) -> String {
    let mode = match sig.mode {
        Mode::Faithful => 'F',
        Mode::Extended => 'X',
    };
    let e = match sig.e {
        Challenge::Bit(b) => format!("{}", b & 1),
        Challenge::Wide(w) => hex(&w),
    };
    format!("{SIGNATURE_TAG}|mode={mode}|c={}|e={e}|z={}", bit_string(&sig.c), bit_string(&sig.z))
}

/// c is either as long as z (componentwise commitment) or a single bit.
fn check_lengths(nc: usize, nz: usize) -> Result<()> {
    if nc == nz || nc == 1 {
        Ok(())
    } else {
        Err(Error::MalformedSignature(format!("c has {nc} bits but z has {nz}")))
    }
}

pub fn parse_signature(text: &str) -> Result<SignatureBundle> {
    let bad = |why: &str| Error::MalformedSignature(String::from(why));
    let mut parts = text.trim().split('|');
    if parts.next() != Some(SIGNATURE_TAG) {
        return Err(bad("missing QCLEBSIG1 tag"));
    }
    let mut field = |name: &str| -> Result<&str> {
        parts
            .next()
            .and_then(|p| p.strip_prefix(name))
            .and_then(|p| p.strip_prefix('='))
            .ok_or_else(|| Error::MalformedSignature(format!("missing field {name}")))
    };
    let mode = match field("mode")? {
        "F" => Mode::Faithful,
        "X" => Mode::Extended,
        _ => return Err(bad("mode must be F or X")),
    };
    let c = parse_bits(field("c")?).ok_or_else(|| bad("c is not a bit string"))?;
    let e_text = field("e")?;
    let e = match mode {
        Mode::Faithful => match e_text {
            "0" => Challenge::Bit(0),
            "1" => Challenge::Bit(1),
            _ => return Err(bad("faithful challenge must be one bit")),
        },
        Mode::Extended => {
            let v = unhex(e_text).filter(|v| v.len() == WIDE_CHALLENGE_BYTES).ok_or_else(|| bad("extended challenge must be 32 hex chars"))?;
            let mut w = [0u8; WIDE_CHALLENGE_BYTES];
            w.copy_from_slice(&v);
            Challenge::Wide(w)
        }
    };
    let z = parse_bits(field("z")?).ok_or_else(|| bad("z is not a bit string"))?;
    if parts.next().is_some() {
        return Err(bad("trailing fields"));
    }
    if c.is_empty() || z.is_empty() {
        return Err(bad("empty vector"));
    }
    check_lengths(c.len(), z.len())?;
    Ok(SignatureBundle { mode, c, e, z })
}

fn pack(bits: &[u8], out: &mut Vec<u8>) {
    for chunk in bits.chunks(8) {
        out.push(chunk.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | ((b & 1) << i)));
    }
}

fn unpack(bytes: &[u8], n: usize) -> Vec<u8> {
    (0..n).map(|i| (bytes[i / 8] >> (i % 8)) & 1).collect()
}

/// Packed envelope: mode byte (0 faithful, 1 extended), |c| and |z| as u16 LE,
/// the challenge (1 or 16 bytes), then c and z packed LSB-first.
pub fn to_bytes(sig: &SignatureBundle) -> Result<Vec<u8>> {
    let (nc, nz) = (u16::try_from(sig.c.len()), u16::try_from(sig.z.len()));
    let (Ok(nc), Ok(nz)) = (nc, nz) else {
        return Err(Error::MalformedSignature(String::from("vectors longer than 65535 bits")));
    };
    let mut out = Vec::new();
    out.push(match sig.mode {
        Mode::Faithful => 0,
        Mode::Extended => 1,
    });
    out.extend_from_slice(&nc.to_le_bytes());
    out.extend_from_slice(&nz.to_le_bytes());
    match sig.e {
        Challenge::Bit(b) => out.push(b & 1),
        Challenge::Wide(w) => out.extend_from_slice(&w),
    }
    pack(&sig.c, &mut out);
    pack(&sig.z, &mut out);
    Ok(out)
}

pub fn from_bytes(bytes: &[u8]) -> Result<SignatureBundle> {
    let bad = |why: &str| Error::MalformedSignature(String::from(why));
    if bytes.len() < 5 {
        return Err(bad("envelope too short"));
    }
    let mode = match bytes[0] {
        0 => Mode::Faithful,
        1 => Mode::Extended,
        _ => return Err(bad("unknown mode byte")),
    };
    let nc = u16::from_le_bytes([bytes[1], bytes[2]]) as usize;
    let nz = u16::from_le_bytes([bytes[3], bytes[4]]) as usize;
    let elen = if mode == Mode::Faithful { 1 } else { WIDE_CHALLENGE_BYTES };
    let (cb, zb) = (nc.div_ceil(8), nz.div_ceil(8));
    if bytes.len() != 5 + elen + cb + zb {
        return Err(bad("envelope length does not match header"));
    }
    check_lengths(nc, nz)?;
    let rest = &bytes[5..];
    let e = if mode == Mode::Faithful {
        if rest[0] > 1 {
            return Err(bad("faithful challenge must be one bit"));
        }
        Challenge::Bit(rest[0])
    } else {
        let mut w = [0u8; WIDE_CHALLENGE_BYTES];
        w.copy_from_slice(&rest[..WIDE_CHALLENGE_BYTES]);
        Challenge::Wide(w)
    };
    let c = unpack(&rest[elen..elen + cb], nc);
    let z = unpack(&rest[elen + cb..], nz);
    Ok(SignatureBundle { mode, c, e, z })
}

fn params_line(p: &KeyParams) -> String {
    format!("{},{},{},{}", p.q, p.m, p.p, p.l)
}

fn parse_params(line: Option<&str>) -> Result<KeyParams> {
    let line = line.ok_or_else(|| Error::Parse(String::from("missing params line")))?;
    let v: Vec<usize> = line
        .trim()
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<core::result::Result<_, _>>()
        .map_err(|_| Error::Parse(format!("bad params line {line:?}")))?;
    match v.as_slice() {
        &[q, m, p, l] if q < 256 => Ok(KeyParams { q: q as u8, m, p, l }),
        _ => Err(Error::Parse(format!("params line needs q,m,p,l: {line:?}"))),
    }
}

fn body_lines<'a>(text: &'a str, tag: &str) -> Result<core::str::Lines<'a>> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(tag) {
        return Err(Error::Parse(format!("missing {tag} header")));
    }
    Ok(lines)
}

pub fn secret_key_to_text(kp: &KeyPair) -> String {
    format!("{SECRET_KEY_TAG}\n{}\n{}\n", params_line(&kp.params), bit_string(&kp.sk))
}

pub fn parse_secret_key(text: &str) -> Result<(KeyParams, Vec<u8>)> {
    let mut lines = body_lines(text, SECRET_KEY_TAG)?;
    let params = parse_params(lines.next())?;
    let sk = lines.next().and_then(|l| parse_bits(l.trim())).ok_or_else(|| Error::Parse(String::from("bad secret key bits")))?;
    if sk.is_empty() {
        return Err(Error::Parse(String::from("empty secret key")));
    }
    Ok((params, sk))
}

/// Header, params line, then one line per row of G^t.
pub fn public_key_to_text(kp: &KeyPair) -> String {
    let mut s = format!("{PUBLIC_KEY_TAG}\n{}\n", params_line(&kp.params));
    for r in 0..kp.pk.rows() {
        s.push_str(&bit_string(kp.pk.row(r)));
        s.push('\n');
    }
    s
}

pub fn parse_public_key(text: &str) -> Result<(KeyParams, Matrix)> {
    let mut lines = body_lines(text, PUBLIC_KEY_TAG)?;
    let params = parse_params(lines.next())?;
    let rows: Vec<Vec<u8>> = lines
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| parse_bits(l).ok_or_else(|| Error::Parse(format!("bad public key row {l:?}"))))
        .collect::<Result<_>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    Ok((params, Matrix::from_rows(2, cols, &rows)?))
}
