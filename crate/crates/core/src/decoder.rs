//! Syndromes, Meggitt-style table decoding, a brute-force nearest-codeword
//! decoder and the SDP to QC-LEB-SDP reduction.
//!
//! Table keys are normal forms modulo the code (see [`RowSpace::reduce`]), so a
//! key is zero exactly on codewords. A code closed under the p-block shift is
//! generally not closed under a single block shift, so the table keeps one phase
//! per residue of the shift count mod p: phase r holds normal forms modulo
//! sigma^r(C).

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::galois::coeff_string;
use crate::lebcode::{for_each_span, pi_weight_of, rotate, LebWord, Partition};
use crate::linalg::{Matrix, RowSpace};
use crate::qcleb::{build_h, random_symbol, star_shift, QCLebCode};

/// Blocks moved per decoding step.
pub const MEGGITT_SHIFT_BLOCKS: usize = 1;

/// s_pi = H * (X^(m p) y)^t.
pub fn syndrome(h: &Matrix, y: &LebWord) -> Result<Vec<u8>> {
    let partition = y.partition();
    if h.cols() != partition.n() || h.q() != y.q() {
        return Err(Error::DimensionMismatch);
    }
    h.mul_vec(&rotate(y.bits(), star_shift(partition)))
}

#[derive(Clone, Debug)]
pub struct SyndromeTable {
    phases: Vec<BTreeMap<String, Vec<u8>>>,
    spaces: Vec<RowSpace>,
    partition: Partition,
    q: u8,
    t: usize,
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut r: u64 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

/// Number of stored patterns per phase: w_pi <= t with the last block nonzero.
pub fn table_size(partition: Partition, q: u8, t: usize) -> u64 {
    let nz = (q as u64).saturating_pow(partition.m() as u32) - 1;
    let s = partition.s() as u64;
    (1..=t.min(partition.s()) as u64)
        .map(|w| binomial(s - 1, w - 1).saturating_mul(nz.saturating_pow(w as u32)))
        .fold(0u64, u64::saturating_add)
}

/// Calls `f` on every error with w_pi <= t whose last block is nonzero, in
/// ascending order of block sets and block values.
fn for_each_last_block_error<F: FnMut(&[u8])>(partition: Partition, q: u8, t: usize, mut f: F) {
    let (m, s) = (partition.m(), partition.s());
    let nz = (q as usize).pow(m as u32) - 1;
    let mut e = vec![0u8; partition.n()];
    for w in 1..=t.min(s) {
        let mut others: Vec<usize> = (0..w - 1).collect();
        loop {
            let mut blocks = others.clone();
            blocks.push(s - 1);
            let mut vals = vec![1usize; w];
            loop {
                for (&b, &v) in blocks.iter().zip(&vals) {
                    let mut x = v;
                    for c in e[b * m..(b + 1) * m].iter_mut() {
                        *c = (x % q as usize) as u8;
                        x /= q as usize;
                    }
                }
                f(&e);
                let mut j = 0;
                while j < w && vals[j] == nz {
                    vals[j] = 1;
                    j += 1;
                }
                if j == w {
                    break;
                }
                vals[j] += 1;
            }
            for &b in &blocks {
                e[b * m..(b + 1) * m].fill(0);
            }
            // next (w-1)-subset of 0..s-1
            let k = w - 1;
            let mut i = k;
            while i > 0 && others[i - 1] == s - 1 - (k - i + 1) {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            others[i - 1] += 1;
            for j in i..k {
                others[j] = others[j - 1] + 1;
            }
        }
    }
}

/// Builds the table for the code spanned by `generator`, closed under the p-block shift.
pub fn build_table_for(generator: &Matrix, partition: Partition, t: usize, budget: u64) -> Result<SyndromeTable> {
    let q = generator.q();
    let p = partition.p();
    let needed = table_size(partition, q, t).saturating_mul(p as u64);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let spaces: Vec<RowSpace> =
        (0..p).map(|r| RowSpace::new(&generator.shift_columns(r * partition.m()))).collect();
    let mut phases = Vec::with_capacity(p);
    for space in &spaces {
        let mut map: BTreeMap<String, Vec<u8>> = BTreeMap::new();
        let mut collision = None;
        for_each_last_block_error(partition, q, t, |e| {
            if collision.is_some() {
                return;
            }
            let key = coeff_string(&space.reduce(e).expect("length n"), q);
            match map.get(&key) {
                Some(prev) if prev.as_slice() != e => collision = Some(key),
                Some(_) => {}
                None => {
                    map.insert(key, e.to_vec());
                }
            }
        });
        if let Some(key) = collision {
            return Err(Error::SyndromeCollision { key });
        }
        phases.push(map);
    }
    Ok(SyndromeTable { phases, spaces, partition, q, t })
}

pub fn build_syndrome_table(code: &QCLebCode, t: usize, budget: u64) -> Result<SyndromeTable> {
    build_table_for(code.generator(), code.partition(), t, budget)
}

impl SyndromeTable {
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn partition(&self) -> Partition {
        self.partition
    }

    pub fn phases(&self) -> usize {
        self.phases.len()
    }

    pub fn len(&self) -> usize {
        self.phases.iter().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Normal form of `v` with respect to sigma^phase(C).
    pub fn key(&self, phase: usize, v: &[u8]) -> Result<String> {
        Ok(coeff_string(&self.spaces[phase].reduce(v)?, self.q))
    }

    pub fn lookup(&self, phase: usize, key: &str) -> Option<&[u8]> {
        self.phases.get(phase)?.get(key).map(Vec::as_slice)
    }

    /// (phase, error_coeffs, syndrome_coeffs) in key order within each phase.
    pub fn entries(&self) -> Vec<(usize, String, String)> {
        let mut out = Vec::with_capacity(self.len());
        for (r, map) in self.phases.iter().enumerate() {
            for (k, e) in map {
                out.push((r, coeff_string(e, self.q), k.clone()));
            }
        }
        out
    }
}

/// Returns (codeword, error). Shift i = 0, 1, ... < s blocks; on a hit with
/// stored error e the error of y is sigma^(-i)(e).
pub fn meggitt_decode(y: &LebWord, table: &SyndromeTable) -> Result<(LebWord, LebWord)> {
    if y.partition() != table.partition || y.q() != table.q {
        return Err(Error::PartitionMismatch);
    }
    let s = table.partition.s();
    let p = table.phases.len();
    if table.spaces[0].contains(y.bits())? {
        return Ok((y.clone(), LebWord::zero(y.partition(), y.q())));
    }
    let mut i = 0;
    while i < s {
        let z = y.shift_blocks(i);
        let phase = i % p;
        let key = table.key(phase, z.bits())?;
        if let Some(e) = table.lookup(phase, &key) {
            let e = LebWord::new(e.to_vec(), y.partition(), y.q())?.shift_blocks(s - i);
            return Ok((y.sub(&e)?, e));
        }
        i += MEGGITT_SHIFT_BLOCKS;
    }
    Err(Error::DecodeFailure)
}

/// Nearest codeword in the pi-metric; ties go to the lexicographically smallest
/// ascending symbol vector.
pub fn brute_force_decode(y: &LebWord, generator: &Matrix, budget: u64) -> Result<LebWord> {
    if generator.cols() != y.bits().len() {
        return Err(Error::DimensionMismatch);
    }
    let m = y.partition().m();
    let q = y.q();
    let mut best: Option<(usize, Vec<u8>)> = None;
    let mut diff = vec![0u8; y.bits().len()];
    for_each_span(generator, budget, |_, c| {
        for ((d, &a), &b) in diff.iter_mut().zip(y.bits()).zip(c) {
            *d = crate::galois::sub_mod(a, b, q);
        }
        let d = pi_weight_of(&diff, m);
        let better = match &best {
            None => true,
            Some((bd, bw)) => d < *bd || (d == *bd && c < bw.as_slice()),
        };
        if better {
            best = Some((d, c.to_vec()));
        }
    })?;
    let (_, w) = best.expect("span contains zero");
    LebWord::new(w, y.partition(), q)
}

/// D-SDP: is there e with H e^t = s_y and w_pi(e) <= t (blocks of length m)?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SdpInstance {
    pub h: Matrix,
    pub t: usize,
    pub s_y: Vec<u8>,
    pub m: usize,
}

impl SdpInstance {
    pub fn new(h: Matrix, t: usize, s_y: Vec<u8>, m: usize) -> Result<Self> {
        if s_y.len() != h.rows() || m == 0 || !h.cols().is_multiple_of(m) {
            return Err(Error::DimensionMismatch);
        }
        Ok(SdpInstance { h, t, s_y, m })
    }

    pub fn is_solution(&self, e: &[u8]) -> bool {
        e.len() == self.h.cols() && pi_weight_of(e, self.m) <= self.t && self.h.mul_vec(e).ok().as_ref() == Some(&self.s_y)
    }
}

/// Reduced instance: H' is block-circulant with l x l blocks of size r0 x n0 and
/// its syndrome is taken as H' (X^n0 e')^t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QclebSdpInstance {
    pub h: Matrix,
    pub t: usize,
    pub s: Vec<u8>,
    pub mask: Vec<u8>,
    pub mask_weight: usize,
    pub l: usize,
    pub n0: usize,
    pub m: usize,
}

impl QclebSdpInstance {
    pub fn syndrome_of(&self, e: &[u8]) -> Result<Vec<u8>> {
        if e.len() != self.h.cols() {
            return Err(Error::DimensionMismatch);
        }
        self.h.mul_vec(&rotate(e, self.n0))
    }

    pub fn is_solution(&self, e: &[u8]) -> bool {
        e.len() == self.h.cols()
            && pi_weight_of(e, self.m) <= self.t
            && self.syndrome_of(e).ok().as_ref() == Some(&self.s)
    }
}

/// Embeds an SDP instance into a quasi-cyclic one.
///
/// `mixing` holds A_2..A_l (r0 x r0); the off-diagonal blocks are H_j = A_j H, so
/// H' = A (I_l (x) H) with A the block-circulant of (I, A_2, .., A_l), which must be
/// invertible. The mask x = (x_1, .., x_l) has x_l = 0 (the slot of the witness) and
/// every other segment is zero or a single nonzero block with H x_i != 0. Then
/// s' = A (s_y, H x_1, .., H x_(l-1)) and t' = t + sum w_pi(x_i).
pub fn reduce_sdp(inst: &SdpInstance, l: usize, mixing: &[Matrix], mask: &[u8]) -> Result<QclebSdpInstance> {
    let (r0, n0, q, m) = (inst.h.rows(), inst.h.cols(), inst.h.q(), inst.m);
    if l == 0 || mixing.len() + 1 != l || mask.len() != l * n0 {
        return Err(Error::DimensionMismatch);
    }
    if mixing.iter().any(|a| a.rows() != r0 || a.cols() != r0 || a.q() != q) {
        return Err(Error::DimensionMismatch);
    }
    let segs: Vec<&[u8]> = mask.chunks(n0).collect();
    if segs[l - 1].iter().any(|&c| c != 0) {
        return Err(Error::InvalidMask);
    }
    let mut mask_weight = 0;
    let mut sigma = inst.s_y.clone();
    for x in &segs[..l - 1] {
        let w = pi_weight_of(x, m);
        let hx = inst.h.mul_vec(x)?;
        if w > 1 || (w == 1 && hx.iter().all(|&c| c == 0)) {
            return Err(Error::InvalidMask);
        }
        mask_weight += w;
        sigma.extend(hx);
    }
    let mut a_blocks = vec![Matrix::identity(r0, q)];
    a_blocks.extend(mixing.iter().cloned());
    let big_a = build_h(&a_blocks)?;
    if !big_a.is_invertible() {
        return Err(Error::SingularMixing);
    }
    let h_blocks: Vec<Matrix> = a_blocks.iter().map(|a| a.mul(&inst.h)).collect::<Result<_>>()?;
    let h = build_h(&h_blocks)?;
    let s = big_a.mul_vec(&sigma)?;
    Ok(QclebSdpInstance { h, t: inst.t + mask_weight, s, mask: mask.to_vec(), mask_weight, l, n0, m })
}

/// The last segment e_l of a reduced solution, checked against the original instance.
pub fn extract_solution(orig: &SdpInstance, reduced: &QclebSdpInstance, e: &[u8]) -> Result<Vec<u8>> {
    if e.len() != reduced.l * reduced.n0 || reduced.n0 != orig.h.cols() {
        return Err(Error::DimensionMismatch);
    }
    let el = e[(reduced.l - 1) * reduced.n0..].to_vec();
    if orig.is_solution(&el) {
        Ok(el)
    } else {
        Err(Error::InvalidWitness)
    }
}

/// First vector (in message-index order over the full space) with syndrome `s`
/// and pi-weight <= t, where the syndrome is H (X^shift e)^t.
pub fn brute_force_sdp(h: &Matrix, s: &[u8], t: usize, m: usize, shift: usize, budget: u64) -> Result<Option<Vec<u8>>> {
    let n = h.cols();
    let id = Matrix::identity(n, h.q());
    let mut found = None;
    let hs = h.shift_columns(n - shift % n.max(1));
    for_each_span(&id, budget, |_, e| {
        if found.is_none() && pi_weight_of(e, m) <= t && hs.mul_vec(e).ok().as_deref() == Some(s) {
            found = Some(e.to_vec());
        }
    })?;
    Ok(found)
}

pub fn random_matrix<R: RngCore + ?Sized>(rng: &mut R, rows: usize, cols: usize, q: u8) -> Matrix {
    let mut a = Matrix::zeros(rows, cols, q);
    for r in 0..rows {
        for c in 0..cols {
            a.set(r, c, random_symbol(rng, q));
        }
    }
    a
}

/// Random instance with a planted solution of pi-weight at most t.
pub fn random_sdp_instance<R: RngCore + ?Sized>(rng: &mut R, r0: usize, n0: usize, m: usize, t: usize, q: u8) -> Result<(SdpInstance, Vec<u8>)> {
    if m == 0 || !n0.is_multiple_of(m) {
        return Err(Error::DimensionMismatch);
    }
    let h = random_matrix(rng, r0, n0, q);
    let mut e = vec![0u8; n0];
    let s = n0 / m;
    for _ in 0..t {
        let b = (rng.next_u32() as usize) % s;
        for c in e[b * m..(b + 1) * m].iter_mut() {
            *c = random_symbol(rng, q);
        }
    }
    let s_y = h.mul_vec(&e)?;
    Ok((SdpInstance::new(h, t, s_y, m)?, e))
}

/// Mixing blocks A_2..A_l giving an invertible block-circulant, by resampling.
pub fn random_mixing<R: RngCore + ?Sized>(rng: &mut R, r0: usize, l: usize, q: u8) -> Vec<Matrix> {
    loop {
        let blocks: Vec<Matrix> = (1..l).map(|_| random_matrix(rng, r0, r0, q)).collect();
        let mut all = vec![Matrix::identity(r0, q)];
        all.extend(blocks.iter().cloned());
        if build_h(&all).map(|a| a.is_invertible()).unwrap_or(false) {
            return blocks;
        }
    }
}

/// A valid mask: each of the first l-1 segments is zero or one block with H x_i != 0.
pub fn random_mask<R: RngCore + ?Sized>(rng: &mut R, inst: &SdpInstance, l: usize) -> Vec<u8> {
    let (n0, m, q) = (inst.h.cols(), inst.m, inst.h.q());
    let mut mask = vec![0u8; l * n0];
    for i in 0..l.saturating_sub(1) {
        if rng.next_u32().is_multiple_of(4) {
            continue;
        }
        for _ in 0..8 {
            let b = (rng.next_u32() as usize) % (n0 / m);
            let mut x = vec![0u8; n0];
            for c in x[b * m..(b + 1) * m].iter_mut() {
                *c = random_symbol(rng, q);
            }
            let hx = inst.h.mul_vec(&x).expect("width n0");
            if hx.iter().any(|&c| c != 0) {
                mask[i * n0..(i + 1) * n0].copy_from_slice(&x);
                break;
            }
        }
    }
    mask
}
